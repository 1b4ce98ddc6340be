#include "starscape/modpoly.hpp"

#include <algorithm>
#include <functional>
#include <mutex>
#include <random>
#include <stdexcept>

namespace starscape {

ModPoly::ModPoly(std::uint64_t modulus, std::vector<std::uint64_t> coeffs) : p_(modulus), c_(std::move(coeffs)) {
    if (p_ < 2 || p_ >= (std::uint64_t{1} << 32)) throw std::invalid_argument("ModPoly modulus out of range");
    for (auto& v : c_) v %= p_;
    trim();
}

ModPoly ModPoly::from(const IntPoly& p, std::uint64_t modulus) {
    std::vector<std::uint64_t> c(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) c[i] = mpz_fdiv_ui(p[i].get_mpz_t(), modulus);
    return ModPoly(modulus, std::move(c));
}

IntPoly ModPoly::to_int() const {
    std::vector<BigInt> c(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i) c[i] = static_cast<unsigned long>(c_[i]);
    return IntPoly(std::move(c));
}

ModPoly operator+(const ModPoly& a, const ModPoly& b) {
    const std::uint64_t p = a.p_ ? a.p_ : b.p_;
    std::vector<std::uint64_t> c(std::max(a.c_.size(), b.c_.size()), 0);
    for (std::size_t i = 0; i < a.c_.size(); ++i) c[i] = a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) c[i] = (c[i] + b.c_[i]) % p;
    return ModPoly(p, std::move(c));
}

ModPoly operator-(const ModPoly& a, const ModPoly& b) {
    const std::uint64_t p = a.p_ ? a.p_ : b.p_;
    std::vector<std::uint64_t> c(std::max(a.c_.size(), b.c_.size()), 0);
    for (std::size_t i = 0; i < a.c_.size(); ++i) c[i] = a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) c[i] = (c[i] + p - b.c_[i]) % p;
    return ModPoly(p, std::move(c));
}

ModPoly operator*(const ModPoly& a, const ModPoly& b) {
    const std::uint64_t p = a.p_ ? a.p_ : b.p_;
    if (a.is_zero() || b.is_zero()) return ModPoly(p, {});
    std::vector<std::uint64_t> c(a.c_.size() + b.c_.size() - 1, 0);
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
        if (a.c_[i] == 0) continue;
        for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] = (c[i + j] + a.c_[i] * b.c_[j]) % p;
    }
    return ModPoly(p, std::move(c));
}

ModPoly operator*(const ModPoly& a, std::uint64_t s) {
    std::vector<std::uint64_t> c(a.c_);
    for (auto& v : c) v = v * (s % a.p_) % a.p_;
    return ModPoly(a.p_, std::move(c));
}

std::uint64_t mod_pow(std::uint64_t b, std::uint64_t e, std::uint64_t p) {
    std::uint64_t r = 1 % p;
    b %= p;
    while (e) {
        if (e & 1) r = r * b % p;
        b = b * b % p;
        e >>= 1;
    }
    return r;
}

std::uint64_t mod_inverse(std::uint64_t a, std::uint64_t p) {
    a %= p;
    if (a == 0) throw std::domain_error("mod_inverse of zero");
    // p prime
    return mod_pow(a, p - 2, p);
}

std::pair<ModPoly, ModPoly> divrem(const ModPoly& a, const ModPoly& b) {
    if (b.is_zero()) throw std::domain_error("ModPoly division by zero");
    const std::uint64_t p = b.modulus();
    if (a.degree() < b.degree()) return {ModPoly(p, {}), a};
    std::vector<std::uint64_t> r(a.coeffs());
    const int db = b.degree();
    std::vector<std::uint64_t> q(static_cast<std::size_t>(a.degree() - db + 1), 0);
    const std::uint64_t inv = mod_inverse(b.leading(), p);
    for (int k = a.degree() - db; k >= 0; --k) {
        const std::uint64_t c = r[k + db] * inv % p;
        q[k] = c;
        if (c == 0) continue;
        for (int j = 0; j <= db; ++j) r[k + j] = (r[k + j] + p - c * b[j] % p) % p;
    }
    r.resize(static_cast<std::size_t>(db));
    return {ModPoly(p, std::move(q)), ModPoly(p, std::move(r))};
}

ModPoly make_monic(const ModPoly& a) {
    if (a.is_zero() || a.leading() == 1) return a;
    return a * mod_inverse(a.leading(), a.modulus());
}

ModPoly gcd(const ModPoly& a, const ModPoly& b) {
    ModPoly x = a, y = b;
    while (!y.is_zero()) {
        ModPoly r = divrem(x, y).second;
        x = std::move(y);
        y = std::move(r);
    }
    return make_monic(x);
}

ModPoly derivative(const ModPoly& a) {
    if (a.degree() < 1) return ModPoly(a.modulus(), {});
    std::vector<std::uint64_t> c(a.coeffs().size() - 1);
    for (std::size_t i = 1; i < a.coeffs().size(); ++i) c[i - 1] = a[i] * (i % a.modulus()) % a.modulus();
    return ModPoly(a.modulus(), std::move(c));
}

ModExtendedGcd extended_gcd(const ModPoly& a, const ModPoly& b) {
    const std::uint64_t p = a.modulus() ? a.modulus() : b.modulus();
    ModPoly r0 = a, r1 = b;
    ModPoly s0(p, {1}), s1(p, {}), t0(p, {}), t1(p, {1});
    while (!r1.is_zero()) {
        auto [q, r] = divrem(r0, r1);
        r0 = std::move(r1);
        r1 = std::move(r);
        ModPoly s2 = s0 - q * s1, t2 = t0 - q * t1;
        s0 = std::move(s1);
        s1 = std::move(s2);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    const std::uint64_t inv = mod_inverse(r0.leading(), p);
    return {r0 * inv, s0 * inv, t0 * inv};
}

ModPoly powmod(const ModPoly& base, const BigInt& e, const ModPoly& m) {
    const std::uint64_t p = m.modulus();
    ModPoly result(p, {1});
    result = divrem(result, m).second;
    ModPoly b = divrem(base, m).second;
    const std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
    for (std::size_t i = bits; i-- > 0;) {
        result = divrem(result * result, m).second;
        if (mpz_tstbit(e.get_mpz_t(), i)) result = divrem(result * b, m).second;
    }
    return result;
}

namespace {

bool less_modpoly(const ModPoly& a, const ModPoly& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    for (std::size_t i = a.coeffs().size(); i-- > 0;)
        if (a[i] != b[i]) return a[i] < b[i];
    return false;
}

// Square-free factorization of a monic polynomial in characteristic p.
void squarefree_mod_p(const ModPoly& f, int mult, std::vector<std::pair<ModPoly, int>>& out) {
    const std::uint64_t p = f.modulus();
    if (f.degree() < 1) return;
    ModPoly c = gcd(f, derivative(f));
    ModPoly w = divrem(f, c).first;
    int i = 1;
    while (w.degree() > 0) {
        ModPoly y = gcd(w, c);
        ModPoly fac = divrem(w, y).first;
        if (fac.degree() > 0) out.emplace_back(make_monic(fac), i * mult);
        w = std::move(y);
        c = divrem(c, w).first;
        ++i;
    }
    if (c.degree() > 0) {
        // c is a p-th power: c(x) = sum c_{kp} x^{kp}
        std::vector<std::uint64_t> root;
        for (std::size_t k = 0; k < c.coeffs().size(); k += p) root.push_back(c[k]);
        squarefree_mod_p(ModPoly(p, std::move(root)), mult * static_cast<int>(p), out);
    }
}

std::uint64_t seed_of(const ModPoly& f) {
    std::uint64_t h = 1469598103934665603ull ^ f.modulus();
    for (auto v : f.coeffs()) {
        h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        h *= 1099511628211ull;
    }
    return h;
}

// Cantor-Zassenhaus equal-degree splitting; f squarefree monic, all factors of degree d.
void equal_degree_split(const ModPoly& f, int d, std::mt19937_64& rng, std::vector<ModPoly>& out) {
    const int n = f.degree();
    if (n <= d) {
        out.push_back(f);
        return;
    }
    const std::uint64_t p = f.modulus();
    BigInt e;
    mpz_ui_pow_ui(e.get_mpz_t(), p, static_cast<unsigned long>(d));
    e = (e - 1) / 2;
    std::uniform_int_distribution<std::uint64_t> coeff(0, p - 1);
    for (;;) {
        std::vector<std::uint64_t> a(static_cast<std::size_t>(n));
        for (auto& v : a) v = coeff(rng);
        ModPoly pa(p, std::move(a));
        if (pa.degree() < 1) continue;
        ModPoly g = gcd(pa, f);
        if (g.degree() > 0 && g.degree() < n) {
            equal_degree_split(g, d, rng, out);
            equal_degree_split(divrem(f, g).first, d, rng, out);
            return;
        }
        ModPoly b = powmod(pa, e, f) - ModPoly(p, {1});
        g = gcd(b, f);
        if (g.degree() > 0 && g.degree() < n) {
            equal_degree_split(g, d, rng, out);
            equal_degree_split(divrem(f, g).first, d, rng, out);
            return;
        }
    }
}

// Distinct-degree factorization of a squarefree monic f: (product, degree) pairs.
std::vector<std::pair<ModPoly, int>> distinct_degree(const ModPoly& f0) {
    const std::uint64_t p = f0.modulus();
    std::vector<std::pair<ModPoly, int>> out;
    ModPoly f = f0;
    const ModPoly x = ModPoly::x(p);
    ModPoly h = divrem(x, f).second;
    const BigInt pe(static_cast<unsigned long>(p));
    for (int i = 1; 2 * i <= f.degree(); ++i) {
        h = powmod(h, pe, f);
        ModPoly g = gcd(h - x, f);
        if (g.degree() > 0) {
            out.emplace_back(g, i);
            f = divrem(f, g).first;
            h = divrem(h, f).second;
        }
    }
    if (f.degree() > 0) out.emplace_back(f, f.degree());
    return out;
}

}  // namespace

std::vector<std::pair<ModPoly, int>> factor_mod_p(const ModPoly& f) {
    if (f.is_zero()) throw std::domain_error("factor_mod_p of zero polynomial");
    if (f.modulus() == 2) throw std::domain_error("factor_mod_p requires an odd prime");
    std::vector<std::pair<ModPoly, int>> sqf;
    squarefree_mod_p(make_monic(f), 1, sqf);
    std::vector<std::pair<ModPoly, int>> out;
    std::mt19937_64 rng(seed_of(f));
    for (const auto& [part, mult] : sqf) {
        for (const auto& [prod, d] : distinct_degree(part)) {
            std::vector<ModPoly> pieces;
            equal_degree_split(prod, d, rng, pieces);
            for (auto& piece : pieces) out.emplace_back(std::move(piece), mult);
        }
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        if (less_modpoly(a.first, b.first)) return true;
        if (less_modpoly(b.first, a.first)) return false;
        return a.second < b.second;
    });
    return out;
}

std::vector<int> factor_degrees_mod_p(const ModPoly& f) {
    std::vector<int> degs;
    for (const auto& [prod, d] : distinct_degree(make_monic(f)))
        for (int k = 0; k < prod.degree() / d; ++k) degs.push_back(d);
    std::sort(degs.begin(), degs.end());
    return degs;
}

std::uint64_t nth_odd_prime(std::size_t n) {
    static std::mutex mu;
    static std::vector<std::uint64_t> primes;
    std::lock_guard lock(mu);
    std::uint64_t candidate = primes.empty() ? 3 : primes.back() + 2;
    while (primes.size() <= n) {
        bool prime = true;
        for (std::uint64_t q = 3; q * q <= candidate; q += 2)
            if (candidate % q == 0) {
                prime = false;
                break;
            }
        if (prime) primes.push_back(candidate);
        candidate += 2;
    }
    return primes[n];
}

}  // namespace starscape
