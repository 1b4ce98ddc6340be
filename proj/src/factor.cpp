#include "starscape/factor.hpp"

#include "starscape/modpoly.hpp"

#include <algorithm>
#include <numeric>
#include <span>

namespace starscape {

RatPoly Factorization::expand() const {
    RatPoly out{unit};
    for (const auto& [f, m] : factors) {
        const RatPoly rf = to_rational(f);
        for (int i = 0; i < m; ++i) out = out * rf;
    }
    return out;
}

std::vector<std::pair<IntPoly, int>> squarefree_decomposition(const IntPoly& f) {
    std::vector<std::pair<IntPoly, int>> out;
    if (f.degree() < 1) return out;
    const IntPoly df = derivative(f);
    const IntPoly b = gcd(f, df);
    IntPoly c = exact_divide(f, b);
    IntPoly d = exact_divide(df, b) - derivative(c);
    for (int i = 1; c.degree() > 0; ++i) {
        IntPoly a = gcd(c, d);
        c = exact_divide(c, a);
        d = exact_divide(d, a) - derivative(c);
        if (a.degree() > 0) out.emplace_back(std::move(a), i);
    }
    return out;
}

BigInt factor_coefficient_bound(const IntPoly& f) {
    BigInt sq = 0;
    for (const auto& c : f.coeffs()) sq += c * c;
    BigInt norm;
    mpz_sqrt(norm.get_mpz_t(), sq.get_mpz_t());
    norm += 1;
    BigInt two_n;
    mpz_ui_pow_ui(two_n.get_mpz_t(), 2, static_cast<unsigned long>(std::max(f.degree(), 0)));
    return BigInt(two_n * norm * abs(f.leading()));
}

namespace {

// ---- arithmetic on Z[x] modulo m, representatives in [0, m) ----

IntPoly reduce(const IntPoly& a, const BigInt& m) {
    std::vector<BigInt> c(a.coeffs());
    for (auto& v : c) mpz_fdiv_r(v.get_mpz_t(), v.get_mpz_t(), m.get_mpz_t());
    return IntPoly(std::move(c));
}

IntPoly symmetric(const IntPoly& a, const BigInt& m) {
    const BigInt half = m / 2;
    std::vector<BigInt> c(a.coeffs());
    for (auto& v : c) {
        mpz_fdiv_r(v.get_mpz_t(), v.get_mpz_t(), m.get_mpz_t());
        if (v > half) v -= m;
    }
    return IntPoly(std::move(c));
}

IntPoly mul_mod(const IntPoly& a, const IntPoly& b, const BigInt& m) { return reduce(a * b, m); }

// Division by a monic polynomial modulo m.
std::pair<IntPoly, IntPoly> divrem_monic(const IntPoly& a, const IntPoly& h, const BigInt& m) {
    if (a.degree() < h.degree()) return {IntPoly{}, a};
    const int dh = h.degree();
    std::vector<BigInt> r(a.coeffs());
    std::vector<BigInt> q(static_cast<std::size_t>(a.degree() - dh + 1));
    for (int k = a.degree() - dh; k >= 0; --k) {
        BigInt c = r[k + dh];
        mpz_fdiv_r(c.get_mpz_t(), c.get_mpz_t(), m.get_mpz_t());
        if (c != 0)
            for (int j = 0; j <= dh; ++j) r[k + j] -= c * h[j];
        q[k] = std::move(c);
    }
    r.resize(static_cast<std::size_t>(dh));
    return {IntPoly(std::move(q)), reduce(IntPoly(std::move(r)), m)};
}

struct HenselPair {
    IntPoly g, h, s, t;
};

// One quadratic Hensel step: f = g h, s g + t h = 1 (mod m)  ->  (mod m^2).
void hensel_step(const IntPoly& f, HenselPair& st, const BigInt& m) {
    const BigInt m2 = m * m;
    const IntPoly e = reduce(f - st.g * st.h, m2);
    auto [q, r] = divrem_monic(mul_mod(st.s, e, m2), st.h, m2);
    IntPoly g2 = reduce(st.g + st.t * e + q * st.g, m2);
    IntPoly h2 = reduce(st.h + r, m2);
    const IntPoly b = reduce(st.s * g2 + st.t * h2 - IntPoly{1}, m2);
    auto [c, d] = divrem_monic(mul_mod(st.s, b, m2), h2, m2);
    st.s = reduce(st.s - d, m2);
    st.t = reduce(st.t - st.t * b - c * g2, m2);
    st.g = std::move(g2);
    st.h = std::move(h2);
}

ModPoly product(std::span<const ModPoly> fs, std::uint64_t p) {
    ModPoly acc(p, {1});
    for (const auto& f : fs) acc = acc * f;
    return acc;
}

// Lift the factorization f = lc(f) prod(leaves) (mod p) to modulus M = p^(2^k).
// Appends the monic lifted leaves in order.
void lift_tree(const IntPoly& f, std::span<const ModPoly> leaves, std::uint64_t p, const BigInt& M,
               std::vector<IntPoly>& out) {
    if (leaves.size() == 1) {
        BigInt inv;
        mpz_invert(inv.get_mpz_t(), f.leading().get_mpz_t(), M.get_mpz_t());
        out.push_back(reduce(f * inv, M));
        return;
    }
    const std::size_t half = leaves.size() / 2;
    const auto left = leaves.subspan(0, half), right = leaves.subspan(half);
    const std::uint64_t lc_mod = mpz_fdiv_ui(f.leading().get_mpz_t(), p);
    const ModPoly g0 = product(left, p) * lc_mod;
    const ModPoly h0 = product(right, p);
    const auto eg = extended_gcd(g0, h0);
    HenselPair st{g0.to_int(), h0.to_int(), eg.s.to_int(), eg.t.to_int()};
    BigInt m = static_cast<unsigned long>(p);
    while (m < M) {
        hensel_step(f, st, m);
        m *= m;
    }
    lift_tree(reduce(st.g, M), left, p, M, out);
    lift_tree(reduce(st.h, M), right, p, M, out);
}

// Bitmask of attainable factor degrees 0..n from a list of modular degrees.
std::vector<bool> subset_degree_sums(const std::vector<int>& degs, int n) {
    std::vector<bool> ok(static_cast<std::size_t>(n + 1), false);
    ok[0] = true;
    for (int d : degs)
        for (int s = n; s >= d; --s)
            if (ok[s - d]) ok[s] = true;
    return ok;
}

struct PrimeChoice {
    std::uint64_t p = 0;
    std::size_t count = 0;
};

}  // namespace

std::vector<IntPoly> factor_squarefree(const IntPoly& f, const FactorOptions& opts) {
    const int n = f.degree();
    if (n <= 1) return {f};

    // Candidate primes: odd, not dividing lc(f), f squarefree mod p.
    std::vector<bool> allowed(static_cast<std::size_t>(n + 1), true);
    PrimeChoice best;
    int good = 0;
    for (std::size_t idx = 0; good < opts.primes_to_try; ++idx) {
        const std::uint64_t p = nth_odd_prime(idx);
        if (mpz_divisible_ui_p(f.leading().get_mpz_t(), p)) continue;
        const ModPoly fp = ModPoly::from(f, p);
        if (gcd(fp, derivative(fp)).degree() > 0) continue;
        ++good;
        const std::vector<int> degs = factor_degrees_mod_p(fp);
        if (degs.size() == 1) return {f};
        const auto sums = subset_degree_sums(degs, n);
        int interior = 0;
        for (int d = 1; d < n; ++d) {
            allowed[d] = allowed[d] && sums[d];
            interior += allowed[d] ? 1 : 0;
        }
        if (interior == 0) return {f};
        if (best.p == 0 || degs.size() < best.count) best = {p, degs.size()};
    }

    const std::uint64_t p = best.p;
    std::vector<ModPoly> leaves;
    for (auto& [g, mult] : factor_mod_p(ModPoly::from(f, p))) leaves.push_back(std::move(g));

    const BigInt bound = factor_coefficient_bound(f);
    BigInt M = static_cast<unsigned long>(p);
    while (M <= 2 * bound) M *= M;

    std::vector<IntPoly> lifted;
    lift_tree(f, leaves, p, M, lifted);

    std::vector<IntPoly> found;
    IntPoly rem = f;
    std::vector<std::size_t> live(lifted.size());
    std::iota(live.begin(), live.end(), 0);
    std::uint64_t tests = 0;

    for (std::size_t size = 1; 2 * size <= live.size();) {
        bool hit = false;
        std::vector<std::size_t> pick(size);
        std::iota(pick.begin(), pick.end(), 0);
        for (;;) {
            int deg = 0;
            for (auto i : pick) deg += lifted[live[i]].degree();
            if (allowed[static_cast<std::size_t>(deg)]) {
                if (++tests > opts.recombination_cap)
                    throw BudgetExceeded("factor_over_Q: recombination exceeded " +
                                         std::to_string(opts.recombination_cap) + " subsets at degree " +
                                         std::to_string(n));
                const BigInt& lc = rem.leading();
                IntPoly cand{lc};
                for (auto i : pick) cand = mul_mod(cand, lifted[live[i]], M);
                cand = symmetric(cand, M);
                // constant-term test before the full trial division
                const BigInt c0 = lc * rem[0];
                bool plausible = true;
                if (cand[0] != 0 && c0 != 0 && !mpz_divisible_p(c0.get_mpz_t(), cand[0].get_mpz_t()))
                    plausible = false;
                IntPoly quot;
                if (plausible) {
                    const IntPoly g = primitive_part(cand);
                    if (divides(g, rem, &quot)) {
                        found.push_back(g.leading() < 0 ? -g : g);
                        rem = quot.leading() < 0 ? -quot : quot;
                        std::vector<std::size_t> next;
                        for (std::size_t j = 0, k = 0; j < live.size(); ++j) {
                            if (k < pick.size() && pick[k] == j) {
                                ++k;
                                continue;
                            }
                            next.push_back(live[j]);
                        }
                        live = std::move(next);
                        hit = true;
                        break;
                    }
                }
            }
            // next combination
            std::size_t i = size;
            while (i-- > 0 && pick[i] == live.size() - size + i) {}
            if (i == static_cast<std::size_t>(-1)) break;
            ++pick[i];
            for (std::size_t j = i + 1; j < size; ++j) pick[j] = pick[j - 1] + 1;
        }
        if (!hit) ++size;
    }
    if (rem.degree() > 0) found.push_back(rem);
    return found;
}

Factorization factor_over_Q(const IntPoly& f, const FactorOptions& opts) {
    if (f.is_zero()) throw std::domain_error("factor_over_Q of zero polynomial");
    Factorization out;
    IntPoly g = primitive_part(f);
    if (g.leading() < 0) g = -g;
    out.unit = BigRat(f.leading() / g.leading());
    if (g.degree() == 0) return out;
    for (const auto& [part, mult] : squarefree_decomposition(g))
        for (auto& fac : factor_squarefree(part, opts)) out.factors.emplace_back(std::move(fac), mult);
    std::sort(out.factors.begin(), out.factors.end(), [](const auto& a, const auto& b) {
        return compare_canonical(a.first, b.first) < 0;
    });
    return out;
}

Factorization factor_over_Q(const RatPoly& f, const FactorOptions& opts) {
    if (f.is_zero()) throw std::domain_error("factor_over_Q of zero polynomial");
    const IntPoly g = to_integer_primitive(f);
    Factorization out = factor_over_Q(g, opts);
    out.unit = f.leading() / BigRat(g.leading());
    return out;
}

bool is_irreducible_over_Q(const IntPoly& f, const FactorOptions& opts) {
    if (f.degree() < 1) throw std::domain_error("is_irreducible_over_Q needs degree >= 1");
    const Factorization fac = factor_over_Q(f, opts);
    return fac.factors.size() == 1 && fac.factors[0].second == 1;
}

}  // namespace starscape
