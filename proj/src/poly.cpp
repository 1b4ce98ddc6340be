#include "starscape/poly.hpp"

#include <charconv>
#include <sstream>

namespace starscape {

RatPoly to_rational(const IntPoly& p) {
    std::vector<BigRat> c(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) c[i] = BigRat(p[i]);
    return RatPoly(std::move(c));
}

IntPoly to_integer_primitive(const RatPoly& p, bool positive_leading) {
    if (p.is_zero()) return {};
    BigInt den = 1;
    for (const auto& v : p.coeffs()) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), v.get_den_mpz_t());
    std::vector<BigInt> c(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) c[i] = p[i].get_num() * (den / p[i].get_den());
    IntPoly out = primitive_part(IntPoly(std::move(c)));
    if (positive_leading && out.leading() < 0) out = -out;
    return out;
}

BigInt content(const IntPoly& p) {
    BigInt g = 0;
    for (const auto& v : p.coeffs()) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
        if (g == 1) break;
    }
    return g;
}

IntPoly primitive_part(const IntPoly& p) {
    if (p.is_zero()) return {};
    const BigInt g = content(p);
    if (g == 1) return p;
    std::vector<BigInt> c(p.coeffs());
    for (auto& v : c) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
    return IntPoly(std::move(c));
}

IntPoly pseudo_remainder(const IntPoly& p, const IntPoly& q) {
    if (q.is_zero()) throw std::domain_error("pseudo_remainder by zero polynomial");
    if (p.degree() < q.degree()) return p;
    const int dq = q.degree();
    int e = p.degree() - dq + 1;
    std::vector<BigInt> r(p.coeffs());
    const BigInt& lq = q.leading();
    BigInt t;
    while (static_cast<int>(r.size()) - 1 >= dq && !r.empty()) {
        const int dr = static_cast<int>(r.size()) - 1;
        const BigInt lr = r.back();
        const int shift = dr - dq;
        for (auto& v : r) v *= lq;
        for (int j = 0; j <= dq; ++j) {
            t = lr * q[j];
            r[shift + j] -= t;
        }
        r.pop_back();  // leading term cancels by construction
        while (!r.empty() && r.back() == 0) r.pop_back();
        --e;
    }
    IntPoly out(std::move(r));
    if (e > 0) {
        BigInt f;
        mpz_pow_ui(f.get_mpz_t(), lq.get_mpz_t(), static_cast<unsigned long>(e));
        out *= f;
    }
    return out;
}

bool divides(const IntPoly& q, const IntPoly& p, IntPoly* quotient) {
    if (q.is_zero()) throw std::domain_error("division by zero polynomial");
    if (p.is_zero()) {
        if (quotient) *quotient = {};
        return true;
    }
    if (p.degree() < q.degree()) return false;
    const int dq = q.degree();
    std::vector<BigInt> r(p.coeffs());
    std::vector<BigInt> quot(static_cast<std::size_t>(p.degree() - dq + 1));
    const BigInt& lq = q.leading();
    BigInt t;
    for (int k = p.degree() - dq; k >= 0; --k) {
        BigInt& top = r[static_cast<std::size_t>(k + dq)];
        if (top == 0) continue;
        if (!mpz_divisible_p(top.get_mpz_t(), lq.get_mpz_t())) return false;
        BigInt c;
        mpz_divexact(c.get_mpz_t(), top.get_mpz_t(), lq.get_mpz_t());
        for (int j = 0; j <= dq; ++j) {
            t = c * q[j];
            r[k + j] -= t;
        }
        quot[k] = std::move(c);
    }
    for (int j = 0; j < dq; ++j)
        if (r[j] != 0) return false;
    if (quotient) *quotient = IntPoly(std::move(quot));
    return true;
}

IntPoly exact_divide(const IntPoly& p, const IntPoly& q) {
    IntPoly out;
    if (!divides(q, p, &out)) throw std::domain_error("exact_divide: not divisible");
    return out;
}

namespace {

// p / c for a scalar c known to divide every coefficient.
IntPoly divexact_scalar(const IntPoly& p, const BigInt& c) {
    std::vector<BigInt> v(p.coeffs());
    for (auto& x : v) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), c.get_mpz_t());
    return IntPoly(std::move(v));
}

BigInt pow(const BigInt& b, unsigned long e) {
    BigInt r;
    mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
    return r;
}

}  // namespace

IntPoly gcd(const IntPoly& p, const IntPoly& q) {
    if (p.is_zero() && q.is_zero()) throw std::domain_error("gcd(0, 0)");
    if (p.is_zero()) {
        IntPoly r = primitive_part(q);
        return r.leading() < 0 ? -r : r;
    }
    if (q.is_zero()) {
        IntPoly r = primitive_part(p);
        return r.leading() < 0 ? -r : r;
    }
    IntPoly a = primitive_part(p.degree() >= q.degree() ? p : q);
    IntPoly b = primitive_part(p.degree() >= q.degree() ? q : p);
    BigInt g = 1, h = 1;
    for (;;) {
        const int delta = a.degree() - b.degree();
        IntPoly r = pseudo_remainder(a, b);
        if (r.is_zero()) break;
        if (r.degree() == 0) return IntPoly{1};
        a = std::move(b);
        b = divexact_scalar(r, g * pow(h, static_cast<unsigned long>(delta)));
        g = a.leading();
        if (delta == 0) {
            // h unchanged
        } else {
            h = pow(g, static_cast<unsigned long>(delta)) / pow(h, static_cast<unsigned long>(delta - 1));
        }
    }
    IntPoly out = primitive_part(b);
    return out.leading() < 0 ? -out : out;
}

BigInt resultant(const IntPoly& p, const IntPoly& q) {
    if (p.is_zero() || q.is_zero()) return 0;
    if (p.degree() == 0) return pow(p[0], static_cast<unsigned long>(q.degree()));
    if (q.degree() == 0) return pow(q[0], static_cast<unsigned long>(p.degree()));

    const BigInt ca = content(p), cb = content(q);
    IntPoly a = divexact_scalar(p, ca), b = divexact_scalar(q, cb);
    const BigInt t = pow(ca, static_cast<unsigned long>(q.degree())) *
                     pow(cb, static_cast<unsigned long>(p.degree()));
    int s = 1;
    if (a.degree() < b.degree()) {
        std::swap(a, b);
        if ((a.degree() * b.degree()) % 2 == 1) s = -s;
    }
    BigInt g = 1, h = 1;
    for (;;) {
        const int delta = a.degree() - b.degree();
        if (a.degree() % 2 == 1 && b.degree() % 2 == 1) s = -s;
        IntPoly r = pseudo_remainder(a, b);
        a = std::move(b);
        if (r.is_zero()) return 0;
        b = divexact_scalar(r, g * pow(h, static_cast<unsigned long>(delta)));
        g = a.leading();
        if (delta != 0)
            h = pow(g, static_cast<unsigned long>(delta)) / pow(h, static_cast<unsigned long>(delta - 1));
        if (b.degree() == 0) break;
    }
    const auto da = static_cast<unsigned long>(a.degree());
    h = pow(b.leading(), da) / pow(h, da - 1);
    return BigInt(s * t * h);
}

BigInt discriminant(const IntPoly& p) {
    if (p.degree() < 1) throw std::domain_error("discriminant of constant polynomial");
    const int d = p.degree();
    BigInt r = resultant(p, derivative(p));
    mpz_divexact(r.get_mpz_t(), r.get_mpz_t(), p.leading().get_mpz_t());
    if ((d * (d - 1) / 2) % 2 == 1) r = -r;
    return r;
}

IntPoly taylor_shift(const IntPoly& p, const BigInt& shift) {
    if (p.is_zero() || shift == 0) return p;
    std::vector<BigInt> c(p.coeffs());
    const std::size_t n = c.size();
    // repeated synthetic division
    for (std::size_t i = 0; i + 1 < n; ++i)
        for (std::size_t j = n - 1; j-- > i;) c[j] += shift * c[j + 1];
    return IntPoly(std::move(c));
}

std::pair<RatPoly, RatPoly> divrem(const RatPoly& p, const RatPoly& q) {
    if (q.is_zero()) throw std::domain_error("divrem by zero polynomial");
    if (p.degree() < q.degree()) return {RatPoly{}, p};
    const int dq = q.degree();
    std::vector<BigRat> r(p.coeffs());
    std::vector<BigRat> quot(static_cast<std::size_t>(p.degree() - dq + 1));
    const BigRat inv_lead = 1 / q.leading();
    for (int k = p.degree() - dq; k >= 0; --k) {
        BigRat c = r[k + dq] * inv_lead;
        if (c != 0)
            for (int j = 0; j <= dq; ++j) r[k + j] -= c * q[j];
        quot[k] = std::move(c);
    }
    r.resize(static_cast<std::size_t>(dq));
    return {RatPoly(std::move(quot)), RatPoly(std::move(r))};
}

RatPoly make_monic(const RatPoly& p) {
    if (p.is_zero() || p.is_monic()) return p;
    return p * BigRat(1 / p.leading());
}

RatPoly gcd(const RatPoly& p, const RatPoly& q) {
    if (p.is_zero() && q.is_zero()) throw std::domain_error("gcd(0, 0)");
    return make_monic(to_rational(gcd(to_integer_primitive(p), to_integer_primitive(q))));
}

ExtendedGcd extended_gcd(const RatPoly& a, const RatPoly& b) {
    if (a.is_zero() && b.is_zero()) throw std::domain_error("extended_gcd(0, 0)");
    RatPoly r0 = a, r1 = b;
    RatPoly s0{1}, s1{}, t0{}, t1{1};
    while (!r1.is_zero()) {
        auto [quot, rem] = divrem(r0, r1);
        r0 = std::move(r1);
        r1 = std::move(rem);
        RatPoly s2 = s0 - quot * s1;
        RatPoly t2 = t0 - quot * t1;
        s0 = std::move(s1);
        s1 = std::move(s2);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    const BigRat inv = 1 / r0.leading();
    return {r0 * inv, s0 * inv, t0 * inv};
}

BigRat resultant(const RatPoly& p, const RatPoly& q) {
    if (p.is_zero() || q.is_zero()) return 0;
    // p = (cp) P with P integral primitive; Res(cp P, cq Q) = cp^deg q cq^deg p Res(P, Q)
    const IntPoly ip = to_integer_primitive(p, false);
    const IntPoly iq = to_integer_primitive(q, false);
    const BigRat cp = p.leading() / BigRat(ip.leading());
    const BigRat cq = q.leading() / BigRat(iq.leading());
    BigRat out(resultant(ip, iq));
    for (int i = 0; i < q.degree(); ++i) out *= cp;
    for (int i = 0; i < p.degree(); ++i) out *= cq;
    return out;
}

BigRat content(const RatPoly& p) {
    if (p.is_zero()) return 0;
    const IntPoly ip = to_integer_primitive(p, false);
    return abs(p.leading() / BigRat(ip.leading()));
}

RatPoly squarefree_part(const RatPoly& p) {
    if (p.degree() < 1) return p.is_zero() ? p : RatPoly{1};
    const RatPoly g = gcd(p, derivative(p));
    return make_monic(divrem(p, g).first);
}

std::string to_string(const IntPoly& p) {
    if (p.is_zero()) return "0";
    std::string out;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (i) out += ' ';
        out += p[i].get_str();
    }
    return out;
}

IntPoly parse_int_poly(std::string_view text) {
    if (text.empty()) throw std::invalid_argument("empty polynomial string");
    std::vector<BigInt> c;
    std::size_t pos = 0;
    for (;;) {
        const std::size_t end = text.find(' ', pos);
        const std::string_view tok = text.substr(pos, end == std::string_view::npos ? end : end - pos);
        const bool neg = !tok.empty() && tok[0] == '-';
        const std::string_view digits = neg ? tok.substr(1) : tok;
        const bool ok = !digits.empty() &&
                        std::all_of(digits.begin(), digits.end(), [](char ch) { return ch >= '0' && ch <= '9'; }) &&
                        !(digits.size() > 1 && digits[0] == '0') && !(neg && digits == "0");
        if (!ok) throw std::invalid_argument("malformed coefficient '" + std::string(tok) + "' in \"" + std::string(text) + "\"");
        c.emplace_back(std::string(tok));
        if (end == std::string_view::npos) break;
        pos = end + 1;
    }
    if (c.size() > 1 && c.back() == 0)
        throw std::invalid_argument("non-canonical polynomial (trailing zero coefficient): \"" + std::string(text) + "\"");
    return IntPoly(std::move(c));
}

}  // namespace starscape
