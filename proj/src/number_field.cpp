#include "starscape/number_field.hpp"

#include "starscape/modpoly.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>

namespace starscape {

namespace {

// a mod m for monic integer m; stays in Z[t].
IntPoly reduce_monic(IntPoly a, const IntPoly& m) {
    const int dm = m.degree();
    if (a.degree() < dm) return a;
    std::vector<BigInt> r(a.coeffs());
    BigInt t;
    for (int k = a.degree() - dm; k >= 0; --k) {
        const BigInt c = r[k + dm];
        if (c == 0) continue;
        for (int j = 0; j < dm; ++j) {
            t = c * m[j];
            r[k + j] -= t;
        }
        r[k + dm] = 0;
    }
    r.resize(static_cast<std::size_t>(dm));
    return IntPoly(std::move(r));
}

// Integer sequence 0, 1, -1, 2, -2, ...
BigInt alternating(long idx) { return BigInt((idx % 2 == 1) ? (idx + 1) / 2 : -(idx / 2)); }

}  // namespace

// ---- NumberField ---------------------------------------------------------

NumberField::NumberField(IntPoly modulus, bool verify) {
    if (modulus.degree() < 1 || !modulus.is_monic())
        throw std::invalid_argument("number field modulus must be monic of degree >= 1: " + to_string(modulus));
    if (verify && !is_irreducible_over_Q(modulus))
        throw std::invalid_argument("number field modulus is reducible: " + to_string(modulus));
    data_ = std::make_shared<const Data>(Data{std::move(modulus)});
}

NumberField NumberField::rationals() {
    static const NumberField q(IntPoly{0, 1}, false);
    return q;
}

FieldElement NumberField::zero() const { return FieldElement(*this, IntPoly{}, BigInt(1)); }
FieldElement NumberField::one() const { return FieldElement(*this, IntPoly{1}, BigInt(1)); }

FieldElement NumberField::generator() const { return FieldElement(*this, IntPoly{0, 1}, BigInt(1)); }

FieldElement NumberField::from_rational(const BigRat& q) const {
    return FieldElement(*this, IntPoly{q.get_num()}, q.get_den());
}

FieldElement NumberField::element(const RatPoly& rep) const {
    BigInt den = 1;
    for (const auto& v : rep.coeffs()) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), v.get_den_mpz_t());
    std::vector<BigInt> num(rep.size());
    for (std::size_t i = 0; i < rep.size(); ++i) num[i] = rep[i].get_num() * (den / rep[i].get_den());
    return FieldElement(*this, IntPoly(std::move(num)), den);
}

// ---- FieldElement --------------------------------------------------------

FieldElement::FieldElement(NumberField field, IntPoly num, BigInt den)
    : field_(std::move(field)), num_(reduce_monic(std::move(num), field_.modulus())), den_(std::move(den)) {
    if (den_ == 0) throw std::domain_error("field element with zero denominator");
    if (den_ < 0) {
        den_ = -den_;
        num_ = -num_;
    }
    if (num_.is_zero()) {
        den_ = 1;
        return;
    }
    if (den_ == 1) return;
    BigInt g = content(num_);
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), den_.get_mpz_t());
    if (g != 1) {
        std::vector<BigInt> c(num_.coeffs());
        for (auto& v : c) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
        num_ = IntPoly(std::move(c));
        mpz_divexact(den_.get_mpz_t(), den_.get_mpz_t(), g.get_mpz_t());
    }
}

RatPoly FieldElement::rep() const {
    std::vector<BigRat> c(num_.size());
    for (std::size_t i = 0; i < num_.size(); ++i) {
        c[i] = BigRat(num_[i], den_);
        c[i].canonicalize();
    }
    return RatPoly(std::move(c));
}

static void require_same_field(const FieldElement& a, const FieldElement& b) {
    if (!(a.field() == b.field())) throw std::invalid_argument("field elements from different fields");
}

FieldElement operator+(const FieldElement& a, const FieldElement& b) {
    require_same_field(a, b);
    if (a.den_ == b.den_) return FieldElement(a.field_, a.num_ + b.num_, a.den_);
    return FieldElement(a.field_, a.num_ * b.den_ + b.num_ * a.den_, BigInt(a.den_ * b.den_));
}

FieldElement operator-(const FieldElement& a, const FieldElement& b) {
    require_same_field(a, b);
    if (a.den_ == b.den_) return FieldElement(a.field_, a.num_ - b.num_, a.den_);
    return FieldElement(a.field_, a.num_ * b.den_ - b.num_ * a.den_, BigInt(a.den_ * b.den_));
}

FieldElement operator*(const FieldElement& a, const FieldElement& b) {
    require_same_field(a, b);
    if (a.is_zero() || b.is_zero()) return a.field_.zero();
    return FieldElement(a.field_, a.num_ * b.num_, BigInt(a.den_ * b.den_));
}

FieldElement operator*(const FieldElement& a, const BigRat& q) {
    return FieldElement(a.field_, a.num_ * BigInt(q.get_num()), BigInt(a.den_ * q.get_den()));
}

FieldElement operator-(const FieldElement& a) { return FieldElement(a.field_, -a.num_, a.den_); }

FieldElement FieldElement::inverse() const {
    if (is_zero()) throw std::domain_error("inverse of zero field element");
    if (is_rational()) {
        BigRat q(den_, num_[0]);
        q.canonicalize();
        return field_.from_rational(q);
    }
    const auto eg = extended_gcd(to_rational(num_), to_rational(field_.modulus()));
    if (eg.g.degree() != 0) throw std::logic_error("element not invertible: modulus is not irreducible");
    return field_.element(eg.s) * BigRat(den_);
}

int compare(const FieldElement& a, const FieldElement& b) {
    // Coefficientwise from the constant term, zero-padded, so that rational
    // elements order like the rationals themselves.
    const RatPoly ra = a.rep(), rb = b.rep();
    const std::size_t n = std::max(ra.size(), rb.size());
    for (std::size_t i = 0; i < n; ++i) {
        const int c = cmp(ra.coeff(i), rb.coeff(i));
        if (c != 0) return c < 0 ? -1 : 1;
    }
    return 0;
}

// ---- PolyOverField -------------------------------------------------------

PolyOverField::PolyOverField(NumberField field, std::vector<FieldElement> coeffs)
    : field_(std::move(field)), c_(std::move(coeffs)) {
    for (const auto& e : c_)
        if (!(e.field() == field_)) throw std::invalid_argument("PolyOverField: coefficient from a different field");
    trim();
}

void PolyOverField::trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

PolyOverField PolyOverField::from_rational(const NumberField& field, const RatPoly& p) {
    std::vector<FieldElement> c;
    c.reserve(p.size());
    for (const auto& v : p.coeffs()) c.push_back(field.from_rational(v));
    return PolyOverField(field, std::move(c));
}

PolyOverField PolyOverField::from_integer(const NumberField& field, const IntPoly& p) {
    std::vector<FieldElement> c;
    c.reserve(p.size());
    for (const auto& v : p.coeffs()) c.push_back(FieldElement(field, IntPoly{v}, BigInt(1)));
    return PolyOverField(field, std::move(c));
}

const FieldElement& PolyOverField::leading() const {
    if (c_.empty()) throw std::domain_error("leading coefficient of zero polynomial");
    return c_.back();
}

FieldElement PolyOverField::coeff(std::size_t i) const { return i < c_.size() ? c_[i] : field_.zero(); }

std::optional<RatPoly> PolyOverField::as_rational() const {
    std::vector<BigRat> c;
    for (const auto& e : c_) {
        if (!e.is_rational()) return std::nullopt;
        c.push_back(e.is_zero() ? BigRat(0) : BigRat(e.numerator()[0], e.denominator()));
        c.back().canonicalize();
    }
    return RatPoly(std::move(c));
}

PolyOverField operator+(const PolyOverField& a, const PolyOverField& b) {
    std::vector<FieldElement> c;
    const std::size_t n = std::max(a.c_.size(), b.c_.size());
    c.reserve(n);
    for (std::size_t i = 0; i < n; ++i) c.push_back(a.coeff(i) + b.coeff(i));
    return PolyOverField(a.field_, std::move(c));
}

PolyOverField operator-(const PolyOverField& a, const PolyOverField& b) {
    std::vector<FieldElement> c;
    const std::size_t n = std::max(a.c_.size(), b.c_.size());
    c.reserve(n);
    for (std::size_t i = 0; i < n; ++i) c.push_back(a.coeff(i) - b.coeff(i));
    return PolyOverField(a.field_, std::move(c));
}

PolyOverField operator*(const PolyOverField& a, const PolyOverField& b) {
    if (a.is_zero() || b.is_zero()) return PolyOverField(a.field_);
    std::vector<FieldElement> c(a.c_.size() + b.c_.size() - 1, a.field_.zero());
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
        if (a.c_[i].is_zero()) continue;
        for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] = c[i + j] + a.c_[i] * b.c_[j];
    }
    return PolyOverField(a.field_, std::move(c));
}

PolyOverField operator*(const PolyOverField& a, const FieldElement& s) {
    std::vector<FieldElement> c;
    c.reserve(a.c_.size());
    for (const auto& v : a.c_) c.push_back(v * s);
    return PolyOverField(a.field_, std::move(c));
}

std::pair<PolyOverField, PolyOverField> divrem(const PolyOverField& a, const PolyOverField& b) {
    if (b.is_zero()) throw std::domain_error("division by zero polynomial over number field");
    const NumberField& K = b.field();
    if (a.degree() < b.degree()) return {PolyOverField(K), a};
    const int db = b.degree();
    std::vector<FieldElement> r(a.coeffs());
    std::vector<FieldElement> q(static_cast<std::size_t>(a.degree() - db + 1), K.zero());
    const bool monic = b.leading().is_one();
    const FieldElement inv = monic ? K.one() : b.leading().inverse();
    for (int k = a.degree() - db; k >= 0; --k) {
        const FieldElement c = monic ? r[k + db] : r[k + db] * inv;
        if (!c.is_zero())
            for (int j = 0; j <= db; ++j) r[k + j] = r[k + j] - c * b[j];
        q[k] = c;
    }
    r.resize(static_cast<std::size_t>(db), K.zero());
    return {PolyOverField(K, std::move(q)), PolyOverField(K, std::move(r))};
}

PolyOverField make_monic(const PolyOverField& a) {
    if (a.is_zero() || a.is_monic()) return a;
    return a * a.leading().inverse();
}

PolyOverField gcd(const PolyOverField& a, const PolyOverField& b) {
    if (a.is_zero() && b.is_zero()) throw std::domain_error("gcd(0, 0) over number field");
    PolyOverField x = make_monic(a.degree() >= b.degree() ? a : b);
    PolyOverField y = make_monic(a.degree() >= b.degree() ? b : a);
    while (!y.is_zero()) {
        PolyOverField r = divrem(x, y).second;
        x = std::move(y);
        y = make_monic(r);
    }
    return x;
}

PolyOverField derivative(const PolyOverField& a) {
    if (a.degree() < 1) return PolyOverField(a.field());
    std::vector<FieldElement> c;
    for (std::size_t i = 1; i < a.coeffs().size(); ++i) c.push_back(a[i] * BigRat(static_cast<long>(i)));
    return PolyOverField(a.field(), std::move(c));
}

FieldElement eval_at(const PolyOverField& p, const FieldElement& at) {
    FieldElement acc = p.field().zero();
    for (std::size_t i = p.coeffs().size(); i-- > 0;) acc = acc * at + p[i];
    return acc;
}

PolyOverField shift_variable(const PolyOverField& p, const FieldElement& shift) {
    const NumberField& K = p.field();
    const PolyOverField lin(K, {shift, K.one()});
    PolyOverField acc(K);
    for (std::size_t i = p.coeffs().size(); i-- > 0;) acc = acc * lin + PolyOverField(K, {p[i]});
    return acc;
}

int compare_canonical(const PolyOverField& a, const PolyOverField& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree() ? -1 : 1;
    for (std::size_t i = 0; i < a.coeffs().size(); ++i) {
        const int c = compare(a[i], b[i]);
        if (c != 0) return c;
    }
    return 0;
}

// ---- norms ---------------------------------------------------------------

RatPoly norm_poly(const PolyOverField& g, const BigInt& shift) {
    if (g.is_zero()) throw std::domain_error("norm of zero polynomial");
    const NumberField& K = g.field();
    const IntPoly& m = K.modulus();
    const int n = K.degree();

    // Clear denominators: g = G / D with G in Z[t][x].
    BigInt D = 1;
    for (const auto& c : g.coeffs()) mpz_lcm(D.get_mpz_t(), D.get_mpz_t(), c.denominator().get_mpz_t());
    std::vector<IntPoly> G;
    G.reserve(g.coeffs().size());
    for (const auto& c : g.coeffs()) G.push_back(c.numerator() * BigInt(D / c.denominator()));

    const int out_deg = g.degree() * n;
    std::vector<BigInt> nodes, values;
    nodes.reserve(static_cast<std::size_t>(out_deg + 1));
    values.reserve(static_cast<std::size_t>(out_deg + 1));
    for (long idx = 0; idx <= out_deg; ++idx) {
        const BigInt x0 = alternating(idx);
        // sum_j G_j(t) (x0 - shift t)^j  mod m(t)
        const IntPoly lin{x0, BigInt(-shift)};
        IntPoly acc;
        for (std::size_t j = G.size(); j-- > 0;) acc = reduce_monic(acc * lin + G[j], m);
        nodes.push_back(x0);
        values.push_back(resultant(m, acc));
    }

    // Newton interpolation over Q.
    const std::size_t npts = nodes.size();
    std::vector<BigRat> dd(values.begin(), values.end());
    for (std::size_t level = 1; level < npts; ++level)
        for (std::size_t i = npts - 1; i >= level; --i)
            dd[i] = (dd[i] - dd[i - 1]) / BigRat(nodes[i] - nodes[i - level]);
    RatPoly out{dd[npts - 1]};
    for (std::size_t i = npts - 1; i-- > 0;) out = out * RatPoly{BigRat(-nodes[i]), BigRat(1)} + RatPoly{dd[i]};

    BigInt Dn;
    mpz_pow_ui(Dn.get_mpz_t(), D.get_mpz_t(), static_cast<unsigned long>(n));
    return out * BigRat(BigRat(1) / BigRat(Dn));
}

bool is_squarefree(const RatPoly& p) {
    if (p.degree() < 2) return !p.is_zero();
    const IntPoly f = to_integer_primitive(p);
    int tried = 0;
    for (std::size_t idx = 0; tried < 3 && idx < 64; ++idx) {
        const std::uint64_t q = nth_odd_prime(idx);
        if (mpz_divisible_ui_p(f.leading().get_mpz_t(), q)) continue;
        ++tried;
        const ModPoly fq = ModPoly::from(f, q);
        if (gcd(fq, derivative(fq)).degree() == 0) return true;
    }
    return gcd(f, derivative(f)).degree() == 0;
}

std::pair<BigInt, RatPoly> squarefree_shift_and_norm(const PolyOverField& g) {
    const long limit = static_cast<long>(g.degree()) * g.field().degree();
    for (long idx = 0; idx <= 2 * limit * limit + 2; ++idx) {
        const BigInt s = alternating(idx);
        RatPoly N = norm_poly(g, s);
        if (is_squarefree(N)) return {s, std::move(N)};
    }
    throw std::logic_error("no squarefree shift found; input is not squarefree over its field");
}

BigInt find_squarefree_shift(const PolyOverField& g) { return squarefree_shift_and_norm(g).first; }

// ---- factorization over K ------------------------------------------------

namespace {

std::vector<std::pair<PolyOverField, int>> squarefree_decomposition_over_field(const PolyOverField& f) {
    std::vector<std::pair<PolyOverField, int>> out;
    const PolyOverField df = derivative(f);
    const PolyOverField b = gcd(f, df);
    PolyOverField c = divrem(f, b).first;
    PolyOverField d = divrem(df, b).first - derivative(c);
    for (int i = 1; c.degree() > 0; ++i) {
        PolyOverField a = d.is_zero() ? make_monic(c) : gcd(c, d);
        c = divrem(c, a).first;
        d = divrem(d, a).first - derivative(c);
        if (a.degree() > 0) out.emplace_back(std::move(a), i);
    }
    return out;
}

PolyOverField monic_from_intpoly(const NumberField& K, const IntPoly& p) {
    return make_monic(PolyOverField::from_integer(K, p));
}

std::vector<PolyOverField> factor_squarefree_over_field(const PolyOverField& a, const FactorOptions& opts) {
    const NumberField& K = a.field();
    if (a.degree() <= 1) return {a};
    if (K.degree() == 1) {
        std::vector<PolyOverField> out;
        for (const auto& [h, mult] : factor_over_Q(*a.as_rational(), opts).factors)
            out.push_back(monic_from_intpoly(K, h));
        return out;
    }
    const auto [s, N] = squarefree_shift_and_norm(a);
    const Factorization fac = factor_over_Q(N, opts);
    if (fac.factors.size() == 1) return {a};

    // Each rational factor H of the norm gives gcd(a(x), H(x + s theta)).
    const FieldElement st = K.generator() * BigRat(s);
    const PolyOverField lin(K, {st, K.one()});
    std::vector<PolyOverField> out;
    int total = 0;
    for (const auto& [H, mult] : fac.factors) {
        PolyOverField acc(K);
        for (std::size_t i = H.size(); i-- > 0;)
            acc = divrem(acc * lin + PolyOverField(K, {K.from_rational(BigRat(H[i]))}), a).second;
        PolyOverField piece = acc.is_zero() ? a : gcd(a, acc);
        total += piece.degree();
        out.push_back(std::move(piece));
    }
    if (total != a.degree()) throw std::logic_error("factor_over_field: recovered degrees do not add up");
    return out;
}

}  // namespace

std::vector<std::pair<PolyOverField, int>> factor_over_field(const PolyOverField& g, const FactorOptions& opts) {
    if (g.is_zero()) throw std::domain_error("factor_over_field of zero polynomial");
    std::vector<std::pair<PolyOverField, int>> out;
    const PolyOverField f = make_monic(g);
    if (f.degree() < 1) return out;
    for (const auto& [part, mult] : squarefree_decomposition_over_field(f))
        for (auto& piece : factor_squarefree_over_field(part, opts)) out.emplace_back(std::move(piece), mult);
    std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
        const int c = compare_canonical(x.first, y.first);
        return c != 0 ? c < 0 : x.second < y.second;
    });
#ifndef NDEBUG
    PolyOverField prod(f.field(), {f.field().one()});
    for (const auto& [piece, mult] : out)
        for (int i = 0; i < mult; ++i) prod = prod * piece;
    if (!(prod == f)) throw std::logic_error("factor_over_field: product check failed");
#endif
    return out;
}

// ---- extensions ----------------------------------------------------------

namespace {

// Smallest-ish d > 0 with d^(D - j) N_j integral for all j (N monic of degree D).
BigInt integral_scale(const RatPoly& N) {
    const int D = N.degree();
    std::map<BigInt, unsigned long> need;
    for (int j = 0; j < D; ++j) {
        BigInt den = N[j].get_den();
        if (den == 1) continue;
        const unsigned long e = static_cast<unsigned long>(D - j);
        auto account = [&](const BigInt& prime, unsigned long v) {
            const unsigned long k = (v + e - 1) / e;
            auto& slot = need[prime];
            slot = std::max(slot, k);
        };
        for (unsigned long q = 2; q < 1000 && den > 1; ++q) {
            unsigned long v = 0;
            while (mpz_divisible_ui_p(den.get_mpz_t(), q)) {
                mpz_divexact_ui(den.get_mpz_t(), den.get_mpz_t(), q);
                ++v;
            }
            if (v) account(BigInt(q), v);
        }
        if (den > 1) account(den, 1);
    }
    BigInt d = 1;
    for (const auto& [prime, k] : need) {
        BigInt pk;
        mpz_pow_ui(pk.get_mpz_t(), prime.get_mpz_t(), k);
        d *= pk;
    }
    return d;
}

}  // namespace

FieldElement ExtensionStep::embed(const FieldElement& a) const {
    if (!(a.field() == lower)) throw std::invalid_argument("embed: element not from the lower field");
    FieldElement acc = upper.zero();
    const IntPoly& num = a.numerator();
    for (std::size_t i = num.size(); i-- > 0;) acc = acc * theta_lower_in_upper + upper.from_rational(BigRat(num[i]));
    return acc * BigRat(BigRat(1) / BigRat(a.denominator()));
}

PolyOverField ExtensionStep::embed(const PolyOverField& p) const {
    std::vector<FieldElement> c;
    c.reserve(p.coeffs().size());
    for (const auto& e : p.coeffs()) c.push_back(embed(e));
    return PolyOverField(upper, std::move(c));
}

ExtensionStep extend_field(const NumberField& K, const PolyOverField& g, int max_degree) {
    if (!(g.field() == K)) throw std::invalid_argument("extend_field: polynomial over a different field");
    if (g.degree() < 2 || !g.is_monic()) throw std::invalid_argument("extend_field: need monic g of degree >= 2");
    const int n = K.degree(), k = g.degree();
    if (max_degree > 0 && n * k > max_degree)
        throw BudgetExceeded("extension degree " + std::to_string(n * k) + " exceeds budget " +
                             std::to_string(max_degree));

    const auto [shift, N] = squarefree_shift_and_norm(g);

    // Integral monic minimal polynomial of scale * gamma.
    const BigInt d = integral_scale(N);
    const int D = N.degree();
    std::vector<BigInt> hc(static_cast<std::size_t>(D + 1));
    BigInt dpow = 1;
    for (int j = D; j >= 0; --j) {
        BigRat v = N[j] * BigRat(dpow);
        if (v.get_den() != 1) throw std::logic_error("integral_scale failed");
        hc[j] = v.get_num();
        dpow *= d;
    }
    const NumberField M(IntPoly(std::move(hc)), false);
    const FieldElement gamma = M.generator() * BigRat(BigRat(1) / BigRat(d));

    FieldElement theta = M.zero();
    if (n == 1) {
        theta = M.from_rational(BigRat(-K.modulus()[0]));
    } else {
        // theta is the unique common root of m(t) and g(t; gamma - shift t) over M.
        const PolyOverField lin(M, {gamma, M.from_rational(BigRat(-shift))});
        PolyOverField G(M), power(M, {M.one()});
        for (std::size_t j = 0; j < g.coeffs().size(); ++j) {
            G = G + PolyOverField::from_rational(M, g[j].rep()) * power;
            power = power * lin;
        }
        const PolyOverField mM = PolyOverField::from_integer(M, K.modulus());
        const PolyOverField common = gcd(mM, divrem(G, mM).second);
        if (common.degree() != 1) throw std::logic_error("extend_field: shifted root is not a primitive element");
        theta = -common[0];
    }

    ExtensionStep step{K, M, theta, gamma - theta * BigRat(shift), shift, d};

    // Substitution checks.
    const PolyOverField mM = PolyOverField::from_integer(M, K.modulus());
    if (!eval_at(mM, step.theta_lower_in_upper).is_zero())
        throw std::logic_error("extend_field: lower modulus does not vanish at embedded generator");
    if (!eval_at(step.embed(g), step.new_root_in_upper).is_zero())
        throw std::logic_error("extend_field: adjoined polynomial does not vanish at the new root");
    return step;
}

}  // namespace starscape
