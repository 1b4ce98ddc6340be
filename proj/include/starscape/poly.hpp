// Dense univariate polynomials with exact coefficients.
//
// Poly<Scalar> is a value type, constant term first, with no trailing zero
// coefficients (the zero polynomial has no coefficients at all).  The two
// instantiations used throughout are IntPoly (mpz_class) and RatPoly
// (mpq_class); the free functions below are written against those.

#ifndef STARSCAPE_POLY_HPP
#define STARSCAPE_POLY_HPP

#include <gmpxx.h>

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace starscape {

using BigInt = mpz_class;
using BigRat = mpq_class;

template <class Scalar>
class Poly {
public:
    using scalar_type = Scalar;

    Poly() = default;
    Poly(std::initializer_list<Scalar> coeffs) : c_(coeffs) { trim(); }
    explicit Poly(std::vector<Scalar> coeffs) : c_(std::move(coeffs)) { trim(); }

    static Poly constant(const Scalar& v) { return Poly(std::vector<Scalar>{v}); }

    static Poly monomial(const Scalar& v, std::size_t k) {
        std::vector<Scalar> c(k + 1, Scalar(0));
        c[k] = v;
        return Poly(std::move(c));
    }

    static Poly x() { return monomial(Scalar(1), 1); }

    /// -1 for the zero polynomial.
    int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const noexcept { return c_.empty(); }
    std::size_t size() const noexcept { return c_.size(); }

    const Scalar& operator[](std::size_t i) const { return c_[i]; }

    Scalar coeff(std::size_t i) const { return i < c_.size() ? c_[i] : Scalar(0); }

    const Scalar& leading() const {
        if (c_.empty()) throw std::domain_error("leading coefficient of zero polynomial");
        return c_.back();
    }

    bool is_monic() const { return !c_.empty() && c_.back() == 1; }
    bool is_constant() const noexcept { return c_.size() <= 1; }

    const std::vector<Scalar>& coeffs() const noexcept { return c_; }
    std::span<const Scalar> span() const noexcept { return c_; }

    Poly& operator+=(const Poly& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Scalar(0));
        for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
        trim();
        return *this;
    }

    Poly& operator-=(const Poly& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Scalar(0));
        for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
        trim();
        return *this;
    }

    Poly& operator*=(const Scalar& s) {
        if (s == 0) {
            c_.clear();
            return *this;
        }
        for (auto& v : c_) v *= s;
        return *this;
    }

    Poly& operator*=(const Poly& o) { return *this = *this * o; }

    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(Poly a, const Scalar& s) { return a *= s; }
    friend Poly operator*(const Scalar& s, Poly a) { return a *= s; }

    friend Poly operator-(Poly a) {
        for (auto& v : a.c_) v = -v;
        return a;
    }

    friend Poly operator*(const Poly& a, const Poly& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<Scalar> out(a.c_.size() + b.c_.size() - 1, Scalar(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i] == 0) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j) out[i + j] += a.c_[i] * b.c_[j];
        }
        return Poly(std::move(out));
    }

    friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }

private:
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }

    std::vector<Scalar> c_;
};

using IntPoly = Poly<BigInt>;
using RatPoly = Poly<BigRat>;

template <class Scalar>
Poly<Scalar> derivative(const Poly<Scalar>& p) {
    if (p.degree() < 1) return {};
    std::vector<Scalar> d(p.size() - 1);
    for (std::size_t i = 1; i < p.size(); ++i) d[i - 1] = p[i] * static_cast<long>(i);
    return Poly<Scalar>(std::move(d));
}

/// Horner evaluation; Value must accept `Value * Value + Scalar`.
template <class Value, class Scalar>
Value eval_at(const Poly<Scalar>& p, const Value& at) {
    Value acc(0);
    for (std::size_t i = p.size(); i-- > 0;) acc = Value(acc * at + Value(p[i]));
    return acc;
}

/// Orders by degree, then lexicographically on the coefficient list
/// (constant term first, as in the text encoding).
template <class Scalar>
int compare_canonical(const Poly<Scalar>& a, const Poly<Scalar>& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree() ? -1 : 1;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const int c = cmp(a[i], b[i]);
        if (c != 0) return c < 0 ? -1 : 1;
    }
    return 0;
}

// ---- conversions ---------------------------------------------------------

RatPoly to_rational(const IntPoly& p);

/// Scales p by a positive rational so the result has coprime integer
/// coefficients.  The sign is kept unless `positive_leading` is set.
IntPoly to_integer_primitive(const RatPoly& p, bool positive_leading = true);

// ---- integer polynomials -------------------------------------------------

/// Non-negative gcd of the coefficients (0 for the zero polynomial).
BigInt content(const IntPoly& p);
IntPoly primitive_part(const IntPoly& p);

/// lc(q)^(deg p - deg q + 1) p = quot q + rem.
IntPoly pseudo_remainder(const IntPoly& p, const IntPoly& q);

/// Exact division over Z; throws std::domain_error if q does not divide p.
IntPoly exact_divide(const IntPoly& p, const IntPoly& q);

/// Exact quotient if q divides p over Z.
bool divides(const IntPoly& q, const IntPoly& p, IntPoly* quotient = nullptr);

/// Primitive gcd with positive leading coefficient.
IntPoly gcd(const IntPoly& p, const IntPoly& q);

BigInt resultant(const IntPoly& p, const IntPoly& q);

/// (-1)^(d(d-1)/2) Res(p, p') / lc(p).
BigInt discriminant(const IntPoly& p);

/// p(x + shift).
IntPoly taylor_shift(const IntPoly& p, const BigInt& shift);

// ---- rational polynomials ------------------------------------------------

std::pair<RatPoly, RatPoly> divrem(const RatPoly& p, const RatPoly& q);
RatPoly make_monic(const RatPoly& p);

/// Monic gcd; gcd(0, 0) is rejected.
RatPoly gcd(const RatPoly& p, const RatPoly& q);

/// Returns g = gcd(a, b) (monic) and s, t with s a + t b = g.
struct ExtendedGcd {
    RatPoly g, s, t;
};
ExtendedGcd extended_gcd(const RatPoly& a, const RatPoly& b);

BigRat resultant(const RatPoly& p, const RatPoly& q);
BigRat content(const RatPoly& p);
RatPoly squarefree_part(const RatPoly& p);

// ---- text encoding -------------------------------------------------------

/// Coefficients constant term first, single spaces: "-2 0 0 0 1".
/// The zero polynomial is written "0".
std::string to_string(const IntPoly& p);

/// Strict inverse of to_string; throws std::invalid_argument.
IntPoly parse_int_poly(std::string_view text);

}  // namespace starscape

#endif  // STARSCAPE_POLY_HPP
