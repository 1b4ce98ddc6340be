// Arithmetic in absolute number fields Q(theta) = Q[t]/(m(t)) and
// factorization of polynomials over them via norms and an integer shift.

#ifndef STARSCAPE_NUMBER_FIELD_HPP
#define STARSCAPE_NUMBER_FIELD_HPP

#include "starscape/errors.hpp"
#include "starscape/factor.hpp"
#include "starscape/poly.hpp"

#include <memory>
#include <optional>
#include <utility>
#include <vector>

namespace starscape {

class FieldElement;

/// Q(theta) presented by a monic, primitive, irreducible integer polynomial.
/// Cheap to copy; instances built from equal moduli compare equal.
class NumberField {
public:
    /// Throws std::invalid_argument unless `modulus` is monic of degree >= 1
    /// and (when `verify` is set) irreducible over Q.
    explicit NumberField(IntPoly modulus, bool verify = true);

    /// Q itself, presented as Q[t]/(t).
    static NumberField rationals();

    const IntPoly& modulus() const noexcept { return data_->modulus; }
    int degree() const noexcept { return data_->modulus.degree(); }

    FieldElement zero() const;
    FieldElement one() const;
    FieldElement generator() const;
    FieldElement from_rational(const BigRat& q) const;
    /// Reduces `rep` modulo the defining polynomial.
    FieldElement element(const RatPoly& rep) const;

    friend bool operator==(const NumberField& a, const NumberField& b) {
        return a.data_ == b.data_ || a.data_->modulus == b.data_->modulus;
    }

private:
    struct Data {
        IntPoly modulus;
    };
    std::shared_ptr<const Data> data_;
};

/// Residue num(theta) / den with deg num < [K:Q], den > 0 and
/// gcd(content(num), den) = 1.
class FieldElement {
public:
    FieldElement(NumberField field, IntPoly num, BigInt den);

    const NumberField& field() const noexcept { return field_; }
    const IntPoly& numerator() const noexcept { return num_; }
    const BigInt& denominator() const noexcept { return den_; }
    RatPoly rep() const;

    bool is_zero() const noexcept { return num_.is_zero(); }
    bool is_one() const noexcept { return num_.degree() == 0 && num_[0] == den_; }
    /// True when the element lies in Q.
    bool is_rational() const noexcept { return num_.degree() <= 0; }

    /// Throws std::domain_error on zero.
    FieldElement inverse() const;

    friend FieldElement operator+(const FieldElement& a, const FieldElement& b);
    friend FieldElement operator-(const FieldElement& a, const FieldElement& b);
    friend FieldElement operator*(const FieldElement& a, const FieldElement& b);
    friend FieldElement operator*(const FieldElement& a, const BigRat& q);
    friend FieldElement operator-(const FieldElement& a);
    friend bool operator==(const FieldElement& a, const FieldElement& b) {
        return a.field_ == b.field_ && a.den_ == b.den_ && a.num_ == b.num_;
    }

    /// Total order used for canonical sorting (degree, then coefficients).
    friend int compare(const FieldElement& a, const FieldElement& b);

private:
    NumberField field_;
    IntPoly num_;
    BigInt den_;
};

/// Polynomial in x with coefficients in one number field, constant term first.
class PolyOverField {
public:
    explicit PolyOverField(NumberField field) : field_(std::move(field)) {}
    PolyOverField(NumberField field, std::vector<FieldElement> coeffs);

    /// Coefficients of `p` viewed as constants of `field`.
    static PolyOverField from_rational(const NumberField& field, const RatPoly& p);
    static PolyOverField from_integer(const NumberField& field, const IntPoly& p);

    const NumberField& field() const noexcept { return field_; }
    int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const noexcept { return c_.empty(); }
    const FieldElement& operator[](std::size_t i) const { return c_[i]; }
    const FieldElement& leading() const;
    const std::vector<FieldElement>& coeffs() const noexcept { return c_; }
    FieldElement coeff(std::size_t i) const;
    bool is_monic() const { return !c_.empty() && c_.back().is_one(); }

    /// Set when every coefficient is rational; returns that polynomial.
    std::optional<RatPoly> as_rational() const;

    friend PolyOverField operator+(const PolyOverField& a, const PolyOverField& b);
    friend PolyOverField operator-(const PolyOverField& a, const PolyOverField& b);
    friend PolyOverField operator*(const PolyOverField& a, const PolyOverField& b);
    friend PolyOverField operator*(const PolyOverField& a, const FieldElement& s);
    friend bool operator==(const PolyOverField& a, const PolyOverField& b) {
        return a.field_ == b.field_ && a.c_ == b.c_;
    }

private:
    void trim();
    NumberField field_;
    std::vector<FieldElement> c_;
};

std::pair<PolyOverField, PolyOverField> divrem(const PolyOverField& a, const PolyOverField& b);
PolyOverField make_monic(const PolyOverField& a);
/// Monic gcd over the field.
PolyOverField gcd(const PolyOverField& a, const PolyOverField& b);
PolyOverField derivative(const PolyOverField& a);
FieldElement eval_at(const PolyOverField& p, const FieldElement& at);
/// p(x + shift).
PolyOverField shift_variable(const PolyOverField& p, const FieldElement& shift);
int compare_canonical(const PolyOverField& a, const PolyOverField& b);

/// N(g(x - shift * theta)) = Res_t(m(t), g(t, x - shift * t)), in Q[x].
RatPoly norm_poly(const PolyOverField& g, const BigInt& shift);

/// True when p has no repeated factor over Q.
bool is_squarefree(const RatPoly& p);

/// First s in 0, 1, -1, 2, -2, ... with norm_poly(g, s) squarefree, together
/// with that norm.  g must be squarefree over its field.
std::pair<BigInt, RatPoly> squarefree_shift_and_norm(const PolyOverField& g);
BigInt find_squarefree_shift(const PolyOverField& g);

/// Monic irreducible factors over the field with multiplicities, sorted by
/// compare_canonical.  The product of factor^multiplicity is g made monic.
std::vector<std::pair<PolyOverField, int>> factor_over_field(const PolyOverField& g,
                                                             const FactorOptions& opts = {});

/// Absolute presentation of lower[y]/(g(y)).
struct ExtensionStep {
    NumberField lower;
    NumberField upper;
    FieldElement theta_lower_in_upper;
    FieldElement new_root_in_upper;
    /// gamma = new_root + shift * theta_lower generates upper; the upper
    /// generator is scale * gamma.
    BigInt shift;
    BigInt scale;

    /// Image of an element of `lower` in `upper`.
    FieldElement embed(const FieldElement& a) const;
    PolyOverField embed(const PolyOverField& p) const;
};

/// g monic irreducible over K of degree >= 2.  Throws BudgetExceeded when the
/// resulting absolute degree would exceed `max_degree` (0 = unlimited).
ExtensionStep extend_field(const NumberField& K, const PolyOverField& g, int max_degree = 0);

}  // namespace starscape

#endif  // STARSCAPE_NUMBER_FIELD_HPP
