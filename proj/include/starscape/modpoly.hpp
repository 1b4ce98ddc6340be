// Polynomials over Z/pZ for a word-sized prime p < 2^32.

#ifndef STARSCAPE_MODPOLY_HPP
#define STARSCAPE_MODPOLY_HPP

#include "starscape/poly.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace starscape {

class ModPoly {
public:
    ModPoly() = default;
    ModPoly(std::uint64_t modulus, std::vector<std::uint64_t> coeffs);

    static ModPoly from(const IntPoly& p, std::uint64_t modulus);
    static ModPoly constant(std::uint64_t modulus, std::uint64_t v) { return ModPoly(modulus, {v}); }
    static ModPoly x(std::uint64_t modulus) { return ModPoly(modulus, {0, 1}); }

    std::uint64_t modulus() const noexcept { return p_; }
    int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const noexcept { return c_.empty(); }
    bool is_one() const noexcept { return c_.size() == 1 && c_[0] == 1; }
    std::uint64_t operator[](std::size_t i) const { return c_[i]; }
    std::uint64_t leading() const { return c_.back(); }
    const std::vector<std::uint64_t>& coeffs() const noexcept { return c_; }

    /// Lift to integers with representatives in [0, p).
    IntPoly to_int() const;

    friend ModPoly operator+(const ModPoly& a, const ModPoly& b);
    friend ModPoly operator-(const ModPoly& a, const ModPoly& b);
    friend ModPoly operator*(const ModPoly& a, const ModPoly& b);
    friend ModPoly operator*(const ModPoly& a, std::uint64_t s);
    friend bool operator==(const ModPoly& a, const ModPoly& b) { return a.p_ == b.p_ && a.c_ == b.c_; }

private:
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }

    std::uint64_t p_ = 0;
    std::vector<std::uint64_t> c_;
};

std::uint64_t mod_inverse(std::uint64_t a, std::uint64_t p);
std::uint64_t mod_pow(std::uint64_t b, std::uint64_t e, std::uint64_t p);

std::pair<ModPoly, ModPoly> divrem(const ModPoly& a, const ModPoly& b);
ModPoly make_monic(const ModPoly& a);
ModPoly gcd(const ModPoly& a, const ModPoly& b);
ModPoly derivative(const ModPoly& a);

/// s a + t b = gcd(a, b) (monic), deg s < deg b, deg t < deg a.
struct ModExtendedGcd {
    ModPoly g, s, t;
};
ModExtendedGcd extended_gcd(const ModPoly& a, const ModPoly& b);

/// base^e mod m, e given as a big integer.
ModPoly powmod(const ModPoly& base, const BigInt& e, const ModPoly& m);

/// Complete factorization into monic irreducibles with multiplicities, sorted
/// by (degree, coefficients).  The leading coefficient of the input is dropped.
std::vector<std::pair<ModPoly, int>> factor_mod_p(const ModPoly& f);

/// Degrees of the irreducible factors of a squarefree f, ascending.
std::vector<int> factor_degrees_mod_p(const ModPoly& f);

/// The n-th odd prime (3, 5, 7, ...), from a cached table.
std::uint64_t nth_odd_prime(std::size_t n);

}  // namespace starscape

#endif  // STARSCAPE_MODPOLY_HPP
