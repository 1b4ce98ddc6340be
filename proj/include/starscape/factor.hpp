// Factorization of univariate polynomials over Q.
//
// Squarefree decomposition (Yun), factorization modulo a good prime,
// quadratic Hensel lifting past the Landau-Mignotte bound, then exhaustive
// recombination of the lifted modular factors.

#ifndef STARSCAPE_FACTOR_HPP
#define STARSCAPE_FACTOR_HPP

#include "starscape/errors.hpp"
#include "starscape/poly.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace starscape {

struct FactorOptions {
    /// Subsets tried during recombination before giving up with BudgetExceeded.
    std::uint64_t recombination_cap = std::uint64_t{1} << 20;
    /// Good primes examined; the one with the fewest modular factors is lifted.
    int primes_to_try = 5;
};

/// unit * prod(factor^multiplicity) reproduces the input exactly.  Factors are
/// primitive with positive leading coefficient, irreducible over Q, pairwise
/// coprime, and sorted by compare_canonical.
struct Factorization {
    BigRat unit;
    std::vector<std::pair<IntPoly, int>> factors;

    RatPoly expand() const;
};

/// Yun's algorithm over Z.  f primitive with positive leading coefficient;
/// returns (a_i, i) with f = prod a_i^i, each a_i squarefree, deg a_i >= 1.
std::vector<std::pair<IntPoly, int>> squarefree_decomposition(const IntPoly& f);

/// Irreducible factors of a squarefree primitive f with positive leading
/// coefficient (unsorted).
std::vector<IntPoly> factor_squarefree(const IntPoly& f, const FactorOptions& opts = {});

Factorization factor_over_Q(const IntPoly& f, const FactorOptions& opts = {});
Factorization factor_over_Q(const RatPoly& f, const FactorOptions& opts = {});

bool is_irreducible_over_Q(const IntPoly& f, const FactorOptions& opts = {});

/// Coefficient bound for any factor of f (times lc f): 2^deg * ||f||_2 * |lc f|.
BigInt factor_coefficient_bound(const IntPoly& f);

}  // namespace starscape

#endif  // STARSCAPE_FACTOR_HPP
