// Order of the Galois group of an irreducible integer polynomial, and the
// rigidity (d! - |G|) / d! derived from it.

#ifndef STARSCAPE_GALOIS_HPP
#define STARSCAPE_GALOIS_HPP

#include "starscape/factor.hpp"
#include "starscape/poly.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace starscape {

struct SplitBudget {
    int max_absolute_degree = 64;
    int max_primes_dedekind = 50;
    std::uint64_t recombination_cap = std::uint64_t{1} << 20;

    FactorOptions factor_options() const {
        FactorOptions o;
        o.recombination_cap = recombination_cap;
        return o;
    }
};

enum class SplitStatus {
    ExactDirect,  ///< degree <= 2, no computation needed
    ExactTower,
    ExactFastPathQuartic,
    ExactDedekindCertificate,
    BoundsOnly,
};

std::string_view to_string(SplitStatus s);
std::optional<SplitStatus> parse_split_status(std::string_view s);

struct SplitResult {
    SplitStatus status = SplitStatus::BoundsOnly;
    int degree = 0;
    /// Exact order, or the lower bound for BoundsOnly.
    std::uint64_t order = 0;
    std::uint64_t lower_bound = 0;
    std::uint64_t upper_bound = 0;
    std::vector<int> tower_degrees;

    bool is_exact() const noexcept { return status != SplitStatus::BoundsOnly; }
};

/// Factor degrees of f mod p, descending.
using CycleType = std::vector<int>;

std::uint64_t factorial(int d);

/// Splitting-field tower: adjoin one root of the smallest nonlinear factor at
/// a time until the remaining cofactor splits into linear factors.
SplitResult splitting_order_tower(const IntPoly& f, const SplitBudget& budget = {});

/// Resolvent cubic x^3 - 2p x^2 + (p^2 - 4r) x + q^2 of the depressed quartic
/// y^4 + p y^2 + q y + r; its roots are (a1+a2)(a3+a4) and the other pairings.
RatPoly resolvent_cubic(const IntPoly& quartic);

/// Classification of an irreducible monic quartic via its resolvent cubic and
/// discriminant.
SplitResult quartic_order_fastpath(const IntPoly& f, const FactorOptions& opts = {});

/// Cycle types from the first `budget.max_primes_dedekind` odd primes not
/// dividing disc(f).
std::vector<CycleType> dedekind_cycle_types(const IntPoly& f, const SplitBudget& budget = {});

/// True when deg f is 3 or 5 and some cycle type is a transposition, which
/// forces the full symmetric group.  false means "unknown".
bool certify_symmetric_prime_degree(const IntPoly& f, std::span<const CycleType> types);

/// Quintics only: a cycle type containing a 3-cycle rules out every transitive
/// group but A5 and S5; the discriminant decides between them (60 or 120).
std::optional<std::uint64_t> certify_quintic_by_three_cycle(const IntPoly& f, std::span<const CycleType> types,
                                                             bool discriminant_is_square);

/// Dispatch: degree <= 2 directly, quartics by the fast path, degree 3 and 5
/// by Dedekind certificates with the tower as fallback, everything else by the
/// tower.
SplitResult galois_order(const IntPoly& f, const SplitBudget& budget = {});

/// (d! - order) / d!; throws std::invalid_argument unless
/// d <= order <= d! and order divides d!.
BigRat rigidity(int degree, std::uint64_t order);

bool is_perfect_square(const BigInt& v);

}  // namespace starscape

#endif  // STARSCAPE_GALOIS_HPP
