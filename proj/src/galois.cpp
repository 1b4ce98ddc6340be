#include "starscape/galois.hpp"

#include "starscape/modpoly.hpp"
#include "starscape/number_field.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace starscape {

std::string_view to_string(SplitStatus s) {
    switch (s) {
        case SplitStatus::ExactDirect: return "exact_direct";
        case SplitStatus::ExactTower: return "exact_tower";
        case SplitStatus::ExactFastPathQuartic: return "exact_quartic";
        case SplitStatus::ExactDedekindCertificate: return "exact_dedekind";
        case SplitStatus::BoundsOnly: return "bounds_only";
    }
    return "unknown";
}

std::optional<SplitStatus> parse_split_status(std::string_view s) {
    for (auto st : {SplitStatus::ExactDirect, SplitStatus::ExactTower, SplitStatus::ExactFastPathQuartic,
                    SplitStatus::ExactDedekindCertificate, SplitStatus::BoundsOnly})
        if (to_string(st) == s) return st;
    return std::nullopt;
}

std::uint64_t factorial(int d) {
    if (d < 0 || d > 20) throw std::out_of_range("factorial argument out of range");
    std::uint64_t r = 1;
    for (int i = 2; i <= d; ++i) r *= static_cast<std::uint64_t>(i);
    return r;
}

bool is_perfect_square(const BigInt& v) { return v >= 0 && mpz_perfect_square_p(v.get_mpz_t()) != 0; }

namespace {

void require_monic(const IntPoly& f, const char* who) {
    if (f.degree() < 1 || !f.is_monic()) throw std::invalid_argument(std::string(who) + ": need a monic polynomial");
    if (f.degree() > 20) throw std::invalid_argument(std::string(who) + ": degree above 20 is not supported");
}

SplitResult exact(SplitStatus st, int d, std::uint64_t order) {
    SplitResult r;
    r.status = st;
    r.degree = d;
    r.order = r.lower_bound = r.upper_bound = order;
    return r;
}

SplitResult bounds(int d, std::uint64_t lower, std::vector<int> tower) {
    SplitResult r;
    r.status = SplitStatus::BoundsOnly;
    r.degree = d;
    r.order = r.lower_bound = std::max<std::uint64_t>(lower, static_cast<std::uint64_t>(d));
    r.upper_bound = factorial(d);
    r.tower_degrees = std::move(tower);
    return r;
}

// Calls visit(type) for successive good primes until it returns true or
// `limit` primes have been seen.
void for_each_cycle_type(const IntPoly& f, int limit, const std::function<bool(const CycleType&)>& visit) {
    const BigInt disc = discriminant(f);
    int seen = 0;
    for (std::size_t idx = 0; seen < limit; ++idx) {
        const std::uint64_t p = nth_odd_prime(idx);
        if (mpz_divisible_ui_p(disc.get_mpz_t(), p)) continue;
        ++seen;
        CycleType t = factor_degrees_mod_p(ModPoly::from(f, p));
        std::sort(t.begin(), t.end(), std::greater<>());
        if (visit(t)) return;
    }
}

bool is_transposition(const CycleType& t) {
    return !t.empty() && t[0] == 2 && std::count(t.begin(), t.end(), 2) == 1;
}

bool has_three(const CycleType& t) { return std::find(t.begin(), t.end(), 3) != t.end(); }

}  // namespace

SplitResult splitting_order_tower(const IntPoly& f, const SplitBudget& budget) {
    require_monic(f, "splitting_order_tower");
    const int d = f.degree();
    const FactorOptions opts = budget.factor_options();
    NumberField K = NumberField::rationals();
    PolyOverField cof = PolyOverField::from_integer(K, f);
    std::uint64_t n = 1;
    std::vector<int> tower;
    try {
        while (cof.degree() > 1) {
            std::vector<PolyOverField> nonlinear;
            if (tower.empty()) {
                if (!is_irreducible_over_Q(f, opts))
                    throw std::invalid_argument("splitting_order_tower: polynomial is reducible: " + to_string(f));
                nonlinear.push_back(cof);
            } else {
                for (auto& [g, mult] : factor_over_field(cof, opts))
                    if (g.degree() > 1) nonlinear.push_back(std::move(g));
            }
            if (nonlinear.empty()) break;
            const int k = nonlinear.front().degree();
            if (budget.max_absolute_degree > 0 && n * static_cast<std::uint64_t>(k) >
                                                      static_cast<std::uint64_t>(budget.max_absolute_degree))
                return bounds(d, n, tower);
            // An irreducible quadratic cofactor splits once one root is adjoined.
            if (cof.degree() == 2) {
                n *= 2;
                tower.push_back(2);
                break;
            }
            const ExtensionStep step = extend_field(K, nonlinear.front(), budget.max_absolute_degree);
            n *= static_cast<std::uint64_t>(k);
            tower.push_back(k);
            PolyOverField prod(step.upper, {step.upper.one()});
            for (const auto& g : nonlinear) prod = prod * step.embed(g);
            const PolyOverField root_factor(step.upper, {-step.new_root_in_upper, step.upper.one()});
            auto [quot, rem] = divrem(prod, root_factor);
            if (!rem.is_zero()) throw std::logic_error("splitting_order_tower: adjoined root does not divide cofactor");
            cof = std::move(quot);
            K = step.upper;
        }
    } catch (const BudgetExceeded&) {
        return bounds(d, n, tower);
    }
    SplitResult r = exact(SplitStatus::ExactTower, d, n);
    r.tower_degrees = std::move(tower);
    return r;
}

RatPoly resolvent_cubic(const IntPoly& quartic) {
    if (quartic.degree() != 4 || !quartic.is_monic()) throw std::invalid_argument("resolvent_cubic: need a monic quartic");
    const BigRat a(quartic[3]), b(quartic[2]), c(quartic[1]), d(quartic[0]);
    // x = y - a/4
    const BigRat p = b - 3 * a * a / 8;
    const BigRat q = c - a * b / 2 + a * a * a / 8;
    const BigRat r = d - a * c / 4 + a * a * b / 16 - 3 * a * a * a * a / 256;
    return RatPoly{BigRat(q * q), BigRat(p * p - 4 * r), BigRat(-2 * p), BigRat(1)};
}

SplitResult quartic_order_fastpath(const IntPoly& f, const FactorOptions& opts) {
    require_monic(f, "quartic_order_fastpath");
    if (f.degree() != 4) throw std::invalid_argument("quartic_order_fastpath: degree must be 4");
    const BigInt disc = discriminant(f);
    const Factorization res = factor_over_Q(resolvent_cubic(f), opts);
    int rational_roots = 0;
    for (const auto& [g, m] : res.factors)
        if (g.degree() == 1) rational_roots += m;
    const bool square = is_perfect_square(disc);
    if (rational_roots == 0) return exact(SplitStatus::ExactFastPathQuartic, 4, square ? 12 : 24);
    if (rational_roots == 3) return exact(SplitStatus::ExactFastPathQuartic, 4, 4);

    // Exactly one rational root: cyclic or dihedral, decided over Q(sqrt(disc)).
    BigInt D = disc;
    for (unsigned long s = 2; s < 1000; ++s) {
        const unsigned long s2 = s * s;
        while (mpz_divisible_ui_p(D.get_mpz_t(), s2)) mpz_divexact_ui(D.get_mpz_t(), D.get_mpz_t(), s2);
    }
    const NumberField K(IntPoly{BigInt(-D), 0, 1}, false);
    const auto facs = factor_over_field(PolyOverField::from_integer(K, f), opts);
    return exact(SplitStatus::ExactFastPathQuartic, 4, facs.size() == 1 ? 8 : 4);
}

std::vector<CycleType> dedekind_cycle_types(const IntPoly& f, const SplitBudget& budget) {
    require_monic(f, "dedekind_cycle_types");
    std::vector<CycleType> out;
    for_each_cycle_type(f, budget.max_primes_dedekind, [&](const CycleType& t) {
        out.push_back(t);
        return false;
    });
    return out;
}

bool certify_symmetric_prime_degree(const IntPoly& f, std::span<const CycleType> types) {
    if (f.degree() != 3 && f.degree() != 5)
        throw std::invalid_argument("certify_symmetric_prime_degree: degree must be 3 or 5");
    return std::any_of(types.begin(), types.end(), is_transposition);
}

std::optional<std::uint64_t> certify_quintic_by_three_cycle(const IntPoly& f, std::span<const CycleType> types,
                                                             bool discriminant_is_square) {
    if (f.degree() != 5) throw std::invalid_argument("certify_quintic_by_three_cycle: degree must be 5");
    if (!std::any_of(types.begin(), types.end(), has_three)) return std::nullopt;
    return discriminant_is_square ? 60 : 120;
}

SplitResult galois_order(const IntPoly& f, const SplitBudget& budget) {
    require_monic(f, "galois_order");
    const int d = f.degree();
    if (d <= 2) return exact(SplitStatus::ExactDirect, d, static_cast<std::uint64_t>(d));
    if (d == 4) return quartic_order_fastpath(f, budget.factor_options());
    if (d == 3 || d == 5) {
        const bool square = is_perfect_square(discriminant(f));
        std::optional<std::uint64_t> certified;
        // An even discriminant-square group never contains a transposition.
        for_each_cycle_type(f, budget.max_primes_dedekind, [&](const CycleType& t) {
            const CycleType one[] = {t};
            if (!square && certify_symmetric_prime_degree(f, one)) certified = factorial(d);
            else if (d == 5)
                certified = certify_quintic_by_three_cycle(f, one, square);
            return certified.has_value();
        });
        if (certified) return exact(SplitStatus::ExactDedekindCertificate, d, *certified);
    }
    return splitting_order_tower(f, budget);
}

BigRat rigidity(int degree, std::uint64_t order) {
    if (degree < 1 || degree > 20) throw std::invalid_argument("rigidity: degree out of range");
    const std::uint64_t full = factorial(degree);
    if (order < static_cast<std::uint64_t>(degree) || order > full || full % order != 0)
        throw std::invalid_argument("rigidity: order " + std::to_string(order) + " impossible for degree " +
                                    std::to_string(degree));
    BigRat r(BigInt(static_cast<unsigned long>(full - order)), BigInt(static_cast<unsigned long>(full)));
    r.canonicalize();
    return r;
}

}  // namespace starscape
