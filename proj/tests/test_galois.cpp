#include "helpers.hpp"
#include "starscape/galois.hpp"
#include "starscape/modpoly.hpp"
#include "starscape/roots.hpp"

#include <doctest.h>

#include <complex>
#include <numeric>

using namespace starscape;
using test::P;

namespace {

std::uint64_t lcm_of(const CycleType& t) {
    std::uint64_t l = 1;
    for (int part : t) l = std::lcm(l, static_cast<std::uint64_t>(part));
    return l;
}

bool all_real(const IntPoly& f, double tol) {
    for (const auto& r : all_roots(f).roots)
        if (std::abs(r.im) >= tol) return false;
    return true;
}

}  // namespace

TEST_CASE("splitting_order_tower examples") {
    const SplitResult z = splitting_order_tower(P("1 1 1 1 1"));
    CHECK(z.status == SplitStatus::ExactTower);
    CHECK(z.order == 4);
    const SplitResult q = splitting_order_tower(P("-2 0 0 0 1"));
    CHECK(q.order == 8);
    CHECK(q.tower_degrees == std::vector<int>{4, 2});
    CHECK(splitting_order_tower(P("-7 1")).order == 1);
    CHECK(splitting_order_tower(P("-2 0 0 1")).order == 6);
    CHECK(splitting_order_tower(P("-2 0 0 1")).tower_degrees == std::vector<int>{3, 2});
    CHECK_THROWS_AS(splitting_order_tower(P("-1 0 1")), std::invalid_argument);
}

TEST_CASE("x^3-2 order is forced by observed cycle types") {
    // A 2-cycle and a 3-cycle inside a subgroup of S3 force all of S3.
    bool two = false, three = false;
    const BigInt disc = discriminant(P("-2 0 0 1"));
    for (std::size_t i = 0, seen = 0; seen < 200; ++i) {
        const std::uint64_t p = nth_odd_prime(i);
        if (mpz_divisible_ui_p(disc.get_mpz_t(), p)) continue;
        ++seen;
        const auto degs = factor_degrees_mod_p(ModPoly::from(P("-2 0 0 1"), p));
        two = two || degs.size() == 2;
        three = three || degs.size() == 1;
    }
    CHECK(two);
    CHECK(three);
}

TEST_CASE("quartic fast path examples") {
    CHECK(quartic_order_fastpath(P("-2 0 0 0 1")).order == 8);
    CHECK(quartic_order_fastpath(P("1 1 1 1 1")).order == 4);
    const SplitResult s = quartic_order_fastpath(P("1 1 0 0 1"));
    CHECK(s.order == 24);
    CHECK(s.status == SplitStatus::ExactFastPathQuartic);
    CHECK(splitting_order_tower(P("1 1 0 0 1"), SplitBudget{.max_absolute_degree = 24}).order == 24);
    CHECK(quartic_order_fastpath(P("1 0 -10 0 1")).order == 4);  // V4: sqrt2 + sqrt3
    CHECK(quartic_order_fastpath(P("12 8 0 0 1")).order == 12);
}

TEST_CASE("resolvent cubic roots are the pairings of quartic roots") {
    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 100; ++trial) {
        const IntPoly f = test::random_poly(rng, 4, 9, true);
        if (discriminant(f) == 0) continue;
        std::vector<std::complex<double>> a;
        for (const auto& r : all_roots(f).roots) a.push_back(r.value());
        // Pairings of the depressed roots y = x + a3/4.
        const double shift = f[3].get_d() / 4;
        std::complex<double> y[4];
        for (int i = 0; i < 4; ++i) y[i] = a[i] + shift;
        const std::complex<double> u[3] = {(y[0] + y[1]) * (y[2] + y[3]), (y[0] + y[2]) * (y[1] + y[3]),
                                           (y[0] + y[3]) * (y[1] + y[2])};
        const RatPoly h = resolvent_cubic(f);
        const std::complex<double> e1 = u[0] + u[1] + u[2], e2 = u[0] * u[1] + u[0] * u[2] + u[1] * u[2],
                                   e3 = u[0] * u[1] * u[2];
        const double scale = 1 + std::abs(e3);
        CHECK(std::abs(-e1 - h[2].get_d()) < 1e-7 * scale);
        CHECK(std::abs(e2 - h[1].get_d()) < 1e-7 * scale);
        CHECK(std::abs(-e3 - h[0].get_d()) < 1e-7 * scale);
    }
}

TEST_CASE("fast path agrees with the tower on quartics in [-1,1]") {
    test::for_each_monic(4, 1, [](const IntPoly& f) {
        if (!is_irreducible_over_Q(f)) return;
        CHECK_MESSAGE(quartic_order_fastpath(f).order == splitting_order_tower(f).order, to_string(f));
    });
}

TEST_CASE("dedekind_cycle_types examples") {
    SplitBudget b;
    b.max_primes_dedekind = 2;
    const auto t = dedekind_cycle_types(P("1 0 1"), b);  // primes 3, 5
    REQUIRE(t.size() == 2);
    CHECK(t[0] == CycleType{2});
    CHECK(t[1] == CycleType{1, 1});
    // disc(x^2-5) = 20: the prime 5 is skipped, so the second type comes from 7
    const auto u = dedekind_cycle_types(P("-5 0 1"), b);
    REQUIRE(u.size() == 2);
    CHECK(u[0] == CycleType{2});  // 5 is not a square mod 3
    CHECK(u[1] == CycleType{2});  // nor mod 7
    CHECK(dedekind_cycle_types(P("1 1 1 1 1")).size() == 50);
}

TEST_CASE("certify_symmetric_prime_degree examples") {
    const IntPoly f = P("-1 -1 0 0 0 1");
    CHECK(certify_symmetric_prime_degree(f, dedekind_cycle_types(f)));
    CHECK_THROWS_AS(certify_symmetric_prime_degree(P("1 1 1 1 1"), {}), std::invalid_argument);
    const IntPoly g = P("-1 -3 0 1");
    CHECK_FALSE(certify_symmetric_prime_degree(g, dedekind_cycle_types(g)));
    CHECK(discriminant(g) == 81);
    CHECK(splitting_order_tower(g).order == 3);
}

TEST_CASE("galois_order dispatch") {
    const SplitResult q = galois_order(P("-5 0 1"));
    CHECK(q.order == 2);
    CHECK(q.status == SplitStatus::ExactDirect);
    const SplitResult s = galois_order(P("-1 -1 0 0 0 1"));
    CHECK(s.order == 120);
    CHECK(s.status == SplitStatus::ExactDedekindCertificate);
    const SplitResult r = galois_order(P("-2 0 0 0 1"));
    CHECK(r.order == 8);
    CHECK(r.status == SplitStatus::ExactFastPathQuartic);
    CHECK(galois_order(P("3 1")).order == 1);
    CHECK(galois_order(P("-1 -3 0 1")).status == SplitStatus::ExactTower);
}

TEST_CASE("quintic groups") {
    CHECK(galois_order(P("-2 0 0 0 0 1")).order == 20);
    CHECK(galois_order(P("12 -5 0 0 0 1")).order == 10);
    CHECK(galois_order(P("1 3 -3 -4 1 1")).order == 5);
    const SplitResult a5 = galois_order(P("16 20 0 0 0 1"));
    CHECK(a5.order == 60);
    CHECK(a5.status == SplitStatus::ExactDedekindCertificate);
}

TEST_CASE("budget exhaustion gives bounds") {
    SplitBudget tight;
    tight.max_absolute_degree = 20;
    const SplitResult b = splitting_order_tower(P("-1 -1 0 0 0 1"), tight);
    CHECK(b.status == SplitStatus::BoundsOnly);
    CHECK(b.lower_bound == 20);
    CHECK(b.upper_bound == 120);
    CHECK(b.order == b.lower_bound);
    CHECK(b.tower_degrees == std::vector<int>{5, 4});
}

TEST_CASE("rigidity") {
    CHECK(rigidity(4, 4) == BigRat(5, 6));
    CHECK(rigidity(4, 8) == BigRat(2, 3));
    for (int d = 1; d <= 6; ++d) CHECK(rigidity(d, factorial(d)) == 0);
    CHECK_THROWS_AS(rigidity(4, 3), std::invalid_argument);
    CHECK_THROWS_AS(rigidity(4, 5), std::invalid_argument);
    CHECK_THROWS_AS(rigidity(4, 48), std::invalid_argument);
}

TEST_CASE("cubics in [-2,2]: order 3 or 6, cyclic ones totally real") {
    test::for_each_monic(3, 2, [](const IntPoly& f) {
        if (!is_irreducible_over_Q(f)) return;
        const SplitResult r = galois_order(f);
        CHECK((r.order == 3 || r.order == 6));
        if (r.order == 3) CHECK(all_real(f, 1e-8));
        CHECK(r.order == splitting_order_tower(f).order);
    });
}

TEST_CASE("random invariants and cycle-type orders") {
    std::mt19937_64 rng(9);
    int done = 0;
    while (done < 150) {
        const int d = 1 + static_cast<int>(rng() % 5);
        const IntPoly f = test::random_poly(rng, d, 4, true);
        if (!is_irreducible_over_Q(f)) continue;
        ++done;
        const SplitResult r = galois_order(f);
        REQUIRE(r.is_exact());
        CHECK(r.order % static_cast<std::uint64_t>(d) == 0);
        CHECK(factorial(d) % r.order == 0);
        const BigRat rig = rigidity(d, r.order);
        CHECK(rig >= 0);
        if (d >= 2) CHECK(rig <= 1 - BigRat(1, BigInt(static_cast<unsigned long>(factorial(d - 1)))));
        if (d % 2 == 1 && r.order == static_cast<std::uint64_t>(d)) CHECK(all_real(f, 1e-8));
        if (r.status == SplitStatus::ExactTower || d == 4)
            for (const auto& t : dedekind_cycle_types(f)) CHECK(r.order % lcm_of(t) == 0);
    }
}
