#include "helpers.hpp"
#include "starscape/factor.hpp"
#include "starscape/modpoly.hpp"

#include <doctest.h>

#include <algorithm>

using namespace starscape;
using test::P;

namespace {

std::vector<std::pair<IntPoly, int>> as_int(const std::vector<std::pair<ModPoly, int>>& fs) {
    std::vector<std::pair<IntPoly, int>> out;
    for (const auto& [f, m] : fs) out.emplace_back(f.to_int(), m);
    return out;
}

BigInt isqrt_ceil(const BigInt& v) {
    BigInt r;
    mpz_sqrt(r.get_mpz_t(), v.get_mpz_t());
    if (r * r < v) ++r;
    return r;
}

// Brute force: does a monic quartic have a monic integer factor of degree 1 or 2?
bool quartic_reducible_brute(const IntPoly& f) {
    const BigInt a0 = f[0];
    if (a0 == 0) return true;
    BigInt sq = 0;
    for (const auto& c : f.coeffs()) sq += c * c;
    // any factor's coefficients are bounded by 2^deg * ||f||_2
    const BigInt B = 4 * isqrt_ceil(sq);
    const long b = B.get_si();
    for (long r = -b; r <= b; ++r)
        if (eval_at(f, BigInt(r)) == 0) return true;
    for (long c1 = -b; c1 <= b; ++c1) {
        if (c1 == 0 || !mpz_divisible_p(a0.get_mpz_t(), BigInt(c1).get_mpz_t())) continue;
        for (long b1 = -b; b1 <= b; ++b1)
            if (divides(IntPoly{BigInt(c1), BigInt(b1), 1}, f)) return true;
    }
    return false;
}

}  // namespace

TEST_CASE("factor_mod_p examples") {
    CHECK(as_int(factor_mod_p(ModPoly::from(P("1 0 1"), 5))) ==
          std::vector<std::pair<IntPoly, int>>{{P("2 1"), 1}, {P("3 1"), 1}});
    CHECK(as_int(factor_mod_p(ModPoly::from(P("1 0 1"), 3))) == std::vector<std::pair<IntPoly, int>>{{P("1 0 1"), 1}});
    CHECK(as_int(factor_mod_p(ModPoly::from(P("0 1"), 7))) == std::vector<std::pair<IntPoly, int>>{{P("0 1"), 1}});
    CHECK(as_int(factor_mod_p(ModPoly::from(P("1 2 1"), 7))) == std::vector<std::pair<IntPoly, int>>{{P("1 1"), 2}});
}

TEST_CASE("factor_mod_p reproduces random inputs") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 200; ++trial) {
        const std::uint64_t p = nth_odd_prime(rng() % 20);
        const ModPoly f = ModPoly::from(test::random_poly(rng, 1 + static_cast<int>(rng() % 9), 50, true), p);
        ModPoly prod = ModPoly::constant(p, 1);
        for (const auto& [g, m] : factor_mod_p(f)) {
            CHECK(g.leading() == 1);
            CHECK(factor_degrees_mod_p(g).size() == 1);
            for (int i = 0; i < m; ++i) prod = prod * g;
        }
        CHECK(prod.to_int() == f.to_int());
    }
}

TEST_CASE("factor_over_Q examples") {
    const Factorization f1 = factor_over_Q(P("-1 0 0 0 0 1"));
    CHECK(f1.unit == 1);
    CHECK(f1.factors == std::vector<std::pair<IntPoly, int>>{{P("-1 1"), 1}, {P("1 1 1 1 1"), 1}});
    CHECK(factor_over_Q(P("-2 0 0 0 1")).factors == std::vector<std::pair<IntPoly, int>>{{P("-2 0 0 0 1"), 1}});
    CHECK(factor_over_Q(P("-1 0 0 0 1")).factors ==
          std::vector<std::pair<IntPoly, int>>{{P("-1 1"), 1}, {P("1 1"), 1}, {P("1 0 1"), 1}});
    const Factorization f4 = factor_over_Q(P("-6 0 6"));
    CHECK(f4.unit == 6);
    CHECK(f4.factors == std::vector<std::pair<IntPoly, int>>{{P("-1 1"), 1}, {P("1 1"), 1}});
    const Factorization f5 = factor_over_Q(P("0 0 -4 -4"));
    CHECK(f5.unit == -4);
    CHECK(f5.factors == std::vector<std::pair<IntPoly, int>>{{P("0 1"), 2}, {P("1 1"), 1}});
}

TEST_CASE("is_irreducible_over_Q examples") {
    CHECK(is_irreducible_over_Q(P("1 0 1")));
    CHECK_FALSE(is_irreducible_over_Q(P("-1 0 1")));
    CHECK(is_irreducible_over_Q(P("1 1 1 1 1")));
    CHECK(is_irreducible_over_Q(P("-1 -1 0 0 0 1")));
    CHECK_FALSE(is_irreducible_over_Q(P("1 1 1 1")));
}

TEST_CASE("products reproduce all small cubics and quartics") {
    for (int d : {3, 4}) {
        test::for_each_monic(d, 3, [](const IntPoly& f) {
            const Factorization fac = factor_over_Q(f);
            CHECK(fac.expand() == to_rational(f));
            for (std::size_t i = 0; i < fac.factors.size(); ++i) {
                CHECK(fac.factors[i].first.leading() > 0);
                CHECK(content(fac.factors[i].first) == 1);
                for (std::size_t j = i + 1; j < fac.factors.size(); ++j)
                    CHECK(gcd(fac.factors[i].first, fac.factors[j].first).degree() == 0);
                if (i > 0) CHECK(compare_canonical(fac.factors[i - 1].first, fac.factors[i].first) < 0);
            }
        });
    }
}

TEST_CASE("irreducibility agrees with brute force on quartics in [-2,2]") {
    int irreducible = 0;
    test::for_each_monic(4, 2, [&](const IntPoly& f) {
        const bool ours = is_irreducible_over_Q(f);
        CHECK_MESSAGE(ours == !quartic_reducible_brute(f), to_string(f));
        irreducible += ours ? 1 : 0;
    });
    CHECK(irreducible > 0);
}

TEST_CASE("rational factor degrees are sums of modular degrees") {
    std::mt19937_64 rng(4);
    for (int trial = 0; trial < 100; ++trial) {
        const IntPoly f = test::random_poly(rng, 2, 5, true) * test::random_poly(rng, 3, 5, true) *
                          test::random_poly(rng, 1 + static_cast<int>(rng() % 4), 5, true);
        if (discriminant(f) == 0) continue;
        const Factorization fac = factor_over_Q(f);
        const BigInt disc = discriminant(f);
        for (std::size_t idx = 0; idx < 4; ++idx) {
            const std::uint64_t p = nth_odd_prime(idx);
            if (mpz_divisible_ui_p(disc.get_mpz_t(), p)) continue;
            for (const auto& [g, m] : fac.factors) {
                std::vector<int> degs = factor_degrees_mod_p(ModPoly::from(g, p));
                int sum = 0;
                for (int dd : degs) sum += dd;
                CHECK(sum == g.degree());
            }
        }
    }
}

TEST_CASE("high degree products with many modular factors") {
    const IntPoly f = P("-1 0 0 0 0 0 0 0 0 0 0 0 1");
    const Factorization fac = factor_over_Q(f);
    CHECK(fac.factors.size() == 6);
    CHECK(fac.expand() == to_rational(f));
    const IntPoly sd = P("1 0 -10 0 1");  // minimal polynomial of sqrt2 + sqrt3
    CHECK(is_irreducible_over_Q(sd));
    const IntPoly g = sd * P("-5 0 1") * P("1 1 1");
    const Factorization fg = factor_over_Q(g);
    CHECK(fg.factors.size() == 3);
    CHECK(fg.expand() == to_rational(g));
}

TEST_CASE("recombination cap raises BudgetExceeded") {
    FactorOptions tight;
    tight.recombination_cap = 0;
    CHECK_THROWS_AS(factor_over_Q(P("1 0 -10 0 1"), tight), BudgetExceeded);
}
