#include "nf_helpers.hpp"
#include "starscape/roots.hpp"

#include <doctest.h>

#include <complex>

using namespace starscape;
using test::P;
using test::PK;
using test::Q;

namespace {

const NumberField& gaussian() {
    static const NumberField K(P("1 0 1"));
    return K;
}
const NumberField& sqrt2() {
    static const NumberField K(P("-2 0 1"));
    return K;
}
const NumberField& fourth_root2() {
    static const NumberField K(P("-2 0 0 0 1"));
    return K;
}

RatPoly rep(const char* s) { return Q(s); }

std::complex<double> eval_c(const RatPoly& p, std::complex<double> z) {
    std::complex<double> acc = 0;
    for (std::size_t i = p.size(); i-- > 0;) acc = acc * z + p[i].get_d();
    return acc;
}

// Product over the embeddings theta_j of g(theta_j, x0 - s theta_j).
std::complex<double> numeric_norm(const PolyOverField& g, long s, double x0) {
    const RootSet thetas = all_roots(g.field().modulus());
    std::complex<double> prod = 1;
    for (const auto& r : thetas.roots) {
        const std::complex<double> th = r.value(), x = x0 - static_cast<double>(s) * th;
        std::complex<double> acc = 0;
        for (std::size_t i = g.coeffs().size(); i-- > 0;) acc = acc * x + eval_c(g[i].rep(), th);
        prod *= acc;
    }
    return prod;
}

}  // namespace

TEST_CASE("element arithmetic") {
    const auto& Ki = gaussian();
    CHECK(Ki.generator() * Ki.generator() == Ki.from_rational(-1));
    const auto& K4 = fourth_root2();
    const FieldElement t2 = K4.generator() * K4.generator();
    CHECK(t2 * t2 == K4.from_rational(2));
    const FieldElement a = K4.element(rep("1 -3 0 5"));
    CHECK(a + K4.zero() == a);
    CHECK(a - a == K4.zero());
    CHECK((a * BigRat(1, 2)).denominator() == 2);
    CHECK_THROWS_AS(NumberField(P("-1 0 1")), std::invalid_argument);
    CHECK_THROWS_AS(Ki.generator() + K4.generator(), std::invalid_argument);
}

TEST_CASE("element inverse") {
    const auto& K4 = fourth_root2();
    CHECK(K4.generator().inverse() == K4.element(RatPoly{0, 0, 0, BigRat(1, 2)}));
    CHECK(K4.one().inverse() == K4.one());
    const auto& Ki = gaussian();
    CHECK(Ki.generator().inverse() == -Ki.generator());
    CHECK_THROWS_AS(Ki.zero().inverse(), std::domain_error);
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 50; ++trial) {
        const FieldElement a = K4.element(to_rational(test::random_poly(rng, 3, 7, false)));
        if (a.is_zero()) continue;
        CHECK(a * a.inverse() == K4.one());
    }
}

TEST_CASE("norm_poly examples") {
    const auto& Ki = gaussian();
    CHECK(norm_poly(PK(Ki, {rep("0 -1"), rep("1")}), 0) == Q("1 0 1"));
    const auto& K2 = sqrt2();
    CHECK(norm_poly(PK(K2, {rep("0 1"), rep("0"), rep("1")}), 0) == Q("-2 0 0 0 1"));
    CHECK(norm_poly(PK(K2, {rep("1")}), 0) == Q("1"));
    CHECK(norm_poly(PK(fourth_root2(), {rep("1")}), 3) == Q("1"));
}

TEST_CASE("find_squarefree_shift examples") {
    const auto& Ki = gaussian();
    const PolyOverField g = PolyOverField::from_integer(Ki, P("1 0 1"));
    CHECK(norm_poly(g, 0) == Q("1 0 1") * Q("1 0 1"));
    // the shifted roots are +-(s+1)i and +-(s-1)i, so s = 1 and s = -1 collide at 0
    CHECK(norm_poly(g, 1) == Q("0 0 4 0 1"));
    CHECK(find_squarefree_shift(g) == 2);
    CHECK(find_squarefree_shift(PK(sqrt2(), {rep("0 1"), rep("0"), rep("1")})) == 0);
    CHECK(find_squarefree_shift(PolyOverField::from_integer(NumberField::rationals(), P("1 1 1 1 1"))) == 0);
}

TEST_CASE("factor_over_field examples") {
    const auto& K4 = fourth_root2();
    const auto th = K4.generator();
    const auto facs = factor_over_field(PolyOverField::from_integer(K4, P("-2 0 0 0 1")));
    REQUIRE(facs.size() == 3);
    std::vector<PolyOverField> expected = {PolyOverField(K4, {-th, K4.one()}), PolyOverField(K4, {th, K4.one()}),
                                           PolyOverField(K4, {th * th, K4.zero(), K4.one()})};
    for (const auto& e : expected) {
        bool found = false;
        for (const auto& [f, m] : facs) found = found || (f == e && m == 1);
        CHECK(found);
    }

    const NumberField Kz(P("1 1 1 1 1"));
    const auto zf = factor_over_field(PolyOverField::from_integer(Kz, P("1 1 1 1 1")));
    REQUIRE(zf.size() == 4);
    FieldElement power = Kz.one();
    for (int k = 1; k <= 4; ++k) {
        power = power * Kz.generator();
        const PolyOverField lin(Kz, {-power, Kz.one()});
        bool found = false;
        for (const auto& [f, m] : zf) found = found || f == lin;
        CHECK(found);
    }

    const PolyOverField lin(K4, {th, K4.from_rational(3)});
    const auto lf = factor_over_field(lin);
    REQUIRE(lf.size() == 1);
    CHECK(lf[0].first == make_monic(lin));
}

TEST_CASE("repeated factors over a field") {
    const auto& Ki = gaussian();
    const PolyOverField xi(Ki, {-Ki.generator(), Ki.one()});
    const PolyOverField g = xi * xi * PolyOverField::from_integer(Ki, P("-2 0 1"));
    const auto facs = factor_over_field(g);
    CHECK(test::expand(g, facs) == g);
    int total = 0;
    for (const auto& [f, m] : facs) total += m * f.degree();
    CHECK(total == 4);
}

TEST_CASE("extend_field examples") {
    const ExtensionStep s1 = extend_field(NumberField::rationals(), PolyOverField::from_integer(NumberField::rationals(), P("1 0 1")));
    CHECK(s1.upper.modulus() == P("1 0 1"));
    CHECK(s1.new_root_in_upper == s1.upper.generator());

    const auto& K2 = sqrt2();
    const PolyOverField g2 = PK(K2, {rep("0 1"), rep("0"), rep("1")});
    const ExtensionStep s2 = extend_field(K2, g2);
    CHECK(s2.upper.degree() == 4);
    CHECK(eval_at(s2.embed(g2), s2.new_root_in_upper).is_zero());
    CHECK(eval_at(PolyOverField::from_integer(s2.upper, K2.modulus()), s2.theta_lower_in_upper).is_zero());

    const auto& K4 = fourth_root2();
    const PolyOverField g4 = PolyOverField(K4, {K4.generator() * K4.generator(), K4.zero(), K4.one()});
    const ExtensionStep s4 = extend_field(K4, g4);
    CHECK(s4.upper.degree() == 8);
    CHECK(eval_at(s4.embed(g4), s4.new_root_in_upper).is_zero());
    CHECK_THROWS_AS(extend_field(K4, g4, 6), BudgetExceeded);
}

TEST_CASE("norm properties over three fields") {
    std::mt19937_64 rng(6);
    for (const NumberField* K : {&gaussian(), &sqrt2(), &fourth_root2()}) {
        for (int trial = 0; trial < 40; ++trial) {
            const PolyOverField a = test::random_poly_over(rng, *K, 1 + static_cast<int>(rng() % 3), 4);
            const PolyOverField b = test::random_poly_over(rng, *K, 1 + static_cast<int>(rng() % 3), 4);
            const long s = static_cast<long>(rng() % 5) - 2;
            const RatPoly na = norm_poly(a, s), nb = norm_poly(b, s);
            CHECK(norm_poly(a * b, s) == na * nb);
            CHECK(na.degree() == a.degree() * K->degree());
            for (double x0 : {0.5, -1.25}) {
                const std::complex<double> expect = numeric_norm(a, s, x0);
                const double got = eval_c(na, x0).real();
                CHECK(std::abs(got - expect.real()) <= 1e-6 * (1 + std::abs(got)));
                CHECK(std::abs(expect.imag()) <= 1e-6 * (1 + std::abs(got)));
            }
        }
    }
}

TEST_CASE("factor products over three fields") {
    std::mt19937_64 rng(7);
    for (const NumberField* K : {&gaussian(), &sqrt2(), &fourth_root2()}) {
        for (int trial = 0; trial < 40; ++trial) {
            PolyOverField g = test::random_poly_over(rng, *K, 1 + static_cast<int>(rng() % 2), 3);
            if (trial % 2 == 0) g = g * test::random_poly_over(rng, *K, 1 + static_cast<int>(rng() % 2), 3);
            const auto facs = factor_over_field(g);
            CHECK(test::expand(g, facs) == g);
            for (const auto& [f, m] : facs) {
                CHECK(f.is_monic());
                CHECK(factor_over_field(f).size() == 1);
            }
        }
    }
}

TEST_CASE("degree-1 field agrees with factor_over_Q") {
    const NumberField Qf = NumberField::rationals();
    test::for_each_monic(3, 2, [&](const IntPoly& f) {
        const auto over_field = factor_over_field(PolyOverField::from_integer(Qf, f));
        const Factorization over_q = factor_over_Q(f);
        REQUIRE(over_field.size() == over_q.factors.size());
        for (std::size_t i = 0; i < over_field.size(); ++i) {
            CHECK(over_field[i].second == over_q.factors[i].second);
            CHECK(over_field[i].first.as_rational() == to_rational(over_q.factors[i].first));
        }
    });
}
