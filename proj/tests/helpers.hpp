#ifndef STARSCAPE_TEST_HELPERS_HPP
#define STARSCAPE_TEST_HELPERS_HPP

#include "starscape/poly.hpp"

#include <random>
#include <vector>

namespace test {

using starscape::BigInt;
using starscape::BigRat;
using starscape::IntPoly;
using starscape::RatPoly;

inline IntPoly P(const char* s) { return starscape::parse_int_poly(s); }

inline RatPoly Q(const char* s) { return starscape::to_rational(P(s)); }

inline IntPoly random_poly(std::mt19937_64& rng, int degree, int bound, bool monic) {
    std::uniform_int_distribution<int> coef(-bound, bound);
    std::vector<BigInt> c(static_cast<std::size_t>(degree + 1));
    for (auto& v : c) v = coef(rng);
    if (monic) c.back() = 1;
    while (c.back() == 0) c.back() = coef(rng);
    return IntPoly(std::move(c));
}

// Every monic polynomial of the given degree with lower coefficients in [-c, c].
template <class Fn>
void for_each_monic(int degree, int c, Fn&& fn) {
    std::vector<int> a(static_cast<std::size_t>(degree), -c);
    for (;;) {
        std::vector<BigInt> co(a.begin(), a.end());
        co.push_back(1);
        fn(IntPoly(std::move(co)));
        std::size_t i = 0;
        while (i < a.size() && a[i] == c) a[i++] = -c;
        if (i == a.size()) return;
        ++a[i];
    }
}

}  // namespace test

#endif
