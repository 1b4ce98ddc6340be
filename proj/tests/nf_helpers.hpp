#ifndef STARSCAPE_TEST_NF_HELPERS_HPP
#define STARSCAPE_TEST_NF_HELPERS_HPP

#include "helpers.hpp"
#include "starscape/number_field.hpp"

namespace test {

using starscape::FieldElement;
using starscape::NumberField;
using starscape::PolyOverField;

// Polynomial over K from coefficient representations in the generator t.
inline PolyOverField PK(const NumberField& K, std::vector<RatPoly> reps) {
    std::vector<FieldElement> c;
    for (auto& r : reps) c.push_back(K.element(r));
    return PolyOverField(K, std::move(c));
}

inline PolyOverField random_poly_over(std::mt19937_64& rng, const NumberField& K, int degree, int bound) {
    std::vector<FieldElement> c;
    for (int i = 0; i <= degree; ++i) {
        RatPoly rep = to_rational(random_poly(rng, K.degree() - 1, bound, false));
        if (i == degree && rep.is_zero()) rep = RatPoly{BigRat(1)};
        c.push_back(K.element(rep));
    }
    return PolyOverField(K, std::move(c));
}

// Leading coefficient times the product of factor^multiplicity.
inline PolyOverField expand(const PolyOverField& g,
                            const std::vector<std::pair<PolyOverField, int>>& factors) {
    PolyOverField acc(g.field(), {g.leading()});
    for (const auto& [f, m] : factors)
        for (int i = 0; i < m; ++i) acc = acc * f;
    return acc;
}

}  // namespace test

#endif
