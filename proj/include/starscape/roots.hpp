// Numerical complex roots of integer polynomials (simultaneous iteration).

#ifndef STARSCAPE_ROOTS_HPP
#define STARSCAPE_ROOTS_HPP

#include "starscape/poly.hpp"

#include <complex>
#include <vector>

namespace starscape {

struct RootOptions {
    double tolerance = 1e-12;
    int max_iterations = 200;
    /// Roots with |im| below this are reported as real.
    double real_snap = 1e-10;
};

struct ComplexRoot {
    double re = 0;
    double im = 0;
    /// |f(root)| evaluated in double precision after post-processing.
    double residual = 0;

    std::complex<double> value() const { return {re, im}; }
};

struct RootSet {
    /// Sorted by (re, im); real roots have im exactly +0.0 and non-real roots
    /// appear as exact conjugate pairs.
    std::vector<ComplexRoot> roots;
    bool converged = true;
    int iterations = 0;
    double max_residual = 0;
};

/// All deg(p) complex roots with multiplicity.  Throws std::invalid_argument
/// for constant p.
RootSet all_roots(const IntPoly& p, const RootOptions& opts = {});

}  // namespace starscape

#endif  // STARSCAPE_ROOTS_HPP
