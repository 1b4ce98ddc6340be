#include "starscape/roots.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace starscape {

namespace {

using cd = std::complex<double>;

void eval_with_derivative(const std::vector<double>& a, cd z, cd& v, cd& dv) {
    v = a.back();
    dv = 0.0;
    for (std::size_t i = a.size() - 1; i-- > 0;) {
        dv = dv * z + v;
        v = v * z + a[i];
    }
}

void quadratic(double a, double b, double c, std::vector<cd>& out) {
    const double disc = b * b - 4 * a * c;
    if (disc >= 0) {
        const double s = std::sqrt(disc);
        const double q = -0.5 * (b + std::copysign(s, b));
        if (q == 0.0) {
            out = {cd(0.0, 0.0), cd(0.0, 0.0)};
        } else {
            out = {cd(q / a, 0.0), cd(c / q, 0.0)};
        }
    } else {
        const double re = -b / (2 * a), im = std::sqrt(-disc) / (2 * std::abs(a));
        out = {cd(re, im), cd(re, -im)};
    }
}

void finish(std::vector<cd>& z, double snap) {
    for (auto& r : z)
        if (std::abs(r.imag()) < snap) r = cd(r.real(), 0.0);
    std::vector<std::size_t> upper, lower;
    for (std::size_t i = 0; i < z.size(); ++i) {
        if (z[i].imag() > 0) upper.push_back(i);
        else if (z[i].imag() < 0) lower.push_back(i);
    }
    if (upper.size() == lower.size()) {
        std::vector<bool> used(z.size(), false);
        for (auto i : upper) {
            std::size_t best = z.size();
            double dist = INFINITY;
            for (auto j : lower) {
                if (used[j]) continue;
                const double d = std::abs(z[i] - std::conj(z[j]));
                if (d < dist) dist = d, best = j;
            }
            used[best] = true;
            const cd m = 0.5 * (z[i] + std::conj(z[best]));
            z[i] = m;
            z[best] = std::conj(m);
        }
    }
    std::sort(z.begin(), z.end(), [](cd a, cd b) {
        return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
    });
}

RootSet package(const std::vector<double>& a, std::vector<cd> z, double snap, RootSet out) {
    finish(z, snap);
    out.roots.clear();
    out.max_residual = 0;
    for (const cd& r : z) {
        cd v, dv;
        eval_with_derivative(a, r, v, dv);
        out.roots.push_back({r.real(), r.imag(), std::abs(v)});
        out.max_residual = std::max(out.max_residual, std::abs(v));
    }
    return out;
}

}  // namespace

RootSet all_roots(const IntPoly& p, const RootOptions& opts) {
    const int n = p.degree();
    if (n < 1) throw std::invalid_argument("all_roots: polynomial must have degree >= 1");
    std::vector<double> a(static_cast<std::size_t>(n + 1));
    for (int i = 0; i <= n; ++i) a[i] = p[i].get_d();

    if (n == 1) return package(a, {cd(-a[0] / a[1], 0.0)}, opts.real_snap, {});
    if (n == 2) {
        std::vector<cd> z;
        quadratic(a[2], a[1], a[0], z);
        return package(a, std::move(z), opts.real_snap, {});
    }
    RootSet out;
    const std::vector<double> original = a;

    const double lc = a[n];
    for (auto& v : a) v /= lc;
    double bound = 0;
    for (int i = 0; i < n; ++i) bound = std::max(bound, std::abs(a[i]));
    const double radius = 1 + bound;
    const double offset = std::numbers::sqrt2 / 3;

    std::vector<cd> z(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) z[k] = std::polar(radius, 2 * std::numbers::pi * k / n + offset);

    std::vector<bool> done(z.size(), false);
    out.converged = false;
    for (int it = 1; it <= opts.max_iterations; ++it) {
        out.iterations = it;
        bool all = true;
        for (std::size_t k = 0; k < z.size(); ++k) {
            if (done[k]) continue;
            cd v, dv;
            eval_with_derivative(a, z[k], v, dv);
            if (v == 0.0) {
                done[k] = true;
                continue;
            }
            const cd ratio = v / dv;
            cd sum = 0.0;
            for (std::size_t j = 0; j < z.size(); ++j)
                if (j != k) sum += 1.0 / (z[k] - z[j]);
            const cd w = ratio / (1.0 - ratio * sum);
            if (!std::isfinite(w.real()) || !std::isfinite(w.imag())) {
                all = false;
                continue;
            }
            z[k] -= w;
            if (std::abs(w) < opts.tolerance) done[k] = true;
            else all = false;
        }
        if (all) {
            out.converged = true;
            break;
        }
    }
    return package(original, std::move(z), opts.real_snap, std::move(out));
}

}  // namespace starscape
