#include "starscape/acceptance.hpp"

#include "starscape/dataset.hpp"
#include "starscape/factor.hpp"
#include "starscape/galois.hpp"
#include "starscape/number_field.hpp"
#include "starscape/render.hpp"
#include "starscape/roots.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <iterator>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>

namespace starscape {
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

class Checker {
public:
    void require(bool ok, const std::string& what) {
        ++checks_;
        if (!ok && failures_++ < 5) first_.push_back(what);
    }
    bool ok() const { return failures_ == 0; }
    std::string summary() const {
        std::ostringstream s;
        s << checks_ << " checks, " << failures_ << " failures";
        for (const auto& f : first_) s << "; " << f;
        return s.str();
    }

private:
    std::uint64_t checks_ = 0, failures_ = 0;
    std::vector<std::string> first_;
};

void log(const AcceptanceOptions& o, const std::string& msg) {
    if (o.log) *o.log << "[verify] " << msg << std::endl;
}

CriterionResult named(int id, std::string name) {
    CriterionResult r;
    r.id = id;
    r.name = std::move(name);
    return r;
}

std::string frac(const BigRat& q) { return q.get_num().get_str() + "/" + q.get_den().get_str(); }

void time_limit(Checker& c, Clock::time_point start, double limit_s) {
    const double s = std::chrono::duration<double>(Clock::now() - start).count();
    c.require(s < limit_s, "runtime " + std::to_string(s) + " s over " + std::to_string(limit_s) + " s");
}

// 1: worked examples

CriterionResult worked_examples(const AcceptanceOptions&) {
    CriterionResult res = named(1, "worked examples");
    Checker c;
    const auto start = Clock::now();
    auto expect = [&](const char* poly, std::uint64_t order, const BigRat& rig) {
        const IntPoly f = parse_int_poly(poly);
        const SplitResult r = galois_order(f);
        const BigRat got = rigidity(f.degree(), r.order);
        c.require(r.is_exact() && r.order == order && got == rig,
                  std::string(poly) + ": order " + std::to_string(r.order) + " rigidity " + frac(got));
    };
    expect("1 1 1 1 1", 4, BigRat(5, 6));
    expect("-2 0 0 0 1", 8, BigRat(2, 3));
    for (const char* lin : {"0 1", "3 1", "-7 1"}) expect(lin, 1, 0);
    for (const char* q : {"-2 0 1", "-3 0 1", "-5 0 1", "-6 0 1", "1 0 1", "2 0 1", "-10 0 1"}) expect(q, 2, 0);
    time_limit(c, start, 5);
    res.passed = c.ok();
    res.detail = c.summary();
    return res;
}

// 2: rigid cubics are real with rigidity 1/2

CriterionResult cubic_box(const AcceptanceOptions&) {
    CriterionResult res = named(2, "cubic box [-4,4]");
    Checker c;
    const auto start = Clock::now();
    std::uint64_t irreducible = 0, rigid = 0;
    enumerate_box(BoxSpec{{3}, 4}, [&](const IntPoly& f) {
        ++irreducible;
        const SplitResult r = galois_order(f);
        c.require(r.is_exact(), to_string(f) + ": not exact");
        const BigRat rig = rigidity(3, r.order);
        if (rig == 0) return;
        ++rigid;
        c.require(rig == BigRat(1, 2), to_string(f) + ": rigidity " + frac(rig));
        const RootSet rs = all_roots(f);
        c.require(rs.converged, to_string(f) + ": roots unconverged");
        for (const auto& z : rs.roots) c.require(std::abs(z.im) < 1e-8, to_string(f) + ": nonreal root");
    });
    c.require(rigid > 0, "no rigid cubics found");
    time_limit(c, start, 300);
    res.passed = c.ok();
    res.detail = std::to_string(irreducible) + " irreducible, " + std::to_string(rigid) + " rigid; " + c.summary();
    return res;
}

// 3: quartic fast path against the tower

CriterionResult quartic_crosscheck(const AcceptanceOptions& opts) {
    CriterionResult res = named(3, "quartic fast path = tower on [-2,2]");
    Checker c;
    const auto start = Clock::now();
    std::uint64_t n = 0;
    const SplitBudget budget{};
    enumerate_box(BoxSpec{{4}, 2}, [&](const IntPoly& f) {
        const SplitResult fast = quartic_order_fastpath(f, budget.factor_options());
        const SplitResult tower = splitting_order_tower(f, budget);
        c.require(fast.is_exact() && tower.is_exact() && fast.order == tower.order,
                  to_string(f) + ": fast " + std::to_string(fast.order) + " tower " + std::to_string(tower.order));
        if (++n % 100 == 0) log(opts, "quartics checked: " + std::to_string(n));
    });
    time_limit(c, start, 1800);
    res.passed = c.ok();
    res.detail = std::to_string(n) + " quartics; " + c.summary();
    return res;
}

// 4: norm machinery

// Determinant of multiplication by e on the power basis of its field.
BigRat multiplication_determinant(const FieldElement& e) {
    const NumberField& K = e.field();
    const int n = K.degree();
    std::vector<std::vector<BigRat>> m(n, std::vector<BigRat>(n));
    FieldElement col = e;
    for (int j = 0; j < n; ++j) {
        const RatPoly rep = col.rep();
        for (int i = 0; i < n; ++i) m[i][j] = rep.coeff(i);
        col = col * K.generator();
    }
    BigRat det = 1;
    for (int k = 0; k < n; ++k) {
        int piv = k;
        while (piv < n && m[piv][k] == 0) ++piv;
        if (piv == n) return 0;
        if (piv != k) {
            std::swap(m[piv], m[k]);
            det = -det;
        }
        det *= m[k][k];
        for (int i = k + 1; i < n; ++i) {
            if (m[i][k] == 0) continue;
            const BigRat t = m[i][k] / m[k][k];
            for (int j = k; j < n; ++j) m[i][j] -= t * m[k][j];
        }
    }
    return det;
}

PolyOverField random_poly_over(std::mt19937_64& rng, const NumberField& K, int degree, int bound) {
    std::uniform_int_distribution<int> coeff(-bound, bound);
    std::vector<FieldElement> cs;
    for (int i = 0; i <= degree; ++i) {
        std::vector<BigRat> rep(K.degree());
        for (auto& r : rep) r = coeff(rng);
        if (i == degree && std::all_of(rep.begin(), rep.end(), [](const BigRat& q) { return q == 0; })) rep[0] = 1;
        cs.push_back(K.element(RatPoly(std::move(rep))));
    }
    return PolyOverField(K, std::move(cs));
}

CriterionResult norm_suite(const AcceptanceOptions& opts) {
    CriterionResult res = named(4, "norm suite over Q(i), Q(sqrt2), Q(2^(1/4))");
    Checker c;
    const auto start = Clock::now();
    std::mt19937_64 rng(20240501);
    std::uniform_int_distribution<int> deg(1, 3), shift(-2, 2);
    const BigRat points[] = {BigRat(0), BigRat(1, 2), BigRat(-5, 3)};
    for (const char* modulus : {"1 0 1", "-2 0 1", "-2 0 0 0 1"}) {
        const NumberField K(parse_int_poly(modulus));
        for (int trial = 0; trial < 500; ++trial) {
            const std::string tag = std::string(modulus) + " #" + std::to_string(trial);
            const PolyOverField a = random_poly_over(rng, K, deg(rng), 3);
            const PolyOverField b = random_poly_over(rng, K, deg(rng), 3);
            const BigInt s = shift(rng);

            const RatPoly na = norm_poly(a, s), nb = norm_poly(b, s);
            c.require(norm_poly(a * b, s) == na * nb, tag + ": norm not multiplicative");
            c.require(na.degree() == a.degree() * K.degree(), tag + ": norm degree");

            // N(a)(x0) against det of multiplication by a(theta, x0 - s theta).
            for (const BigRat& x0 : points) {
                const FieldElement at = K.from_rational(x0) - K.generator() * BigRat(s);
                c.require(eval_at(na, x0) == multiplication_determinant(eval_at(a, at)),
                          tag + ": norm value at " + frac(x0));
            }

            const PolyOverField g = trial % 2 ? a * b : a;
            const auto facs = factor_over_field(g);
            PolyOverField prod(K, {g.leading()});
            for (const auto& [f, m] : facs) {
                c.require(f.is_monic(), tag + ": non-monic factor");
                for (int i = 0; i < m; ++i) prod = prod * f;
            }
            c.require(prod == g, tag + ": factor product differs");
        }
        log(opts, std::string("norm suite done for ") + modulus);
    }
    time_limit(c, start, 60);
    res.passed = c.ok();
    res.detail = c.summary();
    return res;
}

// 5: quintic scale

CriterionResult quintic_scale(const AcceptanceOptions& opts) {
    CriterionResult res = named(5, "quintic box [-4,4] scale");
    Checker c;
    DatasetOptions dopts;
    dopts.threads = opts.threads;
    log(opts, "building degree 5, bound 4 dataset in " + (opts.work_dir / "quintic_b4").string());
    const DatasetSummary s = build_dataset(BoxSpec{{5}, 4}, SplitBudget{}, opts.work_dir / "quintic_b4", dopts);
    const std::uint64_t bounds = s.by_status.contains("bounds_only") ? s.by_status.at("bounds_only") : 0;
    const std::uint64_t roots = s.by_degree.contains(5) ? s.by_degree.at(5) : 0;
    c.require(roots >= 198000 && roots <= 242000, "root count " + std::to_string(roots) + " outside 220000 +/- 10%");
    c.require(bounds * 200 < s.polynomials, std::to_string(bounds) + " bounds-only of " + std::to_string(s.polynomials));
    c.require(roots == kQuinticRootCount,
              "root count " + std::to_string(roots) + " differs from frozen " + std::to_string(kQuinticRootCount));
    res.passed = c.ok();
    res.detail = std::to_string(s.polynomials) + " irreducible quintics, " + std::to_string(roots) + " roots, " +
                 std::to_string(bounds) + " bounds-only; " + c.summary();
    return res;
}

// 6: bounds invariants

CriterionResult bounds_invariants(const AcceptanceOptions&) {
    CriterionResult res = named(6, "bounds invariants on random inputs");
    Checker c;
    std::mt19937_64 rng(77);
    std::uniform_int_distribution<int> deg(1, 5), coeff(-12, 12);
    int done = 0;
    while (done < 10000) {
        const int d = deg(rng);
        std::vector<BigInt> cs(d + 1);
        for (int i = 0; i < d; ++i) cs[i] = coeff(rng);
        cs[d] = 1;
        const IntPoly f(std::move(cs));
        if (!is_irreducible_over_Q(f)) continue;
        ++done;
        const SplitResult r = galois_order(f);
        const std::uint64_t full = factorial(d);
        const std::string tag = to_string(f);
        c.require(r.degree == d, tag + ": degree");
        c.require(static_cast<std::uint64_t>(d) <= r.lower_bound && r.lower_bound <= r.upper_bound && r.upper_bound <= full, tag + ": bounds");
        if (!r.is_exact()) continue;
        c.require(r.order % d == 0 && full % r.order == 0, tag + ": order " + std::to_string(r.order));
        const BigRat rig = rigidity(d, r.order);
        const BigRat top = BigRat(1) - BigRat(1, static_cast<unsigned long>(factorial(d - 1)));
        c.require(rig >= 0 && rig <= top, tag + ": rigidity " + frac(rig));
    }
    res.passed = c.ok();
    res.detail = "10000 inputs; " + c.summary();
    return res;
}

// 7: renderer values

StarRecord synthetic(double re, double im, const BigRat& rig, std::uint64_t order) {
    StarRecord r;
    r.re = re;
    r.im = im;
    r.degree = 4;
    r.rigidity = rig;
    r.galois_order = order;
    r.coeff_norm = 2;
    r.discriminant = -4;
    r.poly = parse_int_poly("1 1 0 0 1");
    r.status = "exact_quartic";
    return r;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

bool close_rel(double a, double b, double tol) { return std::abs(a - b) <= tol * std::abs(b); }

CriterionResult renderer_values(const AcceptanceOptions& opts) {
    CriterionResult res = named(7, "renderer values, blur mass, PNG determinism");
    Checker c;
    const BigRat rigs[] = {BigRat(0), BigRat(1, 2), BigRat(2, 3), BigRat(5, 6)};
    const double plus[] = {1, 16, 2401.0 / 81, 4096.0 / 81};
    const double minus[] = {0.0625, 2.44140625, 5.0625, 9.37890625};
    for (int i = 0; i < 4; ++i) {
        const StarRecord r = synthetic(0, 0, rigs[i], 24);
        const std::string tag = "rig " + frac(rigs[i]);
        c.require(close_rel(brightness(r, BrightnessMode::RPlus), plus[i], 1e-12), tag + ": r_plus");
        c.require(close_rel(brightness(r, BrightnessMode::RMinus), minus[i], 1e-12), tag + ": r_minus");
        c.require(close_rel(brightness(r, BrightnessMode::DRPlus), plus[i] / 2, 1e-12), tag + ": dr_plus");
        c.require(close_rel(brightness(r, BrightnessMode::DRMinus), minus[i] / 2, 1e-12), tag + ": dr_minus");
        c.require(close_rel(brightness(r, BrightnessMode::VRPlus), plus[i] / 2, 1e-12), tag + ": vr_plus");
        c.require(close_rel(brightness(r, BrightnessMode::VRMinus), minus[i] / 2, 1e-12), tag + ": vr_minus");
    }

    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> mass(0, 5);
    for (double sigma : {0.5, 1.5, 4.0}) {
        Eigen::ArrayXXd img = Eigen::ArrayXXd::Zero(120, 160);
        for (int k = 0; k < 200; ++k) img(30 + rng() % 60, 30 + rng() % 100) += mass(rng);
        const Eigen::ArrayXXd out = gaussian_blur(img, sigma);
        c.require(std::abs(out.sum() - img.sum()) <= 1e-6 * img.sum(), "blur mass at sigma " + std::to_string(sigma));
    }

    RenderConfig cfg;
    cfg.width = 200;
    cfg.height = 150;
    cfg.pixels_per_unit = 40;
    std::vector<StarRecord> recs;
    for (int k = 0; k < 500; ++k) {
        const double t = 0.05 * k;
        recs.push_back(synthetic(std::cos(t) * (1 + 0.001 * k), std::sin(t), rigs[k % 4], 24));
    }
    fs::create_directories(opts.work_dir);
    const fs::path a = opts.work_dir / "determinism_a.png", b = opts.work_dir / "determinism_b.png";
    composite_and_encode(accumulate(recs, cfg), cfg, a);
    composite_and_encode(accumulate(recs, cfg), cfg, b);
    const std::string ba = slurp(a), bb = slurp(b);
    c.require(!ba.empty() && ba == bb, "PNG bytes differ between runs");
    res.passed = c.ok();
    res.detail = c.summary();
    return res;
}

// 8: figure structure

// Counts in bins of width w centered on multiples of w, covering [lo, hi].
struct Histogram {
    double lo, w;
    std::vector<double> bins;
    Histogram(double lo_, double hi, double w_) : lo(lo_), w(w_), bins(std::lround((hi - lo_) / w_) + 1, 0.0) {}
    void add(double v) {
        const long k = std::lround((v - lo) / w);
        if (k >= 0 && k < static_cast<long>(bins.size())) bins[k] += 1;
    }
    double at(double v) const {
        const long k = std::lround((v - lo) / w);
        return k >= 0 && k < static_cast<long>(bins.size()) ? bins[k] : 0.0;
    }
};

// Largest bin within `tol` of `target`, divided by the mean bin over the
// annulus 0.03 to 0.15 away from it.
double peak_contrast(const Histogram& h, double target, double tol) {
    double peak = 0;
    for (double v = target - tol; v <= target + tol + 1e-9; v += h.w) peak = std::max(peak, h.at(v));
    double sum = 0;
    int n = 0;
    for (double d = 0.03; d <= 0.15 + 1e-9; d += h.w) {
        sum += h.at(target - d) + h.at(target + d);
        n += 2;
    }
    return peak / std::max(sum / n, 1.0);
}

CriterionResult figure_structure(const AcceptanceOptions& opts) {
    CriterionResult res = named(8, "degree 4 bound 4 r_minus structure");
    Checker c;
    DatasetOptions dopts;
    dopts.threads = opts.threads;
    const fs::path dir = opts.work_dir / "quartic_b4";
    build_dataset(BoxSpec{{4}, 4}, SplitBudget{}, dir, dopts);
    const std::vector<StarRecord> records = read_dataset(dir);

    Histogram radial(0, 3, 0.01), real(-2, 2, 0.01);
    std::uint64_t rigid = 0;
    for (const auto& r : records) {
        if (!r.exact() || r.rigidity == 0) continue;
        ++rigid;
        radial.add(std::hypot(r.re, r.im));
        if (std::abs(r.im) > 1e-9) real.add(r.re);
    }
    constexpr double kMinContrast = 3;
    std::ostringstream d;
    d.precision(3);
    d << rigid << " rigid roots; contrast";
    auto peak = [&](const Histogram& h, double target, const std::string& label) {
        const double k = peak_contrast(h, target, 0.02);
        d << " " << label << "=" << k;
        c.require(k >= kMinContrast, "no peak at " + label);
    };
    peak(radial, 1.0, "|z|=1");
    peak(radial, std::pow(2.0, 0.25), "|z|=2^(1/4)");
    peak(real, 0.0, "Re=0");
    peak(real, 0.5, "Re=1/2");
    peak(real, -0.5, "Re=-1/2");

    RenderConfig cfg;
    cfg.mode = BrightnessMode::RMinus;
    composite_and_encode(accumulate(records, cfg), cfg, opts.work_dir / "quartic_b4_r_minus.png");
    log(opts, "wrote " + (opts.work_dir / "quartic_b4_r_minus.png").string());

    res.passed = c.ok();
    res.detail = d.str() + "; " + c.summary();
    return res;
}

}  // namespace

CriterionResult run_criterion(int id, const AcceptanceOptions& opts) {
    const auto start = Clock::now();
    CriterionResult r;
    try {
        switch (id) {
            case 1: r = worked_examples(opts); break;
            case 2: r = cubic_box(opts); break;
            case 3: r = quartic_crosscheck(opts); break;
            case 4: r = norm_suite(opts); break;
            case 5: r = quintic_scale(opts); break;
            case 6: r = bounds_invariants(opts); break;
            case 7: r = renderer_values(opts); break;
            case 8: r = figure_structure(opts); break;
            default: throw std::out_of_range("no acceptance criterion " + std::to_string(id));
        }
    } catch (const std::out_of_range&) {
        throw;
    } catch (const std::exception& e) {
        r.id = id;
        r.passed = false;
        r.detail = std::string("exception: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(Clock::now() - start).count();
    return r;
}

std::vector<CriterionResult> run_criteria(const std::vector<int>& ids, const AcceptanceOptions& opts) {
    std::vector<CriterionResult> out;
    for (int id : ids) out.push_back(run_criterion(id, opts));
    return out;
}

std::string format_result(const CriterionResult& r) {
    std::ostringstream s;
    s << (r.passed ? "PASS" : "FAIL") << " criterion " << r.id << " (" << r.name << ") ";
    s.setf(std::ios::fixed);
    s.precision(1);
    s << r.seconds << " s: " << r.detail;
    return s.str();
}

}  // namespace starscape
