#include "helpers.hpp"
#include "starscape/render.hpp"

#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

using namespace starscape;
using test::P;
namespace fs = std::filesystem;

namespace {

StarRecord record(double re, double im, const BigRat& rig, const BigInt& disc = -4, int degree = 4,
                  std::uint64_t order = 24) {
    StarRecord r;
    r.re = re;
    r.im = im;
    r.degree = degree;
    r.rigidity = rig;
    r.galois_order = order;
    r.coeff_norm = 2;
    r.discriminant = disc;
    r.poly = degree == 5 ? P("-1 -1 0 0 0 1") : P("1 1 0 0 1");
    r.status = "exact_quartic";
    return r;
}

RenderConfig small(int w = 64, int h = 48) {
    RenderConfig c;
    c.width = w;
    c.height = h;
    c.pixels_per_unit = 10;
    c.blur_sigma = 0;
    return c;
}

bool close_rel(double a, double b, double tol) { return std::abs(a - b) <= tol * std::abs(b); }

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("brightness table values") {
    const BigRat rigs[] = {BigRat(0), BigRat(1, 2), BigRat(2, 3), BigRat(5, 6)};
    const double plus[] = {1, 16, 2401.0 / 81, 4096.0 / 81};
    const double minus[] = {0.0625, 2.44140625, 5.0625, 9.37890625};
    for (int i = 0; i < 4; ++i) {
        const StarRecord r = record(0, 0, rigs[i], -4);
        CHECK(close_rel(brightness(r, BrightnessMode::RPlus), plus[i], 1e-12));
        CHECK(close_rel(brightness(r, BrightnessMode::RMinus), minus[i], 1e-12));
        CHECK(close_rel(brightness(r, BrightnessMode::DRPlus), 0.5 * plus[i], 1e-12));
        CHECK(close_rel(brightness(r, BrightnessMode::DRMinus), 0.5 * minus[i], 1e-12));
        CHECK(close_rel(brightness(r, BrightnessMode::VRPlus), 0.5 * plus[i], 1e-12));
        CHECK(close_rel(brightness(r, BrightnessMode::VRMinus), 0.5 * minus[i], 1e-12));
    }
    CHECK(close_rel(brightness(record(0, 0, BigRat(5, 6)), BrightnessMode::RPlus), 50.5679, 1e-6));
    CHECK(brightness(record(0, 0, 0, -4), BrightnessMode::D) == 0.5);
    CHECK(brightness(record(0, 0, 0), BrightnessMode::V) == 0.5);
    CHECK(brightness(record(0, 0, BigRat(5, 6), -4, 4, 4), BrightnessMode::DegOverG, 3.0) == 3.0);
    CHECK(brightness(record(0, 0, BigRat(2, 3), -4, 4, 8), BrightnessMode::DegOverG) == 0.25);
}

TEST_CASE("brightness monotonicity") {
    double last_plus = 0, last_minus = 0;
    for (int k = 0; k <= 12; ++k) {
        const StarRecord r = record(0, 0, BigRat(k, 13));
        const double p = brightness(r, BrightnessMode::RPlus), m = brightness(r, BrightnessMode::RMinus);
        CHECK(p > last_plus);
        CHECK(m > last_minus);
        last_plus = p;
        last_minus = m;
    }
    double last = INFINITY;
    for (long d = 1; d < 5000; d += 37) {
        const double b = brightness(record(0, 0, 0, BigInt(-d)), BrightnessMode::D);
        CHECK(b < last);
        last = b;
    }
}

TEST_CASE("mode names round trip") {
    for (const char* name :
         {"d", "v", "r_plus", "r_minus", "dr_plus", "dr_minus", "vr_plus", "vr_minus", "deg_over_g"}) {
        const auto m = parse_brightness_mode(name);
        REQUIRE(m);
        CHECK(to_string(*m) == name);
    }
    CHECK_FALSE(parse_brightness_mode("RPlus"));
}

TEST_CASE("deposit geometry and additivity") {
    RenderConfig c = small();
    c.center = {0.5, -0.25};
    AccumGrid g(c.width, c.height);
    CHECK(deposit(g, record(0.5, -0.25, 0), c, 1.0));
    CHECK(g.layer(4)(24, 32) == 1.0);
    CHECK(deposit(g, record(0.5, -0.25, 0), c, 1.0));
    CHECK(g.layer(4)(24, 32) == 2.0);
    CHECK(deposit(g, record(1.5, -0.25, 0), c, 1.0));
    CHECK(g.layer(4)(24, 42) == 1.0);
    CHECK(deposit(g, record(0.5, 0.75, 0), c, 1.0));
    CHECK(g.layer(4)(14, 32) == 1.0);
    CHECK_FALSE(deposit(g, record(100, 0, 0), c, 1.0));
    CHECK(g.outside == 1);
    CHECK(g.deposited == 4);
    CHECK(g.total_mass() == 4.0);

    std::vector<StarRecord> a, b;
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-3, 3);
    for (int i = 0; i < 200; ++i) (i % 2 ? a : b).push_back(record(u(rng), u(rng), BigRat(static_cast<long>(i % 6), 6)));
    std::vector<StarRecord> both = a;
    both.insert(both.end(), b.begin(), b.end());
    const AccumGrid ga = accumulate(a, c), gb = accumulate(b, c), gab = accumulate(both, c);
    CHECK(((ga.layers.at(4) + gb.layers.at(4)) == gab.layers.at(4)).all());
}

TEST_CASE("bounds-only records are excluded unless requested") {
    RenderConfig c = small();
    StarRecord r = record(0, 0, 0);
    r.status = "bounds_only";
    CHECK(accumulate(std::vector{r}, c).deposited == 0);
    c.include_bounds_only = true;
    CHECK(accumulate(std::vector{r}, c).deposited == 1);
}

TEST_CASE("deg_over_g equalizes layer mass") {
    RenderConfig c = small();
    c.mode = BrightnessMode::DegOverG;
    std::vector<StarRecord> recs = {record(0, 0, BigRat(5, 6), -4, 4, 4), record(0.3, 0, BigRat(2, 3), -4, 4, 8),
                                    record(0.1, 0.1, 0, 5, 5, 120)};
    const AccumGrid g = accumulate(recs, c);
    CHECK(std::abs(g.layers.at(4).sum() - 1) < 1e-12);
    CHECK(std::abs(g.layers.at(5).sum() - 1) < 1e-12);
}

TEST_CASE("gaussian blur") {
    Eigen::ArrayXXd img = Eigen::ArrayXXd::Zero(41, 41);
    img(20, 20) = 1;
    CHECK((gaussian_blur(img, 0) == img).all());
    const Eigen::ArrayXXd b = gaussian_blur(img, 2);
    CHECK(std::abs(b.sum() - 1) < 1e-6);
    CHECK(std::abs(b(20, 20) - 1 / (2 * std::numbers::pi * 4)) < 0.0008);
    CHECK(b(20, 21) == b(21, 20));
    CHECK(b(20, 27) == 0.0);  // radius ceil(3 sigma) = 6
    const Eigen::ArrayXXd b3 = gaussian_blur(img, 3.3);
    CHECK(std::abs(b3.sum() - 1) < 1e-6);
}

TEST_CASE("composite: background, colors and determinism") {
    const fs::path dir = fs::temp_directory_path() / "starscape_render_test";
    fs::create_directories(dir);
    RenderConfig c = small();
    c.background = {0.2, 0.4, 0.6};
    const Image empty = composite_and_encode(AccumGrid(c.width, c.height), c, dir / "empty.png");
    for (std::size_t i = 0; i < empty.rgb.size(); i += 3) {
        CHECK(empty.rgb[i] == std::lround(std::pow(0.2, 1 / 2.2) * 255));
        CHECK(empty.rgb[i + 2] == std::lround(std::pow(0.6, 1 / 2.2) * 255));
    }

    RenderConfig q = small();
    q.blur_sigma = 2;
    q.global_gain = 1e9;
    const Image blue = composite(accumulate(std::vector{record(0, 0, 0)}, q), q);
    const std::size_t center = (static_cast<std::size_t>(24) * 64 + 32) * 3;
    double lin[3];
    for (int ch = 0; ch < 3; ++ch) lin[ch] = std::pow(blue.rgb[center + ch] / 255.0, 2.2);
    CHECK(std::abs(lin[0] / lin[2] - 0.28 / 0.78) < 0.02);
    CHECK(std::abs(lin[1] / lin[2] - 0.53 / 0.78) < 0.02);
    CHECK(blue.rgb[0] == 0);

    const Image white = composite(accumulate(std::vector{record(0, 0, 0, 5, 5, 120)}, q), q);
    CHECK(white.rgb[center] == 255);
    CHECK(white.rgb[center + 1] == 255);
    CHECK(white.rgb[center + 2] == 255);

    RenderConfig a = small();
    a.blur_sigma = 1.5;
    std::vector<StarRecord> recs;
    for (int i = 0; i < 50; ++i) recs.push_back(record(std::cos(i) * 2, std::sin(i) * 2, BigRat(i % 6, 6)));
    const Image first = composite_and_encode(accumulate(recs, a), a, dir / "a.png");
    composite_and_encode(accumulate(recs, a), a, dir / "b.png");
    CHECK(slurp(dir / "a.png") == slurp(dir / "b.png"));
    CHECK(slurp(dir / "a.png").substr(1, 3) == "PNG");
    CHECK(first.gain > 0);
    fs::remove_all(dir);
}

TEST_CASE("config parsing") {
    const RenderConfig c = parse_render_config(
        "# comment\nwidth = 320\nheight=200\ncenter_re = -0.5\ncenter_im = 0.25\npixels_per_unit = 80\n"
        "sigma = 2.5\nmode = r_minus\ngain = 3\nbackground = 0 0 0.1\npalette.4 = 0.1 0.2 0.3\n");
    CHECK(c.width == 320);
    CHECK(c.height == 200);
    CHECK(c.center == std::complex<double>(-0.5, 0.25));
    CHECK(c.pixels_per_unit == 80);
    CHECK(c.blur_sigma == 2.5);
    CHECK(c.mode == BrightnessMode::RMinus);
    CHECK(c.global_gain == 3.0);
    CHECK(c.background == Rgb{0, 0, 0.1});
    CHECK(c.palette.at(4) == Rgb{0.1, 0.2, 0.3});
    CHECK(c.palette.at(5) == Rgb{1, 1, 1});
    CHECK_FALSE(parse_render_config("gain = auto\n").global_gain);
    for (const char* bad : {"colour = 1", "width = -3", "sigma = -1", "mode = bright", "palette.2 = 1 1",
                            "background = 0 0 2", "width", "gain = 0"})
        CHECK_THROWS_AS(parse_render_config(bad), std::invalid_argument);
}
