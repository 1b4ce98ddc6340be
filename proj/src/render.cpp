#include "starscape/render.hpp"

#include <png.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace starscape {

namespace {

constexpr std::pair<BrightnessMode, std::string_view> kModeNames[] = {
    {BrightnessMode::D, "d"},
    {BrightnessMode::V, "v"},
    {BrightnessMode::RPlus, "r_plus"},
    {BrightnessMode::RMinus, "r_minus"},
    {BrightnessMode::DRPlus, "dr_plus"},
    {BrightnessMode::DRMinus, "dr_minus"},
    {BrightnessMode::VRPlus, "vr_plus"},
    {BrightnessMode::VRMinus, "vr_minus"},
    {BrightnessMode::DegOverG, "deg_over_g"},
};

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

double to_double(std::string_view key, std::string_view v) {
    double out = 0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc{} || ptr != v.data() + v.size() || !std::isfinite(out))
        throw std::invalid_argument("config: " + std::string(key) + ": not a number: " + std::string(v));
    return out;
}

int to_int(std::string_view key, std::string_view v) {
    int out = 0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc{} || ptr != v.data() + v.size())
        throw std::invalid_argument("config: " + std::string(key) + ": not an integer: " + std::string(v));
    return out;
}

Rgb to_rgb(std::string_view key, std::string_view v) {
    std::istringstream in{std::string(v)};
    std::string a, b, c, extra;
    if (!(in >> a >> b >> c) || (in >> extra))
        throw std::invalid_argument("config: " + std::string(key) + ": expected three numbers");
    Rgb out{to_double(key, a), to_double(key, b), to_double(key, c)};
    for (double x : {out.r, out.g, out.b})
        if (x < 0 || x > 1) throw std::invalid_argument("config: " + std::string(key) + ": components must be in [0,1]");
    return out;
}

double pow4(double x) { return (x * x) * (x * x); }

}  // namespace

std::string_view to_string(BrightnessMode m) {
    for (const auto& [mode, name] : kModeNames)
        if (mode == m) return name;
    return "unknown";
}

std::optional<BrightnessMode> parse_brightness_mode(std::string_view s) {
    for (const auto& [mode, name] : kModeNames)
        if (name == s) return mode;
    return std::nullopt;
}

std::map<int, Rgb> default_palette() {
    return {
        {1, {0.96, 0.71, 0.1}}, {2, {1, 0.25, 0.24}}, {3, {0.35, 0.05, 0.75}}, {4, {0.28, 0.53, 0.78}}, {5, {1, 1, 1}},
    };
}

void RenderConfig::validate() const {
    if (width <= 0 || height <= 0) throw std::invalid_argument("config: width and height must be positive");
    if (!(pixels_per_unit > 0)) throw std::invalid_argument("config: pixels_per_unit must be positive");
    if (!(blur_sigma >= 0)) throw std::invalid_argument("config: sigma must be >= 0");
    if (global_gain && !(*global_gain > 0)) throw std::invalid_argument("config: gain must be positive");
}

RenderConfig parse_render_config(std::string_view text, RenderConfig cfg) {
    std::size_t lineno = 0;
    while (!text.empty()) {
        const auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text.remove_prefix(nl == std::string_view::npos ? text.size() : nl + 1);
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos)
            throw std::invalid_argument("config line " + std::to_string(lineno) + ": expected key = value");
        const std::string_view key = trim(line.substr(0, eq)), value = trim(line.substr(eq + 1));
        if (key == "width") cfg.width = to_int(key, value);
        else if (key == "height") cfg.height = to_int(key, value);
        else if (key == "center_re") cfg.center.real(to_double(key, value));
        else if (key == "center_im") cfg.center.imag(to_double(key, value));
        else if (key == "pixels_per_unit") cfg.pixels_per_unit = to_double(key, value);
        else if (key == "sigma") cfg.blur_sigma = to_double(key, value);
        else if (key == "mode") {
            const auto m = parse_brightness_mode(value);
            if (!m) throw std::invalid_argument("config: unknown mode: " + std::string(value));
            cfg.mode = *m;
        } else if (key == "gain") {
            if (value == "auto") cfg.global_gain.reset();
            else cfg.global_gain = to_double(key, value);
        } else if (key == "background") cfg.background = to_rgb(key, value);
        else if (key.starts_with("palette.")) {
            const int d = to_int(key, key.substr(8));
            if (d < 1) throw std::invalid_argument("config: palette degree must be >= 1");
            cfg.palette[d] = to_rgb(key, value);
        } else {
            throw std::invalid_argument("config line " + std::to_string(lineno) + ": unknown key: " + std::string(key));
        }
    }
    cfg.validate();
    return cfg;
}

RenderConfig load_render_config(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read config " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_render_config(ss.str());
}

double brightness(const StarRecord& r, BrightnessMode mode, double degree_scale) {
    const double rig = r.rigidity.get_d();
    const double bD = 1.0 / std::sqrt(std::abs(r.discriminant.get_d()));
    const double bV = 1.0 / r.coeff_norm;
    const double rPlus = pow4(1 + 2 * rig), rMinus = pow4(0.5 + 1.5 * rig);
    switch (mode) {
        case BrightnessMode::D: return bD;
        case BrightnessMode::V: return bV;
        case BrightnessMode::RPlus: return rPlus;
        case BrightnessMode::RMinus: return rMinus;
        case BrightnessMode::DRPlus: return bD * rPlus;
        case BrightnessMode::DRMinus: return bD * rMinus;
        case BrightnessMode::VRPlus: return bV * rPlus;
        case BrightnessMode::VRMinus: return bV * rMinus;
        case BrightnessMode::DegOverG: {
            const double q = static_cast<double>(r.degree) / static_cast<double>(r.galois_order);
            return degree_scale * q * q;
        }
    }
    throw std::invalid_argument("brightness: unknown mode");
}

Eigen::ArrayXXd& AccumGrid::layer(int degree) {
    auto it = layers.find(degree);
    if (it == layers.end()) it = layers.emplace(degree, Eigen::ArrayXXd::Zero(height, width)).first;
    return it->second;
}

double AccumGrid::total_mass() const {
    double s = 0;
    for (const auto& [d, g] : layers) s += g.sum();
    return s;
}

std::pair<long, long> pixel_of(double re, double im, const RenderConfig& cfg) {
    const double a = std::round((re - cfg.center.real()) * cfg.pixels_per_unit + cfg.width / 2.0);
    const double b = std::round(cfg.height / 2.0 - (im - cfg.center.imag()) * cfg.pixels_per_unit);
    const double lim = 1e15;
    return {static_cast<long>(std::clamp(a, -lim, lim)), static_cast<long>(std::clamp(b, -lim, lim))};
}

bool deposit(AccumGrid& grid, const StarRecord& r, const RenderConfig& cfg, double beta) {
    const auto [a, b] = pixel_of(r.re, r.im, cfg);
    if (a < 0 || b < 0 || a >= grid.width || b >= grid.height) {
        ++grid.outside;
        return false;
    }
    grid.layer(r.degree)(b, a) += beta;
    ++grid.deposited;
    return true;
}

bool deposit(AccumGrid& grid, const StarRecord& r, const RenderConfig& cfg) {
    const auto it = cfg.degree_scale.find(r.degree);
    return deposit(grid, r, cfg, brightness(r, cfg.mode, it == cfg.degree_scale.end() ? 1.0 : it->second));
}

namespace {

bool eligible(const StarRecord& r, const RenderConfig& cfg) {
    if (r.exact()) return true;
    return cfg.include_bounds_only && r.split_status() == to_string(SplitStatus::BoundsOnly);
}

bool in_view(const StarRecord& r, const RenderConfig& cfg) {
    const auto [a, b] = pixel_of(r.re, r.im, cfg);
    return a >= 0 && b >= 0 && a < cfg.width && b < cfg.height;
}

}  // namespace

std::map<int, double> equalizing_degree_scales(std::span<const StarRecord> records, const RenderConfig& cfg) {
    std::map<int, double> mass;
    for (const auto& r : records)
        if (eligible(r, cfg) && in_view(r, cfg)) mass[r.degree] += brightness(r, BrightnessMode::DegOverG, 1.0);
    std::map<int, double> out;
    for (const auto& [d, m] : mass)
        if (m > 0) out[d] = 1.0 / m;
    return out;
}

AccumGrid accumulate(std::span<const StarRecord> records, const RenderConfig& cfg) {
    cfg.validate();
    RenderConfig local = cfg;
    if (cfg.mode == BrightnessMode::DegOverG)
        for (const auto& [d, c] : equalizing_degree_scales(records, cfg)) local.degree_scale.emplace(d, c);
    AccumGrid grid(cfg.width, cfg.height);
    for (const auto& r : records) {
        if (!eligible(r, local)) {
            ++grid.excluded;
            continue;
        }
        deposit(grid, r, local);
    }
    return grid;
}

Eigen::ArrayXXd gaussian_blur(const Eigen::ArrayXXd& img, double sigma) {
    if (!(sigma >= 0)) throw std::invalid_argument("gaussian_blur: sigma must be >= 0");
    if (sigma == 0) return img;
    const int radius = static_cast<int>(std::ceil(3 * sigma));
    std::vector<double> k(static_cast<std::size_t>(2 * radius + 1));
    double sum = 0;
    for (int i = -radius; i <= radius; ++i) sum += k[i + radius] = std::exp(-(i * i) / (2 * sigma * sigma));
    for (auto& v : k) v /= sum;

    const Eigen::Index rows = img.rows(), cols = img.cols();
    Eigen::ArrayXXd tmp = Eigen::ArrayXXd::Zero(rows, cols), out = Eigen::ArrayXXd::Zero(rows, cols);
    // Horizontal then vertical; scattering from nonzero pixels keeps sparse
    // rasters cheap.
    for (Eigen::Index c = 0; c < cols; ++c)
        for (Eigen::Index r = 0; r < rows; ++r) {
            const double v = img(r, c);
            if (v == 0) continue;
            for (int i = -radius; i <= radius; ++i) {
                const Eigen::Index cc = c + i;
                if (cc >= 0 && cc < cols) tmp(r, cc) += v * k[i + radius];
            }
        }
    for (Eigen::Index c = 0; c < cols; ++c)
        for (Eigen::Index r = 0; r < rows; ++r) {
            const double v = tmp(r, c);
            if (v == 0) continue;
            for (int i = -radius; i <= radius; ++i) {
                const Eigen::Index rr = r + i;
                if (rr >= 0 && rr < rows) out(rr, c) += v * k[i + radius];
            }
        }
    return out;
}

Image composite(const AccumGrid& grid, const RenderConfig& cfg) {
    cfg.validate();
    if (grid.width != cfg.width || grid.height != cfg.height)
        throw std::invalid_argument("composite: raster size differs from config");
    std::map<int, Eigen::ArrayXXd> blurred;
    for (const auto& [d, g] : grid.layers) blurred.emplace(d, gaussian_blur(g, cfg.blur_sigma));

    Image img;
    img.width = cfg.width;
    img.height = cfg.height;
    if (cfg.global_gain) {
        img.gain = *cfg.global_gain;
    } else {
        Eigen::ArrayXXd combined = Eigen::ArrayXXd::Zero(cfg.height, cfg.width);
        for (const auto& [d, g] : blurred) combined += g;
        std::vector<double> nz;
        for (Eigen::Index i = 0; i < combined.size(); ++i)
            if (combined(i) > 0) nz.push_back(combined(i));
        if (!nz.empty()) {
            const std::size_t rank = static_cast<std::size_t>(std::ceil(0.995 * static_cast<double>(nz.size())));
            std::nth_element(nz.begin(), nz.begin() + static_cast<long>(rank - 1), nz.end());
            img.gain = 1.0 / nz[rank - 1];
        }
    }

    img.rgb.resize(static_cast<std::size_t>(cfg.width) * static_cast<std::size_t>(cfg.height) * 3);
    const Rgb white{1, 1, 1};
    for (int y = 0; y < cfg.height; ++y)
        for (int x = 0; x < cfg.width; ++x) {
            double c[3] = {cfg.background.r, cfg.background.g, cfg.background.b};
            for (const auto& [d, g] : blurred) {
                const double m = img.gain * g(y, x);
                if (m <= 0) continue;
                const double t = std::clamp(m / (1 + m), 0.0, 1.0);
                const auto it = cfg.palette.find(d);
                const Rgb& col = it == cfg.palette.end() ? white : it->second;
                c[0] += t * col.r;
                c[1] += t * col.g;
                c[2] += t * col.b;
            }
            std::uint8_t* px = &img.rgb[(static_cast<std::size_t>(y) * static_cast<std::size_t>(cfg.width) +
                                         static_cast<std::size_t>(x)) * 3];
            for (int ch = 0; ch < 3; ++ch) {
                const double v = std::pow(std::clamp(c[ch], 0.0, 1.0), 1 / 2.2);
                px[ch] = static_cast<std::uint8_t>(std::lround(v * 255));
            }
        }
    return img;
}

void write_png(const Image& img, const std::filesystem::path& path) {
    std::FILE* fp = std::fopen(path.string().c_str(), "wb");
    if (!fp) throw std::runtime_error("cannot write " + path.string());
    png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    png_infop info = png ? png_create_info_struct(png) : nullptr;
    if (!png || !info) {
        png_destroy_write_struct(&png, &info);
        std::fclose(fp);
        throw std::runtime_error("libpng initialization failed");
    }
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_write_struct(&png, &info);
        std::fclose(fp);
        throw std::runtime_error("PNG encoding failed: " + path.string());
    }
    png_init_io(png, fp);
    png_set_compression_level(png, 6);
    png_set_IHDR(png, info, static_cast<png_uint_32>(img.width), static_cast<png_uint_32>(img.height), 8,
                 PNG_COLOR_TYPE_RGB, PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
    png_write_info(png, info);
    for (int y = 0; y < img.height; ++y)
        png_write_row(png, img.rgb.data() + static_cast<std::size_t>(y) * static_cast<std::size_t>(img.width) * 3);
    png_write_end(png, nullptr);
    png_destroy_write_struct(&png, &info);
    if (std::fclose(fp) != 0) throw std::runtime_error("cannot finish " + path.string());
}

Image composite_and_encode(const AccumGrid& grid, const RenderConfig& cfg, const std::filesystem::path& path) {
    Image img = composite(grid, cfg);
    write_png(img, path);
    return img;
}

}  // namespace starscape
