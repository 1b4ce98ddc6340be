// Starscape rendering: brightness weights, per-degree accumulation rasters,
// Gaussian blur, tone mapping and PNG output.

#ifndef STARSCAPE_RENDER_HPP
#define STARSCAPE_RENDER_HPP

#include "starscape/dataset.hpp"

#include <Eigen/Core>

#include <complex>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace starscape {

enum class BrightnessMode { D, V, RPlus, RMinus, DRPlus, DRMinus, VRPlus, VRMinus, DegOverG };

/// Config-file names: d, v, r_plus, r_minus, dr_plus, dr_minus, vr_plus,
/// vr_minus, deg_over_g.
std::string_view to_string(BrightnessMode m);
std::optional<BrightnessMode> parse_brightness_mode(std::string_view s);

struct Rgb {
    double r = 0, g = 0, b = 0;
    friend bool operator==(const Rgb&, const Rgb&) = default;
};

/// Default layer colors for degrees 1 through 5.
std::map<int, Rgb> default_palette();

struct RenderConfig {
    int width = 1600;
    int height = 1200;
    std::complex<double> center{0.0, 0.0};
    double pixels_per_unit = 300;
    double blur_sigma = 1.5;
    BrightnessMode mode = BrightnessMode::RPlus;
    /// Degrees without an entry render white.
    std::map<int, Rgb> palette = default_palette();
    Rgb background{0, 0, 0};
    /// nullopt: the 99.5th percentile of nonzero blurred pixels maps to 1.
    std::optional<double> global_gain;
    /// Per-degree constants for DegOverG; missing degrees are chosen so each
    /// degree layer carries equal total mass.
    std::map<int, double> degree_scale;
    /// Deposit BoundsOnly records using their lower-bound order.
    bool include_bounds_only = false;

    /// Throws std::invalid_argument when a field is out of range.
    void validate() const;
};

/// Parses `key = value` lines ('#' starts a comment).  Keys: width height
/// center_re center_im pixels_per_unit sigma mode gain background palette.<d>.
/// Unknown keys and malformed values throw std::invalid_argument.
RenderConfig parse_render_config(std::string_view text, RenderConfig base = {});
RenderConfig load_render_config(const std::filesystem::path& path);

/// Weight of one record; `degree_scale` is C_d and only used by DegOverG.
double brightness(const StarRecord& r, BrightnessMode mode, double degree_scale = 1.0);

/// Dense per-degree rasters indexed (row B, column A).
struct AccumGrid {
    int width = 0;
    int height = 0;
    std::map<int, Eigen::ArrayXXd> layers;
    std::uint64_t deposited = 0;
    std::uint64_t outside = 0;
    std::uint64_t excluded = 0;

    AccumGrid(int w, int h) : width(w), height(h) {}
    Eigen::ArrayXXd& layer(int degree);
    double total_mass() const;
};

/// Pixel column and row for a point.
std::pair<long, long> pixel_of(double re, double im, const RenderConfig& cfg);

/// Adds `beta` at the record's pixel.  Returns false (and counts the record
/// as outside) when the pixel is off the raster.
bool deposit(AccumGrid& grid, const StarRecord& r, const RenderConfig& cfg, double beta);
/// Same, with beta = brightness(r, cfg.mode, C_d) where C_d comes from
/// cfg.degree_scale (1 when absent).
bool deposit(AccumGrid& grid, const StarRecord& r, const RenderConfig& cfg);

/// Deposits every eligible record; for DegOverG fills in missing C_d first.
AccumGrid accumulate(std::span<const StarRecord> records, const RenderConfig& cfg);

/// C_d making each degree's in-viewport DegOverG mass equal to 1.
std::map<int, double> equalizing_degree_scales(std::span<const StarRecord> records, const RenderConfig& cfg);

/// Separable blur with a normalized kernel of radius ceil(3 sigma) and zero
/// padding.  sigma = 0 returns the input unchanged.
Eigen::ArrayXXd gaussian_blur(const Eigen::ArrayXXd& img, double sigma);

struct Image {
    int width = 0;
    int height = 0;
    /// Row-major 8-bit RGB.
    std::vector<std::uint8_t> rgb;
    double gain = 1;
};

/// Blur, gain, tone map m/(1+m), color, composite degrees in increasing
/// order over the background, gamma 1/2.2 and quantize.
Image composite(const AccumGrid& grid, const RenderConfig& cfg);
void write_png(const Image& img, const std::filesystem::path& path);
Image composite_and_encode(const AccumGrid& grid, const RenderConfig& cfg, const std::filesystem::path& path);

}  // namespace starscape

#endif  // STARSCAPE_RENDER_HPP
