// Coefficient-box enumeration and the chunked, resumable StarRecord dataset.

#ifndef STARSCAPE_DATASET_HPP
#define STARSCAPE_DATASET_HPP

#include "starscape/galois.hpp"
#include "starscape/poly.hpp"

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace starscape {

/// Monic polynomials x^d + a_{d-1} x^{d-1} + ... + a_0 with every a_i in
/// [-coeff_bound, coeff_bound], for each listed degree in increasing order.
struct BoxSpec {
    std::vector<int> degrees;
    int coeff_bound = 1;

    /// Throws std::invalid_argument on an empty or non-positive degree list, or
    /// coeff_bound < 1.
    void validate() const;
    std::uint64_t candidate_count() const;
    /// The index-th candidate: degrees in order, then the constant-first tuple
    /// (a_0, ..., a_{d-1}) in lexicographic order.
    IntPoly candidate(std::uint64_t index) const;
};

/// Irreducible candidates in box order.
void enumerate_box(const BoxSpec& spec, const std::function<void(const IntPoly&)>& visit);
std::vector<IntPoly> enumerate_box(const BoxSpec& spec);

/// sqrt(1 + a_{d-1}^2 + ... + a_0^2) for monic f.
double coeff_vector_magnitude(const IntPoly& f);

struct StarRecord {
    double re = 0;
    double im = 0;
    int degree = 0;
    BigRat rigidity;
    std::uint64_t galois_order = 0;
    double coeff_norm = 1;
    BigInt discriminant;
    IntPoly poly;
    std::string status;

    /// Galois status with any "+unconverged" suffix removed.
    std::string_view split_status() const;
    bool converged() const;
    bool exact() const;
};

inline constexpr std::string_view kCsvHeader = "re,im,degree,rigidity,galois_order,coeff_norm,discriminant,poly,status";
inline constexpr std::string_view kUnconvergedSuffix = "+unconverged";

std::string to_csv_line(const StarRecord& r);
/// Throws std::invalid_argument on malformed input.
StarRecord parse_csv_line(std::string_view line);

/// Full per-polynomial pipeline.  Empty for reducible f.
std::vector<StarRecord> compute_records(const IntPoly& f, const SplitBudget& budget = {});

struct DatasetOptions {
    /// 0 selects default_thread_count().
    int threads = 0;
    std::uint64_t chunk_size = 10000;
};

/// STARSCAPE_THREADS when set to a positive integer, else the number of
/// logical CPUs.
int default_thread_count();

struct DatasetSummary {
    std::uint64_t candidates = 0;
    std::uint64_t polynomials = 0;
    std::uint64_t records = 0;
    std::uint64_t chunks_written = 0;
    std::uint64_t chunks_skipped = 0;
    /// Polynomial counts by status string and record counts by degree.
    std::map<std::string, std::uint64_t> by_status;
    std::map<int, std::uint64_t> by_degree;
};

/// Writes chunk_NNNNN.csv files and manifest.txt into `out_dir`.  Chunks whose
/// manifest line and file match the current spec are skipped.  Output bytes do
/// not depend on the thread count.
DatasetSummary build_dataset(const BoxSpec& spec, const SplitBudget& budget, const std::filesystem::path& out_dir,
                             const DatasetOptions& opts = {});

/// Records of a dataset directory (chunks in manifest order) or of a single
/// CSV file.
std::vector<StarRecord> read_dataset(const std::filesystem::path& path);

}  // namespace starscape

#endif  // STARSCAPE_DATASET_HPP
