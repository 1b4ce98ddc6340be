#include "starscape/dataset.hpp"

#include "starscape/factor.hpp"
#include "starscape/roots.hpp"

#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace starscape {

namespace fs = std::filesystem;

// ---- box -----------------------------------------------------------------

void BoxSpec::validate() const {
    if (degrees.empty()) throw std::invalid_argument("BoxSpec: no degrees given");
    for (int d : degrees)
        if (d < 1 || d > 20) throw std::invalid_argument("BoxSpec: degree must be in [1, 20]");
    if (coeff_bound < 1) throw std::invalid_argument("BoxSpec: coefficient bound must be >= 1");
}

namespace {

std::uint64_t box_size(int degree, int bound) {
    std::uint64_t n = 1;
    const std::uint64_t base = 2 * static_cast<std::uint64_t>(bound) + 1;
    for (int i = 0; i < degree; ++i) {
        if (n > UINT64_MAX / base) throw std::overflow_error("BoxSpec: too many candidates");
        n *= base;
    }
    return n;
}

}  // namespace

std::uint64_t BoxSpec::candidate_count() const {
    validate();
    std::uint64_t total = 0;
    for (int d : degrees) total += box_size(d, coeff_bound);
    return total;
}

IntPoly BoxSpec::candidate(std::uint64_t index) const {
    validate();
    for (int d : degrees) {
        const std::uint64_t n = box_size(d, coeff_bound);
        if (index >= n) {
            index -= n;
            continue;
        }
        const std::uint64_t base = 2 * static_cast<std::uint64_t>(coeff_bound) + 1;
        std::vector<BigInt> c(static_cast<std::size_t>(d + 1));
        c[d] = 1;
        for (int i = d - 1; i >= 0; --i) {
            c[i] = static_cast<long>(index % base) - coeff_bound;
            index /= base;
        }
        return IntPoly(std::move(c));
    }
    throw std::out_of_range("BoxSpec: candidate index out of range");
}

void enumerate_box(const BoxSpec& spec, const std::function<void(const IntPoly&)>& visit) {
    const std::uint64_t n = spec.candidate_count();
    for (std::uint64_t i = 0; i < n; ++i) {
        const IntPoly f = spec.candidate(i);
        if (is_irreducible_over_Q(f)) visit(f);
    }
}

std::vector<IntPoly> enumerate_box(const BoxSpec& spec) {
    std::vector<IntPoly> out;
    enumerate_box(spec, [&](const IntPoly& f) { out.push_back(f); });
    return out;
}

double coeff_vector_magnitude(const IntPoly& f) {
    if (f.degree() < 0 || !f.is_monic()) throw std::invalid_argument("coeff_vector_magnitude: need a monic polynomial");
    BigInt sq = 0;
    for (const auto& c : f.coeffs()) sq += c * c;
    return std::sqrt(sq.get_d());
}

// ---- records -------------------------------------------------------------

std::string_view StarRecord::split_status() const {
    std::string_view s = status;
    if (s.ends_with(kUnconvergedSuffix)) s.remove_suffix(kUnconvergedSuffix.size());
    return s;
}

bool StarRecord::converged() const { return !std::string_view(status).ends_with(kUnconvergedSuffix); }

bool StarRecord::exact() const {
    const auto st = parse_split_status(split_status());
    return st && *st != SplitStatus::BoundsOnly;
}

namespace {

void append_double(std::string& out, double v) {
    char buf[40];
    const int n = std::snprintf(buf, sizeof buf, "%.17g", v);
    out.append(buf, static_cast<std::size_t>(n));
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> out;
    for (;;) {
        const auto pos = s.find(sep);
        out.push_back(s.substr(0, pos));
        if (pos == std::string_view::npos) return out;
        s.remove_prefix(pos + 1);
    }
}

double parse_double(std::string_view s) {
    double v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) throw std::invalid_argument("bad number: " + std::string(s));
    return v;
}

template <class Int>
Int parse_int(std::string_view s) {
    Int v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) throw std::invalid_argument("bad integer: " + std::string(s));
    return v;
}

}  // namespace

std::string to_csv_line(const StarRecord& r) {
    std::string out;
    append_double(out, r.re);
    out += ',';
    append_double(out, r.im);
    out += ',';
    out += std::to_string(r.degree);
    out += ',';
    out += r.rigidity.get_num().get_str() + "/" + r.rigidity.get_den().get_str();
    out += ',';
    out += std::to_string(r.galois_order);
    out += ',';
    append_double(out, r.coeff_norm);
    out += ',';
    out += r.discriminant.get_str();
    out += ',';
    out += to_string(r.poly);
    out += ',';
    out += r.status;
    return out;
}

StarRecord parse_csv_line(std::string_view line) {
    if (line.ends_with('\r')) line.remove_suffix(1);
    const auto f = split(line, ',');
    if (f.size() != 9) throw std::invalid_argument("CSV record must have 9 fields: " + std::string(line));
    StarRecord r;
    r.re = parse_double(f[0]);
    r.im = parse_double(f[1]);
    r.degree = parse_int<int>(f[2]);
    const auto slash = f[3].find('/');
    if (slash == std::string_view::npos) throw std::invalid_argument("rigidity must be num/den: " + std::string(f[3]));
    r.rigidity = BigRat(BigInt(std::string(f[3].substr(0, slash))), BigInt(std::string(f[3].substr(slash + 1))));
    r.rigidity.canonicalize();
    r.galois_order = parse_int<std::uint64_t>(f[4]);
    r.coeff_norm = parse_double(f[5]);
    r.discriminant = BigInt(std::string(f[6]));
    r.poly = parse_int_poly(f[7]);
    r.status = std::string(f[8]);
    if (r.poly.degree() != r.degree) throw std::invalid_argument("degree column disagrees with poly");
    return r;
}

std::vector<StarRecord> compute_records(const IntPoly& f, const SplitBudget& budget) {
    if (!is_irreducible_over_Q(f, budget.factor_options())) return {};
    const int d = f.degree();
    const SplitResult g = galois_order(f, budget);
    const RootSet roots = all_roots(f);
    StarRecord base;
    base.degree = d;
    base.galois_order = g.order;
    base.rigidity = rigidity(d, g.order);
    base.coeff_norm = coeff_vector_magnitude(f);
    base.discriminant = discriminant(f);
    base.poly = f;
    base.status = std::string(to_string(g.status));
    if (!roots.converged) base.status += kUnconvergedSuffix;
    std::vector<StarRecord> out;
    out.reserve(roots.roots.size());
    for (const auto& r : roots.roots) {
        StarRecord rec = base;
        rec.re = r.re;
        rec.im = r.im;
        out.push_back(std::move(rec));
    }
    return out;
}

// ---- dataset files -------------------------------------------------------

int default_thread_count() {
    if (const char* env = std::getenv("STARSCAPE_THREADS")) {
        int n = 0;
        const std::string_view s(env);
        const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), n);
        if (ec == std::errc{} && ptr == s.data() + s.size() && n > 0) return n;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

namespace {

constexpr std::string_view kComplete = "complete";

std::string chunk_name(std::uint64_t id) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "chunk_%05llu.csv", static_cast<unsigned long long>(id));
    return buf;
}

void write_atomically(const fs::path& path, const std::string& content) {
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write " + tmp.string());
        out << content;
        out.flush();
        if (!out) throw std::runtime_error("write failed: " + tmp.string());
    }
    fs::rename(tmp, path);
}

std::vector<StarRecord> read_csv(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path.string());
    std::string line;
    if (!std::getline(in, line) || std::string_view(line) != kCsvHeader)
        throw std::runtime_error(path.string() + ": missing CSV header");
    std::vector<StarRecord> out;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        try {
            out.push_back(parse_csv_line(line));
        } catch (const std::exception& e) {
            throw std::runtime_error(path.string() + ":" + std::to_string(lineno) + ": " + e.what());
        }
    }
    return out;
}

std::vector<std::string> read_lines(const fs::path& path) {
    std::vector<std::string> out;
    std::ifstream in(path, std::ios::binary);
    std::string line;
    while (std::getline(in, line))
        if (!line.empty()) out.push_back(line);
    return out;
}

void tally(DatasetSummary& s, const std::vector<StarRecord>& records) {
    for (std::size_t i = 0; i < records.size();) {
        const StarRecord& r = records[i];
        ++s.polynomials;
        ++s.by_status[r.status];
        s.by_degree[r.degree] += static_cast<std::uint64_t>(r.degree);
        s.records += static_cast<std::uint64_t>(r.degree);
        i += static_cast<std::size_t>(std::max(r.degree, 1));
    }
}

// Records of candidates [begin, end) in candidate order.
std::vector<StarRecord> compute_range(const BoxSpec& spec, const SplitBudget& budget, std::uint64_t begin,
                                      std::uint64_t end, int threads) {
    const std::size_t n = static_cast<std::size_t>(end - begin);
    std::vector<std::vector<StarRecord>> slots(n);
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto work = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= n) return;
            try {
                slots[i] = compute_records(spec.candidate(begin + i), budget);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                next = n;
                return;
            }
        }
    };
    const int workers = std::max(1, std::min<int>(threads, static_cast<int>(n)));
    if (workers == 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        for (int t = 0; t < workers; ++t) pool.emplace_back(work);
    }
    if (failure) std::rethrow_exception(failure);
    std::vector<StarRecord> out;
    for (auto& s : slots)
        for (auto& r : s) out.push_back(std::move(r));
    return out;
}

}  // namespace

DatasetSummary build_dataset(const BoxSpec& spec, const SplitBudget& budget, const fs::path& out_dir,
                             const DatasetOptions& opts) {
    if (opts.chunk_size == 0) throw std::invalid_argument("build_dataset: chunk size must be positive");
    const std::uint64_t total = spec.candidate_count();
    const int threads = opts.threads > 0 ? opts.threads : default_thread_count();
    fs::create_directories(out_dir);
    const fs::path manifest_path = out_dir / "manifest.txt";

    std::map<std::uint64_t, std::string> previous;
    for (const auto& line : read_lines(manifest_path)) {
        std::uint64_t id = 0;
        const auto sp = line.find(' ');
        const auto [ptr, ec] = std::from_chars(line.data(), line.data() + (sp == std::string::npos ? 0 : sp), id);
        if (ec == std::errc{} && ptr == line.data() + sp) previous[id] = line;
    }

    DatasetSummary summary;
    summary.candidates = total;
    std::string manifest;
    const std::uint64_t chunks = (total + opts.chunk_size - 1) / opts.chunk_size;
    for (std::uint64_t id = 0; id < chunks; ++id) {
        const std::uint64_t begin = id * opts.chunk_size, end = std::min(total, begin + opts.chunk_size);
        const std::string prefix =
            std::to_string(id) + " " + to_string(spec.candidate(begin)) + " " + to_string(spec.candidate(end - 1)) + " ";
        const fs::path chunk_path = out_dir / chunk_name(id);

        bool reused = false;
        if (auto it = previous.find(id); it != previous.end() && it->second.starts_with(prefix) &&
                                         std::string_view(it->second).ends_with(" " + std::string(kComplete)) &&
                                         fs::exists(chunk_path)) {
            const std::string_view rest = std::string_view(it->second).substr(prefix.size());
            const auto expected = parse_int<std::uint64_t>(rest.substr(0, rest.find(' ')));
            try {
                const std::vector<StarRecord> records = read_csv(chunk_path);
                if (records.size() == expected) {
                    tally(summary, records);
                    manifest += it->second + "\n";
                    ++summary.chunks_skipped;
                    reused = true;
                }
            } catch (const std::exception&) {
                reused = false;
            }
        }
        if (!reused) {
            const std::vector<StarRecord> records = compute_range(spec, budget, begin, end, threads);
            std::string body(kCsvHeader);
            body += '\n';
            for (const auto& r : records) {
                body += to_csv_line(r);
                body += '\n';
            }
            write_atomically(chunk_path, body);
            tally(summary, records);
            manifest += prefix + std::to_string(records.size()) + " " + std::string(kComplete) + "\n";
            ++summary.chunks_written;
        }
        write_atomically(manifest_path, manifest);
    }

    // Chunk files beyond the current spec belong to an earlier, larger run.
    for (std::uint64_t id = chunks;; ++id) {
        const fs::path stale = out_dir / chunk_name(id);
        if (!fs::exists(stale)) break;
        fs::remove(stale);
    }
    return summary;
}

std::vector<StarRecord> read_dataset(const fs::path& path) {
    if (!fs::is_directory(path)) return read_csv(path);
    const fs::path manifest = path / "manifest.txt";
    if (!fs::exists(manifest)) throw std::runtime_error(path.string() + ": no manifest.txt");
    std::vector<StarRecord> out;
    for (const auto& line : read_lines(manifest)) {
        if (!std::string_view(line).ends_with(" " + std::string(kComplete)))
            throw std::runtime_error(path.string() + ": incomplete chunk in manifest: " + line);
        const auto id = parse_int<std::uint64_t>(std::string_view(line).substr(0, line.find(' ')));
        auto records = read_csv(path / chunk_name(id));
        for (auto& r : records) out.push_back(std::move(r));
    }
    return out;
}

}  // namespace starscape
