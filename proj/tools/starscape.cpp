#include "starscape/acceptance.hpp"
#include "starscape/dataset.hpp"
#include "starscape/factor.hpp"
#include "starscape/galois.hpp"
#include "starscape/render.hpp"
#include "starscape/roots.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>

namespace fs = std::filesystem;
using namespace starscape;

namespace {

struct BudgetFlags {
    int max_degree = SplitBudget{}.max_absolute_degree;
    int dedekind_primes = SplitBudget{}.max_primes_dedekind;
    std::uint64_t recombination_cap = SplitBudget{}.recombination_cap;

    void attach(CLI::App* app) {
        app->add_option("--max-degree", max_degree, "Largest absolute field degree the tower may build")
            ->check(CLI::PositiveNumber);
        app->add_option("--dedekind-primes", dedekind_primes, "Primes sampled for cycle-type certificates")
            ->check(CLI::PositiveNumber);
        app->add_option("--recombination-cap", recombination_cap, "Factor-recombination subsets before giving up")
            ->check(CLI::PositiveNumber);
    }
    SplitBudget budget() const {
        SplitBudget b;
        b.max_absolute_degree = max_degree;
        b.max_primes_dedekind = dedekind_primes;
        b.recombination_cap = recombination_cap;
        return b;
    }
};

struct BoxFlags {
    std::vector<int> degrees;
    int bound = 1;

    void attach(CLI::App* app) {
        app->add_option("--degree", degrees, "Polynomial degree(s), e.g. --degree 4 or --degree 1,2,3")
            ->required()
            ->delimiter(',')
            ->check(CLI::Range(1, 20));
        app->add_option("--bound", bound, "Coefficient bound c (coefficients in [-c, c])")->check(CLI::PositiveNumber);
    }
    BoxSpec spec() const { return BoxSpec{degrees, bound}; }
};

struct RenderFlags {
    std::string config;
    std::string mode;
    double gain = 0;
    bool include_bounds = false;

    void attach(CLI::App* app) {
        app->add_option("--config", config, "Render config file (key = value lines)")->check(CLI::ExistingFile);
        app->add_option("--mode", mode, "Brightness mode; overrides the config")
            ->check(CLI::IsMember({"d", "v", "r_plus", "r_minus", "dr_plus", "dr_minus", "vr_plus", "vr_minus",
                                   "deg_over_g"}));
        app->add_option("--gain", gain, "Fixed global gain; overrides the config (0 keeps the config value)")
            ->check(CLI::NonNegativeNumber);
        app->add_flag("--include-bounds-only", include_bounds, "Also plot BoundsOnly records at their lower bound");
    }
    RenderConfig load() const {
        RenderConfig cfg = config.empty() ? RenderConfig{} : load_render_config(config);
        if (!mode.empty()) cfg.mode = *parse_brightness_mode(mode);
        if (gain > 0) cfg.global_gain = gain;
        cfg.include_bounds_only = include_bounds;
        return cfg;
    }
};

IntPoly parse_monic(const std::string& text) {
    IntPoly f = parse_int_poly(text);
    if (f.degree() < 1 || !f.is_monic()) throw std::invalid_argument("polynomial must be monic of degree >= 1");
    return f;
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

int cmd_galois(const std::string& text, const SplitBudget& budget) {
    const IntPoly f = parse_monic(text);
    const Factorization fac = factor_over_Q(f, budget.factor_options());
    if (fac.factors.size() != 1 || fac.factors[0].second != 1) {
        std::cerr << "error: " << text << " is reducible; factor: " << to_string(fac.factors[0].first) << "\n";
        return 1;
    }
    const SplitResult r = galois_order(f, budget);
    const BigRat rig = rigidity(f.degree(), r.order);
    std::cout << "poly: " << to_string(f) << "\n"
              << "degree: " << f.degree() << "\n";
    if (r.is_exact()) {
        std::cout << "order: " << r.order << "\n";
    } else {
        std::cout << "order: unknown, bounds " << r.lower_bound << " .. " << r.upper_bound << "\n";
    }
    std::cout << "method: " << to_string(r.status) << "\n";
    if (!r.tower_degrees.empty()) {
        std::cout << "tower:";
        for (int k : r.tower_degrees) std::cout << " " << k;
        std::cout << "\n";
    }
    std::cout << "rigidity: " << rig.get_num() << "/" << rig.get_den() << (r.is_exact() ? "" : " (from lower bound)")
              << "\n"
              << "discriminant: " << discriminant(f) << "\n";
    return 0;
}

int cmd_roots(const std::string& text) {
    const RootSet rs = all_roots(parse_monic(text));
    for (const auto& r : rs.roots) std::cout << fmt(r.re) << " " << fmt(r.im) << " " << fmt(r.residual) << "\n";
    if (!rs.converged) {
        std::cerr << "warning: no convergence after " << rs.iterations << " iterations (max residual "
                  << rs.max_residual << ")\n";
        return 1;
    }
    return 0;
}

void print_summary(const DatasetSummary& s) {
    std::cerr << "candidates " << s.candidates << ", irreducible " << s.polynomials << ", records " << s.records
              << ", chunks written " << s.chunks_written << ", skipped " << s.chunks_skipped << "\n";
    for (const auto& [status, n] : s.by_status) std::cerr << "  status " << status << ": " << n << "\n";
    for (const auto& [d, n] : s.by_degree) std::cerr << "  degree " << d << ": " << n << " records\n";
}

void render_to(const fs::path& data, const RenderConfig& cfg, const fs::path& out) {
    const std::vector<StarRecord> records = read_dataset(data);
    const AccumGrid grid = accumulate(records, cfg);
    const Image img = composite_and_encode(grid, cfg, out);
    std::cerr << "deposited " << grid.deposited << ", outside viewport " << grid.outside << ", excluded "
              << grid.excluded << ", gain " << img.gain << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Algebraic-integer starscapes: Galois orders, rigidity, datasets and images"};
    app.option_defaults()->always_capture_default();
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all", "Help for every subcommand");

    int threads = default_thread_count();

    std::string poly;
    BudgetFlags galois_budget;
    auto* galois = app.add_subcommand("galois", "Galois group order and rigidity of a monic irreducible polynomial");
    galois->add_option("poly", poly, "Coefficients constant term first, e.g. \"-2 0 0 0 1\"")->required();
    galois_budget.attach(galois);

    auto* roots = app.add_subcommand("roots", "Complex roots of a monic polynomial");
    roots->add_option("poly", poly, "Coefficients constant term first")->required();

    BoxFlags enum_box;
    std::string enum_out;
    auto* enumerate = app.add_subcommand("enumerate", "List the irreducible polynomials of a coefficient box");
    enum_box.attach(enumerate);
    enumerate->add_option("--out", enum_out, "Output file (one polynomial per line); stdout when empty");

    BoxFlags data_box;
    BudgetFlags data_budget;
    std::string data_out;
    std::uint64_t chunk_size = DatasetOptions{}.chunk_size;
    auto* dataset = app.add_subcommand("dataset", "Compute the StarRecord dataset of a coefficient box");
    data_box.attach(dataset);
    data_budget.attach(dataset);
    dataset->add_option("--out", data_out, "Output directory (chunks plus manifest.txt)")->required();
    dataset->add_option("--chunk-size", chunk_size, "Candidate polynomials per chunk file")->check(CLI::PositiveNumber);
    dataset->add_option("--threads", threads, "Worker threads (default: STARSCAPE_THREADS or logical CPUs)")
        ->check(CLI::PositiveNumber);

    std::string render_data, render_out;
    RenderFlags render_flags;
    auto* render = app.add_subcommand("render", "Render a dataset to a PNG starscape");
    render->add_option("--data", render_data, "Dataset directory or CSV file")->required()->check(CLI::ExistingPath);
    render->add_option("--out", render_out, "Output PNG path")->required();
    render_flags.attach(render);

    BoxFlags pipe_box;
    BudgetFlags pipe_budget;
    RenderFlags pipe_render;
    std::string pipe_dir = "starscape_out";
    auto* pipeline = app.add_subcommand("pipeline", "Dataset followed by render");
    pipe_box.attach(pipeline);
    pipe_budget.attach(pipeline);
    pipe_render.attach(pipeline);
    pipeline->add_option("--out-dir", pipe_dir, "Directory for data/ and starscape.png");
    pipeline->add_option("--threads", threads, "Worker threads (default: STARSCAPE_THREADS or logical CPUs)")
        ->check(CLI::PositiveNumber);

    bool quick = false, full = false;
    std::vector<int> criteria;
    std::string work_dir = AcceptanceOptions{}.work_dir.string();
    auto* verify = app.add_subcommand("verify", "Run acceptance suites; exits nonzero on any failure");
    auto* quick_flag = verify->add_flag("--quick", quick, "Worked examples and the cubic box");
    verify->add_flag("--full", full, "Every criterion, including the quartic and quintic boxes")->excludes(quick_flag);
    verify->add_option("--criterion", criteria, "Run only these criteria (1-8)")->check(CLI::Range(1, 8));
    verify->add_option("--work-dir", work_dir, "Scratch directory for generated data");
    verify->add_option("--threads", threads, "Worker threads for dataset criteria")->check(CLI::PositiveNumber);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*galois) return cmd_galois(poly, galois_budget.budget());
        if (*roots) return cmd_roots(poly);
        if (*enumerate) {
            std::ofstream file;
            if (!enum_out.empty()) {
                file.open(enum_out, std::ios::binary | std::ios::trunc);
                if (!file) throw std::runtime_error("cannot write " + enum_out);
            }
            std::ostream& out = enum_out.empty() ? std::cout : file;
            std::uint64_t n = 0;
            enumerate_box(enum_box.spec(), [&](const IntPoly& f) {
                out << to_string(f) << "\n";
                ++n;
            });
            std::cerr << n << " irreducible of " << enum_box.spec().candidate_count() << " candidates\n";
            return out ? 0 : 1;
        }
        if (*dataset) {
            DatasetOptions opts;
            opts.threads = threads;
            opts.chunk_size = chunk_size;
            print_summary(build_dataset(data_box.spec(), data_budget.budget(), data_out, opts));
            return 0;
        }
        if (*render) {
            render_to(render_data, render_flags.load(), render_out);
            return 0;
        }
        if (*pipeline) {
            const RenderConfig cfg = pipe_render.load();
            DatasetOptions opts;
            opts.threads = threads;
            const fs::path dir = pipe_dir;
            print_summary(build_dataset(pipe_box.spec(), pipe_budget.budget(), dir / "data", opts));
            render_to(dir / "data", cfg, dir / "starscape.png");
            std::cerr << "wrote " << (dir / "starscape.png").string() << "\n";
            return 0;
        }
        if (*verify) {
            if (criteria.empty()) criteria = full ? std::vector<int>{1, 2, 3, 4, 5, 6, 7, 8} : std::vector<int>{1, 2};
            AcceptanceOptions opts;
            opts.work_dir = work_dir;
            opts.threads = threads;
            opts.log = &std::cerr;
            bool ok = true;
            for (int id : criteria) {
                const CriterionResult r = run_criterion(id, opts);
                std::cout << format_result(r) << std::endl;
                ok = ok && r.passed;
            }
            return ok ? 0 : 1;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
