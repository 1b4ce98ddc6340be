// Acceptance suites shared by `starscape verify` and the acceptance test.

#ifndef STARSCAPE_ACCEPTANCE_HPP
#define STARSCAPE_ACCEPTANCE_HPP

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace starscape {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool passed = false;
    std::string detail;
    double seconds = 0;
};

struct AcceptanceOptions {
    /// Scratch space for generated datasets and images.
    std::filesystem::path work_dir = std::filesystem::temp_directory_path() / "starscape_acceptance";
    int threads = 0;
    /// Progress lines; may be null.
    std::ostream* log = nullptr;
};

/// Total emitted roots for degree 5, bound 4 with the default budget.
inline constexpr std::uint64_t kQuinticRootCount = 218420;

/// Criteria 1 through 8; unknown ids throw std::out_of_range.
CriterionResult run_criterion(int id, const AcceptanceOptions& opts);
std::vector<CriterionResult> run_criteria(const std::vector<int>& ids, const AcceptanceOptions& opts);

/// "PASS"/"FAIL" line for one result.
std::string format_result(const CriterionResult& r);

}  // namespace starscape

#endif  // STARSCAPE_ACCEPTANCE_HPP
