#ifndef STARSCAPE_ERRORS_HPP
#define STARSCAPE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace starscape {

/// A configured work limit (recombination subsets, field degree) was hit.
class BudgetExceeded : public std::runtime_error {
public:
    explicit BudgetExceeded(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace starscape

#endif  // STARSCAPE_ERRORS_HPP
