#pragma once

#include <stdexcept>
#include <string>

namespace fm {

// Malformed input: unparsable rational, invalid measure spec, bad CLI value.
class ParseError : public std::runtime_error {
public:
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

// A precondition on mathematical arguments was violated (x outside the
// admissible interval, nonpositive radius, ...).
class DomainError : public std::runtime_error {
public:
    explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

// The node budget (FM_NODE_BUDGET) was exhausted before the requested
// computation finished.
class BudgetError : public std::runtime_error {
public:
    explicit BudgetError(const std::string& what) : std::runtime_error(what) {}
};

// Node budget shared by all enumerative searches.  Read once from the
// environment variable FM_NODE_BUDGET; defaults to 8'000'000.
unsigned long node_budget();

// Counter helper: throws BudgetError when `used` exceeds node_budget().
void charge_nodes(unsigned long& used, unsigned long amount, const char* where);

} // namespace fm
