#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace jdkelly {

// A rule b with 1 + b'x <= 0 for some atom x of the jump support.
class InadmissibleRule : public std::domain_error {
public:
    InadmissibleRule(const std::string& what, std::size_t atom) : std::domain_error(what), atom_(atom) {}

    std::size_t atom() const noexcept { return atom_; }

private:
    std::size_t atom_;
};

// Raised when the jump support admits a riskless profit; growth is then
// unbounded and no Kelly rule exists.
class ArbitrageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ConvergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace jdkelly
