#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

#include <json.hpp>

#include "jdkelly/market.hpp"

namespace jdkelly {

// Syntax or schema error in a market document, located by line (1-based)
// and JSON pointer.
class MarketParseError : public std::runtime_error {
public:
    MarketParseError(int line, std::string pointer, const std::string& message);

    int line() const noexcept { return line_; }
    const std::string& pointer() const noexcept { return pointer_; }

private:
    int line_;
    std::string pointer_;
};

// Market document:
//   {
//     "n": 1,
//     "nu": [0.07],            // or "mu"; exactly one of the two
//     "sigma": [0.15],
//     "rho": [[1]],            // optional, identity by default
//     "r": 0.03,
//     "lambda": 1,
//     "atoms": [{"x": [1.0], "p": 0.5}, {"x": [-0.5], "p": 0.5}]
//   }
// nu is the geometric drift; mu = nu + sigma^2 / 2. For n = 1 the vector
// fields may also be given as plain numbers. Only the schema is checked
// here; run validate() for the market invariants.
MarketSpec parse_market_json(std::string_view text);
MarketSpec load_market(const std::filesystem::path& path);

nlohmann::json market_to_json(const MarketSpec& spec);

}  // namespace jdkelly
