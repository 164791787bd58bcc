#pragma once

#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "padicfeas/sparse_poly.hpp"

namespace padicfeas::cli {

// Exit codes shared by every subcommand.
inline constexpr int kExitTrue = 0;
inline constexpr int kExitFalse = 1;
inline constexpr int kExitInput = 2;
inline constexpr int kExitBudget = 3;
inline constexpr int kExitInternal = 4;

// Runs one invocation. args excludes the program name. Reports go to out
// (or the --out file), human-readable summaries to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// "3*x^50 - 2*x^3 + 1" style input. Throws std::invalid_argument.
SparsePoly parse_expression(std::string_view text);

}  // namespace padicfeas::cli
