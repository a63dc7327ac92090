#pragma once

// Command dispatch for the `cil` tool.
//
// Exit codes: 0 success / equivalent / valid, 1 not equivalent / invalid /
// fuel exhausted, 2 parse, sort, schema or configuration error, 3 internal
// error.

#include <iosfwd>
#include <string>
#include <vector>

#include "cil/cil.hpp"

namespace cil::cli {

inline constexpr int kOk = 0;
inline constexpr int kNegative = 1;
inline constexpr int kInputError = 2;
inline constexpr int kInternal = 3;

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, char** argv, std::ostream& out, std::ostream& err);

/// Indented node-per-line dump with sorts.
std::string tree_dump(const TermPtr& t);

}  // namespace cil::cli
