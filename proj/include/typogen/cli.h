#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace typogen {

inline constexpr std::size_t kDefaultMaxInputLength = 20;

/// Runs one subcommand; `args` excludes the program name. Failures print a
/// single `error: <subcommand>: <code>: <message>` line to `err` and return
/// nonzero, leaving no partial outputs behind.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace typogen
