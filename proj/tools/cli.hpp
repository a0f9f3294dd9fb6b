#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace starsel::cli {

/// Runs one CLI command. Reports are a single JSON document on `out`;
/// diagnostics go to `err`. Exit status: 0 success (and, for check, zero
/// violations), 1 violations found or separation not found, 2 usage or
/// format errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace starsel::cli
