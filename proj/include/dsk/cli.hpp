#pragma once

#include <iosfwd>
#include <string>
#include <vector>

// Command-line surface. Exit status contract: 0 = success, 1 = the input was
// understood but has findings (parse failures, rule violations, identity
// breakdown), 2 = usage or I/O errors. stdout carries only canonical,
// machine-diffable bytes; every diagnostic goes to stderr.

namespace dsk::cli {

// `args` is argv without the program name, in natural order.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dsk::cli
