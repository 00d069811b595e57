#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "bitml/diagnostic.hpp"

namespace bitml::cli {

enum ExitCode : int { kClean = 0, kModelErrors = 1, kUsage = 2, kInternal = 3 };

struct Streams {
    std::ostream& out;
    std::ostream& err;
    bool color = false;
};

/// Runs the `bitml` command line; `args` excludes the program name.
int run(const std::vector<std::string>& args, Streams io);

/// `error[BITML-002] file:12:3 message`
std::string format_human(const Diagnostic& d, bool color = false);
/// JSON array of {severity, rule, message, file, line, col}.
std::string format_json(const std::vector<Diagnostic>& diags);

/// Path of the vectors file produced at build time.
std::string default_vectors_path();

}  // namespace bitml::cli
