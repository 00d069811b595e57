#pragma once

#include <string>

#include "bitml/cli.hpp"

namespace bitml::cli {

int run_vectors(const std::string& path, bool list_only, Streams io);

}  // namespace bitml::cli
