#pragma once

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#ifndef BITML_FIXTURES_DIR
#error "BITML_FIXTURES_DIR must point at the fixtures tree"
#endif

namespace testsupport {

inline std::filesystem::path fixtures_dir() { return BITML_FIXTURES_DIR; }

inline std::string read_text(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + p.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline std::string read_fixture(const std::string& rel) { return read_text(fixtures_dir() / rel); }

// Golden files are only rewritten when BITML_BLESS=1 is set in the environment.
inline bool blessing() {
    const char* v = std::getenv("BITML_BLESS");
    return v != nullptr && std::string(v) == "1";
}

// Returns an empty string on match, otherwise a description of the mismatch.
inline std::string compare_golden(const std::string& rel, const std::string& actual) {
    const auto path = fixtures_dir() / rel;
    if (blessing()) {
        std::ofstream out(path, std::ios::binary);
        out << actual;
        return out ? "" : "cannot bless " + path.string();
    }
    if (!std::filesystem::exists(path)) return "missing golden " + rel + " (run with BITML_BLESS=1)";
    const std::string expected = read_text(path);
    if (expected == actual) return "";
    return "golden " + rel + " differs\n--- expected\n" + expected + "--- actual\n" + actual;
}

// Single textual edit; the search string must occur exactly once.
inline std::string apply_edit(const std::string& base, const std::string& find, const std::string& replace) {
    const auto at = base.find(find);
    if (at == std::string::npos || base.find(find, at + 1) != std::string::npos) {
        throw std::runtime_error("edit target must occur exactly once: " + find);
    }
    std::string out = base;
    out.replace(at, find.size(), replace);
    return out;
}

}  // namespace testsupport
