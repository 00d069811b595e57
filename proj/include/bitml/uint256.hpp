#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>

namespace bitml {

// Checked: overflow and unsigned underflow throw std::overflow_error / std::range_error.
using U256 = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<
    256, 256, boost::multiprecision::unsigned_magnitude, boost::multiprecision::checked, void>>;

/// Parses up to 64 hex digits (no prefix). Returns nullopt on bad digits or overflow.
std::optional<U256> u256_from_hex(std::string_view digits);

/// Lowercase hex without prefix, zero-padded to `min_digits`.
std::string u256_to_hex(const U256& v, std::size_t min_digits = 1);

/// Interprets 32 bytes as a big-endian integer.
U256 u256_from_be_bytes(std::span<const std::uint8_t, 32> bytes);
std::array<std::uint8_t, 32> u256_to_be_bytes(const U256& v);

}  // namespace bitml
