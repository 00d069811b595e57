#pragma once

#include <array>
#include <optional>
#include <span>

#include "bitml/uint256.hpp"

namespace bitml::crypto::secp256k1 {

/// Affine point; `infinity` marks the group identity.
struct Point {
    U256 x;
    U256 y;
    bool infinity = true;
    friend bool operator==(const Point&, const Point&) = default;
};

const U256& field_prime();
const U256& group_order();
const Point& generator();

bool on_curve(const Point& p);
Point add(const Point& a, const Point& b);
Point negate(const Point& p);
Point mul(const Point& p, const U256& k);
Point mul_base(const U256& k);

std::array<std::uint8_t, 33> compress(const Point& p);
/// Rejects bad prefixes, x >= p, and x with no curve point.
std::optional<Point> decompress(std::span<const std::uint8_t, 33> bytes);

}  // namespace bitml::crypto::secp256k1
