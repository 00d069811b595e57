#include "bitml/crypto/pow.hpp"

#include <algorithm>

namespace bitml::crypto {

BlockHeaderBytes BlockHeaderBytes::make(std::uint32_t version, const Digest32& prev_hash,
                                        const Digest32& merkle_root, std::uint32_t timestamp,
                                        std::uint32_t bits, std::uint32_t nonce) {
    BlockHeaderBytes h;
    h.write32(0, version);
    std::copy(prev_hash.begin(), prev_hash.end(), h.bytes.begin() + 4);
    std::copy(merkle_root.begin(), merkle_root.end(), h.bytes.begin() + 36);
    h.write32(68, timestamp);
    h.write32(72, bits);
    h.write32(76, nonce);
    return h;
}

std::uint32_t BlockHeaderBytes::read32(std::size_t at) const {
    return static_cast<std::uint32_t>(bytes[at]) | (static_cast<std::uint32_t>(bytes[at + 1]) << 8) |
           (static_cast<std::uint32_t>(bytes[at + 2]) << 16) | (static_cast<std::uint32_t>(bytes[at + 3]) << 24);
}

void BlockHeaderBytes::write32(std::size_t at, std::uint32_t v) {
    for (std::size_t i = 0; i < 4; ++i) bytes[at + i] = static_cast<std::uint8_t>(v >> (8 * i));
}

U256 compact_to_target(std::uint32_t bits) {
    const std::uint32_t exponent = bits >> 24;
    std::uint32_t mantissa = bits & 0x007fffff;
    const bool negative = (bits & 0x00800000) != 0;
    if (negative && mantissa != 0) throw InvalidCompact("compact target has the sign bit set");
    if (mantissa == 0) return U256(0);
    if (exponent <= 3) {
        mantissa >>= 8 * (3 - exponent);
        return U256(mantissa);
    }
    const bool overflow = exponent > 34 || (mantissa > 0xff && exponent > 33) || (mantissa > 0xffff && exponent > 32);
    if (overflow) throw InvalidCompact("compact target exceeds 256 bits");
    return U256(mantissa) << (8 * (exponent - 3));
}

U256 hash_to_integer(const Digest32& digest) {
    std::array<std::uint8_t, 32> reversed{};
    std::reverse_copy(digest.begin(), digest.end(), reversed.begin());
    return u256_from_be_bytes(reversed);
}

bool hash_below_target(const Digest32& digest, const U256& target) { return hash_to_integer(digest) < target; }

bool check_pow(const BlockHeaderBytes& header) {
    const U256 target = compact_to_target(header.bits());
    return hash_below_target(sha256d(header.bytes), target);
}

}  // namespace bitml::crypto
