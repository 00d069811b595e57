#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>

#include "bitml/crypto/hash.hpp"
#include "bitml/uint256.hpp"

namespace bitml::crypto {

class InvalidCompact : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// An 80-byte block header. Fields are serialized little-endian.
struct BlockHeaderBytes {
    std::array<std::uint8_t, 80> bytes{};

    static BlockHeaderBytes make(std::uint32_t version, const Digest32& prev_hash, const Digest32& merkle_root,
                                 std::uint32_t timestamp, std::uint32_t bits, std::uint32_t nonce);

    [[nodiscard]] std::uint32_t version() const { return read32(0); }
    [[nodiscard]] std::uint32_t timestamp() const { return read32(68); }
    [[nodiscard]] std::uint32_t bits() const { return read32(72); }
    [[nodiscard]] std::uint32_t nonce() const { return read32(76); }
    void set_bits(std::uint32_t v) { write32(72, v); }
    void set_nonce(std::uint32_t v) { write32(76, v); }

private:
    [[nodiscard]] std::uint32_t read32(std::size_t at) const;
    void write32(std::size_t at, std::uint32_t v);
};

/// Decodes Bitcoin's compact target encoding. Throws InvalidCompact when the sign
/// bit is set on a non-zero mantissa or the value exceeds 256 bits.
U256 compact_to_target(std::uint32_t bits);

/// The digest read as a 256-bit integer with its bytes reversed.
U256 hash_to_integer(const Digest32& digest);

/// Strict comparison: the reversed digest must be below `target`.
bool hash_below_target(const Digest32& digest, const U256& target);

bool check_pow(const BlockHeaderBytes& header);

}  // namespace bitml::crypto
