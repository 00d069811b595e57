#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace bitml::crypto {

using Bytes = std::vector<std::uint8_t>;
using ByteView = std::span<const std::uint8_t>;
using Digest32 = std::array<std::uint8_t, 32>;
using Digest64 = std::array<std::uint8_t, 64>;
using Digest20 = std::array<std::uint8_t, 20>;

Digest32 sha256(ByteView data);
Digest32 sha256d(ByteView data);
Digest64 sha512(ByteView data);
Digest20 ripemd160(ByteView data);
/// RIPEMD-160(SHA-256(data)).
Digest20 hash160(ByteView data);

Digest64 hmac_sha512(ByteView key, ByteView data);

/// PBKDF2 with HMAC-SHA512 as the PRF.
Bytes pbkdf2_hmac_sha512(ByteView password, ByteView salt, std::uint32_t iterations, std::size_t length);

std::string to_hex(ByteView bytes);
/// Lowercase or uppercase digits, even length, no prefix.
std::optional<Bytes> from_hex(std::string_view hex);

std::string base58_encode(ByteView bytes);
std::optional<Bytes> base58_decode(std::string_view text);
/// Appends the first four bytes of sha256d(payload) before encoding.
std::string base58check_encode(ByteView payload);
/// nullopt on bad characters or a checksum mismatch.
std::optional<Bytes> base58check_decode(std::string_view text);

inline ByteView as_bytes(std::string_view s) {
    return {reinterpret_cast<const std::uint8_t*>(s.data()), s.size()};
}

}  // namespace bitml::crypto
