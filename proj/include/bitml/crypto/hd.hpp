#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "bitml/crypto/hash.hpp"

namespace bitml::crypto {

class InvalidMnemonic : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class DerivationFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline constexpr std::uint32_t kHardenedIndex = 0x80000000u;
inline constexpr std::uint32_t kMnemonicIterations = 2048;

using PrivateKeyBytes = std::array<std::uint8_t, 32>;
using ChainCode = std::array<std::uint8_t, 32>;
using PublicKeyBytes = std::array<std::uint8_t, 33>;

struct ExtendedPrivateKey {
    PrivateKeyBytes key{};
    ChainCode chain_code{};
    friend bool operator==(const ExtendedPrivateKey&, const ExtendedPrivateKey&) = default;
};

struct ExtendedPublicKey {
    PublicKeyBytes key{};
    ChainCode chain_code{};
    friend bool operator==(const ExtendedPublicKey&, const ExtendedPublicKey&) = default;
};

/// Splits on single spaces. Throws InvalidMnemonic unless the count is 12, 15, 18,
/// 21 or 24 and every word is lowercase ASCII. Dictionary membership is not checked.
std::vector<std::string> split_mnemonic(std::string_view phrase);

Digest64 mnemonic_to_seed(const std::vector<std::string>& words, std::string_view passphrase);

ExtendedPrivateKey seed_to_master(ByteView seed);
ExtendedPrivateKey ckd_private(const ExtendedPrivateKey& parent, std::uint32_t index);
/// Throws DerivationFailure for hardened indices.
ExtendedPublicKey ckd_public(const ExtendedPublicKey& parent, std::uint32_t index);

/// Throws DerivationFailure unless 1 <= key < n.
PublicKeyBytes pub_from_priv(const PrivateKeyBytes& key);
bool valid_private_key(const PrivateKeyBytes& key);

}  // namespace bitml::crypto
