#include "bitml/crypto/hd.hpp"

#include <algorithm>

#include "bitml/crypto/secp256k1.hpp"

namespace bitml::crypto {

namespace {

U256 scalar(std::span<const std::uint8_t> bytes32) {
    return u256_from_be_bytes(std::span<const std::uint8_t, 32>(bytes32.data(), 32));
}

void append_index(Bytes& data, std::uint32_t index) {
    for (int i = 3; i >= 0; --i) data.push_back(static_cast<std::uint8_t>(index >> (8 * i)));
}

ChainCode right_half(const Digest64& i) {
    ChainCode c{};
    std::copy(i.begin() + 32, i.end(), c.begin());
    return c;
}

}  // namespace

std::vector<std::string> split_mnemonic(std::string_view phrase) {
    std::vector<std::string> words;
    std::size_t start = 0;
    while (start <= phrase.size()) {
        const std::size_t end = std::min(phrase.find(' ', start), phrase.size());
        words.emplace_back(phrase.substr(start, end - start));
        start = end + 1;
    }
    for (const auto& w : words) {
        if (w.empty() || !std::all_of(w.begin(), w.end(), [](char c) { return c >= 'a' && c <= 'z'; })) {
            throw InvalidMnemonic("mnemonic words must be lowercase ASCII separated by single spaces");
        }
    }
    const std::size_t n = words.size();
    if (n < 12 || n > 24 || n % 3 != 0) {
        throw InvalidMnemonic("mnemonic has " + std::to_string(n) + " words; expected 12, 15, 18, 21 or 24");
    }
    return words;
}

Digest64 mnemonic_to_seed(const std::vector<std::string>& words, std::string_view passphrase) {
    std::string joined;
    for (const auto& w : words) {
        if (!joined.empty()) joined += ' ';
        joined += w;
    }
    // Re-validate through the splitter so both entry points share one rule.
    (void)split_mnemonic(joined);
    if (std::any_of(passphrase.begin(), passphrase.end(), [](char c) { return static_cast<unsigned char>(c) > 0x7f; })) {
        throw InvalidMnemonic("non-ASCII passphrases need Unicode normalization, which is not supported");
    }
    const std::string salt = "mnemonic" + std::string(passphrase);
    const Bytes seed = pbkdf2_hmac_sha512(as_bytes(joined), as_bytes(salt), kMnemonicIterations, 64);
    Digest64 out{};
    std::copy(seed.begin(), seed.end(), out.begin());
    return out;
}

bool valid_private_key(const PrivateKeyBytes& key) {
    const U256 k = scalar(key);
    return k != 0 && k < secp256k1::group_order();
}

PublicKeyBytes pub_from_priv(const PrivateKeyBytes& key) {
    if (!valid_private_key(key)) throw DerivationFailure("private key is not in [1, n-1]");
    return secp256k1::compress(secp256k1::mul_base(scalar(key)));
}

ExtendedPrivateKey seed_to_master(ByteView seed) {
    if (seed.size() < 16 || seed.size() > 64) {
        throw DerivationFailure("seed must be 16 to 64 bytes, got " + std::to_string(seed.size()));
    }
    const Digest64 i = hmac_sha512(as_bytes("Bitcoin seed"), seed);
    ExtendedPrivateKey out;
    std::copy(i.begin(), i.begin() + 32, out.key.begin());
    out.chain_code = right_half(i);
    if (!valid_private_key(out.key)) throw DerivationFailure("master key is not a valid scalar");
    return out;
}

ExtendedPrivateKey ckd_private(const ExtendedPrivateKey& parent, std::uint32_t index) {
    if (!valid_private_key(parent.key)) throw DerivationFailure("parent key is not a valid scalar");
    Bytes data;
    if (index >= kHardenedIndex) {
        data.push_back(0x00);
        data.insert(data.end(), parent.key.begin(), parent.key.end());
    } else {
        const PublicKeyBytes pub = pub_from_priv(parent.key);
        data.assign(pub.begin(), pub.end());
    }
    append_index(data, index);
    const Digest64 i = hmac_sha512(parent.chain_code, data);
    const U256 il = scalar(std::span(i).first<32>());
    const U256& n = secp256k1::group_order();
    if (il >= n) throw DerivationFailure("derived tweak is not below the group order");
    // il, k < n < 2^256 but their sum may not fit; subtract first.
    const U256 k = scalar(parent.key);
    const U256 child = il >= n - k ? U256(il - (n - k)) : U256(il + k);
    if (child == 0) throw DerivationFailure("derived child key is zero");
    ExtendedPrivateKey out;
    out.key = u256_to_be_bytes(child);
    out.chain_code = right_half(i);
    return out;
}

ExtendedPublicKey ckd_public(const ExtendedPublicKey& parent, std::uint32_t index) {
    if (index >= kHardenedIndex) throw DerivationFailure("hardened child keys cannot be derived from a public key");
    const auto point = secp256k1::decompress(parent.key);
    if (!point) throw DerivationFailure("parent public key is not a curve point");
    Bytes data(parent.key.begin(), parent.key.end());
    append_index(data, index);
    const Digest64 i = hmac_sha512(parent.chain_code, data);
    const U256 il = scalar(std::span(i).first<32>());
    if (il >= secp256k1::group_order()) throw DerivationFailure("derived tweak is not below the group order");
    const secp256k1::Point child = secp256k1::add(secp256k1::mul_base(il), *point);
    if (child.infinity) throw DerivationFailure("derived child key is the point at infinity");
    return ExtendedPublicKey{secp256k1::compress(child), right_half(i)};
}

}  // namespace bitml::crypto
