#include "bitml/crypto/verify.hpp"

#include <algorithm>

#include "bitml/crypto/hd.hpp"
#include "bitml/crypto/pow.hpp"
#include "bitml/crypto/secp256k1.hpp"

namespace bitml::crypto {

namespace {

enum class Got { Missing, Bad, Ok };

struct Field {
    Got state = Got::Missing;
    Bytes bytes;
};

class Verifier {
public:
    explicit Verifier(const Model& model) : m_(model) {}

    std::vector<Diagnostic> run() {
        for (const auto& e : m_.elements) {
            if (e.stereotype == "MnemonicCodeWord" && e.tag(tags::kMnemonicWords) != nullptr) {
                diag(Severity::Lint, rules::kMnemonicUnvalidated,
                     "mnemonic '" + e.id + "' is not checked against a wordlist or checksum", e.span);
            }
            if (e.stereotype == "BlockHeader") check_header(e);
        }
        for (const auto& c : m_.connectors) {
            const Element* src = m_.find(c.source);
            const Element* dst = m_.find(c.target);
            if (src == nullptr || dst == nullptr) continue;
            switch (c.kind) {
                case ConnectorKind::Pbkdf2: pbkdf2(c, *src, *dst); break;
                case ConnectorKind::Hmac512: hmac(c, *src, *dst); break;
                case ConnectorKind::Hash160: hash160_link(c, *src, *dst); break;
                default: break;
            }
        }
        sort_diagnostics(out_);
        out_.erase(std::unique(out_.begin(), out_.end()), out_.end());
        return std::move(out_);
    }

private:
    void diag(Severity sev, std::string_view rule, std::string msg, const SourceSpan& span) {
        out_.push_back(Diagnostic{sev, std::string(rule), std::move(msg), span});
    }

    void skipped(const Connector& c, const std::string& why) {
        diag(Severity::Lint, rules::kCryptoSkipped,
             std::string(connector_keyword(c.kind)) + " " + c.source + " -> " + c.target + " not verified: " + why,
             c.span);
    }

    // Reads a hex tag of exactly `length` bytes.
    Field hex(const Element& e, std::string_view tag, std::size_t length) {
        const TagValue* v = e.tag(tag);
        if (v == nullptr) return {};
        const auto* s = std::get_if<std::string>(v);
        std::optional<Bytes> bytes = s ? from_hex(*s) : std::nullopt;
        if (!bytes || bytes->size() != length) {
            diag(Severity::Error, rules::kBadKeyMaterial,
                 "tag '" + std::string(tag) + "' on '" + e.id + "' must be " + std::to_string(length * 2) +
                     " hex digits",
                 e.span);
            return {Got::Bad, {}};
        }
        return {Got::Ok, std::move(*bytes)};
    }

    // A Base58Check address with a one-byte version prefix, or the raw 20-byte payload in hex.
    Field address_payload(const Element& e) {
        const TagValue* v = e.tag(tags::kAddressBase58);
        if (v == nullptr) return {};
        const auto* s = std::get_if<std::string>(v);
        if (s != nullptr && s->size() == 40) {
            if (auto raw = from_hex(*s)) return {Got::Ok, std::move(*raw)};
        }
        std::optional<Bytes> decoded = s ? base58check_decode(*s) : std::nullopt;
        if (!decoded || decoded->size() != 21) {
            diag(Severity::Error, rules::kBadKeyMaterial,
                 "tag 'AddressBase58' on '" + e.id + "' is neither a Base58Check address nor 40 hex digits",
                 e.span);
            return {Got::Bad, {}};
        }
        return {Got::Ok, Bytes(decoded->begin() + 1, decoded->end())};
    }

    bool secret_key_ok(const Element& e, const Field& f) {
        if (f.state != Got::Ok) return false;
        PrivateKeyBytes k{};
        std::copy(f.bytes.begin(), f.bytes.end(), k.begin());
        if (valid_private_key(k)) return true;
        diag(Severity::Error, rules::kBadKeyMaterial, "private key on '" + e.id + "' is not in [1, n-1]", e.span);
        return false;
    }

    bool public_key_ok(const Element& e, const Field& f) {
        if (f.state != Got::Ok) return false;
        if (secp256k1::decompress(std::span<const std::uint8_t, 33>(f.bytes.data(), 33))) return true;
        diag(Severity::Error, rules::kBadKeyMaterial, "public key on '" + e.id + "' is not a valid curve point",
             e.span);
        return false;
    }

    void check_header(const Element& e) {
        const Field raw = hex(e, tags::kHeaderHex, 80);
        if (raw.state != Got::Ok) return;
        BlockHeaderBytes header;
        std::copy(raw.bytes.begin(), raw.bytes.end(), header.bytes.begin());
        try {
            if (!check_pow(header)) {
                diag(Severity::Error, rules::kHeaderProofOfWork,
                     "header '" + e.id + "' hash is not below the target encoded by its bits field", e.span);
            }
        } catch (const InvalidCompact& ex) {
            diag(Severity::Error, rules::kBadKeyMaterial,
                 "header '" + e.id + "' has an invalid compact target: " + ex.what(), e.span);
        }
    }

    void pbkdf2(const Connector& c, const Element& src, const Element& dst) {
        if (src.stereotype != "MnemonicCodeWord" || dst.stereotype != "Seed") return;
        const TagValue* words = src.tag(tags::kMnemonicWords);
        const Field seed = hex(dst, tags::kSeedHex, 64);
        if (seed.state == Got::Bad) return;
        if (words == nullptr || seed.state == Got::Missing) {
            skipped(c, words == nullptr ? "no MnemonicWords on '" + src.id + "'" : "no SeedHex on '" + dst.id + "'");
            return;
        }
        std::string passphrase;
        if (const TagValue* p = src.tag(tags::kPassphrase)) {
            if (const auto* s = std::get_if<std::string>(p)) passphrase = *s;
        }
        Digest64 expected{};
        try {
            const auto* phrase = std::get_if<std::string>(words);
            if (phrase == nullptr) throw InvalidMnemonic("MnemonicWords must be a string");
            expected = mnemonic_to_seed(split_mnemonic(*phrase), passphrase);
        } catch (const InvalidMnemonic& ex) {
            diag(Severity::Error, rules::kBadKeyMaterial, "mnemonic on '" + src.id + "': " + ex.what(), src.span);
            return;
        }
        if (!std::equal(expected.begin(), expected.end(), seed.bytes.begin())) {
            diag(Severity::Error, rules::kPbkdf2Mismatch,
                 "seed '" + dst.id + "' does not match PBKDF2 of mnemonic '" + src.id + "' (expected " +
                     to_hex(expected) + ")",
                 c.span);
        }
    }

    std::optional<std::uint32_t> child_index(const Connector& c, const Element& dst) {
        const TagValue* v = dst.tag("ChildIndex");
        const auto* n = v ? std::get_if<std::uint64_t>(v) : nullptr;
        if (n == nullptr) {
            skipped(c, "no integer ChildIndex tag on '" + dst.id + "'");
            return std::nullopt;
        }
        if (*n > 0xffffffffu) {
            diag(Severity::Error, rules::kBadKeyMaterial, "ChildIndex on '" + dst.id + "' exceeds 32 bits", dst.span);
            return std::nullopt;
        }
        return static_cast<std::uint32_t>(*n);
    }

    void compare_child(const Connector& c, const Element& dst, const Bytes& key, const ChainCode& chain,
                       const Field& dst_key, const Field& dst_chain) {
        const bool key_ok = std::equal(key.begin(), key.end(), dst_key.bytes.begin(), dst_key.bytes.end());
        const bool chain_ok = dst_chain.state != Got::Ok ||
                              std::equal(chain.begin(), chain.end(), dst_chain.bytes.begin(), dst_chain.bytes.end());
        if (!key_ok || !chain_ok) {
            diag(Severity::Error, rules::kHmacMismatch,
                 std::string(!key_ok ? "key" : "chain code") + " of '" + dst.id +
                     "' does not match HMAC-SHA512 derivation from '" + c.source + "' (expected " +
                     to_hex(!key_ok ? ByteView(key) : ByteView(chain)) + ")",
                 c.span);
        }
    }

    void hmac(const Connector& c, const Element& src, const Element& dst) {
        const bool priv_target = dst.stereotype == "PrivateKey";
        const std::size_t key_len = priv_target ? 32 : 33;
        if (src.stereotype == "Seed" && priv_target) {
            const Field seed = hex(src, tags::kSeedHex, 64);
            const Field key = hex(dst, tags::kKeyHex, 32);
            const Field chain = hex(dst, tags::kChainCodeHex, 32);
            if (seed.state == Got::Bad || key.state == Got::Bad || chain.state == Got::Bad) return;
            if (seed.state == Got::Missing || key.state == Got::Missing) {
                skipped(c, "SeedHex or KeyHex missing");
                return;
            }
            try {
                const ExtendedPrivateKey m = seed_to_master(seed.bytes);
                compare_child(c, dst, Bytes(m.key.begin(), m.key.end()), m.chain_code, key, chain);
            } catch (const DerivationFailure& ex) {
                diag(Severity::Error, rules::kBadKeyMaterial, "seed '" + src.id + "': " + ex.what(), src.span);
            }
            return;
        }
        const bool priv_source = src.stereotype == "PrivateKey";
        if (priv_source != priv_target || !(priv_source || src.stereotype == "PublicKey") ||
            !(priv_target || dst.stereotype == "PublicKey")) {
            return;  // endpoint rule already reported
        }
        const Field pkey = hex(src, tags::kKeyHex, key_len);
        const Field pchain = hex(src, tags::kChainCodeHex, 32);
        const Field ckey = hex(dst, tags::kKeyHex, key_len);
        const Field cchain = hex(dst, tags::kChainCodeHex, 32);
        for (const Field* f : {&pkey, &pchain, &ckey, &cchain}) {
            if (f->state == Got::Bad) return;
        }
        if (pkey.state == Got::Missing || pchain.state == Got::Missing || ckey.state == Got::Missing) {
            skipped(c, "KeyHex/ChainCodeHex missing on '" + c.source + "' or KeyHex missing on '" + c.target + "'");
            return;
        }
        if (priv_source ? !secret_key_ok(src, pkey) : !public_key_ok(src, pkey)) return;
        const auto index = child_index(c, dst);
        if (!index) return;
        try {
            if (priv_source) {
                ExtendedPrivateKey parent;
                std::copy(pkey.bytes.begin(), pkey.bytes.end(), parent.key.begin());
                std::copy(pchain.bytes.begin(), pchain.bytes.end(), parent.chain_code.begin());
                const ExtendedPrivateKey child = ckd_private(parent, *index);
                compare_child(c, dst, Bytes(child.key.begin(), child.key.end()), child.chain_code, ckey, cchain);
            } else {
                if (*index >= kHardenedIndex) {
                    diag(Severity::Error, rules::kHardenedPublicDerivation,
                         "public key '" + dst.id + "' cannot be a hardened child (index " + std::to_string(*index) +
                             ") of public key '" + src.id + "'",
                         c.span);
                    return;
                }
                ExtendedPublicKey parent;
                std::copy(pkey.bytes.begin(), pkey.bytes.end(), parent.key.begin());
                std::copy(pchain.bytes.begin(), pchain.bytes.end(), parent.chain_code.begin());
                const ExtendedPublicKey child = ckd_public(parent, *index);
                compare_child(c, dst, Bytes(child.key.begin(), child.key.end()), child.chain_code, ckey, cchain);
            }
        } catch (const DerivationFailure& ex) {
            diag(Severity::Error, rules::kBadKeyMaterial, "derivation from '" + src.id + "' failed: " + ex.what(),
                 c.span);
        }
    }

    void hash160_link(const Connector& c, const Element& src, const Element& dst) {
        if (src.stereotype != "PublicKey" || dst.stereotype != "PublicAddress") return;
        const Field key = hex(src, tags::kKeyHex, 33);
        const Field address = address_payload(dst);
        if (key.state == Got::Bad || address.state == Got::Bad) return;
        if (key.state == Got::Missing || address.state == Got::Missing) {
            skipped(c, key.state == Got::Missing ? "no KeyHex on '" + src.id + "'" : "no AddressBase58 on '" + dst.id + "'");
            return;
        }
        if (!public_key_ok(src, key)) return;
        const Digest20 expected = hash160(key.bytes);
        if (!std::equal(expected.begin(), expected.end(), address.bytes.begin())) {
            diag(Severity::Error, rules::kHash160Mismatch,
                 "address '" + dst.id + "' does not match RIPEMD160(SHA256) of '" + src.id + "' (expected " +
                     to_hex(expected) + ")",
                 c.span);
        }
    }

    const Model& m_;
    std::vector<Diagnostic> out_;
};

}  // namespace

std::vector<Diagnostic> verify_crypto_connectors(const Model& model) { return Verifier(model).run(); }

}  // namespace bitml::crypto
