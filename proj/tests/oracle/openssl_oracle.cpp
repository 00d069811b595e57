#define OPENSSL_SUPPRESS_DEPRECATED
#include "openssl_oracle.hpp"

#include <openssl/bn.h>
#include <openssl/ec.h>
#include <openssl/evp.h>
#include <openssl/hmac.h>
#include <openssl/obj_mac.h>
#include <openssl/ripemd.h>
#include <openssl/sha.h>

#include <algorithm>
#include <memory>
#include <stdexcept>

namespace oracle {

namespace {

void check(int ok, const char* what) {
    if (ok != 1) throw std::runtime_error(std::string("openssl: ") + what);
}

struct BnDeleter {
    void operator()(BIGNUM* b) const { BN_free(b); }
};
using Bn = std::unique_ptr<BIGNUM, BnDeleter>;

struct Curve {
    EC_GROUP* group = EC_GROUP_new_by_curve_name(NID_secp256k1);
    BN_CTX* ctx = BN_CTX_new();
    ~Curve() {
        EC_GROUP_free(group);
        BN_CTX_free(ctx);
    }
};

Curve& curve() {
    thread_local Curve c;
    return c;
}

Bn bn(const Bytes& b) { return Bn(BN_bin2bn(b.data(), static_cast<int>(b.size()), nullptr)); }

Bytes bn_bytes32(const BIGNUM* v) {
    Bytes out(32);
    check(BN_bn2binpad(v, out.data(), 32) == 32 ? 1 : 0, "BN_bn2binpad");
    return out;
}

Bytes encode(const EC_POINT* p) {
    Bytes out(33);
    const std::size_t n = EC_POINT_point2oct(curve().group, p, POINT_CONVERSION_COMPRESSED, out.data(), out.size(),
                                             curve().ctx);
    check(n == 33 ? 1 : 0, "EC_POINT_point2oct");
    return out;
}

Bytes cat(Bytes a, const Bytes& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

}  // namespace

Bytes sha256(const Bytes& data) {
    Bytes out(32);
    SHA256(data.data(), data.size(), out.data());
    return out;
}

Bytes sha256d(const Bytes& data) { return sha256(sha256(data)); }

Bytes sha512(const Bytes& data) {
    Bytes out(64);
    unsigned int len = 0;
    check(EVP_Digest(data.data(), data.size(), out.data(), &len, EVP_sha512(), nullptr), "EVP_Digest");
    return out;
}

Bytes ripemd160(const Bytes& data) {
    Bytes out(20);
    RIPEMD160(data.data(), data.size(), out.data());
    return out;
}

Bytes hash160(const Bytes& data) { return ripemd160(sha256(data)); }

Bytes hmac_sha512(const Bytes& key, const Bytes& data) {
    Bytes out(64);
    unsigned int len = 0;
    const auto* r = HMAC(EVP_sha512(), key.data(), static_cast<int>(key.size()), data.data(), data.size(),
                         out.data(), &len);
    if (r == nullptr || len != 64) throw std::runtime_error("openssl: HMAC");
    return out;
}

Bytes pbkdf2_sha512(const Bytes& password, const Bytes& salt, int iterations, std::size_t length) {
    Bytes out(length);
    check(PKCS5_PBKDF2_HMAC(reinterpret_cast<const char*>(password.data()), static_cast<int>(password.size()),
                            salt.data(), static_cast<int>(salt.size()), iterations, EVP_sha512(),
                            static_cast<int>(length), out.data()),
          "PKCS5_PBKDF2_HMAC");
    return out;
}

Bytes pub_from_priv(const Bytes& key32) {
    EC_POINT* p = EC_POINT_new(curve().group);
    const Bn k = bn(key32);
    check(EC_POINT_mul(curve().group, p, k.get(), nullptr, nullptr, curve().ctx), "EC_POINT_mul");
    Bytes out = encode(p);
    EC_POINT_free(p);
    return out;
}

Bytes point_add(const Bytes& a33, const Bytes& b33) {
    EC_POINT* a = EC_POINT_new(curve().group);
    EC_POINT* b = EC_POINT_new(curve().group);
    EC_POINT* r = EC_POINT_new(curve().group);
    check(EC_POINT_oct2point(curve().group, a, a33.data(), a33.size(), curve().ctx), "oct2point a");
    check(EC_POINT_oct2point(curve().group, b, b33.data(), b33.size(), curve().ctx), "oct2point b");
    check(EC_POINT_add(curve().group, r, a, b, curve().ctx), "EC_POINT_add");
    Bytes out = encode(r);
    EC_POINT_free(a);
    EC_POINT_free(b);
    EC_POINT_free(r);
    return out;
}

ExtKey bip32_master(const Bytes& seed) {
    const Bytes i = hmac_sha512(bytes_of("Bitcoin seed"), seed);
    return {Bytes(i.begin(), i.begin() + 32), Bytes(i.begin() + 32, i.end())};
}

ExtKey bip32_child(const ExtKey& parent, std::uint32_t index) {
    Bytes data = index >= 0x80000000u ? cat(Bytes{0x00}, parent.key) : pub_from_priv(parent.key);
    for (int s = 24; s >= 0; s -= 8) data.push_back(static_cast<std::uint8_t>(index >> s));
    const Bytes i = hmac_sha512(parent.chain, data);
    const Bn il = bn(Bytes(i.begin(), i.begin() + 32));
    const Bn k = bn(parent.key);
    Bn order(BN_new());
    check(EC_GROUP_get_order(curve().group, order.get(), curve().ctx), "get_order");
    Bn child(BN_new());
    check(BN_mod_add(child.get(), il.get(), k.get(), order.get(), curve().ctx), "BN_mod_add");
    return {bn_bytes32(child.get()), Bytes(i.begin() + 32, i.end())};
}

Bytes bip39_seed(const std::string& mnemonic, const std::string& passphrase) {
    return pbkdf2_sha512(bytes_of(mnemonic), bytes_of("mnemonic" + passphrase), 2048, 64);
}

Bytes compact_target(std::uint32_t bits) {
    const int exponent = static_cast<int>(bits >> 24);
    Bn v(BN_new());
    check(BN_set_word(v.get(), bits & 0x007fffff), "BN_set_word");
    if (exponent >= 3) {
        check(BN_lshift(v.get(), v.get(), 8 * (exponent - 3)), "BN_lshift");
    } else {
        check(BN_rshift(v.get(), v.get(), 8 * (3 - exponent)), "BN_rshift");
    }
    if (BN_num_bytes(v.get()) > 32) throw std::runtime_error("target exceeds 256 bits");
    return bn_bytes32(v.get());
}

bool header_meets_target(const Bytes& header80) {
    const std::uint32_t bits = header80[72] | (header80[73] << 8) | (header80[74] << 16) |
                               (static_cast<std::uint32_t>(header80[75]) << 24);
    Bytes digest = sha256d(header80);
    std::reverse(digest.begin(), digest.end());
    const Bn h = bn(digest);
    const Bn t = bn(compact_target(bits));
    return BN_cmp(h.get(), t.get()) < 0;
}

std::string hex(const Bytes& b) {
    static const char* d = "0123456789abcdef";
    std::string s;
    for (auto c : b) {
        s += d[c >> 4];
        s += d[c & 15];
    }
    return s;
}

Bytes unhex(std::string_view s) {
    Bytes out;
    for (std::size_t i = 0; i + 1 < s.size(); i += 2) {
        out.push_back(static_cast<std::uint8_t>(std::stoi(std::string(s.substr(i, 2)), nullptr, 16)));
    }
    return out;
}

Bytes bytes_of(std::string_view s) { return Bytes(s.begin(), s.end()); }

}  // namespace oracle
