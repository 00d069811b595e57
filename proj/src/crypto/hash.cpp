#include "bitml/crypto/hash.hpp"

#include <algorithm>
#include <bit>
#include <cstring>

namespace bitml::crypto {

namespace {

constexpr std::uint32_t kSha256K[64] = {
    0x428a2f98, 0x71374491, 0xb5c0fbcf, 0xe9b5dba5, 0x3956c25b, 0x59f111f1, 0x923f82a4, 0xab1c5ed5,
    0xd807aa98, 0x12835b01, 0x243185be, 0x550c7dc3, 0x72be5d74, 0x80deb1fe, 0x9bdc06a7, 0xc19bf174,
    0xe49b69c1, 0xefbe4786, 0x0fc19dc6, 0x240ca1cc, 0x2de92c6f, 0x4a7484aa, 0x5cb0a9dc, 0x76f988da,
    0x983e5152, 0xa831c66d, 0xb00327c8, 0xbf597fc7, 0xc6e00bf3, 0xd5a79147, 0x06ca6351, 0x14292967,
    0x27b70a85, 0x2e1b2138, 0x4d2c6dfc, 0x53380d13, 0x650a7354, 0x766a0abb, 0x81c2c92e, 0x92722c85,
    0xa2bfe8a1, 0xa81a664b, 0xc24b8b70, 0xc76c51a3, 0xd192e819, 0xd6990624, 0xf40e3585, 0x106aa070,
    0x19a4c116, 0x1e376c08, 0x2748774c, 0x34b0bcb5, 0x391c0cb3, 0x4ed8aa4a, 0x5b9cca4f, 0x682e6ff3,
    0x748f82ee, 0x78a5636f, 0x84c87814, 0x8cc70208, 0x90befffa, 0xa4506ceb, 0xbef9a3f7, 0xc67178f2};

constexpr std::uint64_t kSha512K[80] = {
    0x428a2f98d728ae22, 0x7137449123ef65cd, 0xb5c0fbcfec4d3b2f, 0xe9b5dba58189dbbc, 0x3956c25bf348b538,
    0x59f111f1b605d019, 0x923f82a4af194f9b, 0xab1c5ed5da6d8118, 0xd807aa98a3030242, 0x12835b0145706fbe,
    0x243185be4ee4b28c, 0x550c7dc3d5ffb4e2, 0x72be5d74f27b896f, 0x80deb1fe3b1696b1, 0x9bdc06a725c71235,
    0xc19bf174cf692694, 0xe49b69c19ef14ad2, 0xefbe4786384f25e3, 0x0fc19dc68b8cd5b5, 0x240ca1cc77ac9c65,
    0x2de92c6f592b0275, 0x4a7484aa6ea6e483, 0x5cb0a9dcbd41fbd4, 0x76f988da831153b5, 0x983e5152ee66dfab,
    0xa831c66d2db43210, 0xb00327c898fb213f, 0xbf597fc7beef0ee4, 0xc6e00bf33da88fc2, 0xd5a79147930aa725,
    0x06ca6351e003826f, 0x142929670a0e6e70, 0x27b70a8546d22ffc, 0x2e1b21385c26c926, 0x4d2c6dfc5ac42aed,
    0x53380d139d95b3df, 0x650a73548baf63de, 0x766a0abb3c77b2a8, 0x81c2c92e47edaee6, 0x92722c851482353b,
    0xa2bfe8a14cf10364, 0xa81a664bbc423001, 0xc24b8b70d0f89791, 0xc76c51a30654be30, 0xd192e819d6ef5218,
    0xd69906245565a910, 0xf40e35855771202a, 0x106aa07032bbd1b8, 0x19a4c116b8d2d0c8, 0x1e376c085141ab53,
    0x2748774cdf8eeb99, 0x34b0bcb5e19b48a8, 0x391c0cb3c5c95a63, 0x4ed8aa4ae3418acb, 0x5b9cca4f7763e373,
    0x682e6ff3d6b2b8a3, 0x748f82ee5defb2fc, 0x78a5636f43172f60, 0x84c87814a1f0ab72, 0x8cc702081a6439ec,
    0x90befffa23631e28, 0xa4506cebde82bde9, 0xbef9a3f7b2c67915, 0xc67178f2e372532b, 0xca273eceea26619c,
    0xd186b8c721c0c207, 0xeada7dd6cde0eb1e, 0xf57d4f7fee6ed178, 0x06f067aa72176fba, 0x0a637dc5a2c898a6,
    0x113f9804bef90dae, 0x1b710b35131c471b, 0x28db77f523047d84, 0x32caab7b40c72493, 0x3c9ebe0a15c9bebc,
    0x431d67c49c100d4c, 0x4cc5d4becb3e42b6, 0x597f299cfc657e2a, 0x5fcb6fab3ad6faec, 0x6c44198c4a475817};

// Merkle-Damgard padding with a big- or little-endian bit length of `len_bytes` bytes.
Bytes pad(ByteView data, std::size_t block, std::size_t len_bytes, bool big_endian) {
    Bytes msg(data.begin(), data.end());
    msg.push_back(0x80);
    while ((msg.size() + len_bytes) % block != 0) msg.push_back(0);
    const std::uint64_t bits = static_cast<std::uint64_t>(data.size()) * 8;
    Bytes len(len_bytes, 0);
    for (std::size_t i = 0; i < 8; ++i) {
        const auto b = static_cast<std::uint8_t>(bits >> (8 * i));
        if (big_endian) len[len_bytes - 1 - i] = b;
        else len[i] = b;
    }
    msg.insert(msg.end(), len.begin(), len.end());
    return msg;
}

template <typename T>
T load_be(const std::uint8_t* p) {
    T v = 0;
    for (std::size_t i = 0; i < sizeof(T); ++i) v = static_cast<T>((v << 8) | p[i]);
    return v;
}

template <typename T>
void store_be(std::uint8_t* p, T v) {
    for (std::size_t i = 0; i < sizeof(T); ++i) p[i] = static_cast<std::uint8_t>(v >> (8 * (sizeof(T) - 1 - i)));
}

// Generic SHA-2 compression over 64 or 80 rounds.
template <typename W, std::size_t Rounds, int S0a, int S0b, int S0c, int S1a, int S1b, int S1c, int s0a,
          int s0b, int s0c, int s1a, int s1b, int s1c>
void sha2_blocks(const Bytes& msg, std::array<W, 8>& h, const W* k) {
    constexpr std::size_t kBlock = sizeof(W) * 16;
    std::array<W, Rounds> w{};
    for (std::size_t off = 0; off < msg.size(); off += kBlock) {
        for (std::size_t t = 0; t < 16; ++t) w[t] = load_be<W>(&msg[off + t * sizeof(W)]);
        for (std::size_t t = 16; t < Rounds; ++t) {
            const W a = w[t - 15];
            const W b = w[t - 2];
            const W s0 = std::rotr(a, s0a) ^ std::rotr(a, s0b) ^ (a >> s0c);
            const W s1 = std::rotr(b, s1a) ^ std::rotr(b, s1b) ^ (b >> s1c);
            w[t] = w[t - 16] + s0 + w[t - 7] + s1;
        }
        auto [a, b, c, d, e, f, g, hh] = h;
        for (std::size_t t = 0; t < Rounds; ++t) {
            const W S1 = std::rotr(e, S1a) ^ std::rotr(e, S1b) ^ std::rotr(e, S1c);
            const W ch = (e & f) ^ (~e & g);
            const W t1 = hh + S1 + ch + k[t] + w[t];
            const W S0 = std::rotr(a, S0a) ^ std::rotr(a, S0b) ^ std::rotr(a, S0c);
            const W maj = (a & b) ^ (a & c) ^ (b & c);
            const W t2 = S0 + maj;
            hh = g;
            g = f;
            f = e;
            e = d + t1;
            d = c;
            c = b;
            b = a;
            a = t1 + t2;
        }
        h[0] += a;
        h[1] += b;
        h[2] += c;
        h[3] += d;
        h[4] += e;
        h[5] += f;
        h[6] += g;
        h[7] += hh;
    }
}

// RIPEMD-160 tables.
constexpr int kRl[80] = {0, 1, 2,  3,  4,  5,  6,  7,  8,  9, 10, 11, 12, 13, 14, 15, 7,  4,  13, 1,
                         10, 6, 15, 3,  12, 0,  9,  5,  2,  14, 11, 8,  3,  10, 14, 4,  9,  15, 8,  1,
                         2,  7, 0,  6,  13, 11, 5,  12, 1,  9,  11, 10, 0,  8,  12, 4,  13, 3,  7,  15,
                         14, 5, 6,  2,  4,  0,  5,  9,  7,  12, 2,  10, 14, 1,  3,  8,  11, 6,  15, 13};
constexpr int kRr[80] = {5,  14, 7,  0,  9, 2,  11, 4,  13, 6,  15, 8,  1,  10, 3,  12, 6,  11, 3,  7,
                         0,  13, 5,  10, 14, 15, 8,  12, 4,  9,  1,  2,  15, 5,  1,  3,  7,  14, 6,  9,
                         11, 8,  12, 2,  10, 0,  4,  13, 8,  6,  4,  1,  3,  11, 15, 0,  5,  12, 2,  13,
                         9,  7,  10, 14, 12, 15, 10, 4,  1,  5,  8,  7,  6,  2,  13, 14, 0,  3,  9,  11};
constexpr int kSl[80] = {11, 14, 15, 12, 5,  8,  7,  9,  11, 13, 14, 15, 6,  7,  9,  8,  7,  6,  8,  13,
                         11, 9,  7,  15, 7,  12, 15, 9,  11, 7,  13, 12, 11, 13, 6,  7,  14, 9,  13, 15,
                         14, 8,  13, 6,  5,  12, 7,  5,  11, 12, 14, 15, 14, 15, 9,  8,  9,  14, 5,  6,
                         8,  6,  5,  12, 9,  15, 5,  11, 6,  8,  13, 12, 5,  12, 13, 14, 11, 8,  5,  6};
constexpr int kSr[80] = {8,  9,  9,  11, 13, 15, 15, 5,  7,  7,  8,  11, 14, 14, 12, 6,  9,  13, 15, 7,
                         12, 8,  9,  11, 7,  7,  12, 7,  6,  15, 13, 11, 9,  7,  15, 11, 8,  6,  6,  14,
                         12, 13, 5,  14, 13, 13, 7,  5,  15, 5,  8,  11, 14, 14, 6,  14, 6,  9,  12, 9,
                         12, 5,  15, 8,  8,  5,  12, 9,  12, 5,  14, 6,  8,  13, 6,  5,  15, 13, 11, 11};
constexpr std::uint32_t kKl[5] = {0x00000000, 0x5a827999, 0x6ed9eba1, 0x8f1bbcdc, 0xa953fd4e};
constexpr std::uint32_t kKr[5] = {0x50a28be6, 0x5c4dd124, 0x6d703ef3, 0x7a6d76e9, 0x00000000};

std::uint32_t rmd_f(int j, std::uint32_t x, std::uint32_t y, std::uint32_t z) {
    switch (j / 16) {
        case 0: return x ^ y ^ z;
        case 1: return (x & y) | (~x & z);
        case 2: return (x | ~y) ^ z;
        case 3: return (x & z) | (y & ~z);
        default: return x ^ (y | ~z);
    }
}

}  // namespace

Digest32 sha256(ByteView data) {
    std::array<std::uint32_t, 8> h = {0x6a09e667, 0xbb67ae85, 0x3c6ef372, 0xa54ff53a,
                                      0x510e527f, 0x9b05688c, 0x1f83d9ab, 0x5be0cd19};
    sha2_blocks<std::uint32_t, 64, 2, 13, 22, 6, 11, 25, 7, 18, 3, 17, 19, 10>(pad(data, 64, 8, true), h,
                                                                              kSha256K);
    Digest32 out{};
    for (std::size_t i = 0; i < 8; ++i) store_be(&out[i * 4], h[i]);
    return out;
}

Digest32 sha256d(ByteView data) {
    const Digest32 first = sha256(data);
    return sha256(first);
}

Digest64 sha512(ByteView data) {
    std::array<std::uint64_t, 8> h = {0x6a09e667f3bcc908, 0xbb67ae8584caa73b, 0x3c6ef372fe94f82b,
                                      0xa54ff53a5f1d36f1, 0x510e527fade682d1, 0x9b05688c2b3e6c1f,
                                      0x1f83d9abfb41bd6b, 0x5be0cd19137e2179};
    sha2_blocks<std::uint64_t, 80, 28, 34, 39, 14, 18, 41, 1, 8, 7, 19, 61, 6>(pad(data, 128, 16, true), h,
                                                                             kSha512K);
    Digest64 out{};
    for (std::size_t i = 0; i < 8; ++i) store_be(&out[i * 8], h[i]);
    return out;
}

Digest20 ripemd160(ByteView data) {
    std::array<std::uint32_t, 5> h = {0x67452301, 0xefcdab89, 0x98badcfe, 0x10325476, 0xc3d2e1f0};
    const Bytes msg = pad(data, 64, 8, false);
    for (std::size_t off = 0; off < msg.size(); off += 64) {
        std::uint32_t x[16];
        for (int i = 0; i < 16; ++i) {
            const std::uint8_t* p = &msg[off + static_cast<std::size_t>(i) * 4];
            x[i] = p[0] | (p[1] << 8) | (p[2] << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
        }
        std::uint32_t al = h[0], bl = h[1], cl = h[2], dl = h[3], el = h[4];
        std::uint32_t ar = h[0], br = h[1], cr = h[2], dr = h[3], er = h[4];
        for (int j = 0; j < 80; ++j) {
            std::uint32_t t = std::rotl(al + rmd_f(j, bl, cl, dl) + x[kRl[j]] + kKl[j / 16], kSl[j]) + el;
            al = el;
            el = dl;
            dl = std::rotl(cl, 10);
            cl = bl;
            bl = t;
            t = std::rotl(ar + rmd_f(79 - j, br, cr, dr) + x[kRr[j]] + kKr[j / 16], kSr[j]) + er;
            ar = er;
            er = dr;
            dr = std::rotl(cr, 10);
            cr = br;
            br = t;
        }
        const std::uint32_t t = h[1] + cl + dr;
        h[1] = h[2] + dl + er;
        h[2] = h[3] + el + ar;
        h[3] = h[4] + al + br;
        h[4] = h[0] + bl + cr;
        h[0] = t;
    }
    Digest20 out{};
    for (std::size_t i = 0; i < 5; ++i) {
        for (std::size_t b = 0; b < 4; ++b) out[i * 4 + b] = static_cast<std::uint8_t>(h[i] >> (8 * b));
    }
    return out;
}

Digest20 hash160(ByteView data) {
    const Digest32 inner = sha256(data);
    return ripemd160(inner);
}

Digest64 hmac_sha512(ByteView key, ByteView data) {
    constexpr std::size_t kBlock = 128;
    std::array<std::uint8_t, kBlock> k{};
    if (key.size() > kBlock) {
        const Digest64 hk = sha512(key);
        std::copy(hk.begin(), hk.end(), k.begin());
    } else {
        std::copy(key.begin(), key.end(), k.begin());
    }
    Bytes inner(kBlock), outer(kBlock);
    for (std::size_t i = 0; i < kBlock; ++i) {
        inner[i] = k[i] ^ 0x36;
        outer[i] = k[i] ^ 0x5c;
    }
    inner.insert(inner.end(), data.begin(), data.end());
    const Digest64 ih = sha512(inner);
    outer.insert(outer.end(), ih.begin(), ih.end());
    return sha512(outer);
}

Bytes pbkdf2_hmac_sha512(ByteView password, ByteView salt, std::uint32_t iterations, std::size_t length) {
    Bytes out;
    out.reserve(length);
    for (std::uint32_t block = 1; out.size() < length; ++block) {
        Bytes s(salt.begin(), salt.end());
        for (int i = 3; i >= 0; --i) s.push_back(static_cast<std::uint8_t>(block >> (8 * i)));
        Digest64 u = hmac_sha512(password, s);
        Digest64 t = u;
        for (std::uint32_t it = 1; it < iterations; ++it) {
            u = hmac_sha512(password, u);
            for (std::size_t i = 0; i < t.size(); ++i) t[i] ^= u[i];
        }
        const std::size_t take = std::min(t.size(), length - out.size());
        out.insert(out.end(), t.begin(), t.begin() + static_cast<std::ptrdiff_t>(take));
    }
    return out;
}

std::string to_hex(ByteView bytes) {
    static constexpr char kDigits[] = "0123456789abcdef";
    std::string out;
    out.reserve(bytes.size() * 2);
    for (std::uint8_t b : bytes) {
        out.push_back(kDigits[b >> 4]);
        out.push_back(kDigits[b & 0xf]);
    }
    return out;
}

std::optional<Bytes> from_hex(std::string_view hex) {
    if (hex.size() % 2 != 0) return std::nullopt;
    auto nibble = [](char c) -> int {
        if (c >= '0' && c <= '9') return c - '0';
        if (c >= 'a' && c <= 'f') return c - 'a' + 10;
        if (c >= 'A' && c <= 'F') return c - 'A' + 10;
        return -1;
    };
    Bytes out;
    out.reserve(hex.size() / 2);
    for (std::size_t i = 0; i < hex.size(); i += 2) {
        const int hi = nibble(hex[i]);
        const int lo = nibble(hex[i + 1]);
        if (hi < 0 || lo < 0) return std::nullopt;
        out.push_back(static_cast<std::uint8_t>(hi * 16 + lo));
    }
    return out;
}

namespace {
constexpr char kBase58[] = "123456789ABCDEFGHJKLMNPQRSTUVWXYZabcdefghijkmnopqrstuvwxyz";
}

std::string base58_encode(ByteView bytes) {
    std::size_t zeros = 0;
    while (zeros < bytes.size() && bytes[zeros] == 0) ++zeros;
    // Base-256 to base-58, most significant digit last.
    std::vector<std::uint8_t> digits;
    for (std::size_t i = zeros; i < bytes.size(); ++i) {
        unsigned carry = bytes[i];
        for (auto& d : digits) {
            carry += static_cast<unsigned>(d) << 8;
            d = static_cast<std::uint8_t>(carry % 58);
            carry /= 58;
        }
        while (carry) {
            digits.push_back(static_cast<std::uint8_t>(carry % 58));
            carry /= 58;
        }
    }
    std::string out(zeros, '1');
    for (auto it = digits.rbegin(); it != digits.rend(); ++it) out += kBase58[*it];
    return out;
}

std::optional<Bytes> base58_decode(std::string_view text) {
    std::size_t ones = 0;
    while (ones < text.size() && text[ones] == '1') ++ones;
    std::vector<std::uint8_t> bytes;  // little-endian
    for (std::size_t i = ones; i < text.size(); ++i) {
        const char* p = std::strchr(kBase58, text[i]);
        if (text[i] == '\0' || p == nullptr) return std::nullopt;
        unsigned carry = static_cast<unsigned>(p - kBase58);
        for (auto& b : bytes) {
            carry += static_cast<unsigned>(b) * 58;
            b = static_cast<std::uint8_t>(carry & 0xff);
            carry >>= 8;
        }
        while (carry) {
            bytes.push_back(static_cast<std::uint8_t>(carry & 0xff));
            carry >>= 8;
        }
    }
    Bytes out(ones, 0);
    out.insert(out.end(), bytes.rbegin(), bytes.rend());
    return out;
}

std::string base58check_encode(ByteView payload) {
    Bytes full(payload.begin(), payload.end());
    const Digest32 check = sha256d(payload);
    full.insert(full.end(), check.begin(), check.begin() + 4);
    return base58_encode(full);
}

std::optional<Bytes> base58check_decode(std::string_view text) {
    auto full = base58_decode(text);
    if (!full || full->size() < 4) return std::nullopt;
    const std::size_t n = full->size() - 4;
    const Digest32 check = sha256d(ByteView(full->data(), n));
    if (!std::equal(check.begin(), check.begin() + 4, full->begin() + static_cast<std::ptrdiff_t>(n))) {
        return std::nullopt;
    }
    full->resize(n);
    return full;
}

}  // namespace bitml::crypto
