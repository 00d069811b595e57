#include <gtest/gtest.h>

#include "bitml/crypto/hash.hpp"
#include "bitml/crypto/pow.hpp"
#include "openssl_oracle.hpp"
#include "support/generators.hpp"

using namespace bitml;
using namespace bitml::crypto;

namespace {

oracle::Bytes vec(const std::array<std::uint8_t, 80>& a) { return {a.begin(), a.end()}; }

BlockHeaderBytes sample_header(std::uint32_t bits, std::uint32_t nonce) {
    const Digest32 prev = sha256(as_bytes("prev"));
    const Digest32 root = sha256(as_bytes("root"));
    return BlockHeaderBytes::make(2, prev, root, 1700000000u, bits, nonce);
}

}  // namespace

TEST(Pow, GenesisHeader) {
    const auto raw = *from_hex(
        "0100000000000000000000000000000000000000000000000000000000000000000000003ba3edfd7a7b12b27ac72c3e67768f"
        "617fc81bc3888a51323a9fb8aa4b1e5e4a29ab5f49ffff001d1dac2b7c");
    BlockHeaderBytes h;
    std::copy(raw.begin(), raw.end(), h.bytes.begin());
    EXPECT_EQ(h.version(), 1u);
    EXPECT_EQ(h.bits(), 0x1d00ffffu);
    EXPECT_EQ(h.nonce(), 2083236893u);
    EXPECT_EQ(u256_to_hex(hash_to_integer(sha256d(h.bytes)), 64),
              "000000000019d6689c085ae165831e934ff763ae46a2a6c172b3f1b60a8ce26f");
    EXPECT_EQ(u256_to_hex(compact_to_target(0x1d00ffff), 64),
              "00000000ffff0000000000000000000000000000000000000000000000000000");
    EXPECT_TRUE(check_pow(h));
    h.set_nonce(h.nonce() + 1);
    EXPECT_FALSE(check_pow(h));
}

TEST(Pow, HeaderLayoutIsLittleEndian) {
    auto h = sample_header(0x1f00ffff, 0x01020304);
    EXPECT_EQ(h.bytes[76], 0x04);
    EXPECT_EQ(h.bytes[79], 0x01);
    EXPECT_EQ(h.bits(), 0x1f00ffffu);
    EXPECT_EQ(h.timestamp(), 1700000000u);
    h.set_bits(0x207fffff);
    EXPECT_EQ(h.bytes[75], 0x20);
}

TEST(Pow, CompactEncodingEdgeCases) {
    EXPECT_EQ(compact_to_target(0x01003456), U256(0));
    EXPECT_EQ(compact_to_target(0x01123456), U256(0x12));
    EXPECT_EQ(compact_to_target(0x02123456), U256(0x1234));
    EXPECT_EQ(compact_to_target(0x03123456), U256(0x123456));
    EXPECT_EQ(compact_to_target(0x04123456), U256(0x12345600));
    EXPECT_EQ(compact_to_target(0x00800000), U256(0));
    EXPECT_THROW(compact_to_target(0x04923456), InvalidCompact);
    EXPECT_THROW(compact_to_target(0x21010000), InvalidCompact);
    EXPECT_THROW(compact_to_target(0xff123456), InvalidCompact);
    EXPECT_NO_THROW(compact_to_target(0x2100ffff));
}

TEST(PowDifferential, CompactTargetsMatchOracle) {
    testsupport::Rng rng(2001);
    int compared = 0;
    for (int i = 0; i < 2000; ++i) {
        const std::uint32_t exponent = static_cast<std::uint32_t>(testsupport::pick(rng, 35));
        const std::uint32_t mantissa = static_cast<std::uint32_t>(rng()) & 0x007fffffu;
        const std::uint32_t bits = (exponent << 24) | mantissa;
        oracle::Bytes expected;
        try {
            expected = oracle::compact_target(bits);
        } catch (const std::runtime_error&) {
            EXPECT_THROW(compact_to_target(bits), InvalidCompact) << std::hex << bits;
            continue;
        }
        const auto got = u256_to_be_bytes(compact_to_target(bits));
        ASSERT_EQ(oracle::Bytes(got.begin(), got.end()), expected) << std::hex << bits;
        ++compared;
    }
    EXPECT_GT(compared, 1500);
}

TEST(PowDifferential, HeaderChecksMatchOracle) {
    testsupport::Rng rng(2002);
    for (int i = 0; i < 300; ++i) {
        const std::uint32_t bits = 0x1f000000u | 0x00ffffu;
        const std::uint32_t easy = 0x20000000u | (static_cast<std::uint32_t>(rng()) & 0x007fffffu);
        auto h = sample_header(testsupport::coin(rng) ? bits : easy, static_cast<std::uint32_t>(rng()));
        ASSERT_EQ(check_pow(h), oracle::header_meets_target(vec(h.bytes))) << i;
    }
}

TEST(Pow, HashEqualToTargetIsRejected) {
    const Digest32 d = sha256d(as_bytes("any header"));
    const U256 value = hash_to_integer(d);
    EXPECT_FALSE(hash_below_target(d, value));
    EXPECT_TRUE(hash_below_target(d, value + 1));
    EXPECT_FALSE(hash_below_target(d, value - 1));
}

TEST(PowProperty, ValidityIsMonotoneInTheTarget) {
    testsupport::Rng rng(2003);
    for (int i = 0; i < 500; ++i) {
        Digest32 d{};
        for (auto& x : d) x = static_cast<std::uint8_t>(rng());
        std::array<std::uint8_t, 32> t{};
        for (auto& x : t) x = static_cast<std::uint8_t>(rng());
        const U256 target = u256_from_be_bytes(t);
        const U256 bigger = target + (U256(std::numeric_limits<U256>::max()) - target) / 2;
        if (hash_below_target(d, target)) EXPECT_TRUE(hash_below_target(d, bigger));
        if (!hash_below_target(d, bigger)) EXPECT_FALSE(hash_below_target(d, target));
    }
}

TEST(Pow, BruteForceAtEightZeroBits) {
    auto h = sample_header(0x2000ffff, 0);
    while (!check_pow(h)) h.set_nonce(h.nonce() + 1);
    EXPECT_TRUE(oracle::header_meets_target(vec(h.bytes)));
    EXPECT_EQ(hash_to_integer(sha256d(h.bytes)) >> 248, U256(0));
}
