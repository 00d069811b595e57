// Build-time generator for the `bitml vectors` suite. Every expected value comes
// from the OpenSSL oracle; published BIP values are cross-checked before writing.

#include <cstdio>
#include <fstream>
#include <iostream>

#include <json.hpp>

#include "openssl_oracle.hpp"

using nlohmann::json;
using oracle::Bytes;
using oracle::hex;
using oracle::unhex;

namespace {

int failures = 0;

void expect(const std::string& what, const std::string& got, const std::string& published) {
    if (got != published) {
        std::cerr << "gen_vectors: " << what << " oracle output " << got << " differs from published " << published
                  << "\n";
        ++failures;
    }
}

Bytes header(std::uint32_t bits, std::uint32_t nonce) {
    Bytes h(80, 0);
    auto put = [&](std::size_t at, std::uint32_t v) {
        for (int i = 0; i < 4; ++i) h[at + i] = static_cast<std::uint8_t>(v >> (8 * i));
    };
    put(0, 1);
    const Bytes merkle = oracle::sha256(oracle::bytes_of("bitml vectors"));
    std::copy(merkle.begin(), merkle.end(), h.begin() + 36);
    put(68, 1700000000u);
    put(72, bits);
    put(76, nonce);
    return h;
}

}  // namespace

int main(int argc, char** argv) {
    if (argc != 2) {
        std::cerr << "usage: gen_vectors <out.json>\n";
        return 2;
    }
    json vectors = json::array();

    for (const auto& [name, input] : {std::pair<std::string, std::string>{"sha256d-empty", ""},
                                      {"sha256d-abc", "abc"}}) {
        const Bytes in = oracle::bytes_of(input);
        vectors.push_back({{"name", name}, {"kind", "sha256d"}, {"input", hex(in)}, {"digest", hex(oracle::sha256d(in))}});
    }

    Bytes one(32, 0);
    one[31] = 1;
    const Bytes pub1 = oracle::pub_from_priv(one);
    expect("pubkey(1)", hex(pub1), "0279be667ef9dcbbac55a06295ce870b07029bfcdb2dce28d959f2815b16f81798");
    vectors.push_back({{"name", "hash160-privkey-1"},
                       {"kind", "hash160"},
                       {"private_key", hex(one)},
                       {"public_key", hex(pub1)},
                       {"hash160", hex(oracle::hash160(pub1))}});

    const std::string mnemonic =
        "abandon abandon abandon abandon abandon abandon abandon abandon abandon abandon abandon about";
    const Bytes seed39 = oracle::bip39_seed(mnemonic, "TREZOR");
    expect("bip39 #1 seed", hex(seed39),
           "c55257c360c07c72029aebc1b53c05ed0362ada38ead3e3e9efa3708e53495531f09a6987599d18264c1e1c92f2cf14163"
           "0c7a3c4ab7c81b2f001698e7463b04");
    vectors.push_back({{"name", "bip39-1"},
                       {"kind", "bip39"},
                       {"mnemonic", mnemonic},
                       {"passphrase", "TREZOR"},
                       {"seed", hex(seed39)}});

    const Bytes seed32 = unhex("000102030405060708090a0b0c0d0e0f");
    const oracle::ExtKey m = oracle::bip32_master(seed32);
    expect("bip32 m key", hex(m.key), "e8f32e723decf4051aefac8e2c93c9c5b214313817cdb01a1494b917c8436b35");
    expect("bip32 m chain", hex(m.chain), "873dff81c02f525623fd1fe5167eac3a55a049de3d314bb42ee227ffed37d508");
    vectors.push_back({{"name", "bip32-1-m"}, {"kind", "bip32-master"}, {"seed", hex(seed32)}, {"key", hex(m.key)},
                       {"chain", hex(m.chain)}});

    const oracle::ExtKey m0h = oracle::bip32_child(m, 0x80000000u);
    expect("bip32 m/0' key", hex(m0h.key), "edb2e14f9ee77d26dd93b4ecede8d16ed408ce149b6cd80b0715a2d911a0afea");
    expect("bip32 m/0' chain", hex(m0h.chain), "47fdacbd0f1097043b78c63c20c34ef4ed9a111d980047ad16282c7ae6236141");
    vectors.push_back({{"name", "bip32-1-m/0h"}, {"kind", "bip32-child"}, {"parent_key", hex(m.key)},
                       {"parent_chain", hex(m.chain)}, {"index", 0x80000000u}, {"key", hex(m0h.key)},
                       {"chain", hex(m0h.chain)}});

    const oracle::ExtKey m0h1 = oracle::bip32_child(m0h, 1);
    expect("bip32 m/0'/1 key", hex(m0h1.key), "3c6cb8d0f6a264c91ea8b5030fadaa8e538b020f0a387421a12de9319dc93368");
    expect("bip32 m/0'/1 chain", hex(m0h1.chain),
           "2a7857631386ba23dacac34180dd1983734e444fdbf774041578e9b6adb37c19");
    vectors.push_back({{"name", "bip32-1-m/0h/1"}, {"kind", "bip32-child"}, {"parent_key", hex(m0h.key)},
                       {"parent_chain", hex(m0h.chain)}, {"index", 1}, {"key", hex(m0h1.key)},
                       {"chain", hex(m0h1.chain)}});

    std::uint32_t nonce = 0;
    while (!oracle::header_meets_target(header(0x1f00ffff, nonce))) ++nonce;
    vectors.push_back({{"name", "pow-1f00ffff"}, {"kind", "pow"}, {"header", hex(header(0x1f00ffff, nonce))},
                       {"valid", true}});
    vectors.push_back({{"name", "pow-03000001"}, {"kind", "pow"}, {"header", hex(header(0x03000001, 0))},
                       {"valid", oracle::header_meets_target(header(0x03000001, 0))}});

    if (failures != 0) return 1;
    const json doc = {{"checksum", hex(oracle::sha256(oracle::bytes_of(vectors.dump())))}, {"vectors", vectors}};
    std::ofstream out(argv[1], std::ios::binary);
    out << doc.dump(2) << "\n";
    return out ? 0 : 1;
}
