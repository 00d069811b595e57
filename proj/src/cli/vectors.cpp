#include <fstream>
#include <sstream>

#include <json.hpp>

#include "bitml/cli.hpp"
#include "bitml/crypto/hash.hpp"
#include "bitml/crypto/hd.hpp"
#include "bitml/crypto/pow.hpp"
#include "cli_internal.hpp"

#ifndef BITML_VECTORS_PATH
#define BITML_VECTORS_PATH "vectors.json"
#endif

namespace bitml::cli {

using nlohmann::json;
using namespace bitml::crypto;

namespace {

struct Corrupt : std::runtime_error {
    using std::runtime_error::runtime_error;
};

Bytes hex_field(const json& v, const char* key) {
    auto b = from_hex(v.at(key).get<std::string>());
    if (!b) throw Corrupt(std::string("field '") + key + "' is not hex");
    return *b;
}

template <std::size_t N>
std::array<std::uint8_t, N> fixed(const Bytes& b, const char* what) {
    if (b.size() != N) throw Corrupt(std::string(what) + " has the wrong length");
    std::array<std::uint8_t, N> out{};
    std::copy(b.begin(), b.end(), out.begin());
    return out;
}

bool same(ByteView a, const Bytes& b) { return std::equal(a.begin(), a.end(), b.begin(), b.end()); }

bool run_one(const json& v) {
    const std::string kind = v.at("kind").get<std::string>();
    if (kind == "sha256d") return same(sha256d(hex_field(v, "input")), hex_field(v, "digest"));
    if (kind == "hash160") {
        const auto key = fixed<32>(hex_field(v, "private_key"), "private_key");
        const auto pub = pub_from_priv(key);
        return same(pub, hex_field(v, "public_key")) && same(hash160(pub), hex_field(v, "hash160"));
    }
    if (kind == "bip39") {
        const auto words = split_mnemonic(v.at("mnemonic").get<std::string>());
        return same(mnemonic_to_seed(words, v.at("passphrase").get<std::string>()), hex_field(v, "seed"));
    }
    if (kind == "bip32-master") {
        const auto m = seed_to_master(hex_field(v, "seed"));
        return same(m.key, hex_field(v, "key")) && same(m.chain_code, hex_field(v, "chain"));
    }
    if (kind == "bip32-child") {
        ExtendedPrivateKey parent{fixed<32>(hex_field(v, "parent_key"), "parent_key"),
                                  fixed<32>(hex_field(v, "parent_chain"), "parent_chain")};
        const auto child = ckd_private(parent, v.at("index").get<std::uint32_t>());
        return same(child.key, hex_field(v, "key")) && same(child.chain_code, hex_field(v, "chain"));
    }
    if (kind == "pow") {
        BlockHeaderBytes h;
        h.bytes = fixed<80>(hex_field(v, "header"), "header");
        return check_pow(h) == v.at("valid").get<bool>();
    }
    throw Corrupt("unknown vector kind '" + kind + "'");
}

}  // namespace

std::string default_vectors_path() { return BITML_VECTORS_PATH; }

int run_vectors(const std::string& path, bool list_only, Streams io) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        io.err << "bitml: cannot read vectors file '" << path << "'\n";
        return kInternal;
    }
    std::stringstream text;
    text << in.rdbuf();
    json doc;
    try {
        doc = json::parse(text.str());
        const json& vectors = doc.at("vectors");
        const std::string dump = vectors.dump();
        if (to_hex(sha256(as_bytes(dump))) != doc.at("checksum").get<std::string>()) {
            throw Corrupt("checksum mismatch");
        }
        if (!vectors.is_array() || vectors.empty()) throw Corrupt("no vectors");
    } catch (const std::exception& e) {
        io.err << "bitml: vectors file '" << path << "' is corrupt: " << e.what() << "\n";
        return kInternal;
    }

    int failed = 0;
    for (const auto& v : doc.at("vectors")) {
        const std::string name = v.value("name", std::string("<unnamed>"));
        if (list_only) {
            io.out << name << "\n";
            continue;
        }
        bool ok = false;
        try {
            ok = run_one(v);
        } catch (const Corrupt& e) {
            io.err << "bitml: vector '" << name << "' is corrupt: " << e.what() << "\n";
            return kInternal;
        } catch (const json::exception& e) {
            io.err << "bitml: vector '" << name << "' is corrupt: " << e.what() << "\n";
            return kInternal;
        } catch (const std::exception& e) {
            io.err << "bitml: vector '" << name << "' raised: " << e.what() << "\n";
        }
        io.out << (ok ? "PASS " : "FAIL ") << name << "\n";
        if (!ok) ++failed;
    }
    if (list_only) return kClean;
    io.out << (doc.at("vectors").size() - static_cast<std::size_t>(failed)) << "/" << doc.at("vectors").size()
           << " vectors passed\n";
    return failed == 0 ? kClean : kModelErrors;
}

}  // namespace bitml::cli
