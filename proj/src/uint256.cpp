#include "bitml/uint256.hpp"

namespace bitml {

std::optional<U256> u256_from_hex(std::string_view digits) {
    if (digits.empty() || digits.size() > 64) return std::nullopt;
    U256 v = 0;
    for (char c : digits) {
        unsigned d = 0;
        if (c >= '0' && c <= '9') d = static_cast<unsigned>(c - '0');
        else if (c >= 'a' && c <= 'f') d = static_cast<unsigned>(c - 'a' + 10);
        else if (c >= 'A' && c <= 'F') d = static_cast<unsigned>(c - 'A' + 10);
        else return std::nullopt;
        v = (v << 4) | d;
    }
    return v;
}

std::string u256_to_hex(const U256& v, std::size_t min_digits) {
    static constexpr char kDigits[] = "0123456789abcdef";
    std::string out;
    U256 x = v;
    while (x != 0) {
        out.insert(out.begin(), kDigits[static_cast<unsigned>(x & 0xf)]);
        x >>= 4;
    }
    if (out.size() < min_digits) out.insert(0, min_digits - out.size(), '0');
    return out;
}

U256 u256_from_be_bytes(std::span<const std::uint8_t, 32> bytes) {
    U256 v = 0;
    for (std::uint8_t b : bytes) v = (v << 8) | b;
    return v;
}

std::array<std::uint8_t, 32> u256_to_be_bytes(const U256& v) {
    std::array<std::uint8_t, 32> out{};
    U256 x = v;
    for (int i = 31; i >= 0; --i) {
        out[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(x & 0xff);
        x >>= 8;
    }
    return out;
}

}  // namespace bitml
