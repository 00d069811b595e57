#include "bitml/crypto/secp256k1.hpp"

#include <boost/multiprecision/cpp_int.hpp>

namespace bitml::crypto::secp256k1 {

namespace {

using W = boost::multiprecision::uint512_t;

const W& prime() {
    static const W p = W(*u256_from_hex("fffffffffffffffffffffffffffffffffffffffffffffffffffffffefffffc2f"));
    return p;
}

W fmul(const W& a, const W& b) { return (a * b) % prime(); }
W fadd(const W& a, const W& b) {
    W r = a + b;
    if (r >= prime()) r -= prime();
    return r;
}
W fsub(const W& a, const W& b) { return a >= b ? W(a - b) : W(a + prime() - b); }
W finv(const W& a) { return boost::multiprecision::powm(a, prime() - 2, prime()); }

struct Jacobian {
    W x, y, z;  // z == 0 is infinity
};

Jacobian to_jacobian(const Point& p) {
    if (p.infinity) return {0, 1, 0};
    return {W(p.x), W(p.y), 1};
}

Point to_affine(const Jacobian& j) {
    if (j.z == 0) return Point{};
    const W zi = finv(j.z);
    const W zi2 = fmul(zi, zi);
    return Point{U256(fmul(j.x, zi2)), U256(fmul(j.y, fmul(zi2, zi))), false};
}

Jacobian dbl(const Jacobian& p) {
    if (p.z == 0 || p.y == 0) return {0, 1, 0};
    const W y2 = fmul(p.y, p.y);
    const W s = fmul(4, fmul(p.x, y2));
    const W m = fmul(3, fmul(p.x, p.x));
    const W x3 = fsub(fmul(m, m), fadd(s, s));
    const W y3 = fsub(fmul(m, fsub(s, x3)), fmul(8, fmul(y2, y2)));
    const W z3 = fmul(2, fmul(p.y, p.z));
    return {x3, y3, z3};
}

Jacobian jadd(const Jacobian& a, const Jacobian& b) {
    if (a.z == 0) return b;
    if (b.z == 0) return a;
    const W z1z1 = fmul(a.z, a.z);
    const W z2z2 = fmul(b.z, b.z);
    const W u1 = fmul(a.x, z2z2);
    const W u2 = fmul(b.x, z1z1);
    const W s1 = fmul(a.y, fmul(b.z, z2z2));
    const W s2 = fmul(b.y, fmul(a.z, z1z1));
    if (u1 == u2) {
        if (s1 != s2) return {0, 1, 0};
        return dbl(a);
    }
    const W h = fsub(u2, u1);
    const W r = fsub(s2, s1);
    const W h2 = fmul(h, h);
    const W h3 = fmul(h2, h);
    const W u1h2 = fmul(u1, h2);
    const W x3 = fsub(fsub(fmul(r, r), h3), fadd(u1h2, u1h2));
    const W y3 = fsub(fmul(r, fsub(u1h2, x3)), fmul(s1, h3));
    const W z3 = fmul(h, fmul(a.z, b.z));
    return {x3, y3, z3};
}

}  // namespace

const U256& field_prime() {
    static const U256 p = U256(prime());
    return p;
}

const U256& group_order() {
    static const U256 n = *u256_from_hex("fffffffffffffffffffffffffffffffebaaedce6af48a03bbfd25e8cd0364141");
    return n;
}

const Point& generator() {
    static const Point g{*u256_from_hex("79be667ef9dcbbac55a06295ce870b07029bfcdb2dce28d959f2815b16f81798"),
                         *u256_from_hex("483ada7726a3c4655da4fbfc0e1108a8fd17b448a68554199c47d08ffb10d4b8"),
                         false};
    return g;
}

bool on_curve(const Point& p) {
    if (p.infinity) return true;
    if (p.x >= field_prime() || p.y >= field_prime()) return false;
    const W x(p.x), y(p.y);
    return fmul(y, y) == fadd(fmul(x, fmul(x, x)), 7);
}

Point add(const Point& a, const Point& b) { return to_affine(jadd(to_jacobian(a), to_jacobian(b))); }

Point negate(const Point& p) {
    if (p.infinity || p.y == 0) return p;
    return Point{p.x, field_prime() - p.y, false};
}

Point mul(const Point& p, const U256& k) {
    const U256 scalar = k % group_order();
    Jacobian acc{0, 1, 0};
    const Jacobian base = to_jacobian(p);
    for (int bit = 255; bit >= 0; --bit) {
        acc = dbl(acc);
        if (boost::multiprecision::bit_test(scalar, static_cast<unsigned>(bit))) acc = jadd(acc, base);
    }
    return to_affine(acc);
}

Point mul_base(const U256& k) { return mul(generator(), k); }

std::array<std::uint8_t, 33> compress(const Point& p) {
    std::array<std::uint8_t, 33> out{};
    const auto x = u256_to_be_bytes(p.x);
    out[0] = boost::multiprecision::bit_test(p.y, 0) ? 0x03 : 0x02;
    std::copy(x.begin(), x.end(), out.begin() + 1);
    return out;
}

std::optional<Point> decompress(std::span<const std::uint8_t, 33> bytes) {
    if (bytes[0] != 0x02 && bytes[0] != 0x03) return std::nullopt;
    const U256 x = u256_from_be_bytes(bytes.subspan<1, 32>());
    if (x >= field_prime()) return std::nullopt;
    const W wx(x);
    const W rhs = fadd(fmul(wx, fmul(wx, wx)), 7);
    W y = boost::multiprecision::powm(rhs, (prime() + 1) / 4, prime());
    if (fmul(y, y) != rhs) return std::nullopt;
    const bool odd = boost::multiprecision::bit_test(y, 0);
    if (odd != (bytes[0] == 0x03)) y = fsub(0, y);
    return Point{x, U256(y), false};
}

}  // namespace bitml::crypto::secp256k1
