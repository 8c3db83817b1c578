#pragma once

#include <array>
#include <cstdint>
#include <cstring>
#include <span>
#include <string>
#include <stdexcept>

namespace fas::detail {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

// 256-bit unsigned integer, little-endian limb order.
struct U256 {
    std::array<u64, 4> w{0, 0, 0, 0};

    constexpr U256() = default;
    constexpr U256(u64 w0, u64 w1, u64 w2, u64 w3) : w{w0, w1, w2, w3} {}

    static constexpr U256 from_u64(u64 v) { return U256{v, 0, 0, 0}; }

    constexpr bool is_zero() const { return (w[0] | w[1] | w[2] | w[3]) == 0; }
    constexpr bool bit(unsigned i) const { return (w[i >> 6] >> (i & 63)) & 1u; }

    friend constexpr bool operator==(const U256&, const U256&) = default;
};

// 512-bit intermediate for products and reduction.
struct U512 {
    std::array<u64, 8> w{0, 0, 0, 0, 0, 0, 0, 0};

    constexpr bool high_is_zero() const { return (w[4] | w[5] | w[6] | w[7]) == 0; }
    constexpr U256 low() const { return U256{w[0], w[1], w[2], w[3]}; }
    constexpr U256 high() const { return U256{w[4], w[5], w[6], w[7]}; }
};

inline int cmp(const U256& a, const U256& b) {
    for (int i = 3; i >= 0; --i) {
        if (a.w[i] < b.w[i]) return -1;
        if (a.w[i] > b.w[i]) return 1;
    }
    return 0;
}

inline bool operator<(const U256& a, const U256& b) { return cmp(a, b) < 0; }

// out = a + b, returns carry bit.
inline u64 add_carry(U256& out, const U256& a, const U256& b) {
    u128 acc = 0;
    for (int i = 0; i < 4; ++i) {
        acc += (u128)a.w[i] + b.w[i];
        out.w[i] = (u64)acc;
        acc >>= 64;
    }
    return (u64)acc;
}

// out = a - b, returns borrow bit.
inline u64 sub_borrow(U256& out, const U256& a, const U256& b) {
    u128 borrow = 0;
    for (int i = 0; i < 4; ++i) {
        u128 d = (u128)a.w[i] - b.w[i] - borrow;
        out.w[i] = (u64)d;
        borrow = (d >> 64) & 1;
    }
    return (u64)borrow;
}

inline U512 mul_wide(const U256& a, const U256& b) {
    U512 r;
    for (int i = 0; i < 4; ++i) {
        u128 carry = 0;
        for (int j = 0; j < 4; ++j) {
            u128 cur = (u128)a.w[i] * b.w[j] + r.w[i + j] + carry;
            r.w[i + j] = (u64)cur;
            carry = cur >> 64;
        }
        r.w[i + 4] = (u64)carry;
    }
    return r;
}

// Reduces x modulo m given fold = 2^256 mod m. Folds the high half down
// (x = hi*2^256 + lo == hi*fold + lo mod m) until it fits in 256 bits,
// then subtracts m as needed. Terminates fast because fold is small for
// both secp256k1 moduli.
inline U256 reduce_512(U512 x, const U256& m, const U256& fold) {
    while (!x.high_is_zero()) {
        const U256 hi = x.high();
        const U256 lo = x.low();
        U512 next;
        // next = hi * fold
        for (int i = 0; i < 4; ++i) {
            u128 carry = 0;
            for (int j = 0; j < 4; ++j) {
                u128 cur = (u128)hi.w[i] * fold.w[j] + next.w[i + j] + carry;
                next.w[i + j] = (u64)cur;
                carry = cur >> 64;
            }
            if (i + 4 < 8) next.w[i + 4] += (u64)carry;
        }
        // next += lo
        u128 acc = 0;
        for (int i = 0; i < 8; ++i) {
            acc += (u128)next.w[i] + (i < 4 ? lo.w[i] : 0);
            next.w[i] = (u64)acc;
            acc >>= 64;
        }
        x = next;
    }
    U256 r = x.low();
    while (cmp(r, m) >= 0) {
        U256 t;
        sub_borrow(t, r, m);
        r = t;
    }
    return r;
}

inline U256 add_mod(const U256& a, const U256& b, const U256& m) {
    U256 s;
    u64 carry = add_carry(s, a, b);
    if (carry || cmp(s, m) >= 0) {
        U256 t;
        sub_borrow(t, s, m);
        return t;
    }
    return s;
}

inline U256 sub_mod(const U256& a, const U256& b, const U256& m) {
    U256 d;
    if (sub_borrow(d, a, b)) {
        U256 t;
        add_carry(t, d, m);
        return t;
    }
    return d;
}

inline U256 mul_mod(const U256& a, const U256& b, const U256& m, const U256& fold) {
    return reduce_512(mul_wide(a, b), m, fold);
}

inline U256 pow_mod(const U256& base, const U256& exp, const U256& m, const U256& fold) {
    U256 acc = U256::from_u64(1);
    for (int i = 255; i >= 0; --i) {
        acc = mul_mod(acc, acc, m, fold);
        if (exp.bit(i)) acc = mul_mod(acc, base, m, fold);
    }
    return acc;
}

inline void to_bytes_be(const U256& v, std::span<std::uint8_t, 32> out) {
    for (int i = 0; i < 4; ++i) {
        const u64 limb = v.w[3 - i];
        for (int j = 0; j < 8; ++j) out[i * 8 + j] = (std::uint8_t)(limb >> (56 - 8 * j));
    }
}

inline U256 from_bytes_be(std::span<const std::uint8_t, 32> in) {
    U256 v;
    for (int i = 0; i < 4; ++i) {
        u64 limb = 0;
        for (int j = 0; j < 8; ++j) limb = (limb << 8) | in[i * 8 + j];
        v.w[3 - i] = limb;
    }
    return v;
}

inline U256 from_hex(const std::string& hex) {
    if (hex.size() != 64) throw std::invalid_argument("u256 hex must be 64 chars");
    std::array<std::uint8_t, 32> buf{};
    for (int i = 0; i < 32; ++i) buf[i] = (std::uint8_t)std::stoul(hex.substr(2 * i, 2), nullptr, 16);
    return from_bytes_be(buf);
}

inline std::string to_hex(const U256& v) {
    static const char* digits = "0123456789abcdef";
    std::array<std::uint8_t, 32> buf{};
    to_bytes_be(v, buf);
    std::string s(64, '0');
    for (int i = 0; i < 32; ++i) {
        s[2 * i] = digits[buf[i] >> 4];
        s[2 * i + 1] = digits[buf[i] & 0xf];
    }
    return s;
}

}  // namespace fas::detail
