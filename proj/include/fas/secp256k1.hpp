#pragma once

#include <array>
#include <cstdint>
#include <mutex>
#include <optional>
#include <span>
#include <vector>

#include "fas/detail/u256.hpp"
#include "fas/errors.hpp"

namespace fas {

namespace detail::secp {

using detail::U256;
using detail::U512;

// Curve constants: y^2 = x^3 + 7 over F_p, group order n (both prime).
inline constexpr U256 P{0xFFFFFFFEFFFFFC2Full, 0xFFFFFFFFFFFFFFFFull,
                        0xFFFFFFFFFFFFFFFFull, 0xFFFFFFFFFFFFFFFFull};
inline constexpr U256 N{0xBFD25E8CD0364141ull, 0xBAAEDCE6AF48A03Bull,
                        0xFFFFFFFFFFFFFFFEull, 0xFFFFFFFFFFFFFFFFull};
// 2^256 mod P and 2^256 mod N, used by the reduction fold.
inline constexpr U256 FOLD_P{0x00000001000003D1ull, 0, 0, 0};
inline constexpr U256 FOLD_N{0x402DA1732FC9BEBFull, 0x4551231950B75FC4ull, 1, 0};
inline constexpr U256 GX{0x59F2815B16F81798ull, 0x029BFCDB2DCE28D9ull,
                         0x55A06295CE870B07ull, 0x79BE667EF9DCBBACull};
inline constexpr U256 GY{0x9C47D08FFB10D4B8ull, 0xFD17B448A6855419ull,
                         0x5DA4FBFC0E1108A8ull, 0x483ADA7726A3C465ull};

template <int FOLD_LIMBS>
inline U256 reduce(U512 x, const U256& m, const U256& fold) {
    using detail::u128;
    using detail::u64;
    while (!x.high_is_zero()) {
        const U256 hi = x.high();
        const U256 lo = x.low();
        U512 next;
        for (int i = 0; i < 4; ++i) {
            if (hi.w[i] == 0) continue;
            u128 carry = 0;
            for (int j = 0; j < FOLD_LIMBS; ++j) {
                u128 cur = (u128)hi.w[i] * fold.w[j] + next.w[i + j] + carry;
                next.w[i + j] = (u64)cur;
                carry = cur >> 64;
            }
            for (int j = i + FOLD_LIMBS; carry != 0 && j < 8; ++j) {
                u128 cur = (u128)next.w[j] + carry;
                next.w[j] = (u64)cur;
                carry = cur >> 64;
            }
        }
        u128 acc = 0;
        for (int i = 0; i < 8; ++i) {
            acc += (u128)next.w[i] + (i < 4 ? lo.w[i] : 0);
            next.w[i] = (u64)acc;
            acc >>= 64;
        }
        x = next;
    }
    U256 r = x.low();
    while (detail::cmp(r, m) >= 0) {
        U256 t;
        detail::sub_borrow(t, r, m);
        r = t;
    }
    return r;
}

inline U256 fadd(const U256& a, const U256& b) { return detail::add_mod(a, b, P); }
inline U256 fsub(const U256& a, const U256& b) { return detail::sub_mod(a, b, P); }
inline U256 fmul(const U256& a, const U256& b) { return reduce<1>(detail::mul_wide(a, b), P, FOLD_P); }
inline U256 fsqr(const U256& a) { return fmul(a, a); }

inline U256 fpow(const U256& base, const U256& exp) {
    U256 acc = U256::from_u64(1);
    bool started = false;
    for (int i = 255; i >= 0; --i) {
        if (started) acc = fsqr(acc);
        if (exp.bit(i)) {
            acc = started ? fmul(acc, base) : base;
            started = true;
        }
    }
    return started ? acc : U256::from_u64(1);
}

inline U256 finv(const U256& a) {
    U256 e = P;
    U256 two = U256::from_u64(2);
    detail::sub_borrow(e, e, two);
    return fpow(a, e);
}

// sqrt for p = 3 mod 4: a^((p+1)/4). Caller must verify the square.
inline U256 fsqrt(const U256& a) {
    U256 e = P;
    detail::add_carry(e, e, U256::from_u64(1));
    // shift right by 2 (p+1 has no carry out of 256 bits here: p+1 < 2^256)
    for (int s = 0; s < 2; ++s) {
        for (int i = 0; i < 3; ++i) e.w[i] = (e.w[i] >> 1) | (e.w[i + 1] << 63);
        e.w[3] >>= 1;
    }
    return fpow(a, e);
}

}  // namespace detail::secp

/// secp256k1 backend: the prime-order group used by the whole library.
/// Elements are Jacobian (X, Y, Z) with Z == 0 encoding the identity;
/// canonical wire form is 33-byte compressed SEC1 with 33 zero bytes for
/// the identity. Scalars live mod the group order n.
class Secp256k1 {
    using U256 = detail::U256;

public:
    static constexpr std::size_t kElementBytes = 33;
    static constexpr std::size_t kScalarBytes = 32;
    static constexpr const char* kName = "secp256k1";

    class Scalar {
    public:
        Scalar() = default;

        static Scalar from_u64(std::uint64_t v) { return Scalar(U256::from_u64(v)); }

        static Scalar from_bytes(std::span<const std::uint8_t, 32> in) {
            const U256 v = detail::from_bytes_be(in);
            if (detail::cmp(v, detail::secp::N) >= 0) throw DecodeError("scalar not canonical (>= group order)");
            return Scalar(v);
        }

        static std::optional<Scalar> try_from_bytes(std::span<const std::uint8_t, 32> in) {
            const U256 v = detail::from_bytes_be(in);
            if (detail::cmp(v, detail::secp::N) >= 0) return std::nullopt;
            return Scalar(v);
        }

        // Reduces an arbitrary 32-byte string mod n (hash outputs).
        static Scalar from_bytes_reduced(std::span<const std::uint8_t, 32> in) {
            detail::U512 wide;
            const U256 v = detail::from_bytes_be(in);
            for (int i = 0; i < 4; ++i) wide.w[i] = v.w[i];
            return Scalar(detail::secp::reduce<3>(wide, detail::secp::N, detail::secp::FOLD_N));
        }

        void to_bytes(std::span<std::uint8_t, 32> out) const { detail::to_bytes_be(v_, out); }

        std::array<std::uint8_t, 32> bytes() const {
            std::array<std::uint8_t, 32> out{};
            to_bytes(out);
            return out;
        }

        bool is_zero() const { return v_.is_zero(); }

        // Value as u64 if it fits, used for bounded results.
        std::optional<std::uint64_t> as_u64() const {
            if (v_.w[1] | v_.w[2] | v_.w[3]) return std::nullopt;
            return v_.w[0];
        }

        Scalar operator+(const Scalar& o) const { return Scalar(detail::add_mod(v_, o.v_, detail::secp::N)); }
        Scalar operator-(const Scalar& o) const { return Scalar(detail::sub_mod(v_, o.v_, detail::secp::N)); }
        Scalar operator*(const Scalar& o) const {
            return Scalar(detail::secp::reduce<3>(detail::mul_wide(v_, o.v_), detail::secp::N, detail::secp::FOLD_N));
        }
        Scalar operator-() const { return Scalar(detail::sub_mod(U256{}, v_, detail::secp::N)); }

        Scalar inverse() const {
            if (is_zero()) throw Error("scalar inverse of zero");
            U256 e = detail::secp::N;
            detail::sub_borrow(e, e, U256::from_u64(2));
            U256 acc = U256::from_u64(1);
            for (int i = 255; i >= 0; --i) {
                acc = detail::secp::reduce<3>(detail::mul_wide(acc, acc), detail::secp::N, detail::secp::FOLD_N);
                if (e.bit(i))
                    acc = detail::secp::reduce<3>(detail::mul_wide(acc, v_), detail::secp::N, detail::secp::FOLD_N);
            }
            return Scalar(acc);
        }

        friend bool operator==(const Scalar&, const Scalar&) = default;

        const U256& raw() const { return v_; }
        static Scalar from_raw_reduced(const U256& v) {
            detail::U512 wide;
            for (int i = 0; i < 4; ++i) wide.w[i] = v.w[i];
            return Scalar(detail::secp::reduce<3>(wide, detail::secp::N, detail::secp::FOLD_N));
        }

    private:
        explicit Scalar(const U256& v) : v_(v) {}
        U256 v_;
        friend class Secp256k1;
    };

    class Element {
    public:
        Element() = default;  // identity

        static Element identity() { return Element(); }

        static Element generator() {
            Element e;
            e.x_ = detail::secp::GX;
            e.y_ = detail::secp::GY;
            e.z_ = U256::from_u64(1);
            return e;
        }

        bool is_identity() const { return z_.is_zero(); }

        Element operator+(const Element& o) const { return add(*this, o); }
        Element operator-() const {
            Element r = *this;
            if (!r.is_identity()) r.y_ = detail::secp::fsub(U256{}, r.y_);
            return r;
        }
        Element operator-(const Element& o) const { return add(*this, -o); }

        bool operator==(const Element& o) const {
            if (is_identity() || o.is_identity()) return is_identity() && o.is_identity();
            // cross-multiplied comparison: X1 Z2^2 == X2 Z1^2, Y1 Z2^3 == Y2 Z1^3
            using namespace detail::secp;
            const U256 z1s = fsqr(z_), z2s = fsqr(o.z_);
            if (!(fmul(x_, z2s) == fmul(o.x_, z1s))) return false;
            return fmul(y_, fmul(z2s, o.z_)) == fmul(o.y_, fmul(z1s, z_));
        }

        std::array<std::uint8_t, 33> encode() const {
            std::array<std::uint8_t, 33> out{};
            if (is_identity()) return out;
            Element a = normalized();
            out[0] = (a.y_.w[0] & 1) ? 0x03 : 0x02;
            detail::to_bytes_be(a.x_, std::span<std::uint8_t, 32>(out.data() + 1, 32));
            return out;
        }

        static Element decode(std::span<const std::uint8_t, 33> in) {
            using namespace detail::secp;
            bool all_zero = true;
            for (auto b : in)
                if (b) { all_zero = false; break; }
            if (all_zero) return identity();
            if (in[0] != 0x02 && in[0] != 0x03) throw DecodeError("bad point prefix");
            const U256 x = detail::from_bytes_be(std::span<const std::uint8_t, 32>(in.data() + 1, 32));
            if (detail::cmp(x, P) >= 0) throw DecodeError("point x not canonical");
            const U256 rhs = fadd(fmul(fsqr(x), x), U256::from_u64(7));
            U256 y = fsqrt(rhs);
            if (!(fsqr(y) == rhs)) throw DecodeError("point not on curve");
            const bool want_odd = in[0] == 0x03;
            if (((y.w[0] & 1) != 0) != want_odd) y = fsub(U256{}, y);
            Element e;
            e.x_ = x;
            e.y_ = y;
            e.z_ = U256::from_u64(1);
            return e;
        }

        // z == 1 (or identity); cheap to mix-add and to encode.
        Element normalized() const {
            using namespace detail::secp;
            if (is_identity()) return identity();
            if (z_ == U256::from_u64(1)) return *this;
            const U256 zi = finv(z_);
            const U256 zi2 = fsqr(zi);
            Element r;
            r.x_ = fmul(x_, zi2);
            r.y_ = fmul(y_, fmul(zi2, zi));
            r.z_ = U256::from_u64(1);
            return r;
        }

    private:
        U256 x_{}, y_{}, z_{};  // z == 0 means identity
        friend class Secp256k1;
    };

    // ---- group operations ----

    static Element add(const Element& p, const Element& q) {
        using namespace detail::secp;
        if (p.is_identity()) return q;
        if (q.is_identity()) return p;
        const U256 z1s = fsqr(p.z_), z2s = fsqr(q.z_);
        const U256 u1 = fmul(p.x_, z2s), u2 = fmul(q.x_, z1s);
        const U256 s1 = fmul(p.y_, fmul(z2s, q.z_)), s2 = fmul(q.y_, fmul(z1s, p.z_));
        if (u1 == u2) {
            if (!(s1 == s2)) return Element::identity();
            return dbl(p);
        }
        const U256 h = fsub(u2, u1);
        const U256 i = fsqr(fadd(h, h));
        const U256 j = fmul(h, i);
        const U256 r = fadd(fsub(s2, s1), fsub(s2, s1));
        const U256 v = fmul(u1, i);
        Element out;
        out.x_ = fsub(fsub(fsqr(r), j), fadd(v, v));
        U256 t = fmul(s1, j);
        out.y_ = fsub(fmul(r, fsub(v, out.x_)), fadd(t, t));
        out.z_ = fmul(fsub(fsqr(fadd(p.z_, q.z_)), fadd(z1s, z2s)), h);
        return out;
    }

    // Addition with q normalized (z == 1): saves several field mults.
    static Element add_mixed(const Element& p, const Element& q) {
        using namespace detail::secp;
        if (q.is_identity()) return p;
        if (p.is_identity()) return q;
        const U256 z1s = fsqr(p.z_);
        const U256 u2 = fmul(q.x_, z1s);
        const U256 s2 = fmul(q.y_, fmul(z1s, p.z_));
        if (p.x_ == u2) {
            if (!(p.y_ == s2)) return Element::identity();
            return dbl(p);
        }
        const U256 h = fsub(u2, p.x_);
        const U256 hs = fsqr(h);
        const U256 i = fadd(fadd(hs, hs), fadd(hs, hs));
        const U256 j = fmul(h, i);
        const U256 r = fadd(fsub(s2, p.y_), fsub(s2, p.y_));
        const U256 v = fmul(p.x_, i);
        Element out;
        out.x_ = fsub(fsub(fsqr(r), j), fadd(v, v));
        U256 t = fmul(p.y_, j);
        out.y_ = fsub(fmul(r, fsub(v, out.x_)), fadd(t, t));
        out.z_ = fsub(fsqr(fadd(p.z_, h)), fadd(z1s, hs));
        return out;
    }

    static Element dbl(const Element& p) {
        using namespace detail::secp;
        if (p.is_identity()) return p;
        const U256 a = fsqr(p.x_);
        const U256 b = fsqr(p.y_);
        const U256 c = fsqr(b);
        U256 d = fsub(fsub(fsqr(fadd(p.x_, b)), a), c);
        d = fadd(d, d);
        const U256 e = fadd(fadd(a, a), a);
        const U256 f = fsqr(e);
        Element out;
        out.x_ = fsub(f, fadd(d, d));
        U256 c8 = fadd(c, c);
        c8 = fadd(c8, c8);
        c8 = fadd(c8, c8);
        out.y_ = fsub(fmul(e, fsub(d, out.x_)), c8);
        const U256 yz = fmul(p.y_, p.z_);
        out.z_ = fadd(yz, yz);
        return out;
    }

    /// Variable-base scalar multiplication (4-bit window, most significant first).
    static Element mul(const Element& p, const Scalar& k) {
        if (p.is_identity() || k.is_zero()) return Element::identity();
        std::array<Element, 16> table;
        table[1] = p;
        for (int i = 2; i < 16; ++i) table[i] = add(table[i - 1], p);
        Element acc;
        bool started = false;
        const auto& v = k.raw();
        for (int nib = 63; nib >= 0; --nib) {
            if (started) {
                acc = dbl(acc);
                acc = dbl(acc);
                acc = dbl(acc);
                acc = dbl(acc);
            }
            const unsigned d = (unsigned)((v.w[nib / 16] >> (4 * (nib % 16))) & 0xF);
            if (d) {
                acc = started ? add(acc, table[d]) : table[d];
                started = true;
            }
        }
        return started ? acc : Element::identity();
    }

    /// Fixed-base multiplication of the generator via an 8-bit comb table.
    static Element mul_base(const Scalar& k) {
        const auto& table = base_table();
        Element acc;
        const auto& v = k.raw();
        for (int byte = 0; byte < 32; ++byte) {
            const unsigned b = (unsigned)((v.w[byte / 8] >> (8 * (byte % 8))) & 0xFF);
            if (b) acc = add_mixed(acc, table[byte * 255 + (b - 1)]);
        }
        return acc;
    }

    /// Product of powers: prod bases[i]^exps[i] via interleaved wNAF windows.
    static Element multiexp(std::span<const Element> bases, std::span<const Scalar> exps);

    /// Normalizes many elements with one shared field inversion.
    static void normalize_batch(std::span<Element> pts) {
        using namespace detail::secp;
        std::vector<U256> zs;
        zs.reserve(pts.size());
        std::vector<std::size_t> idx;
        idx.reserve(pts.size());
        for (std::size_t i = 0; i < pts.size(); ++i) {
            if (!pts[i].is_identity()) {
                zs.push_back(pts[i].z_);
                idx.push_back(i);
            }
        }
        if (zs.empty()) return;
        std::vector<U256> prefix(zs.size());
        prefix[0] = zs[0];
        for (std::size_t i = 1; i < zs.size(); ++i) prefix[i] = fmul(prefix[i - 1], zs[i]);
        U256 inv_all = finv(prefix.back());
        for (std::size_t i = zs.size(); i-- > 0;) {
            const U256 zi = (i == 0) ? inv_all : fmul(inv_all, prefix[i - 1]);
            inv_all = fmul(inv_all, zs[i]);
            Element& e = pts[idx[i]];
            const U256 zi2 = fsqr(zi);
            e.x_ = fmul(e.x_, zi2);
            e.y_ = fmul(e.y_, fmul(zi2, zi));
            e.z_ = U256::from_u64(1);
        }
    }

    static std::vector<std::array<std::uint8_t, 33>> encode_batch(std::span<const Element> pts) {
        std::vector<Element> copy(pts.begin(), pts.end());
        normalize_batch(copy);
        std::vector<std::array<std::uint8_t, 33>> out;
        out.reserve(copy.size());
        for (const auto& e : copy) out.push_back(e.encode());
        return out;
    }

private:
    static const std::vector<Element>& base_table() {
        static const std::vector<Element> table = [] {
            std::vector<Element> t(32 * 255);
            Element window_base = Element::generator();
            for (int w = 0; w < 32; ++w) {
                Element acc = window_base;
                for (int b = 1; b <= 255; ++b) {
                    t[w * 255 + (b - 1)] = acc;
                    acc = add(acc, window_base);
                }
                window_base = acc;  // acc == 256 * window_base == 2^8 * window_base
            }
            normalize_batch(t);
            return t;
        }();
        return table;
    }
};

namespace detail::secp {

// width-4 wNAF digits of a scalar, least significant first; digits odd in [-15, 15].
inline std::vector<std::int8_t> wnaf4(const U256& k) {
    std::vector<std::int8_t> digits;
    digits.reserve(257);
    U256 x = k;
    while (!x.is_zero()) {
        if (x.w[0] & 1) {
            int d = (int)(x.w[0] & 31);
            if (d >= 16) d -= 32;
            digits.push_back((std::int8_t)d);
            if (d > 0)
                detail::sub_borrow(x, x, U256::from_u64((detail::u64)d));
            else
                detail::add_carry(x, x, U256::from_u64((detail::u64)(-d)));
        } else {
            digits.push_back(0);
        }
        for (int i = 0; i < 3; ++i) x.w[i] = (x.w[i] >> 1) | (x.w[i + 1] << 63);
        x.w[3] >>= 1;
    }
    return digits;
}

}  // namespace detail::secp

inline Secp256k1::Element Secp256k1::multiexp(std::span<const Element> bases,
                                              std::span<const Scalar> exps) {
    if (bases.size() != exps.size()) throw LengthMismatch("multiexp: bases/exponents length mismatch");
    const std::size_t n = bases.size();
    if (n == 0) return Element::identity();
    if (n == 1) return mul(bases[0], exps[0]);

    // odd multiples 1P..15P per base
    std::vector<std::array<Element, 8>> pre(n);
    std::vector<std::vector<std::int8_t>> digits(n);
    std::size_t max_len = 0;
    for (std::size_t i = 0; i < n; ++i) {
        digits[i] = detail::secp::wnaf4(exps[i].raw());
        max_len = std::max(max_len, digits[i].size());
        pre[i][0] = bases[i];
        const Element twice = dbl(bases[i]);
        for (int j = 1; j < 8; ++j) pre[i][j] = add(pre[i][j - 1], twice);
    }
    Element acc;
    for (std::size_t pos = max_len; pos-- > 0;) {
        acc = dbl(acc);
        for (std::size_t i = 0; i < n; ++i) {
            if (pos >= digits[i].size()) continue;
            const int d = digits[i][pos];
            if (d > 0)
                acc = add(acc, pre[i][(d - 1) / 2]);
            else if (d < 0)
                acc = add(acc, -pre[i][(-d - 1) / 2]);
        }
    }
    return acc;
}

}  // namespace fas
