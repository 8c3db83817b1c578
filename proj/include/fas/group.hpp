#pragma once

#include <cmath>
#include <concepts>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "fas/detail/parallel.hpp"
#include "fas/errors.hpp"
#include "fas/rng.hpp"
#include "fas/secp256k1.hpp"

namespace fas {

/// Requirements on a prime-order group backend. Protocol code is written
/// against this surface only, so other groups can be swapped in.
template <typename G>
concept PrimeOrderGroup = requires(const typename G::Element& e, const typename G::Scalar& s,
                                   std::span<const typename G::Element> es,
                                   std::span<const typename G::Scalar> ss) {
    { G::kElementBytes } -> std::convertible_to<std::size_t>;
    { G::kScalarBytes } -> std::convertible_to<std::size_t>;
    { G::Element::identity() } -> std::same_as<typename G::Element>;
    { G::Element::generator() } -> std::same_as<typename G::Element>;
    { e + e } -> std::same_as<typename G::Element>;
    { -e } -> std::same_as<typename G::Element>;
    { e == e } -> std::convertible_to<bool>;
    { G::mul(e, s) } -> std::same_as<typename G::Element>;
    { G::mul_base(s) } -> std::same_as<typename G::Element>;
    { G::multiexp(es, ss) } -> std::same_as<typename G::Element>;
    { G::encode_batch(es) };
    { s + s } -> std::same_as<typename G::Scalar>;
    { s * s } -> std::same_as<typename G::Scalar>;
    { s - s } -> std::same_as<typename G::Scalar>;
};

static_assert(PrimeOrderGroup<Secp256k1>);

/// Bound on exponents recoverable by bsgs_dlog; must stay polynomial.
struct DlogBound {
    std::uint64_t value = 0;
};

template <PrimeOrderGroup G>
typename G::Scalar random_scalar(Rng& rng) {
    for (;;) {
        std::array<std::uint8_t, G::kScalarBytes> buf{};
        rng.fill(buf);
        if (auto s = G::Scalar::try_from_bytes(buf)) return *s;
    }
}

/// prod bases[i]^exponents[i]; empty product is the identity. Splits large
/// inputs across hardware threads; the result does not depend on the split.
template <PrimeOrderGroup G>
typename G::Element multiexp(std::span<const typename G::Element> bases,
                             std::span<const typename G::Scalar> exponents) {
    if (bases.size() != exponents.size()) throw LengthMismatch("multiexp: bases/exponents length mismatch");
    const std::size_t n = bases.size();
    if (n < 512) return G::multiexp(bases, exponents);
    const std::size_t pieces = std::min<std::size_t>(std::thread::hardware_concurrency() ? std::thread::hardware_concurrency() : 1,
                                                     (n + 511) / 512);
    const std::size_t chunk = (n + pieces - 1) / pieces;
    std::vector<typename G::Element> partial(pieces, G::Element::identity());
    detail::parallel_chunks(pieces, [&](std::size_t lo, std::size_t hi) {
        for (std::size_t t = lo; t < hi; ++t) {
            const std::size_t b = t * chunk;
            const std::size_t e = std::min(n, b + chunk);
            if (b < e) partial[t] = G::multiexp(bases.subspan(b, e - b), exponents.subspan(b, e - b));
        }
    });
    typename G::Element acc = G::Element::identity();
    for (const auto& p : partial) acc = acc + p;
    return acc;
}

/// Baby-step giant-step table for discrete logs bounded by B, reusable
/// across many targets with the same base. Baby steps are keyed by the
/// canonical point encoding; giant strides use m = ceil(sqrt(B+1)).
/// Bounds up to 2^16 use a plain linear scan instead.
template <PrimeOrderGroup G>
class DlogTable {
public:
    static constexpr std::uint64_t kLinearScanMax = 1u << 16;

    DlogTable(const typename G::Element& base, DlogBound bound) : base_(base), bound_(bound.value) {
        if (bound_ <= kLinearScanMax) return;
        m_ = (std::uint64_t)std::ceil(std::sqrt((double)bound_ + 1.0));
        std::vector<typename G::Element> babies(m_);
        typename G::Element acc = G::Element::identity();
        for (std::uint64_t j = 0; j < m_; ++j) {
            babies[j] = acc;
            acc = acc + base_;
        }
        const auto keys = G::encode_batch(babies);
        baby_.reserve(keys.size());
        for (std::uint64_t j = 0; j < m_; ++j) baby_.emplace(key_of(keys[j]), (std::uint32_t)j);
        giant_neg_ = -G::mul(base_, G::Scalar::from_u64(m_));
    }

    DlogTable(const DlogTable&) = delete;
    DlogTable& operator=(const DlogTable&) = delete;

    std::uint64_t bound() const { return bound_; }

    std::uint64_t solve(const typename G::Element& target) const {
        if (bound_ <= kLinearScanMax) {
            typename G::Element acc = G::Element::identity();
            for (std::uint64_t v = 0; v <= bound_; ++v) {
                if (acc == target) return v;
                acc = acc + base_;
            }
            throw DlogOutOfRange("no discrete log within bound");
        }
        const std::uint64_t rows = bound_ / m_ + 1;
        constexpr std::size_t kChunk = 64;
        typename G::Element cur = target;
        std::vector<typename G::Element> chunk;
        for (std::uint64_t row = 0; row < rows;) {
            const std::size_t take = (std::size_t)std::min<std::uint64_t>(kChunk, rows - row);
            chunk.clear();
            for (std::size_t c = 0; c < take; ++c) {
                chunk.push_back(cur);
                cur = cur + giant_neg_;
            }
            const auto keys = G::encode_batch(chunk);
            for (std::size_t c = 0; c < take; ++c) {
                const auto [lo, hi] = baby_.equal_range(key_of(keys[c]));
                for (auto it = lo; it != hi; ++it) {
                    const std::uint64_t v = (row + c) * m_ + it->second;
                    if (v <= bound_ && G::mul(base_, G::Scalar::from_u64(v)) == target) return v;
                }
            }
            row += take;
        }
        throw DlogOutOfRange("no discrete log within bound");
    }

private:
    // 8-byte prefix of the canonical encoding; collisions are resolved by a
    // full check of the candidate exponent, so the result stays exact.
    template <std::size_t N>
    static std::uint64_t key_of(const std::array<std::uint8_t, N>& enc) {
        static_assert(N >= 8);
        std::uint64_t k = 0;
        for (int i = 0; i < 8; ++i) k = (k << 8) | enc[i];
        return k;
    }

    typename G::Element base_;
    std::uint64_t bound_ = 0;
    std::uint64_t m_ = 0;
    typename G::Element giant_neg_ = G::Element::identity();
    std::unordered_multimap<std::uint64_t, std::uint32_t> baby_;
};

/// One-shot discrete log: returns v in [0, B] with base^v == target, or
/// throws DlogOutOfRange. O(sqrt(B)) group operations.
template <PrimeOrderGroup G>
std::uint64_t bsgs_dlog(const typename G::Element& base, const typename G::Element& target,
                        DlogBound bound) {
    return DlogTable<G>(base, bound).solve(target);
}

}  // namespace fas
