#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "fas/detail/sha256.hpp"

namespace fas {

/// Deterministic randomness source: SHA-256 in counter mode over a 32-byte
/// seed. Same seed, same stream. Not shared between threads; fork() derives
/// an independent child stream.
class Rng {
public:
    explicit Rng(std::array<std::uint8_t, 32> seed) : seed_(seed) {}

    static Rng from_u64(std::uint64_t seed) {
        std::array<std::uint8_t, 32> s{};
        for (int i = 0; i < 8; ++i) s[i] = (std::uint8_t)(seed >> (56 - 8 * i));
        return Rng(s);
    }

    static Rng from_os_entropy() {
        std::random_device rd;
        std::array<std::uint8_t, 32> s{};
        for (int i = 0; i < 32; i += 4) {
            const std::uint32_t r = rd();
            s[i] = (std::uint8_t)(r >> 24);
            s[i + 1] = (std::uint8_t)(r >> 16);
            s[i + 2] = (std::uint8_t)(r >> 8);
            s[i + 3] = (std::uint8_t)r;
        }
        return Rng(s);
    }

    std::array<std::uint8_t, 32> next_block() {
        detail::Sha256 h;
        h.update(seed_);
        std::array<std::uint8_t, 8> ctr{};
        for (int i = 0; i < 8; ++i) ctr[i] = (std::uint8_t)(counter_ >> (56 - 8 * i));
        h.update(ctr);
        ++counter_;
        return h.finalize();
    }

    void fill(std::span<std::uint8_t> out) {
        std::size_t off = 0;
        while (off < out.size()) {
            const auto block = next_block();
            const std::size_t take = std::min<std::size_t>(32, out.size() - off);
            for (std::size_t i = 0; i < take; ++i) out[off + i] = block[i];
            off += take;
        }
    }

    std::uint64_t next_u64() {
        const auto block = next_block();
        std::uint64_t v = 0;
        for (int i = 0; i < 8; ++i) v = (v << 8) | block[i];
        return v;
    }

    /// Child stream bound to a domain label; advances this stream once.
    Rng fork(std::string_view label) {
        detail::Sha256 h;
        h.update(next_block());
        h.update(std::span<const std::uint8_t>((const std::uint8_t*)label.data(), label.size()));
        return Rng(h.finalize());
    }

    const std::array<std::uint8_t, 32>& seed() const { return seed_; }

private:
    std::array<std::uint8_t, 32> seed_{};
    std::uint64_t counter_ = 0;
};

}  // namespace fas
