#pragma once

// Independent reference implementations used as test oracles. These stay
// deliberately naive and must not share code with the paths they check.

#include <cstdint>
#include <span>
#include <vector>

#include "fas/errors.hpp"

namespace fas::test {

// Left-fold of per-element exponentiations via square-and-multiply on the
// group's add/double only.
template <typename G>
typename G::Element naive_multiexp(std::span<const typename G::Element> bases,
                                   std::span<const typename G::Scalar> exps) {
    auto naive_mul = [](const typename G::Element& p, const typename G::Scalar& k) {
        typename G::Element acc = G::Element::identity();
        const auto bytes = k.bytes();
        for (auto byte : bytes) {
            for (int bit = 7; bit >= 0; --bit) {
                acc = acc + acc;
                if ((byte >> bit) & 1) acc = acc + p;
            }
        }
        return acc;
    };
    typename G::Element out = G::Element::identity();
    for (std::size_t i = 0; i < bases.size(); ++i) out = out + naive_mul(bases[i], exps[i]);
    return out;
}

// Linear scan discrete log.
template <typename G>
std::uint64_t linear_dlog(const typename G::Element& base, const typename G::Element& target,
                          std::uint64_t bound) {
    typename G::Element acc = G::Element::identity();
    for (std::uint64_t v = 0; v <= bound; ++v) {
        if (acc == target) return v;
        acc = acc + base;
    }
    throw fas::DlogOutOfRange("linear_dlog: not found");
}

// Integer dot product with u64 arithmetic; all inputs must be small.
inline std::uint64_t dot_u64(std::span<const std::uint64_t> x, std::span<const std::uint64_t> y) {
    std::uint64_t acc = 0;
    for (std::size_t i = 0; i < x.size(); ++i) acc += x[i] * y[i];
    return acc;
}

}  // namespace fas::test
