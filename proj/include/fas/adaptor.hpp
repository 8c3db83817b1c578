#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>

#include "fas/detail/sha256.hpp"
#include "fas/group.hpp"

namespace fas {

/// Schnorr signatures plus the Schnorr adaptor scheme over the discrete-log
/// relation: a pre-signature (h, s~) commits to the full signature (h, s)
/// up to knowledge of the discrete log of the statement point, and the
/// completed signature leaks exactly that witness.
namespace schnorr {

template <PrimeOrderGroup G>
struct SigningKey {
    typename G::Scalar delta;
};

template <PrimeOrderGroup G>
struct VerifyingKey {
    typename G::Element point;

    std::array<std::uint8_t, G::kElementBytes> encode() const { return point.encode(); }
};

template <PrimeOrderGroup G>
struct Signature {
    typename G::Scalar h;
    typename G::Scalar s;

    std::array<std::uint8_t, 64> to_bytes() const {
        std::array<std::uint8_t, 64> out{};
        h.to_bytes(std::span<std::uint8_t, 32>(out.data(), 32));
        s.to_bytes(std::span<std::uint8_t, 32>(out.data() + 32, 32));
        return out;
    }

    static Signature from_bytes(std::span<const std::uint8_t, 64> in) {
        return {G::Scalar::from_bytes(std::span<const std::uint8_t, 32>(in.data(), 32)),
                G::Scalar::from_bytes(std::span<const std::uint8_t, 32>(in.data() + 32, 32))};
    }

    friend bool operator==(const Signature&, const Signature&) = default;
};

// Same 64-byte layout as Signature; kept a distinct type so envelopes and
// signatures cannot be mixed up.
template <PrimeOrderGroup G>
struct PreSignature {
    typename G::Scalar h;
    typename G::Scalar s_tilde;

    std::array<std::uint8_t, 64> to_bytes() const {
        std::array<std::uint8_t, 64> out{};
        h.to_bytes(std::span<std::uint8_t, 32>(out.data(), 32));
        s_tilde.to_bytes(std::span<std::uint8_t, 32>(out.data() + 32, 32));
        return out;
    }

    static PreSignature from_bytes(std::span<const std::uint8_t, 64> in) {
        return {G::Scalar::from_bytes(std::span<const std::uint8_t, 32>(in.data(), 32)),
                G::Scalar::from_bytes(std::span<const std::uint8_t, 32>(in.data() + 32, 32))};
    }

    friend bool operator==(const PreSignature&, const PreSignature&) = default;
};

// h = H(tag || vk || commit || m) reduced mod the group order. Every
// component is length-delimited so boundaries cannot shift between fields.
template <PrimeOrderGroup G>
typename G::Scalar challenge(const typename G::Element& vk, const typename G::Element& commit,
                             std::span<const std::uint8_t> m) {
    detail::Sha256 hasher;
    auto put = [&hasher](std::span<const std::uint8_t> bytes) {
        const std::uint32_t len = (std::uint32_t)bytes.size();
        const std::uint8_t len_be[4] = {(std::uint8_t)(len >> 24), (std::uint8_t)(len >> 16),
                                        (std::uint8_t)(len >> 8), (std::uint8_t)len};
        hasher.update(len_be);
        hasher.update(bytes);
    };
    static constexpr char kTag[] = "FAS/Schnorr/v1";
    put(std::span<const std::uint8_t>((const std::uint8_t*)kTag, sizeof(kTag) - 1));
    put(vk.encode());
    put(commit.encode());
    put(m);
    return G::Scalar::from_bytes_reduced(hasher.finalize());
}

template <PrimeOrderGroup G>
std::pair<SigningKey<G>, VerifyingKey<G>> keygen(Rng& rng) {
    typename G::Scalar delta = random_scalar<G>(rng);
    while (delta.is_zero()) delta = random_scalar<G>(rng);
    return {SigningKey<G>{delta}, VerifyingKey<G>{G::mul_base(delta)}};
}

template <PrimeOrderGroup G>
Signature<G> sign(const SigningKey<G>& sk, std::span<const std::uint8_t> m, Rng& rng) {
    const typename G::Scalar r = random_scalar<G>(rng);
    const typename G::Element vk = G::mul_base(sk.delta);
    const typename G::Scalar h = challenge<G>(vk, G::mul_base(r), m);
    return {h, r + h * sk.delta};
}

template <PrimeOrderGroup G>
bool verify(const VerifyingKey<G>& vk, std::span<const std::uint8_t> m, const Signature<G>& sig) {
    const typename G::Element commit = G::mul_base(sig.s) - G::mul(vk.point, sig.h);
    return challenge<G>(vk.point, commit, m) == sig.h;
}

template <PrimeOrderGroup G>
PreSignature<G> pre_sign(const SigningKey<G>& sk, std::span<const std::uint8_t> m,
                         const typename G::Element& statement, Rng& rng) {
    const typename G::Scalar r = random_scalar<G>(rng);
    const typename G::Element vk = G::mul_base(sk.delta);
    const typename G::Scalar h = challenge<G>(vk, G::mul_base(r) + statement, m);
    return {h, r + h * sk.delta};
}

template <PrimeOrderGroup G>
bool pre_verify(const VerifyingKey<G>& vk, std::span<const std::uint8_t> m,
                const typename G::Element& statement, const PreSignature<G>& pre) {
    const typename G::Element commit = G::mul_base(pre.s_tilde) - G::mul(vk.point, pre.h);
    return challenge<G>(vk.point, commit + statement, m) == pre.h;
}

/// Completes a pre-signature with the witness of the statement. Works for
/// any pre-signature accepted by pre_verify, honestly generated or not.
template <PrimeOrderGroup G>
Signature<G> adapt(const VerifyingKey<G>& vk, std::span<const std::uint8_t> m,
                   const typename G::Element& statement, const typename G::Scalar& witness,
                   const PreSignature<G>& pre) {
    if (!pre_verify<G>(vk, m, statement, pre)) throw PreSigInvalid("adapt: pre-signature does not verify");
    if (!(G::mul_base(witness) == statement)) throw WitnessMismatch("adapt: witness does not open statement");
    return {pre.h, pre.s_tilde + witness};
}

/// Recovers the witness from a completed signature, or nullopt when the
/// difference s - s~ does not open the statement.
template <PrimeOrderGroup G>
std::optional<typename G::Scalar> extract(const PreSignature<G>& pre, const Signature<G>& sig,
                                          const typename G::Element& statement) {
    const typename G::Scalar candidate = sig.s - pre.s_tilde;
    if (!(G::mul_base(candidate) == statement)) return std::nullopt;
    return candidate;
}

}  // namespace schnorr
}  // namespace fas
