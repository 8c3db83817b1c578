#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "fas/detail/parallel.hpp"
#include "fas/group.hpp"

namespace fas {

/// DDH-based inner-product functional encryption with a public,
/// deterministic functional-key commitment (pubkeygen). Keys satisfy
/// pk_y == g^{sk_y}, which is what lets a functional key double as a
/// discrete-log witness for the adaptor layer.
namespace ipfe {

struct IpfeParams {
    std::uint32_t lambda = 128;
    std::size_t ell = 0;
    DlogBound bound;
};

inline IpfeParams gen(std::uint32_t lambda, std::size_t ell, DlogBound bound) {
    if (ell < 1) throw ParamError("ipfe: vector length must be at least 1");
    return IpfeParams{lambda, ell, bound};
}

template <PrimeOrderGroup G>
struct MasterSecretKey {
    std::vector<typename G::Scalar> s;
};

template <PrimeOrderGroup G>
struct MasterPublicKey {
    std::vector<typename G::Element> k;
};

template <PrimeOrderGroup G>
struct Ciphertext {
    typename G::Element ct0;
    std::vector<typename G::Element> ct1;
};

template <PrimeOrderGroup G>
using FunctionalSecretKey = typename G::Scalar;

template <PrimeOrderGroup G>
using FunctionalPublicKey = typename G::Element;

template <PrimeOrderGroup G>
std::pair<MasterPublicKey<G>, MasterSecretKey<G>> setup(const IpfeParams& params, Rng& rng) {
    MasterSecretKey<G> msk;
    msk.s.reserve(params.ell);
    for (std::size_t i = 0; i < params.ell; ++i) msk.s.push_back(random_scalar<G>(rng));
    MasterPublicKey<G> mpk;
    mpk.k.resize(params.ell);
    detail::parallel_chunks(params.ell, [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i) mpk.k[i] = G::mul_base(msk.s[i]);
    });
    return {std::move(mpk), std::move(msk)};
}

/// Explicit-coins encryption: deterministic in (mpk, x, r).
template <PrimeOrderGroup G>
Ciphertext<G> encrypt_with(const MasterPublicKey<G>& mpk, std::span<const typename G::Scalar> x,
                           const typename G::Scalar& r) {
    if (x.size() != mpk.k.size()) throw LengthMismatch("ipfe encrypt: message length != key length");
    Ciphertext<G> ct;
    ct.ct0 = G::mul_base(r);
    ct.ct1.resize(x.size());
    detail::parallel_chunks(x.size(), [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i) ct.ct1[i] = G::mul_base(x[i]) + G::mul(mpk.k[i], r);
    });
    return ct;
}

/// Same ciphertext as encrypt_with(mpk, x, r), computed with one fixed-base
/// exponentiation per slot when the encryptor also knows the master secret
/// key (the seller's own advertisement). ct1_i = g^{x_i + s_i r}.
template <PrimeOrderGroup G>
Ciphertext<G> encrypt_with(const MasterPublicKey<G>& mpk, const MasterSecretKey<G>& msk,
                           std::span<const typename G::Scalar> x, const typename G::Scalar& r) {
    if (x.size() != mpk.k.size() || msk.s.size() != mpk.k.size())
        throw LengthMismatch("ipfe encrypt: message length != key length");
    Ciphertext<G> ct;
    ct.ct0 = G::mul_base(r);
    ct.ct1.resize(x.size());
    detail::parallel_chunks(x.size(), [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i) ct.ct1[i] = G::mul_base(x[i] + msk.s[i] * r);
    });
    return ct;
}

template <PrimeOrderGroup G>
Ciphertext<G> encrypt(const MasterPublicKey<G>& mpk, std::span<const typename G::Scalar> x, Rng& rng) {
    return encrypt_with<G>(mpk, x, random_scalar<G>(rng));
}

/// sk_y = s^T y mod p. Deterministic and stateless, so repeated requests
/// for the same y are idempotent.
template <PrimeOrderGroup G>
FunctionalSecretKey<G> keygen(const MasterSecretKey<G>& msk, std::span<const typename G::Scalar> y) {
    if (y.size() != msk.s.size()) throw LengthMismatch("ipfe keygen: function length != key length");
    typename G::Scalar acc = G::Scalar::from_u64(0);
    for (std::size_t i = 0; i < y.size(); ++i) acc = acc + msk.s[i] * y[i];
    return acc;
}

/// pk_y = prod k_i^{y_i}; public counterpart of keygen (pk_y == g^{sk_y}).
template <PrimeOrderGroup G>
FunctionalPublicKey<G> pubkeygen(const MasterPublicKey<G>& mpk, std::span<const typename G::Scalar> y) {
    if (y.size() != mpk.k.size()) throw LengthMismatch("ipfe pubkeygen: function length != key length");
    return multiexp<G>(mpk.k, y);
}

/// The O(ell) part of decryption; independent of the functional key, so a
/// buyer can run it before the sale completes.
template <PrimeOrderGroup G>
typename G::Element precompute_ct1y(const Ciphertext<G>& ct, std::span<const typename G::Scalar> y) {
    if (y.size() != ct.ct1.size()) throw LengthMismatch("ipfe decrypt: function length != ciphertext length");
    return multiexp<G>(ct.ct1, y);
}

template <PrimeOrderGroup G>
std::uint64_t decrypt_with_precomputed(const FunctionalSecretKey<G>& sk, const typename G::Element& ct0,
                                       const typename G::Element& ct1y, DlogBound bound,
                                       const DlogTable<G>* table = nullptr) {
    const typename G::Element d = ct1y - G::mul(ct0, sk);
    if (table != nullptr && table->bound() == bound.value) return table->solve(d);
    return bsgs_dlog<G>(G::Element::generator(), d, bound);
}

/// Recovers x^T y as an integer in [0, B]. Throws DlogOutOfRange when the
/// value exceeds the bound or key and ciphertext do not match.
template <PrimeOrderGroup G>
std::uint64_t decrypt(const FunctionalSecretKey<G>& sk, const Ciphertext<G>& ct,
                      std::span<const typename G::Scalar> y, DlogBound bound,
                      const DlogTable<G>* table = nullptr) {
    return decrypt_with_precomputed<G>(sk, ct.ct0, precompute_ct1y<G>(ct, y), bound, table);
}

}  // namespace ipfe
}  // namespace fas
