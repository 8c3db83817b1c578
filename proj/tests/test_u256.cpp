#include <catch2/catch_amalgamated.hpp>

#include "fas/detail/sha256.hpp"
#include "fas/detail/u256.hpp"
#include "fas/secp256k1.hpp"

using namespace fas::detail;
using fas::detail::secp::FOLD_N;
using fas::detail::secp::N;

namespace {

struct ScalarVec {
    const char* a;
    const char* b;
    const char* sum;
    const char* prod;
    const char* inv_a;
};

// Frozen from an independent big-integer computation of arithmetic mod the
// secp256k1 group order.
constexpr ScalarVec kScalarVecs[] = {
    {"d23f0824128b2f330c5c7fd0a6a3a4506513270e269e0d37f2a74de452e6b439",
     "36f675cc81e74ef5e8e25d940ed904759531985d5d9dc9f81818e811892f902c",
     "09357df094727e28f53edd64b57ca8c73f95e284d4f336f44aedd7690be00324",
     "65a8d54ad158fa282510a8473f3a78737c941856320fe23434c957a90fb2cb68",
     "5836099e632e2a72c05af0085e1fbd59dcf7f5f1ef92d5b978f59da6359b4604"},
    {"8d116ece1738f7d93d9c172411e20b8f6b0d549b6f03675a1600a35a099950d9",
     "a170b33839263059f28c105d1fb17c2390c192cfd3ac94af0f21ddb66cad4a27",
     "2e822206505f283330282781319387b441200a8493675bcd65502283a61059bf",
     "7a161627c9c342b3116abc2a8750f2c7ac868f0524275a20747172c68bce2a89",
     "23d20d601cc986ec6ba838f7f8ffe3184df4e450af62d5f08100a70587975bf2"},
    {"0cb1e29c658cda1495e60af593bd04cf0fd630f1f29d0da9953f48f1a09f76b6",
     "6b4cb2424a23d5962217beaddbc496cb8e81973e0becd7b03898d190f9ebdacd",
     "77fe94deafb0afaab7fdc9a36f819b9a9e57c82ffe89e559cdd81a829a8b5183",
     "d9ab4598afa3000f6dcd147ea0c46d205acb8dfd31f13fd5d6c67b59e6a7645f",
     "731f05d5342f68ede6de7b531a7f6bb0c78101a949d8a3c7be8c938e3ef9b9e8"},
    {"ae97ba94d0eda82f8f6d05584ef8aa38922766581e27a1c08a6a63ec24ede6a5",
     "18f135d25f557203301850c5a38fd547923a736994e3bf911a61dbe22e44158c",
     "c788f06730431a32bf85561df2887f802461d9c1b30b6151a4cc3fce5331fc31",
     "bb84e82cfa4185a038f3d20213093a8ef248b067b9a7d7b202272823225cee32",
     "dfedabbe26105d8507f0cff9b47c4cfc7b6f9a81ac776a4a003950630a40ab07"},
};

U256 mul_n(const U256& a, const U256& b) { return fas::detail::secp::reduce<3>(mul_wide(a, b), N, FOLD_N); }

}  // namespace

TEST_CASE("u256 hex and byte round trips") {
    const U256 v = from_hex("d23f0824128b2f330c5c7fd0a6a3a4506513270e269e0d37f2a74de452e6b439");
    CHECK(to_hex(v) == "d23f0824128b2f330c5c7fd0a6a3a4506513270e269e0d37f2a74de452e6b439");
    std::array<std::uint8_t, 32> buf{};
    to_bytes_be(v, buf);
    CHECK(from_bytes_be(buf) == v);
    CHECK(from_hex(to_hex(U256::from_u64(1))) == U256::from_u64(1));
}

TEST_CASE("modular arithmetic matches independent oracle") {
    for (const auto& vec : kScalarVecs) {
        const U256 a = from_hex(vec.a), b = from_hex(vec.b);
        CHECK(to_hex(add_mod(a, b, N)) == vec.sum);
        CHECK(to_hex(mul_n(a, b)) == vec.prod);
        // sub is the inverse of add
        CHECK(sub_mod(add_mod(a, b, N), b, N) == a);
        // inverse via Fermat
        U256 e = N;
        sub_borrow(e, e, U256::from_u64(2));
        U256 inv = U256::from_u64(1);
        for (int i = 255; i >= 0; --i) {
            inv = mul_n(inv, inv);
            if (e.bit(i)) inv = mul_n(inv, a);
        }
        CHECK(to_hex(inv) == vec.inv_a);
        CHECK(mul_n(a, inv) == U256::from_u64(1));
    }
}

TEST_CASE("reduction handles extreme values") {
    U256 n_minus_1 = N;
    sub_borrow(n_minus_1, n_minus_1, U256::from_u64(1));
    // (n-1)^2 mod n == 1
    CHECK(mul_n(n_minus_1, n_minus_1) == U256::from_u64(1));
    // n-1 + 1 == 0
    CHECK(add_mod(n_minus_1, U256::from_u64(1), N).is_zero());
    // 0 - 1 == n-1
    CHECK(sub_mod(U256{}, U256::from_u64(1), N) == n_minus_1);
}

TEST_CASE("sha256 known vectors") {
    auto hex = [](std::span<const std::uint8_t> d) {
        std::string s;
        for (auto b : d) {
            static const char* digits = "0123456789abcdef";
            s += digits[b >> 4];
            s += digits[b & 0xf];
        }
        return s;
    };
    CHECK(hex(sha256({})) == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
    const std::uint8_t abc[] = {'a', 'b', 'c'};
    CHECK(hex(sha256(abc)) == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    // streaming across block boundaries agrees with one-shot
    std::vector<std::uint8_t> msg(1000);
    for (std::size_t i = 0; i < msg.size(); ++i) msg[i] = (std::uint8_t)(i * 31);
    Sha256 h;
    h.update(std::span(msg).subspan(0, 13));
    h.update(std::span(msg).subspan(13, 700));
    h.update(std::span(msg).subspan(713));
    CHECK(h.finalize() == sha256(msg));
}

TEST_CASE("hmac-sha256 rfc4231 case 2") {
    const std::uint8_t key[] = {'J', 'e', 'f', 'e'};
    const char* msg = "what do ya want for nothing?";
    const auto mac = hmac_sha256(key, std::span<const std::uint8_t>((const std::uint8_t*)msg, 28));
    std::string s;
    for (auto b : mac) {
        static const char* digits = "0123456789abcdef";
        s += digits[b >> 4];
        s += digits[b & 0xf];
    }
    CHECK(s == "5bdcc146bf60754e6a042426089575c75a003f089d2739839dec58b964ec3843");
}
