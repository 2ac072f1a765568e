#include <doctest.h>

#include "maes/elgamal.hpp"
#include "maes/errors.hpp"

using namespace maes;
using namespace maes::elgamal;

TEST_CASE("keygen computes y = g^x mod p") {
    const Params params{23, 5};
    const KeyPair kp = keygen_with_x(params, 6);
    CHECK(kp.pub.y == 8); // 5^6 mod 23
    CHECK_THROWS_AS(keygen_with_x(params, 0), DomainError);
    CHECK_THROWS_AS(keygen_with_x(params, 22), DomainError);

    Rng rng(1);
    for (int i = 0; i < 100; ++i) {
        const KeyPair k = keygen(params, rng);
        CHECK(k.priv.x >= 1);
        CHECK(k.priv.x <= 21);
        CHECK(k.pub.y >= 1);
        CHECK(k.pub.y <= 22);
    }
}

TEST_CASE("encrypt matches the worked example") {
    const Params params{23, 5};
    const KeyPair kp = keygen_with_x(params, 6);
    const Ciphertext c = encrypt_with_k(10, kp.pub, 3);
    CHECK(c.c1 == 10); // 5^3 mod 23
    CHECK(c.c2 == 14); // 10 * 8^3 mod 23

    // multiplicative identity: c2 = y^k for m = 1
    const Ciphertext one = encrypt_with_k(1, kp.pub, 7);
    BigInt yk;
    mpz_powm_ui(yk.get_mpz_t(), kp.pub.y.get_mpz_t(), 7, params.p.get_mpz_t());
    CHECK(one.c2 == yk);

    // distinct ephemeral keys give distinct ciphertexts
    const Ciphertext a = encrypt_with_k(10, kp.pub, 3);
    const Ciphertext b = encrypt_with_k(10, kp.pub, 4);
    CHECK(a.c1 != b.c1);

    CHECK_THROWS_AS(encrypt_with_k(23, kp.pub, 3), CryptoError); // m >= p
    CHECK_THROWS_AS(encrypt_with_k(0, kp.pub, 3), CryptoError);
}

TEST_CASE("decrypt recovers the worked example") {
    const Params params{23, 5};
    const KeyPair kp = keygen_with_x(params, 6);
    CHECK(decrypt(Ciphertext{10, 14}, kp.priv) == 10);
    CHECK_THROWS_AS(decrypt(Ciphertext{0, 14}, kp.priv), CryptoError);
    CHECK_THROWS_AS(decrypt(Ciphertext{10, 0}, kp.priv), CryptoError);
}

TEST_CASE("decrypt inverts encrypt over a 64-bit prime") {
    const Params params{BigInt("2305843009213693951"), 3}; // 2^61 - 1
    Rng rng(2);
    const KeyPair kp = keygen(params, rng);
    for (int i = 0; i < 1000; ++i) {
        const BigInt m = random_below(params.p, rng);
        const Ciphertext c = encrypt(m, kp.pub, rng);
        CHECK(decrypt(c, kp.priv) == m);
    }
}

TEST_CASE("a wrong exponent decrypts to a different message") {
    const Params params{BigInt("2305843009213693951"), 3};
    Rng rng(3);
    const KeyPair kp = keygen(params, rng);
    PrivateKey wrong = kp.priv;
    wrong.x += 1;
    int mismatches = 0;
    for (int i = 0; i < 50; ++i) {
        const BigInt m = random_below(params.p, rng);
        const Ciphertext c = encrypt(m, kp.pub, rng);
        mismatches += decrypt(c, wrong) != m;
    }
    CHECK(mismatches == 50);
}

TEST_CASE("ciphertext serialization round-trips") {
    Rng rng(4);
    const Params params = rfc3526_group_2048();
    const KeyPair kp = keygen(params, rng);
    const BigInt m = bytes_to_bigint(Bytes{'H', 'I'});
    const Ciphertext c = encrypt(m, kp.pub, rng);
    const Bytes wire = serialize_ciphertext(c);
    const Ciphertext back = parse_ciphertext(wire);
    CHECK(back.c1 == c.c1);
    CHECK(back.c2 == c.c2);
    CHECK(decrypt(back, kp.priv) == m);

    Bytes truncated(wire.begin(), wire.begin() + wire.size() / 2);
    CHECK_THROWS_AS(parse_ciphertext(truncated), FormatError);
    Bytes trailing = wire;
    trailing.push_back(0);
    CHECK_THROWS_AS(parse_ciphertext(trailing), FormatError);
}

TEST_CASE("the production group is a 2048-bit safe-prime group") {
    const Params params = rfc3526_group_2048();
    CHECK(mpz_sizeinbase(params.p.get_mpz_t(), 2) == 2048);
    CHECK(params.g == 2);
    CHECK(mpz_probab_prime_p(params.p.get_mpz_t(), 32) >= 1);
    const BigInt q = (params.p - 1) / 2;
    CHECK(mpz_probab_prime_p(q.get_mpz_t(), 32) >= 1);
}

TEST_CASE("bigint byte conversion is minimal big-endian") {
    CHECK(bigint_to_bytes(BigInt(0x4849)) == Bytes{0x48, 0x49});
    CHECK(bytes_to_bigint(Bytes{0x48, 0x49}) == BigInt(0x4849));
    CHECK(bigint_to_bytes(BigInt(0)).empty());
    CHECK(bytes_to_bigint(Bytes{}) == 0);
}
