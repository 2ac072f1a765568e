#pragma once

#include <gmpxx.h>

#include <span>

#include "maes/rng.hpp"
#include "maes/util.hpp"

namespace maes::elgamal {

using BigInt = mpz_class;

struct Params {
    BigInt p; // prime modulus
    BigInt g; // generator, 1 < g < p
};

struct PublicKey {
    Params params;
    BigInt y; // g^x mod p
};

struct PrivateKey {
    Params params;
    BigInt x; // private exponent in [1, p-2]
};

struct KeyPair {
    PublicKey pub;
    PrivateKey priv;
};

struct Ciphertext {
    BigInt c1;
    BigInt c2;
};

// RFC 3526 2048-bit MODP group (safe prime, g = 2). Default production group;
// hint messages of at most four bytes always fit.
Params rfc3526_group_2048();

// Uniform in [1, bound-1] by rejection over raw bits.
BigInt random_below(const BigInt& bound, Rng& rng);

KeyPair keygen(const Params& params, Rng& rng);
KeyPair keygen_with_x(const Params& params, const BigInt& x);

// c1 = g^k, c2 = m*y^k. Throws CryptoError for m outside [1, p-1].
Ciphertext encrypt(const BigInt& m, const PublicKey& pub, Rng& rng);
Ciphertext encrypt_with_k(const BigInt& m, const PublicKey& pub, const BigInt& k);

// m = c2 * (c1^x)^-1 mod p. Throws CryptoError for components outside [1, p-1].
BigInt decrypt(const Ciphertext& c, const PrivateKey& priv);

// Big-endian byte conversions (minimal encoding; empty span maps to 0).
BigInt bytes_to_bigint(std::span<const std::uint8_t> data);
Bytes bigint_to_bytes(const BigInt& v);

// Wire form: u16 BE length | c1 bytes | u16 BE length | c2 bytes.
Bytes serialize_ciphertext(const Ciphertext& c);
Ciphertext parse_ciphertext(std::span<const std::uint8_t> data);

} // namespace maes::elgamal
