#include "maes/elgamal.hpp"

#include "maes/errors.hpp"

namespace maes::elgamal {

namespace {

BigInt powm(const BigInt& base, const BigInt& exp, const BigInt& mod) {
    BigInt out;
    mpz_powm(out.get_mpz_t(), base.get_mpz_t(), exp.get_mpz_t(), mod.get_mpz_t());
    return out;
}

// RFC 3526, group id 14.
constexpr const char* kModp2048 =
    "FFFFFFFFFFFFFFFFC90FDAA22168C234C4C6628B80DC1CD129024E088A67CC74"
    "020BBEA63B139B22514A08798E3404DDEF9519B3CD3A431B302B0A6DF25F1437"
    "4FE1356D6D51C245E485B576625E7EC6F44C42E9A637ED6B0BFF5CB6F406B7ED"
    "EE386BFB5A899FA5AE9F24117C4B1FE649286651ECE45B3DC2007CB8A163BF05"
    "98DA48361C55D39A69163FA8FD24CF5F83655D23DCA3AD961C62F356208552BB"
    "9ED529077096966D670C354E4ABC9804F1746C08CA18217C32905E462E36CE3B"
    "E39E772C180E86039B2783A2EC07A28FB5C55DF06F4C52C9DE2BCBF695581718"
    "3995497CEA956AE515D2261898FA051015728E5A8AACAA68FFFFFFFFFFFFFFFF";

} // namespace

Params rfc3526_group_2048() {
    Params params;
    params.p = BigInt(kModp2048, 16);
    params.g = 2;
    return params;
}

BigInt random_below(const BigInt& bound, Rng& rng) {
    if (bound <= 1) throw DomainError("random_below: bound must exceed 1");
    const std::size_t bits = mpz_sizeinbase(bound.get_mpz_t(), 2);
    const std::size_t nbytes = (bits + 7) / 8;
    Bytes buf(nbytes);
    while (true) {
        rng.fill(buf);
        // trim excess high bits so rejection stays cheap
        if (bits % 8 != 0) buf[0] &= static_cast<std::uint8_t>((1u << (bits % 8)) - 1);
        BigInt v = bytes_to_bigint(buf);
        if (v >= 1 && v < bound) return v;
    }
}

KeyPair keygen(const Params& params, Rng& rng) {
    // x uniform in [1, p-2]
    const BigInt x = random_below(params.p - 1, rng);
    return keygen_with_x(params, x);
}

KeyPair keygen_with_x(const Params& params, const BigInt& x) {
    if (params.p < 3 || params.g <= 1 || params.g >= params.p)
        throw DomainError("elgamal: invalid group parameters");
    if (x < 1 || x > params.p - 2) throw DomainError("elgamal: private exponent out of range");
    KeyPair kp;
    kp.pub.params = params;
    kp.pub.y = powm(params.g, x, params.p);
    kp.priv.params = params;
    kp.priv.x = x;
    return kp;
}

Ciphertext encrypt_with_k(const BigInt& m, const PublicKey& pub, const BigInt& k) {
    const BigInt& p = pub.params.p;
    if (m < 1 || m >= p) throw CryptoError("elgamal: message not in [1, p-1]");
    if (k < 1 || k > p - 2) throw CryptoError("elgamal: ephemeral key out of range");
    Ciphertext c;
    c.c1 = powm(pub.params.g, k, p);
    c.c2 = (m * powm(pub.y, k, p)) % p;
    return c;
}

Ciphertext encrypt(const BigInt& m, const PublicKey& pub, Rng& rng) {
    return encrypt_with_k(m, pub, random_below(pub.params.p - 1, rng));
}

BigInt decrypt(const Ciphertext& c, const PrivateKey& priv) {
    const BigInt& p = priv.params.p;
    if (c.c1 < 1 || c.c1 >= p || c.c2 < 1 || c.c2 >= p)
        throw CryptoError("elgamal: ciphertext component not in [1, p-1]");
    const BigInt s = powm(c.c1, priv.x, p);
    BigInt s_inv;
    if (mpz_invert(s_inv.get_mpz_t(), s.get_mpz_t(), p.get_mpz_t()) == 0)
        throw CryptoError("elgamal: shared secret not invertible");
    return (c.c2 * s_inv) % p;
}

BigInt bytes_to_bigint(std::span<const std::uint8_t> data) {
    BigInt v;
    mpz_import(v.get_mpz_t(), data.size(), 1, 1, 1, 0, data.data());
    return v;
}

Bytes bigint_to_bytes(const BigInt& v) {
    if (v < 0) throw DomainError("bigint_to_bytes: negative value");
    if (v == 0) return Bytes{};
    const std::size_t nbytes = (mpz_sizeinbase(v.get_mpz_t(), 2) + 7) / 8;
    Bytes out(nbytes);
    std::size_t written = 0;
    mpz_export(out.data(), &written, 1, 1, 1, 0, v.get_mpz_t());
    out.resize(written);
    return out;
}

Bytes serialize_ciphertext(const Ciphertext& c) {
    const Bytes b1 = bigint_to_bytes(c.c1);
    const Bytes b2 = bigint_to_bytes(c.c2);
    if (b1.size() > 0xFFFF || b2.size() > 0xFFFF)
        throw DomainError("elgamal: ciphertext component too large to serialize");
    Bytes out;
    out.reserve(4 + b1.size() + b2.size());
    auto put16 = [&out](std::size_t n) {
        out.push_back(static_cast<std::uint8_t>(n >> 8));
        out.push_back(static_cast<std::uint8_t>(n & 0xFF));
    };
    put16(b1.size());
    out.insert(out.end(), b1.begin(), b1.end());
    put16(b2.size());
    out.insert(out.end(), b2.begin(), b2.end());
    return out;
}

Ciphertext parse_ciphertext(std::span<const std::uint8_t> data) {
    auto need = [&data](std::size_t off, std::size_t n) {
        if (off + n > data.size()) throw FormatError("elgamal ciphertext: truncated");
    };
    need(0, 2);
    const std::size_t l1 = static_cast<std::size_t>(data[0]) << 8 | data[1];
    need(2, l1 + 2);
    Ciphertext c;
    c.c1 = bytes_to_bigint(data.subspan(2, l1));
    const std::size_t off2 = 2 + l1;
    const std::size_t l2 = static_cast<std::size_t>(data[off2]) << 8 | data[off2 + 1];
    need(off2 + 2, l2);
    c.c2 = bytes_to_bigint(data.subspan(off2 + 2, l2));
    if (off2 + 2 + l2 != data.size()) throw FormatError("elgamal ciphertext: trailing bytes");
    return c;
}

} // namespace maes::elgamal
