#include "maes/keydist.hpp"

#include <algorithm>
#include <vector>

#include <json.hpp>

#include "maes/errors.hpp"

namespace maes::keydist {

cipher::Key flip_bit(const cipher::Key& key, unsigned position) {
    if (position >= 128) throw DomainError("flip_bit: position must lie in 0..127");
    cipher::Key out = key;
    out[position / 8] ^= static_cast<std::uint8_t>(0x80u >> (position % 8));
    return out;
}

unsigned hint_position(std::string_view msg) {
    if (msg.empty()) throw DomainError("hint_position: empty message");
    unsigned sum = 0;
    for (char c : msg) {
        const auto u = static_cast<unsigned char>(c);
        if (u > 127) throw DomainError("hint_position: non-ASCII character");
        sum += u;
    }
    return sum % 128;
}

std::string make_hint(unsigned position, Rng& rng) {
    if (position >= 128) throw DomainError("make_hint: position must lie in 0..127");

    // For length L the letter-sum range [65L, 90L] is narrower than 128, so it
    // contains at most one sum congruent to `position`.
    struct Choice { unsigned len; unsigned sum; };
    std::vector<Choice> choices;
    for (unsigned len = 2; len <= 4; ++len) {
        const unsigned lo = 65 * len, hi = 90 * len;
        unsigned s = lo + (position + 128 - lo % 128) % 128;
        if (s <= hi) choices.push_back({len, s});
    }
    if (choices.empty()) throw DomainError("make_hint: no hint for position"); // unreachable

    const Choice pick = choices[rng.below(choices.size())];
    std::string out;
    int remaining = static_cast<int>(pick.sum);
    for (unsigned i = 0; i < pick.len; ++i) {
        const int left = static_cast<int>(pick.len - 1 - i);
        const int lo = std::max(65, remaining - 90 * left);
        const int hi = std::min(90, remaining - 65 * left);
        const int c = lo + static_cast<int>(rng.below(static_cast<std::uint64_t>(hi - lo + 1)));
        out.push_back(static_cast<char>(c));
        remaining -= c;
    }
    return out;
}

namespace {

constexpr std::uint8_t kStegoMagic0 = 0x53;
constexpr std::uint8_t kStegoMagic1 = 0x47;

void put_bit(Bytes& pixels, std::size_t index, unsigned bit) {
    pixels[index] = static_cast<std::uint8_t>((pixels[index] & ~1u) | bit);
}

unsigned get_bit(const Bytes& pixels, std::size_t index) { return pixels[index] & 1u; }

} // namespace

GrayImage embed_lsb(const GrayImage& img, std::span<const std::uint8_t> payload) {
    const std::size_t nbits = 48 + 8 * payload.size();
    if (payload.size() > 0xFFFFFFFFull || nbits > img.size())
        throw DomainError("embed_lsb: payload exceeds image capacity");

    Bytes header = {kStegoMagic0, kStegoMagic1,
                    static_cast<std::uint8_t>(payload.size() >> 24),
                    static_cast<std::uint8_t>(payload.size() >> 16),
                    static_cast<std::uint8_t>(payload.size() >> 8),
                    static_cast<std::uint8_t>(payload.size())};

    GrayImage out = img;
    std::size_t pos = 0;
    auto emit = [&](std::uint8_t byte) {
        for (int b = 7; b >= 0; --b) put_bit(out.pixels, pos++, (byte >> b) & 1u);
    };
    for (std::uint8_t b : header) emit(b);
    for (std::uint8_t b : payload) emit(b);
    return out;
}

Bytes extract_lsb(const GrayImage& img) {
    if (img.size() < 48) throw FormatError("extract_lsb: image too small for a stego header");
    std::size_t pos = 0;
    auto read_byte = [&] {
        std::uint8_t v = 0;
        for (int b = 0; b < 8; ++b) v = static_cast<std::uint8_t>(v << 1 | get_bit(img.pixels, pos++));
        return v;
    };
    if (read_byte() != kStegoMagic0 || read_byte() != kStegoMagic1)
        throw FormatError("extract_lsb: bad stego magic");
    std::uint32_t len = 0;
    for (int i = 0; i < 4; ++i) len = len << 8 | read_byte();
    if (48 + 8ull * len > img.size())
        throw FormatError("extract_lsb: declared length exceeds image capacity");
    Bytes out(len);
    for (auto& b : out) b = read_byte();
    return out;
}

std::string QrPayload::to_json() const {
    nlohmann::json j;
    j["sk"] = hex_encode(flipped_static_key);
    j["dk"] = base64_encode(wrapped_dynamic_key);
    if (!meta.empty()) j["meta"] = meta;
    return j.dump();
}

QrPayload QrPayload::from_json(std::string_view text) {
    nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
    if (j.is_discarded() || !j.is_object() || !j.contains("sk") || !j.contains("dk"))
        throw FormatError("qr payload: not a valid key package");
    QrPayload p;
    const Bytes sk = hex_decode(j["sk"].get<std::string>());
    if (sk.size() != 16) throw FormatError("qr payload: static key must be 16 bytes");
    std::copy(sk.begin(), sk.end(), p.flipped_static_key.begin());
    p.wrapped_dynamic_key = base64_decode(j["dk"].get<std::string>());
    if (j.contains("meta")) p.meta = j["meta"].get<std::string>();
    return p;
}

GrayImage sender_package(const cipher::Key& static_key, const cipher::Key& dynamic_key,
                         const elgamal::PublicKey& recipient, const QrCodec& codec,
                         Rng& rng, const PackageOptions& opts) {
    const unsigned position = static_cast<unsigned>(rng.below(128));
    const std::string hint = make_hint(position, rng);

    const elgamal::BigInt m =
        elgamal::bytes_to_bigint({reinterpret_cast<const std::uint8_t*>(hint.data()), hint.size()});
    if (m >= recipient.params.p)
        throw CryptoError("sender_package: hint integer not below the group modulus");
    const elgamal::Ciphertext hidden = elgamal::encrypt(m, recipient, rng);

    QrPayload payload;
    payload.flipped_static_key = flip_bit(static_key, position);
    payload.wrapped_dynamic_key = cipher::aes128_ecb_encrypt(dynamic_key, static_key);
    payload.meta = opts.meta;

    const GrayImage clean =
        codec.encode(payload.to_json(), opts.ec, opts.module_px, opts.quiet_modules);
    return embed_lsb(clean, elgamal::serialize_ciphertext(hidden));
}

cipher::Key receiver_recover(const GrayImage& stego, const elgamal::PrivateKey& priv,
                             const QrCodec& codec) {
    const QrPayload payload = QrPayload::from_json(codec.decode(stego));

    const Bytes hidden = extract_lsb(stego);
    const elgamal::BigInt m = elgamal::decrypt(elgamal::parse_ciphertext(hidden), priv);
    const Bytes hint_bytes = elgamal::bigint_to_bytes(m);
    const std::string hint(hint_bytes.begin(), hint_bytes.end());
    unsigned position = 0;
    try {
        position = hint_position(hint);
    } catch (const DomainError&) {
        throw CryptoError("receiver_recover: hint does not decode (wrong private key?)");
    }

    const cipher::Key static_key = flip_bit(payload.flipped_static_key, position);
    const Bytes dynamic = cipher::aes128_ecb_decrypt(payload.wrapped_dynamic_key, static_key);
    if (dynamic.size() != 16)
        throw CryptoError("receiver_recover: unwrapped key has the wrong size");
    cipher::Key out;
    std::copy(dynamic.begin(), dynamic.end(), out.begin());
    return out;
}

} // namespace maes::keydist
