#pragma once

#include <memory>
#include <string>
#include <string_view>

#include "maes/block_cipher.hpp"
#include "maes/elgamal.hpp"
#include "maes/image.hpp"
#include "maes/rng.hpp"

namespace maes::keydist {

// Toggles one key bit. Bit 0 is the most significant bit of byte 0.
cipher::Key flip_bit(const cipher::Key& key, unsigned position);

// Uppercase text of length 2-4 whose ASCII sum is `position` mod 128. The
// length and letters are sampled uniformly among the valid choices so hints
// for the same position are unlinkable.
std::string make_hint(unsigned position, Rng& rng);

// ASCII sum mod 128; rejects empty or non-ASCII input.
unsigned hint_position(std::string_view msg);

// LSB steganography. Header: magic 0x53 0x47, then a u32 big-endian byte
// length; bits go MSB-first into pixel LSBs in row-major order.
GrayImage embed_lsb(const GrayImage& img, std::span<const std::uint8_t> payload);
Bytes extract_lsb(const GrayImage& img);

enum class EcLevel { L, M, Q, H };

// Pluggable machine-readable-code boundary. encode renders text as a
// black/white module grid; decode recovers the text from such an image.
class QrCodec {
public:
    virtual ~QrCodec() = default;
    virtual GrayImage encode(std::string_view text, EcLevel ec, unsigned module_px,
                             unsigned quiet_modules) const = 0;
    virtual std::string decode(const GrayImage& img) const = 0;
};

// Built-in codec: a framed binary module grid with a timing row, bitwise
// replication per EC level with majority vote, and a CRC over the payload.
// Decodes through threshold-128 binarization, so it tolerates additive noise,
// blur and moderate salt-and-pepper corruption.
class MatrixCodec final : public QrCodec {
public:
    GrayImage encode(std::string_view text, EcLevel ec, unsigned module_px,
                     unsigned quiet_modules) const override;
    std::string decode(const GrayImage& img) const override;
};

// Scannable payload: flipped static key (hex) and wrapped dynamic key (base64
// of the 32-byte AES-ECB blob), plus optional metadata. Wire form is a
// single-line JSON object.
struct QrPayload {
    cipher::Key flipped_static_key{};
    Bytes wrapped_dynamic_key;
    std::string meta;

    std::string to_json() const;
    static QrPayload from_json(std::string_view text);
};

struct PackageOptions {
    EcLevel ec = EcLevel::H;
    unsigned module_px = 4;
    unsigned quiet_modules = 4;
    std::string meta;
};

// Sender side: flips a random static-key bit, hides the ElGamal-encrypted
// hint in the rendered code's LSB plane and ships the wrapped dynamic key in
// the visible payload.
GrayImage sender_package(const cipher::Key& static_key, const cipher::Key& dynamic_key,
                         const elgamal::PublicKey& recipient, const QrCodec& codec,
                         Rng& rng, const PackageOptions& opts = {});

// Receiver side: decode, extract, decrypt the hint, restore the static key and
// unwrap the dynamic key. Every stage fails loudly.
cipher::Key receiver_recover(const GrayImage& stego, const elgamal::PrivateKey& priv,
                             const QrCodec& codec);

} // namespace maes::keydist
