#include "maes/pipeline.hpp"

#include <algorithm>

#include "maes/chaos.hpp"
#include "maes/errors.hpp"

namespace maes::pipeline {

void ChaoticParams::validate() const {
    auto unit_open = [](double v, const char* name) {
        if (!(v > 0.0 && v < 1.0))
            throw DomainError(std::string("chaotic parameter ") + name + " must lie in (0,1)");
    };
    unit_open(mask_seed, "mask_seed");
    unit_open(perm_seed, "perm_seed");
    unit_open(shift_seed, "shift_seed");
    unit_open(shuffle_seed, "shuffle_seed");
    if (!(r > 0.0 && r <= 4.0)) throw DomainError("chaotic parameter r must lie in (0,4]");
    if (!(henon_x0 > 0.0 && henon_x0 <= 1.0) || !(henon_y0 > 0.0 && henon_y0 <= 1.0))
        throw DomainError("henon seeds must lie in (0,1]");
    if (!(henon_a >= 1.0 && henon_a <= 1.4)) throw DomainError("henon a must lie in [1.0,1.4]");
    if (!(henon_b > 0.0 && henon_b < 1.0)) throw DomainError("henon b must lie in (0,1)");
}

Iv paper_iv() {
    return Iv{23, 145, 67, 89, 12, 200, 34, 222, 57, 104, 18, 73, 94, 161, 205, 19};
}

cipher::Key paper_key() {
    return cipher::Key{43, 40, 171, 9, 126, 174, 247, 207, 21, 210, 21, 79, 22, 166, 136, 60};
}

Bytes pad_to_block(std::span<const std::uint8_t> data) {
    Bytes out(data.begin(), data.end());
    out.resize((data.size() + 15) / 16 * 16, 0);
    return out;
}

Bytes mask_with_feedback(std::span<const std::uint8_t> data,
                         std::span<const std::uint8_t> keystream) {
    if (data.size() != keystream.size())
        throw DomainError("mask_with_feedback: data/keystream length mismatch");
    Bytes out(data.size());
    std::uint8_t prev = 0;
    for (std::size_t i = 0; i < data.size(); ++i) {
        prev = static_cast<std::uint8_t>(data[i] ^ keystream[i] ^ prev);
        out[i] = prev;
    }
    return out;
}

Bytes unmask_with_feedback(std::span<const std::uint8_t> masked,
                           std::span<const std::uint8_t> keystream) {
    if (masked.size() != keystream.size())
        throw DomainError("unmask_with_feedback: data/keystream length mismatch");
    Bytes out(masked.size());
    std::uint8_t prev = 0;
    for (std::size_t i = 0; i < masked.size(); ++i) {
        out[i] = static_cast<std::uint8_t>(masked[i] ^ keystream[i] ^ prev);
        prev = masked[i];
    }
    return out;
}

Bytes permute(std::span<const std::uint8_t> data, std::span<const std::uint32_t> perm) {
    if (data.size() != perm.size()) throw DomainError("permute: permutation length mismatch");
    Bytes out(data.size());
    for (std::size_t i = 0; i < data.size(); ++i) out[i] = data[perm[i]];
    return out;
}

Bytes unpermute(std::span<const std::uint8_t> data, std::span<const std::uint32_t> perm) {
    if (data.size() != perm.size()) throw DomainError("unpermute: permutation length mismatch");
    Bytes out(data.size());
    for (std::size_t i = 0; i < data.size(); ++i) out[perm[i]] = data[i];
    return out;
}

namespace {

cipher::Block block_at(std::span<const std::uint8_t> buf, std::size_t index) {
    cipher::Block b;
    std::copy_n(buf.begin() + 16 * index, 16, b.begin());
    return b;
}

cipher::Block xor_blocks(const cipher::Block& a, const cipher::Block& b) {
    cipher::Block out;
    for (int i = 0; i < 16; ++i) out[i] = static_cast<std::uint8_t>(a[i] ^ b[i]);
    return out;
}

std::vector<std::uint32_t> logistic_permutation(double seed, double r, std::size_t n) {
    const std::vector<double> seq = chaos::logistic_sequence(seed, r, n);
    return chaos::permutation_from_sequence(seq);
}

} // namespace

CipherImage encrypt_image(const GrayImage& img, const cipher::Key& key, const Iv& iv,
                          const ChaoticParams& params, bool post_shuffle) {
    params.validate();
    if (img.size() == 0) throw DomainError("encrypt_image: empty image");
    if (img.size() != static_cast<std::size_t>(img.width) * img.height)
        throw DomainError("encrypt_image: pixel buffer does not match dimensions");

    Bytes data = pad_to_block(img.pixels);
    const std::size_t n = data.size();
    const std::size_t nblocks = n / 16;

    // Diffuse before scattering: the feedback mask propagates any plaintext
    // change to every later byte, and the permutation then spreads the masked
    // bytes across all cipher blocks.
    data = mask_with_feedback(data, chaos::keystream_bytes(params.mask_seed, params.r, n));
    data = permute(data, logistic_permutation(params.perm_seed, params.r, n));

    chaos::SBoxResult sr = chaos::generate_sbox(params.henon_x0, params.henon_y0,
                                                params.henon_a, params.henon_b);
    const cipher::RoundKeys rks = cipher::expand_key(key, sr.sbox);

    CipherImage out;
    out.iv = iv;
    out.width = img.width;
    out.height = img.height;
    out.post_shuffle = post_shuffle;
    out.ciphertext.resize(n);

    cipher::Block prev;
    std::copy(iv.begin(), iv.end(), prev.begin());
    for (std::size_t i = 0; i < nblocks; ++i) {
        if (i > 0) {
            const chaos::HenonState seed = chaos::chain_seed(sr.state);
            sr = chaos::generate_sbox(seed.x, seed.y, params.henon_a, params.henon_b);
        }
        const chaos::ShiftPattern pattern =
            chaos::shift_pattern(params.shift_seed, params.r, i);
        const cipher::Block pt = xor_blocks(block_at(data, i), prev);
        const cipher::Block ct = cipher::encrypt_block(pt, rks, sr.sbox, pattern);
        std::copy(ct.begin(), ct.end(), out.ciphertext.begin() + 16 * i);
        prev = ct;
    }

    // Post-encryption chaining on the transformed output: C'[i] = C[i] ^ C'[i-1].
    for (std::size_t i = 1; i < nblocks; ++i)
        for (int j = 0; j < 16; ++j)
            out.ciphertext[16 * i + j] ^= out.ciphertext[16 * (i - 1) + j];

    if (post_shuffle)
        out.ciphertext = permute(out.ciphertext,
                                 logistic_permutation(params.shuffle_seed, params.r, n));
    return out;
}

GrayImage decrypt_image(const CipherImage& c, const cipher::Key& key,
                        const ChaoticParams& params) {
    params.validate();
    const std::size_t npix = static_cast<std::size_t>(c.width) * c.height;
    if (npix == 0) throw FormatError("decrypt_image: zero dimensions");
    if (c.ciphertext.size() != (npix + 15) / 16 * 16)
        throw FormatError("decrypt_image: ciphertext length does not match dimensions");

    Bytes ct = c.ciphertext;
    const std::size_t n = ct.size();
    const std::size_t nblocks = n / 16;

    if (c.post_shuffle)
        ct = unpermute(ct, logistic_permutation(params.shuffle_seed, params.r, n));

    // Undo the post-encryption chaining.
    for (std::size_t i = nblocks; i-- > 1;)
        for (int j = 0; j < 16; ++j) ct[16 * i + j] ^= ct[16 * (i - 1) + j];

    chaos::SBoxResult sr = chaos::generate_sbox(params.henon_x0, params.henon_y0,
                                                params.henon_a, params.henon_b);
    const cipher::RoundKeys rks = cipher::expand_key(key, sr.sbox);

    Bytes data(n);
    cipher::Block prev;
    std::copy(c.iv.begin(), c.iv.end(), prev.begin());
    for (std::size_t i = 0; i < nblocks; ++i) {
        if (i > 0) {
            const chaos::HenonState seed = chaos::chain_seed(sr.state);
            sr = chaos::generate_sbox(seed.x, seed.y, params.henon_a, params.henon_b);
        }
        const chaos::ShiftPattern pattern =
            chaos::shift_pattern(params.shift_seed, params.r, i);
        const cipher::Block ct_block = block_at(ct, i);
        const cipher::Block pt = xor_blocks(
            cipher::decrypt_block(ct_block, rks, sr.sbox, pattern), prev);
        std::copy(pt.begin(), pt.end(), data.begin() + 16 * i);
        prev = ct_block;
    }

    data = unpermute(data, logistic_permutation(params.perm_seed, params.r, n));
    data = unmask_with_feedback(data, chaos::keystream_bytes(params.mask_seed, params.r, n));

    GrayImage img(c.width, c.height);
    std::copy_n(data.begin(), npix, img.pixels.begin());
    return img;
}

namespace {

constexpr std::uint8_t kMagic[4] = {'M', 'A', 'E', '1'};
constexpr std::uint8_t kVersion = 1;
constexpr std::uint8_t kFlagPostShuffle = 0x01;

void put_u32(Bytes& out, std::uint32_t v) {
    out.push_back(static_cast<std::uint8_t>(v >> 24));
    out.push_back(static_cast<std::uint8_t>(v >> 16));
    out.push_back(static_cast<std::uint8_t>(v >> 8));
    out.push_back(static_cast<std::uint8_t>(v));
}

std::uint32_t get_u32(std::span<const std::uint8_t> d, std::size_t off) {
    return static_cast<std::uint32_t>(d[off]) << 24 | static_cast<std::uint32_t>(d[off + 1]) << 16 |
           static_cast<std::uint32_t>(d[off + 2]) << 8 | static_cast<std::uint32_t>(d[off + 3]);
}

} // namespace

Bytes write_container(const CipherImage& c) {
    Bytes out;
    out.reserve(30 + c.ciphertext.size());
    out.insert(out.end(), std::begin(kMagic), std::end(kMagic));
    out.push_back(kVersion);
    out.push_back(c.post_shuffle ? kFlagPostShuffle : 0);
    put_u32(out, c.width);
    put_u32(out, c.height);
    out.insert(out.end(), c.iv.begin(), c.iv.end());
    out.insert(out.end(), c.ciphertext.begin(), c.ciphertext.end());
    return out;
}

CipherImage read_container(std::span<const std::uint8_t> data) {
    if (data.size() < 30) throw FormatError("container: truncated header");
    if (!std::equal(std::begin(kMagic), std::end(kMagic), data.begin()))
        throw FormatError("container: bad magic");
    if (data[4] != kVersion) throw FormatError("container: unsupported version");
    const std::uint8_t flags = data[5];
    if (flags & ~kFlagPostShuffle) throw FormatError("container: unknown flags");

    CipherImage c;
    c.post_shuffle = (flags & kFlagPostShuffle) != 0;
    c.width = get_u32(data, 6);
    c.height = get_u32(data, 10);
    std::copy_n(data.begin() + 14, 16, c.iv.begin());

    const std::size_t npix = static_cast<std::size_t>(c.width) * c.height;
    if (npix == 0) throw FormatError("container: zero dimensions");
    const std::size_t expect = (npix + 15) / 16 * 16;
    if (data.size() - 30 != expect)
        throw FormatError("container: ciphertext length does not match dimensions");
    c.ciphertext.assign(data.begin() + 30, data.end());
    return c;
}

} // namespace maes::pipeline
