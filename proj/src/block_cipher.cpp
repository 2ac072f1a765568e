#include "maes/block_cipher.hpp"

#include "maes/errors.hpp"

namespace maes::cipher {

namespace {

constexpr std::uint8_t kAesSbox[256] = {
    0x63, 0x7c, 0x77, 0x7b, 0xf2, 0x6b, 0x6f, 0xc5, 0x30, 0x01, 0x67, 0x2b, 0xfe, 0xd7, 0xab, 0x76,
    0xca, 0x82, 0xc9, 0x7d, 0xfa, 0x59, 0x47, 0xf0, 0xad, 0xd4, 0xa2, 0xaf, 0x9c, 0xa4, 0x72, 0xc0,
    0xb7, 0xfd, 0x93, 0x26, 0x36, 0x3f, 0xf7, 0xcc, 0x34, 0xa5, 0xe5, 0xf1, 0x71, 0xd8, 0x31, 0x15,
    0x04, 0xc7, 0x23, 0xc3, 0x18, 0x96, 0x05, 0x9a, 0x07, 0x12, 0x80, 0xe2, 0xeb, 0x27, 0xb2, 0x75,
    0x09, 0x83, 0x2c, 0x1a, 0x1b, 0x6e, 0x5a, 0xa0, 0x52, 0x3b, 0xd6, 0xb3, 0x29, 0xe3, 0x2f, 0x84,
    0x53, 0xd1, 0x00, 0xed, 0x20, 0xfc, 0xb1, 0x5b, 0x6a, 0xcb, 0xbe, 0x39, 0x4a, 0x4c, 0x58, 0xcf,
    0xd0, 0xef, 0xaa, 0xfb, 0x43, 0x4d, 0x33, 0x85, 0x45, 0xf9, 0x02, 0x7f, 0x50, 0x3c, 0x9f, 0xa8,
    0x51, 0xa3, 0x40, 0x8f, 0x92, 0x9d, 0x38, 0xf5, 0xbc, 0xb6, 0xda, 0x21, 0x10, 0xff, 0xf3, 0xd2,
    0xcd, 0x0c, 0x13, 0xec, 0x5f, 0x97, 0x44, 0x17, 0xc4, 0xa7, 0x7e, 0x3d, 0x64, 0x5d, 0x19, 0x73,
    0x60, 0x81, 0x4f, 0xdc, 0x22, 0x2a, 0x90, 0x88, 0x46, 0xee, 0xb8, 0x14, 0xde, 0x5e, 0x0b, 0xdb,
    0xe0, 0x32, 0x3a, 0x0a, 0x49, 0x06, 0x24, 0x5c, 0xc2, 0xd3, 0xac, 0x62, 0x91, 0x95, 0xe4, 0x79,
    0xe7, 0xc8, 0x37, 0x6d, 0x8d, 0xd5, 0x4e, 0xa9, 0x6c, 0x56, 0xf4, 0xea, 0x65, 0x7a, 0xae, 0x08,
    0xba, 0x78, 0x25, 0x2e, 0x1c, 0xa6, 0xb4, 0xc6, 0xe8, 0xdd, 0x74, 0x1f, 0x4b, 0xbd, 0x8b, 0x8a,
    0x70, 0x3e, 0xb5, 0x66, 0x48, 0x03, 0xf6, 0x0e, 0x61, 0x35, 0x57, 0xb9, 0x86, 0xc1, 0x1d, 0x9e,
    0xe1, 0xf8, 0x98, 0x11, 0x69, 0xd9, 0x8e, 0x94, 0x9b, 0x1e, 0x87, 0xe9, 0xce, 0x55, 0x28, 0xdf,
    0x8c, 0xa1, 0x89, 0x0d, 0xbf, 0xe6, 0x42, 0x68, 0x41, 0x99, 0x2d, 0x0f, 0xb0, 0x54, 0xbb, 0x16};

constexpr std::uint8_t kRcon[10] = {0x01, 0x02, 0x04, 0x08, 0x10,
                                    0x20, 0x40, 0x80, 0x1b, 0x36};

inline std::uint8_t xtime(std::uint8_t b) {
    return static_cast<std::uint8_t>((b << 1) ^ ((b & 0x80) ? 0x1B : 0x00));
}

} // namespace

const chaos::SBox& standard_sbox() {
    static const chaos::SBox box = [] {
        chaos::SBox b;
        for (int i = 0; i < 256; ++i) b.forward[i] = kAesSbox[i];
        for (int i = 0; i < 256; ++i) b.inverse[b.forward[i]] = static_cast<std::uint8_t>(i);
        return b;
    }();
    return box;
}

chaos::ShiftPattern standard_shift_pattern() {
    return chaos::ShiftPattern{{0, 1, 2, 3}};
}

std::uint8_t gf_mul(std::uint8_t a, std::uint8_t b) {
    std::uint8_t p = 0;
    while (b) {
        if (b & 1) p ^= a;
        a = xtime(a);
        b >>= 1;
    }
    return p;
}

Block sub_bytes(Block state, const chaos::SBox& sbox) {
    for (auto& b : state) b = sbox.forward[b];
    return state;
}

Block inv_sub_bytes(Block state, const chaos::SBox& sbox) {
    for (auto& b : state) b = sbox.inverse[b];
    return state;
}

Block shift_rows(Block state, const chaos::ShiftPattern& pattern) {
    Block out;
    for (int r = 0; r < 4; ++r) {
        const int s = pattern.shifts[r] & 3;
        for (int c = 0; c < 4; ++c) out[r + 4 * c] = state[r + 4 * ((c + s) & 3)];
    }
    return out;
}

Block inv_shift_rows(Block state, const chaos::ShiftPattern& pattern) {
    Block out;
    for (int r = 0; r < 4; ++r) {
        const int s = pattern.shifts[r] & 3;
        for (int c = 0; c < 4; ++c) out[r + 4 * ((c + s) & 3)] = state[r + 4 * c];
    }
    return out;
}

Block mix_columns(Block state) {
    Block out;
    for (int c = 0; c < 4; ++c) {
        const std::uint8_t* a = &state[4 * c];
        out[4 * c + 0] = xtime(a[0]) ^ (xtime(a[1]) ^ a[1]) ^ a[2] ^ a[3];
        out[4 * c + 1] = a[0] ^ xtime(a[1]) ^ (xtime(a[2]) ^ a[2]) ^ a[3];
        out[4 * c + 2] = a[0] ^ a[1] ^ xtime(a[2]) ^ (xtime(a[3]) ^ a[3]);
        out[4 * c + 3] = (xtime(a[0]) ^ a[0]) ^ a[1] ^ a[2] ^ xtime(a[3]);
    }
    return out;
}

Block inv_mix_columns(Block state) {
    Block out;
    for (int c = 0; c < 4; ++c) {
        const std::uint8_t* a = &state[4 * c];
        out[4 * c + 0] = gf_mul(a[0], 0x0e) ^ gf_mul(a[1], 0x0b) ^ gf_mul(a[2], 0x0d) ^ gf_mul(a[3], 0x09);
        out[4 * c + 1] = gf_mul(a[0], 0x09) ^ gf_mul(a[1], 0x0e) ^ gf_mul(a[2], 0x0b) ^ gf_mul(a[3], 0x0d);
        out[4 * c + 2] = gf_mul(a[0], 0x0d) ^ gf_mul(a[1], 0x09) ^ gf_mul(a[2], 0x0e) ^ gf_mul(a[3], 0x0b);
        out[4 * c + 3] = gf_mul(a[0], 0x0b) ^ gf_mul(a[1], 0x0d) ^ gf_mul(a[2], 0x09) ^ gf_mul(a[3], 0x0e);
    }
    return out;
}

Block add_round_key(Block state, std::span<const std::uint8_t> round_key) {
    for (int i = 0; i < 16; ++i) state[i] ^= round_key[i];
    return state;
}

RoundKeys expand_key(const Key& key, const chaos::SBox& sbox) {
    RoundKeys w;
    for (int i = 0; i < 16; ++i) w[i] = key[i];
    for (int i = 4; i < 44; ++i) {
        std::uint8_t t[4] = {w[4 * (i - 1)], w[4 * (i - 1) + 1], w[4 * (i - 1) + 2],
                             w[4 * (i - 1) + 3]};
        if (i % 4 == 0) {
            const std::uint8_t tmp = t[0]; // RotWord
            t[0] = sbox.forward[t[1]];     // SubWord through the supplied box
            t[1] = sbox.forward[t[2]];
            t[2] = sbox.forward[t[3]];
            t[3] = sbox.forward[tmp];
            t[0] ^= kRcon[i / 4 - 1];
        }
        for (int j = 0; j < 4; ++j) w[4 * i + j] = w[4 * (i - 4) + j] ^ t[j];
    }
    return w;
}

Block encrypt_block(const Block& block, const RoundKeys& rks,
                    const chaos::SBox& sbox, const chaos::ShiftPattern& pattern) {
    Block st = add_round_key(block, std::span(rks).subspan(0, 16));
    for (int round = 1; round <= 9; ++round) {
        st = sub_bytes(st, sbox);
        st = shift_rows(st, pattern);
        st = mix_columns(st);
        st = add_round_key(st, std::span(rks).subspan(16 * round, 16));
    }
    st = sub_bytes(st, sbox);
    st = shift_rows(st, pattern);
    return add_round_key(st, std::span(rks).subspan(160, 16));
}

Block decrypt_block(const Block& block, const RoundKeys& rks,
                    const chaos::SBox& sbox, const chaos::ShiftPattern& pattern) {
    Block st = add_round_key(block, std::span(rks).subspan(160, 16));
    st = inv_shift_rows(st, pattern);
    st = inv_sub_bytes(st, sbox);
    for (int round = 9; round >= 1; --round) {
        st = add_round_key(st, std::span(rks).subspan(16 * round, 16));
        st = inv_mix_columns(st);
        st = inv_shift_rows(st, pattern);
        st = inv_sub_bytes(st, sbox);
    }
    return add_round_key(st, std::span(rks).subspan(0, 16));
}

// ---- classical AES-128 ECB, separate code path ----

namespace {

void classic_encrypt_block(std::uint8_t* blk, const RoundKeys& w) {
    const chaos::SBox& box = standard_sbox();
    Block b;
    std::copy(blk, blk + 16, b.begin());
    b = encrypt_block(b, w, box, standard_shift_pattern());
    std::copy(b.begin(), b.end(), blk);
}

} // namespace

Bytes aes128_ecb_encrypt(std::span<const std::uint8_t> data, const Key& key) {
    const RoundKeys w = expand_key(key, standard_sbox());
    const std::size_t pad = 16 - data.size() % 16;
    Bytes out(data.begin(), data.end());
    out.insert(out.end(), pad, static_cast<std::uint8_t>(pad));
    for (std::size_t off = 0; off < out.size(); off += 16) classic_encrypt_block(&out[off], w);
    return out;
}

Bytes aes128_ecb_decrypt(std::span<const std::uint8_t> data, const Key& key) {
    if (data.empty() || data.size() % 16 != 0)
        throw CryptoError("aes128_ecb_decrypt: length not a positive multiple of 16");
    const RoundKeys w = expand_key(key, standard_sbox());
    Bytes out(data.begin(), data.end());
    for (std::size_t off = 0; off < out.size(); off += 16) {
        Block b;
        std::copy(&out[off], &out[off] + 16, b.begin());
        b = decrypt_block(b, w, standard_sbox(), standard_shift_pattern());
        std::copy(b.begin(), b.end(), &out[off]);
    }
    const std::uint8_t pad = out.back();
    if (pad == 0 || pad > 16 || pad > out.size())
        throw CryptoError("aes128_ecb_decrypt: bad padding");
    for (std::size_t i = out.size() - pad; i < out.size(); ++i)
        if (out[i] != pad) throw CryptoError("aes128_ecb_decrypt: bad padding");
    out.resize(out.size() - pad);
    return out;
}

} // namespace maes::cipher
