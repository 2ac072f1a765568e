#include <algorithm>
#include <cmath>
#include <vector>

#include "maes/errors.hpp"
#include "maes/keydist.hpp"

// MatrixCodec layout, in modules:
//
//   quiet zone (white) | black frame (1) | white separator (1) |
//   data area D x D    | white separator | black frame | quiet zone
//
// Data-area row 0 is a timing row of alternating modules starting black; rows
// 1..D-1 carry the bit stream row-major, black = 1. The bit stream is
// header | payload, replicated per EC level, where the 12-byte header is
// magic 'M''C' | version | replication | u32 length | u32 crc32(payload).

namespace maes::keydist {

namespace {

constexpr std::uint8_t kMagic0 = 'M';
constexpr std::uint8_t kMagic1 = 'C';
constexpr std::uint8_t kVersion = 1;

unsigned replication(EcLevel ec) {
    switch (ec) {
        case EcLevel::L: return 1;
        case EcLevel::M: return 3;
        case EcLevel::Q: return 5;
        case EcLevel::H: return 7;
    }
    return 7;
}

std::uint32_t crc32(std::span<const std::uint8_t> data) {
    std::uint32_t crc = 0xFFFFFFFFu;
    for (std::uint8_t b : data) {
        crc ^= b;
        for (int k = 0; k < 8; ++k) crc = (crc >> 1) ^ (0xEDB88320u & (0u - (crc & 1u)));
    }
    return ~crc;
}

std::vector<bool> to_bits(std::span<const std::uint8_t> bytes) {
    std::vector<bool> bits;
    bits.reserve(bytes.size() * 8);
    for (std::uint8_t b : bytes)
        for (int k = 7; k >= 0; --k) bits.push_back((b >> k) & 1);
    return bits;
}

// Binarized view: true = black.
struct BitImage {
    std::uint32_t w, h;
    std::vector<bool> black;
    bool at(std::uint32_t x, std::uint32_t y) const { return black[std::size_t(y) * w + x]; }
};

BitImage binarize(const GrayImage& img) {
    BitImage b{img.width, img.height, std::vector<bool>(img.size())};
    for (std::size_t i = 0; i < img.size(); ++i) b.black[i] = img.pixels[i] < 128;
    return b;
}

double row_black_fraction(const BitImage& b, std::uint32_t y) {
    std::size_t n = 0;
    for (std::uint32_t x = 0; x < b.w; ++x) n += b.at(x, y);
    return double(n) / b.w;
}

double col_black_fraction(const BitImage& b, std::uint32_t x) {
    std::size_t n = 0;
    for (std::uint32_t y = 0; y < b.h; ++y) n += b.at(x, y);
    return double(n) / b.h;
}

// 3-wide median of a boolean scanline, kills isolated salt/pepper flips.
std::vector<bool> median3(const std::vector<bool>& v) {
    if (v.size() < 3) return v;
    std::vector<bool> out(v.size());
    out.front() = v.front();
    out.back() = v.back();
    for (std::size_t i = 1; i + 1 < v.size(); ++i)
        out[i] = (int(v[i - 1]) + int(v[i]) + int(v[i + 1])) >= 2;
    return out;
}

} // namespace

GrayImage MatrixCodec::encode(std::string_view text, EcLevel ec, unsigned module_px,
                              unsigned quiet_modules) const {
    if (module_px == 0 || module_px > 64) throw DomainError("matrix codec: bad module size");
    const unsigned rep = replication(ec);

    Bytes message = {kMagic0, kMagic1, kVersion, static_cast<std::uint8_t>(rep)};
    const auto len = static_cast<std::uint32_t>(text.size());
    for (int s = 24; s >= 0; s -= 8) message.push_back(static_cast<std::uint8_t>(len >> s));
    const std::uint32_t crc =
        crc32({reinterpret_cast<const std::uint8_t*>(text.data()), text.size()});
    for (int s = 24; s >= 0; s -= 8) message.push_back(static_cast<std::uint8_t>(crc >> s));
    message.insert(message.end(), text.begin(), text.end());

    std::vector<bool> bits;
    const std::vector<bool> one = to_bits(message);
    for (unsigned i = 0; i < rep; ++i) bits.insert(bits.end(), one.begin(), one.end());

    // D data columns by D-1 payload rows (row 0 is the timing row).
    std::uint32_t d = 16;
    while (std::size_t(d) * (d - 1) < bits.size()) ++d;

    const std::uint32_t core = d + 4; // frame + separator on each side
    const std::uint32_t side = (core + 2 * quiet_modules) * module_px;
    GrayImage img(side, side, 255);

    auto fill_module = [&](std::uint32_t mx, std::uint32_t my, bool black) {
        const std::uint32_t x0 = (quiet_modules + mx) * module_px;
        const std::uint32_t y0 = (quiet_modules + my) * module_px;
        for (std::uint32_t y = y0; y < y0 + module_px; ++y)
            for (std::uint32_t x = x0; x < x0 + module_px; ++x) img.at(x, y) = black ? 0 : 255;
    };

    for (std::uint32_t i = 0; i < core; ++i) {
        fill_module(i, 0, true);
        fill_module(i, core - 1, true);
        fill_module(0, i, true);
        fill_module(core - 1, i, true);
    }
    for (std::uint32_t j = 0; j < d; ++j) fill_module(2 + j, 2, j % 2 == 0); // timing row
    for (std::size_t k = 0; k < bits.size(); ++k) {
        const std::uint32_t row = 1 + static_cast<std::uint32_t>(k / d);
        const std::uint32_t col = static_cast<std::uint32_t>(k % d);
        fill_module(2 + col, 2 + row, bits[k]);
    }
    return img;
}

std::string MatrixCodec::decode(const GrayImage& img) const {
    if (img.size() == 0) throw FormatError("matrix codec: empty image");
    const BitImage bin = binarize(img);

    // Frame box: outermost rows/columns that are mostly black.
    std::uint32_t top = 0, bottom = bin.h - 1, left = 0, right = bin.w - 1;
    while (top < bin.h && row_black_fraction(bin, top) < 0.5) ++top;
    while (bottom > top && row_black_fraction(bin, bottom) < 0.5) --bottom;
    while (left < bin.w && col_black_fraction(bin, left) < 0.5) ++left;
    while (right > left && col_black_fraction(bin, right) < 0.5) --right;
    if (top >= bottom || left >= right) throw FormatError("matrix codec: no frame found");

    // Frame thickness: median black run length entering from the top edge.
    std::vector<std::uint32_t> runs;
    for (std::uint32_t x = left; x <= right; ++x) {
        std::uint32_t r = 0;
        for (std::uint32_t y = top; y <= bottom && bin.at(x, y); ++y) ++r;
        if (r > 0) runs.push_back(r);
    }
    if (runs.empty()) throw FormatError("matrix codec: no frame found");
    std::nth_element(runs.begin(), runs.begin() + runs.size() / 2, runs.end());
    const double t0 = runs[runs.size() / 2];

    // Timing row: count module runs to learn D.
    const double core_px = double(right) - left + 1;
    const long ty = long(top) + std::lround(2.5 * t0);
    const long x_lo = long(left) + std::lround(2.0 * t0);
    const long x_hi = long(right) - std::lround(2.0 * t0);
    if (ty > long(bottom) || x_lo < 0 || x_lo >= x_hi)
        throw FormatError("matrix codec: image too small for a timing row");
    std::vector<bool> scan;
    for (long x = x_lo; x <= x_hi; ++x)
        scan.push_back(bin.at(static_cast<std::uint32_t>(x), static_cast<std::uint32_t>(ty)));
    scan = median3(scan);
    std::uint32_t d_timing = 0;
    for (std::size_t i = 0; i < scan.size(); ++i)
        if (i == 0 || scan[i] != scan[i - 1]) ++d_timing;
    const long d_frame = std::lround(core_px / t0) - 4;

    auto attempt = [&](std::uint32_t d) -> std::string {
        if (d < 16 || d > core_px) throw FormatError("matrix codec: implausible grid size");
        const double t = core_px / (d + 4);

        auto module_black = [&](std::uint32_t mx, std::uint32_t my) {
            long x0 = std::lround(left + mx * t);
            long x1 = std::lround(left + (mx + 1) * t) - 1;
            long y0 = std::lround(top + my * t);
            long y1 = std::lround(top + (my + 1) * t) - 1;
            if (x1 - x0 >= 3) { ++x0; --x1; } // stay clear of blurred edges
            if (y1 - y0 >= 3) { ++y0; --y1; }
            int votes = 0, total = 0;
            for (long y = y0; y <= y1; ++y)
                for (long x = x0; x <= x1; ++x) {
                    if (x < 0 || y < 0 || x >= long(bin.w) || y >= long(bin.h)) continue;
                    ++total;
                    votes += bin.at(static_cast<std::uint32_t>(x), static_cast<std::uint32_t>(y));
                }
            return total > 0 && 2 * votes > total;
        };

        std::vector<bool> bits;
        bits.reserve(std::size_t(d) * (d - 1));
        for (std::uint32_t row = 1; row < d; ++row)
            for (std::uint32_t col = 0; col < d; ++col)
                bits.push_back(module_black(2 + col, 2 + row));

        auto read_bytes = [&bits](std::size_t bit_off, std::size_t count) {
            Bytes out(count, 0);
            for (std::size_t i = 0; i < count * 8; ++i) {
                if (bit_off + i >= bits.size())
                    throw FormatError("matrix codec: bit stream truncated");
                out[i / 8] = static_cast<std::uint8_t>(out[i / 8] << 1 | int(bits[bit_off + i]));
            }
            return out;
        };

        // Header from the first copy, then bitwise majority across replicas.
        // Module-level voting already makes single-copy bits reliable.
        const Bytes head = read_bytes(0, 12);
        if (head[0] != kMagic0 || head[1] != kMagic1 || head[2] != kVersion)
            throw FormatError("matrix codec: bad header");
        const unsigned rep = head[3];
        if (rep == 0 || rep > 9) throw FormatError("matrix codec: bad replication factor");
        std::uint32_t len = 0, crc_expect = 0;
        for (int i = 0; i < 4; ++i) len = len << 8 | head[4 + i];
        for (int i = 0; i < 4; ++i) crc_expect = crc_expect << 8 | head[8 + i];

        const std::size_t msg_bits = (12 + std::size_t(len)) * 8;
        if (msg_bits * rep > bits.size()) throw FormatError("matrix codec: bit stream truncated");
        std::vector<bool> voted(msg_bits);
        for (std::size_t i = 0; i < msg_bits; ++i) {
            unsigned v = 0;
            for (unsigned c = 0; c < rep; ++c) v += bits[c * msg_bits + i];
            voted[i] = 2 * v > rep;
        }
        Bytes message((msg_bits + 7) / 8, 0);
        for (std::size_t i = 0; i < msg_bits; ++i)
            message[i / 8] = static_cast<std::uint8_t>(message[i / 8] << 1 | int(voted[i]));

        const std::span<const std::uint8_t> payload(message.data() + 12, len);
        if (crc32(payload) != crc_expect) throw FormatError("matrix codec: checksum mismatch");
        return std::string(payload.begin(), payload.end());
    };

    // Grid-size candidates from the timing row and the frame thickness; the
    // payload checksum arbitrates.
    std::vector<std::uint32_t> candidates;
    auto push = [&candidates](long d) {
        if (d >= 16 && std::find(candidates.begin(), candidates.end(),
                                 static_cast<std::uint32_t>(d)) == candidates.end())
            candidates.push_back(static_cast<std::uint32_t>(d));
    };
    push(d_timing);
    push(d_frame);
    push(long(d_timing) - 1);
    push(long(d_timing) + 1);
    if (candidates.empty()) throw FormatError("matrix codec: timing row not recognized");

    std::string last_error = "matrix codec: undecodable";
    for (std::uint32_t d : candidates) {
        try {
            return attempt(d);
        } catch (const FormatError& e) {
            last_error = e.what();
        }
    }
    throw FormatError(last_error);
}

} // namespace maes::keydist
