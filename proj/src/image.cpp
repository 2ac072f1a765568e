#include "maes/image.hpp"

#include <cmath>
#include <cstring>

#include "maes/errors.hpp"

namespace maes {

namespace {

// PNM header tokenizer: skips whitespace and '#' comments.
class PnmReader {
public:
    explicit PnmReader(std::span<const std::uint8_t> data) : data_(data) {}

    std::string token() {
        skip_space();
        std::string t;
        while (pos_ < data_.size() && !std::isspace(data_[pos_])) t.push_back(static_cast<char>(data_[pos_++]));
        if (t.empty()) throw FormatError("pnm: truncated header");
        return t;
    }

    std::uint32_t number() {
        const std::string t = token();
        std::uint32_t v = 0;
        for (char c : t) {
            if (c < '0' || c > '9') throw FormatError("pnm: bad number in header");
            v = v * 10 + static_cast<std::uint32_t>(c - '0');
            if (v > 1'000'000'000) throw FormatError("pnm: header number out of range");
        }
        return v;
    }

    std::span<const std::uint8_t> raster() {
        if (pos_ >= data_.size() || !std::isspace(data_[pos_]))
            throw FormatError("pnm: missing raster separator");
        ++pos_; // exactly one whitespace byte before the raster
        return data_.subspan(pos_);
    }

private:
    void skip_space() {
        while (pos_ < data_.size()) {
            if (std::isspace(data_[pos_])) {
                ++pos_;
            } else if (data_[pos_] == '#') {
                while (pos_ < data_.size() && data_[pos_] != '\n') ++pos_;
            } else {
                break;
            }
        }
    }

    std::span<const std::uint8_t> data_;
    std::size_t pos_ = 0;
};

} // namespace

GrayImage parse_pgm(std::span<const std::uint8_t> data) {
    PnmReader rd(data);
    const std::string magic = rd.token();
    if (magic != "P5" && magic != "P6") throw FormatError("pnm: expected P5 or P6");
    const std::uint32_t w = rd.number();
    const std::uint32_t h = rd.number();
    const std::uint32_t maxval = rd.number();
    if (w == 0 || h == 0) throw FormatError("pnm: zero dimension");
    if (maxval != 255) throw FormatError("pnm: only maxval 255 is supported");
    const std::span<const std::uint8_t> raster = rd.raster();
    const std::size_t npix = static_cast<std::size_t>(w) * h;

    GrayImage img(w, h);
    if (magic == "P5") {
        if (raster.size() < npix) throw FormatError("pgm: raster shorter than header claims");
        std::memcpy(img.pixels.data(), raster.data(), npix);
    } else {
        if (raster.size() < npix * 3) throw FormatError("ppm: raster shorter than header claims");
        for (std::size_t i = 0; i < npix; ++i) {
            const double r = raster[3 * i], g = raster[3 * i + 1], b = raster[3 * i + 2];
            const long v = std::lround(0.299 * r + 0.587 * g + 0.114 * b);
            img.pixels[i] = static_cast<std::uint8_t>(v < 0 ? 0 : (v > 255 ? 255 : v));
        }
    }
    return img;
}

GrayImage read_pgm(const std::string& path) {
    return parse_pgm(load_file(path));
}

Bytes serialize_pgm(const GrayImage& img) {
    if (img.size() != static_cast<std::size_t>(img.width) * img.height)
        throw DomainError("pgm: pixel buffer does not match dimensions");
    const std::string header =
        "P5\n" + std::to_string(img.width) + " " + std::to_string(img.height) + "\n255\n";
    Bytes out(header.begin(), header.end());
    out.insert(out.end(), img.pixels.begin(), img.pixels.end());
    return out;
}

void write_pgm(const GrayImage& img, const std::string& path) {
    save_file(path, serialize_pgm(img));
}

} // namespace maes
