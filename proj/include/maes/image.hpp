#pragma once

#include <cstdint>
#include <string>

#include "maes/util.hpp"

namespace maes {

// 8-bit grayscale image, row-major.
struct GrayImage {
    std::uint32_t width = 0;
    std::uint32_t height = 0;
    Bytes pixels;

    GrayImage() = default;
    GrayImage(std::uint32_t w, std::uint32_t h, std::uint8_t fill = 0)
        : width(w), height(h), pixels(static_cast<std::size_t>(w) * h, fill) {}

    std::size_t size() const { return pixels.size(); }

    std::uint8_t& at(std::uint32_t x, std::uint32_t y) {
        return pixels[static_cast<std::size_t>(y) * width + x];
    }
    std::uint8_t at(std::uint32_t x, std::uint32_t y) const {
        return pixels[static_cast<std::size_t>(y) * width + x];
    }

    bool operator==(const GrayImage&) const = default;
};

// Reads a binary PGM (P5, maxval 255). A binary PPM (P6) is accepted and
// converted to grayscale with integer luma round(0.299R + 0.587G + 0.114B).
GrayImage read_pgm(const std::string& path);
GrayImage parse_pgm(std::span<const std::uint8_t> data);

void write_pgm(const GrayImage& img, const std::string& path);
Bytes serialize_pgm(const GrayImage& img);

} // namespace maes
