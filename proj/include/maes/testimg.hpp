#pragma once

#include <string>
#include <vector>

#include "maes/image.hpp"

namespace maes::testimg {

// Programmatically generated stand-ins, so the repository carries no
// third-party images.
GrayImage gradient_h(std::uint32_t w, std::uint32_t h);
GrayImage gradient_v(std::uint32_t w, std::uint32_t h);
GrayImage gradient_diag(std::uint32_t w, std::uint32_t h);
GrayImage checkerboard(std::uint32_t w, std::uint32_t h, std::uint32_t cell);
GrayImage noise(std::uint32_t w, std::uint32_t h, std::uint64_t seed);
GrayImage constant(std::uint32_t w, std::uint32_t h, std::uint8_t value);
GrayImage rings(std::uint32_t w, std::uint32_t h);

struct NamedImage {
    std::string name;
    GrayImage image;
    bool natural_like; // smooth/mid-frequency, comparable to photographic content
};

// The bundled 256x256 corpus used by the acceptance suite and --reproduce-paper.
const std::vector<NamedImage>& corpus();

} // namespace maes::testimg
