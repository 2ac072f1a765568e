#include "maes/testimg.hpp"

#include <cmath>

#include "maes/rng.hpp"

namespace maes::testimg {

GrayImage gradient_h(std::uint32_t w, std::uint32_t h) {
    GrayImage img(w, h);
    for (std::uint32_t y = 0; y < h; ++y)
        for (std::uint32_t x = 0; x < w; ++x)
            img.at(x, y) = static_cast<std::uint8_t>(x * 255 / (w - 1));
    return img;
}

GrayImage gradient_v(std::uint32_t w, std::uint32_t h) {
    GrayImage img(w, h);
    for (std::uint32_t y = 0; y < h; ++y)
        for (std::uint32_t x = 0; x < w; ++x)
            img.at(x, y) = static_cast<std::uint8_t>(y * 255 / (h - 1));
    return img;
}

GrayImage gradient_diag(std::uint32_t w, std::uint32_t h) {
    GrayImage img(w, h);
    for (std::uint32_t y = 0; y < h; ++y)
        for (std::uint32_t x = 0; x < w; ++x)
            img.at(x, y) = static_cast<std::uint8_t>((x + y) * 255 / (w + h - 2));
    return img;
}

GrayImage checkerboard(std::uint32_t w, std::uint32_t h, std::uint32_t cell) {
    GrayImage img(w, h);
    for (std::uint32_t y = 0; y < h; ++y)
        for (std::uint32_t x = 0; x < w; ++x)
            img.at(x, y) = ((x / cell + y / cell) % 2) ? 255 : 0;
    return img;
}

GrayImage noise(std::uint32_t w, std::uint32_t h, std::uint64_t seed) {
    GrayImage img(w, h);
    Rng rng(seed);
    rng.fill(img.pixels);
    return img;
}

GrayImage constant(std::uint32_t w, std::uint32_t h, std::uint8_t value) {
    return GrayImage(w, h, value);
}

GrayImage rings(std::uint32_t w, std::uint32_t h) {
    GrayImage img(w, h);
    const double cx = w / 2.0, cy = h / 2.0;
    for (std::uint32_t y = 0; y < h; ++y)
        for (std::uint32_t x = 0; x < w; ++x) {
            const double r = std::hypot(x - cx, y - cy);
            img.at(x, y) =
                static_cast<std::uint8_t>(std::lround((std::sin(r / 8.0) * 0.5 + 0.5) * 255.0));
        }
    return img;
}

const std::vector<NamedImage>& corpus() {
    static const std::vector<NamedImage> images = [] {
        std::vector<NamedImage> v;
        v.push_back({"gradient-h", gradient_h(256, 256), true});
        v.push_back({"gradient-v", gradient_v(256, 256), true});
        v.push_back({"gradient-diag", gradient_diag(256, 256), true});
        v.push_back({"rings", rings(256, 256), true});
        v.push_back({"checker-32", checkerboard(256, 256, 32), true});
        v.push_back({"checker-8", checkerboard(256, 256, 8), false});
        v.push_back({"noise-1", noise(256, 256, 1), false});
        v.push_back({"noise-2", noise(256, 256, 2), false});
        v.push_back({"constant-0", constant(256, 256, 0), true});
        v.push_back({"constant-128", constant(256, 256, 128), true});
        return v;
    }();
    return images;
}

} // namespace maes::testimg
