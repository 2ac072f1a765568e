#include "maes/analysis.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <limits>
#include <sstream>

#include "maes/errors.hpp"
#include "maes/keydist.hpp"

namespace maes::analysis {

double entropy(std::span<const std::uint8_t> data) {
    if (data.empty()) throw DomainError("entropy: empty input");
    std::array<std::size_t, 256> hist{};
    for (std::uint8_t b : data) ++hist[b];
    double h = 0.0;
    const double n = static_cast<double>(data.size());
    for (std::size_t c : hist) {
        if (c == 0) continue;
        const double p = c / n;
        h -= p * std::log2(p);
    }
    return h;
}

double entropy(const GrayImage& img) { return entropy(std::span(img.pixels)); }

double correlation(const GrayImage& img, Direction dir, std::size_t n_pairs, Rng& rng) {
    const int dx = dir == Direction::Vertical ? 0 : 1;
    const int dy = dir == Direction::Horizontal ? 0 : 1;
    if (img.width <= static_cast<std::uint32_t>(dx) || img.height <= static_cast<std::uint32_t>(dy))
        throw DomainError("correlation: image too small for this direction");

    const std::uint32_t aw = img.width - dx;
    const std::uint32_t ah = img.height - dy;
    const std::size_t total = std::size_t(aw) * ah;
    const std::size_t n = std::min(n_pairs, total);
    if (n < 2) throw DomainError("correlation: not enough pixel pairs");

    // Selection sampling over anchor indices: uniform, without replacement.
    std::vector<double> xs, ys;
    xs.reserve(n);
    ys.reserve(n);
    std::size_t needed = n;
    for (std::size_t idx = 0; idx < total && needed > 0; ++idx) {
        if (rng.below(total - idx) < needed) {
            const std::uint32_t ax = static_cast<std::uint32_t>(idx % aw);
            const std::uint32_t ay = static_cast<std::uint32_t>(idx / aw);
            xs.push_back(img.at(ax, ay));
            ys.push_back(img.at(ax + dx, ay + dy));
            --needed;
        }
    }

    double ex = 0, ey = 0;
    for (std::size_t i = 0; i < n; ++i) {
        ex += xs[i];
        ey += ys[i];
    }
    ex /= n;
    ey /= n;
    double cov = 0, dxv = 0, dyv = 0;
    for (std::size_t i = 0; i < n; ++i) {
        cov += (xs[i] - ex) * (ys[i] - ey);
        dxv += (xs[i] - ex) * (xs[i] - ex);
        dyv += (ys[i] - ey) * (ys[i] - ey);
    }
    if (dxv == 0.0 || dyv == 0.0) return 0.0; // degenerate sample
    return cov / (std::sqrt(dxv) * std::sqrt(dyv));
}

namespace {

void check_same_size(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b,
                     const char* who) {
    if (a.size() != b.size() || a.empty())
        throw DomainError(std::string(who) + ": inputs must be non-empty and equally sized");
}

} // namespace

double npcr(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b) {
    check_same_size(a, b, "npcr");
    std::size_t diff = 0;
    for (std::size_t i = 0; i < a.size(); ++i) diff += a[i] != b[i];
    return 100.0 * diff / a.size();
}

double uaci(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b) {
    check_same_size(a, b, "uaci");
    double sum = 0;
    for (std::size_t i = 0; i < a.size(); ++i) sum += std::abs(int(a[i]) - int(b[i]));
    return 100.0 * sum / (255.0 * a.size());
}

double uaci_mod256(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b) {
    check_same_size(a, b, "uaci_mod256");
    double sum = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        sum += static_cast<std::uint8_t>(a[i] - b[i]);
    return 100.0 * sum / (255.0 * a.size());
}

double mse(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b) {
    check_same_size(a, b, "mse");
    double sum = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = double(a[i]) - double(b[i]);
        sum += d * d;
    }
    return sum / a.size();
}

double psnr(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b) {
    const double m = mse(a, b);
    if (m == 0.0) return std::numeric_limits<double>::infinity();
    return 10.0 * std::log10(255.0 * 255.0 / m);
}

namespace {

std::vector<double> gaussian_kernel(int radius, double sigma) {
    std::vector<double> k(2 * radius + 1);
    double sum = 0;
    for (int i = -radius; i <= radius; ++i) {
        k[i + radius] = std::exp(-(i * i) / (2.0 * sigma * sigma));
        sum += k[i + radius];
    }
    for (double& v : k) v /= sum;
    return k;
}

// Separable valid-mode Gaussian filtering of a double field.
std::vector<double> filter_valid(const std::vector<double>& f, std::uint32_t w, std::uint32_t h,
                                 const std::vector<double>& k, std::uint32_t& ow,
                                 std::uint32_t& oh) {
    const int radius = static_cast<int>(k.size() / 2);
    ow = w - 2 * radius;
    oh = h - 2 * radius;
    std::vector<double> tmp(std::size_t(ow) * h, 0.0);
    for (std::uint32_t y = 0; y < h; ++y)
        for (std::uint32_t x = 0; x < ow; ++x) {
            double s = 0;
            for (std::size_t i = 0; i < k.size(); ++i) s += k[i] * f[std::size_t(y) * w + x + i];
            tmp[std::size_t(y) * ow + x] = s;
        }
    std::vector<double> out(std::size_t(ow) * oh, 0.0);
    for (std::uint32_t y = 0; y < oh; ++y)
        for (std::uint32_t x = 0; x < ow; ++x) {
            double s = 0;
            for (std::size_t i = 0; i < k.size(); ++i) s += k[i] * tmp[(std::size_t(y) + i) * ow + x];
            out[std::size_t(y) * ow + x] = s;
        }
    return out;
}

} // namespace

double ssim(const GrayImage& a, const GrayImage& b) {
    if (a.width != b.width || a.height != b.height)
        throw DomainError("ssim: image dimensions differ");
    if (a.width < 11 || a.height < 11) throw DomainError("ssim: images must be at least 11x11");

    const double c1 = (0.01 * 255) * (0.01 * 255);
    const double c2 = (0.03 * 255) * (0.03 * 255);
    const std::vector<double> k = gaussian_kernel(5, 1.5);

    const std::size_t n = a.size();
    std::vector<double> fa(n), fb(n), faa(n), fbb(n), fab(n);
    for (std::size_t i = 0; i < n; ++i) {
        fa[i] = a.pixels[i];
        fb[i] = b.pixels[i];
        faa[i] = fa[i] * fa[i];
        fbb[i] = fb[i] * fb[i];
        fab[i] = fa[i] * fb[i];
    }

    std::uint32_t ow = 0, oh = 0;
    const auto mu_a = filter_valid(fa, a.width, a.height, k, ow, oh);
    const auto mu_b = filter_valid(fb, a.width, a.height, k, ow, oh);
    const auto raw_aa = filter_valid(faa, a.width, a.height, k, ow, oh);
    const auto raw_bb = filter_valid(fbb, a.width, a.height, k, ow, oh);
    const auto raw_ab = filter_valid(fab, a.width, a.height, k, ow, oh);

    double total = 0;
    for (std::size_t i = 0; i < mu_a.size(); ++i) {
        const double va = raw_aa[i] - mu_a[i] * mu_a[i];
        const double vb = raw_bb[i] - mu_b[i] * mu_b[i];
        const double cov = raw_ab[i] - mu_a[i] * mu_b[i];
        const double num = (2 * mu_a[i] * mu_b[i] + c1) * (2 * cov + c2);
        const double den = (mu_a[i] * mu_a[i] + mu_b[i] * mu_b[i] + c1) * (va + vb + c2);
        total += num / den;
    }
    return total / mu_a.size();
}

Glcm glcm(const GrayImage& img, unsigned levels, int dx, int dy) {
    if (levels < 2 || levels > 256) throw DomainError("glcm: levels must lie in 2..256");
    if ((dx == 0 && dy == 0) || std::abs(dx) >= int(img.width) || std::abs(dy) >= int(img.height))
        throw DomainError("glcm: offset out of range");

    Glcm g;
    g.levels = levels;
    g.dx = dx;
    g.dy = dy;
    g.p.assign(std::size_t(levels) * levels, 0.0);

    auto quant = [levels](std::uint8_t p) { return static_cast<unsigned>(p * levels / 256); };

    std::size_t count = 0;
    const std::uint32_t x0 = dx < 0 ? -dx : 0, x1 = img.width - (dx > 0 ? dx : 0);
    const std::uint32_t y0 = dy < 0 ? -dy : 0, y1 = img.height - (dy > 0 ? dy : 0);
    for (std::uint32_t y = y0; y < y1; ++y)
        for (std::uint32_t x = x0; x < x1; ++x) {
            const unsigned a = quant(img.at(x, y));
            const unsigned b = quant(img.at(x + dx, y + dy));
            g.p[std::size_t(a) * levels + b] += 1.0;
            ++count;
        }
    if (count == 0) throw DomainError("glcm: no pixel pairs at this offset");
    for (double& v : g.p) v /= static_cast<double>(count);
    return g;
}

double homogeneity(const Glcm& g) {
    double h = 0;
    for (unsigned a = 0; a < g.levels; ++a)
        for (unsigned b = 0; b < g.levels; ++b)
            h += g.at(a, b) / (1.0 + std::abs(int(a) - int(b)));
    return h;
}

double energy(const Glcm& g) {
    double e = 0;
    for (double v : g.p) e += v * v;
    return e;
}

double avalanche(const GrayImage& img, const cipher::Key& key, unsigned key_bit,
                 const pipeline::Iv& iv, const pipeline::ChaoticParams& params) {
    const cipher::Key flipped = keydist::flip_bit(key, key_bit);
    const Bytes c1 = pipeline::encrypt_image(img, key, iv, params).ciphertext;
    const Bytes c2 = pipeline::encrypt_image(img, flipped, iv, params).ciphertext;
    std::size_t bits = 0;
    for (std::size_t i = 0; i < c1.size(); ++i)
        bits += std::popcount(static_cast<unsigned>(c1[i] ^ c2[i]));
    return 100.0 * bits / (8.0 * c1.size());
}

DifferentialResult differential_metrics(const GrayImage& img, const cipher::Key& key,
                                        const pipeline::Iv& iv,
                                        const pipeline::ChaoticParams& params) {
    GrayImage perturbed = img;
    perturbed.pixels[0] = static_cast<std::uint8_t>(perturbed.pixels[0] + 1);
    const Bytes c1 = pipeline::encrypt_image(img, key, iv, params).ciphertext;
    const Bytes c2 = pipeline::encrypt_image(perturbed, key, iv, params).ciphertext;
    return DifferentialResult{npcr(c1, c2), uaci(c1, c2), uaci_mod256(c1, c2)};
}

namespace {

std::uint8_t clamp_byte(double v) {
    if (v < 0) return 0;
    if (v > 255) return 255;
    return static_cast<std::uint8_t>(std::lround(v));
}

} // namespace

pipeline::CipherImage attack_crop(const pipeline::CipherImage& c, std::uint32_t x,
                                  std::uint32_t y, std::uint32_t w, std::uint32_t h) {
    if (x + w > c.width || y + h > c.height)
        throw DomainError("attack_crop: region out of bounds");
    pipeline::CipherImage out = c;
    for (std::uint32_t yy = y; yy < y + h; ++yy)
        for (std::uint32_t xx = x; xx < x + w; ++xx) {
            const std::size_t idx = std::size_t(yy) * c.width + xx;
            if (idx < out.ciphertext.size()) out.ciphertext[idx] = 0;
        }
    return out;
}

pipeline::CipherImage attack_data_loss(const pipeline::CipherImage& c, double fraction,
                                       std::uint32_t block_size, Rng& rng) {
    if (fraction < 0.0 || fraction > 1.0) throw DomainError("attack_data_loss: bad fraction");
    if (block_size == 0 || block_size > c.width || block_size > c.height)
        throw DomainError("attack_data_loss: bad block size");
    const std::uint32_t bw = c.width / block_size;
    const std::uint32_t bh = c.height / block_size;
    const std::size_t total = std::size_t(bw) * bh;
    const std::size_t lose = static_cast<std::size_t>(std::lround(fraction * total));

    // partial Fisher-Yates over block indices
    std::vector<std::uint32_t> blocks(total);
    for (std::size_t i = 0; i < total; ++i) blocks[i] = static_cast<std::uint32_t>(i);
    pipeline::CipherImage out = c;
    for (std::size_t i = 0; i < lose; ++i) {
        const std::size_t j = i + rng.below(total - i);
        std::swap(blocks[i], blocks[j]);
        const std::uint32_t bx = (blocks[i] % bw) * block_size;
        const std::uint32_t by = (blocks[i] / bw) * block_size;
        for (std::uint32_t yy = by; yy < by + block_size; ++yy)
            for (std::uint32_t xx = bx; xx < bx + block_size; ++xx) {
                const std::size_t idx = std::size_t(yy) * c.width + xx;
                if (idx < out.ciphertext.size()) out.ciphertext[idx] = 0;
            }
    }
    return out;
}

pipeline::CipherImage attack_salt_pepper(const pipeline::CipherImage& c, double density,
                                         Rng& rng) {
    if (density < 0.0 || density > 1.0) throw DomainError("attack_salt_pepper: bad density");
    pipeline::CipherImage out = c;
    for (auto& b : out.ciphertext)
        if (rng.unit() < density) b = rng.below(2) ? 255 : 0;
    return out;
}

pipeline::CipherImage attack_gaussian(const pipeline::CipherImage& c, double sigma, Rng& rng) {
    pipeline::CipherImage out = c;
    for (auto& b : out.ciphertext) b = clamp_byte(b + rng.normal(0.0, sigma));
    return out;
}

pipeline::CipherImage attack_xor_mask(const pipeline::CipherImage& c, std::uint8_t mask) {
    pipeline::CipherImage out = c;
    for (auto& b : out.ciphertext) b ^= mask;
    return out;
}

GrayImage add_gaussian_noise(const GrayImage& img, double sigma, Rng& rng) {
    GrayImage out = img;
    for (auto& p : out.pixels) p = clamp_byte(p + rng.normal(0.0, sigma));
    return out;
}

GrayImage add_salt_pepper(const GrayImage& img, double density, Rng& rng) {
    if (density < 0.0 || density > 1.0) throw DomainError("add_salt_pepper: bad density");
    GrayImage out = img;
    for (auto& p : out.pixels)
        if (rng.unit() < density) p = rng.below(2) ? 255 : 0;
    return out;
}

GrayImage gaussian_blur5(const GrayImage& img, double sigma) {
    const std::vector<double> k = gaussian_kernel(2, sigma);
    GrayImage out = img;
    std::vector<double> tmp(img.size());
    for (std::uint32_t y = 0; y < img.height; ++y)
        for (std::uint32_t x = 0; x < img.width; ++x) {
            double s = 0;
            for (int i = -2; i <= 2; ++i) {
                const long xx = std::clamp<long>(long(x) + i, 0, img.width - 1);
                s += k[i + 2] * img.at(static_cast<std::uint32_t>(xx), y);
            }
            tmp[std::size_t(y) * img.width + x] = s;
        }
    for (std::uint32_t y = 0; y < img.height; ++y)
        for (std::uint32_t x = 0; x < img.width; ++x) {
            double s = 0;
            for (int i = -2; i <= 2; ++i) {
                const long yy = std::clamp<long>(long(y) + i, 0, img.height - 1);
                s += k[i + 2] * tmp[std::size_t(yy) * img.width + x];
            }
            out.at(x, y) = clamp_byte(s);
        }
    return out;
}

std::string report_text(const MetricReport& r) {
    std::ostringstream os;
    os << "entropy       " << r.entropy << "\n"
       << "corr_h        " << r.corr_h << "\n"
       << "corr_v        " << r.corr_v << "\n"
       << "corr_d        " << r.corr_d << "\n"
       << "npcr          " << r.npcr << "\n"
       << "uaci          " << r.uaci << "\n"
       << "uaci_wrapped  " << r.uaci_wrapped << "\n"
       << "mse           " << r.mse << "\n"
       << "psnr          " << r.psnr << "\n"
       << "ssim          " << r.ssim << "\n"
       << "homogeneity   " << r.homogeneity << "\n"
       << "energy        " << r.energy << "\n";
    return os.str();
}

std::string report_json(const MetricReport& r) {
    std::ostringstream os;
    os.precision(12);
    auto num = [](double v) {
        std::ostringstream o;
        o.precision(12);
        if (std::isinf(v)) {
            o << "\"inf\"";
        } else {
            o << v;
        }
        return o.str();
    };
    os << "{\"entropy\":" << num(r.entropy) << ",\"corr_h\":" << num(r.corr_h)
       << ",\"corr_v\":" << num(r.corr_v) << ",\"corr_d\":" << num(r.corr_d)
       << ",\"npcr\":" << num(r.npcr) << ",\"uaci\":" << num(r.uaci)
       << ",\"uaci_wrapped\":" << num(r.uaci_wrapped) << ",\"mse\":" << num(r.mse)
       << ",\"psnr\":" << num(r.psnr) << ",\"ssim\":" << num(r.ssim)
       << ",\"homogeneity\":" << num(r.homogeneity) << ",\"energy\":" << num(r.energy) << "}";
    return os.str();
}

} // namespace maes::analysis
