#pragma once

// Fidelity (PSNR, SSIM) and statistical (histogram, entropy, chi-square)
// measurements over 8-bit images, plus a wall-clock timing helper.

#include <array>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numeric>
#include <span>
#include <type_traits>
#include <utility>
#include <vector>

#include "frct/error.hpp"
#include "frct/image.hpp"

namespace frct {

using Histogram = std::array<std::uint64_t, 256>;

inline constexpr double kPsnrPeak = 255.0;

/// 10*log10(255^2 / MSE); +infinity when the images are identical.
inline double psnr(const ImageBuffer& a, const ImageBuffer& b) {
    detail::require(a.same_shape(b), "psnr: images must have identical shape");
    auto sa = a.samples();
    auto sb = b.samples();
    double sum = 0.0;
    for (std::size_t i = 0; i < sa.size(); ++i) {
        const double d = static_cast<double>(sa[i]) - static_cast<double>(sb[i]);
        sum += d * d;
    }
    const double mse = sum / static_cast<double>(sa.size());
    if (mse == 0.0) return std::numeric_limits<double>::infinity();
    return 10.0 * std::log10(kPsnrPeak * kPsnrPeak / mse);
}

struct SsimConfig {
    int window = 11;
    double sigma = 1.5;
    double k1 = 0.01;
    double k2 = 0.03;
    double dynamic_range = 255.0;
};

namespace detail {

inline std::vector<double> gaussian_kernel(int size, double sigma) {
    std::vector<double> k(static_cast<std::size_t>(size));
    const double centre = (size - 1) / 2.0;
    double total = 0.0;
    for (int i = 0; i < size; ++i) {
        const double d = i - centre;
        k[static_cast<std::size_t>(i)] = std::exp(-(d * d) / (2.0 * sigma * sigma));
        total += k[static_cast<std::size_t>(i)];
    }
    for (auto& v : k) v /= total;
    return k;
}

// Separable "valid" filtering: output is (w-k+1) x (h-k+1).
inline std::vector<double> filter_valid(std::span<const double> img, std::size_t w, std::size_t h,
                                        std::span<const double> kernel) {
    const std::size_t k = kernel.size();
    const std::size_t ow = w - k + 1;
    const std::size_t oh = h - k + 1;
    std::vector<double> tmp(ow * h);
    for (std::size_t y = 0; y < h; ++y)
        for (std::size_t x = 0; x < ow; ++x) {
            double acc = 0.0;
            for (std::size_t i = 0; i < k; ++i) acc += kernel[i] * img[y * w + x + i];
            tmp[y * ow + x] = acc;
        }
    std::vector<double> out(ow * oh);
    for (std::size_t y = 0; y < oh; ++y)
        for (std::size_t x = 0; x < ow; ++x) {
            double acc = 0.0;
            for (std::size_t i = 0; i < k; ++i) acc += kernel[i] * tmp[(y + i) * ow + x];
            out[y * ow + x] = acc;
        }
    return out;
}

inline double ssim_formula(double mu_a, double mu_b, double var_a, double var_b, double cov,
                           double c1, double c2) {
    return ((2.0 * mu_a * mu_b + c1) * (2.0 * cov + c2)) /
           ((mu_a * mu_a + mu_b * mu_b + c1) * (var_a + var_b + c2));
}

inline std::vector<double> product(std::span<const double> a, std::span<const double> b) {
    std::vector<double> out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] * b[i];
    return out;
}

// Mean SSIM of one channel.
inline double ssim_plane(std::span<const double> a, std::span<const double> b, std::size_t w,
                         std::size_t h, const SsimConfig& cfg) {
    const double c1 = (cfg.k1 * cfg.dynamic_range) * (cfg.k1 * cfg.dynamic_range);
    const double c2 = (cfg.k2 * cfg.dynamic_range) * (cfg.k2 * cfg.dynamic_range);
    const auto win = static_cast<std::size_t>(cfg.window);

    if (w < win || h < win) {
        // Too small for a sliding window: one global window with uniform weights.
        const double n = static_cast<double>(a.size());
        double sa = 0, sb = 0, saa = 0, sbb = 0, sab = 0;
        for (std::size_t i = 0; i < a.size(); ++i) {
            sa += a[i];
            sb += b[i];
            saa += a[i] * a[i];
            sbb += b[i] * b[i];
            sab += a[i] * b[i];
        }
        const double mu_a = sa / n, mu_b = sb / n;
        return ssim_formula(mu_a, mu_b, saa / n - mu_a * mu_a, sbb / n - mu_b * mu_b,
                            sab / n - mu_a * mu_b, c1, c2);
    }

    const auto kernel = gaussian_kernel(cfg.window, cfg.sigma);
    const auto mu_a = filter_valid(a, w, h, kernel);
    const auto mu_b = filter_valid(b, w, h, kernel);
    const auto e_aa = filter_valid(product(a, a), w, h, kernel);
    const auto e_bb = filter_valid(product(b, b), w, h, kernel);
    const auto e_ab = filter_valid(product(a, b), w, h, kernel);

    double total = 0.0;
    for (std::size_t i = 0; i < mu_a.size(); ++i) {
        total += ssim_formula(mu_a[i], mu_b[i], e_aa[i] - mu_a[i] * mu_a[i],
                              e_bb[i] - mu_b[i] * mu_b[i], e_ab[i] - mu_a[i] * mu_b[i], c1, c2);
    }
    return total / static_cast<double>(mu_a.size());
}

inline std::vector<std::vector<double>> planes_as_double(const ImageBuffer& img) {
    const std::size_t ch = img.channels();
    std::vector<std::vector<double>> out(ch, std::vector<double>(img.pixel_count()));
    auto s = img.samples();
    for (std::size_t i = 0; i < img.pixel_count(); ++i)
        for (std::size_t c = 0; c < ch; ++c) out[c][i] = s[i * ch + c];
    return out;
}

}  // namespace detail

/// Mean SSIM per channel (11x11 Gaussian window, sigma 1.5, valid region).
/// Images narrower or shorter than the window use one global window.
inline std::vector<double> ssim_per_channel(const ImageBuffer& a, const ImageBuffer& b,
                                            const SsimConfig& cfg = {}) {
    detail::require(a.same_shape(b), "ssim: images must have identical shape");
    const auto pa = detail::planes_as_double(a);
    const auto pb = detail::planes_as_double(b);
    std::vector<double> out;
    for (std::size_t c = 0; c < pa.size(); ++c)
        out.push_back(detail::ssim_plane(pa[c], pb[c], a.width(), a.height(), cfg));
    return out;
}

/// Channel average of ssim_per_channel.
inline double ssim(const ImageBuffer& a, const ImageBuffer& b, const SsimConfig& cfg = {}) {
    const auto per = ssim_per_channel(a, b, cfg);
    return std::accumulate(per.begin(), per.end(), 0.0) / static_cast<double>(per.size());
}

/// 256-bin counts for each channel.
inline std::vector<Histogram> histogram(const ImageBuffer& img) {
    std::vector<Histogram> out(img.channels(), Histogram{});
    const std::size_t ch = img.channels();
    auto s = img.samples();
    for (std::size_t i = 0; i < s.size(); ++i) ++out[i % ch][s[i]];
    return out;
}

inline std::uint64_t histogram_total(const Histogram& h) {
    return std::accumulate(h.begin(), h.end(), std::uint64_t{0});
}

/// Pearson statistic against the uniform expectation n/256. Needs n >= 256.
inline double chi_square_uniform(const Histogram& h) {
    const std::uint64_t n = histogram_total(h);
    detail::require(n >= 256, "chi_square_uniform: need at least 256 samples");
    const double expected = static_cast<double>(n) / 256.0;
    double stat = 0.0;
    for (auto count : h) {
        const double d = static_cast<double>(count) - expected;
        stat += d * d / expected;
    }
    return stat;
}

/// Shannon entropy in bits over the nonzero bins.
inline double shannon_entropy(const Histogram& h) {
    const std::uint64_t n = histogram_total(h);
    detail::require(n >= 1, "shannon_entropy: empty histogram");
    double bits = 0.0;
    for (auto count : h) {
        if (count == 0) continue;
        const double p = static_cast<double>(count) / static_cast<double>(n);
        bits -= p * std::log2(p);
    }
    return bits;
}

template <typename T>
struct Timed {
    T value;
    double seconds;
};

/// Runs op once under a monotonic clock. Returns the seconds alone for void ops.
template <typename Op>
auto timed(Op&& op) {
    using Clock = std::chrono::steady_clock;
    using R = std::invoke_result_t<Op>;
    const auto start = Clock::now();
    if constexpr (std::is_void_v<R>) {
        std::forward<Op>(op)();
        return std::chrono::duration<double>(Clock::now() - start).count();
    } else {
        R value = std::forward<Op>(op)();
        const double secs = std::chrono::duration<double>(Clock::now() - start).count();
        return Timed<R>{std::move(value), secs};
    }
}

}  // namespace frct
