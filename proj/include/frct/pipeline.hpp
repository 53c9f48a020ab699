#pragma once

// Block-wise encryption and decryption.
//
// Encrypt, per channel: zero-pad to block multiples, then per b x b block
// FFT -> Arnold position permutation -> inverse FFT, then flatten all blocks
// (row-major block order) and apply the keyed global shuffle.
// Decrypt runs the mirror image and rounds the real parts back to 8 bits.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <thread>
#include <vector>

#include "frct/arnold.hpp"
#include "frct/container.hpp"
#include "frct/error.hpp"
#include "frct/image.hpp"
#include "frct/keys.hpp"
#include "frct/permute.hpp"
#include "frct/spectral.hpp"

namespace frct {

/// Which Fourier implementation the block stages use.
enum class Transform { fast, naive };

struct PipelineOptions {
    Transform transform = Transform::fast;
    unsigned threads = 1;  // 0 = std::thread::hardware_concurrency()
};

inline unsigned resolve_threads(unsigned requested) noexcept {
    if (requested != 0) return requested;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

/// Runs body(i) for i in [0, n) across contiguous chunks. Each index is
/// processed exactly once, so results do not depend on the thread count.
template <typename Body>
void parallel_for(std::size_t n, unsigned threads, Body&& body) {
    const std::size_t workers = std::min<std::size_t>(std::max(1u, threads), n);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    const std::size_t chunk = (n + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
        const std::size_t lo = w * chunk;
        const std::size_t hi = std::min(n, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([lo, hi, &body] {
            for (std::size_t i = lo; i < hi; ++i) body(i);
        });
    }
}

inline std::size_t padded_extent(std::size_t n, std::size_t b) noexcept {
    return (n + b - 1) / b * b;
}

/// Zero-pads a width x height plane to block multiples and cuts it into
/// b x b blocks in row-major block order. Pixel values go to real parts.
inline std::vector<ComplexGrid> split_blocks(std::span<const std::uint8_t> plane, std::size_t width,
                                             std::size_t height, std::size_t b) {
    detail::require(width >= 1 && height >= 1, "split_blocks: dimensions must be >= 1");
    detail::require(b >= 1, "split_blocks: block size must be >= 1");
    detail::require(plane.size() == width * height, "split_blocks: plane size mismatch");
    const std::size_t bx = padded_extent(width, b) / b;
    const std::size_t by = padded_extent(height, b) / b;
    std::vector<ComplexGrid> blocks(bx * by, ComplexGrid(b, b));
    for (std::size_t y = 0; y < height; ++y)
        for (std::size_t x = 0; x < width; ++x)
            blocks[(y / b) * bx + x / b](y % b, x % b) = Complex(plane[y * width + x], 0.0);
    return blocks;
}

inline std::uint8_t quantize_sample(double v) noexcept {
    return static_cast<std::uint8_t>(std::clamp(std::nearbyint(v), 0.0, 255.0));
}

/// Inverse of split_blocks: rounds real parts, clamps to [0, 255], crops padding.
inline Plane merge_blocks(std::span<const ComplexGrid> blocks, std::size_t width,
                          std::size_t height, std::size_t b) {
    const std::size_t bx = padded_extent(width, b) / b;
    const std::size_t by = padded_extent(height, b) / b;
    detail::require(blocks.size() == bx * by, "merge_blocks: block count mismatch");
    Plane plane(width * height);
    for (std::size_t y = 0; y < height; ++y)
        for (std::size_t x = 0; x < width; ++x)
            plane[y * width + x] = quantize_sample(blocks[(y / b) * bx + x / b](y % b, x % b).real());
    return plane;
}

/// The per-block transform with its Arnold tables built once.
class BlockCipher {
public:
    BlockCipher(const CipherParams& params, Transform transform = Transform::fast)
        : b_(params.block_size),
          transform_(transform),
          forward_(ArnoldParams{params.block_size, params.arnold_iterations}, Direction::forward),
          inverse_(ArnoldParams{params.block_size, params.arnold_iterations}, Direction::inverse) {
        params.validate();
    }

    ComplexGrid encrypt(const ComplexGrid& block) const { return run(block, forward_); }
    ComplexGrid decrypt(const ComplexGrid& block) const { return run(block, inverse_); }

    std::size_t block_size() const noexcept { return b_; }

private:
    ComplexGrid run(const ComplexGrid& block, const ArnoldTable& table) const {
        detail::require(block.rows() == b_ && block.cols() == b_,
                        "block must be block_size x block_size");
        if (transform_ == Transform::naive) return idft2_naive(table.apply(dft2_naive(block)));
        return ifft2(table.apply(fft2(block)));
    }

    std::size_t b_;
    Transform transform_;
    ArnoldTable forward_;
    ArnoldTable inverse_;
};

inline ComplexGrid encrypt_block(const ComplexGrid& block, const CipherParams& params,
                                 Transform transform = Transform::fast) {
    return BlockCipher(params, transform).encrypt(block);
}

inline ComplexGrid decrypt_block(const ComplexGrid& block, const CipherParams& params,
                                 Transform transform = Transform::fast) {
    return BlockCipher(params, transform).decrypt(block);
}

/// Seed of the global shuffle for one channel.
inline std::uint64_t channel_seed(std::uint64_t shuffle_seed, std::size_t channel) noexcept {
    return shuffle_seed ^ static_cast<std::uint64_t>(channel);
}

/// |z| scaled so that the channel maximum maps to 255. Not invertible.
inline std::vector<std::uint8_t> quantize_magnitudes(std::span<const Complex> samples) {
    double peak = 0.0;
    for (const auto& z : samples) peak = std::max(peak, std::abs(z));
    std::vector<std::uint8_t> out(samples.size(), 0);
    if (peak == 0.0) return out;
    for (std::size_t i = 0; i < samples.size(); ++i)
        out[i] = quantize_sample(255.0 * std::abs(samples[i]) / peak);
    return out;
}

namespace detail {

inline std::vector<Complex> flatten_blocks(std::span<const ComplexGrid> blocks) {
    std::vector<Complex> flat;
    if (blocks.empty()) return flat;
    flat.reserve(blocks.size() * blocks.front().size());
    for (const auto& blk : blocks) flat.insert(flat.end(), blk.values().begin(), blk.values().end());
    return flat;
}

inline std::vector<ComplexGrid> unflatten_blocks(std::span<const Complex> flat, std::size_t b) {
    const std::size_t per = b * b;
    std::vector<ComplexGrid> blocks;
    blocks.reserve(flat.size() / per);
    for (std::size_t off = 0; off < flat.size(); off += per)
        blocks.emplace_back(b, b, std::vector<Complex>(flat.begin() + off, flat.begin() + off + per));
    return blocks;
}

inline void check_header_limits(const ImageBuffer& img, const CipherParams& params) {
    require(img.width() <= UINT32_MAX && img.height() <= UINT32_MAX,
            "image dimensions exceed the container's 32-bit fields");
    require(params.arnold_iterations <= UINT16_MAX, "arnold iterations exceed 16-bit header field");
}

}  // namespace detail

inline EncryptedContainer encrypt_image(const ImageBuffer& img, const CipherParams& params,
                                        const PipelineOptions& opts = {}) {
    params.validate();
    detail::check_header_limits(img, params);
    const std::size_t b = params.block_size;
    const BlockCipher cipher(params, opts.transform);
    const unsigned threads = resolve_threads(opts.threads);

    EncryptedContainer out;
    auto& h = out.header;
    h.mode = params.mode;
    h.width = static_cast<std::uint32_t>(img.width());
    h.height = static_cast<std::uint32_t>(img.height());
    h.channels = static_cast<std::uint8_t>(img.channels());
    h.block_size = static_cast<std::uint16_t>(b);
    h.arnold_iterations = static_cast<std::uint16_t>(params.arnold_iterations);
    h.key_fingerprint = params.key_fingerprint;

    const auto planes = split_channels(img);
    for (std::size_t c = 0; c < planes.size(); ++c) {
        auto blocks = split_blocks(planes[c], img.width(), img.height(), b);
        parallel_for(blocks.size(), threads, [&](std::size_t i) { blocks[i] = cipher.encrypt(blocks[i]); });
        const auto flat = detail::flatten_blocks(blocks);
        const Permutation perm = gen_permutation(channel_seed(params.shuffle_seed, c), flat.size());
        auto shuffled = apply_permutation(flat, perm);
        if (params.mode == Mode::lossless)
            out.coefficients.push_back(std::move(shuffled));
        else
            out.quantized.push_back(quantize_magnitudes(shuffled));
    }
    return out;
}

/// Header fields (block size, iterations, mode) come from the container; the
/// caller's params supply the shuffle seed and the fingerprint to check.
inline ImageBuffer decrypt_image(const EncryptedContainer& c, const CipherParams& params,
                                 const PipelineOptions& opts = {}) {
    const auto& h = c.header;
    if (h.key_fingerprint != params.key_fingerprint)
        throw WrongKeyError("key fingerprint mismatch");
    if (h.mode != Mode::lossless)
        throw PreconditionError("quantized containers are a rendering and cannot be decrypted");
    if (c.coefficients.size() != h.channels)
        throw FormatError("container: channel count mismatch");
    for (const auto& ch : c.coefficients)
        if (ch.size() != h.channel_samples()) throw FormatError("container: channel length mismatch");

    CipherParams effective = params;
    effective.block_size = h.block_size;
    effective.arnold_iterations = h.arnold_iterations;
    effective.mode = h.mode;
    const BlockCipher cipher(effective, opts.transform);
    const unsigned threads = resolve_threads(opts.threads);

    std::vector<Plane> planes;
    planes.reserve(h.channels);
    for (std::size_t ch = 0; ch < h.channels; ++ch) {
        const auto& data = c.coefficients[ch];
        const Permutation perm = gen_permutation(channel_seed(params.shuffle_seed, ch), data.size());
        const auto unshuffled = invert_permutation(data, perm);
        auto blocks = detail::unflatten_blocks(unshuffled, h.block_size);
        parallel_for(blocks.size(), threads, [&](std::size_t i) { blocks[i] = cipher.decrypt(blocks[i]); });
        planes.push_back(merge_blocks(blocks, h.width, h.height, h.block_size));
    }
    return merge_channels(planes, h.width, h.height);
}

/// Quantized ciphertext as a viewable image of the padded dimensions.
inline ImageBuffer render_quantized(const EncryptedContainer& c) {
    const auto& h = c.header;
    const std::size_t n = h.channel_samples();
    std::vector<Plane> planes;
    if (h.mode == Mode::quantized) {
        planes = c.quantized;
    } else {
        for (const auto& ch : c.coefficients) planes.push_back(quantize_magnitudes(ch));
    }
    for (const auto& p : planes) detail::require(p.size() == n, "render_quantized: channel length mismatch");
    return merge_channels(planes, h.padded_width(), h.padded_height());
}

}  // namespace frct
