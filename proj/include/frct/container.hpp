#pragma once

// On-disk ciphertext. Little-endian throughout:
//
//   offset size field
//   0      4    magic "FRCT"
//   4      2    version (1)
//   6      1    mode (0 lossless, 1 quantized)
//   7      1    keystream algorithm (0 = SplitMix64)
//   8      4    width
//   12     4    height
//   16     1    channels
//   17     2    block size
//   19     2    arnold iterations
//   21     8    key fingerprint
//   29     8    reserved, zero
//   37     ...  payload
//
// Lossless payload: per channel, padded_w*padded_h complex samples as (re, im)
// IEEE-754 doubles. Quantized payload: per channel, padded_w*padded_h bytes.

#include <algorithm>
#include <array>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <cstring>
#include <span>
#include <string>
#include <vector>

#include "frct/error.hpp"
#include "frct/keys.hpp"
#include "frct/spectral.hpp"

namespace frct {

inline constexpr std::array<std::uint8_t, 4> kContainerMagic{'F', 'R', 'C', 'T'};
inline constexpr std::uint16_t kContainerVersion = 1;
inline constexpr std::size_t kContainerHeaderSize = 37;

enum class KeystreamAlg : std::uint8_t { splitmix64 = 0 };

struct ContainerHeader {
    std::uint16_t version = kContainerVersion;
    Mode mode = Mode::lossless;
    KeystreamAlg keystream = KeystreamAlg::splitmix64;
    std::uint32_t width = 0;
    std::uint32_t height = 0;
    std::uint8_t channels = 0;
    std::uint16_t block_size = 0;
    std::uint16_t arnold_iterations = 0;
    Fingerprint key_fingerprint{};
    std::array<std::uint8_t, 8> reserved{};

    std::size_t padded_width() const noexcept {
        return (std::size_t{width} + block_size - 1) / block_size * block_size;
    }
    std::size_t padded_height() const noexcept {
        return (std::size_t{height} + block_size - 1) / block_size * block_size;
    }
    /// Samples per channel in the payload.
    std::size_t channel_samples() const noexcept { return padded_width() * padded_height(); }

    std::size_t payload_bytes() const noexcept {
        const std::size_t per_sample = mode == Mode::lossless ? 16 : 1;
        return std::size_t{channels} * channel_samples() * per_sample;
    }

    friend bool operator==(const ContainerHeader&, const ContainerHeader&) = default;
};

struct EncryptedContainer {
    ContainerHeader header;
    std::vector<std::vector<Complex>> coefficients;  // lossless: one vector per channel
    std::vector<std::vector<std::uint8_t>> quantized;  // quantized: one vector per channel
};

namespace detail {

class ByteWriter {
public:
    explicit ByteWriter(std::vector<std::uint8_t>& out) : out_(out) {}

    template <typename UInt>
    void put(UInt v) {
        for (std::size_t i = 0; i < sizeof(UInt); ++i)
            out_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
    }
    void put_f64(double v) { put(std::bit_cast<std::uint64_t>(v)); }
    void put_bytes(std::span<const std::uint8_t> b) { out_.insert(out_.end(), b.begin(), b.end()); }

private:
    std::vector<std::uint8_t>& out_;
};

class ByteReader {
public:
    explicit ByteReader(std::span<const std::uint8_t> in) : in_(in) {}

    template <typename UInt>
    UInt get() {
        need(sizeof(UInt));
        UInt v = 0;
        for (std::size_t i = 0; i < sizeof(UInt); ++i) v |= static_cast<UInt>(UInt{in_[pos_ + i]} << (8 * i));
        pos_ += sizeof(UInt);
        return v;
    }
    double get_f64() { return std::bit_cast<double>(get<std::uint64_t>()); }

    template <std::size_t N>
    std::array<std::uint8_t, N> get_array() {
        need(N);
        std::array<std::uint8_t, N> a{};
        std::copy_n(in_.begin() + static_cast<std::ptrdiff_t>(pos_), N, a.begin());
        pos_ += N;
        return a;
    }

    std::size_t remaining() const noexcept { return in_.size() - pos_; }

private:
    void need(std::size_t n) const {
        if (in_.size() - pos_ < n) throw FormatError("container: truncated");
    }

    std::span<const std::uint8_t> in_;
    std::size_t pos_ = 0;
};

}  // namespace detail

inline std::vector<std::uint8_t> encode_header(const ContainerHeader& h) {
    std::vector<std::uint8_t> out;
    out.reserve(kContainerHeaderSize);
    detail::ByteWriter w(out);
    w.put_bytes(kContainerMagic);
    w.put(h.version);
    w.put(static_cast<std::uint8_t>(h.mode));
    w.put(static_cast<std::uint8_t>(h.keystream));
    w.put(h.width);
    w.put(h.height);
    w.put(h.channels);
    w.put(h.block_size);
    w.put(h.arnold_iterations);
    w.put_bytes(h.key_fingerprint);
    w.put_bytes(h.reserved);
    return out;
}

namespace detail {

inline ContainerHeader read_header(ByteReader& r) {
    if (r.get_array<4>() != kContainerMagic) throw FormatError("container: bad magic");
    ContainerHeader h;
    h.version = r.get<std::uint16_t>();
    if (h.version != kContainerVersion)
        throw FormatError("container: unsupported version " + std::to_string(h.version));
    const auto mode = r.get<std::uint8_t>();
    if (mode > 1) throw FormatError("container: unknown mode");
    h.mode = static_cast<Mode>(mode);
    if (r.get<std::uint8_t>() != 0) throw FormatError("container: unknown keystream algorithm");
    h.width = r.get<std::uint32_t>();
    h.height = r.get<std::uint32_t>();
    h.channels = r.get<std::uint8_t>();
    h.block_size = r.get<std::uint16_t>();
    h.arnold_iterations = r.get<std::uint16_t>();
    h.key_fingerprint = r.get_array<8>();
    h.reserved = r.get_array<8>();

    if (h.width == 0 || h.height == 0) throw FormatError("container: zero dimension");
    if (h.channels != 1 && h.channels != 3) throw FormatError("container: channels must be 1 or 3");
    if (!valid_block_size(h.block_size)) throw FormatError("container: invalid block size");
    if (h.arnold_iterations < 1 || h.arnold_iterations > 1024)
        throw FormatError("container: arnold iterations out of range");
    if (std::any_of(h.reserved.begin(), h.reserved.end(), [](auto b) { return b != 0; }))
        throw FormatError("container: reserved bytes must be zero");
    return h;
}

}  // namespace detail

inline ContainerHeader decode_header(std::span<const std::uint8_t> bytes) {
    detail::ByteReader r(bytes);
    return detail::read_header(r);
}

inline std::vector<std::uint8_t> encode_container(const EncryptedContainer& c) {
    const auto& h = c.header;
    const std::size_t n = h.channel_samples();
    std::vector<std::uint8_t> out = encode_header(h);
    out.reserve(kContainerHeaderSize + h.payload_bytes());
    detail::ByteWriter w(out);
    if (h.mode == Mode::lossless) {
        detail::require(c.coefficients.size() == h.channels, "container: channel count mismatch");
        for (const auto& ch : c.coefficients) {
            detail::require(ch.size() == n, "container: channel length mismatch");
            for (const Complex& z : ch) {
                w.put_f64(z.real());
                w.put_f64(z.imag());
            }
        }
    } else {
        detail::require(c.quantized.size() == h.channels, "container: channel count mismatch");
        for (const auto& ch : c.quantized) {
            detail::require(ch.size() == n, "container: channel length mismatch");
            w.put_bytes(ch);
        }
    }
    return out;
}

inline EncryptedContainer decode_container(std::span<const std::uint8_t> bytes) {
    detail::ByteReader r(bytes);
    EncryptedContainer c;
    c.header = detail::read_header(r);
    const auto& h = c.header;
    if (r.remaining() != h.payload_bytes())
        throw FormatError("container: payload is " + std::to_string(r.remaining()) +
                          " bytes, header implies " + std::to_string(h.payload_bytes()));
    const std::size_t n = h.channel_samples();
    if (h.mode == Mode::lossless) {
        c.coefficients.assign(h.channels, std::vector<Complex>(n));
        for (auto& ch : c.coefficients)
            for (auto& z : ch) {
                const double re = r.get_f64();
                const double im = r.get_f64();
                z = {re, im};
            }
    } else {
        c.quantized.assign(h.channels, std::vector<std::uint8_t>(n));
        for (auto& ch : c.quantized)
            for (auto& b : ch) b = r.get<std::uint8_t>();
    }
    return c;
}

}  // namespace frct
