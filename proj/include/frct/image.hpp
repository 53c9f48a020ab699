#pragma once

// 8-bit raster model and binary netpbm (P5/P6) I/O.

#include <cctype>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <iterator>
#include <span>
#include <string>
#include <vector>

#include "frct/error.hpp"

namespace frct {

/// Row-major, channel-interleaved 8-bit image. channels is 1 (gray) or 3 (RGB).
class ImageBuffer {
public:
    ImageBuffer() = default;

    ImageBuffer(std::size_t width, std::size_t height, std::size_t channels)
        : ImageBuffer(width, height, channels,
                      std::vector<std::uint8_t>(width * height * channels, 0)) {}

    ImageBuffer(std::size_t width, std::size_t height, std::size_t channels,
                std::vector<std::uint8_t> samples)
        : width_(width), height_(height), channels_(channels), samples_(std::move(samples)) {
        detail::require(width_ >= 1 && height_ >= 1, "image dimensions must be >= 1");
        detail::require(channels_ == 1 || channels_ == 3, "image channels must be 1 or 3");
        detail::require(samples_.size() == width_ * height_ * channels_,
                        "sample count must equal width*height*channels");
    }

    std::size_t width() const noexcept { return width_; }
    std::size_t height() const noexcept { return height_; }
    std::size_t channels() const noexcept { return channels_; }
    std::size_t pixel_count() const noexcept { return width_ * height_; }

    std::span<const std::uint8_t> samples() const noexcept { return samples_; }
    std::span<std::uint8_t> samples() noexcept { return samples_; }

    /// Linear sample index of (x, y, c).
    std::size_t index(std::size_t x, std::size_t y, std::size_t c) const noexcept {
        return (y * width_ + x) * channels_ + c;
    }

    std::uint8_t at(std::size_t x, std::size_t y, std::size_t c = 0) const {
        return samples_.at(index(x, y, c));
    }

    bool same_shape(const ImageBuffer& other) const noexcept {
        return width_ == other.width_ && height_ == other.height_ && channels_ == other.channels_;
    }

    friend bool operator==(const ImageBuffer&, const ImageBuffer&) = default;

private:
    std::size_t width_ = 0;
    std::size_t height_ = 0;
    std::size_t channels_ = 0;
    std::vector<std::uint8_t> samples_;
};

/// One channel of an image: width*height samples, row-major.
using Plane = std::vector<std::uint8_t>;

inline std::vector<Plane> split_channels(const ImageBuffer& img) {
    const std::size_t n = img.pixel_count();
    const std::size_t ch = img.channels();
    std::vector<Plane> planes(ch, Plane(n));
    auto s = img.samples();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t c = 0; c < ch; ++c) planes[c][i] = s[i * ch + c];
    return planes;
}

inline ImageBuffer merge_channels(std::span<const Plane> planes, std::size_t width,
                                  std::size_t height) {
    const std::size_t ch = planes.size();
    const std::size_t n = width * height;
    for (const auto& p : planes) detail::require(p.size() == n, "plane size mismatch");
    std::vector<std::uint8_t> samples(n * ch);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t c = 0; c < ch; ++c) samples[i * ch + c] = planes[c][i];
    return ImageBuffer(width, height, ch, std::move(samples));
}

namespace detail {

class NetpbmHeaderReader {
public:
    explicit NetpbmHeaderReader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

    // Skips whitespace and '#' comments, then reads a decimal integer.
    std::size_t next_uint() {
        skip_space_and_comments();
        if (pos_ >= bytes_.size() || !std::isdigit(bytes_[pos_]))
            throw FormatError("netpbm: expected unsigned integer in header");
        std::size_t value = 0;
        while (pos_ < bytes_.size() && std::isdigit(bytes_[pos_])) {
            value = value * 10 + (bytes_[pos_] - '0');
            if (value > (std::size_t{1} << 32)) throw FormatError("netpbm: header value too large");
            ++pos_;
        }
        return value;
    }

    // Exactly one whitespace byte separates maxval from the raster.
    std::size_t raster_offset() {
        if (pos_ >= bytes_.size() || !std::isspace(bytes_[pos_]))
            throw FormatError("netpbm: missing whitespace after maxval");
        return pos_ + 1;
    }

    std::size_t pos() const noexcept { return pos_; }
    void advance(std::size_t n) noexcept { pos_ += n; }

private:
    void skip_space_and_comments() {
        while (pos_ < bytes_.size()) {
            if (std::isspace(bytes_[pos_])) {
                ++pos_;
            } else if (bytes_[pos_] == '#') {
                while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
            } else {
                break;
            }
        }
    }

    std::span<const std::uint8_t> bytes_;
    std::size_t pos_ = 0;
};

}  // namespace detail

/// Parses an in-memory P5/P6 file.
inline ImageBuffer decode_netpbm(std::span<const std::uint8_t> bytes) {
    if (bytes.size() < 2 || bytes[0] != 'P' || (bytes[1] != '5' && bytes[1] != '6'))
        throw FormatError("netpbm: bad magic (expected P5 or P6)");
    const std::size_t channels = bytes[1] == '5' ? 1 : 3;

    detail::NetpbmHeaderReader reader(bytes);
    reader.advance(2);
    const std::size_t width = reader.next_uint();
    const std::size_t height = reader.next_uint();
    const std::size_t maxval = reader.next_uint();
    if (width == 0 || height == 0) throw FormatError("netpbm: zero dimension");
    if (maxval != 255) throw UnsupportedDepthError("netpbm: maxval must be 255");
    const std::size_t offset = reader.raster_offset();

    const std::size_t expected = width * height * channels;
    if (bytes.size() - offset < expected) throw IoError("netpbm: truncated payload");
    if (bytes.size() - offset > expected) throw FormatError("netpbm: trailing bytes after payload");

    std::vector<std::uint8_t> samples(bytes.begin() + offset, bytes.end());
    return ImageBuffer(width, height, channels, std::move(samples));
}

inline std::vector<std::uint8_t> encode_netpbm(const ImageBuffer& img) {
    const std::string header = (img.channels() == 1 ? "P5\n" : "P6\n") +
                               std::to_string(img.width()) + " " + std::to_string(img.height()) +
                               "\n255\n";
    std::vector<std::uint8_t> out(header.begin(), header.end());
    out.insert(out.end(), img.samples().begin(), img.samples().end());
    return out;
}

inline std::vector<std::uint8_t> read_file_bytes(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open for reading: " + path);
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                    std::istreambuf_iterator<char>());
    if (in.bad()) throw IoError("read failed: " + path);
    return bytes;
}

inline void write_file_bytes(const std::string& path, std::span<const std::uint8_t> bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open for writing: " + path);
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    if (!out) throw IoError("write failed: " + path);
}

inline ImageBuffer load_image(const std::string& path) {
    return decode_netpbm(read_file_bytes(path));
}

inline void save_image(const ImageBuffer& img, const std::string& path) {
    write_file_bytes(path, encode_netpbm(img));
}

}  // namespace frct
