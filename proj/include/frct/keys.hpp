#pragma once

// Passphrase -> cipher parameters. SHA-256 of the passphrase supplies the
// shuffle seed (bytes 0-7, little-endian), the Arnold iteration count
// (1 + LE u16 of bytes 8-9 mod 64) and the header fingerprint (bytes 10-17).

#include <openssl/evp.h>

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>

#include "frct/error.hpp"

namespace frct {

enum class Mode : std::uint8_t { lossless = 0, quantized = 1 };

using Fingerprint = std::array<std::uint8_t, 8>;
using Digest256 = std::array<std::uint8_t, 32>;

inline constexpr std::size_t kDefaultBlockSize = 32;

inline bool valid_block_size(std::size_t b) noexcept {
    return b == 8 || b == 16 || b == 32 || b == 64 || b == 128;
}

struct CipherParams {
    std::size_t block_size = kDefaultBlockSize;
    std::uint32_t arnold_iterations = 7;
    std::uint64_t shuffle_seed = 0;
    Fingerprint key_fingerprint{};
    Mode mode = Mode::lossless;

    void validate() const {
        detail::require(valid_block_size(block_size),
                        "block size must be one of 8, 16, 32, 64, 128");
        detail::require(arnold_iterations >= 1 && arnold_iterations <= 1024,
                        "arnold iterations must be in [1, 1024]");
    }

    friend bool operator==(const CipherParams&, const CipherParams&) = default;
};

inline Digest256 sha256(std::span<const std::uint8_t> data) {
    Digest256 out{};
    unsigned int len = 0;
    if (EVP_Digest(data.data(), data.size(), out.data(), &len, EVP_sha256(), nullptr) != 1 ||
        len != out.size())
        throw Error("SHA-256 computation failed");
    return out;
}

inline Digest256 sha256(std::string_view text) {
    return sha256(std::span(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
}

inline CipherParams derive_params(std::string_view passphrase,
                                  std::size_t block_size = kDefaultBlockSize,
                                  Mode mode = Mode::lossless) {
    detail::require(!passphrase.empty(), "passphrase must not be empty");
    detail::require(valid_block_size(block_size), "block size must be one of 8, 16, 32, 64, 128");

    const Digest256 h = sha256(passphrase);
    CipherParams p;
    p.block_size = block_size;
    p.mode = mode;
    for (int i = 7; i >= 0; --i) p.shuffle_seed = (p.shuffle_seed << 8) | h[i];
    const std::uint16_t k16 = static_cast<std::uint16_t>(h[8] | (h[9] << 8));
    p.arnold_iterations = 1 + k16 % 64;
    for (std::size_t i = 0; i < p.key_fingerprint.size(); ++i) p.key_fingerprint[i] = h[10 + i];
    return p;
}

inline std::string to_hex(std::span<const std::uint8_t> bytes) {
    static constexpr char digits[] = "0123456789abcdef";
    std::string s;
    s.reserve(bytes.size() * 2);
    for (auto b : bytes) {
        s.push_back(digits[b >> 4]);
        s.push_back(digits[b & 0xF]);
    }
    return s;
}

}  // namespace frct
