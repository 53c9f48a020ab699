#pragma once

// Key-seeded global shuffle. The keystream is SplitMix64, pinned bit-exactly so
// that ciphertexts are reproducible everywhere. It is not a CSPRNG.

#include <cstddef>
#include <cstdint>
#include <numeric>
#include <span>
#include <vector>

#include "frct/error.hpp"

namespace frct {

class SplitMix64 {
public:
    constexpr explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

    constexpr std::uint64_t next() noexcept {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    constexpr std::uint64_t state() const noexcept { return state_; }

private:
    std::uint64_t state_;
};

struct KeystreamStep {
    std::uint64_t value;
    std::uint64_t next_state;
};

/// Pure form of SplitMix64::next.
constexpr KeystreamStep keystream_next(std::uint64_t state) noexcept {
    SplitMix64 rng(state);
    const std::uint64_t v = rng.next();
    return {v, rng.state()};
}

/// mapping[i] is the source index for destination i.
class Permutation {
public:
    Permutation() = default;

    /// Takes ownership of a mapping; throws if it is not a bijection on [0, n).
    explicit Permutation(std::vector<std::size_t> mapping) : mapping_(std::move(mapping)) {
        std::vector<bool> seen(mapping_.size(), false);
        for (std::size_t src : mapping_) {
            detail::require(src < mapping_.size() && !seen[src], "permutation must be a bijection");
            seen[src] = true;
        }
    }

    static Permutation identity(std::size_t n) {
        std::vector<std::size_t> m(n);
        std::iota(m.begin(), m.end(), std::size_t{0});
        Permutation p;
        p.mapping_ = std::move(m);
        return p;
    }

    std::size_t size() const noexcept { return mapping_.size(); }
    std::span<const std::size_t> mapping() const noexcept { return mapping_; }
    std::size_t operator[](std::size_t i) const noexcept { return mapping_[i]; }

    friend bool operator==(const Permutation&, const Permutation&) = default;

private:
    friend Permutation gen_permutation(std::uint64_t seed, std::size_t n);
    std::vector<std::size_t> mapping_;
};

/// Fisher-Yates from the top: for i = n-1 .. 1 swap i with next() mod (i+1).
inline Permutation gen_permutation(std::uint64_t seed, std::size_t n) {
    detail::require(n >= 1, "gen_permutation: n must be >= 1");
    Permutation p = Permutation::identity(n);
    SplitMix64 rng(seed);
    for (std::size_t i = n - 1; i >= 1; --i) {
        const std::size_t j = static_cast<std::size_t>(rng.next() % (i + 1));
        std::swap(p.mapping_[i], p.mapping_[j]);
    }
    return p;
}

/// out[i] = data[p[i]]
template <typename T>
std::vector<T> apply_permutation(std::span<const T> data, const Permutation& p) {
    detail::require(data.size() == p.size(), "apply_permutation: length mismatch");
    std::vector<T> out(data.size());
    for (std::size_t i = 0; i < data.size(); ++i) out[i] = data[p[i]];
    return out;
}

/// out[p[i]] = data[i]; undoes apply_permutation.
template <typename T>
std::vector<T> invert_permutation(std::span<const T> data, const Permutation& p) {
    detail::require(data.size() == p.size(), "invert_permutation: length mismatch");
    std::vector<T> out(data.size());
    for (std::size_t i = 0; i < data.size(); ++i) out[p[i]] = data[i];
    return out;
}

template <typename T>
std::vector<T> apply_permutation(const std::vector<T>& data, const Permutation& p) {
    return apply_permutation(std::span<const T>(data), p);
}

template <typename T>
std::vector<T> invert_permutation(const std::vector<T>& data, const Permutation& p) {
    return invert_permutation(std::span<const T>(data), p);
}

}  // namespace frct
