#pragma once

// Iterated Arnold cat map on an N x N torus with matrix [[1,1],[1,2]], and its
// exact inverse [[2,-1],[-1,1]]. Used as a position permutation: values move,
// they are never altered.

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "frct/error.hpp"
#include "frct/spectral.hpp"

namespace frct {

inline constexpr std::uint32_t kMaxArnoldIterations = 1024;

struct ArnoldParams {
    std::size_t grid_size = 1;
    std::uint32_t iterations = 0;
    std::uint32_t max_iterations = kMaxArnoldIterations;

    void validate() const {
        detail::require(grid_size >= 1, "arnold: grid size must be >= 1");
        detail::require(iterations <= max_iterations,
                        "arnold: iterations exceed the configured maximum (" +
                            std::to_string(max_iterations) + ")");
    }
};

struct Coord {
    std::size_t x = 0;
    std::size_t y = 0;
    friend bool operator==(const Coord&, const Coord&) = default;
};

enum class Direction { forward, inverse };

namespace detail {

inline void require_in_grid(Coord c, std::size_t n) {
    require(c.x < n && c.y < n, "arnold: coordinate out of range");
}

inline Coord arnold_step_forward(Coord c, std::size_t n) noexcept {
    return {(c.x + c.y) % n, (c.x + 2 * c.y) % n};
}

// (2x - y) mod n and (y - x) mod n, kept non-negative by adding n first.
inline Coord arnold_step_inverse(Coord c, std::size_t n) noexcept {
    return {(2 * c.x + n - c.y) % n, (c.y + n - c.x) % n};
}

}  // namespace detail

inline Coord arnold_forward(Coord c, const ArnoldParams& p) {
    p.validate();
    detail::require_in_grid(c, p.grid_size);
    for (std::uint32_t i = 0; i < p.iterations; ++i) c = detail::arnold_step_forward(c, p.grid_size);
    return c;
}

inline Coord arnold_inverse(Coord c, const ArnoldParams& p) {
    p.validate();
    detail::require_in_grid(c, p.grid_size);
    for (std::uint32_t i = 0; i < p.iterations; ++i) c = detail::arnold_step_inverse(c, p.grid_size);
    return c;
}

/// Destination linear index (x*N + y) for every source cell, for reuse across blocks.
class ArnoldTable {
public:
    ArnoldTable(const ArnoldParams& p, Direction dir) : n_(p.grid_size), dest_(n_ * n_) {
        p.validate();
        for (std::size_t x = 0; x < n_; ++x) {
            for (std::size_t y = 0; y < n_; ++y) {
                const Coord to = dir == Direction::forward ? arnold_forward({x, y}, p)
                                                           : arnold_inverse({x, y}, p);
                dest_[x * n_ + y] = to.x * n_ + to.y;
            }
        }
    }

    std::size_t grid_size() const noexcept { return n_; }
    const std::vector<std::size_t>& destinations() const noexcept { return dest_; }

    /// output[map(x,y)] = input[x,y]
    ComplexGrid apply(const ComplexGrid& grid) const {
        detail::require(grid.square(), "arnold: grid must be square");
        detail::require(grid.rows() == n_, "arnold: grid side must equal the map's grid size");
        ComplexGrid out(n_, n_);
        auto src = grid.values();
        auto dst = out.values();
        for (std::size_t i = 0; i < dest_.size(); ++i) dst[dest_[i]] = src[i];
        return out;
    }

private:
    std::size_t n_;
    std::vector<std::size_t> dest_;
};

inline ComplexGrid arnold_permute_grid(const ComplexGrid& grid, const ArnoldParams& p,
                                       Direction dir) {
    detail::require(grid.square(), "arnold: grid must be square");
    detail::require(grid.rows() == p.grid_size, "arnold: grid side must equal params grid size");
    return ArnoldTable(p, dir).apply(grid);
}

}  // namespace frct
