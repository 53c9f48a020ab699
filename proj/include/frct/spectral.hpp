#pragma once

// 2-D discrete Fourier transforms. Forward transforms are unnormalized, inverse
// transforms carry the 1/(rows*cols) factor. dft2_naive/idft2_naive evaluate the
// double sum directly and serve as the reference for fft2/ifft2.

#include <bit>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <span>
#include <vector>

#include "frct/error.hpp"

namespace frct {

using Complex = std::complex<double>;

/// Row-major grid of complex values; element (r, c) lives at r*cols + c.
class ComplexGrid {
public:
    ComplexGrid() = default;
    ComplexGrid(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), values_(rows * cols) {}
    ComplexGrid(std::size_t rows, std::size_t cols, std::vector<Complex> values)
        : rows_(rows), cols_(cols), values_(std::move(values)) {
        detail::require(values_.size() == rows_ * cols_, "grid value count must equal rows*cols");
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    std::size_t size() const noexcept { return values_.size(); }
    bool square() const noexcept { return rows_ == cols_; }

    Complex& operator()(std::size_t r, std::size_t c) noexcept { return values_[r * cols_ + c]; }
    const Complex& operator()(std::size_t r, std::size_t c) const noexcept {
        return values_[r * cols_ + c];
    }

    std::span<Complex> values() noexcept { return values_; }
    std::span<const Complex> values() const noexcept { return values_; }

    friend bool operator==(const ComplexGrid&, const ComplexGrid&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Complex> values_;
};

/// Largest |a - b| over corresponding elements; grids must share a shape.
inline double max_abs_diff(const ComplexGrid& a, const ComplexGrid& b) {
    detail::require(a.rows() == b.rows() && a.cols() == b.cols(), "grid shape mismatch");
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        worst = std::max(worst, std::abs(a.values()[i] - b.values()[i]));
    return worst;
}

namespace detail {

// roots[k] = exp(sign * j*2*pi*k/n), k in [0, n)
inline std::vector<Complex> unit_roots(std::size_t n, double sign) {
    std::vector<Complex> roots(n);
    for (std::size_t k = 0; k < n; ++k)
        roots[k] = std::polar(1.0, sign * 2.0 * std::numbers::pi * static_cast<double>(k) /
                                       static_cast<double>(n));
    return roots;
}

inline ComplexGrid dft2_direct(const ComplexGrid& in, double sign) {
    const std::size_t n = in.rows();
    const std::size_t m = in.cols();
    require(n >= 1 && m >= 1, "dft2: grid must be at least 1x1");
    const auto wn = unit_roots(n, sign);
    const auto wm = unit_roots(m, sign);
    ComplexGrid out(n, m);
    for (std::size_t u = 0; u < n; ++u) {
        for (std::size_t v = 0; v < m; ++v) {
            Complex acc{0.0, 0.0};
            for (std::size_t x = 0; x < n; ++x) {
                const Complex wx = wn[(u * x) % n];
                for (std::size_t y = 0; y < m; ++y) acc += in(x, y) * wx * wm[(v * y) % m];
            }
            out(u, v) = acc;
        }
    }
    return out;
}

inline bool is_pow2(std::size_t n) noexcept { return n != 0 && std::has_single_bit(n); }

// In-place iterative radix-2 Cooley-Tukey on a strided sequence.
class Radix2Plan {
public:
    Radix2Plan(std::size_t n, double sign) : n_(n), roots_(unit_roots(n, sign)), rev_(n) {
        const int bits = std::countr_zero(n);
        for (std::size_t i = 0; i < n; ++i) {
            std::size_t r = 0;
            for (int b = 0; b < bits; ++b)
                if (i & (std::size_t{1} << b)) r |= std::size_t{1} << (bits - 1 - b);
            rev_[i] = r;
        }
    }

    void run(std::span<Complex> buf) const {
        for (std::size_t i = 0; i < n_; ++i)
            if (i < rev_[i]) std::swap(buf[i], buf[rev_[i]]);
        for (std::size_t len = 2; len <= n_; len <<= 1) {
            const std::size_t half = len / 2;
            const std::size_t stride = n_ / len;
            for (std::size_t start = 0; start < n_; start += len) {
                for (std::size_t k = 0; k < half; ++k) {
                    const Complex t = roots_[k * stride] * buf[start + k + half];
                    buf[start + k + half] = buf[start + k] - t;
                    buf[start + k] += t;
                }
            }
        }
    }

private:
    std::size_t n_;
    std::vector<Complex> roots_;
    std::vector<std::size_t> rev_;
};

inline ComplexGrid fft2_rowcol(ComplexGrid grid, double sign) {
    const std::size_t n = grid.rows();
    const std::size_t m = grid.cols();
    require(is_pow2(n) && is_pow2(m), "fft2: rows and cols must be powers of two");

    const Radix2Plan row_plan(m, sign);
    for (std::size_t r = 0; r < n; ++r) row_plan.run(grid.values().subspan(r * m, m));

    const Radix2Plan col_plan(n, sign);
    std::vector<Complex> column(n);
    for (std::size_t c = 0; c < m; ++c) {
        for (std::size_t r = 0; r < n; ++r) column[r] = grid(r, c);
        col_plan.run(column);
        for (std::size_t r = 0; r < n; ++r) grid(r, c) = column[r];
    }
    return grid;
}

inline void scale(ComplexGrid& grid, double factor) {
    for (auto& z : grid.values()) z *= factor;
}

}  // namespace detail

/// F(u,v) = sum_x sum_y f(x,y) exp(-j2pi(ux/N + vy/M)), N = rows, M = cols.
inline ComplexGrid dft2_naive(const ComplexGrid& grid) { return detail::dft2_direct(grid, -1.0); }

/// f(x,y) = 1/(NM) sum_u sum_v F(u,v) exp(+j2pi(ux/N + vy/M)).
inline ComplexGrid idft2_naive(const ComplexGrid& grid) {
    auto out = detail::dft2_direct(grid, +1.0);
    detail::scale(out, 1.0 / static_cast<double>(grid.size()));
    return out;
}

/// Same transform as dft2_naive; rows and cols must be powers of two.
inline ComplexGrid fft2(ComplexGrid grid) { return detail::fft2_rowcol(std::move(grid), -1.0); }

inline ComplexGrid ifft2(ComplexGrid grid) {
    auto out = detail::fft2_rowcol(std::move(grid), +1.0);
    detail::scale(out, 1.0 / static_cast<double>(out.size()));
    return out;
}

}  // namespace frct
