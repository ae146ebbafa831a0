#pragma once

#include <cassert>
#include <cmath>
#include <cstdint>
#include <vector>

#include "ghacpp/geometry.hpp"

namespace ghacpp {

struct CellIndex {
    int cx = 0;
    int cy = 0;

    auto operator<=>(const CellIndex&) const = default;
};

/// Row-major 2D grid of cells with a fixed metric resolution.
/// Cell (cx, cy) spans [cx*res, (cx+1)*res) x [cy*res, (cy+1)*res).
template <typename T>
class Grid {
  public:
    Grid() = default;
    Grid(int w, int h, double res, T fill = T{})
        : width_(w), height_(h), res_(res), data_(static_cast<size_t>(w) * h, fill) {}

    int width() const { return width_; }
    int height() const { return height_; }
    double resolution() const { return res_; }

    bool in_bounds(int cx, int cy) const {
        return cx >= 0 && cy >= 0 && cx < width_ && cy < height_;
    }
    bool in_bounds(const CellIndex& c) const { return in_bounds(c.cx, c.cy); }

    T& at(int cx, int cy) { return data_[static_cast<size_t>(cy) * width_ + cx]; }
    const T& at(int cx, int cy) const { return data_[static_cast<size_t>(cy) * width_ + cx]; }
    T& at(const CellIndex& c) { return at(c.cx, c.cy); }
    const T& at(const CellIndex& c) const { return at(c.cx, c.cy); }

    /// World point to containing cell. A tiny positive nudge keeps points that
    /// land exactly on a cell boundary in the cell whose minimum edge they touch,
    /// regardless of accumulated floating-point error.
    CellIndex cell_of(double x, double y) const {
        return {static_cast<int>(std::floor(x / res_ + 1e-9)),
                static_cast<int>(std::floor(y / res_ + 1e-9))};
    }
    CellIndex cell_of(const Vec2& p) const { return cell_of(p.x, p.y); }

    Vec2 center_of(int cx, int cy) const {
        return {(cx + 0.5) * res_, (cy + 0.5) * res_};
    }
    Vec2 center_of(const CellIndex& c) const { return center_of(c.cx, c.cy); }

    size_t size() const { return data_.size(); }
    const std::vector<T>& raw() const { return data_; }
    std::vector<T>& raw() { return data_; }

    bool operator==(const Grid& o) const {
        return width_ == o.width_ && height_ == o.height_ && res_ == o.res_ && data_ == o.data_;
    }

  private:
    int width_ = 0;
    int height_ = 0;
    double res_ = 0.05;
    std::vector<T> data_;
};

} // namespace ghacpp
