#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace smr {

// Dense 2-D array, row-major. Rows index the first coordinate (image y /
// frequency bin), columns the second (image x / time frame).
template <typename T>
struct Grid {
  int rows = 0;
  int cols = 0;
  std::vector<T> v;

  Grid() = default;
  Grid(int r, int c, T fill = T(0)) : rows(r), cols(c) {
    if (r < 0 || c < 0) throw std::invalid_argument("Grid: negative dims");
    v.assign(static_cast<size_t>(r) * static_cast<size_t>(c), fill);
  }

  T& operator()(int r, int c) { return v[static_cast<size_t>(r) * cols + c]; }
  const T& operator()(int r, int c) const {
    return v[static_cast<size_t>(r) * cols + c];
  }

  T& at(int r, int c) {
    check(r, c);
    return (*this)(r, c);
  }
  const T& at(int r, int c) const {
    check(r, c);
    return (*this)(r, c);
  }

  T* row(int r) { return v.data() + static_cast<size_t>(r) * cols; }
  const T* row(int r) const { return v.data() + static_cast<size_t>(r) * cols; }

  size_t size() const { return v.size(); }
  T* data() { return v.data(); }
  const T* data() const { return v.data(); }

  bool same_shape(const Grid& o) const {
    return rows == o.rows && cols == o.cols;
  }

 private:
  void check(int r, int c) const {
    if (r < 0 || r >= rows || c < 0 || c >= cols)
      throw std::out_of_range("Grid::at(" + std::to_string(r) + "," +
                              std::to_string(c) + ") on " +
                              std::to_string(rows) + "x" + std::to_string(cols));
  }
};

// Dense 3-D array, channel-major (c, h, w), each channel a row-major plane.
template <typename T>
struct Volume {
  int c = 0;
  int h = 0;
  int w = 0;
  std::vector<T> v;

  Volume() = default;
  Volume(int c_, int h_, int w_, T fill = T(0)) : c(c_), h(h_), w(w_) {
    if (c_ < 0 || h_ < 0 || w_ < 0)
      throw std::invalid_argument("Volume: negative dims");
    v.assign(static_cast<size_t>(c_) * h_ * w_, fill);
  }

  T& operator()(int ch, int y, int x) {
    return v[(static_cast<size_t>(ch) * h + y) * w + x];
  }
  const T& operator()(int ch, int y, int x) const {
    return v[(static_cast<size_t>(ch) * h + y) * w + x];
  }

  T* plane(int ch) { return v.data() + static_cast<size_t>(ch) * h * w; }
  const T* plane(int ch) const {
    return v.data() + static_cast<size_t>(ch) * h * w;
  }

  size_t size() const { return v.size(); }
  T* data() { return v.data(); }
  const T* data() const { return v.data(); }

  static Volume from_grid(const Grid<T>& g) {
    Volume out(1, g.rows, g.cols);
    out.v = g.v;
    return out;
  }
};

}  // namespace smr
