#ifndef GAZECENTER_GRID_HPP
#define GAZECENTER_GRID_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <vector>

#include "gazecenter/errors.hpp"

namespace gazecenter {

/// Row-major dense 2-D grid of non-negative reals. Used for saliency maps,
/// object center-bias maps, fixation maps, and combined maps alike.
class DenseGrid {
 public:
  DenseGrid() = default;
  DenseGrid(int width, int height, double fill = 0.0)
      : width_(width), height_(height),
        values_(static_cast<std::size_t>(width) * height, fill) {}

  int width() const { return width_; }
  int height() const { return height_; }
  std::size_t size() const { return values_.size(); }
  bool empty() const { return values_.empty(); }

  double& at(int col, int row) {
    return values_[static_cast<std::size_t>(row) * width_ + col];
  }
  double at(int col, int row) const {
    return values_[static_cast<std::size_t>(row) * width_ + col];
  }

  bool in_bounds(int col, int row) const {
    return col >= 0 && col < width_ && row >= 0 && row < height_;
  }

  std::vector<double>& values() { return values_; }
  const std::vector<double>& values() const { return values_; }

  double sum() const {
    return std::accumulate(values_.begin(), values_.end(), 0.0);
  }
  double min() const { return *std::min_element(values_.begin(), values_.end()); }
  double max() const { return *std::max_element(values_.begin(), values_.end()); }

  bool same_dims(const DenseGrid& other) const {
    return width_ == other.width_ && height_ == other.height_;
  }

  bool operator==(const DenseGrid& other) const = default;

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<double> values_;
};

/// Scales a grid in place so its values sum to 1.
inline void normalize(DenseGrid& grid) {
  const double total = grid.sum();
  if (total <= 0.0)
    throw Error(ErrorCode::ALL_ZERO, "grid sums to zero, cannot normalize");
  for (double& v : grid.values()) v /= total;
}

inline DenseGrid normalized(DenseGrid grid) {
  normalize(grid);
  return grid;
}

inline bool is_normalized(const DenseGrid& grid, double tol = 1e-9) {
  return std::abs(grid.sum() - 1.0) <= tol;
}

/// Separable Gaussian smoothing with the kernel truncated at ceil(3*sigma)
/// and renormalized. The output is rescaled to the input's sum, so smoothing
/// never leaks mass off the image.
inline DenseGrid smooth_map(const DenseGrid& grid, double sigma_px) {
  if (sigma_px < 0)
    throw Error(ErrorCode::NEGATIVE_SIGMA, "sigma must be non-negative");
  if (sigma_px == 0.0 || grid.empty()) return grid;

  const int radius = static_cast<int>(std::ceil(3.0 * sigma_px));
  std::vector<double> kernel(2 * radius + 1);
  double ksum = 0.0;
  for (int i = -radius; i <= radius; ++i) {
    kernel[i + radius] = std::exp(-0.5 * (i * i) / (sigma_px * sigma_px));
    ksum += kernel[i + radius];
  }
  for (double& v : kernel) v /= ksum;

  const int w = grid.width(), h = grid.height();
  DenseGrid tmp(w, h), out(w, h);
  for (int row = 0; row < h; ++row)
    for (int col = 0; col < w; ++col) {
      double acc = 0.0;
      for (int i = -radius; i <= radius; ++i) {
        const int c = col + i;
        if (c >= 0 && c < w) acc += kernel[i + radius] * grid.at(c, row);
      }
      tmp.at(col, row) = acc;
    }
  for (int row = 0; row < h; ++row)
    for (int col = 0; col < w; ++col) {
      double acc = 0.0;
      for (int i = -radius; i <= radius; ++i) {
        const int r = row + i;
        if (r >= 0 && r < h) acc += kernel[i + radius] * tmp.at(col, r);
      }
      out.at(col, row) = acc;
    }

  const double in_sum = grid.sum();
  const double out_sum = out.sum();
  if (out_sum > 0) {
    const double scale = in_sum / out_sum;
    for (double& v : out.values()) v *= scale;
  }
  return out;
}

/// Bilinear resampling onto new dimensions. Sample positions are pixel
/// centers mapped proportionally between the two grids; border samples clamp.
inline DenseGrid resample_bilinear(const DenseGrid& src, int width, int height) {
  if (src.width() == width && src.height() == height) return src;
  DenseGrid dst(width, height);
  const double sx = static_cast<double>(src.width()) / width;
  const double sy = static_cast<double>(src.height()) / height;
  for (int row = 0; row < height; ++row) {
    const double y = (row + 0.5) * sy - 0.5;
    const int y0 = std::clamp(static_cast<int>(std::floor(y)), 0, src.height() - 1);
    const int y1 = std::min(y0 + 1, src.height() - 1);
    const double fy = std::clamp(y - y0, 0.0, 1.0);
    for (int col = 0; col < width; ++col) {
      const double x = (col + 0.5) * sx - 0.5;
      const int x0 = std::clamp(static_cast<int>(std::floor(x)), 0, src.width() - 1);
      const int x1 = std::min(x0 + 1, src.width() - 1);
      const double fx = std::clamp(x - x0, 0.0, 1.0);
      const double top = src.at(x0, y0) * (1 - fx) + src.at(x1, y0) * fx;
      const double bot = src.at(x0, y1) * (1 - fx) + src.at(x1, y1) * fx;
      dst.at(col, row) = top * (1 - fy) + bot * fy;
    }
  }
  return dst;
}

}  // namespace gazecenter

#endif  // GAZECENTER_GRID_HPP
