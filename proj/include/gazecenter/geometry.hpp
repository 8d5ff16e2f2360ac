#ifndef GAZECENTER_GEOMETRY_HPP
#define GAZECENTER_GEOMETRY_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <unordered_map>
#include <vector>

#include "gazecenter/errors.hpp"

namespace gazecenter {

struct Point {
  double x = 0.0;
  double y = 0.0;
};

struct Polygon {
  std::vector<Point> vertices;
};

struct PixelCoord {
  int col = 0;
  int row = 0;
  bool operator==(const PixelCoord&) const = default;
};

/// Rasterized object region: integer pixel coordinates within an image.
/// Pixels are kept in row-major order (row, then col ascending).
struct PixelSet {
  int image_width = 0;
  int image_height = 0;
  std::vector<PixelCoord> pixels;

  bool contains(int col, int row) const {
    return std::binary_search(
        pixels.begin(), pixels.end(), PixelCoord{col, row},
        [](const PixelCoord& a, const PixelCoord& b) {
          return a.row != b.row ? a.row < b.row : a.col < b.col;
        });
  }
};

enum class RegionMode { polygon, bbox };

/// Equal-area concentric rings of an object's pixel set, ordered outward
/// from the center of mass. Ring indices are 1-based.
struct RingPartition {
  Point center;
  int k = 10;
  int image_width = 0;
  int image_height = 0;
  std::vector<PixelCoord> pixels;   // row-major, matching source PixelSet
  std::vector<int> ring_of;         // per pixel, ring index in 1..k
  std::vector<double> radii;        // radii[i-1] = max distance within ring i

  /// Ring index for an image pixel, or 0 when outside the object.
  int ring_at(int col, int row) const {
    auto it = index_.find(key(col, row));
    return it == index_.end() ? 0 : ring_of[it->second];
  }

  void build_index() {
    index_.reserve(pixels.size());
    for (std::size_t i = 0; i < pixels.size(); ++i)
      index_.emplace(key(pixels[i].col, pixels[i].row), i);
  }

 private:
  static std::int64_t key(int col, int row) {
    return (static_cast<std::int64_t>(row) << 32) | static_cast<std::uint32_t>(col);
  }
  std::unordered_map<std::int64_t, std::size_t> index_;
};

namespace detail {

/// Even-odd interiority of a point against polygon edges using the
/// half-open crossing rule: an edge is counted when it spans the point's
/// y half-openly and the crossing lies strictly right of the point.
inline bool point_in_polygon_even_odd(double px, double py,
                                      const std::vector<Point>& verts) {
  bool inside = false;
  const std::size_t n = verts.size();
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const Point& a = verts[i];
    const Point& b = verts[j];
    if ((a.y > py) != (b.y > py)) {
      const double x_cross = a.x + (py - a.y) * (b.x - a.x) / (b.y - a.y);
      if (px < x_cross) inside = !inside;
    }
  }
  return inside;
}

}  // namespace detail

/// Rasterizes a polygon to the set of pixels whose centers lie inside it
/// (even-odd rule), or inside its axis-aligned bounding box in bbox mode.
/// Output is clipped to image bounds.
inline PixelSet rasterize_polygon(const Polygon& poly, int width, int height,
                                  RegionMode mode = RegionMode::polygon) {
  if (poly.vertices.size() < 3)
    throw Error(ErrorCode::FEWER_THAN_3_VERTICES,
                "polygon has " + std::to_string(poly.vertices.size()) + " vertices");
  for (const Point& v : poly.vertices)
    if (!std::isfinite(v.x) || !std::isfinite(v.y))
      throw Error(ErrorCode::INVALID_POLYGON, "non-finite vertex coordinate");

  double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
  double ymin = xmin, ymax = -xmin;
  for (const Point& v : poly.vertices) {
    xmin = std::min(xmin, v.x); xmax = std::max(xmax, v.x);
    ymin = std::min(ymin, v.y); ymax = std::max(ymax, v.y);
  }
  if (xmax < 0 || ymax < 0 || xmin > width || ymin > height)
    throw Error(ErrorCode::OUT_OF_BOUNDS, "polygon lies entirely outside the image");

  PixelSet ps;
  ps.image_width = width;
  ps.image_height = height;

  const int row_lo = std::max(0, static_cast<int>(std::floor(ymin - 0.5)));
  const int row_hi = std::min(height - 1, static_cast<int>(std::ceil(ymax)));
  const int col_lo = std::max(0, static_cast<int>(std::floor(xmin - 0.5)));
  const int col_hi = std::min(width - 1, static_cast<int>(std::ceil(xmax)));

  if (mode == RegionMode::bbox) {
    for (int row = row_lo; row <= row_hi; ++row)
      for (int col = col_lo; col <= col_hi; ++col) {
        const double cx = col + 0.5, cy = row + 0.5;
        if (cx >= xmin && cx <= xmax && cy >= ymin && cy <= ymax)
          ps.pixels.push_back({col, row});
      }
  } else {
    // Scanline fill: collect half-open edge crossings per pixel-center row,
    // then fill spans between sorted crossing pairs.
    const std::size_t n = poly.vertices.size();
    std::vector<double> xs;
    for (int row = row_lo; row <= row_hi; ++row) {
      const double cy = row + 0.5;
      xs.clear();
      for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
        const Point& a = poly.vertices[i];
        const Point& b = poly.vertices[j];
        if ((a.y > cy) != (b.y > cy))
          xs.push_back(a.x + (cy - a.y) * (b.x - a.x) / (b.y - a.y));
      }
      std::sort(xs.begin(), xs.end());
      for (std::size_t s = 0; s + 1 < xs.size(); s += 2) {
        // interior centers are those with an odd crossing count strictly to
        // their right, i.e. cx in [xs[s], xs[s+1])
        int c0 = static_cast<int>(std::ceil(xs[s] - 0.5));
        int c1 = static_cast<int>(std::ceil(xs[s + 1] - 0.5)) - 1;
        c0 = std::max(c0, 0);
        c1 = std::min(c1, width - 1);
        for (int col = c0; col <= c1; ++col) {
          const double cx = col + 0.5;
          if (cx >= xs[s] && cx < xs[s + 1]) ps.pixels.push_back({col, row});
        }
      }
    }
  }
  if (ps.pixels.empty())
    throw Error(ErrorCode::EMPTY_RASTER, "polygon encloses no pixel center");
  return ps;
}

/// Center of mass of a pixel set: the mean of pixel column and row indices.
/// May fall outside the set for concave shapes.
inline Point center_of_mass(const PixelSet& ps) {
  if (ps.pixels.empty()) throw Error(ErrorCode::EMPTY_SET, "empty pixel set");
  double sx = 0.0, sy = 0.0;
  for (const PixelCoord& p : ps.pixels) {
    sx += p.col;
    sy += p.row;
  }
  const double n = static_cast<double>(ps.pixels.size());
  return {sx / n, sy / n};
}

/// Splits a pixel set into k rings of (near-)equal pixel count by distance
/// from the center, so ring i adds the next 1/k fraction of the object area.
/// Distance ties are broken by row-major pixel order.
inline RingPartition ring_partition(const PixelSet& ps, const Point& center,
                                    int k = 10) {
  if (ps.pixels.empty()) throw Error(ErrorCode::EMPTY_SET, "empty pixel set");
  if (k < 1) throw Error(ErrorCode::K_NONPOSITIVE, "ring count must be >= 1");

  const std::size_t n = ps.pixels.size();
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::vector<double> dist(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = ps.pixels[i].col - center.x;
    const double dy = ps.pixels[i].row - center.y;
    dist[i] = std::hypot(dx, dy);
  }
  // stable sort keeps row-major order on ties (pixels are row-major)
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return dist[a] < dist[b]; });

  RingPartition part;
  part.center = center;
  part.k = k;
  part.image_width = ps.image_width;
  part.image_height = ps.image_height;
  part.pixels = ps.pixels;
  part.ring_of.resize(n);
  part.radii.assign(k, 0.0);

  for (std::size_t rank1 = 1; rank1 <= n; ++rank1) {
    // smallest i with rank <= i*n/k, i.e. ceil(rank*k/n)
    const int ring = static_cast<int>((rank1 * k + n - 1) / n);
    const std::size_t idx = order[rank1 - 1];
    part.ring_of[idx] = ring;
    part.radii[ring - 1] = std::max(part.radii[ring - 1], dist[idx]);
  }
  // empty rings (k > n) inherit the previous radius to keep radii monotone
  for (int i = 1; i < k; ++i)
    part.radii[i] = std::max(part.radii[i], part.radii[i - 1]);

  part.build_index();
  return part;
}

}  // namespace gazecenter

#endif  // GAZECENTER_GEOMETRY_HPP
