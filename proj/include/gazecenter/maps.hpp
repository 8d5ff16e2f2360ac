#ifndef GAZECENTER_MAPS_HPP
#define GAZECENTER_MAPS_HPP

#include <cmath>
#include <string>
#include <vector>

#include "gazecenter/dataset.hpp"
#include "gazecenter/errors.hpp"
#include "gazecenter/geometry.hpp"
#include "gazecenter/grid.hpp"

namespace gazecenter {

enum class WeightKind { linear, constant, gaussian };

struct WeightScheme {
  WeightKind kind = WeightKind::linear;
  double gaussian_sigma_rings = 3.0;  // used only by the gaussian kind
};

inline const char* to_string(WeightKind k) {
  switch (k) {
    case WeightKind::linear: return "linear";
    case WeightKind::constant: return "constant";
    case WeightKind::gaussian: return "gaussian";
  }
  return "?";
}

/// Per-pixel weight for ring index i (1-based) out of k rings.
inline double ring_weight(const WeightScheme& scheme, int ring, int k) {
  switch (scheme.kind) {
    case WeightKind::linear:
      return static_cast<double>(k + 1 - ring) / k;
    case WeightKind::constant:
      return 1.0;
    case WeightKind::gaussian: {
      const double s = scheme.gaussian_sigma_rings;
      const double d = ring - 1;
      return std::exp(-d * d / (2.0 * s * s));
    }
  }
  return 0.0;
}

/// Builds the object center-bias map O: every object is rasterized,
/// partitioned into k equal-area rings around its center of mass, and each
/// ring's pixels receive the scheme weight. Overlapping objects resolve by
/// pointwise maximum. The result is normalized to sum 1; pixels outside
/// every object stay exactly 0.
inline DenseGrid build_object_map(const ImageAnnotation& img,
                                  const WeightScheme& scheme,
                                  RegionMode region_mode = RegionMode::polygon,
                                  int k = 10) {
  if (img.objects.empty())
    throw Error(ErrorCode::NO_OBJECTS, "image '" + img.image_id + "' has no objects");
  if (scheme.kind == WeightKind::gaussian && scheme.gaussian_sigma_rings <= 0)
    throw Error(ErrorCode::NEGATIVE_SIGMA, "gaussian_sigma_rings must be > 0");

  DenseGrid grid(img.width, img.height);
  for (const auto& obj : img.objects) {
    const PixelSet ps = rasterize_polygon(obj.polygon, img.width, img.height, region_mode);
    const Point com = center_of_mass(ps);
    const RingPartition part = ring_partition(ps, com, k);
    for (std::size_t i = 0; i < part.pixels.size(); ++i) {
      const double w = ring_weight(scheme, part.ring_of[i], k);
      double& cell = grid.at(part.pixels[i].col, part.pixels[i].row);
      cell = std::max(cell, w);
    }
  }
  normalize(grid);
  return grid;
}

/// Binned fixation histogram, Gaussian-smoothed, normalized to sum 1.
inline DenseGrid build_fixation_map(const std::vector<Point>& fixations,
                                    int width, int height, double sigma_px) {
  DenseGrid grid(width, height);
  std::size_t in_bounds = 0;
  for (const Point& p : fixations) {
    const int col = static_cast<int>(std::floor(p.x));
    const int row = static_cast<int>(std::floor(p.y));
    if (grid.in_bounds(col, row)) {
      grid.at(col, row) += 1.0;
      ++in_bounds;
    }
  }
  if (in_bounds == 0)
    throw Error(ErrorCode::NO_IN_BOUNDS_FIXATIONS, "no in-bounds fixations to bin");
  grid = smooth_map(grid, sigma_px);
  normalize(grid);
  return grid;
}

struct CombinedMap {
  DenseGrid grid;
  double beta = 0.0;
  std::string saliency_source;
  std::string object_map_config;
};

/// SM = (1-beta)*S + beta*O. Both inputs must be normalized and share dims;
/// beta=0 reproduces S exactly and beta=1 reproduces O exactly.
inline CombinedMap combine(const DenseGrid& saliency, const DenseGrid& object_map,
                           double beta) {
  if (!saliency.same_dims(object_map))
    throw Error(ErrorCode::DIM_MISMATCH, "saliency and object map dims differ");
  if (!(beta >= 0.0 && beta <= 1.0))
    throw Error(ErrorCode::BETA_OUT_OF_RANGE, "beta must be in [0,1]");
  CombinedMap out;
  out.beta = beta;
  out.grid = DenseGrid(saliency.width(), saliency.height());
  if (beta == 0.0) {
    out.grid = saliency;
  } else if (beta == 1.0) {
    out.grid = object_map;
  } else {
    for (std::size_t i = 0; i < saliency.size(); ++i)
      out.grid.values()[i] =
          (1.0 - beta) * saliency.values()[i] + beta * object_map.values()[i];
  }
  return out;
}

}  // namespace gazecenter

#endif  // GAZECENTER_MAPS_HPP
