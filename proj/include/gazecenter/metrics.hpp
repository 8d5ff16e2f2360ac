#ifndef GAZECENTER_METRICS_HPP
#define GAZECENTER_METRICS_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <vector>

#include "gazecenter/errors.hpp"
#include "gazecenter/geometry.hpp"
#include "gazecenter/grid.hpp"

namespace gazecenter {

// ---------------------------------------------------------------------------
// NSS
// ---------------------------------------------------------------------------

struct NssResult {
  double value = 0.0;
  std::size_t used = 0;     // in-bounds fixations scored
  std::size_t dropped = 0;  // out-of-bounds fixations ignored
};

/// Normalized Scanpath Saliency: z-score the map over all pixels (population
/// standard deviation), then average the z values at the pixels containing
/// each in-bounds fixation. A zero-variance map scores 0 by convention.
inline NssResult nss_detailed(const DenseGrid& map, const std::vector<Point>& fixations) {
  if (fixations.empty())
    throw Error(ErrorCode::NO_IN_BOUNDS_FIXATIONS, "no fixations given");
  const std::size_t n = map.size();
  double mean = map.sum() / static_cast<double>(n);
  double var = 0.0;
  for (double v : map.values()) var += (v - mean) * (v - mean);
  var /= static_cast<double>(n);
  // a constant map has no variance even when rounding makes var tiny-positive
  const double sd = map.max() > map.min() ? std::sqrt(var) : 0.0;

  NssResult res;
  double acc = 0.0;
  for (const Point& p : fixations) {
    const int col = static_cast<int>(std::floor(p.x));
    const int row = static_cast<int>(std::floor(p.y));
    if (!map.in_bounds(col, row)) {
      ++res.dropped;
      continue;
    }
    if (sd > 0) acc += (map.at(col, row) - mean) / sd;
    ++res.used;
  }
  if (res.used == 0)
    throw Error(ErrorCode::NO_IN_BOUNDS_FIXATIONS, "all fixations out of bounds");
  res.value = sd > 0 ? acc / static_cast<double>(res.used) : 0.0;
  return res;
}

inline double nss(const DenseGrid& map, const std::vector<Point>& fixations) {
  return nss_detailed(map, fixations).value;
}

// ---------------------------------------------------------------------------
// Ring profiles and the object center-bias index
// ---------------------------------------------------------------------------

struct RingProfile {
  std::vector<double> p;         // per-ring fixation density, sums to 1
  std::vector<double> mean_sal;  // optional, filled by ring_saliency_profile
  std::size_t n_fix = 0;         // fixations that landed inside the object
  double obj_cnt_idx = 0.0;      // inner-half density fraction
};

/// Fraction of density mass in the first ceil(k/2) rings; 0.5 under a
/// uniform distribution over all k rings.
inline double center_bias_index(const std::vector<double>& p) {
  const int k = static_cast<int>(p.size());
  const int half = (k + 1) / 2;
  double inner = 0.0, total = 0.0;
  for (int i = 0; i < k; ++i) {
    if (i < half) inner += p[i];
    total += p[i];
  }
  return total > 0 ? inner / total : 0.0;
}

/// Counts fixations per ring (point -> containing pixel -> ring), ignoring
/// fixations outside the object, and returns normalized densities. Absent
/// when no fixation hits the object.
inline std::optional<RingProfile> ring_fixation_profile(
    const RingPartition& part, const std::vector<Point>& fixations) {
  std::vector<std::size_t> counts(part.k, 0);
  std::size_t total = 0;
  for (const Point& p : fixations) {
    const int col = static_cast<int>(std::floor(p.x));
    const int row = static_cast<int>(std::floor(p.y));
    const int ring = part.ring_at(col, row);
    if (ring > 0) {
      ++counts[ring - 1];
      ++total;
    }
  }
  if (total == 0) return std::nullopt;
  RingProfile prof;
  prof.n_fix = total;
  prof.p.resize(part.k);
  for (int i = 0; i < part.k; ++i)
    prof.p[i] = static_cast<double>(counts[i]) / static_cast<double>(total);
  prof.obj_cnt_idx = center_bias_index(prof.p);
  return prof;
}

/// Mean map value inside each ring.
inline std::vector<double> ring_saliency_profile(const RingPartition& part,
                                                 const DenseGrid& map) {
  if (map.width() != part.image_width || map.height() != part.image_height)
    throw Error(ErrorCode::DIM_MISMATCH, "map dims do not match partition image dims");
  std::vector<double> sums(part.k, 0.0);
  std::vector<std::size_t> counts(part.k, 0);
  for (std::size_t i = 0; i < part.pixels.size(); ++i) {
    const int ring = part.ring_of[i];
    sums[ring - 1] += map.at(part.pixels[i].col, part.pixels[i].row);
    ++counts[ring - 1];
  }
  std::vector<double> out(part.k, 0.0);
  for (int i = 0; i < part.k; ++i)
    if (counts[i] > 0) out[i] = sums[i] / static_cast<double>(counts[i]);
  return out;
}

// ---------------------------------------------------------------------------
// Paired t-test
// ---------------------------------------------------------------------------

namespace detail {

/// Continued-fraction evaluation of the regularized incomplete beta function
/// I_x(a,b) (Lentz's method), accurate to ~1e-14 relative.
inline double ibeta_cf(double a, double b, double x) {
  constexpr double tiny = 1e-300;
  constexpr double eps = 1e-15;
  double c = 1.0;
  double d = 1.0 - (a + b) * x / (a + 1.0);
  if (std::abs(d) < tiny) d = tiny;
  d = 1.0 / d;
  double result = d;
  for (int m = 1; m <= 500; ++m) {
    const double m2 = 2.0 * m;
    // even step
    double num = m * (b - m) * x / ((a + m2 - 1.0) * (a + m2));
    d = 1.0 + num * d;
    if (std::abs(d) < tiny) d = tiny;
    c = 1.0 + num / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    result *= d * c;
    // odd step
    num = -(a + m) * (a + b + m) * x / ((a + m2) * (a + m2 + 1.0));
    d = 1.0 + num * d;
    if (std::abs(d) < tiny) d = tiny;
    c = 1.0 + num / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double delta = d * c;
    result *= delta;
    if (std::abs(delta - 1.0) < eps) break;
  }
  return result;
}

inline double ibeta(double a, double b, double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double ln_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                          a * std::log(x) + b * std::log1p(-x);
  const double front = std::exp(ln_front);
  if (x < (a + 1.0) / (a + b + 2.0))
    return front * ibeta_cf(a, b, x) / a;
  return 1.0 - std::exp(std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                        b * std::log1p(-x) + a * std::log(x)) *
                   ibeta_cf(b, a, 1.0 - x) / b;
}

}  // namespace detail

/// Two-tailed p-value of Student's t with the given degrees of freedom,
/// via the regularized incomplete beta function.
inline double student_t_two_tailed_p(double t, double df) {
  if (!std::isfinite(t)) return 0.0;
  const double x = df / (df + t * t);
  return detail::ibeta(df / 2.0, 0.5, x);
}

struct TestResult {
  double t_statistic = 0.0;
  double p_value = 1.0;
  std::size_t n = 0;
  double mean_diff = 0.0;
  double sem = 0.0;
};

/// Two-tailed paired t-test on index-matched samples. Conventions: all-zero
/// differences give t=0, p=1; zero-variance nonzero differences give p=0.
inline TestResult paired_t_test(const std::vector<double>& a,
                                const std::vector<double>& b) {
  if (a.size() != b.size())
    throw Error(ErrorCode::LENGTH_MISMATCH, "paired samples differ in length");
  if (a.size() < 2)
    throw Error(ErrorCode::TOO_FEW_SAMPLES, "need at least 2 pairs");

  const std::size_t n = a.size();
  std::vector<double> diff(n);
  for (std::size_t i = 0; i < n; ++i) diff[i] = a[i] - b[i];
  double mean = 0.0;
  for (double d : diff) mean += d;
  mean /= static_cast<double>(n);
  double ss = 0.0;
  for (double d : diff) ss += (d - mean) * (d - mean);
  const double sd = std::sqrt(ss / static_cast<double>(n - 1));
  const double sem = sd / std::sqrt(static_cast<double>(n));

  TestResult res;
  res.n = n;
  res.mean_diff = mean;
  res.sem = sem;
  if (sd == 0.0) {
    if (mean == 0.0) {
      res.t_statistic = 0.0;
      res.p_value = 1.0;
    } else {
      res.t_statistic = mean > 0 ? std::numeric_limits<double>::infinity()
                                 : -std::numeric_limits<double>::infinity();
      res.p_value = 0.0;
    }
    return res;
  }
  res.t_statistic = mean / sem;
  res.p_value = student_t_two_tailed_p(res.t_statistic, static_cast<double>(n - 1));
  return res;
}

}  // namespace gazecenter

#endif  // GAZECENTER_METRICS_HPP
