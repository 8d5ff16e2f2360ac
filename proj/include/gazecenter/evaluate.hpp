#ifndef GAZECENTER_EVALUATE_HPP
#define GAZECENTER_EVALUATE_HPP

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <functional>
#include <mutex>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "gazecenter/dataset.hpp"
#include "gazecenter/errors.hpp"
#include "gazecenter/grid.hpp"
#include "gazecenter/maps.hpp"
#include "gazecenter/metrics.hpp"

namespace gazecenter {

// ---------------------------------------------------------------------------
// Parallel helper
// ---------------------------------------------------------------------------

inline unsigned max_threads() {
  if (const char* env = std::getenv("GAZECENTER_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v >= 1) return static_cast<unsigned>(v);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? hw : 1;
}

/// Runs fn(0..n-1) across worker threads; results must be written to
/// pre-sized slots so ordering stays deterministic. First exception rethrown.
inline void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
  const unsigned threads = std::min<std::size_t>(max_threads(), n);
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= n) return;
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!error) error = std::current_exception();
          return;
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

// ---------------------------------------------------------------------------
// Beta sweep
// ---------------------------------------------------------------------------

inline std::vector<double> default_beta_grid() {
  std::vector<double> betas;
  for (int i = 0; i <= 10; ++i) betas.push_back(i / 10.0);
  return betas;
}

struct SweepConfig {
  WeightScheme scheme;
  RegionMode region_mode = RegionMode::polygon;
  int k = 10;
  std::vector<double> betas = default_beta_grid();
  std::string saliency_source = "external";
};

struct SweepResult {
  std::vector<double> betas;
  std::vector<std::string> image_ids;          // rows of per_image_nss
  std::vector<std::vector<double>> per_image_nss;  // image x beta
  std::vector<double> mean_nss;
  std::vector<double> sem;
  double beta_opt = 0.0;
  SweepConfig config;
  // images skipped from O-dependent columns (no object annotations),
  // paired with their saliency-only NSS
  std::vector<std::pair<std::string, double>> no_object_images;
};

/// Sweeps convex saliency/object-map blends over the beta grid, scoring each image's
/// combined map against that image's fixations. Saliency maps come from the
/// supplied callback (file loader or builtin model).
inline SweepResult sweep_beta(
    const std::vector<ImageAnnotation>& anns, const FixationSet& fixations,
    const std::function<DenseGrid(const ImageAnnotation&)>& saliency_for,
    const SweepConfig& config = {}) {
  if (anns.empty()) throw Error(ErrorCode::EMPTY_DATASET, "no images");
  for (double b : config.betas)
    if (!(b >= 0.0 && b <= 1.0))
      throw Error(ErrorCode::BETA_OUT_OF_RANGE, "beta grid entry outside [0,1]");
  if (std::adjacent_find(config.betas.begin(), config.betas.end(),
                         [](double a, double b) { return a >= b; }) !=
      config.betas.end())
    throw Error(ErrorCode::BETA_OUT_OF_RANGE, "beta grid must be strictly increasing");

  auto fix_by_image = fixations.points_by_image();

  SweepResult result;
  result.betas = config.betas;
  result.config = config;

  struct PerImage {
    bool has_objects = false;
    std::string id;
    std::vector<double> row;
    double beta0 = 0.0;
  };
  std::vector<PerImage> rows(anns.size());

  parallel_for(anns.size(), [&](std::size_t i) {
    const ImageAnnotation& img = anns[i];
    PerImage& out = rows[i];
    out.id = img.image_id;

    auto it = fix_by_image.find(img.image_id);
    if (it == fix_by_image.end() || it->second.empty())
      throw Error(ErrorCode::NO_IN_BOUNDS_FIXATIONS,
                  "image '" + img.image_id + "' has no fixations");
    const std::vector<Point>& fix = it->second;

    const DenseGrid saliency = saliency_for(img);
    if (img.objects.empty()) {
      out.beta0 = nss(saliency, fix);
      return;
    }
    out.has_objects = true;
    const DenseGrid object_map =
        build_object_map(img, config.scheme, config.region_mode, config.k);
    out.row.reserve(config.betas.size());
    for (double beta : config.betas)
      out.row.push_back(nss(combine(saliency, object_map, beta).grid, fix));
  });

  for (PerImage& r : rows) {
    if (r.has_objects) {
      result.image_ids.push_back(r.id);
      result.per_image_nss.push_back(std::move(r.row));
    } else {
      result.no_object_images.emplace_back(r.id, r.beta0);
    }
  }
  if (result.per_image_nss.empty())
    throw Error(ErrorCode::EMPTY_DATASET, "no image with object annotations");

  const std::size_t n_img = result.per_image_nss.size();
  const std::size_t n_beta = config.betas.size();
  result.mean_nss.assign(n_beta, 0.0);
  result.sem.assign(n_beta, 0.0);
  for (std::size_t j = 0; j < n_beta; ++j) {
    double mean = 0.0;
    for (std::size_t i = 0; i < n_img; ++i) mean += result.per_image_nss[i][j];
    mean /= static_cast<double>(n_img);
    result.mean_nss[j] = mean;
    if (n_img > 1) {
      double ss = 0.0;
      for (std::size_t i = 0; i < n_img; ++i) {
        const double d = result.per_image_nss[i][j] - mean;
        ss += d * d;
      }
      result.sem[j] = std::sqrt(ss / static_cast<double>(n_img - 1)) /
                      std::sqrt(static_cast<double>(n_img));
    }
  }
  // argmax with ties toward smaller beta
  std::size_t best = 0;
  for (std::size_t j = 1; j < n_beta; ++j)
    if (result.mean_nss[j] > result.mean_nss[best]) best = j;
  result.beta_opt = config.betas[best];
  return result;
}

// ---------------------------------------------------------------------------
// Model comparison
// ---------------------------------------------------------------------------

struct ComparisonResult {
  double win_rate_a_over_b = 0.0;  // strict wins of a
  std::size_t tie_count = 0;
  TestResult test;
};

inline ComparisonResult compare_models(const std::vector<double>& scores_a,
                                       const std::vector<double>& scores_b) {
  if (scores_a.size() != scores_b.size())
    throw Error(ErrorCode::LENGTH_MISMATCH, "per-image score lists differ in length");
  ComparisonResult res;
  std::size_t wins = 0;
  for (std::size_t i = 0; i < scores_a.size(); ++i) {
    if (scores_a[i] > scores_b[i]) ++wins;
    else if (scores_a[i] == scores_b[i]) ++res.tie_count;
  }
  res.win_rate_a_over_b = static_cast<double>(wins) / static_cast<double>(scores_a.size());
  res.test = paired_t_test(scores_a, scores_b);
  return res;
}

// ---------------------------------------------------------------------------
// Synthetic fixation sampler
// ---------------------------------------------------------------------------

/// Draws n pixel indices with probability proportional to the (normalized)
/// map and returns the pixel centers. Deterministic given the seed.
inline std::vector<Point> sample_fixations(const DenseGrid& map, std::size_t n,
                                           std::uint64_t seed) {
  if (map.empty() || std::abs(map.sum() - 1.0) > 1e-6)
    throw Error(ErrorCode::UNNORMALIZED_MAP, "sampling map must sum to 1");
  std::vector<double> cdf(map.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < map.size(); ++i) {
    acc += map.values()[i];
    cdf[i] = acc;
  }
  cdf.back() = 1.0;

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  std::vector<Point> points;
  points.reserve(n);
  for (std::size_t s = 0; s < n; ++s) {
    const double u = uniform(rng);
    const std::size_t idx =
        std::upper_bound(cdf.begin(), cdf.end(), u) - cdf.begin();
    const std::size_t i = std::min(idx, map.size() - 1);
    const int col = static_cast<int>(i % map.width());
    const int row = static_cast<int>(i / map.width());
    points.push_back({col + 0.5, row + 0.5});
  }
  return points;
}

}  // namespace gazecenter

#endif  // GAZECENTER_EVALUATE_HPP
