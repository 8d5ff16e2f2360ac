#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "gazecenter/maps.hpp"
#include "test_helpers.hpp"

using namespace gazecenter;
using test_helpers::random_grid;

namespace {

ImageAnnotation one_object_image(int w, int h, Polygon poly) {
  ImageAnnotation img;
  img.image_id = "img";
  img.width = w;
  img.height = h;
  img.objects.push_back({"obj1", std::move(poly), ""});
  return img;
}

Polygon circle_polygon(double cx, double cy, double radius, int segments = 128) {
  Polygon poly;
  for (int i = 0; i < segments; ++i) {
    const double a = 2.0 * M_PI * i / segments;
    poly.vertices.push_back({cx + radius * std::cos(a), cy + radius * std::sin(a)});
  }
  return poly;
}

}  // namespace

TEST_CASE("build_object_map: full-image object with constant scheme is uniform") {
  const auto img = one_object_image(8, 6, {{{-1, -1}, {9, -1}, {9, 7}, {-1, 7}}});
  const DenseGrid o = build_object_map(img, {WeightKind::constant});
  for (double v : o.values()) REQUIRE(v == Catch::Approx(1.0 / 48.0));
}

TEST_CASE("build_object_map: linear scheme makes ring 1 pixels 10x ring 10 pixels") {
  const auto img = one_object_image(101, 101, circle_polygon(50.5, 50.5, 45.0));
  const DenseGrid o = build_object_map(img, {WeightKind::linear}, RegionMode::polygon, 10);

  const PixelSet ps = rasterize_polygon(img.objects[0].polygon, 101, 101);
  const RingPartition part = ring_partition(ps, center_of_mass(ps), 10);
  double v1 = -1, v10 = -1;
  for (std::size_t i = 0; i < part.pixels.size(); ++i) {
    if (part.ring_of[i] == 1) v1 = o.at(part.pixels[i].col, part.pixels[i].row);
    if (part.ring_of[i] == 10) v10 = o.at(part.pixels[i].col, part.pixels[i].row);
  }
  REQUIRE(v1 / v10 == Catch::Approx(10.0));
}

TEST_CASE("build_object_map: zero objects rejected") {
  ImageAnnotation img;
  img.image_id = "empty";
  img.width = 8;
  img.height = 8;
  REQUIRE_THROWS_MATCHES(build_object_map(img, {}), Error,
                         Catch::Matchers::Predicate<Error>([](const Error& e) {
                           return e.code() == ErrorCode::NO_OBJECTS;
                         }));
}

TEST_CASE("build_object_map: normalized, non-negative, zero outside objects") {
  const auto img = one_object_image(32, 24, {{{4, 4}, {20, 6}, {14, 18}}});
  for (WeightKind kind : {WeightKind::linear, WeightKind::constant, WeightKind::gaussian}) {
    const DenseGrid o = build_object_map(img, {kind});
    REQUIRE(std::abs(o.sum() - 1.0) <= 1e-9);
    for (double v : o.values()) REQUIRE(v >= 0.0);

    const PixelSet ps = rasterize_polygon(img.objects[0].polygon, 32, 24);
    for (int row = 0; row < 24; ++row)
      for (int col = 0; col < 32; ++col)
        if (!ps.contains(col, row)) REQUIRE(o.at(col, row) == 0.0);
  }
}

TEST_CASE("build_object_map: scheme monotonicity of mean ring weight") {
  const auto img = one_object_image(101, 101, circle_polygon(50.5, 50.5, 45.0));
  const PixelSet ps = rasterize_polygon(img.objects[0].polygon, 101, 101);
  const RingPartition part = ring_partition(ps, center_of_mass(ps), 10);

  for (WeightKind kind : {WeightKind::linear, WeightKind::gaussian, WeightKind::constant}) {
    const DenseGrid o = build_object_map(img, {kind});
    std::vector<double> mean(10, 0.0);
    std::vector<int> count(10, 0);
    for (std::size_t i = 0; i < part.pixels.size(); ++i) {
      mean[part.ring_of[i] - 1] += o.at(part.pixels[i].col, part.pixels[i].row);
      ++count[part.ring_of[i] - 1];
    }
    for (int i = 0; i < 10; ++i) mean[i] /= count[i];
    for (int i = 1; i < 10; ++i) {
      if (kind == WeightKind::constant)
        REQUIRE(mean[i] == Catch::Approx(mean[i - 1]));
      else
        REQUIRE(mean[i] <= mean[i - 1] + 1e-12);
    }
  }
}

TEST_CASE("build_object_map: overlapping objects take pointwise max") {
  ImageAnnotation img;
  img.image_id = "overlap";
  img.width = 16;
  img.height = 16;
  img.objects.push_back({"a", {{{0, 0}, {10, 0}, {10, 10}, {0, 10}}}, ""});
  img.objects.push_back({"b", {{{6, 6}, {15, 6}, {15, 15}, {6, 15}}}, ""});
  const DenseGrid both = build_object_map(img, {WeightKind::constant});
  // constant scheme: every covered pixel has the same weight, so the overlap
  // region must not be double-counted
  double hi = both.max();
  for (const auto& obj : img.objects) {
    const PixelSet ps = rasterize_polygon(obj.polygon, 16, 16);
    for (const PixelCoord& p : ps.pixels)
      REQUIRE(both.at(p.col, p.row) == Catch::Approx(hi));
  }
}

TEST_CASE("build_object_map: bbox support contains polygon support") {
  const auto img = one_object_image(32, 24, {{{4, 4}, {20, 6}, {14, 18}}});
  const DenseGrid po = build_object_map(img, {}, RegionMode::polygon);
  const DenseGrid bo = build_object_map(img, {}, RegionMode::bbox);
  for (std::size_t i = 0; i < po.size(); ++i)
    if (po.values()[i] > 0) REQUIRE(bo.values()[i] > 0);
}

TEST_CASE("build_fixation_map: delta and smoothing behavior") {
  const DenseGrid delta = build_fixation_map({{3.2, 2.7}}, 8, 8, 0.0);
  REQUIRE(delta.at(3, 2) == 1.0);
  REQUIRE(delta.sum() == Catch::Approx(1.0));

  const DenseGrid smooth = build_fixation_map({{3.2, 2.7}}, 8, 8, 1.0);
  double best = -1;
  int best_col = -1, best_row = -1;
  for (int row = 0; row < 8; ++row)
    for (int col = 0; col < 8; ++col)
      if (smooth.at(col, row) > best) {
        best = smooth.at(col, row);
        best_col = col;
        best_row = row;
      }
  REQUIRE(best_col == 3);
  REQUIRE(best_row == 2);

  const DenseGrid once = build_fixation_map({{3.2, 2.7}, {3.2, 2.7}}, 8, 8, 0.5);
  const DenseGrid single = build_fixation_map({{3.2, 2.7}}, 8, 8, 0.5);
  REQUIRE(once.values() == single.values());

  REQUIRE_THROWS_MATCHES(build_fixation_map({{-5.0, -5.0}}, 8, 8, 0.0), Error,
                         Catch::Matchers::Predicate<Error>([](const Error& e) {
                           return e.code() == ErrorCode::NO_IN_BOUNDS_FIXATIONS;
                         }));
}

TEST_CASE("smooth_map: identity at sigma 0, sum preservation, negative sigma") {
  std::mt19937 rng(5);
  const DenseGrid g = random_grid(rng, 16, 12);
  REQUIRE(smooth_map(g, 0.0).values() == g.values());
  for (double sigma : {0.5, 1.0, 2.5, 7.0})
    REQUIRE(std::abs(smooth_map(g, sigma).sum() - g.sum()) <= 1e-9);
  REQUIRE_THROWS_AS(smooth_map(g, -1.0), Error);
}

TEST_CASE("smooth_map: delta matches brute-force 2-D convolution") {
  const double sigma = 1.5;
  const int radius = static_cast<int>(std::ceil(3.0 * sigma));
  DenseGrid delta(21, 21);
  delta.at(10, 10) = 1.0;
  const DenseGrid fast = smooth_map(delta, sigma);

  // dense 2-D convolution with the same truncated, renormalized kernel
  std::vector<double> k1(2 * radius + 1);
  double ksum = 0.0;
  for (int i = -radius; i <= radius; ++i) {
    k1[i + radius] = std::exp(-0.5 * i * i / (sigma * sigma));
    ksum += k1[i + radius];
  }
  for (double& v : k1) v /= ksum;
  DenseGrid slow(21, 21);
  for (int row = 0; row < 21; ++row)
    for (int col = 0; col < 21; ++col) {
      double acc = 0.0;
      for (int dy = -radius; dy <= radius; ++dy)
        for (int dx = -radius; dx <= radius; ++dx) {
          const int c = col + dx, r = row + dy;
          if (c >= 0 && c < 21 && r >= 0 && r < 21)
            acc += k1[dx + radius] * k1[dy + radius] * delta.at(c, r);
        }
      slow.at(col, row) = acc;
    }
  const double scale = delta.sum() / slow.sum();
  for (std::size_t i = 0; i < fast.size(); ++i)
    REQUIRE(std::abs(fast.values()[i] - slow.values()[i] * scale) < 1e-12);
}

TEST_CASE("combine: endpoint identities and convexity") {
  std::mt19937 rng(9);
  const DenseGrid s = normalized(random_grid(rng, 10, 8));
  const DenseGrid o = normalized(random_grid(rng, 10, 8));

  REQUIRE(combine(s, o, 0.0).grid.values() == s.values());
  REQUIRE(combine(s, o, 1.0).grid.values() == o.values());

  for (double beta : {0.1, 0.3, 0.5, 0.7, 0.9}) {
    const DenseGrid sm = combine(s, o, beta).grid;
    REQUIRE(std::abs(sm.sum() - 1.0) <= 1e-9);
    for (std::size_t i = 0; i < sm.size(); ++i) {
      REQUIRE(sm.values()[i] >= std::min(s.values()[i], o.values()[i]) - 1e-15);
      REQUIRE(sm.values()[i] <= std::max(s.values()[i], o.values()[i]) + 1e-15);
    }
  }

  const DenseGrid uniform(10, 8, 1.0 / 80.0);
  const DenseGrid blend = combine(uniform, uniform, 0.4).grid;
  for (double v : blend.values()) REQUIRE(v == Catch::Approx(1.0 / 80.0));

  REQUIRE_THROWS_AS(combine(s, DenseGrid(4, 4, 1.0 / 16.0), 0.5), Error);
  REQUIRE_THROWS_AS(combine(s, o, 1.5), Error);
  REQUIRE_THROWS_AS(combine(s, o, -0.1), Error);
}
