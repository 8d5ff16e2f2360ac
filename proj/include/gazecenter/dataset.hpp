#ifndef GAZECENTER_DATASET_HPP
#define GAZECENTER_DATASET_HPP

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "gazecenter/errors.hpp"
#include "gazecenter/geometry.hpp"
#include "gazecenter/grid.hpp"

namespace gazecenter {

struct ObjectAnnotation {
  std::string object_id;
  Polygon polygon;
  std::string label;  // optional, empty when absent
};

struct ImageAnnotation {
  std::string image_id;
  int width = 0;
  int height = 0;
  std::vector<ObjectAnnotation> objects;
};

struct FixationRecord {
  std::string image_id;
  std::string observer_id;
  int fixation_index = 1;
  double x = 0.0;
  double y = 0.0;
  std::optional<double> duration_ms;
};

struct FixationSet {
  std::vector<FixationRecord> records;

  std::map<std::string, std::vector<Point>> points_by_image() const {
    std::map<std::string, std::vector<Point>> out;
    for (const auto& r : records) out[r.image_id].push_back({r.x, r.y});
    return out;
  }
};

// ---------------------------------------------------------------------------
// Annotation JSON
// ---------------------------------------------------------------------------

inline std::vector<ImageAnnotation> parse_annotations(const nlohmann::json& doc) {
  if (!doc.contains("images") || !doc["images"].is_array())
    throw Error(ErrorCode::PARSE_ERROR, "missing top-level 'images' array");
  std::vector<ImageAnnotation> out;
  std::set<std::string> seen;
  for (const auto& jimg : doc["images"]) {
    ImageAnnotation img;
    try {
      img.image_id = jimg.at("id").get<std::string>();
      img.width = jimg.at("width").get<int>();
      img.height = jimg.at("height").get<int>();
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::PARSE_ERROR, std::string("image entry: ") + e.what());
    }
    if (img.width <= 0 || img.height <= 0)
      throw Error(ErrorCode::PARSE_ERROR, "image '" + img.image_id + "': non-positive dims");
    if (!seen.insert(img.image_id).second)
      throw Error(ErrorCode::DUPLICATE_IMAGE_ID, img.image_id);

    std::set<std::string> obj_ids;
    for (const auto& jobj : jimg.value("objects", nlohmann::json::array())) {
      ObjectAnnotation obj;
      try {
        obj.object_id = jobj.at("id").get<std::string>();
        obj.label = jobj.value("label", "");
        for (const auto& v : jobj.at("polygon"))
          obj.polygon.vertices.push_back({v.at(0).get<double>(), v.at(1).get<double>()});
      } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::PARSE_ERROR,
                    "image '" + img.image_id + "' object entry: " + e.what());
      }
      if (obj.polygon.vertices.size() < 3)
        throw Error(ErrorCode::INVALID_POLYGON,
                    "object '" + obj.object_id + "' has fewer than 3 vertices");
      for (const Point& p : obj.polygon.vertices)
        if (!std::isfinite(p.x) || !std::isfinite(p.y))
          throw Error(ErrorCode::INVALID_POLYGON,
                      "object '" + obj.object_id + "' has non-finite vertex");
      if (!obj_ids.insert(obj.object_id).second)
        throw Error(ErrorCode::PARSE_ERROR, "image '" + img.image_id +
                                                "': duplicate object id '" + obj.object_id + "'");
      img.objects.push_back(std::move(obj));
    }
    out.push_back(std::move(img));
  }
  return out;
}

inline std::vector<ImageAnnotation> load_annotations(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IO_ERROR, "cannot open: " + path);
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::PARSE_ERROR, path + ": " + e.what());
  }
  return parse_annotations(doc);
}

inline nlohmann::json annotations_to_json(const std::vector<ImageAnnotation>& anns) {
  nlohmann::json jimages = nlohmann::json::array();
  for (const auto& img : anns) {
    nlohmann::json jobjs = nlohmann::json::array();
    for (const auto& obj : img.objects) {
      nlohmann::json jpoly = nlohmann::json::array();
      for (const Point& p : obj.polygon.vertices) jpoly.push_back({p.x, p.y});
      nlohmann::json jobj = {{"id", obj.object_id}, {"polygon", jpoly}};
      if (!obj.label.empty()) jobj["label"] = obj.label;
      jobjs.push_back(std::move(jobj));
    }
    jimages.push_back({{"id", img.image_id},
                       {"width", img.width},
                       {"height", img.height},
                       {"objects", jobjs}});
  }
  return nlohmann::json{{"images", jimages}};
}

inline void save_annotations(const std::string& path,
                             const std::vector<ImageAnnotation>& anns) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::IO_ERROR, "cannot open for writing: " + path);
  out << annotations_to_json(anns).dump(2) << '\n';
}

// ---------------------------------------------------------------------------
// Fixation CSV
// ---------------------------------------------------------------------------

inline FixationSet load_fixations(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IO_ERROR, "cannot open: " + path);
  std::string line;
  if (!std::getline(in, line))
    throw Error(ErrorCode::PARSE_ERROR, path + ": empty file (header expected)");
  if (!line.empty() && line.back() == '\r') line.pop_back();

  std::vector<std::string> cols;
  {
    std::stringstream ss(line);
    std::string c;
    while (std::getline(ss, c, ',')) cols.push_back(c);
  }
  static const std::vector<std::string> required = {"image_id", "observer_id",
                                                    "fixation_index", "x", "y"};
  for (const auto& c : cols)
    if (std::find(required.begin(), required.end(), c) == required.end() &&
        c != "duration_ms")
      throw Error(ErrorCode::UNKNOWN_COLUMN, path + ": '" + c + "'");
  for (const auto& r : required)
    if (std::find(cols.begin(), cols.end(), r) == cols.end())
      throw Error(ErrorCode::PARSE_ERROR, path + ": missing column '" + r + "'");

  auto col_index = [&](const std::string& name) -> int {
    auto it = std::find(cols.begin(), cols.end(), name);
    return it == cols.end() ? -1 : static_cast<int>(it - cols.begin());
  };
  const int ci_img = col_index("image_id"), ci_obs = col_index("observer_id");
  const int ci_idx = col_index("fixation_index");
  const int ci_x = col_index("x"), ci_y = col_index("y");
  const int ci_dur = col_index("duration_ms");

  FixationSet fs;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string c;
    while (std::getline(ss, c, ',')) cells.push_back(c);
    while (cells.size() < cols.size()) cells.emplace_back();
    if (cells.size() != cols.size())
      throw Error(ErrorCode::PARSE_ERROR,
                  path + " row " + std::to_string(lineno) + ": wrong field count");

    auto num = [&](int ci, const char* field) {
      try {
        std::size_t pos = 0;
        double v = std::stod(cells[ci], &pos);
        if (pos != cells[ci].size()) throw std::invalid_argument(cells[ci]);
        return v;
      } catch (const std::exception&) {
        throw Error(ErrorCode::PARSE_ERROR, path + " row " + std::to_string(lineno) +
                                                ": non-numeric " + field + " '" +
                                                cells[ci] + "'");
      }
    };

    FixationRecord rec;
    rec.image_id = cells[ci_img];
    rec.observer_id = cells[ci_obs];
    rec.fixation_index = static_cast<int>(num(ci_idx, "fixation_index"));
    if (rec.fixation_index < 1)
      throw Error(ErrorCode::PARSE_ERROR,
                  path + " row " + std::to_string(lineno) + ": fixation_index < 1");
    rec.x = num(ci_x, "x");
    rec.y = num(ci_y, "y");
    if (ci_dur >= 0 && !cells[ci_dur].empty()) rec.duration_ms = num(ci_dur, "duration_ms");
    fs.records.push_back(std::move(rec));
  }
  return fs;
}

// ---------------------------------------------------------------------------
// Dataset statistics
// ---------------------------------------------------------------------------

struct Histogram {
  double lo = 0.0, hi = 1.0;
  std::vector<std::size_t> counts;

  void add(double v) {
    if (counts.empty()) return;
    const double t = (v - lo) / (hi - lo);
    int bin = static_cast<int>(t * counts.size());
    bin = std::clamp(bin, 0, static_cast<int>(counts.size()) - 1);
    ++counts[bin];
  }
  std::size_t total() const {
    std::size_t n = 0;
    for (auto c : counts) n += c;
    return n;
  }
};

struct ObjectStat {
  std::string image_id;
  std::string object_id;
  double normalized_size = 0.0;    // object pixels / image pixels
  double fixation_fraction = 0.0;  // fixations inside / fixations on image
};

struct DatasetStats {
  std::vector<ObjectStat> per_object;
  std::map<std::string, std::string> most_salient;  // image_id -> object_id
  Histogram size_hist;
  Histogram fraction_hist;
  double mean_objects_per_image = 0.0;
  double median_objects_per_image = 0.0;
  std::size_t total_fixations = 0;
  DenseGrid avg_annotation_map;
  DenseGrid avg_fixation_map;
  std::vector<std::string> warnings;
};

/// Fixation containment uses the pixel cell holding the point.
inline bool fixation_in(const PixelSet& ps, double x, double y) {
  const int col = static_cast<int>(std::floor(x));
  const int row = static_cast<int>(std::floor(y));
  return ps.contains(col, row);
}

inline DatasetStats dataset_stats(const std::vector<ImageAnnotation>& anns,
                                  const FixationSet& fixations,
                                  double smoothing_sigma_px,
                                  int hist_bins = 20) {
  std::set<std::string> known;
  for (const auto& img : anns) known.insert(img.image_id);
  for (const auto& r : fixations.records)
    if (!known.count(r.image_id))
      throw Error(ErrorCode::MISSING_IMAGE, "fixation references unknown image '" +
                                                r.image_id + "'");

  DatasetStats stats;
  stats.size_hist.counts.assign(hist_bins, 0);
  stats.fraction_hist.counts.assign(hist_bins, 0);
  stats.total_fixations = fixations.records.size();

  auto by_image = fixations.points_by_image();

  // average maps are accumulated at the first image's dims
  const int ref_w = anns.empty() ? 0 : anns.front().width;
  const int ref_h = anns.empty() ? 0 : anns.front().height;
  DenseGrid ann_acc(ref_w, ref_h), fix_acc(ref_w, ref_h);
  std::size_t ann_n = 0, fix_n = 0;

  std::vector<std::size_t> obj_counts;
  for (const auto& img : anns) {
    obj_counts.push_back(img.objects.size());

    const std::vector<Point>* fix = nullptr;
    if (auto it = by_image.find(img.image_id); it != by_image.end()) fix = &it->second;
    if (!fix || fix->empty())
      stats.warnings.push_back("image '" + img.image_id +
                               "': no fixations, object fractions reported as 0");

    DenseGrid mask(img.width, img.height);
    std::string best_obj;
    double best_frac = -1.0;
    for (const auto& obj : img.objects) {
      PixelSet ps;
      try {
        ps = rasterize_polygon(obj.polygon, img.width, img.height);
      } catch (const Error& e) {
        throw Error(ErrorCode::INVALID_POLYGON,
                    "image '" + img.image_id + "' object '" + obj.object_id +
                        "': " + e.what());
      }
      ObjectStat os;
      os.image_id = img.image_id;
      os.object_id = obj.object_id;
      os.normalized_size = static_cast<double>(ps.pixels.size()) /
                           (static_cast<double>(img.width) * img.height);
      if (fix && !fix->empty()) {
        std::size_t inside = 0;
        for (const Point& p : *fix)
          if (fixation_in(ps, p.x, p.y)) ++inside;
        os.fixation_fraction = static_cast<double>(inside) / fix->size();
      }
      stats.size_hist.add(os.normalized_size);
      stats.fraction_hist.add(os.fixation_fraction);
      if (os.fixation_fraction > best_frac ||
          (os.fixation_fraction == best_frac && obj.object_id < best_obj)) {
        best_frac = os.fixation_fraction;
        best_obj = obj.object_id;
      }
      for (const PixelCoord& p : ps.pixels) mask.at(p.col, p.row) = 1.0;
      stats.per_object.push_back(std::move(os));
    }
    if (!img.objects.empty()) stats.most_salient[img.image_id] = best_obj;

    if (ref_w > 0) {
      if (!img.objects.empty() && mask.sum() > 0) {
        DenseGrid m = resample_bilinear(mask, ref_w, ref_h);
        const double s = m.sum();
        if (s > 0) {
          for (std::size_t i = 0; i < m.size(); ++i) ann_acc.values()[i] += m.values()[i] / s;
          ++ann_n;
        }
      }
      if (fix && !fix->empty()) {
        DenseGrid h(img.width, img.height);
        std::size_t in_bounds = 0;
        for (const Point& p : *fix) {
          const int col = static_cast<int>(std::floor(p.x));
          const int row = static_cast<int>(std::floor(p.y));
          if (h.in_bounds(col, row)) {
            h.at(col, row) += 1.0;
            ++in_bounds;
          }
        }
        if (in_bounds > 0) {
          DenseGrid sm = smooth_map(h, smoothing_sigma_px);
          DenseGrid m = resample_bilinear(sm, ref_w, ref_h);
          const double s = m.sum();
          if (s > 0) {
            for (std::size_t i = 0; i < m.size(); ++i) fix_acc.values()[i] += m.values()[i] / s;
            ++fix_n;
          }
        }
      }
    }
  }

  if (ann_n > 0) {
    normalize(ann_acc);
    stats.avg_annotation_map = std::move(ann_acc);
  }
  if (fix_n > 0) {
    normalize(fix_acc);
    stats.avg_fixation_map = std::move(fix_acc);
  }

  if (!obj_counts.empty()) {
    std::size_t total_objs = 0;
    for (auto c : obj_counts) total_objs += c;
    stats.mean_objects_per_image = static_cast<double>(total_objs) / obj_counts.size();
    std::sort(obj_counts.begin(), obj_counts.end());
    const std::size_t n = obj_counts.size();
    stats.median_objects_per_image =
        n % 2 ? static_cast<double>(obj_counts[n / 2])
              : 0.5 * (obj_counts[n / 2 - 1] + obj_counts[n / 2]);
  }
  return stats;
}

}  // namespace gazecenter

#endif  // GAZECENTER_DATASET_HPP
