// gazecenter: object center-bias analysis and combined saliency evaluation.
//
// Subcommands: validate | stats | rings | objmap | saliency | sweep | compare
// Exit codes: 0 success, 1 data error, 2 usage error.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "gazecenter/gazecenter.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace gazecenter;

namespace {

struct RunConfig {
  std::string annotations;
  std::string fixations;
  std::string saliency_dir;
  std::string image_dir;
  std::string out_dir = ".";
  std::string scheme = "linear";
  std::string region_mode = "polygon";
  int k = 10;
  std::string betas;  // comma-separated, empty = default grid
  double sigma_px = 0.0;
  double gaussian_sigma_rings = 3.0;
  std::uint64_t seed = 0;
  bool builtin = false;
};

WeightScheme parse_scheme(const RunConfig& cfg) {
  WeightScheme s;
  s.gaussian_sigma_rings = cfg.gaussian_sigma_rings;
  if (cfg.scheme == "linear") s.kind = WeightKind::linear;
  else if (cfg.scheme == "constant") s.kind = WeightKind::constant;
  else if (cfg.scheme == "gaussian") s.kind = WeightKind::gaussian;
  else throw CLI::ValidationError("--scheme", "must be linear|constant|gaussian");
  return s;
}

RegionMode parse_region_mode(const RunConfig& cfg) {
  if (cfg.region_mode == "polygon") return RegionMode::polygon;
  if (cfg.region_mode == "bbox") return RegionMode::bbox;
  throw CLI::ValidationError("--region-mode", "must be polygon|bbox");
}

std::vector<double> parse_betas(const std::string& spec) {
  if (spec.empty()) return default_beta_grid();
  std::vector<double> betas;
  std::stringstream ss(spec);
  std::string cell;
  while (std::getline(ss, cell, ',')) betas.push_back(std::stod(cell));
  return betas;
}

void apply_config_file(const std::string& path, RunConfig& cfg) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IO_ERROR, "cannot open config: " + path);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::PARSE_ERROR, path + ": " + e.what());
  }
  auto get = [&](const char* key, auto& target) {
    if (doc.contains(key)) target = doc[key].get<std::decay_t<decltype(target)>>();
  };
  get("annotations", cfg.annotations);
  get("fixations", cfg.fixations);
  get("saliency_dir", cfg.saliency_dir);
  get("image_dir", cfg.image_dir);
  get("out_dir", cfg.out_dir);
  get("scheme", cfg.scheme);
  get("region_mode", cfg.region_mode);
  get("k", cfg.k);
  get("sigma_px", cfg.sigma_px);
  get("gaussian_sigma_rings", cfg.gaussian_sigma_rings);
  get("seed", cfg.seed);
  get("builtin_saliency", cfg.builtin);
  if (doc.contains("betas")) {
    std::string joined;
    for (const auto& b : doc["betas"]) {
      if (!joined.empty()) joined += ',';
      joined += std::to_string(b.get<double>());
    }
    cfg.betas = joined;
  }
}

/// Saliency provider shared by sweep: per-image .smap files or the builtin
/// center-surround model over image files.
std::function<DenseGrid(const ImageAnnotation&)> make_saliency_source(const RunConfig& cfg) {
  if (cfg.builtin) {
    const std::string dir = cfg.image_dir;
    return [dir](const ImageAnnotation& img) {
      for (const char* ext : {".png", ".ppm"}) {
        const fs::path p = fs::path(dir) / (img.image_id + ext);
        if (fs::exists(p)) {
          DenseGrid s = builtin_saliency(read_image(p.string()));
          if (s.width() != img.width || s.height() != img.height)
            s = normalized(resample_bilinear(s, img.width, img.height));
          return s;
        }
      }
      throw Error(ErrorCode::MISSING_IMAGE,
                  "no image file for '" + img.image_id + "' in " + dir);
    };
  }
  const std::string dir = cfg.saliency_dir;
  return [dir](const ImageAnnotation& img) {
    const fs::path p = fs::path(dir) / (img.image_id + ".smap");
    if (!fs::exists(p))
      throw Error(ErrorCode::MISSING_IMAGE, "no saliency map: " + p.string());
    return load_external_saliency(p.string(), img.width, img.height);
  };
}

std::string fmt17(double v) {
  std::ostringstream ss;
  ss.precision(17);
  ss << v;
  return ss.str();
}

// ---------------------------------------------------------------------------
// Subcommand bodies
// ---------------------------------------------------------------------------

int cmd_validate(const RunConfig& cfg) {
  const auto anns = load_annotations(cfg.annotations);
  std::set<std::string> ids;
  for (const auto& img : anns) ids.insert(img.image_id);
  std::cerr << "loaded " << anns.size() << " images\n";
  if (!cfg.fixations.empty()) {
    const FixationSet fix = load_fixations(cfg.fixations);
    std::set<std::string> missing;
    for (const auto& r : fix.records)
      if (!ids.count(r.image_id)) missing.insert(r.image_id);
    if (!missing.empty()) {
      std::string list;
      for (const auto& id : missing) list += (list.empty() ? "" : ",") + id;
      throw Error(ErrorCode::MISSING_IMAGE, "fixations reference unknown images: " + list);
    }
    std::cerr << "loaded " << fix.records.size() << " fixations\n";
  }
  std::cout << "ok\n";
  return 0;
}

int cmd_stats(const RunConfig& cfg) {
  const auto anns = load_annotations(cfg.annotations);
  const FixationSet fix = load_fixations(cfg.fixations);
  const DatasetStats stats = dataset_stats(anns, fix, cfg.sigma_px);
  for (const auto& w : stats.warnings) std::cerr << "warning: " << w << '\n';

  fs::create_directories(cfg.out_dir);
  json doc;
  doc["total_fixations"] = stats.total_fixations;
  doc["mean_objects_per_image"] = stats.mean_objects_per_image;
  doc["median_objects_per_image"] = stats.median_objects_per_image;
  doc["size_histogram"] = stats.size_hist.counts;
  doc["fraction_histogram"] = stats.fraction_hist.counts;
  json jobjs = json::array();
  std::size_t small = 0;
  for (const auto& os : stats.per_object) {
    jobjs.push_back({{"image_id", os.image_id},
                     {"object_id", os.object_id},
                     {"normalized_size", os.normalized_size},
                     {"fixation_fraction", os.fixation_fraction}});
    if (os.normalized_size <= 0.10) ++small;
  }
  doc["objects"] = jobjs;
  doc["fraction_objects_at_most_10pct"] =
      stats.per_object.empty() ? 0.0
                               : static_cast<double>(small) / stats.per_object.size();
  json jms = json::object();
  for (const auto& [img, obj] : stats.most_salient) jms[img] = obj;
  doc["most_salient"] = jms;

  std::ofstream out(fs::path(cfg.out_dir) / "stats.json");
  out << doc.dump(2) << '\n';
  if (!stats.avg_annotation_map.empty())
    write_smap((fs::path(cfg.out_dir) / "avg_annotation.smap").string(),
               stats.avg_annotation_map);
  if (!stats.avg_fixation_map.empty())
    write_smap((fs::path(cfg.out_dir) / "avg_fixation.smap").string(),
               stats.avg_fixation_map);
  std::cout << "wrote " << (fs::path(cfg.out_dir) / "stats.json").string() << '\n';
  return 0;
}

int cmd_rings(const RunConfig& cfg) {
  const auto anns = load_annotations(cfg.annotations);
  const FixationSet fix = load_fixations(cfg.fixations);
  const auto by_image = fix.points_by_image();
  fs::create_directories(cfg.out_dir);

  std::ofstream csv(fs::path(cfg.out_dir) / "ring_profiles.csv");
  csv << "image_id,object_id,n_fix";
  for (int i = 1; i <= cfg.k; ++i) csv << ",p" << i;
  csv << ",obj_cnt_idx\n";

  std::vector<double> aggregate(cfg.k, 0.0);
  std::vector<double> indices;
  std::size_t profiled = 0;
  for (const auto& img : anns) {
    auto it = by_image.find(img.image_id);
    if (it == by_image.end()) continue;
    for (const auto& obj : img.objects) {
      const PixelSet ps =
          rasterize_polygon(obj.polygon, img.width, img.height, parse_region_mode(cfg));
      const RingPartition part = ring_partition(ps, center_of_mass(ps), cfg.k);
      const auto prof = ring_fixation_profile(part, it->second);
      if (!prof) continue;
      csv << img.image_id << ',' << obj.object_id << ',' << prof->n_fix;
      for (double p : prof->p) csv << ',' << fmt17(p);
      csv << ',' << fmt17(prof->obj_cnt_idx) << '\n';
      for (int i = 0; i < cfg.k; ++i) aggregate[i] += prof->p[i];
      indices.push_back(prof->obj_cnt_idx);
      ++profiled;
    }
  }
  if (profiled == 0)
    throw Error(ErrorCode::NO_OBJECT_FIXATIONS, "no object received any fixation");
  for (double& v : aggregate) v /= static_cast<double>(profiled);

  std::vector<std::size_t> hist(20, 0);
  for (double idx : indices) {
    int bin = std::clamp(static_cast<int>(idx * 20), 0, 19);
    ++hist[static_cast<std::size_t>(bin)];
  }
  svg::plot_index_histogram((fs::path(cfg.out_dir) / "obj_cnt_idx_hist.svg").string(), hist);
  svg::plot_ring_profiles((fs::path(cfg.out_dir) / "ring_profile.svg").string(),
                          {"fixation density"}, {aggregate});

  json doc;
  doc["aggregate_profile"] = aggregate;
  doc["objects_profiled"] = profiled;
  doc["index_histogram"] = hist;
  std::ofstream out(fs::path(cfg.out_dir) / "rings.json");
  out << doc.dump(2) << '\n';
  std::cout << "profiled " << profiled << " objects\n";
  return 0;
}

int cmd_objmap(const RunConfig& cfg) {
  const auto anns = load_annotations(cfg.annotations);
  const WeightScheme scheme = parse_scheme(cfg);
  const RegionMode mode = parse_region_mode(cfg);
  fs::create_directories(cfg.out_dir);
  std::size_t written = 0;
  for (const auto& img : anns) {
    if (img.objects.empty()) {
      std::cerr << "warning: image '" << img.image_id << "' has no objects, skipped\n";
      continue;
    }
    DenseGrid o = build_object_map(img, scheme, mode, cfg.k);
    if (cfg.sigma_px > 0) o = normalized(smooth_map(o, cfg.sigma_px));
    write_smap((fs::path(cfg.out_dir) / (img.image_id + ".smap")).string(), o);
    ++written;
  }
  std::cout << "wrote " << written << " object maps\n";
  return 0;
}

int cmd_saliency(const RunConfig& cfg) {
  fs::create_directories(cfg.out_dir);
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(cfg.image_dir)) {
    const std::string ext = entry.path().extension().string();
    if (ext == ".png" || ext == ".ppm") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  if (files.empty())
    throw Error(ErrorCode::EMPTY_DATASET, "no .png/.ppm images in " + cfg.image_dir);
  for (const auto& p : files) {
    const DenseGrid s = builtin_saliency(read_image(p.string()));
    write_smap((fs::path(cfg.out_dir) / (p.stem().string() + ".smap")).string(), s);
  }
  std::cout << "wrote " << files.size() << " saliency maps\n";
  return 0;
}

void write_sweep_outputs(const SweepResult& res, const std::string& out_dir) {
  fs::create_directories(out_dir);

  std::ofstream csv(fs::path(out_dir) / "sweep.csv");
  csv << "image_id,beta,nss\n";
  for (std::size_t i = 0; i < res.image_ids.size(); ++i)
    for (std::size_t j = 0; j < res.betas.size(); ++j)
      csv << res.image_ids[i] << ',' << fmt17(res.betas[j]) << ','
          << fmt17(res.per_image_nss[i][j]) << '\n';

  json doc;
  doc["betas"] = res.betas;
  doc["image_ids"] = res.image_ids;
  doc["per_image_nss"] = res.per_image_nss;
  doc["mean_nss"] = res.mean_nss;
  doc["sem"] = res.sem;
  doc["beta_opt"] = res.beta_opt;
  doc["config"] = {{"scheme", to_string(res.config.scheme.kind)},
                   {"region_mode",
                    res.config.region_mode == RegionMode::polygon ? "polygon" : "bbox"},
                   {"k", res.config.k},
                   {"saliency_source", res.config.saliency_source}};
  json skipped = json::array();
  for (const auto& [id, score] : res.no_object_images)
    skipped.push_back({{"image_id", id}, {"nss_saliency_only", score}});
  doc["no_object_images"] = skipped;
  std::ofstream out(fs::path(out_dir) / "sweep.json");
  out << doc.dump(2) << '\n';

  svg::plot_sweep_curve((fs::path(out_dir) / "sweep.svg").string(), res.betas,
                        res.mean_nss, res.sem, res.beta_opt);
}

int cmd_sweep(const RunConfig& cfg) {
  const auto anns = load_annotations(cfg.annotations);
  const FixationSet fix = load_fixations(cfg.fixations);

  SweepConfig sc;
  sc.scheme = parse_scheme(cfg);
  sc.region_mode = parse_region_mode(cfg);
  sc.k = cfg.k;
  sc.betas = parse_betas(cfg.betas);
  sc.saliency_source = cfg.builtin ? "builtin" : "external:" + cfg.saliency_dir;

  const SweepResult res = sweep_beta(anns, fix, make_saliency_source(cfg), sc);
  for (const auto& [id, score] : res.no_object_images)
    std::cerr << "warning: image '" << id << "' has no objects; saliency-only NSS "
              << score << '\n';
  write_sweep_outputs(res, cfg.out_dir);
  std::cout << "beta_opt " << res.beta_opt << " mean_nss ";
  for (std::size_t j = 0; j < res.betas.size(); ++j)
    std::cout << (j ? "," : "") << res.mean_nss[j];
  std::cout << '\n';
  return 0;
}

std::pair<std::vector<std::string>, std::vector<double>> read_score_csv(
    const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IO_ERROR, "cannot open: " + path);
  std::string line;
  if (!std::getline(in, line) || line.rfind("image_id,nss", 0) != 0)
    throw Error(ErrorCode::PARSE_ERROR, path + ": expected header 'image_id,nss'");
  std::vector<std::string> ids;
  std::vector<double> scores;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos)
      throw Error(ErrorCode::PARSE_ERROR, path + " row " + std::to_string(lineno));
    ids.push_back(line.substr(0, comma));
    scores.push_back(std::stod(line.substr(comma + 1)));
  }
  return {ids, scores};
}

int cmd_compare(const std::string& path_a, const std::string& path_b,
                const std::string& label_a, const std::string& label_b,
                const std::string& out_dir) {
  auto [ids_a, scores_a] = read_score_csv(path_a);
  auto [ids_b, scores_b] = read_score_csv(path_b);
  if (ids_a != ids_b)
    throw Error(ErrorCode::LENGTH_MISMATCH, "image id lists are not aligned");
  const ComparisonResult res = compare_models(scores_a, scores_b);

  fs::create_directories(out_dir);
  json doc;
  doc["label_a"] = label_a;
  doc["label_b"] = label_b;
  doc["win_rate_a_over_b"] = res.win_rate_a_over_b;
  doc["tie_count"] = res.tie_count;
  doc["t_statistic"] = res.test.t_statistic;
  doc["p_value"] = res.test.p_value;
  doc["n"] = res.test.n;
  doc["mean_diff"] = res.test.mean_diff;
  doc["sem"] = res.test.sem;
  std::ofstream out(fs::path(out_dir) / "compare.json");
  out << doc.dump(2) << '\n';
  svg::plot_scatter((fs::path(out_dir) / "scatter.svg").string(), scores_a, scores_b,
                    label_a, label_b, res.win_rate_a_over_b);
  std::cout << "win_rate " << res.win_rate_a_over_b << " p " << res.test.p_value << '\n';
  return 0;
}

void add_common(CLI::App* app, RunConfig& cfg, bool needs_fixations) {
  app->add_option("--annotations", cfg.annotations, "annotation JSON file")->required();
  if (needs_fixations)
    app->add_option("--fixations", cfg.fixations, "fixation CSV file")->required();
  app->add_option("--out-dir", cfg.out_dir, "output directory");
  app->add_option("--k", cfg.k, "ring count");
  app->add_option("--scheme", cfg.scheme, "linear|constant|gaussian");
  app->add_option("--region-mode", cfg.region_mode, "polygon|bbox");
  app->add_option("--sigma-px", cfg.sigma_px, "Gaussian smoothing sigma in pixels");
  app->add_option("--gaussian-sigma-rings", cfg.gaussian_sigma_rings,
                  "sigma of the gaussian weighting scheme, in rings");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"object center-bias gaze analysis"};
  app.require_subcommand(1);

  RunConfig cfg;
  // --config is applied before flag parsing so flags win
  for (int i = 1; i + 1 < argc; ++i) {
    if (std::string(argv[i]) == "--config") {
      try {
        apply_config_file(argv[i + 1], cfg);
      } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
      }
    }
  }
  std::string config_path;
  app.add_option("--config", config_path, "JSON config with flag defaults");

  auto* validate = app.add_subcommand("validate", "check annotation/fixation files");
  validate->add_option("--annotations", cfg.annotations)->required();
  validate->add_option("--fixations", cfg.fixations);

  auto* stats = app.add_subcommand("stats", "dataset statistics and average maps");
  add_common(stats, cfg, true);

  auto* rings = app.add_subcommand("rings", "ring fixation profiles and center-bias indices");
  add_common(rings, cfg, true);

  auto* objmap = app.add_subcommand("objmap", "build object center-bias maps");
  add_common(objmap, cfg, false);

  auto* saliency = app.add_subcommand("saliency", "builtin center-surround saliency maps");
  saliency->add_option("--images", cfg.image_dir, "image directory (.png/.ppm)")->required();
  saliency->add_option("--out-dir", cfg.out_dir);

  auto* sweep = app.add_subcommand("sweep", "beta sweep of the combined model");
  add_common(sweep, cfg, true);
  sweep->add_option("--saliency-dir", cfg.saliency_dir, "<image_id>.smap directory");
  sweep->add_flag("--builtin-saliency", cfg.builtin, "use the builtin saliency model");
  sweep->add_option("--images", cfg.image_dir, "image directory for --builtin-saliency");
  sweep->add_option("--betas", cfg.betas, "comma-separated beta grid");

  std::string cmp_a, cmp_b, cmp_label_a = "model_a", cmp_label_b = "model_b";
  auto* compare = app.add_subcommand("compare", "compare two per-image NSS score files");
  compare->add_option("--a", cmp_a, "CSV image_id,nss")->required();
  compare->add_option("--b", cmp_b, "CSV image_id,nss")->required();
  compare->add_option("--label-a", cmp_label_a);
  compare->add_option("--label-b", cmp_label_b);
  compare->add_option("--out-dir", cfg.out_dir);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (app.got_subcommand(validate)) return cmd_validate(cfg);
    if (app.got_subcommand(stats)) return cmd_stats(cfg);
    if (app.got_subcommand(rings)) return cmd_rings(cfg);
    if (app.got_subcommand(objmap)) return cmd_objmap(cfg);
    if (app.got_subcommand(saliency)) return cmd_saliency(cfg);
    if (app.got_subcommand(sweep)) {
      if (!cfg.builtin && cfg.saliency_dir.empty()) {
        std::cerr << "error: sweep needs --saliency-dir or --builtin-saliency\n";
        return 2;
      }
      return cmd_sweep(cfg);
    }
    if (app.got_subcommand(compare))
      return cmd_compare(cmp_a, cmp_b, cmp_label_a, cmp_label_b, cfg.out_dir);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: UNEXPECTED: " << e.what() << '\n';
    return 1;
  }
  return 2;
}
