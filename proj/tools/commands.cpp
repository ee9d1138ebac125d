#include "commands.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "fresco/error.hpp"
#include "fresco/png_io.hpp"
#include "fresco/raster.hpp"
#include "fresco/rng.hpp"

namespace fresco::cli {

namespace {

using fragmenters::FragmentationConfig;
using fragmenters::Method;

std::vector<fs::path> list_pngs(const fs::path& dir) {
  std::vector<fs::path> out;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    std::string ext = entry.path().extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
    if (ext == ".png") out.push_back(entry.path());
  }
  std::sort(out.begin(), out.end());
  return out;
}

struct WorkItem {
  fs::path image_path;
  std::string source_id;
};

std::vector<FragmentationConfig> configs_for(const RunConfig& run, Method method) {
  std::vector<FragmentationConfig> out;
  const auto& params = method == Method::CrossingCuts ? run.cuts : run.pieces;
  for (int value : params) {
    auto c = FragmentationConfig::for_method(method);
    if (method == Method::CrossingCuts) {
      c.cut_count = value;
    } else {
      c.target_count = value;
    }
    c.prioritize_small = run.prioritize_small;
    c.erosion_max_px = run.erosion_max_px;
    out.push_back(c);
  }
  return out;
}

// All fragment sets of one source image; PNGs are written as a side effect.
std::vector<fragmenters::FragmentSet> process_image(const RunConfig& run, const WorkItem& item,
                                                    const fs::path& fragments_dir) {
  const raster::Image image = raster::read_png(item.image_path);
  std::vector<fragmenters::FragmentSet> sets;
  for (Method method : run.methods) {
    for (auto config : configs_for(run, method)) {
      const std::string tag = dataset::params_tag(config);
      const std::string context =
          "source '" + item.source_id + "', method " + std::string(fragmenters::method_name(method)) + ", params " + tag;
      config.seed = derive_seed(run.master_seed,
                                item.source_id + "/" + std::string(fragmenters::method_name(method)) + "/" + tag);
      try {
        auto set = fragmenters::fragment(image.width, image.height, config, item.source_id);
        for (const auto& f : set.fragments) {
          raster::RasterMask mask;
          try {
            mask = fragmenters::fragment_mask(f, set.crop_rect);
          } catch (const Error&) {
            continue;  // sub-pixel sliver; build_manifest skips it too
          }
          const auto img = raster::extract_fragment(image, mask, raster::kDefaultFill, f.rotation_deg, f.fragment_id);
          const std::string id = dataset::qualified_fragment_id(item.source_id, method, config, f.fragment_id);
          raster::write_png(fragments_dir / (id + ".png"), img.pixels);
        }
        sets.push_back(std::move(set));
      } catch (const InputError& e) {
        throw InputError(context + ": " + e.what());
      } catch (const std::exception& e) {
        throw Error(context + ": " + e.what());
      }
    }
  }
  return sets;
}

std::string csv_trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> csv_fields(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(csv_trim(cell));
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

std::string join_ids(const std::vector<std::string>& ids, std::size_t limit = 20) {
  std::string out;
  for (std::size_t i = 0; i < ids.size() && i < limit; ++i) {
    if (i) out += ", ";
    out += ids[i];
  }
  if (ids.size() > limit) out += ", ... (" + std::to_string(ids.size()) + " total)";
  return out;
}

void write_histogram_png(const fs::path& path, const dataset::AreaStats& stats) {
  constexpr int kWidth = 640, kHeight = 360, kMargin = 20;
  raster::Image img(kWidth, kHeight, {255, 255, 255, 255});
  const std::uint64_t peak = std::max<std::uint64_t>(1, *std::max_element(stats.histogram.begin(), stats.histogram.end()));
  const int plot_w = kWidth - 2 * kMargin, plot_h = kHeight - 2 * kMargin;
  const int bar_w = plot_w / dataset::kHistogramBins;
  for (int b = 0; b < dataset::kHistogramBins; ++b) {
    const int h = static_cast<int>(std::lround(static_cast<double>(stats.histogram[b]) / peak * plot_h));
    const int x0 = kMargin + b * bar_w;
    for (int y = kHeight - kMargin - h; y < kHeight - kMargin; ++y) {
      for (int x = x0 + 1; x < x0 + bar_w - 1; ++x) {
        auto* p = img.px(x, y);
        p[0] = 70;
        p[1] = 90;
        p[2] = 140;
      }
    }
  }
  for (int x = kMargin; x < kWidth - kMargin; ++x) {
    auto* p = img.px(x, kHeight - kMargin);
    p[0] = p[1] = p[2] = 0;
  }
  raster::write_png(path, img);
}

std::string sanitize(std::string s) {
  for (auto& c : s) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' && c != '-') c = '_';
  }
  return s;
}

}  // namespace

void validate(const RunConfig& config) {
  if (config.input_dir.empty() || !fs::is_directory(config.input_dir)) {
    throw InputError("input directory not found: " + config.input_dir.string());
  }
  if (config.labels_file.empty() || !fs::is_regular_file(config.labels_file)) {
    throw InputError("labels file not found: " + config.labels_file.string());
  }
  if (config.output_dir.empty()) throw InputError("output directory required");
  if (config.methods.empty()) throw InputError("at least one method must be selected");
  const bool needs_pieces = std::any_of(config.methods.begin(), config.methods.end(),
                                        [](Method m) { return m != Method::CrossingCuts; });
  const bool needs_cuts = std::find(config.methods.begin(), config.methods.end(), Method::CrossingCuts) != config.methods.end();
  if (needs_pieces && config.pieces.empty()) throw InputError("piece-count list is empty");
  if (needs_cuts && config.cuts.empty()) throw InputError("cut-count list is empty");
  for (int p : config.pieces) {
    if (p < 1) throw InputError("piece counts must be >= 1");
  }
  for (int c : config.cuts) {
    if (c < 0) throw InputError("cut counts must be >= 0");
  }
  if (config.workers < 1) throw InputError("workers must be >= 1");
  if (config.erosion_max_px < 0) throw InputError("erosion-max must be >= 0");
}

FragmentRunSummary cmd_fragment(const RunConfig& config, std::ostream& log) {
  validate(config);
  const auto labels = dataset::read_labels_csv(config.labels_file);
  const auto images = list_pngs(config.input_dir);
  if (images.empty()) throw InputError("no PNG images in " + config.input_dir.string());

  std::vector<WorkItem> items;
  for (const auto& path : images) {
    WorkItem item{path, path.stem().string()};
    if (!labels.contains(item.source_id)) throw InputError("unlabeled source: " + item.source_id);
    items.push_back(std::move(item));
  }

  const fs::path fragments_dir = config.output_dir / dataset::kFragmentsDir;
  fs::create_directories(fragments_dir);
  for (const auto& stale : list_pngs(fragments_dir)) fs::remove(stale);

  std::vector<std::vector<fragmenters::FragmentSet>> results(items.size());
  std::vector<std::exception_ptr> errors(items.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < items.size(); i = next++) {
      try {
        results[i] = process_image(config, items[i], fragments_dir);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  {
    const auto count = static_cast<std::size_t>(std::min<int>(config.workers, static_cast<int>(items.size())));
    std::vector<std::jthread> pool;
    for (std::size_t t = 1; t < count; ++t) pool.emplace_back(worker);
    worker();
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);  // first failure in input order
  }

  std::vector<fragmenters::FragmentSet> all;
  for (auto& r : results) {
    for (auto& s : r) all.push_back(std::move(s));
  }
  auto built = dataset::build_manifest(all, labels);
  dataset::assign_splits(built.records, config.ratios, derive_seed(config.master_seed, "splits"));
  dataset::write_manifest(config.output_dir / "manifest.jsonl", built.records);

  dataset::DatasetInfo info;
  info.master_seed = config.master_seed;
  info.ratios = config.ratios;
  for (const auto& [source, label] : labels) info.K = std::max(info.K, label.k);
  for (const auto& item : items) {
    const auto& label = labels.at(item.source_id);
    auto& entry = info.sources_per_style[label.k];
    entry.first = label.name;
    ++entry.second;
  }
  dataset::write_dataset_info(config.output_dir / "dataset.json", info);

  std::map<std::string, std::pair<std::size_t, std::set<std::string>>> per_method;
  for (const auto& r : built.records) {
    auto& [n, sources] = per_method[std::string(fragmenters::method_name(r.method))];
    ++n;
    sources.insert(r.source_id);
  }
  for (const auto& [method, entry] : per_method) {
    log << method << ": " << entry.first << " fragments from " << entry.second.size() << " images\n";
  }
  if (built.skipped_subpixel > 0) log << "skipped " << built.skipped_subpixel << " sub-pixel fragments\n";
  return {items.size(), built.records.size(), built.skipped_subpixel};
}

std::string cmd_stats(const fs::path& manifest, dataset::GroupBy group_by, const std::optional<fs::path>& plot_dir) {
  if (!fs::is_regular_file(manifest)) throw InputError("manifest not found: " + manifest.string());
  const auto records = dataset::read_manifest(manifest);
  if (records.empty()) throw InputError("manifest is empty: " + manifest.string());
  const auto stats = dataset::area_statistics(records, group_by);

  nlohmann::ordered_json j;
  for (const auto& [group, s] : stats) {
    nlohmann::ordered_json g;
    g["count"] = s.count;
    g["mean_px"] = s.mean_px;
    g["variance_px"] = s.variance_px;
    g["cv"] = s.cv;
    g["min_px"] = s.min_px;
    g["max_px"] = s.max_px;
    g["bin_edges"] = s.bin_edges;
    g["histogram"] = s.histogram;
    j[group] = g;
  }
  if (plot_dir) {
    fs::create_directories(*plot_dir);
    for (const auto& [group, s] : stats) write_histogram_png(*plot_dir / ("area_hist_" + sanitize(group) + ".png"), s);
  }
  return j.dump(2);
}

std::vector<fs::path> cmd_plot(const fs::path& manifest, const fs::path& out_dir, dataset::GroupBy group_by) {
  if (!fs::is_regular_file(manifest)) throw InputError("manifest not found: " + manifest.string());
  const auto records = dataset::read_manifest(manifest);
  if (records.empty()) throw InputError("manifest is empty: " + manifest.string());
  fs::create_directories(out_dir);
  std::vector<fs::path> written;
  for (const auto& [group, s] : dataset::area_statistics(records, group_by)) {
    written.push_back(out_dir / ("area_hist_" + sanitize(group) + ".png"));
    write_histogram_png(written.back(), s);
  }
  return written;
}

std::vector<Prediction> read_predictions_csv(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open predictions file " + path.string());
  std::string line;
  if (!std::getline(in, line)) throw InputError("predictions file is empty: " + path.string());
  const auto header = csv_fields(line);
  if (header.size() < 2 || header[0] != "fragment_id" || header[1] != "predicted_k") {
    throw InputError("predictions header must start with fragment_id,predicted_k");
  }
  std::vector<Prediction> out;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (csv_trim(line).empty()) continue;
    const auto cols = csv_fields(line);
    if (cols.size() < 2) throw InputError("predictions line " + std::to_string(line_no) + ": expected 2+ columns");
    Prediction p{cols[0], 0};
    try {
      std::size_t used = 0;
      p.predicted_k = std::stoi(cols[1], &used);
      if (used != cols[1].size()) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw InputError("predictions line " + std::to_string(line_no) + ": bad predicted_k '" + cols[1] + "'");
    }
    out.push_back(std::move(p));
  }
  return out;
}

metrics::MetricsReport cmd_evaluate(const fs::path& manifest, const fs::path& predictions, const std::string& split) {
  if (!fs::is_regular_file(manifest)) throw InputError("manifest not found: " + manifest.string());
  std::optional<dataset::Split> wanted;
  if (split != "all") {
    wanted = dataset::parse_split(split);
    if (!wanted) throw InputError("unknown split: " + split);
  }
  const auto records = dataset::read_manifest(manifest);

  int K = 0;
  const fs::path info_path = manifest.parent_path() / "dataset.json";
  if (fs::is_regular_file(info_path)) K = dataset::read_dataset_info(info_path).K;
  for (const auto& r : records) K = std::max(K, r.style.k);

  std::map<std::string, int> truth_of;
  std::set<std::string> known;
  for (const auto& r : records) {
    known.insert(r.fragment_id);
    if (!wanted || r.split == *wanted) truth_of.emplace(r.fragment_id, r.style.k);
  }
  if (truth_of.empty()) throw InputError("no manifest fragments in split '" + split + "'");

  std::map<std::string, int> pred_of;
  std::vector<std::string> unknown, duplicate;
  for (const auto& p : read_predictions_csv(predictions)) {
    if (!known.contains(p.fragment_id)) {
      unknown.push_back(p.fragment_id);
      continue;
    }
    if (p.predicted_k < 1 || p.predicted_k > K) {
      throw InputError("predicted_k out of range [1," + std::to_string(K) + "] for " + p.fragment_id);
    }
    if (!pred_of.emplace(p.fragment_id, p.predicted_k).second) duplicate.push_back(p.fragment_id);
  }
  if (!unknown.empty()) throw InputError("unknown fragment_id in predictions: " + join_ids(unknown));
  if (!duplicate.empty()) throw InputError("duplicate predictions for: " + join_ids(duplicate));

  std::vector<std::string> missing;
  std::vector<int> truth, pred;
  for (const auto& [id, k] : truth_of) {
    const auto it = pred_of.find(id);
    if (it == pred_of.end()) {
      missing.push_back(id);
      continue;
    }
    truth.push_back(k);
    pred.push_back(it->second);
  }
  if (!missing.empty()) throw InputError("missing predictions for: " + join_ids(missing));
  return metrics::metrics_report(truth, pred, K);
}

namespace {

std::uint64_t parse_seed(const std::string& text, const std::string& origin) {
  try {
    std::size_t used = 0;
    const auto v = std::stoull(text, &used, 0);
    if (used != text.size() || text.starts_with('-')) throw std::invalid_argument("trailing");
    return v;
  } catch (const std::exception&) {
    throw InputError("bad seed from " + origin + ": '" + text + "'");
  }
}

dataset::SplitRatios parse_ratios(const std::string& text) {
  std::vector<double> parts;
  std::stringstream ss(text);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    try {
      std::size_t used = 0;
      const std::string t = csv_trim(cell);
      parts.push_back(std::stod(t, &used));
      if (used != t.size()) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw InputError("bad --split-ratios '" + text + "'");
    }
  }
  if (parts.size() != 3) throw InputError("--split-ratios needs three values a,b,c");
  return {parts[0], parts[1], parts[2]};
}

std::optional<dataset::GroupBy> parse_group_by(const std::string& s) {
  if (s == "method") return dataset::GroupBy::Method;
  if (s == "source") return dataset::GroupBy::Source;
  return std::nullopt;
}

}  // namespace

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Fresco fragment dataset generator", "fresco-forge"};
  app.set_version_flag("--version", std::string(dataset::kToolVersion));
  app.require_subcommand(1);

  RunConfig rc;
  std::vector<std::string> method_names;
  std::optional<std::string> seed_text, ratios_text;
  std::vector<int> pieces, cuts;
  bool no_prioritize = false;

  auto* frag = app.add_subcommand("fragment", "Generate fragments, manifest and dataset.json");
  frag->add_option("--input", rc.input_dir, "Directory of source PNGs")->required();
  frag->add_option("--labels", rc.labels_file, "CSV source_id,style_k,style_name")->required();
  frag->add_option("--out", rc.output_dir, "Output directory")->required();
  frag->add_option("--method", method_names, "square, crossing_cuts, nonconvex, eroded_voronoi (repeatable)")
      ->required();
  frag->add_option("--pieces", pieces, "Target piece counts (repeatable)");
  frag->add_option("--cuts", cuts, "Cut counts (repeatable)");
  frag->add_option("--seed", seed_text, "Master seed (falls back to $FRESCO_FORGE_SEED)");
  frag->add_option("--split-ratios", ratios_text, "train,val,test ratios");
  frag->add_option("--workers", rc.workers, "Worker threads");
  frag->add_flag("--no-prioritize-small", no_prioritize, "Random merges in the non-convex partition");
  frag->add_option("--erosion-max", rc.erosion_max_px, "Largest erosion radius in pixels");

  std::string manifest_path, group_by_text = "method";
  std::optional<std::string> plot_dir;
  auto* stats = app.add_subcommand("stats", "Fragment area statistics as JSON");
  stats->add_option("--manifest", manifest_path, "manifest.jsonl")->required();
  stats->add_option("--group-by", group_by_text, "method or source");
  stats->add_option("--plot", plot_dir, "Write one histogram PNG per group here");

  std::string plot_out;
  auto* plot = app.add_subcommand("plot", "Area histogram PNGs");
  plot->add_option("--manifest", manifest_path, "manifest.jsonl")->required();
  plot->add_option("--out", plot_out, "Output directory")->required();
  plot->add_option("--group-by", group_by_text, "method or source");

  std::string predictions_path, split = "test";
  bool as_json = false;
  auto* eval = app.add_subcommand("evaluate", "Score predictions against the manifest");
  eval->add_option("--manifest", manifest_path, "manifest.jsonl")->required();
  eval->add_option("--predictions", predictions_path, "CSV fragment_id,predicted_k[,p_1..p_K]")->required();
  eval->add_option("--split", split, "train, val, test or all");
  eval->add_flag("--json", as_json, "Print JSON instead of the table");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 2;
  }

  try {
    if (*frag) {
      for (const auto& name : method_names) {
        const auto m = fragmenters::parse_method(name);
        if (!m) throw InputError("unknown method: " + name);
        if (std::find(rc.methods.begin(), rc.methods.end(), *m) == rc.methods.end()) rc.methods.push_back(*m);
      }
      if (!pieces.empty()) rc.pieces = pieces;
      if (!cuts.empty()) rc.cuts = cuts;
      if (seed_text) {
        rc.master_seed = parse_seed(*seed_text, "--seed");
      } else if (const char* env = std::getenv(kSeedEnvVar)) {
        rc.master_seed = parse_seed(env, kSeedEnvVar);
      }
      if (ratios_text) rc.ratios = parse_ratios(*ratios_text);
      rc.prioritize_small = !no_prioritize;
      const auto summary = cmd_fragment(rc, out);
      out << "wrote " << summary.records << " fragments from " << summary.images << " images to "
          << rc.output_dir.string() << "\n";
      return 0;
    }
    const auto group_by = parse_group_by(group_by_text);
    if (!group_by) throw InputError("--group-by must be method or source");
    if (*stats) {
      std::optional<fs::path> dir;
      if (plot_dir) dir = fs::path(*plot_dir);
      out << cmd_stats(manifest_path, *group_by, dir) << "\n";
      return 0;
    }
    if (*plot) {
      for (const auto& p : cmd_plot(manifest_path, plot_out, *group_by)) out << p.string() << "\n";
      return 0;
    }
    if (*eval) {
      const auto report = cmd_evaluate(manifest_path, predictions_path, split);
      out << (as_json ? metrics::report_to_json(report) : metrics::format_report_table(report)) << "\n";
      return 0;
    }
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}

}  // namespace fresco::cli
