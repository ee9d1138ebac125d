#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "fresco/dataset.hpp"
#include "fresco/fragmenters.hpp"
#include "fresco/metrics.hpp"

namespace fresco::cli {

namespace fs = std::filesystem;

inline constexpr const char* kSeedEnvVar = "FRESCO_FORGE_SEED";

struct RunConfig {
  fs::path input_dir;
  fs::path labels_file;
  fs::path output_dir;
  std::vector<fragmenters::Method> methods;
  std::vector<int> pieces{12, 40, 84, 160};
  std::vector<int> cuts{5, 10, 15, 20};
  std::uint64_t master_seed = 0;
  dataset::SplitRatios ratios;
  int workers = 1;
  bool prioritize_small = true;
  int erosion_max_px = 30;
};

/// Throws InputError when the config cannot describe a run.
void validate(const RunConfig& config);

struct FragmentRunSummary {
  std::size_t images = 0;
  std::size_t records = 0;
  std::size_t skipped_subpixel = 0;
};

/// Generates, extracts and manifests every (image, method, parameter)
/// combination. Writes <out>/fragments/*.png, <out>/manifest.jsonl and
/// <out>/dataset.json. Output is independent of `workers`.
FragmentRunSummary cmd_fragment(const RunConfig& config, std::ostream& log);

/// Per-group AreaStats as JSON. With `plot_dir`, one histogram PNG per group.
std::string cmd_stats(const fs::path& manifest, dataset::GroupBy group_by, const std::optional<fs::path>& plot_dir);

/// Writes area_hist_<group>.png per group; returns the written paths.
std::vector<fs::path> cmd_plot(const fs::path& manifest, const fs::path& out_dir, dataset::GroupBy group_by);

struct Prediction {
  std::string fragment_id;
  int predicted_k = 0;
};

/// CSV with header `fragment_id,predicted_k[,p_1..p_K]`; extra columns ignored.
std::vector<Prediction> read_predictions_csv(const fs::path& path);

/// Joins predictions to the manifest by fragment_id over `split` ("train",
/// "val", "test" or "all"). Throws InputError listing missing or unknown ids.
metrics::MetricsReport cmd_evaluate(const fs::path& manifest, const fs::path& predictions, const std::string& split);

/// Entry point for the fresco-forge binary. Returns the process exit code:
/// 0 ok, 2 user error, 1 internal error.
int run(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace fresco::cli
