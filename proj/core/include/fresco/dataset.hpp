#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fresco/fragmenters.hpp"
#include "fresco/raster.hpp"

namespace fresco::dataset {

inline constexpr std::string_view kToolVersion = "fresco-forge 0.3.0";

struct StyleLabel {
  int k = 0;  // 1-based class index
  std::string name;
  friend bool operator==(const StyleLabel&, const StyleLabel&) = default;
};

using LabelMap = std::map<std::string, StyleLabel>;

enum class Split { Unassigned, Train, Val, Test };
std::string_view split_name(Split s);
std::optional<Split> parse_split(std::string_view name);

struct FragmentRecord {
  std::string fragment_id;  // "<source>__<method>__<params>__<local id>"
  std::string source_id;
  StyleLabel style;
  fragmenters::Method method = fragmenters::Method::SquareGrid;
  fragmenters::FragmentationConfig params;
  std::int64_t area_px = 0;  // pixel count of the unrotated mask
  raster::PixelRect bbox;    // unrotated mask box in source coordinates
  double rotation_deg = 0.0;
  Split split = Split::Unassigned;
  std::string file_path;  // relative to the manifest directory
};

/// "n40" for count-driven methods, "c10" for crossing cuts.
std::string params_tag(const fragmenters::FragmentationConfig& config);

std::string qualified_fragment_id(std::string_view source_id, fragmenters::Method method,
                                  const fragmenters::FragmentationConfig& config, std::string_view local_id);

inline constexpr std::string_view kFragmentsDir = "fragments";

struct ManifestBuild {
  std::vector<FragmentRecord> records;
  std::size_t skipped_subpixel = 0;  // polygon slivers with no pixel centre
};

/// One record per rasterizable fragment, sorted by (source_id, fragment_id).
/// Throws InputError naming an unlabeled source or a duplicate fragment id.
ManifestBuild build_manifest(std::span<const fragmenters::FragmentSet> sets, const LabelMap& labels);

struct SplitRatios {
  double train = 0.7;
  double val = 0.15;
  double test = 0.15;
};

/// Source-level split: sources are shuffled under `seed` and apportioned by
/// largest remainder, with at least one source for every positive ratio.
void assign_splits(std::span<FragmentRecord> records, SplitRatios ratios, std::uint64_t seed);

inline constexpr int kHistogramBins = 32;

struct AreaStats {
  std::size_t count = 0;
  double mean_px = 0.0;
  double variance_px = 0.0;  // population variance
  double cv = 0.0;
  double min_px = 0.0;
  double max_px = 0.0;
  std::array<double, kHistogramBins + 1> bin_edges{};  // log-spaced, min..max
  std::array<std::uint64_t, kHistogramBins> histogram{};
};

enum class GroupBy { Method, Source };

AreaStats compute_area_stats(std::span<const double> areas);
std::map<std::string, AreaStats> area_statistics(std::span<const FragmentRecord> records, GroupBy group_by);

// --- file formats ---------------------------------------------------------

/// CSV `source_id,style_k,style_name` with header. K is the largest style_k.
LabelMap read_labels_csv(const std::filesystem::path& path);

std::string manifest_line(const FragmentRecord& record);
void write_manifest(const std::filesystem::path& path, std::span<const FragmentRecord> records);
std::vector<FragmentRecord> read_manifest(const std::filesystem::path& path);

struct DatasetInfo {
  std::string tool_version{kToolVersion};
  std::uint64_t master_seed = 0;
  int K = 0;
  SplitRatios ratios;
  std::map<int, std::pair<std::string, std::size_t>> sources_per_style;  // k -> (name, source count)
};

void write_dataset_info(const std::filesystem::path& path, const DatasetInfo& info);
DatasetInfo read_dataset_info(const std::filesystem::path& path);

}  // namespace fresco::dataset
