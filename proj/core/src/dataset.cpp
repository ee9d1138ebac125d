#include "fresco/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "fresco/error.hpp"
#include "fresco/rng.hpp"

namespace fresco::dataset {

std::string_view split_name(Split s) {
  switch (s) {
    case Split::Train: return "train";
    case Split::Val: return "val";
    case Split::Test: return "test";
    case Split::Unassigned: break;
  }
  return "unassigned";
}

std::optional<Split> parse_split(std::string_view name) {
  if (name == "train") return Split::Train;
  if (name == "val") return Split::Val;
  if (name == "test") return Split::Test;
  if (name == "unassigned") return Split::Unassigned;
  return std::nullopt;
}

std::string params_tag(const fragmenters::FragmentationConfig& config) {
  if (config.method == fragmenters::Method::CrossingCuts) return "c" + std::to_string(config.cut_count);
  return "n" + std::to_string(config.target_count);
}

std::string qualified_fragment_id(std::string_view source_id, fragmenters::Method method,
                                  const fragmenters::FragmentationConfig& config, std::string_view local_id) {
  std::string id(source_id);
  id += "__";
  id += fragmenters::method_name(method);
  id += "__";
  id += params_tag(config);
  id += "__";
  id += local_id;
  return id;
}

ManifestBuild build_manifest(std::span<const fragmenters::FragmentSet> sets, const LabelMap& labels) {
  ManifestBuild out;
  std::set<std::string> seen;
  for (const auto& set : sets) {
    const auto label = labels.find(set.source_id);
    if (label == labels.end()) throw InputError("unlabeled source: " + set.source_id);
    for (const auto& f : set.fragments) {
      raster::RasterMask mask;
      try {
        mask = fragmenters::fragment_mask(f, set.crop_rect);
      } catch (const Error&) {
        ++out.skipped_subpixel;
        continue;
      }
      FragmentRecord r;
      r.fragment_id = qualified_fragment_id(set.source_id, set.method, set.config, f.fragment_id);
      if (!seen.insert(r.fragment_id).second) throw InputError("duplicate fragment id: " + r.fragment_id);
      r.source_id = set.source_id;
      r.style = label->second;
      r.method = set.method;
      r.params = set.config;
      r.area_px = static_cast<std::int64_t>(mask.count());
      r.bbox = mask.box();
      r.rotation_deg = f.rotation_deg;
      r.file_path = std::string(kFragmentsDir) + "/" + r.fragment_id + ".png";
      out.records.push_back(std::move(r));
    }
  }
  std::sort(out.records.begin(), out.records.end(), [](const FragmentRecord& a, const FragmentRecord& b) {
    return std::tie(a.source_id, a.fragment_id) < std::tie(b.source_id, b.fragment_id);
  });
  return out;
}

void assign_splits(std::span<FragmentRecord> records, SplitRatios ratios, std::uint64_t seed) {
  const std::array<double, 3> r{ratios.train, ratios.val, ratios.test};
  for (double x : r) {
    if (!(x >= 0.0) || !std::isfinite(x)) throw InputError("split ratios must be non-negative");
  }
  if (std::abs(r[0] + r[1] + r[2] - 1.0) > 1e-9) throw InputError("split ratios must sum to 1");

  std::vector<std::string> sources;
  for (const auto& rec : records) sources.push_back(rec.source_id);
  std::sort(sources.begin(), sources.end());
  sources.erase(std::unique(sources.begin(), sources.end()), sources.end());
  const std::size_t n = sources.size();
  const auto positive = static_cast<std::size_t>(std::count_if(r.begin(), r.end(), [](double x) { return x > 0.0; }));
  if (n == 0) return;
  if (n < positive) throw InputError("fewer sources than non-empty splits");

  Rng rng(seed);
  for (std::size_t i = n; i > 1; --i) std::swap(sources[i - 1], sources[rng.below(i)]);

  // Largest-remainder apportionment of sources.
  std::array<std::size_t, 3> quota{};
  std::array<double, 3> remainder{};
  std::size_t assigned = 0;
  for (int i = 0; i < 3; ++i) {
    const double exact = r[i] * static_cast<double>(n);
    quota[i] = static_cast<std::size_t>(std::floor(exact + 1e-9));
    remainder[i] = exact - static_cast<double>(quota[i]);
    assigned += quota[i];
  }
  while (assigned < n) {
    int best = 0;
    for (int i = 1; i < 3; ++i) {
      if (remainder[i] > remainder[best]) best = i;
    }
    ++quota[best];
    remainder[best] = -1.0;
    ++assigned;
  }
  while (assigned > n) {  // only from the rounding guard above
    int largest = static_cast<int>(std::max_element(quota.begin(), quota.end()) - quota.begin());
    --quota[largest];
    --assigned;
  }
  for (int i = 0; i < 3; ++i) {
    if (r[i] > 0.0 && quota[i] == 0) {
      const int donor = static_cast<int>(std::max_element(quota.begin(), quota.end()) - quota.begin());
      --quota[donor];
      ++quota[i];
    }
  }

  std::map<std::string, Split> split_of;
  std::size_t cursor = 0;
  constexpr std::array<Split, 3> order{Split::Train, Split::Val, Split::Test};
  for (int i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < quota[i]; ++j) split_of[sources[cursor++]] = order[i];
  }
  for (auto& rec : records) rec.split = split_of.at(rec.source_id);
}

AreaStats compute_area_stats(std::span<const double> areas) {
  AreaStats s;
  if (areas.empty()) return s;
  // Welford's running moments.
  double mean = 0.0, m2 = 0.0;
  s.min_px = areas[0];
  s.max_px = areas[0];
  for (double a : areas) {
    ++s.count;
    const double delta = a - mean;
    mean += delta / static_cast<double>(s.count);
    m2 += delta * (a - mean);
    s.min_px = std::min(s.min_px, a);
    s.max_px = std::max(s.max_px, a);
  }
  s.mean_px = mean;
  s.variance_px = m2 / static_cast<double>(s.count);
  s.cv = mean > 0.0 ? std::sqrt(s.variance_px) / mean : 0.0;

  const double lo = std::log(std::max(s.min_px, 1e-12));
  const double hi = std::log(std::max(s.max_px, 1e-12));
  const double step = (hi - lo) / kHistogramBins;
  for (int i = 0; i <= kHistogramBins; ++i) s.bin_edges[i] = std::exp(lo + step * i);
  s.bin_edges[0] = s.min_px;
  s.bin_edges[kHistogramBins] = s.max_px;
  for (double a : areas) {
    int bin = 0;
    if (step > 0.0) bin = std::clamp(static_cast<int>((std::log(std::max(a, 1e-12)) - lo) / step), 0, kHistogramBins - 1);
    ++s.histogram[bin];
  }
  return s;
}

std::map<std::string, AreaStats> area_statistics(std::span<const FragmentRecord> records, GroupBy group_by) {
  std::map<std::string, std::vector<double>> groups;
  for (const auto& r : records) {
    const std::string key = group_by == GroupBy::Method ? std::string(fragmenters::method_name(r.method)) : r.source_id;
    groups[key].push_back(static_cast<double>(r.area_px));
  }
  std::map<std::string, AreaStats> out;
  for (const auto& [key, areas] : groups) {
    if (!areas.empty()) out.emplace(key, compute_area_stats(areas));
  }
  return out;
}

}  // namespace fresco::dataset
