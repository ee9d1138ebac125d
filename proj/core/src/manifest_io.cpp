#include <fstream>
#include <sstream>

#include <json.hpp>

#include "fresco/dataset.hpp"
#include "fresco/error.hpp"

namespace fresco::dataset {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_csv_line(std::string_view line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    out.push_back(trim(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

ordered_json params_to_json(const fragmenters::FragmentationConfig& c) {
  using fragmenters::Method;
  ordered_json j;
  if (c.method == Method::CrossingCuts) {
    j["cuts"] = c.cut_count;
  } else {
    j["pieces"] = c.target_count;
  }
  if (c.method == Method::NonConvexPartition) {
    j["point_multiplier"] = c.point_multiplier;
    j["prioritize_small"] = c.prioritize_small;
  }
  if (c.method == Method::ErodedVoronoi) {
    j["erosion_max_px"] = c.erosion_max_px;
    j["smooth_contours"] = c.smooth_contours;
  }
  j["rotate_fragments"] = c.rotate_fragments;
  j["seed"] = c.seed;
  return j;
}

fragmenters::FragmentationConfig params_from_json(fragmenters::Method method, const ordered_json& j) {
  auto c = fragmenters::FragmentationConfig::for_method(method);
  c.cut_count = j.value("cuts", c.cut_count);
  c.target_count = j.value("pieces", c.target_count);
  c.point_multiplier = j.value("point_multiplier", c.point_multiplier);
  c.prioritize_small = j.value("prioritize_small", c.prioritize_small);
  c.erosion_max_px = j.value("erosion_max_px", c.erosion_max_px);
  c.smooth_contours = j.value("smooth_contours", c.smooth_contours);
  c.rotate_fragments = j.value("rotate_fragments", c.rotate_fragments);
  c.seed = j.value("seed", c.seed);
  return c;
}

}  // namespace

LabelMap read_labels_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open labels file " + path.string());
  std::string line;
  if (!std::getline(in, line)) throw InputError("labels file is empty: " + path.string());
  const auto header = split_csv_line(line);
  if (header.size() < 3 || header[0] != "source_id" || header[1] != "style_k" || header[2] != "style_name") {
    throw InputError("labels header must be source_id,style_k,style_name");
  }
  LabelMap labels;
  std::map<int, std::string> name_of;
  std::map<std::string, int> k_of;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto cols = split_csv_line(line);
    if (cols.size() < 3) throw InputError("labels line " + std::to_string(line_no) + ": expected 3 columns");
    int k = 0;
    try {
      std::size_t used = 0;
      k = std::stoi(cols[1], &used);
      if (used != cols[1].size()) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw InputError("labels line " + std::to_string(line_no) + ": bad style_k '" + cols[1] + "'");
    }
    if (k < 1) throw InputError("labels line " + std::to_string(line_no) + ": style_k must be >= 1");
    const auto [nit, new_k] = name_of.emplace(k, cols[2]);
    const auto [kit, new_name] = k_of.emplace(cols[2], k);
    if ((!new_k && nit->second != cols[2]) || (!new_name && kit->second != k)) {
      throw InputError("labels line " + std::to_string(line_no) + ": inconsistent style name for k=" + cols[1]);
    }
    if (!labels.emplace(cols[0], StyleLabel{k, cols[2]}).second) {
      throw InputError("labels line " + std::to_string(line_no) + ": duplicate source_id " + cols[0]);
    }
  }
  return labels;
}

std::string manifest_line(const FragmentRecord& r) {
  ordered_json j;
  j["fragment_id"] = r.fragment_id;
  j["source_id"] = r.source_id;
  j["style_k"] = r.style.k;
  j["style_name"] = r.style.name;
  j["method"] = std::string(fragmenters::method_name(r.method));
  j["params"] = params_to_json(r.params);
  j["area_px"] = r.area_px;
  j["bbox"] = {r.bbox.x, r.bbox.y, r.bbox.width, r.bbox.height};
  j["rotation_deg"] = r.rotation_deg;
  j["split"] = std::string(split_name(r.split));
  j["file_path"] = r.file_path;
  return j.dump();
}

void write_manifest(const std::filesystem::path& path, std::span<const FragmentRecord> records) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write manifest " + path.string());
  for (const auto& r : records) out << manifest_line(r) << '\n';
  if (!out) throw Error("failed writing manifest " + path.string());
}

std::vector<FragmentRecord> read_manifest(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open manifest " + path.string());
  std::vector<FragmentRecord> out;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    try {
      const auto j = ordered_json::parse(line);
      FragmentRecord r;
      r.fragment_id = j.at("fragment_id").get<std::string>();
      r.source_id = j.at("source_id").get<std::string>();
      r.style = {j.at("style_k").get<int>(), j.at("style_name").get<std::string>()};
      const auto method = fragmenters::parse_method(j.at("method").get<std::string>());
      if (!method) throw InputError("unknown method");
      r.method = *method;
      r.params = params_from_json(r.method, j.at("params"));
      r.area_px = j.at("area_px").get<std::int64_t>();
      const auto& b = j.at("bbox");
      r.bbox = {b.at(0).get<int>(), b.at(1).get<int>(), b.at(2).get<int>(), b.at(3).get<int>()};
      r.rotation_deg = j.at("rotation_deg").get<double>();
      const auto split = parse_split(j.at("split").get<std::string>());
      if (!split) throw InputError("unknown split");
      r.split = *split;
      r.file_path = j.at("file_path").get<std::string>();
      out.push_back(std::move(r));
    } catch (const nlohmann::json::exception& e) {
      throw InputError("manifest " + path.string() + " line " + std::to_string(line_no) + ": " + e.what());
    } catch (const InputError& e) {
      throw InputError("manifest " + path.string() + " line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return out;
}

void write_dataset_info(const std::filesystem::path& path, const DatasetInfo& info) {
  ordered_json j;
  j["tool_version"] = info.tool_version;
  j["master_seed"] = info.master_seed;
  j["K"] = info.K;
  j["ratios"] = {info.ratios.train, info.ratios.val, info.ratios.test};
  ordered_json styles = ordered_json::array();
  for (const auto& [k, entry] : info.sources_per_style) {
    styles.push_back({{"style_k", k}, {"style_name", entry.first}, {"sources", entry.second}});
  }
  j["sources_per_style"] = styles;
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + path.string());
  out << j.dump(2) << '\n';
}

DatasetInfo read_dataset_info(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path.string());
  try {
    const auto j = ordered_json::parse(in);
    DatasetInfo info;
    info.tool_version = j.at("tool_version").get<std::string>();
    info.master_seed = j.at("master_seed").get<std::uint64_t>();
    info.K = j.at("K").get<int>();
    const auto& r = j.at("ratios");
    info.ratios = {r.at(0).get<double>(), r.at(1).get<double>(), r.at(2).get<double>()};
    for (const auto& s : j.at("sources_per_style")) {
      info.sources_per_style[s.at("style_k").get<int>()] = {s.at("style_name").get<std::string>(),
                                                            s.at("sources").get<std::size_t>()};
    }
    return info;
  } catch (const nlohmann::json::exception& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

}  // namespace fresco::dataset
