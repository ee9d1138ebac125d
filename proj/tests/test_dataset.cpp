#include <doctest.h>

#include <fstream>
#include <set>

#include "fresco/dataset.hpp"
#include "fresco/error.hpp"
#include "support/helpers.hpp"

using namespace fresco;
using namespace fresco::dataset;
using fragmenters::FragmentationConfig;
using fragmenters::Method;

namespace {

fragmenters::FragmentSet square_set(const std::string& source, int n, std::uint64_t seed) {
  auto c = FragmentationConfig::for_method(Method::SquareGrid);
  c.target_count = n;
  c.seed = seed;
  return fragmenters::fragment(640, 480, c, source);
}

// Minimal records: one fragment per source.
std::vector<FragmentRecord> records_for_sources(int sources, int per_source = 3) {
  std::vector<FragmentRecord> out;
  for (int s = 0; s < sources; ++s) {
    for (int f = 0; f < per_source; ++f) {
      FragmentRecord r;
      r.source_id = "s" + std::to_string(s);
      r.fragment_id = r.source_id + "__square__n12__" + std::to_string(f);
      r.style = {1, "one"};
      r.area_px = 10;
      out.push_back(r);
    }
  }
  return out;
}

}  // namespace

TEST_CASE("fragment ids") {
  auto c = FragmentationConfig::for_method(Method::CrossingCuts);
  c.cut_count = 10;
  CHECK(params_tag(c) == "c10");
  c = FragmentationConfig::for_method(Method::NonConvexPartition);
  c.target_count = 40;
  CHECK(params_tag(c) == "n40");
  CHECK(qualified_fragment_id("fresco_01", Method::NonConvexPartition, c, "0007") == "fresco_01__nonconvex__n40__0007");
}

TEST_CASE("build manifest") {
  const LabelMap labels{{"a", {1, "first"}}, {"b", {2, "second"}}};
  SUBCASE("two sources of twelve squares") {
    const std::vector sets{square_set("b", 12, 1), square_set("a", 12, 2)};
    const auto built = build_manifest(sets, labels);
    REQUIRE(built.records.size() == 24);
    CHECK(built.skipped_subpixel == 0);
    for (std::size_t i = 1; i < built.records.size(); ++i) {
      const auto& p = built.records[i - 1];
      const auto& q = built.records[i];
      CHECK(std::tie(p.source_id, p.fragment_id) < std::tie(q.source_id, q.fragment_id));
    }
    const auto& r = built.records.front();
    CHECK(r.source_id == "a");
    CHECK(r.style == StyleLabel{1, "first"});
    CHECK(r.area_px == 160 * 160);
    CHECK(r.bbox.width == 160);
    CHECK(r.file_path == "fragments/" + r.fragment_id + ".png");
  }
  SUBCASE("empty input") { CHECK(build_manifest({}, labels).records.empty()); }
  SUBCASE("unlabeled source") {
    const std::vector sets{square_set("zzz", 12, 1)};
    CHECK_THROWS_WITH_AS(build_manifest(sets, labels), doctest::Contains("zzz"), InputError);
  }
  SUBCASE("duplicate ids") {
    const std::vector sets{square_set("a", 12, 1), square_set("a", 12, 2)};
    CHECK_THROWS_WITH_AS(build_manifest(sets, labels), doctest::Contains("duplicate"), InputError);
  }
  SUBCASE("area matches the mask for raster regions") {
    auto c = FragmentationConfig::for_method(Method::ErodedVoronoi);
    c.target_count = 12;
    c.seed = 4;
    const auto set = fragmenters::fragment(400, 300, c, "a");
    const std::vector sets{set};
    const auto built = build_manifest(sets, labels);
    REQUIRE(built.records.size() == 12);
    for (std::size_t i = 0; i < 12; ++i) {
      const auto& m = std::get<raster::RasterMask>(set.fragments[i].region);
      CHECK(built.records[i].area_px == static_cast<std::int64_t>(m.count()));
    }
  }
}

TEST_CASE("split assignment") {
  SUBCASE("ten sources 70/15/15") {
    auto recs = records_for_sources(10);
    assign_splits(recs, {}, 123);
    std::map<Split, std::set<std::string>> by_split;
    for (const auto& r : recs) by_split[r.split].insert(r.source_id);
    CHECK(by_split[Split::Train].size() == 7);
    CHECK(by_split[Split::Val].size() >= 1);
    CHECK(by_split[Split::Val].size() <= 2);
    CHECK(by_split[Split::Test].size() >= 1);
    CHECK(by_split[Split::Test].size() <= 2);
    auto again = records_for_sources(10);
    assign_splits(again, {}, 123);
    for (std::size_t i = 0; i < recs.size(); ++i) CHECK(again[i].split == recs[i].split);
  }
  SUBCASE("all train") {
    auto recs = records_for_sources(4);
    assign_splits(recs, {1.0, 0.0, 0.0}, 1);
    for (const auto& r : recs) CHECK(r.split == Split::Train);
  }
  SUBCASE("leak-free across seeds") {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      auto recs = records_for_sources(13, 4);
      assign_splits(recs, {}, seed);
      std::map<std::string, std::set<Split>> splits_of;
      for (const auto& r : recs) splits_of[r.source_id].insert(r.split);
      for (const auto& [s, splits] : splits_of) CHECK(splits.size() == 1);
    }
  }
  SUBCASE("errors") {
    auto two = records_for_sources(2);
    CHECK_THROWS_WITH_AS(assign_splits(two, {}, 0), doctest::Contains("fewer sources"), InputError);
    auto recs = records_for_sources(5);
    CHECK_THROWS(assign_splits(recs, {0.5, 0.2, 0.2}, 0));
    CHECK_THROWS(assign_splits(recs, {1.2, -0.1, -0.1}, 0));
  }
}

TEST_CASE("area statistics") {
  SUBCASE("equal areas") {
    const std::vector<double> a{25, 25, 25, 25};
    const auto s = compute_area_stats(a);
    CHECK(s.variance_px == 0.0);
    CHECK(s.cv == 0.0);
    CHECK(s.histogram[0] == 4);
  }
  SUBCASE("one and three") {
    const std::vector<double> a{1, 3};
    const auto s = compute_area_stats(a);
    CHECK(s.mean_px == doctest::Approx(2.0));
    CHECK(s.variance_px == doctest::Approx(1.0));
    CHECK(s.cv == doctest::Approx(0.5));
  }
  SUBCASE("moments against a two-pass oracle") {
    Rng rng(6);
    std::vector<double> a;
    for (int i = 0; i < 5000; ++i) a.push_back(std::exp(rng.uniform(2, 12)));
    const auto s = compute_area_stats(a);
    const auto [mean, var] = oracle::mean_variance(a);
    CHECK(s.mean_px == doctest::Approx(mean).epsilon(1e-9));
    CHECK(s.variance_px == doctest::Approx(var).epsilon(1e-9));
    CHECK(s.count == a.size());
    std::uint64_t binned = 0;
    for (auto h : s.histogram) binned += h;
    CHECK(binned == a.size());
    CHECK(s.bin_edges.front() == s.min_px);
    CHECK(s.bin_edges.back() == s.max_px);
    CHECK(s.mean_px >= s.min_px);
    CHECK(s.mean_px <= s.max_px);
  }
  SUBCASE("grouping matches manual filtering") {
    std::vector<FragmentRecord> recs;
    Rng rng(2);
    for (int i = 0; i < 90; ++i) {
      FragmentRecord r;
      r.method = static_cast<Method>(i % 3);
      r.source_id = i % 2 ? "odd" : "even";
      r.area_px = 1 + static_cast<std::int64_t>(rng.below(1000));
      recs.push_back(r);
    }
    const auto by_method = area_statistics(recs, GroupBy::Method);
    CHECK(by_method.size() == 3);
    for (const auto& [name, stats] : by_method) {
      std::vector<double> manual;
      for (const auto& r : recs) {
        if (fragmenters::method_name(r.method) == name) manual.push_back(static_cast<double>(r.area_px));
      }
      const auto [mean, var] = oracle::mean_variance(manual);
      CHECK(stats.count == manual.size());
      CHECK(stats.mean_px == doctest::Approx(mean).epsilon(1e-12));
      CHECK(stats.variance_px == doctest::Approx(var).epsilon(1e-9));
    }
    const auto by_source = area_statistics(recs, GroupBy::Source);
    CHECK(by_source.size() == 2);
    CHECK(by_source.at("odd").count == 45);
  }
  SUBCASE("crossing cuts vary more than prioritized non-convex pieces") {
    std::vector<FragmentRecord> recs;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      for (Method m : {Method::CrossingCuts, Method::NonConvexPartition}) {
        auto c = FragmentationConfig::for_method(m);
        c.cut_count = 10;
        c.target_count = 40;
        c.seed = seed;
        const auto set = fragmenters::fragment(512, 384, c, "s" + std::to_string(seed));
        for (const auto& f : set.fragments) {
          FragmentRecord r;
          r.method = m;
          r.area_px = static_cast<std::int64_t>(std::llround(std::get<geometry::Polygon>(f.region).area()));
          recs.push_back(r);
        }
      }
    }
    const auto stats = area_statistics(recs, GroupBy::Method);
    CHECK(stats.at("crossing_cuts").cv > stats.at("nonconvex").cv);
  }
}

TEST_CASE("manifest files") {
  testing::TempDir dir("manifest");
  const LabelMap labels{{"a", {1, "first"}}, {"b", {2, "second"}}};
  auto c = FragmentationConfig::for_method(Method::CrossingCuts);
  c.cut_count = 5;
  c.seed = 17;
  const std::vector sets{square_set("a", 12, 3), fragmenters::fragment(640, 480, c, "b")};
  auto built = build_manifest(sets, labels);
  assign_splits(built.records, {0.5, 0.5, 0.0}, 2);
  write_manifest(dir.path() / "manifest.jsonl", built.records);

  SUBCASE("field order") {
    std::ifstream in(dir.path() / "manifest.jsonl");
    std::string line;
    std::getline(in, line);
    std::size_t last = 0;
    for (const char* key : {"fragment_id", "source_id", "style_k", "style_name", "method", "params", "area_px", "bbox",
                            "rotation_deg", "split", "file_path"}) {
      const auto at = line.find(std::string("\"") + key + "\"");
      REQUIRE(at != std::string::npos);
      CHECK(at >= last);
      last = at;
    }
  }
  SUBCASE("round trip") {
    const auto back = read_manifest(dir.path() / "manifest.jsonl");
    REQUIRE(back.size() == built.records.size());
    for (std::size_t i = 0; i < back.size(); ++i) {
      CHECK(manifest_line(back[i]) == manifest_line(built.records[i]));
      CHECK(back[i].params.seed == built.records[i].params.seed);
    }
  }
  SUBCASE("dataset info") {
    DatasetInfo info;
    info.master_seed = 99;
    info.K = 2;
    info.sources_per_style = {{1, {"first", 1}}, {2, {"second", 1}}};
    write_dataset_info(dir.path() / "dataset.json", info);
    const auto back = read_dataset_info(dir.path() / "dataset.json");
    CHECK(back.tool_version == kToolVersion);
    CHECK(back.master_seed == 99);
    CHECK(back.K == 2);
    CHECK(back.sources_per_style == info.sources_per_style);
  }
  SUBCASE("bad input") {
    std::ofstream(dir.path() / "bad.jsonl") << "{\"fragment_id\": 3}\n";
    CHECK_THROWS_AS(read_manifest(dir.path() / "bad.jsonl"), InputError);
    CHECK_THROWS_AS(read_manifest(dir.path() / "none.jsonl"), InputError);
  }
}

TEST_CASE("labels csv") {
  testing::TempDir dir("labels");
  const auto path = dir.path() / "labels.csv";
  std::ofstream(path) << "source_id,style_k,style_name\nf1,1,Style 1\nf2, 2 ,Style 2\n\nf3,1,Style 1\n";
  const auto labels = read_labels_csv(path);
  CHECK(labels.size() == 3);
  CHECK(labels.at("f2") == StyleLabel{2, "Style 2"});

  std::ofstream(path) << "id,k,name\nf1,1,x\n";
  CHECK_THROWS_AS(read_labels_csv(path), InputError);
  std::ofstream(path) << "source_id,style_k,style_name\nf1,zero,x\n";
  CHECK_THROWS_AS(read_labels_csv(path), InputError);
  std::ofstream(path) << "source_id,style_k,style_name\nf1,1,x\nf2,1,y\n";
  CHECK_THROWS_AS(read_labels_csv(path), InputError);
  std::ofstream(path) << "source_id,style_k,style_name\nf1,1,x\nf1,1,x\n";
  CHECK_THROWS_AS(read_labels_csv(path), InputError);
}
