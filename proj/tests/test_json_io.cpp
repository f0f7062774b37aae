#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <stdexcept>

#include "gcsi/json_io.hpp"
#include "gcsi/rng.hpp"

using gcsi::Complex;
using gcsi::ComplexMatrix;
using gcsi::Json;
using gcsi::ModuleElement;
using gcsi::ModuleSpace;

namespace fs = std::filesystem;

TEST_CASE("matrix JSON round trip preserves every entry") {
  gcsi::Rng rng(3);
  const ComplexMatrix a = rng.ginibre(3, 4);
  const Json j = gcsi::to_json(a);
  CHECK(j.at("rows") == 3);
  CHECK(j.at("cols") == 4);
  CHECK(j.at("entries").size() == 12);
  const ComplexMatrix back = gcsi::matrix_from_json(j);
  CHECK(gcsi::frobenius_distance(a, back) == 0.0);
}

TEST_CASE("matrix JSON parser is strict") {
  Json good{{"rows", 2},
            {"cols", 2},
            {"entries", Json::array({Json::array({1.0, 0.0}), Json::array({0.0, 0.0}),
                                     Json::array({0.0, 0.0}), Json::array({1.0, 0.0})})}};
  CHECK_NOTHROW(gcsi::matrix_from_json(good));

  Json unknown = good;
  unknown["comment"] = "nope";
  CHECK_THROWS_AS(gcsi::matrix_from_json(unknown), std::invalid_argument);

  Json missing = good;
  missing.erase("cols");
  CHECK_THROWS_AS(gcsi::matrix_from_json(missing), std::invalid_argument);

  Json short_entries = good;
  short_entries["entries"].erase(3);
  CHECK_THROWS_AS(gcsi::matrix_from_json(short_entries), std::invalid_argument);

  Json bad_pair = good;
  bad_pair["entries"][0] = Json::array({1.0});
  CHECK_THROWS_AS(gcsi::matrix_from_json(bad_pair), std::invalid_argument);

  Json not_number = good;
  not_number["entries"][0] = Json::array({"x", 0.0});
  CHECK_THROWS_AS(gcsi::matrix_from_json(not_number), std::invalid_argument);

  Json zero_size = good;
  zero_size["rows"] = 0;
  CHECK_THROWS_AS(gcsi::matrix_from_json(zero_size), std::invalid_argument);

  CHECK_THROWS_AS(gcsi::matrix_from_json(Json::array()), std::invalid_argument);
}

TEST_CASE("element JSON carries k and must stay consistent") {
  const ModuleSpace space{3, 2};
  gcsi::Rng rng(5);
  const ModuleElement e = gcsi::random_element(space, rng);
  const Json j = gcsi::to_json(e);
  CHECK(j.at("k") == 2);
  const ModuleElement back = gcsi::element_from_json(j);
  CHECK(back.space() == space);
  CHECK(gcsi::frobenius_distance(back.value(), e.value()) == 0.0);

  Json mismatched = j;
  mismatched["k"] = 1;
  CHECK_THROWS_AS(gcsi::element_from_json(mismatched), std::invalid_argument);
}

TEST_CASE("report serialization is stable and ordered") {
  gcsi::Rng rng(7);
  const ComplexMatrix a = rng.ginibre(3, 3);
  gcsi::SearchConfig cfg;
  cfg.restarts = 4;
  cfg.samples_per_restart = 64;
  const gcsi::ClassificationReport rep =
      gcsi::classify(a, ModuleSpace{3, 1}, cfg);
  const Json j1 = gcsi::to_json(rep);
  const Json j2 = gcsi::to_json(gcsi::classify(a, ModuleSpace{3, 1}, cfg));
  CHECK(j1.dump() == j2.dump());
  CHECK(j1.contains("gcsi"));
  CHECK(j1.contains("kernel"));
  CHECK(j1.contains("lattice_ok"));
  CHECK(j1.at("gcsi").contains("membership"));
  CHECK(j1.at("gcsi").contains("config"));
  // no timestamps anywhere in report payloads
  CHECK(j1.dump().find("\"ts\"") == std::string::npos);
}

TEST_CASE("class verdict serialization keeps the witness when present") {
  const ComplexMatrix nil = ComplexMatrix::from_rows(
      {{Complex{0, 0}, Complex{1, 0}}, {Complex{0, 0}, Complex{0, 0}}});
  const Json bad = gcsi::to_json(gcsi::is_normal(nil));
  CHECK(bad.at("holds") == false);
  CHECK(!bad.at("witness").is_null());
  const Json good = gcsi::to_json(gcsi::is_normal(ComplexMatrix::identity(2)));
  CHECK(good.at("holds") == true);
  CHECK(good.at("witness").is_null());
}

TEST_CASE("file IO: load, strict parse, atomic write") {
  const fs::path dir = fs::path("json_io_scratch");
  fs::create_directories(dir);
  const fs::path path = dir / "m.json";

  {
    std::ofstream out(path);
    out << "{\"rows\":1,\"cols\":1,\"entries\":[[2.5,-1.0]]}";
  }
  const ComplexMatrix m = gcsi::matrix_from_json(gcsi::load_json_file(path.string()));
  CHECK(m(0, 0) == Complex{2.5, -1.0});

  {
    std::ofstream out(path);
    out << "{not json";
  }
  CHECK_THROWS_AS(gcsi::load_json_file(path.string()), std::invalid_argument);
  CHECK_THROWS_AS(gcsi::load_json_file((dir / "absent.json").string()),
                  std::runtime_error);

  const fs::path target = dir / "sub" / "report.json";
  gcsi::write_atomic(target.string(), "payload\n");
  CHECK(gcsi::read_text_file(target.string()) == "payload\n");
  gcsi::write_atomic(target.string(), "second\n");
  CHECK(gcsi::read_text_file(target.string()) == "second\n");
  // no stray temporaries left behind
  int files = 0;
  for (const auto& entry : fs::directory_iterator(dir / "sub")) {
    (void)entry;
    ++files;
  }
  CHECK(files == 1);

  fs::remove_all(dir);
}

TEST_CASE("tolerances and config serialize numerically") {
  const Json t = gcsi::to_json(gcsi::Tolerances{});
  CHECK(t.at("ineq_tol") == 1e-8);
  CHECK(t.at("rank_tol") == 1e-9);
  const Json c = gcsi::to_json(gcsi::SearchConfig{});
  CHECK(c.at("seed") == 1);
  CHECK(c.at("restarts") == 32);
  CHECK(c.at("member_threshold") == 0.95);
}
