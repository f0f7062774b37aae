#include "gcsi/json_io.hpp"

#include <unistd.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>

namespace gcsi {

namespace {

void require_keys(const Json& j, std::initializer_list<const char*> keys,
                  const char* what) {
  if (!j.is_object())
    throw std::invalid_argument(std::string(what) + ": expected a JSON object");
  for (const char* k : keys)
    if (!j.contains(k))
      throw std::invalid_argument(std::string(what) + ": missing key '" + k + "'");
  for (const auto& [key, _] : j.items()) {
    bool known = false;
    for (const char* k : keys) known = known || key == k;
    if (!known)
      throw std::invalid_argument(std::string(what) + ": unknown key '" + key + "'");
  }
}

std::size_t positive_size(const Json& j, const char* key, const char* what) {
  if (!j.at(key).is_number_integer() || j.at(key).get<long long>() <= 0)
    throw std::invalid_argument(std::string(what) + ": '" + key +
                                "' must be a positive integer");
  return j.at(key).get<std::size_t>();
}

std::vector<Complex> parse_entries(const Json& j, std::size_t expected,
                                   const char* what) {
  const Json& es = j.at("entries");
  if (!es.is_array() || es.size() != expected)
    throw std::invalid_argument(std::string(what) + ": 'entries' must hold exactly " +
                                std::to_string(expected) + " [re, im] pairs");
  std::vector<Complex> out;
  out.reserve(expected);
  for (const Json& e : es) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number())
      throw std::invalid_argument(std::string(what) + ": entry is not an [re, im] pair");
    const double re = e[0].get<double>(), im = e[1].get<double>();
    if (!std::isfinite(re) || !std::isfinite(im))
      throw std::invalid_argument(std::string(what) + ": non-finite entry");
    out.emplace_back(re, im);
  }
  return out;
}

}  // namespace

Json to_json(const ComplexMatrix& m) {
  Json j;
  j["rows"] = m.rows();
  j["cols"] = m.cols();
  Json entries = Json::array();
  for (const auto& z : m.entries()) entries.push_back(Json::array({z.real(), z.imag()}));
  j["entries"] = std::move(entries);
  return j;
}

ComplexMatrix matrix_from_json(const Json& j) {
  require_keys(j, {"rows", "cols", "entries"}, "matrix");
  const std::size_t rows = positive_size(j, "rows", "matrix");
  const std::size_t cols = positive_size(j, "cols", "matrix");
  const auto entries = parse_entries(j, rows * cols, "matrix");
  ComplexMatrix m(rows, cols);
  m.entries() = entries;
  return m;
}

Json to_json(const ModuleElement& e) {
  Json j = to_json(e.value());
  j["k"] = e.space().k;
  return j;
}

ModuleElement element_from_json(const Json& j) {
  require_keys(j, {"rows", "cols", "entries", "k"}, "module element");
  const std::size_t rows = positive_size(j, "rows", "module element");
  const std::size_t cols = positive_size(j, "cols", "module element");
  const std::size_t k = positive_size(j, "k", "module element");
  if (k != cols)
    throw std::invalid_argument("module element: 'k' must equal 'cols'");
  const auto entries = parse_entries(j, rows * cols, "module element");
  ComplexMatrix m(rows, cols);
  m.entries() = entries;
  return ModuleElement(ModuleSpace{rows, k}, std::move(m));
}

Json to_json(const Tolerances& t) {
  return Json{{"eig_tol", t.eig_tol},
              {"psd_tol", t.psd_tol},
              {"rank_tol", t.rank_tol},
              {"ineq_tol", t.ineq_tol}};
}

Json to_json(const SearchConfig& c) {
  return Json{{"seed", c.seed},
              {"restarts", c.restarts},
              {"samples_per_restart", c.samples_per_restart},
              {"refine_iters", c.refine_iters},
              {"step_decay", c.step_decay},
              {"member_threshold", c.member_threshold}};
}

Json to_json(const PairStatistics& s) {
  return Json{{"r0", s.r0},
              {"r1", s.r1},
              {"r2", s.r2},
              {"lambda_min", s.lambda_min},
              {"infeasible", s.infeasible}};
}

Json to_json(const GcsiCertificate& c) {
  return Json{{"x", to_json(c.x)}, {"y", to_json(c.y)}, {"stats", to_json(c.stats)}};
}

Json to_json(const GcsiVerdict& v) {
  Json certs = Json::array();
  for (const auto& c : v.certificates) certs.push_back(to_json(c));
  return Json{{"membership", to_string(v.membership)},
              {"lambda_star", v.lambda_star},
              {"certificates", std::move(certs)},
              {"space", Json{{"n", v.space.n}, {"k", v.space.k}}},
              {"config", to_json(v.config)}};
}

Json to_json(const ClassVerdict& v) {
  Json j{{"holds", v.holds}, {"defect", v.defect}};
  j["witness"] = v.witness ? to_json(*v.witness) : Json(nullptr);
  return j;
}

Json to_json(const ClassificationReport& r) {
  return Json{{"normal", to_json(r.normal)},
              {"cohyponormal", to_json(r.cohyponormal)},
              {"semi_hyponormal", to_json(r.semi_hyponormal)},
              {"paranormal", to_json(r.paranormal)},
              {"gcsi", to_json(r.gcsi)},
              {"kernel",
               Json{{"rank", r.rank},
                    {"rank_squared", r.rank_squared},
                    {"equal", r.kernel_eq},
                    {"containment", r.kernel_cont}}},
              {"lattice_ok", r.lattice_ok}};
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open file: " + path);
  std::string content((std::istreambuf_iterator<char>(in)),
                      std::istreambuf_iterator<char>());
  return content;
}

Json load_json_file(const std::string& path) {
  Json j = Json::parse(read_text_file(path), nullptr, false);
  if (j.is_discarded())
    throw std::invalid_argument("invalid JSON in file: " + path);
  return j;
}

void write_atomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  if (target.has_parent_path() && !target.parent_path().empty())
    fs::create_directories(target.parent_path());
  const fs::path tmp = target.string() + ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open file for write: " + tmp.string());
    out << content;
    out.flush();
    if (!out) throw std::runtime_error("write failed: " + tmp.string());
  }
  fs::rename(tmp, target);
}

}  // namespace gcsi
