#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gcsi/harness.hpp"
#include "gcsi/json_io.hpp"
#include "gcsi/operator_classes.hpp"
#include "gcsi/version.hpp"

namespace {

using gcsi::Json;

struct RunConfig {
  std::string command;
  std::optional<std::string> input, theorem, example, ensemble, output, format, log;
  std::optional<std::size_t> n, k;
  std::optional<std::uint64_t> seed;
  std::optional<int> restarts, samples, count;
  std::optional<double> tolerance;
};

const std::vector<std::string>& commands() {
  static const std::vector<std::string> c = {"classify", "gcsi-index", "verify",
                                             "repro", "fuzz"};
  return c;
}

void merge_config_file(RunConfig& rc, const std::string& path) {
  const Json j = gcsi::load_json_file(path);
  if (!j.is_object()) throw std::invalid_argument("config file: expected a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (key == "command") rc.command = value.get<std::string>();
    else if (key == "input") rc.input = value.get<std::string>();
    else if (key == "theorem") rc.theorem = value.get<std::string>();
    else if (key == "example") rc.example = value.get<std::string>();
    else if (key == "ensemble") rc.ensemble = value.get<std::string>();
    else if (key == "output") rc.output = value.get<std::string>();
    else if (key == "format") rc.format = value.get<std::string>();
    else if (key == "log") rc.log = value.get<std::string>();
    else if (key == "n") rc.n = value.get<std::size_t>();
    else if (key == "k") rc.k = value.get<std::size_t>();
    else if (key == "seed") rc.seed = value.get<std::uint64_t>();
    else if (key == "restarts") rc.restarts = value.get<int>();
    else if (key == "samples") rc.samples = value.get<int>();
    else if (key == "count") rc.count = value.get<int>();
    else if (key == "tolerance") rc.tolerance = value.get<double>();
    else throw std::invalid_argument("config file: unknown key '" + key + "'");
  }
}

gcsi::SearchConfig search_config(const RunConfig& rc) {
  gcsi::SearchConfig cfg;
  if (rc.seed) cfg.seed = *rc.seed;
  if (rc.restarts) cfg.restarts = *rc.restarts;
  if (rc.samples) cfg.samples_per_restart = *rc.samples;
  gcsi::validate(cfg);
  return cfg;
}

gcsi::Tolerances tolerances(const RunConfig& rc) {
  gcsi::Tolerances tol;
  if (rc.tolerance) {
    if (!(*rc.tolerance > 0.0))
      throw std::invalid_argument("--tolerance must be positive");
    tol.ineq_tol = *rc.tolerance;
  }
  return tol;
}

gcsi::ComplexMatrix load_operator(const RunConfig& rc) {
  if (rc.input) {
    gcsi::ComplexMatrix a = gcsi::matrix_from_json(gcsi::load_json_file(*rc.input));
    if (!a.is_square()) throw std::invalid_argument("input operator must be square");
    if (rc.n && *rc.n != a.rows())
      throw std::invalid_argument("--n does not match the input operator size");
    return a;
  }
  if (!rc.n) throw std::invalid_argument("either --input or --n is required");
  if (*rc.n < 1) throw std::invalid_argument("--n must be >= 1");
  return gcsi::ComplexMatrix::identity(*rc.n);
}

Json config_echo(const RunConfig& rc, const gcsi::SearchConfig& cfg,
                 const gcsi::Tolerances& tol) {
  Json j{{"search", gcsi::to_json(cfg)}, {"tolerances", gcsi::to_json(tol)}};
  if (rc.input) j["input"] = *rc.input;
  if (rc.n) j["n"] = *rc.n;
  if (rc.k) j["k"] = *rc.k;
  if (rc.theorem) j["theorem"] = *rc.theorem;
  if (rc.example) j["example"] = *rc.example;
  if (rc.ensemble) j["ensemble"] = *rc.ensemble;
  if (rc.count) j["count"] = *rc.count;
  return j;
}

std::string render_text(const std::string& command, const Json& result);

void emit(const RunConfig& rc, const Json& report) {
  std::string payload;
  if (rc.format.value_or("json") == "text")
    payload = render_text(rc.command, report.at("result"));
  else
    payload = report.dump(2) + "\n";
  if (rc.output)
    gcsi::write_atomic(*rc.output, payload);
  else
    std::cout << payload;
}

std::string render_class(const Json& v) {
  return std::string(v.at("holds").get<bool>() ? "yes" : "no") +
         " (defect " + v.at("defect").dump() + ")";
}

std::string render_text(const std::string& command, const Json& result) {
  std::string out;
  if (command == "classify") {
    out += "normal:           " + render_class(result.at("normal")) + "\n";
    out += "cohyponormal:     " + render_class(result.at("cohyponormal")) + "\n";
    out += "semi-hyponormal:  " + render_class(result.at("semi_hyponormal")) + "\n";
    out += "paranormal:       " + render_class(result.at("paranormal")) + "\n";
    const Json& g = result.at("gcsi");
    out += "inequality class: " + g.at("membership").get<std::string>() +
           " (lambda_star " + g.at("lambda_star").dump() + ")\n";
    const Json& kern = result.at("kernel");
    out += "kernel:           rank " + kern.at("rank").dump() + ", rank of square " +
           kern.at("rank_squared").dump() + ", equal " + kern.at("equal").dump() +
           ", containment " + kern.at("containment").dump() + "\n";
    out += "lattice:          " +
           std::string(result.at("lattice_ok").get<bool>() ? "consistent" : "VIOLATED") +
           "\n";
  } else if (command == "gcsi-index") {
    out += "membership:  " + result.at("membership").get<std::string>() + "\n";
    out += "lambda_star: " + result.at("lambda_star").dump() + "\n";
  } else if (command == "verify" || command == "repro") {
    out += "id:         " + result.at("theorem_id").get<std::string>() + "\n";
    out += "status:     " + result.at("status").get<std::string>() + "\n";
    out += "tested:     " + result.at("instances_tested").dump() + "\n";
    out += "violations: " + std::to_string(result.at("violations").size()) + "\n";
  } else {
    for (const auto& item : result.at("results")) {
      out += item.at("theorem_id").get<std::string>() + " [" +
             item.at("ensemble").get<std::string>() + "] " +
             item.at("status").get<std::string>() + "\n";
    }
    out += "failures: " + result.at("failures").dump() + "\n";
  }
  return out;
}

int run_classify(const RunConfig& rc) {
  const gcsi::SearchConfig cfg = search_config(rc);
  const gcsi::Tolerances tol = tolerances(rc);
  const gcsi::ComplexMatrix a = load_operator(rc);
  const gcsi::ModuleSpace space{a.rows(), rc.k.value_or(1)};
  const gcsi::ClassificationReport report = gcsi::classify(a, space, cfg, tol);
  Json j{{"command", "classify"},
         {"version", gcsi::kVersion},
         {"config", config_echo(rc, cfg, tol)},
         {"result", gcsi::to_json(report)}};
  emit(rc, j);
  return report.lattice_ok ? 0 : 2;
}

int run_gcsi_index(const RunConfig& rc) {
  const gcsi::SearchConfig cfg = search_config(rc);
  const gcsi::Tolerances tol = tolerances(rc);
  const gcsi::ComplexMatrix a = load_operator(rc);
  const gcsi::ModuleSpace space{a.rows(), rc.k.value_or(1)};
  const gcsi::GcsiVerdict verdict = gcsi::gcsi_index(a, space, cfg, tol);
  Json j{{"command", "gcsi-index"},
         {"version", gcsi::kVersion},
         {"config", config_echo(rc, cfg, tol)},
         {"result", gcsi::to_json(verdict)}};
  emit(rc, j);
  return 0;
}

gcsi::EnsembleSpec ensemble_spec(const RunConfig& rc) {
  gcsi::EnsembleSpec spec;
  spec.kind = gcsi::ensemble_kind_from_string(rc.ensemble.value_or("generic"));
  spec.n = rc.n.value_or(4);
  spec.k = rc.k.value_or(1);
  spec.count = rc.count.value_or(50);
  spec.seed = rc.seed.value_or(1);
  if (spec.kind == gcsi::EnsembleKind::custom_json) {
    if (!rc.input)
      throw std::invalid_argument("ensemble custom_json requires --input");
    spec.custom_path = *rc.input;
  }
  return spec;
}

int run_verify(const RunConfig& rc) {
  if (!rc.theorem) throw std::invalid_argument("verify requires --theorem");
  const gcsi::SearchConfig cfg = search_config(rc);
  const gcsi::Tolerances tol = tolerances(rc);
  const gcsi::EnsembleSpec spec = ensemble_spec(rc);
  const gcsi::TheoremResult result = gcsi::verify(*rc.theorem, spec, cfg, tol);
  if (rc.log) gcsi::append_jsonl(*rc.log, result);
  Json j{{"command", "verify"},
         {"version", gcsi::kVersion},
         {"config", config_echo(rc, cfg, tol)},
         {"result", gcsi::to_json(result)}};
  emit(rc, j);
  return result.status == gcsi::TheoremResult::Status::fail ? 2 : 0;
}

int run_repro(const RunConfig& rc) {
  if (!rc.example) throw std::invalid_argument("repro requires --example");
  gcsi::ReproOptions opts;
  opts.config = search_config(rc);
  opts.tol = tolerances(rc);
  if (rc.n) opts.n = *rc.n;
  const gcsi::TheoremResult result = gcsi::repro(*rc.example, opts);
  if (rc.log) gcsi::append_jsonl(*rc.log, result);
  Json j{{"command", "repro"},
         {"version", gcsi::kVersion},
         {"config", config_echo(rc, opts.config, opts.tol)},
         {"result", gcsi::to_json(result)}};
  emit(rc, j);
  return result.status == gcsi::TheoremResult::Status::fail ? 2 : 0;
}

int run_fuzz(const RunConfig& rc) {
  const gcsi::SearchConfig base_cfg = search_config(rc);
  const gcsi::Tolerances tol = tolerances(rc);
  const int rounds = rc.count.value_or(10);
  if (rounds < 1) throw std::invalid_argument("fuzz: --count must be >= 1");
  const std::vector<std::string> battery = {
      "prop_2_4", "thm_2_5", "remark_2_8", "thm_paranormal", "thm_2_14",
      "collapse", "lemma_2_2", "lemma_2_4", "thm_semi_gcsi_half", "lattice"};
  const std::vector<gcsi::EnsembleKind> kinds = {gcsi::EnsembleKind::generic,
                                                 gcsi::EnsembleKind::normal};
  Json results = Json::array();
  int failures = 0;
  for (int round = 0; round < rounds; ++round) {
    for (gcsi::EnsembleKind kind : kinds) {
      gcsi::EnsembleSpec spec;
      spec.kind = kind;
      spec.n = rc.n.value_or(4);
      spec.k = rc.k.value_or(1);
      spec.count = 8;
      spec.seed = base_cfg.seed ^ (0x9e3779b97f4a7c15ULL * (round + 1));
      for (const std::string& id : battery) {
        const gcsi::TheoremResult res = gcsi::verify(id, spec, base_cfg, tol);
        if (res.status == gcsi::TheoremResult::Status::fail) ++failures;
        Json item = gcsi::to_json(res);
        item["round"] = round;
        item["ensemble"] = gcsi::to_string(kind);
        if (rc.log) gcsi::append_jsonl(*rc.log, res);
        results.push_back(std::move(item));
      }
    }
  }
  Json j{{"command", "fuzz"},
         {"version", gcsi::kVersion},
         {"config", config_echo(rc, base_cfg, tol)},
         {"result", Json{{"results", std::move(results)}, {"failures", failures}}}};
  emit(rc, j);
  return failures > 0 ? 2 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical workbench for a Cauchy-Schwarz type operator inequality "
               "on finite matrix Hilbert modules"};
  app.set_version_flag("--version", gcsi::kVersion);

  std::string command_arg, config_path;
  RunConfig cli;
  std::string input, theorem, example, ensemble, output, format, log;
  std::size_t n = 0, k = 0;
  std::uint64_t seed = 0;
  int restarts = 0, samples = 0, count = 0;
  double tolerance = 0.0;

  app.add_option("command", command_arg, "one of: classify, gcsi-index, verify, repro, fuzz")
      ->check(CLI::IsMember(commands()));
  app.add_option("--config", config_path, "JSON config file; flags override its keys");
  auto* o_input = app.add_option("--input", input, "operator JSON file");
  auto* o_n = app.add_option("--n", n, "space dimension (identity operator when no --input)");
  auto* o_k = app.add_option("--k", k, "matrix algebra size of the module");
  auto* o_seed = app.add_option("--seed", seed, "base random seed");
  auto* o_restarts = app.add_option("--restarts", restarts, "search restarts");
  auto* o_samples = app.add_option("--samples", samples, "samples per restart");
  auto* o_tol = app.add_option("--tolerance", tolerance, "inequality slack (ineq_tol)");
  auto* o_theorem = app.add_option("--theorem", theorem, "verifier id for verify");
  auto* o_example = app.add_option("--example", example, "worked example id for repro");
  auto* o_ensemble =
      app.add_option("--ensemble", ensemble, "operator ensemble kind")
          ->check(CLI::IsMember(gcsi::known_ensemble_kinds()));
  auto* o_count = app.add_option("--count", count, "ensemble size / fuzz rounds");
  auto* o_output = app.add_option("--output", output, "write the report here (atomic)");
  auto* o_format = app.add_option("--format", format, "json or text")
                       ->check(CLI::IsMember(std::vector<std::string>{"json", "text"}));
  auto* o_log = app.add_option("--log", log, "append timestamped JSONL results here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    RunConfig rc;
    if (!config_path.empty()) merge_config_file(rc, config_path);
    if (!command_arg.empty()) rc.command = command_arg;
    if (o_input->count()) rc.input = input;
    if (o_n->count()) rc.n = n;
    if (o_k->count()) rc.k = k;
    if (o_seed->count()) rc.seed = seed;
    if (o_restarts->count()) rc.restarts = restarts;
    if (o_samples->count()) rc.samples = samples;
    if (o_tol->count()) rc.tolerance = tolerance;
    if (o_theorem->count()) rc.theorem = theorem;
    if (o_example->count()) rc.example = example;
    if (o_ensemble->count()) rc.ensemble = ensemble;
    if (o_count->count()) rc.count = count;
    if (o_output->count()) rc.output = output;
    if (o_format->count()) rc.format = format;
    if (o_log->count()) rc.log = log;

    if (rc.command.empty())
      throw std::invalid_argument("no command given (classify, gcsi-index, verify, repro, fuzz)");
    bool known = false;
    for (const auto& c : commands()) known = known || c == rc.command;
    if (!known) throw std::invalid_argument("unknown command: " + rc.command);
    if (rc.k && *rc.k < 1) throw std::invalid_argument("--k must be >= 1");
    if (rc.format && *rc.format != "json" && *rc.format != "text")
      throw std::invalid_argument("--format must be json or text");

    if (rc.command == "classify") return run_classify(rc);
    if (rc.command == "gcsi-index") return run_gcsi_index(rc);
    if (rc.command == "verify") return run_verify(rc);
    if (rc.command == "repro") return run_repro(rc);
    return run_fuzz(rc);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
