#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gcsi/complex_matrix.hpp"
#include "gcsi/engine.hpp"
#include "gcsi/json_io.hpp"
#include "gcsi/linalg.hpp"

namespace gcsi {

enum class EnsembleKind {
  generic,
  normal,
  hermitian,
  unitary,
  nilpotent_jordan,
  cyclic_weighted_shift,
  truncated_unilateral_shift,
  remark_2_2_5,
  custom_json,
};

const char* to_string(EnsembleKind kind);
EnsembleKind ensemble_kind_from_string(const std::string& name);
const std::vector<std::string>& known_ensemble_kinds();

struct EnsembleSpec {
  EnsembleKind kind = EnsembleKind::generic;
  std::size_t n = 4;
  std::size_t k = 1;
  int count = 1;
  std::uint64_t seed = 1;
  std::vector<double> weights;  // cyclic_weighted_shift only; empty = default
  std::string custom_path;      // custom_json only
};

/// Deterministic instance list for the spec. The remark_2_2_5 kind ignores n
/// and returns copies of the fixed 3 x 3 matrix; custom_json reads a matrix
/// object or an array of them from custom_path.
std::vector<ComplexMatrix> generate(const EnsembleSpec& spec);

/// Haar-ish unitary from Gram-Schmidt on a Ginibre draw.
ComplexMatrix random_unitary(std::size_t n, Rng& rng);

/// PSD matrix with the given rank and spectrum log-uniform in [0.1, 10].
ComplexMatrix random_singular_psd(std::size_t n, std::size_t rank, Rng& rng);

struct TheoremResult {
  std::string theorem_id;
  int instances_tested = 0;
  std::vector<Json> violations;
  enum class Status { pass, fail, vacuous } status = Status::vacuous;
  Json details = Json::object();
};

const char* to_string(TheoremResult::Status s);
Json to_json(const TheoremResult& r);

/// Verifier ids: prop_2_4, scaling, inverse, thm_2_5, cor_range, remark_2_8,
/// lemma_2_2, lemma_2_4, thm_semi_gcsi_half, thm_paranormal, thm_2_14,
/// thm_equality_cohypo, cor_2_15, collapse, lemma_order, lattice.
const std::vector<std::string>& known_theorem_ids();
const std::vector<std::string>& known_example_ids();

/// Runs one verifier over the ensemble. status == fail iff violations is
/// non-empty; vacuous means no instance satisfied the hypothesis. Unknown
/// ids raise std::invalid_argument.
TheoremResult verify(const std::string& theorem_id, const EnsembleSpec& spec,
                     const SearchConfig& cfg = {}, const Tolerances& tol = {});

struct ReproOptions {
  std::optional<std::size_t> n;
  SearchConfig config;
  Tolerances tol;
};

/// Replays a pinned worked example: remark_2_2_5 (golden classification),
/// remark_2_7 (exploratory index estimate, asserts nothing), and
/// example_shift_equality (no basis equality vector for the truncated shift).
TheoremResult repro(const std::string& example_id, const ReproOptions& opts = {});

/// Appends one timestamped JSONL line; the timestamp lives only in this log,
/// never in report payloads.
void append_jsonl(const std::string& path, const TheoremResult& result);

}  // namespace gcsi
