#pragma once

#include <string>

#include <json.hpp>

#include "gcsi/complex_matrix.hpp"
#include "gcsi/engine.hpp"
#include "gcsi/linalg.hpp"
#include "gcsi/module_space.hpp"
#include "gcsi/operator_classes.hpp"

namespace gcsi {

using Json = nlohmann::json;

// Matrices travel as {"rows": n, "cols": m, "entries": [[re, im], ...]} in
// row-major order; module elements add a redundant "k" field that must match
// cols. Parsers are strict: unknown keys, wrong entry counts, and non-finite
// numbers are rejected with std::invalid_argument.

Json to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const Json& j);

Json to_json(const ModuleElement& e);
ModuleElement element_from_json(const Json& j);

Json to_json(const Tolerances& t);
Json to_json(const SearchConfig& c);
Json to_json(const PairStatistics& s);
Json to_json(const GcsiCertificate& c);
Json to_json(const GcsiVerdict& v);
Json to_json(const ClassVerdict& v);
Json to_json(const ClassificationReport& r);

std::string read_text_file(const std::string& path);
Json load_json_file(const std::string& path);

/// Writes content to a temporary sibling and renames it over path, so
/// readers never observe a partial file.
void write_atomic(const std::string& path, const std::string& content);

}  // namespace gcsi
