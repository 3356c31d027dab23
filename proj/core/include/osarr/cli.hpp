#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "osarr/arrangement.hpp"
#include "osarr/matrix.hpp"

namespace osarr {

inline constexpr const char* kVersion = "0.1.0";

enum class InputFormat { Arrangement, Graph };

struct InputSpec {
  std::string path;
  std::optional<InputFormat> format;  // overrides the header keyword
  std::vector<FieldSpec> fields;      // empty: the default set
  std::optional<std::size_t> max_degree;
  bool timing = false;
};

struct ParsedInput {
  Arrangement arrangement;
  InputFormat format;
  std::vector<std::size_t> item_lines;  // source line of each hyperplane / edge as written
};

/// Throws InputError with a line number for anything malformed.
ParsedInput parse_input(const std::string& path, std::optional<InputFormat> format = {});
ParsedInput parse_input_text(const std::string& text, std::optional<InputFormat> format = {},
                             const std::string& source_name = "<input>");
InputFormat parse_format(const std::string& name);
/// "0,2,3" -> {Q, F2, F3}.
std::vector<FieldSpec> parse_fields(const std::string& list);

struct AnalyzeResult {
  nlohmann::json report;
  int exit_code = 0;  // 0 complete, 2 homotopy skipped on preconditions
};

/// Throws InputError (exit 1) or InternalInvariantViolation (exit 3).
AnalyzeResult cmd_analyze(const InputSpec& input);
AnalyzeResult analyze_arrangement(const ParsedInput& input, const InputSpec& options);

nlohmann::json cmd_circuits(const InputSpec& input, bool chordless, std::optional<std::size_t> size);

/// Canonical serialization: sorted keys, two-space indent, LF, trailing newline.
std::string canonical_json(const nlohmann::json& doc);
std::string render_text(const nlohmann::json& report);
/// Writes the canonical bytes to path ("-" for stdout) and returns them.
std::string emit_report(const nlohmann::json& doc, const std::string& path);

nlohmann::json to_json(const Integer& v);
nlohmann::json to_json(const AbelianInvariants& inv);
nlohmann::json to_json(const IntegerMatrix& m);

enum class SearchFamily { Graphic, Random2Generic };

struct SearchJob {
  SearchFamily family = SearchFamily::Graphic;
  std::size_t max_size = 6;   // vertices (graphic) or hyperplanes (random)
  std::size_t max_dim = 4;    // random family only
  std::size_t count = 20;     // random family only
  std::uint64_t seed = 1;
  std::string output;
  std::size_t workers = 0;    // 0: hardware concurrency
};

struct SearchSummary {
  std::size_t candidates = 0;
  std::size_t instances = 0;
  std::size_t torsion_found = 0;
  std::size_t violations = 0;
};

SearchFamily parse_family(const std::string& name);
/// Writes one JSON object per line to job.output in canonical order.
SearchSummary cmd_search(const SearchJob& job);
/// Same stream, returned as text.
std::string run_search(const SearchJob& job, SearchSummary* summary = nullptr);

}  // namespace osarr
