#pragma once

// Input documents, structural reports, and the catalog survey. Normative
// document schema: top-level keys "group", "gamma", "action", optional
// "places" and "options". Groups are {"table": [[int]]} or
// {"permutations": {"degree": int, "generators": [[int]]}}. "action" is a
// list of image arrays over the module's elements, one per greedy generator
// of gamma (or one per gamma element, distinguished by length).

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "rapcert/certify.hpp"
#include "rapcert/cohomology.hpp"

namespace rapcert {

struct InputDocument {
  GaloisModule module;
  std::optional<LocalPlaceModel> places;
  limits lim; // base limits with the document's "options" applied
};

// throws input_error with a location prefix on any malformed field
InputDocument parse_document(const nlohmann::json &doc,
                             const limits &base = default_limits());

InputDocument load_document(const std::string &path,
                            const limits &base = default_limits());

// structural report: group predicates, action predicates, supersolvable
// chain, almost-complete test. bound-blocked sections carry an "error"
// entry instead of failing the whole report.
nlohmann::json cmd_analyze(const InputDocument &doc);

// cohomology report: classes, representatives, per-place restrictions and
// the diagonal surjectivity section when places are present
nlohmann::json cmd_h1(const InputDocument &doc);

// certificate, replay self-check, and the empirical section when places
// are present
nlohmann::json cmd_certify(const InputDocument &doc,
                           const certify_options &opt = {});

nlohmann::json surjectivity_to_json(const SurjectivityReport &rep);

// ---- survey -------------------------------------------------------------

struct SurveyRow {
  std::string file;        // catalog-relative name (the group identifier)
  std::string fingerprint; // empty on parse/validation errors
  std::string verdict;     // RA_HOLDS, UNKNOWN, or ERROR
  std::string chain;       // rule names joined by '>'
  std::string axioms;      // '+'-joined
  std::string caveats;     // '+'-joined
  std::string error;       // message for ERROR rows
};

struct survey_options {
  limits lim = default_limits();
  // when nonempty, completed rows are loaded from and appended to this
  // JSONL file, keyed by module fingerprint
  std::string progress_path;
};

struct survey_result {
  std::vector<SurveyRow> rows; // sorted by file name
  std::string csv;
  nlohmann::json table;
  int resumed = 0;                       // rows served from the progress file
  std::vector<std::string> timing_lines; // side channel, never in csv/table
};

// scans *.json files (non-recursive, sorted); per-file errors become ERROR
// rows. csv and table are byte-deterministic for a fixed catalog and
// options.
survey_result cmd_survey(const std::string &catalog_dir,
                         const survey_options &opt = {});

// canonical document form: groups as explicit tables, action as one image
// array per greedy generator of gamma, places as a resolved index list,
// options restricted to bounds that differ from the defaults.
// parse_document(serialize_document(doc)) reproduces doc exactly.
nlohmann::json serialize_document(const InputDocument &doc);

// indented key/value rendering of a report for terminal output
std::string render_text(const nlohmann::json &j);

} // namespace rapcert
