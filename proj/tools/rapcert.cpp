// command line front end: analyze / certify / h1 / survey over JSON input
// documents. exit codes: 0 = RA_HOLDS (or plain success), 10 = UNKNOWN (or a
// failed replay), 2 = input error.

#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "rapcert/errors.hpp"
#include "rapcert/io.hpp"

using nlohmann::json;

namespace {

struct bound_flags {
  int max_aut = 0;
  int max_h1_gamma = 0;
  int max_h1_module = 0;

  void add(CLI::App *cmd) {
    cmd->add_option("--max-aut", max_aut,
                    "override the automorphism backtracking order bound");
    cmd->add_option("--max-h1-gamma", max_h1_gamma,
                    "override the gamma order bound for cocycle enumeration");
    cmd->add_option("--max-h1-module", max_h1_module,
                    "override the module order bound for cocycle enumeration");
  }
  void apply(rapcert::limits &lim) const {
    if (max_aut > 0)
      lim.max_aut_order = max_aut;
    if (max_h1_gamma > 0)
      lim.max_h1_gamma = max_h1_gamma;
    if (max_h1_module > 0)
      lim.max_h1_module = max_h1_module;
  }
};

rapcert::LocalPlaceModel parse_places_flag(const std::string &flag,
                                           const rapcert::FiniteGroup &gamma) {
  if (flag == "all-involutions")
    return rapcert::all_involution_places(gamma);
  rapcert::LocalPlaceModel out;
  std::size_t pos = 0;
  while (pos < flag.size()) {
    std::size_t comma = flag.find(',', pos);
    std::string tok = flag.substr(
        pos, comma == std::string::npos ? std::string::npos : comma - pos);
    try {
      out.involutions.push_back(std::stoi(tok));
    } catch (const std::exception &) {
      throw rapcert::input_error("--places: bad index \"" + tok + "\"");
    }
    pos = comma == std::string::npos ? flag.size() : comma + 1;
  }
  for (int c : out.involutions) {
    if (c < 0 || c >= gamma.n)
      throw rapcert::input_error("--places: index " + std::to_string(c) +
                                 " out of range for gamma");
    if (gamma.mul(c, c) != 0)
      throw rapcert::input_error("--places: element " + std::to_string(c) +
                                 " is not an involution");
  }
  return out;
}

void emit_report(const json &rep, const std::string &emit) {
  if (emit == "text" || emit == "both")
    std::cout << rapcert::render_text(rep);
  if (emit == "json" || emit == "both")
    std::cout << rapcert::canonical_dump(rep) << "\n";
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"finite-level toolkit for real approximation certificates"};
  app.require_subcommand(1);

  std::string emit = "json";

  auto *analyze = app.add_subcommand("analyze", "structural report");
  std::string analyze_doc;
  bound_flags analyze_bounds;
  analyze->add_option("document", analyze_doc, "input JSON document")
      ->required();
  analyze->add_option("--emit", emit, "json|text|both");
  analyze_bounds.add(analyze);

  auto *certify_cmd = app.add_subcommand("certify", "build a certificate");
  std::string certify_doc, certify_places, replay_path;
  bound_flags certify_bounds;
  certify_cmd->add_option("document", certify_doc, "input JSON document")
      ->required();
  certify_cmd->add_option("--places", certify_places,
                          "\"all-involutions\" or a comma list of gamma "
                          "indices for the empirical section");
  certify_cmd->add_option("--replay", replay_path,
                          "verify a stored certificate instead of building "
                          "one");
  certify_cmd->add_option("--emit", emit, "json|text|both");
  certify_bounds.add(certify_cmd);

  auto *h1_cmd = app.add_subcommand("h1", "cohomology report");
  std::string h1_doc, h1_places;
  bound_flags h1_bounds;
  h1_cmd->add_option("document", h1_doc, "input JSON document")->required();
  h1_cmd->add_option("--places", h1_places,
                     "\"all-involutions\" or a comma list of gamma indices");
  h1_cmd->add_option("--emit", emit, "json|text|both");
  h1_bounds.add(h1_cmd);

  auto *survey = app.add_subcommand("survey", "certify a catalog directory");
  std::string survey_dir, survey_csv = "survey.csv",
                          survey_json = "survey.json", survey_progress;
  bound_flags survey_bounds;
  survey->add_option("catalog", survey_dir, "directory of JSON documents")
      ->required();
  survey->add_option("--csv", survey_csv, "CSV output path");
  survey->add_option("--json", survey_json, "JSON output path");
  survey->add_option("--progress", survey_progress,
                     "JSONL progress file for resumable runs");
  survey_bounds.add(survey);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*analyze) {
      rapcert::InputDocument doc = rapcert::load_document(analyze_doc);
      analyze_bounds.apply(doc.lim);
      emit_report(rapcert::cmd_analyze(doc), emit);
      return 0;
    }
    if (*certify_cmd) {
      rapcert::InputDocument doc = rapcert::load_document(certify_doc);
      certify_bounds.apply(doc.lim);
      if (!certify_places.empty())
        doc.places = parse_places_flag(certify_places, doc.module.g());
      if (!replay_path.empty()) {
        std::ifstream in(replay_path);
        if (!in)
          throw rapcert::input_error(replay_path + ": cannot open");
        json cj;
        try {
          cj = json::parse(in);
        } catch (const json::exception &e) {
          throw rapcert::input_error(replay_path + ": " + e.what());
        }
        rapcert::Certificate cert = rapcert::certificate_from_json(cj);
        rapcert::replay_result rp = rapcert::replay(cert, doc.module);
        emit_report(json{{"replay", {{"ok", rp.ok},
                                     {"first_failure", rp.first_failure}}}},
                    emit);
        return rp.ok ? 0 : 10;
      }
      rapcert::certify_options opt;
      opt.lim = doc.lim;
      json rep = rapcert::cmd_certify(doc, opt);
      emit_report(rep, emit);
      std::string verdict =
          rep.at("certificate").at("verdict").get<std::string>();
      return verdict == "RA_HOLDS" ? 0 : 10;
    }
    if (*h1_cmd) {
      rapcert::InputDocument doc = rapcert::load_document(h1_doc);
      h1_bounds.apply(doc.lim);
      if (!h1_places.empty())
        doc.places = parse_places_flag(h1_places, doc.module.g());
      emit_report(rapcert::cmd_h1(doc), emit);
      return 0;
    }
    if (*survey) {
      rapcert::survey_options opt;
      survey_bounds.apply(opt.lim);
      opt.progress_path = survey_progress;
      rapcert::survey_result res = rapcert::cmd_survey(survey_dir, opt);
      {
        std::ofstream csv(survey_csv);
        if (!csv)
          throw rapcert::input_error(survey_csv + ": cannot open for writing");
        csv << res.csv;
      }
      {
        std::ofstream js(survey_json);
        if (!js)
          throw rapcert::input_error(survey_json +
                                     ": cannot open for writing");
        js << rapcert::canonical_dump(res.table) << "\n";
      }
      for (const std::string &line : res.timing_lines)
        std::cerr << line << "\n";
      std::cerr << res.rows.size() << " rows (" << res.resumed
                << " resumed)\n";
      return 0;
    }
  } catch (const rapcert::input_error &e) {
    std::cerr << json{{"error", e.what()}}.dump() << "\n";
    return 2;
  } catch (const rapcert::group_error &e) {
    std::cerr << json{{"error", e.what()}}.dump() << "\n";
    return 2;
  } catch (const rapcert::bound_error &e) {
    std::cerr << json{{"error", e.what()}}.dump() << "\n";
    return 2;
  } catch (const std::exception &e) {
    std::cerr << json{{"error", e.what()}}.dump() << "\n";
    return 2;
  }
  return 2;
}
