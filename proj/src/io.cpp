#include "rapcert/io.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "rapcert/errors.hpp"

namespace rapcert {

using nlohmann::json;

// ---- document parsing ---------------------------------------------------------

namespace {

const json &require_key(const json &j, const char *key) {
  if (!j.contains(key))
    throw input_error(std::string("document: missing key \"") + key + "\"");
  return j.at(key);
}

GroupRef parse_group(const json &j, const limits &lim,
                     const std::string &where) {
  if (!j.is_object())
    throw input_error(where + ": expected an object");
  if (j.contains("table")) {
    std::vector<std::vector<int>> t;
    try {
      t = j.at("table").get<std::vector<std::vector<int>>>();
    } catch (const json::exception &e) {
      throw input_error(where + ".table: " + e.what());
    }
    try {
      return share(validate_group(t, lim));
    } catch (const group_error &e) {
      throw input_error(where + ".table: " + std::string(e.what()));
    } catch (const bound_error &e) {
      throw input_error(where + ".table: " + std::string(e.what()));
    } catch (const input_error &e) {
      throw input_error(where + ".table: " + std::string(e.what()));
    }
  }
  if (j.contains("permutations")) {
    int degree = 0;
    std::vector<std::vector<int>> gens;
    try {
      const json &p = j.at("permutations");
      degree = p.at("degree").get<int>();
      gens = p.at("generators").get<std::vector<std::vector<int>>>();
    } catch (const json::exception &e) {
      throw input_error(where + ".permutations: " + e.what());
    }
    try {
      return share(group_from_permutations(degree, gens, lim).group);
    } catch (const input_error &e) {
      throw input_error(where + ".permutations: " + std::string(e.what()));
    } catch (const bound_error &e) {
      throw input_error(where + ".permutations: " + std::string(e.what()));
    }
  }
  throw input_error(where + ": expected \"table\" or \"permutations\"");
}

GaloisModule build_action(GroupRef gamma, GroupRef mod, const json &aj) {
  std::vector<std::vector<int>> arrs;
  try {
    arrs = aj.get<std::vector<std::vector<int>>>();
  } catch (const json::exception &e) {
    throw input_error(std::string("action: expected a list of image arrays: ") +
                      e.what());
  }
  std::vector<GroupMap> maps;
  maps.reserve(arrs.size());
  for (auto &arr : arrs) {
    GroupMap f;
    f.img = std::move(arr);
    maps.push_back(std::move(f));
  }
  std::vector<int> gens = greedy_generators(*gamma);
  try {
    if (maps.size() == gens.size())
      return module_from_generator_images(gamma, mod, maps);
    if ((int)maps.size() == gamma->n)
      return make_module(gamma, mod, maps);
    throw input_error(
        "action: expected " + std::to_string(gens.size()) +
        " generator images or " + std::to_string(gamma->n) +
        " per-element images, got " + std::to_string(maps.size()));
  } catch (const contract_error &e) {
    throw input_error(std::string("action: ") + e.what());
  }
}

LocalPlaceModel parse_places(const json &j, const FiniteGroup &gamma) {
  if (j.is_string()) {
    if (j.get<std::string>() == "all-involutions")
      return all_involution_places(gamma);
    throw input_error("places: unknown keyword \"" + j.get<std::string>() +
                      "\" (expected \"all-involutions\")");
  }
  std::vector<int> cs;
  try {
    cs = j.get<std::vector<int>>();
  } catch (const json::exception &e) {
    throw input_error(std::string(
                          "places: expected \"all-involutions\" or a list "
                          "of gamma indices: ") +
                      e.what());
  }
  for (int c : cs) {
    if (c < 0 || c >= gamma.n)
      throw input_error("places: index " + std::to_string(c) +
                        " out of range for gamma");
    if (gamma.mul(c, c) != 0)
      throw input_error("places: element " + std::to_string(c) +
                        " is not an involution");
  }
  LocalPlaceModel out;
  out.involutions = cs;
  return out;
}

void apply_options(const json &j, limits &lim) {
  if (!j.is_object())
    throw input_error("options: expected an object");
  for (const auto &kv : j.items()) {
    const std::string &key = kv.key();
    if (!kv.value().is_number_integer())
      throw input_error("options." + key + ": expected an integer");
    if (key == "max_table_order")
      lim.max_table_order = kv.value().get<int>();
    else if (key == "exhaustive_assoc_order")
      lim.exhaustive_assoc_order = kv.value().get<int>();
    else if (key == "max_aut_order")
      lim.max_aut_order = kv.value().get<int>();
    else if (key == "max_aut_size")
      lim.max_aut_size = kv.value().get<int>();
    else if (key == "max_h1_gamma")
      lim.max_h1_gamma = kv.value().get<int>();
    else if (key == "max_h1_module")
      lim.max_h1_module = kv.value().get<int>();
    else if (key == "max_local_product")
      lim.max_local_product = kv.value().get<long long>();
    else
      throw input_error("options: unknown bound \"" + key + "\"");
  }
}

} // namespace

InputDocument parse_document(const json &doc, const limits &base) {
  if (!doc.is_object())
    throw input_error("document: expected a JSON object");
  for (const auto &kv : doc.items()) {
    const std::string &k = kv.key();
    if (k != "group" && k != "gamma" && k != "action" && k != "places" &&
        k != "options")
      throw input_error("document: unknown key \"" + k + "\"");
  }
  limits lim = base;
  if (doc.contains("options"))
    apply_options(doc.at("options"), lim);
  GroupRef mod = parse_group(require_key(doc, "group"), lim, "group");
  GroupRef gamma = parse_group(require_key(doc, "gamma"), lim, "gamma");
  InputDocument out{build_action(gamma, mod, require_key(doc, "action")),
                    std::nullopt, lim};
  if (doc.contains("places"))
    out.places = parse_places(doc.at("places"), out.module.g());
  return out;
}

json serialize_document(const InputDocument &doc) {
  auto table_json = [](const FiniteGroup &g) {
    json rows = json::array();
    for (int i = 0; i < g.n; ++i) {
      json row = json::array();
      for (int j = 0; j < g.n; ++j)
        row.push_back(g.mul(i, j));
      rows.push_back(std::move(row));
    }
    return json{{"table", std::move(rows)}};
  };
  json out;
  out["group"] = table_json(doc.module.a());
  out["gamma"] = table_json(doc.module.g());
  json act = json::array();
  for (int s : greedy_generators(doc.module.g()))
    act.push_back(doc.module.rho[s].img);
  out["action"] = std::move(act);
  if (doc.places)
    out["places"] = doc.places->involutions;
  const limits def;
  json opt = json::object();
  if (doc.lim.max_table_order != def.max_table_order)
    opt["max_table_order"] = doc.lim.max_table_order;
  if (doc.lim.exhaustive_assoc_order != def.exhaustive_assoc_order)
    opt["exhaustive_assoc_order"] = doc.lim.exhaustive_assoc_order;
  if (doc.lim.max_aut_order != def.max_aut_order)
    opt["max_aut_order"] = doc.lim.max_aut_order;
  if (doc.lim.max_aut_size != def.max_aut_size)
    opt["max_aut_size"] = doc.lim.max_aut_size;
  if (doc.lim.max_h1_gamma != def.max_h1_gamma)
    opt["max_h1_gamma"] = doc.lim.max_h1_gamma;
  if (doc.lim.max_h1_module != def.max_h1_module)
    opt["max_h1_module"] = doc.lim.max_h1_module;
  if (doc.lim.max_local_product != def.max_local_product)
    opt["max_local_product"] = doc.lim.max_local_product;
  if (!opt.empty())
    out["options"] = std::move(opt);
  return out;
}

InputDocument load_document(const std::string &path, const limits &base) {
  std::ifstream in(path);
  if (!in)
    throw input_error(path + ": cannot open");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception &e) {
    throw input_error(path + ": " + e.what());
  }
  try {
    return parse_document(doc, base);
  } catch (const input_error &e) {
    throw input_error(path + ": " + e.what());
  }
}

// ---- reports ------------------------------------------------------------------

namespace {

json chain_to_json(const Chain &c) {
  json subs = json::array();
  for (const Subgroup &s : c.subgroups)
    subs.push_back(s.members);
  return json{{"subgroups", subs}, {"quotient_orders", c.quotient_orders}};
}

} // namespace

json cmd_analyze(const InputDocument &doc) {
  const GaloisModule &m = doc.module;
  json rep;
  rep["fingerprint"] = fingerprint_module(m);

  json g;
  g["order"] = m.a().n;
  g["abelian"] = is_abelian(m.a());
  g["cyclic"] = is_cyclic(m.a());
  g["center_order"] = center(m.a()).order();
  g["simple"] = is_simple(m.a());
  g["antisolvable"] = is_antisolvable(m.a());
  {
    json cf = json::array();
    for (const FiniteGroup &f : composition_factors(m.a()))
      cf.push_back(f.n);
    g["composition_factor_orders"] = cf;
  }
  try {
    g["characteristically_simple"] =
        is_characteristically_simple(m.a(), doc.lim);
  } catch (const bound_error &e) {
    g["characteristically_simple"] = nullptr;
    g["characteristically_simple_error"] = e.what();
  }
  rep["group"] = g;

  rep["gamma"] = json{{"order", m.g().n}, {"abelian", is_abelian(m.g())}};

  json act;
  {
    auto img = action_image(m);
    act["kernel_order"] = img.kernel.order();
    act["image_order"] = img.image.n;
    act["faithful"] = img.kernel.order() == 1;
  }
  act["two_group_action"] = is_2group_action(m);
  act["inner_kernel_order"] = inner_acting_kernel(m).order();
  {
    auto s2 = invariant_sylow(m, 2);
    act["invariant_sylow2"] = s2 ? json(s2->members) : json(nullptr);
  }
  rep["action"] = act;

  {
    auto ch = supersolvable_chain(m);
    json ss;
    ss["supersolvable"] = (bool)ch.chain;
    ss["decided_by"] = ch.decided_by;
    ss["exhausted"] = ch.exhausted;
    ss["chain"] = ch.chain ? chain_to_json(*ch.chain) : json(nullptr);
    rep["supersolvable"] = ss;
  }

  {
    json ac;
    try {
      auto r = is_almost_complete(m.a(), doc.lim);
      ac["centerless"] = r.centerless;
      ac["almost_complete"] = r.almost_complete;
      if (!r.refusal.empty())
        ac["refusal"] = r.refusal;
      if (r.section)
        ac["section"] = r.section->img;
    } catch (const bound_error &e) {
      ac["error"] = e.what();
    }
    rep["almost_complete"] = ac;
  }
  return rep;
}

json surjectivity_to_json(const SurjectivityReport &r) {
  json j{{"surjective", r.surjective},
         {"finite_model_only", r.finite_model_only},
         {"tuple_count", r.tuple_count},
         {"global_classes", r.global_classes},
         {"local_class_counts", r.local_class_counts}};
  if (!r.missing_tuple.empty())
    j["missing_tuple"] = r.missing_tuple;
  return j;
}

json cmd_h1(const InputDocument &doc) {
  H1Set h = h1(doc.module, doc.lim);
  json rep;
  rep["classes"] = (int)h.classes.size();
  rep["cocycles"] = (int)h.class_of.size();
  rep["distinguished"] = h.distinguished;
  {
    json reps = json::array();
    for (const Cocycle &c : h.classes)
      reps.push_back(c.values);
    rep["representatives"] = reps;
  }
  if (doc.places) {
    json pl = json::array();
    for (int c : doc.places->involutions) {
      PlaceRestriction pr = place_module(doc.module, c);
      H1Set lh = h1(pr.local, doc.lim);
      json rm = json::array();
      for (const Cocycle &g : h.classes)
        rm.push_back(lh.class_of.at(restrict_cocycle(pr, g).values));
      pl.push_back(json{{"element", c},
                        {"local_classes", (int)lh.classes.size()},
                        {"restriction", rm}});
    }
    rep["places"] = pl;
    rep["surjectivity"] = surjectivity_to_json(
        real_approx_surjective(doc.module, *doc.places, doc.lim));
  }
  return rep;
}

namespace {

json empirical_to_json(const empirical_report &r) {
  json j{{"evaluated", r.evaluated},
         {"agrees", r.agrees},
         {"finite_model_only", r.finite_model_only},
         {"detail", r.detail}};
  if (r.evaluated)
    j["surjectivity"] = surjectivity_to_json(r.surjectivity);
  return j;
}

} // namespace

json cmd_certify(const InputDocument &doc, const certify_options &opt) {
  certify_options o = opt;
  o.lim = doc.lim;
  Certificate cert = certify(doc.module, o);
  json rep;
  rep["certificate"] = certificate_to_json(cert);
  if (cert.verdict == "RA_HOLDS") {
    replay_result rp = replay(cert, doc.module);
    rep["replay"] = json{{"ok", rp.ok}, {"first_failure", rp.first_failure}};
  }
  if (doc.places)
    rep["empirical"] =
        empirical_to_json(empirical_check(doc.module, *doc.places, cert,
                                          doc.lim));
  return rep;
}

// ---- survey -------------------------------------------------------------------

namespace {

std::string csv_escape(const std::string &s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos)
    return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"')
      out += "\"\"";
    else
      out += ch;
  }
  out += "\"";
  return out;
}

std::string join(const std::vector<std::string> &v, const char *sep) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i)
      out += sep;
    out += v[i];
  }
  return out;
}

json row_payload(const SurveyRow &r) {
  return json{{"fingerprint", r.fingerprint}, {"verdict", r.verdict},
              {"chain", r.chain},             {"axioms", r.axioms},
              {"caveats", r.caveats},         {"error", r.error}};
}

json row_to_json(const SurveyRow &r) {
  json j = row_payload(r);
  j["file"] = r.file;
  return j;
}

} // namespace

survey_result cmd_survey(const std::string &catalog_dir,
                         const survey_options &opt) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(catalog_dir))
    throw input_error(catalog_dir + ": not a directory");
  std::vector<std::string> files;
  for (const auto &e : fs::directory_iterator(catalog_dir))
    if (e.is_regular_file() && e.path().extension() == ".json")
      files.push_back(e.path().filename().string());
  std::sort(files.begin(), files.end());

  std::map<std::string, json> progress;
  if (!opt.progress_path.empty()) {
    std::ifstream in(opt.progress_path);
    std::string line;
    while (in && std::getline(in, line)) {
      if (line.empty())
        continue;
      try {
        json rec = json::parse(line);
        progress[rec.at("key").get<std::string>()] = rec.at("row");
      } catch (const json::exception &) {
        // a torn trailing line from an interrupted run is recomputed
      }
    }
  }

  survey_result out;
  std::ofstream prog_out;
  if (!opt.progress_path.empty())
    prog_out.open(opt.progress_path, std::ios::app);

  for (const std::string &f : files) {
    auto t0 = std::chrono::steady_clock::now();
    SurveyRow row;
    row.file = f;
    bool resumed = false;
    try {
      InputDocument doc =
          load_document((fs::path(catalog_dir) / f).string(), opt.lim);
      row.fingerprint = fingerprint_module(doc.module);
      auto it = progress.find(row.fingerprint);
      if (it != progress.end()) {
        const json &p = it->second;
        row.verdict = p.at("verdict").get<std::string>();
        row.chain = p.at("chain").get<std::string>();
        row.axioms = p.at("axioms").get<std::string>();
        row.caveats = p.at("caveats").get<std::string>();
        row.error = p.at("error").get<std::string>();
        resumed = true;
        ++out.resumed;
      } else {
        certify_options copt;
        copt.lim = doc.lim;
        Certificate cert = certify(doc.module, copt);
        row.verdict = cert.verdict;
        std::vector<std::string> names;
        for (const ReductionStep &st : cert.chain)
          names.push_back(rule_name(st.rule));
        row.chain = join(names, ">");
        row.axioms = join(cert.axioms, "+");
        row.caveats = join(cert.caveats, "+");
      }
    } catch (const input_error &e) {
      row.verdict = "ERROR";
      row.error = e.what();
    } catch (const group_error &e) {
      row.verdict = "ERROR";
      row.error = e.what();
    } catch (const bound_error &e) {
      row.verdict = "ERROR";
      row.error = e.what();
    }
    auto t1 = std::chrono::steady_clock::now();
    {
      std::ostringstream ts;
      ts << f << " "
         << std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0)
                .count()
         << "ms" << (resumed ? " (resumed)" : "");
      out.timing_lines.push_back(ts.str());
    }
    if (!resumed && prog_out.is_open() && !row.fingerprint.empty() &&
        row.verdict != "ERROR") {
      json rec{{"key", row.fingerprint}, {"row", row_payload(row)}};
      prog_out << rec.dump() << "\n";
      prog_out.flush();
    }
    out.rows.push_back(row);
  }

  std::string csv = "file,fingerprint,verdict,chain,axioms,caveats,error\n";
  for (const SurveyRow &r : out.rows) {
    csv += csv_escape(r.file) + "," + csv_escape(r.fingerprint) + "," +
           csv_escape(r.verdict) + "," + csv_escape(r.chain) + "," +
           csv_escape(r.axioms) + "," + csv_escape(r.caveats) + "," +
           csv_escape(r.error) + "\n";
  }
  out.csv = csv;
  json table = json::array();
  for (const SurveyRow &r : out.rows)
    table.push_back(row_to_json(r));
  out.table = table;
  return out;
}

// ---- text rendering -----------------------------------------------------------

namespace {

bool all_primitive(const json &arr) {
  for (const json &v : arr)
    if (v.is_object() || v.is_array())
      return false;
  return true;
}

void render_into(const json &j, const std::string &indent, std::string &out) {
  if (j.is_object()) {
    for (const auto &kv : j.items()) {
      const json &v = kv.value();
      if (v.is_object() || (v.is_array() && !all_primitive(v))) {
        out += indent + kv.key() + ":\n";
        render_into(v, indent + "  ", out);
      } else {
        out += indent + kv.key() + ": " + v.dump() + "\n";
      }
    }
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) {
      const json &v = j[i];
      if (v.is_object() || (v.is_array() && !all_primitive(v))) {
        out += indent + "- [" + std::to_string(i) + "]\n";
        render_into(v, indent + "  ", out);
      } else {
        out += indent + "- " + v.dump() + "\n";
      }
    }
  } else {
    out += indent + j.dump() + "\n";
  }
}

} // namespace

std::string render_text(const json &j) {
  std::string out;
  render_into(j, "", out);
  return out;
}

} // namespace rapcert
