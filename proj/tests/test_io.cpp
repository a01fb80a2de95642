// document schema, reports, and the survey pipeline. documents are built as
// json in-test; the survey cases run over a small disposable catalog under
// the system temp directory.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "rapcert/io.hpp"
#include "support/catalog.hpp"
#include "support/modules.hpp"

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

using namespace rapcert;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

json table_of(const FiniteGroup &g) {
  json rows = json::array();
  for (int i = 0; i < g.n; ++i) {
    json row = json::array();
    for (int j = 0; j < g.n; ++j)
      row.push_back(g.mul(i, j));
    rows.push_back(row);
  }
  return json{{"table", rows}};
}

json c3_inversion_doc() {
  return json{{"group", table_of(*cat::cyclic(3))},
              {"gamma", table_of(*cat::cyclic(2))},
              {"action", json::array({json::array({0, 2, 1})})}};
}

json trivial_doc(GroupRef g) {
  std::vector<int> id(g->n);
  for (int i = 0; i < g->n; ++i)
    id[i] = i;
  return json{{"group", table_of(*g)},
              {"gamma", table_of(*cat::cyclic(2))},
              {"action", json::array({id})}};
}

// fresh scratch directory per run; stale contents are discarded
fs::path scratch_dir(const char *leaf) {
  fs::path d = fs::temp_directory_path() / "rapcert_io_tests" / leaf;
  fs::remove_all(d);
  fs::create_directories(d);
  return d;
}

void write_file(const fs::path &p, const std::string &text) {
  std::ofstream out(p);
  out << text;
}

} // namespace

TEST_CASE("documents parse from tables and permutations alike") {
  InputDocument doc = parse_document(c3_inversion_doc());
  CHECK(fingerprint_module(doc.module) ==
        fingerprint_module(cat::inversion_module(cat::cyclic(3))));
  CHECK(!doc.places);
  CHECK(doc.lim.max_h1_module == default_limits().max_h1_module);

  // the same group given by generating permutations
  json pdoc = c3_inversion_doc();
  pdoc["group"] = json{{"permutations",
                        json{{"degree", 3},
                             {"generators", json::array({json::array(
                                                {1, 2, 0})})}}}};
  InputDocument viaperm = parse_document(pdoc);
  CHECK(fingerprint_module(viaperm.module) ==
        fingerprint_module(doc.module));
}

TEST_CASE("action accepts generator images or one map per gamma element") {
  GroupRef v4 = cat::abelian({2, 2});
  GroupRef s3 = cat::sym(3);
  // conjugation by the three involutions of s3 is not an action of v4; use
  // inversion-free constant maps instead and a genuine mixed action
  std::vector<int> id{0, 1, 2, 3, 4, 5};
  json gen_form{{"group", table_of(*s3)},
                {"gamma", table_of(*v4)},
                {"action", json::array({id, id})}};
  json elt_form{{"group", table_of(*s3)},
                {"gamma", table_of(*v4)},
                {"action", json::array({id, id, id, id})}};
  InputDocument a = parse_document(gen_form);
  InputDocument b = parse_document(elt_form);
  CHECK(fingerprint_module(a.module) == fingerprint_module(b.module));

  json wrong = gen_form;
  wrong["action"] = json::array({id, id, id});
  CHECK_THROWS_WITH_AS(parse_document(wrong),
                       "action: expected 2 generator images or 4 per-element "
                       "images, got 3",
                       input_error);

  // image arrays must be automorphisms
  json notauto = c3_inversion_doc();
  notauto["action"] = json::array({json::array({0, 0, 1})});
  CHECK_THROWS_AS(parse_document(notauto), input_error);
}

TEST_CASE("malformed documents fail with located errors") {
  json base = c3_inversion_doc();

  json missing = base;
  missing.erase("gamma");
  CHECK_THROWS_WITH_AS(parse_document(missing),
                       "document: missing key \"gamma\"", input_error);

  json unknown = base;
  unknown["extra"] = 1;
  CHECK_THROWS_WITH_AS(parse_document(unknown),
                       "document: unknown key \"extra\"", input_error);

  json badgroup = base;
  badgroup["group"] = json{{"neither", 1}};
  CHECK_THROWS_WITH_AS(parse_document(badgroup),
                       "group: expected \"table\" or \"permutations\"",
                       input_error);

  // a latin square that is not associative is rejected while parsing
  json notgroup = base;
  notgroup["group"] =
      json{{"table", json::array({json::array({0, 1, 2, 3, 4}),
                                  json::array({1, 0, 3, 4, 2}),
                                  json::array({2, 4, 0, 1, 3}),
                                  json::array({3, 2, 4, 0, 1}),
                                  json::array({4, 3, 1, 2, 0})})}};
  try {
    parse_document(notgroup);
    FAIL("expected input_error");
  } catch (const input_error &e) {
    CHECK(std::string(e.what()).rfind("group.table:", 0) == 0);
  }

  CHECK_THROWS_AS(parse_document(json::array({1, 2})), input_error);
}

TEST_CASE("places resolve keywords and validate involutions") {
  json doc = c3_inversion_doc();
  doc["places"] = "all-involutions";
  InputDocument d = parse_document(doc);
  REQUIRE(d.places);
  CHECK(d.places->involutions == std::vector<int>{1});

  doc["places"] = json::array({0, 1});
  CHECK(parse_document(doc).places->involutions == std::vector<int>{0, 1});

  doc["places"] = json::array();
  CHECK(parse_document(doc).places->involutions.empty());

  doc["places"] = "everywhere";
  CHECK_THROWS_WITH_AS(parse_document(doc),
                       "places: unknown keyword \"everywhere\" (expected "
                       "\"all-involutions\")",
                       input_error);

  doc["places"] = json::array({7});
  CHECK_THROWS_WITH_AS(parse_document(doc),
                       "places: index 7 out of range for gamma", input_error);

  json c3gamma{{"group", table_of(*cat::cyclic(2))},
               {"gamma", table_of(*cat::cyclic(3))},
               {"action", json::array({json::array({0, 1})})},
               {"places", json::array({1})}};
  CHECK_THROWS_WITH_AS(parse_document(c3gamma),
                       "places: element 1 is not an involution", input_error);
}

TEST_CASE("options override only the named bounds") {
  json doc = c3_inversion_doc();
  doc["options"] = json{{"max_h1_module", 10}, {"max_local_product", 99}};
  InputDocument d = parse_document(doc);
  CHECK(d.lim.max_h1_module == 10);
  CHECK(d.lim.max_local_product == 99);
  CHECK(d.lim.max_aut_order == default_limits().max_aut_order);

  limits base = default_limits();
  base.max_aut_order = 77;
  CHECK(parse_document(c3_inversion_doc(), base).lim.max_aut_order == 77);

  doc["options"] = json{{"max_wrong", 3}};
  CHECK_THROWS_WITH_AS(parse_document(doc),
                       "options: unknown bound \"max_wrong\"", input_error);
  doc["options"] = json{{"max_h1_module", "lots"}};
  CHECK_THROWS_WITH_AS(parse_document(doc),
                       "options.max_h1_module: expected an integer",
                       input_error);
}

TEST_CASE("serialization is canonical and a parse fixed point") {
  json doc = c3_inversion_doc();
  doc["group"] = json{{"permutations",
                       json{{"degree", 3},
                            {"generators",
                             json::array({json::array({1, 2, 0})})}}}};
  doc["places"] = "all-involutions";
  doc["options"] = json{{"max_h1_gamma", 12}};
  InputDocument d = parse_document(doc);

  json canon = serialize_document(d);
  CHECK(canon.at("group").contains("table")); // permutations were resolved
  CHECK(canon.at("places") == json::array({1}));
  CHECK(canon.at("options") == json{{"max_h1_gamma", 12}});

  InputDocument back = parse_document(canon);
  CHECK(fingerprint_module(back.module) == fingerprint_module(d.module));
  CHECK(back.places->involutions == d.places->involutions);
  CHECK(back.lim.max_h1_gamma == 12);
  CHECK(serialize_document(back).dump() == canon.dump());

  // absent sections stay absent
  json bare = serialize_document(parse_document(c3_inversion_doc()));
  CHECK(!bare.contains("places"));
  CHECK(!bare.contains("options"));
}

TEST_CASE("documents load from disk with the path in every error") {
  fs::path dir = scratch_dir("load");
  fs::path ok = dir / "doc.json";
  write_file(ok, c3_inversion_doc().dump());
  CHECK(fingerprint_module(load_document(ok.string()).module) ==
        fingerprint_module(cat::inversion_module(cat::cyclic(3))));

  try {
    load_document((dir / "absent.json").string());
    FAIL("expected input_error");
  } catch (const input_error &e) {
    CHECK(std::string(e.what()).find("absent.json: cannot open") !=
          std::string::npos);
  }

  fs::path bad = dir / "bad.json";
  write_file(bad, "{ not json");
  try {
    load_document(bad.string());
    FAIL("expected input_error");
  } catch (const input_error &e) {
    CHECK(std::string(e.what()).rfind(bad.string() + ":", 0) == 0);
  }
}

TEST_CASE("analyze report captures group, action, and chain structure") {
  InputDocument doc = parse_document(trivial_doc(cat::alt(4)));
  json rep = cmd_analyze(doc);
  CHECK(rep.at("fingerprint").get<std::string>() ==
        fingerprint_module(doc.module));
  CHECK(rep.at("group").at("order").get<int>() == 12);
  CHECK(!rep.at("group").at("abelian").get<bool>());
  CHECK(!rep.at("group").at("simple").get<bool>());
  CHECK(!rep.at("group").at("antisolvable").get<bool>());
  CHECK(rep.at("group").at("center_order").get<int>() == 1);
  {
    auto cf = rep.at("group")
                  .at("composition_factor_orders")
                  .get<std::vector<int>>();
    std::sort(cf.begin(), cf.end());
    CHECK(cf == std::vector<int>{2, 2, 3});
  }
  CHECK(rep.at("gamma").at("order").get<int>() == 2);
  CHECK(rep.at("action").at("kernel_order").get<int>() == 2);
  CHECK(!rep.at("action").at("faithful").get<bool>());
  CHECK(rep.at("action").at("two_group_action").get<bool>());
  CHECK(rep.at("action").at("invariant_sylow2") ==
        json(std::vector<int>{0, 4, 5, 11}));
  CHECK(!rep.at("supersolvable").at("supersolvable").get<bool>());
  CHECK(rep.at("supersolvable").at("exhausted").get<bool>());
  CHECK(rep.at("supersolvable").at("chain").is_null());
  CHECK(rep.at("almost_complete").at("centerless").get<bool>());
  CHECK(rep.at("almost_complete").at("almost_complete").get<bool>());
  CHECK(rep.at("almost_complete").contains("section"));

  // supersolvable branch with an actual chain
  json c3rep = cmd_analyze(parse_document(c3_inversion_doc()));
  CHECK(c3rep.at("supersolvable").at("supersolvable").get<bool>());
  CHECK(c3rep.at("supersolvable").at("chain").at("quotient_orders") ==
        json(std::vector<int>{3}));
}

TEST_CASE("h1 report counts classes and restricts to every place") {
  json doc{{"group", table_of(*cat::cyclic(4))},
           {"gamma", table_of(*cat::cyclic(2))},
           {"action", json::array({json::array({0, 3, 2, 1})})},
           {"places", "all-involutions"}};
  json rep = cmd_h1(parse_document(doc));
  CHECK(rep.at("classes").get<int>() == 2);
  CHECK(rep.at("cocycles").get<int>() == 4);
  CHECK(rep.at("representatives").size() == 2);
  CHECK(rep.at("distinguished").get<int>() ==
        rep.at("places").at(0).at("restriction").at(0).get<int>());
  REQUIRE(rep.at("places").size() == 1);
  CHECK(rep.at("places").at(0).at("element").get<int>() == 1);
  CHECK(rep.at("places").at(0).at("local_classes").get<int>() == 2);
  CHECK(rep.at("places").at(0).at("restriction").size() == 2);
  CHECK(rep.at("surjectivity").at("surjective").get<bool>());
  CHECK(rep.at("surjectivity").at("tuple_count").get<int>() == 2);
  CHECK(rep.at("surjectivity").at("global_classes").get<int>() == 2);
}

TEST_CASE("certify report carries the certificate, replay, and empirics") {
  json doc = c3_inversion_doc();
  doc["places"] = "all-involutions";
  json rep = cmd_certify(parse_document(doc));
  CHECK(rep.at("certificate").at("verdict").get<std::string>() == "RA_HOLDS");
  CHECK(rep.at("replay").at("ok").get<bool>());
  CHECK(rep.at("replay").at("first_failure").get<std::string>().empty());
  CHECK(rep.at("empirical").at("evaluated").get<bool>());
  CHECK(rep.at("empirical").at("agrees").get<bool>());
  CHECK(rep.at("empirical").at("surjectivity").at("surjective").get<bool>());

  // unknown verdicts skip the replay section but keep the refusals
  json q8doc{{"group", table_of(*cat::dicyclic(8))},
             {"gamma", table_of(*cat::cyclic(3))},
             {"action",
              json::array({json::array({0, 4, 2, 6, 5, 1, 7, 3})})}};
  json urep = cmd_certify(parse_document(q8doc));
  CHECK(urep.at("certificate").at("verdict").get<std::string>() == "UNKNOWN");
  CHECK(!urep.contains("replay"));
  CHECK(urep.at("certificate").at("refusals").size() == 6);
}

TEST_CASE("survey is deterministic, isolates errors, and resumes") {
  fs::path dir = scratch_dir("survey");
  write_file(dir / "a4_const.json", trivial_doc(cat::alt(4)).dump());
  write_file(dir / "c3_inv.json", c3_inversion_doc().dump());
  write_file(dir / "q8_rot.json",
             json{{"group", table_of(*cat::dicyclic(8))},
                  {"gamma", table_of(*cat::cyclic(3))},
                  {"action",
                   json::array({json::array({0, 4, 2, 6, 5, 1, 7, 3})})}}
                 .dump());
  write_file(dir / "zz_broken.json", "{ not json");
  write_file(dir / "ignored.txt", "not scanned");

  survey_result r1 = cmd_survey(dir.string());
  REQUIRE(r1.rows.size() == 4);
  CHECK(r1.rows[0].file == "a4_const.json");
  CHECK(r1.rows[0].verdict == "RA_HOLDS");
  CHECK(r1.rows[0].chain == "TWO_GROUP_ACTION");
  CHECK(r1.rows[0].axioms == "GLA-Brnr-6.1+HW-ThmB");
  CHECK(r1.rows[1].file == "c3_inv.json");
  CHECK(r1.rows[1].chain == "ABELIAN");
  CHECK(r1.rows[1].axioms == "Sansuc-abelian");
  CHECK(r1.rows[2].file == "q8_rot.json");
  CHECK(r1.rows[2].verdict == "UNKNOWN");
  CHECK(r1.rows[2].chain.empty());
  CHECK(r1.rows[3].file == "zz_broken.json");
  CHECK(r1.rows[3].verdict == "ERROR");
  CHECK(r1.rows[3].fingerprint.empty());
  CHECK(!r1.rows[3].error.empty());
  CHECK(r1.resumed == 0);
  CHECK(r1.timing_lines.size() == 4);

  survey_result r2 = cmd_survey(dir.string());
  CHECK(r2.csv == r1.csv);
  CHECK(r2.table.dump() == r1.table.dump());

  // the csv quotes the error message, which contains a comma
  CHECK(r1.csv.find("\n") != std::string::npos);
  CHECK(r1.csv.rfind("file,fingerprint,verdict,chain,axioms,caveats,error\n",
                     0) == 0);

  survey_options with_progress;
  with_progress.progress_path = (dir / "progress.jsonl").string();
  survey_result p1 = cmd_survey(dir.string(), with_progress);
  CHECK(p1.resumed == 0);
  CHECK(p1.csv == r1.csv);
  survey_result p2 = cmd_survey(dir.string(), with_progress);
  CHECK(p2.resumed == 3); // the error row is never cached
  CHECK(p2.csv == r1.csv);
  CHECK(p2.table.dump() == r1.table.dump());

  // a torn trailing line from an interrupted run is ignored
  {
    std::ofstream app(with_progress.progress_path, std::ios::app);
    app << "{\"key\": \"torn";
  }
  survey_result p3 = cmd_survey(dir.string(), with_progress);
  CHECK(p3.resumed == 3);
  CHECK(p3.csv == r1.csv);

  CHECK_THROWS_AS(cmd_survey((dir / "nodir").string()), input_error);
}

TEST_CASE("reports render as indented text") {
  json j{{"alpha", 1},
         {"beta", json{{"inner", json::array({1, 2})}, {"word", "x"}}},
         {"gamma", json::array({json{{"k", 1}}})}};
  std::string text = render_text(j);
  CHECK(text == "alpha: 1\n"
                "beta:\n"
                "  inner: [1,2]\n"
                "  word: \"x\"\n"
                "gamma:\n"
                "  - [0]\n"
                "    k: 1\n");
}
