#include "ellsum/registry.hpp"

#include <catch2/catch_amalgamated.hpp>
#include <fstream>

#include "ellsum/verify.hpp"

using namespace ellsum;

namespace {
std::string write_temp(const std::string& name, const std::string& content) {
  std::string path = std::string("/tmp/ellsum-test-") + name;
  std::ofstream out(path);
  out << content;
  return path;
}
}  // namespace

TEST_CASE("bundled registry loads") {
  auto records = load_registry(default_registry_path());
  int table1 = 0, others = 0;
  for (const auto& r : records) {
    bool is_t1 = false;
    for (const auto& t : r.tags) is_t1 |= (t == "table1");
    (is_t1 ? table1 : others)++;
  }
  CHECK(table1 >= 38);
  CHECK(others >= 30);
  for (const auto& r : records) {
    int lhs = int(bool(r.k_lhs)) + int(bool(r.lattice_lhs)) + int(bool(r.theta_lhs));
    INFO(r.id);
    CHECK(lhs == 1);
    CHECK(r.rhs != nullptr);
    CHECK_FALSE(r.citation.empty());
  }
}

TEST_CASE("empty registry file") {
  auto p = write_temp("empty.json", "[]");
  CHECK(load_registry(p).empty());
}

TEST_CASE("negative paths") {
  auto p1 = write_temp("schema.json", R"([{"id": "x", "citation": "c",
    "lhs": {"type": "k_integral", "terms": [{"alpha": "not-a-number"}]},
    "rhs": {"rat": "1"}}])");
  CHECK_THROWS_AS(load_registry(p1), std::exception);
  auto p2 = write_temp("dup.json", R"([
    {"id": "x", "citation": "c", "lhs": {"type": "k_integral", "terms": [{}]}, "rhs": {"rat": "1"}},
    {"id": "x", "citation": "c", "lhs": {"type": "k_integral", "terms": [{}]}, "rhs": {"rat": "1"}}])");
  CHECK_THROWS_AS(load_registry(p2), DuplicateId);
  auto p3 = write_temp("bad.json", "{nope");
  CHECK_THROWS_AS(load_registry(p3), ParseError);
  auto p4 = write_temp("badlhs.json", R"([{"id": "x", "citation": "c",
    "lhs": {"type": "mystery"}, "rhs": {"rat": "1"}}])");
  CHECK_THROWS_AS(load_registry(p4), SchemaError);
}

TEST_CASE("closed-form evaluation") {
  auto e = parse_expr(Json::parse(
      R"({"op":"mul","args":[{"rat":"1/16"},{"op":"pow","args":[{"const":"pi"}],"exp":"3"}]})"));
  CHECK(evaluate_closed_form(e, 0) ==
        Catch::Approx(std::pow(kPi, 3) / 16).epsilon(1e-15));
  auto g = parse_expr(Json::parse(
      R"({"op":"mul","args":[{"rat":"1/128"},{"op":"pow","args":[{"gamma":"1/4"}],"exp":"8"},{"op":"pow","args":[{"const":"pi"}],"exp":"-2"}]})"));
  auto quad = k_integral(KIntegralSpec{{monomial_term(
                             rat(1), LinS{}, LinS{}, LinS{}, LinS{Rat(3), Rat(0)})}},
                         0.0, 1e-9);
  CHECK(std::abs(evaluate_closed_form(g, 0) - quad.value) <=
        1e-8 * quad.value);
  auto f = parse_expr(Json::parse(
      R"({"op":"mul","args":[{"rat":"1/12"},{"op":"pow","args":[{"const":"pi"}],"exp":"2"},{"op":"sqrt","args":[{"op":"add","args":[{"rat":"5"},{"op":"pow","args":[{"sqrt_rat":"2"}],"exp":"-1"}]}]}]})"));
  auto quad2 = k_integral(
      KIntegralSpec{{monomial_term(rat(1), LinS{Rat(3, 4), Rat(0)},
                                   LinS{Rat(-3, 4), Rat(0)},
                                   LinS{Rat(1), Rat(0)}, LinS{})}},
      0.0, 1e-10);
  CHECK(std::abs(evaluate_closed_form(f, 0) - quad2.value) <= 1e-8 * quad2.value);
}

TEST_CASE("verify a sample of records") {
  auto records = load_registry(default_registry_path());
  for (const auto& want :
       {"intro/eq1.10", "sec2/t2t4family-s2", "sec2/catalan", "sec2/en6",
        "sec3/k4nice-s2", "table1/t2t4", "sec2/hardy-lorenz"}) {
    auto it = std::find_if(records.begin(), records.end(),
                           [&](const auto& r) { return r.id == want; });
    REQUIRE(it != records.end());
    for (double s : it->s_values) {
      auto row = verify_identity(*it, s);
      INFO(row.id << " s=" << s << " note=" << row.note
                  << " rel=" << row.rel_err);
      CHECK(row.pass);
    }
  }
  auto it = std::find_if(records.begin(), records.end(),
                         [](const auto& r) { return r.id == "intro/eq1.10"; });
  auto row = verify_identity(*it, it->s_values[0]);
  CHECK(row.rel_err <= 1e-10);
}

TEST_CASE("report determinism") {
  auto records = load_registry(default_registry_path());
  std::vector<IdentityRecord> few;
  for (const auto& r : records)
    if (record_matches(r, "sec2") && few.size() < 4) few.push_back(r);
  auto a = report_json(run_suite(few, "", 1), false).dump(2);
  auto b = report_json(run_suite(few, "", 2), false).dump(2);
  CHECK(a == b);
}

TEST_CASE("filters") {
  auto records = load_registry(default_registry_path());
  auto rep = run_suite(records, "no-such-tag-anywhere");
  CHECK(rep.rows.empty());
  CHECK(rep.failures == 0);
}

TEST_CASE("coverage manifest") {
  std::ifstream in(std::string(ELLSUM_DATA_DIR) + "/equation_manifest.json");
  REQUIRE(in.good());
  Json manifest;
  in >> manifest;
  auto records = load_registry(default_registry_path());
  std::set<std::string> ids;
  for (const auto& r : records) ids.insert(r.id);
  auto generated = generated_records();
  for (const auto& r : generated) ids.insert(r.id);
  std::set<std::string> kinds = {"definition", "identity",  "property",
                                 "derivation", "symbolic",  "generated",
                                 "out-of-scope", "constant"};
  for (const auto& entry : manifest) {
    INFO(entry.at("display").get<std::string>());
    CHECK(kinds.count(entry.at("kind").get<std::string>()) == 1);
    if (entry.contains("records")) {
      for (const auto& rec : entry.at("records")) {
        INFO("record " << rec.get<std::string>());
        CHECK(ids.count(rec.get<std::string>()) == 1);
      }
    } else {
      CHECK(entry.at("kind").get<std::string>() != "identity");
    }
  }
}

TEST_CASE("generated records verify") {
  auto gen = generated_records();
  auto check_one = [&](const std::string& id, double s) {
    auto it = std::find_if(gen.begin(), gen.end(),
                           [&](const auto& r) { return r.id == id; });
    REQUIRE(it != gen.end());
    auto row = verify_identity(*it, s);
    INFO(id << " s=" << s << " " << row.note << " rel=" << row.rel_err);
    CHECK(row.pass);
  };
  check_one("generated/thm31-n3", 2.0);
  check_one("generated/thm31-n3", 1.0);  // regularized point
  check_one("generated/thm42-p1", 0.0);
  check_one("generated/rem44-p2", 0.0);
  check_one("generated/sec5-e4case-d1", 2.0);
}
