#include <gtest/gtest.h>

#include "gorenlab/runner.hpp"

using namespace gorenlab;

namespace {

AlgebraResolver resolver_for(const CorpusCase& c) {
  AlgebraResolver r;
  r.add(c.algebra);
  return r;
}

Json tamper_first_certificate(Json doc) {
  std::function<bool(Json&)> walk = [&](Json& j) {
    if (j.is_object()) {
      if (j.contains("kind") && j["kind"] == "loop" && j["verdict"].contains("certificate")) {
        // Zero the closing isomorphism: the loop no longer closes up.
        for (auto& block : j["verdict"]["certificate"]["closing"])
          for (auto& row : block)
            for (auto& x : row) x = 0;
        return true;
      }
      for (auto& [k, v] : j.items())
        if (walk(v)) return true;
    } else if (j.is_array()) {
      for (auto& v : j)
        if (walk(v)) return true;
    }
    return false;
  };
  walk(doc);
  return doc;
}

}  // namespace

TEST(ModuleText, RoundTripsEveryCorpusModule) {
  for (const auto& name : corpus_case_names()) {
    auto c = corpus_case(name);
    auto r = resolver_for(c);
    for (const auto& u : c.universe) {
      std::string text = format_module(u.module);
      Module back = parse_module(text, r);
      EXPECT_TRUE(back == u.module) << name << " " << u.name;
      EXPECT_EQ(back.name(), u.name);
      EXPECT_EQ(format_module(back), text);
    }
  }
}

TEST(ModuleText, CommentsMissingArrowsAndNegativeEntries) {
  AlgebraResolver r;
  Module m = parse_module("# the simple\nmodule S over dual-numbers   # trailing\n\ndims: 1=1\n", r);
  EXPECT_EQ(m.dims(), std::vector<std::size_t>{1});
  EXPECT_TRUE(m.action(0).is_zero());
  Module p = parse_module("module A over dual-numbers\ndims: 1=2\narrow x: [[0, 0], [-1, 0]]\n", r);
  EXPECT_EQ(p.action(0)(1, 0), 1u);  // -1 = 1 over GF(2)
}

TEST(ModuleText, ErrorsCarryLineNumbers) {
  AlgebraResolver r;
  auto line_of = [&](const std::string& text) -> std::size_t {
    try {
      parse_module(text, r);
    } catch (const ParseError& e) {
      return e.line();
    }
    return 0;
  };
  EXPECT_EQ(line_of("modul S over dual-numbers\n"), 1u);
  EXPECT_EQ(line_of("module S over no-such-algebra\n"), 1u);
  EXPECT_EQ(line_of("module S over dual-numbers\ndims: 7=1\n"), 2u);
  EXPECT_EQ(line_of("module S over dual-numbers\ndims: 1=2\narrow x: [[1]]\n"), 3u);
  EXPECT_EQ(line_of("module S over dual-numbers\ndims: 1=1\narrow y: [[0]]\n"), 3u);
  EXPECT_EQ(line_of("module S over dual-numbers\ndims: 1=1\narrow x: [[0]\n"), 3u);
  EXPECT_EQ(line_of("module S over dual-numbers\ndims: 1=1\nwhat\n"), 3u);
  // x acting invertibly on k^2 violates x^2 = 0.
  EXPECT_NE(line_of("module S over dual-numbers\ndims: 1=2\narrow x: [[1, 0], [0, 1]]\n"), 0u);
  EXPECT_NE(line_of(""), 0u);
}

TEST(Resolver, OppositeByName) {
  AlgebraResolver r;
  auto op = r("paper-ex-3.4^op");
  EXPECT_EQ(op->name(), "paper-ex-3.4^op");
  EXPECT_EQ(op->dimension(), r("paper-ex-3.4")->dimension());
  EXPECT_THROW(r("nope"), std::out_of_range);
}

TEST(Json, ModuleAndLoopRoundTrip) {
  auto c = case_paper_example();
  auto r = resolver_for(c);
  Engine e(c.algebra, SearchBounds{});
  const ClassSpec& PX = c.cls("PX");
  auto v = e.loop(c.module("S1"), PX, 2, {RequirementKind::IntoB, PX});
  ASSERT_TRUE(v.is_yes());
  Json j = to_json(v);
  auto back = loop_verdict_from_json(j, r);
  EXPECT_EQ(to_json(back), j);
  ASSERT_TRUE(back.certificate);
  EXPECT_TRUE(verify_loop(*back.certificate).ok());
  EXPECT_TRUE(back.certificate->base == c.module("S1"));

  for (const auto& u : c.universe) EXPECT_TRUE(module_from_json(to_json(u.module), r) == u.module) << u.name;
}

TEST(Json, NoVerdictKeepsObstruction) {
  auto c = case_paper_example();
  auto r = resolver_for(c);
  Engine e(c.algebra, SearchBounds{});
  const ClassSpec& PX = c.cls("PX");
  auto v = e.loop(c.module("P3"), PX, 3, {RequirementKind::IntoB, PX});
  Json j = to_json(v);
  EXPECT_EQ(j["outcome"], "no");
  EXPECT_EQ(j["obstruction"], "no-embedding");
  EXPECT_FALSE(j.contains("certificate"));
  EXPECT_EQ(loop_verdict_from_json(j, r).obstruction, Obstruction::NoEmbedding);
}

TEST(Json, ClassifyRecordsRecheckIncludingDualSide) {
  auto c = case_nakayama4();
  Engine e(c.algebra, SearchBounds{});
  const ClassSpec& P = c.cls("proj");
  auto rep = e.classify(c.module("M1"), P, P, 2);
  Json doc = make_report("classify", Json::object(), SearchBounds{});
  doc["results"].push_back(to_json(rep, c.module("M1"), P, P));
  auto s = recheck_report(doc, SearchBounds{});
  EXPECT_EQ(s.certificates, std::size(all_flags));
  EXPECT_TRUE(s.failures.empty()) << s.failures.front();
  EXPECT_EQ(doc["results"][0]["flags"]["pi-GI"]["query"]["module"]["algebra"], "nakayama-4^op");
}

TEST(Recheck, DetectsTamperedCertificate) {
  auto run = run_corpus({"paper-ex-3.4"}, SearchBounds{}, 1);
  auto ok = recheck_report(run.report, SearchBounds{});
  ASSERT_GT(ok.certificates, 0u);
  EXPECT_TRUE(ok.failures.empty());
  auto bad = recheck_report(tamper_first_certificate(run.report), SearchBounds{});
  EXPECT_EQ(bad.certificates, ok.certificates);
  EXPECT_EQ(bad.failures.size(), 1u);
}

TEST(Runner, ExpectationsCarryProvenanceAndMatch) {
  for (const auto& name : corpus_case_names()) {
    auto exp = expectations_for(name);
    EXPECT_FALSE(exp.flags.empty() && exp.claims.empty()) << name;
  }
  auto run = run_corpus(corpus_case_names(), SearchBounds{}, 2);
  EXPECT_EQ(run.mismatches, 0u);
  EXPECT_EQ(run.violations, 0u);
  EXPECT_EQ(run.exit_code(true), run.unknowns ? 3 : 0);
  for (const auto& c : run.report["results"]) {
    for (const auto& f : c["flags"]) {
      EXPECT_TRUE(f["match"].get<bool>()) << c["case"] << " " << f["expect"].dump();
      EXPECT_FALSE(f["expect"]["provenance"].get<std::string>().empty());
    }
    for (const auto& f : c["claims"]) EXPECT_TRUE(f["match"].get<bool>()) << c["case"] << " " << f["claim"];
  }
}

TEST(Runner, NakayamaDeclaresM2OnePeriodic) {
  auto exp = expectations_for("nakayama-4");
  bool found = false;
  for (const auto& f : exp.flags)
    if (f.module == "M2" && f.flag == Flag::GPProper && f.m == 1 && f.outcome == Outcome::Yes) found = true;
  EXPECT_TRUE(found);
}

TEST(Runner, SemisimpleExpectsEveryClaim) {
  auto exp = expectations_for("semisimple-2");
  EXPECT_EQ(exp.claims.size(), claim_registry().size());
  for (const auto& c : exp.claims) EXPECT_EQ(c.outcome, Outcome::Yes);
}

TEST(Runner, OrderAndBodyIndependentOfThreads) {
  auto names = corpus_case_names();
  std::reverse(names.begin(), names.end());
  auto one = run_corpus(names, SearchBounds{}, 1);
  auto many = run_corpus(names, SearchBounds{}, 5);
  EXPECT_EQ(without_timings(one.report).dump(), without_timings(many.report).dump());
  std::vector<std::string> order;
  for (const auto& c : one.report["results"]) order.push_back(c["case"]);
  EXPECT_TRUE(std::is_sorted(order.begin(), order.end()));
  EXPECT_EQ(one.report["schema"], report_schema);
}

TEST(Runner, ExitCodes) {
  CorpusRun r;
  EXPECT_EQ(r.exit_code(true), 0);
  r.unknowns = 1;
  EXPECT_EQ(r.exit_code(false), 0);
  EXPECT_EQ(r.exit_code(true), 3);
  r.mismatches = 1;
  EXPECT_EQ(r.exit_code(true), 1);
}

TEST(Runner, ModuleSpecsJoinSummands) {
  auto c = case_paper_example();
  Module s = resolve_module(c, "S1+S2");
  EXPECT_EQ(s.dims(), (std::vector<std::size_t>{1, 1, 0}));
  EXPECT_THROW(resolve_module(c, "S1+Q"), std::out_of_range);
}
