#include <gtest/gtest.h>

#include "gorenlab/corpus.hpp"
#include "gorenlab/gorenstein.hpp"

using namespace gorenlab;

namespace {

// Oracle: projective dimension by iterating projective covers until the syzygy vanishes.
std::optional<std::size_t> proj_dim(const Module& m, std::size_t cap) {
  Module cur = m;
  for (std::size_t k = 0; k <= cap; ++k) {
    if (cur.is_zero()) return k == 0 ? 0 : k - 1;
    cur = syzygy(cur).module;
  }
  return std::nullopt;
}

const Flag projective_flags[] = {Flag::Periodic, Flag::GP, Flag::WGP, Flag::GPProper, Flag::WGPProper};
const Flag injective_flags[] = {Flag::GI, Flag::WGI, Flag::GIProper, Flag::WGIProper};

void expect_lattice(const MembershipReport& r) {
  auto yes = [&](Flag f) { return r.at(f).is_yes(); };
  EXPECT_TRUE(r.violations.empty()) << r.module << ": " << (r.violations.empty() ? "" : r.violations[0]);
  if (yes(Flag::WGP)) EXPECT_TRUE(yes(Flag::GP));
  if (yes(Flag::GPProper)) EXPECT_TRUE(yes(Flag::GP));
  if (yes(Flag::GP)) EXPECT_TRUE(yes(Flag::Periodic));
  if (yes(Flag::WGPProper)) EXPECT_TRUE(yes(Flag::GPProper) && yes(Flag::WGP));
  if (yes(Flag::WGI)) EXPECT_TRUE(yes(Flag::GI));
  if (yes(Flag::GIProper)) EXPECT_TRUE(yes(Flag::GI));
}

}  // namespace

TEST(Classify, DualNumbersSimpleIsEverything) {
  auto c = case_dual_numbers();
  Engine e(c.algebra, SearchBounds{});
  auto r = e.classify(c.module("S"), c.cls("proj"), c.cls("proj"), 1);
  for (Flag f : projective_flags) EXPECT_TRUE(r.at(f).is_yes()) << to_string(f);
  for (Flag f : injective_flags) EXPECT_TRUE(r.at(f).is_yes()) << to_string(f);
  expect_lattice(r);
}

TEST(Classify, PaperSimpleAtLengthTwo) {
  auto c = case_paper_example();
  Engine e(c.algebra, SearchBounds{});
  const ClassSpec& PX = c.cls("PX");
  auto r = e.classify(c.module("S1"), PX, PX, 2);
  for (Flag f : {Flag::Periodic, Flag::GP, Flag::WGP, Flag::GPProper}) EXPECT_TRUE(r.at(f).is_yes()) << to_string(f);
  expect_lattice(r);

  auto p3 = e.classify(c.module("P3"), PX, PX, 2);
  for (Flag f : projective_flags) {
    EXPECT_TRUE(p3.at(f).is_no()) << to_string(f);
  }
  EXPECT_EQ(p3.at(Flag::Periodic).obstruction, Obstruction::NoEmbedding);

  Module s12 = named(direct_sum({c.module("S1"), c.module("S2")}).module, "S1+S2");
  EXPECT_TRUE(e.classify(s12, PX, PX, 1).at(Flag::GP).is_yes());
}

TEST(Classify, ImplicationLatticeOnCorpus) {
  for (const auto& name : corpus_case_names()) {
    auto c = corpus_case(name);
    Engine e(c.algebra, SearchBounds{});
    std::vector<std::pair<std::string, std::string>> pairs = {{"proj", "proj"}, {"proj", "inj"}, {"inj", "inj"}};
    if (c.classes.count("PX")) pairs.push_back({"PX", "PX"});
    for (const auto& [a, b] : pairs)
      for (const auto& u : c.universe)
        for (std::size_t m = 1; m <= 2; ++m) expect_lattice(e.classify(u.module, c.cls(a), c.cls(b), m));
  }
}

TEST(Classify, DualityInvolution) {
  for (const auto& name : corpus_case_names()) {
    auto c = corpus_case(name);
    Engine e(c.algebra, SearchBounds{});
    Engine op(c.algebra->opposite(), SearchBounds{});
    const ClassSpec& A = c.cls("proj");
    const ClassSpec& B = c.classes.count("PX") ? c.cls("PX") : c.cls("proj");
    for (const auto& u : c.universe)
      for (std::size_t m = 1; m <= 2; ++m) {
        auto here = e.classify(u.module, A, B, m);
        auto there = op.classify(dualize(u.module), dualize(B), dualize(A), m);
        const std::pair<Flag, Flag> match[] = {{Flag::GP, Flag::GI},
                                               {Flag::WGP, Flag::WGI},
                                               {Flag::GPProper, Flag::GIProper},
                                               {Flag::WGPProper, Flag::WGIProper}};
        for (auto [p, i] : match)
          EXPECT_EQ(here.at(p).outcome, there.at(i).outcome) << name << " " << u.name << " m=" << m << " " << to_string(p);
      }
  }
}

TEST(InGP, PaperExamples) {
  auto c = case_paper_example();
  Engine e(c.algebra, SearchBounds{});
  const ClassSpec& PX = c.cls("PX");
  EXPECT_TRUE(e.in_gp(c.module("P1"), PX, PX).is_yes());
  auto s1 = e.in_gp(c.module("S1"), PX, PX);
  ASSERT_TRUE(s1.is_yes());
  EXPECT_EQ(s1.certificate->loop.length(), 2u);
  auto p3 = e.in_gp(c.module("P3"), PX, PX);
  EXPECT_TRUE(p3.is_no());
  EXPECT_EQ(p3.obstruction, Obstruction::NoEmbedding);
}

TEST(InGP, OrthogonalityObstruction) {
  // Every module is Ext-orthogonal to the projectives, but S has self-extensions.
  auto c = case_dual_numbers();
  Engine e(c.algebra, SearchBounds{});
  auto v = e.in_gp(c.module("S"), c.cls("proj"), c.cls("all"));
  EXPECT_TRUE(v.is_no());
  EXPECT_EQ(v.obstruction, Obstruction::ExtNonvanishing);
  EXPECT_NE(ext_dimension(1, c.module("S"), c.module("S")), 0u);

  auto p = case_paper_example();
  Engine ep(p.algebra, SearchBounds{});
  auto s3 = ep.in_gp(p.module("S3"), p.cls("proj"), p.cls("proj"));
  EXPECT_EQ(s3.obstruction, Obstruction::NoEmbedding);
}

TEST(InGP, SummandRoute) {
  // Whatever route produced the witness, its loop base is M or M plus the stated complement.
  auto c = case_paper_example();
  Engine e(c.algebra, SearchBounds{});
  const ClassSpec& PX = c.cls("PX");
  auto v = e.in_gp(c.module("S2"), PX, PX, c.universe_modules());
  ASSERT_TRUE(v.is_yes());
  const auto& w = *v.certificate;
  Module base = w.complement ? direct_sum({c.module("S2"), *w.complement}).module : c.module("S2");
  EXPECT_TRUE(is_isomorphic(w.loop.base, base).is_yes());
}

TEST(GorensteinDim, FiniteProjectiveDimensionAgrees) {
  for (const auto& name : corpus_case_names()) {
    auto c = corpus_case(name);
    Engine e(c.algebra, SearchBounds{});
    const ClassSpec& P = c.cls("proj");
    for (const auto& u : c.universe) {
      auto pd = proj_dim(u.module, 8);
      if (!pd) continue;
      auto g = e.gorenstein_pd(u.module, P, P, c.universe_modules());
      ASSERT_TRUE(g.is_yes()) << name << " " << u.name << ": " << g.detail;
      EXPECT_EQ(*g.certificate, *pd) << name << " " << u.name;
    }
  }
}

TEST(GorensteinDim, SpecExamples) {
  auto p = case_paper_example();
  Engine e(p.algebra, SearchBounds{});
  auto s3 = e.gorenstein_pd(p.module("S3"), p.cls("proj"), p.cls("proj"));
  ASSERT_TRUE(s3.is_yes());
  EXPECT_EQ(*s3.certificate, 1u);

  auto n = case_nakayama4();
  Engine en(n.algebra, SearchBounds{});
  for (const auto& u : n.universe) {
    auto g = en.gorenstein_pd(u.module, n.cls("proj"), n.cls("proj"));
    ASSERT_TRUE(g.is_yes()) << u.name;
    EXPECT_EQ(*g.certificate, 0u);
    auto gi = en.gorenstein_id(u.module, n.cls("inj"), n.cls("inj"));
    ASSERT_TRUE(gi.is_yes()) << u.name;
    EXPECT_EQ(*gi.certificate, 0u);
  }
}

TEST(UniverseDims, SelfInjectiveAndSemisimple) {
  for (const char* name : {"dual-numbers", "nakayama-4", "semisimple-2"}) {
    auto c = corpus_case(name);
    Engine e(c.algebra, SearchBounds{});
    auto d = e.universe_dims(c.universe_modules(), c.cls("proj"), c.cls("proj"), c.cls("inj"), c.cls("inj"));
    for (const DimSup* s : {&d.gl_gpd, &d.gl_gid, &d.fgpd, &d.fgid}) EXPECT_EQ(s->text(), "0") << name;
  }
}

TEST(UniverseDims, PaperAlgebraReportsEveryModule) {
  auto c = case_paper_example();
  Engine e(c.algebra, SearchBounds{});
  auto d = e.universe_dims(c.universe_modules(), c.cls("proj"), c.cls("proj"), c.cls("inj"), c.cls("inj"));
  ASSERT_EQ(d.gpd.size(), 8u);
  ASSERT_EQ(d.gid.size(), 8u);
  for (const auto& [name, v] : d.gpd) {
    auto pd = proj_dim(c.module(name), 8);
    if (pd && v.is_yes()) EXPECT_LE(*v.certificate, *pd) << name;
  }
}

TEST(Admissibility, ProjectivesAndPX) {
  auto c = case_paper_example();
  Engine e(c.algebra, SearchBounds{});
  auto full = e.admissibility(c.cls("proj"), c.cls("proj"));
  EXPECT_TRUE(full.admissible()) << full.describe();
  auto px = e.admissibility(c.cls("PX"), c.cls("PX"));
  EXPECT_FALSE(px.admissible());
  EXPECT_FALSE(px.generates);
  EXPECT_EQ(px.hereditary, true);
}
