#include <gtest/gtest.h>

#include <set>

#include "gorenlab/corpus.hpp"
#include "gorenlab/search.hpp"

using namespace gorenlab;

namespace {

// Oracle: distinct subspaces of GF(2)^h of dimension d, by closing every
// d-tuple of vectors under addition and keeping the spans of the right size.
std::size_t brute_subspaces(std::size_t h, std::size_t d) {
  std::set<std::set<unsigned>> spans;
  const unsigned n = 1u << h;
  std::vector<unsigned> pick(d, 0);
  for (;;) {
    std::set<unsigned> span{0};
    for (auto v : pick) {
      std::set<unsigned> next = span;
      for (auto s : span) next.insert(s ^ v);
      span = next;
    }
    if (span.size() == (1u << d)) spans.insert(span);
    std::size_t i = 0;
    while (i < d && ++pick[i] == n) pick[i++] = 0;
    if (i == d) break;
  }
  return d == 0 ? 1 : spans.size();
}

Requirement req(RequirementKind k, const ClassSpec& b) { return Requirement{k, b}; }

void expect_certificate(const Verdict<LoopComplex>& v, const ClassSpec& a, const Requirement& r, std::size_t len) {
  ASSERT_TRUE(v.is_yes()) << v.detail;
  const LoopComplex& l = *v.certificate;
  EXPECT_EQ(l.length(), len);
  auto chk = verify_loop(l);
  EXPECT_TRUE(chk.ok()) << chk.detail;
  EXPECT_TRUE(loop_in_class(l, a, 1u << 20));
  EXPECT_TRUE(loop_meets(l, a, r, 6));
  for (auto x : euler_characteristic(l)) EXPECT_EQ(x, 0);
}

}  // namespace

TEST(Subspaces, CountMatchesBruteForce) {
  for (std::size_t h = 0; h <= 4; ++h)
    for (std::size_t d = 0; d <= h; ++d) {
      std::set<std::vector<Vector>> seen;
      detail::for_each_subspace(h, d, 2, [&](const std::vector<Vector>& rows) {
        seen.insert(rows);
        return true;
      });
      EXPECT_EQ(seen.size(), brute_subspaces(h, d)) << h << " " << d;
      EXPECT_EQ(detail::gaussian_binomial(h, d, 2), brute_subspaces(h, d));
    }
  std::size_t n = 0;
  detail::for_each_subspace(3, 1, 3, [&](const std::vector<Vector>&) { return ++n, true; });
  EXPECT_EQ(n, 13u);  // points of the projective plane over GF(3)
}

TEST(FindLoop, PaperLengthTwoLoopIsTheExpectedOne) {
  auto c = case_paper_example();
  const ClassSpec& PX = c.cls("PX");
  Requirement r = req(RequirementKind::IntoB, PX);
  auto v = find_loop(c.module("S1"), PX, 2, r);
  expect_certificate(v, PX, r, 2);
  const LoopComplex& l = *v.certificate;
  EXPECT_TRUE(is_isomorphic(l.step(2), c.module("P2")).is_yes());
  EXPECT_TRUE(is_isomorphic(l.step(1), c.module("P1")).is_yes());
  EXPECT_TRUE(is_isomorphic(l.cycle(1), c.module("S2")).is_yes());
}

TEST(FindLoop, PaperObstructions) {
  auto c = case_paper_example();
  const ClassSpec& PX = c.cls("PX");
  Requirement r = req(RequirementKind::IntoB, PX);
  auto one = find_loop(c.module("S1"), PX, 1, r);
  EXPECT_TRUE(one.is_no());
  EXPECT_EQ(one.obstruction, Obstruction::DimensionLattice);
  for (std::size_t m = 1; m <= 4; ++m) {
    auto v = find_loop(c.module("P3"), PX, m, r);
    EXPECT_TRUE(v.is_no());
    EXPECT_EQ(v.obstruction, Obstruction::NoEmbedding);
  }
  Module s12 = direct_sum({c.module("S1"), c.module("S2")}).module;
  expect_certificate(find_loop(s12, PX, 1, r), PX, r, 1);
}

TEST(FindLoop, GeneratorsHaveSplitLoops) {
  for (const auto& name : corpus_case_names()) {
    auto c = corpus_case(name);
    for (const auto& [cname, cls] : c.classes)
      for (const auto& g : cls.generators) {
        Requirement r = req(RequirementKind::IntoB, c.cls("all"));
        expect_certificate(find_loop(g, cls, 1, r), cls, r, 1);
      }
  }
}

TEST(FindLoop, NakayamaProperLoops) {
  auto c = case_nakayama4();
  const ClassSpec& P = c.cls("proj");
  Requirement r = req(RequirementKind::Proper, P);
  expect_certificate(find_loop(c.module("M1"), P, 2, r), P, r, 2);
  expect_certificate(find_loop(c.module("M1"), P, 4, r), P, r, 4);
  expect_certificate(find_loop(c.module("M2"), P, 1, r), P, r, 1);
  for (std::size_t m : {1u, 3u}) {
    auto v = find_loop(c.module("M1"), P, m, r);
    EXPECT_TRUE(v.is_no());
    EXPECT_EQ(v.obstruction, Obstruction::DimensionLattice);
  }
}

TEST(FindLoop, DualNumbersAllRequirements) {
  auto c = case_dual_numbers();
  const ClassSpec& P = c.cls("proj");
  for (auto k : {RequirementKind::None, RequirementKind::IntoB, RequirementKind::CyclesPerpB, RequirementKind::Proper,
                 RequirementKind::ProperWeak}) {
    Requirement r = req(k, P);
    expect_certificate(find_loop(c.module("S"), P, 1, r), P, r, 1);
  }
}

TEST(FindLoop, HereditaryInjectivesHaveNoLoopAtSimpleSocle) {
  // Over 1 -> 2 every quotient of an injective is injective, so each cycle
  // below the top is injective and can never be S2.
  auto c = case_hereditary_a2();
  auto v = find_loop(c.module("S2"), c.cls("inj"), 2, Requirement{});
  EXPECT_TRUE(v.is_no());
  EXPECT_EQ(v.obstruction, Obstruction::ExhaustiveSearch);
  EXPECT_NE(v.detail.find("max_step_dim=8"), std::string::npos);
}

TEST(FindLoop, ExtPrechecks) {
  auto c = case_paper_example();
  // simples are not rigid, projectives are; S1 against B = simples fails Ext
  ClassSpec simples{"S", {c.module("S1"), c.module("S2")}};
  auto v = find_loop(c.module("S1"), c.cls("PX"), 2, req(RequirementKind::CyclesPerpB, simples));
  EXPECT_TRUE(v.is_no());
  EXPECT_EQ(v.obstruction, Obstruction::ExtNonvanishing);
}

TEST(FindLoop, MonotoneUnderSplicing) {
  for (const auto& name : corpus_case_names()) {
    auto c = corpus_case(name);
    Workspace ws(c.algebra, SearchBounds{});
    LoopSearch s(ws);
    const ClassSpec& P = c.cls("proj");
    for (const auto& u : c.universe)
      for (std::size_t m = 1; m <= 2; ++m) {
        Requirement r = req(RequirementKind::IntoB, P);
        auto v = s.query(u.module, P, m, r);
        if (!v.is_yes()) continue;
        auto w = s.query(u.module, P, 2 * m, r);
        expect_certificate(w, P, r, 2 * m);
      }
  }
}
