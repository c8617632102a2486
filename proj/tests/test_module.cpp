#include <gtest/gtest.h>

#include "gorenlab/corpus.hpp"
#include "gorenlab/decompose.hpp"
#include "gorenlab/module.hpp"

using namespace gorenlab;

namespace {

using Dims = std::vector<std::size_t>;

// Oracle: enumerate every tuple of vertex matrices over GF(2) and keep the
// ones commuting with the arrows.  Only for tiny modules.
struct BruteHom {
  std::size_t count = 0;
  bool has_iso = false;
};

BruteHom brute_hom(const Module& m, const Module& n) {
  const Quiver& q = m.algebra().quiver();
  std::size_t entries = 0;
  for (std::size_t v = 0; v < m.dims().size(); ++v) entries += m.dim(v) * n.dim(v);
  EXPECT_LE(entries, 20u);
  BruteHom out;
  for (std::uint64_t mask = 0; mask < (1ull << entries); ++mask) {
    std::vector<Matrix> blocks;
    std::size_t bit = 0;
    for (std::size_t v = 0; v < m.dims().size(); ++v) {
      Matrix b(n.dim(v), m.dim(v), 2);
      for (std::size_t i = 0; i < n.dim(v); ++i)
        for (std::size_t j = 0; j < m.dim(v); ++j) b(i, j) = (mask >> bit++) & 1;
      blocks.push_back(b);
    }
    bool ok = true;
    for (std::size_t a = 0; a < q.arrows.size() && ok; ++a)
      ok = n.action(a) * blocks[q.arrows[a].source] == blocks[q.arrows[a].target] * m.action(a);
    if (!ok) continue;
    ++out.count;
    if (m.dims() == n.dims()) {
      bool inv = true;
      for (const auto& b : blocks) inv = inv && is_invertible(b);
      out.has_iso = out.has_iso || inv;
    }
  }
  return out;
}

std::size_t log2_exact(std::size_t c) {
  std::size_t k = 0;
  while (c > 1) {
    EXPECT_EQ(c % 2, 0u);
    c /= 2;
    ++k;
  }
  return k;
}

}  // namespace

TEST(StandardModules, PaperDimensionVectors) {
  auto c = case_paper_example();
  const auto& A = c.algebra;
  EXPECT_EQ(projective(A, 0).dims(), (Dims{1, 1, 0}));
  EXPECT_EQ(projective(A, 1).dims(), (Dims{1, 1, 0}));
  EXPECT_EQ(projective(A, 2).dims(), (Dims{1, 1, 1}));
  EXPECT_EQ(injective(A, 2).dims(), (Dims{0, 0, 1}));
  EXPECT_EQ(injective(A, 1).dims(), (Dims{1, 1, 1}));
  EXPECT_TRUE(is_isomorphic(injective(A, 0), projective(A, 2)).is_yes());
  EXPECT_TRUE(is_isomorphic(injective(A, 1), projective(A, 2)).is_no());
}

TEST(StandardModules, RelationsProjectivityInjectivity) {
  for (const auto& name : corpus_case_names()) {
    auto c = corpus_case(name);
    for (std::size_t v = 0; v < c.algebra->vertex_count(); ++v) {
      Module p = projective(c.algebra, v), i = injective(c.algebra, v), s = simple(c.algebra, v);
      EXPECT_TRUE(p.satisfies_relations());
      EXPECT_TRUE(i.satisfies_relations());
      EXPECT_TRUE(is_projective(p)) << name;
      EXPECT_TRUE(is_injective(i)) << name;
      // Hom(P(v), M) = M_v
      for (const auto& u : c.universe) EXPECT_EQ(hom_dimension(p, u.module), u.module.dim(v));
      // Hom(M, I(v)) = M_v
      for (const auto& u : c.universe) EXPECT_EQ(hom_dimension(u.module, i), u.module.dim(v));
      EXPECT_EQ(hom_dimension(s, s), 1u);
    }
    for (const auto& u : c.universe) EXPECT_TRUE(u.module.satisfies_relations()) << u.name;
  }
}

TEST(Hom, MatchesBruteForceOnPaperUniverse) {
  auto c = case_paper_example();
  for (const auto& x : c.universe)
    for (const auto& y : c.universe) {
      auto basis = hom_basis(x.module, y.module);
      for (const auto& f : basis) EXPECT_TRUE(f.is_homomorphism());
      BruteHom b = brute_hom(x.module, y.module);
      EXPECT_EQ(basis.size(), log2_exact(b.count)) << x.name << " -> " << y.name;
      EXPECT_EQ(hom_dimension(x.module, y.module), basis.size());
    }
}

TEST(Hom, CoordinatesRecoverCombination) {
  auto c = case_nakayama4();
  Module m = c.module("M4");
  auto basis = hom_basis(m, m);
  ASSERT_EQ(basis.size(), 4u);
  ModuleMap f = basis[0] + basis[2];
  EXPECT_EQ(hom_coordinates(basis, f), (Vector{1, 0, 1, 0}));
}

TEST(KernelCokernel, RankNullityAndExactness) {
  auto c = case_paper_example();
  for (const auto& x : c.universe)
    for (const auto& y : c.universe)
      for (const auto& f : hom_basis(x.module, y.module)) {
        Submodule k = kernel(f);
        Submodule im = image(f);
        Quotient q = cokernel(f);
        EXPECT_TRUE(k.inclusion.is_homomorphism());
        EXPECT_TRUE(im.inclusion.is_homomorphism());
        EXPECT_TRUE(q.projection.is_homomorphism());
        EXPECT_TRUE(compose(f, k.inclusion).is_zero());
        EXPECT_TRUE(compose(q.projection, f).is_zero());
        EXPECT_TRUE(q.projection.is_epi());
        for (std::size_t v = 0; v < 3; ++v) {
          EXPECT_EQ(k.module.dim(v) + im.module.dim(v), x.module.dim(v));
          EXPECT_EQ(q.module.dim(v) + im.module.dim(v), y.module.dim(v));
        }
        EXPECT_TRUE(k.module.satisfies_relations());
        EXPECT_TRUE(q.module.satisfies_relations());
      }
}

TEST(DirectSum, InjectionsAndProjections) {
  auto c = case_paper_example();
  DirectSum s = direct_sum({c.module("S1"), c.module("P3"), c.module("I2")});
  EXPECT_EQ(s.module.dims(), (Dims{3, 2, 2}));
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_TRUE(s.injections[i].is_homomorphism());
    EXPECT_TRUE(compose(s.projections[i], s.injections[i]).blocks == ModuleMap::identity(s.injections[i].source).blocks);
  }
}

TEST(Covers, ProjectiveCoverAndSyzygy) {
  auto c = case_paper_example();
  for (const auto& u : c.universe) {
    Cover cv = projective_cover(u.module);
    EXPECT_TRUE(cv.map.is_homomorphism()) << u.name;
    EXPECT_TRUE(cv.map.is_epi()) << u.name;
    EXPECT_EQ(cv.multiplicity, top_dims(u.module));
    Syzygy sy = syzygy(u.module);
    EXPECT_EQ(sy.module.total_dim() + u.module.total_dim(), cv.object.total_dim());
  }
  EXPECT_TRUE(is_isomorphic(syzygy(c.module("S1")).module, c.module("S2")).is_yes());
  EXPECT_TRUE(is_isomorphic(syzygy(c.module("S3")).module, c.module("P2")).is_yes());
  EXPECT_TRUE(syzygy(c.module("P3")).module.is_zero());
}

TEST(Covers, InjectiveEnvelopeAndCosyzygy) {
  auto c = case_paper_example();
  for (const auto& u : c.universe) {
    Envelope e = injective_envelope(u.module);
    EXPECT_TRUE(e.map.is_homomorphism());
    EXPECT_TRUE(e.map.is_mono());
    EXPECT_EQ(e.multiplicity, socle_dims(u.module));
    EXPECT_TRUE(is_injective(e.object));
  }
  // the envelope of S2 is I(2), not the smaller P(1)
  EXPECT_EQ(injective_envelope(c.module("S2")).object.dims(), (Dims{1, 1, 1}));
}

TEST(Duality, IsAnInvolution) {
  for (const auto& name : corpus_case_names()) {
    auto c = corpus_case(name);
    for (const auto& u : c.universe) {
      Module d = dualize(u.module);
      EXPECT_TRUE(d.satisfies_relations());
      Module dd = dualize(d);
      EXPECT_TRUE(dd == u.module) << u.name;
      EXPECT_EQ(dd.algebra_ptr().get(), c.algebra.get());
    }
  }
}

TEST(Decompose, RegularModuleSplitsIntoProjectives) {
  auto c = case_paper_example();
  Module reg = regular_module(c.algebra);
  Decomposition d = decompose(reg);
  ASSERT_TRUE(d.certified);
  ASSERT_EQ(d.summands.size(), 3u);
  std::vector<int> seen(3, 0);
  for (const auto& s : d.summands) {
    EXPECT_TRUE(s.inclusion.is_homomorphism());
    for (std::size_t v = 0; v < 3; ++v)
      if (is_isomorphic(s.module, projective(c.algebra, v)).is_yes()) ++seen[v];
  }
  EXPECT_EQ(seen, (std::vector<int>{1, 1, 1}));
  ModuleMap sum = ModuleMap::zero(reg, reg);
  for (std::size_t i = 0; i < d.summands.size(); ++i) sum = sum + compose(d.summands[i].inclusion, d.projections[i]);
  EXPECT_EQ(sum.blocks, ModuleMap::identity(reg).blocks);
}

TEST(Decompose, UniverseModulesAreIndecomposable) {
  for (const auto& name : corpus_case_names()) {
    auto c = corpus_case(name);
    for (const auto& u : c.universe) {
      Decomposition d = decompose(u.module);
      EXPECT_TRUE(d.certified);
      EXPECT_EQ(d.summands.size(), 1u) << name << " " << u.name;
    }
  }
}

TEST(Isomorphism, AgreesWithBruteForceOracle) {
  auto c = case_paper_example();
  std::vector<Module> pool = c.universe_modules();
  pool.push_back(direct_sum({c.module("S1"), c.module("S2")}).module);
  pool.push_back(direct_sum({c.module("S2"), c.module("S1")}).module);
  pool.push_back(top(c.module("I2")).module);
  pool.push_back(direct_sum({c.module("S1"), c.module("S3")}).module);
  for (const auto& x : pool)
    for (const auto& y : pool) {
      auto v = is_isomorphic(x, y);
      ASSERT_FALSE(v.is_unknown());
      EXPECT_EQ(v.is_yes(), brute_hom(x, y).has_iso) << x.name() << " vs " << y.name();
      if (v.is_yes()) {
        EXPECT_TRUE(v.certificate->is_homomorphism());
        EXPECT_TRUE(v.certificate->is_iso());
      }
    }
}

TEST(Isomorphism, NakayamaSums) {
  auto c = case_nakayama4();
  Module a = direct_sum({c.module("M1"), c.module("M3")}).module;
  Module b = direct_sum({c.module("M2"), c.module("M2")}).module;
  Module a2 = direct_sum({c.module("M3"), c.module("M1")}).module;
  EXPECT_TRUE(is_isomorphic(a, b).is_no());
  EXPECT_TRUE(is_isomorphic(a, a2).is_yes());
}

TEST(InAdd, PaperClasses) {
  auto c = case_paper_example();
  const ClassSpec& X = c.cls("X");
  EXPECT_TRUE(in_add(direct_sum({c.module("S1"), c.module("P2")}).module, X).is_yes());
  EXPECT_TRUE(in_add(c.module("S3"), X).is_no());
  EXPECT_TRUE(in_add(c.module("P3"), c.cls("inj")).is_yes());
  EXPECT_TRUE(in_add(c.module("S1"), c.cls("PX")).is_no());
}
