#pragma once

#include <random>
#include <string>
#include <vector>

#include "module.hpp"
#include "verdict.hpp"

namespace gorenlab {

struct Decomposition {
  std::vector<Submodule> summands;     // each with its inclusion into M
  std::vector<ModuleMap> projections;  // M -> summand; sum of inc o proj is the identity
  bool certified = true;               // every summand certified indecomposable
};

namespace detail {

inline std::vector<Matrix> endo_power(const std::vector<Matrix>& blocks, std::uint64_t n) {
  std::vector<Matrix> out;
  for (const auto& b : blocks) out.push_back(power(b, n));
  return out;
}

inline std::vector<Matrix> combination(const std::vector<ModuleMap>& basis, const std::vector<Scalar>& coeff,
                                       const PrimeField& F) {
  std::vector<Matrix> r;
  for (const auto& b : basis.front().blocks) r.emplace_back(b.rows(), b.cols(), F.characteristic());
  for (std::size_t i = 0; i < basis.size(); ++i) {
    if (!coeff[i]) continue;
    for (std::size_t v = 0; v < r.size(); ++v) r[v] = r[v] + basis[i].blocks[v].scaled(coeff[i]);
  }
  return r;
}

// phi^n is neither zero nor invertible: Fitting splits along it.
inline bool fitting_splits(const std::vector<Matrix>& phi, std::size_t total, std::uint64_t n,
                           std::vector<Matrix>& power_out) {
  power_out = endo_power(phi, n);
  std::size_t r = 0;
  for (const auto& b : power_out) r += rank(b);
  return r > 0 && r < total;
}

struct SplitSearch {
  bool found = false;
  bool certified_indecomposable = false;
  std::vector<Matrix> power;
};

inline SplitSearch find_split(const Module& x, std::uint64_t cap, std::mt19937_64& rng) {
  SplitSearch out;
  auto end = hom_basis(x, x);
  const std::size_t h = end.size();
  const std::size_t total = x.total_dim();
  if (h <= 1) {
    out.certified_indecomposable = true;
    return out;
  }
  std::uint64_t n = 1;
  for (auto d : x.dims()) n = std::max<std::uint64_t>(n, d);
  const PrimeField& F = x.algebra().field();
  const std::uint32_t p = F.characteristic();
  std::uniform_int_distribution<std::uint32_t> coin(0, p - 1);
  std::vector<Scalar> c(h);
  for (int trial = 0; trial < 24; ++trial) {
    for (auto& v : c) v = coin(rng);
    if (fitting_splits(combination(end, c, F), total, n, out.power)) {
      out.found = true;
      return out;
    }
  }
  // Exhaustive pass over End(x).
  long double count = 1;
  for (std::size_t i = 0; i < h; ++i) count *= p;
  if (count > static_cast<long double>(cap)) return out;
  std::fill(c.begin(), c.end(), 0);
  for (;;) {
    std::size_t i = 0;
    while (i < h && ++c[i] == p) c[i++] = 0;
    if (i == h) break;
    if (fitting_splits(combination(end, c, F), total, n, out.power)) {
      out.found = true;
      return out;
    }
  }
  out.certified_indecomposable = true;
  return out;
}

inline void split_into(const Module& x, const std::vector<Matrix>& inc_into_m, std::uint64_t cap,
                       std::mt19937_64& rng, std::vector<std::vector<Matrix>>& pieces,
                       std::vector<Module>& modules, bool& certified) {
  if (x.is_zero()) return;
  SplitSearch s = find_split(x, cap, rng);
  if (!s.found) {
    if (!s.certified_indecomposable) certified = false;
    pieces.push_back(inc_into_m);
    modules.push_back(x);
    return;
  }
  std::vector<Matrix> kb, ib;
  for (const auto& b : s.power) {
    kb.push_back(kernel_matrix(b));
    ib.push_back(canonical_column_space(b));
  }
  for (const auto* basis : {&kb, &ib}) {
    Submodule sub = submodule(x, *basis);
    std::vector<Matrix> inc;
    for (std::size_t v = 0; v < basis->size(); ++v) inc.push_back(inc_into_m[v] * (*basis)[v]);
    split_into(sub.module, inc, cap, rng, pieces, modules, certified);
  }
}

}  // namespace detail

// Krull-Schmidt decomposition by Fitting splitting.  A summand is certified
// indecomposable when End has dimension one or a complete enumeration of
// End finds no endomorphism whose high power is neither zero nor invertible.
inline Decomposition decompose(const Module& m, std::uint64_t cap = 1u << 20, std::uint64_t seed = 0x5eed) {
  std::mt19937_64 rng(seed);
  std::vector<std::vector<Matrix>> pieces;
  std::vector<Module> modules;
  bool certified = true;
  std::vector<Matrix> id;
  for (auto d : m.dims()) id.push_back(Matrix::identity(d, m.prime()));
  detail::split_into(m, id, cap, rng, pieces, modules, certified);

  Decomposition out;
  out.certified = certified;
  const std::size_t nv = m.dims().size();
  std::vector<Matrix> inv(nv);
  for (std::size_t v = 0; v < nv; ++v) {
    std::vector<Matrix> cols;
    for (const auto& p : pieces) cols.push_back(p[v]);
    inv[v] = inverse(hstack(cols, m.dim(v), m.prime()));
  }
  std::vector<std::size_t> offset(nv, 0);
  for (std::size_t k = 0; k < pieces.size(); ++k) {
    std::vector<Matrix> pr;
    for (std::size_t v = 0; v < nv; ++v) {
      pr.push_back(inv[v].block(offset[v], 0, modules[k].dim(v), m.dim(v)));
      offset[v] += modules[k].dim(v);
    }
    out.summands.push_back({modules[k], ModuleMap{modules[k], m, pieces[k]}});
    out.projections.push_back(ModuleMap{m, modules[k], std::move(pr)});
  }
  return out;
}

// Isomorphism between modules with local endomorphism rings: X is iso to Y
// iff some basis composition g o f is invertible; then f is an iso.
inline std::optional<ModuleMap> indecomposable_iso(const Module& x, const Module& y) {
  if (x.dims() != y.dims()) return std::nullopt;
  auto F = hom_basis(x, y);
  if (F.empty()) return std::nullopt;
  auto G = hom_basis(y, x);
  for (const auto& f : F)
    for (const auto& g : G)
      if (compose(g, f).is_iso()) return f;
  return std::nullopt;
}

inline Verdict<ModuleMap> is_isomorphic(const Module& m, const Module& n, std::uint64_t cap = 1u << 20) {
  require_same_algebra(m, n, "is_isomorphic");
  using V = Verdict<ModuleMap>;
  if (m.dims() != n.dims()) return V::no(Obstruction::DimensionVector, "dimension vectors differ");
  std::size_t hmn = hom_dimension(m, n), emm = hom_dimension(m, m), enn = hom_dimension(n, n);
  if (hmn != emm || hmn != enn)
    return V::no(Obstruction::HomDimension, "dim Hom(M,N)=" + std::to_string(hmn) + ", dim End(M)=" +
                                                std::to_string(emm) + ", dim End(N)=" + std::to_string(enn));
  Decomposition dm = decompose(m, cap), dn = decompose(n, cap);
  if (dm.summands.size() != dn.summands.size() && dm.certified && dn.certified)
    return V::no(Obstruction::IndecomposableMultiset, "different numbers of indecomposable summands");
  std::vector<char> used(dn.summands.size(), 0);
  ModuleMap iso = ModuleMap::zero(m, n);
  for (std::size_t i = 0; i < dm.summands.size(); ++i) {
    bool matched = false;
    for (std::size_t j = 0; j < dn.summands.size() && !matched; ++j) {
      if (used[j]) continue;
      auto f = indecomposable_iso(dm.summands[i].module, dn.summands[j].module);
      if (!f) continue;
      used[j] = 1;
      matched = true;
      iso = iso + compose(dn.summands[j].inclusion, compose(*f, dm.projections[i]));
    }
    if (!matched) {
      if (dm.certified && dn.certified)
        return V::no(Obstruction::IndecomposableMultiset,
                     "summand " + std::to_string(i) + " of M has no isomorphic summand in N");
      return V::unknown("decomposition not certified within hom_enum_cap=" + std::to_string(cap));
    }
  }
  return V::yes(iso);
}

// Additive closure of finitely many generators.
struct ClassSpec {
  std::string name;
  std::vector<Module> generators;
};

inline ClassSpec dualize(const ClassSpec& c) {
  ClassSpec d{"D" + c.name, {}};
  if (c.name.size() > 1 && c.name[0] == 'D') d.name = c.name.substr(1);
  for (const auto& g : c.generators) d.generators.push_back(dualize(g));
  return d;
}

// Every indecomposable summand of m is iso to a summand of some generator.
inline Verdict<Empty> in_add(const Module& m, const ClassSpec& cls, std::uint64_t cap = 1u << 20) {
  using V = Verdict<Empty>;
  Decomposition dm = decompose(m, cap);
  std::vector<Module> gens;
  bool certified = dm.certified;
  for (const auto& g : cls.generators) {
    Decomposition dg = decompose(g, cap);
    certified = certified && dg.certified;
    for (auto& s : dg.summands) gens.push_back(s.module);
  }
  for (std::size_t i = 0; i < dm.summands.size(); ++i) {
    bool found = false;
    for (const auto& g : gens)
      if (indecomposable_iso(dm.summands[i].module, g)) {
        found = true;
        break;
      }
    if (!found) {
      if (certified)
        return V::no(Obstruction::NotInClass, "summand " + std::to_string(i) + " not in add(" + cls.name + ")");
      return V::unknown("decomposition not certified within hom_enum_cap=" + std::to_string(cap));
    }
  }
  return V::yes(Empty{});
}

}  // namespace gorenlab
