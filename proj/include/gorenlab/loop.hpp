#pragma once

#include <string>
#include <vector>

#include "homology.hpp"

namespace gorenlab {

// M = Z_m >-> A_m ->> Z_{m-1} >-> ... >-> A_1 ->> Z_0, with Z_0 iso to M.
// Index k-1 of steps/monos/epis holds A_k, iota_k: Z_k -> A_k, pi_k: A_k -> Z_{k-1}.
struct LoopComplex {
  Module base;
  std::vector<Module> steps;
  std::vector<Module> cycles;  // Z_0 .. Z_m
  std::vector<ModuleMap> monos;
  std::vector<ModuleMap> epis;
  ModuleMap closing;           // Z_0 -> base

  std::size_t length() const { return steps.size(); }
  const Module& step(std::size_t k) const { return steps.at(k - 1); }
  const Module& cycle(std::size_t k) const { return cycles.at(k); }
  const ModuleMap& mono(std::size_t k) const { return monos.at(k - 1); }
  const ModuleMap& epi(std::size_t k) const { return epis.at(k - 1); }
};

// 0 -> M -> A_m -> ... -> A_1 -> M -> 0 in degrees m+1 .. 0.
inline ChainComplex to_bounded_complex(const LoopComplex& l) {
  const std::size_t m = l.length();
  ChainComplex c;
  c.lo = 0;
  c.objects.push_back(l.base);
  for (std::size_t k = 1; k <= m; ++k) c.objects.push_back(l.step(k));
  c.objects.push_back(l.base);
  c.maps.push_back(compose(l.closing, l.epi(1)));
  for (std::size_t k = 2; k <= m; ++k) c.maps.push_back(compose(l.mono(k - 1), l.epi(k)));
  c.maps.push_back(l.mono(m));
  return c;
}

// The short exact piece 0 -> Z_k -> A_k -> Z_{k-1} -> 0 as a complex in degrees 2..0.
inline ChainComplex step_sequence(const LoopComplex& l, std::size_t k) {
  ChainComplex c;
  c.lo = 0;
  c.objects = {l.cycle(k - 1), l.step(k), l.cycle(k)};
  c.maps = {l.epi(k), l.mono(k)};
  return c;
}

struct LoopCheck {
  bool homomorphisms = true;
  bool short_exact = true;
  bool closes = true;      // Z_m is the base and Z_0 -> base is an iso
  bool exact = true;       // the bounded complex
  bool ok() const { return homomorphisms && short_exact && closes && exact; }
  std::string detail;
};

inline LoopCheck verify_loop(const LoopComplex& l) {
  LoopCheck r;
  const std::size_t m = l.length();
  if (m == 0 || l.cycles.size() != m + 1 || l.monos.size() != m || l.epis.size() != m) {
    r.homomorphisms = r.short_exact = r.closes = r.exact = false;
    r.detail = "malformed loop";
    return r;
  }
  for (std::size_t k = 1; k <= m; ++k) {
    const auto& i = l.mono(k);
    const auto& p = l.epi(k);
    if (!i.is_homomorphism() || !p.is_homomorphism() || !(i.source == l.cycle(k)) || !(i.target == l.step(k)) ||
        !(p.source == l.step(k)) || !(p.target == l.cycle(k - 1))) {
      r.homomorphisms = false;
      r.detail += "step " + std::to_string(k) + " maps malformed; ";
      continue;
    }
    if (!verify_complex(step_sequence(l, k)).exact()) {
      r.short_exact = false;
      r.detail += "step " + std::to_string(k) + " not short exact; ";
    }
  }
  if (!(l.cycle(m) == l.base) || !l.closing.is_homomorphism() || !(l.closing.source == l.cycle(0)) ||
      !(l.closing.target == l.base) || !l.closing.is_iso()) {
    r.closes = false;
    r.detail += "cycles do not close at the base; ";
  }
  if (r.homomorphisms && r.closes) {
    auto rep = verify_complex(to_bounded_complex(l));
    r.exact = rep.exact();
    if (!r.exact) r.detail += "bounded complex not exact; ";
  } else {
    r.exact = false;
  }
  return r;
}

// Hom(A_k, G) -> Hom(Z_k, G) onto for every step (into), or Hom(G, A_k) -> Hom(G, Z_{k-1}) onto (from).
inline bool step_acyclic(const LoopComplex& l, std::size_t k, const Module& g, HomSide side) {
  if (side == HomSide::IntoClass) return induced_rank(l.mono(k), g, side) == hom_dimension(l.cycle(k), g);
  return induced_rank(l.epi(k), g, side) == hom_dimension(g, l.cycle(k - 1));
}

inline bool is_hom_acyclic(const LoopComplex& l, const ClassSpec& cls, HomSide side) {
  for (std::size_t k = 1; k <= l.length(); ++k)
    for (const auto& g : cls.generators)
      if (!step_acyclic(l, k, g, side)) return false;
  return true;
}

// Ext^{1..n}(Z_k, B) = 0 for all cycles.
inline bool cycles_perp(const LoopComplex& l, const ClassSpec& b, std::size_t n) {
  for (std::size_t k = 1; k <= l.length(); ++k)
    if (!check_hereditary_pair(ClassSpec{"Z", {l.cycle(k)}}, b, n)) return false;
  return true;
}

// Ext^{1..n}(A, Z_k) = 0 for all cycles.
inline bool cycles_coperp(const LoopComplex& l, const ClassSpec& a, std::size_t n) {
  for (std::size_t k = 1; k <= l.length(); ++k)
    if (!check_hereditary_pair(a, ClassSpec{"Z", {l.cycle(k)}}, n)) return false;
  return true;
}

// Alternating sum of dimension vectors of the bounded complex.
inline std::vector<long long> euler_characteristic(const LoopComplex& l) {
  ChainComplex c = to_bounded_complex(l);
  std::vector<long long> out(l.base.dims().size(), 0);
  for (int k = c.lo; k <= c.hi(); ++k)
    for (std::size_t v = 0; v < out.size(); ++v)
      out[v] += (k % 2 ? -1 : 1) * static_cast<long long>(c.at(k).dim(v));
  return out;
}

// Loop of length m+n: lower supplies A_1..A_m, upper supplies A_{m+1}..A_{m+n}.
// upper_to_lower identifies upper.base with lower.base when they differ.
inline LoopComplex splice(const LoopComplex& lower, const LoopComplex& upper,
                          const std::optional<ModuleMap>& upper_to_lower = std::nullopt) {
  const Module& M = lower.base;
  ModuleMap phi = upper_to_lower ? *upper_to_lower : ModuleMap::identity(upper.base);
  if (!(phi.source == upper.base) || !(phi.target == M) || !phi.is_iso())
    throw std::invalid_argument("splice needs an isomorphism between the two bases");
  LoopComplex out;
  out.base = M;
  out.closing = lower.closing;
  out.cycles = lower.cycles;  // Z_0..Z_m, Z_m = M
  for (std::size_t k = 1; k <= lower.length(); ++k) {
    out.steps.push_back(lower.step(k));
    out.monos.push_back(lower.mono(k));
    out.epis.push_back(lower.epi(k));
  }
  const std::size_t n = upper.length();
  for (std::size_t j = 1; j <= n; ++j) {
    out.steps.push_back(upper.step(j));
    ModuleMap p = upper.epi(j);
    if (j == 1) p = compose(phi, compose(upper.closing, p));
    out.epis.push_back(p);
    ModuleMap i = upper.mono(j);
    if (j == n) {
      i = compose(i, phi.inverse());
      out.cycles.push_back(M);
    } else {
      out.cycles.push_back(upper.cycle(j));
    }
    out.monos.push_back(i);
  }
  return out;
}

inline LoopComplex splice_power(const LoopComplex& l, std::size_t q) {
  LoopComplex out = l;
  for (std::size_t i = 1; i < q; ++i) out = splice(out, l);
  return out;
}

// Unrolled periodic complex: q copies glued at the base, marked with period m.
inline ChainComplex unroll(const LoopComplex& l, std::size_t q) {
  ChainComplex c = to_bounded_complex(splice_power(l, q));
  c.period = l.length();
  return c;
}

// Split loop G >-> G+G ->> G.
inline LoopComplex split_loop(const Module& g) {
  DirectSum s = direct_sum({g, g}, g.algebra_ptr());
  LoopComplex l;
  l.base = g;
  l.steps = {s.module};
  l.cycles = {g, g};
  l.monos = {s.injections[0]};
  l.epis = {s.projections[1]};
  l.closing = ModuleMap::identity(g);
  return l;
}

// sum Z_k >-> sum A_k ->> sum Z_{k-1}: a length-1 loop at Z_1 + ... + Z_m.
inline LoopComplex rotate_sum(const LoopComplex& l) {
  const std::size_t m = l.length();
  const AlgebraPtr& alg = l.base.algebra_ptr();
  std::vector<Module> zs, zlow, as;
  for (std::size_t k = 1; k <= m; ++k) {
    zs.push_back(l.cycle(k));
    zlow.push_back(l.cycle(k - 1));
    as.push_back(l.step(k));
  }
  DirectSum Z = direct_sum(zs, alg), Zl = direct_sum(zlow, alg), A = direct_sum(as, alg);
  using Grid = std::vector<std::vector<std::optional<ModuleMap>>>;
  Grid iota(m, std::vector<std::optional<ModuleMap>>(m)), pi = iota, close = iota;
  for (std::size_t k = 0; k < m; ++k) {
    iota[k][k] = l.mono(k + 1);
    pi[k][k] = l.epi(k + 1);
  }
  // slot c of Zl holds Z_c, slot r of Z holds Z_{r+1}
  close[m - 1][0] = l.closing;
  for (std::size_t c = 1; c < m; ++c) close[c - 1][c] = ModuleMap::identity(zlow[c]);
  LoopComplex out;
  out.base = Z.module;
  out.steps = {A.module};
  out.cycles = {Zl.module, Z.module};
  out.monos = {block_map(Z, A, iota)};
  out.epis = {block_map(A, Zl, pi)};
  out.closing = block_map(Zl, Z, close);
  return out;
}

}  // namespace gorenlab
