#pragma once

#include <optional>
#include <string>
#include <vector>

#include "decompose.hpp"
#include "module.hpp"
#include "verdict.hpp"

namespace gorenlab {

// Bounded complex C_hi -> ... -> C_lo with zeros outside the window.
// maps[i] is the differential from degree lo+i+1 to degree lo+i.
struct ChainComplex {
  int lo = 0;
  std::vector<Module> objects;
  std::vector<ModuleMap> maps;
  std::optional<std::size_t> period;

  int hi() const { return lo + static_cast<int>(objects.size()) - 1; }
  bool in_window(int k) const { return k >= lo && k <= hi(); }
  const Module& at(int k) const { return objects.at(static_cast<std::size_t>(k - lo)); }
  // d_k: C_k -> C_{k-1}; only for lo < k <= hi
  const ModuleMap& d(int k) const { return maps.at(static_cast<std::size_t>(k - lo - 1)); }
  bool has_d(int k) const { return k > lo && k <= hi(); }

  void check_shapes() const {
    if (!objects.empty() && maps.size() + 1 != objects.size())
      throw DimensionMismatch("complex needs one differential between consecutive degrees");
    for (std::size_t i = 0; i < maps.size(); ++i)
      if (maps[i].source.dims() != objects[i + 1].dims() || maps[i].target.dims() != objects[i].dims())
        throw DimensionMismatch("differential " + std::to_string(lo + static_cast<int>(i) + 1) +
                                " does not match its objects");
  }
};

struct ComplexReport {
  bool is_complex = true;
  std::vector<int> exact_at;
  std::vector<int> not_exact_at;
  bool exact() const { return is_complex && not_exact_at.empty(); }
};

inline ComplexReport verify_complex(const ChainComplex& c) {
  c.check_shapes();
  ComplexReport r;
  for (int k = c.lo + 2; k <= c.hi(); ++k)
    if (!compose(c.d(k - 1), c.d(k)).is_zero()) r.is_complex = false;
  auto rk = [&](int k) { return c.has_d(k) ? c.d(k).rank() : std::size_t{0}; };
  for (int k = c.lo; k <= c.hi(); ++k) {
    bool ok = r.is_complex && c.at(k).total_dim() - rk(k) == rk(k + 1);
    (ok ? r.exact_at : r.not_exact_at).push_back(k);
  }
  return r;
}

enum class HomSide { IntoClass, FromClass };

inline const char* to_string(HomSide s) { return s == HomSide::IntoClass ? "into-class" : "from-class"; }

// Rank of f |-> f o d on Hom(target(d), g) (into) or f |-> d o f on Hom(g, source(d)) (from).
inline std::size_t induced_rank(const ModuleMap& d, const Module& g, HomSide side) {
  std::vector<Vector> cols;
  if (side == HomSide::IntoClass) {
    for (const auto& f : hom_basis(d.target, g)) cols.push_back(compose(f, d).flatten());
  } else {
    for (const auto& f : hom_basis(g, d.source)) cols.push_back(compose(d, f).flatten());
  }
  if (cols.empty() || cols[0].empty()) return 0;
  return rank(Matrix::from_columns(cols, cols[0].size(), d.source.prime()));
}

// Degrees of C at which Hom(C, g) (into) or Hom(g, C) (from) fails to be exact.
inline std::vector<int> hom_defects(const ChainComplex& c, const Module& g, HomSide side) {
  c.check_shapes();
  std::vector<std::size_t> ranks(c.objects.size() + 1, 0);  // ranks[i] for d_{lo+i}, zero off the window
  for (int k = c.lo + 1; k <= c.hi(); ++k) ranks[static_cast<std::size_t>(k - c.lo)] = induced_rank(c.d(k), g, side);
  std::vector<int> bad;
  for (int k = c.lo; k <= c.hi(); ++k) {
    std::size_t i = static_cast<std::size_t>(k - c.lo);
    std::size_t h = side == HomSide::IntoClass ? hom_dimension(c.at(k), g) : hom_dimension(g, c.at(k));
    if (h - ranks[i + 1] != ranks[i]) bad.push_back(k);
  }
  return bad;
}

inline bool is_hom_acyclic(const ChainComplex& c, const ClassSpec& cls, HomSide side) {
  for (const auto& g : cls.generators)
    if (!hom_defects(c, g, side).empty()) return false;
  return true;
}

// ---------------------------------------------------------------- resolutions and Ext

struct ProjectiveResolution {
  std::vector<Module> terms;      // P_0 .. P_len
  std::vector<ModuleMap> maps;    // maps[k]: P_{k+1} -> P_k
  ModuleMap augmentation;         // P_0 -> M
  std::vector<Module> syzygies;   // Omega^1 .. Omega^len+1
};

inline ProjectiveResolution projective_resolution(const Module& m, std::size_t len) {
  ProjectiveResolution r;
  Syzygy s = syzygy(m);
  r.terms.push_back(s.cover.object);
  r.augmentation = s.cover.map;
  r.syzygies.push_back(s.module);
  for (std::size_t k = 0; k < len; ++k) {
    Syzygy next = syzygy(s.module);
    r.terms.push_back(next.cover.object);
    r.maps.push_back(compose(s.inclusion, next.cover.map));
    r.syzygies.push_back(next.module);
    s = std::move(next);
  }
  return r;
}

inline ChainComplex to_complex(const ProjectiveResolution& r) {
  ChainComplex c;
  c.lo = 0;
  c.objects = r.terms;
  c.maps = r.maps;
  return c;
}

// dim Ext^i(M, N) for i = 0..n from one resolution, via cohomology of Hom(P_., N).
inline std::vector<std::size_t> ext_dimensions(const Module& m, const Module& n, std::size_t top) {
  require_same_algebra(m, n, "ext_dimension");
  ProjectiveResolution r = projective_resolution(m, top + 1);
  std::vector<std::size_t> h, rk(top + 2, 0);  // rk[k]: rank of Hom(P_{k-1},N) -> Hom(P_k,N)
  for (std::size_t k = 0; k <= top; ++k) h.push_back(hom_dimension(r.terms[k], n));
  for (std::size_t k = 1; k <= top + 1; ++k) rk[k] = induced_rank(r.maps[k - 1], n, HomSide::IntoClass);
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i <= top; ++i) out.push_back(h[i] - rk[i + 1] - rk[i]);
  return out;
}

inline std::size_t ext_dimension(std::size_t i, const Module& m, const Module& n) { return ext_dimensions(m, n, i)[i]; }

// Ext^{1..n}(a, b) = 0 for every pair of generators.
inline bool check_hereditary_pair(const ClassSpec& a, const ClassSpec& b, std::size_t n) {
  for (const auto& x : a.generators)
    for (const auto& y : b.generators) {
      auto e = ext_dimensions(x, y, n);
      for (std::size_t i = 1; i <= n; ++i)
        if (e[i]) return false;
    }
  return true;
}

inline bool is_rigid(const ClassSpec& a, std::size_t n) { return check_hereditary_pair(a, a, n); }

// Smallest d with Ext^{d+1..n}(M, B) = 0, relative to the window n.
inline Verdict<std::size_t> relative_pd(const Module& m, const ClassSpec& b, std::size_t n) {
  std::vector<std::size_t> total(n + 1, 0);
  for (const auto& g : b.generators) {
    auto e = ext_dimensions(m, g, n);
    for (std::size_t i = 1; i <= n; ++i) total[i] += e[i];
  }
  if (n >= 1 && total[n])
    return Verdict<std::size_t>::unknown("Ext^" + std::to_string(n) + " nonzero at the window edge n=" + std::to_string(n));
  std::size_t d = n;
  while (d > 0 && total[d] == 0) --d;
  return Verdict<std::size_t>::yes(d, "within ext_window=" + std::to_string(n));
}

// ---------------------------------------------------------------- add-(co)resolutions

namespace detail {

inline std::vector<Module> class_summands(const ClassSpec& cls, std::uint64_t cap) {
  std::vector<Module> out;
  for (const auto& g : cls.generators)
    for (auto& s : decompose(g, cap).summands) {
      bool dup = false;
      for (const auto& o : out)
        if (indecomposable_iso(o, s.module)) dup = true;
      if (!dup) out.push_back(s.module);
    }
  return out;
}

}  // namespace detail

struct Approximation {
  Module object;
  ModuleMap map;
};

namespace detail {

inline bool adds_to_span(std::vector<Vector>& span, const Vector& v, std::size_t len, std::uint32_t p) {
  if (len == 0) return false;
  std::size_t before = span.empty() ? 0 : rank(Matrix::from_columns(span, len, p));
  span.push_back(v);
  if (rank(Matrix::from_columns(span, len, p)) > before) return true;
  span.pop_back();
  return false;
}

// Greedy trim of the hom basis: a map is kept only if it does not already factor through
// the maps kept so far. Factoring maps form a subspace, so the result is still an approximation.
inline Approximation trimmed_approximation(const Module& m, const std::vector<Module>& gens, bool cover) {
  std::vector<Module> parts;
  std::vector<ModuleMap> maps;
  const std::uint32_t p = m.prime();
  for (const auto& g : gens) {
    auto basis = cover ? hom_basis(g, m) : hom_basis(m, g);
    if (basis.empty()) continue;
    std::size_t len = basis.front().flatten().size();
    std::vector<Vector> span;
    auto absorb = [&](const Module& part, const ModuleMap& f) {
      for (auto& phi : cover ? hom_basis(g, part) : hom_basis(part, g))
        adds_to_span(span, (cover ? compose(f, phi) : compose(phi, f)).flatten(), len, p);
    };
    for (std::size_t i = 0; i < parts.size(); ++i) absorb(parts[i], maps[i]);
    for (auto& h : basis) {
      if (!adds_to_span(span, h.flatten(), len, p)) continue;
      span.pop_back();
      parts.push_back(g);
      maps.push_back(std::move(h));
      absorb(parts.back(), maps.back());
    }
  }
  // Drop kept maps that factor through the others; the greedy pass depends on basis order.
  for (std::size_t s = 0; s < parts.size();) {
    std::vector<Vector> span;
    const Vector target = maps[s].flatten();
    for (std::size_t t = 0; t < parts.size(); ++t) {
      if (t == s) continue;
      for (auto& phi : cover ? hom_basis(parts[s], parts[t]) : hom_basis(parts[t], parts[s]))
        adds_to_span(span, (cover ? compose(maps[t], phi) : compose(phi, maps[t])).flatten(), target.size(), p);
    }
    if (adds_to_span(span, target, target.size(), p)) {
      ++s;
    } else {
      parts.erase(parts.begin() + static_cast<std::ptrdiff_t>(s));
      maps.erase(maps.begin() + static_cast<std::ptrdiff_t>(s));
    }
  }
  const Module zero = Module::zero(m.algebra_ptr());
  if (parts.empty()) return {zero, cover ? ModuleMap::zero(zero, m) : ModuleMap::zero(m, zero)};
  DirectSum s = direct_sum(parts, m.algebra_ptr());
  ModuleMap out = cover ? ModuleMap::zero(s.module, m) : ModuleMap::zero(m, s.module);
  for (std::size_t i = 0; i < parts.size(); ++i)
    out = out + (cover ? compose(maps[i], s.projections[i]) : compose(s.injections[i], maps[i]));
  return {s.module, out};
}

}  // namespace detail

// add(G)-precover of M built from a trimmed hom basis.
inline Approximation add_precover(const Module& m, const std::vector<Module>& gens) {
  return detail::trimmed_approximation(m, gens, true);
}

// add(G)-preenvelope of M, dual construction.
inline Approximation add_preenvelope(const Module& m, const std::vector<Module>& gens) {
  return detail::trimmed_approximation(m, gens, false);
}

enum class ResolutionSide { Resolution, Coresolution };

// Length of an add(A)-(co)resolution of M, or Unknown past depth.
inline Verdict<std::size_t> resolution_dim(const Module& m, const ClassSpec& a, std::size_t depth,
                                           ResolutionSide side = ResolutionSide::Resolution,
                                           std::uint64_t cap = 1u << 20) {
  using V = Verdict<std::size_t>;
  auto gens = detail::class_summands(a, cap);
  Module cur = m;
  for (std::size_t k = 0; k <= depth; ++k) {
    auto mem = in_add(cur, a, cap);
    if (mem.is_yes()) return V::yes(k);
    if (mem.is_unknown()) return V::unknown(mem.detail);
    if (k == depth) break;
    if (side == ResolutionSide::Resolution) {
      Approximation ap = add_precover(cur, gens);
      if (!ap.map.is_epi())
        return V::no(Obstruction::NotEpi, "step " + std::to_string(k) + ": add-precover is not epi");
      cur = kernel(ap.map).module;
    } else {
      Approximation ap = add_preenvelope(cur, gens);
      if (!ap.map.is_mono())
        return V::no(Obstruction::NotEpi, "step " + std::to_string(k) + ": add-preenvelope is not mono");
      cur = cokernel(ap.map).module;
    }
  }
  return V::unknown("no finite " + std::string(side == ResolutionSide::Resolution ? "resolution" : "coresolution") +
                    " within depth=" + std::to_string(depth));
}

}  // namespace gorenlab
