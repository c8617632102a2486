#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "loop.hpp"
#include "workspace.hpp"

namespace gorenlab {

enum class RequirementKind { None, IntoB, CyclesPerpB, Proper, ProperWeak };

inline const char* to_string(RequirementKind k) {
  switch (k) {
    case RequirementKind::None: return "none";
    case RequirementKind::IntoB: return "into-B-acyclic";
    case RequirementKind::CyclesPerpB: return "cycles-perp-B";
    case RequirementKind::Proper: return "proper";
    case RequirementKind::ProperWeak: return "proper-weak";
  }
  return "?";
}

inline std::optional<RequirementKind> parse_requirement(const std::string& s) {
  for (auto k : {RequirementKind::None, RequirementKind::IntoB, RequirementKind::CyclesPerpB, RequirementKind::Proper,
                 RequirementKind::ProperWeak})
    if (s == to_string(k)) return k;
  return std::nullopt;
}

struct Requirement {
  RequirementKind kind = RequirementKind::None;
  ClassSpec b;

  bool uses_b() const { return kind != RequirementKind::None; }
  bool weak() const { return kind == RequirementKind::CyclesPerpB || kind == RequirementKind::ProperWeak; }
  bool proper() const { return kind == RequirementKind::Proper || kind == RequirementKind::ProperWeak; }
};

// Re-check the requested flags on a finished loop using only the homology kit.
inline bool loop_meets(const LoopComplex& l, const ClassSpec& a, const Requirement& req, std::size_t window) {
  switch (req.kind) {
    case RequirementKind::None: return true;
    case RequirementKind::IntoB: return is_hom_acyclic(l, req.b, HomSide::IntoClass);
    case RequirementKind::Proper:
      return is_hom_acyclic(l, req.b, HomSide::IntoClass) && is_hom_acyclic(l, a, HomSide::FromClass);
    case RequirementKind::CyclesPerpB: return cycles_perp(l, req.b, window);
    case RequirementKind::ProperWeak: return cycles_perp(l, req.b, window) && cycles_coperp(l, a, window);
  }
  return false;
}

// Loop lies in add(A): every step object is checked.
inline bool loop_in_class(const LoopComplex& l, const ClassSpec& a, std::uint64_t cap) {
  for (const auto& s : l.steps)
    if (!in_add(s, a, cap).is_yes()) return false;
  return true;
}

namespace detail {

// Every d-dimensional subspace of GF(p)^h as a list of RREF basis rows.
inline void for_each_subspace(std::size_t h, std::size_t d, std::uint32_t p,
                              const std::function<bool(const std::vector<Vector>&)>& fn) {
  if (d > h) return;
  std::vector<std::size_t> piv(d);
  std::iota(piv.begin(), piv.end(), 0);
  for (;;) {
    std::vector<std::pair<std::size_t, std::size_t>> free;
    std::vector<char> is_piv(h, 0);
    for (auto c : piv) is_piv[c] = 1;
    for (std::size_t r = 0; r < d; ++r)
      for (std::size_t c = piv[r] + 1; c < h; ++c)
        if (!is_piv[c]) free.emplace_back(r, c);
    std::vector<std::uint32_t> val(free.size(), 0);
    for (;;) {
      std::vector<Vector> rows(d, Vector(h, 0));
      for (std::size_t r = 0; r < d; ++r) rows[r][piv[r]] = 1;
      for (std::size_t i = 0; i < free.size(); ++i) rows[free[i].first][free[i].second] = val[i];
      if (!fn(rows)) return;
      std::size_t i = 0;
      while (i < val.size() && ++val[i] == p) val[i++] = 0;
      if (i == val.size()) break;
    }
    // next pivot combination
    std::size_t i = d;
    while (i > 0 && piv[i - 1] == h - d + i - 1) --i;
    if (i == 0) break;
    ++piv[i - 1];
    for (std::size_t j = i; j < d; ++j) piv[j] = piv[j - 1] + 1;
  }
}

inline std::uint64_t gaussian_binomial(std::size_t h, std::size_t d, std::uint32_t p) {
  if (d > h) return 0;
  long double num = 1, den = 1;
  for (std::size_t i = 0; i < d; ++i) {
    num *= std::pow(static_cast<long double>(p), static_cast<long double>(h - i)) - 1;
    den *= std::pow(static_cast<long double>(p), static_cast<long double>(i + 1)) - 1;
  }
  long double r = num / den + 0.5L;
  return r > 1e18L ? std::uint64_t(1e18) : static_cast<std::uint64_t>(r);
}

// 2*target as a nonnegative integer combination of gens.
inline bool in_natural_span(const std::vector<std::vector<std::int64_t>>& gens, std::vector<std::int64_t> target,
                            std::size_t from = 0) {
  if (std::all_of(target.begin(), target.end(), [](std::int64_t x) { return x == 0; })) return true;
  for (std::size_t g = from; g < gens.size(); ++g) {
    bool nonzero = false, fits = true;
    for (std::size_t v = 0; v < target.size(); ++v) {
      nonzero = nonzero || gens[g][v] != 0;
      fits = fits && gens[g][v] <= target[v];
    }
    if (!nonzero || !fits) continue;
    auto t = target;
    for (std::size_t v = 0; v < t.size(); ++v) t[v] -= gens[g][v];
    if (in_natural_span(gens, t, g)) return true;
  }
  return false;
}

}  // namespace detail

struct SearchStats {
  std::uint64_t nodes = 0;
  std::uint64_t monos = 0;
  std::size_t passes = 0;
};

// Loop search over one algebra.  Holds the caches of a Workspace; not thread-safe.
class LoopSearch {
 public:
  explicit LoopSearch(Workspace& ws) : ws_(ws) {}

  Workspace& workspace() { return ws_; }
  const SearchStats& stats() const { return stats_; }

  // Canonical map M -> sum G^{dim Hom(M,G)} is injective.
  bool embeds(const Module& m, const std::vector<std::size_t>& gens) {
    IsoKey k = ws_.key(m);
    std::string ck = key_string(k) + "/" + key_string(gens);
    auto it = embeds_.find(ck);
    if (it != embeds_.end()) return it->second;
    bool ok = true;
    for (std::size_t v = 0; v < m.dims().size() && ok; ++v) {
      if (m.dim(v) == 0) continue;
      std::vector<Vector> rows;
      for (auto g : gens)
        for (const auto& f : hom_basis(m, ws_.rep(g)))
          for (std::size_t r = 0; r < f.blocks[v].rows(); ++r) {
            Vector row(m.dim(v));
            for (std::size_t c = 0; c < row.size(); ++c) row[c] = f.blocks[v](r, c);
            rows.push_back(row);
          }
      if (rows.empty()) {
        ok = false;
        break;
      }
      Matrix s(rows.size(), m.dim(v), m.prime());
      for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t c = 0; c < m.dim(v); ++c) s(r, c) = rows[r][c];
      ok = rank(s) == m.dim(v);
    }
    embeds_[ck] = ok;
    return ok;
  }

  Verdict<LoopComplex> find_loop(const Module& m, const ClassSpec& a, std::size_t len, const Requirement& req) {
    using V = Verdict<LoopComplex>;
    if (len == 0) throw std::invalid_argument("loop length must be at least 1");
    if (!m.algebra().same_as(*ws_.algebra())) throw AlgebraMismatch("module lives over another algebra");
    std::string ck = m.content_key() + "|" + class_key(a) + "|" + std::to_string(len) + "|" + to_string(req.kind) +
                     "|" + (req.uses_b() ? class_key(req.b) : std::string());
    auto it = verdicts_.find(ck);
    if (it != verdicts_.end()) return it->second;
    V v = find_loop_uncached(m, a, len, req);
    verdicts_.emplace(ck, v);
    return v;
  }

 private:
  static std::string key_string(const std::vector<std::size_t>& k) {
    std::string s;
    for (auto x : k) s += std::to_string(x) + ",";
    return s;
  }
  std::string class_key(const ClassSpec& c) { return key_string(ws_.class_ids(c)); }

  struct Step {
    Module a;
    ModuleMap mono;
    Quotient coker;
  };

  struct Pass {
    std::size_t budget;
    const Module* base;
    IsoKey base_key;
    std::vector<std::size_t> gens;
    std::vector<std::size_t> bgens;
    const Requirement* req;
    std::set<std::pair<IsoKey, std::size_t>> failed;
    std::vector<Step> path;
    bool complete = true;
    bool aborted = false;
  };

  Verdict<LoopComplex> find_loop_uncached(const Module& m, const ClassSpec& a, std::size_t len, const Requirement& req) {
    using V = Verdict<LoopComplex>;
    const SearchBounds& bd = ws_.bounds();
    const std::size_t n = bd.ext_window;
    const auto& gens = ws_.class_ids(a);
    std::vector<std::size_t> bgens = req.uses_b() ? ws_.class_ids(req.b) : std::vector<std::size_t>{};
    const IsoKey mk = ws_.key(m);

    if (m.is_zero()) {
      LoopComplex l;
      l.base = m;
      l.steps.assign(len, m);
      l.cycles.assign(len + 1, m);
      l.monos.assign(len, ModuleMap::identity(m));
      l.epis.assign(len, ModuleMap::identity(m));
      l.closing = ModuleMap::identity(m);
      return V::yes(l, "zero module");
    }

    if (!embeds(m, gens))
      return V::no(Obstruction::NoEmbedding, "canonical map " + name_of(m) + " -> sum of add(" + a.name +
                                                 ") generators is not injective; no loop of any length");

    if (len % 2 == 1) {
      std::vector<std::vector<std::int64_t>> gd;
      for (auto g : gens) {
        std::vector<std::int64_t> d;
        for (auto x : ws_.rep(g).dims()) d.push_back(static_cast<std::int64_t>(x));
        gd.push_back(d);
      }
      std::vector<std::int64_t> twice;
      for (auto x : m.dims()) twice.push_back(2 * static_cast<std::int64_t>(x));
      if (!in_integer_span(gd, twice))
        return V::no(Obstruction::DimensionLattice,
                     "2*dim " + name_of(m) + " is not an integer combination of generator dimension vectors");
      if (len == 1 && !detail::in_natural_span(gd, twice))
        return V::no(Obstruction::DimensionLattice,
                     "a length-1 loop needs dim A_1 = 2*dim " + name_of(m) + ", not a sum of generator dimension vectors");
    }

    if (req.uses_b()) {
      // With Ext^{1..n}(A, B) = 0 every Hom(-,B)-acyclic A-loop has cycles in the left orthogonal of B.
      if (ws_.ext_vanishes(key_of(gens), key_of(bgens), n) && !ws_.ext_vanishes(mk, key_of(bgens), n))
        return V::no(Obstruction::ExtNonvanishing, "Ext^i(" + name_of(m) + ", " + req.b.name + ") != 0 for some i <= " +
                                                       std::to_string(n) + " while Ext^{1.." + std::to_string(n) +
                                                       "}(A, B) = 0");
      if (req.weak() && ws_.ext_vanishes_all(mk, key_of(bgens)) == false)
        return V::no(Obstruction::ExtNonvanishing, "base is not in the left Ext-orthogonal of " + req.b.name);
    }
    if (req.proper()) {
      if (ws_.ext_vanishes(key_of(gens), key_of(gens), n) && !ws_.ext_vanishes(key_of(gens), mk, n))
        return V::no(Obstruction::ExtNonvanishing, "Ext^i(" + a.name + ", " + name_of(m) + ") != 0 for some i <= " +
                                                       std::to_string(n) + " while A is rigid in that window");
      if (req.kind == RequirementKind::ProperWeak && ws_.ext_vanishes_all(key_of(gens), mk) == false)
        return V::no(Obstruction::ExtNonvanishing, "base is not in the right Ext-orthogonal of " + a.name);
    }

    // Loops of a proper divisor length, repeated.
    for (std::size_t d = 1; d < len; ++d) {
      if (len % d) continue;
      auto sub = find_loop(m, a, d, req);
      if (sub.is_yes())
        return V::yes(splice_power(*sub.certificate, len / d),
                      "length-" + std::to_string(d) + " loop spliced " + std::to_string(len / d) + " times");
    }

    const std::size_t start = std::max<std::size_t>(1, std::min(m.total_dim(), bd.max_step_dim));
    bool last_complete = false;
    std::uint64_t nodes_before = stats_.nodes;
    for (std::size_t b = start; b <= bd.max_step_dim; ++b) {
      Pass pass;
      pass.budget = b;
      pass.base = &m;
      pass.base_key = mk;
      pass.gens = gens;
      pass.bgens = bgens;
      pass.req = &req;
      ++stats_.passes;
      if (dfs(pass, m, len)) {
        LoopComplex l = assemble(pass, m, len);
        return V::yes(l, "found with every cycle of dimension <= " + std::to_string(b));
      }
      if (pass.aborted) {
        return V::unknown("node budget exhausted (" + std::to_string(stats_.nodes - nodes_before) + " nodes); " +
                          bd.describe());
      }
      last_complete = pass.complete && b == bd.max_step_dim;
    }
    if (last_complete && m.total_dim() <= bd.max_step_dim)
      return V::no(Obstruction::ExhaustiveSearch, "no loop of length " + std::to_string(len) +
                                                      " with every cycle of dimension <= " +
                                                      std::to_string(bd.max_step_dim) + "; " + bd.describe());
    return V::unknown("search incomplete; " + bd.describe());
  }

  static IsoKey key_of(const std::vector<std::size_t>& ids) {
    IsoKey k = ids;
    std::sort(k.begin(), k.end());
    return k;
  }
  static std::string name_of(const Module& m) { return m.name().empty() ? std::string("M") : m.name(); }

  bool step_ok(Pass& p, const IsoKey& z, const IsoKey& a, const IsoKey& zq) {
    const Requirement& req = *p.req;
    const std::size_t n = ws_.bounds().ext_window;
    switch (req.kind) {
      case RequirementKind::None: return true;
      case RequirementKind::IntoB: return into_ok(p, z, a, zq);
      case RequirementKind::Proper: return into_ok(p, z, a, zq) && from_ok(p, z, a, zq);
      case RequirementKind::CyclesPerpB: return perp(p, zq, key_of(p.bgens), n);
      case RequirementKind::ProperWeak: return perp(p, zq, key_of(p.bgens), n) && perp(p, key_of(p.gens), zq, n);
    }
    return false;
  }
  // Ext^{>=1}(a, b) = 0 through the syzygy closure; an undecidable closure only fails the branch.
  bool perp(Pass& p, const IsoKey& a, const IsoKey& b, std::size_t n) {
    if (!ws_.ext_vanishes(a, b, n)) return false;
    auto all = ws_.ext_vanishes_all(a, b);
    if (!all) p.complete = false;
    return all.value_or(false);
  }
  // 0 -> Hom(Z', G) -> Hom(A, G) -> Hom(Z, G) is onto at the right end
  bool into_ok(const Pass& p, const IsoKey& z, const IsoKey& a, const IsoKey& zq) {
    for (auto g : p.bgens)
      if (ws_.hom(a, IsoKey{g}) - ws_.hom(zq, IsoKey{g}) != ws_.hom(z, IsoKey{g})) return false;
    return true;
  }
  // 0 -> Hom(G, Z) -> Hom(G, A) -> Hom(G, Z') is onto at the right end
  bool from_ok(const Pass& p, const IsoKey& z, const IsoKey& a, const IsoKey& zq) {
    for (auto g : p.gens)
      if (ws_.hom(IsoKey{g}, a) - ws_.hom(IsoKey{g}, z) != ws_.hom(IsoKey{g}, zq)) return false;
    return true;
  }

  // Multiplicity vectors over the generator summands, ordered by total dimension then lexicographically.
  std::vector<std::vector<std::size_t>> candidates(const Pass& p, const Module& z, bool last) {
    const auto& gens = p.gens;
    const std::size_t nv = z.dims().size();
    std::vector<std::size_t> want(nv);
    for (std::size_t v = 0; v < nv; ++v) want[v] = z.dim(v) + (last ? p.base->dim(v) : 0);
    const std::size_t cap = last ? z.total_dim() + p.base->total_dim() : z.total_dim() + p.budget;
    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t> mult(gens.size(), 0), dims(nv, 0);
    std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t j, std::size_t total) {
      if (j == gens.size()) {
        for (std::size_t v = 0; v < nv; ++v) {
          if (last ? dims[v] != want[v] : dims[v] < z.dim(v)) return;
        }
        out.push_back(mult);
        return;
      }
      const Module& g = ws_.rep(gens[j]);
      for (std::size_t c = 0;; ++c) {
        if (total + c * g.total_dim() > cap) break;
        mult[j] = c;
        for (std::size_t v = 0; v < nv; ++v) dims[v] += c * g.dim(v);
        rec(j + 1, total + c * g.total_dim());
        for (std::size_t v = 0; v < nv; ++v) dims[v] -= c * g.dim(v);
        if (g.total_dim() == 0) break;
      }
      mult[j] = 0;
    };
    rec(0, 0);
    std::stable_sort(out.begin(), out.end(), [&](const auto& x, const auto& y) {
      std::size_t dx = 0, dy = 0;
      for (std::size_t j = 0; j < gens.size(); ++j) {
        dx += x[j] * ws_.rep(gens[j]).total_dim();
        dy += y[j] * ws_.rep(gens[j]).total_dim();
      }
      if (dx != dy) return dx < dy;
      return x < y;
    });
    return out;
  }

  struct Candidate {
    IsoKey key;
    DirectSum sum;
    std::vector<std::size_t> slot_gen;  // generator index of each summand slot
  };

  Candidate realize(const Pass& p, const std::vector<std::size_t>& mult, const AlgebraPtr& alg) {
    Candidate c;
    std::vector<Module> parts;
    for (std::size_t j = 0; j < mult.size(); ++j)
      for (std::size_t i = 0; i < mult[j]; ++i) {
        c.key.push_back(p.gens[j]);
        parts.push_back(ws_.rep(p.gens[j]));
        c.slot_gen.push_back(j);
      }
    std::sort(c.key.begin(), c.key.end());
    c.sum = direct_sum(parts, alg);
    if (parts.empty()) c.sum.module = Module::zero(alg);
    return c;
  }

  // Calls fn for one subspace of each hom space hb[j] of dimension <= mult[j].
  // Returns false when the tuple count exceeds the cap; fn returns true to stop.
  bool for_each_choice(const std::vector<std::size_t>& mult, const std::vector<std::vector<ModuleMap>>& hb,
                       std::uint32_t prime, const std::function<bool(const std::vector<std::vector<Vector>>&)>& fn) {
    const std::uint64_t cap = ws_.bounds().hom_enum_cap;
    std::uint64_t count = 1;
    for (std::size_t j = 0; j < mult.size(); ++j) {
      if (!mult[j]) continue;
      std::uint64_t cj = 0;
      for (std::size_t d = 0; d <= std::min(mult[j], hb[j].size()); ++d)
        cj += detail::gaussian_binomial(hb[j].size(), d, prime);
      count = count > cap / std::max<std::uint64_t>(cj, 1) ? cap + 1 : count * cj;
    }
    if (count > cap) return false;
    std::vector<std::vector<Vector>> choice(mult.size());
    std::function<bool(std::size_t)> pick = [&](std::size_t j) -> bool {
      if (j == mult.size()) return fn(choice);
      if (!mult[j]) return pick(j + 1);
      const std::size_t h = hb[j].size();
      for (std::size_t d = std::min(mult[j], h) + 1; d-- > 0;) {
        bool stop = false;
        detail::for_each_subspace(h, d, prime, [&](const std::vector<Vector>& rows) {
          choice[j] = rows;
          stop = pick(j + 1);
          return !stop;
        });
        if (stop) return true;
      }
      return false;
    };
    pick(0);
    return true;
  }

  static ModuleMap combine(const std::vector<ModuleMap>& basis, const Vector& coeff, const Module& s, const Module& t) {
    ModuleMap g = ModuleMap::zero(s, t);
    for (std::size_t b = 0; b < basis.size(); ++b)
      if (coeff[b]) g = g + basis[b].scaled(coeff[b]);
    return g;
  }

  // Z_r can still reach M: M - (-1)^r Z lies in the lattice of generator dimensions.
  bool lattice_ok(const Pass& p, const Module& z, std::size_t remaining) {
    std::vector<std::vector<std::int64_t>> gd;
    for (auto g : p.gens) {
      std::vector<std::int64_t> d;
      for (auto x : ws_.rep(g).dims()) d.push_back(static_cast<std::int64_t>(x));
      gd.push_back(d);
    }
    std::vector<std::int64_t> t;
    const std::int64_t sign = remaining % 2 ? -1 : 1;
    for (std::size_t v = 0; v < z.dims().size(); ++v)
      t.push_back(static_cast<std::int64_t>(p.base->dim(v)) - sign * static_cast<std::int64_t>(z.dim(v)));
    return remaining == 1 ? detail::in_natural_span(gd, t) : in_integer_span(gd, t);
  }

  bool tick(Pass& p) {
    if (++stats_.nodes > node_limit()) p.aborted = true;
    return !p.aborted;
  }

  bool dfs(Pass& p, const Module& z, std::size_t remaining) {
    if (!tick(p)) return false;
    if (!ws_.analyze(z).certified) p.complete = false;
    if (remaining == 1) return last_step(p, z);
    const IsoKey zk = ws_.key(z);
    std::set<IsoKey> tried;
    for (const auto& mult : candidates(p, z, false)) {
      Candidate cand = realize(p, mult, z.algebra_ptr());
      std::vector<std::vector<ModuleMap>> hb(mult.size());
      for (std::size_t j = 0; j < mult.size(); ++j)
        if (mult[j]) hb[j] = hom_basis(z, ws_.rep(p.gens[j]));
      bool found = false;
      bool within = for_each_choice(mult, hb, z.prime(), [&](const std::vector<std::vector<Vector>>& choice) {
        ++stats_.monos;
        if (!tick(p)) return true;
        std::vector<std::size_t> used(mult.size(), 0);
        ModuleMap f = ModuleMap::zero(z, cand.sum.module);
        for (std::size_t s = 0; s < cand.slot_gen.size(); ++s) {
          std::size_t j = cand.slot_gen[s], r = used[j]++;
          if (r < choice[j].size())
            f = f + compose(cand.sum.injections[s], combine(hb[j], choice[j][r], z, ws_.rep(p.gens[j])));
        }
        if (!f.is_mono()) return false;
        Quotient q = cokernel(f);
        IsoKey qk = ws_.key(q.module);
        if (!ws_.analyze(q.module).certified) p.complete = false;
        if (tried.count(qk) || !step_ok(p, zk, cand.key, qk)) return false;
        tried.insert(qk);
        if (p.failed.count({qk, remaining - 1})) return false;
        if (!lattice_ok(p, q.module, remaining - 1) || (!q.module.is_zero() && !embeds(q.module, p.gens))) {
          p.failed.insert({qk, remaining - 1});
          return false;
        }
        p.path.push_back({cand.sum.module, f, q});
        if (dfs(p, q.module, remaining - 1)) return found = true;
        p.path.pop_back();
        if (p.aborted) return true;
        p.failed.insert({qk, remaining - 1});
        return false;
      });
      if (!within) p.complete = false;
      if (found) return true;
      if (p.aborted) return false;
    }
    return false;
  }

  // Z >-> A ->> M: enumerate epimorphisms A ->> M and compare kernels with Z.
  bool last_step(Pass& p, const Module& z) {
    const Module& m = *p.base;
    const IsoKey zk = ws_.key(z);
    for (const auto& mult : candidates(p, z, true)) {
      Candidate cand = realize(p, mult, z.algebra_ptr());
      if (!step_ok(p, zk, cand.key, p.base_key)) continue;
      std::vector<std::vector<ModuleMap>> hb(mult.size());
      for (std::size_t j = 0; j < mult.size(); ++j)
        if (mult[j]) hb[j] = hom_basis(ws_.rep(p.gens[j]), m);
      bool found = false;
      bool within = for_each_choice(mult, hb, z.prime(), [&](const std::vector<std::vector<Vector>>& choice) {
        ++stats_.monos;
        if (!tick(p)) return true;
        std::vector<std::size_t> used(mult.size(), 0);
        ModuleMap e = ModuleMap::zero(cand.sum.module, m);
        for (std::size_t s = 0; s < cand.slot_gen.size(); ++s) {
          std::size_t j = cand.slot_gen[s], r = used[j]++;
          if (r < choice[j].size())
            e = e + compose(combine(hb[j], choice[j][r], ws_.rep(p.gens[j]), m), cand.sum.projections[s]);
        }
        if (!e.is_epi()) return false;
        Submodule k = kernel(e);
        auto iso = ws_.isomorphism(z, k.module);
        if (!iso) return false;
        p.path.push_back({cand.sum.module, compose(k.inclusion, *iso), Quotient{m, e}});
        return found = true;
      });
      if (!within) p.complete = false;
      if (found) return true;
      if (p.aborted) return false;
    }
    return false;
  }

  LoopComplex assemble(const Pass& p, const Module& m, std::size_t len) {
    // path[0] is the step from Z_m = M, path[len-1] ends at Z_0
    LoopComplex l;
    l.base = m;
    l.steps.resize(len);
    l.monos.resize(len);
    l.epis.resize(len);
    l.cycles.resize(len + 1);
    l.cycles[len] = m;
    for (std::size_t i = 0; i < len; ++i) {
      std::size_t k = len - i;
      l.steps[k - 1] = p.path[i].a;
      l.monos[k - 1] = p.path[i].mono;
      l.epis[k - 1] = p.path[i].coker.projection;
      l.cycles[k - 1] = p.path[i].coker.module;
    }
    l.closing = ModuleMap::identity(m);
    return l;
  }

  std::uint64_t node_limit() const { return node_start_ + ws_.bounds().node_budget; }

 public:
  // Each top-level query gets a fresh node allowance.
  Verdict<LoopComplex> query(const Module& m, const ClassSpec& a, std::size_t len, const Requirement& req) {
    node_start_ = stats_.nodes;
    return find_loop(m, a, len, req);
  }

 private:
  Workspace& ws_;
  SearchStats stats_;
  std::uint64_t node_start_ = 0;
  std::map<std::string, bool> embeds_;
  std::map<std::string, Verdict<LoopComplex>> verdicts_;
};

inline Verdict<LoopComplex> find_loop(const Module& m, const ClassSpec& a, std::size_t len, const Requirement& req,
                                      const SearchBounds& bounds = SearchBounds::from_env()) {
  Workspace ws(m.algebra_ptr(), bounds);
  LoopSearch s(ws);
  return s.query(m, a, len, req);
}

}  // namespace gorenlab
