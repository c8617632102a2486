#pragma once

#include <functional>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "corpus.hpp"
#include "gorenstein.hpp"

namespace gorenlab {

class UnknownClaim : public std::invalid_argument {
 public:
  explicit UnknownClaim(const std::string& id) : std::invalid_argument("unknown claim '" + id + "'") {}
};

class MissingContext : public std::invalid_argument {
 public:
  MissingContext(const std::string& id, const std::string& field)
      : std::invalid_argument("claim '" + id + "' needs context field '" + field + "'") {}
};

// Everything a claim may look at.  The universe is a list of indecomposables.
struct ClaimContext {
  AlgebraPtr algebra;
  std::vector<NamedModule> universe;
  std::vector<NamedModule> modules;  // modules under test; empty means the universe
  std::optional<ClassSpec> a, b, z, w, x;
  std::size_t m = 1, n = 2;
};

// outcome: Yes when the statement holds on the context, No when it fails, Unknown when bounds ran out.
// violations: failures while every hypothesis was verified.  These would contradict the statement.
struct ClaimReport {
  std::string claim;
  std::string statement;
  Outcome outcome = Outcome::Yes;
  bool hypotheses = true;
  std::vector<std::string> findings;
  std::vector<std::string> caveats;
  std::vector<std::string> failures;
  std::vector<std::string> violations;
  std::size_t checks = 0;

  void fail(const std::string& what, bool binding) {
    failures.push_back(what);
    if (binding) violations.push_back(what);
  }
  void unresolved(const std::string& what) {
    if (!unresolved_) caveats.push_back("unresolved: " + what);
    unresolved_ = true;
  }
  void finish() {
    if (!failures.empty()) outcome = Outcome::No;
    else if (unresolved_) outcome = Outcome::Unknown;
    else outcome = Outcome::Yes;
  }
  bool agrees() const { return violations.empty(); }

 private:
  bool unresolved_ = false;
};

struct ClaimInfo {
  std::string id;
  std::string statement;
  std::vector<std::string> needs;
};

inline const std::vector<ClaimInfo>& claim_registry() {
  static const std::vector<ClaimInfo> r = {
      {"shifting", "Ext degree shifting along the cycles of an exact complex of A-objects", {"a", "b"}},
      {"schanuel", "cycles of two Hom(A,-)-acyclic loops at one base agree up to A-summands", {"a"}},
      {"orth-equiv", "left Ext-orthogonality of the base and of the cycles are equivalent when pd_B(A)=0", {"a", "b"}},
      {"rigid-acyc", "Hom(A,-)-acyclicity of a loop versus right Ext-orthogonality of its cycles", {"a"}},
      {"wsgp-eq-sgp", "pd_B(A)=0 iff the weak and plain periodic classes agree", {"a", "b"}},
      {"gp-cap-periodic", "GP meet pi_m equals the periodic Gorenstein class when pd_B(A)=0", {"a", "b"}},
      {"equiv-thm", "loop, Ext-window and B-hat acyclicity descriptions of the periodic class agree", {"a", "b"}},
      {"self-orth", "a proper periodic module with vanishing low self-extensions lies in A", {"a", "b"}},
      {"gcd", "proper periodic at m and n iff proper periodic at gcd(m, n)", {"a", "b"}},
      {"cluster-tilt", "conditions (1)-(5) for a relative cluster tilting class T inside X", {"a", "x"}},
      {"ct-identities", "X meet the proper and plain periodic classes relative to T equals T", {"a", "x"}},
      {"omega-trace", "omega equals the proper periodic, periodic and Gorenstein classes met with B", {"a", "b"}},
      {"gp-fixed", "the Gorenstein class is fixed by the periodic construction over itself and over B-hat", {"a", "b"}},
      {"add-pi1", "Gorenstein projectives are summands of 1-periodic ones", {"a", "b"}},
      {"ncotorsion", "right n-cotorsion conditions and the proper class equals B meet the periodic class", {"a", "b"}},
      {"dim-equal", "finitistic and global Gorenstein dimensions agree with the omega/nu dimensions", {"a", "b", "z", "w"}},
  };
  return r;
}

inline const ClaimInfo& claim_info(const std::string& id) {
  for (const auto& c : claim_registry())
    if (c.id == id) return c;
  throw UnknownClaim(id);
}

namespace claims_detail {

inline Outcome both(Outcome x, Outcome y) {
  if (x == Outcome::No || y == Outcome::No) return Outcome::No;
  if (x == Outcome::Yes && y == Outcome::Yes) return Outcome::Yes;
  return Outcome::Unknown;
}

inline Outcome of_bool(bool b) { return b ? Outcome::Yes : Outcome::No; }
inline Outcome of_opt(std::optional<bool> b) { return b ? of_bool(*b) : Outcome::Unknown; }

inline std::string yn(bool b) { return b ? "yes" : "no"; }

inline IsoKey sorted_key(std::vector<std::size_t> v) {
  std::sort(v.begin(), v.end());
  return v;
}

struct Scope {
  Engine& e;
  const ClaimContext& ctx;
  ClaimReport& r;

  Workspace& ws() { return e.workspace(); }
  const SearchBounds& bounds() { return e.bounds(); }
  const std::vector<NamedModule>& modules() const { return ctx.modules.empty() ? ctx.universe : ctx.modules; }

  IsoKey class_key(const ClassSpec& c) { return sorted_key(ws().class_ids(c)); }

  Outcome in_class(const Module& m, const ClassSpec& c) { return in_add(m, c, bounds().hom_enum_cap).outcome; }

  Outcome flag(const Module& m, const ClassSpec& a, const ClassSpec& b, std::size_t len, RequirementKind k) {
    return e.loop(m, a, len, {k, b}).outcome;
  }

  // One entry per module; Unknown entries leave the report unresolved.
  void compare(const std::string& what, const std::vector<NamedModule>& us, const std::vector<Outcome>& lhs,
               const std::vector<Outcome>& rhs, bool binding) {
    for (std::size_t i = 0; i < us.size(); ++i) {
      ++r.checks;
      if (lhs[i] == Outcome::Unknown || rhs[i] == Outcome::Unknown) {
        r.unresolved(what + " at " + us[i].name);
        continue;
      }
      if (lhs[i] != rhs[i])
        r.fail(what + ": " + us[i].name + " gives " + to_string(lhs[i]) + " vs " + to_string(rhs[i]), binding);
    }
  }

  std::string members(const std::vector<NamedModule>& us, const std::vector<Outcome>& col) {
    std::string s;
    for (std::size_t i = 0; i < us.size(); ++i)
      if (col[i] == Outcome::Yes) s += (s.empty() ? "" : " ") + us[i].name;
    return "{" + s + "}";
  }

  // Loops without acyclicity requirement at each module, lengths 1..m.
  std::vector<std::pair<std::string, LoopComplex>> loops(const ClassSpec& a, std::size_t max_len) {
    std::vector<std::pair<std::string, LoopComplex>> out;
    for (const auto& u : modules())
      for (std::size_t len = 1; len <= max_len; ++len) {
        auto v = e.loop(u.module, a, len, {RequirementKind::None, a});
        if (v.is_yes()) out.emplace_back(u.name + "@" + std::to_string(len), *v.certificate);
      }
    return out;
  }

  bool universe_has_summands_of(const ClassSpec& c) {
    for (const auto& g : detail::class_summands(c, bounds().hom_enum_cap)) {
      bool found = false;
      for (const auto& u : ctx.universe)
        if (indecomposable_iso(g, u.module)) found = true;
      if (!found) return false;
    }
    return true;
  }
};

inline ClassSpec single(const std::string& name, const Module& m) { return ClassSpec{name, {m}}; }

// ---------------------------------------------------------------- claims

inline void shifting(Scope& s) {
  const ClassSpec& A = *s.ctx.a;
  const ClassSpec& B = *s.ctx.b;
  const std::size_t n = s.ctx.n;
  bool rigid = is_rigid(A, n), orth = check_hereditary_pair(A, B, n);
  s.r.findings.push_back("Ext^{1.." + std::to_string(n) + "}(A,A)=0: " + yn(rigid) + ", Ext^{1.." + std::to_string(n) +
                         "}(A,B)=0: " + yn(orth));
  if (!rigid && !orth) {
    s.r.hypotheses = false;
    s.r.caveats.push_back("neither hypothesis holds; nothing to compare");
    return;
  }
  auto ls = s.loops(A, std::max<std::size_t>(s.ctx.m, 1));
  if (ls.empty()) s.r.caveats.push_back("no loops found at the modules under test");
  for (const auto& [label, l] : ls) {
    for (std::size_t k = 0; k < l.length(); ++k) {
      const Module& lo = l.cycle(k);
      const Module& hi = l.cycle(k + 1);
      if (rigid)
        for (const auto& g : A.generators) {
          auto e_lo = ext_dimensions(g, lo, n), e_hi = ext_dimensions(g, hi, n);
          for (std::size_t i = 1; i + 1 <= n; ++i) {
            ++s.r.checks;
            if (e_lo[i] != e_hi[i + 1])
              s.r.fail(label + ": dim Ext^" + std::to_string(i) + "(A,Z_" + std::to_string(k) + ")=" +
                           std::to_string(e_lo[i]) + " but dim Ext^" + std::to_string(i + 1) + "(A,Z_" +
                           std::to_string(k + 1) + ")=" + std::to_string(e_hi[i + 1]),
                       true);
          }
        }
      if (orth)
        for (const auto& g : B.generators) {
          auto e_hi = ext_dimensions(hi, g, n), e_lo = ext_dimensions(lo, g, n);
          for (std::size_t i = 1; i + 1 <= n; ++i) {
            ++s.r.checks;
            if (e_hi[i] != e_lo[i + 1])
              s.r.fail(label + ": dim Ext^" + std::to_string(i) + "(Z_" + std::to_string(k + 1) + ",B)=" +
                           std::to_string(e_hi[i]) + " but dim Ext^" + std::to_string(i + 1) + "(Z_" +
                           std::to_string(k) + ",B)=" + std::to_string(e_lo[i + 1]),
                       true);
          }
        }
    }
  }
  s.r.findings.push_back(std::to_string(s.r.checks) + " dimension equalities over " + std::to_string(ls.size()) + " loops");
}

inline std::vector<Module> non_class_part(const Module& m, const ClassSpec& a, std::vector<Module>& class_part,
                                          std::uint64_t cap) {
  std::vector<Module> rest;
  for (auto& sm : decompose(m, cap).summands) {
    if (in_add(sm.module, a, cap).is_yes()) class_part.push_back(sm.module);
    else rest.push_back(sm.module);
  }
  return rest;
}

inline void schanuel(Scope& s) {
  const ClassSpec& A = *s.ctx.a;
  const auto cap = s.bounds().hom_enum_cap;
  bool rigid1 = check_hereditary_pair(A, A, 1);
  s.r.hypotheses = rigid1;
  s.r.findings.push_back("Ext^1(A,A)=0: " + yn(rigid1));
  s.r.caveats.push_back("loop pairs come from search at different lengths");
  for (const auto& u : s.modules()) {
    std::vector<LoopComplex> ls;
    for (std::size_t len = 1; len <= std::max<std::size_t>(s.ctx.m, 2); ++len) {
      auto v = s.e.loop(u.module, A, len, {RequirementKind::None, A});
      if (v.is_yes() && is_hom_acyclic(*v.certificate, A, HomSide::FromClass)) ls.push_back(*v.certificate);
    }
    for (std::size_t i = 0; i < ls.size(); ++i)
      for (std::size_t j = i + 1; j < ls.size(); ++j) {
        std::size_t L = std::lcm(ls[i].length(), ls[j].length());
        LoopComplex p = splice_power(ls[i], L / ls[i].length()), q = splice_power(ls[j], L / ls[j].length());
        for (std::size_t k = 1; k <= L; ++k) {
          ++s.r.checks;
          std::vector<Module> pa, qa;
          non_class_part(p.cycle(k), A, pa, cap);
          non_class_part(q.cycle(k), A, qa, cap);
          // Z_k + (A-part of Z'_k) against Z'_k + (A-part of Z_k)
          std::vector<Module> lhs{p.cycle(k)}, rhs{q.cycle(k)};
          lhs.insert(lhs.end(), qa.begin(), qa.end());
          rhs.insert(rhs.end(), pa.begin(), pa.end());
          auto iso = is_isomorphic(direct_sum(lhs, u.module.algebra_ptr()).module,
                                   direct_sum(rhs, u.module.algebra_ptr()).module, cap);
          std::string label = u.name + " lengths " + std::to_string(ls[i].length()) + "," +
                              std::to_string(ls[j].length()) + " at Z_" + std::to_string(k);
          if (iso.is_unknown()) s.r.unresolved(label);
          else if (iso.is_no()) s.r.fail(label + ": cycles differ beyond A-summands", rigid1);
        }
      }
  }
  s.r.findings.push_back(std::to_string(s.r.checks) + " cycle comparisons");
}

inline void orth_equiv(Scope& s) {
  const ClassSpec& A = *s.ctx.a;
  const ClassSpec& B = *s.ctx.b;
  auto& ws = s.ws();
  IsoKey bk = s.class_key(B);
  auto hyp = ws.ext_vanishes_all(s.class_key(A), bk);
  s.r.hypotheses = hyp == true;
  s.r.findings.push_back("pd_B(A)=0: " + std::string(hyp ? yn(*hyp) : "unknown"));
  s.r.caveats.push_back("only Y = B is evaluated; B-hat is not enumerated");
  const std::size_t win = s.bounds().ext_window;
  s.r.caveats.push_back("clauses (e) and (f) search i within ext_window=" + std::to_string(win));
  for (const auto& [label, l] : s.loops(A, std::max<std::size_t>(s.ctx.m, 1))) {
    const std::size_t m = l.length();
    IsoKey mk = ws.key(l.base);
    std::vector<IsoKey> zk;
    for (std::size_t k = 1; k <= m; ++k) zk.push_back(ws.key(l.cycle(k)));
    Outcome a = of_opt(ws.ext_vanishes_all(mk, bk));
    Outcome b = Outcome::Yes, c = Outcome::No, d = Outcome::Yes;
    for (const auto& z : zk) {
      Outcome zp = of_opt(ws.ext_vanishes_all(z, bk));
      b = both(b, zp);
      if (zp == Outcome::Yes) c = Outcome::Yes;
      else if (zp == Outcome::Unknown && c == Outcome::No) c = Outcome::Unknown;
      d = both(d, of_bool(ws.ext(1, z, bk) == 0));
    }
    Outcome e = Outcome::No;
    for (std::size_t i = 1; i <= win && e != Outcome::Yes; ++i) {
      bool all = true;
      for (const auto& z : zk) all = all && ws.ext(i, z, bk) == 0;
      if (all) e = Outcome::Yes;
    }
    Outcome f = Outcome::No;
    for (std::size_t i = 0; i + m <= win && f != Outcome::Yes; ++i) {
      bool all = true;
      for (std::size_t k = 1; k <= m; ++k) all = all && ws.ext(i + k, mk, bk) == 0;
      if (all) f = Outcome::Yes;
    }
    const Outcome cl[] = {a, b, c, d, e, f};
    ++s.r.checks;
    bool unknown = false, differ = false;
    for (Outcome o : cl) {
      if (o == Outcome::Unknown) unknown = true;
      else if (o != cl[0] && cl[0] != Outcome::Unknown) differ = true;
    }
    std::string row = label + ": (a)..(f) = ";
    for (Outcome o : cl) row += std::string(to_string(o)) + " ";
    if (differ) s.r.fail(row, s.r.hypotheses);
    else if (unknown) s.r.unresolved(row);
  }
  s.r.findings.push_back(std::to_string(s.r.checks) + " loops compared");
}

inline void rigid_acyc(Scope& s) {
  const ClassSpec& A = *s.ctx.a;
  const std::size_t n = s.ctx.n;
  bool rigid = is_rigid(A, n);
  s.r.hypotheses = rigid;
  s.r.findings.push_back("A is " + std::to_string(n + 1) + "-rigid: " + yn(rigid));
  for (const auto& [label, l] : s.loops(A, std::max<std::size_t>(s.ctx.m, 1))) {
    ++s.r.checks;
    bool a = is_hom_acyclic(to_bounded_complex(l), A, HomSide::FromClass);
    bool b = true, c = true;
    for (std::size_t k = 1; k <= l.length(); ++k) {
      ClassSpec z = single("Z", l.cycle(k));
      b = b && check_hereditary_pair(A, z, n);
      c = c && check_hereditary_pair(A, z, 1);
    }
    bool d = check_hereditary_pair(A, single("M", l.base), n);
    std::string row = label + ": (a)=" + yn(a) + " (b)=" + yn(b) + " (c)=" + yn(c) + " (d)=" + yn(d);
    if (a != b || b != c) s.r.fail(row + ", (a)(b)(c) differ", rigid);
    if (c && !d) s.r.fail(row + ", (c) without (d)", rigid);
    if (l.length() <= n && d && !a) s.r.fail(row + ", (d) without (a) at length <= n", rigid);
  }
  s.r.findings.push_back(std::to_string(s.r.checks) + " loops checked");
}

inline void wsgp_eq_sgp(Scope& s) {
  const ClassSpec& A = *s.ctx.a;
  const ClassSpec& B = *s.ctx.b;
  auto pd = s.ws().ext_vanishes_all(s.class_key(A), s.class_key(B));
  s.r.findings.push_back("pd_B(A)=0: " + std::string(pd ? yn(*pd) : "unknown"));
  if (!pd) {
    s.r.unresolved("pd_B(A)=0 beyond the syzygy closure cap");
    return;
  }
  bool full = s.universe_has_summands_of(A);
  if (!full) s.r.caveats.push_back("universe lacks some summands of A; the converse is not binding");
  const auto& us = s.modules();
  for (std::size_t m : {s.ctx.m, std::size_t{2}}) {
    bool equal = true, unknown = false;
    for (const auto& u : us) {
      ++s.r.checks;
      Outcome gp = s.flag(u.module, A, B, m, RequirementKind::IntoB);
      Outcome wgp = s.flag(u.module, A, B, m, RequirementKind::CyclesPerpB);
      if (gp == Outcome::Unknown || wgp == Outcome::Unknown) unknown = true;
      else if (gp != wgp) equal = false;
    }
    std::string tag = "m=" + std::to_string(m);
    if (!equal) s.r.findings.push_back(tag + ": weak and plain classes differ on the universe");
    else if (!unknown) s.r.findings.push_back(tag + ": weak and plain classes agree on the universe");
    if (*pd && !equal) s.r.fail(tag + ": pd_B(A)=0 but the classes differ", true);
    else if (!*pd && equal && !unknown) s.r.fail(tag + ": pd_B(A)!=0 but the classes agree", full);
    else if (unknown && *pd) s.r.unresolved(tag + " class comparison");
    if (m == 2) break;
  }
}

inline void gp_cap_periodic(Scope& s) {
  const ClassSpec& A = *s.ctx.a;
  const ClassSpec& B = *s.ctx.b;
  auto pd = s.ws().ext_vanishes_all(s.class_key(A), s.class_key(B));
  s.r.hypotheses = pd == true;
  s.r.findings.push_back("pd_B(A)=0: " + std::string(pd ? yn(*pd) : "unknown"));
  s.r.caveats.push_back("WGP meet pi_m is not evaluated separately");
  const auto& us = s.modules();
  std::vector<Outcome> lhs, gp, wgp;
  for (const auto& u : us) {
    Outcome g = s.e.in_gp(u.module, A, B, {}).outcome;
    lhs.push_back(both(g, s.flag(u.module, A, B, s.ctx.m, RequirementKind::None)));
    gp.push_back(s.flag(u.module, A, B, s.ctx.m, RequirementKind::IntoB));
    wgp.push_back(s.flag(u.module, A, B, s.ctx.m, RequirementKind::CyclesPerpB));
  }
  s.compare("GP meet pi_m vs pi-GP", us, lhs, gp, s.r.hypotheses);
  s.compare("pi-WGP vs pi-GP", us, wgp, gp, s.r.hypotheses);
  s.r.findings.push_back("pi-GP_" + std::to_string(s.ctx.m) + " = " + s.members(us, gp));
}

inline void equiv_thm(Scope& s) {
  const ClassSpec& A = *s.ctx.a;
  const ClassSpec& B = *s.ctx.b;
  auto& ws = s.ws();
  IsoKey bk = s.class_key(B);
  auto pd = ws.ext_vanishes_all(s.class_key(A), bk);
  s.r.hypotheses = pd == true;
  s.r.findings.push_back("pd_B(A)=0: " + std::string(pd ? yn(*pd) : "unknown"));
  // B-hat restricted to the universe
  ClassSpec bhat{B.name + "^", B.generators};
  for (const auto& u : s.ctx.universe)
    if (resolution_dim(u.module, B, s.bounds().depth).is_yes()) bhat.generators.push_back(u.module);
  s.r.caveats.push_back("B-hat is restricted to universe members with a finite add(B)-resolution");
  s.r.caveats.push_back("clause (d) is checked on the add-closure reading only");
  const std::size_t m = s.ctx.m, win = s.bounds().ext_window;
  for (const auto& u : s.modules()) {
    ++s.r.checks;
    auto gp = s.e.loop(u.module, A, m, {RequirementKind::IntoB, B});
    Outcome a = gp.outcome;
    Outcome b = a;
    if (gp.is_yes()) {
      b = of_bool(is_hom_acyclic(*gp.certificate, bhat, HomSide::IntoClass));
      LoopComplex rot = rotate_sum(*gp.certificate);
      if (!loop_meets(rot, A, {RequirementKind::IntoB, B}, win))
        s.r.fail(u.name + ": (a) holds but the sum of cycles has no Hom(-,B)-acyclic length-1 loop", s.r.hypotheses);
    }
    Outcome periodic = s.flag(u.module, A, B, m, RequirementKind::None);
    Outcome c = periodic;
    if (periodic == Outcome::Yes) {
      IsoKey mk = ws.key(u.module);
      c = Outcome::Unknown;
      if (ws.ext_vanishes_all(mk, bk) == true) c = Outcome::Yes;
      for (std::size_t i = 0; i + m <= win && c != Outcome::Yes; ++i) {
        bool all = true;
        for (std::size_t k = 1; k <= m; ++k) all = all && ws.ext(k + i, mk, bk) == 0;
        if (all) c = Outcome::Yes;
      }
    }
    std::string row = u.name + ": (a)=" + to_string(a) + " (b)=" + to_string(b) + " (c)=" + to_string(c);
    const Outcome cl[] = {a, b, c};
    bool unknown = false, differ = false;
    Outcome ref = Outcome::Unknown;
    for (Outcome o : cl) {
      if (o == Outcome::Unknown) unknown = true;
      else if (ref == Outcome::Unknown) ref = o;
      else if (o != ref) differ = true;
    }
    if (differ) s.r.fail(row, s.r.hypotheses);
    else if (unknown) s.r.unresolved(row);
  }
}

inline void self_orth(Scope& s) {
  const ClassSpec& A = *s.ctx.a;
  const ClassSpec& B = *s.ctx.b;
  const std::size_t n = std::max(s.ctx.n, s.ctx.m);
  bool rigid = is_rigid(A, n);
  s.r.hypotheses = rigid;
  s.r.findings.push_back("A is " + std::to_string(n + 1) + "-rigid: " + yn(rigid));
  for (const auto& u : s.modules()) {
    auto self = ext_dimensions(u.module, u.module, n);
    auto vanish = [&](std::size_t top) {
      for (std::size_t i = 1; i <= top; ++i)
        if (self[i]) return false;
      return true;
    };
    Outcome in_a = s.in_class(u.module, A);
    for (std::size_t m = 1; m <= s.ctx.m; ++m)
      for (RequirementKind k : {RequirementKind::Proper, RequirementKind::ProperWeak}) {
        Outcome p = s.flag(u.module, A, B, m, k);
        if (p != Outcome::Yes) continue;
        ++s.r.checks;
        std::string row = u.name + " " + to_string(k) + " m=" + std::to_string(m) + ": dim Ext^1(M,M)=" +
                          std::to_string(self[1]) + ", in add(" + A.name + ")=" + to_string(in_a);
        s.r.findings.push_back(row);
        if (in_a == Outcome::Unknown) {
          s.r.unresolved(row);
          continue;
        }
        bool inside = in_a == Outcome::Yes;
        if (vanish(m) && !inside) s.r.fail(row + ": self-orthogonal up to m but not in A", rigid);
        if (inside != vanish(n) || inside != vanish(m)) s.r.fail(row + ": (a)(b)(c) differ", rigid);
      }
  }
  if (s.r.checks == 0) s.r.findings.push_back("no proper periodic module under test; vacuous");
}

inline void gcd_claim(Scope& s) {
  const ClassSpec& A = *s.ctx.a;
  const ClassSpec& B = *s.ctx.b;
  auto& ws = s.ws();
  bool projective_gens = true;
  for (auto id : ws.class_ids(A)) projective_gens = projective_gens && ws.is_projective_id(id);
  bool e_aa = check_hereditary_pair(A, A, 1), e_ab = check_hereditary_pair(A, B, 1);
  s.r.hypotheses = projective_gens && e_aa && e_ab;
  s.r.findings.push_back("generators projective (extension and epikernel closure): " + yn(projective_gens) +
                         ", Ext^1(A,A)=0: " + yn(e_aa) + ", Ext^1(A,B)=0: " + yn(e_ab));
  if (!projective_gens) s.r.caveats.push_back("closure under extensions and epikernels not verified");
  const std::size_t m = s.ctx.m, n = s.ctx.n, g = std::gcd(m, n);
  const auto& us = s.modules();
  std::vector<Outcome> at_mn, at_g, at_m1, at_1;
  for (const auto& u : us) {
    auto p = [&](std::size_t len) { return s.flag(u.module, A, B, len, RequirementKind::Proper); };
    Outcome pm = p(m), pn = p(n);
    at_mn.push_back(both(pm, pn));
    at_g.push_back(p(g));
    at_m1.push_back(both(pm, p(m + 1)));
    at_1.push_back(p(1));
    s.r.findings.push_back(u.name + ": proper at " + std::to_string(m) + "=" + to_string(pm) + ", at " +
                           std::to_string(n) + "=" + to_string(pn) + ", at gcd " + std::to_string(g) + "=" +
                           to_string(at_g.back()));
  }
  s.compare("pi^ppr_" + std::to_string(m) + " meet pi^ppr_" + std::to_string(n) + " vs pi^ppr_" + std::to_string(g), us,
            at_mn, at_g, s.r.hypotheses);
  s.compare("pi^ppr_" + std::to_string(m + 1) + " meet pi^ppr_" + std::to_string(m) + " vs pi^ppr_1", us, at_m1, at_1,
            s.r.hypotheses);
}

struct TiltConditions {
  Outcome cogenerator = Outcome::Unknown, generator = Outcome::Unknown, orthogonality = Outcome::Yes;
  bool holds() const {
    return cogenerator == Outcome::Yes && generator == Outcome::Yes && orthogonality == Outcome::Yes;
  }
};

inline TiltConditions tilt_conditions(Scope& s, const ClassSpec& T, const ClassSpec& X, std::size_t n) {
  auto& ws = s.ws();
  const auto cap = s.bounds().hom_enum_cap;
  TiltConditions c;
  IsoKey tk = s.class_key(T), xk = s.class_key(X);
  auto ind_x = detail::class_summands(X, cap);
  std::vector<Module> alpha, beta;
  bool alpha_known = true, beta_known = true;
  for (const auto& y : ind_x) {
    IsoKey yk = ws.key(y);
    auto r1 = ws.ext_vanishes_all(xk, yk), r2 = ws.ext_vanishes_all(tk, yk);
    if (!r1 || !r2) alpha_known = false;
    else if (*r1 && *r2) alpha.push_back(y);
    auto l1 = ws.ext_vanishes_all(yk, xk), l2 = ws.ext_vanishes_all(yk, tk);
    if (!l1 || !l2) beta_known = false;
    else if (*l1 && *l2) beta.push_back(y);
  }
  // alpha sits in the right Ext-perp of X, so any add-preenvelope decides the cogenerator condition
  bool cog = true, gen = true;
  for (const auto& y : ind_x) {
    Approximation env = add_preenvelope(y, alpha);
    if (!env.map.is_mono() || !in_add(cokernel(env.map).module, X, cap).is_yes()) cog = false;
    Approximation cov = add_precover(y, beta);
    if (!cov.map.is_epi() || !in_add(kernel(cov.map).module, X, cap).is_yes()) gen = false;
  }
  c.cogenerator = cog ? Outcome::Yes : (alpha_known ? Outcome::No : Outcome::Unknown);
  c.generator = gen ? Outcome::Yes : (beta_known ? Outcome::No : Outcome::Unknown);
  s.r.findings.push_back("(1) T = add(T): yes");
  s.r.findings.push_back("(2) alpha = " + std::to_string(alpha.size()) + " indecomposables, relative cogenerator: " +
                         to_string(c.cogenerator));
  s.r.findings.push_back("(3) beta = " + std::to_string(beta.size()) + " indecomposables, relative generator: " +
                         to_string(c.generator));
  s.r.findings.push_back("(4) functorial finiteness: assumed for add of finitely many modules");
  s.r.caveats.push_back("functorial finiteness of X is assumed, not checked");
  s.r.caveats.push_back("condition (5) is evaluated on the universe");
  for (const auto& u : s.ctx.universe) {
    Outcome in_x = s.in_class(u.module, X), in_t = s.in_class(u.module, T);
    ClassSpec uc = single(u.name, u.module);
    Outcome left = both(in_x, of_bool(check_hereditary_pair(uc, T, n)));
    Outcome right = both(in_x, of_bool(check_hereditary_pair(T, uc, n)));
    for (Outcome side : {left, right}) {
      if (side == Outcome::Unknown || in_t == Outcome::Unknown) c.orthogonality = both(c.orthogonality, Outcome::Unknown);
      else if (side != in_t) {
        c.orthogonality = Outcome::No;
        s.r.findings.push_back("(5) fails at " + u.name);
      }
    }
  }
  s.r.findings.push_back("(5) X meet the Ext-perps of T equals T: " + std::string(to_string(c.orthogonality)));
  return c;
}

inline void cluster_tilt(Scope& s) {
  auto c = tilt_conditions(s, *s.ctx.a, *s.ctx.x, s.ctx.n);
  ++s.r.checks;
  if (c.holds()) return;
  if (c.cogenerator == Outcome::No || c.generator == Outcome::No || c.orthogonality == Outcome::No)
    s.r.fail("not " + std::to_string(s.ctx.n + 1) + "-X-cluster tilting", false);
  else
    s.r.unresolved("cluster tilting conditions");
}

inline void ct_identities(Scope& s) {
  const ClassSpec& T = *s.ctx.a;
  const ClassSpec& X = *s.ctx.x;
  auto c = tilt_conditions(s, T, X, s.ctx.n);
  s.r.hypotheses = c.holds();
  const auto& us = s.ctx.universe;
  std::vector<Outcome> in_t, ppr, gp;
  for (const auto& u : us) {
    Outcome in_x = s.in_class(u.module, X);
    in_t.push_back(s.in_class(u.module, T));
    ppr.push_back(both(in_x, s.flag(u.module, T, T, s.ctx.m, RequirementKind::Proper)));
    gp.push_back(both(in_x, s.flag(u.module, T, T, s.ctx.m, RequirementKind::IntoB)));
  }
  s.compare("X meet pi-GP-ppr vs T", us, ppr, in_t, s.r.hypotheses);
  s.compare("X meet pi-GP vs T", us, gp, in_t, s.r.hypotheses);
  s.r.findings.push_back("T on the universe = " + s.members(us, in_t));
}

inline void omega_trace(Scope& s) {
  const ClassSpec& A = *s.ctx.a;
  const ClassSpec& B = *s.ctx.b;
  auto adm = s.e.admissibility(A, B);
  s.r.hypotheses = adm.admissible();
  s.r.findings.push_back("GP-admissible: " + yn(adm.admissible()) + " (" + adm.describe() + ")");
  if (!adm.admissible()) s.r.caveats.push_back("pair is not GP-admissible; equalities are reported, not binding");
  const auto& us = s.ctx.universe;
  std::vector<Outcome> omega, ppr, gp, full;
  for (const auto& u : us) {
    Outcome in_b = s.in_class(u.module, B);
    omega.push_back(both(s.in_class(u.module, A), in_b));
    ppr.push_back(both(in_b, s.flag(u.module, A, B, s.ctx.m, RequirementKind::Proper)));
    gp.push_back(both(in_b, s.flag(u.module, A, B, s.ctx.m, RequirementKind::IntoB)));
    full.push_back(both(in_b, s.e.in_gp(u.module, A, B, {}).outcome));
  }
  s.compare("pi-GP-ppr meet B vs omega", us, ppr, omega, s.r.hypotheses);
  s.compare("pi-GP meet B vs omega", us, gp, omega, s.r.hypotheses);
  s.compare("GP meet B vs omega", us, full, omega, s.r.hypotheses);
  s.r.findings.push_back("omega on the universe = " + s.members(us, omega));
  s.r.findings.push_back("pi-GP-ppr meet B = " + s.members(us, ppr) + ", pi-GP meet B = " + s.members(us, gp) +
                         ", GP meet B = " + s.members(us, full));
}

inline void gp_fixed(Scope& s) {
  const ClassSpec& A = *s.ctx.a;
  const ClassSpec& B = *s.ctx.b;
  auto adm = s.e.admissibility(A, B);
  s.r.hypotheses = adm.admissible();
  s.r.findings.push_back("GP-admissible: " + yn(adm.admissible()));
  s.r.caveats.push_back("the Gorenstein class and B-hat are restricted to the universe");
  const auto& us = s.ctx.universe;
  std::vector<Module> universe_mods;
  for (const auto& u : us) universe_mods.push_back(u.module);
  ClassSpec gpc{"GP", {}}, bhat{B.name + "^", B.generators};
  std::vector<Outcome> gp;
  for (const auto& u : us) {
    gp.push_back(s.e.in_gp(u.module, A, B, universe_mods).outcome);
    if (gp.back() == Outcome::Yes) gpc.generators.push_back(u.module);
    if (resolution_dim(u.module, B, s.bounds().depth).is_yes()) bhat.generators.push_back(u.module);
  }
  if (gpc.generators.empty()) {
    s.r.unresolved("no Gorenstein projective member in the universe");
    return;
  }
  std::vector<Outcome> over_gp, over_bhat, periodic_bhat;
  for (const auto& u : us) {
    over_gp.push_back(s.flag(u.module, gpc, B, s.ctx.m, RequirementKind::IntoB));
    over_bhat.push_back(s.e.in_gp(u.module, A, bhat, universe_mods).outcome);
    periodic_bhat.push_back(s.flag(u.module, gpc, bhat, s.ctx.m, RequirementKind::IntoB));
  }
  s.compare("pi-GP over (GP, B) vs GP", us, over_gp, gp, s.r.hypotheses);
  s.compare("GP over (A, B-hat) vs GP", us, over_bhat, gp, s.r.hypotheses);
  s.compare("pi-GP over (GP, B-hat) vs GP", us, periodic_bhat, gp, s.r.hypotheses);
  s.r.findings.push_back("GP on the universe = " + s.members(us, gp));
}

inline void add_pi1(Scope& s) {
  const ClassSpec& A = *s.ctx.a;
  const ClassSpec& B = *s.ctx.b;
  auto adm = s.e.admissibility(A, B);
  s.r.hypotheses = adm.admissible();
  s.r.findings.push_back("GP-admissible: " + yn(adm.admissible()));
  s.r.caveats.push_back("only eventually periodic members: the witness is the sum of the cycles of a found loop");
  std::vector<Module> universe_mods;
  for (const auto& u : s.ctx.universe) universe_mods.push_back(u.module);
  const auto cap = s.bounds().hom_enum_cap;
  for (const auto& u : s.modules()) {
    auto g = s.e.in_gp(u.module, A, B, universe_mods);
    if (g.is_unknown()) {
      s.r.unresolved(u.name);
      continue;
    }
    ++s.r.checks;
    if (g.is_no()) {
      // a length-1 loop at the module itself would contradict the No
      if (s.flag(u.module, A, B, 1, RequirementKind::IntoB) == Outcome::Yes)
        s.r.fail(u.name + ": not Gorenstein projective yet 1-periodic", s.r.hypotheses);
      continue;
    }
    LoopComplex rot = rotate_sum(g.certificate->loop);
    bool acyclic = verify_loop(rot).ok() && loop_meets(rot, A, {RequirementKind::IntoB, B}, s.bounds().ext_window);
    auto summand = in_add(u.module, ClassSpec{"sum", {rot.base}}, cap);
    s.r.findings.push_back(u.name + ": summand of a 1-periodic module of dimension " +
                           std::to_string(rot.base.total_dim()) + ": " + yn(acyclic && summand.is_yes()));
    if (summand.is_unknown()) s.r.unresolved(u.name + " summand test");
    else if (!acyclic || summand.is_no())
      s.r.fail(u.name + ": rotated loop does not exhibit it in add(pi-GP_1)", s.r.hypotheses);
  }
}

inline void ncotorsion(Scope& s) {
  const ClassSpec& A = *s.ctx.a;
  const ClassSpec& B = *s.ctx.b;
  const std::size_t n = s.ctx.n;
  const auto cap = s.bounds().hom_enum_cap;
  bool ext = check_hereditary_pair(A, B, n);
  s.r.findings.push_back("(1) B = add(B): yes");
  s.r.findings.push_back("(2) Ext^{1.." + std::to_string(n) + "}(A,B)=0: " + yn(ext));
  auto ind_b = detail::class_summands(B, cap);
  Outcome third = Outcome::Yes;
  for (const auto& u : s.ctx.universe) {
    Approximation env = add_preenvelope(u.module, ind_b);
    if (!env.map.is_mono()) {
      third = Outcome::No;
      s.r.findings.push_back("(3) " + u.name + " has no monomorphism into add(B)");
      continue;
    }
    Module c = cokernel(env.map).module;
    auto d = resolution_dim(c, A, n - 1, ResolutionSide::Coresolution, cap);
    if (!d.is_yes()) third = both(third, Outcome::Unknown);
  }
  s.r.caveats.push_back("condition (3) tries one add(B)-preenvelope of each universe member only");
  s.r.findings.push_back("(3) coresolving sequences on the universe: " + std::string(to_string(third)));
  bool rigid = is_rigid(A, n);
  Outcome conditions = both(of_bool(ext), third);
  s.r.hypotheses = conditions == Outcome::Yes && rigid;
  s.r.findings.push_back("A is " + std::to_string(n + 1) + "-rigid: " + yn(rigid));
  ++s.r.checks;
  if (conditions == Outcome::No) s.r.fail("not a right " + std::to_string(n) + "-cotorsion pair", false);
  else if (conditions == Outcome::Unknown) s.r.unresolved("right n-cotorsion conditions");
  const auto& us = s.ctx.universe;
  std::vector<Outcome> ppr, bgp;
  for (const auto& u : us) {
    ppr.push_back(s.flag(u.module, A, B, s.ctx.m, RequirementKind::Proper));
    bgp.push_back(both(s.in_class(u.module, B), s.flag(u.module, A, B, s.ctx.m, RequirementKind::IntoB)));
  }
  s.compare("pi-GP-ppr vs B meet pi-GP", us, ppr, bgp, s.r.hypotheses);
}

inline DimSup sup_named(const std::vector<std::pair<std::string, Verdict<std::size_t>>>& v) {
  return detail::sup_of(v, false);
}

inline void dim_equal(Scope& s) {
  const ClassSpec& A = *s.ctx.a;
  const ClassSpec& B = *s.ctx.b;
  const ClassSpec& Z = *s.ctx.z;
  const ClassSpec& W = *s.ctx.w;
  const auto depth = s.bounds().depth;
  auto gp_adm = s.e.admissibility(A, B);
  auto gi_adm = s.e.dual().admissibility(dualize(W), dualize(Z));
  s.r.findings.push_back("(A,B) GP-admissible: " + yn(gp_adm.admissible()) + "; (Z,W) GI-admissible: " +
                         yn(gi_adm.admissible()));
  std::vector<Module> mods;
  for (const auto& u : s.ctx.universe) mods.push_back(u.module);
  UniverseDims d = s.e.universe_dims(mods, A, B, Z, W);
  std::vector<std::pair<std::string, Verdict<std::size_t>>> gid_omega, id_omega, pd_nu, gpd_nu;
  ClassSpec omega{"omega", {}}, nu{"nu", {}};
  for (const auto& u : s.ctx.universe) {
    if (both(s.in_class(u.module, A), s.in_class(u.module, B)) == Outcome::Yes) omega.generators.push_back(u.module);
    if (both(s.in_class(u.module, Z), s.in_class(u.module, W)) == Outcome::Yes) nu.generators.push_back(u.module);
  }
  for (std::size_t i = 0; i < mods.size(); ++i) {
    const auto& u = s.ctx.universe[i];
    for (const auto& g : omega.generators)
      if (g == u.module) {
        gid_omega.push_back(d.gid[i]);
        id_omega.emplace_back(u.name, nu.generators.empty()
                                          ? Verdict<std::size_t>::unknown("nu is empty on the universe")
                                          : resolution_dim(u.module, nu, depth, ResolutionSide::Coresolution));
      }
    for (const auto& g : nu.generators)
      if (g == u.module) {
        gpd_nu.push_back(d.gpd[i]);
        pd_nu.emplace_back(u.name, omega.generators.empty()
                                       ? Verdict<std::size_t>::unknown("omega is empty on the universe")
                                       : resolution_dim(u.module, omega, depth, ResolutionSide::Resolution));
      }
  }
  // GP-hat = GI-check on the universe: finite Gpd exactly where Gid is finite
  bool hats_agree = true;
  for (std::size_t i = 0; i < mods.size(); ++i) {
    if (d.gpd[i].second.is_unknown() || d.gid[i].second.is_unknown()) {
      s.r.unresolved("finiteness of dimensions at " + d.gpd[i].first);
      hats_agree = false;
    } else if (d.gpd[i].second.is_yes() != d.gid[i].second.is_yes()) {
      hats_agree = false;
    }
  }
  s.r.hypotheses = gp_adm.admissible() && gi_adm.admissible() && hats_agree;
  s.r.findings.push_back("finite Gpd exactly where Gid is finite: " + yn(hats_agree));
  s.r.caveats.push_back("Setup existence hypotheses (coresolutions, products) are checked only through admissibility");
  const std::pair<std::string, DimSup> chain[] = {
      {"FGID", d.fgid},          {"Gid(omega)", sup_named(gid_omega)}, {"id_nu(omega)", sup_named(id_omega)},
      {"pd_omega(nu)", sup_named(pd_nu)}, {"Gpd(nu)", sup_named(gpd_nu)}, {"FGPD", d.fgpd}};
  std::string row;
  for (const auto& [name, v] : chain) row += (row.empty() ? "" : " = ") + name + ":" + v.text();
  s.r.findings.push_back(row);
  s.r.findings.push_back("gl.GPD=" + d.gl_gpd.text() + " gl.GID=" + d.gl_gid.text());
  for (const auto& [name, v] : chain) {
    ++s.r.checks;
    if (!v.exact) s.r.unresolved(name);
    else if (!chain[0].second.exact) continue;
    else if (!(v == chain[0].second)) s.r.fail(name + " differs from FGID", s.r.hypotheses);
  }
  // with every universe member of finite dimension on both sides, the global dimensions join the chain
  bool all_finite = hats_agree && !d.gl_gpd.infinite && !d.gl_gid.infinite && d.gl_gpd.exact && d.gl_gid.exact;
  if (all_finite) {
    ++s.r.checks;
    if (!(d.gl_gpd == d.gl_gid) || !(d.gl_gpd == d.fgpd))
      s.r.fail("gl.GPD, gl.GID and FGPD differ", s.r.hypotheses);
  }
}

}  // namespace claims_detail

inline ClaimReport verify_claim(const std::string& id, const ClaimContext& ctx, Engine& e) {
  const ClaimInfo& info = claim_info(id);
  for (const auto& f : info.needs) {
    const std::optional<ClassSpec>* slot = f == "a" ? &ctx.a : f == "b" ? &ctx.b : f == "z" ? &ctx.z
                                         : f == "w" ? &ctx.w : &ctx.x;
    if (!*slot) throw MissingContext(id, f);
  }
  if (!ctx.algebra) throw MissingContext(id, "algebra");
  if (ctx.universe.empty()) throw MissingContext(id, "universe");
  if (ctx.m == 0 || ctx.n == 0) throw std::invalid_argument("claim '" + id + "' needs m, n >= 1");
  ClaimReport r;
  r.claim = id;
  r.statement = info.statement;
  claims_detail::Scope s{e, ctx, r};
  using Fn = void (*)(claims_detail::Scope&);
  static const std::vector<std::pair<std::string, Fn>> table = {
      {"shifting", claims_detail::shifting},       {"schanuel", claims_detail::schanuel},
      {"orth-equiv", claims_detail::orth_equiv},   {"rigid-acyc", claims_detail::rigid_acyc},
      {"wsgp-eq-sgp", claims_detail::wsgp_eq_sgp}, {"gp-cap-periodic", claims_detail::gp_cap_periodic},
      {"equiv-thm", claims_detail::equiv_thm},     {"self-orth", claims_detail::self_orth},
      {"gcd", claims_detail::gcd_claim},           {"cluster-tilt", claims_detail::cluster_tilt},
      {"ct-identities", claims_detail::ct_identities}, {"omega-trace", claims_detail::omega_trace},
      {"gp-fixed", claims_detail::gp_fixed},       {"add-pi1", claims_detail::add_pi1},
      {"ncotorsion", claims_detail::ncotorsion},   {"dim-equal", claims_detail::dim_equal},
  };
  for (const auto& [name, fn] : table)
    if (name == id) fn(s);
  r.finish();
  return r;
}

}  // namespace gorenlab
