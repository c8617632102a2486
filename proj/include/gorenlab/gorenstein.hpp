#pragma once

#include <memory>
#include <string>
#include <vector>

#include "search.hpp"

namespace gorenlab {

// The nine membership flags, projective side first.
enum class Flag { Periodic, GP, WGP, GPProper, WGPProper, GI, WGI, GIProper, WGIProper };

inline const char* to_string(Flag f) {
  switch (f) {
    case Flag::Periodic: return "periodic";
    case Flag::GP: return "pi-GP";
    case Flag::WGP: return "pi-WGP";
    case Flag::GPProper: return "pi-GP-ppr";
    case Flag::WGPProper: return "pi-WGP-ppr";
    case Flag::GI: return "pi-GI";
    case Flag::WGI: return "pi-WGI";
    case Flag::GIProper: return "pi-GI-ppr";
    case Flag::WGIProper: return "pi-WGI-ppr";
  }
  return "?";
}

inline constexpr Flag all_flags[] = {Flag::Periodic, Flag::GP,  Flag::WGP,      Flag::GPProper, Flag::WGPProper,
                                     Flag::GI,       Flag::WGI, Flag::GIProper, Flag::WGIProper};

inline bool injective_side(Flag f) {
  return f == Flag::GI || f == Flag::WGI || f == Flag::GIProper || f == Flag::WGIProper;
}

// Requirement behind each projective-side flag.
inline RequirementKind requirement_of(Flag f) {
  switch (f) {
    case Flag::Periodic: return RequirementKind::None;
    case Flag::GP: case Flag::GI: return RequirementKind::IntoB;
    case Flag::WGP: case Flag::WGI: return RequirementKind::CyclesPerpB;
    case Flag::GPProper: case Flag::GIProper: return RequirementKind::Proper;
    case Flag::WGPProper: case Flag::WGIProper: return RequirementKind::ProperWeak;
  }
  return RequirementKind::None;
}

// Injective-side certificates are loops over the opposite algebra at the dual module.
struct MembershipReport {
  std::string module;
  std::string a, b;
  std::size_t length = 0;
  std::string bounds;
  std::map<Flag, Verdict<LoopComplex>> flags;
  std::vector<std::string> violations;

  const Verdict<LoopComplex>& at(Flag f) const { return flags.at(f); }
};

struct GorensteinWitness {
  LoopComplex loop;                 // Hom(-,B)-acyclic A-loop at the module, or at module + complement
  std::optional<Module> complement;
};

struct Admissibility {
  bool finite_sums = true;          // add-classes always are
  std::optional<bool> hereditary;   // Ext^{>=1}(A, B) = 0
  bool generates = false;           // every indecomposable projective lies in add(A)
  std::optional<bool> extension_closed;
  std::optional<bool> cogenerator;  // add(A) meet add(B) is a relative cogenerator in add(A)
  bool admissible() const {
    return hereditary == true && generates && extension_closed == true && cogenerator == true;
  }
  std::string describe() const;
};

// Resolution dimension over the universe, with Unknown and infinite members tracked.
struct DimSup {
  std::size_t value = 0;
  bool infinite = false;
  bool exact = true;   // false when some member was Unknown
  std::string text() const {
    if (infinite) return "inf";
    return (exact ? "" : ">=") + std::to_string(value);
  }
  bool operator==(const DimSup&) const = default;
};

struct UniverseDims {
  std::vector<std::pair<std::string, Verdict<std::size_t>>> gpd, gid;
  DimSup gl_gpd, gl_gid, fgpd, fgid;
};

namespace detail {

inline std::string class_names(const ClassSpec& c) {
  std::string s;
  for (const auto& g : c.generators) s += (s.empty() ? "" : "+") + (g.name().empty() ? std::string("?") : g.name());
  return s;
}

inline DimSup sup_of(const std::vector<std::pair<std::string, Verdict<std::size_t>>>& v, bool finite_only) {
  DimSup d;
  for (const auto& [name, x] : v) {
    if (x.is_yes()) {
      d.value = std::max(d.value, *x.certificate);
    } else if (x.is_no()) {
      if (!finite_only) d.infinite = true;
    } else {
      d.exact = false;
    }
  }
  return d;
}

}  // namespace detail

inline std::string Admissibility::describe() const {
  auto tri = [](const std::optional<bool>& b) { return b ? (*b ? "yes" : "no") : "unverified"; };
  return std::string("hereditary=") + tri(hereditary) + ", generating=" + (generates ? "yes" : "no") +
         ", extension-closed=" + tri(extension_closed) + ", cogenerator=" + tri(cogenerator);
}

// Caches for one algebra plus, on demand, its opposite.
class Engine {
 public:
  Engine(AlgebraPtr alg, SearchBounds bounds = SearchBounds::from_env())
      : ws_(std::make_unique<Workspace>(std::move(alg), bounds)), search_(std::make_unique<LoopSearch>(*ws_)) {}

  Workspace& workspace() { return *ws_; }
  LoopSearch& search() { return *search_; }
  const SearchBounds& bounds() const { return ws_->bounds(); }

  Engine& dual() {
    if (!dual_) dual_ = std::make_unique<Engine>(ws_->algebra()->opposite(), bounds());
    return *dual_;
  }

  // Loop search whose Yes certificates are re-checked with the homology kit alone.
  Verdict<LoopComplex> loop(const Module& m, const ClassSpec& a, std::size_t len, const Requirement& req) {
    auto v = search_->query(m, a, len, req);
    if (v.is_yes()) {
      std::string why = recheck(*v.certificate, m, a, req);
      if (!why.empty()) throw std::logic_error("loop certificate failed re-verification: " + why);
    }
    return v;
  }

  // Empty string when the loop is exact, closes at m, lives in add(A) and meets req.
  std::string recheck(const LoopComplex& l, const Module& m, const ClassSpec& a, const Requirement& req) {
    auto chk = verify_loop(l);
    if (!chk.ok()) return chk.detail;
    if (!(l.base == m)) return "loop is based elsewhere";
    if (!loop_in_class(l, a, bounds().hom_enum_cap)) return "a step object is outside add(" + a.name + ")";
    if (!loop_meets(l, a, req, bounds().ext_window)) return std::string("requirement ") + to_string(req.kind) + " fails";
    return {};
  }

  MembershipReport classify(const Module& m, const ClassSpec& a, const ClassSpec& b, std::size_t len) {
    MembershipReport r;
    r.module = m.name();
    r.a = a.name;
    r.b = b.name;
    r.length = len;
    r.bounds = bounds().describe();
    for (Flag f : all_flags) {
      if (!injective_side(f)) {
        r.flags[f] = loop(m, a, len, {requirement_of(f), b});
      } else {
        // M in pi-GI_(A,B,m) iff D M in pi-GP_(D B, D A, m) over the opposite algebra
        r.flags[f] = dual().loop(dualize(m), dualize(b), len, {requirement_of(f), dualize(a)});
      }
    }
    close_implications(r, m, a, b, dualize(m), dualize(a), dualize(b));
    return r;
  }

  // Semi-decision for membership in the (A,B)-Gorenstein projective class.
  Verdict<GorensteinWitness> in_gp(const Module& m, const ClassSpec& a, const ClassSpec& b,
                                   const std::vector<Module>& universe = {}) {
    using V = Verdict<GorensteinWitness>;
    const auto& gens = ws_->class_ids(a);
    if (m.is_zero()) return V::yes({loop(m, a, 1, {RequirementKind::IntoB, b}).certificate.value(), {}}, "zero module");
    if (!search_->embeds(m, gens))
      return V::no(Obstruction::NoEmbedding, "no monomorphism from " + name_of(m) + " into add(" + a.name + ")");
    IsoKey ak = sorted(gens), bk = sorted(ws_->class_ids(b));
    if (ws_->ext_vanishes_all(ak, bk) == true && ws_->ext_vanishes_all(ws_->key(m), bk) == false)
      return V::no(Obstruction::ExtNonvanishing,
                   name_of(m) + " is not in the left Ext-orthogonal of " + b.name + " while Ext^{>=1}(" + a.name +
                       ", " + b.name + ") = 0");
    for (std::size_t len = 1; len <= bounds().depth; ++len) {
      auto v = loop(m, a, len, {RequirementKind::IntoB, b});
      if (v.is_yes()) return V::yes({*v.certificate, {}}, "Hom(-," + b.name + ")-acyclic loop of length " + std::to_string(len));
    }
    for (const auto& u : universe) {
      if (u.is_zero()) continue;
      DirectSum s = direct_sum({m, u}, m.algebra_ptr());
      for (std::size_t len = 1; len <= bounds().depth; ++len) {
        auto v = loop(s.module, a, len, {RequirementKind::IntoB, b});
        if (v.is_yes())
          return V::yes({*v.certificate, u}, "summand of " + name_of(m) + " + " + name_of(u) +
                                                 ", which has a loop of length " + std::to_string(len));
      }
    }
    return V::unknown("no Hom(-," + b.name + ")-acyclic loop up to depth=" + std::to_string(bounds().depth) + "; " +
                      bounds().describe());
  }

  // Dual: D M over the opposite algebra with the pair (D W, D Z).
  Verdict<GorensteinWitness> in_gi(const Module& m, const ClassSpec& z, const ClassSpec& w,
                                   const std::vector<Module>& universe = {}) {
    std::vector<Module> du;
    for (const auto& u : universe) du.push_back(dualize(u));
    return dual().in_gp(dualize(m), dualize(w), dualize(z), du);
  }

  Admissibility admissibility(const ClassSpec& a, const ClassSpec& b) {
    Admissibility r;
    IsoKey ak = sorted(ws_->class_ids(a)), bk = sorted(ws_->class_ids(b));
    r.hereditary = ws_->ext_vanishes_all(ak, bk);
    r.generates = true;
    for (auto p : ws_->projective_ids())
      if (!ws_->key_in_class({p}, ws_->class_ids(a))) r.generates = false;
    // split self-extensions keep add(A) closed; otherwise left open
    if (ws_->ext_vanishes(ak, ak, 1)) r.extension_closed = true;
    std::vector<std::size_t> omega;
    for (auto x : ws_->class_ids(a))
      if (ws_->key_in_class({x}, ws_->class_ids(b))) omega.push_back(x);
    std::vector<Module> wgens;
    for (auto x : omega) wgens.push_back(ws_->rep(x));
    bool cog = true, sure = true;
    for (auto x : ws_->class_ids(a)) {
      Approximation env = add_preenvelope(ws_->rep(x), wgens);
      if (!env.map.is_mono()) {
        cog = false;
        break;
      }
      if (!ws_->key_in_class(ws_->key(cokernel(env.map).module), ws_->class_ids(a))) sure = false;
    }
    if (!cog) r.cogenerator = false;
    else if (sure) r.cogenerator = true;
    return r;
  }

  // resdim over the Gorenstein class, along kernels of add(A)-precovers.
  Verdict<std::size_t> gorenstein_pd(const Module& m, const ClassSpec& a, const ClassSpec& b,
                                     const std::vector<Module>& universe = {}) {
    using V = Verdict<std::size_t>;
    auto gens = detail::class_summands(a, bounds().hom_enum_cap);
    Module cur = m;
    std::vector<IsoKey> seen;
    bool all_no = true;
    for (std::size_t k = 0; k <= bounds().depth; ++k) {
      auto g = in_gp(cur, a, b, universe);
      if (g.is_yes()) return V::yes(k, k ? "kernel " + std::to_string(k) + " is Gorenstein projective" : "");
      if (g.is_unknown()) all_no = false;
      IsoKey key = ws_->key(cur);
      if (std::find(seen.begin(), seen.end(), key) != seen.end()) {
        if (all_no)
          return V::no(Obstruction::RepeatingSyzygy, "kernels repeat after " + std::to_string(k) +
                                                         " steps and none is Gorenstein projective (infinite)");
        break;
      }
      seen.push_back(key);
      Approximation ap = add_precover(cur, gens);
      if (!ap.map.is_epi()) return V::unknown("add(" + a.name + ")-precover of kernel " + std::to_string(k) + " is not epi");
      cur = kernel(ap.map).module;
    }
    return V::unknown("no Gorenstein projective kernel within depth=" + std::to_string(bounds().depth));
  }

  Verdict<std::size_t> gorenstein_id(const Module& m, const ClassSpec& z, const ClassSpec& w,
                                     const std::vector<Module>& universe = {}) {
    std::vector<Module> du;
    for (const auto& u : universe) du.push_back(dualize(u));
    return dual().gorenstein_pd(dualize(m), dualize(w), dualize(z), du);
  }

  UniverseDims universe_dims(const std::vector<Module>& universe, const ClassSpec& a, const ClassSpec& b,
                             const ClassSpec& z, const ClassSpec& w) {
    if (universe.empty()) throw std::invalid_argument("universe_dims needs a nonempty universe");
    UniverseDims r;
    for (const auto& u : universe) {
      r.gpd.emplace_back(name_of(u), gorenstein_pd(u, a, b, universe));
      r.gid.emplace_back(name_of(u), gorenstein_id(u, z, w, universe));
    }
    r.gl_gpd = detail::sup_of(r.gpd, false);
    r.gl_gid = detail::sup_of(r.gid, false);
    r.fgpd = detail::sup_of(r.gpd, true);
    r.fgid = detail::sup_of(r.gid, true);
    return r;
  }

 private:
  static std::string name_of(const Module& m) { return m.name().empty() ? std::string("M") : m.name(); }
  static IsoKey sorted(std::vector<std::size_t> v) {
    std::sort(v.begin(), v.end());
    return v;
  }

  // Yes on a stronger flag must show up on every weaker one; No on a weaker one settles the stronger.
  void close_implications(MembershipReport& r, const Module& m, const ClassSpec& a, const ClassSpec& b,
                          const Module& dm, const ClassSpec& da, const ClassSpec& db) {
    struct Edge {
      Flag strong, weak;
    };
    const Edge edges[] = {{Flag::WGPProper, Flag::WGP}, {Flag::WGPProper, Flag::GPProper}, {Flag::WGP, Flag::GP},
                          {Flag::GPProper, Flag::GP},   {Flag::GP, Flag::Periodic},       {Flag::WGIProper, Flag::WGI},
                          {Flag::WGIProper, Flag::GIProper}, {Flag::WGI, Flag::GI},       {Flag::GIProper, Flag::GI}};
    for (const auto& e : edges) {
      auto& s = r.flags[e.strong];
      auto& w = r.flags[e.weak];
      if (!s.is_yes() || w.is_yes()) continue;
      bool inj = injective_side(e.weak);
      Engine& eng = inj ? dual() : *this;
      Requirement req{requirement_of(e.weak), inj ? da : b};
      std::string why = eng.recheck(*s.certificate, inj ? dm : m, inj ? db : a, req);
      if (!why.empty() || w.is_no())
        r.violations.push_back(std::string(to_string(e.strong)) + " => " + to_string(e.weak) + ": " +
                               (why.empty() ? "weaker flag was No" : why));
      if (why.empty()) w = Verdict<LoopComplex>::yes(*s.certificate, std::string("implied by ") + to_string(e.strong));
    }
    for (auto it = std::rbegin(edges); it != std::rend(edges); ++it) {
      auto& s = r.flags[it->strong];
      const auto& w = r.flags[it->weak];
      if (w.is_no() && s.is_unknown())
        s = Verdict<LoopComplex>::no(w.obstruction, std::string("implied by ") + to_string(it->weak) + " = no: " + w.detail);
    }
  }

  std::unique_ptr<Workspace> ws_;
  std::unique_ptr<LoopSearch> search_;
  std::unique_ptr<Engine> dual_;
};

}  // namespace gorenlab
