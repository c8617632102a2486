#pragma once

#include <algorithm>
#include <cstdlib>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "decompose.hpp"
#include "module.hpp"

namespace gorenlab {

struct SearchBounds {
  std::size_t max_step_dim = 8;
  std::uint64_t hom_enum_cap = 1u << 20;
  std::size_t ext_window = 6;
  std::size_t depth = 6;
  std::uint64_t node_budget = 200000;

  // GORENLAB_EXT_WINDOW, GORENLAB_MAX_STEP_DIM, GORENLAB_HOM_ENUM_CAP,
  // GORENLAB_DEPTH, GORENLAB_NODE_BUDGET override the defaults.
  static SearchBounds from_env() {
    SearchBounds b;
    auto get = [](const char* k, auto& dst) {
      if (const char* v = std::getenv(k)) {
        char* end = nullptr;
        unsigned long long x = std::strtoull(v, &end, 10);
        if (end && *end == '\0' && end != v) dst = static_cast<std::remove_reference_t<decltype(dst)>>(x);
      }
    };
    get("GORENLAB_EXT_WINDOW", b.ext_window);
    get("GORENLAB_MAX_STEP_DIM", b.max_step_dim);
    get("GORENLAB_HOM_ENUM_CAP", b.hom_enum_cap);
    get("GORENLAB_DEPTH", b.depth);
    get("GORENLAB_NODE_BUDGET", b.node_budget);
    return b;
  }

  std::string describe() const {
    return "max_step_dim=" + std::to_string(max_step_dim) + ", hom_enum_cap=" + std::to_string(hom_enum_cap) +
           ", ext_window=" + std::to_string(ext_window) + ", depth=" + std::to_string(depth) +
           ", node_budget=" + std::to_string(node_budget);
  }
};

// Iso-class key: sorted multiset of indecomposable ids.
using IsoKey = std::vector<std::size_t>;

inline IsoKey key_union(IsoKey a, const IsoKey& b) {
  a.insert(a.end(), b.begin(), b.end());
  std::sort(a.begin(), a.end());
  return a;
}

// Per-algebra cache of indecomposables and the numbers computed from them.
// Not shared between threads.
class Workspace {
 public:
  Workspace(AlgebraPtr alg, SearchBounds bounds) : alg_(std::move(alg)), bounds_(bounds) {}

  const AlgebraPtr& algebra() const { return alg_; }
  const SearchBounds& bounds() const { return bounds_; }

  struct Entry {
    Module rep;
    bool certified = true;
  };

  struct Analysis {
    Decomposition decomposition;
    std::vector<std::size_t> ids;            // id of each summand
    std::vector<ModuleMap> to_rep;           // summand -> registry representative
    IsoKey key;
    bool certified = true;
  };

  const Analysis& analyze(const Module& m) {
    std::string ck = m.content_key();
    auto it = analyses_.find(ck);
    if (it != analyses_.end()) return it->second;
    Analysis a;
    a.decomposition = decompose(m, bounds_.hom_enum_cap);
    a.certified = a.decomposition.certified;
    for (const auto& s : a.decomposition.summands) {
      auto [id, iso] = register_indecomposable(s.module, a.decomposition.certified);
      a.ids.push_back(id);
      a.to_rep.push_back(std::move(iso));
      a.certified = a.certified && entries_[id].certified;
    }
    a.key = a.ids;
    std::sort(a.key.begin(), a.key.end());
    return analyses_.emplace(std::move(ck), std::move(a)).first->second;
  }

  IsoKey key(const Module& m) { return analyze(m).key; }

  const Module& rep(std::size_t id) const { return entries_[id].rep; }
  bool certified(std::size_t id) const { return entries_[id].certified; }
  std::size_t registry_size() const { return entries_.size(); }

  std::size_t total_dim(const IsoKey& k) const {
    std::size_t d = 0;
    for (auto id : k) d += entries_[id].rep.total_dim();
    return d;
  }
  std::vector<std::size_t> dims(const IsoKey& k) const {
    std::vector<std::size_t> d(alg_->vertex_count(), 0);
    for (auto id : k)
      for (std::size_t v = 0; v < d.size(); ++v) d[v] += entries_[id].rep.dim(v);
    return d;
  }

  Module realize(const IsoKey& k) {
    if (k.empty()) return Module::zero(alg_);
    std::vector<Module> parts;
    for (auto id : k) parts.push_back(entries_[id].rep);
    return direct_sum(parts, alg_).module;
  }

  // Isomorphism m -> n built from matched summands, when keys agree.
  std::optional<ModuleMap> isomorphism(const Module& m, const Module& n) {
    const Analysis& am = analyze(m);
    const Analysis& an = analyze(n);
    if (am.key != an.key) return std::nullopt;
    ModuleMap iso = ModuleMap::zero(m, n);
    std::vector<char> used(an.ids.size(), 0);
    for (std::size_t i = 0; i < am.ids.size(); ++i) {
      for (std::size_t j = 0; j < an.ids.size(); ++j) {
        if (used[j] || an.ids[j] != am.ids[i]) continue;
        used[j] = 1;
        ModuleMap f = compose(an.to_rep[j].inverse(), am.to_rep[i]);
        iso = iso + compose(an.decomposition.summands[j].inclusion, compose(f, am.decomposition.projections[i]));
        break;
      }
    }
    return iso;
  }

  std::size_t hom(std::size_t x, std::size_t y) {
    auto k = std::make_pair(x, y);
    auto it = hom_.find(k);
    if (it != hom_.end()) return it->second;
    std::size_t h = hom_dimension(entries_[x].rep, entries_[y].rep);
    hom_[k] = h;
    return h;
  }
  std::size_t hom(const IsoKey& a, const IsoKey& b) {
    std::size_t s = 0;
    for (auto x : a)
      for (auto y : b) s += hom(x, y);
    return s;
  }

  struct SyzygyKeys {
    IsoKey cover;
    IsoKey omega;
  };

  const SyzygyKeys& syzygy_keys(std::size_t id) {
    auto it = syz_.find(id);
    if (it != syz_.end()) return it->second;
    Syzygy s = syzygy(entries_[id].rep);
    SyzygyKeys out{key(s.cover.object), key(s.module)};
    return syz_.emplace(id, std::move(out)).first->second;
  }

  IsoKey omega(const IsoKey& k) {
    IsoKey out;
    for (auto id : k) out = key_union(out, syzygy_keys(id).omega);
    return out;
  }

  // dim Ext^1(X, N) = hom(Omega X, N) - hom(P0, N) + hom(X, N)
  std::size_t ext1(std::size_t x, std::size_t y) {
    auto k = std::make_pair(x, y);
    auto it = ext1_.find(k);
    if (it != ext1_.end()) return it->second;
    const SyzygyKeys& s = syzygy_keys(x);
    std::size_t v = hom(s.omega, IsoKey{y}) + hom(x, y) - hom(s.cover, IsoKey{y});
    ext1_[k] = v;
    return v;
  }

  std::size_t ext(std::size_t i, const IsoKey& a, const IsoKey& b) {
    if (i == 0) return hom(a, b);
    IsoKey cur = a;
    for (std::size_t k = 1; k < i; ++k) cur = omega(cur);
    std::size_t s = 0;
    for (auto x : cur)
      for (auto y : b) s += ext1(x, y);
    return s;
  }

  // Ext^i(a, b) = 0 for 1 <= i <= n.
  bool ext_vanishes(const IsoKey& a, const IsoKey& b, std::size_t n) {
    IsoKey cur = a;
    for (std::size_t i = 1; i <= n; ++i) {
      for (auto x : cur)
        for (auto y : b)
          if (ext1(x, y)) return false;
      if (i < n) cur = omega(cur);
      if (cur.empty()) return true;
    }
    return true;
  }

  // Every indecomposable summand of Omega^k x, k >= 0.  Empty optional when more than cap ids show up.
  const std::optional<std::vector<std::size_t>>& syzygy_closure(std::size_t x, std::size_t cap = 64) {
    auto it = closure_.find(x);
    if (it != closure_.end()) return it->second;
    std::vector<std::size_t> seen{x};
    std::optional<std::vector<std::size_t>> out;
    for (std::size_t i = 0; i < seen.size(); ++i) {
      if (seen.size() > cap) break;
      for (auto y : syzygy_keys(seen[i]).omega)
        if (std::find(seen.begin(), seen.end(), y) == seen.end()) seen.push_back(y);
    }
    if (seen.size() <= cap) {
      std::sort(seen.begin(), seen.end());
      out = std::move(seen);
    }
    return closure_.emplace(x, std::move(out)).first->second;
  }

  // Ext^i(a, b) = 0 for every i >= 1, decided on the syzygy closure of a.
  // Empty when some closure is too large to enumerate.
  std::optional<bool> ext_vanishes_all(const IsoKey& a, const IsoKey& b) {
    bool unknown = false;
    for (auto x : a) {
      const auto& c = syzygy_closure(x);
      if (!c) {
        unknown = true;
        continue;
      }
      for (auto y : *c)
        for (auto z : b)
          if (ext1(y, z)) return false;
    }
    if (unknown) return std::nullopt;
    return true;
  }

  // Indecomposable summand ids of a class, in generator order, deduplicated.
  const std::vector<std::size_t>& class_ids(const ClassSpec& c) {
    std::string ck;
    for (const auto& g : c.generators) ck += g.content_key() + "|";
    auto it = classes_.find(ck);
    if (it != classes_.end()) return it->second;
    std::vector<std::size_t> ids;
    for (const auto& g : c.generators) {
      if (!g.algebra().same_as(*alg_)) throw AlgebraMismatch("class '" + c.name + "' lives over another algebra");
      for (auto id : analyze(g).ids)
        if (std::find(ids.begin(), ids.end(), id) == ids.end()) ids.push_back(id);
    }
    return classes_.emplace(std::move(ck), std::move(ids)).first->second;
  }

  bool class_certified(const ClassSpec& c) {
    for (auto id : class_ids(c))
      if (!certified(id)) return false;
    return true;
  }

  bool key_in_class(const IsoKey& k, const std::vector<std::size_t>& ids) const {
    for (auto x : k)
      if (std::find(ids.begin(), ids.end(), x) == ids.end()) return false;
    return true;
  }

  std::vector<std::size_t> projective_ids() {
    if (proj_ids_.empty())
      for (std::size_t v = 0; v < alg_->vertex_count(); ++v) proj_ids_.push_back(analyze(projective(alg_, v)).ids.at(0));
    return proj_ids_;
  }
  bool is_projective_id(std::size_t id) {
    auto p = projective_ids();
    return std::find(p.begin(), p.end(), id) != p.end();
  }
  std::vector<std::size_t> injective_ids() {
    if (inj_ids_.empty())
      for (std::size_t v = 0; v < alg_->vertex_count(); ++v) inj_ids_.push_back(analyze(injective(alg_, v)).ids.at(0));
    return inj_ids_;
  }
  bool is_injective_id(std::size_t id) {
    auto p = injective_ids();
    return std::find(p.begin(), p.end(), id) != p.end();
  }

 private:
  std::pair<std::size_t, ModuleMap> register_indecomposable(const Module& x, bool certified) {
    auto& bucket = by_dims_[x.dims()];
    for (auto id : bucket) {
      if (!entries_[id].certified) continue;
      if (auto f = indecomposable_iso(x, entries_[id].rep)) return {id, *f};
    }
    std::size_t id = entries_.size();
    Module rep = x;
    rep.set_name("X" + std::to_string(id));
    entries_.push_back({rep, certified});
    bucket.push_back(id);
    return {id, ModuleMap::identity(x)};
  }

  AlgebraPtr alg_;
  SearchBounds bounds_;
  std::vector<Entry> entries_;
  std::map<std::vector<std::size_t>, std::vector<std::size_t>> by_dims_;
  std::unordered_map<std::string, Analysis> analyses_;
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> hom_;
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> ext1_;
  std::map<std::size_t, SyzygyKeys> syz_;
  std::map<std::size_t, std::optional<std::vector<std::size_t>>> closure_;
  std::unordered_map<std::string, std::vector<std::size_t>> classes_;
  std::vector<std::size_t> proj_ids_, inj_ids_;
};

}  // namespace gorenlab
