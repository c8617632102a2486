#pragma once

#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "linalg.hpp"
#include "quiver.hpp"

namespace gorenlab {

// Covariant representation: one space per vertex, one matrix per arrow.
// The matrix of a: i -> j has shape dims[j] x dims[i].
class Module {
 public:
  Module() = default;
  Module(AlgebraPtr alg, std::vector<std::size_t> dims, std::vector<Matrix> action, std::string name = {})
      : alg_(std::move(alg)), dims_(std::move(dims)), action_(std::move(action)), name_(std::move(name)) {
    const Quiver& q = alg_->quiver();
    if (dims_.size() != q.vertices.size()) throw DimensionMismatch("module: wrong number of vertex dimensions");
    if (action_.size() != q.arrows.size()) throw DimensionMismatch("module: wrong number of arrow matrices");
    for (std::size_t a = 0; a < q.arrows.size(); ++a) {
      const Matrix& m = action_[a];
      if (m.rows() != dims_[q.arrows[a].target] || m.cols() != dims_[q.arrows[a].source])
        throw DimensionMismatch("module: arrow '" + q.arrows[a].label + "' has shape " + m.shape());
      if (m.prime() != alg_->prime()) throw DimensionMismatch("module: matrix over the wrong field");
    }
  }

  static Module zero(const AlgebraPtr& alg) {
    std::vector<Matrix> act;
    for (std::size_t a = 0; a < alg->arrow_count(); ++a) act.emplace_back(0, 0, alg->prime());
    return Module(alg, std::vector<std::size_t>(alg->vertex_count(), 0), std::move(act));
  }

  const AlgebraPtr& algebra_ptr() const { return alg_; }
  const PathAlgebra& algebra() const { return *alg_; }
  std::uint32_t prime() const { return alg_->prime(); }
  const std::vector<std::size_t>& dims() const { return dims_; }
  std::size_t dim(std::size_t v) const { return dims_[v]; }
  std::size_t total_dim() const { return std::accumulate(dims_.begin(), dims_.end(), std::size_t{0}); }
  bool is_zero() const { return total_dim() == 0; }
  const Matrix& action(std::size_t a) const { return action_[a]; }
  const std::vector<Matrix>& actions() const { return action_; }
  const std::string& name() const { return name_; }
  void set_name(std::string n) { name_ = std::move(n); }

  Matrix path_action(const Path& p) const {
    Matrix r = Matrix::identity(dims_[p.start], prime());
    for (auto a : p.arrows) r = action_[a] * r;
    return r;
  }

  bool satisfies_relations() const {
    const Quiver& q = alg_->quiver();
    for (const auto& rel : alg_->presentation().relations) {
      const Path& p0 = rel.terms.front().path;
      Matrix sum(dims_[p0.end(q)], dims_[p0.start], prime());
      for (const auto& t : rel.terms) sum = sum + path_action(t.path).scaled(t.coeff);
      if (!sum.is_zero()) return false;
    }
    return true;
  }

  bool same_algebra(const Module& o) const { return alg_->same_as(*o.alg_); }

  bool operator==(const Module& o) const {
    return same_algebra(o) && dims_ == o.dims_ && action_ == o.action_;
  }

  // Exact byte key of the representation, for caches.
  std::string content_key() const {
    std::string k;
    auto put = [&k](std::uint64_t v) { k.append(reinterpret_cast<const char*>(&v), sizeof v); };
    for (auto d : dims_) put(d);
    for (const auto& m : action_)
      for (auto x : m.data()) put(x);
    return k;
  }

 private:
  AlgebraPtr alg_;
  std::vector<std::size_t> dims_;
  std::vector<Matrix> action_;
  std::string name_;
};

inline void require_same_algebra(const Module& a, const Module& b, const char* what) {
  if (!a.same_algebra(b)) throw AlgebraMismatch(std::string(what) + ": modules over different algebras");
}

// Vertexwise linear map source -> target; block v has shape target_v x source_v.
struct ModuleMap {
  Module source;
  Module target;
  std::vector<Matrix> blocks;

  static ModuleMap zero(const Module& s, const Module& t) {
    std::vector<Matrix> b;
    for (std::size_t v = 0; v < s.dims().size(); ++v) b.emplace_back(t.dim(v), s.dim(v), s.prime());
    return {s, t, std::move(b)};
  }
  static ModuleMap identity(const Module& m) {
    std::vector<Matrix> b;
    for (std::size_t v = 0; v < m.dims().size(); ++v) b.push_back(Matrix::identity(m.dim(v), m.prime()));
    return {m, m, std::move(b)};
  }

  bool is_homomorphism() const {
    const Quiver& q = source.algebra().quiver();
    for (std::size_t a = 0; a < q.arrows.size(); ++a) {
      const auto& ar = q.arrows[a];
      if (target.action(a) * blocks[ar.source] != blocks[ar.target] * source.action(a)) return false;
    }
    return true;
  }
  std::size_t rank() const {
    std::size_t r = 0;
    for (const auto& b : blocks) r += gorenlab::rank(b);
    return r;
  }
  bool is_mono() const {
    for (std::size_t v = 0; v < blocks.size(); ++v)
      if (gorenlab::rank(blocks[v]) != source.dim(v)) return false;
    return true;
  }
  bool is_epi() const {
    for (std::size_t v = 0; v < blocks.size(); ++v)
      if (gorenlab::rank(blocks[v]) != target.dim(v)) return false;
    return true;
  }
  bool is_iso() const { return source.dims() == target.dims() && is_mono(); }
  bool is_zero() const {
    for (const auto& b : blocks)
      if (!b.is_zero()) return false;
    return true;
  }

  ModuleMap inverse() const {
    if (!is_iso()) throw std::domain_error("inverse of a non-isomorphism");
    std::vector<Matrix> b;
    for (const auto& m : blocks) b.push_back(gorenlab::inverse(m));
    return {target, source, std::move(b)};
  }

  ModuleMap operator+(const ModuleMap& o) const {
    ModuleMap r = *this;
    for (std::size_t v = 0; v < blocks.size(); ++v) r.blocks[v] = blocks[v] + o.blocks[v];
    return r;
  }
  ModuleMap scaled(Scalar c) const {
    ModuleMap r = *this;
    for (auto& b : r.blocks) b = b.scaled(c);
    return r;
  }

  // Concatenated row-major entries of every block.
  Vector flatten() const {
    Vector out;
    for (const auto& b : blocks) out.insert(out.end(), b.data().begin(), b.data().end());
    return out;
  }
};

// g o f
inline ModuleMap compose(const ModuleMap& g, const ModuleMap& f) {
  if (f.target.dims() != g.source.dims()) throw DimensionMismatch("compose: incompatible maps");
  std::vector<Matrix> b;
  for (std::size_t v = 0; v < f.blocks.size(); ++v) b.push_back(g.blocks[v] * f.blocks[v]);
  return {f.source, g.target, std::move(b)};
}

// ---------------------------------------------------------------- standard modules

inline Module projective(const AlgebraPtr& alg, std::size_t v) {
  const std::size_t n = alg->vertex_count();
  const Quiver& q = alg->quiver();
  std::vector<std::size_t> dims(n);
  for (std::size_t w = 0; w < n; ++w) dims[w] = alg->basis_between(v, w).size();
  std::vector<Matrix> act;
  for (std::size_t a = 0; a < q.arrows.size(); ++a) {
    std::size_t s = q.arrows[a].source, t = q.arrows[a].target;
    const auto& from = alg->basis_between(v, s);
    const auto& to = alg->basis_between(v, t);
    Matrix m(to.size(), from.size(), alg->prime());
    for (std::size_t j = 0; j < from.size(); ++j) {
      const Vector& c = alg->times_arrow(from[j], a);
      for (std::size_t i = 0; i < to.size(); ++i) m(i, j) = c[to[i]];
    }
    act.push_back(std::move(m));
  }
  return Module(alg, dims, std::move(act), "P(" + q.vertices[v] + ")");
}

inline Module simple(const AlgebraPtr& alg, std::size_t v) {
  std::vector<std::size_t> dims(alg->vertex_count(), 0);
  dims[v] = 1;
  std::vector<Matrix> act;
  for (const auto& a : alg->quiver().arrows) act.emplace_back(dims[a.target], dims[a.source], alg->prime());
  return Module(alg, dims, std::move(act), "S(" + alg->quiver().vertices[v] + ")");
}

// Module over the opposite algebra with transposed action.
inline Module dualize(const Module& m) {
  AlgebraPtr op = m.algebra().opposite();
  std::vector<Matrix> act;
  for (const auto& x : m.actions()) act.push_back(x.transpose());
  std::string nm = m.name().empty() ? std::string() : "D" + m.name();
  if (nm.size() > 2 && nm.compare(0, 2, "DD") == 0) nm = nm.substr(2);
  return Module(op, m.dims(), std::move(act), nm);
}

// D(f): D(target) -> D(source).
inline ModuleMap dualize(const ModuleMap& f) {
  std::vector<Matrix> b;
  for (const auto& x : f.blocks) b.push_back(x.transpose());
  return {dualize(f.target), dualize(f.source), std::move(b)};
}

inline Module injective(const AlgebraPtr& alg, std::size_t v) {
  Module d = dualize(projective(alg->opposite(), v));
  Module r(alg, d.dims(), d.actions(), "I(" + alg->quiver().vertices[v] + ")");
  return r;
}

inline Module regular_module(const AlgebraPtr& alg);

// ---------------------------------------------------------------- Hom

namespace detail {

inline std::vector<std::size_t> hom_offsets(const Module& m, const Module& n) {
  std::vector<std::size_t> off(m.dims().size() + 1, 0);
  for (std::size_t v = 0; v < m.dims().size(); ++v) off[v + 1] = off[v] + n.dim(v) * m.dim(v);
  return off;
}

// Linear system whose kernel is Hom(m, n): N_a f_s - f_t M_a = 0.
inline Matrix hom_system(const Module& m, const Module& n) {
  const Quiver& q = m.algebra().quiver();
  auto off = hom_offsets(m, n);
  std::size_t rows = 0;
  for (const auto& a : q.arrows) rows += n.dim(a.target) * m.dim(a.source);
  Matrix sys(rows, off.back(), m.prime());
  const PrimeField& F = m.algebra().field();
  std::size_t row = 0;
  for (std::size_t ai = 0; ai < q.arrows.size(); ++ai) {
    const auto& a = q.arrows[ai];
    const std::size_t s = a.source, t = a.target;
    const Matrix& Na = n.action(ai);
    const Matrix& Ma = m.action(ai);
    for (std::size_t r = 0; r < n.dim(t); ++r)
      for (std::size_t c = 0; c < m.dim(s); ++c, ++row) {
        for (std::size_t k = 0; k < n.dim(s); ++k)
          if (Na(r, k)) sys(row, off[s] + k * m.dim(s) + c) = F.add(sys(row, off[s] + k * m.dim(s) + c), Na(r, k));
        for (std::size_t k = 0; k < m.dim(t); ++k)
          if (Ma(k, c)) sys(row, off[t] + r * m.dim(t) + k) = F.sub(sys(row, off[t] + r * m.dim(t) + k), Ma(k, c));
      }
  }
  return sys;
}

inline ModuleMap unflatten(const Module& m, const Module& n, const Vector& x) {
  auto off = hom_offsets(m, n);
  std::vector<Matrix> b;
  for (std::size_t v = 0; v < m.dims().size(); ++v) {
    Matrix blk(n.dim(v), m.dim(v), m.prime());
    for (std::size_t i = 0; i < n.dim(v); ++i)
      for (std::size_t j = 0; j < m.dim(v); ++j) blk(i, j) = x[off[v] + i * m.dim(v) + j];
    b.push_back(std::move(blk));
  }
  return {m, n, std::move(b)};
}

}  // namespace detail

inline std::vector<ModuleMap> hom_basis(const Module& m, const Module& n) {
  require_same_algebra(m, n, "hom_basis");
  Matrix sys = detail::hom_system(m, n);
  Matrix K = kernel_matrix(sys);
  std::vector<ModuleMap> out;
  for (std::size_t j = 0; j < K.cols(); ++j) out.push_back(detail::unflatten(m, n, K.column(j)));
  return out;
}

inline std::size_t hom_dimension(const Module& m, const Module& n) {
  require_same_algebra(m, n, "hom_dimension");
  Matrix sys = detail::hom_system(m, n);
  return sys.cols() - rank(sys);
}

// Coordinates of a homomorphism in a hom basis.
inline Vector hom_coordinates(const std::vector<ModuleMap>& basis, const ModuleMap& f) {
  Vector target = f.flatten();
  std::vector<Vector> cols;
  for (const auto& b : basis) cols.push_back(b.flatten());
  Matrix B = Matrix::from_columns(cols, target.size(), f.source.prime());
  Vector x;
  if (!solve(B, target, x)) throw std::domain_error("hom_coordinates: map not in span");
  return x;
}

// ---------------------------------------------------------------- sub and quotient

struct Submodule {
  Module module;
  ModuleMap inclusion;
};

struct Quotient {
  Module module;
  ModuleMap projection;
};

// basis[v]: columns spanning a submodule at vertex v (full column rank).
inline Submodule submodule(const Module& m, const std::vector<Matrix>& basis) {
  const Quiver& q = m.algebra().quiver();
  std::vector<std::size_t> dims;
  std::vector<Matrix> linv;
  for (std::size_t v = 0; v < basis.size(); ++v) {
    dims.push_back(basis[v].cols());
    linv.push_back(left_inverse(basis[v]));
  }
  std::vector<Matrix> act;
  for (std::size_t a = 0; a < q.arrows.size(); ++a) {
    std::size_t s = q.arrows[a].source, t = q.arrows[a].target;
    act.push_back(linv[t] * (m.action(a) * basis[s]));
  }
  Module sub(m.algebra_ptr(), dims, std::move(act));
  ModuleMap inc{sub, m, basis};
  return {sub, inc};
}

inline Quotient quotient(const Module& m, const std::vector<Matrix>& basis) {
  const Quiver& q = m.algebra().quiver();
  std::vector<Matrix> proj, lift;
  std::vector<std::size_t> dims;
  for (std::size_t v = 0; v < basis.size(); ++v) {
    auto comp = complement_coordinates(basis[v]);
    Matrix E(m.dim(v), comp.size(), m.prime());
    for (std::size_t k = 0; k < comp.size(); ++k) E(comp[k], k) = 1;
    Matrix T = hstack({basis[v], E}, m.dim(v), m.prime());
    Matrix Ti = inverse(T);
    proj.push_back(Ti.block(basis[v].cols(), 0, comp.size(), m.dim(v)));
    lift.push_back(E);
    dims.push_back(comp.size());
  }
  std::vector<Matrix> act;
  for (std::size_t a = 0; a < q.arrows.size(); ++a) {
    std::size_t s = q.arrows[a].source, t = q.arrows[a].target;
    act.push_back(proj[t] * (m.action(a) * lift[s]));
  }
  Module quo(m.algebra_ptr(), dims, std::move(act));
  ModuleMap pr{m, quo, proj};
  return {quo, pr};
}

inline Submodule kernel(const ModuleMap& f) {
  std::vector<Matrix> basis;
  for (const auto& b : f.blocks) basis.push_back(kernel_matrix(b));
  return submodule(f.source, basis);
}

inline Submodule image(const ModuleMap& f) {
  std::vector<Matrix> basis;
  for (const auto& b : f.blocks) basis.push_back(canonical_column_space(b));
  return submodule(f.target, basis);
}

inline Quotient cokernel(const ModuleMap& f) {
  std::vector<Matrix> basis;
  for (const auto& b : f.blocks) basis.push_back(canonical_column_space(b));
  return quotient(f.target, basis);
}

// ---------------------------------------------------------------- sums

struct DirectSum {
  Module module;
  std::vector<ModuleMap> injections;
  std::vector<ModuleMap> projections;
};

inline DirectSum direct_sum(const std::vector<Module>& parts, const AlgebraPtr& alg) {
  const Quiver& q = alg->quiver();
  const std::size_t n = alg->vertex_count();
  std::vector<std::size_t> dims(n, 0);
  for (const auto& p : parts) {
    if (!p.algebra().same_as(*alg)) throw AlgebraMismatch("direct_sum: modules over different algebras");
    for (std::size_t v = 0; v < n; ++v) dims[v] += p.dim(v);
  }
  std::vector<Matrix> act;
  for (std::size_t a = 0; a < q.arrows.size(); ++a) {
    std::size_t s = q.arrows[a].source, t = q.arrows[a].target;
    Matrix m(dims[t], dims[s], alg->prime());
    std::size_t r = 0, c = 0;
    for (const auto& p : parts) {
      m.set_block(r, c, p.action(a));
      r += p.dim(t);
      c += p.dim(s);
    }
    act.push_back(std::move(m));
  }
  std::string nm;
  for (const auto& p : parts) {
    if (!nm.empty()) nm += "+";
    nm += p.name().empty() ? "?" : p.name();
  }
  Module sum(alg, dims, std::move(act), parts.empty() ? "0" : nm);
  DirectSum out{sum, {}, {}};
  std::vector<std::size_t> offset(n, 0);
  for (const auto& p : parts) {
    std::vector<Matrix> inj, pr;
    for (std::size_t v = 0; v < n; ++v) {
      Matrix i(dims[v], p.dim(v), alg->prime());
      Matrix j(p.dim(v), dims[v], alg->prime());
      for (std::size_t k = 0; k < p.dim(v); ++k) {
        i(offset[v] + k, k) = 1;
        j(k, offset[v] + k) = 1;
      }
      inj.push_back(std::move(i));
      pr.push_back(std::move(j));
      offset[v] += p.dim(v);
    }
    out.injections.push_back({p, sum, std::move(inj)});
    out.projections.push_back({sum, p, std::move(pr)});
  }
  return out;
}

inline DirectSum direct_sum(const std::vector<Module>& parts) {
  if (parts.empty()) throw std::invalid_argument("direct_sum of no modules needs an algebra");
  return direct_sum(parts, parts.front().algebra_ptr());
}

inline Module regular_module(const AlgebraPtr& alg) {
  std::vector<Module> ps;
  for (std::size_t v = 0; v < alg->vertex_count(); ++v) ps.push_back(projective(alg, v));
  Module m = direct_sum(ps, alg).module;
  m.set_name("A");
  return m;
}

// Map between direct sums given by a matrix of component maps: entry (i, j)
// goes from source summand j to target summand i.
inline ModuleMap block_map(const DirectSum& src, const DirectSum& tgt,
                           const std::vector<std::vector<std::optional<ModuleMap>>>& comp) {
  ModuleMap r = ModuleMap::zero(src.module, tgt.module);
  for (std::size_t i = 0; i < comp.size(); ++i)
    for (std::size_t j = 0; j < comp[i].size(); ++j)
      if (comp[i][j]) r = r + compose(tgt.injections[i], compose(*comp[i][j], src.projections[j]));
  return r;
}

// ---------------------------------------------------------------- radical, top, socle

inline std::vector<Matrix> radical_basis(const Module& m) {
  const Quiver& q = m.algebra().quiver();
  std::vector<Matrix> out;
  for (std::size_t v = 0; v < m.dims().size(); ++v) {
    std::vector<Matrix> imgs;
    for (std::size_t a = 0; a < q.arrows.size(); ++a)
      if (q.arrows[a].target == v) imgs.push_back(m.action(a));
    Matrix all = hstack(imgs, m.dim(v), m.prime());
    out.push_back(canonical_column_space(all));
  }
  return out;
}

inline Quotient top(const Module& m) { return quotient(m, radical_basis(m)); }

inline Submodule socle(const Module& m) {
  const Quiver& q = m.algebra().quiver();
  std::vector<Matrix> basis;
  for (std::size_t v = 0; v < m.dims().size(); ++v) {
    std::vector<Matrix> outs;
    for (std::size_t a = 0; a < q.arrows.size(); ++a)
      if (q.arrows[a].source == v) outs.push_back(m.action(a));
    std::size_t rows = 0;
    for (const auto& o : outs) rows += o.rows();
    Matrix all = vstack(outs, m.dim(v), m.prime());
    (void)rows;
    basis.push_back(kernel_matrix(all));
  }
  return submodule(m, basis);
}

inline std::vector<std::size_t> top_dims(const Module& m) {
  auto rad = radical_basis(m);
  std::vector<std::size_t> t;
  for (std::size_t v = 0; v < m.dims().size(); ++v) t.push_back(m.dim(v) - rad[v].cols());
  return t;
}

inline std::vector<std::size_t> socle_dims(const Module& m) { return socle(m).module.dims(); }

// ---------------------------------------------------------------- covers and envelopes

struct Cover {
  Module object;                        // sum of P(v)^{mult[v]} in vertex order
  ModuleMap map;                        // object -> M, an epimorphism
  std::vector<std::size_t> multiplicity;
};

inline Cover projective_cover(const Module& m) {
  const AlgebraPtr& alg = m.algebra_ptr();
  const std::size_t n = alg->vertex_count();
  auto rad = radical_basis(m);
  std::vector<Module> parts;
  std::vector<std::pair<std::size_t, Vector>> gens;
  std::vector<std::size_t> mult(n, 0);
  for (std::size_t v = 0; v < n; ++v) {
    auto comp = complement_coordinates(rad[v]);
    for (auto c : comp) {
      Vector e(m.dim(v), 0);
      e[c] = 1;
      gens.emplace_back(v, e);
      parts.push_back(projective(alg, v));
    }
    mult[v] = comp.size();
  }
  DirectSum P = direct_sum(parts, alg);
  if (parts.empty()) P.module = Module::zero(alg);
  std::vector<Matrix> blocks;
  for (std::size_t w = 0; w < n; ++w) blocks.emplace_back(m.dim(w), P.module.dim(w), m.prime());
  std::vector<std::size_t> col(n, 0);
  for (const auto& [v, e] : gens)
    for (std::size_t w = 0; w < n; ++w)
      for (auto b : alg->basis_between(v, w)) {
        Vector img = m.path_action(alg->basis()[b]).apply(e);
        for (std::size_t i = 0; i < img.size(); ++i) blocks[w](i, col[w]) = img[i];
        ++col[w];
      }
  return {P.module, ModuleMap{P.module, m, std::move(blocks)}, mult};
}

struct Syzygy {
  Module module;
  ModuleMap inclusion;  // into the cover object
  Cover cover;
};

inline Syzygy syzygy(const Module& m) {
  Cover c = projective_cover(m);
  Submodule k = kernel(c.map);
  return {k.module, k.inclusion, c};
}

struct Envelope {
  Module object;  // sum of I(v)^{mult[v]}
  ModuleMap map;  // M -> object, a monomorphism
  std::vector<std::size_t> multiplicity;
};

inline Envelope injective_envelope(const Module& m) {
  Cover c = projective_cover(dualize(m));
  Module dp = dualize(c.object);
  Module obj(m.algebra_ptr(), dp.dims(), dp.actions(), dp.name());
  std::vector<Matrix> blocks;
  for (const auto& b : c.map.blocks) blocks.push_back(b.transpose());
  return {obj, ModuleMap{m, obj, std::move(blocks)}, c.multiplicity};
}

struct Cosyzygy {
  Module module;
  ModuleMap projection;  // from the envelope object
  Envelope envelope;
};

inline Cosyzygy cosyzygy(const Module& m) {
  Envelope e = injective_envelope(m);
  Quotient q = cokernel(e.map);
  return {q.module, q.projection, e};
}

inline bool is_projective(const Module& m) { return syzygy(m).module.is_zero(); }
inline bool is_injective(const Module& m) { return cosyzygy(m).module.is_zero(); }

}  // namespace gorenlab
