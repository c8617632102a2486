#pragma once

#include <cctype>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "linalg.hpp"

namespace gorenlab {

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& msg)
      : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) +
                           ": " + msg),
        line_(line),
        column_(column) {}
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_, column_;
};

class NotFiniteDimensional : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class AlgebraMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct Arrow {
  std::string label;
  std::size_t source = 0;
  std::size_t target = 0;
  bool operator==(const Arrow&) const = default;
};

struct Quiver {
  std::vector<std::string> vertices;
  std::vector<Arrow> arrows;

  std::optional<std::size_t> vertex_index(const std::string& v) const {
    for (std::size_t i = 0; i < vertices.size(); ++i)
      if (vertices[i] == v) return i;
    return std::nullopt;
  }
  std::optional<std::size_t> arrow_index(const std::string& a) const {
    for (std::size_t i = 0; i < arrows.size(); ++i)
      if (arrows[i].label == a) return i;
    return std::nullopt;
  }
  bool operator==(const Quiver&) const = default;
};

// A path is a start vertex plus a sequence of arrow indices, read left to
// right: {a, b} means first a, then b.
struct Path {
  std::size_t start = 0;
  std::vector<std::size_t> arrows;

  std::size_t length() const { return arrows.size(); }
  std::size_t end(const Quiver& q) const { return arrows.empty() ? start : q.arrows[arrows.back()].target; }
  auto operator<=>(const Path&) const = default;
};

inline std::string path_name(const Quiver& q, const Path& p) {
  if (p.arrows.empty()) return "e" + q.vertices[p.start];
  std::string s;
  for (std::size_t k = 0; k < p.arrows.size(); ++k) {
    if (k) s += "*";
    s += q.arrows[p.arrows[k]].label;
  }
  return s;
}

struct RelationTerm {
  Scalar coeff = 1;
  Path path;
  bool operator==(const RelationTerm&) const = default;
};

struct Relation {
  std::vector<RelationTerm> terms;
  bool operator==(const Relation&) const = default;
};

struct Presentation {
  std::string name;
  std::uint32_t prime = 2;
  Quiver quiver;
  std::vector<Relation> relations;
  bool operator==(const Presentation&) const = default;
};

namespace detail {

class LineCursor {
 public:
  LineCursor(const std::string& text, std::size_t line) : s_(text), line_(line) {}

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool at_end() {
    skip_ws();
    return pos_ >= s_.size();
  }
  std::size_t column() {
    skip_ws();
    return pos_ + 1;
  }
  [[noreturn]] void fail(const std::string& msg) { throw ParseError(line_, column(), msg); }

  bool accept(char c) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  bool accept(const std::string& lit) {
    skip_ws();
    if (s_.compare(pos_, lit.size(), lit) == 0) {
      pos_ += lit.size();
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }
  void expect(const std::string& lit) {
    if (!accept(lit)) fail("expected '" + lit + "'");
  }
  char peek() {
    skip_ws();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }

  static bool ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'' || c == '.' ||
           c == '-' || c == '^';
  }

  // Identifier-like token: letters, digits, _ ' . - ^
  std::string word() {
    skip_ws();
    std::size_t b = pos_;
    while (pos_ < s_.size() && ident_char(s_[pos_])) ++pos_;
    if (b == pos_) fail("expected a name");
    return s_.substr(b, pos_ - b);
  }
  // Label: letters, digits, _ ' (no '-' so that "->" separates)
  std::string label() {
    skip_ws();
    std::size_t b = pos_;
    while (pos_ < s_.size() &&
           (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_' || s_[pos_] == '\''))
      ++pos_;
    if (b == pos_) fail("expected a label");
    return s_.substr(b, pos_ - b);
  }
  bool at_digit() {
    skip_ws();
    return pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]));
  }
  std::int64_t integer() {
    skip_ws();
    std::size_t b = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (b == pos_) fail("expected an integer");
    if (pos_ - b > 12) fail("integer too large");
    return std::stoll(s_.substr(b, pos_ - b));
  }
  std::size_t position() const { return pos_; }
  void rewind(std::size_t p) { pos_ = p; }

 private:
  const std::string& s_;
  std::size_t line_;
  std::size_t pos_ = 0;
};

inline std::string strip_comment(const std::string& line) {
  auto h = line.find('#');
  return h == std::string::npos ? line : line.substr(0, h);
}

inline bool blank(const std::string& s) {
  for (char c : s)
    if (!std::isspace(static_cast<unsigned char>(c))) return false;
  return true;
}

}  // namespace detail

// Parses the algebra text format:
//   algebra <name> over GF(<p>)
//   vertices: v1 v2 ...
//   arrows: label: src -> tgt [, ...]
//   relations: term [+ term]* [, ...]     term = [coeff*]label(*label)*
inline Presentation parse_algebra(const std::string& text) {
  Presentation pres;
  std::istringstream in(text);
  std::string raw;
  std::size_t lineno = 0;
  bool have_header = false, have_vertices = false;

  struct PendingRelation {
    std::size_t line, column;
    std::vector<std::pair<std::int64_t, std::vector<std::pair<std::string, std::size_t>>>> terms;
  };
  std::vector<PendingRelation> pending;

  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = detail::strip_comment(raw);
    if (detail::blank(line)) continue;
    detail::LineCursor cur(line, lineno);
    if (!have_header) {
      cur.expect("algebra");
      pres.name = cur.word();
      cur.expect("over");
      cur.expect("GF");
      cur.expect('(');
      std::size_t col = cur.column();
      std::int64_t p = cur.integer();
      try {
        PrimeField f(static_cast<std::uint32_t>(p));
      } catch (const std::exception& e) {
        throw ParseError(lineno, col, e.what());
      }
      pres.prime = static_cast<std::uint32_t>(p);
      cur.expect(')');
      if (!cur.at_end()) cur.fail("unexpected text after header");
      have_header = true;
      continue;
    }
    if (cur.accept("vertices")) {
      cur.expect(':');
      if (have_vertices) cur.fail("vertices declared twice");
      while (!cur.at_end()) {
        std::size_t col = cur.column();
        std::string v = cur.label();
        if (pres.quiver.vertex_index(v)) throw ParseError(lineno, col, "duplicate vertex '" + v + "'");
        pres.quiver.vertices.push_back(v);
        cur.accept(',');
      }
      have_vertices = true;
    } else if (cur.accept("arrows")) {
      cur.expect(':');
      if (!have_vertices) cur.fail("arrows before vertices");
      while (!cur.at_end()) {
        std::size_t col = cur.column();
        std::string lab = cur.label();
        if (pres.quiver.arrow_index(lab)) throw ParseError(lineno, col, "duplicate arrow '" + lab + "'");
        cur.expect(':');
        std::size_t scol = cur.column();
        std::string s = cur.label();
        cur.expect("->");
        std::size_t tcol = cur.column();
        std::string t = cur.label();
        auto si = pres.quiver.vertex_index(s);
        if (!si) throw ParseError(lineno, scol, "unknown vertex '" + s + "'");
        auto ti = pres.quiver.vertex_index(t);
        if (!ti) throw ParseError(lineno, tcol, "unknown vertex '" + t + "'");
        pres.quiver.arrows.push_back({lab, *si, *ti});
        if (!cur.at_end()) cur.expect(',');
      }
    } else if (cur.accept("relations")) {
      cur.expect(':');
      while (!cur.at_end()) {
        PendingRelation rel{lineno, cur.column(), {}};
        bool first = true;
        for (;;) {
          std::int64_t sign = 1;
          if (!first) {
            if (cur.accept('+')) sign = 1;
            else if (cur.accept('-')) sign = -1;
            else break;
          } else if (cur.accept('-')) {
            sign = -1;
          }
          first = false;
          std::int64_t coeff = 1;
          if (cur.at_digit()) {
            coeff = cur.integer();
            cur.expect('*');
          }
          std::vector<std::pair<std::string, std::size_t>> labels;
          do {
            std::size_t col = cur.column();
            labels.emplace_back(cur.label(), col);
          } while (cur.accept('*'));
          rel.terms.emplace_back(sign * coeff, std::move(labels));
        }
        pending.push_back(std::move(rel));
        if (!cur.at_end()) cur.expect(',');
      }
    } else {
      cur.fail("expected 'vertices:', 'arrows:' or 'relations:'");
    }
  }
  if (!have_header) throw ParseError(lineno ? lineno : 1, 1, "missing 'algebra <name> over GF(p)' header");
  if (!have_vertices) throw ParseError(lineno, 1, "missing 'vertices:' line");

  PrimeField F(pres.prime);
  const Quiver& q = pres.quiver;
  for (auto& pr : pending) {
    Relation rel;
    std::optional<std::pair<std::size_t, std::size_t>> ends;
    for (auto& [coeff, labels] : pr.terms) {
      Path path;
      for (std::size_t k = 0; k < labels.size(); ++k) {
        auto a = q.arrow_index(labels[k].first);
        if (!a) throw ParseError(pr.line, labels[k].second, "unknown arrow '" + labels[k].first + "'");
        if (k == 0) path.start = q.arrows[*a].source;
        else if (q.arrows[path.arrows.back()].target != q.arrows[*a].source)
          throw ParseError(pr.line, labels[k].second, "arrows not composable at '" + labels[k].first + "'");
        path.arrows.push_back(*a);
      }
      if (path.length() < 2)
        throw ParseError(pr.line, labels[0].second, "relation terms must have length at least 2");
      auto e = std::make_pair(path.start, path.end(q));
      if (ends && *ends != e)
        throw ParseError(pr.line, labels[0].second, "relation terms are not parallel");
      ends = e;
      Scalar c = F.reduce(coeff);
      if (c == 0) continue;
      bool merged = false;
      for (auto& t : rel.terms)
        if (t.path == path) {
          t.coeff = F.add(t.coeff, c);
          merged = true;
        }
      if (!merged) rel.terms.push_back({c, path});
    }
    std::erase_if(rel.terms, [](const RelationTerm& t) { return t.coeff == 0; });
    if (!rel.terms.empty()) pres.relations.push_back(std::move(rel));
  }
  return pres;
}

inline std::string format_algebra(const Presentation& pres) {
  std::ostringstream o;
  const Quiver& q = pres.quiver;
  o << "algebra " << pres.name << " over GF(" << pres.prime << ")\n";
  o << "vertices:";
  for (auto& v : q.vertices) o << ' ' << v;
  o << '\n';
  if (!q.arrows.empty()) {
    o << "arrows: ";
    for (std::size_t i = 0; i < q.arrows.size(); ++i) {
      if (i) o << ", ";
      o << q.arrows[i].label << ": " << q.vertices[q.arrows[i].source] << " -> "
        << q.vertices[q.arrows[i].target];
    }
    o << '\n';
  }
  if (!pres.relations.empty()) {
    o << "relations: ";
    for (std::size_t r = 0; r < pres.relations.size(); ++r) {
      if (r) o << ", ";
      const auto& terms = pres.relations[r].terms;
      for (std::size_t t = 0; t < terms.size(); ++t) {
        if (t) o << " + ";
        if (terms[t].coeff != 1) o << terms[t].coeff << '*';
        o << path_name(q, terms[t].path);
      }
    }
    o << '\n';
  }
  return o.str();
}

// Finite-dimensional quotient of a path algebra by an admissible ideal,
// with a basis of paths and normal forms for every path.
class PathAlgebra : public std::enable_shared_from_this<PathAlgebra> {
 public:
  static std::shared_ptr<const PathAlgebra> build(const Presentation& pres, std::size_t length_cap = 16) {
    auto alg = std::shared_ptr<PathAlgebra>(new PathAlgebra(pres));
    alg->construct(length_cap);
    return alg;
  }

  const Presentation& presentation() const { return pres_; }
  const Quiver& quiver() const { return pres_.quiver; }
  const std::string& name() const { return pres_.name; }
  std::uint32_t prime() const { return pres_.prime; }
  const PrimeField& field() const { return field_; }
  std::size_t vertex_count() const { return pres_.quiver.vertices.size(); }
  std::size_t arrow_count() const { return pres_.quiver.arrows.size(); }
  std::size_t dimension() const { return basis_.size(); }
  // Every path of this length or longer is zero.
  std::size_t vanishing_length() const { return vanish_; }

  const std::vector<Path>& basis() const { return basis_; }
  std::size_t basis_end(std::size_t b) const { return basis_[b].end(quiver()); }

  // Basis indices of paths from i to j, in basis order.
  const std::vector<std::size_t>& basis_between(std::size_t i, std::size_t j) const {
    return between_[i * vertex_count() + j];
  }

  // Coordinates of a path in the basis (zero vector when it vanishes).
  Vector normal_form(const Path& p) const {
    if (p.length() >= vanish_) return Vector(dimension(), 0);
    auto it = index_.find(p);
    if (it == index_.end()) throw std::invalid_argument("normal_form: not a path of the quiver");
    return reduction_[it->second];
  }

  // Coordinates of (basis path b) * (arrow a); zero if not composable.
  const Vector& times_arrow(std::size_t b, std::size_t a) const { return right_arrow_[b * arrow_count() + a]; }

  bool same_as(const PathAlgebra& o) const { return this == &o || pres_ == o.pres_; }

  // Arrows reversed, relations reversed.
  std::shared_ptr<const PathAlgebra> opposite() const {
    std::lock_guard<std::mutex> lock(op_mutex_);
    if (auto back = op_of_.lock()) return back;
    if (op_) return op_;
    Presentation op;
    const std::string suffix = "^op";
    op.name = pres_.name.size() > suffix.size() &&
                      pres_.name.compare(pres_.name.size() - suffix.size(), suffix.size(), suffix) == 0
                  ? pres_.name.substr(0, pres_.name.size() - suffix.size())
                  : pres_.name + suffix;
    op.prime = pres_.prime;
    op.quiver.vertices = pres_.quiver.vertices;
    for (const auto& a : pres_.quiver.arrows) op.quiver.arrows.push_back({a.label, a.target, a.source});
    for (const auto& r : pres_.relations) {
      Relation rr;
      for (const auto& t : r.terms) {
        Path p;
        p.arrows.assign(t.path.arrows.rbegin(), t.path.arrows.rend());
        p.start = t.path.end(pres_.quiver);
        rr.terms.push_back({t.coeff, p});
      }
      op.relations.push_back(rr);
    }
    auto built = std::shared_ptr<PathAlgebra>(new PathAlgebra(op));
    built->construct(cap_);
    built->op_of_ = weak_from_this();
    op_ = built;
    return op_;
  }

 private:
  explicit PathAlgebra(Presentation pres) : pres_(std::move(pres)), field_(pres_.prime) {}

  std::vector<Path> paths_up_to(std::size_t maxlen) const {
    const Quiver& q = quiver();
    std::vector<Path> out;
    std::vector<Path> frontier;
    for (std::size_t v = 0; v < vertex_count(); ++v) frontier.push_back({v, {}});
    out = frontier;
    for (std::size_t len = 1; len <= maxlen; ++len) {
      std::vector<Path> next;
      for (const auto& p : frontier) {
        std::size_t e = p.end(q);
        for (std::size_t a = 0; a < q.arrows.size(); ++a)
          if (q.arrows[a].source == e) {
            Path np = p;
            np.arrows.push_back(a);
            next.push_back(np);
          }
      }
      out.insert(out.end(), next.begin(), next.end());
      frontier = std::move(next);
      if (frontier.empty()) break;
    }
    return out;
  }

  // Columns ordered longest first so that long paths become pivots and
  // short paths survive as basis elements.
  static void order_columns(std::vector<Path>& paths) {
    std::sort(paths.begin(), paths.end(), [](const Path& a, const Path& b) {
      if (a.length() != b.length()) return a.length() > b.length();
      return b < a;
    });
  }

  // Rows u*rho*v for all paths u, v, dropping terms longer than maxlen.
  Matrix ideal_span(const std::vector<Path>& cols, const std::map<Path, std::size_t>& idx,
                    std::size_t maxlen) const {
    const Quiver& q = quiver();
    std::vector<Path> all = paths_up_to(maxlen);
    std::vector<Vector> rows;
    for (const auto& rel : pres_.relations) {
      std::size_t minlen = SIZE_MAX;
      for (const auto& t : rel.terms) minlen = std::min(minlen, t.path.length());
      std::size_t s = rel.terms.front().path.start;
      std::size_t e = rel.terms.front().path.end(q);
      for (const auto& u : all) {
        if (u.end(q) != s) continue;
        for (const auto& v : all) {
          if (v.start != e) continue;
          if (u.length() + minlen + v.length() > maxlen) continue;
          Vector row(cols.size(), 0);
          bool any = false;
          for (const auto& t : rel.terms) {
            if (u.length() + t.path.length() + v.length() > maxlen) continue;
            Path w{u.start, u.arrows};
            w.arrows.insert(w.arrows.end(), t.path.arrows.begin(), t.path.arrows.end());
            w.arrows.insert(w.arrows.end(), v.arrows.begin(), v.arrows.end());
            auto it = idx.find(w);
            row[it->second] = field_.add(row[it->second], t.coeff);
            any = true;
          }
          if (any) rows.push_back(std::move(row));
        }
      }
    }
    Matrix m(rows.size(), cols.size(), prime());
    for (std::size_t i = 0; i < rows.size(); ++i)
      for (std::size_t j = 0; j < cols.size(); ++j) m(i, j) = rows[i][j];
    return m;
  }

  // Does every path of length d lie in I + J^{d+1}?
  bool top_degree_vanishes(std::size_t d) const {
    std::vector<Path> cols = paths_up_to(d);
    order_columns(cols);
    std::map<Path, std::size_t> idx;
    for (std::size_t i = 0; i < cols.size(); ++i) idx[cols[i]] = i;
    Matrix w = ideal_span(cols, idx, d);
    Rref R = rref(w);
    std::vector<char> pivot(cols.size(), 0);
    for (auto c : R.pivots) pivot[c] = 1;
    // Reduce each length-d path against the span.
    for (std::size_t c = 0; c < cols.size(); ++c) {
      if (cols[c].length() != d) continue;
      Vector v(cols.size(), 0);
      v[c] = 1;
      for (std::size_t r = 0; r < R.pivots.size(); ++r) {
        Scalar f = v[R.pivots[r]];
        if (!f) continue;
        for (std::size_t j = 0; j < cols.size(); ++j) v[j] = field_.sub(v[j], field_.mul(f, R.reduced(r, j)));
      }
      for (auto x : v)
        if (x) return false;
    }
    return true;
  }

  void construct(std::size_t cap) {
    cap_ = cap;
    const Quiver& q = quiver();
    for (const auto& a : q.arrows)
      if (a.source >= vertex_count() || a.target >= vertex_count())
        throw std::invalid_argument("arrow endpoint out of range");
    std::size_t L = 0;
    for (std::size_t d = 1; d <= cap; ++d)
      if (top_degree_vanishes(d)) {
        L = d;
        break;
      }
    if (L == 0)
      throw NotFiniteDimensional("algebra '" + pres_.name + "': paths of length " + std::to_string(cap) +
                                 " survive modulo the relations");
    vanish_ = L;

    std::vector<Path> cols = paths_up_to(L - 1);
    order_columns(cols);
    std::map<Path, std::size_t> idx;
    for (std::size_t i = 0; i < cols.size(); ++i) idx[cols[i]] = i;
    Matrix w = ideal_span(cols, idx, L - 1);
    Rref R = rref(w);
    std::vector<int> pivot_row(cols.size(), -1);
    for (std::size_t r = 0; r < R.pivots.size(); ++r) pivot_row[R.pivots[r]] = static_cast<int>(r);

    for (std::size_t c = 0; c < cols.size(); ++c)
      if (pivot_row[c] < 0) basis_.push_back(cols[c]);
    std::sort(basis_.begin(), basis_.end(), [](const Path& a, const Path& b) {
      if (a.start != b.start) return a.start < b.start;
      if (a.length() != b.length()) return a.length() < b.length();
      return a.arrows < b.arrows;
    });
    std::map<Path, std::size_t> basis_pos;
    for (std::size_t b = 0; b < basis_.size(); ++b) basis_pos[basis_[b]] = b;

    reduction_.assign(cols.size(), Vector(basis_.size(), 0));
    for (std::size_t c = 0; c < cols.size(); ++c) {
      index_[cols[c]] = c;
      if (pivot_row[c] < 0) {
        reduction_[c][basis_pos[cols[c]]] = 1;
        continue;
      }
      std::size_t r = static_cast<std::size_t>(pivot_row[c]);
      for (std::size_t j = 0; j < cols.size(); ++j) {
        if (j == c || R.reduced(r, j) == 0) continue;
        reduction_[c][basis_pos.at(cols[j])] = field_.neg(R.reduced(r, j));
      }
    }

    const std::size_t n = vertex_count();
    between_.assign(n * n, {});
    for (std::size_t b = 0; b < basis_.size(); ++b)
      between_[basis_[b].start * n + basis_[b].end(q)].push_back(b);

    right_arrow_.assign(basis_.size() * arrow_count(), Vector(basis_.size(), 0));
    for (std::size_t b = 0; b < basis_.size(); ++b)
      for (std::size_t a = 0; a < arrow_count(); ++a) {
        if (q.arrows[a].source != basis_[b].end(q)) continue;
        Path p = basis_[b];
        p.arrows.push_back(a);
        right_arrow_[b * arrow_count() + a] = normal_form(p);
      }
  }

  Presentation pres_;
  PrimeField field_;
  std::size_t cap_ = 16;
  std::size_t vanish_ = 0;
  std::vector<Path> basis_;
  std::map<Path, std::size_t> index_;
  std::vector<Vector> reduction_;
  std::vector<std::vector<std::size_t>> between_;
  std::vector<Vector> right_arrow_;

  mutable std::mutex op_mutex_;
  mutable std::shared_ptr<const PathAlgebra> op_;
  std::weak_ptr<const PathAlgebra> op_of_;
};

using AlgebraPtr = std::shared_ptr<const PathAlgebra>;

inline AlgebraPtr build_algebra(const std::string& text, std::size_t length_cap = 16) {
  return PathAlgebra::build(parse_algebra(text), length_cap);
}

}  // namespace gorenlab
