#pragma once

#include <cctype>
#include <functional>
#include <map>
#include <sstream>
#include <string>

#include "json.hpp"

#include "claims.hpp"
#include "corpus.hpp"
#include "gorenstein.hpp"

namespace gorenlab {

using Json = nlohmann::ordered_json;

inline constexpr const char* report_schema = "gorenlab-report/1";
inline constexpr const char* tool_version = "1.0.0";

// Finds an algebra by name; "<name>^op" resolves to the opposite of <name>.
class AlgebraResolver {
 public:
  AlgebraResolver() = default;

  void add(const AlgebraPtr& alg) { known_[alg->name()] = alg; }

  AlgebraPtr operator()(const std::string& name) {
    if (auto it = known_.find(name); it != known_.end()) return it->second;
    const std::string suffix = "^op";
    if (name.size() > suffix.size() && name.compare(name.size() - suffix.size(), suffix.size(), suffix) == 0) {
      auto op = (*this)(name.substr(0, name.size() - suffix.size()))->opposite();
      known_[name] = op;
      return op;
    }
    if (const char* text = corpus_algebra_text(name)) {
      auto alg = build_algebra(text);
      known_[name] = alg;
      return alg;
    }
    throw std::out_of_range("unknown algebra '" + name + "'");
  }

 private:
  std::map<std::string, AlgebraPtr> known_;
};

// ---------------------------------------------------------------- module text format
//
//   module <name> over <algebra>
//   dims: <vertex>=<n> ...
//   arrow <label>: [[row], [row], ...]
//
// Missing vertices have dimension 0, missing arrows act by zero.

namespace detail {

inline std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

inline Matrix matrix_from_rows(const Json& rows, std::size_t r, std::size_t c, const PrimeField& f,
                               const std::function<void(const std::string&)>& fail) {
  Matrix m(r, c, f.characteristic());
  if (!rows.is_array() || rows.size() != r) fail("expected " + std::to_string(r) + " rows");
  for (std::size_t i = 0; i < r; ++i) {
    const Json& row = rows[i];
    if (!row.is_array() || row.size() != c) fail("row " + std::to_string(i + 1) + " needs " + std::to_string(c) + " entries");
    for (std::size_t j = 0; j < c; ++j) {
      if (!row[j].is_number_integer()) fail("matrix entries must be integers");
      m(i, j) = f.reduce(row[j].get<std::int64_t>());
    }
  }
  return m;
}

}  // namespace detail

inline Module parse_module(const std::string& text, AlgebraResolver& resolve) {
  std::istringstream in(text);
  std::string raw;
  std::size_t lineno = 0;
  AlgebraPtr alg;
  std::string name;
  std::vector<std::size_t> dims;
  std::vector<Matrix> action;
  std::vector<bool> seen;
  auto fail = [&](const std::string& msg) { throw ParseError(lineno, 1, msg); };
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = detail::trim(raw.substr(0, raw.find('#')));
    if (line.empty()) continue;
    if (!alg) {
      std::istringstream h(line);
      std::string kw, over, an;
      if (!(h >> kw >> name >> over >> an) || kw != "module" || over != "over")
        fail("expected 'module <name> over <algebra>'");
      try {
        alg = resolve(an);
      } catch (const std::out_of_range& e) {
        fail(e.what());
      }
      dims.assign(alg->vertex_count(), 0);
      for (std::size_t a = 0; a < alg->arrow_count(); ++a) action.emplace_back(0, 0, alg->prime());
      seen.assign(alg->arrow_count(), false);
      continue;
    }
    const Quiver& q = alg->quiver();
    if (line.rfind("dims:", 0) == 0) {
      std::istringstream d(line.substr(5));
      std::string tok;
      while (d >> tok) {
        auto eq = tok.find('=');
        if (eq == std::string::npos) fail("expected <vertex>=<dim>, got '" + tok + "'");
        std::string v = tok.substr(0, eq);
        auto it = std::find(q.vertices.begin(), q.vertices.end(), v);
        if (it == q.vertices.end()) fail("unknown vertex '" + v + "'");
        try {
          dims[static_cast<std::size_t>(it - q.vertices.begin())] = std::stoul(tok.substr(eq + 1));
        } catch (const std::exception&) {
          fail("bad dimension in '" + tok + "'");
        }
      }
      continue;
    }
    if (line.rfind("arrow ", 0) == 0) {
      auto colon = line.find(':');
      if (colon == std::string::npos) fail("expected 'arrow <label>: <matrix>'");
      std::string label = detail::trim(line.substr(6, colon - 6));
      std::size_t a = q.arrows.size();
      for (std::size_t i = 0; i < q.arrows.size(); ++i)
        if (q.arrows[i].label == label) a = i;
      if (a == q.arrows.size()) fail("unknown arrow '" + label + "'");
      Json rows;
      try {
        rows = Json::parse(line.substr(colon + 1));
      } catch (const Json::parse_error&) {
        fail("malformed matrix for arrow '" + label + "'");
      }
      action[a] = detail::matrix_from_rows(rows, dims[q.arrows[a].target], dims[q.arrows[a].source], alg->field(),
                                           [&](const std::string& m) { fail("arrow '" + label + "': " + m); });
      seen[a] = true;
      continue;
    }
    fail("unrecognised line '" + line + "'");
  }
  if (!alg) throw ParseError(std::max<std::size_t>(lineno, 1), 1, "empty module file");
  const Quiver& q = alg->quiver();
  for (std::size_t a = 0; a < q.arrows.size(); ++a)
    if (!seen[a]) action[a] = Matrix(dims[q.arrows[a].target], dims[q.arrows[a].source], alg->prime());
  Module m(alg, dims, action, name);
  if (!m.satisfies_relations()) throw ParseError(lineno, 1, "module '" + name + "' violates a relation of " + alg->name());
  return m;
}

inline std::string format_module(const Module& m) {
  const Quiver& q = m.algebra().quiver();
  std::ostringstream o;
  o << "module " << (m.name().empty() ? "M" : m.name()) << " over " << m.algebra().name() << "\ndims:";
  for (std::size_t v = 0; v < q.vertices.size(); ++v) o << ' ' << q.vertices[v] << '=' << m.dim(v);
  o << '\n';
  for (std::size_t a = 0; a < q.arrows.size(); ++a) {
    const Matrix& x = m.action(a);
    o << "arrow " << q.arrows[a].label << ": [";
    for (std::size_t i = 0; i < x.rows(); ++i) {
      o << (i ? ", [" : "[");
      for (std::size_t j = 0; j < x.cols(); ++j) o << (j ? ", " : "") << x(i, j);
      o << ']';
    }
    o << "]\n";
  }
  return o.str();
}

// ---------------------------------------------------------------- JSON

inline Json to_json(const Matrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline Matrix matrix_from_json(const Json& j, std::size_t rows, std::size_t cols, const PrimeField& f) {
  return detail::matrix_from_rows(j, rows, cols, f, [](const std::string& m) { throw std::invalid_argument(m); });
}

inline Json to_json(const Module& m) {
  const Quiver& q = m.algebra().quiver();
  Json arrows = Json::object();
  for (std::size_t a = 0; a < q.arrows.size(); ++a) arrows[q.arrows[a].label] = to_json(m.action(a));
  return Json{{"name", m.name()}, {"algebra", m.algebra().name()}, {"dims", m.dims()}, {"arrows", std::move(arrows)}};
}

inline Module module_from_json(const Json& j, AlgebraResolver& resolve) {
  AlgebraPtr alg = resolve(j.at("algebra").get<std::string>());
  auto dims = j.at("dims").get<std::vector<std::size_t>>();
  if (dims.size() != alg->vertex_count()) throw std::invalid_argument("module JSON: wrong number of dims");
  const Quiver& q = alg->quiver();
  std::vector<Matrix> act;
  for (const auto& ar : q.arrows)
    act.push_back(matrix_from_json(j.at("arrows").at(ar.label), dims[ar.target], dims[ar.source], alg->field()));
  return Module(alg, dims, act, j.at("name").get<std::string>());
}

inline Json blocks_json(const ModuleMap& f) {
  Json out = Json::array();
  for (const auto& b : f.blocks) out.push_back(to_json(b));
  return out;
}

inline ModuleMap map_from_json(const Json& j, const Module& s, const Module& t) {
  ModuleMap f = ModuleMap::zero(s, t);
  if (!j.is_array() || j.size() != f.blocks.size()) throw std::invalid_argument("map JSON: wrong number of blocks");
  for (std::size_t v = 0; v < f.blocks.size(); ++v)
    f.blocks[v] = matrix_from_json(j[v], t.dim(v), s.dim(v), s.algebra().field());
  return f;
}

inline Json to_json(const ClassSpec& c) {
  Json gens = Json::array();
  for (const auto& g : c.generators) gens.push_back(to_json(g));
  return Json{{"name", c.name}, {"generators", std::move(gens)}};
}

inline ClassSpec class_from_json(const Json& j, AlgebraResolver& resolve) {
  ClassSpec c{j.at("name").get<std::string>(), {}};
  for (const auto& g : j.at("generators")) c.generators.push_back(module_from_json(g, resolve));
  return c;
}

inline Json to_json(const LoopComplex& l) {
  Json steps = Json::array(), cycles = Json::array(), monos = Json::array(), epis = Json::array();
  for (const auto& s : l.steps) steps.push_back(to_json(s));
  for (const auto& z : l.cycles) cycles.push_back(to_json(z));
  for (const auto& f : l.monos) monos.push_back(blocks_json(f));
  for (const auto& f : l.epis) epis.push_back(blocks_json(f));
  return Json{{"length", l.length()}, {"base", to_json(l.base)}, {"steps", std::move(steps)},
              {"cycles", std::move(cycles)}, {"monos", std::move(monos)}, {"epis", std::move(epis)},
              {"closing", blocks_json(l.closing)}};
}

// mono k: Z_k -> A_k, epi k: A_k -> Z_{k-1}, closing: Z_0 -> base.
inline LoopComplex loop_from_json(const Json& j, AlgebraResolver& resolve) {
  LoopComplex l;
  l.base = module_from_json(j.at("base"), resolve);
  for (const auto& s : j.at("steps")) l.steps.push_back(module_from_json(s, resolve));
  for (const auto& z : j.at("cycles")) l.cycles.push_back(module_from_json(z, resolve));
  const std::size_t m = l.steps.size();
  if (l.cycles.size() != m + 1 || j.at("monos").size() != m || j.at("epis").size() != m)
    throw std::invalid_argument("loop JSON: inconsistent length");
  for (std::size_t k = 1; k <= m; ++k) {
    l.monos.push_back(map_from_json(j.at("monos")[k - 1], l.cycles[k], l.steps[k - 1]));
    l.epis.push_back(map_from_json(j.at("epis")[k - 1], l.steps[k - 1], l.cycles[k - 1]));
  }
  l.closing = map_from_json(j.at("closing"), l.cycles[0], l.base);
  return l;
}

inline Outcome outcome_from_string(const std::string& s) {
  for (Outcome o : {Outcome::Yes, Outcome::No, Outcome::Unknown})
    if (s == to_string(o)) return o;
  throw std::invalid_argument("unknown outcome '" + s + "'");
}

inline Obstruction obstruction_from_string(const std::string& s) {
  for (int i = 0; i <= static_cast<int>(Obstruction::NotInClass); ++i)
    if (s == to_string(static_cast<Obstruction>(i))) return static_cast<Obstruction>(i);
  throw std::invalid_argument("unknown obstruction '" + s + "'");
}

template <class Cert, class F>
Json verdict_json(const Verdict<Cert>& v, F&& cert) {
  Json j{{"outcome", to_string(v.outcome)}};
  if (v.is_no()) j["obstruction"] = to_string(v.obstruction);
  j["detail"] = v.detail;
  if (v.certificate) j["certificate"] = cert(*v.certificate);
  return j;
}

inline Json to_json(const Verdict<LoopComplex>& v) {
  return verdict_json(v, [](const LoopComplex& l) { return to_json(l); });
}

inline Json to_json(const Verdict<std::size_t>& v) {
  return verdict_json(v, [](std::size_t d) { return Json(d); });
}

inline Verdict<LoopComplex> loop_verdict_from_json(const Json& j, AlgebraResolver& resolve) {
  Verdict<LoopComplex> v;
  v.outcome = outcome_from_string(j.at("outcome").get<std::string>());
  if (j.contains("obstruction")) v.obstruction = obstruction_from_string(j.at("obstruction").get<std::string>());
  v.detail = j.at("detail").get<std::string>();
  if (j.contains("certificate")) v.certificate = loop_from_json(j.at("certificate"), resolve);
  return v;
}

inline Json to_json(const SearchBounds& b) {
  return Json{{"max_step_dim", b.max_step_dim},
              {"hom_enum_cap", b.hom_enum_cap},
              {"ext_window", b.ext_window},
              {"depth", b.depth},
              {"node_budget", b.node_budget}};
}

// A loop question with everything needed to re-check its answer.
struct LoopQuery {
  Module module;
  ClassSpec a;
  Requirement req;
  std::size_t length = 0;
};

inline Json loop_record(const LoopQuery& q, const Verdict<LoopComplex>& v) {
  Json query{{"module", to_json(q.module)}, {"a", to_json(q.a)}, {"length", q.length},
             {"requirement", to_string(q.req.kind)}};
  if (q.req.uses_b()) query["b"] = to_json(q.req.b);
  return Json{{"kind", "loop"}, {"query", std::move(query)}, {"verdict", to_json(v)}};
}

inline std::pair<LoopQuery, Verdict<LoopComplex>> loop_record_from_json(const Json& j, AlgebraResolver& resolve) {
  const Json& q = j.at("query");
  LoopQuery out;
  out.module = module_from_json(q.at("module"), resolve);
  out.a = class_from_json(q.at("a"), resolve);
  out.length = q.at("length").get<std::size_t>();
  auto kind = parse_requirement(q.at("requirement").get<std::string>());
  if (!kind) throw std::invalid_argument("unknown requirement in loop record");
  out.req.kind = *kind;
  if (q.contains("b")) out.req.b = class_from_json(q.at("b"), resolve);
  return {out, loop_verdict_from_json(j.at("verdict"), resolve)};
}

// Membership flags as loop records; injective flags are questions over the opposite algebra.
inline Json to_json(const MembershipReport& r, const Module& m, const ClassSpec& a, const ClassSpec& b) {
  Json flags = Json::object();
  for (Flag f : all_flags) {
    LoopQuery q;
    if (injective_side(f)) q = {dualize(m), dualize(b), {requirement_of(f), dualize(a)}, r.length};
    else q = {m, a, {requirement_of(f), b}, r.length};
    flags[to_string(f)] = loop_record(q, r.at(f));
  }
  return Json{{"kind", "classify"}, {"module", r.module}, {"a", r.a},     {"b", r.b},
              {"length", r.length}, {"flags", std::move(flags)}, {"violations", r.violations}};
}

inline Json to_json(const ClaimReport& r) {
  return Json{{"kind", "claim"},          {"claim", r.claim},       {"statement", r.statement},
              {"outcome", to_string(r.outcome)}, {"hypotheses", r.hypotheses}, {"checks", r.checks},
              {"findings", r.findings},   {"caveats", r.caveats},   {"failures", r.failures},
              {"violations", r.violations}};
}

inline Json to_json(const DimSup& d) { return d.text(); }

inline Json to_json(const UniverseDims& d) {
  auto list = [](const std::vector<std::pair<std::string, Verdict<std::size_t>>>& v) {
    Json out = Json::object();
    for (const auto& [n, x] : v) out[n] = to_json(x);
    return out;
  };
  return Json{{"kind", "universe-dims"}, {"gpd", list(d.gpd)},        {"gid", list(d.gid)},
              {"gl_gpd", to_json(d.gl_gpd)}, {"gl_gid", to_json(d.gl_gid)}, {"fgpd", to_json(d.fgpd)},
              {"fgid", to_json(d.fgid)}};
}

// Envelope shared by every command.  Timings live under their own key so that
// comparing two reports after dropping "timings" compares the mathematics only.
inline Json make_report(const std::string& command, Json query, const SearchBounds& bounds) {
  return Json{{"schema", report_schema},
              {"tool", {{"name", "gorenlab"}, {"version", tool_version}}},
              {"command", command},
              {"query", std::move(query)},
              {"bounds", to_json(bounds)},
              {"results", Json::array()},
              {"timings", Json::object()}};
}

inline Json without_timings(Json j) {
  if (j.is_object()) {
    j.erase("timings");
    for (auto& [k, v] : j.items()) v = without_timings(v);
  } else if (j.is_array()) {
    for (auto& v : j) v = without_timings(v);
  }
  return j;
}

// ---------------------------------------------------------------- re-verification

// Checks one loop record with the homology kit: exactness, closure, add(A) steps, requirement.
// Returns an empty string on success.  No search object is created.
inline std::string recheck_loop_record(const Json& rec, AlgebraResolver& resolve, const SearchBounds& bounds) {
  auto [q, v] = loop_record_from_json(rec, resolve);
  if (!v.certificate) return {};
  const LoopComplex& l = *v.certificate;
  auto chk = verify_loop(l);
  if (!chk.ok()) return chk.detail;
  if (l.length() != q.length) return "loop has length " + std::to_string(l.length());
  if (!(l.base == q.module)) return "loop is based elsewhere";
  if (!loop_in_class(l, q.a, bounds.hom_enum_cap)) return "a step object is outside add(" + q.a.name + ")";
  if (!loop_meets(l, q.a, q.req, bounds.ext_window)) return std::string("requirement ") + to_string(q.req.kind) + " fails";
  return {};
}

struct RecheckSummary {
  std::size_t certificates = 0;
  std::vector<std::string> failures;
};

// Walks a report and re-checks every loop certificate found in it.
inline RecheckSummary recheck_report(const Json& doc, const SearchBounds& bounds) {
  RecheckSummary s;
  AlgebraResolver resolve;
  if (doc.contains("algebras"))
    for (const auto& [name, text] : doc["algebras"].items()) resolve.add(build_algebra(text.get<std::string>()));
  std::function<void(const Json&, const std::string&)> walk = [&](const Json& j, const std::string& path) {
    if (j.is_object()) {
      if (j.contains("kind") && j["kind"] == "loop" && j.contains("verdict") && j["verdict"].contains("certificate")) {
        ++s.certificates;
        std::string why;
        try {
          why = recheck_loop_record(j, resolve, bounds);
        } catch (const std::exception& e) {
          why = e.what();
        }
        if (!why.empty()) s.failures.push_back(path + ": " + why);
        return;
      }
      for (const auto& [k, v] : j.items()) walk(v, path + "/" + k);
    } else if (j.is_array()) {
      for (std::size_t i = 0; i < j.size(); ++i) walk(j[i], path + "/" + std::to_string(i));
    }
  };
  walk(doc, "");
  return s;
}

}  // namespace gorenlab
