#pragma once

#include <map>
#include <string>
#include <vector>

#include "decompose.hpp"
#include "module.hpp"
#include "quiver.hpp"

namespace gorenlab {

struct NamedModule {
  std::string name;
  Module module;
};

// A built-in test case: algebra, universe of indecomposables, named classes.
struct CorpusCase {
  std::string name;
  std::string description;
  AlgebraPtr algebra;
  std::vector<NamedModule> universe;
  std::map<std::string, ClassSpec> classes;

  const Module& module(const std::string& n) const {
    for (const auto& u : universe)
      if (u.name == n) return u.module;
    throw std::out_of_range("case '" + name + "' has no module '" + n + "'");
  }
  const ClassSpec& cls(const std::string& n) const {
    auto it = classes.find(n);
    if (it == classes.end()) throw std::out_of_range("case '" + name + "' has no class '" + n + "'");
    return it->second;
  }
  std::vector<Module> universe_modules() const {
    std::vector<Module> out;
    for (const auto& u : universe) out.push_back(u.module);
    return out;
  }
};

namespace corpus_text {

inline const char* paper_example = R"(# three vertices, 2-cycle a b plus c into vertex 2
algebra paper-ex-3.4 over GF(2)
vertices: 1 2 3
arrows: a: 1 -> 2, b: 2 -> 1, c: 3 -> 2
relations: a*b, b*a
)";

inline const char* dual_numbers = R"(algebra dual-numbers over GF(2)
vertices: 1
arrows: x: 1 -> 1
relations: x*x
)";

inline const char* nakayama4 = R"(algebra nakayama-4 over GF(2)
vertices: 1
arrows: x: 1 -> 1
relations: x*x*x*x
)";

inline const char* semisimple2 = R"(algebra semisimple-2 over GF(2)
vertices: 1 2
)";

inline const char* hereditary_a2 = R"(algebra hereditary-A2 over GF(2)
vertices: 1 2
arrows: a: 1 -> 2
)";

}  // namespace corpus_text

inline Module named(Module m, const std::string& n) {
  m.set_name(n);
  return m;
}

inline ClassSpec make_class(const std::string& name, const std::vector<Module>& gens) { return {name, gens}; }

// k[x]/(x^j) as a quotient of the regular module of k[x]/(x^n).
inline Module truncated_uniserial(const AlgebraPtr& alg, std::size_t j) {
  Module p = projective(alg, 0);
  const std::size_t n = p.dim(0);
  Matrix basis(n, n - j, alg->prime());
  for (std::size_t k = j; k < n; ++k) basis(k, k - j) = 1;
  return named(quotient(p, {basis}).module, "M" + std::to_string(j));
}

inline CorpusCase case_paper_example() {
  CorpusCase c;
  c.name = "paper-ex-3.4";
  c.description = "Three-vertex algebra with a 2-cycle a,b (ab=ba=0) and an arrow c: 3->2";
  c.algebra = build_algebra(corpus_text::paper_example);
  const auto& A = c.algebra;
  Module S1 = named(simple(A, 0), "S1"), S2 = named(simple(A, 1), "S2"), S3 = named(simple(A, 2), "S3");
  Module P1 = named(projective(A, 0), "P1"), P2 = named(projective(A, 1), "P2"), P3 = named(projective(A, 2), "P3");
  Module I1 = named(injective(A, 0), "I1"), I2 = named(injective(A, 1), "I2"), I3 = named(injective(A, 2), "I3");
  Module P3top = named(quotient(P3, socle(P3).inclusion.blocks).module, "P3/S1");
  c.universe = {{"S1", S1}, {"S2", S2}, {"S3", S3}, {"P1", P1}, {"P2", P2}, {"P3", P3}, {"I2", I2}, {"P3/S1", P3top}};
  c.classes["X"] = make_class("X", {S1, P2, S2, P1});
  c.classes["PX"] = make_class("PX", {P1, P2});
  c.classes["proj"] = make_class("proj", {P1, P2, P3});
  c.classes["inj"] = make_class("inj", {I1, I2, I3});
  c.classes["all"] = make_class("all", c.universe_modules());
  return c;
}

inline CorpusCase case_dual_numbers() {
  CorpusCase c;
  c.name = "dual-numbers";
  c.description = "k[x]/(x^2), self-injective";
  c.algebra = build_algebra(corpus_text::dual_numbers);
  Module S = named(simple(c.algebra, 0), "S"), L = named(projective(c.algebra, 0), "A");
  c.universe = {{"S", S}, {"A", L}};
  c.classes["proj"] = make_class("proj", {L});
  c.classes["inj"] = make_class("inj", {named(injective(c.algebra, 0), "I")});
  c.classes["all"] = make_class("all", {S, L});
  return c;
}

inline CorpusCase case_nakayama4() {
  CorpusCase c;
  c.name = "nakayama-4";
  c.description = "k[x]/(x^4), self-injective Nakayama algebra";
  c.algebra = build_algebra(corpus_text::nakayama4);
  for (std::size_t j = 1; j <= 4; ++j) {
    Module m = truncated_uniserial(c.algebra, j);
    c.universe.push_back({m.name(), m});
  }
  c.classes["proj"] = make_class("proj", {c.module("M4")});
  c.classes["inj"] = make_class("inj", {named(injective(c.algebra, 0), "I")});
  c.classes["all"] = make_class("all", c.universe_modules());
  return c;
}

inline CorpusCase case_semisimple2() {
  CorpusCase c;
  c.name = "semisimple-2";
  c.description = "k x k";
  c.algebra = build_algebra(corpus_text::semisimple2);
  Module S1 = named(simple(c.algebra, 0), "S1"), S2 = named(simple(c.algebra, 1), "S2");
  c.universe = {{"S1", S1}, {"S2", S2}};
  c.classes["proj"] = make_class("proj", {S1, S2});
  c.classes["inj"] = make_class("inj", {S1, S2});
  c.classes["all"] = make_class("all", {S1, S2});
  return c;
}

inline CorpusCase case_hereditary_a2() {
  CorpusCase c;
  c.name = "hereditary-A2";
  c.description = "path algebra of 1 -> 2";
  c.algebra = build_algebra(corpus_text::hereditary_a2);
  const auto& A = c.algebra;
  Module S1 = named(simple(A, 0), "S1"), S2 = named(simple(A, 1), "S2"), P1 = named(projective(A, 0), "P1");
  c.universe = {{"S1", S1}, {"S2", S2}, {"P1", P1}};
  c.classes["proj"] = make_class("proj", {P1, named(projective(A, 1), "P2")});
  c.classes["inj"] = make_class("inj", {named(injective(A, 0), "I1"), named(injective(A, 1), "I2")});
  c.classes["all"] = make_class("all", c.universe_modules());
  return c;
}

inline std::vector<std::string> corpus_case_names() {
  return {"dual-numbers", "hereditary-A2", "nakayama-4", "paper-ex-3.4", "semisimple-2"};
}

inline CorpusCase corpus_case(const std::string& name) {
  if (name == "paper-ex-3.4") return case_paper_example();
  if (name == "dual-numbers") return case_dual_numbers();
  if (name == "nakayama-4") return case_nakayama4();
  if (name == "semisimple-2") return case_semisimple2();
  if (name == "hereditary-A2") return case_hereditary_a2();
  throw std::out_of_range("unknown corpus case '" + name + "'");
}

inline const char* corpus_algebra_text(const std::string& name) {
  if (name == "paper-ex-3.4") return corpus_text::paper_example;
  if (name == "dual-numbers") return corpus_text::dual_numbers;
  if (name == "nakayama-4") return corpus_text::nakayama4;
  if (name == "semisimple-2") return corpus_text::semisimple2;
  if (name == "hereditary-A2") return corpus_text::hereditary_a2;
  return nullptr;
}

}  // namespace gorenlab
