// Acceptance checks: one PASS/FAIL line per criterion, nonzero exit on any failure.
// Exact arithmetic throughout, so every comparison is an equality.

#include <algorithm>
#include <array>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>

#include "gorenlab/runner.hpp"

using namespace gorenlab;

namespace {

class Criterion {
 public:
  explicit Criterion(std::string title) : title_(std::move(title)) {}

  void expect(bool ok, const std::string& what) {
    ++checks_;
    if (!ok) failures_.push_back(what);
  }

  bool report(int id) const {
    const bool ok = failures_.empty() && checks_ > 0;
    std::cout << (ok ? "PASS" : "FAIL") << "  " << id << "  " << title_ << "  (" << checks_ << " checks)\n";
    for (std::size_t i = 0; i < failures_.size() && i < 12; ++i) std::cout << "        - " << failures_[i] << '\n';
    if (failures_.size() > 12) std::cout << "        ... " << failures_.size() - 12 << " more\n";
    return ok;
  }

 private:
  std::string title_;
  std::size_t checks_ = 0;
  std::vector<std::string> failures_;
};

std::string dims_text(const Module& m) {
  std::string s = "(";
  for (std::size_t v = 0; v < m.dims().size(); ++v) s += (v ? "," : "") + std::to_string(m.dim(v));
  return s + ")";
}

bool iso(const Module& x, const Module& y) { return is_isomorphic(x, y).is_yes(); }

Requirement into(const ClassSpec& b) { return {RequirementKind::IntoB, b}; }

// Names of universe members that lie in add(B) and satisfy pred.
template <class Pred>
std::set<std::string> members_in(const CorpusCase& c, const ClassSpec& b, Pred pred) {
  std::set<std::string> out;
  for (const auto& u : c.universe)
    if (in_add(u.module, b).is_yes() && pred(u.module)) out.insert(u.name);
  return out;
}

std::string set_text(const std::set<std::string>& s) {
  std::string t = "{";
  for (const auto& x : s) t += (t.size() > 1 ? " " : "") + x;
  return t + "}";
}

// ---------------------------------------------------------------- 1

bool criterion_projectives_injectives() {
  Criterion c("paper algebra: dimension, projective and injective dimension vectors, I1 = P3");
  auto k = case_paper_example();
  const auto& alg = k.algebra;
  c.expect(alg->dimension() == 7, "dim = " + std::to_string(alg->dimension()));
  const std::vector<std::vector<std::size_t>> pdims = {{1, 1, 0}, {1, 1, 0}, {1, 1, 1}};
  for (std::size_t v = 0; v < 3; ++v) {
    Module p = projective(alg, v);
    c.expect(p.dims() == pdims[v], "P" + std::to_string(v + 1) + " " + dims_text(p));
  }
  Module i3 = injective(alg, 2);
  c.expect(i3.dims() == std::vector<std::size_t>({0, 0, 1}), "I3 " + dims_text(i3));
  c.expect(iso(injective(alg, 0), projective(alg, 2)), "I1 is not isomorphic to P3");
  return c.report(1);
}

// ---------------------------------------------------------------- 2

bool criterion_s1_loop() {
  Criterion c("S1 is 2-periodic through P2 and P1, not 1-periodic; S1+S2 is 1-periodic Gorenstein");
  auto k = case_paper_example();
  Engine e(k.algebra, SearchBounds{});
  const ClassSpec& PX = k.cls("PX");
  const Module& S1 = k.module("S1");

  auto two = e.loop(S1, PX, 2, into(PX));
  c.expect(two.is_yes(), "m=2 loop at S1 not found: " + two.detail);
  if (two.is_yes()) {
    const LoopComplex& l = *two.certificate;
    c.expect(verify_loop(l).ok(), "certificate is not an exact loop");
    c.expect(l.length() == 2, "length " + std::to_string(l.length()));
    c.expect(iso(l.step(1), k.module("P1")), "A_1 = " + dims_text(l.step(1)) + ", expected P1");
    c.expect(iso(l.step(2), k.module("P2")), "A_2 = " + dims_text(l.step(2)) + ", expected P2");
    c.expect(iso(l.cycle(1), k.module("S2")), "middle cycle " + dims_text(l.cycle(1)) + ", expected S2");
    c.expect(iso(l.cycle(0), S1) && l.cycle(2) == S1, "loop does not close at S1");
    c.expect(loop_meets(l, PX, into(PX), 3), "loop is not Hom(-,PX)-acyclic");
  }

  auto one = e.loop(S1, PX, 1, into(PX));
  c.expect(one.is_no(), std::string("m=1 at S1 is ") + to_string(one.outcome));
  c.expect(one.is_no() && one.obstruction == Obstruction::DimensionLattice,
           std::string("m=1 obstruction ") + to_string(one.obstruction));

  Module s12 = resolve_module(k, "S1+S2");
  auto gp = e.classify(s12, PX, PX, 1);
  c.expect(gp.at(Flag::GP).is_yes(), "S1+S2 pi-GP at m=1: " + gp.at(Flag::GP).detail);
  c.expect(gp.violations.empty(), "classify violations on S1+S2");
  return c.report(2);
}

// ---------------------------------------------------------------- 3

bool criterion_p3_never_periodic() {
  Criterion c("P3 admits no Hom(-,PX)-acyclic PX-loop for m = 1..4");
  auto k = case_paper_example();
  Engine e(k.algebra, SearchBounds{});
  const ClassSpec& PX = k.cls("PX");
  for (std::size_t m = 1; m <= 4; ++m) {
    auto v = e.loop(k.module("P3"), PX, m, into(PX));
    c.expect(v.is_no() && v.obstruction == Obstruction::NoEmbedding,
             "m=" + std::to_string(m) + ": " + to_string(v.outcome) + " " + to_string(v.obstruction));
  }
  return c.report(3);
}

// ---------------------------------------------------------------- 4

bool criterion_omega_trace() {
  Criterion c("paper pair PX/PX: omega, proper periodic, periodic and Gorenstein classes met with B are {P1 P2}");
  auto k = case_paper_example();
  Engine e(k.algebra, SearchBounds{});
  const ClassSpec& PX = k.cls("PX");
  const std::set<std::string> want = {"P1", "P2"};

  auto omega = members_in(k, PX, [&](const Module& u) { return in_add(u, PX).is_yes(); });
  c.expect(omega == want, "omega " + set_text(omega));
  for (std::size_t m : {1u, 2u}) {
    const std::string at = " at m=" + std::to_string(m) + " ";
    auto proper = members_in(k, PX, [&](const Module& u) { return e.classify(u, PX, PX, m).at(Flag::GPProper).is_yes(); });
    auto plain = members_in(k, PX, [&](const Module& u) { return e.classify(u, PX, PX, m).at(Flag::GP).is_yes(); });
    c.expect(proper == want, "proper" + at + set_text(proper));
    c.expect(plain == want, "plain" + at + set_text(plain));
  }
  auto gor = members_in(k, PX, [&](const Module& u) { return e.in_gp(u, PX, PX, k.universe_modules()).is_yes(); });
  c.expect(gor == want, "Gorenstein " + set_text(gor));

  ClaimContext ctx;
  ctx.algebra = k.algebra;
  ctx.universe = k.universe;
  ctx.a = ctx.b = ctx.x = PX;
  ctx.z = ctx.w = k.cls("inj");
  ctx.m = 2;
  ctx.n = 3;
  auto r = verify_claim("omega-trace", ctx, e);
  c.expect(r.outcome == Outcome::Yes && r.agrees(), std::string("omega-trace claim ") + to_string(r.outcome));
  return c.report(4);
}

// ---------------------------------------------------------------- 5

bool criterion_nakayama_periods() {
  Criterion c("nakayama-4: M1 proper periodic exactly at even m, gcd claim, pi_3 meet pi_2 = pi_1");
  auto k = case_nakayama4();
  Engine e(k.algebra, SearchBounds{});
  const ClassSpec& P = k.cls("proj");
  auto proper = [&](const Module& m, std::size_t len) { return e.classify(m, P, P, len).at(Flag::GPProper); };

  const Module& m1 = k.module("M1");
  for (std::size_t m : {2u, 4u}) c.expect(proper(m1, m).is_yes(), "M1 not proper periodic at m=" + std::to_string(m));
  for (std::size_t m : {1u, 3u}) c.expect(proper(m1, m).is_no(), "M1 not refuted at m=" + std::to_string(m));

  ClaimContext ctx;
  ctx.algebra = k.algebra;
  ctx.universe = k.universe;
  ctx.a = ctx.b = ctx.x = P;
  ctx.z = ctx.w = k.cls("inj");
  ctx.m = 2;
  ctx.n = 4;
  auto g = verify_claim("gcd", ctx, e);
  c.expect(g.outcome == Outcome::Yes && g.agrees(), std::string("gcd claim ") + to_string(g.outcome));

  for (const auto& u : k.universe) {
    auto p1 = proper(u.module, 1), p2 = proper(u.module, 2), p3 = proper(u.module, 3);
    c.expect(!p1.is_unknown() && !p2.is_unknown() && !p3.is_unknown(), u.name + ": unknown flag");
    c.expect((p3.is_yes() && p2.is_yes()) == p1.is_yes(), u.name + ": pi_3 meet pi_2 differs from pi_1");
  }
  c.expect(!(proper(m1, 3).is_yes() && proper(m1, 2).is_yes()), "M1 lies in pi_3 meet pi_2");
  const Module& m4 = k.module("M4");
  c.expect(proper(m4, 1).is_yes() && proper(m4, 2).is_yes() && proper(m4, 3).is_yes(), "M4 missing from pi_3 meet pi_2");
  return c.report(5);
}

// ---------------------------------------------------------------- 6

struct FoundLoop {
  std::string where;
  ClassSpec a, b;
  Module module;
  std::size_t m;
  LoopComplex loop;
};

std::vector<std::string> class_pairs(const CorpusCase& c) {
  std::vector<std::string> out = {"proj"};
  if (c.classes.count("PX")) out.push_back("PX");
  return out;
}

bool criterion_properties() {
  Criterion c("property suite over corpus loops: shifting, orthogonality, Euler characteristic, splicing, lattice, duality, claims");
  const std::size_t window = 3;

  for (const auto& name : corpus_case_names()) {
    auto k = corpus_case(name);
    Engine e(k.algebra, SearchBounds{});

    std::vector<FoundLoop> loops;
    for (const auto& ab : class_pairs(k)) {
      const ClassSpec& A = k.cls(ab);
      for (const auto& u : k.universe)
        for (std::size_t m : {1u, 2u}) {
          auto v = e.loop(u.module, A, m, into(A));
          if (v.is_yes()) loops.push_back({name + "/" + ab + "/" + u.name + "/m=" + std::to_string(m), A, A, u.module, m, *v.certificate});
        }
    }
    c.expect(!loops.empty() || name == "hereditary-A2", name + ": no loops found to test");

    for (const auto& f : loops) {
      const LoopComplex& l = f.loop;
      // Euler characteristic of an exact bounded complex vanishes.
      auto chi = euler_characteristic(l);
      c.expect(std::all_of(chi.begin(), chi.end(), [](long long x) { return x == 0; }), f.where + ": Euler characteristic");

      // Degree shifting along 0 -> Z_{k+1} -> A_{k+1} -> Z_k -> 0.
      const bool hereditary = check_hereditary_pair(f.a, f.b, window + 1);
      const bool rigid = check_hereditary_pair(f.a, f.a, window + 1);
      for (std::size_t k2 = 0; k2 < l.length(); ++k2) {
        for (const auto& g : f.b.generators) {
          if (!hereditary) break;
          auto lo = ext_dimensions(l.cycle(k2 + 1), g, window);
          auto hi = ext_dimensions(l.cycle(k2), g, window);
          for (std::size_t i = 1; i < window; ++i)
            c.expect(lo[i] == hi[i + 1], f.where + ": Ext^" + std::to_string(i) + "(Z_" + std::to_string(k2 + 1) + ", B) shift");
        }
        for (const auto& g : f.a.generators) {
          if (!rigid) break;
          auto lo = ext_dimensions(g, l.cycle(k2), window);
          auto hi = ext_dimensions(g, l.cycle(k2 + 1), window);
          for (std::size_t i = 1; i < window; ++i)
            c.expect(lo[i] == hi[i + 1], f.where + ": Ext^" + std::to_string(i) + "(A, Z_" + std::to_string(k2) + ") shift");
        }
      }

      // Splicing a loop with itself doubles the period and keeps every flag.
      LoopComplex twice = splice(l, l);
      c.expect(twice.length() == 2 * f.m && verify_loop(twice).ok(), f.where + ": splice is not an exact loop");
      c.expect(loop_in_class(twice, f.a, 1u << 20), f.where + ": splice leaves add(A)");
      c.expect(loop_meets(twice, f.a, into(f.b), window), f.where + ": splice loses acyclicity");
      if (f.m == 1) {
        auto again = e.loop(f.module, f.a, 2, into(f.b));
        c.expect(again.is_yes(), f.where + ": search misses the doubled period");
      }
    }

    for (const auto& ab : class_pairs(k)) {
      const ClassSpec& A = k.cls(ab);
      const ClassSpec dA = dualize(A);
      Engine& d = e.dual();
      for (const auto& u : k.universe)
        for (std::size_t m : {1u, 2u}) {
          const std::string where = name + "/" + ab + "/" + u.name + "/m=" + std::to_string(m);
          auto r = e.classify(u.module, A, A, m);
          c.expect(r.violations.empty(), where + ": implication violations");

          // Implication lattice, re-checked on the stronger flag's certificate.
          const std::pair<Flag, Flag> edges[] = {{Flag::WGPProper, Flag::WGP}, {Flag::WGPProper, Flag::GPProper},
                                                 {Flag::GPProper, Flag::GP},   {Flag::WGP, Flag::GP},
                                                 {Flag::GP, Flag::Periodic},   {Flag::GIProper, Flag::GI},
                                                 {Flag::WGIProper, Flag::WGI}, {Flag::WGI, Flag::GI}};
          for (const auto& [strong, weak] : edges) {
            const auto& s = r.at(strong);
            if (!s.is_yes()) continue;
            c.expect(r.at(weak).is_yes(), where + ": " + to_string(strong) + " without " + to_string(weak));
            const bool inj = injective_side(weak);
            Requirement req{requirement_of(weak), inj ? dA : A};
            c.expect(loop_meets(*s.certificate, inj ? dA : A, req, window),
                     where + ": " + to_string(strong) + " certificate fails " + to_string(weak));
          }

          // Duality: injective flags of M are the projective flags of its dual over the opposite algebra.
          Module du = dualize(u.module);
          c.expect(dualize(du) == u.module, where + ": double dual differs");
          auto rd = d.classify(du, dA, dA, m);
          for (auto [p, i] : {std::pair{Flag::GP, Flag::GI}, std::pair{Flag::WGP, Flag::WGI},
                              std::pair{Flag::GPProper, Flag::GIProper}, std::pair{Flag::WGPProper, Flag::WGIProper}})
            c.expect(rd.at(p).outcome == r.at(i).outcome, where + ": " + to_string(i) + " disagrees with its dual");
        }
    }

    // Every claim, several contexts: no failure with verified hypotheses.
    for (const auto& ab : class_pairs(k))
      for (std::size_t m : {1u, 2u})
        for (const auto& info : claim_registry()) {
          ClaimContext ctx;
          ctx.algebra = k.algebra;
          ctx.universe = k.universe;
          ctx.a = ctx.b = ctx.x = k.cls(ab);
          ctx.z = ctx.w = k.cls("inj");
          ctx.m = m;
          ctx.n = info.id == "gcd" ? 2 * m : 3;
          auto r = verify_claim(info.id, ctx, e);
          c.expect(r.agrees(), name + "/" + ab + "/m=" + std::to_string(m) + " " + info.id + ": " +
                                   (r.violations.empty() ? "" : r.violations.front()));
          if ((info.id == "orth-equiv" || info.id == "rigid-acyc" || info.id == "shifting") && r.hypotheses)
            c.expect(r.outcome != Outcome::No, name + "/" + ab + " " + info.id + " is No with hypotheses verified");
        }
  }
  return c.report(6);
}

// ---------------------------------------------------------------- 7

// Ext^1 between simples counts arrows, Ext^2 counts minimal relations, read off the presentation.
bool criterion_ext_oracle() {
  Criterion c("Ext^1 and Ext^2 between simples match arrow and relation counts");
  for (const auto& name : corpus_case_names()) {
    auto k = corpus_case(name);
    const auto& alg = k.algebra;
    const Presentation& pres = alg->presentation();
    const Quiver& q = alg->quiver();
    const std::size_t n = q.vertices.size();
    std::vector<std::vector<std::size_t>> arrows(n, std::vector<std::size_t>(n, 0)), rels = arrows;
    for (const auto& a : q.arrows) ++arrows[a.source][a.target];
    for (const auto& r : pres.relations) {
      const Path& p = r.terms.front().path;
      ++rels[p.start][p.end(q)];
    }
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        auto ext = ext_dimensions(simple(alg, i), simple(alg, j), 2);
        const std::string at = name + " S" + q.vertices[i] + ",S" + q.vertices[j];
        c.expect(ext[1] == arrows[i][j], at + ": Ext^1 = " + std::to_string(ext[1]) + ", arrows " + std::to_string(arrows[i][j]));
        c.expect(ext[2] == rels[i][j], at + ": Ext^2 = " + std::to_string(ext[2]) + ", relations " + std::to_string(rels[i][j]));
      }
  }
  return c.report(7);
}

// ---------------------------------------------------------------- 8

bool criterion_self_injective_dims() {
  Criterion c("self-injective cases: dimension equalities hold and both global Gorenstein dimensions are 0");
  for (const char* name : {"dual-numbers", "nakayama-4"}) {
    auto k = corpus_case(name);
    Engine e(k.algebra, SearchBounds{});
    const ClassSpec& P = k.cls("proj");
    const ClassSpec& I = k.cls("inj");
    auto d = e.universe_dims(k.universe_modules(), P, P, I, I);
    c.expect(d.gl_gpd.text() == "0", std::string(name) + ": gl GPD " + d.gl_gpd.text());
    c.expect(d.gl_gid.text() == "0", std::string(name) + ": gl GID " + d.gl_gid.text());
    c.expect(d.fgpd == d.gl_gpd && d.fgid == d.gl_gid, std::string(name) + ": finitistic differs from global");

    ClaimContext ctx;
    ctx.algebra = k.algebra;
    ctx.universe = k.universe;
    ctx.a = ctx.b = ctx.x = P;
    ctx.z = ctx.w = I;
    ctx.m = 1;
    ctx.n = 2;
    auto r = verify_claim("dim-equal", ctx, e);
    c.expect(r.outcome == Outcome::Yes && r.hypotheses && r.agrees(), std::string(name) + ": dim-equal " + to_string(r.outcome));
  }
  return c.report(8);
}

// ---------------------------------------------------------------- 9

struct Captured {
  int status = -1;
  std::string out;
};

Captured capture(const std::string& cmd) {
  Captured c;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return c;
  std::array<char, 4096> buf;
  std::size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) c.out.append(buf.data(), got);
  int raw = pclose(pipe);
  c.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return c;
}

bool criterion_cli_determinism() {
  Criterion c("CLI corpus run with 1 and 8 threads: identical reports apart from timings");
  const char* cli = std::getenv("GORENLAB_CLI");
  c.expect(cli && *cli, "GORENLAB_CLI is not set");
  if (cli && *cli) {
    const std::string base = std::string("\"") + cli + "\" corpus run --compact --threads ";
    auto one = capture(base + "1");
    auto eight = capture(base + "8");
    c.expect(one.status == 0, "1 thread: exit " + std::to_string(one.status));
    c.expect(eight.status == 0, "8 threads: exit " + std::to_string(eight.status));
    Json a, b;
    try {
      a = Json::parse(one.out);
      b = Json::parse(eight.out);
    } catch (const Json::parse_error& e) {
      c.expect(false, std::string("report is not JSON: ") + e.what());
    }
    c.expect(a.is_object() && a.value("schema", "") == report_schema, "unexpected schema");
    c.expect(a.contains("timings") && b.contains("timings"), "timings missing");
    c.expect(without_timings(a).dump() == without_timings(b).dump(), "reports differ");
    c.expect(a.contains("results") && a["results"].size() == corpus_case_names().size(), "case count");
  }
  return c.report(9);
}

}  // namespace

int main() {
  bool ok = true;
  ok &= criterion_projectives_injectives();
  ok &= criterion_s1_loop();
  ok &= criterion_p3_never_periodic();
  ok &= criterion_omega_trace();
  ok &= criterion_nakayama_periods();
  ok &= criterion_properties();
  ok &= criterion_ext_oracle();
  ok &= criterion_self_injective_dims();
  ok &= criterion_cli_determinism();
  std::cout << (ok ? "all criteria passed" : "some criteria failed") << '\n';
  return ok ? 0 : 1;
}
