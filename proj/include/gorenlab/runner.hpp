#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <sstream>
#include <thread>

#include "serialize.hpp"

namespace gorenlab {

// Where an expected outcome comes from.
enum class Provenance { Paper, Derived, Trivial };

inline const char* to_string(Provenance p) {
  switch (p) {
    case Provenance::Paper: return "paper";
    case Provenance::Derived: return "derived";
    case Provenance::Trivial: return "trivial";
  }
  return "?";
}

// One membership flag of one module at one length.  Module names may be joined with '+'.
struct ExpectedFlag {
  std::string module;
  Flag flag;
  std::string a, b;
  std::size_t m;
  Outcome outcome;
  Provenance provenance;
  std::string note;
};

// One claim on a context built from named classes of the case.
struct ExpectedClaim {
  std::string claim;
  std::string a, b, z = "inj", w = "inj", x;
  std::size_t m = 1, n = 2;
  std::optional<Outcome> outcome;  // unset: only violations count
  Provenance provenance;
  std::string note;
};

struct CaseExpectations {
  std::vector<ExpectedFlag> flags;
  std::vector<ExpectedClaim> claims;
};

inline CaseExpectations expectations_for(const std::string& name) {
  using P = Provenance;
  constexpr Outcome Y = Outcome::Yes, N = Outcome::No;
  CaseExpectations e;
  if (name == "paper-ex-3.4") {
    e.flags = {
        {"S1", Flag::GP, "PX", "PX", 2, Y, P::Paper, "loop S1 -> P2 -> P1 -> S1"},
        {"S1", Flag::Periodic, "PX", "PX", 1, N, P::Paper, "dimension lattice"},
        {"S1+S2", Flag::GP, "PX", "PX", 1, Y, P::Paper, "S1 + S2 is 1-periodic"},
        {"P3", Flag::Periodic, "PX", "PX", 1, N, P::Paper, "no embedding into add(PX)"},
        {"P3", Flag::Periodic, "PX", "PX", 2, N, P::Paper, "no embedding into add(PX)"},
        {"P3", Flag::Periodic, "PX", "PX", 3, N, P::Paper, "no embedding into add(PX)"},
        {"P3", Flag::Periodic, "PX", "PX", 4, N, P::Paper, "no embedding into add(PX)"},
        {"P1", Flag::WGPProper, "PX", "PX", 1, Y, P::Trivial, "split loop P1 -> P1 + P1 -> P1"},
    };
    e.claims = {
        {"omega-trace", "PX", "PX", "inj", "inj", "PX", 2, 3, Y, P::Paper, "omega = add(P1 + P2) on the universe"},
        {"wsgp-eq-sgp", "PX", "PX", "inj", "inj", "PX", 2, 3, Y, P::Derived, "PX is Ext-orthogonal to itself"},
        {"gcd", "PX", "PX", "inj", "inj", "PX", 2, 4, Y, P::Derived, "universe flags at 1, 2, 4"},
    };
  } else if (name == "dual-numbers") {
    e.flags = {
        {"S", Flag::GPProper, "proj", "proj", 1, Y, P::Derived, "S -> A -> S"},
        {"S", Flag::GIProper, "proj", "proj", 1, Y, P::Derived, "dual of S -> A -> S"},
    };
    e.claims = {
        {"dim-equal", "proj", "proj", "inj", "inj", "proj", 1, 2, Y, P::Derived, "self-injective: all dimensions 0"},
        {"gcd", "proj", "proj", "inj", "inj", "proj", 2, 3, Y, P::Derived, "every module is 1-periodic"},
    };
  } else if (name == "nakayama-4") {
    e.flags = {
        {"M2", Flag::GPProper, "proj", "proj", 1, Y, P::Derived, "M2 -> A -> M2, dims 2 + 2 = 4"},
        {"M1", Flag::GPProper, "proj", "proj", 1, N, P::Derived, "dimension lattice"},
        {"M1", Flag::GPProper, "proj", "proj", 2, Y, P::Derived, "M1 -> A -> A -> M1"},
        {"M1", Flag::GPProper, "proj", "proj", 3, N, P::Derived, "odd length: dims 1 + 3 do not alternate"},
        {"M1", Flag::GPProper, "proj", "proj", 4, Y, P::Derived, "splice of the length 2 loop"},
    };
    e.claims = {
        {"gcd", "proj", "proj", "inj", "inj", "proj", 2, 4, Y, P::Paper, "proper at 2 and 4 iff proper at 2"},
        {"gcd", "proj", "proj", "inj", "inj", "proj", 2, 3, Y, P::Paper, "proper at 3 and 2 iff proper at 1"},
        {"dim-equal", "proj", "proj", "inj", "inj", "proj", 1, 2, Y, P::Derived, "self-injective: all dimensions 0"},
    };
  } else if (name == "semisimple-2") {
    for (const auto& info : claim_registry())
      e.claims.push_back({info.id, "proj", "proj", "inj", "inj", "proj", 1, 2, Y, P::Trivial, "every class is add of all modules"});
    e.flags = {{"S1+S2", Flag::WGPProper, "proj", "proj", 1, Y, P::Trivial, "split loop"}};
  } else if (name == "hereditary-A2") {
    e.flags = {
        {"S1", Flag::GP, "proj", "proj", 1, N, P::Derived, "hereditary: the Gorenstein class is add(proj)"},
        {"S1", Flag::GP, "proj", "proj", 2, N, P::Derived, "hereditary: the Gorenstein class is add(proj)"},
        {"S2", Flag::GP, "proj", "proj", 1, Y, P::Trivial, "S2 is projective"},
    };
    e.claims = {
        {"dim-equal", "proj", "proj", "inj", "inj", "proj", 1, 2, Y, P::Derived, "gl.dim 1"},
    };
  }
  return e;
}

// "S1+S2" -> the direct sum of the named universe members.
inline Module resolve_module(const CorpusCase& c, const std::string& spec) {
  std::vector<Module> parts;
  std::stringstream ss(spec);
  std::string part;
  while (std::getline(ss, part, '+')) parts.push_back(c.module(part));
  if (parts.size() == 1) return parts.front();
  return named(direct_sum(parts, c.algebra).module, spec);
}

inline ClaimContext claim_context(const CorpusCase& c, const ExpectedClaim& x) {
  ClaimContext ctx;
  ctx.algebra = c.algebra;
  ctx.universe = c.universe;
  ctx.a = c.cls(x.a);
  ctx.b = c.cls(x.b);
  ctx.z = c.cls(x.z);
  ctx.w = c.cls(x.w);
  ctx.x = c.cls(x.x.empty() ? x.a : x.x);
  ctx.m = x.m;
  ctx.n = x.n;
  return ctx;
}

struct CaseResult {
  Json body;
  double seconds = 0;
  std::size_t mismatches = 0, unknowns = 0, violations = 0;
};

inline Json flag_record(Engine& e, const CorpusCase& c, const ExpectedFlag& x, CaseResult& out) {
  const Module m = resolve_module(c, x.module);
  const ClassSpec &a = c.cls(x.a), &b = c.cls(x.b);
  Verdict<LoopComplex> v;
  LoopQuery q;
  Requirement req{requirement_of(x.flag), b};
  if (injective_side(x.flag)) {
    q = {dualize(m), dualize(b), {requirement_of(x.flag), dualize(a)}, x.m};
    v = e.dual().loop(q.module, q.a, x.m, q.req);
  } else {
    q = {m, a, req, x.m};
    v = e.loop(m, a, x.m, req);
  }
  if (v.outcome != x.outcome) ++out.mismatches;
  if (v.is_unknown()) ++out.unknowns;
  Json r = loop_record(q, v);
  r["expect"] = {{"module", x.module}, {"flag", to_string(x.flag)}, {"a", x.a}, {"b", x.b}, {"m", x.m},
                 {"outcome", to_string(x.outcome)}, {"provenance", to_string(x.provenance)}, {"note", x.note}};
  r["match"] = v.outcome == x.outcome;
  return r;
}

inline Json claim_record(Engine& e, const CorpusCase& c, const ExpectedClaim& x, CaseResult& out) {
  ClaimReport rep = verify_claim(x.claim, claim_context(c, x), e);
  const bool met = !x.outcome || rep.outcome == *x.outcome;
  if (!met) ++out.mismatches;
  if (rep.outcome == Outcome::Unknown) ++out.unknowns;
  out.violations += rep.violations.size();
  Json r = to_json(rep);
  r["expect"] = {{"a", x.a}, {"b", x.b}, {"z", x.z}, {"w", x.w}, {"x", x.x.empty() ? x.a : x.x}, {"m", x.m},
                 {"n", x.n}, {"outcome", x.outcome ? Json(to_string(*x.outcome)) : Json(nullptr)},
                 {"provenance", to_string(x.provenance)}, {"note", x.note}};
  r["match"] = met && rep.violations.empty();
  return r;
}

// Runs the expectations of one case, plus every claim on the default context
// (A = B = proj) to count violations.
inline CaseResult run_case(const std::string& name, const SearchBounds& bounds,
                           const std::optional<std::string>& only_claim = std::nullopt) {
  auto t0 = std::chrono::steady_clock::now();
  CaseResult out;
  CorpusCase c = corpus_case(name);
  Engine e(c.algebra, bounds);
  CaseExpectations exp = expectations_for(name);
  Json flags = Json::array(), claims = Json::array(), sweep = Json::array();
  if (!only_claim)
    for (const auto& x : exp.flags) flags.push_back(flag_record(e, c, x, out));
  for (const auto& x : exp.claims)
    if (!only_claim || x.claim == *only_claim) claims.push_back(claim_record(e, c, x, out));
  if (only_claim && claims.empty()) {
    ExpectedClaim x{*only_claim, c.classes.count("PX") ? "PX" : "proj", "", "inj", "inj", "", 2, 3,
                    std::nullopt, Provenance::Derived, "no recorded expectation"};
    x.b = x.a;
    claims.push_back(claim_record(e, c, x, out));
  }
  if (!only_claim)
    for (const auto& info : claim_registry()) {
      ClaimContext ctx = claim_context(c, {info.id, "proj", "proj", "inj", "inj", "proj", 2, 3, Outcome::Yes,
                                           Provenance::Derived, {}});
      ClaimReport rep = verify_claim(info.id, ctx, e);
      out.violations += rep.violations.size();
      sweep.push_back({{"claim", info.id}, {"outcome", to_string(rep.outcome)}, {"violations", rep.violations}});
    }
  Json universe = Json::array();
  for (const auto& u : c.universe) universe.push_back(u.name);
  out.body = {{"case", name},         {"description", c.description},
              {"algebra", c.algebra->name()}, {"universe", std::move(universe)},
              {"flags", std::move(flags)}, {"claims", std::move(claims)},
              {"violation_sweep", std::move(sweep)},
              {"summary", {{"mismatches", out.mismatches}, {"unknowns", out.unknowns}, {"violations", out.violations}}}};
  out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return out;
}

struct CorpusRun {
  Json report;
  std::size_t mismatches = 0, unknowns = 0, violations = 0;

  // 0 all met, 1 mismatch or violation, 3 undecided under strict mode.
  int exit_code(bool strict) const {
    if (mismatches || violations) return 1;
    if (strict && unknowns) return 3;
    return 0;
  }
};

// Cases run on a worker pool; results are placed by case name, not completion order.
inline CorpusRun run_corpus(const std::vector<std::string>& names, const SearchBounds& bounds, unsigned threads,
                            const std::optional<std::string>& only_claim = std::nullopt) {
  std::vector<std::string> sorted = names;
  std::sort(sorted.begin(), sorted.end());
  std::vector<CaseResult> results(sorted.size());
  std::vector<std::string> errors(sorted.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < sorted.size();) {
      try {
        results[i] = run_case(sorted[i], bounds, only_claim);
      } catch (const std::exception& ex) {
        errors[i] = ex.what();
      }
    }
  };
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(sorted.size())));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();

  CorpusRun run;
  Json query{{"cases", sorted}};
  if (only_claim) query["claim"] = *only_claim;
  run.report = make_report("corpus run", std::move(query), bounds);
  Json algebras = Json::object();
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (!errors[i].empty()) throw std::runtime_error("case " + sorted[i] + ": " + errors[i]);
    run.mismatches += results[i].mismatches;
    run.unknowns += results[i].unknowns;
    run.violations += results[i].violations;
    run.report["results"].push_back(results[i].body);
    run.report["timings"][sorted[i]] = results[i].seconds;
    algebras[results[i].body["algebra"].get<std::string>()] = corpus_algebra_text(sorted[i]);
  }
  run.report["algebras"] = std::move(algebras);
  run.report["summary"] = {{"mismatches", run.mismatches}, {"unknowns", run.unknowns}, {"violations", run.violations}};
  return run;
}

}  // namespace gorenlab
