// gorenlab: command-line front end.  Reports go to stdout as JSON, diagnostics to stderr.
// Exit codes: 0 ok, 1 mismatch or failed re-check, 2 usage or parse error, 3 Unknown under --strict.

#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "gorenlab/runner.hpp"

using namespace gorenlab;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Options {
  std::vector<std::string> algebra_files;
  std::optional<std::size_t> max_step_dim, ext_window, depth;
  std::optional<std::uint64_t> hom_enum_cap, node_budget;
  bool strict = false;
  bool recheck = false;
  bool compact = false;
};

class Session {
 public:
  explicit Session(const Options& o) : opt_(o) {
    for (const auto& n : corpus_case_names()) {
      cases_.push_back(corpus_case(n));
      resolve_.add(cases_.back().algebra);
    }
    for (const auto& f : o.algebra_files) {
      auto alg = build_algebra(read_file(f));
      resolve_.add(alg);
      extra_[alg->name()] = format_algebra(alg->presentation());
    }
    bounds_ = SearchBounds::from_env();
    if (o.max_step_dim) bounds_.max_step_dim = *o.max_step_dim;
    if (o.ext_window) bounds_.ext_window = *o.ext_window;
    if (o.depth) bounds_.depth = *o.depth;
    if (o.hom_enum_cap) bounds_.hom_enum_cap = *o.hom_enum_cap;
    if (o.node_budget) bounds_.node_budget = *o.node_budget;
  }

  const SearchBounds& bounds() const { return bounds_; }
  AlgebraResolver& resolver() { return resolve_; }

  Module module(const std::string& path) { return parse_module(read_file(path), resolve_); }

  const CorpusCase* case_for(const AlgebraPtr& alg) const {
    for (const auto& c : cases_)
      if (c.algebra->name() == alg->name()) return &c;
    return nullptr;
  }

  // A class is a built-in name (proj, inj, or a class of the matching corpus case)
  // or a comma-separated list of module files.
  ClassSpec cls(const std::string& spec, const AlgebraPtr& alg) {
    if (spec.find(".mod") != std::string::npos) {
      ClassSpec c{spec, {}};
      std::stringstream ss(spec);
      std::string f;
      while (std::getline(ss, f, ',')) c.generators.push_back(module(f));
      return c;
    }
    if (const CorpusCase* c = case_for(alg); c && c->classes.count(spec)) return c->cls(spec);
    if (spec == "proj" || spec == "inj") {
      ClassSpec c{spec, {}};
      for (std::size_t v = 0; v < alg->vertex_count(); ++v)
        c.generators.push_back(spec == "proj" ? projective(alg, v) : injective(alg, v));
      return c;
    }
    throw UsageError("unknown class '" + spec + "' over " + alg->name());
  }

  Json report(const std::string& command, Json query) { return make_report(command, std::move(query), bounds_); }

  // Prints the report; re-checks its certificates first when asked.
  int emit(Json& doc, int code) {
    for (const auto& [name, text] : extra_) doc["algebras"][name] = text;
    if (opt_.recheck) {
      auto s = recheck_report(doc, bounds_);
      doc["recheck"] = {{"certificates", s.certificates}, {"failures", s.failures}};
      if (!s.failures.empty()) code = std::max(code, 1);
    }
    std::cout << (opt_.compact ? doc.dump() : doc.dump(2)) << '\n';
    return code;
  }

  int verdict_code(Outcome o) const { return opt_.strict && o == Outcome::Unknown ? 3 : 0; }

  bool strict() const { return opt_.strict; }

 private:
  Options opt_;
  std::vector<CorpusCase> cases_;
  AlgebraResolver resolve_;
  SearchBounds bounds_;
  std::map<std::string, std::string> extra_;
};

Json dims_json(const Module& m) { return m.dims(); }

int cmd_algebra_check(Session& s, const std::string& file) {
  auto alg = build_algebra(read_file(file));
  s.resolver().add(alg);
  Json projs = Json::array(), injs = Json::array(), audit = Json::array();
  std::size_t psum = 0, isum = 0;
  bool ok = true;
  auto check = [&](const std::string& what, bool holds) {
    audit.push_back({{"check", what}, {"holds", holds}});
    ok = ok && holds;
  };
  const std::size_t n = alg->vertex_count();
  for (std::size_t v = 0; v < n; ++v) {
    Module p = projective(alg, v), i = injective(alg, v);
    projs.push_back(dims_json(p));
    injs.push_back(dims_json(i));
    psum += p.total_dim();
    isum += i.total_dim();
    check("P(" + alg->quiver().vertices[v] + ") satisfies the relations", p.satisfies_relations());
    check("I(" + alg->quiver().vertices[v] + ") satisfies the relations", i.satisfies_relations());
    for (std::size_t w = 0; w < n; ++w) {
      Module pw = projective(alg, w);
      check("dim Hom(P(" + alg->quiver().vertices[v] + "), P(" + alg->quiver().vertices[w] + ")) = dim at vertex",
            hom_basis(p, pw).size() == pw.dim(v));
    }
  }
  check("sum of dim P(i) = dim algebra", psum == alg->dimension());
  check("sum of dim I(i) = dim algebra", isum == alg->dimension());
  Json doc = s.report("algebra check", {{"file", file}});
  doc["algebras"] = {{alg->name(), format_algebra(alg->presentation())}};
  doc["results"].push_back({{"kind", "algebra"},
                            {"name", alg->name()},
                            {"prime", alg->prime()},
                            {"vertices", alg->quiver().vertices},
                            {"arrows", alg->arrow_count()},
                            {"dimension", alg->dimension()},
                            {"projective_dims", projs},
                            {"injective_dims", injs},
                            {"audit", audit}});
  return s.emit(doc, ok ? 0 : 1);
}

int cmd_module_info(Session& s, const std::string& file) {
  Module m = s.module(file);
  auto d = decompose(m, s.bounds().hom_enum_cap);
  Json summands = Json::array();
  for (const auto& x : d.summands) summands.push_back(dims_json(x.module));
  Json doc = s.report("module info", {{"file", file}});
  doc["results"].push_back({{"kind", "module"},
                            {"module", to_json(m)},
                            {"total_dim", m.total_dim()},
                            {"endomorphism_dim", hom_basis(m, m).size()},
                            {"summand_dims", summands},
                            {"decomposition_certified", d.certified},
                            {"text", format_module(m)}});
  return s.emit(doc, 0);
}

int cmd_hom_ext(Session& s, const std::string& a, const std::string& b, std::optional<std::size_t> degree) {
  Module m = s.module(a), n = s.module(b);
  if (!m.same_algebra(n)) throw UsageError("modules live over different algebras");
  std::size_t dim = degree ? ext_dimension(*degree, m, n) : hom_basis(m, n).size();
  Json doc = s.report(degree ? "ext" : "hom", {{"source", a}, {"target", b}});
  if (degree) doc["query"]["degree"] = *degree;
  doc["results"].push_back({{"kind", degree ? "ext" : "hom"}, {"dimension", dim}});
  return s.emit(doc, 0);
}

int cmd_loop(Session& s, const std::string& file, const std::string& a_spec, const std::string& b_spec,
             std::size_t len, std::string require, const std::string& expect) {
  Module m = s.module(file);
  ClassSpec a = s.cls(a_spec, m.algebra_ptr());
  if (require.empty()) require = b_spec.empty() ? "none" : "into-B-acyclic";
  auto kind = parse_requirement(require);
  if (!kind) throw UsageError("unknown requirement '" + require + "'");
  Requirement req{*kind, {}};
  if (req.uses_b()) {
    if (b_spec.empty()) throw UsageError("requirement '" + require + "' needs --test");
    req.b = s.cls(b_spec, m.algebra_ptr());
  }
  Engine e(m.algebra_ptr(), s.bounds());
  auto v = e.loop(m, a, len, req);
  Json doc = s.report("loop", {{"file", file}, {"class", a_spec}, {"test", b_spec}, {"length", len}, {"require", require}});
  doc["results"].push_back(loop_record({m, a, req, len}, v));
  int code = s.verdict_code(v.outcome);
  if (!expect.empty()) {
    bool met = expect == to_string(v.outcome);
    doc["results"][0]["expect"] = expect;
    doc["results"][0]["match"] = met;
    if (!met) code = 1;
  }
  return s.emit(doc, code);
}

int cmd_classify(Session& s, const std::string& file, const std::string& a_spec, const std::string& b_spec,
                 std::size_t len) {
  Module m = s.module(file);
  ClassSpec a = s.cls(a_spec, m.algebra_ptr()), b = s.cls(b_spec, m.algebra_ptr());
  Engine e(m.algebra_ptr(), s.bounds());
  auto r = e.classify(m, a, b, len);
  Json doc = s.report("classify", {{"file", file}, {"a", a_spec}, {"b", b_spec}, {"length", len}});
  doc["results"].push_back(to_json(r, m, a, b));
  int code = r.violations.empty() ? 0 : 1;
  for (const auto& [f, v] : r.flags) code = std::max(code, s.verdict_code(v.outcome));
  return s.emit(doc, code);
}

int cmd_dim(Session& s, const std::string& kind, const std::string& file, const std::string& case_name,
            const std::string& a_spec, const std::string& b_spec, const std::string& z_spec,
            const std::string& w_spec) {
  Json doc = s.report("dim " + kind, {{"file", file}, {"case", case_name}, {"a", a_spec}, {"b", b_spec}});
  Outcome worst = Outcome::Yes;
  if (kind == "universe") {
    if (case_name.empty()) throw UsageError("dim universe needs --case");
    CorpusCase c = corpus_case(case_name);
    Engine e(c.algebra, s.bounds());
    auto d = e.universe_dims(c.universe_modules(), c.cls(a_spec), c.cls(b_spec), c.cls(z_spec), c.cls(w_spec));
    doc["results"].push_back(to_json(d));
    for (const DimSup* x : {&d.gl_gpd, &d.gl_gid, &d.fgpd, &d.fgid})
      if (!x->exact) worst = Outcome::Unknown;
    return s.emit(doc, s.verdict_code(worst));
  }
  if (file.empty()) throw UsageError("dim " + kind + " needs a module file");
  Module m = s.module(file);
  ClassSpec a = s.cls(a_spec, m.algebra_ptr()), b = s.cls(b_spec, m.algebra_ptr());
  Verdict<std::size_t> v;
  if (kind == "relative") {
    v = relative_pd(m, b, s.bounds().ext_window);
  } else if (kind == "gorenstein") {
    Engine e(m.algebra_ptr(), s.bounds());
    std::vector<Module> universe;
    if (const CorpusCase* c = s.case_for(m.algebra_ptr())) universe = c->universe_modules();
    v = e.gorenstein_pd(m, a, b, universe);
  } else {
    throw UsageError("dim kind must be relative, gorenstein or universe");
  }
  doc["results"].push_back({{"kind", "dimension"}, {"verdict", to_json(v)}});
  return s.emit(doc, s.verdict_code(v.outcome));
}

int cmd_corpus_run(Session& s, const std::vector<std::string>& names, unsigned threads,
                   const std::optional<std::string>& claim, const std::string& command, const std::string& out) {
  for (const auto& n : names) corpus_case(n);  // throws on unknown names
  if (claim) claim_info(*claim);
  auto run = run_corpus(names, s.bounds(), threads, claim);
  run.report["command"] = command;
  int code = run.exit_code(s.strict());
  if (!out.empty()) {
    std::ofstream f(out);
    if (!f) throw UsageError("cannot write '" + out + "'");
    f << run.report.dump(2) << '\n';
  }
  return s.emit(run.report, code);
}

int cmd_recheck(Session& s, const std::string& file) {
  Json doc;
  try {
    doc = Json::parse(read_file(file));
  } catch (const Json::parse_error& e) {
    throw UsageError(std::string("report is not JSON: ") + e.what());
  }
  if (doc.value("schema", "") != report_schema) throw UsageError("unsupported report schema");
  auto r = recheck_report(doc, s.bounds());
  Json out = s.report("recheck", {{"file", file}});
  out["results"].push_back({{"kind", "recheck"}, {"certificates", r.certificates}, {"failures", r.failures}});
  std::cout << out.dump(2) << '\n';
  return r.failures.empty() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"gorenlab: periodic Gorenstein membership with certificates"};
  app.require_subcommand(1);
  app.fallthrough();  // global options may follow the subcommand
  Options opt;
  app.add_option("--algebra", opt.algebra_files, "Extra algebra presentation file (repeatable)");
  app.add_option("--max-step-dim", opt.max_step_dim, "Largest step object dimension in the loop search");
  app.add_option("--hom-enum-cap", opt.hom_enum_cap, "Cap on enumerated hom tuples");
  app.add_option("--ext-window", opt.ext_window, "Ext window for orthogonality fallbacks");
  app.add_option("--depth", opt.depth, "Largest loop length and resolution depth");
  app.add_option("--node-budget", opt.node_budget, "Search node budget");
  app.add_flag("--strict", opt.strict, "Exit 3 when any verdict is Unknown");
  app.add_flag("--recheck", opt.recheck, "Re-verify every certificate in the report with the homology kit");
  app.add_flag("--compact", opt.compact, "Single-line JSON");

  std::function<int(Session&)> action;

  auto* algebra = app.add_subcommand("algebra", "Algebra presentations");
  algebra->require_subcommand(1);
  std::string alg_file;
  algebra->add_subcommand("check", "Parse, build a basis and audit invariants")
      ->callback([&] { action = [&](Session& s) { return cmd_algebra_check(s, alg_file); }; })
      ->add_option("file", alg_file)
      ->required();

  auto* module = app.add_subcommand("module", "Module files");
  module->require_subcommand(1);
  std::string mod_file;
  module->add_subcommand("info", "Dimensions, endomorphisms and decomposition")
      ->callback([&] { action = [&](Session& s) { return cmd_module_info(s, mod_file); }; })
      ->add_option("file", mod_file)
      ->required();

  std::string src, dst;
  std::size_t degree = 1;
  auto* hom = app.add_subcommand("hom", "dim Hom(M, N)");
  hom->add_option("source", src)->required();
  hom->add_option("target", dst)->required();
  hom->callback([&] { action = [&](Session& s) { return cmd_hom_ext(s, src, dst, std::nullopt); }; });
  auto* ext = app.add_subcommand("ext", "dim Ext^i(M, N)");
  ext->add_option("-i", degree, "Degree")->check(CLI::PositiveNumber);
  ext->add_option("source", src)->required();
  ext->add_option("target", dst)->required();
  ext->callback([&] { action = [&](Session& s) { return cmd_hom_ext(s, src, dst, degree); }; });

  std::string file, a_spec = "proj", b_spec, require, expect;
  std::size_t length = 1;
  auto* loop = app.add_subcommand("loop", "Search for a periodic loop at a module");
  loop->add_option("file", file)->required();
  loop->add_option("--class", a_spec, "Step class A");
  loop->add_option("--test", b_spec, "Test class B");
  loop->add_option("--length", length, "Loop length m")->check(CLI::PositiveNumber);
  loop->add_option("--require", require, "none | into-B-acyclic | cycles-perp-B | proper | proper-weak");
  loop->add_option("--expect", expect, "Expected outcome; exit 1 when it differs")
      ->check(CLI::IsMember({"yes", "no", "unknown"}));
  loop->callback([&] { action = [&](Session& s) { return cmd_loop(s, file, a_spec, b_spec, length, require, expect); }; });

  std::string cls_a = "proj", cls_b = "proj";
  auto* classify = app.add_subcommand("classify", "All membership flags at one length");
  classify->add_option("file", file)->required();
  classify->add_option("--a", cls_a, "Class A");
  classify->add_option("--b", cls_b, "Class B");
  classify->add_option("--length", length, "Loop length m")->check(CLI::PositiveNumber);
  classify->callback([&] { action = [&](Session& s) { return cmd_classify(s, file, cls_a, cls_b, length); }; });

  std::string dim_kind, case_name, z_spec = "inj", w_spec = "inj";
  auto* dim = app.add_subcommand("dim", "Relative, Gorenstein or universe dimensions");
  dim->add_option("kind", dim_kind, "relative | gorenstein | universe")
      ->required()
      ->check(CLI::IsMember({"relative", "gorenstein", "universe"}));
  dim->add_option("file", file);
  dim->add_option("--case", case_name, "Corpus case (universe)");
  dim->add_option("--a", cls_a, "Class A");
  dim->add_option("--b", cls_b, "Class B");
  dim->add_option("--z", z_spec, "Class Z (universe)");
  dim->add_option("--w", w_spec, "Class W (universe)");
  dim->callback([&] {
    action = [&](Session& s) { return cmd_dim(s, dim_kind, file, case_name, cls_a, cls_b, z_spec, w_spec); };
  });

  std::optional<std::string> claim;
  auto* verify = app.add_subcommand("verify", "Run the expectations of one corpus case");
  verify->add_option("--case", case_name)->required();
  verify->add_option("--claim", claim, "Only this claim");
  verify->callback([&] {
    action = [&](Session& s) {
      return cmd_corpus_run(s, {case_name}, 1, claim, "verify", "");
    };
  });

  auto* corpus = app.add_subcommand("corpus", "Built-in corpus");
  corpus->require_subcommand(1);
  corpus->add_subcommand("list", "List cases")->callback([&] {
    action = [&](Session& s) {
      Json doc = s.report("corpus list", Json::object());
      for (const auto& n : corpus_case_names()) {
        auto c = corpus_case(n);
        Json classes = Json::array();
        for (const auto& [k, v] : c.classes) classes.push_back(k);
        Json universe = Json::array();
        for (const auto& u : c.universe) universe.push_back(u.name);
        doc["results"].push_back({{"case", n}, {"description", c.description}, {"universe", universe},
                                  {"classes", classes}});
      }
      return s.emit(doc, 0);
    };
  });
  unsigned threads = std::max(1u, std::thread::hardware_concurrency());
  std::vector<std::string> only_cases;
  std::string out_file;
  auto* run = corpus->add_subcommand("run", "Run every case");
  run->add_option("--threads", threads, "Worker threads")->check(CLI::PositiveNumber);
  run->add_option("--case", only_cases, "Restrict to these cases");
  run->add_option("--output", out_file, "Also write the report to this file");
  run->callback([&] {
    action = [&](Session& s) {
      return cmd_corpus_run(s, only_cases.empty() ? corpus_case_names() : only_cases, threads, std::nullopt,
                            "corpus run", out_file);
    };
  });

  std::string report_file;
  auto* recheck = app.add_subcommand("recheck", "Re-verify the certificates of a saved report");
  recheck->add_option("report", report_file)->required();
  recheck->callback([&] { action = [&](Session& s) { return cmd_recheck(s, report_file); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  try {
    Session s(opt);
    return action(s);
  } catch (const UsageError& e) {
    std::cerr << "gorenlab: " << e.what() << '\n';
    return 2;
  } catch (const ParseError& e) {
    std::cerr << "gorenlab: parse error: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "gorenlab: " << e.what() << '\n';
    return 2;
  } catch (const std::out_of_range& e) {
    std::cerr << "gorenlab: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "gorenlab: internal error: " << e.what() << '\n';
    return 1;
  }
}
