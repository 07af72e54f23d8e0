// Command-line surface: rig ingestion and validation, theory slices,
// commutant and context checks, distribution objects, and the aggregate
// report used for golden-file regression.
//
// Exit codes: 0 success/pass, 1 malformed input, 2 rig axiom failure,
// 3 resource guard exceeded, 4 theorem violation or failed check.

#include <iostream>

#include "CLI11.hpp"
#include "finclone/checks.hpp"

using namespace finclone;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitAxiom = 2;
constexpr int kExitResource = 3;
constexpr int kExitTheorem = 4;

json table_to_json(const OpTable& t) {
  json arr = json::array();
  for (Elem e : t.table) arr.push_back(e);
  return arr;
}

json slice_to_json(const TheorySlice& sl) {
  json arr = json::array();
  for (const OpTable& t : sl.ops) arr.push_back(table_to_json(t));
  return arr;
}

json violations_to_json(const std::vector<AxiomViolation>& vs) {
  json arr = json::array();
  for (const AxiomViolation& v : vs) {
    json w = json::array();
    for (Elem e : v.witness) w.push_back(e);
    arr.push_back(json{{"axiom", v.axiom}, {"witness", w}});
  }
  return arr;
}

json verdict_to_json(const Verdict& v) {
  json per = json::array();
  for (const ArityCheck& ac : v.per_arity) {
    json ws = json::array();
    for (const OpTable& w : ac.witnesses) ws.push_back(table_to_json(w));
    per.push_back(json{{"arity", ac.arity}, {"ok", ac.ok}, {"witnesses", ws}});
  }
  return json{{"kind", v.kind},          {"pass", v.pass},
              {"certified", v.certified}, {"max_arity", v.max_arity},
              {"note", v.note},           {"per_arity", per}};
}

json check_to_json(const CheckResult& c, bool timing) {
  return json{{"name", c.name},
              {"pass", c.pass},
              {"detail", c.detail},
              {"elapsed_ms", timing ? std::int64_t(c.elapsed_ms) : 0}};
}

struct Report {
  std::string command;
  json inputs = json::object();
  json results = json::object();
  std::string exactness = "n/a";
  bool as_json = false;
  bool timing = false;
  detail::Stopwatch sw;

  void emit(std::ostream& os) const {
    if (as_json) {
      json j{{"command", command},
             {"inputs", inputs},
             {"results", results},
             {"exactness", exactness},
             {"elapsed_ms", timing ? std::int64_t(sw.ms()) : 0}};
      os << j.dump(2) << "\n";
    } else {
      os << "command: " << command << "\n";
      os << "inputs: " << inputs.dump() << "\n";
      os << "results:\n";
      for (auto it = results.begin(); it != results.end(); ++it)
        os << "  " << it.key() << ": " << it.value().dump() << "\n";
      os << "exactness: " << exactness << "\n";
      if (timing)
        os << "elapsed_ms: " << std::int64_t(sw.ms()) << "\n";
    }
  }
};

struct TheoryArgs {
  std::string kind = "mat";
  std::string rig_path;
  std::uint32_t carrier = 0;
  std::string generators_path;
  std::uint32_t max_arity = 0;
  std::uint64_t max_candidates = 0;  // 0 = default guard
};

EnumLimits limits_for(std::uint64_t max_candidates) {
  EnumLimits limits;
  if (max_candidates)
    limits.naive_guard_log2 = std::log2(double(max_candidates));
  return limits;
}

std::pair<std::uint32_t, std::vector<OpTable>>
load_generators(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw input_error("cannot open generators file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw input_error(path + ": JSON parse error: " + e.what());
  }
  if (!j.is_object() || !j.contains("carrier") || !j.contains("generators"))
    throw input_error(path + ": expected {\"carrier\": k, \"generators\": [[..],..]}");
  if (!j["carrier"].is_number_unsigned() ||
      j["carrier"].get<std::uint64_t>() < 2 ||
      j["carrier"].get<std::uint64_t>() > 255)
    throw input_error(path + ": \"carrier\" must be an integer in 2..255");
  std::uint32_t carrier = j["carrier"].get<std::uint32_t>();
  std::vector<OpTable> gens;
  for (std::size_t gi = 0; gi < j["generators"].size(); ++gi) {
    const json& g = j["generators"][gi];
    if (!g.is_array())
      throw input_error(path + ": generators[" + std::to_string(gi) +
                        "] must be a flat table");
    std::vector<Elem> t;
    for (const json& e : g) t.push_back(Elem(e.get<std::uint32_t>()));
    // infer the arity from the table length
    std::uint32_t arity = 0;
    std::uint64_t len = 1;
    while (len < t.size()) {
      len *= carrier;
      ++arity;
    }
    if (len != t.size())
      throw input_error(path + ": generators[" + std::to_string(gi) +
                        "] length is not a power of the carrier size");
    gens.emplace_back(carrier, arity, std::move(t));
  }
  return {carrier, std::move(gens)};
}

ConcreteTheory make_theory(const TheoryArgs& a) {
  auto need_rig = [&]() {
    if (a.rig_path.empty())
      throw input_error("--rig is required for theory kind " + a.kind);
    return load_rig(a.rig_path);
  };
  auto need_carrier = [&]() {
    if (a.carrier == 0)
      throw input_error("--carrier is required for theory kind " + a.kind);
    return a.carrier;
  };
  std::uint32_t ma = a.max_arity;
  std::uint64_t guard = a.max_candidates ? a.max_candidates : (1u << 20);
  if (a.kind == "full") {
    std::uint32_t c = need_carrier();
    return ConcreteTheory::full(c, ma ? ma : default_max_arity(c), guard);
  }
  if (a.kind == "initial") return ConcreteTheory::initial(need_carrier());
  if (a.kind == "mat") return ConcreteTheory::mat(need_rig(), ma);
  if (a.kind == "mat-aff") return ConcreteTheory::mat_aff(need_rig(), ma);
  if (a.kind == "pointed-mat-op")
    return ConcreteTheory::pointed_mat_op(need_rig(), ma);
  if (a.kind == "closure") {
    if (a.generators_path.empty())
      throw input_error("--generators is required for theory kind closure");
    auto [carrier, gens] = load_generators(a.generators_path);
    std::uint32_t bound = ma ? ma : default_max_arity(carrier);
    return ConcreteTheory::closure_of(carrier, std::move(gens), bound, guard);
  }
  throw input_error("unknown theory kind: " + a.kind);
}

int cmd_rig_validate(const std::string& path, bool as_json, bool timing) {
  Report rep;
  rep.command = "rig-validate";
  rep.as_json = as_json;
  rep.timing = timing;
  rep.inputs["path"] = path;
  FiniteRig R = load_rig(path);
  RigReport rr = validate_rig(R);
  rep.inputs["rig"] = R.name;
  rep.results["pass"] = rr.pass;
  rep.results["is_ring"] = rr.is_ring;
  rep.results["degenerate"] = rr.degenerate;
  rep.results["violations"] = violations_to_json(rr.violations);
  rep.emit(std::cout);
  return rr.pass ? kExitOk : kExitAxiom;
}

int cmd_theory_slice(const TheoryArgs& args, std::uint32_t arity, bool dump,
                     bool as_json, bool timing) {
  Report rep;
  rep.command = "theory-slice";
  rep.as_json = as_json;
  rep.timing = timing;
  rep.inputs["theory"] = args.kind;
  if (!args.rig_path.empty()) rep.inputs["rig"] = args.rig_path;
  if (args.carrier) rep.inputs["carrier"] = args.carrier;
  rep.inputs["arity"] = arity;
  ConcreteTheory T = make_theory(args);
  const TheorySlice& sl = T.slice(arity);
  rep.results["count"] = sl.ops.size();
  rep.results["label"] = T.label();
  if (dump) rep.results["tables"] = slice_to_json(sl);
  rep.exactness = T.generators_exact() ? "exact-generators" : "slice-bounded";
  rep.emit(std::cout);
  return kExitOk;
}

int cmd_check(const std::string& what, const TheoryArgs& theory_args,
              const TheoryArgs& other_args, std::uint32_t max_arity,
              bool as_json, bool timing) {
  Report rep;
  rep.command = "check";
  rep.as_json = as_json;
  rep.timing = timing;
  rep.inputs["check"] = what;
  if (!theory_args.rig_path.empty()) rep.inputs["rig"] = theory_args.rig_path;
  bool pass = false;
  if (what == "balanced" || what == "saturated" || what == "commutative") {
    ConcreteTheory T = make_theory(theory_args);
    std::uint32_t K = max_arity ? max_arity : default_max_arity(T.carrier());
    rep.inputs["theory"] = theory_args.kind;
    rep.inputs["max_arity"] = K;
    EnumLimits limits = limits_for(theory_args.max_candidates);
    Verdict v = what == "balanced"    ? is_balanced(T, K, limits)
                : what == "saturated" ? is_saturated(T, K, {}, limits)
                                      : is_commutative(T, K, limits);
    rep.results["verdict"] = verdict_to_json(v);
    rep.exactness = v.certified ? "exact" : "truncated-at-" + std::to_string(K);
    pass = v.pass;
  } else if (what == "commutes") {
    ConcreteTheory T1 = make_theory(theory_args);
    ConcreteTheory T2 = make_theory(other_args);
    std::uint32_t K = max_arity ? max_arity : default_max_arity(T1.carrier());
    rep.inputs["theory"] = theory_args.kind;
    rep.inputs["other"] = other_args.kind;
    rep.inputs["max_arity"] = K;
    Verdict v = commutes(T1, T2, K, limits_for(theory_args.max_candidates));
    rep.results["verdict"] = verdict_to_json(v);
    rep.exactness = v.certified ? "exact" : "truncated-at-" + std::to_string(K);
    pass = v.pass;
  } else if (what == "mutual-commutant" || what == "affine-commutant") {
    if (theory_args.rig_path.empty())
      throw input_error("--rig is required for " + what);
    FiniteRig R = load_rig(theory_args.rig_path);
    std::uint32_t K = max_arity ? max_arity
                      : what == "affine-commutant" ? 2
                      : R.size <= 2                ? 3
                                                   : 2;
    rep.inputs["max_arity"] = K;
    EnumLimits limits = limits_for(theory_args.max_candidates);
    CheckResult c = what == "mutual-commutant"
                        ? mutual_commutant_check(R, K, limits)
                        : affine_commutant_check(R, K, true, limits);
    rep.results["check"] = check_to_json(c, timing);
    rep.exactness = "exact";
    pass = c.pass;
  } else {
    throw input_error("unknown check: " + what);
  }
  rep.results["pass"] = pass;
  rep.emit(std::cout);
  return pass ? kExitOk : kExitTheorem;
}

Context make_context(const std::string& kind, const std::string& rig_path,
                     std::uint32_t max_arity) {
  if (kind == "initial") return initial_context(2, max_arity);
  if (rig_path.empty())
    throw input_error("--rig is required for context " + kind);
  FiniteRig R = load_rig(rig_path);
  if (kind == "scalar-linear") return scalar_linear_context(R, max_arity);
  if (kind == "scalar-affine") return scalar_affine_context(R, max_arity);
  throw input_error("unknown context: " + kind);
}

int cmd_dist(const std::string& kind, const std::string& rig_path,
             std::uint32_t set_size, bool do_classify, bool do_laws, bool dump,
             std::uint32_t max_arity, bool as_json, bool timing) {
  Report rep;
  rep.command = "dist";
  rep.as_json = as_json;
  rep.timing = timing;
  rep.inputs["context"] = kind;
  if (!rig_path.empty()) rep.inputs["rig"] = rig_path;
  rep.inputs["set_size"] = set_size;
  Context ctx = make_context(kind, rig_path, max_arity);
  rep.exactness = ctx.exactness;
  DistObject d = distribution_object(ctx, set_size);
  rep.results["context"] = ctx.name;
  rep.results["count"] = d.elements.size();
  bool pass = true;
  if (dump) {
    json els = json::array();
    for (const OpTable& mu : d.elements) els.push_back(table_to_json(mu));
    rep.results["elements"] = els;
  }
  if (do_classify) {
    json cl = json::array();
    for (const OpTable& mu : d.elements) {
      Classification c = classify(ctx, set_size, mu);
      json fam = json::array();
      for (std::uint32_t A : c.family) fam.push_back(A);
      json e{{"label", c.label}, {"family", fam}};
      if (c.principal) e["principal"] = *c.principal;
      cl.push_back(std::move(e));
    }
    rep.results["classification"] = cl;
  }
  if (do_laws) {
    std::uint32_t unit_max = std::min<std::uint32_t>(set_size, 3);
    std::uint32_t assoc_max = std::min<std::uint32_t>(
        set_size, ctx.kind == ContextKind::Initial ? 3 : 2);
    CheckResult laws = monad_laws_check(ctx, unit_max, assoc_max);
    rep.results["monad_laws"] = check_to_json(laws, timing);
    pass = pass && laws.pass;
  }
  rep.results["pass"] = pass;
  rep.emit(std::cout);
  return pass ? kExitOk : kExitTheorem;
}

int cmd_report_all(const std::string& rig_dir, const std::string& out_path,
                   bool timing) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(rig_dir)) {
    std::cerr << "report-all: not a directory: " << rig_dir << "\n";
    return kExitInput;
  }
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(rig_dir))
    if (e.path().extension() == ".json") files.push_back(e.path());
  std::sort(files.begin(), files.end());
  if (files.empty()) {
    std::cerr << "report-all: no rig files in " << rig_dir << "\n";
    return kExitInput;
  }
  json report;
  report["command"] = "report-all";
  report["inputs"] = json{{"rig_dir", rig_dir}, {"rigs", json::array()}};
  json rig_results = json::array();
  std::vector<FiniteRig> rigs;
  bool rig_failure = false;
  for (const fs::path& f : files) {
    json entry;
    entry["file"] = f.filename().string();
    try {
      FiniteRig R = load_rig(f);
      RigReport rr = validate_rig(R);
      entry["name"] = R.name;
      entry["pass"] = rr.pass;
      entry["is_ring"] = rr.is_ring;
      entry["violations"] = violations_to_json(rr.violations);
      if (rr.pass)
        rigs.push_back(std::move(R));
      else
        rig_failure = true;
    } catch (const input_error& e) {
      entry["pass"] = false;
      entry["error"] = e.what();
      rig_failure = true;
    }
    report["inputs"]["rigs"].push_back(entry["file"]);
    rig_results.push_back(std::move(entry));
  }
  json results;
  results["rig_validation"] = rig_results;
  bool all_pass = !rig_failure;
  std::string exactness = "n/a";
  if (!rig_failure) {
    std::vector<CriterionResult> crits = run_acceptance(rigs);
    json jc = json::array();
    for (const CriterionResult& c : crits) {
      json parts = json::array();
      for (const CheckResult& p : c.parts) parts.push_back(check_to_json(p, timing));
      jc.push_back(json{{"criterion", c.number},
                        {"title", c.title},
                        {"pass", c.pass},
                        {"elapsed_ms", timing ? std::int64_t(c.elapsed_ms) : 0},
                        {"parts", parts}});
      all_pass = all_pass && c.pass;
    }
    results["criteria"] = jc;
    exactness = "exact-via-known-generators";
  }
  results["pass"] = all_pass;
  report["results"] = results;
  report["exactness"] = exactness;
  report["elapsed_ms"] = 0;
  std::ofstream out(out_path);
  if (!out) {
    std::cerr << "report-all: cannot write " << out_path << "\n";
    return kExitInput;
  }
  out << report.dump(2) << "\n";
  std::cout << (all_pass ? "report-all: all checks passed\n"
                         : "report-all: FAILURES recorded\n");
  if (rig_failure) return kExitAxiom;
  return all_pass ? kExitOk : kExitTheorem;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite clones, commutants and distribution objects"};
  app.require_subcommand(1);
  bool as_json = false;
  bool timing = false;
  app.add_flag("--json", as_json, "machine-readable JSON output");
  app.add_flag("--timing", timing,
               "include real elapsed times (off by default so reports are "
               "byte-identical across runs)");

  std::string rv_path;
  auto* rv = app.add_subcommand("rig-validate", "validate a rig JSON file");
  rv->add_option("path", rv_path, "rig JSON file")->required();

  TheoryArgs ts_args;
  std::uint32_t ts_arity = 1;
  bool ts_dump = false;
  auto* ts = app.add_subcommand("theory-slice",
                                "materialize one arity slice of a theory");
  ts->add_option("--theory", ts_args.kind,
                 "full|initial|mat|mat-aff|pointed-mat-op|closure")
      ->required();
  ts->add_option("--rig", ts_args.rig_path, "rig JSON file");
  ts->add_option("--carrier", ts_args.carrier, "carrier size");
  ts->add_option("--arity", ts_arity, "slice arity")->required();
  ts->add_option("--generators", ts_args.generators_path,
                 "generators JSON file (closure)");
  ts->add_option("--max-arity", ts_args.max_arity, "arity bound");
  ts->add_option("--max-candidates", ts_args.max_candidates,
                 "slice size guard (default 2^20)");
  ts->add_flag("--dump", ts_dump, "print the canonical tables");

  std::string ck_what;
  TheoryArgs ck_theory, ck_other;
  std::uint32_t ck_max_arity = 0;
  auto* ck = app.add_subcommand("check", "run a commutant/theory check");
  ck->add_option("--check", ck_what,
                 "balanced|saturated|commutative|commutes|mutual-commutant|"
                 "affine-commutant")
      ->required();
  ck->add_option("--theory", ck_theory.kind, "theory kind (default mat)");
  ck->add_option("--other", ck_other.kind, "second theory kind for commutes");
  ck->add_option("--rig", ck_theory.rig_path, "rig JSON file");
  ck->add_option("--carrier", ck_theory.carrier, "carrier size");
  ck->add_option("--generators", ck_theory.generators_path,
                 "generators JSON file");
  ck->add_option("--max-arity", ck_max_arity, "arity bound");
  ck->add_option("--max-candidates", ck_theory.max_candidates,
                 "enumeration candidate guard (default 2^32)");

  std::string d_ctx, d_rig;
  std::uint32_t d_size = 2, d_max_arity = 0;
  bool d_classify = false, d_laws = false, d_dump = false;
  auto* dc = app.add_subcommand("dist", "build a distribution object");
  dc->add_option("--context", d_ctx, "scalar-linear|scalar-affine|initial")
      ->required();
  dc->add_option("--rig", d_rig, "rig JSON file");
  dc->add_option("--set-size", d_size, "size of the base set V")->required();
  dc->add_option("--max-arity", d_max_arity, "context arity bound");
  dc->add_flag("--classify", d_classify, "classify every element");
  dc->add_flag("--monad-laws", d_laws, "run the monad law suite");
  dc->add_flag("--dump", d_dump, "print the element tables");

  std::string ra_dir, ra_out = "report.json";
  auto* ra = app.add_subcommand("report-all",
                                "validate a rig directory and run the full "
                                "check matrix");
  ra->add_option("--rig-dir", ra_dir, "directory of rig JSON files")
      ->required();
  ra->add_option("--out", ra_out, "output report path")->required();

  CLI11_PARSE(app, argc, argv);
  // non-zero exits carry a machine-readable reason in JSON mode
  auto report_error = [&](const char* kind, const std::string& what,
                          int code) {
    if (as_json)
      std::cout << json{{"error", json{{"kind", kind}, {"message", what}}},
                        {"exit", code}}
                       .dump(2)
                << "\n";
    else
      std::cerr << "error (" << kind << "): " << what << "\n";
    return code;
  };
  try {
    if (rv->parsed()) return cmd_rig_validate(rv_path, as_json, timing);
    if (ts->parsed())
      return cmd_theory_slice(ts_args, ts_arity, ts_dump, as_json, timing);
    if (ck->parsed()) {
      ck_other.rig_path = ck_theory.rig_path;
      ck_other.carrier = ck_theory.carrier;
      return cmd_check(ck_what, ck_theory, ck_other, ck_max_arity, as_json,
                       timing);
    }
    if (dc->parsed())
      return cmd_dist(d_ctx, d_rig, d_size, d_classify, d_laws, d_dump,
                      d_max_arity, as_json, timing);
    if (ra->parsed()) return cmd_report_all(ra_dir, ra_out, timing);
  } catch (const context_error& e) {
    return report_error("context-rejected", e.what(), kExitTheorem);
  } catch (const resource_error& e) {
    return report_error("resource", e.what(), kExitResource);
  } catch (const input_error& e) {
    return report_error("input", e.what(), kExitInput);
  } catch (const internal_error& e) {
    return report_error("internal", e.what(), kExitTheorem);
  }
  return kExitInput;
}
