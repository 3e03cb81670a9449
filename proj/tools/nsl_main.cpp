#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include "nsl/bounds_audit.hpp"
#include "nsl/json_io.hpp"
#include "nsl/reduction_engine.hpp"
#include "nsl/section_oracle.hpp"
#include "nsl/state_gen.hpp"

namespace {

using nsl::Json;

int log_level() {
  const char* env = std::getenv("NSL_LOG");
  if (!env) return 1;
  std::string s(env);
  if (s == "debug") return 2;
  if (s == "off") return 0;
  return 1;
}

void log_info(const std::string& msg) {
  if (log_level() >= 2) std::cerr << "[nsl] " << msg << "\n";
}

void emit(const Json& j, const std::string& format) {
  if (format == "text") {
    for (const auto& [k, v] : j.items())
      std::cout << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
  } else {
    std::cout << nsl::dump_json(j);
  }
}

void write_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  nsl::require(out.good(), nsl::Errc::Usage, "cannot open output file " + path);
  out << nsl::dump_json(j);
}

struct Options {
  std::string input;
  std::string format = "json";
  std::string trace_path, report_path;
  uint64_t seed = 0;
  bool seed_set = false;
  int count = 20;
};

Json verdict_json(const nsl::StabilityResult& r) {
  Json out{{"verdict", nsl::to_string(r.verdict)}};
  out["witness_index"] = r.witness ? Json(*r.witness) : Json(nullptr);
  return out;
}

int dispatch(const std::string& cmd, const Options& opt) {
  if (cmd == "genus") {
    nsl::CurveGraph g = nsl::curve_from_json(nsl::load_json_file(opt.input));
    emit({{"genus", g.genus()}}, opt.format);
    return 0;
  }
  if (cmd == "tree") {
    Json j = nsl::load_json_file(opt.input);
    nsl::CurveGraph g = nsl::curve_from_json(j.contains("graph") ? j.at("graph") : j);
    nsl::Subcurve s;
    if (j.contains("subcurve")) {
      s = nsl::subcurve_from_json(j.at("subcurve"));
    } else {
      for (const auto& v : g.vertices()) s.vertices.insert(v.id);
    }
    bool tree = nsl::is_p1_tree(g, s);
    Json out{{"is_p1_tree", tree}};
    if (tree) {
      nsl::ChainProfile p = nsl::chain_profile(g, s);
      out["chain"] = {{"is_chain", p.is_chain}, {"length", p.length}, {"ends", p.ends}};
      out["admissible"] = nsl::is_admissible_tree(g, s);
    } else {
      out["chain"] = nullptr;
      out["admissible"] = false;
    }
    emit(out, opt.format);
    return 0;
  }
  if (cmd == "h0") {
    nsl::SheafOnTree f = nsl::sheaf_from_json(nsl::load_json_file(opt.input));
    emit({{"h0", nsl::h0(f)}}, opt.format);
    return 0;
  }
  if (cmd == "positivity") {
    nsl::SheafOnTree f = nsl::sheaf_from_json(nsl::load_json_file(opt.input));
    emit({{"class", nsl::to_string(nsl::classify_positivity(f))}}, opt.format);
    return 0;
  }
  if (cmd == "charge") {
    nsl::ChargeDatum d = nsl::datum_from_json(nsl::load_json_file(opt.input));
    emit(nsl::to_json(nsl::central_charge(d)), opt.format);
    return 0;
  }
  if (cmd == "slope") {
    nsl::ChargeDatum d = nsl::datum_from_json(nsl::load_json_file(opt.input));
    emit({{"slope", nsl::rat_str(nsl::slope(nsl::central_charge(d)))}}, opt.format);
    return 0;
  }
  if (cmd == "stability") {
    Json j = nsl::load_json_file(opt.input);
    nsl::ChargeDatum total = nsl::datum_from_json(j.contains("total") ? j.at("total") : j);
    std::vector<nsl::ChargeDatum> subs;
    for (const auto& js : j.value("subobjects", Json::array()))
      subs.push_back(nsl::datum_from_json(js));
    emit(verdict_json(nsl::stability_verdict(total, subs)), opt.format);
    return 0;
  }
  if (cmd == "err") {
    nsl::FMDatum d = nsl::fm_from_json(nsl::load_json_file(opt.input));
    nsl::ChargeValue e = nsl::err_charge(d);
    emit({{"re", nsl::rat_str(e.re)}, {"im", nsl::rat_str(e.im)}, {"flat", nsl::is_flat(d)}},
         opt.format);
    return 0;
  }
  if (cmd == "reduce") {
    nsl::FMDatum d = nsl::fm_from_json(nsl::load_json_file(opt.input));
    nsl::GreedyGenerator gen(opt.seed);
    nsl::RunResult res = nsl::run(d, gen);
    nsl::ChargeValue e = nsl::err_charge(res.final.datum);
    if (!opt.trace_path.empty()) {
      Json steps = Json::array();
      for (const auto& t : res.final.trace) steps.push_back(nsl::to_json(t));
      write_file(opt.trace_path,
                 {{"seed", opt.seed},
                  {"steps", steps},
                  {"final", nsl::to_json(res.final.datum)},
                  {"total_charge", nsl::to_json(res.final.datum.total_charge)}});
    }
    emit({{"steps", res.steps}, {"err", {{"re", nsl::rat_str(e.re)}, {"im", nsl::rat_str(e.im)}}}},
         opt.format);
    return 0;
  }
  if (cmd == "audit") {
    Json j = nsl::load_json_file(opt.input);
    nsl::Scenario s;
    if (j.contains("state")) {
      nsl::ReductionState st{nsl::fm_from_json(j.at("state")), {}};
      s = nsl::scenario_from_state(st);
    } else {
      s = nsl::scenario_from_json(j);
    }
    auto reports = nsl::audit_all(s);
    Json jr = Json::array();
    int violations = 0;
    for (const auto& r : reports) {
      jr.push_back({{"name", r.name}, {"pass", r.pass}, {"lhs", r.lhs}, {"rhs", r.rhs},
                    {"detail", r.detail}});
      if (!r.pass) ++violations;
    }
    Json out{{"pass", violations == 0}, {"violations", violations}, {"checks", jr}};
    if (!opt.report_path.empty()) write_file(opt.report_path, out);
    emit({{"pass", violations == 0}, {"violations", violations}}, opt.format);
    return violations == 0 ? 0 : 1;
  }
  if (cmd == "fuzz") {
    nsl::require(opt.seed_set, nsl::Errc::Usage, "fuzz requires --seed");
    int failures = 0;
    for (int i = 0; i < opt.count; ++i) {
      nsl::Rng rng(opt.seed + static_cast<uint64_t>(i));
      nsl::FMDatum d = nsl::random_initial_state(rng);
      nsl::GreedyGenerator gen(opt.seed + static_cast<uint64_t>(i));
      nsl::RunResult res = nsl::run(d, gen);
      bool ok = nsl::is_flat(res.final.datum);
      nsl::TypeVerdict tv = nsl::validate_semistable_type(res.final, {});
      ok = ok && tv.condition2 && tv.condition3;
      for (const auto& r : nsl::audit_all(nsl::scenario_from_state(res.final)))
        ok = ok && r.pass;
      if (!ok) ++failures;
      log_info("case " + std::to_string(i) + (ok ? " ok" : " FAILED"));
    }
    emit({{"runs", opt.count}, {"failures", failures}, {"seed", opt.seed}}, opt.format);
    return failures == 0 ? 0 : 1;
  }
  throw nsl::Error(nsl::Errc::Usage, "unknown command " + cmd);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"nodal-curve sheaf stability toolkit"};
  app.require_subcommand(1);

  Options opt;
  std::vector<std::string> needs_input = {"genus",     "tree",  "h0",     "positivity", "charge",
                                          "slope",     "stability", "err", "reduce",    "audit"};
  std::vector<CLI::App*> subs;
  for (const auto& name : needs_input) {
    CLI::App* sc = app.add_subcommand(name);
    sc->add_option("--input,-i", opt.input, "input JSON file")->required();
    sc->add_option("--format", opt.format, "json|text");
    subs.push_back(sc);
  }
  CLI::App* reduce = app.get_subcommand("reduce");
  reduce->add_option("--seed", opt.seed, "generator seed");
  reduce->add_option("--trace", opt.trace_path, "write the certified trace to this file");
  CLI::App* audit = app.get_subcommand("audit");
  audit->add_option("--report", opt.report_path, "write the full report to this file");
  CLI::App* fuzz = app.add_subcommand("fuzz");
  fuzz->add_option("--seed", opt.seed, "master seed")->required();
  fuzz->add_option("--count", opt.count, "number of cases");
  fuzz->add_option("--format", opt.format, "json|text");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 64;
  }
  opt.seed_set = fuzz->parsed() || reduce->parsed();

  try {
    for (auto* sc : app.get_subcommands())
      return dispatch(sc->get_name(), opt);
    return 64;
  } catch (const nsl::Error& e) {
    std::cout << nsl::dump_json({{"error", e.what()}});
    return e.exit_code();
  } catch (const std::exception& e) {
    std::cout << nsl::dump_json({{"error", e.what()}});
    return 65;
  }
}
