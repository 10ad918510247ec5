#include "cli.hpp"

#include <algorithm>
#include <optional>

#include "CLI11.hpp"
#include "fiberlab/errors.hpp"
#include "fiberlab/fiber.hpp"
#include "fiberlab/homalg.hpp"
#include "fiberlab/paperlab.hpp"
#include "fiberlab/ringspec.hpp"
#include "json.hpp"

namespace fiberlab::cli {

namespace {

using Json = nlohmann::ordered_json;

struct Globals {
  bool json = false;
  int trunc = 10;
  int ext_bound = 12;
  int hilbert_max = 12;
  std::string alpha = "2";
  std::uint64_t seed = 0;
  std::int64_t max_free_dim = 250'000;
};

Scalar alpha_of(const Globals& g) {
  try {
    return parse_rational(g.alpha);
  } catch (const Error&) {
    throw Error("parse", "--alpha: expected a rational number, got '" + g.alpha + "'");
  }
}

ProfileOptions profile_opts(const Globals& g) {
  ProfileOptions o;
  o.trunc = g.trunc;
  o.hilbert_max = g.hilbert_max;
  o.max_free_dim = g.max_free_dim;
  return o;
}

HarnessOptions harness_opts(const Globals& g) {
  HarnessOptions o;
  o.trunc = g.trunc;
  o.ext_bound = g.ext_bound;
  o.hilbert_max = g.hilbert_max;
  o.alpha = alpha_of(g);
  o.max_free_dim = g.max_free_dim;
  return o;
}

Json bounds_json(const Globals& g) {
  return Json{{"trunc", g.trunc}, {"ext_bound", g.ext_bound}, {"hilbert_max", g.hilbert_max},
              {"max_free_dim", g.max_free_dim}};
}

Json series_json(const SeriesTrunc& s) { return Json{{"trunc", s.trunc()}, {"coeffs", s.to_ints()}}; }

Json profile_json(const RingProfile& p) {
  Json j = Json::object();
  j["name"] = p.name;
  auto put = [&](const char* k, const auto& v) {
    if (v) j[k] = *v;
  };
  put("dim", p.dim);
  put("depth", p.depth);
  put("edim", p.edim);
  put("ecodepth", p.ecodepth());
  put("type", p.type);
  put("multiplicity", p.multiplicity);
  put("length", p.length);
  put("regular", p.regular);
  put("gorenstein", p.gorenstein);
  put("cm", p.cm);
  put("hypersurface", p.hypersurface());
  put("analytically_unramified", p.analytically_unramified);
  put("finite_cm_type", p.finite_cm_type);
  put("curve_exponent", p.curve_exponent);
  if (p.poincare_k) j["poincare_k"] = series_json(*p.poincare_k);
  if (p.bass) j["bass"] = series_json(*p.bass);
  Json prov = Json::object();
  for (const auto& [field, src] : p.provenance)
    prov[field] = src.kind == Provenance::Declared ? std::string("declared") : "computed: " + src.rule;
  j["provenance"] = prov;
  return j;
}

Json spec_json(const std::string& path, const RingPresentation& p) {
  Json gens = Json::array();
  for (const auto& g : p.ideal.generators()) gens.push_back(g.to_string());
  Json declared = Json::object();
  for (const auto& [k, v] : p.declared) declared[k] = v;
  return Json{{"path", path},
              {"name", p.name},
              {"field", p.ideal.ring()->field.name()},
              {"vars", p.ideal.ring()->vars},
              {"ideal", gens},
              {"cone_vars", p.cone_vars},
              {"declared", declared}};
}

/// Notes on series that stopped early at the free-dimension ceiling.
void ceiling_notes(const RingProfile& p, int trunc, const std::string& label, Json& notes) {
  for (const auto& [name, s] : {std::pair{"poincare_k", p.poincare_k}, std::pair{"bass", p.bass}}) {
    if (s && s->trunc() < trunc)
      notes.push_back(label + name + " stops at degree " + std::to_string(s->trunc()) +
                      " (free-dimension ceiling; raise --max-free-dim)");
  }
}

Json verdict_json(const CmTypeVerdict& v) {
  Json j{{"finite_cm_type", v.finite_cm_type}, {"matched", v.matched}, {"reason", v.reason}};
  if (v.normal_form) j["normal_form"] = *v.normal_form;
  if (v.curve_exponent) j["curve_exponent"] = *v.curve_exponent;
  return j;
}

std::string case_name(FiberCase c) {
  switch (c) {
    case FiberCase::BothSingular:
      return "both singular";
    case FiberCase::OneRegular:
      return "one regular";
    case FiberCase::BothRegular:
      return "both regular";
  }
  return "";
}

Json base_doc(const std::string& command, Json inputs, const Globals& g) {
  return Json{{"command", command},   {"inputs", std::move(inputs)}, {"bounds", bounds_json(g)},
              {"computed", Json::object()}, {"paper_asserted", Json::array()}, {"verdicts", Json::object()}};
}

void render_value(const Json& v, std::ostream& out) {
  if (v.is_string()) {
    out << v.get<std::string>();
  } else if (v.is_array() && std::all_of(v.begin(), v.end(), [](const Json& x) { return x.is_primitive(); })) {
    for (std::size_t i = 0; i < v.size(); ++i) {
      out << (i ? ", " : "");
      render_value(v[i], out);
    }
  } else {
    out << v.dump();
  }
}

void render_text(const Json& j, std::ostream& out, int indent) {
  const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  for (const auto& [k, v] : j.items()) {
    if (v.is_object() && !v.empty() && !(v.contains("trunc") && v.contains("coeffs"))) {
      out << pad << k << ":\n";
      render_text(v, out, indent + 1);
    } else if (v.is_array() && !v.empty() && !v[0].is_primitive()) {
      out << pad << k << ":\n";
      for (const auto& e : v) {
        out << pad << "  -";
        for (const auto& [ek, ev] : e.items()) {
          out << " " << ek << "=";
          render_value(ev, out);
        }
        out << "\n";
      }
    } else if (v.is_object() && v.contains("coeffs")) {
      out << pad << k << ": ";
      render_value(v["coeffs"], out);
      out << " (through t^" << v["trunc"].get<int>() << ")\n";
    } else if (v.is_array() && !v.empty() && v[0].is_string() && k == "paper_asserted") {
      out << pad << k << ":\n";
      for (const auto& e : v) out << pad << "  PAPER-ASSERTED " << e.get<std::string>() << "\n";
    } else {
      out << pad << k << ": ";
      render_value(v, out);
      out << "\n";
    }
  }
}

void emit(const Json& doc, const Globals& g, std::ostream& out) {
  if (g.json)
    out << doc.dump(2) << "\n";
  else
    render_text(doc, out, 0);
}

int cmd_invariants(const std::string& path, const Globals& g, std::ostream& out) {
  auto p = load_ringspec(path, {{"alpha", alpha_of(g)}});
  auto prof = compute_profile(p, profile_opts(g));
  Json doc = base_doc("invariants", Json{{"spec", spec_json(path, p)}, {"alpha", g.alpha}}, g);
  doc["computed"] = profile_json(prof);
  Json notes = Json::array();
  ceiling_notes(prof, g.trunc, "", notes);
  if (!notes.empty()) doc["computed"]["notes"] = notes;
  for (const char* k : {"regular", "gorenstein", "cm", "hypersurface"})
    if (doc["computed"].contains(k)) doc["verdicts"][k] = doc["computed"][k];
  emit(doc, g, out);
  return kPass;
}

struct FiberInputs {
  RingPresentation s, t;
  RingProfile ps, pt;
};

FiberInputs load_pair(const std::string& a, const std::string& b, const Globals& g) {
  std::map<std::string, Scalar> params = {{"alpha", alpha_of(g)}};
  FiberInputs in{load_ringspec(a, params), load_ringspec(b, params), {}, {}};
  in.ps = compute_profile(in.s, profile_opts(g));
  in.pt = compute_profile(in.t, profile_opts(g));
  return in;
}

Json pair_inputs(const std::string& a, const std::string& b, const FiberInputs& in, const Globals& g) {
  return Json{{"S", spec_json(a, in.s)}, {"T", spec_json(b, in.t)}, {"alpha", g.alpha}};
}

int cmd_fiber(const std::string& a, const std::string& b, const Globals& g, std::ostream& out) {
  auto in = load_pair(a, b, g);
  FiberSpec f(in.ps, in.pt);
  auto r = fiber_profile(f, g.trunc);
  Json doc = base_doc("fiber", pair_inputs(a, b, in, g), g);
  Json& c = doc["computed"];
  c["S"] = profile_json(in.ps);
  c["T"] = profile_json(in.pt);
  c["case"] = case_name(fiber_case(f));
  c["R"] = profile_json(r);
  Json notes = Json::array();
  ceiling_notes(in.ps, g.trunc, "S.", notes);
  ceiling_notes(in.pt, g.trunc, "T.", notes);

  // Cross-check against the explicit presentation where it is computable.
  RingPresentation pres{r.name, fiber_present(full_ideal(in.s), full_ideal(in.t)), {}, {}};
  std::optional<bool> agrees;
  Json direct = Json::object();
  const bool artinian = in.ps.length && in.pt.length && *in.ps.length + *in.pt.length - 1 <= 64;
  try {
    ProfileOptions po = profile_opts(g);
    if (!artinian) po.trunc = std::min(g.trunc, 3);
    auto d = artinian ? artinian_profile(quotient_algebra(pres.ideal), po, pres.name) : compute_profile(pres, po);
    agrees = true;
    for (const char* k : {"dim", "depth", "edim", "type", "multiplicity", "length"}) {
      auto x = profile_value(r, k), y = profile_value(d, k);
      if (!y) continue;
      direct[k] = *y;
      if (x && *x != *y) agrees = false;
    }
    if (artinian) {
      for (const auto& [k, x, y] : {std::tuple{"poincare_k", r.poincare_k, d.poincare_k}, std::tuple{"bass", r.bass, d.bass}}) {
        if (!x || !y) continue;
        int n = std::min(x->trunc(), y->trunc());
        direct[k] = series_json(y->truncated(n));
        if (x->truncated(n) != y->truncated(n)) agrees = false;
      }
    }
    direct["agrees"] = *agrees;
  } catch (const NotCofiniteError& e) {
    direct["unavailable"] = e.what();
  } catch (const UnsupportedInput& e) {
    direct["unavailable"] = e.what();
  }
  c["direct"] = direct;
  if (!notes.empty()) c["notes"] = notes;

  auto gv = classify_gorenstein_fiber(f);
  doc["verdicts"]["gorenstein"] = Json{{"value", gv.gorenstein}, {"reason", gv.reason}};
  doc["verdicts"]["cm"] = *r.cm;
  doc["verdicts"]["direct_agrees"] = agrees ? Json(*agrees) : Json(nullptr);
  emit(doc, g, out);
  return agrees && !*agrees ? kMismatch : kPass;
}

int cmd_classify(const std::string& a, const std::string& b, const Globals& g, std::ostream& out) {
  Globals light = g;
  light.trunc = std::min(g.trunc, 4);
  auto in = load_pair(a, b, light);
  FiberSpec f(in.ps, in.pt);
  auto dd = fiber_dim_depth(f);
  Json doc = base_doc("classify", pair_inputs(a, b, in, g), g);
  doc["computed"] = Json{{"dim", dd.dim}, {"depth", dd.depth}, {"cm", dd.cm}, {"multiplicity", fiber_multiplicity(f)}};
  std::optional<CmTypeVerdict> cm, low;
  if (dd.cm) cm = classify_fcmt_cm(f);
  if (dd.dim <= 1) low = classify_fcmt_depth_le1(f);
  if (!cm && !low) throw UnsupportedInput("no classification applies: R is not CM and dim R > 1");
  if (cm && low && cm->finite_cm_type != low->finite_cm_type)
    throw InconsistentInput("the CM and the dimension-at-most-1 classifications disagree on the declared flags");
  Json& v = doc["verdicts"];
  if (cm) v["cm_classification"] = verdict_json(*cm);
  if (low) v["depth_le1_classification"] = verdict_json(*low);
  v["finite_cm_type"] = cm ? cm->finite_cm_type : low->finite_cm_type;
  const auto& chosen = cm ? *cm : *low;
  if (chosen.normal_form) v["normal_form"] = *chosen.normal_form;
  if (chosen.curve_exponent) v["curve_exponent"] = *chosen.curve_exponent;
  for (const auto& [label, p] : {std::pair{"S", &in.s}, std::pair{"T", &in.t}})
    for (const auto& [k, val] : p->declared)
      doc["paper_asserted"].push_back(std::string(label) + " " + p->name + ": " + k + " = " + (val ? "true" : "false") +
                                      " (declared input)");
  emit(doc, g, out);
  return kPass;
}

Json report_json(const Report& r) {
  Json checks = Json::array();
  for (const auto& c : r.checks)
    checks.push_back(Json{{"id", c.id},
                          {"status", to_string(c.status)},
                          {"expected", c.expected},
                          {"actual", c.actual},
                          {"detail", c.detail}});
  Json tallies = Json::object();
  for (const auto& [k, v] : r.tallies) tallies[k] = v;
  return Json{{"harness", r.harness}, {"checks", checks}, {"tallies", tallies}, {"notes", r.notes}};
}

int cmd_verify(const std::string& theorem, std::optional<int> n, int count, const Globals& g, std::ostream& out) {
  auto ho = harness_opts(g);
  Report r;
  Json inputs{{"theorem", theorem}, {"alpha", g.alpha}};
  if (theorem == "1.1") {
    r = verify_gorenstein_cone_fiber(ho);
  } else if (theorem == "1.2") {
    inputs["n"] = n.value_or(2);
    r = verify_semidualizing_family(n.value_or(2), ho);
  } else if (theorem == "corpus") {
    CorpusOptions c;
    c.seed = g.seed;
    c.count = count;
    inputs["seed"] = g.seed;
    inputs["count"] = count;
    r = verify_corpus(c, ho);
  } else if (theorem == "classification") {
    r = verify_classification(ho);
  } else if (theorem == "reduction") {
    r = verify_nil_multiplicity(ho);
  } else if (theorem == "proof-invariants") {
    r = verify_proof_invariants();
  } else {
    throw UnsupportedInput("unknown --theorem '" + theorem + "'");
  }
  if (g.json) {
    Json doc = base_doc("verify-paper", inputs, g);
    doc["computed"] = report_json(r);
    doc["paper_asserted"] = r.paper_asserted;
    const CheckResult* f = r.first_failure();
    doc["verdicts"] = Json{{"passed", r.passed()}, {"exit_code", r.exit_code()},
                           {"first_failure", f ? Json(f->id) : Json(nullptr)}};
    out << doc.dump(2) << "\n";
  } else {
    out << format_report(r);
  }
  return r.exit_code();
}

int exit_code_for(const Error& e) {
  if (dynamic_cast<const CheckFailure*>(&e)) return kMismatch;
  if (dynamic_cast<const LimitExceeded*>(&e) || dynamic_cast<const Inconclusive*>(&e)) return kCeiling;
  return kInputError;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Globals g;
  CLI::App app{"Invariants of local rings and fiber products, with checks of the published values."};
  app.name("fiberlab");
  app.require_subcommand(1);
  app.fallthrough();
  app.add_flag("--json", g.json, "Emit the report as JSON");
  app.add_option("--trunc", g.trunc, "Series truncation degree")->capture_default_str()->check(CLI::Range(0, 64));
  app.add_option("--ext-bound", g.ext_bound, "Ext degree bound for semidualizing checks")
      ->capture_default_str()
      ->check(CLI::Range(1, 64));
  app.add_option("--hilbert-max", g.hilbert_max, "Degree bound for Hilbert functions")
      ->capture_default_str()
      ->check(CLI::Range(1, 200));
  app.add_option("--alpha", g.alpha, "Value substituted for alpha in ring specs (rational)")->capture_default_str();
  app.add_option("--seed", g.seed, "Corpus seed")->capture_default_str();
  app.add_option("--max-free-dim", g.max_free_dim, "Free-module dimension ceiling for series")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);

  std::string spec, spec_s, spec_t, theorem = "1.1";
  int n = 0, count = 25;
  auto* inv = app.add_subcommand("invariants", "Invariants of one ring spec");
  inv->add_option("spec", spec, "Ring spec file")->required();
  auto* fib = app.add_subcommand("fiber", "Fiber product profile of two ring specs");
  fib->add_option("S", spec_s, "First factor")->required();
  fib->add_option("T", spec_t, "Second factor")->required();
  auto* cls = app.add_subcommand("classify", "Finite CM type of the fiber product of two ring specs");
  cls->add_option("S", spec_s, "First factor")->required();
  cls->add_option("T", spec_t, "Second factor")->required();
  auto* ver = app.add_subcommand("verify-paper", "Run a verification harness");
  ver->add_option("--theorem", theorem,
                  "1.1 (Gorenstein cone), 1.2 (square-zero family), corpus, classification, reduction, "
                  "proof-invariants")
      ->capture_default_str()
      ->check(CLI::IsMember({"1.1", "1.2", "corpus", "classification", "reduction", "proof-invariants"}));
  auto* n_opt = ver->add_option("--n", n, "Size of the square-zero family (1..3, default 2)")->check(CLI::Range(1, 3));
  ver->add_option("--count", count, "Corpus pairs")->capture_default_str()->check(CLI::Range(1, 10000));

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kPass : kInputError;
  }

  std::string command = app.get_subcommands().front()->get_name();
  try {
    if (*inv) return cmd_invariants(spec, g, out);
    if (*fib) return cmd_fiber(spec_s, spec_t, g, out);
    if (*cls) return cmd_classify(spec_s, spec_t, g, out);
    return cmd_verify(theorem, n_opt->count() ? std::optional<int>(n) : std::nullopt, count, g, out);
  } catch (const Error& e) {
    const int code = exit_code_for(e);
    if (g.json) {
      Json doc{{"command", command}, {"error", Json{{"kind", e.kind()}, {"message", e.what()}, {"exit_code", code}}}};
      if (auto* ip = dynamic_cast<const IncompleteProfile*>(&e)) doc["error"]["missing"] = ip->missing();
      if (auto* pe = dynamic_cast<const ParseError*>(&e)) {
        doc["error"]["line"] = pe->line();
        doc["error"]["col"] = pe->col();
      }
      out << doc.dump(2) << "\n";
    }
    err << "fiberlab: " << e.kind() << ": " << e.what() << "\n";
    return code;
  }
}

}  // namespace fiberlab::cli
