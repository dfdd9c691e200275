#pragma once

// Command-line front end: count-types, split, invariants, generate, verify.
// Every command prints text by default or one JSON envelope with --json.

#include <cstdint>
#include <cstdlib>
#include <algorithm>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "cmreduce/bigint.hpp"
#include "cmreduce/catalog.hpp"
#include "cmreduce/cm_types.hpp"
#include "cmreduce/errors.hpp"
#include "cmreduce/generator.hpp"
#include "cmreduce/invariants.hpp"
#include "cmreduce/predictor.hpp"
#include "cmreduce/splitting.hpp"

#ifndef CMREDUCE_DEFAULT_CATALOG
#define CMREDUCE_DEFAULT_CATALOG "data/catalog.json"
#endif

namespace cmreduce {

inline constexpr int kSchemaVersion = 1;

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int other = 1;
inline constexpr int usage = 2;
inline constexpr int domain = 3;
inline constexpr int resource = 4;
inline constexpr int mismatch = 5;
}  // namespace exit_code

namespace cli_detail {

inline json slopes_json(const std::vector<Slope>& s) {
  json a = json::array();
  for (const auto& x : s) a.push_back(x.str());
  return a;
}

inline std::string slopes_text(const std::vector<Slope>& s) {
  std::string out = "(";
  for (std::size_t i = 0; i < s.size(); ++i) out += (i ? ", " : "") + s[i].str();
  return out + ")";
}

inline json profile_json(const ReductionProfile& r) {
  json j;
  j["genus"] = r.genus;
  j["p_rank"] = r.p_rank;
  j["a_number"] = r.a_number;
  j["slopes"] = r.slopes ? slopes_json(*r.slopes) : json(nullptr);
  j["group_scheme"] = r.group_scheme;
  j["type"] = r.type_name;
  return j;
}

inline json prediction_json(const Prediction& p) {
  json j = profile_json(p.profile);
  j["certainty"] = to_string(p.certainty);
  j["source"] = p.source_theorem;
  return j;
}

inline json split_json(const SplittingType& s, const std::string& method) {
  json j;
  j["num_primes"] = s.num_primes;
  j["inertia_degree"] = s.inertia_degree;
  j["ramified"] = s.ramified;
  j["method"] = method;
  return j;
}

inline std::string shape_name(const SplittingType& s) {
  if (s.num_primes == 1) return "inert";
  if (s.inertia_degree == 1) return "split completely";
  return std::to_string(s.num_primes) + " primes of degree " + std::to_string(s.inertia_degree);
}

inline std::string profile_text(const ReductionProfile& r) {
  std::ostringstream os;
  os << "f=" << r.p_rank << " a=" << r.a_number << " " << r.type_name;
  if (!r.group_scheme.empty()) os << " [" << r.group_scheme << "]";
  return os.str();
}

inline json target_json(const PrimeTarget& t) {
  json j;
  if (const auto* s = std::get_if<SplitTarget>(&t)) {
    j["kind"] = "splitting";
    j["num_primes"] = s->num_primes;
  } else {
    j["kind"] = "kronecker";
    j["value"] = std::get<KroneckerTarget>(t).value;
  }
  return j;
}

struct Context {
  std::ostream& out;
  std::ostream& err;
  bool json_mode = false;
  std::string command;
  std::string catalog_path;
  std::uint64_t lpoly_budget = std::uint64_t{1} << 21;

  Catalog load_catalog() const { return catalog_load(catalog_path); }

  void emit(const json& result) const {
    json env;
    env["schema_version"] = kSchemaVersion;
    env["command"] = command;
    env["result"] = result;
    out << env.dump(2) << "\n";
  }
};

inline int cmd_count_types(const Context& ctx, int g, bool primitive_only, bool enumerate) {
  const BigInt total = count_E(static_cast<std::uint64_t>(g));
  const BigInt prim = count_E_primitive(static_cast<std::uint64_t>(g));
  std::vector<TypeClass> classes;
  if (enumerate) classes = enumerate_classes(g);
  if (ctx.json_mode) {
    json r;
    r["g"] = g;
    if (!primitive_only) r["total"] = detail::int_to_json(total);
    r["primitive"] = detail::int_to_json(prim);
    if (!primitive_only) r["imprimitive"] = detail::int_to_json(total - prim);
    if (enumerate) {
      json a = json::array();
      for (const auto& c : classes) {
        if (primitive_only && !c.primitive()) continue;
        json e;
        e["bits"] = c.representative.bits();
        e["exponents"] = c.representative.exponents();
        e["period"] = c.period;
        e["primitive"] = c.primitive();
        a.push_back(std::move(e));
      }
      r["classes"] = std::move(a);
    }
    ctx.emit(r);
  } else {
    ctx.out << "g = " << g << "\n";
    if (!primitive_only) ctx.out << "total: " << total << "\n";
    ctx.out << "primitive: " << prim << "\n";
    if (!primitive_only) ctx.out << "imprimitive: " << (total - prim) << "\n";
    for (const auto& c : classes) {
      if (primitive_only && !c.primitive()) continue;
      ctx.out << "  " << c.representative.extended_bits() << "  period " << c.period
              << (c.primitive() ? "  primitive" : "  imprimitive") << "\n";
    }
  }
  return exit_code::ok;
}

inline int cmd_split(const Context& ctx, const std::string& label, const std::string& p_text, const std::string& method) {
  const Catalog cat = ctx.load_catalog();
  const CyclicCMField field = cat.field(label);
  const BigInt p = parse_bigint(p_text);
  if (!is_prime(p)) throw domain_error("split: " + p_text + " is not prime");
  json r;
  r["field"] = field.label;
  r["p"] = to_string(p);
  std::string text;
  if (method == "stickelberger") {
    const auto s = stickelberger_parity(field, p);
    r["method"] = method;
    r["kronecker"] = s.kronecker;
    r["num_primes_parity"] = s.num_primes_even ? "even" : "odd";
    if (field.two_g == 4 && !s.num_primes_even) r["shape"] = "inert";
    text = "(D/p) = " + std::to_string(s.kronecker) + ", number of primes is " + (s.num_primes_even ? "even" : "odd");
    if (field.two_g == 4 && !s.num_primes_even) text += " (inert)";
  } else {
    SplittingType s;
    std::string used = method;
    if (method == "residue") {
      s = split_by_residue(field, p);
    } else if (method == "factor") {
      if (field.discriminant % p == 0) throw ramified_prime(to_string(p) + " divides the discriminant of " + field.label);
      if (!fits_u64(p) || p >= (BigInt(1) << 32)) throw resource_error("split: factorization method needs p < 2^32");
      s = split_by_factorization(field, p.convert_to<std::uint64_t>());
    } else {
      s = splitting_for_prediction(field, p, &used);
      if (s.ramified) throw ramified_prime(to_string(p) + " is ramified in " + field.label);
    }
    r["method"] = used;
    r["num_primes"] = s.num_primes;
    r["inertia_degree"] = s.inertia_degree;
    r["ramified"] = false;
    r["shape"] = shape_name(s);
    text = "l = " + std::to_string(s.num_primes) + ", inertia degree " + std::to_string(s.inertia_degree) + " (" +
           shape_name(s) + ", method " + used + ")";
  }
  if (ctx.json_mode)
    ctx.emit(r);
  else
    ctx.out << field.label << ", p = " << to_string(p) << ": " << text << "\n";
  return exit_code::ok;
}

inline int cmd_invariants(const Context& ctx, const std::string& label, std::uint64_t p) {
  const Catalog cat = ctx.load_catalog();
  const CMCurveRecord rec = cat.curve(label);
  if (p >= kVerificationCap) throw resource_error("invariants: p must be below 2^20");
  if (!is_prime(BigInt(p))) throw domain_error("invariants: " + std::to_string(p) + " is not prime");
  const auto curve = reduce_curve(rec, p);
  InvariantsOptions opt;
  opt.lpoly_budget = ctx.lpoly_budget;
  const auto inv = compute_invariants(curve, opt);
  if (ctx.json_mode) {
    json r = profile_json(inv.profile);
    r["curve"] = rec.label;
    r["p"] = p;
    r["l_polynomial"] = inv.l_poly ? detail::zpoly_to_json(*inv.l_poly) : json(nullptr);
    r["l_polynomial_text"] = inv.l_poly ? json(zpoly_to_string(*inv.l_poly, "T")) : json(nullptr);
    ctx.emit(r);
  } else {
    ctx.out << rec.label << " mod " << p << " (genus " << rec.genus << ")\n";
    ctx.out << "  p-rank f = " << inv.profile.p_rank << ", a-number a = " << inv.profile.a_number << "\n";
    if (inv.l_poly) {
      ctx.out << "  L(T) = " << zpoly_to_string(*inv.l_poly, "T") << "\n";
      ctx.out << "  Newton slopes " << slopes_text(*inv.profile.slopes) << "\n";
    } else {
      ctx.out << "  L(T) skipped: p^g above budget\n";
    }
    ctx.out << "  type: " << inv.profile.type_name;
    if (!inv.profile.group_scheme.empty()) ctx.out << ", A[p] = " << inv.profile.group_scheme;
    ctx.out << "\n";
  }
  return exit_code::ok;
}

inline int cmd_generate(const Context& ctx, const std::string& label, const std::string& type, unsigned bits,
                        std::uint64_t seed) {
  const Catalog cat = ctx.load_catalog();
  const CMCurveRecord rec = cat.curve(label);
  GenerateOptions opt;
  opt.invariants.lpoly_budget = ctx.lpoly_budget;
  const auto res = generate(cat, rec, parse_target_type(type), bits, seed, opt);
  if (ctx.json_mode) {
    json r;
    r["curve"] = rec.label;
    r["type"] = type;
    r["bits"] = bits;
    r["seed"] = seed;
    r["p"] = to_string(res.p);
    r["predicate"] = target_json(res.target);
    CMCurveRecord reduced{rec.label + "-mod-p", rec.genus, res.reduced, rec.field_label,
                          "reduction of " + rec.label + " modulo " + to_string(res.p), rec.cm_type, 0};
    Catalog one;
    one.curves.push_back(reduced);
    r["reduced_curve"] = catalog_to_json(one)["curves"][0];
    r["splitting"] = split_json(res.split, "auto");
    r["prediction"] = prediction_json(res.prediction);
    r["verified"] = res.verified ? profile_json(*res.verified) : json(nullptr);
    if (res.verified) r["verified_match"] = res.verified_match;
    ctx.emit(r);
  } else {
    ctx.out << "curve: " << rec.label << ", target " << type << ", " << bits << " bits, seed " << seed << "\n";
    ctx.out << "p = " << to_string(res.p) << "\n";
    ctx.out << "C mod p: y^2 = " << zpoly_to_string(res.reduced) << "\n";
    ctx.out << "splitting: " << shape_name(res.split) << "\n";
    ctx.out << "prediction: " << profile_text(res.prediction.profile) << " (" << to_string(res.prediction.certainty)
            << ", " << res.prediction.source_theorem << ")\n";
    if (res.verified)
      ctx.out << "verified: " << profile_text(*res.verified) << (res.verified_match ? " (match)" : " (MISMATCH)") << "\n";
    else
      ctx.out << "verified: skipped (p above 2^20, prediction only)\n";
  }
  return res.verified_match ? exit_code::ok : exit_code::mismatch;
}

inline int cmd_verify(const Context& ctx, const std::string& label, std::uint64_t pmax, unsigned threads) {
  const Catalog cat = ctx.load_catalog();
  const CMCurveRecord rec = cat.curve(label);
  SweepOptions opt;
  opt.threads = threads;
  opt.verify.invariants.lpoly_budget = ctx.lpoly_budget;
  const auto rows = verify_sweep(cat, rec, pmax, opt);
  int matched = 0, mismatched = 0, undetermined = 0, skipped = 0;
  json a = json::array();
  for (const auto& row : rows) {
    json j;
    j["p"] = row.p;
    j["status"] = to_string(row.status);
    if (!row.report) {
      ++skipped;
      j["note"] = row.note;
      a.push_back(std::move(j));
      continue;
    }
    const auto& rep = *row.report;
    switch (rep.verdict) {
      case Verdict::match: ++matched; break;
      case Verdict::mismatch: ++mismatched; break;
      case Verdict::undetermined: ++undetermined; break;
    }
    j["splitting"] = split_json(rep.split, rep.split_method);
    j["predicted"] = rep.prediction ? prediction_json(*rep.prediction) : json(nullptr);
    j["computed"] = profile_json(rep.computed.profile);
    j["l_polynomial"] = rep.computed.l_poly ? detail::zpoly_to_json(*rep.computed.l_poly) : json(nullptr);
    j["verdict"] = to_string(rep.verdict);
    j["notes"] = rep.notes;
    a.push_back(std::move(j));
  }
  if (ctx.json_mode) {
    json r;
    r["curve"] = rec.label;
    r["pmax"] = pmax;
    r["rows"] = std::move(a);
    r["summary"] = {{"matched", matched}, {"mismatched", mismatched}, {"undetermined", undetermined}, {"skipped", skipped}};
    ctx.emit(r);
  } else {
    ctx.out << rec.label << ", primes 3.." << pmax << "\n";
    std::vector<std::vector<std::string>> table = {{"p", "splitting", "predicted", "computed", "verdict"}};
    for (const auto& row : rows) {
      if (!row.report) {
        table.push_back({std::to_string(row.p), "skipped (" + std::string(to_string(row.status)) + ")"});
        continue;
      }
      const auto& rep = *row.report;
      std::string verdict = to_string(rep.verdict);
      for (const auto& n : rep.notes) verdict += "; " + n;
      table.push_back({std::to_string(row.p), shape_name(rep.split),
                       rep.prediction ? profile_text(rep.prediction->profile) : std::string("undetermined"),
                       profile_text(rep.computed.profile), verdict});
    }
    std::vector<std::size_t> width(5, 0);
    for (const auto& cells : table)
      if (cells.size() == 5)
        for (std::size_t c = 0; c + 1 < cells.size(); ++c) width[c] = std::max(width[c], cells[c].size());
    for (const auto& cells : table) {
      for (std::size_t c = 0; c < cells.size(); ++c) {
        ctx.out << cells[c];
        if (c + 1 < cells.size()) ctx.out << std::string(width[c] - cells[c].size() + 2, ' ');
      }
      ctx.out << "\n";
    }
    ctx.out << "matched " << matched << ", mismatched " << mismatched << ", undetermined " << undetermined
            << ", skipped " << skipped << "\n";
  }
  return mismatched ? exit_code::mismatch : exit_code::ok;
}

inline const char* error_kind(const std::exception& e) {
  if (dynamic_cast<const ramified_prime*>(&e)) return "ramified_prime";
  if (dynamic_cast<const bad_reduction*>(&e)) return "bad_reduction";
  if (dynamic_cast<const not_squarefree*>(&e)) return "not_squarefree";
  if (dynamic_cast<const missing_data*>(&e)) return "missing_data";
  if (dynamic_cast<const domain_error*>(&e)) return "domain_error";
  if (dynamic_cast<const search_timeout*>(&e)) return "timeout";
  if (dynamic_cast<const resource_error*>(&e)) return "resource_error";
  if (dynamic_cast<const schema_error*>(&e)) return "schema_error";
  if (dynamic_cast<const internal_inconsistency*>(&e)) return "internal_inconsistency";
  return "error";
}

inline int error_exit_code(const std::exception& e) {
  if (dynamic_cast<const domain_error*>(&e)) return exit_code::domain;
  if (dynamic_cast<const resource_error*>(&e)) return exit_code::resource;
  return exit_code::other;
}

}  // namespace cli_detail

/// Runs the command line; returns the process exit code.
inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Reduction types of CM abelian varieties: counting, splitting, invariants, generation"};
  app.require_subcommand(1);
  bool json_mode = false;
  std::string catalog_path;
  std::uint64_t lpoly_budget = std::uint64_t{1} << 21;
  app.add_flag("--json", json_mode, "Emit one JSON document on stdout");
  app.add_option("--catalog", catalog_path, "Catalog file (default: $CM_REDUCE_CATALOG or the shipped catalog)");
  app.add_option("--lpoly-budget", lpoly_budget, "Compute L-polynomials only when p^g is at most this")
      ->check(CLI::PositiveNumber);

  int g = 0;
  bool primitive_only = false, enumerate = false;
  auto* count = app.add_subcommand("count-types", "Count equivalence classes of CM types on a cyclic CM field");
  count->add_option("--g", g, "Genus")->required()->check(CLI::PositiveNumber);
  count->add_flag("--primitive", primitive_only, "Only primitive classes");
  count->add_flag("--enumerate", enumerate, "List canonical representatives (g <= 24)");

  std::string field_label, p_text, method = "auto";
  auto* split = app.add_subcommand("split", "Decomposition of a prime in a catalog field");
  split->add_option("--field", field_label, "Field label")->required();
  split->add_option("--p", p_text, "Prime (decimal or 2^k+c)")->required();
  split->add_option("--method", method, "auto, residue, factor or stickelberger")
      ->check(CLI::IsMember({"auto", "residue", "factor", "stickelberger"}));

  std::string curve_label;
  std::uint64_t p_small = 0;
  auto* inv = app.add_subcommand("invariants", "p-rank, a-number, L-polynomial and slopes of a reduction");
  inv->add_option("--curve", curve_label, "Curve label")->required();
  inv->add_option("--p", p_small, "Odd prime below 2^20")->required();

  std::string type;
  unsigned bits = 0;
  std::uint64_t seed = 1;
  auto* gen = app.add_subcommand("generate", "Find a prime giving the target reduction type");
  gen->add_option("--curve", curve_label, "Curve label")->required();
  gen->add_option("--type", type, "Target type")
      ->required()
      ->check(CLI::IsMember({"ordinary", "superspecial", "ssing-non-sspec", "supersingular", "prank0-a2", "prank0-a1"}));
  gen->add_option("--bits", bits, "Bit size n: p in [2^n, 2^(n+1))")->required()->check(CLI::Range(2u, 4096u));
  gen->add_option("--seed", seed, "Random seed");

  std::uint64_t pmax = 100;
  unsigned threads = 0;
  auto* ver = app.add_subcommand("verify", "Compare predicted and computed types over small primes");
  ver->add_option("--curve", curve_label, "Curve label")->required();
  ver->add_option("--pmax", pmax, "Largest prime (below 2^20)")->check(CLI::Range(std::uint64_t{3}, kVerificationCap - 1));
  ver->add_option("--threads", threads, "Worker threads (0 = hardware)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? exit_code::ok : exit_code::usage;
  }

  cli_detail::Context ctx{out, err, json_mode, app.get_subcommands().front()->get_name(), catalog_path, lpoly_budget};
  if (ctx.catalog_path.empty()) {
    const char* env = std::getenv("CM_REDUCE_CATALOG");
    ctx.catalog_path = env && *env ? env : CMREDUCE_DEFAULT_CATALOG;
  }
  try {
    if (count->parsed()) return cli_detail::cmd_count_types(ctx, g, primitive_only, enumerate);
    if (split->parsed()) return cli_detail::cmd_split(ctx, field_label, p_text, method);
    if (inv->parsed()) return cli_detail::cmd_invariants(ctx, curve_label, p_small);
    if (gen->parsed()) return cli_detail::cmd_generate(ctx, curve_label, type, bits, seed);
    return cli_detail::cmd_verify(ctx, curve_label, pmax, threads);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    if (json_mode) {
      json env;
      env["schema_version"] = kSchemaVersion;
      env["command"] = ctx.command;
      env["error"] = {{"kind", cli_detail::error_kind(e)}, {"message", e.what()}};
      out << env.dump(2) << "\n";
    }
    return cli_detail::error_exit_code(e);
  }
}

}  // namespace cmreduce
