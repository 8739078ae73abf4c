#include "semiq/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "semiq/error.hpp"
#include "semiq/families.hpp"
#include "semiq/oracle.hpp"
#include "semiq/quotient.hpp"
#include "semiq/record.hpp"
#include "semiq/sweep.hpp"

namespace semiq::cli {

namespace {

constexpr Int kAperyGuard = 1'000'000;
constexpr Int kObLimit = 100'000'000;

/// Bad usage that the library itself would not catch.
struct Usage : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Int parse_int(std::string_view text, std::string_view what) {
  Int v = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc{} || ptr != end || text.empty()) {
    throw Usage(std::string(what) + ": '" + std::string(text) + "' is not a decimal integer");
  }
  return v;
}

std::vector<Int> parse_list(const std::string& text, std::string_view what) {
  std::vector<Int> out;
  std::size_t start = 0;
  for (;;) {
    const auto comma = text.find(',', start);
    out.push_back(parse_int(std::string_view(text).substr(start, comma - start), what));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

Int sieve_cap() {
  const char* env = std::getenv("SEMIQ_MEMORY_CAP");
  if (!env || !*env) return oracle::kDefaultSieveCapBits;
  const Int cap = parse_int(env, "SEMIQ_MEMORY_CAP");
  if (cap < 1) throw Usage("SEMIQ_MEMORY_CAP must be positive");
  return cap;
}

void guard_table(Int modulus, bool force) {
  if (modulus > kAperyGuard && !force) {
    throw Usage("Apéry table would have " + std::to_string(modulus) + " entries (more than " +
                std::to_string(kAperyGuard) + "); pass --force to build it anyway");
  }
}

std::vector<Int> entries_of(const AperyTable& t) { return {t.entries().begin(), t.entries().end()}; }

struct Format {
  bool json = false;
  bool csv = false;

  void emit(std::ostream& out, const OutputRecord& r) const {
    if (json) {
      out << to_json(r).dump() << '\n';
    } else if (csv) {
      write_csv_header(out);
      write_csv_row(out, r);
    } else {
      write_text(out, r);
    }
  }
};

// ---------------------------------------------------------------------------

struct InvariantsArgs {
  std::string gens;
  std::string method = "generic";
  bool apery = false;
  bool force = false;
  bool verify = false;
};

int cmd_invariants(const InvariantsArgs& args, const Format& fmt, std::ostream& out, std::ostream& err) {
  const auto raw = parse_list(args.gens, "generator list");
  const auto A = GeneratorList::validate(raw);
  OutputRecord r;
  r.input = {{"generators", raw}};
  r.method = args.method;
  if (args.apery && args.method != "generic") throw Usage("--apery needs --method generic");

  InvariantPair inv;
  if (args.method == "generic") {
    guard_table(A.smallest(), args.force || !args.apery);
    const auto table = apery_set(A);
    inv = invariants_from_apery(table);
    if (args.apery) r.apery = entries_of(table);
  } else if (args.method == "closed-form") {
    if (A.size() != 2) throw Usage("--method closed-form needs exactly two distinct generators");
    inv = sylvester_two(A.gens()[0], A.gens()[1]);
  } else if (args.method == "oracle") {
    inv = oracle::brute_invariants(A, sieve_cap());
  } else {
    throw Usage("invariants supports --method generic, closed-form or oracle");
  }
  r.frobenius = inv.frobenius;
  r.genus = inv.genus;

  InvariantPair check;
  if (args.verify) {
    check = oracle::brute_invariants(A, sieve_cap());
    r.verified = check == inv;
  }
  fmt.emit(out, r);
  if (r.verified == false) {
    err << "verification mismatch: " << r.method << " F=" << inv.frobenius << " g=" << inv.genus
        << " vs oracle F=" << check.frobenius << " g=" << check.genus << '\n';
    return kMismatch;
  }
  return kOk;
}

// ---------------------------------------------------------------------------

struct QuotientArgs {
  std::string gens;
  Int p = 0;
  std::string method = "generic";
  bool apery = false;
  bool force = false;
  bool verify = false;
};

int cmd_quotient(const QuotientArgs& args, const Format& fmt, std::ostream& out, std::ostream& err) {
  const auto raw = parse_list(args.gens, "generator list");
  const auto A = GeneratorList::validate(raw);
  if (args.p < 1) throw Usage("--p must be at least 1");
  const Int a1 = raw.front();
  const Int p = args.p;
  if (a1 % p != 0 && args.method != "oracle") {
    throw Error(ErrorKind::DivisorMismatch,
                "p = " + std::to_string(p) + " does not divide the first generator " +
                    std::to_string(a1) +
                    "; no closed form or Apéry reduction is known when p does not divide a1 "
                    "(an open problem), rerun with --method oracle");
  }
  if (args.apery && (args.method == "oracle" || args.method == "closed-form")) {
    throw Usage("--apery needs --method generic or prop2.2");
  }

  OutputRecord r;
  r.input = {{"generators", raw}};
  r.p = p;
  r.method = args.method;
  InvariantPair inv;
  if (args.method == "generic" || args.method == "prop2.2") {
    guard_table(a1 / p, args.force || !args.apery);
    const AperyTable table = args.method == "generic"
                                 ? quotient_apery(QuotientSpec(A, p, a1))
                                 : n_drp_apery(StructuredFamily::decompose(A, a1), p);
    inv = invariants_from_apery(table);
    if (args.apery) r.apery = entries_of(table);
  } else if (args.method == "closed-form") {
    if (A.size() != 2) {
      throw Usage("--method closed-form on a generator list needs exactly two generators; "
                  "structured families go through the family subcommand");
    }
    inv = two_gen_quotient(a1, A.gens()[0] == a1 ? A.gens()[1] : A.gens()[0], p);
  } else if (args.method == "oracle") {
    inv = oracle::brute_quotient_invariants(A, p, sieve_cap());
  } else {
    throw Usage("quotient supports --method generic, prop2.2, closed-form or oracle");
  }
  r.frobenius = inv.frobenius;
  r.genus = inv.genus;

  InvariantPair check;
  if (args.verify) {
    check = oracle::brute_quotient_invariants(A, p, sieve_cap());
    r.verified = check == inv;
  }
  fmt.emit(out, r);
  if (r.verified == false) {
    err << "verification mismatch: " << r.method << " F=" << inv.frobenius << " g=" << inv.genus
        << " vs oracle F=" << check.frobenius << " g=" << check.genus << '\n';
    return kMismatch;
  }
  return kOk;
}

// ---------------------------------------------------------------------------

struct FamilyArgs {
  std::string variant;
  Int a = 0, h = 0, d = 0, k = 0, K = 0, p = 0;
  std::string B;
  bool verify = false;
  std::map<std::string, CLI::Option*> opts;
};

FamilyParams family_params(const FamilyArgs& args) {
  static const std::map<std::string, std::set<std::string>> kFlags{
      {"scaled", {"a", "d", "B"}},
      {"aap", {"a", "h", "d", "k"}},
      {"gap-aap", {"a", "h", "d", "K", "k"}},
      {"plus-minus", {"a", "h", "d"}},
      {"odd-aap", {"a", "h", "d", "k"}},
  };
  const auto it = kFlags.find(args.variant);
  if (it == kFlags.end()) {
    throw Usage("unknown family '" + args.variant + "' (scaled, aap, gap-aap, plus-minus, odd-aap)");
  }
  for (const auto& [name, opt] : args.opts) {
    const bool needed = it->second.count(name) > 0;
    if (needed && !opt->count()) throw Usage("family " + args.variant + " needs --" + name);
    if (!needed && opt->count()) throw Usage("--" + name + " does not apply to family " + args.variant);
  }
  if (args.variant == "scaled") return ScaledParams{args.a, args.d, parse_list(args.B, "--B")};
  if (args.variant == "aap") return AapParams{args.a, args.h, args.d, args.k};
  if (args.variant == "gap-aap") return GapAapParams{args.a, args.h, args.d, args.K, args.k};
  if (args.variant == "plus-minus") return PlusMinusParams{args.a, args.h, args.d};
  return OddAapParams{args.a, args.h, args.d, args.k};
}

int cmd_family(const FamilyArgs& args, const Format& fmt, std::ostream& out, std::ostream& err) {
  const FamilySpec spec{family_params(args), args.p};
  validate(spec);
  const auto result = evaluate(spec);

  OutputRecord r;
  r.input = to_json(InstanceParams{spec});
  r.input.erase("variant");
  r.input.erase("p");
  r.input["family"] = args.variant;
  r.p = spec.p;
  r.method = "closed-form";
  r.frobenius = result.frobenius;
  r.genus = result.genus;

  InvariantPair check;
  if (args.verify) {
    const auto gens = GeneratorList::validate(family_generators(spec.params));
    check = oracle::brute_quotient_invariants(gens, spec.p, sieve_cap());
    r.verified = check.frobenius == result.frobenius && (!result.genus || *result.genus == check.genus);
  }
  fmt.emit(out, r);
  if (r.verified == false) {
    err << "verification mismatch: closed form F=" << result.frobenius << " g="
        << (result.genus ? std::to_string(*result.genus) : std::string("null"))
        << " vs oracle F=" << check.frobenius << " g=" << check.genus << '\n';
    return kMismatch;
  }
  return kOk;
}

// ---------------------------------------------------------------------------

struct SweepArgs {
  std::string config;
  std::string out_path;
  int jobs = 0;
};

int cmd_sweep(const SweepArgs& args, const Format& fmt, std::ostream& out, std::ostream& err) {
  if (args.jobs < 0) throw Usage("--jobs must be non-negative");
  auto plan = load_sweep_file(args.config);
  if (std::getenv("SEMIQ_MEMORY_CAP")) plan.cap_bits = sieve_cap();
  const auto report = sweep_check(plan, static_cast<unsigned>(args.jobs));
  const auto json = to_json(report);

  if (!args.out_path.empty()) {
    std::ofstream file(args.out_path);
    if (!file) throw Usage("cannot write report to " + args.out_path);
    file << json.dump(2) << '\n';
  }
  if (fmt.json) {
    out << json.dump() << '\n';
  } else {
    out << "sweep " << report.name << ": " << report.instances << " instances, " << report.mismatches
        << " mismatches, " << report.wall_seconds << " s\n";
    for (const auto& p : report.plans) {
      out << "  " << p.label << ": " << p.instances << " instances, " << p.mismatches << " mismatches\n";
    }
  }
  if (report.mismatches > 0) {
    const auto& first = report.counterexamples.front();
    err << "sweep mismatch: " << report.mismatches << " instance(s); first counterexample "
        << first.instance.dump() << ": " << first.detail << '\n';
    return kMismatch;
  }
  return kOk;
}

// ---------------------------------------------------------------------------

struct AperyArgs {
  std::string gens;
  Int p = 1;
  std::string method = "generic";
  bool force = false;
};

int cmd_apery(const AperyArgs& args, const Format& fmt, std::ostream& out) {
  QuotientArgs q;
  q.gens = args.gens;
  q.p = args.p;
  q.method = args.method;
  q.apery = true;
  q.force = args.force;
  if (q.method != "generic" && q.method != "prop2.2") throw Usage("apery supports --method generic or prop2.2");
  std::ostringstream sink;
  return cmd_quotient(q, fmt, out, sink);
}

// ---------------------------------------------------------------------------

struct ObArgs {
  std::string coins;
  Int M = 0;
  bool witness = false;
};

int cmd_ob(const ObArgs& args, const Format& fmt, std::ostream& out) {
  const auto coins = parse_list(args.coins, "coin list");
  if (args.M > kObLimit) {
    throw Usage("--M above " + std::to_string(kObLimit) + " would need a table that large");
  }
  OBTable table(coins);
  const auto value = table.value(args.M);
  std::optional<std::vector<Int>> witness;
  if (args.witness && value) witness = table.witness(args.M);
  const std::vector<Int> sorted(table.coins().begin(), table.coins().end());

  if (fmt.json) {
    nlohmann::json j{{"B", sorted}, {"M", args.M}};
    j["value"] = value ? nlohmann::json(*value) : nlohmann::json(nullptr);
    if (witness) j["witness"] = *witness;
    out << j.dump() << '\n';
  } else if (fmt.csv) {
    out << "B,M,value\n";
    std::string b;
    for (Int c : sorted) b += (b.empty() ? "" : ",") + std::to_string(c);
    out << '"' << b << "\"," << args.M << ',' << (value ? std::to_string(*value) : std::string()) << '\n';
  } else {
    out << "min parts  " << (value ? std::to_string(*value) : std::string("infeasible")) << '\n';
    if (witness) {
      for (std::size_t i = 0; i < sorted.size(); ++i) {
        if ((*witness)[i] > 0) out << "  " << sorted[i] << " x " << (*witness)[i] << '\n';
      }
    }
  }
  return kOk;
}

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::MismatchFound: return kMismatch;
    case ErrorKind::InternalBound:
    case ErrorKind::InvalidTable: return kInternal;
    default: return kInputError;
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Frobenius numbers, genus and Apéry sets of numerical semigroups and their quotients",
               "semiq"};
  app.require_subcommand(1);
  app.fallthrough();
  Format fmt;
  auto* json_flag = app.add_flag("--json", fmt.json, "One JSON record per line");
  app.add_flag("--csv", fmt.csv, "CSV header and rows")->excludes(json_flag);

  const char* kGensHelp = "Comma-separated generators, e.g. 3,5";

  InvariantsArgs inv;
  auto* inv_cmd = app.add_subcommand("invariants", "Frobenius number and genus of <A>");
  inv_cmd->add_option("generators", inv.gens, kGensHelp)->required();
  inv_cmd->add_option("--method", inv.method, "generic | closed-form | oracle");
  inv_cmd->add_flag("--apery", inv.apery, "Include the Apéry table w.r.t. the smallest generator");
  inv_cmd->add_flag("--force", inv.force, "Allow tables with more than 10^6 entries");
  inv_cmd->add_flag("--verify", inv.verify, "Compare against the sieve oracle (exit 3 on mismatch)");

  QuotientArgs quo;
  auto* quo_cmd = app.add_subcommand("quotient", "Frobenius number and genus of <A>/p");
  quo_cmd->add_option("generators", quo.gens, kGensHelp + std::string("; the first is a1"))->required();
  quo_cmd->add_option("--p", quo.p, "Divisor p >= 1")->required();
  quo_cmd->add_option("--method", quo.method, "generic | prop2.2 | closed-form | oracle");
  quo_cmd->add_flag("--apery", quo.apery, "Include the quotient Apéry table (modulus a1/p)");
  quo_cmd->add_flag("--force", quo.force, "Allow tables with more than 10^6 entries");
  quo_cmd->add_flag("--verify", quo.verify, "Compare against the sieve oracle (exit 3 on mismatch)");

  FamilyArgs fam;
  auto* fam_cmd = app.add_subcommand("family", "Closed form for a structured family");
  fam_cmd->set_help_flag("--help", "Print this help message and exit");  // --h is a parameter here
  fam_cmd->add_option("variant", fam.variant, "scaled | aap | gap-aap | plus-minus | odd-aap")->required();
  fam.opts["a"] = fam_cmd->add_option("--a", fam.a, "First generator");
  fam.opts["h"] = fam_cmd->add_option("--h", fam.h, "Multiple of a in the offset");
  fam.opts["d"] = fam_cmd->add_option("--d", fam.d, "Common difference / scale");
  fam.opts["k"] = fam_cmd->add_option("--k", fam.k, "Last index");
  fam.opts["K"] = fam_cmd->add_option("--K", fam.K, "Initial gap (gap-aap)");
  fam.opts["B"] = fam_cmd->add_option("--B", fam.B, "Comma-separated coefficients (scaled)");
  fam_cmd->add_option("--p", fam.p, "Divisor of a")->required();
  fam_cmd->add_flag("--verify", fam.verify, "Compare against the sieve oracle (exit 3 on mismatch)");

  SweepArgs sw;
  auto* sw_cmd = app.add_subcommand("sweep", "Run a sweep config and report mismatches");
  sw_cmd->add_option("config", sw.config, "Sweep config file")->required();
  sw_cmd->add_option("--out", sw.out_path, "Write the JSON report here");
  sw_cmd->add_option("--jobs", sw.jobs, "Worker threads (0: available parallelism)");

  AperyArgs ap;
  auto* ap_cmd = app.add_subcommand("apery", "Apéry table of <A>/p w.r.t. a1/p");
  ap_cmd->add_option("generators", ap.gens, kGensHelp + std::string("; the first is a1"))->required();
  ap_cmd->add_option("--p", ap.p, "Divisor of a1 (default 1)");
  ap_cmd->add_option("--method", ap.method, "generic | prop2.2");
  ap_cmd->add_flag("--force", ap.force, "Allow tables with more than 10^6 entries");

  ObArgs ob;
  auto* ob_cmd = app.add_subcommand("ob", "Minimum number of parts from B summing to M");
  ob_cmd->add_option("coins", ob.coins, "Comma-separated positive parts")->required();
  ob_cmd->add_option("--M", ob.M, "Target sum")->required();
  ob_cmd->add_flag("--witness", ob.witness, "Also print a minimal representation");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kOk;
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e, out, err);
    return kOk;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kInputError;
  }

  try {
    if (*inv_cmd) return cmd_invariants(inv, fmt, out, err);
    if (*quo_cmd) return cmd_quotient(quo, fmt, out, err);
    if (*fam_cmd) return cmd_family(fam, fmt, out, err);
    if (*sw_cmd) return cmd_sweep(sw, fmt, out, err);
    if (*ap_cmd) return cmd_apery(ap, fmt, out);
    if (*ob_cmd) return cmd_ob(ob, fmt, out);
  } catch (const Error& e) {
    err << "error: " << to_string(e.kind()) << ": " << e.what() << '\n';
    return exit_code_for(e.kind());
  } catch (const Usage& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kInternal;
  }
  return kInputError;
}

}  // namespace semiq::cli
