#include "semiq/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <thread>

#include "semiq/quotient.hpp"

namespace semiq {

namespace {

constexpr std::size_t kMaxCounterexamples = 20;

// Used when a plan leaves a range unset.
constexpr IntRange kDefaultA{2, 60, 1};
constexpr IntRange kDefaultH{1, 4, 1};
constexpr IntRange kDefaultD{1, 15, 1};
constexpr IntRange kDefaultK{1, 5, 1};  // K, the initial gap
constexpr IntRange kDefaultB{1, 20, 1};
constexpr IntRange kDefaultBCount{1, 4, 1};
constexpr IntRange kDefaultA2{1, 40, 1};

[[noreturn]] void config_error(const std::string& what) { throw Error(ErrorKind::Config, what); }

class Drawer {
 public:
  explicit Drawer(std::uint64_t seed) : rng_(seed) {}

  Int uniform(Int lo, Int hi) {
    if (hi < lo) return lo;
    return std::uniform_int_distribution<Int>(lo, hi)(rng_);
  }

  Int from(const IntRange& r) {
    const Int count = (r.hi - r.lo) / r.step;
    return r.lo + r.step * uniform(0, std::max<Int>(count, 0));
  }

  Int divisor_of(Int a) {
    std::vector<Int> divs;
    for (Int x = 1; x * x <= a; ++x) {
      if (a % x == 0) {
        divs.push_back(x);
        if (x != a / x) divs.push_back(a / x);
      }
    }
    std::sort(divs.begin(), divs.end());
    return divs[static_cast<std::size_t>(uniform(0, static_cast<Int>(divs.size()) - 1))];
  }

 private:
  std::mt19937_64 rng_;
};

std::string plan_label(const PlanEntry& e) {
  std::string label = e.variant + "/" + std::string(to_string(e.target));
  if (e.p_rule != "divisors") label += " p=" + e.p_rule;
  return label;
}

std::string instance_key(const std::string& label, const InstanceParams& params) {
  return label + " " + to_json(params).dump();
}

Int pick_p(Drawer& rng, const std::string& rule, Int a, Int K) {
  if (rule == "divisors") return rng.divisor_of(a);
  if (rule == "K") return K;
  if (rule == "K+1") return K + 1;
  if (rule == "one") return 1;
  if (rule == "a") return a;
  config_error("unknown p rule '" + rule + "'");
}

/// Structural checks beyond the family hypotheses that a target needs.
void check_target_applicable(const FamilySpec& spec, SweepTarget target) {
  if (target == SweepTarget::MinCoins) (void)structured_form(spec.params);
  if (target == SweepTarget::Scaling && !std::holds_alternative<ScaledParams>(spec.params)) {
    throw Error(ErrorKind::Config, "the scaling target applies to the scaled family only");
  }
}

std::optional<InstanceParams> draw_one(Drawer& rng, const PlanEntry& e) {
  const Int a = rng.from(e.a.value_or(kDefaultA));
  if (e.variant == "two-gen") {
    TwoGenParams t{a, rng.from(e.a2.value_or(kDefaultA2)), 1};
    t.p = pick_p(rng, e.p_rule, a, 0);
    if (std::gcd(t.a1, t.a2) != 1 || t.p < 1 || t.a1 % t.p != 0) return std::nullopt;
    return t;
  }

  const Int h = rng.from(e.h.value_or(kDefaultH));
  const Int d = rng.from(e.d.value_or(kDefaultD));
  Int K = 0;
  FamilyParams params;
  if (e.variant == "aap") {
    params = AapParams{a, h, d, rng.from(e.k.value_or(IntRange{1, a - 1, 1}))};
  } else if (e.variant == "gap-aap") {
    K = rng.from(e.K.value_or(kDefaultK));
    params = GapAapParams{a, h, d, K, rng.from(e.k.value_or(IntRange{2 * K + 1, 2 * K + 1 + a, 1}))};
  } else if (e.variant == "plus-minus") {
    params = PlusMinusParams{a, h, d};
  } else if (e.variant == "odd-aap") {
    params = OddAapParams{a, h, d, rng.from(e.k.value_or(IntRange{1, (a - 2) / 2, 1}))};
  } else if (e.variant == "scaled") {
    const Int count = rng.from(e.b_count.value_or(kDefaultBCount));
    std::set<Int> B;
    for (Int i = 0; i < count; ++i) B.insert(rng.from(e.b.value_or(kDefaultB)));
    params = ScaledParams{a, d, std::vector<Int>(B.begin(), B.end())};
  } else {
    config_error("unknown variant '" + e.variant + "'");
  }

  FamilySpec spec{params, pick_p(rng, e.p_rule, a, K)};
  try {
    validate(spec);
    check_target_applicable(spec, e.target);
  } catch (const Error& err) {
    if (err.kind() == ErrorKind::Config) throw;
    return std::nullopt;
  }
  return spec;
}

// ---------------------------------------------------------------------------

struct Outcome {
  bool ok = true;
  std::string detail;
};

std::string pair_str(Int f, std::optional<Int> g) {
  std::string s = "F=" + std::to_string(f);
  s += g ? " g=" + std::to_string(*g) : std::string(" g=null");
  return s;
}

Outcome compare(std::string_view lhs_name, Int lf, std::optional<Int> lg, std::string_view rhs_name,
                const InvariantPair& rhs) {
  const bool ok = lf == rhs.frobenius && (!lg || *lg == rhs.genus);
  if (ok) return {};
  return {false, std::string(lhs_name) + " " + pair_str(lf, lg) + " vs " + std::string(rhs_name) +
                     " " + pair_str(rhs.frobenius, rhs.genus)};
}

Outcome compare_tables(const AperyTable& lhs, const AperyTable& rhs) {
  if (lhs.modulus() != rhs.modulus()) {
    return {false, "modulus " + std::to_string(lhs.modulus()) + " vs " + std::to_string(rhs.modulus())};
  }
  for (std::size_t r = 0; r < lhs.entries().size(); ++r) {
    if (lhs[r] != rhs[r]) {
      return {false, "residue " + std::to_string(r) + ": min-coins " + std::to_string(lhs[r]) +
                         " vs scan " + std::to_string(rhs[r])};
    }
  }
  return {};
}

Outcome run_family(const FamilySpec& spec, SweepTarget target, Int cap_bits) {
  const auto raw = family_generators(spec.params);
  const auto gens = GeneratorList::validate(raw);
  const Int a = raw.front();
  switch (target) {
    case SweepTarget::Oracle: {
      const auto closed = evaluate(spec);
      return compare("closed-form", closed.frobenius, closed.genus, "oracle",
                     oracle::brute_quotient_invariants(gens, spec.p, cap_bits));
    }
    case SweepTarget::Generic: {
      const auto closed = evaluate(spec);
      return compare("closed-form", closed.frobenius, closed.genus, "generic",
                     quotient_invariants(QuotientSpec(gens, spec.p, a)));
    }
    case SweepTarget::MinCoins:
      return compare_tables(n_drp_apery(structured_form(spec.params), spec.p),
                            quotient_apery(QuotientSpec(gens, spec.p, a)));
    case SweepTarget::Scaling: {
      const auto& f = std::get<ScaledParams>(spec.params);
      std::vector<Int> unscaled{f.a};
      unscaled.insert(unscaled.end(), f.B.begin(), f.B.end());
      const auto baseline = quotient_invariants(QuotientSpec(GeneratorList::validate(unscaled), spec.p, f.a));
      const auto scaled = scaled_quotient(f.a, f.d, f.B, spec.p, baseline);
      return compare("scaled-baseline", scaled.frobenius, scaled.genus, "generic",
                     quotient_invariants(QuotientSpec(gens, spec.p, a)));
    }
  }
  return {false, "unknown target"};
}

Outcome run_two_gen(const TwoGenParams& t, SweepTarget target, Int cap_bits) {
  const auto closed = two_gen_quotient(t.a1, t.a2, t.p);
  const std::vector<Int> raw{t.a1, t.a2};
  const auto gens = GeneratorList::validate(raw);
  if (target == SweepTarget::Generic) {
    return compare("closed-form", closed.frobenius, closed.genus, "generic",
                   quotient_invariants(QuotientSpec(gens, t.p, t.a1)));
  }
  return compare("closed-form", closed.frobenius, closed.genus, "oracle",
                 oracle::brute_quotient_invariants(gens, t.p, cap_bits));
}

Outcome run_instance(const InstanceParams& params, SweepTarget target, Int cap_bits) {
  try {
    if (const auto* spec = std::get_if<FamilySpec>(&params)) return run_family(*spec, target, cap_bits);
    return run_two_gen(std::get<TwoGenParams>(params), target, cap_bits);
  } catch (const Error& err) {
    return {false, std::string(to_string(err.kind())) + ": " + err.what()};
  }
}

Outcome run_fixed(const FixedInstance& inst, Int cap_bits) {
  try {
    InvariantPair expected{inst.frobenius.value_or(0), inst.genus.value_or(0)};
    std::optional<Int> closed_g;
    Int closed_f = 0;
    std::vector<Int> raw;
    Int p = 1;
    if (const auto* spec = std::get_if<FamilySpec>(&inst.params)) {
      const auto closed = evaluate(*spec);
      closed_f = closed.frobenius;
      closed_g = closed.genus;
      raw = family_generators(spec->params);
      p = spec->p;
    } else {
      const auto& t = std::get<TwoGenParams>(inst.params);
      const auto closed = two_gen_quotient(t.a1, t.a2, t.p);
      closed_f = closed.frobenius;
      closed_g = closed.genus;
      raw = {t.a1, t.a2};
      p = t.p;
    }
    const auto brute = oracle::brute_quotient_invariants(GeneratorList::validate(raw), p, cap_bits);
    // Closed form and oracle must agree with each other and with any expectation given.
    if (auto o = compare("closed-form", closed_f, closed_g, "oracle", brute); !o.ok) return o;
    if (inst.frobenius && *inst.frobenius != brute.frobenius) {
      return {false, "expected F=" + std::to_string(expected.frobenius) + ", got F=" +
                         std::to_string(brute.frobenius)};
    }
    if (inst.genus && *inst.genus != brute.genus) {
      return {false, "expected g=" + std::to_string(expected.genus) + ", got g=" +
                         std::to_string(brute.genus)};
    }
    return {};
  } catch (const Error& err) {
    return {false, std::string(to_string(err.kind())) + ": " + err.what()};
  }
}

IntRange read_range(const kv::Table& t, const std::string& key) {
  const kv::Value* v = t.find(key);
  if (const auto* single = std::get_if<Int>(&v->data)) return {*single, *single, 1};
  const auto values = t.get_int_array(key).value();
  if (values.size() < 2 || values.size() > 3) {
    config_error("line " + std::to_string(t.line()) + ": range '" + key +
                 "' must be an integer or [lo, hi] / [lo, hi, step]");
  }
  IntRange r{values[0], values[1], values.size() == 3 ? values[2] : 1};
  if (r.step < 1 || r.hi < r.lo) {
    config_error("line " + std::to_string(t.line()) + ": range '" + key + "' is empty or has a bad step");
  }
  return r;
}

void reject_unknown_keys(const kv::Table& t, const std::set<std::string>& allowed, const char* where) {
  for (const auto& [key, value] : t.entries()) {
    if (!allowed.count(key)) {
      config_error("line " + std::to_string(t.line()) + ": unknown key '" + key + "' in " + where);
    }
  }
}

Int require_int(const kv::Table& t, const std::string& key) {
  const auto v = t.get_int(key);
  if (!v) config_error("line " + std::to_string(t.line()) + ": instance needs '" + key + "'");
  return *v;
}

InstanceParams read_instance_params(const kv::Table& t, const std::string& variant) {
  if (variant == "two-gen") {
    return TwoGenParams{require_int(t, "a1"), require_int(t, "a2"), require_int(t, "p")};
  }
  const Int a = require_int(t, "a");
  const Int p = require_int(t, "p");
  if (variant == "scaled") {
    const auto B = t.get_int_array("B");
    if (!B) config_error("line " + std::to_string(t.line()) + ": scaled instance needs 'B'");
    return FamilySpec{ScaledParams{a, require_int(t, "d"), *B}, p};
  }
  if (variant == "aap") {
    return FamilySpec{AapParams{a, require_int(t, "h"), require_int(t, "d"), require_int(t, "k")}, p};
  }
  if (variant == "gap-aap") {
    return FamilySpec{GapAapParams{a, require_int(t, "h"), require_int(t, "d"), require_int(t, "K"),
                                   require_int(t, "k")},
                      p};
  }
  if (variant == "plus-minus") {
    return FamilySpec{PlusMinusParams{a, require_int(t, "h"), require_int(t, "d")}, p};
  }
  if (variant == "odd-aap") {
    return FamilySpec{OddAapParams{a, require_int(t, "h"), require_int(t, "d"), require_int(t, "k")}, p};
  }
  config_error("line " + std::to_string(t.line()) + ": unknown variant '" + variant + "'");
}

}  // namespace

std::optional<SweepTarget> sweep_target_from_name(std::string_view name) {
  if (name == "oracle") return SweepTarget::Oracle;
  if (name == "generic") return SweepTarget::Generic;
  if (name == "prop2.2") return SweepTarget::MinCoins;
  if (name == "scaling") return SweepTarget::Scaling;
  return std::nullopt;
}

std::string_view to_string(SweepTarget target) {
  switch (target) {
    case SweepTarget::Oracle: return "oracle";
    case SweepTarget::Generic: return "generic";
    case SweepTarget::MinCoins: return "prop2.2";
    case SweepTarget::Scaling: return "scaling";
  }
  return "unknown";
}

nlohmann::json to_json(const InstanceParams& params) {
  if (const auto* t = std::get_if<TwoGenParams>(&params)) {
    return {{"variant", "two-gen"}, {"a1", t->a1}, {"a2", t->a2}, {"p", t->p}};
  }
  const auto& spec = std::get<FamilySpec>(params);
  nlohmann::json j{{"variant", variant_name(spec.params)}};
  std::visit(
      [&](const auto& f) {
        using T = std::decay_t<decltype(f)>;
        j["a"] = f.a;
        if constexpr (std::is_same_v<T, ScaledParams>) {
          j["d"] = f.d;
          j["B"] = f.B;
        } else {
          j["h"] = f.h;
          j["d"] = f.d;
          if constexpr (std::is_same_v<T, GapAapParams>) j["K"] = f.K;
          if constexpr (!std::is_same_v<T, PlusMinusParams>) j["k"] = f.k;
        }
      },
      spec.params);
  j["p"] = spec.p;
  return j;
}

SweepPlan load_sweep_plan(const kv::Document& doc, std::string default_name) {
  SweepPlan plan;
  plan.name = std::move(default_name);
  reject_unknown_keys(doc.root, {"name", "seed", "cap_bits"}, "the top level");
  if (!doc.tables.empty()) config_error("unexpected table [" + doc.tables.begin()->first + "]");
  for (const auto& [name, list] : doc.arrays) {
    if (name != "plan" && name != "instance") config_error("unexpected [[" + name + "]] section");
  }
  if (auto v = doc.root.get_string("name")) plan.name = *v;
  if (auto v = doc.root.get_int("seed")) plan.seed = static_cast<std::uint64_t>(*v);
  if (auto v = doc.root.get_int("cap_bits")) plan.cap_bits = *v;

  if (const auto it = doc.arrays.find("plan"); it != doc.arrays.end()) {
    for (const auto& t : it->second) {
      reject_unknown_keys(t,
                          {"variant", "target", "samples", "a", "h", "d", "k", "K", "b", "b_count",
                           "a2", "p", "max_attempts"},
                          "[[plan]]");
      PlanEntry e;
      const auto variant = t.get_string("variant");
      if (!variant) config_error("line " + std::to_string(t.line()) + ": [[plan]] needs 'variant'");
      e.variant = *variant;
      if (e.variant != "two-gen" && !family_from_name(e.variant)) {
        config_error("line " + std::to_string(t.line()) + ": unknown variant '" + e.variant + "'");
      }
      const auto target_name = t.get_string("target").value_or("oracle");
      const auto target = sweep_target_from_name(target_name);
      if (!target) config_error("line " + std::to_string(t.line()) + ": unknown target '" + target_name + "'");
      e.target = *target;
      if (e.target == SweepTarget::Scaling && e.variant != "scaled") {
        config_error("line " + std::to_string(t.line()) + ": target 'scaling' needs variant 'scaled'");
      }
      if (e.variant == "two-gen" && (e.target == SweepTarget::MinCoins || e.target == SweepTarget::Scaling)) {
        config_error("line " + std::to_string(t.line()) + ": two-gen supports targets oracle and generic");
      }
      e.samples = t.get_int("samples").value_or(100);
      if (e.samples < 1) config_error("line " + std::to_string(t.line()) + ": samples must be positive");
      e.max_attempts = t.get_int("max_attempts").value_or(0);
      e.p_rule = t.get_string("p").value_or("divisors");
      if (e.p_rule != "divisors" && e.p_rule != "K" && e.p_rule != "K+1" && e.p_rule != "one" &&
          e.p_rule != "a") {
        config_error("line " + std::to_string(t.line()) + ": unknown p rule '" + e.p_rule + "'");
      }
      const std::pair<const char*, std::optional<IntRange>*> ranges[] = {
          {"a", &e.a}, {"h", &e.h}, {"d", &e.d}, {"k", &e.k}, {"K", &e.K},
          {"b", &e.b}, {"b_count", &e.b_count}, {"a2", &e.a2}};
      for (const auto& [key, slot] : ranges) {
        if (t.has(key)) *slot = read_range(t, key);
      }
      plan.plans.push_back(std::move(e));
    }
  }

  if (const auto it = doc.arrays.find("instance"); it != doc.arrays.end()) {
    for (const auto& t : it->second) {
      reject_unknown_keys(t,
                          {"variant", "a", "h", "d", "k", "K", "B", "a1", "a2", "p", "frobenius", "genus"},
                          "[[instance]]");
      const auto variant = t.get_string("variant");
      if (!variant) config_error("line " + std::to_string(t.line()) + ": [[instance]] needs 'variant'");
      FixedInstance inst{read_instance_params(t, *variant), t.get_int("frobenius"), t.get_int("genus")};
      plan.instances.push_back(std::move(inst));
    }
  }
  if (plan.plans.empty() && plan.instances.empty()) config_error("sweep config has no [[plan]] or [[instance]]");
  return plan;
}

SweepPlan load_sweep_file(const std::filesystem::path& path) {
  return load_sweep_plan(kv::parse_file(path), path.stem().string());
}

std::vector<std::pair<std::string, InstanceParams>> draw_instances(const PlanEntry& entry,
                                                                   std::uint64_t seed) {
  Drawer rng(seed);
  const std::string label = plan_label(entry);
  const Int attempts = entry.max_attempts > 0 ? entry.max_attempts : arith::mul(entry.samples, 1000);
  std::set<std::string> seen;
  std::vector<std::pair<std::string, InstanceParams>> out;
  for (Int i = 0; i < attempts && static_cast<Int>(out.size()) < entry.samples; ++i) {
    auto params = draw_one(rng, entry);
    if (!params) continue;
    std::string key = instance_key(label, *params);
    if (seen.insert(key).second) out.emplace_back(std::move(key), std::move(*params));
  }
  return out;
}

SweepReport sweep_check(const SweepPlan& plan, unsigned jobs) {
  const auto started = std::chrono::steady_clock::now();

  struct Task {
    std::string key;
    std::size_t plan_index;  // plans.size() marks a fixed instance
    const InstanceParams* params;
    SweepTarget target;
    const FixedInstance* fixed;
  };
  std::vector<std::vector<std::pair<std::string, InstanceParams>>> drawn;
  std::vector<Task> tasks;
  for (std::size_t i = 0; i < plan.plans.size(); ++i) {
    // Each plan gets its own stream so editing one plan does not reshuffle the others.
    drawn.push_back(draw_instances(plan.plans[i], plan.seed + 0x9E3779B97F4A7C15ULL * (i + 1)));
  }
  for (std::size_t i = 0; i < plan.plans.size(); ++i) {
    for (const auto& [key, params] : drawn[i]) tasks.push_back({key, i, &params, plan.plans[i].target, nullptr});
  }
  for (const auto& inst : plan.instances) {
    tasks.push_back({instance_key("fixed", inst.params), plan.plans.size(), &inst.params,
                     SweepTarget::Oracle, &inst});
  }

  std::vector<Outcome> outcomes(tasks.size());
  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (std::size_t i = next++; i < tasks.size(); i = next++) {
      const Task& t = tasks[i];
      outcomes[i] = t.fixed ? run_fixed(*t.fixed, plan.cap_bits) : run_instance(*t.params, t.target, plan.cap_bits);
    }
  };
  if (jobs == 0) jobs = std::max(1U, std::thread::hardware_concurrency());
  jobs = static_cast<unsigned>(std::min<std::size_t>(jobs, std::max<std::size_t>(tasks.size(), 1)));
  {
    std::vector<std::jthread> pool;
    for (unsigned j = 1; j < jobs; ++j) pool.emplace_back(worker);
    worker();
  }

  SweepReport report;
  report.name = plan.name;
  report.seed = plan.seed;
  for (const auto& e : plan.plans) report.plans.push_back({plan_label(e), 0, 0});
  if (!plan.instances.empty()) report.plans.push_back({"fixed", 0, 0});
  std::vector<SweepMismatch> mismatches;
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    auto& summary = report.plans[std::min(tasks[i].plan_index, report.plans.size() - 1)];
    ++summary.instances;
    ++report.instances;
    if (!outcomes[i].ok) {
      ++summary.mismatches;
      ++report.mismatches;
      mismatches.push_back({tasks[i].key, summary.label, to_json(*tasks[i].params), outcomes[i].detail});
    }
  }
  std::sort(mismatches.begin(), mismatches.end(),
            [](const SweepMismatch& x, const SweepMismatch& y) { return x.key < y.key; });
  if (mismatches.size() > kMaxCounterexamples) mismatches.resize(kMaxCounterexamples);
  report.counterexamples = std::move(mismatches);
  report.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return report;
}

void throw_if_mismatch(const SweepReport& report) {
  if (report.counterexamples.empty()) return;
  const auto& first = report.counterexamples.front();
  throw Error(ErrorKind::MismatchFound, "sweep '" + report.name + "': " +
                                            std::to_string(report.mismatches) +
                                            " mismatch(es); first: " + first.instance.dump() +
                                            " (" + first.detail + ")");
}

nlohmann::json to_json(const SweepReport& report) {
  nlohmann::json plans = nlohmann::json::array();
  for (const auto& p : report.plans) {
    plans.push_back({{"plan", p.label}, {"instances", p.instances}, {"mismatches", p.mismatches}});
  }
  nlohmann::json counterexamples = nlohmann::json::array();
  for (const auto& m : report.counterexamples) {
    counterexamples.push_back({{"plan", m.plan}, {"instance", m.instance}, {"detail", m.detail}});
  }
  return {{"name", report.name},
          {"seed", report.seed},
          {"instances", report.instances},
          {"mismatches", report.mismatches},
          {"plans", plans},
          {"counterexamples", counterexamples},
          {"wall_seconds", report.wall_seconds}};
}

}  // namespace semiq
