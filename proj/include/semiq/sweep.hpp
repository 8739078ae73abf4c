#pragma once

// Randomized and fixed-instance cross-checks between the closed forms, the
// generic quotient path, the min-coins reduction, and the brute-force oracle.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"
#include "semiq/families.hpp"
#include "semiq/kvtree.hpp"
#include "semiq/oracle.hpp"

namespace semiq {

/// What a plan entry compares.
enum class SweepTarget {
  Oracle,   // closed form vs brute-force sieve
  Generic,  // closed form vs quotient Apéry scan
  MinCoins,  // min-coins Apéry table vs quotient Apéry scan
  Scaling,  // scaled closed form on the generic baseline vs generic on the scaled list
};

std::optional<SweepTarget> sweep_target_from_name(std::string_view name);
std::string_view to_string(SweepTarget target);

/// Inclusive range lo, lo + step, ..., <= hi.
struct IntRange {
  Int lo = 0;
  Int hi = 0;
  Int step = 1;
};

/// The two-generator closed form, swept alongside the families.
struct TwoGenParams {
  Int a1 = 0, a2 = 0, p = 1;
};

using InstanceParams = std::variant<FamilySpec, TwoGenParams>;

/// Random draws for one variant/target pair. Unset ranges take defaults
/// (see sweep.cpp); k defaults to the family's admissible range for the drawn a.
struct PlanEntry {
  std::string variant;  // family name or "two-gen"
  SweepTarget target = SweepTarget::Oracle;
  Int samples = 100;
  std::optional<IntRange> a, h, d, k, K, b, b_count, a2;
  std::string p_rule = "divisors";  // divisors | K | K+1 | one | a
  Int max_attempts = 0;             // 0: 1000 * samples
};

struct FixedInstance {
  InstanceParams params;
  std::optional<Int> frobenius;
  std::optional<Int> genus;
};

struct SweepPlan {
  std::string name = "sweep";
  std::uint64_t seed = 1;
  Int cap_bits = oracle::kDefaultSieveCapBits;
  std::vector<PlanEntry> plans;
  std::vector<FixedInstance> instances;
};

/// Throws Error(Config) on unknown keys, variants, targets or rules.
SweepPlan load_sweep_plan(const kv::Document& doc, std::string default_name = "sweep");
SweepPlan load_sweep_file(const std::filesystem::path& path);

struct SweepMismatch {
  std::string key;
  std::string plan;  // "variant/target" or "fixed"
  nlohmann::json instance;
  std::string detail;
};

struct PlanSummary {
  std::string label;
  Int instances = 0;
  Int mismatches = 0;
};

struct SweepReport {
  std::string name;
  std::uint64_t seed = 0;
  Int instances = 0;
  Int mismatches = 0;
  std::vector<PlanSummary> plans;
  std::vector<SweepMismatch> counterexamples;  // sorted by key, at most 20
  double wall_seconds = 0;
};

/// Draws the plan's instances (deterministic in seed) without evaluating them.
std::vector<std::pair<std::string, InstanceParams>> draw_instances(const PlanEntry& entry,
                                                                   std::uint64_t seed);

/// Evaluates every instance on `jobs` workers (0: hardware concurrency).
/// Aggregation is independent of scheduling.
SweepReport sweep_check(const SweepPlan& plan, unsigned jobs = 0);

/// Throws MismatchFound carrying the first counterexample when there is one.
void throw_if_mismatch(const SweepReport& report);

nlohmann::json to_json(const SweepReport& report);
nlohmann::json to_json(const InstanceParams& params);

}  // namespace semiq
