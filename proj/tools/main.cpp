#include <chrono>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "hbp/error.hpp"
#include "hbp/fullh.hpp"
#include "hbp/generate.hpp"
#include "hbp/harmonic.hpp"
#include "hbp/hgap.hpp"
#include "hbp/io.hpp"
#include "hbp/knapsack.hpp"
#include "hbp/oracle.hpp"
#include "hbp/orientation.hpp"
#include "hbp/strip.hpp"

namespace {

using namespace hbp;
using nlohmann::json;

long elapsed_ms(std::chrono::steady_clock::time_point t0) {
  auto dt = std::chrono::steady_clock::now() - t0;
  return std::chrono::duration_cast<std::chrono::milliseconds>(dt).count();
}

InstanceFile load_instance(const std::string& path) {
  if (path == "-") return parse_instance(std::cin);
  return parse_instance_file(path);
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out_path);
  input_check(f.good(), "cannot open output file: " + out_path);
  f << text;
}

Rational parse_rational_flag(const std::string& s, const char* flag) {
  auto r = Rational::parse(s);
  input_check(r.has_value(), std::string(flag) + ": not a rational number: \"" + s + "\"");
  return *r;
}

RotationPolicy effective_policy(const InstanceFile& file, const std::string& flag) {
  if (flag.empty()) return file.rotation;
  RotationPolicy p = rotation_policy_from_name(flag);
  if (p == RotationPolicy::EXPLICIT)
    input_check(!file.orientations.empty(),
                "--rotations explicit needs an orientations list in the instance file");
  return p;
}

/// Solver-space view of the instance. With rotations, every member is
/// replaced by its feasible oriented variants (fresh ids) before axis
/// scaling; `source` maps fresh ids back to (original id, orientation).
struct Prepared {
  std::vector<Itemset> sets;
  std::map<int, std::pair<int, Perm>> source;
  bool expanded = false;
};

Prepared prepare(const InstanceFile& file, RotationPolicy policy, bool unit_shelf_solver) {
  Prepared out;
  if (policy == RotationPolicy::NONE) {
    out.sets = normalized_itemsets(file);
    return out;
  }
  if (unit_shelf_solver)
    input_check(file.unit_bin(), "rotations with a shelf solver need a unit bin");
  auto flat = file.flat_items();
  const std::vector<Perm>* perms = file.orientations.empty() ? nullptr : &file.orientations;
  RotationExpansion exp = unit_shelf_solver
                              ? expand_rotations_distinct_heights(flat, policy, 0, perms)
                              : expand_rotations(flat, policy, file.bin, 0, perms);
  out.expanded = true;
  out.source = std::move(exp.member_source);
  size_t j = 0;
  for (auto& set : file.itemsets) {
    Itemset merged;
    for (size_t m = 0; m < set.size(); ++m, ++j)
      for (auto& v : exp.sets[j]) merged.push_back(v);
    out.sets.push_back(std::move(merged));
  }
  for (auto& set : out.sets)
    for (auto& it : set)
      for (int a = 0; a < file.d; ++a)
        it.lengths[static_cast<size_t>(a)] /= file.bin[static_cast<size_t>(a)];
  return out;
}

Packing to_file_space(Packing p, const InstanceFile& file, const Prepared& prep) {
  if (prep.expanded) {
    for (auto& pl : p.placements) {
      auto it = prep.source.find(pl.item);
      internal_check(it != prep.source.end(), "solver emitted an unknown member id");
      pl.item = it->second.first;
      pl.orientation = it->second.second;
    }
  }
  return denormalize_packing(std::move(p), file);
}

std::vector<std::pair<int, int>> map_pairs(std::vector<std::pair<int, int>> pairs,
                                           const Prepared& prep) {
  if (prep.expanded)
    for (auto& pr : pairs) {
      auto it = prep.source.find(pr.second);
      internal_check(it != prep.source.end(), "unknown member id in assortment");
      pr.second = it->second.first;
    }
  return pairs;
}

std::vector<std::pair<int, int>> assortment_of(const Packing& p,
                                               const std::vector<Itemset>& sets) {
  std::map<int, int> set_of;
  for (size_t s = 0; s < sets.size(); ++s)
    for (auto& it : sets[s]) set_of[it.id] = static_cast<int>(s);
  std::map<int, int> by_set;
  for (auto& pl : p.placements) {
    auto it = set_of.find(pl.item);
    internal_check(it != set_of.end(), "solver placed an unknown member");
    by_set[it->second] = pl.item;
  }
  std::vector<std::pair<int, int>> out;
  for (auto& [s, id] : by_set) out.emplace_back(s, id);
  return out;
}

void require_singletons(const InstanceFile& file, const char* sub, const char* alt) {
  for (auto& set : file.itemsets)
    input_check(set.size() == 1,
                std::string(sub) + " needs singleton itemsets; use " + alt + " for alternatives");
}

void require_profits(const std::vector<Itemset>& sets) {
  for (auto& set : sets)
    for (auto& it : set)
      input_check(it.profit.has_value(), "knapsack needs a profit on every item");
}

json exact_pair(const Rational& r) {
  return json{{"decimal", r.decimal()}, {"exact", r.str()}};
}

struct Options {
  std::string in = "-";
  std::string out_path;
  std::string out_fmt = "json";
  std::string rotations;
  std::string epsilon = "1/2";
  std::string packing_path;
  std::string coverage = "one";
  std::string problem;
  int k = 4;
  long budget = 0;
  int threads = 1;
  std::optional<unsigned long long> seed;
  // gen
  GenSpec gen;
  std::string gen_dist = "grid";
  std::string gen_rotation = "none";
  std::vector<int> gen_types;
  bool gen_profits = false;
};

int g_exit = 0;

ReportMeta make_meta(const Options& o, const std::string& solver, int k,
                     std::optional<Rational> eps, long ms) {
  ReportMeta meta;
  meta.solver = solver;
  meta.k = k;
  meta.epsilon = std::move(eps);
  meta.seed = o.seed;
  meta.runtime_ms = ms;
  meta.csv = o.out_fmt == "csv";
  return meta;
}

void run_bp(const Options& o, bool multiple_choice) {
  InstanceFile file = load_instance(o.in);
  const char* name = multiple_choice ? "pack-mcbp" : "pack-bp";
  if (!multiple_choice) require_singletons(file, "pack-bp", "pack-mcbp");
  RotationPolicy policy = effective_policy(file, o.rotations);
  auto ctx = HarmonicContext::make(o.k);
  Prepared prep = prepare(file, policy, false);

  auto t0 = std::chrono::steady_clock::now();
  FullhResult r;
  if (!multiple_choice && !prep.expanded) {
    std::vector<Item> items;
    for (auto& set : prep.sets) items.push_back(set[0]);
    r = fullh_bp(items, ctx);
  } else {
    r = fullh_mcbp(prep.sets, ctx);
  }
  long ms = elapsed_ms(t0);

  Packing emitted = to_file_space(r.packing, file, prep);
  auto assort = map_pairs(assortment_of(r.packing, prep.sets), prep);
  emit(bp_report(make_meta(o, name, o.k, std::nullopt, ms), file, prep.sets, r, ctx, emitted,
                 assort),
       o.out_path);
}

void run_sp(const Options& o, bool multiple_choice) {
  InstanceFile file = load_instance(o.in);
  const char* name = multiple_choice ? "pack-mcsp" : "pack-sp";
  if (!multiple_choice) require_singletons(file, "pack-sp", "pack-mcsp");
  input_check(file.d >= 2, "strip packing needs d >= 2");
  RotationPolicy policy = effective_policy(file, o.rotations);
  auto ctx = HarmonicContext::make(o.k);
  Prepared prep = prepare(file, policy, true);

  auto t0 = std::chrono::steady_clock::now();
  StripResult r;
  if (!multiple_choice && !prep.expanded) {
    std::vector<Item> items;
    for (auto& set : prep.sets) items.push_back(set[0]);
    r = hdh_sp(items, ctx);
  } else {
    r = hdh_mcsp(prep.sets, ctx);
  }
  long ms = elapsed_ms(t0);

  Packing emitted = to_file_space(r.packing, file, prep);
  auto assort = map_pairs(assortment_of(r.packing, prep.sets), prep);
  emit(sp_report(make_meta(o, name, o.k, std::nullopt, ms), file, prep.sets, r, ctx, emitted,
                 assort),
       o.out_path);
}

void run_hgap(const Options& o) {
  InstanceFile file = load_instance(o.in);
  Rational eps = parse_rational_flag(o.epsilon, "--epsilon");
  RotationPolicy policy = effective_policy(file, o.rotations);
  auto ctx = HarmonicContext::make(o.k);
  Prepared prep = prepare(file, policy, true);

  auto t0 = std::chrono::steady_clock::now();
  HgapResult r = hgap(prep.sets, eps, ctx, o.budget, o.threads);
  long ms = elapsed_ms(t0);

  Packing emitted = to_file_space(r.packing, file, prep);
  auto assort = map_pairs(r.assortment, prep);
  emit(hgap_report(make_meta(o, "pack-hgap", o.k, eps, ms), file, prep.sets, r, ctx, emitted,
                   assort),
       o.out_path);
}

void run_ks(const Options& o) {
  InstanceFile file = load_instance(o.in);
  Rational eps = parse_rational_flag(o.epsilon, "--epsilon");
  RotationPolicy policy = effective_policy(file, o.rotations);
  Prepared prep = prepare(file, policy, true);
  require_profits(prep.sets);

  auto t0 = std::chrono::steady_clock::now();
  KsResult r = hdh_ks(prep.sets, eps);
  long ms = elapsed_ms(t0);

  Packing emitted = to_file_space(r.packing, file, prep);
  auto packed = map_pairs(r.packed, prep);
  emit(ks_report(make_meta(o, "pack-ks", 3, eps, ms), file, prep.sets, r, emitted, packed),
       o.out_path);
}

void run_validate(const Options& o) {
  InstanceFile file = load_instance(o.in);
  Packing packing = parse_packing_file(o.packing_path);
  Coverage cov;
  if (o.coverage == "none")
    cov = Coverage::NONE;
  else if (o.coverage == "exact")
    cov = Coverage::EXACT;
  else if (o.coverage == "one")
    cov = Coverage::ASSORTMENT_ONE;
  else if (o.coverage == "at-most-one")
    cov = Coverage::ASSORTMENT_AT_MOST_ONE;
  else
    throw InputError("--coverage: expected none, exact, one, or at-most-one");
  auto report = validate_packing(packing, file.itemsets, cov);
  if (report.ok()) {
    emit("clean\n", o.out_path);
  } else {
    emit(report.to_string(), o.out_path);
    g_exit = 1;
  }
}

void run_oracle(const Options& o) {
  InstanceFile file = load_instance(o.in);
  RotationPolicy policy = effective_policy(file, o.rotations);
  const std::vector<Perm>* perms = file.orientations.empty() ? nullptr : &file.orientations;
  json out;
  if (o.problem == "1bp") {
    require_singletons(file, "oracle --problem 1bp", "plain items");
    input_check(file.d == 1, "oracle 1bp needs d = 1");
    std::vector<Rational> sizes;
    for (auto& it : file.flat_items()) sizes.push_back(it.lengths[0]);
    out["bins"] = opt_1bp_exact(sizes, file.bin[0]);
  } else if (o.problem == "fits") {
    require_singletons(file, "oracle --problem fits", "plain items");
    out["fits"] = fits_in_bin(file.flat_items(), file.bin, policy, perms);
  } else if (o.problem == "dbp") {
    require_singletons(file, "oracle --problem dbp", "plain items");
    out["bins"] = opt_dbp_exact(file.flat_items(), file.bin, policy, perms);
  } else if (o.problem == "sp") {
    require_singletons(file, "oracle --problem sp", "plain items");
    input_check(file.unit_bin(), "oracle sp works on unit-base strips only");
    out["height"] = exact_pair(opt_sp_exact(file.flat_items(), policy, perms));
  } else if (o.problem == "mcks") {
    auto r = opt_mcks_exact(file.itemsets, file.bin);
    out["profit"] = exact_pair(r.profit);
    json choice = json::array();
    for (auto& [s, id] : r.choice) choice.push_back(json::array({s, id}));
    out["choice"] = std::move(choice);
  } else {
    throw InputError("--problem: expected 1bp, dbp, sp, fits, or mcks");
  }
  emit(out.dump(2) + "\n", o.out_path);
}

void run_gen(Options& o) {
  if (o.gen_dist == "grid")
    o.gen.dist = GenSpec::Dist::GRID;
  else if (o.gen_dist == "typed")
    o.gen.dist = GenSpec::Dist::TYPED;
  else if (o.gen_dist == "rot")
    o.gen.dist = GenSpec::Dist::ROT;
  else
    throw InputError("--dist: expected grid, typed, or rot");
  o.gen.rotation = rotation_policy_from_name(o.gen_rotation);
  input_check(o.gen.rotation != RotationPolicy::EXPLICIT,
              "gen cannot emit explicit orientation lists");
  o.gen.types = o.gen_types;
  o.gen.profits = o.gen_profits;
  if (o.seed) o.gen.seed = *o.seed;
  emit(instance_to_text(generate(o.gen)), o.out_path);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Harmonic-based geometric packing: bin, strip, and knapsack solvers"};
  app.require_subcommand(1);
  Options o;

  auto add_common = [&](CLI::App* sub, bool with_k) {
    sub->add_option("instance", o.in, "instance JSON file, or - for stdin");
    sub->add_option("--o", o.out_path, "write output here instead of stdout");
    if (with_k)
      sub->add_option("--k", o.k, "harmonic index (3..12)")
          ->envname("HBP_DEFAULT_K")
          ->check(CLI::Range(3, 12));
  };
  auto add_pack = [&](CLI::App* sub, bool with_k) {
    add_common(sub, with_k);
    sub->add_option("--rotations", o.rotations, "override the file's rotation policy")
        ->check(CLI::IsMember({"none", "all", "fix-last-axis", "explicit"}));
    sub->add_option("--out", o.out_fmt, "report format")
        ->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--seed", o.seed, "echoed into the report");
  };

  auto* bp = app.add_subcommand("pack-bp", "bin packing (singleton itemsets)");
  add_pack(bp, true);
  bp->callback([&] { run_bp(o, false); });

  auto* mcbp = app.add_subcommand("pack-mcbp", "multiple-choice bin packing");
  add_pack(mcbp, true);
  mcbp->callback([&] { run_bp(o, true); });

  auto* hg = app.add_subcommand("pack-hgap", "bin packing via shelf-plan guessing");
  add_pack(hg, true);
  hg->add_option("--epsilon", o.epsilon, "accuracy parameter in (0,1]");
  hg->add_option("--budget", o.budget, "cap on enumerated shelf plans (0 = unlimited)")
      ->check(CLI::NonNegativeNumber);
  hg->add_option("--threads", o.threads, "plan evaluation threads")
      ->check(CLI::PositiveNumber);
  hg->callback([&] { run_hgap(o); });

  auto* sp = app.add_subcommand("pack-sp", "strip packing (singleton itemsets)");
  add_pack(sp, true);
  sp->callback([&] { run_sp(o, false); });

  auto* mcsp = app.add_subcommand("pack-mcsp", "multiple-choice strip packing");
  add_pack(mcsp, true);
  mcsp->callback([&] { run_sp(o, true); });

  auto* ks = app.add_subcommand("pack-ks", "multiple-choice knapsack (k fixed to 3)");
  add_pack(ks, false);
  ks->add_option("--epsilon", o.epsilon, "accuracy parameter in (0,1)");
  ks->callback([&] { run_ks(o); });

  auto* val = app.add_subcommand("validate", "check a packing against an instance");
  add_common(val, false);
  val->add_option("--packing", o.packing_path, "packing or report JSON file")->required();
  val->add_option("--coverage", o.coverage, "item coverage rule")
      ->check(CLI::IsMember({"none", "exact", "one", "at-most-one"}));
  val->callback([&] { run_validate(o); });

  auto* think = app.add_subcommand("oracle", "desk-scale exact ground truth");
  add_common(think, false);
  think->add_option("--problem", o.problem, "1bp | dbp | sp | fits | mcks")->required();
  think->add_option("--rotations", o.rotations, "override the file's rotation policy")
      ->check(CLI::IsMember({"none", "all", "fix-last-axis", "explicit"}));
  think->callback([&] { run_oracle(o); });

  auto* tk = app.add_subcommand("tk", "print the harmonic constant T_k");
  tk->add_option("--k", o.k, "harmonic index (3..12)")
      ->envname("HBP_DEFAULT_K")
      ->check(CLI::Range(3, 12));
  tk->callback([&] { std::cout << compute_T(o.k).str() << "\n"; });

  auto* gen = app.add_subcommand("gen", "generate a random instance");
  gen->add_option("--o", o.out_path, "write the instance here instead of stdout");
  gen->add_option("--n", o.gen.n, "itemsets")->check(CLI::NonNegativeNumber);
  gen->add_option("--d", o.gen.d, "dimension")->check(CLI::PositiveNumber);
  gen->add_option("--choices", o.gen.choices, "members per itemset")->check(CLI::PositiveNumber);
  gen->add_option("--dist", o.gen_dist, "grid | typed | rot");
  gen->add_option("--grid", o.gen.grid, "grid denominator")->check(CLI::Range(2L, 1000000L));
  gen->add_option("--types", o.gen_types, "typed: target classes (1..k)")->delimiter(',');
  gen->add_option("--k", o.gen.k, "typed: class ceiling")
      ->envname("HBP_DEFAULT_K")
      ->check(CLI::Range(3, 12));
  gen->add_flag("--profits", o.gen_profits, "attach profits");
  gen->add_option("--rotation", o.gen_rotation, "rotation policy stored in the instance")
      ->check(CLI::IsMember({"none", "all", "fix-last-axis"}));
  gen->add_option("--seed", o.seed, "RNG seed");
  gen->callback([&] { run_gen(o); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const BudgetExhausted& e) {
    std::cerr << "budget exhausted: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return g_exit;
}
