#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "hbp/model.hpp"
#include "hbp/rational.hpp"

namespace hbp {

/// Desk-scale ground truth. Everything here is exponential-time and guarded
/// by hard size caps (InputError beyond them); solvers never call into this
/// module.

/// Exact 1D bin packing by branch and bound with first-fit-decreasing
/// seeding and identical-bin symmetry pruning. At most 15 sizes.
int opt_1bp_exact(const std::vector<Rational>& sizes, const Rational& capacity);

/// Can these items (all of them) be packed into one bin? Exhaustive search
/// over normalized positions: every coordinate of a normalized packing is a
/// subset sum of the other items' lengths in that axis. At most 6 items.
bool fits_in_bin(const std::vector<Item>& items, const std::vector<Rational>& bin,
                 RotationPolicy policy = RotationPolicy::NONE,
                 const std::vector<Perm>* explicit_perms = nullptr);

/// Exact d-dimensional bin packing over subset-partition dynamic
/// programming. At most 5 items, at most 3 dimensions.
int opt_dbp_exact(const std::vector<Item>& items, const std::vector<Rational>& bin,
                  RotationPolicy policy = RotationPolicy::NONE,
                  const std::vector<Perm>* explicit_perms = nullptr);

/// Exact minimal strip height (unit base). The optimum is a sum of item
/// heights over some subset and orientation choice; candidates are tested
/// in increasing order. At most 5 items, at most 3 dimensions.
Rational opt_sp_exact(const std::vector<Item>& items, RotationPolicy policy = RotationPolicy::NONE,
                      const std::vector<Perm>* explicit_perms = nullptr);

/// Exact multiple-choice knapsack over one bin: picks at most one member
/// per itemset maximizing profit subject to single-bin feasibility.
/// At most 6 itemsets; the product of (|itemset|+1) is capped at 10^5.
struct McksOptimum {
  Rational profit;
  std::vector<std::pair<int, int>> choice;  // (itemset index, member id)
};
McksOptimum opt_mcks_exact(const std::vector<Itemset>& sets, const std::vector<Rational>& bin);

/// Randomized search for a certificate that g is NOT a weighting function:
/// a multiset with sum of sizes at most 1 whose g-values sum beyond 1.
/// Mixes uniform grid rationals with sizes just above the breakpoints
/// 1/(q+1). Deterministic for a fixed seed; certificates are re-verified
/// exactly before being returned.
struct WeightingCertificate {
  bool found = false;
  std::vector<Rational> sizes;
  Rational size_sum;
  Rational g_sum;
};
WeightingCertificate weighting_violation_search(const std::function<Rational(const Rational&)>& g,
                                                long trials, uint64_t seed);

}  // namespace hbp
