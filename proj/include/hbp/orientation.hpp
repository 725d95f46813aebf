#pragma once

#include <map>
#include <optional>
#include <vector>

#include "hbp/harmonic.hpp"
#include "hbp/model.hpp"

namespace hbp {

struct OrientedItem {
  Perm perm;  // original axis at each bin axis
  Item item;  // lengths permuted accordingly, id and profit preserved
};

Item apply_perm(const Item& i, const Perm& p);

/// Axis permutations allowed by the policy, in lexicographic order.
/// FIX_LAST_AXIS keeps the last axis in place; EXPLICIT uses the given list.
std::vector<Perm> allowed_perms(int d, RotationPolicy policy,
                                const std::vector<Perm>* explicit_perms = nullptr);

/// Distinct oriented copies of an item (deduplicated by length vector,
/// keeping the lexicographically smallest permutation for each).
std::vector<OrientedItem> oriented_variants(const Item& i, RotationPolicy policy,
                                            const std::vector<Perm>* explicit_perms = nullptr);

/// Same, projected to a plain itemset of alternatives.
Itemset orientations(const Item& i, RotationPolicy policy,
                     const std::vector<Perm>* explicit_perms = nullptr);

enum class OrientObjective {
  FULL_VOL,  // minimize prod_j f(l_{perm(j)} / L_j) over all d axes
  BASE_W     // last axis stays put; minimize the base product over d-1 axes
};

/// Best orientation against a (possibly non-unit) bin; lengths are scaled by
/// 1/L_j before harmonic evaluation and cells with a scaled length above 1
/// are forbidden. Ties break toward the lexicographically smallest
/// permutation. Throws InputError when no orientation fits.
struct BestOrientation {
  OrientedItem oriented;
  Rational objective;
};
BestOrientation best_orientation(const Item& i, const std::vector<Rational>& bin,
                                 const HarmonicContext& ctx, OrientObjective objective);

/// Reduction of a rotational instance to a multiple-choice one: every item
/// becomes an itemset of its feasible oriented copies under the policy,
/// filtered against the bin, with fresh member ids starting at first_id.
/// Throws InputError when some item fits in no allowed orientation.
struct RotationExpansion {
  std::vector<Itemset> sets;
  std::map<int, std::pair<int, Perm>> member_source;  // fresh id -> (item id, perm)
};
RotationExpansion expand_rotations(const std::vector<Item>& items, RotationPolicy policy,
                                   const std::vector<Rational>& bin, int first_id,
                                   const std::vector<Perm>* explicit_perms = nullptr);

/// Unit-bin variant generation for shelf-based solvers: the base product is
/// invariant under base-axis order, so only orientations with distinct last
/// lengths matter; at most d variants per item survive.
RotationExpansion expand_rotations_distinct_heights(const std::vector<Item>& items,
                                                    RotationPolicy policy, int first_id,
                                                    const std::vector<Perm>* explicit_perms = nullptr);

}  // namespace hbp
