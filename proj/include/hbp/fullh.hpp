#pragma once

#include <vector>

#include "hbp/harmonic.hpp"
#include "hbp/model.hpp"

namespace hbp {

/// Full-harmonic bin packing result. The packing is always emitted together
/// with the bound ingredients so callers can re-derive the guarantee:
/// bins < Q + vol_f, where Q is the number of distinct type vectors among
/// the packed items and vol_f their total f-volume.
struct FullhResult {
  Packing packing;
  std::vector<std::pair<int, int>> assortment;  // (itemset index, member id); empty for plain
  long bins = 0;
  long Q = 0;
  Rational vol_f;
  Rational bound;  // Q + vol_f
};

/// Packs every item into unit bins: partition by full type vector, cut each
/// class into minimal prefixes of f-volume at least 1, shelf-pack each
/// prefix into its own bin. Works for any d >= 1.
FullhResult fullh_bp(const std::vector<Item>& items, const HarmonicContext& ctx);

/// Multiple-choice variant: per itemset picks the member minimizing
/// f-volume (ties toward the smaller id), then packs the assortment.
FullhResult fullh_mcbp(const std::vector<Itemset>& sets, const HarmonicContext& ctx);

/// max(vol(I), vol_f(I) / T^d): both are valid lower bounds on the optimal
/// bin count.
Rational lower_bound_bp(const std::vector<Item>& items, const HarmonicContext& ctx);

}  // namespace hbp
