#pragma once

#include <functional>
#include <string>
#include <vector>

#include "hbp/harmonic.hpp"
#include "hbp/model.hpp"

namespace hbp {

/// A scalar map g applied along one axis. `claimed_weighting` turns on the
/// chain bookkeeping assertion (every chain weight stays at most 1), which
/// is exactly what makes the transformed packing valid.
struct WeightingFn {
  std::string name;
  std::function<Rational(const Rational&)> g;
  bool claimed_weighting = false;
};

WeightingFn identity_fn();
WeightingFn harmonic_H_fn(const HarmonicContext& ctx);  // f/T, a weighting function
WeightingFn harmonic_f_fn(const HarmonicContext& ctx);  // unscaled f, deliberately not one

/// Chain diagnostics for one item along the transformed axis.
struct ChainInfo {
  int item = -1;
  int level = 0;
  int pred = -1;  // predecessor item id carrying the largest chain weight
  Rational u;     // chain weight including this item
};

/// Transforms axis q of a valid packing: every item keeps its position
/// except along q, where lengths become g(l_q) and positions become the
/// chain weight below the item. Placements must be identity-oriented (use
/// bake_orientations first). Returns the transformed items and packing.
struct TransformedPacking {
  std::vector<Item> items;
  Packing packing;
  std::vector<ChainInfo> chains;  // per placement, last transformed axis
};

TransformedPacking weighting_transform_dim(const std::vector<Item>& items, const Packing& p,
                                           int q, const WeightingFn& g);

/// Applies the axis transform for q = 0, 1, ..., d-1 in order.
TransformedPacking weighting_transform_all(const std::vector<Item>& items, const Packing& p,
                                           const WeightingFn& g);

/// Rewrites placements so orientations are identity and lengths are the
/// effective (permuted) ones; a convenience for transform inputs.
std::pair<std::vector<Item>, Packing> bake_orientations(const std::vector<Item>& items,
                                                        const Packing& p);

}  // namespace hbp
