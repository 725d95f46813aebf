#pragma once

#include <vector>

#include "hbp/harmonic.hpp"
#include "hbp/model.hpp"

namespace hbp {

/// Shelf-based strip packing into a strip with unit base and unbounded last
/// axis. Guarantee carried with the result: height < Q + vol_wf, with Q the
/// number of distinct base type vectors and vol_wf the total weighted base
/// f-volume of the packed items.
struct StripResult {
  Packing packing;  // kind STRIP, single strip at bin 0
  std::vector<std::pair<int, int>> assortment;
  Rational height;
  long Q = 0;
  Rational vol_wf;
  Rational bound;  // Q + vol_wf
  std::vector<ShelfNode> shelves;  // strip shelves bottom to top
};

/// Partition by base type, sort each class by non-increasing height (ties
/// toward the smaller id), cut minimal prefixes of base f-volume at least 1,
/// shelf-pack each prefix's bases, stack the shelves. Needs d >= 2.
StripResult hdh_sp(const std::vector<Item>& items, const HarmonicContext& ctx);

/// Multiple-choice variant: per itemset the member minimizing the weighted
/// base f-volume (ties toward the smaller id).
StripResult hdh_mcsp(const std::vector<Itemset>& sets, const HarmonicContext& ctx);

/// max(vol(I), vol_wf(I)/T^{d-1}, max height): all lower bounds on the
/// optimal strip height.
Rational lower_bound_sp(const std::vector<Item>& items, const HarmonicContext& ctx);

}  // namespace hbp
