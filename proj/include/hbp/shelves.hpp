#pragma once

#include <vector>

#include "hbp/harmonic.hpp"
#include "hbp/model.hpp"

namespace hbp {

/// Packs items of one common type vector t into a single unit bin of
/// dimension |t| by recursive shelving. Preconditions (asserted): every item
/// has type vector exactly t, and the f-volume of all items but the last is
/// strictly below 1. Placements land in [0,1]^d with bin index 0; input
/// order is preserved except that levels whose type entry equals k are
/// sorted by non-increasing extent, which the height bound relies on.
struct UnitPackResult {
  std::vector<Placement> placements;
  std::vector<ShelfNode> shelves;  // top-level shelves along the last axis
  Rational height;                 // total stacked extent, <= 1
};

UnitPackResult hdh_unit_pack(const std::vector<Item>& items, const TypeVector& t,
                             const HarmonicContext& ctx);

/// One 2D shelf produced by canonical shelving: tight height (the first
/// piece's), pieces in placement order, widths summing to at most 1.
struct CanonShelf {
  Rational height;
  std::vector<Rect> pieces;
};

struct SliceRecord {
  int item;
  Rational first_width, second_width;  // the two pieces, in shelf order
};

/// Canonical shelving: sort by height desc, width desc, id asc; fill
/// width-1 shelves greedily, slicing vertically at shelf boundaries. Every
/// item lands in one piece or two pieces in consecutive shelves.
struct CanonicalShelving {
  std::vector<CanonShelf> shelves;
  std::vector<SliceRecord> slices;
};

CanonicalShelving canonical_shelving(std::vector<Rect> rects);

/// Dominance order on shelvings: true when the canonical shelf list is no
/// longer than `other_heights` and, after sorting both by non-increasing
/// height, is elementwise no taller.
bool shelving_dominates(const CanonicalShelving& canonical, std::vector<Rational> other_heights);

/// Plain Next-Fit on one dimension; bins of the given capacity, each size
/// must fit a bin by itself. Returns item indices grouped per bin.
std::vector<std::vector<int>> next_fit_1d(const std::vector<Rational>& sizes,
                                          const Rational& capacity);

}  // namespace hbp
