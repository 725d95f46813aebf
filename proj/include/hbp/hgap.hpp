#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "hbp/harmonic.hpp"
#include "hbp/model.hpp"

namespace hbp {

/// The guess-and-pack pipeline: project the instance to 2D rectangles,
/// enumerate shelf plans, pick an assortment per plan by dynamic
/// programming, and inflate the best fractional packing back to d
/// dimensions. delta = eps/(2+eps) throughout.

/// 2D stand-ins for the input itemsets, member by member, plus the original
/// items so the inflated packing can place real boxes again.
struct RoundedInstance {
  std::vector<Itemset> original;
  std::vector<std::vector<Rect>> sets;  // parallel to original

  int n() const { return static_cast<int>(sets.size()); }
  std::vector<Rect> flatten() const;
};

RoundedInstance round_instance(const std::vector<Itemset>& itemsets, const HarmonicContext& ctx);

/// count[r] shelves of height heights[r] in one bin. The all-zero
/// configuration is a valid (empty) bin: plans must be able to reserve pure
/// free space for items below the height threshold.
using ShelfConfig = std::vector<long>;

/// A packing of empty shelves into at most n bins. heights are strictly
/// decreasing, all above delta, and each is the height of some rounded item.
struct ShelfPlan {
  std::vector<Rational> heights;
  std::vector<ShelfConfig> bins;

  int t() const { return static_cast<int>(heights.size()); }
  long shelf_count(int cls) const;  // shelves of height class cls over all bins
};

struct GuessResult {
  std::vector<ShelfPlan> plans;
  bool truncated = false;  // budget cut the enumeration short
};

/// Enumerates every shelf plan for the instance: height subsets of size at
/// most ceil(1/delta^2) (by size, then lexicographic on the descending
/// height list), then every multiset of bin configurations of total size at
/// most n. budget > 0 caps the number of plans emitted.
GuessResult guess_shelves(const RoundedInstance& inst, const Rational& delta, long budget);

/// One vertical slice of a height-class shelf. width is the rounded width
/// (a multiple of 1/n) for delta-large items.
struct FracSlice {
  int set = 0;
  int item = 0;  // member id
  Rational width;
};

struct FracShelf {
  Rational height;  // one of the plan heights
  std::vector<FracSlice> slices;
};

/// A delta-small member's area contribution to one bin; items may spread
/// over several bins. Small items live outside the shelves.
struct FracSmallPiece {
  int set = 0;
  int item = 0;
  Rational area;
};

struct FracBin {
  std::vector<FracShelf> shelves;
  std::vector<FracSmallPiece> small;
};

/// A shelf-based delta-fractional packing of one assortment of the rounded
/// instance. Plain data: tests construct these directly.
struct FractionalAssignment {
  Rational delta;
  std::vector<Rational> heights;  // strictly decreasing, all > delta
  std::vector<FracBin> bins;
  std::vector<std::pair<int, int>> chosen;  // (itemset index, member id)
};

/// Structural checks on an assignment against its instance: one member per
/// set, slice widths per shelf within 1, shelf heights within bins, small
/// areas within free space, every chosen item fully accounted for. Returns
/// the first problem found.
std::optional<std::string> fractional_assignment_error(const FractionalAssignment& fa,
                                                       const RoundedInstance& inst);

/// Width-rounds the delta-large members to multiples of 1/n, adds one spare
/// shelf of height h_1 in a new bin, and runs the assortment DP: state is
/// (itemsets considered, remaining width units per height class), value is
/// the least total area of chosen delta-small items. Null when no
/// assortment fits the plan.
std::optional<FractionalAssignment> choose_and_pack(const RoundedInstance& inst,
                                                    const ShelfPlan& plan, const Rational& delta);

struct InflateStats {
  long m = 0;           // bins in the fractional assignment
  long t = 0;           // distinct shelf heights
  long Q = 0;           // distinct base types among the chosen items
  long phase1_new = 0;  // bins added when splitting shelves by base type
  long phase2_new = 0;  // bins added when re-shelving small items
  long bins_out = 0;
  Rational bound;  // m/(1-delta) + t(Q-1) + 1 + delta*Q/(1-delta), strict
};

struct InflateResult {
  Packing packing;
  InflateStats stats;
};

/// Rebuilds a whole-item d-dimensional packing from a fractional
/// assignment: (1) split shelves so each holds one base type, (2) re-shelve
/// the small items per base type and Next-Fit them into the free strips,
/// (3) per base type, re-shelve canonically so every shelf's whole items
/// plus at most one sliced tail fit a unit base, then pack each shelf with
/// the recursive unit packer. The output bin count is asserted against the
/// stats bound.
InflateResult inflate(const FractionalAssignment& fa, const RoundedInstance& inst,
                      const HarmonicContext& ctx);

struct HgapResult {
  Packing packing;
  std::vector<std::pair<int, int>> assortment;  // (itemset index, member id)
  long bins = 0;
  Rational delta;
  bool truncated = false;  // enumeration was budget-capped
  long plan_index = -1;    // enumeration index of the winning plan
  ShelfPlan plan;
  FractionalAssignment fractional;
  InflateStats stats;
};

/// Full pipeline. Evaluates every plan (in chunks across `threads`), keeps
/// the non-null assignment with the fewest bins (ties toward the earlier
/// plan), inflates it. Throws BudgetExhausted when a truncated enumeration
/// produced no feasible plan; with an uncapped budget a feasible plan
/// always exists.
HgapResult hgap(const std::vector<Itemset>& itemsets, const Rational& eps,
                const HarmonicContext& ctx, long budget = 0, int threads = 1);

}  // namespace hbp
