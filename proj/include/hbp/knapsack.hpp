#pragma once

#include <vector>

#include "hbp/harmonic.hpp"
#include "hbp/model.hpp"

namespace hbp {

/// Shelf-and-next-fit bin packing: build the strip shelves, give the
/// tallest shelf of each base-type class its own bin, Next-Fit the
/// remaining shelves by height. bins <= Q + ceil(2 * vol_wf). Needs d >= 2.
struct NfResult {
  Packing packing;
  long bins = 0;
  long Q = 0;
  Rational vol_wf;
  long bound = 0;  // Q + ceil(2 * vol_wf)
};

NfResult hdh_nf(const std::vector<Item>& items, const HarmonicContext& ctx);

/// One entry of a 1D multiple-choice knapsack instance.
struct KsEntry {
  Rational size;
  Rational profit;  // nonnegative
  int set_index = 0;
  int item_id = 0;
};

/// FPTAS for 1D multiple-choice knapsack with unit capacity: picks at most
/// one entry per set, total size at most 1, profit at least (1-eps) times
/// optimal. Profit scaling uses mu = eps * Pmax / (2n); the DP per rounded
/// profit level keeps the smallest exact size.
struct KsSelection {
  Rational profit;  // exact, unscaled
  Rational size;
  std::vector<KsEntry> chosen;
};

KsSelection mcks_1d_fptas(const std::vector<std::vector<KsEntry>>& sets, const Rational& eps);

/// Harmonic multiple-choice geometric knapsack, k fixed to 3: solve the 1D
/// relaxation with sizes vol_wH3, pack the winners with hdh_nf, return the
/// most profitable bin. Profit >= (1-eps) * 3^{-d} * opt.
struct KsResult {
  Packing packing;  // single unit bin (bin 0)
  Rational profit;
  std::vector<std::pair<int, int>> selection;  // FPTAS pick, pre-binning
  std::vector<std::pair<int, int>> packed;     // what actually landed in the bin
  long internal_bins = 0;                      // hdh_nf bin count, <= 3^d
};

KsResult hdh_ks(const std::vector<Itemset>& sets, const Rational& eps);

}  // namespace hbp
