#include "hbp/knapsack.hpp"

#include <algorithm>
#include <map>

#include "hbp/shelves.hpp"
#include "hbp/strip.hpp"

namespace hbp {

NfResult hdh_nf(const std::vector<Item>& items, const HarmonicContext& ctx) {
  NfResult res;
  if (items.empty()) {
    res.packing.kind = PackingKind::BIN;
    res.vol_wf = Rational(0);
    return res;
  }
  const int d = items.front().dim();
  input_check(d >= 2, "hdh_nf: needs d >= 2");

  StripResult strip = hdh_sp(items, ctx);
  res.Q = strip.Q;
  res.vol_wf = strip.vol_wf;
  res.packing.kind = PackingKind::BIN;
  res.packing.bin.assign(static_cast<size_t>(d), Rational(1));

  // Recover each strip shelf with its item placements, grouped by base type
  // in shelf order. Shelves within a class come out tallest first.
  struct ShelfData {
    TypeVector btype;
    Rational height;
    Rational base;  // offset inside the strip
    std::vector<Placement> contents;
  };
  std::vector<ShelfData> shelves;
  {
    Rational off(0);
    std::map<int, const Item*> universe;
    for (const auto& i : items) universe[i.id] = &i;
    for (const auto& node : strip.shelves) {
      ShelfData sd;
      sd.height = node.height;
      sd.base = off;
      off += node.height;
      shelves.push_back(std::move(sd));
    }
    for (const auto& pl : strip.packing.placements) {
      const Rational& y = pl.position.back();
      // Shelf bases are strictly increasing; find the shelf holding y.
      size_t lo = 0;
      while (lo + 1 < shelves.size() && shelves[lo + 1].base <= y) ++lo;
      shelves[lo].contents.push_back(pl);
      shelves[lo].btype = base_type_vector(*universe.at(pl.item), ctx.k);
    }
  }

  int next_bin = 0;
  auto emit_shelf = [&](const ShelfData& sd, int bin) {
    for (Placement pl : sd.contents) {
      pl.bin = bin;
      pl.position.back() -= sd.base;  // shelf sits on the bin floor
      res.packing.placements.push_back(std::move(pl));
    }
  };

  // Tallest (first) shelf per class gets its own bin.
  std::map<TypeVector, bool> seen;
  std::vector<const ShelfData*> rest;
  for (const auto& sd : shelves) {
    if (!seen[sd.btype]) {
      seen[sd.btype] = true;
      emit_shelf(sd, next_bin++);
    } else {
      rest.push_back(&sd);
    }
  }

  // Next-Fit the remaining shelves by height into unit bins.
  std::vector<Rational> heights;
  for (const auto* sd : rest) heights.push_back(sd->height);
  for (const auto& bin_members : next_fit_1d(heights, Rational(1))) {
    Rational off(0);
    for (int idx : bin_members) {
      const ShelfData& sd = *rest[static_cast<size_t>(idx)];
      for (Placement pl : sd.contents) {
        pl.bin = next_bin;
        pl.position.back() = pl.position.back() - sd.base + off;
        res.packing.placements.push_back(std::move(pl));
      }
      off += sd.height;
    }
    ++next_bin;
  }

  res.bins = next_bin;
  res.bound = res.Q + (res.vol_wf * Rational(2)).ceil_long();
  internal_check(res.bins <= res.bound, "hdh_nf: bin count exceeded the guarantee");
  return res;
}

KsSelection mcks_1d_fptas(const std::vector<std::vector<KsEntry>>& sets, const Rational& eps) {
  input_check(eps.is_positive(), "fptas: eps must be positive");
  KsSelection out;
  out.profit = Rational(0);
  out.size = Rational(0);

  const Rational capacity(1);
  // Feasible entries only; a single oversized entry can never be chosen.
  std::vector<std::vector<KsEntry>> feasible(sets.size());
  Rational pmax(0);
  long n = static_cast<long>(sets.size());
  for (size_t s = 0; s < sets.size(); ++s) {
    for (const auto& e : sets[s]) {
      input_check(!e.profit.is_negative(), "fptas: negative profit");
      input_check(e.size.is_positive(), "fptas: sizes must be positive");
      if (e.size <= capacity) {
        feasible[s].push_back(e);
        pmax = max(pmax, e.profit);
      }
    }
    std::sort(feasible[s].begin(), feasible[s].end(),
              [](const KsEntry& a, const KsEntry& b) { return a.item_id < b.item_id; });
  }
  if (n == 0 || pmax.is_zero()) return out;  // picking nothing is optimal

  const Rational mu = eps * pmax / Rational(2 * n);
  auto level_of = [&](const Rational& p) { return (p / mu).floor_long(); };

  // dp[level] = smallest exact size reaching at least this rounded profit,
  // with the witness chain for reconstruction.
  struct Cell {
    Rational size;
    Rational profit;
    int set = -1;
    int pick = -1;  // index into feasible[set]
    long prev = -1;
  };
  const long max_level = n * level_of(pmax) + 1;
  std::vector<std::vector<Cell>> dp(static_cast<size_t>(n) + 1);
  dp[0].assign(static_cast<size_t>(max_level) + 1, Cell{});
  for (long l = 1; l <= max_level; ++l) dp[0][static_cast<size_t>(l)].set = -2;  // unreachable

  for (long s = 1; s <= n; ++s) {
    auto& cur = dp[static_cast<size_t>(s)];
    const auto& prev = dp[static_cast<size_t>(s - 1)];
    cur.assign(static_cast<size_t>(max_level) + 1, Cell{});
    for (long l = 0; l <= max_level; ++l) {
      Cell best = prev[static_cast<size_t>(l)];  // skip this set
      best.set = best.set == -2 ? -2 : -1;
      if (best.set != -2) {
        best.pick = -1;
        best.prev = l;
      }
      for (size_t e = 0; e < feasible[static_cast<size_t>(s - 1)].size(); ++e) {
        const KsEntry& entry = feasible[static_cast<size_t>(s - 1)][e];
        long le = level_of(entry.profit);
        long from = std::max(0L, l - le);
        const Cell& src = prev[static_cast<size_t>(from)];
        if (src.set == -2) continue;
        Rational size = src.size + entry.size;
        if (size > capacity) continue;
        if (best.set == -2 || size < best.size) {
          best.size = size;
          best.profit = src.profit + entry.profit;
          best.set = static_cast<int>(s - 1);
          best.pick = static_cast<int>(e);
          best.prev = from;
        }
      }
      cur[static_cast<size_t>(l)] = best;
    }
  }

  long best_level = 0;
  for (long l = max_level; l >= 0; --l) {
    if (dp[static_cast<size_t>(n)][static_cast<size_t>(l)].set != -2) {
      best_level = l;
      break;
    }
  }

  long level = best_level;
  for (long s = n; s >= 1; --s) {
    const Cell& c = dp[static_cast<size_t>(s)][static_cast<size_t>(level)];
    internal_check(c.set != -2, "fptas: walked into an unreachable cell");
    if (c.pick >= 0) {
      const KsEntry& e = feasible[static_cast<size_t>(s - 1)][static_cast<size_t>(c.pick)];
      out.chosen.push_back(e);
      out.profit += e.profit;
      out.size += e.size;
    }
    level = c.prev;
  }
  std::reverse(out.chosen.begin(), out.chosen.end());
  internal_check(out.size <= capacity, "fptas: selection exceeds the capacity");
  return out;
}

KsResult hdh_ks(const std::vector<Itemset>& sets, const Rational& eps) {
  const HarmonicContext ctx = HarmonicContext::make(3);
  KsResult res;
  res.profit = Rational(0);
  res.packing.kind = PackingKind::BIN;

  int d = 0;
  std::map<int, Item> universe;
  std::vector<std::vector<KsEntry>> ks_sets(sets.size());
  for (size_t s = 0; s < sets.size(); ++s) {
    input_check(!sets[s].empty(), "hdh_ks: empty itemset");
    for (const auto& member : sets[s]) {
      if (d == 0) d = member.dim();
      input_check(member.dim() == d, "hdh_ks: mixed item dimensions");
      input_check(member.profit.has_value(), "hdh_ks: every member needs a profit");
      universe.emplace(member.id, member);
      ks_sets[s].push_back({base_H_volume(member, ctx), *member.profit,
                            static_cast<int>(s), member.id});
    }
  }
  input_check(d == 0 || d >= 2, "hdh_ks: needs d >= 2");
  res.packing.bin.assign(static_cast<size_t>(std::max(d, 2)), Rational(1));
  if (sets.empty()) return res;

  KsSelection sel = mcks_1d_fptas(ks_sets, eps);
  std::vector<Item> picked;
  for (const auto& e : sel.chosen) {
    res.selection.emplace_back(e.set_index, e.item_id);
    picked.push_back(universe.at(e.item_id));
  }
  if (picked.empty()) return res;

  NfResult nf = hdh_nf(picked, ctx);
  res.internal_bins = nf.bins;
  const long limit = ctx.T.pow(d - 1).ceil_long();  // T_3 = 3
  internal_check(nf.bins <= limit + (sel.size * Rational(2) * ctx.T.pow(d - 1)).ceil_long(),
                 "hdh_ks: internal bin count exceeded the shelf guarantee");
  internal_check(nf.bins <= ctx.T.pow(d).ceil_long(), "hdh_ks: internal bin count exceeded 3^d");

  // Keep the most profitable bin (ties toward the smaller index).
  std::map<int, Rational> bin_profit;
  for (const auto& pl : nf.packing.placements) {
    bin_profit[pl.bin] += *universe.at(pl.item).profit;
  }
  int best_bin = -1;
  Rational best_profit(0);
  for (const auto& [bin, profit] : bin_profit) {
    if (best_bin < 0 || profit > best_profit) {
      best_bin = bin;
      best_profit = profit;
    }
  }
  for (const auto& pl : nf.packing.placements) {
    if (pl.bin != best_bin) continue;
    Placement kept = pl;
    kept.bin = 0;
    res.packed.emplace_back(-1, kept.item);
    res.packing.placements.push_back(std::move(kept));
  }
  for (auto& [s, id] : res.packed) {
    for (const auto& e : sel.chosen)
      if (e.item_id == id) s = e.set_index;
  }
  res.profit = best_profit;
  return res;
}

}  // namespace hbp
