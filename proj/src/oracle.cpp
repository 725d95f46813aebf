#include "hbp/oracle.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>

#include "hbp/orientation.hpp"

namespace hbp {
namespace {

int first_fit_decreasing(std::vector<Rational> sizes, const Rational& capacity) {
  std::sort(sizes.begin(), sizes.end(), std::greater<Rational>());
  std::vector<Rational> space;
  for (const auto& s : sizes) {
    bool placed = false;
    for (auto& free : space) {
      if (s <= free) {
        free -= s;
        placed = true;
        break;
      }
    }
    if (!placed) space.push_back(capacity - s);
  }
  return static_cast<int>(space.size());
}

struct BnB {
  const std::vector<Rational>& sizes;
  const Rational& capacity;
  Rational total;
  int best;

  void run(size_t idx, std::vector<Rational>& load) {
    if (static_cast<int>(load.size()) >= best) return;
    if (idx == sizes.size()) {
      best = static_cast<int>(load.size());
      return;
    }
    // Area bound: even a perfect split of the remaining volume over the
    // free space needs this many additional bins.
    Rational remaining(0);
    for (size_t i = idx; i < sizes.size(); ++i) remaining += sizes[i];
    Rational free(0);
    for (const auto& l : load) free += capacity - l;
    if (remaining > free) {
      Rational deficit = remaining - free;
      long extra = (deficit / capacity).ceil_long();
      if (static_cast<int>(load.size()) + extra >= best) return;
    }
    const Rational& s = sizes[idx];
    std::set<Rational> tried;  // identical loads are interchangeable
    for (size_t b = 0; b < load.size(); ++b) {
      if (load[b] + s > capacity) continue;
      if (!tried.insert(load[b]).second) continue;
      load[b] += s;
      run(idx + 1, load);
      load[b] -= s;
    }
    load.push_back(s);
    run(idx + 1, load);
    load.pop_back();
  }
};

}  // namespace

int opt_1bp_exact(const std::vector<Rational>& sizes, const Rational& capacity) {
  input_check(sizes.size() <= 15, "opt_1bp_exact: at most 15 sizes");
  input_check(capacity.is_positive(), "opt_1bp_exact: capacity must be positive");
  for (const auto& s : sizes)
    input_check(s.is_positive() && s <= capacity, "opt_1bp_exact: size outside (0, capacity]");
  if (sizes.empty()) return 0;

  std::vector<Rational> sorted = sizes;
  std::sort(sorted.begin(), sorted.end(), std::greater<Rational>());
  BnB bnb{sorted, capacity, Rational(0), first_fit_decreasing(sizes, capacity)};
  std::vector<Rational> load;
  bnb.run(0, load);
  return bnb.best;
}

namespace {

struct PlacedBox {
  std::vector<Rational> lo, hi;
};

bool boxes_overlap(const PlacedBox& a, const PlacedBox& b) {
  for (size_t j = 0; j < a.lo.size(); ++j) {
    if (!(max(a.lo[j], b.lo[j]) < min(a.hi[j], b.hi[j]))) return false;
  }
  return true;
}

// DFS over normalized positions for a fixed orientation assignment.
// lengths[i][j]: oriented length of item i along axis j, sorted by volume
// descending before entry.
bool place_dfs(const std::vector<std::vector<Rational>>& lengths,
               const std::vector<Rational>& bin, size_t idx, std::vector<PlacedBox>& placed) {
  if (idx == lengths.size()) return true;
  const int d = static_cast<int>(bin.size());

  // Candidate coordinates: subset sums of the other items' lengths per axis.
  std::vector<std::vector<Rational>> axis_pos(static_cast<size_t>(d));
  for (int j = 0; j < d; ++j) {
    std::set<Rational> sums;
    sums.insert(Rational(0));
    for (size_t i = 0; i < lengths.size(); ++i) {
      if (i == idx) continue;
      std::set<Rational> next = sums;
      for (const auto& s : sums) next.insert(s + lengths[i][static_cast<size_t>(j)]);
      sums = std::move(next);
    }
    for (const auto& s : sums) {
      if (s + lengths[idx][static_cast<size_t>(j)] <= bin[static_cast<size_t>(j)])
        axis_pos[static_cast<size_t>(j)].push_back(s);
    }
    if (axis_pos[static_cast<size_t>(j)].empty()) return false;
  }

  std::vector<size_t> cursor(static_cast<size_t>(d), 0);
  while (true) {
    PlacedBox box;
    box.lo.resize(static_cast<size_t>(d));
    box.hi.resize(static_cast<size_t>(d));
    for (int j = 0; j < d; ++j) {
      box.lo[static_cast<size_t>(j)] = axis_pos[static_cast<size_t>(j)][cursor[static_cast<size_t>(j)]];
      box.hi[static_cast<size_t>(j)] = box.lo[static_cast<size_t>(j)] + lengths[idx][static_cast<size_t>(j)];
    }
    bool clash = false;
    for (const auto& other : placed) {
      if (boxes_overlap(box, other)) { clash = true; break; }
    }
    if (!clash) {
      placed.push_back(box);
      if (place_dfs(lengths, bin, idx + 1, placed)) return true;
      placed.pop_back();
    }
    int j = d - 1;
    while (j >= 0) {
      if (++cursor[static_cast<size_t>(j)] < axis_pos[static_cast<size_t>(j)].size()) break;
      cursor[static_cast<size_t>(j)] = 0;
      --j;
    }
    if (j < 0) return false;
  }
}

}  // namespace

bool fits_in_bin(const std::vector<Item>& items, const std::vector<Rational>& bin,
                 RotationPolicy policy, const std::vector<Perm>* explicit_perms) {
  input_check(items.size() <= 6, "fits_in_bin: at most 6 items");
  if (items.empty()) return true;
  const int d = static_cast<int>(bin.size());

  Rational bin_vol(1);
  for (const auto& l : bin) bin_vol *= l;
  Rational item_vol(0);
  for (const auto& i : items) {
    input_check(i.dim() == d, "fits_in_bin: dimension mismatch");
    item_vol += volume(i);
  }
  if (item_vol > bin_vol) return false;

  // Volume-descending placement order settles the big boxes first.
  std::vector<size_t> order(items.size());
  for (size_t i = 0; i < items.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](size_t a, size_t b) { return volume(items[a]) > volume(items[b]); });

  // Feasible orientations per item (as oriented length vectors).
  std::vector<std::vector<std::vector<Rational>>> options(items.size());
  for (size_t i = 0; i < items.size(); ++i) {
    for (const auto& variant : oriented_variants(items[i], policy, explicit_perms)) {
      bool ok = true;
      for (int j = 0; j < d; ++j)
        if (variant.item.len(j) > bin[static_cast<size_t>(j)]) { ok = false; break; }
      if (ok) options[i].push_back(variant.item.lengths);
    }
    if (options[i].empty()) return false;
  }

  // Outer loop over orientation assignments, inner DFS over positions.
  std::vector<std::vector<Rational>> lengths(items.size());
  auto assign = [&](auto&& self, size_t k) -> bool {
    if (k == items.size()) {
      std::vector<std::vector<Rational>> ordered;
      for (size_t i : order) ordered.push_back(lengths[i]);
      std::vector<PlacedBox> placed;
      return place_dfs(ordered, bin, 0, placed);
    }
    for (const auto& opt : options[k]) {
      lengths[k] = opt;
      if (self(self, k + 1)) return true;
    }
    return false;
  };
  return assign(assign, 0);
}

int opt_dbp_exact(const std::vector<Item>& items, const std::vector<Rational>& bin,
                  RotationPolicy policy, const std::vector<Perm>* explicit_perms) {
  input_check(items.size() <= 5, "opt_dbp_exact: at most 5 items");
  input_check(bin.size() <= 3, "opt_dbp_exact: at most 3 dimensions");
  const int n = static_cast<int>(items.size());
  if (n == 0) return 0;

  const int full = (1 << n) - 1;
  std::vector<int> feas(static_cast<size_t>(full) + 1, -1);
  auto feasible = [&](int mask) {
    if (feas[static_cast<size_t>(mask)] < 0) {
      std::vector<Item> subset;
      for (int i = 0; i < n; ++i)
        if (mask & (1 << i)) subset.push_back(items[static_cast<size_t>(i)]);
      feas[static_cast<size_t>(mask)] = fits_in_bin(subset, bin, policy, explicit_perms) ? 1 : 0;
    }
    return feas[static_cast<size_t>(mask)] == 1;
  };

  std::vector<int> dp(static_cast<size_t>(full) + 1, n + 1);
  dp[0] = 0;
  for (int mask = 1; mask <= full; ++mask) {
    const int low = mask & -mask;
    for (int sub = mask; sub; sub = (sub - 1) & mask) {
      if (!(sub & low)) continue;
      if (!feasible(sub)) continue;
      dp[static_cast<size_t>(mask)] =
          std::min(dp[static_cast<size_t>(mask)], dp[static_cast<size_t>(mask ^ sub)] + 1);
    }
  }
  input_check(dp[static_cast<size_t>(full)] <= n, "opt_dbp_exact: some item fits in no bin");
  return dp[static_cast<size_t>(full)];
}

Rational opt_sp_exact(const std::vector<Item>& items, RotationPolicy policy,
                      const std::vector<Perm>* explicit_perms) {
  input_check(!items.empty(), "opt_sp_exact: empty instance");
  input_check(items.size() <= 5, "opt_sp_exact: at most 5 items");
  const int d = items.front().dim();
  input_check(d >= 2 && d <= 3, "opt_sp_exact: dimensions 2 or 3");

  // Candidate heights: sums where each item contributes one of its feasible
  // oriented heights or nothing. The optimum is among them.
  std::vector<std::vector<Rational>> height_options(items.size());
  for (size_t i = 0; i < items.size(); ++i) {
    for (const auto& variant : oriented_variants(items[i], policy, explicit_perms)) {
      bool base_ok = true;
      for (int j = 0; j + 1 < d; ++j)
        if (variant.item.len(j) > Rational(1)) { base_ok = false; break; }
      if (base_ok) height_options[i].push_back(variant.item.lengths.back());
    }
    input_check(!height_options[i].empty(), "opt_sp_exact: an item fits in no orientation");
  }
  std::set<Rational> sums;
  sums.insert(Rational(0));
  for (const auto& opts : height_options) {
    std::set<Rational> next = sums;
    for (const auto& s : sums)
      for (const auto& h : opts) next.insert(s + h);
    sums = std::move(next);
  }

  std::vector<Rational> bin(static_cast<size_t>(d), Rational(1));
  for (const auto& h : sums) {
    if (h.is_zero()) continue;
    bin.back() = h;
    if (fits_in_bin(items, bin, policy, explicit_perms)) return h;
  }
  throw InternalError("opt_sp_exact: no candidate height admitted a packing");
}

McksOptimum opt_mcks_exact(const std::vector<Itemset>& sets, const std::vector<Rational>& bin) {
  long combos = 1;
  for (const auto& s : sets) {
    input_check(!s.empty(), "opt_mcks_exact: empty itemset");
    combos *= static_cast<long>(s.size()) + 1;
    input_check(combos <= 100000, "opt_mcks_exact: instance too large");
  }
  input_check(sets.size() <= 6, "opt_mcks_exact: at most 6 itemsets");

  Rational bin_vol(1);
  for (const auto& l : bin) bin_vol *= l;

  McksOptimum best;
  best.profit = Rational(0);

  std::vector<const Item*> chosen;
  std::vector<std::pair<int, int>> choice;
  // Remaining upper bound for pruning: the best member profit per set.
  std::vector<Rational> tail_best(sets.size() + 1, Rational(0));
  for (size_t s = sets.size(); s-- > 0;) {
    Rational m(0);
    for (const auto& member : sets[s]) {
      input_check(member.profit.has_value(), "opt_mcks_exact: members need profits");
      m = max(m, *member.profit);
    }
    tail_best[s] = tail_best[s + 1] + m;
  }

  auto rec = [&](auto&& self, size_t s, const Rational& profit, const Rational& vol) -> void {
    if (profit + tail_best[s] <= best.profit) return;
    if (s == sets.size()) {
      if (profit <= best.profit) return;
      std::vector<Item> subset;
      for (const auto* i : chosen) subset.push_back(*i);
      if (vol <= bin_vol && fits_in_bin(subset, bin)) {
        best.profit = profit;
        best.choice = choice;
      }
      return;
    }
    for (const auto& member : sets[s]) {
      Rational v = vol + volume(member);
      if (v > bin_vol) continue;
      chosen.push_back(&member);
      choice.emplace_back(static_cast<int>(s), member.id);
      self(self, s + 1, profit + *member.profit, v);
      choice.pop_back();
      chosen.pop_back();
    }
    self(self, s + 1, profit, vol);  // skip this set
  };
  rec(rec, 0, Rational(0), Rational(0));
  return best;
}

WeightingCertificate weighting_violation_search(const std::function<Rational(const Rational&)>& g,
                                                long trials, uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> den_pick(2, 60);
  std::uniform_int_distribution<int> count_pick(1, 6);
  std::uniform_int_distribution<int> q_pick(1, 9);
  std::uniform_int_distribution<int> eps_den(50, 5000);
  std::uniform_int_distribution<int> mode_pick(0, 1);

  WeightingCertificate cert;
  for (long t = 0; t < trials; ++t) {
    std::vector<Rational> sizes;
    Rational sum(0);
    int want = count_pick(rng);
    for (int i = 0; i < want; ++i) {
      Rational x;
      if (mode_pick(rng) == 0) {
        int den = den_pick(rng);
        std::uniform_int_distribution<int> num_pick(1, den);
        x = Rational(num_pick(rng), den);
      } else {
        // Just above a breakpoint 1/(q+1), where weighting functions are
        // tightest.
        int q = q_pick(rng);
        x = Rational(1, q + 1) + Rational(1, eps_den(rng));
        if (x > Rational(1)) x = Rational(1);
      }
      if (sum + x > Rational(1)) continue;
      sum += x;
      sizes.push_back(x);
    }
    if (sizes.empty()) continue;
    Rational gsum(0);
    for (const auto& x : sizes) gsum += g(x);
    if (gsum > Rational(1)) {
      // Re-verify the certificate from scratch before returning it.
      Rational s2(0), g2(0);
      for (const auto& x : sizes) {
        s2 += x;
        g2 += g(x);
      }
      internal_check(s2 <= Rational(1) && g2 > Rational(1), "violation search: bad certificate");
      cert.found = true;
      cert.sizes = sizes;
      cert.size_sum = s2;
      cert.g_sum = g2;
      return cert;
    }
  }
  return cert;
}

}  // namespace hbp
