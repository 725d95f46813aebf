#include "hbp/hgap.hpp"

#include <algorithm>
#include <exception>
#include <functional>
#include <map>
#include <set>
#include <thread>
#include <tuple>

#include "hbp/error.hpp"
#include "hbp/shelves.hpp"

namespace hbp {

std::vector<Rect> RoundedInstance::flatten() const {
  std::vector<Rect> out;
  for (const auto& set : sets) out.insert(out.end(), set.begin(), set.end());
  return out;
}

long ShelfPlan::shelf_count(int cls) const {
  long total = 0;
  for (const auto& bin : bins) total += bin[static_cast<size_t>(cls)];
  return total;
}

RoundedInstance round_instance(const std::vector<Itemset>& itemsets, const HarmonicContext& ctx) {
  RoundedInstance out;
  out.original = itemsets;
  std::set<int> ids;
  int d = -1;
  for (const auto& set : itemsets) {
    input_check(!set.empty(), "round_instance: empty itemset");
    std::vector<Rect> rset;
    for (const auto& member : set) {
      if (d < 0) d = member.dim();
      input_check(member.dim() == d, "round_instance: mixed dimensions");
      input_check(ids.insert(member.id).second, "round_instance: duplicate item id");
      rset.push_back(round_item(member, ctx));
    }
    out.sets.push_back(std::move(rset));
  }
  return out;
}

namespace {

long ceil_inv_delta_sq(const Rational& delta) {
  return (Rational(1) / (delta * delta)).ceil_long();
}

}  // namespace

GuessResult guess_shelves(const RoundedInstance& inst, const Rational& delta, long budget) {
  input_check(delta.is_positive() && delta < Rational(1), "guess_shelves: delta must be in (0,1)");
  const long n = inst.n();

  std::set<Rational, std::greater<Rational>> large;
  for (const auto& set : inst.sets)
    for (const auto& r : set)
      if (r.h > delta) large.insert(r.h);
  const std::vector<Rational> heights(large.begin(), large.end());
  const long tmax = std::min<long>(static_cast<long>(heights.size()), ceil_inv_delta_sq(delta));

  GuessResult out;
  bool done = false;

  auto emit = [&](const std::vector<Rational>& hsub, std::vector<ShelfConfig> bins) {
    if (done) return;
    if (budget > 0 && static_cast<long>(out.plans.size()) >= budget) {
      out.truncated = true;
      done = true;
      return;
    }
    for (const auto& cfg : bins) {
      Rational used(0);
      for (size_t r = 0; r < hsub.size(); ++r) used += Rational(cfg[r]) * hsub[r];
      internal_check(used <= Rational(1), "guess_shelves: configuration taller than the bin");
    }
    out.plans.push_back(ShelfPlan{hsub, std::move(bins)});
  };

  auto enumerate_for_subset = [&](const std::vector<Rational>& hsub) {
    // Every shelf-count vector whose total height fits one bin; the zero
    // configuration comes first.
    std::vector<ShelfConfig> configs;
    ShelfConfig cur(hsub.size(), 0);
    auto gen = [&](auto&& self, size_t pos, const Rational& used) -> void {
      if (pos == hsub.size()) {
        configs.push_back(cur);
        return;
      }
      for (long c = 0;; ++c) {
        Rational u = used + Rational(c) * hsub[pos];
        if (u > Rational(1)) break;
        cur[pos] = c;
        self(self, pos + 1, u);
      }
      cur[pos] = 0;
    };
    gen(gen, 0, Rational(0));

    // Multisets of configurations with at most n bins, lexicographic over
    // per-configuration multiplicities.
    std::vector<long> mult(configs.size(), 0);
    auto pick = [&](auto&& self, size_t pos, long left) -> void {
      if (done) return;
      if (pos == configs.size()) {
        std::vector<ShelfConfig> bins;
        for (size_t i = 0; i < configs.size(); ++i)
          for (long c = 0; c < mult[i]; ++c) bins.push_back(configs[i]);
        emit(hsub, std::move(bins));
        return;
      }
      for (long m = 0; m <= left && !done; ++m) {
        mult[pos] = m;
        self(self, pos + 1, left - m);
      }
      mult[pos] = 0;
    };
    pick(pick, 0, n);
  };

  // Height subsets by size, then lexicographic on the descending height list.
  for (long size = 0; size <= tmax && !done; ++size) {
    std::vector<size_t> idx(static_cast<size_t>(size));
    auto comb = [&](auto&& self, size_t pos, size_t from) -> void {
      if (done) return;
      if (pos == idx.size()) {
        std::vector<Rational> hsub;
        for (size_t i : idx) hsub.push_back(heights[i]);
        enumerate_for_subset(hsub);
        return;
      }
      for (size_t i = from; i < heights.size() && !done; ++i) {
        idx[pos] = i;
        self(self, pos + 1, i + 1);
      }
    };
    comb(comb, 0, 0);
  }
  return out;
}

std::optional<std::string> fractional_assignment_error(const FractionalAssignment& fa,
                                                       const RoundedInstance& inst) {
  const int n = inst.n();
  for (size_t r = 1; r < fa.heights.size(); ++r)
    if (!(fa.heights[r] < fa.heights[r - 1])) return "heights not strictly decreasing";
  for (const auto& h : fa.heights)
    if (!(h > fa.delta)) return "a declared height is not above delta";

  if (static_cast<int>(fa.chosen.size()) != n) return "assortment size differs from itemset count";
  std::map<int, const Rect*> picked;  // item id -> rect
  for (int s = 0; s < n; ++s) {
    const auto& [set, id] = fa.chosen[static_cast<size_t>(s)];
    if (set != s) return "assortment sets not in order";
    const Rect* found = nullptr;
    for (const auto& r : inst.sets[static_cast<size_t>(s)])
      if (r.item == id) found = &r;
    if (!found) return "assortment names an unknown member";
    picked[id] = found;
  }

  std::map<int, Rational> slice_width, small_area;
  for (const auto& bin : fa.bins) {
    Rational shelf_h(0);
    for (const auto& shelf : bin.shelves) {
      bool known = false;
      for (const auto& h : fa.heights) known = known || h == shelf.height;
      if (!known) return "shelf height not among the declared heights";
      shelf_h += shelf.height;
      Rational width(0);
      for (const auto& sl : shelf.slices) {
        auto it = picked.find(sl.item);
        if (it == picked.end()) return "slice of an item outside the assortment";
        if (!(it->second->h > fa.delta)) return "slice of an item that is not delta-large";
        if (it->second->h > shelf.height) return "slice taller than its shelf";
        if (!sl.width.is_positive()) return "slice of nonpositive width";
        width += sl.width;
        slice_width[sl.item] += sl.width;
      }
      if (width > Rational(1)) return "shelf overfull";
    }
    if (shelf_h > Rational(1)) return "shelves overflow the bin";
    Rational area(0);
    for (const auto& piece : bin.small) {
      auto it = picked.find(piece.item);
      if (it == picked.end()) return "small piece of an item outside the assortment";
      if (it->second->h > fa.delta) return "small piece of a delta-large item";
      if (!piece.area.is_positive()) return "small piece of nonpositive area";
      area += piece.area;
      small_area[piece.item] += piece.area;
    }
    if (area > Rational(1) - shelf_h) return "small pieces exceed the bin's free area";
  }

  for (const auto& [id, rect] : picked) {
    if (rect->h > fa.delta) {
      Rational w = slice_width.count(id) ? slice_width[id] : Rational(0);
      if (w < rect->w) return "delta-large item not fully covered by slices";
      if (w > Rational(1)) return "delta-large item wider than a shelf after rounding";
    } else {
      Rational a = small_area.count(id) ? small_area[id] : Rational(0);
      if (a != rect->area()) return "delta-small item area not fully assigned";
    }
  }
  return std::nullopt;
}

std::optional<FractionalAssignment> choose_and_pack(const RoundedInstance& inst,
                                                    const ShelfPlan& plan, const Rational& delta) {
  input_check(delta.is_positive() && delta < Rational(1), "choose_and_pack: delta must be in (0,1)");
  const int n = inst.n();
  const int t = plan.t();
  for (int r = 1; r < t; ++r)
    input_check(plan.heights[static_cast<size_t>(r)] < plan.heights[static_cast<size_t>(r - 1)],
                "choose_and_pack: plan heights must strictly decrease");
  for (const auto& h : plan.heights) {
    input_check(h > delta, "choose_and_pack: plan height not above delta");
    bool from_item = false;
    for (const auto& set : inst.sets)
      for (const auto& r : set) from_item = from_item || (r.h == h && r.h > delta);
    input_check(from_item, "choose_and_pack: plan height is no delta-large item's height");
  }
  input_check(ceil_inv_delta_sq(delta) >= t, "choose_and_pack: too many distinct heights");

  // The extra bin with one shelf of the tallest class absorbs the width
  // added by rounding.
  std::vector<ShelfConfig> pbar = plan.bins;
  if (t >= 1) {
    ShelfConfig extra(static_cast<size_t>(t), 0);
    extra[0] = 1;
    pbar.push_back(extra);
  }

  FractionalAssignment fa;
  fa.delta = delta;
  fa.heights = plan.heights;
  for (const auto& cfg : pbar) {
    FracBin bin;
    for (int cls = 0; cls < t; ++cls)
      for (long c = 0; c < cfg[static_cast<size_t>(cls)]; ++c)
        bin.shelves.push_back(FracShelf{plan.heights[static_cast<size_t>(cls)], {}});
    fa.bins.push_back(std::move(bin));
  }
  if (n == 0) return fa;

  Rational free_area(0);
  std::vector<long> u_init(static_cast<size_t>(t), 0);
  for (const auto& cfg : pbar) {
    Rational shelf_h(0);
    for (int cls = 0; cls < t; ++cls) {
      u_init[static_cast<size_t>(cls)] += cfg[static_cast<size_t>(cls)] * n;
      shelf_h += Rational(cfg[static_cast<size_t>(cls)]) * plan.heights[static_cast<size_t>(cls)];
    }
    free_area += Rational(1) - shelf_h;
  }
  for (auto& u : u_init) u = std::min(u, static_cast<long>(n) * n);

  // Per member: width in units of 1/n (delta-large only) and small area.
  struct Member {
    int index;       // position within the itemset
    int id;
    bool large;
    long units;      // rounded width, in units of 1/n
    Rational area;   // counted only when small
    Rational height;
  };
  std::vector<std::vector<Member>> members(static_cast<size_t>(n));
  for (int s = 0; s < n; ++s) {
    for (size_t m = 0; m < inst.sets[static_cast<size_t>(s)].size(); ++m) {
      const Rect& r = inst.sets[static_cast<size_t>(s)][m];
      Member mem;
      mem.index = static_cast<int>(m);
      mem.id = r.item;
      mem.large = r.h > delta;
      mem.units = mem.large ? (r.w * Rational(n)).ceil_long() : 0;
      mem.area = mem.large ? Rational(0) : r.area();
      mem.height = r.h;
      members[static_cast<size_t>(s)].push_back(mem);
    }
    std::sort(members[static_cast<size_t>(s)].begin(), members[static_cast<size_t>(s)].end(),
              [](const Member& a, const Member& b) {
                return std::tie(a.id, a.index) < std::tie(b.id, b.index);
              });
  }

  // reduce: fill the shortest classes that still fit the item, then take
  // the remainder from class 0. Null when the item fits nowhere.
  auto reduce = [&](const std::vector<long>& u, const Member& mem)
      -> std::optional<std::vector<long>> {
    if (!mem.large) return u;
    int p = -1;
    for (int cls = 0; cls < t; ++cls)
      if (mem.height <= plan.heights[static_cast<size_t>(cls)]) p = cls;
    if (p < 0) return std::nullopt;
    std::vector<long> v = u;
    long x = mem.units;
    for (int cls = p; cls >= 1; --cls) {
      long take = std::min(x, v[static_cast<size_t>(cls)]);
      v[static_cast<size_t>(cls)] -= take;
      x -= take;
    }
    if (x > v[0]) return std::nullopt;
    v[0] -= x;
    return v;
  };

  // g(j, u): least small-area over assortments of the first j itemsets
  // packable into u_r width units per class; null means infeasible.
  std::vector<std::map<std::vector<long>, std::optional<Rational>>> memo(
      static_cast<size_t>(n) + 1);
  auto g = [&](auto&& self, int j, const std::vector<long>& u) -> std::optional<Rational> {
    if (j == 0) return Rational(0);
    auto& level = memo[static_cast<size_t>(j)];
    auto it = level.find(u);
    if (it != level.end()) return it->second;
    std::optional<Rational> best;
    for (const auto& mem : members[static_cast<size_t>(j - 1)]) {
      auto v = reduce(u, mem);
      if (!v) continue;
      auto sub = self(self, j - 1, *v);
      if (!sub) continue;
      Rational cand = mem.area + *sub;
      if (!best || cand < *best) best = cand;
    }
    level[u] = best;
    return best;
  };

  auto total = g(g, n, u_init);
  if (!total || *total > free_area) return std::nullopt;

  // Walk the table back, replaying reduce to recover each member's
  // per-class unit allocation.
  struct Pick {
    const Member* mem;
    std::vector<std::pair<int, long>> alloc;  // (class, units)
  };
  std::vector<Pick> picks(static_cast<size_t>(n));
  std::vector<long> u = u_init;
  for (int j = n; j >= 1; --j) {
    const Rational want = *g(g, j, u);
    bool found = false;
    for (const auto& mem : members[static_cast<size_t>(j - 1)]) {
      auto v = reduce(u, mem);
      if (!v) continue;
      auto sub = g(g, j - 1, *v);
      if (!sub) continue;
      if (mem.area + *sub != want) continue;
      Pick pick;
      pick.mem = &mem;
      if (mem.large) {
        int p = -1;
        for (int cls = 0; cls < t; ++cls)
          if (mem.height <= plan.heights[static_cast<size_t>(cls)]) p = cls;
        long x = mem.units;
        for (int cls = p; cls >= 1; --cls) {
          long take = std::min(x, u[static_cast<size_t>(cls)]);
          if (take > 0) pick.alloc.emplace_back(cls, take);
          x -= take;
        }
        if (x > 0) pick.alloc.emplace_back(0, x);
      }
      picks[static_cast<size_t>(j - 1)] = std::move(pick);
      u = *v;
      found = true;
      break;
    }
    internal_check(found, "choose_and_pack: reconstruction lost the optimum");
  }

  // Shelf instances per class, in bin order; fill slices at width-1
  // boundaries, itemsets in order.
  std::vector<std::vector<std::pair<size_t, size_t>>> class_shelves(static_cast<size_t>(t));
  for (int cls = 0; cls < t; ++cls)
    for (size_t b = 0; b < fa.bins.size(); ++b)
      for (size_t sh = 0; sh < fa.bins[b].shelves.size(); ++sh)
        if (fa.bins[b].shelves[sh].height == plan.heights[static_cast<size_t>(cls)])
          class_shelves[static_cast<size_t>(cls)].emplace_back(b, sh);

  std::vector<size_t> cursor(static_cast<size_t>(t), 0);
  std::vector<long> used(static_cast<size_t>(t), 0);
  for (int s = 0; s < n; ++s) {
    const Pick& pick = picks[static_cast<size_t>(s)];
    fa.chosen.emplace_back(s, pick.mem->id);
    for (const auto& [cls, total_units] : pick.alloc) {
      long left = total_units;
      while (left > 0) {
        auto& cur = cursor[static_cast<size_t>(cls)];
        internal_check(cur < class_shelves[static_cast<size_t>(cls)].size(),
                       "choose_and_pack: slice accounting overflowed the shelves");
        long room = n - used[static_cast<size_t>(cls)];
        if (room == 0) {
          ++cur;
          used[static_cast<size_t>(cls)] = 0;
          continue;
        }
        long take = std::min(left, room);
        auto [b, sh] = class_shelves[static_cast<size_t>(cls)][cur];
        fa.bins[b].shelves[sh].slices.push_back(
            FracSlice{s, pick.mem->id, Rational(take, n)});
        used[static_cast<size_t>(cls)] += take;
        left -= take;
      }
    }
  }

  // Spread the chosen small items' areas over the bins' free space.
  size_t bcur = 0;
  Rational bused(0);
  auto bin_free = [&](size_t b) {
    Rational h(0);
    for (const auto& shelf : fa.bins[b].shelves) h += shelf.height;
    return Rational(1) - h;
  };
  for (int s = 0; s < n; ++s) {
    const Pick& pick = picks[static_cast<size_t>(s)];
    if (pick.mem->large) continue;
    Rational left = pick.mem->area;
    while (left.is_positive()) {
      internal_check(bcur < fa.bins.size(), "choose_and_pack: small areas overflowed the bins");
      Rational room = bin_free(bcur) - bused;
      if (!room.is_positive()) {
        ++bcur;
        bused = Rational(0);
        continue;
      }
      Rational take = min(left, room);
      fa.bins[bcur].small.push_back(FracSmallPiece{s, pick.mem->id, take});
      bused += take;
      left -= take;
    }
  }

  auto err = fractional_assignment_error(fa, inst);
  internal_check(!err, err ? ("choose_and_pack: " + *err) : "");
  return fa;
}

namespace {

// A horizontal strip of one output bin: a shelf slot of fixed height,
// optionally holding same-btype item pieces (id, width).
struct Slot {
  Rational height;
  TypeVector btype;
  std::vector<std::pair<int, Rational>> pieces;
};

}  // namespace

InflateResult inflate(const FractionalAssignment& fa, const RoundedInstance& inst,
                      const HarmonicContext& ctx) {
  auto err = fractional_assignment_error(fa, inst);
  internal_check(!err, err ? ("inflate: " + *err) : "");

  const Rational& delta = fa.delta;
  const long m = static_cast<long>(fa.bins.size());
  const long t = static_cast<long>(fa.heights.size());

  struct ChosenItem {
    int id;
    const Item* orig;
    const Rect* rect;
    Rational width;  // slice-covered width for large, true width for small
    bool large;
    TypeVector btype;
  };
  std::map<int, ChosenItem> chosen;  // keyed by id
  std::map<int, Rational> slice_width;
  for (const auto& bin : fa.bins)
    for (const auto& shelf : bin.shelves)
      for (const auto& sl : shelf.slices) slice_width[sl.item] += sl.width;
  int d = 0;
  for (const auto& [set, id] : fa.chosen) {
    const auto& sset = inst.sets[static_cast<size_t>(set)];
    for (size_t mi = 0; mi < sset.size(); ++mi) {
      if (sset[mi].item != id) continue;
      ChosenItem ci;
      ci.id = id;
      ci.orig = &inst.original[static_cast<size_t>(set)][mi];
      ci.rect = &sset[mi];
      ci.large = sset[mi].h > delta;
      ci.width = ci.large ? slice_width[id] : sset[mi].w;
      ci.btype = base_type_vector(*ci.orig, ctx.k);
      d = ci.orig->dim();
      chosen[id] = ci;
    }
  }
  std::set<TypeVector> btypes;
  for (const auto& [id, ci] : chosen) btypes.insert(ci.btype);
  const long Q = static_cast<long>(btypes.size());

  InflateStats stats;
  stats.m = m;
  stats.t = t;
  stats.Q = Q;
  stats.bound = Rational(m) / (Rational(1) - delta) + Rational(t) * Rational(Q - 1) +
                Rational(1) + delta * Rational(Q) / (Rational(1) - delta);

  InflateResult out;
  out.packing.kind = PackingKind::BIN;
  out.stats = stats;
  if (chosen.empty()) {
    out.packing.bin.assign(static_cast<size_t>(std::max(d, 2)), Rational(1));
    return out;
  }
  internal_check(d >= 2, "inflate: items must have at least two dimensions");
  out.packing.bin.assign(static_cast<size_t>(d), Rational(1));

  // Mirror the fractional bins: every shelf keeps its strip of the bin.
  std::vector<std::vector<Slot>> bins(static_cast<size_t>(m));
  std::vector<Rational> free_cap(static_cast<size_t>(m), Rational(1));
  for (long b = 0; b < m; ++b) {
    for (const auto& shelf : fa.bins[static_cast<size_t>(b)].shelves) {
      bins[static_cast<size_t>(b)].push_back(Slot{shelf.height, {}, {}});
      free_cap[static_cast<size_t>(b)] -= shelf.height;
    }
  }

  // Phase 1: re-shelve the delta-large slices so every shelf holds one
  // base type. New shelves go back into the slots of their height class,
  // overflow shelves get one new bin each.
  std::vector<std::vector<Slot>> p1_bins;
  for (long cls = 0; cls < t; ++cls) {
    const Rational& h = fa.heights[static_cast<size_t>(cls)];
    std::vector<std::pair<size_t, size_t>> slots;  // (bin, slot) of this class
    for (size_t b = 0; b < static_cast<size_t>(m); ++b)
      for (size_t sl = 0; sl < bins[b].size(); ++sl)
        if (bins[b][sl].height == h) slots.emplace_back(b, sl);

    std::map<TypeVector, std::map<int, Rational>> byq;  // btype -> id -> width
    for (long b = 0; b < m; ++b)
      for (const auto& shelf : fa.bins[static_cast<size_t>(b)].shelves)
        if (shelf.height == h)
          for (const auto& sl : shelf.slices) byq[chosen.at(sl.item).btype][sl.item] += sl.width;

    std::vector<Slot> fresh;
    for (const auto& [q, widths] : byq) {
      Rational room(0);
      for (const auto& [id, wsum] : widths) {
        Rational left = wsum;
        while (left.is_positive()) {
          if (!room.is_positive()) {
            fresh.push_back(Slot{h, q, {}});
            room = Rational(1);
          }
          Rational take = min(left, room);
          fresh.back().pieces.emplace_back(id, take);
          room -= take;
          left -= take;
        }
      }
    }
    if (!byq.empty()) {
      internal_check(static_cast<long>(fresh.size()) <=
                         static_cast<long>(slots.size()) + static_cast<long>(byq.size()) - 1,
                     "inflate: base-type split exceeded its shelf budget");
    }
    for (size_t i = 0; i < fresh.size(); ++i) {
      if (i < slots.size()) {
        auto [b, sl] = slots[i];
        bins[b][sl] = fresh[i];
      } else {
        p1_bins.push_back({fresh[i]});
      }
    }
  }
  stats.phase1_new = static_cast<long>(p1_bins.size());

  // Phase 2: canonical shelving of the whole delta-small items per base
  // type, Next-Fit into the original bins' free strips, overflow into new
  // bins.
  std::map<TypeVector, std::vector<Rect>> small_by_q;
  for (const auto& [id, ci] : chosen)
    if (!ci.large) small_by_q[ci.btype].push_back(Rect{id, ci.width, ci.rect->h});
  std::vector<std::pair<TypeVector, CanonShelf>> small_shelves;
  for (const auto& [q, rects] : small_by_q) {
    CanonicalShelving cs = canonical_shelving(rects);
    Rational total_h(0), total_a(0);
    for (const auto& shelf : cs.shelves) {
      internal_check(shelf.height <= delta, "inflate: small shelf taller than delta");
      total_h += shelf.height;
    }
    for (const auto& r : rects) total_a += r.area();
    internal_check(total_h < total_a + delta, "inflate: small shelving taller than area + delta");
    for (const auto& shelf : cs.shelves) small_shelves.emplace_back(q, shelf);
  }

  std::vector<std::vector<Slot>> p2_bins;
  {
    size_t bcur = 0;
    Rational used(0);
    std::vector<std::pair<TypeVector, CanonShelf>> leftover;
    for (const auto& [q, shelf] : small_shelves) {
      while (bcur < static_cast<size_t>(m) && used + shelf.height > free_cap[bcur]) {
        ++bcur;
        used = Rational(0);
      }
      Slot slot{shelf.height, q, {}};
      for (const auto& piece : shelf.pieces) slot.pieces.emplace_back(piece.item, piece.w);
      if (bcur < static_cast<size_t>(m)) {
        bins[bcur].push_back(slot);
        used += shelf.height;
      } else {
        leftover.emplace_back(q, shelf);
      }
    }
    if (!leftover.empty()) {
      std::vector<Rational> hs;
      for (const auto& [q, shelf] : leftover) hs.push_back(shelf.height);
      auto groups = next_fit_1d(hs, Rational(1));
      for (const auto& group : groups) {
        std::vector<Slot> bin;
        for (int gi : group) {
          const auto& [q, shelf] = leftover[static_cast<size_t>(gi)];
          Slot slot{shelf.height, q, {}};
          for (const auto& piece : shelf.pieces) slot.pieces.emplace_back(piece.item, piece.w);
          bin.push_back(slot);
        }
        p2_bins.push_back(std::move(bin));
      }
      Rational cap = (delta * Rational(Q + m) / (Rational(1) - delta));
      internal_check(static_cast<long>(p2_bins.size()) <= cap.ceil_long(),
                     "inflate: small-item overflow exceeded its bin budget");
    }
  }
  stats.phase2_new = static_cast<long>(p2_bins.size());

  // Assemble the full bin list (original, then the phase additions) and
  // each slot's vertical offset.
  std::vector<std::vector<Slot>> all = bins;
  for (auto& b : p1_bins) all.push_back(std::move(b));
  for (auto& b : p2_bins) all.push_back(std::move(b));
  std::vector<std::vector<Rational>> offsets(all.size());
  for (size_t b = 0; b < all.size(); ++b) {
    Rational off(0);
    for (const auto& slot : all[b]) {
      offsets[b].push_back(off);
      off += slot.height;
    }
    internal_check(off <= Rational(1), "inflate: shelf slots overflow a bin");
  }

  // Phase 3: per base type, canonically re-shelve the whole items and pack
  // each canonical shelf into a tall-enough slot with the unit packer.
  struct Lifted {
    size_t bin, slot;
    std::vector<int> items;
    UnitPackResult pack;
  };
  std::vector<Lifted> lifted;
  std::map<TypeVector, std::vector<std::pair<size_t, size_t>>> jq;
  for (size_t b = 0; b < all.size(); ++b)
    for (size_t sl = 0; sl < all[b].size(); ++sl)
      if (!all[b][sl].pieces.empty()) jq[all[b][sl].btype].emplace_back(b, sl);

  for (const auto& [q, slots] : jq) {
    std::vector<Rect> whole;
    for (const auto& [id, ci] : chosen)
      if (ci.btype == q) whole.push_back(Rect{id, ci.width, ci.rect->h});
    CanonicalShelving cs = canonical_shelving(whole);

    std::vector<Rational> slot_heights;
    for (const auto& [b, sl] : slots) slot_heights.push_back(all[b][sl].height);
    internal_check(shelving_dominates(cs, slot_heights),
                   "inflate: canonical shelving does not dominate the existing shelves");

    std::vector<std::pair<size_t, size_t>> sorted = slots;
    std::stable_sort(sorted.begin(), sorted.end(),
                     [&](const std::pair<size_t, size_t>& a, const std::pair<size_t, size_t>& b) {
                       return all[b.first][b.second].height < all[a.first][a.second].height;
                     });

    std::set<int> seen;
    for (size_t j = 0; j < cs.shelves.size(); ++j) {
      std::vector<int> r_items;
      for (const auto& piece : cs.shelves[j].pieces)
        if (seen.insert(piece.item).second) r_items.push_back(piece.item);
      if (r_items.empty()) continue;
      Rational head(0);
      for (size_t i = 0; i + 1 < r_items.size(); ++i) head += chosen.at(r_items[i]).width;
      internal_check(head < Rational(1), "inflate: shelf items besides the last reach width 1");

      std::vector<Item> bases;
      for (int id : r_items) {
        Item base = *chosen.at(id).orig;
        base.lengths.pop_back();
        base.profit.reset();
        bases.push_back(std::move(base));
      }
      UnitPackResult up = hdh_unit_pack(bases, q, ctx);
      auto [b, sl] = sorted[j];
      lifted.push_back(Lifted{b, sl, r_items, std::move(up)});
    }
  }

  // Emit placements, dropping bins that ended up empty.
  std::map<size_t, int> bin_index;
  std::sort(lifted.begin(), lifted.end(), [](const Lifted& a, const Lifted& b) {
    return std::tie(a.bin, a.slot) < std::tie(b.bin, b.slot);
  });
  for (const auto& lf : lifted) {
    auto [it, fresh] = bin_index.emplace(lf.bin, static_cast<int>(bin_index.size()));
    int out_bin = it->second;
    (void)fresh;
    for (const auto& pl : lf.pack.placements) {
      Placement p = pl;
      p.bin = out_bin;
      p.position.push_back(offsets[lf.bin][lf.slot]);
      out.packing.placements.push_back(std::move(p));
    }
    ShelfNode node;
    node.height = all[lf.bin][lf.slot].height;
    node.children = lf.pack.shelves;
    node.items = lf.items;
    out.packing.shelves[out_bin].push_back(std::move(node));
  }
  stats.bins_out = static_cast<long>(bin_index.size());
  internal_check(Rational(stats.bins_out) < stats.bound,
                 "inflate: bin count reached the guarantee bound");
  out.stats = stats;
  return out;
}

HgapResult hgap(const std::vector<Itemset>& itemsets, const Rational& eps,
                const HarmonicContext& ctx, long budget, int threads) {
  input_check(eps.is_positive() && eps <= Rational(1), "hgap: epsilon must be in (0,1]");
  HgapResult res;
  res.delta = eps / (Rational(2) + eps);
  if (itemsets.empty()) {
    res.packing.kind = PackingKind::BIN;
    res.packing.bin.assign(2, Rational(1));
    return res;
  }

  RoundedInstance rounded = round_instance(itemsets, ctx);
  GuessResult guess = guess_shelves(rounded, res.delta, budget);
  res.truncated = guess.truncated;

  struct Best {
    size_t bins;
    size_t index;
    FractionalAssignment fa;
  };
  std::optional<Best> best;
  auto consider = [](std::optional<Best>& into, std::optional<Best>&& cand) {
    if (!cand) return;
    if (!into || std::tie(cand->bins, cand->index) < std::tie(into->bins, into->index))
      into = std::move(cand);
  };

  const int workers = std::max(1, threads);
  if (workers == 1 || guess.plans.size() <= 1) {
    for (size_t i = 0; i < guess.plans.size(); ++i) {
      auto fa = choose_and_pack(rounded, guess.plans[i], res.delta);
      if (fa) consider(best, Best{fa->bins.size(), i, std::move(*fa)});
    }
  } else {
    std::vector<std::optional<Best>> locals(static_cast<size_t>(workers));
    std::vector<std::exception_ptr> errors(static_cast<size_t>(workers));
    std::vector<std::thread> pool;
    const size_t count = guess.plans.size();
    const size_t chunk = (count + static_cast<size_t>(workers) - 1) / static_cast<size_t>(workers);
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&, w]() {
        try {
          const size_t lo = static_cast<size_t>(w) * chunk;
          const size_t hi = std::min(count, lo + chunk);
          for (size_t i = lo; i < hi; ++i) {
            auto fa = choose_and_pack(rounded, guess.plans[i], res.delta);
            if (fa)
              consider(locals[static_cast<size_t>(w)], Best{fa->bins.size(), i, std::move(*fa)});
          }
        } catch (...) {
          errors[static_cast<size_t>(w)] = std::current_exception();
        }
      });
    }
    for (auto& th : pool) th.join();
    for (const auto& e : errors)
      if (e) std::rethrow_exception(e);
    for (auto& local : locals) consider(best, std::move(local));
  }

  if (!best) {
    if (guess.truncated)
      throw BudgetExhausted("hgap: plan budget exhausted before any feasible plan");
    throw InternalError("hgap: full enumeration produced no feasible plan");
  }

  InflateResult inf = inflate(best->fa, rounded, ctx);
  res.packing = std::move(inf.packing);
  res.assortment = best->fa.chosen;
  res.bins = inf.stats.bins_out;
  res.plan_index = static_cast<long>(best->index);
  res.plan = guess.plans[best->index];
  res.fractional = std::move(best->fa);
  res.stats = inf.stats;
  return res;
}

}  // namespace hbp
