#include "hbp/fullh.hpp"

#include <map>

#include "hbp/shelves.hpp"

namespace hbp {

FullhResult fullh_bp(const std::vector<Item>& items, const HarmonicContext& ctx) {
  FullhResult res;
  int d = items.empty() ? 1 : items.front().dim();
  for (const auto& i : items) {
    input_check(i.dim() == d, "fullh: mixed item dimensions");
    for (const auto& l : i.lengths)
      input_check(l.is_positive() && l <= Rational(1), "fullh: item length outside (0,1]");
  }
  res.packing.kind = PackingKind::BIN;
  res.packing.bin.assign(static_cast<size_t>(d), Rational(1));
  res.vol_f = Rational(0);

  // Type classes in lexicographic type order; items keep input order inside.
  std::map<TypeVector, std::vector<Item>> classes;
  for (const auto& i : items) classes[type_vector(i, ctx.k)].push_back(i);
  res.Q = static_cast<long>(classes.size());

  int bin = 0;
  for (auto& [type, members] : classes) {
    std::vector<Item> prefix;
    Rational vol(0);
    auto flush = [&]() {
      if (prefix.empty()) return;
      UnitPackResult up = hdh_unit_pack(prefix, type, ctx);
      for (auto& pl : up.placements) {
        pl.bin = bin;
        res.packing.placements.push_back(std::move(pl));
      }
      res.packing.shelves[bin] = std::move(up.shelves);
      ++bin;
      prefix.clear();
      vol = 0;
    };
    for (const auto& i : members) {
      prefix.push_back(i);
      vol += f_volume(i, ctx);
      res.vol_f += f_volume(i, ctx);
      if (vol >= Rational(1)) flush();
    }
    flush();
  }

  res.bins = bin;
  res.bound = Rational(res.Q) + res.vol_f;
  internal_check(items.empty() || Rational(res.bins) < res.bound,
                 "fullh: bin count reached the guarantee bound");
  return res;
}

FullhResult fullh_mcbp(const std::vector<Itemset>& sets, const HarmonicContext& ctx) {
  std::vector<Item> chosen;
  std::vector<std::pair<int, int>> assortment;
  for (size_t s = 0; s < sets.size(); ++s) {
    input_check(!sets[s].empty(), "fullh: empty itemset");
    const Item* best = nullptr;
    Rational best_vol;
    for (const auto& member : sets[s]) {
      Rational v = f_volume(member, ctx);
      if (!best || v < best_vol || (v == best_vol && member.id < best->id)) {
        best = &member;
        best_vol = v;
      }
    }
    chosen.push_back(*best);
    assortment.emplace_back(static_cast<int>(s), best->id);
  }
  FullhResult res = fullh_bp(chosen, ctx);
  res.assortment = std::move(assortment);
  return res;
}

Rational lower_bound_bp(const std::vector<Item>& items, const HarmonicContext& ctx) {
  Rational vol(0), volf(0);
  int d = items.empty() ? 1 : items.front().dim();
  for (const auto& i : items) {
    vol += volume(i);
    volf += f_volume(i, ctx);
  }
  return max(vol, volf / ctx.T.pow(d));
}

}  // namespace hbp
