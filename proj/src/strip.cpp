#include "hbp/strip.hpp"

#include <algorithm>
#include <map>

#include "hbp/shelves.hpp"

namespace hbp {
namespace {

Item base_projection(const Item& i) {
  Item b = i;
  b.lengths.pop_back();
  return b;
}

}  // namespace

StripResult hdh_sp(const std::vector<Item>& items, const HarmonicContext& ctx) {
  StripResult res;
  input_check(!items.empty(), "strip: empty instance");
  const int d = items.front().dim();
  input_check(d >= 2, "strip: needs d >= 2 (1D strip packing is not a packing problem)");
  for (const auto& i : items) {
    input_check(i.dim() == d, "strip: mixed item dimensions");
    for (const auto& l : i.lengths)
      input_check(l.is_positive() && l <= Rational(1), "strip: item length outside (0,1]");
  }

  res.packing.kind = PackingKind::STRIP;
  res.packing.bin.assign(static_cast<size_t>(d), Rational(1));
  res.vol_wf = Rational(0);
  res.height = Rational(0);

  std::map<TypeVector, std::vector<Item>> classes;
  for (const auto& i : items) {
    classes[base_type_vector(i, ctx.k)].push_back(i);
    res.vol_wf += base_f_volume(i, ctx);
  }
  res.Q = static_cast<long>(classes.size());

  for (auto& [btype, members] : classes) {
    std::sort(members.begin(), members.end(), [](const Item& a, const Item& b) {
      if (a.lengths.back() != b.lengths.back()) return a.lengths.back() > b.lengths.back();
      return a.id < b.id;
    });

    std::vector<Item> prefix;
    Rational vol(0);
    auto flush = [&]() {
      if (prefix.empty()) return;
      std::vector<Item> bases;
      Rational shelf_height(0);
      for (const auto& i : prefix) {
        bases.push_back(base_projection(i));
        shelf_height = max(shelf_height, i.lengths.back());
      }
      UnitPackResult up = hdh_unit_pack(bases, btype, ctx);
      std::map<int, std::vector<Rational>> base_pos;
      for (auto& pl : up.placements) base_pos[pl.item] = pl.position;
      for (const auto& i : prefix) {
        Placement pl;
        pl.item = i.id;
        pl.bin = 0;
        pl.position = base_pos[i.id];
        pl.position.push_back(res.height);
        res.packing.placements.push_back(std::move(pl));
      }
      ShelfNode node;
      node.height = shelf_height;
      node.children = std::move(up.shelves);
      res.shelves.push_back(std::move(node));
      res.height += shelf_height;
      prefix.clear();
      vol = 0;
    };
    for (const auto& i : members) {
      prefix.push_back(i);
      vol += f_volume(base_projection(i), ctx);
      if (vol >= Rational(1)) flush();
    }
    flush();
  }

  res.packing.shelves[0] = res.shelves;
  res.bound = Rational(res.Q) + res.vol_wf;
  internal_check(res.height < res.bound, "strip: height reached the guarantee bound");
  return res;
}

StripResult hdh_mcsp(const std::vector<Itemset>& sets, const HarmonicContext& ctx) {
  std::vector<Item> chosen;
  std::vector<std::pair<int, int>> assortment;
  for (size_t s = 0; s < sets.size(); ++s) {
    input_check(!sets[s].empty(), "strip: empty itemset");
    const Item* best = nullptr;
    Rational best_vol;
    for (const auto& member : sets[s]) {
      Rational v = base_f_volume(member, ctx);
      if (!best || v < best_vol || (v == best_vol && member.id < best->id)) {
        best = &member;
        best_vol = v;
      }
    }
    chosen.push_back(*best);
    assortment.emplace_back(static_cast<int>(s), best->id);
  }
  StripResult res = hdh_sp(chosen, ctx);
  res.assortment = std::move(assortment);
  return res;
}

Rational lower_bound_sp(const std::vector<Item>& items, const HarmonicContext& ctx) {
  input_check(!items.empty() && items.front().dim() >= 2, "strip lower bound: needs d >= 2");
  Rational vol(0), volwf(0), maxh(0);
  for (const auto& i : items) {
    vol += volume(i);
    volwf += base_f_volume(i, ctx);
    maxh = max(maxh, i.lengths.back());
  }
  return max(max(vol, volwf / ctx.T.pow(items.front().dim() - 1)), maxh);
}

}  // namespace hbp
