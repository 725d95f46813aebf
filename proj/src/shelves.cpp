#include "hbp/shelves.hpp"

#include <algorithm>
#include <map>

namespace hbp {
namespace {

// f-volume over the first m dims of an item.
Rational prefix_f_volume(const Item& i, int m, const HarmonicContext& ctx) {
  Rational v(1);
  for (int j = 0; j < m; ++j) v *= f_of(i.len(j), ctx);
  return v;
}

struct Packer {
  const std::vector<Item>& items;
  const TypeVector& t;
  const HarmonicContext& ctx;
  std::map<int, std::vector<Rational>> pos;  // item id -> coordinates (filled per level)

  const Item& at(int idx) const { return items[static_cast<size_t>(idx)]; }

  // Lays out `order` inside a unit bin of dimension m; fills coordinate
  // axes 0..m-1 of every involved item and returns the shelf structure.
  std::vector<ShelfNode> pack(std::vector<int> order, int m) {
    internal_check(m >= 2, "unit-pack: recursion reached dimension < 2");
    const int axis = m - 1;
    if (t[static_cast<size_t>(axis)] == ctx.k) {
      std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        return at(a).len(axis) > at(b).len(axis);
      });
    }

    // Minimal prefixes whose base f-volume reaches 1 (the remainder closes
    // the last shelf).
    std::vector<std::vector<int>> groups;
    std::vector<int> cur;
    Rational vol(0);
    for (int idx : order) {
      cur.push_back(idx);
      vol += prefix_f_volume(at(idx), m - 1, ctx);
      if (vol >= Rational(1)) {
        groups.push_back(std::move(cur));
        cur.clear();
        vol = 0;
      }
    }
    if (!cur.empty()) groups.push_back(std::move(cur));

    std::vector<ShelfNode> shelves;
    Rational offset(0);
    for (auto& g : groups) {
      ShelfNode node;
      node.height = Rational(0);
      for (int idx : g) node.height = max(node.height, at(idx).len(axis));
      if (m == 2) {
        Rational off(0);
        for (int idx : g) {
          pos[at(idx).id].assign(1, off);
          off += at(idx).len(0);
        }
        internal_check(off <= Rational(1), "unit-pack: 1D row exceeded the bin edge");
        node.items = g;
      } else {
        node.children = pack(g, m - 1);
      }
      for (int idx : g) {
        auto& coords = pos[at(idx).id];
        coords.resize(static_cast<size_t>(m), Rational(0));
        coords[static_cast<size_t>(axis)] = offset;
      }
      offset += node.height;
      shelves.push_back(std::move(node));
    }
    internal_check(offset <= Rational(1), "unit-pack: shelves exceeded the bin edge");

    // With a small type on this axis, each shelf's weighted base volume
    // covers the next shelf's height; the height bound is exactly this.
    if (t[static_cast<size_t>(axis)] == ctx.k) {
      for (size_t j = 0; j + 1 < shelves.size(); ++j) {
        Rational wvol(0);
        for (int idx : groupsOf(shelves[j]))
          wvol += prefix_f_volume(at(idx), m - 1, ctx) * at(idx).len(axis);
        internal_check(wvol >= shelves[j + 1].height,
                       "unit-pack: shelf weight fails to cover the next height");
      }
    }
    return shelves;
  }

  // Item indices contained in a shelf subtree. Index lists live in `items`
  // space; leaves store them directly.
  std::vector<int> groupsOf(const ShelfNode& n) const {
    if (n.children.empty()) return n.items;
    std::vector<int> out;
    for (const auto& c : n.children) {
      auto sub = groupsOf(c);
      out.insert(out.end(), sub.begin(), sub.end());
    }
    return out;
  }
};

}  // namespace

UnitPackResult hdh_unit_pack(const std::vector<Item>& items, const TypeVector& t,
                             const HarmonicContext& ctx) {
  const int d = static_cast<int>(t.size());
  internal_check(d >= 1, "unit-pack: empty type vector");
  Rational head_vol(0);
  for (size_t i = 0; i < items.size(); ++i) {
    const Item& it = items[i];
    internal_check(it.dim() == d, "unit-pack: item dimension differs from type vector");
    internal_check(type_vector(it, ctx.k) == t, "unit-pack: item type differs from t");
    if (i + 1 < items.size()) head_vol += f_volume(it, ctx);
  }
  internal_check(head_vol < Rational(1), "unit-pack: f-volume of all items but the last must be < 1");

  UnitPackResult out;
  out.height = Rational(0);
  if (items.empty()) return out;

  std::vector<int> order(items.size());
  for (size_t i = 0; i < items.size(); ++i) order[i] = static_cast<int>(i);

  Packer packer{items, t, ctx, {}};
  if (d == 1) {
    Rational off(0);
    ShelfNode row;
    for (int idx : order) {
      packer.pos[items[static_cast<size_t>(idx)].id].assign(1, off);
      off += items[static_cast<size_t>(idx)].len(0);
      row.items.push_back(idx);
    }
    internal_check(off <= Rational(1), "unit-pack: 1D items exceed the bin");
    row.height = off;
    out.height = off;
    out.shelves.push_back(std::move(row));
  } else {
    out.shelves = packer.pack(order, d);
    for (const auto& s : out.shelves) out.height += s.height;
  }

  for (const auto& item : items) {
    Placement pl;
    pl.item = item.id;
    pl.bin = 0;
    pl.position = packer.pos[item.id];
    pl.position.resize(static_cast<size_t>(d), Rational(0));
    out.placements.push_back(std::move(pl));
  }
  return out;
}

CanonicalShelving canonical_shelving(std::vector<Rect> rects) {
  for (const auto& r : rects) {
    internal_check(r.w.is_positive() && r.w <= Rational(1) && r.h.is_positive() && r.h <= Rational(1),
                   "canonical shelving: rect outside (0,1]^2");
  }
  std::sort(rects.begin(), rects.end(), [](const Rect& a, const Rect& b) {
    if (a.h != b.h) return a.h > b.h;
    if (a.w != b.w) return a.w > b.w;
    return a.item < b.item;
  });

  CanonicalShelving out;
  Rational cap(0);  // remaining width in the open shelf
  auto open_shelf = [&](const Rational& h) {
    out.shelves.push_back({h, {}});
    cap = Rational(1);
  };
  for (const auto& r : rects) {
    Rational remaining = r.w;
    if (cap.is_zero()) open_shelf(r.h);
    if (remaining <= cap) {
      out.shelves.back().pieces.push_back({r.item, remaining, r.h});
      cap -= remaining;
    } else {
      Rational first = cap;
      out.shelves.back().pieces.push_back({r.item, first, r.h});
      remaining -= cap;
      open_shelf(r.h);
      out.shelves.back().pieces.push_back({r.item, remaining, r.h});
      cap -= remaining;
      out.slices.push_back({r.item, first, remaining});
    }
  }
  return out;
}

bool shelving_dominates(const CanonicalShelving& canonical, std::vector<Rational> other_heights) {
  if (canonical.shelves.size() > other_heights.size()) return false;
  std::sort(other_heights.begin(), other_heights.end(), std::greater<Rational>());
  for (size_t j = 0; j < canonical.shelves.size(); ++j) {
    if (canonical.shelves[j].height > other_heights[j]) return false;
  }
  return true;
}

std::vector<std::vector<int>> next_fit_1d(const std::vector<Rational>& sizes,
                                          const Rational& capacity) {
  input_check(capacity.is_positive(), "next-fit: capacity must be positive");
  std::vector<std::vector<int>> bins;
  Rational used = capacity;  // force a bin on the first item
  for (size_t i = 0; i < sizes.size(); ++i) {
    input_check(sizes[i].is_positive() && sizes[i] <= capacity,
                "next-fit: size must lie in (0, capacity]");
    if (used + sizes[i] > capacity) {
      bins.emplace_back();
      used = Rational(0);
    }
    bins.back().push_back(static_cast<int>(i));
    used += sizes[i];
  }
  return bins;
}

}  // namespace hbp
