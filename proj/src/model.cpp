#include "hbp/model.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace hbp {

Perm identity_perm(int d) {
  Perm p(static_cast<size_t>(d));
  for (int j = 0; j < d; ++j) p[static_cast<size_t>(j)] = j;
  return p;
}

bool is_perm(const Perm& p, int d) {
  if (static_cast<int>(p.size()) != d) return false;
  std::vector<char> seen(static_cast<size_t>(d), 0);
  for (int x : p) {
    if (x < 0 || x >= d || seen[static_cast<size_t>(x)]) return false;
    seen[static_cast<size_t>(x)] = 1;
  }
  return true;
}

long Packing::bin_count() const {
  std::set<int> bins;
  for (const auto& pl : placements) bins.insert(pl.bin);
  return static_cast<long>(bins.size());
}

const char* violation_kind_name(ViolationKind k) {
  switch (k) {
    case ViolationKind::DIMENSION_MISMATCH: return "dimension_mismatch";
    case ViolationKind::BAD_ORIENTATION: return "bad_orientation";
    case ViolationKind::BAD_BIN_INDEX: return "bad_bin_index";
    case ViolationKind::BAD_POSITION: return "bad_position";
    case ViolationKind::CONTAINMENT: return "containment";
    case ViolationKind::OVERLAP: return "overlap";
    case ViolationKind::UNKNOWN_ITEM: return "unknown_item";
    case ViolationKind::DUPLICATE_ITEM: return "duplicate_item";
    case ViolationKind::MISSING_ITEM: return "missing_item";
    case ViolationKind::MULTI_CHOICE: return "multi_choice";
  }
  return "unknown";
}

std::string ValidationReport::to_string() const {
  std::ostringstream os;
  for (const auto& v : violations) {
    os << violation_kind_name(v.kind) << " [";
    for (size_t i = 0; i < v.items.size(); ++i) os << (i ? "," : "") << v.items[i];
    os << "] " << v.detail << "\n";
  }
  return os.str();
}

std::vector<Itemset> as_singleton_itemsets(const std::vector<Item>& items) {
  std::vector<Itemset> sets;
  sets.reserve(items.size());
  for (const auto& i : items) sets.push_back({i});
  return sets;
}

std::map<int, Item> item_universe(const std::vector<Itemset>& instance) {
  std::map<int, Item> u;
  for (const auto& set : instance)
    for (const auto& i : set) u.emplace(i.id, i);
  return u;
}

Rational volume(const Item& i) {
  Rational v(1);
  for (const auto& l : i.lengths) v *= l;
  return v;
}

namespace {

struct Box {
  int item;
  std::vector<Rational> lo, hi;
};

}  // namespace

ValidationReport validate_packing(const Packing& p, const std::vector<Itemset>& instance,
                                  Coverage coverage) {
  ValidationReport rep;
  auto add = [&rep](ViolationKind k, std::vector<int> items, std::string detail) {
    rep.violations.push_back({k, std::move(items), std::move(detail)});
  };

  const int d = p.dim();
  std::map<int, Item> universe = item_universe(instance);
  std::map<int, int> owner;  // item id -> itemset index
  for (size_t s = 0; s < instance.size(); ++s)
    for (const auto& i : instance[s]) owner[i.id] = static_cast<int>(s);

  std::map<int, int> placed_count;
  std::map<int, std::vector<Box>> by_bin;

  for (const auto& pl : p.placements) {
    auto it = universe.find(pl.item);
    if (it == universe.end()) {
      add(ViolationKind::UNKNOWN_ITEM, {pl.item}, "placement references an unknown item id");
      continue;
    }
    const Item& item = it->second;
    ++placed_count[pl.item];

    if (item.dim() != d || static_cast<int>(pl.position.size()) != d) {
      add(ViolationKind::DIMENSION_MISMATCH, {pl.item}, "item or position dimension differs from bin");
      continue;
    }
    Perm perm = pl.orientation.empty() ? identity_perm(d) : pl.orientation;
    if (!is_perm(perm, d)) {
      add(ViolationKind::BAD_ORIENTATION, {pl.item}, "orientation is not a permutation of the axes");
      continue;
    }
    if (pl.bin < 0 || (p.kind == PackingKind::STRIP && pl.bin != 0)) {
      add(ViolationKind::BAD_BIN_INDEX, {pl.item},
          p.kind == PackingKind::STRIP ? "strip packings use bin 0 only" : "negative bin index");
      continue;
    }

    Box b;
    b.item = pl.item;
    b.lo = pl.position;
    b.hi.resize(static_cast<size_t>(d));
    bool pos_ok = true;
    for (int j = 0; j < d; ++j) {
      const Rational& lo = pl.position[static_cast<size_t>(j)];
      if (lo.is_negative()) pos_ok = false;
      b.hi[static_cast<size_t>(j)] = lo + item.len(perm[static_cast<size_t>(j)]);
    }
    if (!pos_ok) {
      add(ViolationKind::BAD_POSITION, {pl.item}, "negative position coordinate");
    }
    for (int j = 0; j < d; ++j) {
      if (p.kind == PackingKind::STRIP && j == d - 1) continue;  // strip is open-ended on top
      if (b.hi[static_cast<size_t>(j)] > p.bin[static_cast<size_t>(j)]) {
        add(ViolationKind::CONTAINMENT, {pl.item},
            "axis " + std::to_string(j) + ": extent " + b.hi[static_cast<size_t>(j)].str() +
                " exceeds bin length " + p.bin[static_cast<size_t>(j)].str());
      }
    }
    by_bin[pl.bin].push_back(std::move(b));
  }

  for (auto& [bin, boxes] : by_bin) {
    for (size_t a = 0; a < boxes.size(); ++a) {
      for (size_t b = a + 1; b < boxes.size(); ++b) {
        bool open_overlap = true;
        for (int j = 0; j < d && open_overlap; ++j) {
          const Rational lo = max(boxes[a].lo[static_cast<size_t>(j)], boxes[b].lo[static_cast<size_t>(j)]);
          const Rational hi = min(boxes[a].hi[static_cast<size_t>(j)], boxes[b].hi[static_cast<size_t>(j)]);
          if (!(lo < hi)) open_overlap = false;
        }
        if (open_overlap) {
          add(ViolationKind::OVERLAP, {boxes[a].item, boxes[b].item},
              "positive-volume intersection in bin " + std::to_string(bin));
        }
      }
    }
  }

  for (const auto& [id, count] : placed_count) {
    if (count > 1) add(ViolationKind::DUPLICATE_ITEM, {id}, "placed " + std::to_string(count) + " times");
  }

  if (coverage == Coverage::EXACT) {
    for (const auto& [id, item] : universe) {
      (void)item;
      if (!placed_count.count(id)) add(ViolationKind::MISSING_ITEM, {id}, "item never placed");
    }
  } else if (coverage == Coverage::ASSORTMENT_ONE || coverage == Coverage::ASSORTMENT_AT_MOST_ONE) {
    std::map<int, std::vector<int>> chosen;  // itemset -> member ids placed
    for (const auto& [id, count] : placed_count) {
      (void)count;
      auto ow = owner.find(id);
      if (ow != owner.end()) chosen[ow->second].push_back(id);
    }
    for (size_t s = 0; s < instance.size(); ++s) {
      auto it = chosen.find(static_cast<int>(s));
      size_t n = it == chosen.end() ? 0 : it->second.size();
      if (n > 1) {
        add(ViolationKind::MULTI_CHOICE, it->second,
            "itemset " + std::to_string(s) + " has " + std::to_string(n) + " members placed");
      }
      if (n == 0 && coverage == Coverage::ASSORTMENT_ONE) {
        add(ViolationKind::MISSING_ITEM, {}, "itemset " + std::to_string(s) + " has no member placed");
      }
    }
  }

  return rep;
}

ValidationReport validate_packing(const Packing& p, const std::vector<Item>& items,
                                  Coverage coverage) {
  return validate_packing(p, as_singleton_itemsets(items), coverage);
}

}  // namespace hbp
