#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <random>

#include "hbp/model.hpp"

using namespace hbp;

namespace {

Item box(int id, std::vector<Rational> lengths) {
  Item i;
  i.id = id;
  i.lengths = std::move(lengths);
  return i;
}

Placement at(int item, std::vector<Rational> pos, int bin = 0, Perm orient = {}) {
  Placement p;
  p.item = item;
  p.position = std::move(pos);
  p.bin = bin;
  p.orientation = std::move(orient);
  return p;
}

Packing unit_bin_packing(int d, std::vector<Placement> placements) {
  Packing p;
  p.kind = PackingKind::BIN;
  p.bin.assign(static_cast<size_t>(d), Rational(1));
  p.placements = std::move(placements);
  return p;
}

bool has(const ValidationReport& r, ViolationKind k) {
  return std::any_of(r.violations.begin(), r.violations.end(),
                     [&](const Violation& v) { return v.kind == k; });
}

}  // namespace

TEST_CASE("a single item inside the bin is valid") {
  std::vector<Item> items{box(0, {Rational(1, 2), Rational(1, 2)})};
  auto p = unit_bin_packing(2, {at(0, {Rational(0), Rational(0)})});
  CHECK(validate_packing(p, items, Coverage::EXACT).ok());
}

TEST_CASE("two full items at the origin overlap") {
  std::vector<Item> items{box(0, {Rational(1), Rational(1)}), box(1, {Rational(1), Rational(1)})};
  auto p = unit_bin_packing(
      2, {at(0, {Rational(0), Rational(0)}), at(1, {Rational(0), Rational(0)})});
  auto r = validate_packing(p, items, Coverage::EXACT);
  CHECK(has(r, ViolationKind::OVERLAP));
}

TEST_CASE("touching faces are not overlap") {
  std::vector<Item> items{box(0, {Rational(1, 2), Rational(1)}),
                          box(1, {Rational(1, 2), Rational(1)})};
  auto p = unit_bin_packing(
      2, {at(0, {Rational(0), Rational(0)}), at(1, {Rational(1, 2), Rational(0)})});
  CHECK(validate_packing(p, items, Coverage::EXACT).ok());
}

TEST_CASE("sticking out of the bin is a containment violation") {
  std::vector<Item> items{box(0, {Rational(3, 5), Rational(3, 5)})};
  auto p = unit_bin_packing(2, {at(0, {Rational(1, 2), Rational(0)})});
  auto r = validate_packing(p, items, Coverage::EXACT);
  CHECK(has(r, ViolationKind::CONTAINMENT));
}

TEST_CASE("negative positions are rejected separately from containment") {
  std::vector<Item> items{box(0, {Rational(1, 2), Rational(1, 2)})};
  auto p = unit_bin_packing(2, {at(0, {Rational(-1, 10), Rational(0)})});
  CHECK(has(validate_packing(p, items, Coverage::EXACT), ViolationKind::BAD_POSITION));
}

TEST_CASE("strip packings ignore the last-axis bound but keep the base") {
  std::vector<Item> items{box(0, {Rational(1, 2), Rational(3, 5)}),
                          box(1, {Rational(1, 2), Rational(3, 5)})};
  Packing p;
  p.kind = PackingKind::STRIP;
  p.bin = {Rational(1), Rational(1)};
  p.placements = {at(0, {Rational(0), Rational(0)}), at(1, {Rational(0), Rational(3, 5)})};
  CHECK(validate_packing(p, items, Coverage::EXACT).ok());

  SUBCASE("the same stack violates a BIN packing") {
    p.kind = PackingKind::BIN;
    CHECK(has(validate_packing(p, items, Coverage::EXACT), ViolationKind::CONTAINMENT));
  }
  SUBCASE("base overflow still fails in a strip") {
    p.placements[1] = at(1, {Rational(3, 5), Rational(3, 5)});
    CHECK(has(validate_packing(p, items, Coverage::EXACT), ViolationKind::CONTAINMENT));
  }
  SUBCASE("strip placements outside bin 0 are rejected") {
    p.placements[1].bin = 1;
    CHECK(has(validate_packing(p, items, Coverage::EXACT), ViolationKind::BAD_BIN_INDEX));
  }
}

TEST_CASE("non-unit bin lengths are respected") {
  std::vector<Item> items{box(0, {Rational(3, 2), Rational(1, 2)})};
  Packing p;
  p.bin = {Rational(2), Rational(1)};
  p.placements = {at(0, {Rational(1, 2), Rational(1, 4)})};
  CHECK(validate_packing(p, items, Coverage::EXACT).ok());
  p.placements[0].position[0] = Rational(3, 4);
  CHECK(has(validate_packing(p, items, Coverage::EXACT), ViolationKind::CONTAINMENT));
}

TEST_CASE("orientations permute item lengths before the geometry checks") {
  std::vector<Item> items{box(0, {Rational(3, 4), Rational(1, 4)})};
  Packing p;
  p.bin = {Rational(1, 4), Rational(1)};
  // Upright the item fits only when rotated: axis 0 shows original axis 1.
  p.placements = {at(0, {Rational(0), Rational(0)}, 0, Perm{1, 0})};
  CHECK(validate_packing(p, items, Coverage::EXACT).ok());
  p.placements[0].orientation = {0, 1};
  CHECK(has(validate_packing(p, items, Coverage::EXACT), ViolationKind::CONTAINMENT));
  p.placements[0].orientation = {1, 1};
  CHECK(has(validate_packing(p, items, Coverage::EXACT), ViolationKind::BAD_ORIENTATION));
}

TEST_CASE("structural defects get their own kinds") {
  std::vector<Item> items{box(0, {Rational(1, 2), Rational(1, 2)})};
  SUBCASE("unknown item") {
    auto p = unit_bin_packing(2, {at(7, {Rational(0), Rational(0)})});
    CHECK(has(validate_packing(p, items, Coverage::NONE), ViolationKind::UNKNOWN_ITEM));
  }
  SUBCASE("dimension mismatch") {
    auto p = unit_bin_packing(2, {at(0, {Rational(0)})});
    CHECK(has(validate_packing(p, items, Coverage::NONE), ViolationKind::DIMENSION_MISMATCH));
  }
  SUBCASE("bad bin index") {
    auto p = unit_bin_packing(2, {at(0, {Rational(0), Rational(0)}, -1)});
    CHECK(has(validate_packing(p, items, Coverage::NONE), ViolationKind::BAD_BIN_INDEX));
  }
}

TEST_CASE("coverage rules") {
  std::vector<Itemset> sets{{box(0, {Rational(1, 4), Rational(1, 4)}),
                             box(1, {Rational(1, 3), Rational(1, 3)})},
                            {box(2, {Rational(1, 5), Rational(1, 5)})}};

  SUBCASE("exactly one member per set is clean under ASSORTMENT_ONE") {
    auto p = unit_bin_packing(
        2, {at(0, {Rational(0), Rational(0)}), at(2, {Rational(1, 2), Rational(0)})});
    CHECK(validate_packing(p, sets, Coverage::ASSORTMENT_ONE).ok());
    CHECK(has(validate_packing(p, sets, Coverage::EXACT), ViolationKind::MISSING_ITEM));
  }
  SUBCASE("two members of one set trip MULTI_CHOICE") {
    auto p = unit_bin_packing(
        2, {at(0, {Rational(0), Rational(0)}), at(1, {Rational(1, 2), Rational(0)}),
            at(2, {Rational(0), Rational(1, 2)})});
    CHECK(has(validate_packing(p, sets, Coverage::ASSORTMENT_ONE), ViolationKind::MULTI_CHOICE));
    CHECK(has(validate_packing(p, sets, Coverage::ASSORTMENT_AT_MOST_ONE),
              ViolationKind::MULTI_CHOICE));
  }
  SUBCASE("an empty packing is fine only for AT_MOST_ONE and NONE") {
    auto p = unit_bin_packing(2, {});
    CHECK(validate_packing(p, sets, Coverage::ASSORTMENT_AT_MOST_ONE).ok());
    CHECK(validate_packing(p, sets, Coverage::NONE).ok());
    CHECK(has(validate_packing(p, sets, Coverage::ASSORTMENT_ONE), ViolationKind::MISSING_ITEM));
  }
  SUBCASE("placing the same member twice is DUPLICATE_ITEM") {
    auto p = unit_bin_packing(
        2, {at(0, {Rational(0), Rational(0)}), at(0, {Rational(1, 2), Rational(1, 2)})});
    CHECK(has(validate_packing(p, sets, Coverage::ASSORTMENT_ONE), ViolationKind::DUPLICATE_ITEM));
  }
}

TEST_CASE("the validator is order-insensitive") {
  std::vector<Item> items;
  std::vector<Placement> placements;
  for (int i = 0; i < 4; ++i) {
    items.push_back(box(i, {Rational(1, 2), Rational(1, 2)}));
    placements.push_back(
        at(i, {Rational(i % 2, 2), Rational(i / 2, 2)}));
  }
  // Make one pair overlap.
  placements[3].position = {Rational(1, 4), Rational(1, 4)};
  std::mt19937 rng(5);
  auto baseline = validate_packing(unit_bin_packing(2, placements), items, Coverage::EXACT);
  for (int t = 0; t < 6; ++t) {
    std::shuffle(placements.begin(), placements.end(), rng);
    auto r = validate_packing(unit_bin_packing(2, placements), items, Coverage::EXACT);
    CHECK(r.violations.size() == baseline.violations.size());
  }
}

TEST_CASE("bin_count counts distinct used bins") {
  auto p = unit_bin_packing(2, {at(0, {Rational(0), Rational(0)}, 0),
                                at(1, {Rational(0), Rational(0)}, 4)});
  CHECK(p.bin_count() == 2);
  CHECK(unit_bin_packing(2, {}).bin_count() == 0);
}

TEST_CASE("item_universe and helpers") {
  std::vector<Itemset> sets{{box(0, {Rational(1, 2)})}, {box(1, {Rational(1, 3)})}};
  auto uni = item_universe(sets);
  CHECK(uni.size() == 2);
  CHECK(uni.at(1).lengths[0] == Rational(1, 3));
  auto singles = as_singleton_itemsets({box(4, {Rational(1, 2)})});
  CHECK(singles.size() == 1);
  CHECK(singles[0][0].id == 4);
  CHECK(volume(box(0, {Rational(1, 2), Rational(1, 3)})) == Rational(1, 6));
}
