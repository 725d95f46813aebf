#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "hbp/error.hpp"
#include "hbp/fullh.hpp"
#include "hbp/orientation.hpp"

using namespace hbp;

namespace {

Item box(int id, std::vector<Rational> lengths) {
  Item i;
  i.id = id;
  i.lengths = std::move(lengths);
  return i;
}

std::vector<Item> squares(int n, const Rational& side, int d = 2) {
  std::vector<Item> items;
  for (int i = 0; i < n; ++i)
    items.push_back(box(i, std::vector<Rational>(static_cast<size_t>(d), side)));
  return items;
}

std::vector<Item> random_items(std::mt19937_64& rng, int n, int d, long den) {
  std::uniform_int_distribution<long> cell(1, den);
  std::vector<Item> items;
  for (int i = 0; i < n; ++i) {
    Item it;
    it.id = i;
    for (int a = 0; a < d; ++a) it.lengths.push_back(Rational(cell(rng), den));
    items.push_back(it);
  }
  return items;
}

}  // namespace

TEST_CASE("big squares get one bin each") {
  auto ctx = HarmonicContext::make(4);
  auto r = fullh_bp(squares(4, Rational(3, 5)), ctx);
  CHECK(r.bins == 4);
  CHECK(r.Q == 1);
  CHECK(r.vol_f == Rational(4));
  CHECK(r.bound == Rational(5));
  CHECK(r.packing.bin_count() == 4);
  CHECK(r.assortment.empty());
}

TEST_CASE("eight small squares share one bin") {
  auto ctx = HarmonicContext::make(4);
  auto items = squares(8, Rational(3, 10));
  auto r = fullh_bp(items, ctx);
  CHECK(r.bins == 1);
  CHECK(r.Q == 1);
  CHECK(r.vol_f == Rational(8, 9));
  CHECK(validate_packing(r.packing, items, Coverage::EXACT).ok());
}

TEST_CASE("empty input packs zero bins") {
  auto ctx = HarmonicContext::make(4);
  auto r = fullh_bp({}, ctx);
  CHECK(r.bins == 0);
  CHECK(r.Q == 0);
  CHECK(r.vol_f == Rational(0));
  CHECK(r.packing.placements.empty());
}

TEST_CASE("random instances respect the bound and validate") {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 60; ++t) {
    int d = 1 + static_cast<int>(rng() % 3);
    int k = 3 + static_cast<int>(rng() % 4);
    auto ctx = HarmonicContext::make(k);
    auto items = random_items(rng, 1 + static_cast<int>(rng() % 14), d, 24);
    auto r = fullh_bp(items, ctx);

    CHECK(r.bound == Rational(r.Q) + r.vol_f);
    CHECK(Rational(r.bins) < r.bound);
    CHECK(r.bins == r.packing.bin_count());
    CHECK(Rational(r.bins) >= lower_bound_bp(items, ctx));
    CHECK(validate_packing(r.packing, items, Coverage::EXACT).ok());
  }
}

TEST_CASE("multiple choice picks the f-volume argmin") {
  auto ctx = HarmonicContext::make(4);
  std::vector<Itemset> sets;
  for (int i = 0; i < 8; ++i)
    sets.push_back({box(2 * i, {Rational(3, 5), Rational(3, 5)}),
                    box(2 * i + 1, {Rational(3, 10), Rational(3, 10)})});
  auto r = fullh_mcbp(sets, ctx);
  CHECK(r.bins == 1);
  REQUIRE(r.assortment.size() == 8);
  for (int i = 0; i < 8; ++i) {
    CHECK(r.assortment[static_cast<size_t>(i)].first == i);
    CHECK(r.assortment[static_cast<size_t>(i)].second == 2 * i + 1);
  }
  CHECK(validate_packing(r.packing, sets, Coverage::ASSORTMENT_ONE).ok());
}

TEST_CASE("f-volume ties break toward the smaller id") {
  auto ctx = HarmonicContext::make(4);
  // both members have f-volume 1/3 * 1/3
  std::vector<Itemset> sets{{box(5, {Rational(3, 10), Rational(3, 10)}),
                             box(2, {Rational(29, 100), Rational(3, 10)})}};
  auto r = fullh_mcbp(sets, ctx);
  REQUIRE(r.assortment.size() == 1);
  CHECK(r.assortment[0].second == 2);
}

TEST_CASE("singleton itemsets reduce to the plain solver") {
  std::mt19937_64 rng(23);
  auto ctx = HarmonicContext::make(5);
  for (int t = 0; t < 20; ++t) {
    auto items = random_items(rng, 1 + static_cast<int>(rng() % 10), 2, 18);
    std::vector<Itemset> sets;
    for (auto& it : items) sets.push_back({it});
    auto plain = fullh_bp(items, ctx);
    auto mc = fullh_mcbp(sets, ctx);
    CHECK(mc.bins == plain.bins);
    CHECK(mc.Q == plain.Q);
    CHECK(mc.vol_f == plain.vol_f);
    REQUIRE(mc.assortment.size() == items.size());
    for (size_t i = 0; i < items.size(); ++i) CHECK(mc.assortment[i].second == items[i].id);
  }
}

TEST_CASE("lower_bound_bp takes the stronger of volume and scaled f-volume") {
  auto ctx = HarmonicContext::make(4);
  CHECK(lower_bound_bp({}, ctx) == Rational(0));
  CHECK(lower_bound_bp({box(0, {Rational(1), Rational(1)})}, ctx) == Rational(1));
  // vol = 36/25, vol_f / T_4^2 = 4/4 = 1
  CHECK(lower_bound_bp(squares(4, Rational(3, 5)), ctx) == Rational(36, 25));
  // one tiny item: vol wins only through the f term, 1/9 / 4 < 9/100
  CHECK(lower_bound_bp({box(0, {Rational(3, 10), Rational(3, 10)})}, ctx) == Rational(9, 100));
}

TEST_CASE("rotation expansion of cubes changes nothing") {
  std::mt19937_64 rng(31);
  auto ctx = HarmonicContext::make(4);
  std::vector<Rational> unit{Rational(1), Rational(1), Rational(1)};
  for (int t = 0; t < 10; ++t) {
    std::uniform_int_distribution<long> cell(1, 10);
    std::vector<Item> items;
    int n = 1 + static_cast<int>(rng() % 6);
    for (int i = 0; i < n; ++i)
      items.push_back(box(i, std::vector<Rational>(3, Rational(cell(rng), 10))));

    auto exp = expand_rotations(items, RotationPolicy::ALL, unit, 100);
    for (auto& s : exp.sets) CHECK(s.size() == 1);
    auto mc = fullh_mcbp(exp.sets, ctx);
    auto plain = fullh_bp(items, ctx);
    CHECK(mc.bins == plain.bins);
    CHECK(mc.vol_f == plain.vol_f);
  }
}

TEST_CASE("rotation expansion can only help the bound ingredients") {
  std::mt19937_64 rng(41);
  auto ctx = HarmonicContext::make(4);
  std::vector<Rational> unit{Rational(1), Rational(1)};
  for (int t = 0; t < 20; ++t) {
    auto items = random_items(rng, 1 + static_cast<int>(rng() % 8), 2, 20);
    auto exp = expand_rotations(items, RotationPolicy::ALL, unit, 1000);
    auto mc = fullh_mcbp(exp.sets, ctx);
    auto plain = fullh_bp(items, ctx);
    CHECK(mc.vol_f <= plain.vol_f);
    CHECK(validate_packing(mc.packing, exp.sets, Coverage::ASSORTMENT_ONE).ok());
  }
}
