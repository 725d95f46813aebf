#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "hbp/dff.hpp"
#include "hbp/fullh.hpp"

using namespace hbp;

namespace {

Item box(int id, std::vector<Rational> lengths) {
  Item i;
  i.id = id;
  i.lengths = std::move(lengths);
  return i;
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

TEST_CASE("function handles carry the right claims") {
  auto ctx = HarmonicContext::make(4);
  CHECK(identity_fn().claimed_weighting);
  CHECK(harmonic_H_fn(ctx).claimed_weighting);
  CHECK_FALSE(harmonic_f_fn(ctx).claimed_weighting);
  CHECK(identity_fn().g(Rational(2, 5)) == Rational(2, 5));
  CHECK(harmonic_H_fn(ctx).g(Rational(3, 5)) == Rational(1, 2));
  CHECK(harmonic_f_fn(ctx).g(Rational(3, 5)) == Rational(1));
}

TEST_CASE("identity transform compacts a single item to the wall") {
  std::vector<Item> items{box(0, {Rational(1, 2), Rational(1, 3)})};
  Packing p;
  p.bin = {Rational(1), Rational(1)};
  p.placements = {{0, {}, {Rational(1, 4), Rational(1, 2)}, 0}};
  REQUIRE(validate_packing(p, items, Coverage::EXACT).ok());

  auto tp = weighting_transform_dim(items, p, 1, identity_fn());
  CHECK(tp.packing.placements[0].position[1] == Rational(0));
  CHECK(tp.packing.placements[0].position[0] == Rational(1, 4));
  CHECK(tp.items[0].lengths == items[0].lengths);
  CHECK(validate_packing(tp.packing, tp.items, Coverage::EXACT).ok());
  REQUIRE(tp.chains.size() == 1);
  CHECK(tp.chains[0].level == 0);
  CHECK(tp.chains[0].pred == -1);
  CHECK(tp.chains[0].u == Rational(1, 3));
}

TEST_CASE("stacked items chain through their predecessors") {
  std::vector<Item> items{box(0, {Rational(1, 2), Rational(2, 5)}),
                          box(1, {Rational(1, 2), Rational(2, 5)})};
  Packing p;
  p.bin = {Rational(1), Rational(1)};
  p.placements = {{0, {}, {Rational(0), Rational(1, 10)}, 0},
                  {1, {}, {Rational(0), Rational(11, 20)}, 0}};
  REQUIRE(validate_packing(p, items, Coverage::EXACT).ok());

  auto tp = weighting_transform_dim(items, p, 1, identity_fn());
  CHECK(tp.packing.placements[0].position[1] == Rational(0));
  CHECK(tp.packing.placements[1].position[1] == Rational(2, 5));
  CHECK(tp.chains[1].level == 1);
  CHECK(tp.chains[1].pred == 0);
  CHECK(tp.chains[1].u == Rational(4, 5));
  CHECK(validate_packing(tp.packing, tp.items, Coverage::EXACT).ok());
}

TEST_CASE("harmonic transforms keep random packings valid in every dimension") {
  std::mt19937_64 rng(19);
  for (int t = 0; t < 50; ++t) {
    int d = 2 + static_cast<int>(rng() % 2);
    auto ctx = HarmonicContext::make(3 + static_cast<int>(rng() % 2));
    auto items = random_items(rng, 1 + static_cast<int>(rng() % 10), d, 20);
    auto packed = fullh_bp(items, ctx).packing;
    REQUIRE(validate_packing(packed, items, Coverage::EXACT).ok());

    for (int q = 0; q < d; ++q) {
      auto tp = weighting_transform_dim(items, packed, q, harmonic_H_fn(ctx));
      CHECK(validate_packing(tp.packing, tp.items, Coverage::EXACT).ok());
      CHECK(tp.packing.bin_count() == packed.bin_count());
      for (auto& c : tp.chains) CHECK(c.u <= Rational(1));
    }
  }
}

TEST_CASE("whole-item transform across all axes stays valid") {
  std::mt19937_64 rng(37);
  auto ctx = HarmonicContext::make(4);
  for (int t = 0; t < 30; ++t) {
    int d = 2 + static_cast<int>(rng() % 2);
    auto items = random_items(rng, 1 + static_cast<int>(rng() % 8), d, 16);
    auto packed = fullh_bp(items, ctx).packing;

    auto idt = weighting_transform_all(items, packed, identity_fn());
    CHECK(validate_packing(idt.packing, idt.items, Coverage::EXACT).ok());
    for (size_t i = 0; i < items.size(); ++i)
      CHECK(idt.items[i].lengths == items[i].lengths);

    auto ht = weighting_transform_all(items, packed, harmonic_H_fn(ctx));
    CHECK(validate_packing(ht.packing, ht.items, Coverage::EXACT).ok());
    for (auto& it : ht.items)
      for (int a = 0; a < d; ++a) {
        const Item& orig = items[static_cast<size_t>(it.id)];
        CHECK(it.lengths[static_cast<size_t>(a)] ==
              H_of(orig.lengths[static_cast<size_t>(a)], ctx));
      }

    // mixed: harmonic on axis 0 only, identity elsewhere
    auto mixed = weighting_transform_dim(items, packed, 0, harmonic_H_fn(ctx));
    CHECK(validate_packing(mixed.packing, mixed.items, Coverage::EXACT).ok());
  }
}

TEST_CASE("the f-volume of any valid packing is at most T^d per bin") {
  std::mt19937_64 rng(43);
  for (int t = 0; t < 40; ++t) {
    int d = 2 + static_cast<int>(rng() % 2);
    int k = 3 + static_cast<int>(rng() % 3);
    auto ctx = HarmonicContext::make(k);
    auto items = random_items(rng, 1 + static_cast<int>(rng() % 10), d, 18);
    auto r = fullh_bp(items, ctx);
    CHECK(f_volume_sum(items, ctx) <= ctx.T.pow(d) * Rational(r.packing.bin_count()));
  }
}

TEST_CASE("bake_orientations rewrites rotated placements to identity") {
  std::vector<Item> items{box(0, {Rational(3, 4), Rational(1, 4)})};
  Packing p;
  p.bin = {Rational(1), Rational(1)};
  p.placements = {{0, {1, 0}, {Rational(0), Rational(0)}, 0}};
  REQUIRE(validate_packing(p, items, Coverage::EXACT).ok());
  auto [baked_items, baked] = bake_orientations(items, p);
  CHECK(baked.placements[0].orientation.empty());
  CHECK(baked_items[0].lengths == std::vector<Rational>{Rational(1, 4), Rational(3, 4)});
  CHECK(validate_packing(baked, baked_items, Coverage::EXACT).ok());
}
