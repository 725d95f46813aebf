#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <map>
#include <random>

#include "hbp/error.hpp"
#include "hbp/shelves.hpp"

using namespace hbp;

namespace {

Rect rect(int id, Rational w, Rational h) { return Rect{id, std::move(w), std::move(h)}; }

Rational class_sample(std::mt19937_64& rng, int q, int k) {
  std::uniform_int_distribution<long> cell(1, 24);
  Rational u(cell(rng), 24);
  if (q == k) return u / Rational(k);
  return Rational(1, q + 1) + u * (Rational(1, q) - Rational(1, q + 1));
}

// A legal but arbitrary shelving of the same rectangles: random order,
// greedy width fill with slicing, random early shelf closes. Returns the
// shelf heights (each shelf as tall as its tallest piece).
std::vector<Rational> random_shelving(std::vector<Rect> rects, std::mt19937_64& rng) {
  std::shuffle(rects.begin(), rects.end(), rng);
  std::vector<Rational> heights;
  Rational width(0), tallest(0);
  bool open = false;
  auto close = [&] {
    if (open) heights.push_back(tallest);
    width = Rational(0);
    tallest = Rational(0);
    open = false;
  };
  for (auto& r : rects) {
    Rational left = r.w;
    while (left.is_positive()) {
      if (open && rng() % 3 == 0) close();
      Rational room = Rational(1) - width;
      Rational take = std::min(left, room);
      if (take.is_zero()) {
        close();
        continue;
      }
      width += take;
      left -= take;
      tallest = std::max(tallest, r.h);
      open = true;
      if (width == Rational(1)) close();
    }
  }
  close();
  return heights;
}

}  // namespace

TEST_CASE("canonical shelving reproduces the reference slicing pattern") {
  std::vector<Rect> rects{
      rect(1, Rational(3, 10), Rational(9, 10)), rect(2, Rational(2, 5), Rational(4, 5)),
      rect(3, Rational(2, 5), Rational(7, 10)),  rect(4, Rational(1, 2), Rational(3, 5)),
      rect(5, Rational(9, 10), Rational(1, 2)),  rect(6, Rational(1, 4), Rational(2, 5))};
  auto cs = canonical_shelving(rects);

  REQUIRE(cs.shelves.size() == 3);
  CHECK(cs.shelves[0].height == Rational(9, 10));
  CHECK(cs.shelves[1].height == Rational(7, 10));
  CHECK(cs.shelves[2].height == Rational(1, 2));

  REQUIRE(cs.slices.size() == 2);
  CHECK(cs.slices[0].item == 3);
  CHECK(cs.slices[0].first_width == Rational(3, 10));
  CHECK(cs.slices[0].second_width == Rational(1, 10));
  CHECK(cs.slices[1].item == 5);
  CHECK(cs.slices[1].first_width == Rational(2, 5));
  CHECK(cs.slices[1].second_width == Rational(1, 2));

  // second shelf starts with the trailing slice of item 3
  CHECK(cs.shelves[1].pieces[0].item == 3);
  CHECK(cs.shelves[1].pieces[0].w == Rational(1, 10));
  CHECK(cs.shelves[2].pieces[0].item == 5);
}

TEST_CASE("canonical shelving degenerate shapes") {
  auto one = canonical_shelving({rect(0, Rational(2, 5), Rational(3, 5))});
  REQUIRE(one.shelves.size() == 1);
  CHECK(one.shelves[0].height == Rational(3, 5));
  CHECK(one.slices.empty());

  std::vector<Rect> wide;
  for (int i = 0; i < 4; ++i) wide.push_back(rect(i, Rational(1), Rational(1, 2)));
  auto full = canonical_shelving(wide);
  CHECK(full.shelves.size() == 4);
  CHECK(full.slices.empty());
}

TEST_CASE("slices reassemble and no item splits more than once") {
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<long> cell(1, 40);
  for (int t = 0; t < 120; ++t) {
    int n = 1 + static_cast<int>(rng() % 12);
    std::vector<Rect> rects;
    for (int i = 0; i < n; ++i)
      rects.push_back(rect(i, Rational(cell(rng), 40), Rational(cell(rng), 40)));
    auto cs = canonical_shelving(rects);

    std::map<int, Rational> covered;
    std::map<int, int> pieces;
    for (auto& s : cs.shelves) {
      Rational width(0);
      Rational top = s.height;
      for (auto& p : s.pieces) {
        covered[p.item] += p.w;
        pieces[p.item] += 1;
        width += p.w;
        CHECK(p.h <= top);
      }
      CHECK(width <= Rational(1));
      CHECK(s.height == s.pieces.front().h);
    }
    for (auto& r : rects) {
      CHECK(covered.at(r.item) == r.w);
      CHECK(pieces.at(r.item) <= 2);
    }
    CHECK(cs.slices.size() ==
          static_cast<size_t>(std::count_if(pieces.begin(), pieces.end(),
                                            [](auto& kv) { return kv.second == 2; })));
  }
}

TEST_CASE("canonical shelving dominates random legal shelvings") {
  std::mt19937_64 rng(29);
  std::uniform_int_distribution<long> cell(1, 30);
  for (int t = 0; t < 120; ++t) {
    int n = 1 + static_cast<int>(rng() % 10);
    std::vector<Rect> rects;
    for (int i = 0; i < n; ++i)
      rects.push_back(rect(i, Rational(cell(rng), 30), Rational(cell(rng), 30)));
    auto cs = canonical_shelving(rects);
    for (int alt = 0; alt < 4; ++alt)
      CHECK(shelving_dominates(cs, random_shelving(rects, rng)));
  }
}

TEST_CASE("next_fit_1d basics and the doubling bound") {
  CHECK(next_fit_1d({Rational(3, 5), Rational(3, 5), Rational(3, 5)}, Rational(1)).size() == 3);
  CHECK(next_fit_1d({Rational(1, 2), Rational(1, 2), Rational(1, 2), Rational(1, 2)},
                    Rational(1))
            .size() == 2);
  CHECK(next_fit_1d({}, Rational(1)).empty());
  CHECK_THROWS_AS(next_fit_1d({Rational(3, 2)}, Rational(1)), InputError);

  std::mt19937_64 rng(41);
  std::uniform_int_distribution<long> cell(1, 36);
  for (int t = 0; t < 200; ++t) {
    int n = static_cast<int>(rng() % 14);
    std::vector<Rational> sizes;
    Rational sum(0);
    for (int i = 0; i < n; ++i) {
      sizes.push_back(Rational(cell(rng), 36));
      sum += sizes.back();
    }
    auto bins = next_fit_1d(sizes, Rational(1));
    if (!sizes.empty())
      CHECK(static_cast<long>(bins.size()) <= (Rational(2) * sum).ceil_long());
    size_t placed = 0;
    for (auto& b : bins) placed += b.size();
    CHECK(placed == sizes.size());
  }
}

TEST_CASE("hdh_unit_pack single item") {
  auto ctx = HarmonicContext::make(4);
  Item i;
  i.id = 0;
  i.lengths = {Rational(3, 5), Rational(2, 5)};
  auto r = hdh_unit_pack({i}, type_vector(i, 4), ctx);
  REQUIRE(r.placements.size() == 1);
  CHECK(r.placements[0].bin == 0);
  CHECK(r.height <= Rational(1));
  CHECK(validate_packing(
            Packing{PackingKind::BIN, {Rational(1), Rational(1)}, r.placements, {}},
            std::vector<Item>{i}, Coverage::EXACT)
            .ok());
}

TEST_CASE("eight small squares share one bin") {
  auto ctx = HarmonicContext::make(4);
  std::vector<Item> items;
  for (int i = 0; i < 8; ++i) {
    Item it;
    it.id = i;
    it.lengths = {Rational(3, 10), Rational(3, 10)};
    items.push_back(it);
  }
  auto r = hdh_unit_pack(items, TypeVector{3, 3}, ctx);
  CHECK(r.placements.size() == 8);
  CHECK(r.height <= Rational(1));
  CHECK(validate_packing(
            Packing{PackingKind::BIN, {Rational(1), Rational(1)}, r.placements, {}}, items,
            Coverage::EXACT)
            .ok());
}

TEST_CASE("precondition violations are caller bugs") {
  auto ctx = HarmonicContext::make(4);
  Item a;
  a.id = 0;
  a.lengths = {Rational(3, 5), Rational(3, 5)};
  // wrong declared type
  CHECK_THROWS_AS(hdh_unit_pack({a}, TypeVector{2, 2}, ctx), InternalError);
  // f-volume of everything but the last is 2 >= 1
  std::vector<Item> many(3, a);
  many[1].id = 1;
  many[2].id = 2;
  CHECK_THROWS_AS(hdh_unit_pack(many, TypeVector{1, 1}, ctx), InternalError);
}

TEST_CASE("small-type last axis sorts shelves by non-increasing height") {
  auto ctx = HarmonicContext::make(4);
  std::mt19937_64 rng(53);
  for (int t = 0; t < 40; ++t) {
    TypeVector tv{1 + static_cast<int>(rng() % 4), 1 + static_cast<int>(rng() % 4), 4};
    std::vector<Item> items;
    Rational fsum(0);
    int id = 0;
    while (true) {
      Item it;
      it.id = id++;
      for (int a = 0; a < 3; ++a)
        it.lengths.push_back(class_sample(rng, tv[static_cast<size_t>(a)], 4));
      Rational fv(1);
      for (auto& l : it.lengths) fv *= f_of(l, ctx);
      if (fsum >= Rational(1)) break;
      items.push_back(it);
      fsum += fv;
      if (items.size() > 60) break;
    }
    auto r = hdh_unit_pack(items, tv, ctx);
    for (size_t s = 1; s < r.shelves.size(); ++s)
      CHECK(r.shelves[s].height <= r.shelves[s - 1].height);
    CHECK(r.height <= Rational(1));
  }
}

TEST_CASE("random precondition-satisfying inputs pack cleanly across d and k") {
  std::mt19937_64 rng(61);
  int runs = 0;
  while (runs < 1000) {
    int d = 1 + static_cast<int>(rng() % 3);
    int k = 3 + static_cast<int>(rng() % 3);
    auto ctx = HarmonicContext::make(k);
    TypeVector tv;
    for (int a = 0; a < d; ++a) tv.push_back(1 + static_cast<int>(rng() % k));
    std::vector<Item> items;
    Rational fsum(0);
    int id = 0;
    while (fsum < Rational(1) && items.size() < 80) {
      Item it;
      it.id = id++;
      Rational fv(1);
      for (int a = 0; a < d; ++a) {
        it.lengths.push_back(class_sample(rng, tv[static_cast<size_t>(a)], k));
        fv *= f_of(it.lengths.back(), ctx);
      }
      items.push_back(it);
      fsum += fv;
    }
    auto r = hdh_unit_pack(items, tv, ctx);
    ++runs;

    CHECK(r.height <= Rational(1));
    Rational shelf_sum(0);
    for (auto& s : r.shelves) shelf_sum += s.height;
    CHECK(shelf_sum == r.height);
    Packing p;
    p.kind = PackingKind::BIN;
    p.bin.assign(static_cast<size_t>(d), Rational(1));
    p.placements = r.placements;
    CHECK(validate_packing(p, items, Coverage::EXACT).ok());
  }
}
