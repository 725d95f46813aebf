#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sstream>

#include "hbp/error.hpp"
#include "hbp/generate.hpp"
#include "hbp/io.hpp"

using namespace hbp;

namespace {

InstanceFile parse_str(const std::string& text) {
  std::istringstream in(text);
  return parse_instance(in);
}

std::string parse_error(const std::string& text) {
  try {
    parse_str(text);
  } catch (const InputError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("a minimal instance file parses with defaults") {
  auto f = parse_str(R"({"d": 2, "itemsets": [[{"lengths": ["1/2", "1/2"]}]]})");
  CHECK(f.d == 2);
  CHECK(f.unit_bin());
  CHECK(f.rotation == RotationPolicy::NONE);
  REQUIRE(f.itemsets.size() == 1);
  REQUIRE(f.itemsets[0].size() == 1);
  CHECK(f.itemsets[0][0].id == 0);
  CHECK(f.itemsets[0][0].lengths == std::vector<Rational>{Rational(1, 2), Rational(1, 2)});
  CHECK_FALSE(f.itemsets[0][0].profit.has_value());
  CHECK(f.member_count() == 1);
}

TEST_CASE("decimals parse exactly and ids follow file order") {
  auto f = parse_str(R"({"d": 1, "itemsets": [
    [{"lengths": ["0.3"]}, {"lengths": ["0.25"]}],
    [{"lengths": ["1"]}]]})");
  CHECK(f.itemsets[0][0].lengths[0] == Rational(3, 10));
  CHECK(f.itemsets[0][1].lengths[0] == Rational(1, 4));
  CHECK(f.itemsets[0][0].id == 0);
  CHECK(f.itemsets[0][1].id == 1);
  CHECK(f.itemsets[1][0].id == 2);
}

TEST_CASE("parse errors carry JSON-pointer locations") {
  auto e = parse_error(R"({"d": 1, "itemsets": [[{"lengths": ["7/5"]}]]})");
  CHECK(e.find("/itemsets/0/0/lengths/0") != std::string::npos);
  CHECK(e.find("7/5") != std::string::npos);

  CHECK(parse_error(R"({"itemsets": []})").find("d") != std::string::npos);
  CHECK(parse_error(R"({"d": 1, "itemsets": [[]]})").find("/itemsets/0") != std::string::npos);
  CHECK(parse_error(R"({"d": 1, "itemsets": [[{"lengths": ["1/2"]}]], "extra": 1})")
            .find("extra") != std::string::npos);
  CHECK(parse_error(R"({"d": 1, "rotation": "sometimes", "itemsets": [[{"lengths": ["1/2"]}]]})")
            .find("rotation") != std::string::npos);
  CHECK(parse_error(
            R"({"d": 1, "itemsets": [[{"lengths": ["1/2"], "profit": "-1"}]]})")
            .find("/itemsets/0/0/profit") != std::string::npos);
  CHECK(parse_error(R"({"d": 1, "itemsets": [[{"lengths": ["0"]}]]})")
            .find("positive") != std::string::npos);
  CHECK(parse_error("{nope").size() > 0);
}

TEST_CASE("orientations only ride with explicit rotation") {
  CHECK(parse_error(R"({"d": 2, "orientations": [[1, 0]],
                        "itemsets": [[{"lengths": ["1/2", "1/2"]}]]})")
            .find("/orientations") != std::string::npos);
  auto f = parse_str(R"({"d": 2, "rotation": "explicit", "orientations": [[1, 0], [0, 1]],
                        "itemsets": [[{"lengths": ["1/2", "1/2"]}]]})");
  REQUIRE(f.orientations.size() == 2);
  CHECK(f.orientations[0] == Perm{1, 0});
  CHECK(parse_error(R"({"d": 2, "rotation": "explicit", "orientations": [[0, 0]],
                        "itemsets": [[{"lengths": ["1/2", "1/2"]}]]})")
            .find("permutation") != std::string::npos);
}

TEST_CASE("oversized lengths are rejected only for fixed orientation") {
  std::string big = R"({"d": 2, "bin": ["1", "2"], "rotation": "%s",
                        "itemsets": [[{"lengths": ["3/2", "1/2"]}]]})";
  CHECK(parse_error(R"({"d": 2, "bin": ["1", "2"], "itemsets": [[{"lengths": ["3/2", "1/2"]}]]})")
            .find("/itemsets/0/0/lengths/0") != std::string::npos);
  auto f = parse_str(R"({"d": 2, "bin": ["1", "2"], "rotation": "all",
                        "itemsets": [[{"lengths": ["3/2", "1/2"]}]]})");
  CHECK(f.itemsets[0][0].lengths[0] == Rational(3, 2));
}

TEST_CASE("instance serialization round-trips byte for byte") {
  std::string text = instance_to_text(parse_str(
      R"({"d": 2, "bin": ["1", "3/2"], "rotation": "all",
          "itemsets": [[{"lengths": ["0.3", "1.5"], "profit": "2"},
                        {"lengths": ["1/4", "1/8"]}],
                       [{"lengths": ["1", "1"]}]]})"));
  CHECK(text == instance_to_text(parse_str(text)));
  CHECK(text.back() == '\n');
  CHECK(text.find("3/10") != std::string::npos);  // decimals canonicalize to fractions
}

TEST_CASE("rotation policy names round-trip") {
  for (auto p : {RotationPolicy::NONE, RotationPolicy::ALL, RotationPolicy::FIX_LAST_AXIS,
                 RotationPolicy::EXPLICIT})
    CHECK(rotation_policy_from_name(rotation_policy_name(p)) == p);
  CHECK_THROWS_AS(rotation_policy_from_name("diagonal"), InputError);
}

TEST_CASE("normalization divides by the bin and denormalization restores it") {
  auto f = parse_str(R"({"d": 2, "bin": ["2", "4"],
                        "itemsets": [[{"lengths": ["1", "2"]}]]})");
  auto sets = normalized_itemsets(f);
  CHECK(sets[0][0].lengths == std::vector<Rational>{Rational(1, 2), Rational(1, 2)});

  Packing p;
  p.bin = {Rational(1), Rational(1)};
  p.placements = {{0, {}, {Rational(1, 2), Rational(1, 4)}, 0}};
  auto back = denormalize_packing(p, f);
  CHECK(back.bin == std::vector<Rational>{Rational(2), Rational(4)});
  CHECK(back.placements[0].position == std::vector<Rational>{Rational(1), Rational(1)});
  CHECK(validate_packing(back, f.flat_items(), Coverage::EXACT).ok());
}

TEST_CASE("packing text round-trips and accepts the report wrapper") {
  Packing p;
  p.kind = PackingKind::BIN;
  p.bin = {Rational(1), Rational(1)};
  p.placements = {{0, {}, {Rational(0), Rational(0)}, 0},
                  {1, {1, 0}, {Rational(1, 2), Rational(0)}, 1}};
  std::string text = packing_to_text(p);

  std::istringstream in(text);
  auto q = parse_packing(in);
  CHECK(packing_to_text(q) == text);
  CHECK(q.placements[1].orientation == Perm{1, 0});
  CHECK(q.placements[0].orientation.empty());  // identity is omitted, parsed as empty

  std::istringstream wrapped("{\"solver\": \"x\", \"packing\": " + text + "}");
  auto w = parse_packing(wrapped);
  CHECK(packing_to_text(w) == text);
}

TEST_CASE("generation is deterministic and respects the spec") {
  GenSpec spec;
  spec.n = 6;
  spec.d = 2;
  spec.seed = 42;
  auto a = generate(spec);
  auto b = generate(spec);
  CHECK(instance_to_text(a) == instance_to_text(b));
  CHECK(a.itemsets.size() == 6);

  spec.seed = 43;
  CHECK(instance_to_text(generate(spec)) != instance_to_text(a));

  GenSpec typed;
  typed.dist = GenSpec::Dist::TYPED;
  typed.types = {1};
  typed.n = 20;
  typed.d = 2;
  typed.k = 4;
  auto t = generate(typed);
  for (auto& set : t.itemsets)
    for (auto& it : set)
      for (auto& l : it.lengths) {
        CHECK(l > Rational(1, 2));
        CHECK(l <= Rational(1));
      }

  GenSpec rot;
  rot.dist = GenSpec::Dist::ROT;
  rot.n = 10;
  rot.d = 3;
  rot.rotation = RotationPolicy::ALL;
  auto r = generate(rot);
  CHECK(r.rotation == RotationPolicy::ALL);
  for (auto& set : r.itemsets)
    for (auto& it : set) {
      int longest = 0;
      for (auto& l : it.lengths)
        if (l > Rational(1, 2)) ++longest;
      CHECK(longest == 1);
    }

  GenSpec empty;
  empty.n = 0;
  CHECK(generate(empty).itemsets.empty());

  GenSpec profits;
  profits.profits = true;
  profits.n = 3;
  for (auto& set : generate(profits).itemsets)
    for (auto& it : set) {
      REQUIRE(it.profit.has_value());
      CHECK(it.profit->is_positive());
    }

  GenSpec bad;
  bad.grid = 1;
  CHECK_THROWS_AS(generate(bad), InputError);
}

TEST_CASE("report builders emit the expected shape") {
  auto f = parse_str(R"({"d": 2, "itemsets": [[{"lengths": ["3/10", "3/10"]}],
                                              [{"lengths": ["3/10", "3/10"]}]]})");
  auto ctx = HarmonicContext::make(4);
  auto sets = normalized_itemsets(f);
  auto r = fullh_mcbp(sets, ctx);
  auto emitted = denormalize_packing(r.packing, f);

  ReportMeta meta;
  meta.solver = "pack-mcbp";
  meta.k = 4;
  meta.runtime_ms = 7;

  std::string rep = bp_report(meta, f, sets, r, ctx, emitted, r.assortment);
  CHECK(rep.find("\"solver\": \"pack-mcbp\"") != std::string::npos);
  CHECK(rep.find("\"bins\": 1") != std::string::npos);
  CHECK(rep.find("\"validation\": \"clean\"") != std::string::npos);
  CHECK(rep.find("\"bounds\"") != std::string::npos);
  CHECK(rep.find("\"pass\": true") != std::string::npos);
  CHECK(rep.find("\"packing\"") != std::string::npos);

  // the emitted packing text parses and validates against the file items
  std::istringstream in(rep);
  auto p = parse_packing(in);
  CHECK(validate_packing(p, f.itemsets, Coverage::ASSORTMENT_ONE).ok());

  meta.csv = true;
  std::string csv = bp_report(meta, f, sets, r, ctx, emitted, r.assortment);
  auto nl = csv.find('\n');
  REQUIRE(nl != std::string::npos);
  CHECK(csv.substr(0, nl) ==
        "solver,k,d,n,epsilon,seed,bins,height,profit,q,volume,bounds_pass,runtime_ms");
  CHECK(csv.find("pack-mcbp,4,2,2,") != std::string::npos);
  CHECK(csv.find(",1,7\n") != std::string::npos);  // bounds_pass, runtime_ms
}

TEST_CASE("report builders reject a corrupted emitted packing") {
  auto f = parse_str(R"({"d": 2, "itemsets": [[{"lengths": ["3/10", "3/10"]}]]})");
  auto ctx = HarmonicContext::make(4);
  auto sets = normalized_itemsets(f);
  auto r = fullh_bp(f.flat_items(), ctx);
  auto emitted = denormalize_packing(r.packing, f);
  emitted.placements[0].position[0] = Rational(9, 10);  // pushes the item out of the bin

  ReportMeta meta;
  meta.solver = "pack-bp";
  meta.k = 4;
  CHECK_THROWS_AS(bp_report(meta, f, sets, r, ctx, emitted, {}), InternalError);
}
