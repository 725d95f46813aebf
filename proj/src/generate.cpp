#include "hbp/generate.hpp"

#include <random>

#include "hbp/error.hpp"

namespace hbp {

InstanceFile generate(const GenSpec& spec) {
  input_check(spec.n >= 0, "generate: n must be nonnegative");
  input_check(spec.d >= 1, "generate: d must be at least 1");
  input_check(spec.choices >= 1, "generate: choices must be at least 1");
  input_check(spec.grid >= 2, "generate: grid must be at least 2");
  input_check(spec.k >= 3, "generate: k must be at least 3");
  std::vector<int> types = spec.types;
  if (types.empty())
    for (int q = 1; q <= spec.k; ++q) types.push_back(q);
  for (int q : types) input_check(q >= 1 && q <= spec.k, "generate: type class outside 1..k");

  std::mt19937_64 rng(spec.seed);
  const long G = spec.grid;
  std::uniform_int_distribution<long> cell(1, G);
  std::uniform_int_distribution<size_t> type_pick(0, types.size() - 1);
  std::uniform_int_distribution<int> axis_pick(0, spec.d - 1);

  InstanceFile f;
  f.d = spec.d;
  f.bin.assign(static_cast<size_t>(spec.d), Rational(1));
  f.rotation = spec.rotation;

  int next_id = 0;
  for (int s = 0; s < spec.n; ++s) {
    Itemset set;
    for (int c = 0; c < spec.choices; ++c) {
      Item item;
      item.id = next_id++;
      switch (spec.dist) {
        case GenSpec::Dist::GRID:
          for (int a = 0; a < spec.d; ++a) item.lengths.push_back(Rational(cell(rng), G));
          break;
        case GenSpec::Dist::TYPED:
          for (int a = 0; a < spec.d; ++a) {
            int q = types[type_pick(rng)];
            Rational u(cell(rng), G);
            if (q == spec.k)
              item.lengths.push_back(u / Rational(spec.k));
            else
              item.lengths.push_back(Rational(1, q + 1) +
                                     u * (Rational(1, q) - Rational(1, q + 1)));
          }
          break;
        case GenSpec::Dist::ROT: {
          int long_axis = axis_pick(rng);
          for (int a = 0; a < spec.d; ++a) {
            long u = cell(rng);
            if (a == long_axis)
              item.lengths.push_back(Rational(G + u, 2 * G));
            else
              item.lengths.push_back(Rational(u, 2 * G));
          }
          break;
        }
      }
      if (spec.profits) item.profit = Rational(cell(rng), G);
      set.push_back(std::move(item));
    }
    f.itemsets.push_back(std::move(set));
  }
  return f;
}

}  // namespace hbp
