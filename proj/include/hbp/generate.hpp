#pragma once

#include <vector>

#include "hbp/io.hpp"

namespace hbp {

/// Deterministic instance generator (fixed seed, fixed draw order).
/// GRID draws every length uniformly from {1/G, 2/G, ..., 1}.
/// TYPED first draws a target class q from `types`, then a length inside
/// that class: (1/(q+1), 1/q] for q < k, (0, 1/k] for q = k.
/// ROT makes skewed boxes: one axis long in (1/2, 1], the rest in (0, 1/2].
struct GenSpec {
  enum class Dist { GRID, TYPED, ROT };

  int n = 8;         // itemsets
  int d = 2;
  int choices = 1;   // members per itemset
  Dist dist = Dist::GRID;
  long grid = 20;    // G above; every coordinate is a multiple of 1/(2G) at worst
  std::vector<int> types;  // TYPED only; entries in 1..k, empty means {1, ..., k}
  int k = 4;               // TYPED class ceiling
  bool profits = false;    // attach profit in {1/G, ..., 1} to every member
  RotationPolicy rotation = RotationPolicy::NONE;
  unsigned long long seed = 1;
};

InstanceFile generate(const GenSpec& spec);

}  // namespace hbp
