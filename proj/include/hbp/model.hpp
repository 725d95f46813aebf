#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hbp/rational.hpp"

namespace hbp {

/// A d-dimensional box. Lengths are exact and must lie in (0,1] once
/// expressed in bin units. `profit` is only meaningful for knapsack inputs.
struct Item {
  int id = 0;
  std::vector<Rational> lengths;
  std::optional<Rational> profit;

  int dim() const { return static_cast<int>(lengths.size()); }
  const Rational& len(int j) const { return lengths[static_cast<size_t>(j)]; }
};

/// A nonempty set of interchangeable alternatives; a solver packs exactly
/// one member (at most one for knapsack). Plain instances use singletons.
using Itemset = std::vector<Item>;

enum class RotationPolicy { NONE, ALL, FIX_LAST_AXIS, EXPLICIT };

/// Axis permutation: perm[j] is the original item axis lying along bin axis j.
using Perm = std::vector<int>;

Perm identity_perm(int d);
bool is_perm(const Perm& p, int d);

struct Placement {
  int item = 0;
  Perm orientation;  // empty means identity
  std::vector<Rational> position;
  int bin = 0;
};

enum class PackingKind { BIN, STRIP };

/// Recursive shelf annotation. A node at base dimension m >= 2 holds child
/// shelves along axis m-1; a node at base dimension 1 holds an item row.
struct ShelfNode {
  Rational height;
  std::vector<ShelfNode> children;
  std::vector<int> items;
};

struct Packing {
  PackingKind kind = PackingKind::BIN;
  std::vector<Rational> bin;  // d lengths; the last one is ignored for STRIP
  std::vector<Placement> placements;
  std::map<int, std::vector<ShelfNode>> shelves;  // optional, keyed by bin index

  int dim() const { return static_cast<int>(bin.size()); }
  long bin_count() const;
};

enum class ViolationKind {
  DIMENSION_MISMATCH,
  BAD_ORIENTATION,
  BAD_BIN_INDEX,
  BAD_POSITION,
  CONTAINMENT,
  OVERLAP,
  UNKNOWN_ITEM,
  DUPLICATE_ITEM,
  MISSING_ITEM,
  MULTI_CHOICE,
};

const char* violation_kind_name(ViolationKind k);

struct Violation {
  ViolationKind kind;
  std::vector<int> items;
  std::string detail;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
  std::string to_string() const;
};

/// What "every input item placed exactly once" means for the instance shape.
enum class Coverage {
  NONE,                   // geometry only
  EXACT,                  // every item of every itemset placed exactly once
  ASSORTMENT_ONE,         // exactly one member per itemset
  ASSORTMENT_AT_MOST_ONE  // at most one member per itemset (knapsack)
};

/// Geometric packing checker. Containment allows touching faces; overlap
/// means a positive-volume intersection. Reports every violation found
/// instead of stopping at the first.
ValidationReport validate_packing(const Packing& p, const std::vector<Itemset>& instance,
                                  Coverage coverage);
ValidationReport validate_packing(const Packing& p, const std::vector<Item>& items,
                                  Coverage coverage);

std::vector<Itemset> as_singleton_itemsets(const std::vector<Item>& items);
std::map<int, Item> item_universe(const std::vector<Itemset>& instance);

Rational volume(const Item& i);

}  // namespace hbp
