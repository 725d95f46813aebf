#pragma once

#include <optional>
#include <vector>

#include "hbp/rational.hpp"

namespace hbp {

/// Exact min-product assignment. cost[r][c] is a strictly positive rational
/// or nullopt for a forbidden cell. Minimizes the product of the selected
/// cells over perfect matchings; among optimal matchings returns the one
/// whose column-indexed row vector (row_of_col) is lexicographically
/// smallest. Runs Kuhn-Munkres over the ordered group of positive rationals
/// under multiplication, so no logarithms and no floating point.
struct AssignmentResult {
  bool feasible = false;
  Rational value;                // product over the matching
  std::vector<int> row_of_col;   // size n; row assigned to each column
};

AssignmentResult min_product_assignment(
    const std::vector<std::vector<std::optional<Rational>>>& cost);

}  // namespace hbp
