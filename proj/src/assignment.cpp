#include "hbp/assignment.hpp"

#include "hbp/error.hpp"

namespace hbp {
namespace {

using Cell = std::optional<Rational>;
using Matrix = std::vector<std::vector<Cell>>;

// Shortest-augmenting-path Kuhn-Munkres transplanted from (R, +, <) to
// (Q_{>0}, *, <): potentials multiply, reduced costs are quotients, and the
// infinite cost is a sentinel. Returns nullopt when no perfect matching of
// finite cost exists.
std::optional<std::pair<Rational, std::vector<int>>> solve(const Matrix& cost) {
  const int n = static_cast<int>(cost.size());
  if (n == 0) return std::make_pair(Rational(1), std::vector<int>{});
  const size_t un = static_cast<size_t>(n);

  std::vector<Rational> u(un, Rational(1)), v(un + 1, Rational(1));
  std::vector<int> p(un + 1, -1);  // p[j]: row matched to column j; column n is virtual

  for (int i = 0; i < n; ++i) {
    int j0 = n;
    p[un] = i;
    std::vector<Cell> minv(un, std::nullopt);
    std::vector<int> way(un, n);
    std::vector<char> used(un + 1, 0);
    do {
      used[static_cast<size_t>(j0)] = 1;
      const int i0 = p[static_cast<size_t>(j0)];
      Cell delta;
      int j1 = -1;
      for (int j = 0; j < n; ++j) {
        if (used[static_cast<size_t>(j)]) continue;
        const Cell& c = cost[static_cast<size_t>(i0)][static_cast<size_t>(j)];
        if (c) {
          Rational cur = *c / (u[static_cast<size_t>(i0)] * v[static_cast<size_t>(j)]);
          if (!minv[static_cast<size_t>(j)] || cur < *minv[static_cast<size_t>(j)]) {
            minv[static_cast<size_t>(j)] = cur;
            way[static_cast<size_t>(j)] = j0;
          }
        }
        if (minv[static_cast<size_t>(j)] && (!delta || *minv[static_cast<size_t>(j)] < *delta)) {
          delta = *minv[static_cast<size_t>(j)];
          j1 = j;
        }
      }
      if (!delta) return std::nullopt;  // current row reaches no free column
      for (int j = 0; j <= n; ++j) {
        if (used[static_cast<size_t>(j)]) {
          if (p[static_cast<size_t>(j)] >= 0) u[static_cast<size_t>(p[static_cast<size_t>(j)])] *= *delta;
          v[static_cast<size_t>(j)] /= *delta;
        } else if (minv[static_cast<size_t>(j)]) {
          *minv[static_cast<size_t>(j)] /= *delta;
        }
      }
      j0 = j1;
    } while (p[static_cast<size_t>(j0)] != -1);
    while (j0 != n) {
      int j2 = way[static_cast<size_t>(j0)];
      p[static_cast<size_t>(j0)] = p[static_cast<size_t>(j2)];
      j0 = j2;
    }
  }

  Rational value(1);
  std::vector<int> assign(un, -1);
  for (int j = 0; j < n; ++j) {
    assign[static_cast<size_t>(j)] = p[static_cast<size_t>(j)];
    const Cell& c = cost[static_cast<size_t>(p[static_cast<size_t>(j)])][static_cast<size_t>(j)];
    internal_check(c.has_value(), "assignment: matched a forbidden cell");
    value *= *c;
  }
  return std::make_pair(value, assign);
}

}  // namespace

AssignmentResult min_product_assignment(const Matrix& cost) {
  const int n = static_cast<int>(cost.size());
  for (const auto& row : cost) {
    internal_check(static_cast<int>(row.size()) == n, "assignment: matrix not square");
    for (const auto& c : row)
      internal_check(!c || c->is_positive(), "assignment: costs must be positive");
  }

  AssignmentResult out;
  auto base = solve(cost);
  if (!base) return out;
  out.feasible = true;
  out.value = base->first;

  // Lexicographic refinement: fix columns left to right with the smallest
  // row that still completes to the optimal product.
  std::vector<int> fixed(static_cast<size_t>(n), -1);
  std::vector<char> row_used(static_cast<size_t>(n), 0);
  Rational prefix(1);
  for (int j = 0; j < n; ++j) {
    bool done = false;
    for (int r = 0; r < n && !done; ++r) {
      if (row_used[static_cast<size_t>(r)]) continue;
      const Cell& c = cost[static_cast<size_t>(r)][static_cast<size_t>(j)];
      if (!c) continue;
      // Build the residual matrix over unfixed rows and columns > j.
      std::vector<int> rows;
      for (int rr = 0; rr < n; ++rr)
        if (!row_used[static_cast<size_t>(rr)] && rr != r) rows.push_back(rr);
      Matrix sub(rows.size());
      for (size_t a = 0; a < rows.size(); ++a) {
        for (int cc = j + 1; cc < n; ++cc)
          sub[a].push_back(cost[static_cast<size_t>(rows[a])][static_cast<size_t>(cc)]);
      }
      auto rest = solve(sub);
      if (rest && prefix * *c * rest->first == out.value) {
        fixed[static_cast<size_t>(j)] = r;
        row_used[static_cast<size_t>(r)] = 1;
        prefix *= *c;
        done = true;
      }
    }
    internal_check(done, "assignment: lexicographic refinement lost the optimum");
  }
  out.row_of_col = fixed;
  return out;
}

}  // namespace hbp
