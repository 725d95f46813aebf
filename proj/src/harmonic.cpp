#include "hbp/harmonic.hpp"

namespace hbp {
namespace {

// Frozen reference values; construction cross-checks the enumeration
// against them whenever k lands in the table.
struct TableEntry {
  int k;
  Rational T;
};
const TableEntry kTable[] = {
    {3, Rational(3)},     {4, Rational(2)},      {5, Rational(11, 6)},
    {6, Rational(7, 4)},  {7, Rational(26, 15)},
};

void check_domain(const Rational& x) {
  input_check(x.is_positive() && x <= Rational(1), "harmonic: scalar outside (0,1]");
}

}  // namespace

int type_of(const Rational& x, int k) {
  input_check(k >= 3, "harmonic: k must be >= 3");
  check_domain(x);
  if (x <= Rational(1, k)) return k;
  // x in (1/(q+1), 1/q]  <=>  q = floor(1/x)
  long q = x.reciprocal().floor_long();
  internal_check(q >= 1 && q < k, "harmonic: type out of range");
  return static_cast<int>(q);
}

Rational f_of(const Rational& x, const HarmonicContext& ctx) {
  int q = type_of(x, ctx.k);
  if (q < ctx.k) return Rational(1, q);
  return ctx.small_slope * x;
}

Rational H_of(const Rational& x, const HarmonicContext& ctx) { return f_of(x, ctx) / ctx.T; }

Rational compute_T(int k) {
  input_check(k >= 3, "harmonic: k must be >= 3");
  const Rational slope(k, k - 2);
  const Rational one(1);
  Rational best = slope;  // the all-small configuration
  // DFS over counts n_q of type-q items, q = 1..k-1. Feasibility is strict:
  // n_q items of type q occupy strictly more than n_q/(q+1), so the count
  // vector is realizable only when sum n_q/(q+1) < 1.
  std::vector<int> n(static_cast<size_t>(k), 0);
  auto rec = [&](auto&& self, int q, const Rational& used, const Rational& large) -> void {
    if (q == k) {
      Rational val = large + slope * (one - used);
      if (val > best) best = val;
      return;
    }
    Rational step(1, q + 1);
    Rational u = used;
    Rational l = large;
    for (int c = 0;; ++c) {
      if (!(u < one)) break;
      self(self, q + 1, u, l);
      u += step;
      l += Rational(1, q);
    }
  };
  rec(rec, 1, Rational(0), Rational(0));
  return best;
}

HarmonicContext HarmonicContext::make(int k) {
  input_check(k >= 3, "harmonic: k must be at least 3");
  HarmonicContext ctx;
  ctx.k = k;
  ctx.small_slope = Rational(k, k - 2);
  ctx.T = compute_T(k);
  for (const auto& e : kTable) {
    if (e.k == k) internal_check(ctx.T == e.T, "harmonic: T_k disagrees with the frozen table");
  }
  return ctx;
}

Item transform_item(const Item& i, ItemTransform which, const HarmonicContext& ctx) {
  Item out = i;
  int d = i.dim();
  int limit = which == ItemTransform::FULL_F ? d : d - 1;
  for (int j = 0; j < limit; ++j) {
    Rational v = f_of(i.len(j), ctx);
    if (which == ItemTransform::BASE_H) v /= ctx.T;
    out.lengths[static_cast<size_t>(j)] = v;
  }
  return out;
}

Rect round_item(const Item& i, const HarmonicContext& ctx) {
  input_check(i.dim() >= 2, "round_item: needs d >= 2");
  Rect r;
  r.item = i.id;
  r.w = Rational(1);
  for (int j = 0; j + 1 < i.dim(); ++j) r.w *= f_of(i.len(j), ctx);
  r.h = i.len(i.dim() - 1);
  return r;
}

TypeVector type_vector(const Item& i, int k) {
  TypeVector t(static_cast<size_t>(i.dim()));
  for (int j = 0; j < i.dim(); ++j) t[static_cast<size_t>(j)] = type_of(i.len(j), k);
  return t;
}

TypeVector base_type_vector(const Item& i, int k) {
  TypeVector t = type_vector(i, k);
  t.pop_back();
  return t;
}

Rational f_volume(const Item& i, const HarmonicContext& ctx) {
  Rational v(1);
  for (const auto& l : i.lengths) v *= f_of(l, ctx);
  return v;
}

Rational base_f_volume(const Item& i, const HarmonicContext& ctx) {
  Rational v(1);
  for (int j = 0; j + 1 < i.dim(); ++j) v *= f_of(i.len(j), ctx);
  return v * i.lengths.back();
}

Rational base_H_volume(const Item& i, const HarmonicContext& ctx) {
  return base_f_volume(i, ctx) / ctx.T.pow(i.dim() - 1);
}

Rational f_volume_sum(const std::vector<Item>& items, const HarmonicContext& ctx) {
  Rational v(0);
  for (const auto& i : items) v += f_volume(i, ctx);
  return v;
}

Rational base_f_volume_sum(const std::vector<Item>& items, const HarmonicContext& ctx) {
  Rational v(0);
  for (const auto& i : items) v += base_f_volume(i, ctx);
  return v;
}

}  // namespace hbp
