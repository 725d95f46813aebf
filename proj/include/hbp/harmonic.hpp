#pragma once

#include <vector>

#include "hbp/model.hpp"
#include "hbp/rational.hpp"

namespace hbp {

/// Everything the harmonic machinery needs for one k:
/// the scaling constant T_k and the slope k/(k-2) used below 1/k.
struct HarmonicContext {
  int k = 0;
  Rational T;
  Rational small_slope;

  static HarmonicContext make(int k);
};

/// Type of a scalar in (0,1]: q in [1, k-1] when x is in (1/(q+1), 1/q],
/// and k when x <= 1/k.
int type_of(const Rational& x, int k);

/// The harmonic weighting kernel: 1/q on type q < k, (k/(k-2)) * x below 1/k.
Rational f_of(const Rational& x, const HarmonicContext& ctx);

/// f scaled to a weighting function: f_of(x) / T_k.
Rational H_of(const Rational& x, const HarmonicContext& ctx);

/// Smallest constant T such that f/T is a weighting function. Exact value of
/// the supremum of sum f(x_i) subject to sum x_i <= 1, computed by exhaustive
/// enumeration of the large-item count vectors (n_1, ..., n_{k-1}) with
/// sum n_q/(q+1) strictly below 1, remaining capacity filled at the slope.
Rational compute_T(int k);

/// A 2D stand-in for a d-dimensional item: width = product of f over the
/// base dims, height = the last dim, kept exact, with an item back-ref.
struct Rect {
  int item = -1;
  Rational w, h;
  Rational area() const { return w * h; }
};

enum class ItemTransform { FULL_F, BASE_F, BASE_H };

/// Applies f (or f/T) per dimension. FULL_F hits every axis; BASE_F and
/// BASE_H keep the last axis unchanged. Id and profit are preserved.
Item transform_item(const Item& i, ItemTransform which, const HarmonicContext& ctx);

/// The ROUND2D transform: d-dimensional item to its Rect stand-in.
Rect round_item(const Item& i, const HarmonicContext& ctx);

using TypeVector = std::vector<int>;

TypeVector type_vector(const Item& i, int k);
TypeVector base_type_vector(const Item& i, int k);

Rational f_volume(const Item& i, const HarmonicContext& ctx);       // prod_j f(l_j)
Rational base_f_volume(const Item& i, const HarmonicContext& ctx);  // prod_{j<d} f(l_j) * l_d
Rational base_H_volume(const Item& i, const HarmonicContext& ctx);  // base_f_volume / T^{d-1}

Rational f_volume_sum(const std::vector<Item>& items, const HarmonicContext& ctx);
Rational base_f_volume_sum(const std::vector<Item>& items, const HarmonicContext& ctx);

}  // namespace hbp
