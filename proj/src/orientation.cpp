#include "hbp/orientation.hpp"

#include <algorithm>

#include "hbp/assignment.hpp"

namespace hbp {

Item apply_perm(const Item& i, const Perm& p) {
  internal_check(is_perm(p, i.dim()), "apply_perm: not a permutation");
  Item out = i;
  for (int j = 0; j < i.dim(); ++j)
    out.lengths[static_cast<size_t>(j)] = i.len(p[static_cast<size_t>(j)]);
  return out;
}

std::vector<Perm> allowed_perms(int d, RotationPolicy policy,
                                const std::vector<Perm>* explicit_perms) {
  std::vector<Perm> out;
  switch (policy) {
    case RotationPolicy::NONE:
      out.push_back(identity_perm(d));
      break;
    case RotationPolicy::ALL: {
      Perm p = identity_perm(d);
      do out.push_back(p);
      while (std::next_permutation(p.begin(), p.end()));
      break;
    }
    case RotationPolicy::FIX_LAST_AXIS: {
      Perm base = identity_perm(d - 1);
      do {
        Perm p = base;
        p.push_back(d - 1);
        out.push_back(p);
      } while (std::next_permutation(base.begin(), base.end()));
      std::sort(out.begin(), out.end());
      break;
    }
    case RotationPolicy::EXPLICIT: {
      input_check(explicit_perms != nullptr && !explicit_perms->empty(),
                  "explicit rotation policy needs a permutation list");
      for (const auto& p : *explicit_perms) {
        input_check(is_perm(p, d), "explicit rotation list contains a non-permutation");
        out.push_back(p);
      }
      std::sort(out.begin(), out.end());
      out.erase(std::unique(out.begin(), out.end()), out.end());
      break;
    }
  }
  return out;
}

std::vector<OrientedItem> oriented_variants(const Item& i, RotationPolicy policy,
                                            const std::vector<Perm>* explicit_perms) {
  std::vector<OrientedItem> out;
  for (const auto& p : allowed_perms(i.dim(), policy, explicit_perms)) {
    Item oriented = apply_perm(i, p);
    bool dup = false;
    for (const auto& seen : out)
      if (seen.item.lengths == oriented.lengths) { dup = true; break; }
    if (!dup) out.push_back({p, std::move(oriented)});
  }
  return out;
}

Itemset orientations(const Item& i, RotationPolicy policy, const std::vector<Perm>* explicit_perms) {
  Itemset set;
  for (auto& v : oriented_variants(i, policy, explicit_perms)) set.push_back(std::move(v.item));
  return set;
}

BestOrientation best_orientation(const Item& i, const std::vector<Rational>& bin,
                                 const HarmonicContext& ctx, OrientObjective objective) {
  const int d = i.dim();
  input_check(static_cast<int>(bin.size()) == d, "best_orientation: bin dimension mismatch");
  const int m = objective == OrientObjective::FULL_VOL ? d : d - 1;
  input_check(m >= 1, "best_orientation: BASE_W needs d >= 2");

  if (objective == OrientObjective::BASE_W) {
    input_check(i.lengths.back() <= bin.back(),
                "best_orientation: item exceeds the bin in the fixed last axis");
  }

  std::vector<std::vector<std::optional<Rational>>> cost(
      static_cast<size_t>(m), std::vector<std::optional<Rational>>(static_cast<size_t>(m)));
  for (int r = 0; r < m; ++r) {
    for (int c = 0; c < m; ++c) {
      Rational scaled = i.len(r) / bin[static_cast<size_t>(c)];
      if (scaled <= Rational(1)) cost[static_cast<size_t>(r)][static_cast<size_t>(c)] = f_of(scaled, ctx);
    }
  }
  AssignmentResult res = min_product_assignment(cost);
  input_check(res.feasible, "best_orientation: item fits in no allowed orientation");

  Perm perm(static_cast<size_t>(d));
  for (int j = 0; j < m; ++j) perm[static_cast<size_t>(j)] = res.row_of_col[static_cast<size_t>(j)];
  if (objective == OrientObjective::BASE_W) perm[static_cast<size_t>(d - 1)] = d - 1;

  BestOrientation out;
  out.oriented = {perm, apply_perm(i, perm)};
  out.objective = res.value;
  return out;
}

RotationExpansion expand_rotations(const std::vector<Item>& items, RotationPolicy policy,
                                   const std::vector<Rational>& bin, int first_id,
                                   const std::vector<Perm>* explicit_perms) {
  RotationExpansion out;
  int next_id = first_id;
  for (const auto& item : items) {
    input_check(item.dim() == static_cast<int>(bin.size()),
                "rotation expansion: item dimension differs from bin");
    Itemset set;
    for (const auto& variant : oriented_variants(item, policy, explicit_perms)) {
      bool fits = true;
      for (int j = 0; j < item.dim(); ++j)
        if (variant.item.len(j) > bin[static_cast<size_t>(j)]) { fits = false; break; }
      if (!fits) continue;
      Item member = variant.item;
      member.id = next_id++;
      out.member_source[member.id] = {item.id, variant.perm};
      set.push_back(std::move(member));
    }
    input_check(!set.empty(), "item " + std::to_string(item.id) + " fits in no allowed orientation");
    out.sets.push_back(std::move(set));
  }
  return out;
}

RotationExpansion expand_rotations_distinct_heights(const std::vector<Item>& items,
                                                    RotationPolicy policy, int first_id,
                                                    const std::vector<Perm>* explicit_perms) {
  RotationExpansion out;
  int next_id = first_id;
  for (const auto& item : items) {
    Itemset set;
    std::vector<Rational> seen_heights;
    for (const auto& variant : oriented_variants(item, policy, explicit_perms)) {
      const Rational& h = variant.item.lengths.back();
      bool dup = false;
      for (const auto& s : seen_heights)
        if (s == h) { dup = true; break; }
      if (dup) continue;
      seen_heights.push_back(h);
      Item member = variant.item;
      member.id = next_id++;
      out.member_source[member.id] = {item.id, variant.perm};
      set.push_back(std::move(member));
    }
    internal_check(!set.empty(), "distinct-height expansion produced an empty itemset");
    out.sets.push_back(std::move(set));
  }
  return out;
}

}  // namespace hbp
