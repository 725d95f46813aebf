#include "hbp/dff.hpp"

#include <algorithm>
#include <map>

#include "hbp/orientation.hpp"

namespace hbp {

WeightingFn identity_fn() {
  return {"identity", [](const Rational& x) { return x; }, true};
}

WeightingFn harmonic_H_fn(const HarmonicContext& ctx) {
  return {"H" + std::to_string(ctx.k), [ctx](const Rational& x) { return H_of(x, ctx); }, true};
}

WeightingFn harmonic_f_fn(const HarmonicContext& ctx) {
  return {"f" + std::to_string(ctx.k), [ctx](const Rational& x) { return f_of(x, ctx); }, false};
}

std::pair<std::vector<Item>, Packing> bake_orientations(const std::vector<Item>& items,
                                                        const Packing& p) {
  std::map<int, Item> universe;
  for (const auto& i : items) universe.emplace(i.id, i);
  std::vector<Item> baked_items;
  Packing baked = p;
  std::map<int, char> emitted;
  for (auto& pl : baked.placements) {
    auto it = universe.find(pl.item);
    input_check(it != universe.end(), "bake_orientations: unknown item in placement");
    Perm perm = pl.orientation.empty() ? identity_perm(p.dim()) : pl.orientation;
    input_check(is_perm(perm, p.dim()), "bake_orientations: bad orientation");
    input_check(!emitted.count(pl.item), "bake_orientations: duplicate placement");
    emitted[pl.item] = 1;
    baked_items.push_back(apply_perm(it->second, perm));
    pl.orientation.clear();
  }
  return {std::move(baked_items), std::move(baked)};
}

TransformedPacking weighting_transform_dim(const std::vector<Item>& items, const Packing& p,
                                           int q, const WeightingFn& g) {
  const int d = p.dim();
  input_check(q >= 0 && q < d, "transform: axis out of range");
  std::map<int, const Item*> universe;
  for (const auto& i : items) universe[i.id] = &i;

  struct Node {
    size_t placement;
    const Item* item;
  };
  std::map<int, std::vector<Node>> bins;
  for (size_t pi = 0; pi < p.placements.size(); ++pi) {
    const Placement& pl = p.placements[pi];
    input_check(pl.orientation.empty() || pl.orientation == identity_perm(d),
                "transform: placements must be identity-oriented (bake first)");
    auto it = universe.find(pl.item);
    input_check(it != universe.end(), "transform: unknown item in placement");
    bins[pl.bin].push_back({pi, it->second});
  }

  TransformedPacking out;
  out.packing = p;
  out.chains.resize(p.placements.size());

  std::map<size_t, Rational> pos_q;

  for (auto& [bin, nodes] : bins) {
    (void)bin;
    // Precedence: i1 before i2 along q when i1 sits strictly lower and their
    // projections orthogonal to q overlap with positive measure.
    std::sort(nodes.begin(), nodes.end(), [&](const Node& a, const Node& b) {
      const Rational& va = p.placements[a.placement].position[static_cast<size_t>(q)];
      const Rational& vb = p.placements[b.placement].position[static_cast<size_t>(q)];
      if (va != vb) return va < vb;
      return a.item->id < b.item->id;
    });

    std::vector<int> level(nodes.size(), 0);
    std::vector<int> pred(nodes.size(), -1);
    std::vector<Rational> u(nodes.size(), Rational(0));

    for (size_t b = 0; b < nodes.size(); ++b) {
      const Placement& plb = p.placements[nodes[b].placement];
      Rational gb = g.g(nodes[b].item->len(q));
      int best = -1;
      for (size_t a = 0; a < b; ++a) {
        const Placement& pla = p.placements[nodes[a].placement];
        if (!(pla.position[static_cast<size_t>(q)] < plb.position[static_cast<size_t>(q)])) continue;
        bool overlap = true;
        for (int j = 0; j < d && overlap; ++j) {
          if (j == q) continue;
          const Rational alo = pla.position[static_cast<size_t>(j)];
          const Rational ahi = alo + nodes[a].item->len(j);
          const Rational blo = plb.position[static_cast<size_t>(j)];
          const Rational bhi = blo + nodes[b].item->len(j);
          if (!(max(alo, blo) < min(ahi, bhi))) overlap = false;
        }
        if (!overlap) continue;
        if (best < 0 || u[a] > u[static_cast<size_t>(best)] ||
            (u[a] == u[static_cast<size_t>(best)] && nodes[a].item->id < nodes[static_cast<size_t>(best)].item->id)) {
          best = static_cast<int>(a);
        }
        if (level[a] + 1 > level[b]) level[b] = level[a] + 1;
      }
      pred[b] = best;
      u[b] = gb + (best < 0 ? Rational(0) : u[static_cast<size_t>(best)]);
      if (g.claimed_weighting) {
        input_check(u[b] <= Rational(1),
                    "transform: chain weight exceeded 1; the input packing cannot be valid");
      }
      pos_q[nodes[b].placement] = u[b] - gb;
      ChainInfo ci;
      ci.item = nodes[b].item->id;
      ci.level = level[b];
      ci.pred = best < 0 ? -1 : nodes[static_cast<size_t>(best)].item->id;
      ci.u = u[b];
      out.chains[nodes[b].placement] = ci;
    }
  }

  // New instance: g applied along axis q of every item.
  std::map<int, Item> transformed;
  for (const auto& i : items) {
    Item t = i;
    t.lengths[static_cast<size_t>(q)] = g.g(i.len(q));
    input_check(t.lengths[static_cast<size_t>(q)].is_positive(),
                "transform: g must stay positive on item lengths");
    transformed.emplace(i.id, std::move(t));
  }
  for (auto& [id, item] : transformed) {
    (void)id;
    out.items.push_back(item);
  }
  for (auto& [pi, v] : pos_q)
    out.packing.placements[pi].position[static_cast<size_t>(q)] = v;
  return out;
}

TransformedPacking weighting_transform_all(const std::vector<Item>& items, const Packing& p,
                                           const WeightingFn& g) {
  TransformedPacking cur;
  cur.items = items;
  cur.packing = p;
  for (int q = 0; q < p.dim(); ++q) {
    cur = weighting_transform_dim(cur.items, cur.packing, q, g);
  }
  return cur;
}

}  // namespace hbp
