#include "hbp/io.hpp"

#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <utility>

#include "json.hpp"

#include "hbp/error.hpp"
#include "hbp/harmonic.hpp"

namespace hbp {

using nlohmann::json;

namespace {

json parse_json(std::istream& in, const char* what) {
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw InputError(std::string(what) + ": " + e.what());
  }
  return j;
}

[[noreturn]] void fail_at(const std::string& ptr, const std::string& msg) {
  throw InputError(ptr + ": " + msg);
}

const json& need(const json& j, const char* key, const std::string& ptr) {
  auto it = j.find(key);
  if (it == j.end()) fail_at(ptr, std::string("missing required key \"") + key + "\"");
  return *it;
}

long need_int(const json& j, const std::string& ptr) {
  if (!j.is_number_integer()) fail_at(ptr, "expected an integer");
  return j.get<long>();
}

Rational need_rational(const json& j, const std::string& ptr) {
  if (!j.is_string()) fail_at(ptr, "expected a rational string like \"1/2\" or \"0.3\"");
  auto r = Rational::parse(j.get<std::string>());
  if (!r) fail_at(ptr, "not a rational number: \"" + j.get<std::string>() + "\"");
  return *r;
}

void reject_unknown(const json& j, const std::set<std::string>& known, const std::string& ptr) {
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!known.count(it.key())) fail_at(ptr + "/" + it.key(), "unknown key");
}

json rational_pair(const Rational& r) {
  return json{{"decimal", r.decimal()}, {"exact", r.str()}};
}

json pairs_json(const std::vector<std::pair<int, int>>& v) {
  json a = json::array();
  for (auto& [s, m] : v) a.push_back(json::array({s, m}));
  return a;
}

json packing_json(const Packing& p) {
  json j;
  j["kind"] = p.kind == PackingKind::BIN ? "bin" : "strip";
  json bin = json::array();
  for (auto& l : p.bin) bin.push_back(l.str());
  j["bin"] = std::move(bin);
  json pls = json::array();
  for (auto& pl : p.placements) {
    json e;
    e["item"] = pl.item;
    e["bin"] = pl.bin;
    json pos = json::array();
    for (auto& x : pl.position) pos.push_back(x.str());
    e["position"] = std::move(pos);
    bool identity = true;
    for (size_t i = 0; i < pl.orientation.size(); ++i)
      if (pl.orientation[i] != static_cast<int>(i)) identity = false;
    if (!pl.orientation.empty() && !identity) e["orientation"] = pl.orientation;
    pls.push_back(std::move(e));
  }
  j["placements"] = std::move(pls);
  return j;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

std::ifstream open_file(const std::string& path) {
  std::ifstream in(path);
  input_check(in.good(), "cannot open file: " + path);
  return in;
}

// Items actually referenced by the solver-space packing, deduplicated,
// with their itemset indices. Every id must exist in the instance.
struct ChosenView {
  std::vector<Item> items;
  std::vector<std::pair<int, int>> pairs;  // (set index, member id)
};

ChosenView chosen_from_ids(const std::vector<Itemset>& sets, const std::vector<int>& ids) {
  std::map<int, int> set_of;
  auto universe = item_universe(sets);
  for (size_t s = 0; s < sets.size(); ++s)
    for (auto& it : sets[s]) set_of[it.id] = static_cast<int>(s);
  ChosenView out;
  std::set<int> seen;
  for (int id : ids) {
    if (!seen.insert(id).second) continue;
    auto u = universe.find(id);
    internal_check(u != universe.end(), "report: packing references an unknown member id");
    out.items.push_back(u->second);
    out.pairs.emplace_back(set_of.at(id), id);
  }
  return out;
}

std::vector<int> placement_ids(const Packing& p) {
  std::vector<int> ids;
  ids.reserve(p.placements.size());
  for (auto& pl : p.placements) ids.push_back(pl.item);
  return ids;
}

void check_clean(const Packing& emitted, const InstanceFile& file, Coverage coverage) {
  auto report = validate_packing(emitted, file.itemsets, coverage);
  internal_check(report.ok(), "report: emitted packing failed validation:\n" + report.to_string());
}

json bounds_json(const std::vector<BoundRow>& rows) {
  json a = json::array();
  for (auto& r : rows) {
    internal_check(r.pass, "report: recomputed bound failed: " + r.name + " (value " +
                               r.value.str() + ")");
    a.push_back(json{{"name", r.name}, {"pass", r.pass}, {"value", r.value.str()}});
  }
  return a;
}

void add_meta(json& j, const ReportMeta& meta, const InstanceFile& file) {
  j["solver"] = meta.solver;
  j["k"] = meta.k;
  if (meta.epsilon) j["epsilon"] = meta.epsilon->str();
  if (meta.seed) j["seed"] = *meta.seed;
  j["runtime_ms"] = meta.runtime_ms;
  j["d"] = file.d;
  j["n"] = static_cast<int>(file.itemsets.size());
  j["rotation"] = rotation_policy_name(file.rotation);
  j["validation"] = "clean";
}

// Fixed-column aggregate row; empty cells where a field does not apply.
std::string csv_report(const ReportMeta& meta, const InstanceFile& file, const std::string& bins,
                       const std::string& height, const std::string& profit, const std::string& q,
                       const std::string& volume) {
  std::ostringstream out;
  out << "solver,k,d,n,epsilon,seed,bins,height,profit,q,volume,bounds_pass,runtime_ms\n";
  out << meta.solver << ',' << meta.k << ',' << file.d << ',' << file.itemsets.size() << ','
      << (meta.epsilon ? meta.epsilon->str() : "") << ','
      << (meta.seed ? std::to_string(*meta.seed) : "") << ',' << bins << ',' << height << ','
      << profit << ',' << q << ',' << volume << ",1," << meta.runtime_ms << "\n";
  return out.str();
}

}  // namespace

bool InstanceFile::unit_bin() const {
  for (auto& l : bin)
    if (l != Rational(1)) return false;
  return true;
}

std::vector<Item> InstanceFile::flat_items() const {
  std::vector<Item> out;
  for (auto& set : itemsets)
    for (auto& it : set) out.push_back(it);
  return out;
}

int InstanceFile::member_count() const {
  int n = 0;
  for (auto& set : itemsets) n += static_cast<int>(set.size());
  return n;
}

RotationPolicy rotation_policy_from_name(const std::string& name) {
  if (name == "none") return RotationPolicy::NONE;
  if (name == "all") return RotationPolicy::ALL;
  if (name == "fix-last-axis") return RotationPolicy::FIX_LAST_AXIS;
  if (name == "explicit") return RotationPolicy::EXPLICIT;
  throw InputError("unknown rotation policy \"" + name +
                   "\" (expected none, all, fix-last-axis, or explicit)");
}

const char* rotation_policy_name(RotationPolicy p) {
  switch (p) {
    case RotationPolicy::NONE: return "none";
    case RotationPolicy::ALL: return "all";
    case RotationPolicy::FIX_LAST_AXIS: return "fix-last-axis";
    case RotationPolicy::EXPLICIT: return "explicit";
  }
  throw InternalError("unreachable rotation policy");
}

InstanceFile parse_instance(std::istream& in) {
  json j = parse_json(in, "instance");
  if (!j.is_object()) fail_at("", "instance must be a JSON object");
  reject_unknown(j, {"d", "bin", "itemsets", "rotation", "orientations"}, "");

  InstanceFile f;
  long d = need_int(need(j, "d", ""), "/d");
  if (d < 1 || d > 32) fail_at("/d", "dimension must be in 1..32");
  f.d = static_cast<int>(d);

  if (j.contains("bin")) {
    const json& b = j["bin"];
    if (!b.is_array() || b.size() != static_cast<size_t>(f.d))
      fail_at("/bin", "expected an array of exactly d rational strings");
    for (size_t i = 0; i < b.size(); ++i) {
      Rational l = need_rational(b[i], "/bin/" + std::to_string(i));
      if (!l.is_positive()) fail_at("/bin/" + std::to_string(i), "bin lengths must be positive");
      f.bin.push_back(l);
    }
  } else {
    f.bin.assign(static_cast<size_t>(f.d), Rational(1));
  }

  if (j.contains("rotation")) {
    const json& r = j["rotation"];
    if (!r.is_string()) fail_at("/rotation", "expected a policy name string");
    try {
      f.rotation = rotation_policy_from_name(r.get<std::string>());
    } catch (const InputError& e) {
      fail_at("/rotation", e.what());
    }
  }

  if (f.rotation == RotationPolicy::EXPLICIT) {
    const json& os = need(j, "orientations", "");
    if (!os.is_array() || os.empty())
      fail_at("/orientations", "explicit rotation needs a nonempty list of axis permutations");
    for (size_t i = 0; i < os.size(); ++i) {
      std::string ptr = "/orientations/" + std::to_string(i);
      const json& o = os[i];
      if (!o.is_array() || o.size() != static_cast<size_t>(f.d))
        fail_at(ptr, "expected an array of exactly d axis indices");
      Perm p;
      for (size_t a = 0; a < o.size(); ++a)
        p.push_back(static_cast<int>(need_int(o[a], ptr + "/" + std::to_string(a))));
      if (!is_perm(p, f.d)) fail_at(ptr, "not a permutation of 0..d-1");
      f.orientations.push_back(std::move(p));
    }
  } else if (j.contains("orientations")) {
    fail_at("/orientations", "only meaningful with rotation \"explicit\"");
  }

  const json& sets = need(j, "itemsets", "");
  if (!sets.is_array()) fail_at("/itemsets", "expected an array of itemsets");
  int next_id = 0;
  for (size_t s = 0; s < sets.size(); ++s) {
    std::string sptr = "/itemsets/" + std::to_string(s);
    const json& set = sets[s];
    if (!set.is_array() || set.empty()) fail_at(sptr, "an itemset is a nonempty array of items");
    Itemset parsed;
    for (size_t m = 0; m < set.size(); ++m) {
      std::string mptr = sptr + "/" + std::to_string(m);
      const json& it = set[m];
      if (!it.is_object()) fail_at(mptr, "expected an item object");
      reject_unknown(it, {"lengths", "profit"}, mptr);
      const json& ls = need(it, "lengths", mptr);
      if (!ls.is_array() || ls.size() != static_cast<size_t>(f.d))
        fail_at(mptr + "/lengths", "expected an array of exactly d rational strings");
      Item item;
      item.id = next_id++;
      for (size_t a = 0; a < ls.size(); ++a) {
        std::string aptr = mptr + "/lengths/" + std::to_string(a);
        Rational l = need_rational(ls[a], aptr);
        if (!l.is_positive()) fail_at(aptr, "lengths must be positive");
        if (f.rotation == RotationPolicy::NONE && l > f.bin[a])
          fail_at(aptr, "length " + l.str() + " outside (0,1] after bin scaling (bin axis " +
                            f.bin[a].str() + ")");
        item.lengths.push_back(l);
      }
      if (it.contains("profit")) {
        Rational p = need_rational(it["profit"], mptr + "/profit");
        if (p.is_negative()) fail_at(mptr + "/profit", "profits must be nonnegative");
        item.profit = p;
      }
      parsed.push_back(std::move(item));
    }
    f.itemsets.push_back(std::move(parsed));
  }
  return f;
}

InstanceFile parse_instance_file(const std::string& path) {
  auto in = open_file(path);
  return parse_instance(in);
}

std::string instance_to_text(const InstanceFile& f) {
  json j;
  j["d"] = f.d;
  json bin = json::array();
  for (auto& l : f.bin) bin.push_back(l.str());
  j["bin"] = std::move(bin);
  j["rotation"] = rotation_policy_name(f.rotation);
  if (f.rotation == RotationPolicy::EXPLICIT) {
    json os = json::array();
    for (auto& p : f.orientations) os.push_back(p);
    j["orientations"] = std::move(os);
  }
  json sets = json::array();
  for (auto& set : f.itemsets) {
    json js = json::array();
    for (auto& it : set) {
      json ji;
      json ls = json::array();
      for (auto& l : it.lengths) ls.push_back(l.str());
      ji["lengths"] = std::move(ls);
      if (it.profit) ji["profit"] = it.profit->str();
      js.push_back(std::move(ji));
    }
    sets.push_back(std::move(js));
  }
  j["itemsets"] = std::move(sets);
  return dump(j);
}

std::vector<Itemset> normalized_itemsets(const InstanceFile& f) {
  std::vector<Itemset> out = f.itemsets;
  for (auto& set : out)
    for (auto& it : set)
      for (int a = 0; a < f.d; ++a) it.lengths[static_cast<size_t>(a)] /= f.bin[static_cast<size_t>(a)];
  return out;
}

Packing denormalize_packing(Packing p, const InstanceFile& f) {
  internal_check(p.dim() == f.d, "denormalize: dimension mismatch");
  for (auto& pl : p.placements)
    for (int a = 0; a < f.d; ++a) pl.position[static_cast<size_t>(a)] *= f.bin[static_cast<size_t>(a)];
  p.bin = f.bin;
  p.shelves.clear();
  return p;
}

std::string packing_to_text(const Packing& p) { return dump(packing_json(p)); }

Packing parse_packing(std::istream& in) {
  json j = parse_json(in, "packing");
  if (j.is_object() && j.contains("packing")) j = j["packing"];
  if (!j.is_object()) fail_at("", "packing must be a JSON object");
  reject_unknown(j, {"kind", "bin", "placements"}, "");

  Packing p;
  const json& kind = need(j, "kind", "");
  if (!kind.is_string()) fail_at("/kind", "expected \"bin\" or \"strip\"");
  std::string ks = kind.get<std::string>();
  if (ks == "bin")
    p.kind = PackingKind::BIN;
  else if (ks == "strip")
    p.kind = PackingKind::STRIP;
  else
    fail_at("/kind", "expected \"bin\" or \"strip\"");

  const json& bin = need(j, "bin", "");
  if (!bin.is_array() || bin.empty()) fail_at("/bin", "expected a nonempty array of rational strings");
  for (size_t i = 0; i < bin.size(); ++i) {
    Rational l = need_rational(bin[i], "/bin/" + std::to_string(i));
    if (!l.is_positive()) fail_at("/bin/" + std::to_string(i), "bin lengths must be positive");
    p.bin.push_back(l);
  }

  const json& pls = need(j, "placements", "");
  if (!pls.is_array()) fail_at("/placements", "expected an array");
  for (size_t i = 0; i < pls.size(); ++i) {
    std::string ptr = "/placements/" + std::to_string(i);
    const json& e = pls[i];
    if (!e.is_object()) fail_at(ptr, "expected a placement object");
    reject_unknown(e, {"item", "bin", "position", "orientation"}, ptr);
    Placement pl;
    pl.item = static_cast<int>(need_int(need(e, "item", ptr), ptr + "/item"));
    pl.bin = static_cast<int>(need_int(need(e, "bin", ptr), ptr + "/bin"));
    if (pl.bin < 0) fail_at(ptr + "/bin", "bin index must be nonnegative");
    const json& pos = need(e, "position", ptr);
    if (!pos.is_array()) fail_at(ptr + "/position", "expected an array of rational strings");
    for (size_t a = 0; a < pos.size(); ++a)
      pl.position.push_back(need_rational(pos[a], ptr + "/position/" + std::to_string(a)));
    if (e.contains("orientation")) {
      const json& o = e["orientation"];
      if (!o.is_array()) fail_at(ptr + "/orientation", "expected an array of axis indices");
      for (size_t a = 0; a < o.size(); ++a)
        pl.orientation.push_back(
            static_cast<int>(need_int(o[a], ptr + "/orientation/" + std::to_string(a))));
    }
    p.placements.push_back(std::move(pl));
  }
  return p;
}

Packing parse_packing_file(const std::string& path) {
  auto in = open_file(path);
  return parse_packing(in);
}

std::string bp_report(const ReportMeta& meta, const InstanceFile& file,
                      const std::vector<Itemset>& solver_sets, const FullhResult& r,
                      const HarmonicContext& ctx, const Packing& emitted,
                      const std::vector<std::pair<int, int>>& assortment) {
  check_clean(emitted, file, Coverage::ASSORTMENT_ONE);
  auto chosen = chosen_from_ids(solver_sets, placement_ids(r.packing));
  internal_check(chosen.pairs.size() == solver_sets.size(),
                 "report: packing does not cover one member per itemset");
  internal_check(r.bins == r.packing.bin_count(), "report: bin count disagrees with packing");

  std::set<TypeVector> types;
  for (auto& it : chosen.items) types.insert(type_vector(it, ctx.k));
  Rational q(static_cast<long>(types.size()));
  Rational vol_f = f_volume_sum(chosen.items, ctx);
  Rational lb = lower_bound_bp(chosen.items, ctx);

  std::vector<BoundRow> rows;
  rows.push_back({"bins < q + vol_f", q + vol_f, Rational(r.bins) < q + vol_f});
  rows.push_back({"bins >= volume lower bound", lb, Rational(r.bins) >= lb});
  internal_check(Rational(r.Q) == q && r.vol_f == vol_f,
                 "report: solver bound ingredients disagree with recomputation");

  json j;
  add_meta(j, meta, file);
  j["bounds"] = bounds_json(rows);
  j["bins"] = r.bins;
  j["q"] = static_cast<long>(types.size());
  j["vol_f"] = rational_pair(vol_f);
  j["assortment"] = pairs_json(assortment);
  j["packing"] = packing_json(emitted);
  if (meta.csv)
    return csv_report(meta, file, std::to_string(r.bins), "", "", std::to_string(types.size()),
                      vol_f.str());
  return dump(j);
}

std::string sp_report(const ReportMeta& meta, const InstanceFile& file,
                      const std::vector<Itemset>& solver_sets, const StripResult& r,
                      const HarmonicContext& ctx, const Packing& emitted,
                      const std::vector<std::pair<int, int>>& assortment) {
  check_clean(emitted, file, Coverage::ASSORTMENT_ONE);
  auto chosen = chosen_from_ids(solver_sets, placement_ids(r.packing));
  internal_check(chosen.pairs.size() == solver_sets.size(),
                 "report: packing does not cover one member per itemset");

  std::set<TypeVector> types;
  for (auto& it : chosen.items) types.insert(base_type_vector(it, ctx.k));
  Rational q(static_cast<long>(types.size()));
  Rational vol_wf = base_f_volume_sum(chosen.items, ctx);
  Rational lb = lower_bound_sp(chosen.items, ctx);

  std::vector<BoundRow> rows;
  rows.push_back({"height < q + vol_wf", q + vol_wf, r.height < q + vol_wf});
  rows.push_back({"height >= volume lower bound", lb, r.height >= lb});
  internal_check(Rational(r.Q) == q && r.vol_wf == vol_wf,
                 "report: solver bound ingredients disagree with recomputation");

  json j;
  add_meta(j, meta, file);
  j["bounds"] = bounds_json(rows);
  j["height"] = rational_pair(r.height);
  j["q"] = static_cast<long>(types.size());
  j["vol_wf"] = rational_pair(vol_wf);
  j["assortment"] = pairs_json(assortment);
  j["packing"] = packing_json(emitted);
  if (meta.csv)
    return csv_report(meta, file, "", r.height.str(), "", std::to_string(types.size()),
                      vol_wf.str());
  return dump(j);
}

std::string ks_report(const ReportMeta& meta, const InstanceFile& file,
                      const std::vector<Itemset>& solver_sets, const KsResult& r,
                      const Packing& emitted,
                      const std::vector<std::pair<int, int>>& packed) {
  check_clean(emitted, file, Coverage::ASSORTMENT_AT_MOST_ONE);
  auto universe = item_universe(solver_sets);
  auto ctx3 = HarmonicContext::make(3);

  Rational packed_profit(0);
  for (auto& [s, id] : r.packed) {
    (void)s;
    auto it = universe.find(id);
    internal_check(it != universe.end() && it->second.profit, "report: bad packed member");
    packed_profit += *it->second.profit;
  }
  Rational selection_size(0);
  for (auto& [s, id] : r.selection) {
    (void)s;
    auto it = universe.find(id);
    internal_check(it != universe.end(), "report: bad selected member");
    selection_size += base_H_volume(it->second, ctx3);
  }
  long cap = 1;
  for (int a = 0; a < file.d; ++a) cap *= 3;

  std::vector<BoundRow> rows;
  rows.push_back({"profit == sum of packed profits", packed_profit, r.profit == packed_profit});
  rows.push_back({"selection size <= 1", selection_size, selection_size <= Rational(1)});
  rows.push_back({"internal bins <= 3^d", Rational(cap), r.internal_bins <= cap});

  json j;
  add_meta(j, meta, file);
  j["bounds"] = bounds_json(rows);
  j["profit"] = rational_pair(r.profit);
  j["internal_bins"] = r.internal_bins;
  j["selection"] = pairs_json(r.selection);
  j["packed"] = pairs_json(packed);
  j["packing"] = packing_json(emitted);
  if (meta.csv) return csv_report(meta, file, "", "", r.profit.str(), "", "");
  return dump(j);
}

std::string hgap_report(const ReportMeta& meta, const InstanceFile& file,
                        const std::vector<Itemset>& solver_sets, const HgapResult& r,
                        const HarmonicContext& ctx, const Packing& emitted,
                        const std::vector<std::pair<int, int>>& assortment) {
  check_clean(emitted, file, Coverage::ASSORTMENT_ONE);
  auto chosen = chosen_from_ids(solver_sets, placement_ids(r.packing));
  internal_check(chosen.pairs.size() == solver_sets.size(),
                 "report: packing does not cover one member per itemset");

  Rational m(static_cast<long>(r.fractional.bins.size()));
  Rational t(static_cast<long>(r.fractional.heights.size()));
  std::set<TypeVector> types;
  for (auto& it : chosen.items) types.insert(base_type_vector(it, ctx.k));
  Rational q(static_cast<long>(types.size()));
  Rational one(1);
  Rational bound = m / (one - r.delta) + t * (q - one) + one + r.delta * q / (one - r.delta);

  std::vector<BoundRow> rows;
  rows.push_back({"bins < m/(1-delta) + t(q-1) + 1 + delta*q/(1-delta)", bound,
                  solver_sets.empty() ? r.bins == 0 : Rational(r.bins) < bound});
  internal_check(r.bins == r.packing.bin_count(), "report: bin count disagrees with packing");

  json j;
  add_meta(j, meta, file);
  j["bounds"] = bounds_json(rows);
  j["bins"] = r.bins;
  j["delta"] = r.delta.str();
  j["q"] = static_cast<long>(types.size());
  j["truncated"] = r.truncated;
  j["plan_index"] = r.plan_index;
  json heights = json::array();
  for (auto& h : r.plan.heights) heights.push_back(h.str());
  json cfgs = json::array();
  for (auto& c : r.plan.bins) cfgs.push_back(c);
  j["plan"] = json{{"heights", std::move(heights)}, {"bins", std::move(cfgs)}};
  j["stats"] = json{{"m", r.stats.m},
                    {"t", r.stats.t},
                    {"q", r.stats.Q},
                    {"phase1_new", r.stats.phase1_new},
                    {"phase2_new", r.stats.phase2_new}};
  j["assortment"] = pairs_json(assortment);
  j["packing"] = packing_json(emitted);
  if (meta.csv)
    return csv_report(meta, file, std::to_string(r.bins), "", "", std::to_string(types.size()),
                      "");
  return dump(j);
}

}  // namespace hbp
