#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "hbp/fullh.hpp"
#include "hbp/hgap.hpp"
#include "hbp/knapsack.hpp"
#include "hbp/model.hpp"
#include "hbp/strip.hpp"

namespace hbp {

/// On-disk instance. Lengths are absolute (file units); member ids are
/// assigned 0..N-1 in file order at parse time and are not serialized.
/// `bin` defaults to the unit bin.
struct InstanceFile {
  int d = 0;
  std::vector<Rational> bin;
  std::vector<Itemset> itemsets;
  RotationPolicy rotation = RotationPolicy::NONE;
  std::vector<Perm> orientations;  // EXPLICIT only

  bool unit_bin() const;
  std::vector<Item> flat_items() const;
  int member_count() const;
};

/// Strict JSON schema; errors carry a JSON-pointer location. Decimal
/// strings parse exactly ("0.3" is 3/10). With rotation "none", every
/// length must fit its bin axis; other policies defer the fit check to
/// orientation expansion.
InstanceFile parse_instance(std::istream& in);
InstanceFile parse_instance_file(const std::string& path);

/// Canonical form: sorted keys, lowest-terms rationals, two-space indent,
/// trailing newline. Parsing the output reproduces it byte for byte.
std::string instance_to_text(const InstanceFile& f);

RotationPolicy rotation_policy_from_name(const std::string& name);
const char* rotation_policy_name(RotationPolicy p);

/// Solver-space copy of the itemsets: every length divided by the bin
/// length on its axis. Ids and profits are preserved.
std::vector<Itemset> normalized_itemsets(const InstanceFile& f);

/// Back to file units: positions rescaled per axis, the file bin restored.
/// Shelf annotations are dropped (their heights are solver-space values).
Packing denormalize_packing(Packing p, const InstanceFile& f);

std::string packing_to_text(const Packing& p);
/// Accepts either a bare packing object or any object with a "packing"
/// field (so solver reports validate directly).
Packing parse_packing(std::istream& in);
Packing parse_packing_file(const std::string& path);

struct ReportMeta {
  std::string solver;
  int k = 0;
  std::optional<Rational> epsilon;
  std::optional<unsigned long long> seed;
  long runtime_ms = 0;
  bool csv = false;  // aggregate one-row CSV instead of JSON
};

/// One re-derived guarantee. Builders recompute every value from the
/// packing and the instance, independently of the solver's own fields.
struct BoundRow {
  std::string name;
  Rational value;
  bool pass = false;
};

/// Report builders. Each one validates `emitted` against the file's
/// itemsets (original ids, absolute lengths) and throws InternalError if
/// the validator or any recomputed bound fails. `solver_sets` is the
/// solver-space instance actually handed to the solver (fresh member ids
/// when rotations were expanded); `assortment` uses original ids.
std::string bp_report(const ReportMeta& meta, const InstanceFile& file,
                      const std::vector<Itemset>& solver_sets, const FullhResult& r,
                      const HarmonicContext& ctx, const Packing& emitted,
                      const std::vector<std::pair<int, int>>& assortment);

std::string sp_report(const ReportMeta& meta, const InstanceFile& file,
                      const std::vector<Itemset>& solver_sets, const StripResult& r,
                      const HarmonicContext& ctx, const Packing& emitted,
                      const std::vector<std::pair<int, int>>& assortment);

std::string ks_report(const ReportMeta& meta, const InstanceFile& file,
                      const std::vector<Itemset>& solver_sets, const KsResult& r,
                      const Packing& emitted,
                      const std::vector<std::pair<int, int>>& packed);

std::string hgap_report(const ReportMeta& meta, const InstanceFile& file,
                        const std::vector<Itemset>& solver_sets, const HgapResult& r,
                        const HarmonicContext& ctx, const Packing& emitted,
                        const std::vector<std::pair<int, int>>& assortment);

}  // namespace hbp
