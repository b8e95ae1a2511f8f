#include "rancm/rule_engine.hpp"

#include <algorithm>
#include <chrono>

#include <json.hpp>

namespace rancm {

namespace {

inline bool contains_xapp(const std::vector<XAppId>& sorted, XAppId x) {
  return std::binary_search(sorted.begin(), sorted.end(), x);
}

inline bool contains_icp(const std::vector<IcpId>& sorted, IcpId p) {
  return std::binary_search(sorted.begin(), sorted.end(), p);
}

// Any-intersection test over two sorted sets, O(|a| + |b|).
inline bool intersects(const std::vector<XAppId>& a, const std::vector<XAppId>& b) {
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] < b[j]) ++i;
    else if (b[j] < a[i]) ++j;
    else return true;
  }
  return false;
}

}  // namespace

namespace {

// Shared decision core; `full` is null on the label-only path.
ConflictLabel annotate_impl(const SnapshotRecord& rec, const MappingTables& t,
                            AnnotationResult* full) {
  // Missing violations or a missing parameter change: nothing to classify.
  if (rec.vk.empty() || !rec.rcp) return ConflictLabel::NoConflict;

  const XAppId xi = rec.rcp->xapp;
  const IcpId pc = rec.rcp->icp;
  if (pc.v < 0 || pc.v >= static_cast<int>(t.p2x.size()))
    throw UnknownEntityError(pc.name());

  const std::vector<XAppId>& xp = t.p2x[pc.v];
  const bool pc_unassigned = t.is_unassigned(pc);
  if (full) {
    full->v_size = static_cast<int>(rec.vk.size());
    full->xp_size = static_cast<int>(xp.size());
    full->per_kpi.reserve(rec.vk.size());
  }

  ConflictLabel label = ConflictLabel::NoConflict;
  for (KpiId kpi : rec.vk) {
    if (kpi.v < 0 || kpi.v >= static_cast<int>(t.p2k.size()))
      throw UnknownEntityError(kpi.name());

    const std::vector<IcpId>& pk = t.p2k[kpi.v];
    const std::vector<XAppId>& xk = t.k2x[kpi.v];

    ConflictLabel outcome;
    if (xk.size() == 1 && xk[0] == xi) {
      // The instructing xApp is the only manager of this KPI; it can only
      // have hurt itself.
      outcome = ConflictLabel::NoConflict;
    } else if (contains_icp(pk, pc)) {
      outcome = intersects(xp, xk) ? ConflictLabel::Direct
                                   : ConflictLabel::Indirect;
    } else {
      outcome = pc_unassigned ? ConflictLabel::Implicit
                              : ConflictLabel::NoConflict;
    }
    if (full) {
      full->per_kpi.emplace_back(kpi, outcome);
      full->xk_total += static_cast<int>(xk.size());
    }
    label = worse_label(label, outcome);
  }
  return label;
}

}  // namespace

AnnotationResult annotate(const SnapshotRecord& rec, const MappingTables& t) {
  AnnotationResult res;
  res.label = annotate_impl(rec, t, &res);
  return res;
}

ConflictLabel annotate_label(const SnapshotRecord& rec,
                             const MappingTables& t) {
  return annotate_impl(rec, t, nullptr);
}

std::string stats_to_json(const ConflictStats& stats) {
  nlohmann::json j;
  j["rows"] = stats.rows;
  j["counts"]["no_conflict"] = stats.counts[0];
  j["counts"]["direct"] = stats.counts[1];
  j["counts"]["indirect"] = stats.counts[2];
  j["counts"]["implicit"] = stats.counts[3];
  j["conflict_rows"] = stats.conflict_rows();
  j["ratio"] = stats.ratio();
  j["total_ns"] = stats.total_ns;
  j["mean_ns"] = stats.mean_ns();
  return j.dump(2);
}

std::pair<std::vector<ConflictLabel>, ConflictStats> annotate_dataset(
    std::span<const SnapshotRecord> records, const MappingTables& mappings) {
  std::vector<ConflictLabel> labels;
  labels.reserve(records.size());
  ConflictStats stats;
  using clock = std::chrono::steady_clock;
  for (std::size_t i = 0; i < records.size(); ++i) {
    try {
      const auto before = clock::now();
      ConflictLabel label = annotate_label(records[i], mappings);
      const auto after = clock::now();
      labels.push_back(label);
      stats.add(label, static_cast<std::uint64_t>(
                           std::chrono::duration_cast<std::chrono::nanoseconds>(
                               after - before)
                               .count()));
    } catch (const UnknownEntityError& e) {
      throw std::runtime_error("row " + std::to_string(i) + ": " + e.what());
    }
  }
  return {std::move(labels), stats};
}

}  // namespace rancm
