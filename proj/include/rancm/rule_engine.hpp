#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "rancm/model.hpp"
#include "rancm/record.hpp"

namespace rancm {

struct UnknownEntityError : std::runtime_error {
  std::string entity;
  explicit UnknownEntityError(std::string name)
      : std::runtime_error("unknown entity " + name), entity(std::move(name)) {}
};

// Outcome of classifying one row. `label` is the worst per-KPI outcome;
// the touched-set sizes feed the complexity benchmarks.
struct AnnotationResult {
  ConflictLabel label = ConflictLabel::NoConflict;
  std::vector<std::pair<KpiId, ConflictLabel>> per_kpi;  // in vk order
  int v_size = 0;
  int xk_total = 0;  // summed |X_k| over violated KPIs
  int xp_size = 0;   // |X_p| of the changed ICP
};

// Deterministic rule-based classification of a single row. Decision order:
//   1. missing VK / RCP            -> NoConflict for the whole row
//   2. instructing xApp is the sole manager of the KPI -> NoConflict, next KPI
//   3. changed ICP inside the KPI group:
//        controllers intersect managers -> Direct, else Indirect
//   4. changed ICP outside the group:
//        unassigned -> Implicit, else NoConflict
// Pure function of (record, mappings); throws UnknownEntityError when the
// record references an id outside the tables.
AnnotationResult annotate(const SnapshotRecord& rec, const MappingTables& mappings);

// Same decision procedure without materializing per-KPI outcomes; the
// allocation-free path used for bulk annotation inside the generator.
ConflictLabel annotate_label(const SnapshotRecord& rec,
                             const MappingTables& mappings);

struct ConflictStats {
  std::uint64_t rows = 0;
  std::uint64_t counts[4] = {0, 0, 0, 0};  // indexed by ConflictLabel
  std::uint64_t total_ns = 0;

  std::uint64_t conflict_rows() const {
    return counts[1] + counts[2] + counts[3];
  }
  double ratio() const {
    return rows == 0 ? 0.0 : static_cast<double>(conflict_rows()) / static_cast<double>(rows);
  }
  double mean_ns() const {
    return rows == 0 ? 0.0 : static_cast<double>(total_ns) / static_cast<double>(rows);
  }

  void add(ConflictLabel label, std::uint64_t ns) {
    ++rows;
    ++counts[static_cast<int>(label)];
    total_ns += ns;
  }
};

std::string stats_to_json(const ConflictStats& stats);

// Annotates every row; wall-clock per row is accumulated into the stats.
// Errors are rethrown with the row index prepended.
std::pair<std::vector<ConflictLabel>, ConflictStats> annotate_dataset(
    std::span<const SnapshotRecord> records, const MappingTables& mappings);

}  // namespace rancm
