#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rancm/model.hpp"
#include "rancm/record.hpp"

namespace rancm {

enum class NodeKind { XApp = 0, Parameter, Kpi, SharedParameter, KpiParamGroup };

constexpr int kNodeKindCount = 5;
// one-hot kind | is_unassigned | is_changed | is_violated | is_instructing | value
constexpr int kGraphFeatureWidth = kNodeKindCount + 4 + 1;
constexpr double kIcpValueScale = 100.0;

// Small per-row heterogeneous graph. Features are stored row-major with a
// fixed width so batches stack directly.
struct HeteroGraph {
  std::vector<NodeKind> kinds;
  std::vector<double> features;                // node_count x kGraphFeatureWidth
  std::vector<std::pair<int, int>> edges;      // undirected, first < second
  std::optional<ConflictLabel> target;

  int node_count() const { return static_cast<int>(kinds.size()); }
  const double* node_features(int i) const {
    return features.data() + static_cast<std::size_t>(i) * kGraphFeatureWidth;
  }
};

// xApp adjacency: an edge wherever two xApps own at least one common ICP.
std::vector<std::pair<int, int>> build_xp_graph(const SystemModel& model);

// Bipartite KPI-ICP adjacency: (k, p) wherever p sits in the group of k.
std::vector<std::pair<int, int>> build_kp_graph(const SystemModel& model);

// Encodes one row for the message-passing classifier. Nodes: instructing
// xApp, changed ICP, violated KPIs, one group node per violated KPI, and the
// xApps that control the ICP or manage a violated KPI. Edges restrict the
// ownership/group/management relations to those nodes. Idle rows become a
// single placeholder node.
HeteroGraph encode_record(const SnapshotRecord& rec, const MappingTables& mappings);

std::string to_dot(const HeteroGraph& g);

}  // namespace rancm
