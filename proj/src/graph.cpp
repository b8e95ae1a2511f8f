#include "rancm/graph.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "rancm/rule_engine.hpp"

namespace rancm {

std::vector<std::pair<int, int>> build_xp_graph(const SystemModel& model) {
  std::set<std::pair<int, int>> edges;
  for (const auto& owners : model.mappings.p2x) {
    for (std::size_t i = 0; i < owners.size(); ++i)
      for (std::size_t j = i + 1; j < owners.size(); ++j)
        edges.emplace(owners[i].v, owners[j].v);
  }
  return {edges.begin(), edges.end()};
}

std::vector<std::pair<int, int>> build_kp_graph(const SystemModel& model) {
  std::vector<std::pair<int, int>> edges;
  for (int k = 0; k < static_cast<int>(model.mappings.p2k.size()); ++k)
    for (IcpId p : model.mappings.p2k[k]) edges.emplace_back(k, p.v);
  return edges;
}

namespace {

struct GraphBuilder {
  HeteroGraph g;

  int add_node(NodeKind kind, bool is_unassigned, bool is_changed,
               bool is_violated, bool is_instructing, double value) {
    const int idx = g.node_count();
    g.kinds.push_back(kind);
    double row[kGraphFeatureWidth] = {};
    row[static_cast<int>(kind)] = 1.0;
    row[kNodeKindCount + 0] = is_unassigned ? 1.0 : 0.0;
    row[kNodeKindCount + 1] = is_changed ? 1.0 : 0.0;
    row[kNodeKindCount + 2] = is_violated ? 1.0 : 0.0;
    row[kNodeKindCount + 3] = is_instructing ? 1.0 : 0.0;
    row[kNodeKindCount + 4] = value;
    g.features.insert(g.features.end(), row, row + kGraphFeatureWidth);
    return idx;
  }

  void add_edge(int a, int b) {
    if (a == b) return;
    g.edges.emplace_back(std::min(a, b), std::max(a, b));
  }
};

}  // namespace

HeteroGraph encode_record(const SnapshotRecord& rec, const MappingTables& t) {
  GraphBuilder b;
  b.g.target = rec.label;

  if (!rec.rcp) {
    // Idle row: a lone placeholder so every row still yields a graph.
    b.add_node(NodeKind::XApp, false, false, false, false, 0.0);
    return std::move(b.g);
  }

  const XAppId xi = rec.rcp->xapp;
  const IcpId pc = rec.rcp->icp;
  if (pc.v < 0 || pc.v >= static_cast<int>(t.p2x.size()))
    throw UnknownEntityError(pc.name());
  const auto& owners = t.p2x[pc.v];
  const bool pc_unassigned = t.is_unassigned(pc);

  const int instructing_node =
      b.add_node(NodeKind::XApp, false, false, false, true, 0.0);
  const double pc_value =
      pc.v < static_cast<int>(rec.icp_values.size())
          ? rec.icp_values[pc.v] / kIcpValueScale
          : 0.0;
  const int icp_node = b.add_node(
      owners.size() == 2 ? NodeKind::SharedParameter : NodeKind::Parameter,
      pc_unassigned, true, false, false, pc_value);

  // xApps beyond the instructing one, deduplicated across X_p and every X_k.
  std::set<XAppId> other_xapps(owners.begin(), owners.end());
  for (KpiId k : rec.vk) {
    if (k.v < 0 || k.v >= static_cast<int>(t.k2x.size()))
      throw UnknownEntityError(k.name());
    other_xapps.insert(t.k2x[k.v].begin(), t.k2x[k.v].end());
  }
  other_xapps.erase(xi);

  std::map<XAppId, int> xapp_node;
  xapp_node[xi] = instructing_node;
  for (XAppId x : other_xapps)
    xapp_node[x] = b.add_node(NodeKind::XApp, false, false, false, false, 0.0);

  // Ownership edges for the changed ICP.
  for (XAppId x : owners) b.add_edge(xapp_node[x], icp_node);

  for (KpiId k : rec.vk) {
    const double k_value = k.v < static_cast<int>(rec.kpi_values.size())
                               ? rec.kpi_values[k.v]
                               : 0.0;
    const int kpi_node =
        b.add_node(NodeKind::Kpi, false, false, true, false, k_value);
    const int group_node =
        b.add_node(NodeKind::KpiParamGroup, false, false, false, false, 0.0);
    b.add_edge(group_node, kpi_node);
    if (std::binary_search(t.p2k[k.v].begin(), t.p2k[k.v].end(), pc))
      b.add_edge(group_node, icp_node);
    for (XAppId x : t.k2x[k.v]) b.add_edge(xapp_node.at(x), kpi_node);
  }

  std::sort(b.g.edges.begin(), b.g.edges.end());
  b.g.edges.erase(std::unique(b.g.edges.begin(), b.g.edges.end()),
                  b.g.edges.end());
  return std::move(b.g);
}

std::string to_dot(const HeteroGraph& g) {
  static const char* kKindName[] = {"xapp", "param", "kpi", "shared_param",
                                    "group"};
  std::ostringstream out;
  out << "graph row {\n";
  for (int i = 0; i < g.node_count(); ++i) {
    out << "  n" << i << " [label=\"" << kKindName[static_cast<int>(g.kinds[i])]
        << "\"];\n";
  }
  for (auto [a, bn] : g.edges) out << "  n" << a << " -- n" << bn << ";\n";
  out << "}\n";
  return out.str();
}

}  // namespace rancm
