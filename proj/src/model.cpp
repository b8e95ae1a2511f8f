#include "rancm/model.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace rancm {

using nlohmann::json;

const char* to_string(ConflictLabel label) {
  switch (label) {
    case ConflictLabel::NoConflict: return "no_conflict";
    case ConflictLabel::Direct: return "direct";
    case ConflictLabel::Indirect: return "indirect";
    case ConflictLabel::Implicit: return "implicit";
  }
  return "no_conflict";
}

std::optional<ConflictLabel> label_from_string(std::string_view text) {
  if (text == "no_conflict") return ConflictLabel::NoConflict;
  if (text == "direct") return ConflictLabel::Direct;
  if (text == "indirect") return ConflictLabel::Indirect;
  if (text == "implicit") return ConflictLabel::Implicit;
  return std::nullopt;
}

int label_severity(ConflictLabel label) {
  switch (label) {
    case ConflictLabel::Direct: return 3;
    case ConflictLabel::Indirect: return 2;
    case ConflictLabel::Implicit: return 1;
    case ConflictLabel::NoConflict: return 0;
  }
  return 0;
}

ConflictLabel worse_label(ConflictLabel a, ConflictLabel b) {
  return label_severity(a) >= label_severity(b) ? a : b;
}

bool MappingTables::is_unassigned(IcpId p) const {
  return std::binary_search(unassigned.begin(), unassigned.end(), p);
}

int icp_count_for(int m) { return 2 * m + m / 2; }
int kpi_count_for(int p_count) { return p_count / 2; }

namespace {

template <typename Id>
bool sorted_unique(const std::vector<Id>& v) {
  return std::adjacent_find(v.begin(), v.end(),
                            [](Id a, Id b) { return !(a < b); }) == v.end();
}

template <typename Id>
bool in_range(const std::vector<Id>& v, int count) {
  return std::all_of(v.begin(), v.end(),
                     [count](Id id) { return id.v >= 0 && id.v < count; });
}

// xApp -> owned ICPs, recovered from p2x.
std::vector<std::vector<IcpId>> owned_by_xapp(const SystemModel& model) {
  std::vector<std::vector<IcpId>> owned(model.m);
  for (int p = 0; p < static_cast<int>(model.mappings.p2x.size()); ++p) {
    for (XAppId x : model.mappings.p2x[p]) {
      if (x.v >= 0 && x.v < model.m) owned[x.v].push_back(IcpId(p));
    }
  }
  return owned;
}

}  // namespace

std::vector<std::string> validate_model(const SystemModel& model) {
  std::vector<std::string> out;
  const auto& t = model.mappings;

  if (model.m < 1) out.push_back("xapp count must be at least 1");
  if (model.p_count != icp_count_for(model.m))
    out.push_back("icp count " + std::to_string(model.p_count) +
                  " does not match 2*m + m/2 for m=" + std::to_string(model.m));
  if (model.k_count != kpi_count_for(model.p_count))
    out.push_back("kpi count " + std::to_string(model.k_count) +
                  " does not match p_count/2");

  if (static_cast<int>(t.p2x.size()) != model.p_count)
    out.push_back("p2x size does not match icp count");
  if (static_cast<int>(t.p2k.size()) != model.k_count)
    out.push_back("p2k size does not match kpi count");
  if (static_cast<int>(t.k2x.size()) != model.k_count)
    out.push_back("k2x size does not match kpi count");

  if (!sorted_unique(t.unassigned))
    out.push_back("unassigned set is not sorted/unique");
  if (t.unassigned.empty())
    out.push_back("unassigned set is empty; at least one ICP must stay unassigned");
  if (!in_range(t.unassigned, model.p_count))
    out.push_back("unassigned set references an unknown ICP");

  for (int p = 0; p < static_cast<int>(t.p2x.size()); ++p) {
    const auto& owners = t.p2x[p];
    const bool unassigned = t.is_unassigned(IcpId(p));
    if (!sorted_unique(owners))
      out.push_back("owners of " + IcpId(p).name() + " are not sorted/unique");
    if (!in_range(owners, model.m))
      out.push_back("owners of " + IcpId(p).name() + " reference an unknown xApp");
    if (!owners.empty() && unassigned)
      out.push_back(IcpId(p).name() + " is both owned and unassigned");
    if (owners.empty() && !unassigned)
      out.push_back(IcpId(p).name() + " is neither owned nor unassigned");
    if (!owners.empty() && (owners.size() < 1 || owners.size() > 2))
      out.push_back(IcpId(p).name() + " has " + std::to_string(owners.size()) +
                    " owners; expected 1 or 2");
  }

  const auto owned = model.m >= 1 ? owned_by_xapp(model)
                                  : std::vector<std::vector<IcpId>>{};
  for (int k = 0; k < static_cast<int>(t.k2x.size()); ++k) {
    const auto& managers = t.k2x[k];
    if (!sorted_unique(managers))
      out.push_back("managers of " + KpiId(k).name() + " are not sorted/unique");
    if (!in_range(managers, model.m))
      out.push_back("managers of " + KpiId(k).name() + " reference an unknown xApp");
    if (managers.size() < 1 || managers.size() > 2)
      out.push_back(KpiId(k).name() + " has " + std::to_string(managers.size()) +
                    " managers; expected 1 or 2");
    if (k < static_cast<int>(t.p2k.size())) {
      const auto& group = t.p2k[k];
      if (!sorted_unique(group))
        out.push_back("group of " + KpiId(k).name() + " is not sorted/unique");
      if (!in_range(group, model.p_count))
        out.push_back("group of " + KpiId(k).name() + " references an unknown ICP");
      if (group.empty())
        out.push_back("group of " + KpiId(k).name() + " is empty");
      for (XAppId x : managers) {
        if (x.v < 0 || x.v >= model.m) continue;
        if (x.v < static_cast<int>(model.exclusive_icp.size())) {
          IcpId excl = model.exclusive_icp[x.v];
          if (!std::binary_search(group.begin(), group.end(), excl))
            out.push_back("group of " + KpiId(k).name() +
                          " is missing the exclusive ICP of manager " + x.name());
        }
      }
    }
  }

  if (static_cast<int>(model.exclusive_icp.size()) != model.m)
    out.push_back("exclusive_icp size does not match xapp count");
  if (static_cast<int>(model.exclusive_kpi.size()) != model.m)
    out.push_back("exclusive_kpi size does not match xapp count");

  {
    auto icps = model.exclusive_icp;
    std::sort(icps.begin(), icps.end());
    if (std::adjacent_find(icps.begin(), icps.end()) != icps.end())
      out.push_back("exclusive_icp is not injective");
    auto kpis = model.exclusive_kpi;
    std::sort(kpis.begin(), kpis.end());
    if (std::adjacent_find(kpis.begin(), kpis.end()) != kpis.end())
      out.push_back("exclusive_kpi is not injective");
  }

  return out;
}

std::vector<IcpId> shared_bucket(const SystemModel& model) {
  std::vector<IcpId> out;
  for (int p = 0; p < static_cast<int>(model.mappings.p2x.size()); ++p)
    if (model.mappings.p2x[p].size() == 2) out.push_back(IcpId(p));
  return out;
}

std::vector<IcpId> injected_bucket(const SystemModel& model) {
  const auto& t = model.mappings;
  std::vector<char> injected(model.p_count, 0);
  for (int k = 0; k < static_cast<int>(t.p2k.size()); ++k) {
    for (IcpId p : t.p2k[k]) {
      const auto& owners = t.p2x[p.v];
      if (owners.empty()) continue;  // unassigned ICPs never join a group
      const auto& managers = t.k2x[k];
      bool manager_owned = false;
      for (XAppId x : owners)
        if (std::binary_search(managers.begin(), managers.end(), x))
          manager_owned = true;
      if (!manager_owned) injected[p.v] = 1;
    }
  }
  std::vector<IcpId> out;
  for (int p = 0; p < model.p_count; ++p)
    if (injected[p] && t.p2x[p].size() == 1) out.push_back(IcpId(p));
  return out;
}

namespace {

template <typename Id>
json id_list_to_json(const std::vector<Id>& v) {
  json arr = json::array();
  for (Id id : v) arr.push_back(id.v);
  return arr;
}

template <typename Id>
std::vector<Id> id_list_from_json(const json& arr) {
  std::vector<Id> out;
  for (const auto& e : arr) out.push_back(Id(e.template get<int>()));
  return out;
}

// Integer-keyed maps serialize with string keys.
template <typename Id>
json table_to_json(const std::vector<std::vector<Id>>& table) {
  json obj = json::object();
  for (int i = 0; i < static_cast<int>(table.size()); ++i)
    obj[std::to_string(i)] = id_list_to_json(table[i]);
  return obj;
}

template <typename Id>
std::vector<std::vector<Id>> table_from_json(const json& obj, int count) {
  std::vector<std::vector<Id>> table(count);
  for (const auto& [key, value] : obj.items()) {
    int i = std::stoi(key);
    if (i < 0 || i >= count) throw std::runtime_error("table key out of range: " + key);
    table[i] = id_list_from_json<Id>(value);
  }
  return table;
}

template <typename Id>
json index_map_to_json(const std::vector<Id>& v) {
  json obj = json::object();
  for (int i = 0; i < static_cast<int>(v.size()); ++i)
    obj[std::to_string(i)] = v[i].v;
  return obj;
}

template <typename Id>
std::vector<Id> index_map_from_json(const json& obj, int count) {
  std::vector<Id> out(count, Id(-1));
  for (const auto& [key, value] : obj.items()) {
    int i = std::stoi(key);
    if (i < 0 || i >= count) throw std::runtime_error("map key out of range: " + key);
    out[i] = Id(value.template get<int>());
  }
  return out;
}

}  // namespace

std::string model_meta_to_json(const ModelMeta& meta) {
  const SystemModel& m = meta.model;
  json j;
  j["m"] = m.m;
  j["p_count"] = m.p_count;
  j["k_count"] = m.k_count;
  j["p2x"] = table_to_json(m.mappings.p2x);
  j["p2k"] = table_to_json(m.mappings.p2k);
  j["k2x"] = table_to_json(m.mappings.k2x);
  j["unassigned"] = id_list_to_json(m.mappings.unassigned);
  j["exclusive_icp"] = index_map_to_json(m.exclusive_icp);
  j["exclusive_kpi"] = index_map_to_json(m.exclusive_kpi);
  j["seed"] = meta.seed;
  j["share_prob"] = meta.share_prob;
  j["sigma"] = meta.sigma;
  j["profile"] = meta.profile;
  return j.dump(2);
}

ModelMeta model_meta_from_json(const std::string& text) {
  json j = json::parse(text);
  ModelMeta meta;
  SystemModel& m = meta.model;
  m.m = j.at("m").get<int>();
  m.p_count = j.at("p_count").get<int>();
  m.k_count = j.at("k_count").get<int>();
  m.mappings.p2x = table_from_json<XAppId>(j.at("p2x"), m.p_count);
  m.mappings.p2k = table_from_json<IcpId>(j.at("p2k"), m.k_count);
  m.mappings.k2x = table_from_json<XAppId>(j.at("k2x"), m.k_count);
  m.mappings.unassigned = id_list_from_json<IcpId>(j.at("unassigned"));
  m.exclusive_icp = index_map_from_json<IcpId>(j.at("exclusive_icp"), m.m);
  m.exclusive_kpi = index_map_from_json<KpiId>(j.at("exclusive_kpi"), m.m);
  meta.seed = j.at("seed").get<std::uint64_t>();
  meta.share_prob = j.at("share_prob").get<double>();
  meta.sigma = j.at("sigma").get<double>();
  meta.profile = j.at("profile").get<std::string>();
  return meta;
}

void save_model_meta(const ModelMeta& meta, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << model_meta_to_json(meta) << "\n";
}

ModelMeta load_model_meta(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return model_meta_from_json(ss.str());
}

std::string sidecar_path_for(const std::string& csv_path) {
  auto dot = csv_path.rfind(".csv");
  if (dot == std::string::npos || dot + 4 != csv_path.size())
    return csv_path + ".meta.json";
  return csv_path.substr(0, dot) + ".meta.json";
}

}  // namespace rancm
