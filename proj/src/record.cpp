#include "rancm/record.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <set>
#include <stdexcept>
#include <cctype>

namespace rancm {

namespace {

void append_double(std::string& line, double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  line += buf;
}

template <typename Id>
void append_id_list(std::string& line, const std::vector<Id>& ids) {
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (i) line += ';';
    line += std::to_string(ids[i].v);
  }
}

template <typename Id>
std::vector<Id> parse_id_list(const std::string& field) {
  std::vector<Id> out;
  std::size_t pos = 0;
  while (pos < field.size()) {
    std::size_t next = field.find(';', pos);
    if (next == std::string::npos) next = field.size();
    out.push_back(Id(std::stoi(field.substr(pos, next - pos))));
    pos = next + 1;
  }
  return out;
}

}  // namespace

void write_csv_header(std::ostream& out, int p_count, int k_count) {
  std::string line = "t,rcp_xapp,rcp_icp";
  for (int i = 0; i < p_count; ++i) line += ",p_" + std::to_string(i);
  for (int i = 0; i < k_count; ++i) line += ",k_" + std::to_string(i);
  for (int i = 0; i < k_count; ++i) line += ",sla_" + std::to_string(i);
  line += ",vk,p_k,x_k,x_p,label\n";
  out << line;
}

void write_csv_row(std::ostream& out, const SnapshotRecord& rec,
                   const MappingTables& mappings) {
  std::string line;
  line.reserve(64 + 20 * (rec.icp_values.size() + 2 * rec.kpi_values.size()));
  line += std::to_string(rec.t);
  line += ',';
  if (rec.rcp) line += std::to_string(rec.rcp->xapp.v);
  line += ',';
  if (rec.rcp) line += std::to_string(rec.rcp->icp.v);
  for (double v : rec.icp_values) {
    line += ',';
    append_double(line, v);
  }
  for (double v : rec.kpi_values) {
    line += ',';
    append_double(line, v);
  }
  for (double v : rec.sla) {
    line += ',';
    append_double(line, v);
  }

  line += ',';
  append_id_list(line, rec.vk);

  // Mapping columns: group / managers over the violated KPIs, owners of the
  // changed ICP. Derived, so a reader can re-check labels without the sidecar.
  std::set<IcpId> pk;
  std::set<XAppId> xk;
  for (KpiId k : rec.vk) {
    if (k.v >= 0 && k.v < static_cast<int>(mappings.p2k.size())) {
      pk.insert(mappings.p2k[k.v].begin(), mappings.p2k[k.v].end());
      xk.insert(mappings.k2x[k.v].begin(), mappings.k2x[k.v].end());
    }
  }
  line += ',';
  append_id_list(line, std::vector<IcpId>(pk.begin(), pk.end()));
  line += ',';
  append_id_list(line, std::vector<XAppId>(xk.begin(), xk.end()));
  line += ',';
  if (rec.rcp && rec.rcp->icp.v >= 0 &&
      rec.rcp->icp.v < static_cast<int>(mappings.p2x.size()))
    append_id_list(line, mappings.p2x[rec.rcp->icp.v]);
  line += ',';
  line += to_string(rec.label);
  line += '\n';
  out << line;
}

DatasetReader::DatasetReader(const std::string& path) : in_(path), path_(path) {
  if (!in_) throw std::runtime_error("cannot read dataset " + path);
  std::string header;
  if (!std::getline(in_, header))
    throw std::runtime_error("dataset " + path + " is empty");
  auto indexed = [](const std::string& col, const char* prefix) {
    const std::size_t n = std::strlen(prefix);
    if (col.size() <= n || col.compare(0, n, prefix) != 0) return false;
    return std::all_of(col.begin() + n, col.end(),
                       [](unsigned char c) { return std::isdigit(c); });
  };
  std::size_t pos = 0;
  while (pos < header.size()) {
    std::size_t next = header.find(',', pos);
    if (next == std::string::npos) next = header.size();
    std::string col = header.substr(pos, next - pos);
    if (indexed(col, "p_")) ++p_count_;
    else if (indexed(col, "k_")) ++k_count_;
    pos = next + 1;
  }
  if (p_count_ == 0 || k_count_ == 0)
    throw std::runtime_error("dataset " + path + " has no p_/k_ columns");
}

std::optional<SnapshotRecord> DatasetReader::next() {
  std::string line;
  if (!std::getline(in_, line)) return std::nullopt;
  ++row_;

  std::vector<std::string> fields;
  fields.reserve(8 + p_count_ + 2 * k_count_);
  std::size_t pos = 0;
  while (true) {
    std::size_t next = line.find(',', pos);
    if (next == std::string::npos) {
      fields.push_back(line.substr(pos));
      break;
    }
    fields.push_back(line.substr(pos, next - pos));
    pos = next + 1;
  }

  const std::size_t expected = 3 + p_count_ + 2 * k_count_ + 5;
  if (fields.size() != expected)
    throw std::runtime_error(path_ + ":" + std::to_string(row_) +
                             ": expected " + std::to_string(expected) +
                             " fields, got " + std::to_string(fields.size()));

  SnapshotRecord rec;
  rec.t = std::stol(fields[0]);
  if (!fields[1].empty() != !fields[2].empty())
    throw std::runtime_error(path_ + ":" + std::to_string(row_) +
                             ": rcp_xapp and rcp_icp must be both set or both empty");
  if (!fields[1].empty())
    rec.rcp = Rcp{XAppId(std::stoi(fields[1])), IcpId(std::stoi(fields[2]))};

  std::size_t f = 3;
  rec.icp_values.resize(p_count_);
  for (int i = 0; i < p_count_; ++i) rec.icp_values[i] = std::strtod(fields[f++].c_str(), nullptr);
  rec.kpi_values.resize(k_count_);
  for (int i = 0; i < k_count_; ++i) rec.kpi_values[i] = std::strtod(fields[f++].c_str(), nullptr);
  rec.sla.resize(k_count_);
  for (int i = 0; i < k_count_; ++i) rec.sla[i] = std::strtod(fields[f++].c_str(), nullptr);

  rec.vk = parse_id_list<KpiId>(fields[f]);
  f += 4;  // skip derived p_k, x_k, x_p

  auto label = label_from_string(fields[f]);
  if (!label)
    throw std::runtime_error(path_ + ":" + std::to_string(row_) +
                             ": unknown label '" + fields[f] + "'");
  rec.label = *label;
  return rec;
}

}  // namespace rancm
