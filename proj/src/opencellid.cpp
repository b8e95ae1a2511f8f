#include "rancm/opencellid.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace rancm {

namespace {

constexpr double kEarthRadiusM = 6371000.0;
constexpr double kDegToRad = 3.14159265358979323846 / 180.0;

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (true) {
    std::size_t next = line.find(',', pos);
    if (next == std::string::npos) {
      out.push_back(line.substr(pos));
      break;
    }
    out.push_back(line.substr(pos, next - pos));
    pos = next + 1;
  }
  return out;
}

bool parse_double(const std::string& s, double& out) {
  if (s.empty()) return false;
  char* end = nullptr;
  out = std::strtod(s.c_str(), &end);
  return end == s.c_str() + s.size();
}

bool parse_ll(const std::string& s, long long& out) {
  if (s.empty()) return false;
  char* end = nullptr;
  out = std::strtoll(s.c_str(), &end, 10);
  return end == s.c_str() + s.size();
}

}  // namespace

IngestResult ingest_opencellid(const std::string& path, const CellFilter& filter,
                               const GeoBox& bbox, const GeoWindow& window) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);

  IngestResult result;
  std::string header;
  if (!std::getline(in, header)) {
    result.warnings.push_back("empty file: " + path);
    return result;
  }

  std::map<std::string, int> col;
  {
    auto names = split_csv(header);
    for (int i = 0; i < static_cast<int>(names.size()); ++i) col[names[i]] = i;
  }
  std::string missing;
  for (const char* name : {"radio", "mcc", "net", "area", "cell", "lon", "lat", "range"})
    if (!col.count(name)) missing += missing.empty() ? name : std::string(", ") + name;
  if (!missing.empty())
    throw std::runtime_error(path + ": missing required columns: " + missing);

  const double lat0 = window.center_lat * kDegToRad;
  const double meters_per_deg_lat = kEarthRadiusM * kDegToRad;
  const double meters_per_deg_lon = meters_per_deg_lat * std::cos(lat0);

  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    ++result.rows_seen;
    auto fields = split_csv(line);
    const int max_col = std::max({col["radio"], col["mcc"], col["net"],
                                  col["cell"], col["lon"], col["lat"],
                                  col["range"]});
    if (static_cast<int>(fields.size()) <= max_col) {
      ++result.rows_malformed;
      continue;
    }

    double lat = 0, lon = 0, range = 0;
    long long mcc = 0, net = 0, cell_id = 0;
    if (!parse_double(fields[col["lat"]], lat) ||
        !parse_double(fields[col["lon"]], lon) ||
        !parse_double(fields[col["range"]], range) ||
        !parse_ll(fields[col["mcc"]], mcc) ||
        !parse_ll(fields[col["net"]], net) ||
        !parse_ll(fields[col["cell"]], cell_id)) {
      ++result.rows_malformed;
      continue;
    }

    const std::string& radio = fields[col["radio"]];
    if ((!filter.radio.empty() && radio != filter.radio) ||
        (filter.mcc >= 0 && mcc != filter.mcc) ||
        (filter.net >= 0 && net != filter.net) ||
        lat < bbox.lat_min || lat > bbox.lat_max || lon < bbox.lon_min ||
        lon > bbox.lon_max) {
      ++result.rows_filtered;
      continue;
    }

    Cell cell;
    cell.id = cell_id;
    cell.lat = lat;
    cell.lon = lon;
    cell.x = (lon - window.center_lon) * meters_per_deg_lon;
    cell.y = (lat - window.center_lat) * meters_per_deg_lat;
    cell.radius = range;
    if (std::abs(cell.x) > window.width_m / 2.0 ||
        std::abs(cell.y) > window.height_m / 2.0) {
      ++result.rows_filtered;
      continue;
    }
    result.cells.push_back(cell);
  }

  if (result.rows_seen == 0) result.warnings.push_back("no data rows in " + path);
  if (result.rows_malformed > 0)
    result.warnings.push_back(std::to_string(result.rows_malformed) +
                              " malformed rows skipped");
  std::sort(result.cells.begin(), result.cells.end(),
            [](const Cell& a, const Cell& b) { return a.id < b.id; });
  return result;
}

void write_positions_csv(std::ostream& out, const std::vector<Cell>& cells) {
  out << "id,x,y,radius\n";
  char buf[160];
  for (const Cell& c : cells) {
    std::snprintf(buf, sizeof(buf), "%lld,%.3f,%.3f,%.1f\n", c.id, c.x, c.y,
                  c.radius);
    out << buf;
  }
}

}  // namespace rancm
