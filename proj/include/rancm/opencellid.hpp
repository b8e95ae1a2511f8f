#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace rancm {

struct Cell {
  long long id = 0;
  double lat = 0.0;
  double lon = 0.0;
  double x = 0.0;       // meters east of the window center
  double y = 0.0;       // meters north of the window center
  double radius = 0.0;  // coverage radius in meters, from the range column
};

struct CellFilter {
  std::string radio = "LTE";
  int mcc = -1;  // -1 accepts any
  int net = -1;
};

struct GeoBox {
  double lat_min = 0.0, lat_max = 0.0;
  double lon_min = 0.0, lon_max = 0.0;
};

struct GeoWindow {
  double center_lat = 0.0, center_lon = 0.0;
  double width_m = 0.0;   // east-west extent
  double height_m = 0.0;  // north-south extent
};

struct IngestResult {
  std::vector<Cell> cells;  // ordered by cell id
  long rows_seen = 0;
  long rows_malformed = 0;
  long rows_filtered = 0;
  std::vector<std::string> warnings;
};

// Reads an OpenCellID-format CSV (header with at least radio, mcc, net,
// area, cell, lon, lat, range), applies the radio/mcc/net filter and the
// geographic bounding box, projects the survivors to local meters around the
// window center (equirectangular) and keeps those inside the window.
// Throws when required columns are missing; malformed rows are skipped and
// counted.
IngestResult ingest_opencellid(const std::string& path, const CellFilter& filter,
                               const GeoBox& bbox, const GeoWindow& window);

// Plain "id,x,y,radius" export.
void write_positions_csv(std::ostream& out, const std::vector<Cell>& cells);

}  // namespace rancm
