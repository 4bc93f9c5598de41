#include "diffrakt/csv.hpp"

#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "diffrakt/error.hpp"

namespace diffrakt {

void write_points_csv(std::ostream& os, const PointConfiguration& config) {
  os << "# process=" << config.process_label << " seed=" << config.seed
     << " window=" << config.window.describe() << '\n'
     << std::setprecision(17);
  for (const Point& p : config.points) {
    os << p[0];
    for (int k = 1; k < config.dimension; ++k) os << ',' << p[k];
    os << '\n';
  }
}

PointConfiguration read_points_csv(std::istream& is) {
  std::string header;
  if (!std::getline(is, header) || header.rfind("# process=", 0) != 0)
    throw InvalidArgument("point CSV: missing '# process=' header");
  const auto seed_pos = header.find(" seed=");
  const auto window_pos = header.find(" window=");
  if (seed_pos == std::string::npos || window_pos == std::string::npos || window_pos < seed_pos)
    throw InvalidArgument("point CSV: malformed header");
  PointConfiguration config;
  config.process_label = header.substr(10, seed_pos - 10);
  config.seed = std::stoull(header.substr(seed_pos + 6, window_pos - seed_pos - 6));
  config.window = Window::parse(header.substr(window_pos + 8));
  config.dimension = config.window.dimension();
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    Point p;
    char comma = 0;
    row >> p[0];
    for (int k = 1; k < config.dimension; ++k) row >> comma >> p[k];
    if (!row) throw InvalidArgument("point CSV: malformed row '" + line + "'");
    config.points.push_back(p);
  }
  return config;
}

}  // namespace diffrakt
