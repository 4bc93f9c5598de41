#pragma once

#include <iosfwd>

#include "diffrakt/samplers.hpp"

namespace diffrakt {

// `# process=<label> seed=<n> window=<desc>` then one `x[,y]` row per point
// with 17 significant digits.
void write_points_csv(std::ostream& os, const PointConfiguration& config);
PointConfiguration read_points_csv(std::istream& is);

}  // namespace diffrakt
