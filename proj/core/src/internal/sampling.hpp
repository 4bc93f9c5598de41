#pragma once

#include <string>

#include "diffrakt/samplers.hpp"

namespace diffrakt::detail {

Point uniform_in(const Window& window, Rng& rng);
PointConfiguration empty_configuration(const Window& window, std::uint64_t seed, std::string label);

}  // namespace diffrakt::detail
