#pragma once

#include <cstdint>
#include <vector>

namespace warp {

using Row = std::vector<std::int64_t>;

} // namespace warp
