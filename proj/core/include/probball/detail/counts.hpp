#pragma once

#include <cstddef>

namespace probball::detail {

/// ceil(x), except that values within relative 1e-9 of an integer round to
/// it. Sample and iteration counts such as (8 / 0.1)^2 are exact in real
/// arithmetic but not in double.
std::size_t ceil_count(double x);

}  // namespace probball::detail
