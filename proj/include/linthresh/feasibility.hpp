#pragma once

#include "linthresh/matrix.hpp"

namespace linthresh {

// Decides, over the rationals, whether {x : M x = 0, x_i >= 1 for all i} is
// non-empty. By homogeneity this is equivalent to the existence of a strictly
// positive solution. Exact phase-1 simplex with Bland's rule.
bool positive_solution_exists(const RationalMatrix& m);

}  // namespace linthresh
