#pragma once

#include <functional>

namespace rancm {

// Golden-section maximization of a unimodal function on [a, b]. Returns the
// abscissa of the maximum to within tol.
double golden_section_max(const std::function<double(double)>& f, double a,
                          double b, double tol = 1e-9, int max_iterations = 200);

}  // namespace rancm
