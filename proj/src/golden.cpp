#include "rancm/golden.hpp"

#include <cmath>

namespace rancm {

double golden_section_max(const std::function<double(double)>& f, double a,
                          double b, double tol, int max_iterations) {
  const double gr = (std::sqrt(5.0) + 1.0) / 2.0;
  double c = b - (b - a) / gr;
  double d = a + (b - a) / gr;
  double fc = f(c);
  double fd = f(d);
  for (int i = 0; i < max_iterations && std::abs(b - a) > tol; ++i) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - (b - a) / gr;
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + (b - a) / gr;
      fd = f(d);
    }
  }
  return (a + b) / 2.0;
}

}  // namespace rancm
