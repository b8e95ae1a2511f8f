#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <vector>

namespace rancm {

// Minority oversampling by interpolation between same-class nearest
// neighbours. Originals come first in the output, synthetics after; each
// synthetic row carries its construction (a, b, lambda) so closure can be
// verified exactly.
struct SmoteResult {
  std::vector<Eigen::VectorXd> rows;
  std::vector<int> labels;
  std::size_t original_count = 0;

  struct Origin {
    int a = -1;
    int b = -1;
    double lambda = 0.0;
  };
  std::vector<Origin> origins;  // one per synthetic row
};

// Grows every class to target_count (0 = size of the largest class) using
// x_a + lambda (x_b - x_a) with x_b one of x_a's k nearest same-class rows.
// Classes of size <= k fall back to sampling among all of their rows; a
// single-row class reproduces exact copies. Throws when a class in 0..3 has
// no samples at all.
SmoteResult smote(const std::vector<Eigen::VectorXd>& rows,
                  const std::vector<int>& labels, int k_neighbors,
                  int target_count, std::uint64_t seed);

}  // namespace rancm
