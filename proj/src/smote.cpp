#include "rancm/smote.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "rancm/model.hpp"
#include "rancm/rng.hpp"

namespace rancm {

namespace {

// Indices of the k nearest same-class rows (excluding `self`), Euclidean.
std::vector<int> nearest(const std::vector<Eigen::VectorXd>& rows,
                         const std::vector<int>& members, int self, int k) {
  std::vector<std::pair<double, int>> dist;
  dist.reserve(members.size() - 1);
  for (int idx : members) {
    if (idx == self) continue;
    dist.emplace_back((rows[idx] - rows[self]).squaredNorm(), idx);
  }
  const std::size_t keep = std::min<std::size_t>(k, dist.size());
  std::partial_sort(dist.begin(), dist.begin() + keep, dist.end());
  std::vector<int> out(keep);
  for (std::size_t i = 0; i < keep; ++i) out[i] = dist[i].second;
  return out;
}

}  // namespace

SmoteResult smote(const std::vector<Eigen::VectorXd>& rows,
                  const std::vector<int>& labels, int k_neighbors,
                  int target_count, std::uint64_t seed) {
  if (rows.size() != labels.size())
    throw std::invalid_argument("rows/labels size mismatch");
  if (k_neighbors < 1) throw std::invalid_argument("k_neighbors must be >= 1");

  constexpr int kClasses = 4;
  std::vector<std::vector<int>> by_class(kClasses);
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] < 0 || labels[i] >= kClasses)
      throw std::invalid_argument("label out of range");
    by_class[labels[i]].push_back(static_cast<int>(i));
  }
  for (int c = 0; c < kClasses; ++c)
    if (by_class[c].empty())
      throw std::runtime_error(std::string("class '") +
                               to_string(static_cast<ConflictLabel>(c)) +
                               "' has no samples");

  std::size_t majority = 0;
  for (const auto& members : by_class)
    majority = std::max(majority, members.size());
  const std::size_t target =
      target_count > 0 ? static_cast<std::size_t>(target_count) : majority;

  SmoteResult result;
  result.rows = rows;
  result.labels = labels;
  result.original_count = rows.size();

  Rng rng(seed);
  for (int c = 0; c < kClasses; ++c) {
    const auto& members = by_class[c];
    if (members.size() >= target) continue;

    // Neighbour lists are built once per class member, lazily.
    std::vector<std::vector<int>> neigh(members.size());
    std::vector<char> neigh_ready(members.size(), 0);

    for (std::size_t need = target - members.size(); need > 0; --need) {
      const std::size_t pick = uniform_index(rng, members.size());
      const int a = members[pick];
      int b = a;
      if (members.size() > 1) {
        if (!neigh_ready[pick]) {
          neigh[pick] = nearest(rows, members, a, k_neighbors);
          neigh_ready[pick] = 1;
        }
        b = neigh[pick][uniform_index(rng, neigh[pick].size())];
      }
      const double lambda = u01(rng);
      result.rows.push_back(rows[a] + lambda * (rows[b] - rows[a]));
      result.labels.push_back(c);
      result.origins.push_back({a, b, lambda});
    }
  }
  return result;
}

}  // namespace rancm
