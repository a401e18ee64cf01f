#include "losslin/table1.hpp"

#include <array>
#include <vector>

#include "losslin/gaussian.hpp"

namespace losslin {

namespace {

struct Row {
  int segments;
  std::vector<double> negative_boundaries;
};

// Negative interior boundaries of the minimax partitions; the rest follow
// by reflection about 0 (plus b = 0 when the region count is even).
const std::array<Row, 10>& rows() {
  static const std::array<Row, 10> table = {{
    {2, {}},
    {3, {}},
    {4, {-0.55972537040866598}},
    {5, {-0.88694161422616469}},
    {6, {-1.1150661227092524, -0.33895039998485681}},
    {7, {-1.2885519651695535, -0.5798336374327524}},
    {8, {-1.4276319164676559, -0.76518484679039942, -0.24422292933460242}},
    {9, {-1.543171761227611, -0.91492447177455826, -0.43393898115503541}},
    {10, {-1.6416564064652847, -1.0399781069056502, -0.58825988231196714, -0.1911199207052059}},
    {11, {-1.7272533769965081, -1.1469713367299388, -0.71780073617025957, -0.34746174888672606}},
  }};
  return table;
}

}  // namespace

std::optional<Partition> embedded_partition(int segments) {
  for (const Row& row : rows()) {
    if (row.segments != segments) continue;
    const int n_regions = segments - 1;
    std::vector<double> interior = row.negative_boundaries;
    if (n_regions % 2 == 0) interior.push_back(0.0);
    for (auto it = row.negative_boundaries.rbegin(); it != row.negative_boundaries.rend(); ++it) {
      interior.push_back(-*it);
    }
    return Partition::from_boundaries(interior);
  }
  return std::nullopt;
}

}  // namespace losslin
