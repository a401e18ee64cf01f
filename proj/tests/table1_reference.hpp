#pragma once

// Published minimax partition parameters (6 significant figures) for 2..11
// lower-bound segments. Region upper limits exclude the final +inf.

#include <vector>

namespace losslin::testing {

struct ReferenceRow {
  int segments;
  double error;
  std::vector<double> b;  // finite boundaries
  std::vector<double> p;
  std::vector<double> m;
};

inline const std::vector<ReferenceRow>& table1_reference() {
  static const std::vector<ReferenceRow> rows = {
      {2, 0.398942, {}, {1}, {0}},
      {3, 0.120656, {0}, {0.5, 0.5}, {-0.797885, 0.797885}},
      {4, 0.0578441, {-0.559725, 0.559725}, {0.287833, 0.424333, 0.287833}, {-1.18505, 0, 1.18505}},
      {5, 0.0339052, {-0.886942, 0, 0.886942}, {0.187555, 0.312445, 0.312445, 0.187555},
       {-1.43535, -0.415223, 0.415223, 1.43535}},
      {6, 0.0222709, {-1.11507, -0.33895, 0.33895, 1.11507},
       {0.132411, 0.234913, 0.265353, 0.234913, 0.132411}, {-1.61805, -0.691424, 0, 0.691424, 1.61805}},
      {7, 0.0157461, {-1.28855, -0.579834, 0, 0.579834, 1.28855},
       {0.0987769, 0.182236, 0.218987, 0.218987, 0.182236, 0.0987769},
       {-1.7608, -0.896011, -0.281889, 0.281889, 0.896011, 1.7608}},
      {8, 0.0117218, {-1.42763, -0.765185, -0.244223, 0.244223, 0.765185, 1.42763},
       {0.0766989, 0.145382, 0.181448, 0.192942, 0.181448, 0.145382, 0.0766989},
       {-1.87735, -1.05723, -0.493405, 0, 0.493405, 1.05723, 1.87735}},
      {9, 0.00906529, {-1.54317, -0.914924, -0.433939, 0, 0.433939, 0.914924, 1.54317},
       {0.0613946, 0.118721, 0.152051, 0.167834, 0.167834, 0.152051, 0.118721, 0.0613946},
       {-1.97547, -1.18953, -0.661552, -0.213587, 0.213587, 0.661552, 1.18953, 1.97547}},
      {10, 0.00721992, {-1.64166, -1.03998, -0.58826, -0.19112, 0.19112, 0.58826, 1.03998, 1.64166},
       {0.0503306, 0.0988444, 0.129004, 0.146037, 0.151568, 0.146037, 0.129004, 0.0988444, 0.0503306},
       {-2.05996, -1.30127, -0.8004, -0.384597, 0, 0.384597, 0.8004, 1.30127, 2.05996}},
      {11, 0.00588597,
       {-1.72725, -1.14697, -0.717801, -0.347462, 0, 0.347462, 0.717801, 1.14697, 1.72725},
       {0.0420611, 0.0836356, 0.110743, 0.127682, 0.135878, 0.135878, 0.127682, 0.110743, 0.0836356,
        0.0420611},
       {-2.13399, -1.39768, -0.9182, -0.526575, -0.17199, 0.17199, 0.526575, 0.9182, 1.39768, 2.13399}},
  };
  return rows;
}

}  // namespace losslin::testing
