#pragma once

// Reference renderer for the mock backend: each canvas pixel takes the
// colour of the frontmost instance whose mask covers it, else background.

#include <array>
#include <climits>
#include <utility>
#include <vector>

#include "landsketch/illustrate/mock_backend.hpp"
#include "landsketch/model/graph.hpp"
#include "landsketch/model/layout.hpp"

namespace landsketch::testing {

inline Image painter_reference(const illustrate::CompositionPlan& plan,
                               illustrate::MockBackend& backend) {
  std::vector<illustrate::InstanceResult> inst;
  for (const auto& r : plan.instances) inst.push_back(backend.generate_instance(r, plan));
  Image out = backend.background(plan);
  for (int y = 0; y < plan.canvas.height; ++y) {
    for (int x = 0; x < plan.canvas.width; ++x) {
      int best = -1, best_z = INT_MAX;
      for (std::size_t i = 0; i < plan.instances.size(); ++i) {
        const Box& b = plan.instances[i].bbox;
        if (x < b.x || y < b.y || x >= b.x + b.width || y >= b.y + b.height) continue;
        if (!*inst[i].mask.at(x - b.x, y - b.y)) continue;
        if (plan.instances[i].z < best_z) {
          best_z = plan.instances[i].z;
          best = static_cast<int>(i);
        }
      }
      if (best < 0) continue;
      const Box& b = plan.instances[best].bbox;
      const std::uint8_t* s = inst[best].image.at(x - b.x, y - b.y);
      std::uint8_t* d = out.at(x, y);
      d[0] = s[0];
      d[1] = s[1];
      d[2] = s[2];
    }
  }
  return out;
}

/// Three plants whose boxes all overlap one another around the canvas
/// centre; z ranks taken from `z`.
inline std::pair<SceneGraph, Layout> three_overlapping(const std::array<int, 3>& z) {
  SceneGraph g({{"oak", "oak", {}}, {"boxwood", "boxwood", {}}, {"tulip", "tulip", {}}}, {});
  Layout l(Canvas{160, 120}, {{"oak", 20, 10, 90, 100, z[0]},
                              {"boxwood", 50, 40, 90, 70, z[1]},
                              {"tulip", 40, 30, 70, 80, z[2]}});
  return {g, l};
}

}  // namespace landsketch::testing
