#include "landsketch/model/layout.hpp"

#include <algorithm>
#include <cstdlib>
#include <set>
#include <string>

#include "landsketch/error.hpp"
#include "landsketch/model/graph.hpp"

namespace landsketch {

long long intersection_area(const Box& a, const Box& b) noexcept {
  const long long w = std::min<long long>(a.x + a.width, b.x + b.width) -
                      std::max<long long>(a.x, b.x);
  const long long h = std::min<long long>(a.y + a.height, b.y + b.height) -
                      std::max<long long>(a.y, b.y);
  return (w > 0 && h > 0) ? w * h : 0;
}

void validate_canvas(const Canvas& canvas) {
  if (canvas.width <= 0 || canvas.height <= 0) {
    throw Error(ErrorCode::InvalidArgument,
                "canvas " + std::to_string(canvas.width) + "x" +
                    std::to_string(canvas.height));
  }
}

Layout::Layout(Canvas canvas, std::vector<PlacedElement> elements)
    : canvas_(canvas), elements_(std::move(elements)) {
  validate_canvas(canvas_);
  std::set<std::string> names;
  std::vector<bool> z_seen(elements_.size(), false);
  for (const auto& e : elements_) {
    if (!is_serializable_token(e.name)) {
      throw Error(ErrorCode::InvalidLayout, "bad element name '" + e.name + "'");
    }
    if (!names.insert(e.name).second) {
      throw Error(ErrorCode::InvalidLayout, "duplicate element '" + e.name + "'");
    }
    if (e.width <= 0 || e.height <= 0) {
      throw Error(ErrorCode::NonPositiveExtent, e.name);
    }
    if (e.x < 0 || e.y < 0 ||
        static_cast<long long>(e.x) + e.width > canvas_.width ||
        static_cast<long long>(e.y) + e.height > canvas_.height) {
      throw Error(ErrorCode::OutOfCanvas, e.name);
    }
    if (e.z < 0 || static_cast<std::size_t>(e.z) >= elements_.size() || z_seen[e.z]) {
      throw Error(ErrorCode::InvalidLayout,
                  "z ranks must be a permutation of 0..n-1 (at '" + e.name + "')");
    }
    z_seen[e.z] = true;
  }
}

const PlacedElement* Layout::find(const std::string& name) const {
  for (const auto& e : elements_) {
    if (e.name == name) return &e;
  }
  return nullptr;
}

}  // namespace landsketch

namespace landsketch {

RelationKind relation_of(const PlacedElement& a, const PlacedElement& b) noexcept {
  if (intersection_area(a.box(), b.box()) > 0) {
    return a.z > b.z ? RelationKind::Behind : RelationKind::InFrontOf;
  }
  // Work in doubled coordinates so centers stay integral.
  const long long dx = (2LL * b.x + b.width) - (2LL * a.x + a.width);
  const long long dy = (2LL * b.y + b.height) - (2LL * a.y + a.height);
  if (std::llabs(dx) >= std::llabs(dy)) {
    return dx > 0 ? RelationKind::Left : RelationKind::Right;
  }
  return dy > 0 ? RelationKind::Top : RelationKind::Bottom;
}

}  // namespace landsketch
