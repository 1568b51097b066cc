#pragma once

#include <optional>
#include <string>
#include <vector>

namespace landsketch {

struct Canvas {
  int width = 512;
  int height = 512;

  bool operator==(const Canvas&) const = default;
};

/// Axis-aligned integer box, origin top-left.
struct Box {
  int x = 0;
  int y = 0;
  int width = 0;
  int height = 0;

  double center_x() const noexcept { return x + width / 2.0; }
  double center_y() const noexcept { return y + height / 2.0; }
  long long area() const noexcept {
    return static_cast<long long>(width) * height;
  }
  bool operator==(const Box&) const = default;
};

long long intersection_area(const Box& a, const Box& b) noexcept;

struct PlacedElement {
  std::string name;
  int x = 0;
  int y = 0;
  int width = 0;
  int height = 0;
  /// Depth rank; 0 is frontmost.
  int z = 0;

  Box box() const noexcept { return {x, y, width, height}; }
  double aspect_ratio() const noexcept {
    return static_cast<double>(width) / height;
  }
  bool operator==(const PlacedElement&) const = default;
};

/// A validated layout: positive extents, every box inside the canvas, unique
/// names, z ranks a permutation of 0..n-1. Throws Error(NonPositiveExtent),
/// Error(OutOfCanvas) or Error(InvalidLayout).
class Layout {
 public:
  Layout() = default;
  Layout(Canvas canvas, std::vector<PlacedElement> elements);

  const Canvas& canvas() const noexcept { return canvas_; }
  const std::vector<PlacedElement>& elements() const noexcept {
    return elements_;
  }
  std::size_t size() const noexcept { return elements_.size(); }
  bool empty() const noexcept { return elements_.empty(); }

  const PlacedElement* find(const std::string& name) const;

  bool operator==(const Layout&) const = default;

 private:
  Canvas canvas_;
  std::vector<PlacedElement> elements_;
};

/// Throws Error(InvalidArgument) unless both extents are positive.
void validate_canvas(const Canvas& canvas);

}  // namespace landsketch

#include "landsketch/model/relation.hpp"

namespace landsketch {

/// The single relation of `a` relative to `b` read off their boxes: for
/// disjoint boxes (intersection area 0) Left/Right when |dcx| >= |dcy|,
/// otherwise Top/Bottom; for overlapping boxes Behind/InFrontOf from z.
RelationKind relation_of(const PlacedElement& a, const PlacedElement& b) noexcept;

}  // namespace landsketch
