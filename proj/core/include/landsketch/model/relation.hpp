#pragma once

#include <array>
#include <optional>
#include <string_view>

namespace landsketch {

/// The closed set of spatial relations between two plants. An edge
/// (a, Bottom, b) reads "a is located below b".
enum class RelationKind { Left, Right, Top, Bottom, Behind, InFrontOf };

inline constexpr std::array<RelationKind, 6> kAllRelations = {
    RelationKind::Left,   RelationKind::Right,  RelationKind::Top,
    RelationKind::Bottom, RelationKind::Behind, RelationKind::InFrontOf};

std::string_view to_string(RelationKind kind) noexcept;

/// Case-insensitive, whitespace-tolerant lookup of the lowercase form
/// ("in  Front of" -> InFrontOf). Returns nullopt for anything else.
std::optional<RelationKind> relation_from_string(std::string_view text);

/// Left<->Right, Top<->Bottom, Behind<->InFrontOf.
RelationKind inverse(RelationKind kind) noexcept;

/// Behind and InFrontOf constrain z only; the rest constrain x/y.
constexpr bool is_depth(RelationKind kind) noexcept {
  return kind == RelationKind::Behind || kind == RelationKind::InFrontOf;
}

}  // namespace landsketch
