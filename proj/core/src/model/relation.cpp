#include "landsketch/model/relation.hpp"

#include <cctype>
#include <string>

namespace landsketch {

std::string_view to_string(RelationKind kind) noexcept {
  switch (kind) {
    case RelationKind::Left: return "left";
    case RelationKind::Right: return "right";
    case RelationKind::Top: return "top";
    case RelationKind::Bottom: return "bottom";
    case RelationKind::Behind: return "behind";
    case RelationKind::InFrontOf: return "in front of";
  }
  return "left";
}

std::optional<RelationKind> relation_from_string(std::string_view text) {
  std::string norm;
  norm.reserve(text.size());
  bool pending_space = false;
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      pending_space = !norm.empty();
      continue;
    }
    if (pending_space) norm.push_back(' ');
    pending_space = false;
    norm.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  }
  for (RelationKind kind : kAllRelations) {
    if (norm == to_string(kind)) return kind;
  }
  return std::nullopt;
}

RelationKind inverse(RelationKind kind) noexcept {
  switch (kind) {
    case RelationKind::Left: return RelationKind::Right;
    case RelationKind::Right: return RelationKind::Left;
    case RelationKind::Top: return RelationKind::Bottom;
    case RelationKind::Bottom: return RelationKind::Top;
    case RelationKind::Behind: return RelationKind::InFrontOf;
    case RelationKind::InFrontOf: return RelationKind::Behind;
  }
  return kind;
}

}  // namespace landsketch
