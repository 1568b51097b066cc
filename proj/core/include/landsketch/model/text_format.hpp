#pragma once

#include <string>
#include <string_view>

#include "landsketch/model/graph.hpp"
#include "landsketch/model/layout.hpp"

namespace landsketch {

/// One "<a, relation, b>" line per edge in edge order. Nodes that are
/// isolated, carry attributes or whose species differs from
/// default_species(id) follow under a "nodes:" line as
/// "<id: species | attr; attr>" (parts omitted when not needed).
std::string linearize_graph(const SceneGraph& graph);

/// Extracts every triple from free text. Comma-less "<...>" spans before a
/// "nodes:" line are treated as prose. Throws Error(MalformedTriple),
/// Error(UnknownRelation), Error(CyclicDepth) or Error(InvalidGraph).
SceneGraph parse_triples(std::string_view text);

/// Species implied by a node id: lowercased, trailing "_<digits>" removed
/// ("Tulip_2" -> "tulip").
std::string default_species(std::string_view id);

/// "[name, [x, y, width, height], z]" per element, one per line, in element
/// order.
std::string serialize_layout(const Layout& layout);

/// Extracts every "[name, [x, y, w, h]]" tuple (optionally with a trailing
/// ", z"). Without explicit z the first listed element is the farthest.
/// Throws Error(MalformedTuple), Error(NonPositiveExtent),
/// Error(OutOfCanvas) or Error(InvalidLayout).
Layout parse_layout(std::string_view text, Canvas canvas);

}  // namespace landsketch
