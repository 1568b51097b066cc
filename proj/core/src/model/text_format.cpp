#include "landsketch/model/text_format.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <optional>
#include <set>
#include <sstream>

#include "landsketch/error.hpp"
#include "landsketch/model/knowledge.hpp"

namespace landsketch {
namespace {

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

std::string_view trim(std::string_view s) {
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

// LLMs like to quote names: "daisy", 'daisy', `daisy`.
std::string unquote(std::string_view s) {
  s = trim(s);
  while (s.size() >= 2 &&
         ((s.front() == '"' && s.back() == '"') || (s.front() == '\'' && s.back() == '\'') ||
          (s.front() == '`' && s.back() == '`'))) {
    s = trim(s.substr(1, s.size() - 2));
  }
  return std::string(s);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || s[i] == sep) {
      parts.push_back(s.substr(start, i - start));
      start = i + 1;
    }
  }
  return parts;
}

std::vector<std::string_view> lines_of(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= text.size(); ++i) {
    if (i == text.size() || text[i] == '\n') {
      std::string_view line = text.substr(start, i - start);
      if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
      lines.push_back(line);
      start = i + 1;
    }
  }
  return lines;
}

struct GraphDraft {
  std::vector<SceneNode> nodes;
  std::vector<SceneEdge> edges;
  std::set<std::tuple<std::string, int, std::string>> seen_edges;

  SceneNode& node(const std::string& id) {
    for (auto& n : nodes) {
      if (n.id == id) return n;
    }
    nodes.push_back({id, default_species(id), {}});
    return nodes.back();
  }
};

void parse_triple_span(std::string_view span, std::string_view line, GraphDraft& draft) {
  auto parts = split(span, ',');
  if (parts.size() != 3) {
    throw Error(ErrorCode::MalformedTriple, std::string(line));
  }
  std::string a = unquote(parts[0]);
  std::string rel = unquote(parts[1]);
  std::string b = unquote(parts[2]);
  if (a.empty() || rel.empty() || b.empty()) {
    throw Error(ErrorCode::MalformedTriple, std::string(line));
  }
  auto kind = relation_from_string(rel);
  if (!kind) throw Error(ErrorCode::UnknownRelation, rel);
  draft.node(a);
  draft.node(b);
  if (draft.seen_edges.emplace(a, static_cast<int>(*kind), b).second) {
    draft.edges.push_back({a, *kind, b});
  }
}

void parse_node_span(std::string_view span, std::string_view line, GraphDraft& draft) {
  auto bar = split(span, '|');
  if (bar.size() > 2) throw Error(ErrorCode::MalformedTriple, std::string(line));
  auto colon = split(bar[0], ':');
  if (colon.size() > 2) throw Error(ErrorCode::MalformedTriple, std::string(line));
  std::string id = unquote(colon[0]);
  if (id.empty()) throw Error(ErrorCode::MalformedTriple, std::string(line));
  SceneNode& node = draft.node(id);
  if (colon.size() == 2) {
    std::string species = unquote(colon[1]);
    if (species.empty()) throw Error(ErrorCode::MalformedTriple, std::string(line));
    node.species = species;
  }
  if (bar.size() == 2) {
    node.attributes.clear();
    for (auto attr : split(bar[1], ';')) {
      std::string a = unquote(attr);
      if (!a.empty()) node.attributes.push_back(std::move(a));
    }
  }
}

// Parses a decimal number at text[pos], skipping leading blanks. Accepts an
// optional sign and fraction; rejects exponents, NaN and infinity.
std::optional<double> read_number(std::string_view text, std::size_t& pos) {
  while (pos < text.size() && is_space(text[pos])) ++pos;
  std::size_t start = pos;
  if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) ++pos;
  std::size_t digits = 0;
  while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
    ++pos;
    ++digits;
  }
  if (pos < text.size() && text[pos] == '.') {
    ++pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
      ++pos;
      ++digits;
    }
  }
  if (digits == 0 || digits > 15) return std::nullopt;
  std::string token(text.substr(start, pos - start));
  return std::strtod(token.c_str(), nullptr);
}

bool expect(std::string_view text, std::size_t& pos, char c) {
  while (pos < text.size() && is_space(text[pos])) ++pos;
  if (pos < text.size() && text[pos] == c) {
    ++pos;
    return true;
  }
  return false;
}

struct TupleDraft {
  std::string name;
  long long values[4] = {0, 0, 0, 0};
  std::optional<long long> z;
};

long long to_pixels(double v) {
  // read_number caps digits at 15, so the value is finite and fits.
  return std::llround(v);
}

// Tries to read "[name, [x, y, w, h] (, z)? ]" starting at the '[' at pos.
// Returns nullopt (and leaves pos) when the text is not a tuple at all;
// throws MalformedTuple when it starts like one but breaks off.
std::optional<TupleDraft> read_tuple(std::string_view text, std::size_t& pos) {
  std::size_t cur = pos + 1;
  std::size_t comma = cur;
  while (comma < text.size() && text[comma] != ',' && text[comma] != '[' &&
         text[comma] != ']' && text[comma] != '\n') {
    ++comma;
  }
  if (comma >= text.size() || text[comma] != ',') return std::nullopt;
  std::string name = unquote(text.substr(cur, comma - cur));
  if (name.empty()) return std::nullopt;
  cur = comma + 1;
  if (!expect(text, cur, '[')) return std::nullopt;

  const std::size_t end_of_fragment = std::min(text.size(), pos + 120);
  auto malformed = [&]() {
    return Error(ErrorCode::MalformedTuple,
                 std::string(text.substr(pos, end_of_fragment - pos)));
  };

  TupleDraft draft;
  draft.name = std::move(name);
  for (int i = 0; i < 4; ++i) {
    if (i > 0 && !expect(text, cur, ',')) throw malformed();
    auto v = read_number(text, cur);
    if (!v) throw malformed();
    draft.values[i] = to_pixels(*v);
  }
  if (!expect(text, cur, ']')) throw malformed();
  if (expect(text, cur, ',')) {
    auto z = read_number(text, cur);
    if (!z || *z < 0 || *z != std::floor(*z)) throw malformed();
    draft.z = static_cast<long long>(*z);
  }
  if (!expect(text, cur, ']')) throw malformed();
  pos = cur;
  return draft;
}

}  // namespace

std::string default_species(std::string_view id) {
  std::string lower = to_lower(trim(id));
  auto underscore = lower.rfind('_');
  if (underscore != std::string::npos && underscore > 0 && underscore + 1 < lower.size()) {
    bool digits = true;
    for (std::size_t i = underscore + 1; i < lower.size(); ++i) {
      digits = digits && std::isdigit(static_cast<unsigned char>(lower[i]));
    }
    if (digits) lower.resize(underscore);
  }
  return lower;
}

std::string linearize_graph(const SceneGraph& graph) {
  std::ostringstream out;
  bool first = true;
  auto line = [&](const std::string& s) {
    if (!first) out << '\n';
    out << s;
    first = false;
  };
  std::set<std::string> connected;
  for (const auto& e : graph.edges()) {
    line("<" + e.source + ", " + std::string(to_string(e.relation)) + ", " + e.target + ">");
    connected.insert(e.source);
    connected.insert(e.target);
  }
  bool header = false;
  for (const auto& n : graph.nodes()) {
    const bool custom_species = n.species != default_species(n.id);
    if (connected.count(n.id) && !custom_species && n.attributes.empty()) continue;
    if (!header) {
      line("nodes:");
      header = true;
    }
    std::string decl = "<" + n.id;
    if (custom_species) decl += ": " + n.species;
    if (!n.attributes.empty()) {
      decl += " | ";
      for (std::size_t i = 0; i < n.attributes.size(); ++i) {
        if (i) decl += "; ";
        decl += n.attributes[i];
      }
    }
    line(decl + ">");
  }
  return out.str();
}

SceneGraph parse_triples(std::string_view text) {
  GraphDraft draft;
  bool in_nodes = false;
  for (std::string_view line : lines_of(text)) {
    if (to_lower(trim(line)) == "nodes:") {
      in_nodes = true;
      continue;
    }
    std::size_t open = std::string_view::npos;
    for (std::size_t i = 0; i < line.size(); ++i) {
      if (line[i] == '<') {
        open = i;
      } else if (line[i] == '>' && open != std::string_view::npos) {
        std::string_view span = line.substr(open + 1, i - open - 1);
        open = std::string_view::npos;
        if (span.find(',') != std::string_view::npos) {
          parse_triple_span(span, line, draft);
        } else if (in_nodes) {
          parse_node_span(span, line, draft);
        }
      }
    }
  }
  return SceneGraph(std::move(draft.nodes), std::move(draft.edges));
}

std::string serialize_layout(const Layout& layout) {
  std::ostringstream out;
  bool first = true;
  for (const auto& e : layout.elements()) {
    if (!first) out << '\n';
    first = false;
    out << '[' << e.name << ", [" << e.x << ", " << e.y << ", " << e.width << ", "
        << e.height << "], " << e.z << ']';
  }
  return out.str();
}

Layout parse_layout(std::string_view text, Canvas canvas) {
  validate_canvas(canvas);
  std::vector<TupleDraft> drafts;
  std::size_t pos = 0;
  while (pos < text.size()) {
    if (text[pos] != '[') {
      ++pos;
      continue;
    }
    std::size_t cur = pos;
    if (auto tuple = read_tuple(text, cur)) {
      drafts.push_back(std::move(*tuple));
      pos = cur;
    } else {
      ++pos;
    }
  }

  std::size_t explicit_z = 0;
  for (const auto& d : drafts) explicit_z += d.z.has_value();
  if (explicit_z != 0 && explicit_z != drafts.size()) {
    throw Error(ErrorCode::MalformedTuple, "z given for some tuples but not all");
  }

  std::vector<PlacedElement> elements;
  elements.reserve(drafts.size());
  const long long n = static_cast<long long>(drafts.size());
  for (long long i = 0; i < n; ++i) {
    const auto& d = drafts[i];
    const long long x = d.values[0], y = d.values[1], w = d.values[2], h = d.values[3];
    if (w <= 0 || h <= 0) throw Error(ErrorCode::NonPositiveExtent, d.name);
    if (x < 0 || y < 0 || x + w > canvas.width || y + h > canvas.height) {
      throw Error(ErrorCode::OutOfCanvas, d.name);
    }
    const long long z = d.z ? *d.z : n - 1 - i;
    if (z >= n) {
      throw Error(ErrorCode::InvalidLayout, "z rank out of range at '" + d.name + "'");
    }
    elements.push_back({d.name, static_cast<int>(x), static_cast<int>(y),
                        static_cast<int>(w), static_cast<int>(h), static_cast<int>(z)});
  }
  return Layout(canvas, std::move(elements));
}

}  // namespace landsketch
