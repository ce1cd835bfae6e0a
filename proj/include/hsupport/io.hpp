#pragma once

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <cstdio>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <type_traits>
#include <vector>

#include "hsupport/error.hpp"
#include "hsupport/geom.hpp"
#include "hsupport/model.hpp"

namespace hsupport {

// .hg text format:
//
//   # comment
//   H <n> <k>
//   V <id> <x> <y> <m> <s1> ... <sm>      (exactly n lines, ids 0..n-1 in order)
//
// Support files hold comment lines and "E <u> <v>" lines.

namespace detail {

inline std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    const std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

template <class T>
T parse_number(std::string_view tok, std::size_t line, const char* what) {
  T value{};
  const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (res.ec != std::errc() || res.ptr != tok.data() + tok.size()) {
    throw ParseError(line, std::string("bad ") + what + " '" + std::string(tok) + "'");
  }
  if constexpr (std::is_floating_point_v<T>) {
    if (!std::isfinite(value)) throw ParseError(line, std::string(what) + " is not finite");
  }
  return value;
}

// Calls fn(line_number, tokens) for every non-blank, non-comment line.
template <class Fn>
void for_each_record(std::string_view text, Fn&& fn) {
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    ++line_no;
    pos = end + 1;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    const auto tokens = split_ws(line);
    if (tokens.empty() || tokens.front().front() == '#') {
      if (end == text.size()) break;
      continue;
    }
    fn(line_no, tokens);
    if (end == text.size()) break;
  }
}

inline std::string format_coord(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

}  // namespace detail

inline Hypergraph parse_hypergraph(std::string_view text) {
  std::optional<std::size_t> n, k;
  std::vector<Point> pos;
  std::vector<std::vector<VertexId>> members;
  std::size_t last_line = 0;

  detail::for_each_record(text, [&](std::size_t line, const auto& tok) {
    last_line = line;
    if (!n) {
      if (tok[0] != "H" || tok.size() != 3) throw ParseError(line, "expected 'H <n> <k>'");
      n = detail::parse_number<std::size_t>(tok[1], line, "vertex count");
      k = detail::parse_number<std::size_t>(tok[2], line, "hyperedge count");
      members.assign(*k, {});
      return;
    }
    if (tok[0] != "V") throw ParseError(line, "expected a 'V' line");
    if (tok.size() < 5) throw ParseError(line, "vertex line too short");
    const auto id = detail::parse_number<std::size_t>(tok[1], line, "vertex id");
    if (id != pos.size()) {
      throw ParseError(line, "vertex id " + std::to_string(id) + " out of order (expected " +
                                 std::to_string(pos.size()) + ")");
    }
    if (id >= *n) throw ParseError(line, "more vertices than declared");
    const double x = detail::parse_number<double>(tok[2], line, "x coordinate");
    const double y = detail::parse_number<double>(tok[3], line, "y coordinate");
    const auto m = detail::parse_number<std::size_t>(tok[4], line, "membership count");
    if (m < 1) throw ParseError(line, "vertex must belong to at least one hyperedge");
    if (tok.size() != 5 + m) throw ParseError(line, "membership count does not match");
    for (std::size_t i = 0; i < m; ++i) {
      const auto s = detail::parse_number<std::size_t>(tok[5 + i], line, "hyperedge id");
      if (s >= *k) {
        throw ParseError(line, "hyperedge " + std::to_string(s) + " out of range (k = " +
                                   std::to_string(*k) + ")");
      }
      members[s].push_back(static_cast<VertexId>(id));
    }
    pos.push_back({x, y});
  });

  if (!n) throw ParseError(last_line + 1, "missing 'H' header");
  if (pos.size() != *n) {
    throw ParseError(last_line + 1, "expected " + std::to_string(*n) + " vertices, found " +
                                        std::to_string(pos.size()));
  }
  for (std::size_t s = 0; s < members.size(); ++s) {
    if (members[s].empty()) {
      throw ParseError(last_line, "hyperedge " + std::to_string(s) + " has no members");
    }
  }
  try {
    return Hypergraph(std::move(pos), std::move(members));
  } catch (const InvalidArgument& e) {
    throw ParseError(last_line, e.what());
  }
}

inline std::string serialize_hypergraph(const Hypergraph& h) {
  std::ostringstream out;
  out << "H " << h.num_vertices() << ' ' << h.num_hyperedges() << '\n';
  for (VertexId v = 0; v < h.num_vertices(); ++v) {
    const Point& p = h.position(v);
    const auto& mem = h.membership(v);
    out << "V " << v << ' ' << detail::format_coord(p.x) << ' ' << detail::format_coord(p.y)
        << ' ' << mem.size();
    for (HyperedgeId s : mem) out << ' ' << s;
    out << '\n';
  }
  return out.str();
}

inline SupportGraph parse_support(std::string_view text) {
  SupportGraph g;
  detail::for_each_record(text, [&](std::size_t line, const auto& tok) {
    if (tok[0] != "E" || tok.size() != 3) throw ParseError(line, "expected 'E <u> <v>'");
    const auto u = detail::parse_number<VertexId>(tok[1], line, "vertex id");
    const auto v = detail::parse_number<VertexId>(tok[2], line, "vertex id");
    if (u == v) throw ParseError(line, "self-loop edge");
    g.insert(Edge(u, v));
  });
  return g;
}

inline std::string serialize_support(const SupportGraph& g) {
  std::string out;
  for (const Edge& e : g) {
    out += "E " + std::to_string(e.u) + " " + std::to_string(e.v) + "\n";
  }
  return out;
}

// ---------------------------------------------------------------------------
// SVG
// ---------------------------------------------------------------------------

struct RenderStyle {
  std::vector<std::string> palette = {"#e41a1c", "#377eb8", "#4daf4a", "#984ea3",
                                      "#ff7f00", "#a65628", "#f781bf", "#999999"};
  double vertex_radius = 1.2;
  double ring_width = 0.6;
  double stroke_width = 0.5;
  double offset_step = 0.6;
  double margin = 5.0;
};

/// Standalone SVG. Each vertex is a dark dot wrapped in one ring per
/// containing hyperedge (palette order, inside out). Each support edge is
/// stroked once per hyperedge whose induced subgraph uses it, shifted
/// sideways by offset_step times the rank of that hyperedge among the users.
inline std::string render_svg(const Hypergraph& h, const SupportGraph* g,
                              const RenderStyle& style = {}) {
  if (style.palette.size() < h.num_hyperedges()) {
    throw InvalidArgument("palette has " + std::to_string(style.palette.size()) +
                          " colors for " + std::to_string(h.num_hyperedges()) + " hyperedges");
  }
  if (g) g->check_vertices(h);
  const auto fmt = [](double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", x);
    return std::string(buf);
  };

  double min_x = 0, max_x = 0, min_y = 0, max_y = 0;
  for (std::size_t v = 0; v < h.num_vertices(); ++v) {
    const Point& p = h.positions()[v];
    if (v == 0 || p.x < min_x) min_x = p.x;
    if (v == 0 || p.x > max_x) max_x = p.x;
    if (v == 0 || p.y < min_y) min_y = p.y;
    if (v == 0 || p.y > max_y) max_y = p.y;
  }
  const double pad = style.margin;
  const double width = max_x - min_x + 2 * pad;
  const double height = max_y - min_y + 2 * pad;
  // SVG's y axis points down; flip so the drawing keeps the input orientation.
  const auto sx = [&](double x) { return x - min_x + pad; };
  const auto sy = [&](double y) { return max_y - y + pad; };

  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " << fmt(width) << ' '
      << fmt(height) << "\" width=\"" << fmt(width * 8) << "\" height=\"" << fmt(height * 8)
      << "\">\n";
  out << "<rect x=\"0\" y=\"0\" width=\"" << fmt(width) << "\" height=\"" << fmt(height)
      << "\" fill=\"white\"/>\n";

  if (g) {
    out << "<g id=\"edges\" fill=\"none\" stroke-linecap=\"round\" stroke-width=\""
        << fmt(style.stroke_width) << "\">\n";
    for (const Edge& e : *g) {
      const Point& a = h.position(e.u);
      const Point& b = h.position(e.v);
      const double len = distance(a, b);
      const double nx = -(b.y - a.y) / len;
      const double ny = (b.x - a.x) / len;
      std::size_t rank = 0;
      for (HyperedgeId s = 0; s < h.num_hyperedges(); ++s) {
        if (!h.contains(s, e.u) || !h.contains(s, e.v)) continue;
        const double off = style.offset_step * static_cast<double>(rank++);
        out << "<line x1=\"" << fmt(sx(a.x + nx * off)) << "\" y1=\"" << fmt(sy(a.y + ny * off))
            << "\" x2=\"" << fmt(sx(b.x + nx * off)) << "\" y2=\"" << fmt(sy(b.y + ny * off))
            << "\" stroke=\"" << style.palette[s] << "\"/>\n";
      }
    }
    out << "</g>\n";
  }

  out << "<g id=\"vertices\">\n";
  for (VertexId v = 0; v < h.num_vertices(); ++v) {
    const Point& p = h.position(v);
    const auto& mem = h.membership(v);
    // Outermost ring first so inner ones stay visible.
    for (std::size_t i = mem.size(); i-- > 0;) {
      const double r = style.vertex_radius + style.ring_width * static_cast<double>(i + 1);
      out << "<circle cx=\"" << fmt(sx(p.x)) << "\" cy=\"" << fmt(sy(p.y)) << "\" r=\""
          << fmt(r) << "\" fill=\"" << style.palette[mem[i]] << "\"/>\n";
    }
    out << "<circle cx=\"" << fmt(sx(p.x)) << "\" cy=\"" << fmt(sy(p.y)) << "\" r=\""
        << fmt(style.vertex_radius) << "\" fill=\"#222222\"/>\n";
  }
  out << "</g>\n</svg>\n";
  return out.str();
}

}  // namespace hsupport
