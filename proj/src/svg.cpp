#include <algorithm>
#include <cstdio>
#include <sstream>

#include "hts/cli_io.hpp"

namespace hts {

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

std::string escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::string_view level_color(std::optional<int> level) {
  static constexpr std::string_view palette[] = {"#000000", "#d62728", "#1f77b4", "#2ca02c",
                                                 "#9467bd", "#ff7f0e", "#8c564b"};
  const int l = level.value_or(0);
  if (l <= 0) return palette[0];
  return palette[1 + (l - 1) % 6];
}

std::string render_svg(const TMesh& mesh, const RenderOptions& options) {
  const Rect& d = mesh.domain();
  const double x0 = d.x0.get_d(), y0 = d.y0.get_d();
  const double w = std::max(d.width().get_d(), 1e-12), h = std::max(d.height().get_d(), 1e-12);
  const double margin = 20;
  const double scale = (options.width - 2 * margin) / w;
  const double height = h * scale + 2 * margin;
  auto px = [&](const Coord& x) { return num(margin + (x.get_d() - x0) * scale); };
  auto py = [&](const Coord& y) { return num(height - margin - (y.get_d() - y0) * scale); };

  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << num(options.width) << "\" height=\""
     << num(height) << "\">\n";
  for (const auto& r : options.supports) {
    os << "<rect x=\"" << px(r.x0) << "\" y=\"" << py(r.y1) << "\" width=\"" << num(r.width().get_d() * scale)
       << "\" height=\"" << num(r.height().get_d() * scale) << "\" fill=\"#ffd54f\" fill-opacity=\"0.5\"/>\n";
  }
  const auto& vs = mesh.vertices();
  for (const auto& [a, b] : mesh.edges()) {
    const Vertex& va = vs[a];
    const Vertex& vb = vs[b];
    const int id = va.y == vb.y ? va.horizontal_ledge : va.vertical_ledge;
    const LEdge& e = mesh.ledges()[id];
    const std::string_view color = options.color_levels ? level_color(e.level) : level_color(0);
    os << "<line x1=\"" << px(va.x) << "\" y1=\"" << py(va.y) << "\" x2=\"" << px(vb.x) << "\" y2=\"" << py(vb.y)
       << "\" stroke=\"" << color << "\" stroke-width=\"1.5\"";
    if (e.provenance != LineProvenance::Original) os << " stroke-dasharray=\"4 2\"";
    os << "/>\n";
  }
  for (const auto& [seg, text] : options.labels) {
    const Coord mid = (seg.lo + seg.hi) / 2;
    const bool horiz = seg.orientation == Orientation::Horizontal;
    os << "<text x=\"" << (horiz ? px(mid) : px(seg.fixed)) << "\" y=\"" << (horiz ? py(seg.fixed) : py(mid))
       << "\" font-size=\"10\" fill=\"#333333\">" << escape(text) << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace hts
