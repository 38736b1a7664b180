#include "hts/extension.hpp"

#include <algorithm>

#include "hts/error.hpp"

namespace hts {

std::string_view to_string(ExtensionPairing pairing) {
  return pairing == ExtensionPairing::VerticalM ? "vertical-m" : "literal";
}

ExtensionPairing parse_pairing(std::string_view text) {
  if (text == "vertical-m") return ExtensionPairing::VerticalM;
  if (text == "literal") return ExtensionPairing::Literal;
  throw Error(ErrorCode::SyntaxError, "unknown extension pairing \"" + std::string(text) + "\"");
}

std::pair<int, int> copy_counts(int m, int n, ExtensionPairing pairing) {
  return pairing == ExtensionPairing::VerticalM ? std::make_pair(m, n) : std::make_pair(n, m);
}

namespace {

void check_offsets(const std::vector<Coord>& d, int count, const char* side) {
  if (static_cast<int>(d.size()) != count) {
    throw Error(ErrorCode::InvalidArgument, std::string(side) + " placement has the wrong number of copies");
  }
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (!(d[i] > 0) || (i && !(d[i - 1] < d[i]))) {
      throw Error(ErrorCode::InvalidArgument, std::string(side) + " placement must be positive and increasing");
    }
  }
}

}  // namespace

TMesh extend(const TMesh& mesh, int m, int n, const ExtensionOptions& options) {
  if (m < 1 || n < 1) throw Error(ErrorCode::InvalidArgument, "extension needs m, n >= 1");
  const auto [cv, ch] = copy_counts(m, n, options.pairing);
  ExtensionPlacement place;
  if (options.placement) {
    place = *options.placement;
  } else {
    Coord h = mesh.domain().width();
    for (const auto& c : mesh.cells()) h = std::min({h, Coord(c.x1 - c.x0), Coord(c.y1 - c.y0)});
    for (int k = 1; k <= cv; ++k) {
      place.left.push_back(h * k);
      place.right.push_back(h * k);
    }
    for (int k = 1; k <= ch; ++k) {
      place.bottom.push_back(h * k);
      place.top.push_back(h * k);
    }
  }
  check_offsets(place.left, cv, "left");
  check_offsets(place.right, cv, "right");
  check_offsets(place.bottom, ch, "bottom");
  check_offsets(place.top, ch, "top");

  const Rect& d = mesh.domain();
  const Coord x0 = d.x0 - place.left.back(), x1 = d.x1 + place.right.back();
  const Coord y0 = d.y0 - place.bottom.back(), y1 = d.y1 + place.top.back();

  std::vector<Segment> segs;
  for (const auto& e : mesh.ledges()) {
    Segment s = e.segment();
    const bool horizontal = s.orientation == Orientation::Horizontal;
    const Coord& lo_edge = horizontal ? d.x0 : d.y0;
    const Coord& hi_edge = horizontal ? d.x1 : d.y1;
    bool grown = false;
    if (s.lo == lo_edge) {
      s.lo = horizontal ? x0 : y0;
      grown = true;
    }
    if (s.hi == hi_edge) {
      s.hi = horizontal ? x1 : y1;
      grown = true;
    }
    if (grown && e.interior) s.provenance = LineProvenance::Extension;
    segs.push_back(std::move(s));
  }
  auto copy = [&](Segment s) {
    s.provenance = LineProvenance::BoundaryCopy;
    segs.push_back(std::move(s));
  };
  for (const auto& off : place.left) copy(Segment::vertical(d.x0 - off, y0, y1, 0));
  for (const auto& off : place.right) copy(Segment::vertical(d.x1 + off, y0, y1, 0));
  for (const auto& off : place.bottom) copy(Segment::horizontal(d.y0 - off, x0, x1, 0));
  for (const auto& off : place.top) copy(Segment::horizontal(d.y1 + off, x0, x1, 0));
  return build_tmesh(std::move(segs), mesh.extension_depth() + 1);
}

}  // namespace hts
