#include "hts/hierarchy.hpp"

#include <algorithm>
#include <charconv>
#include <set>

#include "hts/error.hpp"

namespace hts {

std::string to_string(const Address& address) {
  std::string out;
  for (std::size_t k = 0; k < address.size(); ++k) {
    if (k) out += '/';
    out += std::to_string(address[k].first) + "," + std::to_string(address[k].second);
  }
  return out;
}

namespace {

int parse_index(std::string_view text, std::string_view whole) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || value < 0) {
    throw Error(ErrorCode::SyntaxError, "bad address \"" + std::string(whole) + "\"");
  }
  return value;
}

std::vector<Coord> refined(const std::vector<Coord>& lines) {
  std::vector<Coord> out;
  out.reserve(2 * lines.size());
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (i) out.push_back((lines[i - 1] + lines[i]) / 2);
    out.push_back(lines[i]);
  }
  return out;
}

std::vector<std::size_t> cut_indices(std::size_t cells, int step) {
  // s with 0 < cells - s*step <= step
  const std::size_t s = (cells + step - 1) / step - 1;
  std::vector<std::size_t> cuts;
  for (std::size_t k = 0; k <= s; ++k) cuts.push_back(k * step);
  cuts.push_back(cells);
  return cuts;
}

bool touches(const Rect& r, const Rect& domain) {
  return r.x0 == domain.x0 || r.x1 == domain.x1 || r.y0 == domain.y0 || r.y1 == domain.y1;
}

std::vector<Coord> default_lines(int count) {
  std::vector<Coord> out;
  for (int i = 0; i <= count; ++i) out.emplace_back(i);
  return out;
}

}  // namespace

Address parse_address(std::string_view text) {
  Address out;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t slash = text.find('/', start);
    if (slash == std::string_view::npos) slash = text.size();
    const std::string_view part = text.substr(start, slash - start);
    const std::size_t comma = part.find(',');
    if (comma == std::string_view::npos) throw Error(ErrorCode::SyntaxError, "bad address \"" + std::string(text) + "\"");
    out.emplace_back(parse_index(part.substr(0, comma), text), parse_index(part.substr(comma + 1), text));
    start = slash + 1;
  }
  return out;
}

int SubdomainForest::levels() const {
  int top = -1;
  for (const auto& s : subdomains) top = std::max(top, s.level);
  return top + 1;
}

std::vector<int> SubdomainForest::at_level(int level) const {
  std::vector<int> out;
  for (const auto& s : subdomains) {
    if (s.level == level) out.push_back(s.id);
  }
  return out;
}

std::optional<int> SubdomainForest::find(const Address& address) const {
  for (const auto& s : subdomains) {
    if (s.address == address) return s.id;
  }
  return std::nullopt;
}

std::vector<Subdomain> partition_subdomains(const std::vector<Coord>& xs, const std::vector<Coord>& ys, int m, int n,
                                            int level, const Rect* domain) {
  if (m < 2 || n < 2) throw Error(ErrorCode::InvalidArgument, "block partition needs m, n >= 2");
  if (xs.size() < 2 || ys.size() < 2) throw Error(ErrorCode::DegenerateRegion, "region has no cells");
  const auto cx = cut_indices(xs.size() - 1, m - 1);
  const auto cy = cut_indices(ys.size() - 1, n - 1);
  const Rect region{xs.front(), xs.back(), ys.front(), ys.back()};
  const Rect& outer = domain ? *domain : region;
  std::vector<Subdomain> out;
  for (std::size_t j = 0; j + 1 < cy.size(); ++j) {
    for (std::size_t i = 0; i + 1 < cx.size(); ++i) {
      Subdomain s;
      s.level = level;
      s.address = {{static_cast<int>(i), static_cast<int>(j)}};
      s.xs.assign(xs.begin() + cx[i], xs.begin() + cx[i + 1] + 1);
      s.ys.assign(ys.begin() + cy[j], ys.begin() + cy[j + 1] + 1);
      s.rect = Rect{s.xs.front(), s.xs.back(), s.ys.front(), s.ys.back()};
      s.boundary = touches(s.rect, outer);
      out.push_back(std::move(s));
    }
  }
  return out;
}

TMesh subdivide_subdomain(const TMesh& mesh, const Subdomain& subdomain) {
  for (int j = 0; j < subdomain.rows(); ++j) {
    for (int i = 0; i < subdomain.columns(); ++i) {
      const Rect want{subdomain.xs[i], subdomain.xs[i + 1], subdomain.ys[j], subdomain.ys[j + 1]};
      const int c = mesh.locate_cell((want.x0 + want.x1) / 2, (want.y0 + want.y1) / 2);
      if (c < 0 || !(mesh.cells()[c].rect() == want)) {
        throw Error(subdomain.subdivided ? ErrorCode::AlreadySubdivided : ErrorCode::StaleAddress,
                    "block " + to_string(subdomain.address) + " does not match the mesh cells");
      }
    }
  }
  if (subdomain.subdivided) {
    throw Error(ErrorCode::AlreadySubdivided, "block " + to_string(subdomain.address) + " is already split");
  }
  std::vector<Segment> segs = mesh.segments();
  const int level = subdomain.level + 1;
  for (int i = 0; i < subdomain.columns(); ++i) {
    segs.push_back(Segment::vertical((subdomain.xs[i] + subdomain.xs[i + 1]) / 2, subdomain.ys.front(),
                                     subdomain.ys.back(), level));
  }
  for (int j = 0; j < subdomain.rows(); ++j) {
    segs.push_back(Segment::horizontal((subdomain.ys[j] + subdomain.ys[j + 1]) / 2, subdomain.xs.front(),
                                       subdomain.xs.back(), level));
  }
  return build_tmesh(std::move(segs), mesh.extension_depth());
}

Hierarchy generate(const HierSpec& spec) {
  if (spec.m < 2 || spec.n < 2) throw Error(ErrorCode::InvalidArgument, "degrees must be at least 2");
  if (spec.p < 1 || spec.q < 1) throw Error(ErrorCode::DegenerateRegion, "p and q must be positive");
  const std::vector<Coord> xs = spec.x_coords ? *spec.x_coords : default_lines(spec.p);
  const std::vector<Coord> ys = spec.y_coords ? *spec.y_coords : default_lines(spec.q);
  auto check_lines = [](const std::vector<Coord>& v, int count, const char* axis) {
    if (static_cast<int>(v.size()) != count + 1) {
      throw Error(ErrorCode::InvalidArgument, std::string(axis) + " coordinate count does not match the cell count");
    }
    for (std::size_t i = 1; i < v.size(); ++i) {
      if (!(v[i - 1] < v[i])) throw Error(ErrorCode::InvalidArgument, std::string(axis) + " coordinates must increase");
    }
  };
  check_lines(xs, spec.p, "x");
  check_lines(ys, spec.q, "y");

  Hierarchy h;
  h.spec = spec;
  h.mesh = tensor_mesh(xs, ys, 0);
  h.forest.m = spec.m;
  h.forest.n = spec.n;
  h.forest.domain = h.mesh.domain();
  auto& blocks = h.forest.subdomains;
  auto add = [&](Subdomain s) {
    s.id = static_cast<int>(blocks.size());
    blocks.push_back(std::move(s));
  };
  for (auto& s : partition_subdomains(xs, ys, spec.m, spec.n, 0, &h.forest.domain)) add(std::move(s));

  for (std::size_t k = 0; k < spec.script.size(); ++k) {
    const int level = static_cast<int>(k);
    if (level > 0) {
      for (int parent : h.forest.at_level(level - 1)) {
        if (!blocks[parent].subdivided) continue;
        const Subdomain region = blocks[parent];
        for (auto& s : partition_subdomains(refined(region.xs), refined(region.ys), spec.m, spec.n, level,
                                            &h.forest.domain)) {
          Address a = region.address;
          a.push_back(s.address.front());
          s.address = std::move(a);
          s.parent = region.id;
          add(std::move(s));
        }
      }
    }
    std::set<Address> seen;
    for (const auto& address : spec.script[k]) {
      if (static_cast<int>(address.size()) != level + 1) {
        throw Error(ErrorCode::StaleAddress, "address " + to_string(address) + " does not have " +
                                                 std::to_string(level + 1) + " components");
      }
      if (!seen.insert(address).second) {
        throw Error(ErrorCode::AlreadySubdivided, "address " + to_string(address) + " repeated");
      }
      const auto id = h.forest.find(address);
      if (!id) throw Error(ErrorCode::StaleAddress, "no block at address " + to_string(address));
      h.mesh = subdivide_subdomain(h.mesh, blocks[*id]);
      blocks[*id].subdivided = true;
    }
  }
  mark_isolated(h.forest);
  return h;
}

bool share_side(const Rect& a, const Rect& b) {
  auto overlap = [](const Coord& lo1, const Coord& hi1, const Coord& lo2, const Coord& hi2) {
    return std::max(lo1, lo2) < std::min(hi1, hi2);
  };
  if (a.x1 == b.x0 || b.x1 == a.x0) return overlap(a.y0, a.y1, b.y0, b.y1);
  if (a.y1 == b.y0 || b.y1 == a.y0) return overlap(a.x0, a.x1, b.x0, b.x1);
  return false;
}

IsolatedCounts mark_isolated(SubdomainForest& forest) {
  IsolatedCounts counts;
  const int levels = forest.levels();
  counts.per_level.assign(std::max(levels, 0), 0);
  for (int level = 0; level < levels; ++level) {
    const auto ids = forest.at_level(level);
    for (int id : ids) {
      Subdomain& s = forest.subdomains[id];
      s.isolated = s.subdivided && !s.boundary;
      if (!s.isolated) continue;
      for (int other : ids) {
        const Subdomain& o = forest.subdomains[other];
        if (other != id && o.subdivided && share_side(s.rect, o.rect)) {
          s.isolated = false;
          break;
        }
      }
      if (s.isolated) {
        ++counts.per_level[level];
        ++counts.total;
      }
    }
  }
  return counts;
}

IsolatedCounts isolated_counts(const SubdomainForest& forest) {
  SubdomainForest copy = forest;
  return mark_isolated(copy);
}

std::vector<int> subdomain_cells(const TMesh& mesh, const Subdomain& subdomain) {
  std::vector<int> out;
  for (const auto& c : mesh.cells()) {
    if (subdomain.rect.x0 <= c.x0 && c.x1 <= subdomain.rect.x1 && subdomain.rect.y0 <= c.y0 &&
        c.y1 <= subdomain.rect.y1) {
      out.push_back(c.id);
    }
  }
  return out;
}

}  // namespace hts
