#include "hts/mesh.hpp"

#include <algorithm>
#include <numeric>
#include <tuple>

#include "hts/error.hpp"

namespace hts {

Segment Segment::horizontal(Coord y, Coord x0, Coord x1, std::optional<int> level) {
  return Segment{Orientation::Horizontal, std::move(y), std::move(x0), std::move(x1), level,
                 LineProvenance::Original};
}

Segment Segment::vertical(Coord x, Coord y0, Coord y1, std::optional<int> level) {
  return Segment{Orientation::Vertical, std::move(x), std::move(y0), std::move(y1), level,
                 LineProvenance::Original};
}

Segment LEdge::segment() const { return Segment{orientation, fixed, lo, hi, level, provenance}; }

namespace {

std::optional<int> merged_level(const std::optional<int>& a, const std::optional<int>& b) {
  if (!a) return b;
  if (!b) return a;
  return std::min(*a, *b);
}

// Sorts a colinear group by lo and merges touching pieces into maximal
// segments. Overlapping coverage is an error.
std::vector<Segment> merge_group(std::vector<Segment> group) {
  std::sort(group.begin(), group.end(), [](const Segment& a, const Segment& b) { return a.lo < b.lo; });
  std::vector<Segment> out;
  for (auto& s : group) {
    if (!out.empty() && s.lo < out.back().hi) {
      throw Error(ErrorCode::Overlap, std::string(s.orientation == Orientation::Horizontal ? "y = " : "x = ") +
                                          to_string(s.fixed) + " is covered twice near " + to_string(s.lo));
    }
    if (!out.empty() && s.lo == out.back().hi) {
      Segment& cur = out.back();
      cur.hi = s.hi;
      cur.level = merged_level(cur.level, s.level);
      if (s.provenance == LineProvenance::Original) cur.provenance = LineProvenance::Original;
    } else {
      out.push_back(std::move(s));
    }
  }
  return out;
}

struct UnionFind {
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
  std::vector<std::size_t> parent;
};

// Index i with xs[i] <= x < xs[i+1] (dir > 0) or xs[i] < x <= xs[i+1] (dir < 0).
int interval_index(const std::vector<Coord>& xs, const Coord& x, int dir) {
  if (xs.size() < 2) return -1;
  if (dir > 0) {
    auto it = std::upper_bound(xs.begin(), xs.end(), x);
    if (it == xs.begin() || it == xs.end()) return -1;
    return static_cast<int>(it - xs.begin()) - 1;
  }
  auto it = std::lower_bound(xs.begin(), xs.end(), x);
  if (it == xs.begin() || it == xs.end()) return -1;
  return static_cast<int>(it - xs.begin()) - 1;
}

}  // namespace

TMesh build_tmesh(std::vector<Segment> segments, int extension_depth) {
  std::map<Coord, std::vector<Segment>> hgroups, vgroups;
  for (auto& s : segments) {
    if (!(s.lo < s.hi)) {
      throw Error(ErrorCode::NotRegular, "degenerate segment at " + to_string(s.fixed));
    }
    auto& groups = s.orientation == Orientation::Horizontal ? hgroups : vgroups;
    groups[s.fixed].push_back(std::move(s));
  }
  if (hgroups.size() < 2 || vgroups.size() < 2) throw Error(ErrorCode::NotRegular, "mesh needs a boundary rectangle");

  std::vector<Segment> horiz, vert;
  for (auto& [y, g] : hgroups) {
    for (auto& s : merge_group(std::move(g))) horiz.push_back(std::move(s));
  }
  for (auto& [x, g] : vgroups) {
    for (auto& s : merge_group(std::move(g))) vert.push_back(std::move(s));
  }

  const Coord xmin = vgroups.begin()->first, xmax = vgroups.rbegin()->first;
  const Coord ymin = hgroups.begin()->first, ymax = hgroups.rbegin()->first;

  auto is_full = [](const std::vector<Segment>& lines, const Coord& fixed, const Coord& lo, const Coord& hi) {
    int count = 0;
    bool full = false;
    for (const auto& s : lines) {
      if (s.fixed != fixed) continue;
      ++count;
      full = s.lo == lo && s.hi == hi;
    }
    return count == 1 && full;
  };
  if (!is_full(vert, xmin, ymin, ymax) || !is_full(vert, xmax, ymin, ymax) || !is_full(horiz, ymin, xmin, xmax) ||
      !is_full(horiz, ymax, xmin, xmax)) {
    throw Error(ErrorCode::NotRegular, "boundary lines do not form a rectangle");
  }
  for (const auto& s : horiz) {
    if (s.lo < xmin || s.hi > xmax) throw Error(ErrorCode::NotRegular, "segment leaves the boundary rectangle");
  }
  for (const auto& s : vert) {
    if (s.lo < ymin || s.hi > ymax) throw Error(ErrorCode::NotRegular, "segment leaves the boundary rectangle");
  }

  // line position -> indices into vert, sorted by lo
  std::vector<Coord> vx;
  std::vector<std::vector<std::size_t>> vline;
  for (std::size_t i = 0; i < vert.size(); ++i) {
    if (vx.empty() || vx.back() != vert[i].fixed) {
      vx.push_back(vert[i].fixed);
      vline.emplace_back();
    }
    vline.back().push_back(i);
  }

  struct Point {
    Coord x, y;
    std::size_t h, v;
    int valence;
  };
  std::vector<Point> points;
  std::vector<std::pair<bool, bool>> h_ends(horiz.size()), v_ends(vert.size());
  for (std::size_t hi = 0; hi < horiz.size(); ++hi) {
    const Segment& h = horiz[hi];
    auto first = std::lower_bound(vx.begin(), vx.end(), h.lo);
    for (auto it = first; it != vx.end() && *it <= h.hi; ++it) {
      const auto& line = vline[it - vx.begin()];
      for (std::size_t vi : line) {
        const Segment& v = vert[vi];
        if (v.lo <= h.fixed && h.fixed <= v.hi) {
          const Coord& x = v.fixed;
          const Coord& y = h.fixed;
          int valence = (h.lo < x) + (x < h.hi) + (v.lo < y) + (y < v.hi);
          points.push_back(Point{x, y, hi, vi, valence});
          if (x == h.lo) h_ends[hi].first = true;
          if (x == h.hi) h_ends[hi].second = true;
          if (y == v.lo) v_ends[vi].first = true;
          if (y == v.hi) v_ends[vi].second = true;
          break;
        }
      }
    }
  }
  for (std::size_t i = 0; i < horiz.size(); ++i) {
    if (!h_ends[i].first || !h_ends[i].second) {
      throw Error(ErrorCode::DanglingSegment, "horizontal segment at y = " + to_string(horiz[i].fixed) +
                                                  " has a free end");
    }
  }
  for (std::size_t i = 0; i < vert.size(); ++i) {
    if (!v_ends[i].first || !v_ends[i].second) {
      throw Error(ErrorCode::DanglingSegment, "vertical segment at x = " + to_string(vert[i].fixed) +
                                                  " has a free end");
    }
  }

  std::sort(points.begin(), points.end(), [](const Point& a, const Point& b) {
    return std::tie(a.y, a.x) < std::tie(b.y, b.x);
  });

  TMesh mesh;
  mesh.domain_ = Rect{xmin, xmax, ymin, ymax};
  mesh.extension_depth_ = extension_depth;
  const std::size_t nh = horiz.size();

  std::vector<std::vector<int>> on_ledge(nh + vert.size());
  mesh.vertices_.reserve(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    const Point& p = points[i];
    Vertex v;
    v.id = static_cast<int>(i);
    v.x = p.x;
    v.y = p.y;
    v.valence = p.valence;
    v.horizontal_ledge = static_cast<int>(p.h);
    v.vertical_ledge = static_cast<int>(nh + p.v);
    const bool on_boundary = p.x == xmin || p.x == xmax || p.y == ymin || p.y == ymax;
    if (on_boundary) {
      v.kind = VertexKind::Boundary;
    } else if (p.valence == 4) {
      v.kind = VertexKind::InteriorCrossing;
    } else if (p.valence == 3) {
      v.kind = VertexKind::InteriorT;
    } else {
      throw Error(ErrorCode::NotRegular, "interior corner at (" + to_string(p.x) + ", " + to_string(p.y) + ")");
    }
    mesh.vertex_index_.emplace(std::make_pair(p.x, p.y), v.id);
    on_ledge[p.h].push_back(v.id);
    on_ledge[nh + p.v].push_back(v.id);
    mesh.vertices_.push_back(std::move(v));
  }

  auto add_ledge = [&](Segment& s, std::size_t slot) {
    LEdge e;
    e.id = static_cast<int>(mesh.ledges_.size());
    e.orientation = s.orientation;
    e.fixed = s.fixed;
    e.lo = s.lo;
    e.hi = s.hi;
    e.level = s.level;
    e.provenance = s.provenance;
    e.vertices = std::move(on_ledge[slot]);
    if (s.orientation == Orientation::Horizontal) {
      std::sort(e.vertices.begin(), e.vertices.end(),
                [&](int a, int b) { return mesh.vertices_[a].x < mesh.vertices_[b].x; });
      e.interior = !(s.fixed == ymin || s.fixed == ymax);
      mesh.horizontal_lines_[s.fixed].push_back(e.id);
    } else {
      std::sort(e.vertices.begin(), e.vertices.end(),
                [&](int a, int b) { return mesh.vertices_[a].y < mesh.vertices_[b].y; });
      e.interior = !(s.fixed == xmin || s.fixed == xmax);
      mesh.vertical_lines_[s.fixed].push_back(e.id);
    }
    for (std::size_t k = 1; k < e.vertices.size(); ++k) mesh.edges_.emplace_back(e.vertices[k - 1], e.vertices[k]);
    mesh.ledges_.push_back(std::move(e));
  };
  for (std::size_t i = 0; i < horiz.size(); ++i) add_ledge(horiz[i], i);
  for (std::size_t i = 0; i < vert.size(); ++i) add_ledge(vert[i], nh + i);

  // Cells: merge the cells of the associated fine grid across uncovered grid edges.
  for (const auto& [x, ids] : mesh.vertical_lines_) mesh.xs_.push_back(x);
  for (const auto& [y, ids] : mesh.horizontal_lines_) mesh.ys_.push_back(y);
  const std::size_t nx = mesh.xs_.size() - 1, ny = mesh.ys_.size() - 1;
  auto fine = [ny](std::size_t i, std::size_t j) { return i * ny + j; };
  UnionFind uf(nx * ny);
  std::vector<char> covered_v((nx + 1) * ny, 0), covered_h(nx * (ny + 1), 0);
  for (std::size_t i = 0; i <= nx; ++i) {
    const auto& ids = mesh.vertical_lines_[mesh.xs_[i]];
    std::size_t k = 0;
    for (std::size_t j = 0; j < ny; ++j) {
      while (k < ids.size() && mesh.ledges_[ids[k]].hi <= mesh.ys_[j]) ++k;
      const bool cov = k < ids.size() && mesh.ledges_[ids[k]].lo <= mesh.ys_[j] && mesh.ys_[j + 1] <= mesh.ledges_[ids[k]].hi;
      covered_v[i * ny + j] = cov;
      if (!cov && i > 0 && i < nx) uf.unite(fine(i - 1, j), fine(i, j));
    }
  }
  for (std::size_t j = 0; j <= ny; ++j) {
    const auto& ids = mesh.horizontal_lines_[mesh.ys_[j]];
    std::size_t k = 0;
    for (std::size_t i = 0; i < nx; ++i) {
      while (k < ids.size() && mesh.ledges_[ids[k]].hi <= mesh.xs_[i]) ++k;
      const bool cov = k < ids.size() && mesh.ledges_[ids[k]].lo <= mesh.xs_[i] && mesh.xs_[i + 1] <= mesh.ledges_[ids[k]].hi;
      covered_h[j * nx + i] = cov;
      if (!cov && j > 0 && j < ny) uf.unite(fine(i, j - 1), fine(i, j));
    }
  }
  struct Box {
    std::size_t i0, i1, j0, j1, count;
  };
  std::map<std::size_t, Box> boxes;
  for (std::size_t i = 0; i < nx; ++i) {
    for (std::size_t j = 0; j < ny; ++j) {
      const std::size_t root = uf.find(fine(i, j));
      auto [it, fresh] = boxes.try_emplace(root, Box{i, i, j, j, 0});
      Box& b = it->second;
      b.i0 = std::min(b.i0, i);
      b.i1 = std::max(b.i1, i);
      b.j0 = std::min(b.j0, j);
      b.j1 = std::max(b.j1, j);
      ++b.count;
    }
  }
  std::vector<std::pair<std::size_t, Box>> ordered(boxes.begin(), boxes.end());
  for (const auto& [root, b] : ordered) {
    if (b.count != (b.i1 - b.i0 + 1) * (b.j1 - b.j0 + 1)) {
      throw Error(ErrorCode::NotRegular, "non-rectangular face");
    }
  }
  std::sort(ordered.begin(), ordered.end(), [](const auto& a, const auto& b) {
    return std::tie(a.second.j0, a.second.i0) < std::tie(b.second.j0, b.second.i0);
  });
  mesh.fine_cell_.assign(nx * ny, -1);
  for (const auto& [root, b] : ordered) {
    Cell c;
    c.id = static_cast<int>(mesh.cells_.size());
    c.x0 = mesh.xs_[b.i0];
    c.x1 = mesh.xs_[b.i1 + 1];
    c.y0 = mesh.ys_[b.j0];
    c.y1 = mesh.ys_[b.j1 + 1];
    for (std::size_t i = b.i0; i <= b.i1; ++i) {
      for (std::size_t j = b.j0; j <= b.j1; ++j) mesh.fine_cell_[fine(i, j)] = c.id;
    }
    mesh.cells_.push_back(std::move(c));
  }
  // A covered grid edge must separate two different cells.
  for (std::size_t i = 1; i < nx; ++i) {
    for (std::size_t j = 0; j < ny; ++j) {
      if (covered_v[i * ny + j] && mesh.fine_cell_[fine(i - 1, j)] == mesh.fine_cell_[fine(i, j)]) {
        throw Error(ErrorCode::NotRegular, "segment inside a face");
      }
    }
  }
  for (std::size_t j = 1; j < ny; ++j) {
    for (std::size_t i = 0; i < nx; ++i) {
      if (covered_h[j * nx + i] && mesh.fine_cell_[fine(i, j - 1)] == mesh.fine_cell_[fine(i, j)]) {
        throw Error(ErrorCode::NotRegular, "segment inside a face");
      }
    }
  }
  return mesh;
}

std::vector<Segment> TMesh::segments() const {
  std::vector<Segment> out;
  out.reserve(ledges_.size());
  for (const auto& e : ledges_) out.push_back(e.segment());
  return out;
}

std::optional<int> TMesh::find_vertex(const Coord& x, const Coord& y) const {
  auto it = vertex_index_.find(std::make_pair(x, y));
  if (it == vertex_index_.end()) return std::nullopt;
  return it->second;
}

int TMesh::locate_cell(const Coord& x, const Coord& y, int dx, int dy) const {
  const int i = interval_index(xs_, x, dx);
  const int j = interval_index(ys_, y, dy);
  if (i < 0 || j < 0) return -1;
  return fine_cell_[static_cast<std::size_t>(i) * (ys_.size() - 1) + j];
}

bool TMesh::covers(const Segment& seg) const {
  const auto& lines = seg.orientation == Orientation::Horizontal ? horizontal_lines_ : vertical_lines_;
  auto it = lines.find(seg.fixed);
  if (it == lines.end()) return false;
  for (int id : it->second) {
    const LEdge& e = ledges_[id];
    if (e.lo <= seg.lo && seg.hi <= e.hi) return true;
  }
  return false;
}

TMesh tensor_mesh(const std::vector<Coord>& xs, const std::vector<Coord>& ys, std::optional<int> level) {
  if (xs.size() < 2 || ys.size() < 2) throw Error(ErrorCode::NotRegular, "tensor mesh needs two lines per axis");
  std::vector<Segment> segs;
  for (const auto& x : xs) segs.push_back(Segment::vertical(x, ys.front(), ys.back(), level));
  for (const auto& y : ys) segs.push_back(Segment::horizontal(y, xs.front(), xs.back(), level));
  return build_tmesh(std::move(segs));
}

VertexCensus vertex_census(const TMesh& mesh) {
  VertexCensus c;
  for (const auto& v : mesh.vertices()) {
    switch (v.kind) {
      case VertexKind::InteriorCrossing: ++c.crossing; break;
      case VertexKind::InteriorT: ++c.tvertex; break;
      case VertexKind::Boundary: ++c.boundary; break;
    }
  }
  return c;
}

InteriorLEdges interior_ledges(const TMesh& mesh) {
  InteriorLEdges out;
  for (const auto& e : mesh.ledges()) {
    if (!e.interior) continue;
    (e.orientation == Orientation::Horizontal ? out.horizontal : out.vertical).push_back(e);
  }
  auto by_pos = [](const LEdge& a, const LEdge& b) { return std::tie(a.fixed, a.lo) < std::tie(b.fixed, b.lo); };
  std::sort(out.horizontal.begin(), out.horizontal.end(), by_pos);
  std::sort(out.vertical.begin(), out.vertical.end(), by_pos);
  return out;
}

TMesh associated_tensor_mesh(const TMesh& mesh) {
  return tensor_mesh(mesh.x_lines(), mesh.y_lines(), std::nullopt);
}

TMesh restrict_to(const TMesh& mesh, const Rect& rect) {
  std::vector<Segment> segs;
  for (auto s : mesh.segments()) {
    const bool horizontal = s.orientation == Orientation::Horizontal;
    const Coord& fmin = horizontal ? rect.y0 : rect.x0;
    const Coord& fmax = horizontal ? rect.y1 : rect.x1;
    const Coord& smin = horizontal ? rect.x0 : rect.y0;
    const Coord& smax = horizontal ? rect.x1 : rect.y1;
    if (s.fixed < fmin || s.fixed > fmax) continue;
    s.lo = std::max(s.lo, smin);
    s.hi = std::min(s.hi, smax);
    if (s.lo < s.hi) segs.push_back(std::move(s));
  }
  return build_tmesh(std::move(segs), mesh.extension_depth());
}

TMesh remove_ledge(const TMesh& mesh, int ledge_id) {
  std::vector<Segment> segs;
  segs.reserve(mesh.ledges().size());
  for (const auto& e : mesh.ledges()) {
    if (e.id != ledge_id) segs.push_back(e.segment());
  }
  return build_tmesh(std::move(segs), mesh.extension_depth());
}

bool same_geometry(const TMesh& a, const TMesh& b) {
  if (a.vertices().size() != b.vertices().size() || a.ledges().size() != b.ledges().size() ||
      a.cells().size() != b.cells().size() || !(a.domain() == b.domain())) {
    return false;
  }
  for (std::size_t i = 0; i < a.vertices().size(); ++i) {
    const auto &va = a.vertices()[i], &vb = b.vertices()[i];
    if (va.x != vb.x || va.y != vb.y || va.kind != vb.kind) return false;
  }
  for (std::size_t i = 0; i < a.ledges().size(); ++i) {
    const auto &ea = a.ledges()[i], &eb = b.ledges()[i];
    if (!ea.segment().same_line(eb.segment()) || ea.vertices != eb.vertices) return false;
  }
  for (std::size_t i = 0; i < a.cells().size(); ++i) {
    if (!(a.cells()[i].rect() == b.cells()[i].rect())) return false;
  }
  return true;
}

std::size_t crossing_count(const TMesh& mesh, const LEdge& ledge) {
  std::size_t n = 0;
  for (int v : ledge.vertices) n += mesh.vertices()[v].kind == VertexKind::InteriorCrossing;
  return n;
}

}  // namespace hts
