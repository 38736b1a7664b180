#pragma once

// Regular axis-aligned T-meshes with exact rational coordinates.
//
// A mesh is described by its maximal line segments (l-edges). Vertices are
// the points where a horizontal and a vertical segment meet, edges join
// consecutive vertices along a segment, and cells are the minimal rectangles
// enclosed by edges. A TMesh is immutable once built.

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "hts/rational.hpp"

namespace hts {

enum class Orientation { Horizontal, Vertical };

enum class VertexKind { InteriorCrossing, InteriorT, Boundary };

/// Where a line of an extended mesh came from.
enum class LineProvenance { Original, BoundaryCopy, Extension };

struct Rect {
  Coord x0, x1, y0, y1;

  Coord width() const { return x1 - x0; }
  Coord height() const { return y1 - y0; }
  bool contains(const Coord& x, const Coord& y) const { return x0 <= x && x <= x1 && y0 <= y && y <= y1; }
  friend bool operator==(const Rect& a, const Rect& b) {
    return a.x0 == b.x0 && a.x1 == b.x1 && a.y0 == b.y0 && a.y1 == b.y1;
  }
};

/// Axis-aligned segment. `fixed` is the constant coordinate (y for
/// horizontal, x for vertical); [lo, hi] is the span along the other axis.
struct Segment {
  Orientation orientation = Orientation::Horizontal;
  Coord fixed, lo, hi;
  std::optional<int> level;
  LineProvenance provenance = LineProvenance::Original;

  static Segment horizontal(Coord y, Coord x0, Coord x1, std::optional<int> level = {});
  static Segment vertical(Coord x, Coord y0, Coord y1, std::optional<int> level = {});

  /// Same orientation and geometry; level and provenance are ignored.
  bool same_line(const Segment& other) const {
    return orientation == other.orientation && fixed == other.fixed && lo == other.lo && hi == other.hi;
  }
};

struct Vertex {
  int id = -1;
  Coord x, y;
  VertexKind kind = VertexKind::Boundary;
  int valence = 0;
  int horizontal_ledge = -1;  // l-edge through the vertex, -1 if none
  int vertical_ledge = -1;
};

struct LEdge {
  int id = -1;
  Orientation orientation = Orientation::Horizontal;
  Coord fixed, lo, hi;
  std::vector<int> vertices;  // sorted by the varying coordinate, endpoints included
  bool interior = true;
  std::optional<int> level;
  LineProvenance provenance = LineProvenance::Original;

  Segment segment() const;
};

struct Cell {
  int id = -1;
  Coord x0, x1, y0, y1;

  Rect rect() const { return {x0, x1, y0, y1}; }
  Coord area() const { return (x1 - x0) * (y1 - y0); }
};

class TMesh {
 public:
  const std::vector<Vertex>& vertices() const noexcept { return vertices_; }
  const std::vector<std::pair<int, int>>& edges() const noexcept { return edges_; }
  const std::vector<LEdge>& ledges() const noexcept { return ledges_; }
  const std::vector<Cell>& cells() const noexcept { return cells_; }
  const Rect& domain() const noexcept { return domain_; }

  /// Number of times extend() has been applied to produce this mesh.
  int extension_depth() const noexcept { return extension_depth_; }

  /// The l-edges as segments, in l-edge id order.
  std::vector<Segment> segments() const;

  std::optional<int> find_vertex(const Coord& x, const Coord& y) const;

  /// Cell whose closure contains the point and which lies to the upper right
  /// of it when the point sits on grid lines (x + eps, y + eps convention);
  /// -1 outside the domain. `dx`, `dy` in {-1, +1} select the quadrant.
  int locate_cell(const Coord& x, const Coord& y, int dx = 1, int dy = 1) const;

  /// Positions of all vertical (resp. horizontal) lines, sorted and distinct.
  const std::vector<Coord>& x_lines() const noexcept { return xs_; }
  const std::vector<Coord>& y_lines() const noexcept { return ys_; }

  /// Whether the closed segment is covered by one l-edge of the mesh.
  bool covers(const Segment& seg) const;

 private:
  friend TMesh build_tmesh(std::vector<Segment> segments, int extension_depth);

  std::vector<Vertex> vertices_;
  std::vector<std::pair<int, int>> edges_;
  std::vector<LEdge> ledges_;
  std::vector<Cell> cells_;
  Rect domain_;
  int extension_depth_ = 0;

  std::map<std::pair<Coord, Coord>, int> vertex_index_;
  std::vector<Coord> xs_, ys_;
  std::vector<int> fine_cell_;  // (i * ys.size()-1 + j) -> cell id
  // line position -> l-edge ids on that line sorted by lo
  std::map<Coord, std::vector<int>> horizontal_lines_, vertical_lines_;
};

/// Builds a mesh from axis-aligned segments. Colinear segments that touch are
/// merged into one l-edge; vertices appear at every intersection. Errors:
/// NotRegular, DanglingSegment, Overlap.
TMesh build_tmesh(std::vector<Segment> segments, int extension_depth = 0);

/// Full tensor-product mesh on the given line positions.
TMesh tensor_mesh(const std::vector<Coord>& xs, const std::vector<Coord>& ys, std::optional<int> level = 0);

struct VertexCensus {
  std::size_t crossing = 0;
  std::size_t tvertex = 0;
  std::size_t boundary = 0;
};

VertexCensus vertex_census(const TMesh& mesh);

struct InteriorLEdges {
  std::vector<LEdge> horizontal;
  std::vector<LEdge> vertical;
};

/// All l-edges except the four boundary ones, sorted by (fixed, lo).
InteriorLEdges interior_ledges(const TMesh& mesh);

/// Tensor mesh on every vertical and horizontal line position of the mesh.
TMesh associated_tensor_mesh(const TMesh& mesh);

/// Clips every segment to the rectangle and rebuilds.
TMesh restrict_to(const TMesh& mesh, const Rect& rect);

/// The mesh with one l-edge deleted.
TMesh remove_ledge(const TMesh& mesh, int ledge_id);

/// Same vertices, l-edges and cells (ids and coordinates).
bool same_geometry(const TMesh& a, const TMesh& b);

/// Number of crossing vertices lying on the l-edge.
std::size_t crossing_count(const TMesh& mesh, const LEdge& ledge);

}  // namespace hts
