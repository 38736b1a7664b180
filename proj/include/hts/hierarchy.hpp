#pragma once

// Hierarchical T-meshes refined one (m, n)-subdomain at a time.
//
// Level 0 is a p x q tensor mesh. Each level's refinable regions (the whole
// domain at level 0, the split subdomains afterwards) are cut into blocks of
// (m-1) x (n-1) cells, the last block in each direction absorbing the
// remainder; a refinement script lists which blocks to split at each level.

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hts/mesh.hpp"

namespace hts {

/// Path of (column, row) grid indices, one per level: entry k selects a block
/// in the partition of the region created by entry k-1.
using Address = std::vector<std::pair<int, int>>;

/// "i,j/i,j/..." form.
std::string to_string(const Address& address);
Address parse_address(std::string_view text);

struct HierSpec {
  int m = 3;
  int n = 3;
  int p = 1;
  int q = 1;
  std::optional<std::vector<Coord>> x_coords;  // p + 1 values, default 0..p
  std::optional<std::vector<Coord>> y_coords;
  std::vector<std::vector<Address>> script;   // script[k]: level-k blocks to split
};

struct Subdomain {
  int id = -1;
  int level = 0;
  Address address;
  int parent = -1;  // split subdomain whose region contains this one
  Rect rect;
  std::vector<Coord> xs, ys;  // the block's cell lines at its level
  bool subdivided = false;
  bool boundary = false;  // touches the outer boundary of the domain
  bool isolated = false;

  int columns() const { return static_cast<int>(xs.size()) - 1; }
  int rows() const { return static_cast<int>(ys.size()) - 1; }
};

struct SubdomainForest {
  int m = 0;
  int n = 0;
  Rect domain;
  std::vector<Subdomain> subdomains;

  /// Number of levels that have been partitioned.
  int levels() const;
  std::vector<int> at_level(int level) const;
  std::optional<int> find(const Address& address) const;
};

/// Cuts a tensor region with lines xs x ys into blocks. Cut positions are
/// every (m-1)-th x line and every (n-1)-th y line, the final block keeping
/// between 1 and m-1 (resp. n-1) cells. Blocks are returned row by row.
/// Errors: DegenerateRegion, InvalidArgument (m or n below 2).
std::vector<Subdomain> partition_subdomains(const std::vector<Coord>& xs, const std::vector<Coord>& ys, int m, int n,
                                            int level = 0, const Rect* domain = nullptr);

/// Splits every cell of the block at its midpoints; new segments carry level
/// S.level + 1. Errors: AlreadySubdivided, StaleAddress.
TMesh subdivide_subdomain(const TMesh& mesh, const Subdomain& subdomain);

struct Hierarchy {
  HierSpec spec;
  TMesh mesh;
  SubdomainForest forest;
};

/// Builds the mesh level by level and records every block with its flags.
Hierarchy generate(const HierSpec& spec);

struct IsolatedCounts {
  int total = 0;
  std::vector<int> per_level;  // per_level[k]: isolated blocks of level k
};

/// Recomputes isolation flags in place and counts them. A block is isolated
/// when it is split, does not touch the outer boundary, and no same-level
/// block sharing a side segment of positive length with it is split.
IsolatedCounts mark_isolated(SubdomainForest& forest);
IsolatedCounts isolated_counts(const SubdomainForest& forest);

/// Ids of the mesh cells inside the block's rectangle.
std::vector<int> subdomain_cells(const TMesh& mesh, const Subdomain& subdomain);

/// Whether two rectangles share a boundary segment of positive length.
bool share_side(const Rect& a, const Rect& b);

}  // namespace hts
