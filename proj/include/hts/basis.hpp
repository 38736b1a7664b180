#pragma once

// Basis of the spline space over an extended block-refined T-mesh.
//
// Interior l-edges are removed one at a time, highest level first; inside a
// level the removal runs through the position classes A1..A5 and always takes
// a trivial l-edge (too few vertices to carry a univariate spline) when one is
// available. Each non-trivial l-edge E removed from the mesh T_i contributes
// one function per window of d + 2 consecutive vertices of E: a spline on T_i
// whose conformality factors along E are those of the B-spline on the window.
// The function is a tensor-product B-spline when the mesh supports one, and
// otherwise N1 - (k1 / k2) N2, where N1 needs an extra segment ending at a
// point P and N2 cancels the factor of N1 at P. When N1 reaches off the mesh
// at several points, one cancelling B-spline per point is combined by solving
// for the coefficients.

#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hts/conformality.hpp"
#include "hts/hierarchy.hpp"
#include "hts/mesh.hpp"

namespace hts {

/// Interior l-edge ids of the extended mesh grouped by level tag.
std::vector<std::vector<int>> level_partition(const TMesh& extended);

enum class ASet { None, A1, A2, A3, A4, A5 };
std::string_view to_string(ASet label);

/// Position of a level-l l-edge (l >= 1) among the same-orientation level-l
/// l-edges crossing a split block of level l - 1: counted from the left for
/// vertical l-edges, from the top for horizontal ones, starting at 1. One
/// value per block the l-edge crosses, in block id order. Errors:
/// NoParentSubdomain.
std::vector<int> position_labels(const TMesh& extended, const LEdge& ledge, const SubdomainForest& forest);
int position_label(const TMesh& extended, const LEdge& ledge, const SubdomainForest& forest);

/// Errors: UnlabeledEdge when the position is outside 1..m-1 (vertical) or
/// 1..n-1 (horizontal).
ASet classify_A(const LEdge& ledge, int position, int m, int n);

enum class TieBreak { Least, Greatest };

struct RemovalStep {
  Segment ledge;
  int level = 0;
  ASet label = ASet::None;
  int position = 0;
  long long vplus = 0;     // crossing vertices on the l-edge just before removal
  long long vertices = 0;  // all vertices on it just before removal
  long long dim = 0;       // (vertices - d - 1)+
  bool trivial = false;
  std::shared_ptr<const TMesh> before;  // the mesh it is removed from
};

struct OrderedLEdges {
  int m = 0;
  int n = 0;
  std::vector<RemovalStep> steps;  // removal order
  std::shared_ptr<const TMesh> remainder;  // mesh after the last removal
};

/// Phased: inside phase A_i only trivial l-edges of A_i are taken early.
/// TrivialFirst: a trivial level-l l-edge of any phase is taken before the
/// next l-edge of the current phase, provided its removal leaves no dangling
/// segment.
enum class TrivialPolicy { Phased, TrivialFirst };

std::string_view to_string(TrivialPolicy policy);
TrivialPolicy parse_trivial_policy(std::string_view text);

/// Ties among eligible l-edges go to the least (or greatest) key
/// (vertical before horizontal, fixed coordinate, lo).
OrderedLEdges order_ledges(const TMesh& extended, const SubdomainForest& forest, int m, int n,
                           TieBreak tie = TieBreak::Least, TrivialPolicy policy = TrivialPolicy::TrivialFirst);

/// Per-level sums over the removal sequence.
struct LedgerLevel {
  int level = 0;
  long long dim_sum = 0;       // sum of dim W[E]
  long long crossing_sum = 0;  // sum of (v+ - m + 1) over horizontal, (v+ - n + 1) over vertical
  long long correction = 0;    // isolated blocks one level down, or (m-1)(n-1) at level 0
  bool balanced() const { return dim_sum == crossing_sum + correction; }
};

std::vector<LedgerLevel> telescoping_ledger(const OrderedLEdges& order, const std::vector<int>& delta_per_level);

using PointFactors = std::map<std::pair<Coord, Coord>, Rational>;

struct TensorGrid {
  std::vector<Coord> xs, ys;
};

struct BasisFn {
  PointFactors factors;  // nonzero conformality factors by vertex position
  int step = -1;         // index into OrderedLEdges::steps
  int level = 0;
  ASet label = ASet::None;
  int window = 0;
  std::vector<Coord> knots;  // the window along the l-edge
  int alpha = 0;             // vertices of the window where two level-l l-edges cross
  bool corrected = false;    // built as N1 - sum c_j N2_j
  TensorGrid n1;
  std::vector<TensorGrid> n2;                      // empty unless corrected
  std::vector<Rational> coefficients;              // c_j, k1 / k2 with one correction
  std::vector<std::pair<Coord, Coord>> cancelled;  // points off the mesh where N1 is nonzero
};

/// Conformality factors of a tensor-product B-spline on the grid.
PointFactors tensor_factors(const TensorGrid& grid, int m, int n);

/// Dense vector over the mesh vertices. Errors: InvalidArgument when a point
/// carrying a factor is not a vertex.
ConformalityVector to_vector(const TMesh& mesh, const PointFactors& factors);

/// Errors: UnhandledConfiguration when a window admits neither construction.
std::vector<BasisFn> construct_basis(const OrderedLEdges& order);

struct VerificationReport {
  std::size_t count = 0;
  long long expected = 0;
  std::size_t rank = 0;
  std::size_t nonconformal = 0;
  std::size_t span_rank = 0;  // rank of the functions stacked with a nullspace basis
  long long nullspace = 0;

  bool count_ok() const { return static_cast<long long>(count) == expected; }
  bool independent() const { return rank == count; }
  bool conformal() const { return nonconformal == 0; }
  bool span_ok() const {
    return static_cast<long long>(span_rank) == nullspace && static_cast<long long>(rank) == nullspace;
  }
  bool all() const { return count_ok() && independent() && conformal() && span_ok(); }
};

VerificationReport verify_basis(const std::vector<BasisFn>& fns, const TMesh& extended, int m, int n,
                                long long expected);

std::string describe(const BasisFn& fn);

}  // namespace hts
