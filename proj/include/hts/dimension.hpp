#pragma once

// Dimension of the spline space of bidegree (m, n) and smoothness
// (m-1, n-1) over a hierarchical block-refined T-mesh, by the closed form on
// the extended mesh and by two independent exact rank computations.

#include <optional>
#include <vector>

#include "hts/extension.hpp"
#include "hts/hierarchy.hpp"
#include "hts/mesh.hpp"

namespace hts {

struct Census {
  long long Vplus = 0;  // crossing vertices of the extended mesh
  long long E_H = 0;    // interior horizontal l-edges of the extended mesh
  long long E_V = 0;
  long long delta = 0;  // isolated blocks over all levels
  std::vector<int> delta_per_level;  // entry k: isolated blocks of level k
};

Census census(const TMesh& extended, const SubdomainForest& forest);

/// (m-1)(n-1) + V+ - (m-1) E_H - (n-1) E_V + delta. Errors: NegativeResult.
long long dim_formula(const Census& c, int m, int n);

/// Free coefficients of piecewise polynomials of bidegree (m, n) with
/// C^(m-1) continuity across vertical edges and C^(n-1) across horizontal
/// ones. With `homogeneous`, the function must also join the zero function
/// with the same smoothness across the domain boundary.
long long dim_cellwise_oracle(const TMesh& mesh, int m, int n, bool homogeneous = false);

/// Nullspace dimension of the conformality system of a mesh (normally an
/// extended one).
long long dim_conformality_oracle(const TMesh& mesh, int m, int n);

struct DimensionOptions {
  bool formula = true;
  bool conformality = true;
  bool cellwise = true;
  ExtensionOptions extension;
};

struct DimensionReport {
  int m = 0;
  int n = 0;
  ExtensionPairing pairing = ExtensionPairing::VerticalM;
  std::optional<Census> census;
  std::optional<long long> formula;
  std::optional<long long> conformality;
  std::optional<long long> cellwise;
  bool in_class = true;  // mesh came from generate()
  double formula_ms = 0, conformality_ms = 0, cellwise_ms = 0;

  /// True iff every computed value is equal (vacuously true with one value).
  bool agree() const;
};

DimensionReport dim_spline_space(const Hierarchy& h, const DimensionOptions& options = {});

/// For meshes not built by generate(): the formula is not evaluated
/// (in_class = false) and only the oracles run. Errors: NotInClass when only
/// the formula was requested. A mesh with nonzero extension depth is taken as
/// already extended: no further copies are added and the cell-wise count
/// imposes zero extension outside it.
DimensionReport dim_spline_space(const TMesh& mesh, int m, int n, const DimensionOptions& options = {});

}  // namespace hts
