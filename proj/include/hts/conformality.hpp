#pragma once

// Conformality vectors: one factor per mesh vertex, constrained along every
// l-edge by the moment equations sum_i k_i t_i^j = 0 (j = 0..d, d = m for
// horizontal l-edges over x, d = n for vertical ones over y).
//
// A vector k in the nullspace defines the spline
//   f(x, y) = sum_v k_v (x - x_v)_+^m (y - y_v)_+^n,
// which is C^(m-1, n-1), polynomial on every cell and zero outside the domain.

#include <vector>

#include "hts/exact_linalg.hpp"
#include "hts/mesh.hpp"
#include "hts/polynomial.hpp"

namespace hts {

/// Indexed by vertex id of the mesh it was built for.
using ConformalityVector = std::vector<Rational>;

/// Moment rows over local columns 0..t.size()-1. With `shift`, rows use
/// (t_i - t_0)^j instead of t_i^j; the row space is the same.
LinearSystem moment_system(const std::vector<Coord>& t, int degree, int source = -1, bool shift = false);

/// The l-edge's moment rows over all vertex columns of the mesh.
LinearSystem ledge_system(const TMesh& mesh, const LEdge& ledge, int degree, bool shift = false);

/// Moment rows of every l-edge, boundary ones included.
LinearSystem assemble_W(const TMesh& mesh, int m, int n, bool shift = false);

/// Exact membership test.
bool in_W(const TMesh& mesh, const ConformalityVector& cv, int m, int n);

/// Moment polynomial sum_i k_i (t - t_i)^d along the l-edge.
UniPoly ledge_moment_polynomial(const TMesh& mesh, const LEdge& ledge, const ConformalityVector& cv, int degree);

/// Conformality vector of the B-spline on d+2 strictly increasing knots,
/// scaled to coprime integers with a positive first entry. Errors:
/// DegenerateKnots, InvalidArgument (wrong knot count).
std::vector<Rational> bspline_conformality(const std::vector<Coord>& knots, int degree);

/// Outer product: result[p][q] = k1[p] * k2[q].
std::vector<std::vector<Rational>> tensor_conformality(const std::vector<Rational>& k1,
                                                       const std::vector<Rational>& k2);

/// Lays grid[p][q] onto the vertex (xs[p], ys[q]); all other entries zero.
/// Errors: InvalidArgument when a grid point is not a mesh vertex.
ConformalityVector place_on_grid(const TMesh& mesh, const std::vector<Coord>& xs, const std::vector<Coord>& ys,
                                 const std::vector<std::vector<Rational>>& grid);

struct SplineFn {
  const TMesh* mesh = nullptr;
  ConformalityVector cv;
  int m = 0;
  int n = 0;
};

/// Errors: NotConformal when `check` is set and the vector is not in W.
Rational eval_spline(const SplineFn& f, const Coord& x, const Coord& y, bool check = false);

/// Polynomial of f just off (x, y) in the quadrant selected by dx, dy in
/// {-1, +1}, read off the truncated-power sum (so outside the domain it is
/// zero only for conformal vectors).
BiPoly polynomial_near(const SplineFn& f, const Coord& x, const Coord& y, int dx, int dy);

/// One polynomial per cell, indexed by cell id.
std::vector<BiPoly> piecewise_polynomials(const SplineFn& f, bool check = false);

/// Polynomials of f on the unbounded strips just outside each side of the
/// domain, one per grid interval, plus the four outer corners. All of them
/// vanish when the vector is conformal.
std::vector<BiPoly> outer_polynomials(const SplineFn& f);

struct CofactorTriple {
  UniPoly a;  // in y, jump across the vertical line through the point
  UniPoly b;  // in x, jump across the horizontal line
  Rational k;
};

/// Cofactors at (x0, y0) from the four quadrant polynomials (lower-left f2,
/// upper-left f1, lower-right f3, upper-right f4). Errors: NotInterior when
/// the point is outside the closed domain.
CofactorTriple extract_cofactors(const SplineFn& f, const Coord& x0, const Coord& y0);

}  // namespace hts
