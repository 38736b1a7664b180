#include "hts/conformality.hpp"

#include <algorithm>

#include "hts/error.hpp"

namespace hts {

namespace {

std::vector<Coord> varying_coords(const TMesh& mesh, const LEdge& e) {
  std::vector<Coord> t;
  t.reserve(e.vertices.size());
  for (int v : e.vertices) {
    const Vertex& vx = mesh.vertices()[v];
    t.push_back(e.orientation == Orientation::Horizontal ? vx.x : vx.y);
  }
  return t;
}

int degree_of(const LEdge& e, int m, int n) { return e.orientation == Orientation::Horizontal ? m : n; }

void add_moment_rows(LinearSystem& sys, const std::vector<Coord>& t, const std::vector<int>& cols, int degree,
                     int source, bool shift) {
  const Coord base = shift ? t.front() : Coord(0);
  std::vector<Rational> pw(t.size(), Rational(1));
  for (int j = 0; j <= degree; ++j) {
    std::vector<std::pair<int, Rational>> row;
    row.reserve(t.size());
    for (std::size_t i = 0; i < t.size(); ++i) {
      row.emplace_back(cols[i], pw[i]);
      pw[i] *= t[i] - base;
    }
    sys.add_row(std::move(row), RowTag{source, j});
  }
}

void check_conformal(const SplineFn& f) {
  if (!in_W(*f.mesh, f.cv, f.m, f.n)) throw Error(ErrorCode::NotConformal, "vector violates an l-edge moment equation");
}

}  // namespace

LinearSystem moment_system(const std::vector<Coord>& t, int degree, int source, bool shift) {
  LinearSystem sys(static_cast<int>(t.size()));
  if (t.empty()) return sys;
  std::vector<int> cols(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) cols[i] = static_cast<int>(i);
  add_moment_rows(sys, t, cols, degree, source, shift);
  return sys;
}

LinearSystem ledge_system(const TMesh& mesh, const LEdge& ledge, int degree, bool shift) {
  LinearSystem sys(static_cast<int>(mesh.vertices().size()));
  add_moment_rows(sys, varying_coords(mesh, ledge), ledge.vertices, degree, ledge.id, shift);
  return sys;
}

LinearSystem assemble_W(const TMesh& mesh, int m, int n, bool shift) {
  LinearSystem sys(static_cast<int>(mesh.vertices().size()));
  for (const auto& e : mesh.ledges()) {
    add_moment_rows(sys, varying_coords(mesh, e), e.vertices, degree_of(e, m, n), e.id, shift);
  }
  return sys;
}

UniPoly ledge_moment_polynomial(const TMesh& mesh, const LEdge& ledge, const ConformalityVector& cv, int degree) {
  UniPoly acc;
  const auto t = varying_coords(mesh, ledge);
  for (std::size_t i = 0; i < t.size(); ++i) {
    const Rational& k = cv[ledge.vertices[i]];
    if (k != 0) acc += UniPoly::shifted_power(t[i], degree, k);
  }
  return acc;
}

bool in_W(const TMesh& mesh, const ConformalityVector& cv, int m, int n) {
  if (cv.size() != mesh.vertices().size()) return false;
  Rational acc;
  for (const auto& e : mesh.ledges()) {
    const int d = degree_of(e, m, n);
    std::vector<const Rational*> ks;
    std::vector<Coord> ts;
    for (int v : e.vertices) {
      if (cv[v] == 0) continue;
      ks.push_back(&cv[v]);
      const Vertex& vx = mesh.vertices()[v];
      ts.push_back(e.orientation == Orientation::Horizontal ? vx.x : vx.y);
    }
    if (ks.empty()) continue;
    std::vector<Rational> pw(ks.size(), Rational(1));
    for (int j = 0; j <= d; ++j) {
      acc = 0;
      for (std::size_t i = 0; i < ks.size(); ++i) {
        acc += *ks[i] * pw[i];
        pw[i] *= ts[i];
      }
      if (acc != 0) return false;
    }
  }
  return true;
}

std::vector<Rational> bspline_conformality(const std::vector<Coord>& knots, int degree) {
  if (degree < 0 || static_cast<int>(knots.size()) != degree + 2) {
    throw Error(ErrorCode::InvalidArgument, "a degree-d B-spline needs d + 2 knots");
  }
  for (std::size_t i = 1; i < knots.size(); ++i) {
    if (!(knots[i - 1] < knots[i])) throw Error(ErrorCode::DegenerateKnots, "knots must be strictly increasing");
  }
  auto basis = nullspace_basis(moment_system(knots, degree));
  if (basis.size() != 1) throw Error(ErrorCode::DegenerateKnots, "knot moment system is not of corank one");
  normalize_minimal_integer(basis[0]);
  return basis[0];
}

std::vector<std::vector<Rational>> tensor_conformality(const std::vector<Rational>& k1,
                                                       const std::vector<Rational>& k2) {
  std::vector<std::vector<Rational>> out(k1.size(), std::vector<Rational>(k2.size()));
  for (std::size_t p = 0; p < k1.size(); ++p) {
    for (std::size_t q = 0; q < k2.size(); ++q) out[p][q] = k1[p] * k2[q];
  }
  return out;
}

ConformalityVector place_on_grid(const TMesh& mesh, const std::vector<Coord>& xs, const std::vector<Coord>& ys,
                                 const std::vector<std::vector<Rational>>& grid) {
  ConformalityVector cv(mesh.vertices().size());
  for (std::size_t p = 0; p < xs.size(); ++p) {
    for (std::size_t q = 0; q < ys.size(); ++q) {
      const auto v = mesh.find_vertex(xs[p], ys[q]);
      if (!v) {
        throw Error(ErrorCode::InvalidArgument,
                    "grid point (" + to_string(xs[p]) + ", " + to_string(ys[q]) + ") is not a mesh vertex");
      }
      cv[*v] = grid[p][q];
    }
  }
  return cv;
}

Rational eval_spline(const SplineFn& f, const Coord& x, const Coord& y, bool check) {
  if (check) check_conformal(f);
  Rational acc = 0;
  const auto& vs = f.mesh->vertices();
  for (std::size_t i = 0; i < vs.size(); ++i) {
    const Rational& k = f.cv[i];
    if (k == 0 || !(vs[i].x < x) || !(vs[i].y < y)) continue;
    acc += k * power(x - vs[i].x, f.m) * power(y - vs[i].y, f.n);
  }
  return acc;
}

BiPoly polynomial_near(const SplineFn& f, const Coord& x, const Coord& y, int dx, int dy) {
  BiPoly p(f.m, f.n);
  const auto& vs = f.mesh->vertices();
  for (std::size_t i = 0; i < vs.size(); ++i) {
    const Rational& k = f.cv[i];
    if (k == 0) continue;
    const bool left = vs[i].x < x || (vs[i].x == x && dx > 0);
    const bool below = vs[i].y < y || (vs[i].y == y && dy > 0);
    if (left && below) p += BiPoly::truncated_term(k, vs[i].x, vs[i].y, f.m, f.n);
  }
  return p;
}

std::vector<BiPoly> piecewise_polynomials(const SplineFn& f, bool check) {
  if (check) check_conformal(f);
  const auto& cells = f.mesh->cells();
  std::vector<BiPoly> out(cells.size(), BiPoly(f.m, f.n));
  const auto& vs = f.mesh->vertices();
  for (std::size_t i = 0; i < vs.size(); ++i) {
    const Rational& k = f.cv[i];
    if (k == 0) continue;
    const BiPoly term = BiPoly::truncated_term(k, vs[i].x, vs[i].y, f.m, f.n);
    for (const auto& c : cells) {
      if (vs[i].x <= c.x0 && vs[i].y <= c.y0) out[c.id] += term;
    }
  }
  return out;
}

std::vector<BiPoly> outer_polynomials(const SplineFn& f) {
  const Rect& d = f.mesh->domain();
  const auto& xs = f.mesh->x_lines();
  const auto& ys = f.mesh->y_lines();
  std::vector<BiPoly> out;
  for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
    const Coord mid = (xs[i] + xs[i + 1]) / 2;
    out.push_back(polynomial_near(f, mid, d.y1, 1, 1));
    out.push_back(polynomial_near(f, mid, d.y0, 1, -1));
  }
  for (std::size_t j = 0; j + 1 < ys.size(); ++j) {
    const Coord mid = (ys[j] + ys[j + 1]) / 2;
    out.push_back(polynomial_near(f, d.x1, mid, 1, 1));
    out.push_back(polynomial_near(f, d.x0, mid, -1, 1));
  }
  out.push_back(polynomial_near(f, d.x1, d.y1, 1, 1));
  out.push_back(polynomial_near(f, d.x0, d.y1, -1, 1));
  out.push_back(polynomial_near(f, d.x1, d.y0, 1, -1));
  out.push_back(polynomial_near(f, d.x0, d.y0, -1, -1));
  return out;
}

CofactorTriple extract_cofactors(const SplineFn& f, const Coord& x0, const Coord& y0) {
  if (!f.mesh->domain().contains(x0, y0)) {
    throw Error(ErrorCode::NotInterior, "point (" + to_string(x0) + ", " + to_string(y0) + ") is outside the mesh");
  }
  const BiPoly f2 = polynomial_near(f, x0, y0, -1, -1);
  const BiPoly f1 = polynomial_near(f, x0, y0, -1, 1);
  const BiPoly f3 = polynomial_near(f, x0, y0, 1, -1);
  const BiPoly f4 = polynomial_near(f, x0, y0, 1, 1);
  CofactorTriple out;
  const Rational mf(factorial(f.m)), nf(factorial(f.n));
  out.a = (f3.derivative_x(f.m).at_x(x0) - f2.derivative_x(f.m).at_x(x0)) * (1 / mf);
  out.b = (f1.derivative_y(f.n).at_y(y0) - f2.derivative_y(f.n).at_y(y0)) * (1 / nf);
  const BiPoly mixed = f2 + f4 - f1 - f3;
  out.k = mixed.coefficient(f.m, f.n);
  return out;
}

}  // namespace hts
