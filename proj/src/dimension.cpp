#include "hts/dimension.hpp"

#include <chrono>

#include "hts/conformality.hpp"
#include "hts/error.hpp"
#include "hts/exact_linalg.hpp"

namespace hts {

namespace {

double elapsed_ms(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
}

// d^k/dt^k of (t - c)^i at t = s: falling(i, k) (s - c)^(i - k).
std::vector<std::vector<Rational>> derivative_table(const Rational& shift, int deg) {
  std::vector<std::vector<Rational>> tab(deg + 1, std::vector<Rational>(deg + 1));
  for (int k = 0; k <= deg; ++k) {
    for (int i = k; i <= deg; ++i) {
      Integer f = 1;
      for (int t = 0; t < k; ++t) f *= i - t;
      tab[k][i] = Rational(f) * power(shift, i - k);
    }
  }
  return tab;
}

// Coefficient of (t - a)^l in (t - c)^j: C(j, l) (a - c)^(j - l).
std::vector<std::vector<Rational>> reexpand_table(const Rational& shift, int deg) {
  std::vector<std::vector<Rational>> tab(deg + 1, std::vector<Rational>(deg + 1));
  for (int l = 0; l <= deg; ++l) {
    for (int j = l; j <= deg; ++j) tab[l][j] = Rational(binomial(j, l)) * power(shift, j - l);
  }
  return tab;
}

}  // namespace

Census census(const TMesh& extended, const SubdomainForest& forest) {
  Census c;
  c.Vplus = static_cast<long long>(vertex_census(extended).crossing);
  const auto il = interior_ledges(extended);
  c.E_H = static_cast<long long>(il.horizontal.size());
  c.E_V = static_cast<long long>(il.vertical.size());
  const auto iso = isolated_counts(forest);
  c.delta = iso.total;
  c.delta_per_level = iso.per_level;
  return c;
}

long long dim_formula(const Census& c, int m, int n) {
  const long long value =
      static_cast<long long>(m - 1) * (n - 1) + c.Vplus - (m - 1) * c.E_H - (n - 1) * c.E_V + c.delta;
  if (value < 0) throw Error(ErrorCode::NegativeResult, "closed form gives " + std::to_string(value));
  return value;
}

long long dim_cellwise_oracle(const TMesh& mesh, int m, int n, bool homogeneous) {
  const int per_cell = (m + 1) * (n + 1);
  const int columns = static_cast<int>(mesh.cells().size()) * per_cell;
  IntegerEchelon ech(columns);
  auto col = [&](int cell, int i, int j) { return cell * per_cell + i * (n + 1) + j; };
  std::vector<SparseRow> rows;

  for (const auto& [va, vb] : mesh.edges()) {
    const Vertex& a = mesh.vertices()[va];
    const Vertex& b = mesh.vertices()[vb];
    const bool vertical = a.x == b.x;
    const Coord mx = (a.x + b.x) / 2, my = (a.y + b.y) / 2;
    int lo_cell, hi_cell;
    if (vertical) {
      lo_cell = mesh.locate_cell(a.x, my, -1, 1);
      hi_cell = mesh.locate_cell(a.x, my, 1, 1);
    } else {
      lo_cell = mesh.locate_cell(mx, a.y, 1, -1);
      hi_cell = mesh.locate_cell(mx, a.y, 1, 1);
    }
    if ((lo_cell < 0 || hi_cell < 0) && !homogeneous) continue;
    const int normal_orders = vertical ? m : n;
    const int along_deg = vertical ? n : m;
    // rows indexed by (k normal derivative order, l power along the edge)
    std::vector<std::vector<std::pair<int, Rational>>> block(normal_orders * (along_deg + 1));
    for (int side = 0; side < 2; ++side) {
      const int cell = side == 0 ? lo_cell : hi_cell;
      if (cell < 0) continue;
      const Cell& c = mesh.cells()[cell];
      const Rational sign = side == 0 ? Rational(-1) : Rational(1);
      const auto dt = vertical ? derivative_table(a.x - c.x0, m) : derivative_table(a.y - c.y0, n);
      const auto rt = vertical ? reexpand_table(a.y - c.y0, n) : reexpand_table(a.x - c.x0, m);
      for (int k = 0; k < normal_orders; ++k) {
        for (int l = 0; l <= along_deg; ++l) {
          auto& row = block[k * (along_deg + 1) + l];
          for (int i = 0; i <= m; ++i) {
            for (int j = 0; j <= n; ++j) {
              const int normal_pow = vertical ? i : j;
              const int along_pow = vertical ? j : i;
              if (normal_pow < k || along_pow < l) continue;
              const Rational v = sign * dt[k][normal_pow] * rt[l][along_pow];
              if (v != 0) row.emplace_back(col(cell, i, j), v);
            }
          }
        }
      }
    }
    for (auto& entries : block) {
      LinearSystem tmp(columns);
      tmp.add_row(std::move(entries));
      if (!tmp.rows()[0].entries.empty()) rows.push_back(tmp.rows()[0]);
    }
  }
  std::stable_sort(rows.begin(), rows.end(), [](const SparseRow& x, const SparseRow& y) {
    if (x.entries.front().first != y.entries.front().first) return x.entries.front().first < y.entries.front().first;
    return x.entries.size() < y.entries.size();
  });
  for (const auto& r : rows) ech.insert(r);
  return columns - static_cast<long long>(ech.rank());
}

long long dim_conformality_oracle(const TMesh& mesh, int m, int n) {
  return static_cast<long long>(nullspace_dim(assemble_W(mesh, m, n)));
}

bool DimensionReport::agree() const {
  std::optional<long long> seen;
  for (const auto& v : {formula, conformality, cellwise}) {
    if (!v) continue;
    if (seen && *seen != *v) return false;
    seen = v;
  }
  return true;
}

DimensionReport dim_spline_space(const Hierarchy& h, const DimensionOptions& options) {
  DimensionReport r;
  r.m = h.spec.m;
  r.n = h.spec.n;
  r.pairing = options.extension.pairing;
  const TMesh ext = extend(h.mesh, r.m, r.n, options.extension);
  if (options.formula) {
    const auto t0 = std::chrono::steady_clock::now();
    r.census = census(ext, h.forest);
    r.formula = dim_formula(*r.census, r.m, r.n);
    r.formula_ms = elapsed_ms(t0);
  }
  if (options.conformality) {
    const auto t0 = std::chrono::steady_clock::now();
    r.conformality = dim_conformality_oracle(ext, r.m, r.n);
    r.conformality_ms = elapsed_ms(t0);
  }
  if (options.cellwise) {
    const auto t0 = std::chrono::steady_clock::now();
    r.cellwise = dim_cellwise_oracle(h.mesh, r.m, r.n, false);
    r.cellwise_ms = elapsed_ms(t0);
  }
  return r;
}

DimensionReport dim_spline_space(const TMesh& mesh, int m, int n, const DimensionOptions& options) {
  if (options.formula && !options.conformality && !options.cellwise) {
    throw Error(ErrorCode::NotInClass, "closed form needs a mesh built from a refinement script");
  }
  DimensionReport r;
  r.m = m;
  r.n = n;
  r.pairing = options.extension.pairing;
  r.in_class = false;
  const bool extended = mesh.extension_depth() > 0;
  if (options.conformality) {
    const auto t0 = std::chrono::steady_clock::now();
    r.conformality = dim_conformality_oracle(extended ? mesh : extend(mesh, m, n, options.extension), m, n);
    r.conformality_ms = elapsed_ms(t0);
  }
  if (options.cellwise) {
    const auto t0 = std::chrono::steady_clock::now();
    r.cellwise = dim_cellwise_oracle(mesh, m, n, extended);
    r.cellwise_ms = elapsed_ms(t0);
  }
  return r;
}

}  // namespace hts
