// Acceptance run: one PASS/FAIL line per criterion. All arithmetic is exact;
// the only tolerances are the wall-clock limits below.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "hts/basis.hpp"
#include "hts/cli_io.hpp"
#include "hts/conformality.hpp"
#include "hts/dimension.hpp"
#include "hts/exact_linalg.hpp"
#include "hts/extension.hpp"
#include "hts/sampling.hpp"

using namespace hts;

namespace {

constexpr double kLimit1 = 10, kLimit2 = 30, kLimit3 = 300, kLimit4 = 60, kLimit5 = 60, kLimit6 = 60, kLimit7 = 300,
                 kLimit8 = 300;
constexpr int kSweepMeshes = 200;
constexpr int kSweepSeed = 7;
constexpr int kSampledMeshes = 20;

struct Outcome {
  bool ok = true;
  std::string detail;
};

struct SweepMesh {
  HierSpec spec;
  Hierarchy h;
  ExtensionOptions extension;
  TMesh ext;
  DimensionReport dims;
};

std::vector<SweepMesh> sweep;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int failures = 0;

void criterion(int id, const char* name, double limit, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const bool ok = o.ok && s <= limit;
  failures += !ok;
  std::printf("%s %d %s: %s (%.2f s, limit %.0f s)\n", ok ? "PASS" : "FAIL", id, name, o.detail.c_str(), s, limit);
  std::fflush(stdout);
}

// Cell pairs sharing an edge of positive length: vertical first, then horizontal.
std::vector<std::pair<int, int>> neighbours(const TMesh& t, Orientation o) {
  std::multimap<Coord, int> starts;
  for (const auto& c : t.cells()) starts.emplace(o == Orientation::Vertical ? c.x0 : c.y0, c.id);
  std::vector<std::pair<int, int>> out;
  for (const auto& a : t.cells()) {
    const auto [lo, hi] = starts.equal_range(o == Orientation::Vertical ? a.x1 : a.y1);
    for (auto it = lo; it != hi; ++it) {
      const Cell& b = t.cells()[it->second];
      const bool overlap =
          o == Orientation::Vertical ? std::min(a.y1, b.y1) > std::max(a.y0, b.y0) : std::min(a.x1, b.x1) > std::max(a.x0, b.x0);
      if (overlap) out.emplace_back(a.id, b.id);
    }
  }
  return out;
}

ConformalityVector random_combination(std::mt19937_64& rng, const std::vector<std::vector<Rational>>& basis,
                                      std::size_t size) {
  std::uniform_int_distribution<int> c(-5, 5);
  ConformalityVector cv(size);
  for (const auto& b : basis) {
    const Rational w = c(rng);
    for (std::size_t i = 0; i < size; ++i) cv[i] += w * b[i];
  }
  return cv;
}

}  // namespace

int main() {
  const std::string script = std::string(HTS_TEST_DATA) + "/bicubic_three_levels.tm";

  criterion(1, "three-level bicubic census and dimension", kLimit1, [&]() -> Outcome {
    const Hierarchy h = hierarchy_of(parse_mesh(read_file(script)));
    const auto r = dim_spline_space(h);
    const Census& c = *r.census;
    std::ostringstream d;
    d << "V+=" << c.Vplus << " E_H=" << c.E_H << " E_V=" << c.E_V << " delta=" << c.delta << " dim " << *r.formula
      << "/" << *r.conformality << "/" << *r.cellwise;
    return {c.Vplus == 166 && c.E_H == 21 && c.E_V == 19 && c.delta == 3 && r.formula == 93 && r.conformality == 93 &&
                r.cellwise == 93,
            d.str()};
  });

  criterion(2, "three-level bicubic basis", kLimit2, [&]() -> Outcome {
    const Hierarchy h = hierarchy_of(parse_mesh(read_file(script)));
    const TMesh ext = extend(h.mesh, 3, 3);
    const auto fns = construct_basis(order_ledges(ext, h.forest, 3, 3));
    std::vector<int> per(3);
    for (const auto& f : fns) ++per.at(f.level);
    const auto v = verify_basis(fns, ext, 3, 3, 93);
    std::ostringstream d;
    d << per[0] << "+" << per[1] << "+" << per[2] << "=" << fns.size() << " count " << v.count_ok() << " independent "
      << v.independent() << " conformal " << v.conformal() << " span " << v.span_ok();
    return {per == std::vector<int>{72, 7, 14} && v.all(), d.str()};
  });

  criterion(3, "random hierarchies, three paths agree", kLimit3, [&]() -> Outcome {
    std::mt19937_64 rng(kSweepSeed);
    const int pairs[4][2] = {{2, 2}, {2, 3}, {3, 3}, {4, 3}};
    int disagree = 0;
    for (int i = 0; i < kSweepMeshes; ++i) {
      SpecSampler s;
      s.m = pairs[i % 4][0];
      s.n = pairs[i % 4][1];
      SweepMesh sm;
      sm.spec = random_spec(rng, s);
      sm.h = generate(sm.spec);
      sm.extension.placement = random_placement(rng, s.m, s.n, sm.extension.pairing);
      DimensionOptions o;
      o.extension = sm.extension;
      sm.dims = dim_spline_space(sm.h, o);
      sm.ext = extend(sm.h.mesh, s.m, s.n, sm.extension);
      disagree += !sm.dims.agree();
      sweep.push_back(std::move(sm));
    }
    std::ostringstream d;
    d << sweep.size() << " meshes (p,q<=8, levels<=3), " << disagree << " disagreements";
    return {disagree == 0 && sweep.size() >= 200, d.str()};
  });

  criterion(4, "tensor meshes", kLimit4, [&]() -> Outcome {
    std::mt19937_64 rng(4);
    std::uniform_int_distribution<int> deg(1, 4), cells(1, 6), gap(1, 3);
    int bad = 0;
    auto check = [&](int m, int n, const std::vector<Coord>& xs, const std::vector<Coord>& ys) {
      const TMesh e = extend(tensor_mesh(xs, ys), m, n);
      const long long expect = (static_cast<long long>(e.x_lines().size()) - m - 1) * (e.y_lines().size() - n - 1);
      long long got = dim_conformality_oracle(e, m, n);
      bool ok = got == expect && dim_cellwise_oracle(tensor_mesh(xs, ys), m, n) == expect;
      if (m >= 2 && n >= 2) {
        HierSpec s;
        s.m = m;
        s.n = n;
        s.p = static_cast<int>(xs.size()) - 1;
        s.q = static_cast<int>(ys.size()) - 1;
        s.x_coords = xs;
        s.y_coords = ys;
        ok = ok && dim_spline_space(generate(s)).formula == expect;
      }
      bad += !ok;
      return expect;
    };
    std::vector<Coord> ux, uy;
    for (int i = 0; i <= 5; ++i) ux.emplace_back(i);
    for (int j = 0; j <= 6; ++j) uy.emplace_back(j);
    const long long anchor = check(3, 3, ux, uy);
    for (int trial = 0; trial < 50; ++trial) {
      const int m = deg(rng), n = deg(rng);
      std::vector<Coord> xs{0}, ys{0};
      for (int i = cells(rng); i > 0; --i) xs.push_back(xs.back() + gap(rng));
      for (int j = cells(rng); j > 0; --j) ys.push_back(ys.back() + gap(rng));
      check(m, n, xs, ys);
    }
    std::ostringstream d;
    d << "5x6 bicubic anchor " << anchor << ", 50 random meshes, " << bad << " mismatches";
    return {anchor == 72 && bad == 0, d.str()};
  });

  criterion(5, "m = n = 2 closed form", kLimit5, [&]() -> Outcome {
    std::mt19937_64 rng(5);
    int bad = 0;
    for (int i = 0; i < 50; ++i) {
      SpecSampler s;
      s.m = s.n = 2;
      const auto r = dim_spline_space(generate(random_spec(rng, s)));
      const Census& c = *r.census;
      const long long simple = c.Vplus - (c.E_H + c.E_V) + c.delta + 1;
      bad += !(r.formula == simple && r.conformality == simple && r.cellwise == simple);
    }
    std::ostringstream d;
    d << "50 meshes, " << bad << " mismatches";
    return {bad == 0, d.str()};
  });

  criterion(6, "conformality suite", kLimit6, [&]() -> Outcome {
    std::mt19937_64 rng(6);
    std::ostringstream d;
    // (r - d - 1)+ on l-edges of sweep meshes
    int edges = 0, edge_bad = 0;
    for (const auto& sm : sweep) {
      for (const auto& e : sm.ext.ledges()) {
        if (edges == 100) break;
        const int degree = e.orientation == Orientation::Horizontal ? sm.spec.m : sm.spec.n;
        std::vector<Coord> t;
        for (int v : e.vertices) {
          const Vertex& p = sm.ext.vertices()[v];
          t.push_back(e.orientation == Orientation::Horizontal ? p.x : p.y);
        }
        const long long r = static_cast<long long>(t.size());
        edge_bad += static_cast<long long>(nullspace_dim(moment_system(t, degree))) != std::max(0LL, r - degree - 1);
        ++edges;
      }
      if (edges == 100) break;
    }
    d << "l-edges " << edges - edge_bad << "/" << edges;
    // sign alternation, degrees 1..5
    int sign_bad = 0;
    std::uniform_int_distribution<int> num(1, 9), den(1, 4);
    for (int deg = 1; deg <= 5; ++deg) {
      for (int trial = 0; trial < 20; ++trial) {
        std::vector<Coord> t{Coord(num(rng))};
        for (int i = 0; i <= deg; ++i) t.push_back(t.back() + make_rational(num(rng), den(rng)));
        const auto k = bspline_conformality(t, deg);
        for (std::size_t i = 0; i + 1 < k.size(); ++i) sign_bad += sgn(k[i]) * sgn(k[i + 1]) >= 0;
      }
    }
    d << ", sign errors " << sign_bad;
    // tensor vectors
    int tensor_bad = 0;
    for (int m = 1; m <= 4; ++m) {
      for (int n = 1; n <= 4; ++n) {
        std::vector<Coord> xs{0}, ys{0};
        for (int i = 0; i <= m; ++i) xs.push_back(xs.back() + make_rational(num(rng), den(rng)));
        for (int j = 0; j <= n; ++j) ys.push_back(ys.back() + make_rational(num(rng), den(rng)));
        const TMesh t = tensor_mesh(xs, ys);
        const auto cv = place_on_grid(t, xs, ys, tensor_conformality(bspline_conformality(xs, m), bspline_conformality(ys, n)));
        tensor_bad += !in_W(t, cv, m, n);
      }
    }
    d << ", tensor " << 16 - tensor_bad << "/16";
    // K round trip and moment closure on W vectors
    int vectors = 0, k_bad = 0, moment_bad = 0, detect_bad = 0;
    for (std::size_t i = 0; vectors < 50; i = (i + 7) % sweep.size()) {
      const SweepMesh& sm = sweep[i];
      const int m = sm.spec.m, n = sm.spec.n;
      if (sm.ext.vertices().size() > 400) continue;
      const auto basis = nullspace_basis(assemble_W(sm.ext, m, n));
      for (int rep = 0; rep < 5 && vectors < 50; ++rep, ++vectors) {
        const ConformalityVector cv = random_combination(rng, basis, sm.ext.vertices().size());
        const SplineFn f{&sm.ext, cv, m, n};
        bool same = true;
        for (const auto& v : sm.ext.vertices()) {
          if (v.kind != VertexKind::Boundary) same = same && extract_cofactors(f, v.x, v.y).k == cv[v.id];
        }
        k_bad += !same;
        for (const auto& e : sm.ext.ledges()) {
          moment_bad += !ledge_moment_polynomial(sm.ext, e, cv, e.orientation == Orientation::Horizontal ? m : n).is_zero();
        }
        ConformalityVector off = cv;
        off[std::uniform_int_distribution<std::size_t>(0, off.size() - 1)(rng)] += 1;
        bool nonzero = false;
        for (const auto& e : sm.ext.ledges()) {
          nonzero = nonzero ||
                    !ledge_moment_polynomial(sm.ext, e, off, e.orientation == Orientation::Horizontal ? m : n).is_zero();
        }
        detect_bad += !nonzero || in_W(sm.ext, off, m, n);
      }
    }
    d << ", K round trip " << vectors - k_bad << "/" << vectors << ", moment closure errors " << moment_bad + detect_bad;
    return {edges == 100 && edge_bad == 0 && sign_bad == 0 && tensor_bad == 0 && k_bad == 0 && moment_bad == 0 &&
                detect_bad == 0,
            d.str()};
  });

  criterion(7, "basis smoothness on sampled sweep meshes", kLimit7, [&]() -> Outcome {
    int meshes = 0, functions = 0, smooth_bad = 0, outer_bad = 0, verify_bad = 0, pairs_checked = 0;
    for (std::size_t i = 0; i < sweep.size() && meshes < kSampledMeshes; i += sweep.size() / kSampledMeshes) {
      const SweepMesh& sm = sweep[i];
      const int m = sm.spec.m, n = sm.spec.n;
      const auto fns = construct_basis(order_ledges(sm.ext, sm.h.forest, m, n));
      verify_bad += !verify_basis(fns, sm.ext, m, n, *sm.dims.conformality).all();
      const auto vertical = neighbours(sm.ext, Orientation::Vertical);
      const auto horizontal = neighbours(sm.ext, Orientation::Horizontal);
      for (const auto& fn : fns) {
        const SplineFn f{&sm.ext, to_vector(sm.ext, fn.factors), m, n};
        const auto polys = piecewise_polynomials(f);
        for (const auto& [a, b] : vertical) {
          smooth_bad += !(polys[b] - polys[a]).divisible_by_x_power(sm.ext.cells()[a].x1, m);
        }
        for (const auto& [a, b] : horizontal) {
          smooth_bad += !(polys[b] - polys[a]).divisible_by_y_power(sm.ext.cells()[a].y1, n);
        }
        pairs_checked += static_cast<int>(vertical.size() + horizontal.size());
        for (const auto& p : outer_polynomials(f)) outer_bad += !p.is_zero();
        ++functions;
      }
      ++meshes;
    }
    std::ostringstream d;
    d << meshes << " meshes, " << functions << " functions, " << pairs_checked << " edge checks, " << smooth_bad
      << " not divisible, " << outer_bad << " nonzero outer pieces, " << verify_bad << " failed verification";
    return {meshes == kSampledMeshes && smooth_bad == 0 && outer_bad == 0 && verify_bad == 0, d.str()};
  });

  criterion(8, "telescoping ledger on the sweep meshes", kLimit8, [&]() -> Outcome {
    int unbalanced = 0, sum_bad = 0, levels = 0;
    for (const auto& sm : sweep) {
      const auto order = order_ledges(sm.ext, sm.h.forest, sm.spec.m, sm.spec.n);
      long long sum = 0;
      for (const auto& st : order.steps) sum += st.dim;
      sum_bad += sum != *sm.dims.conformality;
      const auto ledger = telescoping_ledger(order, sm.dims.census->delta_per_level);
      for (const auto& l : ledger) {
        ++levels;
        unbalanced += !l.balanced();
        if (l.level == 0) unbalanced += l.correction != static_cast<long long>(sm.spec.m - 1) * (sm.spec.n - 1);
      }
    }
    std::ostringstream d;
    d << sweep.size() << " meshes, " << levels << " levels, " << unbalanced << " unbalanced, " << sum_bad
      << " totals off the oracle";
    return {!sweep.empty() && unbalanced == 0 && sum_bad == 0, d.str()};
  });

  std::printf("%s: %d of 8 criteria failed\n", failures ? "FAIL" : "PASS", failures);
  return failures ? 1 : 0;
}
