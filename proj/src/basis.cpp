#include "hts/basis.hpp"

#include <algorithm>
#include <sstream>
#include <tuple>

#include "hts/error.hpp"
#include "hts/exact_linalg.hpp"

namespace hts {

std::string_view to_string(ASet label) {
  switch (label) {
    case ASet::None: return "-";
    case ASet::A1: return "A1";
    case ASet::A2: return "A2";
    case ASet::A3: return "A3";
    case ASet::A4: return "A4";
    case ASet::A5: return "A5";
  }
  return "?";
}

std::vector<std::vector<int>> level_partition(const TMesh& extended) {
  std::vector<std::vector<int>> out(1);
  for (const auto& e : extended.ledges()) {
    if (!e.interior) continue;
    const int level = e.level.value_or(0);
    if (level >= static_cast<int>(out.size())) out.resize(level + 1);
    out[level].push_back(e.id);
  }
  return out;
}

namespace {

bool crosses(const Segment& s, const Rect& r) {
  if (s.orientation == Orientation::Vertical) {
    return r.x0 < s.fixed && s.fixed < r.x1 && std::max(s.lo, r.y0) < std::min(s.hi, r.y1);
  }
  return r.y0 < s.fixed && s.fixed < r.y1 && std::max(s.lo, r.x0) < std::min(s.hi, r.x1);
}

int ledge_degree(Orientation o, int m, int n) { return o == Orientation::Horizontal ? m : n; }

auto order_key(const Segment& s) {
  return std::make_tuple(s.orientation == Orientation::Vertical ? 0 : 1, s.fixed, s.lo);
}

const LEdge* find_ledge(const TMesh& mesh, const Segment& s) {
  for (const auto& e : mesh.ledges()) {
    if (e.segment().same_line(s)) return &e;
  }
  return nullptr;
}

}  // namespace

std::vector<int> position_labels(const TMesh& extended, const LEdge& ledge, const SubdomainForest& forest) {
  const int level = ledge.level.value_or(0);
  if (level < 1) throw Error(ErrorCode::NoParentSubdomain, "level-0 l-edges have no parent block");
  const Segment seg = ledge.segment();
  std::vector<int> out;
  for (int id : forest.at_level(level - 1)) {
    const Subdomain& d = forest.subdomains[id];
    if (!d.subdivided || !crosses(seg, d.rect)) continue;
    std::vector<Coord> fixed;
    for (const auto& e : extended.ledges()) {
      if (!e.interior || e.orientation != ledge.orientation || e.level.value_or(0) != level) continue;
      if (crosses(e.segment(), d.rect)) fixed.push_back(e.fixed);
    }
    std::sort(fixed.begin(), fixed.end());
    if (ledge.orientation == Orientation::Horizontal) std::reverse(fixed.begin(), fixed.end());
    const auto it = std::find(fixed.begin(), fixed.end(), ledge.fixed);
    out.push_back(static_cast<int>(it - fixed.begin()) + 1);
  }
  if (out.empty()) {
    throw Error(ErrorCode::NoParentSubdomain, "l-edge at " + to_string(ledge.fixed) + " crosses no split block");
  }
  return out;
}

int position_label(const TMesh& extended, const LEdge& ledge, const SubdomainForest& forest) {
  return position_labels(extended, ledge, forest).front();
}

ASet classify_A(const LEdge& ledge, int position, int m, int n) {
  const bool vertical = ledge.orientation == Orientation::Vertical;
  const int d = vertical ? m : n;
  if (position < 1 || position > d - 1) {
    throw Error(ErrorCode::UnlabeledEdge, "position " + std::to_string(position) + " out of range");
  }
  if (position < d - 2) return ASet::A1;
  if (position == d - 2) return vertical ? ASet::A3 : ASet::A2;
  return vertical ? ASet::A5 : ASet::A4;
}

std::string_view to_string(TrivialPolicy policy) {
  return policy == TrivialPolicy::Phased ? "phased" : "trivial-first";
}

TrivialPolicy parse_trivial_policy(std::string_view text) {
  if (text == "phased") return TrivialPolicy::Phased;
  if (text == "trivial-first") return TrivialPolicy::TrivialFirst;
  throw Error(ErrorCode::InvalidArgument, "unknown trivial policy \"" + std::string(text) + "\"");
}

OrderedLEdges order_ledges(const TMesh& extended, const SubdomainForest& forest, int m, int n, TieBreak tie,
                           TrivialPolicy policy) {
  OrderedLEdges out;
  out.m = m;
  out.n = n;
  auto cur = std::make_shared<const TMesh>(extended);

  auto is_trivial = [&](const LEdge& e) {
    return static_cast<int>(e.vertices.size()) <= ledge_degree(e.orientation, m, n) + 1;
  };
  auto less = [](const LEdge* a, const LEdge* b) { return order_key(a->segment()) < order_key(b->segment()); };
  auto best = [&](const std::vector<const LEdge*>& pool) {
    return tie == TieBreak::Least ? *std::min_element(pool.begin(), pool.end(), less)
                                  : *std::max_element(pool.begin(), pool.end(), less);
  };
  // removes e from the current mesh; nullopt when that leaves a dangling segment
  auto try_remove = [&](const LEdge& e) -> std::optional<TMesh> {
    try {
      return remove_ledge(*cur, e.id);
    } catch (const Error& err) {
      if (err.code() != ErrorCode::DanglingSegment) throw;
      return std::nullopt;
    }
  };
  auto take = [&](const LEdge& e, TMesh next, int level, ASet label, int position) {
    RemovalStep s;
    s.ledge = e.segment();
    s.level = level;
    s.label = label;
    s.position = position;
    s.vplus = static_cast<long long>(crossing_count(*cur, e));
    s.vertices = static_cast<long long>(e.vertices.size());
    s.dim = std::max(0LL, s.vertices - ledge_degree(e.orientation, m, n) - 1);
    s.trivial = s.dim == 0;
    s.before = cur;
    out.steps.push_back(std::move(s));
    cur = std::make_shared<const TMesh>(std::move(next));
  };
  // trivial candidates first, then the rest, each in tie-break order
  auto take_one = [&](std::vector<const LEdge*> trivial, std::vector<const LEdge*> rest, auto&& on_taken) {
    for (auto* pool : {&trivial, &rest}) {
      while (!pool->empty()) {
        const LEdge* e = best(*pool);
        if (auto next = try_remove(*e)) {
          on_taken(*e, std::move(*next));
          return;
        }
        pool->erase(std::find(pool->begin(), pool->end(), e));
      }
    }
    throw Error(ErrorCode::UnhandledConfiguration, "every remaining l-edge leaves a dangling segment");
  };

  const auto groups = level_partition(extended);
  for (int level = static_cast<int>(groups.size()) - 1; level >= 1; --level) {
    struct Labeled {
      Segment seg;
      ASet label;
      int position;
    };
    std::vector<Labeled> remaining;
    for (int id : groups[level]) {
      const LEdge& e = extended.ledges()[id];
      const int pos = position_label(extended, e, forest);
      remaining.push_back({e.segment(), classify_A(e, pos, m, n), pos});
    }
    auto current = [&](const Labeled& l) {
      const LEdge* e = find_ledge(*cur, l.seg);
      if (!e) throw Error(ErrorCode::UnhandledConfiguration, "l-edge changed shape during removal");
      return e;
    };
    for (ASet phase : {ASet::A1, ASet::A2, ASet::A3, ASet::A4, ASet::A5}) {
      auto in_phase = [&] {
        return std::any_of(remaining.begin(), remaining.end(), [&](const Labeled& l) { return l.label == phase; });
      };
      while (in_phase()) {
        std::vector<const LEdge*> trivial, rest;
        for (const auto& l : remaining) {
          const LEdge* e = current(l);
          if (l.label == phase) {
            (is_trivial(*e) ? trivial : rest).push_back(e);
          } else if (policy == TrivialPolicy::TrivialFirst && is_trivial(*e)) {
            trivial.push_back(e);
          }
        }
        take_one(trivial, rest, [&](const LEdge& e, TMesh next) {
          const auto it = std::find_if(remaining.begin(), remaining.end(),
                                       [&](const Labeled& l) { return l.seg.same_line(e.segment()); });
          take(e, std::move(next), level, it->label, it->position);
          remaining.erase(it);
        });
      }
    }
  }
  while (true) {
    std::vector<const LEdge*> trivial, rest;
    for (const auto& e : cur->ledges()) {
      if (!e.interior) continue;
      if (e.level.value_or(0) != 0) throw Error(ErrorCode::UnhandledConfiguration, "refined l-edge left at level 0");
      (is_trivial(e) ? trivial : rest).push_back(&e);
    }
    if (trivial.empty() && rest.empty()) break;
    take_one(trivial, rest, [&](const LEdge& e, TMesh next) { take(e, std::move(next), 0, ASet::None, 0); });
  }
  out.remainder = cur;
  return out;
}

std::vector<LedgerLevel> telescoping_ledger(const OrderedLEdges& order, const std::vector<int>& delta_per_level) {
  int top = 0;
  for (const auto& s : order.steps) top = std::max(top, s.level);
  std::vector<LedgerLevel> out(top + 1);
  for (int l = 0; l <= top; ++l) {
    out[l].level = l;
    if (l == 0) {
      out[l].correction = static_cast<long long>(order.m - 1) * (order.n - 1);
    } else if (l - 1 < static_cast<int>(delta_per_level.size())) {
      out[l].correction = delta_per_level[l - 1];
    }
  }
  for (const auto& s : order.steps) {
    const int d = ledge_degree(s.ledge.orientation, order.m, order.n);
    out[s.level].dim_sum += s.dim;
    out[s.level].crossing_sum += s.vplus - d + 1;
  }
  return out;
}

PointFactors tensor_factors(const TensorGrid& grid, int m, int n) {
  const auto k1 = bspline_conformality(grid.xs, m);
  const auto k2 = bspline_conformality(grid.ys, n);
  PointFactors out;
  for (std::size_t p = 0; p < grid.xs.size(); ++p) {
    for (std::size_t q = 0; q < grid.ys.size(); ++q) out[{grid.xs[p], grid.ys[q]}] = k1[p] * k2[q];
  }
  return out;
}

ConformalityVector to_vector(const TMesh& mesh, const PointFactors& factors) {
  ConformalityVector cv(mesh.vertices().size());
  for (const auto& [pt, k] : factors) {
    const auto v = mesh.find_vertex(pt.first, pt.second);
    if (!v) {
      throw Error(ErrorCode::InvalidArgument,
                  "(" + to_string(pt.first) + ", " + to_string(pt.second) + ") is not a mesh vertex");
    }
    cv[*v] = k;
  }
  return cv;
}

namespace {

// Coordinates aligned with the l-edge being removed: u runs along it, w
// across it.
struct Frame {
  bool horizontal;
  int du, dw;

  std::pair<Coord, Coord> pt(const Coord& u, const Coord& w) const {
    return horizontal ? std::make_pair(u, w) : std::make_pair(w, u);
  }
  Segment along(const Coord& w, const Coord& u0, const Coord& u1) const {
    return horizontal ? Segment::horizontal(w, u0, u1) : Segment::vertical(w, u0, u1);
  }
  Segment across(const Coord& u, const Coord& w0, const Coord& w1) const {
    return horizontal ? Segment::vertical(u, w0, w1) : Segment::horizontal(u, w0, w1);
  }
  const std::vector<Coord>& w_lines(const TMesh& t) const { return horizontal ? t.y_lines() : t.x_lines(); }
  const std::vector<Coord>& u_lines(const TMesh& t) const { return horizontal ? t.x_lines() : t.y_lines(); }
  TensorGrid grid(const std::vector<Coord>& U, const std::vector<Coord>& W) const {
    return horizontal ? TensorGrid{U, W} : TensorGrid{W, U};
  }
  int m() const { return horizontal ? du : dw; }
  int n() const { return horizontal ? dw : du; }
};

bool supported(const TMesh& t, const Frame& f, const std::vector<Coord>& U, const std::vector<Coord>& W) {
  for (const auto& w : W) {
    if (!t.covers(f.along(w, U.front(), U.back()))) return false;
  }
  for (const auto& u : U) {
    if (!t.covers(f.across(u, W.front(), W.back()))) return false;
  }
  return true;
}

// Windows of `size` consecutive entries of the sorted list that contain
// `must`, narrowest first.
std::vector<std::vector<Coord>> windows_containing(const std::vector<Coord>& sorted, const Coord& must,
                                                   std::size_t size) {
  std::vector<std::vector<Coord>> out;
  const auto it = std::find(sorted.begin(), sorted.end(), must);
  if (it == sorted.end() || sorted.size() < size) return out;
  const std::size_t at = it - sorted.begin();
  for (std::size_t first = at + 1 >= size ? at + 1 - size : 0; first <= at && first + size <= sorted.size(); ++first) {
    out.emplace_back(sorted.begin() + first, sorted.begin() + first + size);
  }
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.back() - a.front() < b.back() - b.front(); });
  return out;
}

// Positions w at which the parallel segment over [U0, Ulast] is covered.
std::vector<Coord> covered_rows(const TMesh& t, const Frame& f, const std::vector<Coord>& U) {
  std::vector<Coord> out;
  for (const auto& w : f.w_lines(t)) {
    if (t.covers(f.along(w, U.front(), U.back()))) out.push_back(w);
  }
  return out;
}

std::vector<Coord> covered_columns(const TMesh& t, const Frame& f, const std::vector<Coord>& W) {
  std::vector<Coord> out;
  for (const auto& u : f.u_lines(t)) {
    if (t.covers(f.across(u, W.front(), W.back()))) out.push_back(u);
  }
  return out;
}

bool all_vertices(const TMesh& t, const PointFactors& fs) {
  for (const auto& [pt, k] : fs) {
    if (!t.find_vertex(pt.first, pt.second)) return false;
  }
  return true;
}

struct Built {
  PointFactors factors;
  TensorGrid n1;
  std::vector<TensorGrid> n2;
  std::vector<Rational> coefficients;
  std::vector<std::pair<Coord, Coord>> cancelled;
};

// Knot sets of the given size drawn from the rows near wE and containing it,
// narrowest first.
std::vector<std::vector<Coord>> row_sets(const std::vector<Coord>& rows, const Coord& wE, std::size_t size) {
  std::vector<std::vector<Coord>> out;
  const auto it = std::find(rows.begin(), rows.end(), wE);
  if (it == rows.end() || rows.size() < size) return out;
  const std::size_t at = it - rows.begin();
  const std::size_t reach = size + 1;
  const std::size_t first = at > reach ? at - reach : 0;
  const std::size_t last = std::min(rows.size(), at + reach + 1);
  std::vector<Coord> pool(rows.begin() + first, rows.begin() + last);
  pool.erase(std::find(pool.begin(), pool.end(), wE));
  std::vector<bool> pick(pool.size(), false);
  std::fill(pick.begin(), pick.begin() + std::min(pool.size(), size - 1), true);
  if (pool.size() < size - 1) return out;
  do {
    std::vector<Coord> set{wE};
    for (std::size_t i = 0; i < pool.size(); ++i) {
      if (pick[i]) set.push_back(pool[i]);
    }
    std::sort(set.begin(), set.end());
    out.push_back(std::move(set));
  } while (std::prev_permutation(pick.begin(), pick.end()));
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    const Coord sa = a.back() - a.front(), sb = b.back() - b.front();
    return sa != sb ? sa < sb : a < b;
  });
  return out;
}

std::optional<Built> try_tensor(const TMesh& t, const Frame& f, const std::vector<Coord>& U,
                                const std::vector<std::vector<Coord>>& sets) {
  for (const auto& W : sets) {
    if (supported(t, f, U, W)) {
      Built b;
      b.n1 = f.grid(U, W);
      b.factors = tensor_factors(b.n1, f.m(), f.n());
      return b;
    }
  }
  return std::nullopt;
}

// Candidate knot sets on the line through P for a cancelling spline: the
// knots nearest P and every consecutive run through P, never using wE.
std::vector<std::vector<Coord>> cancel_knot_sets(const std::vector<Coord>& line, const Coord& wP, const Coord& wE,
                                                 std::size_t size) {
  std::vector<Coord> pool;
  for (const auto& w : line) {
    if (w != wE) pool.push_back(w);
  }
  std::vector<std::vector<Coord>> out;
  if (pool.size() < size) return out;
  std::vector<Coord> nearest = pool;
  std::stable_sort(nearest.begin(), nearest.end(), [&](const Coord& a, const Coord& b) {
    return abs(Coord(a - wP)) < abs(Coord(b - wP));
  });
  nearest.resize(size);
  std::sort(nearest.begin(), nearest.end());
  out.push_back(nearest);
  std::vector<Coord> side;
  for (const auto& w : pool) {
    if ((wP > wE && w > wE) || (wP < wE && w < wE)) side.push_back(w);
  }
  for (auto& v : windows_containing(side, wP, size)) {
    if (v != nearest) out.push_back(std::move(v));
  }
  for (auto& v : windows_containing(pool, wP, size)) {
    if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(std::move(v));
  }
  return out;
}

constexpr std::size_t kMaxCorrectionSets = 400;

std::optional<Built> try_corrected(const TMesh& t, const Frame& f, const std::vector<Coord>& U, const Coord& wE,
                                   const std::vector<std::vector<Coord>>& sets,
                                   const std::vector<Rational>& window_cv) {
  std::vector<const LEdge*> columns;
  for (const auto& u : U) {
    const auto [px, py] = f.pt(u, wE);
    const auto v = t.find_vertex(px, py);
    if (!v) return std::nullopt;
    const Vertex& vx = t.vertices()[*v];
    const int id = f.horizontal ? vx.vertical_ledge : vx.horizontal_ledge;
    if (id < 0) return std::nullopt;
    columns.push_back(&t.ledges()[id]);
  }
  std::size_t tried = 0;
  for (const auto& W : sets) {
    std::vector<Segment> extra;
    for (std::size_t p = 0; p < U.size(); ++p) {
      const LEdge& c = *columns[p];
      if (W.front() < c.lo) extra.push_back(f.across(U[p], W.front(), c.lo));
      if (W.back() > c.hi) extra.push_back(f.across(U[p], c.hi, W.back()));
    }
    if (extra.empty() || ++tried > kMaxCorrectionSets) continue;
    std::optional<TMesh> aug;
    try {
      auto segs = t.segments();
      segs.insert(segs.end(), extra.begin(), extra.end());
      aug = build_tmesh(std::move(segs), t.extension_depth());
    } catch (const Error&) {
      continue;
    }
    if (!supported(*aug, f, U, W)) continue;
    const TensorGrid g1 = f.grid(U, W);
    const PointFactors n1 = tensor_factors(g1, f.m(), f.n());
    std::vector<std::pair<Coord, Coord>> off;
    for (const auto& [pt, k] : n1) {
      if (!t.find_vertex(pt.first, pt.second)) off.push_back(pt);
    }
    auto allowed = [&](const PointFactors& fs) {
      for (const auto& [pt, k] : fs) {
        if (!t.find_vertex(pt.first, pt.second) && std::find(off.begin(), off.end(), pt) == off.end()) return false;
      }
      return true;
    };
    if (!allowed(n1)) continue;

    // cancelling B-splines, one batch per off-mesh point
    std::vector<TensorGrid> grids;
    std::vector<PointFactors> cands;
    for (const auto& P : off) {
      const Vertex& pvx = aug->vertices()[*aug->find_vertex(P.first, P.second)];
      const int through_id = f.horizontal ? pvx.vertical_ledge : pvx.horizontal_ledge;
      if (through_id < 0) continue;
      const LEdge& through = aug->ledges()[through_id];
      std::vector<Coord> line;
      for (int v : through.vertices) line.push_back(f.horizontal ? aug->vertices()[v].y : aug->vertices()[v].x);
      const Coord uP = f.horizontal ? P.first : P.second;
      const Coord wP = f.horizontal ? P.second : P.first;
      for (const auto& W2 : cancel_knot_sets(line, wP, wE, f.dw + 2)) {
        for (const auto& U2 : windows_containing(covered_columns(*aug, f, W2), uP, f.du + 2)) {
          if (!supported(*aug, f, U2, W2)) continue;
          PointFactors n2 = tensor_factors(f.grid(U2, W2), f.m(), f.n());
          if (!allowed(n2)) continue;
          grids.push_back(f.grid(U2, W2));
          cands.push_back(std::move(n2));
        }
      }
    }
    if (cands.empty()) continue;

    // N1 and the candidates restricted to the off-mesh points: find N1 in the
    // span of the candidates there
    const int k = static_cast<int>(cands.size());
    LinearSystem sys(k + 1);
    for (const auto& P : off) {
      std::vector<std::pair<int, Rational>> row;
      for (int j = 0; j < k; ++j) {
        const auto it = cands[j].find(P);
        if (it != cands[j].end()) row.emplace_back(j, it->second);
      }
      row.emplace_back(k, n1.at(P));
      sys.add_row(std::move(row));
    }
    const auto null = nullspace_basis(sys);
    const auto sol = std::find_if(null.begin(), null.end(), [&](const auto& v) { return v[k] != 0; });
    if (sol == null.end()) continue;

    Built b;
    b.n1 = g1;
    b.factors = n1;
    for (int j = 0; j < k; ++j) {
      const Rational c = -(*sol)[j] / (*sol)[k];
      if (c == 0) continue;
      for (const auto& [pt, val] : cands[j]) b.factors[pt] -= c * val;
      b.n2.push_back(grids[j]);
      b.coefficients.push_back(c);
    }
    for (auto it = b.factors.begin(); it != b.factors.end();) {
      it = it->second == 0 ? b.factors.erase(it) : std::next(it);
    }
    bool ok = true;
    for (const auto& P : off) ok = ok && !b.factors.count(P);
    if (!ok || !all_vertices(t, b.factors)) continue;
    if (!in_W(t, to_vector(t, b.factors), f.m(), f.n())) continue;
    // factors along the l-edge must be a multiple of the window vector
    Rational lambda = 0;
    for (std::size_t p = 0; p < U.size() && ok; ++p) {
      const auto it = b.factors.find(f.pt(U[p], wE));
      const Rational val = it == b.factors.end() ? Rational(0) : it->second;
      if (p == 0) lambda = val / window_cv[0];
      ok = lambda != 0 && val == lambda * window_cv[p];
    }
    if (!ok) continue;
    b.cancelled = std::move(off);
    return b;
  }
  return std::nullopt;
}

// Minimal integers, positive at the first window vertex.
void normalize_factors(PointFactors& fs, const std::pair<Coord, Coord>& anchor) {
  std::vector<Rational> vals;
  std::size_t at = 0;
  for (const auto& [pt, k] : fs) {
    if (pt == anchor) at = vals.size();
    vals.push_back(k);
  }
  normalize_minimal_integer(vals, at);
  std::size_t i = 0;
  for (auto& [pt, k] : fs) k = vals[i++];
}

}  // namespace

std::vector<BasisFn> construct_basis(const OrderedLEdges& order) {
  std::vector<BasisFn> out;
  for (std::size_t i = 0; i < order.steps.size(); ++i) {
    const RemovalStep& step = order.steps[i];
    if (step.trivial) continue;
    const TMesh& t = *step.before;
    const LEdge* e = find_ledge(t, step.ledge);
    if (!e) throw Error(ErrorCode::UnhandledConfiguration, "removed l-edge not found in its mesh");
    const bool horizontal = e->orientation == Orientation::Horizontal;
    const Frame f{horizontal, horizontal ? order.m : order.n, horizontal ? order.n : order.m};
    std::vector<Coord> along;
    for (int v : e->vertices) along.push_back(horizontal ? t.vertices()[v].x : t.vertices()[v].y);
    const Coord& wE = e->fixed;
    for (std::size_t w = 0; w + f.du + 2 <= along.size(); ++w) {
      const std::vector<Coord> U(along.begin() + w, along.begin() + w + f.du + 2);
      BasisFn fn;
      fn.step = static_cast<int>(i);
      fn.level = step.level;
      fn.label = step.label;
      fn.window = static_cast<int>(w);
      fn.knots = U;
      for (const auto& u : U) {
        const auto [x, y] = f.pt(u, wE);
        const Vertex& vx = t.vertices()[*t.find_vertex(x, y)];
        const bool both = t.ledges()[vx.horizontal_ledge].level.value_or(0) == step.level &&
                          t.ledges()[vx.vertical_ledge].level.value_or(0) == step.level;
        fn.alpha += step.level > 0 && both;
      }
      const auto sets = row_sets(covered_rows(t, f, U), wE, f.dw + 2);
      auto built = try_tensor(t, f, U, sets);
      if (!built) built = try_corrected(t, f, U, wE, sets, bspline_conformality(U, f.du));
      if (!built) {
        std::ostringstream os;
        os << "no construction for window " << w << " of the " << (horizontal ? "horizontal" : "vertical")
           << " l-edge at " << to_string(wE) << " (level " << step.level << ", " << to_string(step.label)
           << ", alpha " << fn.alpha << ")";
        throw Error(ErrorCode::UnhandledConfiguration, os.str());
      }
      fn.factors = std::move(built->factors);
      normalize_factors(fn.factors, f.pt(U.front(), wE));
      fn.n1 = std::move(built->n1);
      fn.n2 = std::move(built->n2);
      fn.coefficients = std::move(built->coefficients);
      fn.cancelled = std::move(built->cancelled);
      fn.corrected = !fn.n2.empty();
      out.push_back(std::move(fn));
    }
  }
  return out;
}

VerificationReport verify_basis(const std::vector<BasisFn>& fns, const TMesh& extended, int m, int n,
                                long long expected) {
  VerificationReport r;
  r.count = fns.size();
  r.expected = expected;
  std::vector<std::vector<Rational>> vectors;
  vectors.reserve(fns.size());
  for (const auto& fn : fns) {
    ConformalityVector cv;
    try {
      cv = to_vector(extended, fn.factors);
    } catch (const Error&) {
      ++r.nonconformal;
      continue;
    }
    if (!in_W(extended, cv, m, n)) ++r.nonconformal;
    vectors.push_back(std::move(cv));
  }
  r.rank = rank_of_vectors(vectors);
  const auto null = nullspace_basis(assemble_W(extended, m, n));
  r.nullspace = static_cast<long long>(null.size());
  vectors.insert(vectors.end(), null.begin(), null.end());
  r.span_rank = rank_of_vectors(vectors);
  return r;
}

std::string describe(const BasisFn& fn) {
  std::ostringstream os;
  auto list = [&](const std::vector<Coord>& v) {
    os << '[';
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? " " : "") << to_string(v[i]);
    os << ']';
  };
  os << "step " << fn.step << " level " << fn.level << " " << to_string(fn.label) << " window " << fn.window
     << " alpha " << fn.alpha << " knots ";
  list(fn.knots);
  os << " n1 ";
  list(fn.n1.xs);
  os << 'x';
  list(fn.n1.ys);
  for (const auto& P : fn.cancelled) os << " P (" << to_string(P.first) << ", " << to_string(P.second) << ")";
  for (std::size_t j = 0; j < fn.n2.size(); ++j) {
    os << " n2 ";
    list(fn.n2[j].xs);
    os << 'x';
    list(fn.n2[j].ys);
    os << " c " << to_string(fn.coefficients[j]);
  }
  return os.str();
}

}  // namespace hts
