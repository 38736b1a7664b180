#include "hts/exact_linalg.hpp"

#include <algorithm>
#include <numeric>

#include "hts/error.hpp"

namespace hts {

void LinearSystem::add_row(std::vector<std::pair<int, Rational>> entries, RowTag tag) {
  std::sort(entries.begin(), entries.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  SparseRow row;
  for (auto& [col, val] : entries) {
    if (col < 0 || col >= columns_) throw Error(ErrorCode::InvalidArgument, "row column out of range");
    if (!row.entries.empty() && row.entries.back().first == col) {
      row.entries.back().second += val;
      if (row.entries.back().second == 0) row.entries.pop_back();
    } else if (val != 0) {
      row.entries.emplace_back(col, std::move(val));
    }
  }
  rows_.push_back(std::move(row));
  tags_.push_back(tag);
}

void LinearSystem::append(const LinearSystem& other) {
  if (other.columns_ != columns_) throw Error(ErrorCode::InvalidArgument, "column count mismatch");
  rows_.insert(rows_.end(), other.rows_.begin(), other.rows_.end());
  tags_.insert(tags_.end(), other.tags_.begin(), other.tags_.end());
}

bool LinearSystem::satisfied_by(const std::vector<Rational>& x) const {
  if (static_cast<int>(x.size()) != columns_) return false;
  Rational acc;
  for (const auto& row : rows_) {
    acc = 0;
    for (const auto& [col, val] : row.entries) acc += val * x[col];
    if (acc != 0) return false;
  }
  return true;
}

IntegerEchelon::IntegerEchelon(int columns) : columns_(columns), pivot_of_column_(columns, -1) {}

bool IntegerEchelon::insert(const SparseRow& row) {
  Integer lcm = 1;
  for (const auto& e : row.entries) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), e.second.get_den_mpz_t());
  Row r;
  r.cols.reserve(row.entries.size());
  r.vals.reserve(row.entries.size());
  for (const auto& [col, val] : row.entries) {
    if (val == 0) continue;
    r.cols.push_back(col);
    r.vals.push_back(val.get_num() * (lcm / val.get_den()));
  }
  return reduce_and_store(std::move(r));
}

bool IntegerEchelon::insert_integer(std::vector<int> cols, std::vector<Integer> vals) {
  Row r{std::move(cols), std::move(vals)};
  return reduce_and_store(std::move(r));
}

namespace {

void make_primitive(std::vector<Integer>& vals) {
  if (vals.empty()) return;
  Integer g = abs(vals[0]);
  for (std::size_t i = 1; i < vals.size() && g != 1; ++i) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), vals[i].get_mpz_t());
  }
  if (g > 1) {
    for (auto& v : vals) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
  }
}

}  // namespace

bool IntegerEchelon::reduce_and_store(Row r) {
  make_primitive(r.vals);
  Integer g, fa, fb;
  while (!r.cols.empty()) {
    const int lead = r.cols[0];
    if (lead < 0 || lead >= columns_) throw Error(ErrorCode::InvalidArgument, "column out of range");
    const int p = pivot_of_column_[lead];
    if (p < 0) {
      if (r.vals[0] < 0) {
        for (auto& v : r.vals) v = -v;
      }
      pivot_of_column_[lead] = static_cast<int>(pivots_.size());
      pivots_.push_back(std::move(r));
      return true;
    }
    const Row& piv = pivots_[p];
    mpz_gcd(g.get_mpz_t(), r.vals[0].get_mpz_t(), piv.vals[0].get_mpz_t());
    mpz_divexact(fa.get_mpz_t(), piv.vals[0].get_mpz_t(), g.get_mpz_t());
    mpz_divexact(fb.get_mpz_t(), r.vals[0].get_mpz_t(), g.get_mpz_t());

    // scratch = fa * r - fb * piv, leading column dropped.
    auto& out_cols = scratch_.cols;
    auto& out_vals = scratch_.vals;
    out_cols.clear();
    std::size_t used = 0;
    auto emit = [&](int col) -> Integer& {
      out_cols.push_back(col);
      if (used == out_vals.size()) out_vals.emplace_back();
      return out_vals[used++];
    };
    std::size_t i = 1, j = 1;
    const std::size_t ni = r.cols.size(), nj = piv.cols.size();
    while (i < ni || j < nj) {
      if (j >= nj || (i < ni && r.cols[i] < piv.cols[j])) {
        Integer& dst = emit(r.cols[i]);
        mpz_mul(dst.get_mpz_t(), r.vals[i].get_mpz_t(), fa.get_mpz_t());
        ++i;
      } else if (i >= ni || piv.cols[j] < r.cols[i]) {
        Integer& dst = emit(piv.cols[j]);
        mpz_mul(dst.get_mpz_t(), piv.vals[j].get_mpz_t(), fb.get_mpz_t());
        mpz_neg(dst.get_mpz_t(), dst.get_mpz_t());
        ++j;
      } else {
        Integer& dst = emit(r.cols[i]);
        mpz_mul(dst.get_mpz_t(), r.vals[i].get_mpz_t(), fa.get_mpz_t());
        mpz_submul(dst.get_mpz_t(), piv.vals[j].get_mpz_t(), fb.get_mpz_t());
        if (sgn(dst) == 0) {
          out_cols.pop_back();
          --used;
        }
        ++i;
        ++j;
      }
    }
    std::swap(r.cols, out_cols);
    if (r.vals.size() < used) r.vals.resize(used);
    for (std::size_t k = 0; k < used; ++k) mpz_swap(r.vals[k].get_mpz_t(), out_vals[k].get_mpz_t());
    r.vals.resize(used);
    make_primitive(r.vals);
  }
  return false;
}

std::vector<std::vector<Rational>> IntegerEchelon::nullspace() const {
  std::vector<int> free_cols;
  for (int c = 0; c < columns_; ++c) {
    if (pivot_of_column_[c] < 0) free_cols.push_back(c);
  }
  std::vector<std::vector<Rational>> basis;
  basis.reserve(free_cols.size());
  Rational sum;
  for (int f : free_cols) {
    std::vector<Rational> x(columns_);
    x[f] = 1;
    for (int c = columns_ - 1; c >= 0; --c) {
      const int p = pivot_of_column_[c];
      if (p < 0) continue;
      const Row& row = pivots_[p];
      sum = 0;
      for (std::size_t k = 1; k < row.cols.size(); ++k) {
        const Rational& xv = x[row.cols[k]];
        if (sgn(xv) != 0) sum += Rational(row.vals[k]) * xv;
      }
      if (sgn(sum) != 0) x[c] = -sum / Rational(row.vals[0]);
    }
    basis.push_back(std::move(x));
  }
  return basis;
}

namespace {

IntegerEchelon echelon_of(const LinearSystem& system) {
  std::vector<std::size_t> order(system.row_count());
  std::iota(order.begin(), order.end(), 0);
  const auto& rows = system.rows();
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const int la = rows[a].entries.empty() ? system.columns() : rows[a].entries.front().first;
    const int lb = rows[b].entries.empty() ? system.columns() : rows[b].entries.front().first;
    if (la != lb) return la < lb;
    return rows[a].entries.size() < rows[b].entries.size();
  });
  IntegerEchelon ech(system.columns());
  for (std::size_t idx : order) {
    if (!rows[idx].entries.empty()) ech.insert(rows[idx]);
  }
  return ech;
}

}  // namespace

std::size_t rank(const LinearSystem& system) { return echelon_of(system).rank(); }

std::size_t nullspace_dim(const LinearSystem& system) {
  return static_cast<std::size_t>(system.columns()) - rank(system);
}

std::vector<std::vector<Rational>> nullspace_basis(const LinearSystem& system) {
  return echelon_of(system).nullspace();
}

std::size_t rank_of_vectors(const std::vector<std::vector<Rational>>& vectors) {
  if (vectors.empty()) return 0;
  const int cols = static_cast<int>(vectors.front().size());
  IntegerEchelon ech(cols);
  for (const auto& v : vectors) {
    if (static_cast<int>(v.size()) != cols) throw Error(ErrorCode::InvalidArgument, "ragged vector family");
    SparseRow row;
    for (int c = 0; c < cols; ++c) {
      if (v[c] != 0) row.entries.emplace_back(c, v[c]);
    }
    ech.insert(row);
  }
  return ech.rank();
}

}  // namespace hts
