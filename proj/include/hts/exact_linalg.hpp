#pragma once

// Exact sparse linear algebra over Q. Rows are cleared to primitive integer
// rows and reduced by fraction-free elimination: pivot and target row are
// cross-multiplied by cofactors of the gcd of their leading entries and the
// result is divided by its content, so no denominators appear and entries stay
// small. Pivot order is the column order, which makes every result
// deterministic.

#include <cstddef>
#include <utility>
#include <vector>

#include "hts/rational.hpp"

namespace hts {

struct SparseRow {
  std::vector<std::pair<int, Rational>> entries;  // strictly increasing columns, no zeros
};

/// Where a row came from: an l-edge (or other source) id and a moment exponent.
struct RowTag {
  int source = -1;
  int exponent = -1;
};

/// Homogeneous system A k = 0.
class LinearSystem {
 public:
  explicit LinearSystem(int columns = 0) : columns_(columns) {}

  int columns() const noexcept { return columns_; }
  std::size_t row_count() const noexcept { return rows_.size(); }
  const std::vector<SparseRow>& rows() const noexcept { return rows_; }
  const std::vector<RowTag>& tags() const noexcept { return tags_; }

  /// Entries may be unsorted and may contain zeros or repeated columns
  /// (repeats are summed).
  void add_row(std::vector<std::pair<int, Rational>> entries, RowTag tag = {});
  void append(const LinearSystem& other);

  /// Exact residual check: every row evaluates to 0 on x.
  bool satisfied_by(const std::vector<Rational>& x) const;

 private:
  int columns_;
  std::vector<SparseRow> rows_;
  std::vector<RowTag> tags_;
};

/// Incremental row echelon form over the integers.
class IntegerEchelon {
 public:
  explicit IntegerEchelon(int columns);

  /// Reduces the row against the current pivots; keeps it as a new pivot if a
  /// nonzero remainder survives. Returns whether the rank grew.
  bool insert(const SparseRow& row);
  bool insert_integer(std::vector<int> cols, std::vector<Integer> vals);

  std::size_t rank() const noexcept { return pivots_.size(); }
  int columns() const noexcept { return columns_; }

  /// Basis of the right nullspace of the inserted rows: one vector per free
  /// column f with x_f = 1 and the other free entries 0.
  std::vector<std::vector<Rational>> nullspace() const;

 private:
  struct Row {
    std::vector<int> cols;
    std::vector<Integer> vals;
  };
  bool reduce_and_store(Row row);

  int columns_;
  std::vector<int> pivot_of_column_;
  std::vector<Row> pivots_;
  Row scratch_;
};

std::size_t rank(const LinearSystem& system);
std::size_t nullspace_dim(const LinearSystem& system);
std::vector<std::vector<Rational>> nullspace_basis(const LinearSystem& system);

/// Rank of a dense family of vectors, all of the same length.
std::size_t rank_of_vectors(const std::vector<std::vector<Rational>>& vectors);

}  // namespace hts
