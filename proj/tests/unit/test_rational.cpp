#include "doctest.h"

#include "hts/error.hpp"
#include "hts/exact_linalg.hpp"
#include "hts/polynomial.hpp"
#include "hts/rational.hpp"

using namespace hts;

TEST_CASE("rationals are canonical and round-trip through text") {
  CHECK(to_string(parse_rational("6/4")) == "3/2");
  CHECK(to_string(parse_rational("-10/5")) == "-2");
  CHECK(to_string(parse_rational("7")) == "7");
  CHECK(parse_rational("1/3") + parse_rational("1/6") == Rational(1, 2));
  CHECK_THROWS_AS(parse_rational("3/0"), Error);
  CHECK_THROWS_AS(parse_rational("1.5"), Error);
  CHECK_THROWS_AS(parse_rational(""), Error);
  CHECK(binomial(5, 2) == 10);
  CHECK(factorial(5) == 120);
}

TEST_CASE("minimal integer normalization") {
  std::vector<Rational> v{Rational(-1, 2), Rational(1), Rational(-1, 2)};
  normalize_minimal_integer(v);
  CHECK(v[0] == 1);
  CHECK(v[1] == -2);
  CHECK(v[2] == 1);
}

TEST_CASE("nullspace of an empty or diagonal system") {
  LinearSystem empty(5);
  CHECK(nullspace_dim(empty) == 5);
  LinearSystem diag(4);
  for (int i = 0; i < 4; ++i) diag.add_row({{i, Rational(i + 1)}});
  CHECK(nullspace_dim(diag) == 0);
  CHECK(nullspace_basis(diag).empty());
}

TEST_CASE("nullspace vectors satisfy every row") {
  // two moment rows over three points 0, 1, 2
  LinearSystem s(3);
  s.add_row({{0, 1}, {1, 1}, {2, 1}});
  s.add_row({{0, 0}, {1, 1}, {2, 2}});
  auto basis = nullspace_basis(s);
  REQUIRE(basis.size() == 1);
  CHECK(s.satisfied_by(basis[0]));
  normalize_minimal_integer(basis[0]);
  CHECK(basis[0] == std::vector<Rational>{1, -2, 1});
}

TEST_CASE("repeated and cancelling entries are summed") {
  LinearSystem s(2);
  s.add_row({{1, 2}, {0, 1}, {1, -2}});
  REQUIRE(s.rows()[0].entries.size() == 1);
  CHECK(s.rows()[0].entries[0].first == 0);
}

TEST_CASE("rank agrees with a dense Rational Gauss-Jordan reference") {
  // Vandermonde rows on distinct points are independent, a repeated row is not.
  std::vector<std::vector<Rational>> rows;
  const Rational pts[] = {Rational(-1), Rational(1, 3), Rational(2), Rational(5, 7)};
  for (int j = 0; j < 3; ++j) {
    std::vector<Rational> r;
    for (const auto& t : pts) r.push_back(power(t, j));
    rows.push_back(r);
  }
  rows.push_back(rows[1]);
  CHECK(rank_of_vectors(rows) == 3);
}

TEST_CASE("bivariate polynomial algebra") {
  const BiPoly p = BiPoly::truncated_term(Rational(2), Rational(1), Rational(0), 2, 1);  // 2 (x-1)^2 y
  CHECK(p(Rational(3), Rational(5)) == 40);
  CHECK(p.x_degree() == 2);
  CHECK(p.y_degree() == 1);
  CHECK(p.divisible_by_x_power(Rational(1), 2));
  CHECK_FALSE(p.divisible_by_x_power(Rational(1), 3));
  CHECK(p.divisible_by_y_power(Rational(0), 1));
  CHECK(p.derivative_x(2).at_x(Rational(7)) == UniPoly({Rational(0), Rational(4)}));
  BiPoly q(1, 1);
  q.coefficient(1, 1) = 1;
  CHECK((p - p).is_zero());
  CHECK((q + p)(Rational(1), Rational(1)) == 1);
}

TEST_CASE("univariate shifted powers") {
  const UniPoly u = UniPoly::shifted_power(Rational(2), 3);
  CHECK(u(Rational(2)) == 0);
  CHECK(u(Rational(5)) == 27);
  CHECK(u.derivative(3)(Rational(0)) == 6);
}
