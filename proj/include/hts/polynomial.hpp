#pragma once

#include <string>
#include <vector>

#include "hts/rational.hpp"

namespace hts {

/// Dense univariate polynomial, coefficient i multiplies t^i.
class UniPoly {
 public:
  UniPoly() = default;
  explicit UniPoly(std::vector<Rational> coefficients);

  /// scale * (t - root)^power, expanded.
  static UniPoly shifted_power(const Rational& root, unsigned power, const Rational& scale = 1);

  int degree() const;  // -1 for the zero polynomial
  bool is_zero() const { return degree() < 0; }
  const Rational& coefficient(std::size_t i) const;
  const std::vector<Rational>& coefficients() const noexcept { return c_; }

  Rational operator()(const Rational& t) const;
  UniPoly derivative(unsigned order = 1) const;

  UniPoly& operator+=(const UniPoly& other);
  UniPoly& operator-=(const UniPoly& other);
  UniPoly& operator*=(const Rational& s);
  friend UniPoly operator+(UniPoly a, const UniPoly& b) { return a += b; }
  friend UniPoly operator-(UniPoly a, const UniPoly& b) { return a -= b; }
  friend UniPoly operator*(UniPoly a, const Rational& s) { return a *= s; }
  friend bool operator==(const UniPoly& a, const UniPoly& b);

 private:
  void trim();
  std::vector<Rational> c_;
};

/// Dense bivariate polynomial of bidegree at most (mdeg, ndeg):
/// coefficient (i, j) multiplies x^i y^j.
class BiPoly {
 public:
  BiPoly() = default;
  BiPoly(int mdeg, int ndeg);

  /// scale * (x - x0)^m * (y - y0)^n, expanded in the monomial basis.
  static BiPoly truncated_term(const Rational& scale, const Rational& x0, const Rational& y0, int m, int n);

  int mdeg() const noexcept { return mdeg_; }
  int ndeg() const noexcept { return ndeg_; }

  const Rational& coefficient(int i, int j) const { return c_[index(i, j)]; }
  Rational& coefficient(int i, int j) { return c_[index(i, j)]; }

  bool is_zero() const;
  /// Highest exponent of x (resp. y) with a nonzero coefficient; -1 when zero.
  int x_degree() const;
  int y_degree() const;

  Rational operator()(const Rational& x, const Rational& y) const;

  BiPoly derivative_x(unsigned order) const;
  BiPoly derivative_y(unsigned order) const;

  /// p(x0, y) as a polynomial in y, and p(x, y0) as a polynomial in x.
  UniPoly at_x(const Rational& x0) const;
  UniPoly at_y(const Rational& y0) const;

  /// True iff (x - x0)^power divides p, i.e. d^k p / dx^k (x0, y) == 0 for k < power.
  bool divisible_by_x_power(const Rational& x0, unsigned power) const;
  bool divisible_by_y_power(const Rational& y0, unsigned power) const;

  BiPoly& operator+=(const BiPoly& other);
  BiPoly& operator-=(const BiPoly& other);
  BiPoly& operator*=(const Rational& s);
  friend BiPoly operator+(BiPoly a, const BiPoly& b) { return a += b; }
  friend BiPoly operator-(BiPoly a, const BiPoly& b) { return a -= b; }
  friend BiPoly operator*(BiPoly a, const Rational& s) { return a *= s; }
  friend bool operator==(const BiPoly& a, const BiPoly& b);

  std::string to_string() const;

 private:
  std::size_t index(int i, int j) const { return static_cast<std::size_t>(i) * (ndeg_ + 1) + j; }
  int mdeg_ = 0;
  int ndeg_ = 0;
  std::vector<Rational> c_ = std::vector<Rational>(1);
};

}  // namespace hts
