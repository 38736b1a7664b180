#include "hts/polynomial.hpp"

#include <algorithm>
#include <sstream>

#include "hts/error.hpp"

namespace hts {

namespace {

const Rational& zero_rational() {
  static const Rational z(0);
  return z;
}

// Falling factorial i (i-1) ... (i-k+1).
Integer falling(int i, unsigned k) {
  Integer out = 1;
  for (unsigned t = 0; t < k; ++t) out *= (i - static_cast<int>(t));
  return out;
}

}  // namespace

UniPoly::UniPoly(std::vector<Rational> coefficients) : c_(std::move(coefficients)) { trim(); }

UniPoly UniPoly::shifted_power(const Rational& root, unsigned power, const Rational& scale) {
  std::vector<Rational> c(power + 1);
  // (t - r)^p = sum_i C(p, i) t^i (-r)^(p - i)
  const Rational neg = -root;
  for (unsigned i = 0; i <= power; ++i) {
    c[i] = scale * Rational(binomial(power, i)) * hts::power(neg, power - i);
  }
  return UniPoly(std::move(c));
}

void UniPoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

int UniPoly::degree() const { return static_cast<int>(c_.size()) - 1; }

const Rational& UniPoly::coefficient(std::size_t i) const {
  return i < c_.size() ? c_[i] : zero_rational();
}

Rational UniPoly::operator()(const Rational& t) const {
  Rational acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * t + *it;
  return acc;
}

UniPoly UniPoly::derivative(unsigned order) const {
  if (static_cast<int>(order) > degree()) return UniPoly();
  std::vector<Rational> c(c_.size() - order);
  for (std::size_t i = order; i < c_.size(); ++i) {
    c[i - order] = c_[i] * Rational(falling(static_cast<int>(i), order));
  }
  return UniPoly(std::move(c));
}

UniPoly& UniPoly::operator+=(const UniPoly& other) {
  if (c_.size() < other.c_.size()) c_.resize(other.c_.size());
  for (std::size_t i = 0; i < other.c_.size(); ++i) c_[i] += other.c_[i];
  trim();
  return *this;
}

UniPoly& UniPoly::operator-=(const UniPoly& other) {
  if (c_.size() < other.c_.size()) c_.resize(other.c_.size());
  for (std::size_t i = 0; i < other.c_.size(); ++i) c_[i] -= other.c_[i];
  trim();
  return *this;
}

UniPoly& UniPoly::operator*=(const Rational& s) {
  for (auto& v : c_) v *= s;
  trim();
  return *this;
}

bool operator==(const UniPoly& a, const UniPoly& b) { return a.c_ == b.c_; }

BiPoly::BiPoly(int mdeg, int ndeg) : mdeg_(mdeg), ndeg_(ndeg) {
  if (mdeg < 0 || ndeg < 0) throw Error(ErrorCode::InvalidArgument, "negative bidegree");
  c_.assign(static_cast<std::size_t>(mdeg + 1) * (ndeg + 1), Rational(0));
}

BiPoly BiPoly::truncated_term(const Rational& scale, const Rational& x0, const Rational& y0, int m, int n) {
  BiPoly p(m, n);
  if (scale == 0) return p;
  const UniPoly px = UniPoly::shifted_power(x0, m);
  const UniPoly py = UniPoly::shifted_power(y0, n);
  for (int i = 0; i <= m; ++i) {
    const Rational& a = px.coefficient(i);
    if (a == 0) continue;
    for (int j = 0; j <= n; ++j) {
      const Rational& b = py.coefficient(j);
      if (b != 0) p.coefficient(i, j) = scale * a * b;
    }
  }
  return p;
}

bool BiPoly::is_zero() const {
  return std::all_of(c_.begin(), c_.end(), [](const Rational& v) { return v == 0; });
}

int BiPoly::x_degree() const {
  for (int i = mdeg_; i >= 0; --i) {
    for (int j = 0; j <= ndeg_; ++j) {
      if (coefficient(i, j) != 0) return i;
    }
  }
  return -1;
}

int BiPoly::y_degree() const {
  for (int j = ndeg_; j >= 0; --j) {
    for (int i = 0; i <= mdeg_; ++i) {
      if (coefficient(i, j) != 0) return j;
    }
  }
  return -1;
}

Rational BiPoly::operator()(const Rational& x, const Rational& y) const {
  Rational acc = 0;
  for (int i = mdeg_; i >= 0; --i) {
    Rational row = 0;
    for (int j = ndeg_; j >= 0; --j) row = row * y + coefficient(i, j);
    acc = acc * x + row;
  }
  return acc;
}

BiPoly BiPoly::derivative_x(unsigned order) const {
  BiPoly out(mdeg_, ndeg_);
  for (int i = static_cast<int>(order); i <= mdeg_; ++i) {
    const Rational f(falling(i, order));
    for (int j = 0; j <= ndeg_; ++j) out.coefficient(i - order, j) = coefficient(i, j) * f;
  }
  return out;
}

BiPoly BiPoly::derivative_y(unsigned order) const {
  BiPoly out(mdeg_, ndeg_);
  for (int j = static_cast<int>(order); j <= ndeg_; ++j) {
    const Rational f(falling(j, order));
    for (int i = 0; i <= mdeg_; ++i) out.coefficient(i, j - order) = coefficient(i, j) * f;
  }
  return out;
}

UniPoly BiPoly::at_x(const Rational& x0) const {
  std::vector<Rational> c(ndeg_ + 1);
  for (int j = 0; j <= ndeg_; ++j) {
    Rational acc = 0;
    for (int i = mdeg_; i >= 0; --i) acc = acc * x0 + coefficient(i, j);
    c[j] = acc;
  }
  return UniPoly(std::move(c));
}

UniPoly BiPoly::at_y(const Rational& y0) const {
  std::vector<Rational> c(mdeg_ + 1);
  for (int i = 0; i <= mdeg_; ++i) {
    Rational acc = 0;
    for (int j = ndeg_; j >= 0; --j) acc = acc * y0 + coefficient(i, j);
    c[i] = acc;
  }
  return UniPoly(std::move(c));
}

bool BiPoly::divisible_by_x_power(const Rational& x0, unsigned power) const {
  for (unsigned k = 0; k < power; ++k) {
    if (!derivative_x(k).at_x(x0).is_zero()) return false;
  }
  return true;
}

bool BiPoly::divisible_by_y_power(const Rational& y0, unsigned power) const {
  for (unsigned k = 0; k < power; ++k) {
    if (!derivative_y(k).at_y(y0).is_zero()) return false;
  }
  return true;
}

namespace {

BiPoly widened(const BiPoly& p, int mdeg, int ndeg) {
  if (p.mdeg() == mdeg && p.ndeg() == ndeg) return p;
  BiPoly out(mdeg, ndeg);
  for (int i = 0; i <= p.mdeg(); ++i) {
    for (int j = 0; j <= p.ndeg(); ++j) out.coefficient(i, j) = p.coefficient(i, j);
  }
  return out;
}

}  // namespace

BiPoly& BiPoly::operator+=(const BiPoly& other) {
  const int md = std::max(mdeg_, other.mdeg_), nd = std::max(ndeg_, other.ndeg_);
  if (md != mdeg_ || nd != ndeg_) *this = widened(*this, md, nd);
  for (int i = 0; i <= other.mdeg_; ++i) {
    for (int j = 0; j <= other.ndeg_; ++j) coefficient(i, j) += other.coefficient(i, j);
  }
  return *this;
}

BiPoly& BiPoly::operator-=(const BiPoly& other) {
  const int md = std::max(mdeg_, other.mdeg_), nd = std::max(ndeg_, other.ndeg_);
  if (md != mdeg_ || nd != ndeg_) *this = widened(*this, md, nd);
  for (int i = 0; i <= other.mdeg_; ++i) {
    for (int j = 0; j <= other.ndeg_; ++j) coefficient(i, j) -= other.coefficient(i, j);
  }
  return *this;
}

BiPoly& BiPoly::operator*=(const Rational& s) {
  for (auto& v : c_) v *= s;
  return *this;
}

bool operator==(const BiPoly& a, const BiPoly& b) {
  const int md = std::max(a.mdeg_, b.mdeg_), nd = std::max(a.ndeg_, b.ndeg_);
  for (int i = 0; i <= md; ++i) {
    for (int j = 0; j <= nd; ++j) {
      const Rational& va = (i <= a.mdeg_ && j <= a.ndeg_) ? a.coefficient(i, j) : zero_rational();
      const Rational& vb = (i <= b.mdeg_ && j <= b.ndeg_) ? b.coefficient(i, j) : zero_rational();
      if (va != vb) return false;
    }
  }
  return true;
}

std::string BiPoly::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (int i = mdeg_; i >= 0; --i) {
    for (int j = ndeg_; j >= 0; --j) {
      const Rational& v = coefficient(i, j);
      if (v == 0) continue;
      if (!first) os << " + ";
      first = false;
      os << hts::to_string(v);
      if (i > 0) os << "*x^" << i;
      if (j > 0) os << "*y^" << j;
    }
  }
  if (first) os << "0";
  return os.str();
}

}  // namespace hts
