#include "hts/rational.hpp"

#include <cctype>

#include "hts/error.hpp"

namespace hts {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::NotRegular: return "NotRegular";
    case ErrorCode::DanglingSegment: return "DanglingSegment";
    case ErrorCode::Overlap: return "Overlap";
    case ErrorCode::DegenerateRegion: return "DegenerateRegion";
    case ErrorCode::AlreadySubdivided: return "AlreadySubdivided";
    case ErrorCode::StaleAddress: return "StaleAddress";
    case ErrorCode::DegenerateKnots: return "DegenerateKnots";
    case ErrorCode::NotConformal: return "NotConformal";
    case ErrorCode::NotInterior: return "NotInterior";
    case ErrorCode::NegativeResult: return "NegativeResult";
    case ErrorCode::NotInClass: return "NotInClass";
    case ErrorCode::NoParentSubdomain: return "NoParentSubdomain";
    case ErrorCode::UnlabeledEdge: return "UnlabeledEdge";
    case ErrorCode::UnhandledConfiguration: return "UnhandledConfiguration";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::SemanticError: return "SemanticError";
  }
  return "Unknown";
}

Rational make_rational(const Integer& num, const Integer& den) {
  if (den == 0) throw Error(ErrorCode::SyntaxError, "zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view{} : text.substr(slash + 1);
  bool negative = false;
  if (!num.empty() && (num.front() == '-' || num.front() == '+')) {
    negative = num.front() == '-';
    num.remove_prefix(1);
  }
  if (!all_digits(num) || (slash != std::string_view::npos && !all_digits(den))) {
    throw Error(ErrorCode::SyntaxError, "malformed rational '" + std::string(text) + "'");
  }
  Integer n(std::string(num), 10);
  if (negative) n = -n;
  Integer d = 1;
  if (slash != std::string_view::npos) d = Integer(std::string(den), 10);
  if (d == 0) throw Error(ErrorCode::SyntaxError, "zero denominator in '" + std::string(text) + "'");
  return make_rational(n, d);
}

std::string to_string(const Integer& value) { return value.get_str(); }

std::string to_string(const Rational& value) {
  if (value.get_den() == 1) return value.get_num().get_str();
  return value.get_num().get_str() + "/" + value.get_den().get_str();
}

Rational power(const Rational& base, unsigned exponent) {
  Rational out;
  mpz_pow_ui(out.get_num_mpz_t(), base.get_num_mpz_t(), exponent);
  mpz_pow_ui(out.get_den_mpz_t(), base.get_den_mpz_t(), exponent);
  return out;
}

Integer binomial(unsigned n, unsigned k) {
  Integer out;
  mpz_bin_uiui(out.get_mpz_t(), n, k);
  return out;
}

Integer factorial(unsigned n) {
  Integer out;
  mpz_fac_ui(out.get_mpz_t(), n);
  return out;
}

std::vector<Integer> primitive_integer_vector(const std::vector<Rational>& values) {
  Integer lcm = 1;
  for (const auto& v : values) {
    if (v != 0) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), v.get_den_mpz_t());
  }
  std::vector<Integer> out;
  out.reserve(values.size());
  Integer g = 0;
  for (const auto& v : values) {
    Integer scaled = v.get_num() * (lcm / v.get_den());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), scaled.get_mpz_t());
    out.push_back(std::move(scaled));
  }
  if (g > 1) {
    for (auto& v : out) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
  }
  return out;
}

void normalize_minimal_integer(std::vector<Rational>& values, std::size_t sign_anchor) {
  auto ints = primitive_integer_vector(values);
  int sign = 0;
  for (std::size_t i = sign_anchor; i < ints.size() && sign == 0; ++i) sign = sgn(ints[i]);
  for (std::size_t i = 0; i < sign_anchor && sign == 0; ++i) sign = sgn(ints[i]);
  if (sign == 0) return;
  for (std::size_t i = 0; i < values.size(); ++i) values[i] = sign < 0 ? Rational(-ints[i]) : Rational(ints[i]);
}

}  // namespace hts
