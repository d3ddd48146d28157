#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qcc {

using Rational = mpq_class;

class MathError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Rational exponent of q, kept in lowest terms with positive denominator.
class QExp {
 public:
  QExp() = default;
  QExp(std::int64_t n) : num_(n), den_(1) {}  // NOLINT(implicit)
  QExp(std::int64_t n, std::int64_t d);
  static QExp from_rational(const Rational& r);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }
  bool is_zero() const { return num_ == 0; }
  bool is_integer() const { return den_ == 1; }
  Rational to_rational() const { return Rational(num_, den_); }
  std::string str() const;

  QExp operator+(const QExp& o) const;
  QExp operator-(const QExp& o) const;
  QExp operator-() const { return QExp(-num_, den_, true); }
  QExp operator*(std::int64_t k) const;
  QExp operator*(const QExp& o) const;

  friend bool operator==(const QExp& a, const QExp& b) { return a.num_ == b.num_ && a.den_ == b.den_; }
  friend bool operator!=(const QExp& a, const QExp& b) { return !(a == b); }
  friend bool operator<(const QExp& a, const QExp& b) {
    return static_cast<__int128>(a.num_) * b.den_ < static_cast<__int128>(b.num_) * a.den_;
  }
  friend bool operator>(const QExp& a, const QExp& b) { return b < a; }
  friend bool operator<=(const QExp& a, const QExp& b) { return !(b < a); }
  friend bool operator>=(const QExp& a, const QExp& b) { return !(a < b); }

 private:
  QExp(std::int64_t n, std::int64_t d, bool) : num_(n), den_(d) {}
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

// Finite Q-linear combination of rational powers of q.
class QScalar {
 public:
  struct Term {
    QExp exp;
    Rational coeff;
  };

  QScalar() = default;
  QScalar(long c);  // NOLINT(implicit)
  QScalar(const Rational& c);  // NOLINT(implicit)
  static QScalar monomial(const Rational& c, const QExp& e);
  static QScalar q_pow(const QExp& e) { return monomial(1, e); }
  static QScalar from_terms(std::vector<Term> terms);

  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_one() const;
  bool is_monomial() const { return terms_.size() == 1; }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].exp.is_zero()); }
  // Highest and lowest exponent; undefined on zero.
  const QExp& top_exp() const { return terms_.front().exp; }
  const QExp& low_exp() const { return terms_.back().exp; }
  const Rational& top_coeff() const { return terms_.front().coeff; }
  Rational coeff(const QExp& e) const;
  // lcm of exponent denominators (1 for zero).
  std::int64_t exp_denominator() const;

  QScalar operator+(const QScalar& o) const;
  QScalar operator-(const QScalar& o) const;
  QScalar operator-() const;
  QScalar operator*(const QScalar& o) const;
  QScalar& operator+=(const QScalar& o) { return *this = *this + o; }
  QScalar& operator-=(const QScalar& o) { return *this = *this - o; }
  QScalar& operator*=(const QScalar& o) { return *this = *this * o; }
  QScalar scaled(const Rational& c) const;
  QScalar shifted(const QExp& e) const;  // multiply by q^e
  QScalar pow(unsigned k) const;
  QScalar bar() const;  // q -> q^{-1}

  // Exact quotient when o divides *this in the Laurent ring with rational exponents.
  std::optional<QScalar> exact_div(const QScalar& o) const;

  friend bool operator==(const QScalar& a, const QScalar& b);
  friend bool operator!=(const QScalar& a, const QScalar& b) { return !(a == b); }
  // Total order used for deterministic containers.
  friend bool operator<(const QScalar& a, const QScalar& b);

  std::string str() const;

 private:
  std::vector<Term> terms_;  // strictly decreasing exponents, nonzero coefficients
  void normalize();
};

class QFraction {
 public:
  QFraction() : num_(), den_(1) {}
  QFraction(long c) : num_(c), den_(1) {}  // NOLINT(implicit)
  QFraction(const Rational& c) : num_(c), den_(1) {}  // NOLINT(implicit)
  QFraction(const QScalar& s) : num_(s), den_(1) {}  // NOLINT(implicit)
  QFraction(const QScalar& n, const QScalar& d);

  const QScalar& num() const { return num_; }
  const QScalar& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const { return num_.is_one() && den_.is_one(); }
  bool is_scalar() const { return den_.is_one(); }
  std::optional<QScalar> as_scalar() const;
  QScalar to_scalar() const;  // throws MathError when not reducible
  bool is_monomial() const { return den_.is_one() && num_.is_monomial(); }

  QFraction operator+(const QFraction& o) const;
  QFraction operator-(const QFraction& o) const;
  QFraction operator-() const;
  QFraction operator*(const QFraction& o) const;
  QFraction operator/(const QFraction& o) const;
  QFraction& operator+=(const QFraction& o) { return *this = *this + o; }
  QFraction& operator-=(const QFraction& o) { return *this = *this - o; }
  QFraction& operator*=(const QFraction& o) { return *this = *this * o; }
  QFraction& operator/=(const QFraction& o) { return *this = *this / o; }
  QFraction inverse() const;
  QFraction pow(int k) const;
  QFraction bar() const;

  friend bool operator==(const QFraction& a, const QFraction& b);
  friend bool operator!=(const QFraction& a, const QFraction& b) { return !(a == b); }

  std::string str() const;

 private:
  QScalar num_, den_;
  void reduce();
  void normalize_unit();  // unit factor of the denominator only
};

using QFrac = QFraction;

// Balanced q-numbers in the base q^d: [n]_{q^d} = (q^{dn} - q^{-dn})/(q^d - q^{-d}).
QScalar q_int(long n, const QExp& d = QExp(1));
QScalar q_factorial(long n, const QExp& d = QExp(1));
QScalar q_binom(long n, long k, const QExp& d = QExp(1));
// (q^a - q^{-a}) / (q^d - q^{-d}) for rational a.
QFraction q_bracket(const QExp& a, const QExp& d = QExp(1));

struct NumericValue {
  bool exact = false;
  Rational exact_value;
  double approx = 0.0;
  std::string str() const;
};

NumericValue scalar_eval(const QScalar& s, const Rational& q0);
NumericValue scalar_eval(const QFraction& s, const Rational& q0);
double scalar_eval(const QScalar& s, double q0);
double scalar_eval(const QFraction& s, double q0);

class ParseError : public std::invalid_argument {
 public:
  ParseError(const std::string& msg, std::size_t pos);
  std::size_t position() const { return pos_; }

 private:
  std::size_t pos_;
};

QFraction parse_fraction(const std::string& text);
QScalar parse_scalar(const std::string& text);
Rational parse_rational(const std::string& text);

}  // namespace qcc
