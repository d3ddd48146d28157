#include "qcc/qring.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numeric>
#include <sstream>

namespace qcc {

namespace {

std::int64_t gcd64(std::int64_t a, std::int64_t b) { return std::gcd(a < 0 ? -a : a, b < 0 ? -b : b); }

std::int64_t lcm64(std::int64_t a, std::int64_t b) { return a / gcd64(a, b) * b; }

std::int64_t checked(__int128 v) {
  if (v > INT64_MAX || v < INT64_MIN) throw MathError("exponent overflow");
  return static_cast<std::int64_t>(v);
}

// Dense polynomials in a root variable v, index = degree.
using Dense = std::vector<Rational>;

void trim(Dense& p) {
  while (!p.empty() && sgn(p.back()) == 0) p.pop_back();
}

struct DenseForm {
  Dense poly;
  QExp shift;  // scalar = q^shift * poly(q^{1/L})
};

DenseForm to_dense(const QScalar& s, std::int64_t L) {
  DenseForm f;
  if (s.is_zero()) return f;
  f.shift = s.low_exp();
  const auto& t = s.terms();
  QExp span = s.top_exp() - f.shift;
  std::int64_t deg = checked(static_cast<__int128>(span.num()) * (L / span.den()));
  f.poly.assign(static_cast<std::size_t>(deg + 1), Rational(0));
  for (const auto& term : t) {
    QExp d = term.exp - f.shift;
    std::int64_t k = d.num() * (L / d.den());
    f.poly[static_cast<std::size_t>(k)] = term.coeff;
  }
  return f;
}

QScalar from_dense(const Dense& p, const QExp& shift, std::int64_t L) {
  std::vector<QScalar::Term> terms;
  for (std::size_t k = p.size(); k-- > 0;) {
    if (sgn(p[k]) == 0) continue;
    terms.push_back({shift + QExp(static_cast<std::int64_t>(k), L), p[k]});
  }
  return QScalar::from_terms(std::move(terms));
}

bool integral(const Dense& p) {
  return std::all_of(p.begin(), p.end(), [](const Rational& c) { return c.get_den() == 1; });
}

// Long division; returns false if the remainder is nonzero.
bool dense_divmod(const Dense& a, const Dense& b, Dense& q, Dense& r) {
  r = a;
  trim(r);
  q.clear();
  if (r.size() < b.size()) return r.empty();
  q.assign(r.size() - b.size() + 1, Rational(0));
  const Rational& lb = b.back();
  if (lb == 1 && integral(b) && integral(r)) {
    std::vector<mpz_class> R(r.size()), B(b.size());
    for (std::size_t k = 0; k < r.size(); ++k) R[k] = r[k].get_num();
    for (std::size_t k = 0; k < b.size(); ++k) B[k] = b[k].get_num();
    std::size_t top = b.size() - 1;
    for (std::size_t k = R.size(); k-- > top;) {
      if (R[k] == 0) continue;
      mpz_class c = R[k];
      std::size_t off = k - top;
      q[off] = Rational(c);
      for (std::size_t j = 0; j < B.size(); ++j)
        if (B[j] != 0) mpz_submul(R[off + j].get_mpz_t(), c.get_mpz_t(), B[j].get_mpz_t());
    }
    r.assign(R.size(), Rational(0));
    for (std::size_t k = 0; k < R.size(); ++k)
      if (R[k] != 0) r[k] = Rational(R[k]);
    trim(r);
    trim(q);
    return r.empty();
  }
  for (std::size_t k = r.size(); k-- >= b.size();) {
    if (sgn(r[k]) == 0) {
      if (k == b.size() - 1) break;
      continue;
    }
    Rational c = r[k] / lb;
    std::size_t off = k - (b.size() - 1);
    q[off] = c;
    for (std::size_t j = 0; j < b.size(); ++j) r[off + j] -= c * b[j];
    if (k == b.size() - 1) break;
  }
  trim(r);
  trim(q);
  return r.empty();
}

// Primitive integer multiple of p.
std::vector<mpz_class> primitive_part(const Dense& p) {
  mpz_class den = 1, cont = 0;
  for (const auto& c : p) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
  std::vector<mpz_class> out(p.size());
  for (std::size_t k = 0; k < p.size(); ++k) {
    out[k] = p[k].get_num() * (den / p[k].get_den());
    mpz_gcd(cont.get_mpz_t(), cont.get_mpz_t(), out[k].get_mpz_t());
  }
  if (cont != 0)
    for (auto& c : out) c /= cont;
  return out;
}

mpz_class eval_at(const std::vector<mpz_class>& p, const mpz_class& x) {
  mpz_class acc = 0;
  for (std::size_t k = p.size(); k-- > 0;) acc = acc * x + p[k];
  return acc;
}


// Heuristic gcd by evaluation at a large integer, confirmed by exact division.
std::optional<Dense> gcd_heuristic(const Dense& a, const Dense& b) {
  auto A = primitive_part(a), B = primitive_part(b);
  mpz_class na = 0, nb = 0;
  for (const auto& c : A) na = std::max(na, mpz_class(abs(c)));
  for (const auto& c : B) nb = std::max(nb, mpz_class(abs(c)));
  mpz_class xi = 2 * std::min(na, nb) + 29;
  for (int attempt = 0; attempt < 6; ++attempt) {
    mpz_class h;
    mpz_gcd(h.get_mpz_t(), eval_at(A, xi).get_mpz_t(), eval_at(B, xi).get_mpz_t());
    Dense g;
    mpz_class half = xi / 2;
    while (h != 0) {
      mpz_class d = h % xi;
      if (d < 0) d += xi;
      if (d > half) d -= xi;
      g.push_back(Rational(d));
      h = (h - d) / xi;
    }
    trim(g);
    if (g.size() == 1) return Dense{Rational(1)};
    if (!g.empty()) {
      Dense q, r;
      if (dense_divmod(a, g, q, r) && dense_divmod(b, g, q, r)) {
        Rational lc = g.back();
        for (auto& c : g) c /= lc;
        return g;
      }
    }
    xi = xi * 73794 / 27011;
  }
  return std::nullopt;
}

Dense dense_gcd(Dense a, Dense b) {
  trim(a);
  trim(b);
  if (!a.empty() && !b.empty()) {
    if (auto g = gcd_heuristic(a, b)) return *g;
  }
  trim(a);
  trim(b);
  if (a.size() < b.size()) std::swap(a, b);
  while (!b.empty()) {
    Dense q, r;
    dense_divmod(a, b, q, r);
    a = std::move(b);
    b = std::move(r);
    if (!b.empty()) {
      Rational lc = b.back();
      for (auto& c : b) c /= lc;
    }
  }
  if (!a.empty()) {
    Rational lc = a.back();
    for (auto& c : a) c /= lc;
  }
  return a;
}

Rational rational_pow(const Rational& base, std::int64_t e) {
  Rational acc = 1;
  Rational b = e < 0 ? Rational(1) / base : base;
  std::uint64_t k = static_cast<std::uint64_t>(e < 0 ? -e : e);
  while (k) {
    if (k & 1) acc *= b;
    b *= b;
    k >>= 1;
  }
  return acc;
}

}  // namespace

// ---------------------------------------------------------------- QExp

QExp::QExp(std::int64_t n, std::int64_t d) {
  if (d == 0) throw MathError("zero exponent denominator");
  if (d < 0) {
    n = -n;
    d = -d;
  }
  std::int64_t g = gcd64(n, d);
  if (g == 0) g = 1;
  num_ = n / g;
  den_ = d / g;
}

QExp QExp::from_rational(const Rational& r) {
  if (!r.get_num().fits_slong_p() || !r.get_den().fits_slong_p()) throw MathError("exponent too large");
  return QExp(r.get_num().get_si(), r.get_den().get_si());
}

std::string QExp::str() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

QExp QExp::operator+(const QExp& o) const {
  if (den_ == 1 && o.den_ == 1) return QExp(checked(static_cast<__int128>(num_) + o.num_), 1, true);
  std::int64_t l = lcm64(den_, o.den_);
  __int128 n = static_cast<__int128>(num_) * (l / den_) + static_cast<__int128>(o.num_) * (l / o.den_);
  return QExp(checked(n), l);
}

QExp QExp::operator-(const QExp& o) const { return *this + (-o); }

QExp QExp::operator*(std::int64_t k) const { return QExp(checked(static_cast<__int128>(num_) * k), den_); }

QExp QExp::operator*(const QExp& o) const {
  return QExp(checked(static_cast<__int128>(num_) * o.num_), checked(static_cast<__int128>(den_) * o.den_));
}

// ---------------------------------------------------------------- QScalar

QScalar::QScalar(long c) {
  if (c != 0) terms_.push_back({QExp(0), Rational(c)});
}

QScalar::QScalar(const Rational& c) {
  if (sgn(c) != 0) terms_.push_back({QExp(0), c});
}

QScalar QScalar::monomial(const Rational& c, const QExp& e) {
  QScalar s;
  if (sgn(c) != 0) s.terms_.push_back({e, c});
  return s;
}

QScalar QScalar::from_terms(std::vector<Term> terms) {
  QScalar s;
  s.terms_ = std::move(terms);
  s.normalize();
  return s;
}

void QScalar::normalize() {
  std::sort(terms_.begin(), terms_.end(), [](const Term& a, const Term& b) { return a.exp > b.exp; });
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (auto& t : terms_) {
    if (!out.empty() && out.back().exp == t.exp) {
      out.back().coeff += t.coeff;
    } else {
      if (!out.empty() && sgn(out.back().coeff) == 0) out.pop_back();
      out.push_back(std::move(t));
    }
  }
  if (!out.empty() && sgn(out.back().coeff) == 0) out.pop_back();
  terms_ = std::move(out);
}

bool QScalar::is_one() const { return terms_.size() == 1 && terms_[0].exp.is_zero() && terms_[0].coeff == 1; }

Rational QScalar::coeff(const QExp& e) const {
  for (const auto& t : terms_)
    if (t.exp == e) return t.coeff;
  return 0;
}

std::int64_t QScalar::exp_denominator() const {
  std::int64_t l = 1;
  for (const auto& t : terms_) l = lcm64(l, t.exp.den());
  return l;
}

QScalar QScalar::operator+(const QScalar& o) const {
  if (o.terms_.empty()) return *this;
  if (terms_.empty()) return o;
  QScalar r;
  r.terms_.reserve(terms_.size() + o.terms_.size());
  std::size_t i = 0, j = 0;
  while (i < terms_.size() || j < o.terms_.size()) {
    if (j == o.terms_.size() || (i < terms_.size() && terms_[i].exp > o.terms_[j].exp)) {
      r.terms_.push_back(terms_[i++]);
    } else if (i == terms_.size() || o.terms_[j].exp > terms_[i].exp) {
      r.terms_.push_back(o.terms_[j++]);
    } else {
      Rational c = terms_[i].coeff + o.terms_[j].coeff;
      if (sgn(c) != 0) r.terms_.push_back({terms_[i].exp, std::move(c)});
      ++i;
      ++j;
    }
  }
  return r;
}

QScalar QScalar::operator-() const {
  QScalar r = *this;
  for (auto& t : r.terms_) t.coeff = -t.coeff;
  return r;
}

QScalar QScalar::operator-(const QScalar& o) const { return *this + (-o); }

QScalar QScalar::operator*(const QScalar& o) const {
  if (terms_.empty() || o.terms_.empty()) return QScalar();
  if (o.terms_.size() == 1) return shifted(o.terms_[0].exp).scaled(o.terms_[0].coeff);
  if (terms_.size() == 1) return o.shifted(terms_[0].exp).scaled(terms_[0].coeff);
  std::size_t n = terms_.size(), m = o.terms_.size();
  std::int64_t L = lcm64(exp_denominator(), o.exp_denominator());
  QExp lo = low_exp() + o.low_exp();
  QExp span = (top_exp() - low_exp()) + (o.top_exp() - o.low_exp());
  __int128 width = static_cast<__int128>(span.num()) * (L / span.den()) + 1;
  if (width > static_cast<__int128>(4 * n * m + 64)) {
    QScalar r;
    r.terms_.reserve(n * m);
    for (const auto& a : terms_)
      for (const auto& b : o.terms_) r.terms_.push_back({a.exp + b.exp, a.coeff * b.coeff});
    r.normalize();
    return r;
  }
  // dense convolution over integers, exponents in steps of 1/L
  auto small = [](const QScalar& s) {
    for (const auto& t : s.terms_)
      if (t.coeff.get_den() != 1 || !t.coeff.get_num().fits_sint_p()) return false;
    return true;
  };
  if (small(*this) && small(o)) {
    std::vector<__int128> acc(static_cast<std::size_t>(width), 0);
    QExp a0 = low_exp(), b0 = o.low_exp();
    std::vector<std::pair<std::int64_t, long>> kb;
    for (const auto& t : o.terms_) {
      QExp d = t.exp - b0;
      kb.emplace_back(d.num() * (L / d.den()), t.coeff.get_num().get_si());
    }
    for (const auto& t : terms_) {
      QExp d = t.exp - a0;
      std::int64_t ka = d.num() * (L / d.den());
      long ca = t.coeff.get_num().get_si();
      for (const auto& [k, c] : kb) acc[ka + k] += static_cast<__int128>(ca) * c;
    }
    QScalar r;
    for (std::size_t k = acc.size(); k-- > 0;) {
      __int128 v = acc[k];
      if (v == 0) continue;
      Rational c;
      if (v >= INT64_MIN && v <= INT64_MAX) {
        c = mpz_class(static_cast<long>(v));
      } else {
        unsigned __int128 u = v < 0 ? -static_cast<unsigned __int128>(v) : static_cast<unsigned __int128>(v);
        mpz_class z(static_cast<unsigned long>(u >> 64));
        z <<= 64;
        z += static_cast<unsigned long>(u);
        c = v < 0 ? mpz_class(-z) : z;
      }
      r.terms_.push_back({lo + QExp(static_cast<std::int64_t>(k), L), std::move(c)});
    }
    return r;
  }
  auto slots = [L](const QScalar& s, std::vector<std::int64_t>& k, std::vector<mpz_class>& c, mpz_class& den) {
    QExp base = s.low_exp();
    den = 1;
    for (const auto& t : s.terms_) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), t.coeff.get_den_mpz_t());
    for (const auto& t : s.terms_) {
      QExp d = t.exp - base;
      k.push_back(d.num() * (L / d.den()));
      c.push_back(t.coeff.get_num() * (den / t.coeff.get_den()));
    }
  };
  std::vector<std::int64_t> ka, kb;
  std::vector<mpz_class> ca, cb;
  mpz_class da, db;
  slots(*this, ka, ca, da);
  slots(o, kb, cb, db);
  std::vector<mpz_class> acc(static_cast<std::size_t>(width));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j)
      mpz_addmul(acc[ka[i] + kb[j]].get_mpz_t(), ca[i].get_mpz_t(), cb[j].get_mpz_t());
  mpz_class den = da * db;
  QScalar r;
  for (std::size_t k = acc.size(); k-- > 0;) {
    if (sgn(acc[k]) == 0) continue;
    Rational c(acc[k], den);
    c.canonicalize();
    r.terms_.push_back({lo + QExp(static_cast<std::int64_t>(k), L), std::move(c)});
  }
  return r;
}

QScalar QScalar::scaled(const Rational& c) const {
  if (sgn(c) == 0) return QScalar();
  QScalar r = *this;
  for (auto& t : r.terms_) t.coeff *= c;
  return r;
}

QScalar QScalar::shifted(const QExp& e) const {
  QScalar r = *this;
  for (auto& t : r.terms_) t.exp = t.exp + e;
  return r;
}

QScalar QScalar::pow(unsigned k) const {
  QScalar acc(1), b = *this;
  while (k) {
    if (k & 1) acc = acc * b;
    k >>= 1;
    if (k) b = b * b;
  }
  return acc;
}

QScalar QScalar::bar() const {
  QScalar r = *this;
  for (auto& t : r.terms_) t.exp = -t.exp;
  std::reverse(r.terms_.begin(), r.terms_.end());
  return r;
}

std::optional<QScalar> QScalar::exact_div(const QScalar& o) const {
  if (o.is_zero()) throw MathError("division by zero");
  if (is_zero()) return QScalar();
  if (o.is_monomial()) return shifted(-o.terms_[0].exp).scaled(Rational(1) / o.terms_[0].coeff);
  std::int64_t L = lcm64(exp_denominator(), o.exp_denominator());
  DenseForm a = to_dense(*this, L), b = to_dense(o, L);
  Dense q, r;
  if (!dense_divmod(a.poly, b.poly, q, r)) return std::nullopt;
  return from_dense(q, a.shift - b.shift, L);
}

bool operator==(const QScalar& a, const QScalar& b) {
  if (a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i)
    if (a.terms_[i].exp != b.terms_[i].exp || a.terms_[i].coeff != b.terms_[i].coeff) return false;
  return true;
}

bool operator<(const QScalar& a, const QScalar& b) {
  std::size_t n = std::min(a.terms_.size(), b.terms_.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (a.terms_[i].exp != b.terms_[i].exp) return a.terms_[i].exp < b.terms_[i].exp;
    if (a.terms_[i].coeff != b.terms_[i].coeff) return a.terms_[i].coeff < b.terms_[i].coeff;
  }
  return a.terms_.size() < b.terms_.size();
}

std::string QScalar::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& t : terms_) {
    std::string piece;
    bool neg = sgn(t.coeff) < 0;
    Rational mag = neg ? Rational(-t.coeff) : t.coeff;
    std::string mono = t.exp == QExp(1) ? "q" : "q^(" + t.exp.str() + ")";
    if (t.exp.is_zero())
      piece = mag.get_str();
    else if (mag == 1)
      piece = mono;
    else
      piece = mag.get_str() + "*" + mono;
    if (first)
      out = neg ? "-" + piece : piece;
    else
      out += (neg ? " - " : " + ") + piece;
    first = false;
  }
  return out;
}

// ---------------------------------------------------------------- QFraction

QFraction::QFraction(const QScalar& n, const QScalar& d) : num_(n), den_(d) {
  if (den_.is_zero()) throw MathError("division by zero");
  reduce();
}

namespace {

// Normalized gcd of two nonzero Laurent polynomials: low exponent 0, top coefficient 1.
QScalar poly_gcd(const QScalar& x, const QScalar& y) {
  if (x.is_monomial() || y.is_monomial()) return QScalar(1);
  std::int64_t L = lcm64(x.exp_denominator(), y.exp_denominator());
  DenseForm a = to_dense(x, L), b = to_dense(y, L);
  std::int64_t step = 0;
  for (const Dense* p : {&a.poly, &b.poly})
    for (std::size_t k = 1; k < p->size(); ++k)
      if (sgn((*p)[k]) != 0) step = std::gcd(step, static_cast<std::int64_t>(k));
  if (step > 1) {
    for (Dense* p : {&a.poly, &b.poly}) {
      Dense c(p->size() / step + 1);
      for (std::size_t k = 0; k < p->size(); k += step) c[k / step] = (*p)[k];
      trim(c);
      *p = std::move(c);
    }
  }
  Dense g = dense_gcd(a.poly, b.poly);
  if (g.size() <= 1) return QScalar(1);
  if (step > 1) {
    Dense e((g.size() - 1) * step + 1);
    for (std::size_t k = 0; k < g.size(); ++k) e[k * step] = g[k];
    g = std::move(e);
  }
  return from_dense(g, QExp(0), L);
}

QScalar divide(const QScalar& a, const QScalar& g) {
  if (g.is_one()) return a;
  auto q = a.exact_div(g);
  if (!q) throw MathError("internal: inexact polynomial division");
  return *q;
}

}  // namespace

void QFraction::normalize_unit() {
  if (num_.is_zero()) {
    den_ = QScalar(1);
    return;
  }
  if (den_.is_monomial()) {
    const auto& t = den_.terms().front();
    num_ = num_.shifted(-t.exp).scaled(Rational(1) / t.coeff);
    den_ = QScalar(1);
    return;
  }
  QExp shift = den_.low_exp();
  Rational lc = den_.top_coeff();
  if (!shift.is_zero() || lc != 1) {
    Rational inv = Rational(1) / lc;
    den_ = den_.shifted(-shift).scaled(inv);
    num_ = num_.shifted(-shift).scaled(inv);
  }
}

void QFraction::reduce() {
  if (num_.is_zero()) {
    den_ = QScalar(1);
    return;
  }
  if (!den_.is_monomial()) {
    if (auto q = num_.exact_div(den_)) {
      num_ = *q;
      den_ = QScalar(1);
      return;
    }
    QScalar g = poly_gcd(num_, den_);
    num_ = divide(num_, g);
    den_ = divide(den_, g);
  }
  normalize_unit();
}

std::optional<QScalar> QFraction::as_scalar() const {
  if (den_.is_one()) return num_;
  return std::nullopt;
}

QScalar QFraction::to_scalar() const {
  if (!den_.is_one()) throw MathError("fraction does not reduce to a scalar: " + str());
  return num_;
}

QFraction QFraction::operator+(const QFraction& o) const {
  if (o.is_zero()) return *this;
  if (is_zero()) return o;
  QFraction r;
  if (den_.is_one() && o.den_.is_one()) {
    r.num_ = num_ + o.num_;
    return r;
  }
  if (o.den_.is_one()) {
    r.num_ = num_ + o.num_ * den_;
    r.den_ = den_;
    r.normalize_unit();
    return r;
  }
  if (den_.is_one()) {
    r.num_ = num_ * o.den_ + o.num_;
    r.den_ = o.den_;
    r.normalize_unit();
    return r;
  }
  if (den_ == o.den_) {
    r.num_ = num_ + o.num_;
    r.den_ = den_;
    if (r.num_.is_zero()) {
      r.den_ = QScalar(1);
      return r;
    }
    QScalar g = poly_gcd(r.num_, den_);
    r.num_ = divide(r.num_, g);
    r.den_ = divide(r.den_, g);
    r.normalize_unit();
    return r;
  }
  QScalar g = poly_gcd(den_, o.den_);
  QScalar d1 = divide(den_, g), d2 = divide(o.den_, g);
  r.num_ = num_ * d2 + o.num_ * d1;
  r.den_ = den_ * d2;
  if (r.num_.is_zero()) {
    r.den_ = QScalar(1);
    return r;
  }
  if (!g.is_one()) {
    QScalar t = poly_gcd(r.num_, g);
    r.num_ = divide(r.num_, t);
    r.den_ = divide(r.den_, t);
  }
  r.normalize_unit();
  return r;
}

QFraction QFraction::operator-() const {
  QFraction r = *this;
  r.num_ = -r.num_;
  return r;
}

QFraction QFraction::operator-(const QFraction& o) const { return *this + (-o); }

QFraction QFraction::operator*(const QFraction& o) const {
  if (is_zero() || o.is_zero()) return QFraction();
  if (den_.is_one() && o.den_.is_one()) {
    QFraction r;
    r.num_ = num_ * o.num_;
    return r;
  }
  QScalar g1 = o.den_.is_one() ? QScalar(1) : poly_gcd(num_, o.den_);
  QScalar g2 = den_.is_one() ? QScalar(1) : poly_gcd(o.num_, den_);
  QFraction r;
  r.num_ = divide(num_, g1) * divide(o.num_, g2);
  r.den_ = divide(den_, g2) * divide(o.den_, g1);
  r.normalize_unit();
  return r;
}

QFraction QFraction::inverse() const {
  if (is_zero()) throw MathError("division by zero");
  QFraction r;
  r.num_ = den_;
  r.den_ = num_;
  r.normalize_unit();
  return r;
}

QFraction QFraction::operator/(const QFraction& o) const {
  if (o.is_zero()) throw MathError("division by zero");
  if (is_zero()) return QFraction();
  return *this * o.inverse();
}

QFraction QFraction::pow(int k) const {
  if (k < 0) return inverse().pow(-k);
  QFraction r;
  r.num_ = num_.pow(static_cast<unsigned>(k));
  r.den_ = den_.pow(static_cast<unsigned>(k));
  return r;
}

QFraction QFraction::bar() const { return QFraction(num_.bar(), den_.bar()); }

bool operator==(const QFraction& a, const QFraction& b) {
  if (a.den_ == b.den_) return a.num_ == b.num_;
  return a.num_ * b.den_ == b.num_ * a.den_;
}

std::string QFraction::str() const {
  if (den_.is_one()) return num_.str();
  return "(" + num_.str() + ")/(" + den_.str() + ")";
}

// ---------------------------------------------------------------- q-numbers

QScalar q_int(long n, const QExp& d) {
  if (n < 0) throw std::invalid_argument("q_int: negative argument");
  std::vector<QScalar::Term> t;
  for (long j = 0; j < n; ++j) t.push_back({d * (n - 1 - 2 * j), Rational(1)});
  return QScalar::from_terms(std::move(t));
}

QScalar q_factorial(long n, const QExp& d) {
  if (n < 0) throw std::invalid_argument("q_factorial: negative argument");
  QScalar acc(1);
  for (long j = 2; j <= n; ++j) acc *= q_int(j, d);
  return acc;
}

QScalar q_binom(long n, long k, const QExp& d) {
  if (n < 0 || k < 0 || k > n) throw std::invalid_argument("q_binom: arguments out of range");
  QScalar num(1), den(1);
  for (long j = 0; j < k; ++j) {
    num *= q_int(n - j, d);
    den *= q_int(j + 1, d);
  }
  auto r = num.exact_div(den);
  if (!r) throw MathError("q_binom: inexact division");
  return *r;
}

QFraction q_bracket(const QExp& a, const QExp& d) {
  QScalar n = QScalar::q_pow(a) - QScalar::q_pow(-a);
  QScalar m = QScalar::q_pow(d) - QScalar::q_pow(-d);
  return QFraction(n, m);
}

// ---------------------------------------------------------------- evaluation

std::string NumericValue::str() const {
  if (exact) return exact_value.get_str();
  std::ostringstream os;
  os.precision(17);
  os << approx;
  return os.str();
}

NumericValue scalar_eval(const QScalar& s, const Rational& q0) {
  if (sgn(q0) <= 0) throw MathError("evaluation requires q0 > 0");
  NumericValue v;
  bool integral = std::all_of(s.terms().begin(), s.terms().end(), [](const auto& t) { return t.exp.is_integer(); });
  if (integral) {
    v.exact = true;
    v.exact_value = 0;
    for (const auto& t : s.terms()) v.exact_value += t.coeff * rational_pow(q0, t.exp.num());
    v.approx = v.exact_value.get_d();
    return v;
  }
  v.approx = scalar_eval(s, q0.get_d());
  return v;
}

NumericValue scalar_eval(const QFraction& s, const Rational& q0) {
  NumericValue n = scalar_eval(s.num(), q0), d = scalar_eval(s.den(), q0);
  if ((d.exact && sgn(d.exact_value) == 0) || (!d.exact && d.approx == 0.0))
    throw MathError("evaluation at a zero of the denominator");
  NumericValue v;
  if (n.exact && d.exact) {
    v.exact = true;
    v.exact_value = n.exact_value / d.exact_value;
    v.approx = v.exact_value.get_d();
  } else {
    v.approx = n.approx / d.approx;
  }
  return v;
}

double scalar_eval(const QScalar& s, double q0) {
  if (!(q0 > 0)) throw MathError("evaluation requires q0 > 0");
  double acc = 0;
  for (const auto& t : s.terms())
    acc += t.coeff.get_d() * std::pow(q0, static_cast<double>(t.exp.num()) / static_cast<double>(t.exp.den()));
  return acc;
}

double scalar_eval(const QFraction& s, double q0) {
  double d = scalar_eval(s.den(), q0);
  if (d == 0.0) throw MathError("evaluation at a zero of the denominator");
  return scalar_eval(s.num(), q0) / d;
}

// ---------------------------------------------------------------- parsing

ParseError::ParseError(const std::string& msg, std::size_t pos)
    : std::invalid_argument(msg + " at position " + std::to_string(pos)), pos_(pos) {}

namespace {

class Parser {
 public:
  explicit Parser(const std::string& s) : s_(s) {}

  QFraction parse_all() {
    QFraction v = expr();
    skip();
    if (p_ != s_.size()) throw ParseError("unexpected character '" + std::string(1, s_[p_]) + "'", p_);
    return v;
  }

  Rational rational_only() {
    skip();
    bool neg = false;
    if (peek() == '-' || peek() == '+') neg = s_[p_++] == '-';
    Rational r = integer();
    skip();
    if (peek() == '/') {
      ++p_;
      std::size_t at = p_;
      Rational d = integer();
      if (sgn(d) == 0) throw ParseError("zero denominator", at);
      r /= d;
    }
    skip();
    if (p_ != s_.size()) throw ParseError("unexpected character", p_);
    return neg ? Rational(-r) : r;
  }

 private:
  const std::string& s_;
  std::size_t p_ = 0;

  void skip() {
    while (p_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[p_]))) ++p_;
  }
  char peek() {
    skip();
    return p_ < s_.size() ? s_[p_] : '\0';
  }

  Rational integer() {
    skip();
    std::size_t start = p_;
    while (p_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[p_]))) ++p_;
    if (start == p_) throw ParseError("expected integer", start);
    return Rational(s_.substr(start, p_ - start));
  }

  QFraction expr() {
    QFraction acc;
    bool first = true;
    while (true) {
      char c = peek();
      bool neg = false;
      if (c == '+' || c == '-') {
        neg = c == '-';
        ++p_;
      } else if (!first) {
        break;
      }
      QFraction t = term();
      acc = neg ? acc - t : acc + t;
      first = false;
    }
    return acc;
  }

  QFraction term() {
    QFraction acc = power();
    while (true) {
      char c = peek();
      if (c == '*') {
        ++p_;
        acc = acc * power();
      } else if (c == '/') {
        std::size_t at = ++p_;
        QFraction d = power();
        if (d.is_zero()) throw ParseError("division by zero", at);
        acc = acc / d;
      } else {
        break;
      }
    }
    return acc;
  }

  Rational exponent() {
    skip();
    bool paren = peek() == '(';
    if (paren) ++p_;
    bool neg = false;
    if (peek() == '-' || peek() == '+') neg = s_[p_++] == '-';
    Rational r = integer();
    if (paren && peek() == '/') {
      ++p_;
      std::size_t at = p_;
      Rational d = integer();
      if (sgn(d) == 0) throw ParseError("zero denominator", at);
      r /= d;
    }
    if (paren) {
      if (peek() != ')') throw ParseError("expected ')'", p_);
      ++p_;
    }
    return neg ? Rational(-r) : r;
  }

  QFraction power() {
    skip();
    if (peek() == '-') {
      ++p_;
      return -power();
    }
    bool is_q = peek() == 'q';
    std::size_t at = p_;
    QFraction base = primary();
    if (peek() != '^') return base;
    ++p_;
    std::size_t eat = p_;
    Rational e = exponent();
    if (is_q) return QFraction(QScalar::q_pow(QExp::from_rational(e)));
    if (e.get_den() != 1) throw ParseError("fractional power of a non-q base", eat);
    if (!e.get_num().fits_sint_p()) throw ParseError("exponent too large", eat);
    int k = static_cast<int>(e.get_num().get_si());
    if (k < 0 && base.is_zero()) throw ParseError("negative power of zero", at);
    return base.pow(k);
  }

  QFraction primary() {
    char c = peek();
    if (c == '(') {
      ++p_;
      QFraction v = expr();
      if (peek() != ')') throw ParseError("expected ')'", p_);
      ++p_;
      return v;
    }
    if (c == 'q') {
      ++p_;
      return QFraction(QScalar::q_pow(1));
    }
    if (std::isdigit(static_cast<unsigned char>(c))) return QFraction(integer());
    if (c == '\0') throw ParseError("unexpected end of input", p_);
    throw ParseError("unexpected character '" + std::string(1, c) + "'", p_);
  }
};

}  // namespace

QFraction parse_fraction(const std::string& text) { return Parser(text).parse_all(); }

QScalar parse_scalar(const std::string& text) {
  QFraction f = parse_fraction(text);
  auto s = f.as_scalar();
  if (!s) throw ParseError("expression is not a Laurent polynomial: " + f.str(), 0);
  return *s;
}

Rational parse_rational(const std::string& text) { return Parser(text).rational_only(); }

}  // namespace qcc
