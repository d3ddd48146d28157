#include "qcc/linalg.hpp"

#include <algorithm>
#include <cstdlib>

namespace qcc {

DMat identity_matrix(std::size_t n) {
  DMat m(n, DVec(n));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

DMat matmul(const DMat& a, const DMat& b) {
  if (a.empty()) return {};
  std::size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
  DMat c(n, DVec(m));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t t = 0; t < k; ++t) {
      if (a[i][t].is_zero()) continue;
      for (std::size_t j = 0; j < m; ++j)
        if (!b[t][j].is_zero()) c[i][j] += a[i][t] * b[t][j];
    }
  return c;
}

DVec matvec(const DMat& a, const DVec& x) {
  DVec y(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < x.size(); ++j)
      if (!a[i][j].is_zero() && !x[j].is_zero()) y[i] += a[i][j] * x[j];
  return y;
}

DMat transpose(const DMat& a) {
  if (a.empty()) return {};
  DMat t(a[0].size(), DVec(a.size()));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[i].size(); ++j) t[j][i] = a[i][j];
  return t;
}

bool is_zero(const DVec& v) {
  return std::all_of(v.begin(), v.end(), [](const QFrac& x) { return x.is_zero(); });
}

void axpy(SVec& y, const QFrac& a, const SVec& x) {
  if (a.is_zero()) return;
  for (const auto& [k, v] : x) {
    auto it = y.find(k);
    if (it == y.end()) {
      y.emplace(k, a * v);
    } else {
      it->second += a * v;
      if (it->second.is_zero()) y.erase(it);
    }
  }
}

SVec scaled(const SVec& x, const QFrac& a) {
  SVec r;
  if (a.is_zero()) return r;
  for (const auto& [k, v] : x) r.emplace(k, a * v);
  return r;
}

// ---------------------------------------------------------------- RowBasis

bool RowBasis::reduce(DVec& v, DVec& combo) const {
  for (const auto& r : rows_) {
    const QFrac& c = v[r.pivot];
    if (c.is_zero()) continue;
    QFrac f = c;
    for (std::size_t j = r.pivot; j < width_; ++j)
      if (!r.v[j].is_zero()) v[j] -= f * r.v[j];
    for (std::size_t j = 0; j < r.combo.size(); ++j)
      if (!r.combo[j].is_zero()) combo[j] += f * r.combo[j];
  }
  return !is_zero(v);
}

std::optional<std::size_t> RowBasis::insert(const DVec& v, DVec* coords) {
  DVec w = v;
  DVec combo(accepted_);
  if (reduce(w, combo)) {
    std::size_t p = 0;
    while (w[p].is_zero()) ++p;
    QFrac inv = w[p].inverse();
    for (auto& x : w)
      if (!x.is_zero()) x *= inv;
    // w = v - sum combo_j a_j, so w/c = (a_new - sum combo_j a_j)/c
    DVec rc(accepted_ + 1);
    for (std::size_t j = 0; j < accepted_; ++j) rc[j] = -combo[j] * inv;
    rc[accepted_] = inv;
    for (auto& r : rows_) r.combo.resize(accepted_ + 1);
    rows_.push_back({std::move(w), p, std::move(rc)});
    std::sort(rows_.begin(), rows_.end(), [](const Row& a, const Row& b) { return a.pivot < b.pivot; });
    return accepted_++;
  }
  if (coords) *coords = std::move(combo);
  return std::nullopt;
}

std::optional<DVec> RowBasis::coordinates(const DVec& v) const {
  DVec w = v;
  DVec combo(accepted_);
  if (reduce(w, combo)) return std::nullopt;
  return combo;
}

// ---------------------------------------------------------------- SparseSubspace

SVec SparseSubspace::reduce(SVec v) const {
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    auto it = v.find(pivots_[i]);
    if (it == v.end()) continue;
    QFrac f = it->second;
    axpy(v, -f, rows_[i]);
  }
  return v;
}

bool SparseSubspace::insert(SVec v) {
  v = reduce(std::move(v));
  if (v.empty()) return false;
  int p = v.begin()->first;
  QFrac inv = v.begin()->second.inverse();
  for (auto& [k, x] : v) x *= inv;
  for (auto& r : rows_) {
    auto it = r.find(p);
    if (it == r.end()) continue;
    QFrac f = it->second;
    axpy(r, -f, v);
  }
  auto pos = std::lower_bound(pivots_.begin(), pivots_.end(), p) - pivots_.begin();
  pivots_.insert(pivots_.begin() + pos, p);
  rows_.insert(rows_.begin() + pos, std::move(v));
  return true;
}

std::optional<std::vector<QFrac>> SparseSubspace::coordinates(const SVec& v) const {
  std::vector<QFrac> c(rows_.size());
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    auto it = v.find(pivots_[i]);
    if (it != v.end()) c[i] = it->second;
  }
  SVec check = v;
  for (std::size_t i = 0; i < rows_.size(); ++i) axpy(check, -c[i], rows_[i]);
  if (!check.empty()) return std::nullopt;
  return c;
}

// ---------------------------------------------------------------- dense solves

std::size_t rank_of(DMat a) {
  std::size_t r = 0;
  if (a.empty()) return 0;
  std::size_t m = a[0].size();
  for (std::size_t c = 0; c < m && r < a.size(); ++c) {
    std::size_t p = r;
    while (p < a.size() && a[p][c].is_zero()) ++p;
    if (p == a.size()) continue;
    std::swap(a[p], a[r]);
    QFrac inv = a[r][c].inverse();
    for (std::size_t i = r + 1; i < a.size(); ++i) {
      if (a[i][c].is_zero()) continue;
      QFrac f = a[i][c] * inv;
      for (std::size_t j = c; j < m; ++j)
        if (!a[r][j].is_zero()) a[i][j] -= f * a[r][j];
    }
    ++r;
  }
  return r;
}

std::vector<DVec> kernel(const DMat& a0, std::size_t ncols) {
  DMat a = a0;
  std::vector<std::size_t> pivcol;
  std::size_t r = 0;
  for (std::size_t c = 0; c < ncols && r < a.size(); ++c) {
    std::size_t p = r;
    while (p < a.size() && a[p][c].is_zero()) ++p;
    if (p == a.size()) continue;
    std::swap(a[p], a[r]);
    QFrac inv = a[r][c].inverse();
    for (auto& x : a[r])
      if (!x.is_zero()) x *= inv;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (i == r || a[i][c].is_zero()) continue;
      QFrac f = a[i][c];
      for (std::size_t j = c; j < ncols; ++j)
        if (!a[r][j].is_zero()) a[i][j] -= f * a[r][j];
    }
    pivcol.push_back(c);
    ++r;
  }
  std::vector<DVec> ker;
  std::vector<bool> is_piv(ncols, false);
  for (auto c : pivcol) is_piv[c] = true;
  for (std::size_t f = 0; f < ncols; ++f) {
    if (is_piv[f]) continue;
    DVec v(ncols);
    v[f] = 1;
    for (std::size_t i = 0; i < pivcol.size(); ++i) v[pivcol[i]] = -a[i][f];
    ker.push_back(std::move(v));
  }
  return ker;
}

std::optional<DMat> solve(const DMat& a0, const DMat& b0) {
  std::size_t n = a0.size();
  DMat a = a0, b = b0;
  std::size_t m = b.empty() ? 0 : b[0].size();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a[p][c].is_zero()) ++p;
    if (p == n) return std::nullopt;
    std::swap(a[p], a[c]);
    std::swap(b[p], b[c]);
    QFrac inv = a[c][c].inverse();
    for (auto& x : a[c])
      if (!x.is_zero()) x *= inv;
    for (auto& x : b[c])
      if (!x.is_zero()) x *= inv;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || a[i][c].is_zero()) continue;
      QFrac f = a[i][c];
      for (std::size_t j = c; j < n; ++j)
        if (!a[c][j].is_zero()) a[i][j] -= f * a[c][j];
      for (std::size_t j = 0; j < m; ++j)
        if (!b[c][j].is_zero()) b[i][j] -= f * b[c][j];
    }
  }
  return b;
}

std::optional<DMat> inverse(DMat a) { return solve(a, identity_matrix(a.size())); }

// ---------------------------------------------------------------- polynomials

void trim(TPoly& p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
}

TPoly poly_mul(const TPoly& a, const TPoly& b) {
  if (a.empty() || b.empty()) return {};
  TPoly c(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      if (!a[i].is_zero() && !b[j].is_zero()) c[i + j] += a[i] * b[j];
  trim(c);
  return c;
}

TPoly poly_from_roots(const std::vector<QScalar>& roots) {
  TPoly p{QFrac(1)};
  for (const auto& r : roots) p = poly_mul(p, TPoly{QFrac(-r), QFrac(1)});
  return p;
}

TPoly charpoly(DMat h) {
  std::size_t n = h.size();
  // similarity reduction to upper Hessenberg form
  for (std::size_t c = 0; c + 2 <= n; ++c) {
    std::size_t p = c + 1;
    while (p < n && h[p][c].is_zero()) ++p;
    if (p == n) continue;
    if (p != c + 1) {
      std::swap(h[p], h[c + 1]);
      for (auto& row : h) std::swap(row[p], row[c + 1]);
    }
    QFrac inv = h[c + 1][c].inverse();
    for (std::size_t i = c + 2; i < n; ++i) {
      if (h[i][c].is_zero()) continue;
      QFrac f = h[i][c] * inv;
      for (std::size_t j = 0; j < n; ++j)
        if (!h[c + 1][j].is_zero()) h[i][j] -= f * h[c + 1][j];
      for (std::size_t j = 0; j < n; ++j)
        if (!h[j][i].is_zero()) h[j][c + 1] += f * h[j][i];
    }
  }
  std::vector<TPoly> P(n + 1);
  P[0] = {QFrac(1)};
  for (std::size_t m = 1; m <= n; ++m) {
    TPoly cur = poly_mul(TPoly{-h[m - 1][m - 1], QFrac(1)}, P[m - 1]);
    QFrac prod = 1;
    for (std::size_t i = m - 1; i-- > 0;) {
      prod *= h[i + 1][i];
      if (prod.is_zero()) break;
      QFrac coef = h[i][m - 1] * prod;
      if (coef.is_zero()) continue;
      const TPoly& q = P[i];
      if (cur.size() < q.size()) cur.resize(q.size());
      for (std::size_t k = 0; k < q.size(); ++k) cur[k] -= coef * q[k];
    }
    trim(cur);
    P[m] = std::move(cur);
  }
  return P[n];
}

std::optional<TPoly> divide_linear(const TPoly& p, const QFrac& r) {
  if (p.empty()) return TPoly{};
  std::size_t d = p.size() - 1;
  if (d == 0) return std::nullopt;
  TPoly q(d);
  QFrac acc = p[d];
  for (std::size_t k = d; k-- > 0;) {
    q[k] = acc;
    acc = p[k] + acc * r;
  }
  if (!acc.is_zero()) return std::nullopt;
  return q;
}

QFrac poly_eval(const TPoly& p, const QFrac& x) {
  QFrac acc;
  for (std::size_t k = p.size(); k-- > 0;) acc = acc * x + p[k];
  return acc;
}

namespace {

// q-adic order of a nonzero fraction and its lowest-order coefficient.
std::pair<QExp, Rational> low_order(const QFrac& f) {
  const auto& n = f.num();
  const auto& d = f.den();
  return {n.low_exp() - d.low_exp(), n.terms().back().coeff / d.terms().back().coeff};
}

std::vector<mpz_class> divisors(mpz_class a) {
  a = abs(a);
  std::vector<mpz_class> out;
  if (a == 0 || a > mpz_class("1000000000000")) return out;
  long v = a.get_si();
  for (long k = 1; k * k <= v; ++k)
    if (v % k == 0) {
      out.push_back(k);
      if (k * k != v) out.push_back(v / k);
    }
  return out;
}

// Rational roots of an integer-scaled polynomial with rational coefficients.
std::vector<Rational> rational_roots(std::vector<Rational> c) {
  while (!c.empty() && sgn(c.back()) == 0) c.pop_back();
  std::vector<Rational> out;
  std::size_t lowz = 0;
  while (lowz < c.size() && sgn(c[lowz]) == 0) ++lowz;
  if (lowz) out.push_back(0);
  c.erase(c.begin(), c.begin() + static_cast<long>(lowz));
  if (c.size() < 2) return out;
  mpz_class l = 1;
  for (const auto& x : c) l = lcm(l, mpz_class(x.get_den()));
  std::vector<mpz_class> z;
  for (const auto& x : c) z.push_back(mpz_class(x * l));
  auto P = divisors(z.front()), Q = divisors(z.back());
  for (const auto& p : P)
    for (const auto& q : Q)
      for (int s : {1, -1}) {
        Rational r(s * p, q);
        r.canonicalize();
        Rational acc = 0;
        for (std::size_t k = c.size(); k-- > 0;) acc = acc * r + c[k];
        if (sgn(acc) == 0 && std::find(out.begin(), out.end(), r) == out.end()) out.push_back(r);
      }
  return out;
}

}  // namespace

std::optional<std::vector<QScalar>> monomial_roots(TPoly p) {
  trim(p);
  std::vector<QScalar> roots;
  if (p.empty()) return std::nullopt;
  while (p.size() > 1) {
    // lower convex hull of (k, ord c_k)
    std::vector<std::pair<std::size_t, QExp>> pts;
    for (std::size_t k = 0; k < p.size(); ++k)
      if (!p[k].is_zero()) pts.push_back({k, low_order(p[k]).first});
    if (pts.front().first > 0) {
      // T divides p: zero root is not a monomial
      return std::nullopt;
    }
    bool progressed = false;
    std::size_t i = 0;
    while (i + 1 < pts.size() && !progressed) {
      // choose the next hull vertex: minimal slope from pts[i]
      std::size_t best = i + 1;
      for (std::size_t j = i + 2; j < pts.size(); ++j) {
        // slope (o_j - o_i)/(k_j - k_i) < slope best
        QExp sj = (pts[j].second - pts[i].second) * QExp(1, static_cast<std::int64_t>(pts[j].first - pts[i].first));
        QExp sb = (pts[best].second - pts[i].second) * QExp(1, static_cast<std::int64_t>(pts[best].first - pts[i].first));
        if (sj <= sb) best = j;
      }
      std::size_t ki = pts[i].first, kb = pts[best].first;
      QExp e = (pts[i].second - pts[best].second) * QExp(1, static_cast<std::int64_t>(kb - ki));
      // residual polynomial over the segment
      std::vector<Rational> res(kb - ki + 1, Rational(0));
      for (const auto& pt : pts) {
        if (pt.first < ki || pt.first > kb) continue;
        auto lo = low_order(p[pt.first]);
        if (lo.first + e * static_cast<std::int64_t>(pt.first) == pts[i].second + e * static_cast<std::int64_t>(ki))
          res[pt.first - ki] = lo.second;
      }
      for (const auto& c : rational_roots(res)) {
        if (sgn(c) == 0) continue;
        QScalar r = QScalar::monomial(c, e);
        while (true) {
          auto q = divide_linear(p, QFrac(r));
          if (!q) break;
          p = std::move(*q);
          roots.push_back(r);
          progressed = true;
        }
        if (progressed) break;
      }
      i = best;
    }
    if (!progressed) return std::nullopt;
  }
  std::sort(roots.begin(), roots.end(), [](const QScalar& a, const QScalar& b) { return b < a; });
  return roots;
}

}  // namespace qcc
