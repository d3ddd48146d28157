#include "qcc/chartheory.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace qcc {

namespace {

QScalar qe(const Rational& r) { return QScalar::q_pow(QExp::from_rational(r)); }

// q^{a} - q^{-a}
QScalar sym_diff(const Rational& a) { return qe(a) - qe(-a); }

int top_index(const WModule& Y) {
  for (int y = 0; y < Y.dim(); ++y)
    if (Y.depth[y] == 0) return y;
  throw std::logic_error("module has no top vector");
}

Rational rho_pair(const CartanData& cd, const Weight& w) { return cd.pairing(cd.rho(), w); }

}  // namespace

// ---------------------------------------------------------------- traces

TraceColumn qtrace_apply(PairOperator& op, int ell, int y) {
  const WModule& X = op.left();
  const CartanData& cd = *X.cd;
  TraceColumn out;
  for (int x = 0; x < X.dim(); ++x) {
    LegVector v = leg_basis({x, y});
    for (int k = 0; k < ell; ++k) v = apply_on_legs(v, 0, 1, op);
    out.exact = out.exact && v.exact;
    QFrac w(qe(2 * rho_pair(cd, X.weights[x])));
    for (const auto& [idx, c] : v.terms) {
      if (idx[0] != x) continue;
      QFrac& slot = out.v[idx[1]];
      slot += w * c;
      if (slot.is_zero()) out.v.erase(idx[1]);
    }
  }
  return out;
}

ScalarAction qtrace_scalar(PairOperator& op, int ell, int max_depth) {
  const WModule& Y = op.right();
  ScalarAction res;
  bool have = false;
  long inexact = 0;
  for (int y = 0; y < Y.dim(); ++y) {
    if (Y.depth[y] > max_depth) continue;
    TraceColumn col = qtrace_apply(op, ell, y);
    if (!col.exact) {
      ++inexact;
      continue;
    }
    ++res.checked;
    QFrac c;
    bool diag = true;
    for (const auto& [k, v] : col.v)
      if (k == y) c = v;
      else diag = false;
    if (!diag || (have && c != res.value)) {
      res.verdict = Verdict::fail;
      res.detail = "not scalar at " + Y.labels[y];
      return res;
    }
    res.value = c;
    have = true;
  }
  res.verdict = have ? Verdict::pass : Verdict::inconclusive;
  res.detail = std::to_string(res.checked) + " exact columns, " + std::to_string(inexact) + " beyond the frontier";
  return res;
}

QFrac projected_q1_trace(QAction& Q) {
  const WModule& X = Q.left();
  const WModule& Y = Q.right();
  const CartanData& cd = *X.cd;
  int y0 = top_index(Y);
  QFrac sum;
  for (int x = 0; x < X.dim(); ++x) {
    const PairResult& a = Q.r12().apply(x, y0);
    if (a.terms.size() != 1 || a.terms.begin()->first != std::make_pair(x, y0))
      throw std::logic_error("R on a top vector is not diagonal");
    const PairResult& b = Q.r21().apply(y0, x);
    auto it = b.terms.find({y0, x});
    if (it == b.terms.end()) continue;
    sum += QFrac(qe(2 * rho_pair(cd, X.weights[x]))) * a.terms.begin()->second * it->second;
  }
  return sum;
}

// ---------------------------------------------------------------- dimensions

QScalar qdim_module(const WModule& W) {
  QScalar s;
  for (const auto& w : W.weights) s += qe(2 * rho_pair(*W.cd, w));
  return s;
}

QScalar qdim(const CartanData& cd, const Weight& lambda) {
  for (int i = 0; i < cd.rank(); ++i) {
    Rational p = cd.coroot_pairing(lambda, i);
    if (p.get_den() != 1 || sgn(p) < 0) throw std::invalid_argument("weight is not dominant integral");
  }
  QFrac r(1);
  Weight lr = lambda + cd.rho();
  for (const auto& a : cd.positive_roots()) r *= QFrac(sym_diff(cd.pairing(lr, a)), sym_diff(rho_pair(cd, a)));
  return r.to_scalar();
}

QFrac d_ratio(const CartanData& cd, const Weight& lambda, const Weight& nu) {
  QFrac r(1);
  Weight lr = lambda + cd.rho();
  for (const auto& a : cd.positive_roots()) {
    Rational den = cd.pairing(lr, a);
    if (sgn(den) == 0) throw MathError("vanishing bracket at root " + a.pretty());
    r *= QFrac(sym_diff(cd.pairing(lr + nu, a)), sym_diff(den));
  }
  return r;
}

// ---------------------------------------------------------------- spectra

namespace {

Rational x_exponent(const CartanData& cd, const Weight& lambda, const Weight& w, const Weight& nu) {
  return 2 * cd.pairing(lambda + cd.rho(), w) - 2 * rho_pair(cd, nu) + cd.pairing(w, w) - cd.pairing(nu, nu);
}

}  // namespace

std::vector<QScalar> spec_eigenvalues(const CartanData& cd, const Weight& lambda, const std::vector<Weight>& weights,
                                      const Weight& nu) {
  std::vector<QScalar> out;
  for (const auto& w : weights) out.push_back(qe(x_exponent(cd, lambda, w, nu)));
  return out;
}

std::vector<QScalar> spec_eigenvalues(const CartanData& cd, const Weight& lambda) {
  auto ws = cd.defining_weights();
  return spec_eigenvalues(cd, lambda, ws, ws.front());
}

std::vector<QScalar> parabolic_roots(const CartanData& cd, const LeviDatum& levi, const Weight& lambda) {
  require_center_character(cd, levi, lambda);
  Weight nu = cd.eps(1);
  std::vector<QScalar> out;
  for (const auto& lw : levi.levi_highest_weights) {
    QScalar r = qe(x_exponent(cd, lambda, lw.weight, nu));
    if (std::find(out.begin(), out.end(), r) == out.end()) out.push_back(r);
  }
  return out;
}

std::vector<QScalar> block_top_values(const CartanData& cd, const LeviDatum& levi, const Weight& lambda) {
  require_center_character(cd, levi, lambda);
  std::vector<QScalar> out;
  for (int m : levi.block_starts) out.push_back(qe(x_exponent(cd, lambda, cd.eps(m), cd.eps(1))));
  return out;
}

std::string SymbolicRoot::str() const {
  std::string tail = shift.is_zero() ? "" : "q^(" + shift.str() + ")";
  std::string mu = "mu_" + std::to_string(block + 1);
  switch (kind) {
    case LeviWeight::Kind::top: return tail.empty() ? mu : mu + " " + tail;
    case LeviWeight::Kind::dual: return mu + "^(-1)" + (tail.empty() ? "" : " " + tail);
    default: return tail.empty() ? "1" : tail;
  }
}

std::vector<SymbolicRoot> parabolic_roots_symbolic(const CartanData& cd, const LeviDatum& levi) {
  using K = LeviWeight::Kind;
  Weight nu = cd.eps(1);
  Weight zero = cd.zero();
  std::vector<SymbolicRoot> out;
  for (const auto& lw : levi.levi_highest_weights) {
    SymbolicRoot r{lw.kind, lw.block, QExp(0)};
    if (lw.kind == K::zero || lw.kind == K::middle) {
      // lambda vanishes on these weights
      r.shift = QExp::from_rational(x_exponent(cd, zero, lw.weight, nu));
    } else if (lw.kind == K::dual) {
      Weight top = cd.eps(levi.block_starts[lw.block]);
      r.shift = QExp::from_rational(x_exponent(cd, zero, lw.weight, nu) + x_exponent(cd, zero, top, nu));
    }
    out.push_back(r);
  }
  return out;
}

// ---------------------------------------------------------------- central characters

QFrac central_char_trace(const CartanData& cd, const Weight& lambda, const std::vector<Weight>& weights,
                         const Weight& nu, int ell) {
  auto xs = spec_eigenvalues(cd, lambda, weights, nu);
  Weight lr = lambda + cd.rho();
  QScalar den(1);
  for (const auto& a : cd.positive_roots()) {
    Rational p = cd.pairing(lr, a);
    if (sgn(p) == 0) throw MathError("vanishing bracket at root " + a.pretty());
    den *= sym_diff(p);
  }
  // all terms share the denominator
  QScalar num;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    QScalar t = xs[i].pow(static_cast<unsigned>(ell));
    for (const auto& a : cd.positive_roots()) t *= sym_diff(cd.pairing(lr + weights[i], a));
    num += t;
  }
  if (auto e = num.exact_div(den)) return QFrac(*e);
  return QFrac(num, den);
}

QFrac central_char_trace(const CartanData& cd, const Weight& lambda, int ell) {
  auto ws = cd.defining_weights();
  return central_char_trace(cd, lambda, ws, ws.front(), ell);
}

QFrac theta_trace(const CartanPtr& cd, const Weight& lambda, int ell, ModulePtr W) {
  if (!W) W = build_defining_module(cd);
  RAction R(W, W);
  DMat r = dense_matrix(R);
  int n = W->dim();
  const Weight& nu = W->top;
  QFrac pre(qe(-2 * rho_pair(*cd, nu)));
  std::vector<QFrac> dl(n);
  DMat M(n, DVec(n));
  for (int a = 0; a < n; ++a) {
    dl[a] = pre * QFrac(qe(2 * cd->pairing(lambda + cd->rho(), W->weights[a])));
    M[a][a] = QFrac(qe(2 * rho_pair(*cd, W->weights[a])));
  }
  for (int k = 0; k < ell; ++k) {
    DMat next(n, DVec(n));
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        const DVec& row_r = r[a * n + b];
        for (int c = 0; c < n; ++c) {
          if (M[c][b].is_zero()) continue;
          for (int d = 0; d < n; ++d) {
            const QFrac& e = row_r[c * n + d];
            if (!e.is_zero()) next[a][d] += e * M[c][b];
          }
        }
      }
    for (int a = 0; a < n; ++a)
      for (int d = 0; d < n; ++d)
        if (!next[a][d].is_zero()) next[a][d] *= dl[a];
    M = std::move(next);
  }
  QFrac tr;
  for (int a = 0; a < n; ++a) tr += M[a][a];
  return tr * QFrac(qe(-ell * cd->pairing(nu, nu)));
}

QScalar trtr_closed_form(const CartanData& cd, const Weight& lambda) {
  QScalar s;
  for (const auto& w : cd.defining_weights()) s += qe(2 * cd.pairing(lambda + cd.rho(), w));
  return s;
}

TPoly char_min_poly(const std::vector<QScalar>& roots) { return poly_from_roots(roots); }

// ---------------------------------------------------------------- so(2n) wedge modules

WedgePair build_wedge_pm(const CartanPtr& cd) {
  if (cd->series() != Series::D) throw std::invalid_argument("W+- are defined for series D only");
  int n = cd->rank();
  auto V = build_defining_module(cd);
  ModulePtr T = V;
  for (int k = 1; k < n; ++k) T = tensor(*T, *V);
  Weight base = cd->zero();
  for (int i = 1; i < n; ++i) base = base + cd->eps(i);
  auto make = [&](const Weight& mu) {
    auto hw = highest_weight_vectors(*T, mu);
    if (hw.size() != 1) throw std::logic_error("highest weight space of rank " + std::to_string(hw.size()));
    auto sub = submodule_generated(*T, hw);
    return module_from_subspace(*T, sub, mu);
  };
  return {make(base + cd->eps(n)), make(base - cd->eps(n))};
}

QScalar tau_minus_char(const CartanData& cd, const Weight& lambda) {
  if (cd.series() != Series::D) throw std::invalid_argument("tau-minus is defined for series D only");
  QScalar p(1);
  for (int i = 1; i <= cd.rank(); ++i) p *= sym_diff(2 * cd.pairing(lambda + cd.rho(), cd.eps(i)));
  return p;
}

// ---------------------------------------------------------------- block spectra

std::optional<DMat> q_block(QAction& Q, const Weight& total, std::vector<std::pair<int, int>>* pairs_out) {
  const WModule& X = Q.left();
  const WModule& Y = Q.right();
  std::vector<std::pair<int, int>> pairs;
  std::map<std::pair<int, int>, int> pos;
  for (int x = 0; x < X.dim(); ++x) {
    Weight w = total - X.weights[x];
    if (!Y.has_weight(w)) continue;
    for (int y : Y.indices_of(w)) {
      pos[{x, y}] = static_cast<int>(pairs.size());
      pairs.push_back({x, y});
    }
  }
  DMat m(pairs.size(), DVec(pairs.size()));
  for (std::size_t j = 0; j < pairs.size(); ++j) {
    const PairResult& r = Q.apply(pairs[j].first, pairs[j].second);
    if (!r.exact) return std::nullopt;
    for (const auto& [ab, c] : r.terms) {
      auto it = pos.find(ab);
      if (it == pos.end()) throw std::logic_error("Q left its weight block");
      m[it->second][j] = c;
    }
  }
  if (pairs_out) *pairs_out = pairs;
  return m;
}

std::optional<std::vector<QScalar>> diagonalized_spectrum(QAction& Q) {
  const WModule& X = Q.left();
  const WModule& Y = Q.right();
  int low = 0;
  for (int x = 0; x < X.dim(); ++x)
    if (X.depth[x] > X.depth[low]) low = x;
  if (!Y.finite() && Y.H < X.depth[low]) return std::nullopt;
  auto m = q_block(Q, Y.top + X.weights[low]);
  if (!m) return std::nullopt;
  auto roots = monomial_roots(charpoly(*m));
  if (!roots) return std::nullopt;
  std::sort(roots->begin(), roots->end());
  return roots;
}

std::optional<std::vector<QScalar>> spectrum_root_set(QAction& Q) {
  const WModule& X = Q.left();
  const WModule& Y = Q.right();
  std::set<QScalar> all;
  std::set<Weight> seen;
  for (int x = 0; x < X.dim(); ++x) {
    Weight total = Y.top + X.weights[x];
    if (!seen.insert(total).second) continue;
    auto m = q_block(Q, total);
    if (!m) return std::nullopt;
    auto roots = monomial_roots(charpoly(*m));
    if (!roots) return std::nullopt;
    all.insert(roots->begin(), roots->end());
  }
  return std::vector<QScalar>(all.begin(), all.end());
}

std::vector<QScalar> predicted_block_spectrum(const CartanPtr& cd, const Weight& lambda) {
  auto ws = cd->defining_weights();
  auto xs = spec_eigenvalues(*cd, lambda, ws, ws.front());
  std::vector<QScalar> out;
  for (std::size_t i = 0; i < ws.size(); ++i) {
    long mult = kostant_count(*cd, cd->degree_of(ws[i] - ws.back()));
    for (long k = 0; k < mult; ++k) out.push_back(xs[i]);
  }
  std::sort(out.begin(), out.end());
  return out;
}

IdentityReport check_annihilation(QAction& Q, const std::vector<QScalar>& roots, int bound) {
  const WModule& X = Q.left();
  const WModule& Y = Q.right();
  IdentityReport rep;
  rep.name = "annihilation";
  int spread = X.max_depth();
  rep.frontier = bound - spread >= 0 ? bound - spread : -1;
  std::set<Weight> blocks;
  long inexact = 0;
  for (int x = 0; x < X.dim(); ++x)
    for (int y = 0; y < Y.dim(); ++y) {
      if (X.depth[x] + Y.depth[y] > bound) continue;
      LegVector v = leg_basis({x, y});
      for (const auto& r : roots) {
        LegVector w = apply_on_legs(v, 0, 1, Q);
        leg_axpy(w, -QFrac(r), v);
        v = std::move(w);
        if (v.empty()) break;
      }
      if (!v.exact) {
        ++inexact;
        continue;
      }
      ++rep.checked;
      blocks.insert(X.weights[x] + Y.weights[y]);
      if (!v.empty()) {
        rep.verdict = Verdict::fail;
        rep.detail = "nonzero on " + X.labels[x] + "|" + Y.labels[y];
        rep.blocks = static_cast<long>(blocks.size());
        return rep;
      }
    }
  rep.blocks = static_cast<long>(blocks.size());
  rep.verdict = rep.checked > 0 ? Verdict::pass : Verdict::inconclusive;
  rep.detail = std::to_string(inexact) + " inputs beyond the frontier";
  return rep;
}

}  // namespace qcc
