#include "qcc/rmatrix.hpp"

#include <algorithm>
#include <functional>
#include <random>
#include <sstream>
#include <stdexcept>

namespace qcc {

namespace {

Degree add(Degree d, int i, int s) {
  d[i] += s;
  return d;
}

bool is_zero_degree(const Degree& d) {
  return std::all_of(d.begin(), d.end(), [](int x) { return x == 0; });
}

QFrac qpow(const Rational& e) { return QFrac(QScalar::q_pow(QExp::from_rational(e))); }

void add_term(PairTerms& t, const std::pair<int, int>& k, const QFrac& c) {
  auto it = t.find(k);
  if (it == t.end()) {
    t.emplace(k, c);
  } else {
    it->second += c;
    if (it->second.is_zero()) t.erase(it);
  }
}

void add_term(std::map<std::vector<int>, QFrac>& t, const std::vector<int>& k, const QFrac& c) {
  if (c.is_zero()) return;
  auto it = t.find(k);
  if (it == t.end()) {
    t.emplace(k, c);
  } else {
    it->second += c;
    if (it->second.is_zero()) t.erase(it);
  }
}

// All degrees d with 0 <= d <= bound componentwise.
void box(const Degree& bound, const std::function<void(const Degree&)>& fn) {
  Degree d(bound.size(), 0);
  std::function<void(std::size_t)> rec = [&](std::size_t pos) {
    if (pos == bound.size()) {
      fn(d);
      return;
    }
    for (int v = 0; v <= bound[pos]; ++v) {
      d[pos] = v;
      rec(pos + 1);
    }
  };
  rec(0);
}

}  // namespace

// ---------------------------------------------------------------- QuasiR

QuasiR::QuasiR(std::shared_ptr<UMinus> um, unsigned order_seed) : um_(std::move(um)), order_seed_(order_seed) {}

const DMat& QuasiR::theta(const Degree& beta) {
  auto it = cache_.find(beta);
  if (it != cache_.end()) return it->second;
  const CartanData& cd = um_->cartan();
  DMat C;
  if (is_zero_degree(beta)) {
    C = {{QFrac(1)}};
    return cache_.emplace(beta, std::move(C)).first->second;
  }
  std::size_t p = um_->dim(beta);
  struct Eq {
    DVec lhs, rhs;
  };
  std::vector<Eq> eqs;
  for (int i = 0; i < cd.rank(); ++i) {
    if (beta[i] == 0) continue;
    Degree lower = add(beta, i, -1);
    const DMat& Cp = theta(lower);
    const UMinus::Level& L = um_->level(beta);
    std::size_t pl = um_->dim(lower);
    QExp di = cd.qi_exp(i);
    QFrac d = QFrac(QScalar::q_pow(di) - QScalar::q_pow(-di));
    QFrac s = d * qpow(cd.pairing(cd.simple_roots()[i], cd.weight_of(lower)));
    // G[m] = x_m e_i and F[m] = e_i x_m in degree beta
    std::vector<DVec> G(pl), F(pl);
    for (std::size_t m = 0; m < pl; ++m) {
      G[m] = um_->right_mul(i, lower, static_cast<int>(m));
      F[m] = L.left[i][m];
    }
    for (std::size_t a = 0; a < pl; ++a) {
      Eq e1{DVec(p), DVec(p)}, e2{DVec(p), DVec(p)};
      for (std::size_t k = 0; k < p; ++k) {
        e1.lhs[k] = L.deriv[i][k][a];
        e2.lhs[k] = L.derivp[i][k][a];
      }
      for (std::size_t m = 0; m < pl; ++m) {
        if (Cp[a][m].is_zero()) continue;
        for (std::size_t l = 0; l < p; ++l) {
          if (!G[m][l].is_zero()) e1.rhs[l] += s * Cp[a][m] * G[m][l];
          if (!F[m][l].is_zero()) e2.rhs[l] += d * Cp[a][m] * F[m][l];
        }
      }
      eqs.push_back(std::move(e1));
      eqs.push_back(std::move(e2));
    }
  }
  if (order_seed_) {
    std::mt19937 rng(order_seed_ + 31u * static_cast<unsigned>(height(beta)));
    std::shuffle(eqs.begin(), eqs.end(), rng);
  }
  RowBasis rb(p);
  DMat S, B;
  for (const auto& e : eqs) {
    if (rb.size() == p) break;
    if (rb.insert(e.lhs)) {
      S.push_back(e.lhs);
      B.push_back(e.rhs);
    }
  }
  if (S.size() != p) throw std::logic_error("quasi-R: degenerate system in degree " + degree_str(beta));
  auto X = solve(S, B);
  if (!X) throw std::logic_error("quasi-R: singular block " + degree_str(beta));
  for (const auto& e : eqs)
    for (std::size_t l = 0; l < p; ++l) {
      QFrac v;
      for (std::size_t k = 0; k < p; ++k)
        if (!e.lhs[k].is_zero() && !(*X)[k][l].is_zero()) v += e.lhs[k] * (*X)[k][l];
      if (v != e.rhs[l]) throw std::logic_error("quasi-R: inconsistent system in degree " + degree_str(beta));
    }
  return cache_.emplace(beta, std::move(*X)).first->second;
}

std::shared_ptr<QuasiR> shared_quasi_r(const CartanPtr& cd, unsigned seed) {
  static std::map<std::tuple<char, int, unsigned>, std::shared_ptr<QuasiR>> cache;
  auto key = std::make_tuple(series_char(cd->series()), cd->rank(), seed);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  auto um = seed ? std::make_shared<UMinus>(cd, seed) : shared_uminus(cd);
  auto q = std::make_shared<QuasiR>(um, seed);
  cache.emplace(key, q);
  return q;
}

// ---------------------------------------------------------------- RAction

RAction::RAction(ModulePtr X, ModulePtr Y, std::shared_ptr<QuasiR> theta)
    : X_(X),
      Y_(Y),
      th_(theta ? theta : shared_quasi_r(X->cd)),
      wx_(th_->uminus_ptr(), X),
      wy_(th_->uminus_ptr(), Y) {}

const PairResult& RAction::apply(int x, int y) {
  auto key = std::make_pair(x, y);
  auto it = cache_.find(key);
  if (it != cache_.end()) return it->second;
  const CartanData& cd = *X_->cd;
  const WModule& X = *X_;
  const WModule& Y = *Y_;
  PairResult res;
  Degree dy = cd.degree_of(Y.top - Y.weights[y]);
  box(dy, [&](const Degree& beta) {
    Weight wb = cd.weight_of(beta);
    if (X.finite() && !X.has_weight(X.weights[x] - wb)) return;
    if (!Y.has_weight(Y.weights[y] + wb)) return;
    const DMat& C = th_->theta(beta);
    std::size_t p = C.size();
    std::vector<const SVec*> ev(p);
    for (std::size_t l = 0; l < p; ++l) ev[l] = &wy_.e_word(beta, static_cast<int>(l), y).v;
    bool used = false;
    for (std::size_t k = 0; k < p; ++k) {
      SVec w;
      for (std::size_t l = 0; l < p; ++l)
        if (!C[k][l].is_zero() && !ev[l]->empty()) axpy(w, C[k][l], *ev[l]);
      if (w.empty()) continue;
      const auto& fx = wx_.f_word(beta, static_cast<int>(k), x);
      if (!fx.exact) res.exact = false;
      for (const auto& [a, ca] : fx.v)
        for (const auto& [b, cb] : w) add_term(res.terms, {a, b}, ca * cb);
      used = used || !fx.v.empty();
    }
    if (used) blocks_.insert(beta);
  });
  for (auto& [ab, c] : res.terms) c *= qpow(cd.pairing(X.weights[ab.first], Y.weights[ab.second]));
  return cache_.emplace(key, std::move(res)).first->second;
}

QAction::QAction(ModulePtr X, ModulePtr Y, std::shared_ptr<QuasiR> theta) : r12_(X, Y, theta), r21_(Y, X, theta) {}

const PairResult& QAction::apply(int x, int y) {
  auto key = std::make_pair(x, y);
  auto it = cache_.find(key);
  if (it != cache_.end()) return it->second;
  const PairResult& a = r12_.apply(x, y);
  PairResult res;
  res.exact = a.exact;
  for (const auto& [xy, c] : a.terms) {
    const PairResult& b = r21_.apply(xy.second, xy.first);
    if (!b.exact) res.exact = false;
    for (const auto& [yx, c2] : b.terms) add_term(res.terms, {yx.second, yx.first}, c * c2);
  }
  return cache_.emplace(key, std::move(res)).first->second;
}

DenseOperator::DenseOperator(ModulePtr X, ModulePtr Y, DMat m) : X_(std::move(X)), Y_(std::move(Y)), m_(std::move(m)) {
  int ny = Y_->dim();
  std::size_t n = static_cast<std::size_t>(X_->dim()) * ny;
  if (m_.size() != n) throw std::invalid_argument("dense operator: wrong size");
  cols_.resize(n);
  for (std::size_t c = 0; c < n; ++c)
    for (std::size_t r = 0; r < n; ++r)
      if (!m_[r][c].is_zero()) cols_[c].terms.emplace(std::make_pair(int(r) / ny, int(r) % ny), m_[r][c]);
}

const PairResult& DenseOperator::apply(int x, int y) { return cols_[static_cast<std::size_t>(x) * Y_->dim() + y]; }

DMat dense_matrix(PairOperator& op) {
  int nx = op.left().dim(), ny = op.right().dim();
  DMat m(nx * ny, DVec(nx * ny));
  for (int x = 0; x < nx; ++x)
    for (int y = 0; y < ny; ++y)
      for (const auto& [ab, c] : op.apply(x, y).terms) m[ab.first * ny + ab.second][x * ny + y] = c;
  return m;
}

std::vector<std::array<std::string, 4>> operator_triples(PairOperator& op, int max_depth) {
  const WModule& X = op.left();
  const WModule& Y = op.right();
  std::vector<std::tuple<Weight, int, int, int, int, std::string>> rows;
  for (int x = 0; x < X.dim(); ++x)
    for (int y = 0; y < Y.dim(); ++y) {
      if (max_depth >= 0 && X.depth[x] + Y.depth[y] > max_depth) continue;
      for (const auto& [ab, c] : op.apply(x, y).terms)
        rows.emplace_back(X.weights[x] + Y.weights[y], ab.first, ab.second, x, y, c.str());
    }
  std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
    if (std::get<0>(a) != std::get<0>(b)) return std::get<0>(b) < std::get<0>(a);
    return std::make_tuple(std::get<1>(a), std::get<2>(a), std::get<3>(a), std::get<4>(a)) <
           std::make_tuple(std::get<1>(b), std::get<2>(b), std::get<3>(b), std::get<4>(b));
  });
  std::vector<std::array<std::string, 4>> out;
  for (const auto& [w, a, b, x, y, s] : rows)
    out.push_back({w.str(), X.labels[a] + "|" + Y.labels[b], X.labels[x] + "|" + Y.labels[y], s});
  return out;
}

// ---------------------------------------------------------------- leg vectors

LegVector leg_basis(const std::vector<int>& idx) {
  LegVector v;
  v.terms.emplace(idx, QFrac(1));
  return v;
}

bool equal_terms(const LegVector& a, const LegVector& b) { return a.terms == b.terms; }

void leg_axpy(LegVector& y, const QFrac& a, const LegVector& x) {
  for (const auto& [k, c] : x.terms) add_term(y.terms, k, a * c);
  y.exact = y.exact && x.exact;
}

LegVector apply_on_legs(const LegVector& v, int s, int t, PairOperator& op) {
  LegVector out;
  out.exact = v.exact;
  for (const auto& [idx, c] : v.terms) {
    const PairResult& r = op.apply(idx[s], idx[t]);
    if (!r.exact) out.exact = false;
    for (const auto& [ab, c2] : r.terms) {
      std::vector<int> k = idx;
      k[s] = ab.first;
      k[t] = ab.second;
      add_term(out.terms, k, c * c2);
    }
  }
  return out;
}

LegVector apply_generator(const std::vector<ModulePtr>& legs, const LegVector& v, char gen, int i,
                          const std::vector<int>& order) {
  LegVector out;
  out.exact = v.exact;
  std::size_t n = order.size();
  for (const auto& [idx, c] : v.terms) {
    for (std::size_t p = 0; p < n; ++p) {
      int t = order[p];
      Rational kexp = 0;
      if (gen == 'e') {
        for (std::size_t p2 = 0; p2 < p; ++p2) kexp += legs[order[p2]]->k_exp(i, idx[order[p2]]);
      } else {
        for (std::size_t p2 = p + 1; p2 < n; ++p2) kexp -= legs[order[p2]]->k_exp(i, idx[order[p2]]);
      }
      const Column& col = gen == 'e' ? legs[t]->e[i][idx[t]] : legs[t]->f[i][idx[t]];
      if (col.truncated) out.exact = false;
      if (col.entries.empty()) continue;
      QFrac k = qpow(kexp) * c;
      for (const auto& [r, x] : col.entries) {
        std::vector<int> key = idx;
        key[t] = r;
        add_term(out.terms, key, k * x);
      }
    }
  }
  return out;
}

std::string verdict_str(Verdict v) {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "?";
}

// ---------------------------------------------------------------- identity harness

namespace {

using LegOp = std::function<LegVector(const LegVector&)>;

struct Harness {
  std::vector<ModulePtr> legs;
  int slack = 0;  // extra depth consumed by the identity

  int bound() const {
    int H = -1;
    for (const auto& m : legs)
      if (!m->finite()) H = H < 0 ? m->H : std::min(H, m->H);
    return H < 0 ? -1 : H - slack;
  }

  int frontier() const {
    int b = bound();
    if (b < 0) return -1;
    int s = 0;
    for (const auto& m : legs)
      if (m->finite()) s += m->max_depth();
    return b - s >= 0 ? b - s : -1;
  }

  void inputs(const std::function<void(const std::vector<int>&)>& fn) const {
    int b = bound();
    std::vector<int> idx(legs.size());
    std::function<void(std::size_t, int)> rec = [&](std::size_t pos, int used) {
      if (pos == legs.size()) {
        fn(idx);
        return;
      }
      for (int k = 0; k < legs[pos]->dim(); ++k) {
        int d = used + legs[pos]->depth[k];
        if (b >= 0 && d > b) continue;
        idx[pos] = k;
        rec(pos + 1, d);
      }
    };
    rec(0, 0);
  }

  Weight total_weight(const std::vector<int>& idx) const {
    Weight w = legs[0]->weights[idx[0]];
    for (std::size_t t = 1; t < legs.size(); ++t) w = w + legs[t]->weights[idx[t]];
    return w;
  }

  std::string label(const std::vector<int>& idx) const {
    std::string s;
    for (std::size_t t = 0; t < legs.size(); ++t) s += (t ? "|" : "") + legs[t]->labels[idx[t]];
    return s;
  }

  // Compares lhs and rhs on every input of the region.
  IdentityReport run(const std::string& name, const std::vector<std::pair<LegOp, LegOp>>& pairs) const {
    IdentityReport rep;
    rep.name = name;
    rep.frontier = frontier();
    std::set<Weight> blocks;
    bool failed = false;
    inputs([&](const std::vector<int>& idx) {
      if (failed) return;
      LegVector v = leg_basis(idx);
      for (const auto& [lf, rf] : pairs) {
        LegVector a = lf(v), b = rf(v);
        if (!a.exact || !b.exact) {
          failed = true;
          rep.detail = "truncation reached inside the frontier at " + label(idx);
          return;
        }
        if (!equal_terms(a, b)) {
          failed = true;
          rep.detail = "mismatch at " + label(idx);
          return;
        }
      }
      ++rep.checked;
      blocks.insert(total_weight(idx));
    });
    rep.blocks = static_cast<long>(blocks.size());
    if (failed)
      rep.verdict = Verdict::fail;
    else
      rep.verdict = rep.checked > 0 ? Verdict::pass : Verdict::inconclusive;
    if (rep.verdict == Verdict::inconclusive && rep.detail.empty()) rep.detail = "frontier empty, raise the height";
    return rep;
  }
};

std::vector<int> iota_order(std::size_t n, bool reversed) {
  std::vector<int> o(n);
  for (std::size_t k = 0; k < n; ++k) o[k] = static_cast<int>(reversed ? n - 1 - k : k);
  return o;
}

std::vector<std::pair<LegOp, LegOp>> generator_pairs(const std::vector<ModulePtr>& legs, PairOperator& op,
                                                     bool opposite) {
  std::vector<std::pair<LegOp, LegOp>> pairs;
  int r = legs[0]->cd->rank();
  auto id = iota_order(2, false);
  auto target = iota_order(2, opposite);
  for (int i = 0; i < r; ++i)
    for (char g : {'e', 'f'}) {
      pairs.push_back({[&legs, &op, g, i, id](const LegVector& v) {
                         return apply_on_legs(apply_generator(legs, v, g, i, id), 0, 1, op);
                       },
                       [&legs, &op, g, i, target](const LegVector& v) {
                         return apply_generator(legs, apply_on_legs(v, 0, 1, op), g, i, target);
                       }});
    }
  return pairs;
}

}  // namespace

IdentityReport check_intertwining(RAction& R) {
  std::vector<ModulePtr> legs = {ModulePtr(ModulePtr(), &R.left()), ModulePtr(ModulePtr(), &R.right())};
  Harness h{legs, 1};
  return h.run("intertwining", generator_pairs(h.legs, R, true));
}

IdentityReport check_q_invariance(QAction& Q) {
  std::vector<ModulePtr> legs = {ModulePtr(ModulePtr(), &Q.left()), ModulePtr(ModulePtr(), &Q.right())};
  Harness h{legs, 1};
  return h.run("q-invariance", generator_pairs(h.legs, Q, false));
}

IdentityReport check_ybe(const CartanPtr& cd) {
  auto V = build_defining_module(cd);
  RAction R(V, V);
  Harness h{{V, V, V}, 0};
  LegOp lhs = [&](const LegVector& v) {
    return apply_on_legs(apply_on_legs(apply_on_legs(v, 1, 2, R), 0, 2, R), 0, 1, R);
  };
  LegOp rhs = [&](const LegVector& v) {
    return apply_on_legs(apply_on_legs(apply_on_legs(v, 0, 1, R), 0, 2, R), 1, 2, R);
  };
  return h.run("ybe", {{lhs, rhs}});
}

std::vector<QScalar> hecke_roots(const CartanPtr& cd) {
  auto V = build_defining_module(cd);
  RAction R(V, V);
  DMat m = dense_matrix(R);
  int n = V->dim();
  DMat pr(m.size(), DVec(m.size()));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) pr[b * n + a] = m[a * n + b];
  auto roots = monomial_roots(charpoly(pr));
  if (!roots) throw std::logic_error("PR has a non-monomial eigenvalue");
  std::vector<QScalar> distinct;
  for (const auto& r : *roots)
    if (std::find(distinct.begin(), distinct.end(), r) == distinct.end()) distinct.push_back(r);
  // keep only factors needed for annihilation
  auto annihilates = [&](const std::vector<QScalar>& rs) {
    DMat acc = identity_matrix(pr.size());
    for (const auto& r : rs) {
      DMat f = pr;
      for (std::size_t k = 0; k < f.size(); ++k) f[k][k] -= QFrac(r);
      acc = matmul(acc, f);
    }
    for (const auto& row : acc)
      if (!is_zero(row)) return false;
    return true;
  };
  if (!annihilates(distinct)) throw std::logic_error("PR is not semisimple");
  return distinct;
}

IdentityReport check_hecke(const CartanPtr& cd) {
  IdentityReport rep;
  rep.name = "hecke";
  auto roots = hecke_roots(cd);
  std::size_t expect = cd->series() == Series::A ? 2 : 3;
  rep.checked = 1;
  rep.blocks = 1;
  std::ostringstream os;
  for (std::size_t k = 0; k < roots.size(); ++k) os << (k ? ", " : "") << roots[k].str();
  rep.detail = "roots {" + os.str() + "}";
  bool monomial = std::all_of(roots.begin(), roots.end(), [](const QScalar& r) { return r.is_monomial(); });
  rep.verdict = (roots.size() == expect && monomial) ? Verdict::pass : Verdict::fail;
  return rep;
}

IdentityReport check_uniqueness(const CartanPtr& cd, unsigned seed, ModulePtr Y) {
  auto V = build_defining_module(cd);
  if (!Y) Y = V;
  RAction a(V, Y), b(V, Y, shared_quasi_r(cd, seed));
  IdentityReport rep;
  rep.name = "uniqueness";
  Harness h{{V, Y}, 0};
  rep.frontier = h.frontier();
  std::set<Weight> blocks;
  bool failed = false;
  h.inputs([&](const std::vector<int>& idx) {
    if (failed) return;
    const PairResult& ra = a.apply(idx[0], idx[1]);
    const PairResult& rb = b.apply(idx[0], idx[1]);
    if (ra.terms != rb.terms) {
      failed = true;
      rep.detail = "re-solve differs at " + h.label(idx);
    }
    ++rep.checked;
    blocks.insert(h.total_weight(idx));
  });
  rep.blocks = static_cast<long>(blocks.size());
  rep.verdict = failed ? Verdict::fail : Verdict::pass;
  return rep;
}

IdentityReport check_ure(const CartanPtr& cd, ModulePtr Y) {
  auto V = build_defining_module(cd);
  RAction R(V, V);
  QAction Q(V, Y);
  Harness h{{V, V, Y}, 0};
  LegOp lhs = [&](const LegVector& v) {
    LegVector w = apply_on_legs(v, 1, 2, Q);
    w = apply_on_legs(w, 0, 1, R);
    w = apply_on_legs(w, 0, 2, Q);
    return apply_on_legs(w, 1, 0, R);
  };
  LegOp rhs = [&](const LegVector& v) {
    LegVector w = apply_on_legs(v, 0, 1, R);
    w = apply_on_legs(w, 0, 2, Q);
    w = apply_on_legs(w, 1, 0, R);
    return apply_on_legs(w, 1, 2, Q);
  };
  return h.run("ure", {{lhs, rhs}});
}

namespace {

// Pair operator on (V (x) V) (x) Y seen through the legs of V (x) V (x) Y.
LegVector fused_apply(const WModule& W, PairOperator& op, const LegVector& v) {
  std::map<std::pair<int, int>, int> windex;
  for (int k = 0; k < W.dim(); ++k) windex[W.factors[k]] = k;
  LegVector out;
  out.exact = v.exact;
  for (const auto& [idx, c] : v.terms) {
    const PairResult& r = op.apply(windex.at({idx[0], idx[1]}), idx[2]);
    if (!r.exact) out.exact = false;
    for (const auto& [wy, c2] : r.terms) {
      auto [a, b] = W.factors[wy.first];
      add_term(out.terms, {a, b, wy.second}, c * c2);
    }
  }
  return out;
}

}  // namespace

IdentityReport check_fusion(const CartanPtr& cd, ModulePtr Y) {
  auto V = build_defining_module(cd);
  auto W = tensor(*V, *V);
  RAction R(V, V);
  auto inv = inverse(dense_matrix(R));
  if (!inv) throw std::logic_error("R on V(x)V is singular");
  DenseOperator Rinv(V, V, *inv);
  QAction Q(V, Y), QW(W, Y);
  Harness h{{V, V, Y}, 0};
  LegOp lhs = [&](const LegVector& v) { return fused_apply(*W, QW, v); };
  LegOp rhs = [&](const LegVector& v) {
    LegVector w = apply_on_legs(v, 1, 2, Q);
    w = apply_on_legs(w, 0, 1, R);
    w = apply_on_legs(w, 0, 2, Q);
    return apply_on_legs(w, 0, 1, Rinv);
  };
  return h.run("fusion", {{lhs, rhs}});
}

IdentityReport check_hexagon(const CartanPtr& cd, ModulePtr Y) {
  auto V = build_defining_module(cd);
  auto W = tensor(*V, *V);
  RAction RW(W, Y), RV(V, Y);
  Harness h{{V, V, Y}, 0};
  LegOp lhs = [&](const LegVector& v) { return fused_apply(*W, RW, v); };
  LegOp rhs = [&](const LegVector& v) { return apply_on_legs(apply_on_legs(v, 1, 2, RV), 0, 2, RV); };
  return h.run("hexagon", {{lhs, rhs}});
}

// ---------------------------------------------------------------- FRT quotient

DMat invariant_form_B(const CartanPtr& cd) {
  if (cd->series() == Series::A) throw std::invalid_argument("invariant form: series A has no invariant in V(x)V");
  auto V = build_defining_module(cd);
  auto VV = tensor(*V, *V);
  auto hw = highest_weight_vectors(*VV, cd->zero());
  if (hw.size() != 1) throw std::logic_error("invariant form: invariant space has rank " + std::to_string(hw.size()));
  int n = V->dim();
  DMat B(n, DVec(n));
  for (const auto& [k, c] : hw[0]) B[VV->factors[k].first][VV->factors[k].second] = c;
  if (B[0][n - 1].is_zero()) throw std::logic_error("invariant form: corner coefficient vanishes");
  QFrac s = B[0][n - 1].inverse();
  for (auto& row : B)
    for (auto& x : row) x *= s;
  return B;
}

IdentityReport check_frt_quotient(const CartanPtr& cd, ModulePtr M) {
  if (cd->series() == Series::A) throw std::invalid_argument("orthogonal/symplectic relations need series B, C or D");
  auto V = build_defining_module(cd);
  int N = V->dim();
  RAction R(V, V);
  DMat Rm = dense_matrix(R);
  auto Ri = inverse(Rm);
  if (!Ri) throw std::logic_error("R on V(x)V is singular");
  DMat B = invariant_form_B(cd);
  auto Bi = inverse(B);
  if (!Bi) throw std::logic_error("invariant form is degenerate");
  auto rr = [&](const DMat& m, int a, int b, int c, int d) -> const QFrac& { return m[a * N + b][c * N + d]; };
  QAction Q(V, M);

  // K_{ij} applied to an M-vector; the flag records truncation
  struct KVec {
    SVec v;
    bool exact = true;
  };
  std::map<std::tuple<int, int, int>, KVec> kcache;
  auto K = [&](int i, int j, int m) -> const KVec& {
    auto key = std::make_tuple(i, j, m);
    auto it = kcache.find(key);
    if (it != kcache.end()) return it->second;
    KVec out;
    const PairResult& r = Q.apply(j, m);
    out.exact = r.exact;
    for (const auto& [ab, c] : r.terms)
      if (ab.first == i) out.v[ab.second] = c;
    return kcache.emplace(key, std::move(out)).first->second;
  };
  auto KK = [&](int i, int j, int k, int l, int m, bool& exact) {
    // K_{ij} (K_{kl} m)
    SVec out;
    const KVec& inner = K(k, l, m);
    exact = exact && inner.exact;
    for (const auto& [b, c] : inner.v) {
      const KVec& o = K(i, j, b);
      exact = exact && o.exact;
      axpy(out, c, o.v);
    }
    return out;
  };

  // gamma(a,c,b,g) = sum_f R[(b,f),(a,g)] X(c,f),  X(c,f) = sum_{d,e} Rinv[(d,e),(c,f)] Binv[d][e]
  DMat X(N, DVec(N));
  for (int c = 0; c < N; ++c)
    for (int f = 0; f < N; ++f)
      for (int d = 0; d < N; ++d)
        for (int e = 0; e < N; ++e)
          if (!(*Bi)[d][e].is_zero() && !rr(*Ri, d, e, c, f).is_zero()) X[c][f] += rr(*Ri, d, e, c, f) * (*Bi)[d][e];
  // delta(b,f,e,d) = sum_c R[(b,f),(c,e)] B[c][d]
  // rhs2(a,f) = sum_{c,d} R[(a,f),(c,d)] B[c][d]
  DMat rhs2(N, DVec(N));
  for (int a = 0; a < N; ++a)
    for (int f = 0; f < N; ++f)
      for (int c = 0; c < N; ++c)
        for (int d = 0; d < N; ++d)
          if (!B[c][d].is_zero()) rhs2[a][f] += rr(Rm, a, f, c, d) * B[c][d];

  IdentityReport rep;
  rep.name = "frt";
  int spread = V->max_depth();
  int bound = M->finite() ? -1 : M->H - 2 * spread;
  rep.frontier = bound;
  if (!M->finite() && bound < 0) {
    rep.verdict = Verdict::inconclusive;
    rep.detail = "frontier empty, raise the height to " + std::to_string(2 * spread);
    return rep;
  }
  std::set<Weight> blocks;
  for (int m = 0; m < M->dim(); ++m) {
    if (bound >= 0 && M->depth[m] > bound) continue;
    bool exact = true;
    for (int a = 0; a < N; ++a)
      for (int e2 = 0; e2 < N; ++e2) {
        SVec lhs;
        for (int c = 0; c < N; ++c)
          for (int b = 0; b < N; ++b)
            for (int g = 0; g < N; ++g) {
              QFrac gamma;
              for (int f = 0; f < N; ++f)
                if (!X[c][f].is_zero() && !rr(Rm, b, f, a, g).is_zero()) gamma += rr(Rm, b, f, a, g) * X[c][f];
              if (gamma.is_zero()) continue;
              axpy(lhs, gamma, KK(c, b, g, e2, m, exact));
            }
        SVec rhs;
        if (!(*Bi)[a][e2].is_zero()) rhs[m] = (*Bi)[a][e2];
        if (lhs != rhs) {
          rep.verdict = Verdict::fail;
          rep.detail = "first relation fails at entry (" + std::to_string(a + 1) + "," + std::to_string(e2 + 1) +
                       ") on " + M->labels[m];
          return rep;
        }
      }
    for (int a = 0; a < N; ++a)
      for (int f = 0; f < N; ++f) {
        SVec lhs;
        for (int b = 0; b < N; ++b)
          for (int e = 0; e < N; ++e)
            for (int d = 0; d < N; ++d) {
              QFrac delta;
              for (int c = 0; c < N; ++c)
                if (!B[c][d].is_zero() && !rr(Rm, b, f, c, e).is_zero()) delta += rr(Rm, b, f, c, e) * B[c][d];
              if (delta.is_zero()) continue;
              axpy(lhs, delta, KK(a, b, e, d, m, exact));
            }
        SVec rhs;
        if (!rhs2[a][f].is_zero()) rhs[m] = rhs2[a][f];
        if (lhs != rhs) {
          rep.verdict = Verdict::fail;
          rep.detail = "second relation fails at entry (" + std::to_string(a + 1) + "," + std::to_string(f + 1) +
                       ") on " + M->labels[m];
          return rep;
        }
      }
    if (!exact) {
      rep.verdict = Verdict::fail;
      rep.detail = "truncation reached inside the frontier on " + M->labels[m];
      return rep;
    }
    ++rep.checked;
    blocks.insert(M->weights[m]);
  }
  rep.blocks = static_cast<long>(blocks.size());
  rep.verdict = rep.checked > 0 ? Verdict::pass : Verdict::inconclusive;
  return rep;
}

}  // namespace qcc
