#include "qcc/uqmod.hpp"

#include <algorithm>
#include <functional>
#include <random>
#include <stdexcept>
#include <tuple>

namespace qcc {

namespace {

Degree unit_degree(int rank, int i) {
  Degree d(rank, 0);
  d[i] = 1;
  return d;
}

Degree add(Degree d, int i, int s) {
  d[i] += s;
  return d;
}

bool is_zero_degree(const Degree& d) {
  return std::all_of(d.begin(), d.end(), [](int x) { return x == 0; });
}

QScalar qpow(const Rational& e) { return QScalar::q_pow(QExp::from_rational(e)); }

QScalar qi_minus_inv(const CartanData& cd, int i) {
  QExp d = cd.qi_exp(i);
  return QScalar::q_pow(d) - QScalar::q_pow(-d);
}

}  // namespace

std::vector<Degree> degrees_of_height(int rank, int h) {
  std::vector<Degree> out;
  Degree cur(rank, 0);
  std::function<void(int, int)> rec = [&](int pos, int left) {
    if (pos == rank - 1) {
      cur[pos] = left;
      out.push_back(cur);
      return;
    }
    for (int v = left; v >= 0; --v) {
      cur[pos] = v;
      rec(pos + 1, left - v);
    }
  };
  if (rank == 0) return out;
  rec(0, h);
  return out;
}

// ---------------------------------------------------------------- UMinus

UMinus::UMinus(CartanPtr cd, unsigned seed) : cd_(std::move(cd)), seed_(seed) {}

const UMinus::Level& UMinus::level(const Degree& beta) {
  auto it = levels_.find(beta);
  if (it != levels_.end()) return it->second;
  for (int x : beta)
    if (x < 0) throw std::invalid_argument("negative degree");
  Level l = build(beta);
  return levels_.emplace(beta, std::move(l)).first->second;
}

UMinus::Level UMinus::build(const Degree& beta) {
  const CartanData& cd = *cd_;
  int r = cd.rank();
  Level L;
  L.beta = beta;
  L.deriv.assign(r, {});
  L.derivp.assign(r, {});
  L.left.assign(r, {});
  if (is_zero_degree(beta)) {
    L.words.push_back({});
    return L;
  }
  struct Cand {
    int j, b;
  };
  std::vector<Cand> cands;
  for (int j = 0; j < r; ++j) {
    if (beta[j] == 0) continue;
    std::size_t n = level(add(beta, j, -1)).words.size();
    for (std::size_t b = 0; b < n; ++b) cands.push_back({j, static_cast<int>(b)});
  }
  if (seed_) {
    std::mt19937 rng(seed_ * 7919u + static_cast<unsigned>(height(beta)) * 104729u + static_cast<unsigned>(beta[0]));
    std::shuffle(cands.begin(), cands.end(), rng);
  }
  // layout of the derivation vector
  std::vector<int> offset(r, -1);
  std::vector<std::size_t> width(r, 0);
  std::size_t total = 0;
  for (int i = 0; i < r; ++i) {
    if (beta[i] == 0) continue;
    width[i] = level(add(beta, i, -1)).words.size();
    offset[i] = static_cast<int>(total);
    total += 2 * width[i];
  }
  RowBasis basis(total);
  std::vector<DVec> cand_rows;
  std::vector<std::optional<std::size_t>> accepted_as(cands.size());
  std::vector<DVec> rejected_coords(cands.size());
  for (std::size_t c = 0; c < cands.size(); ++c) {
    int j = cands[c].j, b = cands[c].b;
    Degree prev = add(beta, j, -1);
    DVec row(total);
    for (int i = 0; i < r; ++i) {
      if (beta[i] == 0) continue;
      DVec d(width[i]), dp(width[i]);
      if (i == j) {
        d[b] += 1;
        dp[b] += 1;
      }
      if (prev[i] > 0) {
        const Level& pl = level(prev);
        Degree lower = add(prev, i, -1);
        QFrac s = QFrac(qpow(cd.root_pairing(i, j)));
        QFrac sp = QFrac(qpow(-cd.root_pairing(i, j)));
        DVec a = left_mul(j, lower, pl.deriv[i][b]);
        DVec ap = left_mul(j, lower, pl.derivp[i][b]);
        for (std::size_t t = 0; t < width[i]; ++t) {
          if (!a[t].is_zero()) d[t] += s * a[t];
          if (!ap[t].is_zero()) dp[t] += sp * ap[t];
        }
      }
      for (std::size_t t = 0; t < width[i]; ++t) {
        row[offset[i] + t] = d[t];
        row[offset[i] + width[i] + t] = dp[t];
      }
    }
    DVec coords;
    auto acc = basis.insert(row, &coords);
    if (acc) {
      accepted_as[c] = acc;
      L.words.push_back({j, b});
      cand_rows.push_back(std::move(row));
    } else {
      rejected_coords[c] = std::move(coords);
    }
  }
  std::size_t p = L.words.size();
  for (int j = 0; j < r; ++j)
    if (beta[j] > 0) L.left[j].assign(level(add(beta, j, -1)).words.size(), DVec(p));
  for (std::size_t c = 0; c < cands.size(); ++c) {
    DVec& dst = L.left[cands[c].j][cands[c].b];
    if (accepted_as[c]) {
      dst[*accepted_as[c]] = 1;
    } else {
      for (std::size_t t = 0; t < rejected_coords[c].size(); ++t) dst[t] = rejected_coords[c][t];
    }
  }
  for (int i = 0; i < r; ++i) {
    if (beta[i] == 0) continue;
    L.deriv[i].resize(p);
    L.derivp[i].resize(p);
    for (std::size_t k = 0; k < p; ++k) {
      const DVec& row = cand_rows[k];
      L.deriv[i][k] = DVec(row.begin() + offset[i], row.begin() + offset[i] + static_cast<long>(width[i]));
      L.derivp[i][k] = DVec(row.begin() + offset[i] + static_cast<long>(width[i]),
                            row.begin() + offset[i] + 2 * static_cast<long>(width[i]));
    }
  }
  return L;
}

DVec UMinus::left_mul(int j, const Degree& beta, const DVec& x) {
  Degree target = add(beta, j, 1);
  const Level& T = level(target);
  DVec out(T.words.size());
  for (std::size_t b = 0; b < x.size(); ++b) {
    if (x[b].is_zero()) continue;
    const DVec& col = T.left[j][b];
    for (std::size_t t = 0; t < col.size(); ++t)
      if (!col[t].is_zero()) out[t] += x[b] * col[t];
  }
  return out;
}

const DVec& UMinus::right_mul(int i, const Degree& beta, int k) {
  auto key = std::make_tuple(i, beta, k);
  auto it = right_.find(key);
  if (it != right_.end()) return it->second;
  DVec out;
  if (is_zero_degree(beta)) {
    out = level(unit_degree(cd_->rank(), i)).left[i][0];
  } else {
    Word w = level(beta).words[k];
    Degree prev = add(beta, w.first, -1);
    DVec inner = right_mul(i, prev, w.tail);
    out = left_mul(w.first, add(prev, i, 1), inner);
  }
  return right_.emplace(key, std::move(out)).first->second;
}

std::vector<int> UMinus::letters(const Degree& beta, int k) {
  std::vector<int> out;
  Degree d = beta;
  while (!is_zero_degree(d)) {
    Word w = level(d).words[k];
    out.push_back(w.first);
    d = add(d, w.first, -1);
    k = w.tail;
  }
  return out;
}

std::string UMinus::word_str(const Degree& beta, int k, char letter) {
  auto ls = letters(beta, k);
  if (ls.empty()) return "1";
  std::string s;
  for (int x : ls) s += std::string(1, letter) + std::to_string(x + 1);
  return s;
}

std::shared_ptr<UMinus> shared_uminus(const CartanPtr& cd, unsigned seed) {
  static std::map<std::tuple<char, int, unsigned>, std::shared_ptr<UMinus>> cache;
  auto key = std::make_tuple(series_char(cd->series()), cd->rank(), seed);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  auto um = std::make_shared<UMinus>(cd, seed);
  cache.emplace(key, um);
  return um;
}

// ---------------------------------------------------------------- WModule

std::string kind_str(ModuleKind k) {
  switch (k) {
    case ModuleKind::findim: return "findim";
    case ModuleKind::verma: return "verma";
    case ModuleKind::genverma: return "genverma";
    case ModuleKind::tensor: return "tensor";
    case ModuleKind::submodule: return "submodule";
  }
  return "?";
}

int WModule::max_depth() const {
  int m = 0;
  for (int d : depth) m = std::max(m, d);
  return m;
}

const std::vector<int>& WModule::indices_of(const Weight& w) const {
  static const std::vector<int> empty;
  auto it = by_weight_.find(w);
  return it == by_weight_.end() ? empty : it->second;
}

std::vector<Weight> WModule::weight_list() const {
  std::vector<Weight> out;
  for (const auto& [w, idx] : by_weight_) out.push_back(w);
  return out;
}

void WModule::finalize() {
  by_weight_.clear();
  for (int b = 0; b < dim(); ++b) by_weight_[weights[b]].push_back(b);
}

SVec WModule::apply_e(int i, const SVec& v) const {
  SVec out;
  for (const auto& [b, c] : v)
    for (const auto& [r, x] : e[i][b].entries) {
      QFrac t = c * x;
      auto it = out.find(r);
      if (it == out.end()) {
        out.emplace(r, std::move(t));
      } else {
        it->second += t;
        if (it->second.is_zero()) out.erase(it);
      }
    }
  return out;
}

SVec WModule::apply_f(int i, const SVec& v, bool* dropped) const {
  SVec out;
  for (const auto& [b, c] : v) {
    const Column& col = f[i][b];
    if (col.truncated && dropped) *dropped = true;
    for (const auto& [r, x] : col.entries) {
      QFrac t = c * x;
      auto it = out.find(r);
      if (it == out.end()) {
        out.emplace(r, std::move(t));
      } else {
        it->second += t;
        if (it->second.is_zero()) out.erase(it);
      }
    }
  }
  return out;
}

namespace {

void set_shape(WModule& M, int n) {
  int r = M.cd->rank();
  M.e.assign(r, std::vector<Column>(n));
  M.f.assign(r, std::vector<Column>(n));
}

}  // namespace

ModulePtr build_defining_module(const CartanPtr& cdp) {
  const CartanData& cd = *cdp;
  auto M = std::make_shared<WModule>();
  M->kind = ModuleKind::findim;
  M->cd = cdp;
  int N = cd.dim_defining(), n = cd.coord_len();
  M->weights = cd.defining_weights();
  for (int b = 0; b < N; ++b) M->labels.push_back("v" + std::to_string(b + 1));
  set_shape(*M, N);
  // E(i, row, col, coeff) with 1-based indices
  auto put = [&](std::vector<std::vector<Column>>& g, int i, int row, int col, const QFrac& c) {
    g[i][col - 1].entries.push_back({row - 1, c});
  };
  auto prime = [&](int i) { return N + 1 - i; };
  if (cd.series() == Series::A) {
    for (int i = 1; i < N; ++i) {
      put(M->e, i - 1, i, i + 1, 1);
      put(M->f, i - 1, i + 1, i, 1);
    }
  } else {
    for (int i = 1; i < n; ++i) {
      put(M->e, i - 1, i, i + 1, 1);
      put(M->e, i - 1, prime(i + 1), prime(i), -1);
      put(M->f, i - 1, i + 1, i, 1);
      put(M->f, i - 1, prime(i), prime(i + 1), -1);
    }
    int l = n - 1;
    if (cd.series() == Series::B) {
      QFrac two = QFrac(q_int(2, QExp(1, 2)));
      put(M->e, l, n, n + 1, 1);
      put(M->e, l, n + 1, n + 2, -1);
      put(M->f, l, n + 1, n, two);
      put(M->f, l, n + 2, n + 1, -two);
    } else if (cd.series() == Series::C) {
      put(M->e, l, n, n + 1, 1);
      put(M->f, l, n + 1, n, 1);
    } else {
      put(M->e, l, n - 1, n + 1, 1);
      put(M->e, l, n, n + 2, -1);
      put(M->f, l, n + 1, n - 1, 1);
      put(M->f, l, n + 2, n, -1);
    }
  }
  M->top = cd.eps(1);
  M->highest_weight = M->top;
  for (int b = 0; b < N; ++b) M->depth.push_back(height(cd.degree_of(M->top - M->weights[b])));
  M->finalize();
  return M;
}

ModulePtr tensor(const WModule& X, const WModule& Y, int max_depth) {
  if (X.cd->series() != Y.cd->series() || X.cd->rank() != Y.cd->rank())
    throw std::invalid_argument("tensor: mismatched Cartan data");
  const CartanData& cd = *X.cd;
  auto M = std::make_shared<WModule>();
  M->kind = ModuleKind::tensor;
  M->cd = X.cd;
  M->H = max_depth;
  std::map<std::pair<int, int>, int> index;
  for (int a = 0; a < X.dim(); ++a)
    for (int b = 0; b < Y.dim(); ++b) {
      int d = X.depth[a] + Y.depth[b];
      if (max_depth >= 0 && d > max_depth) continue;
      index[{a, b}] = M->dim();
      M->factors.push_back({a, b});
      M->weights.push_back(X.weights[a] + Y.weights[b]);
      M->depth.push_back(d);
      M->labels.push_back(X.labels[a] + "|" + Y.labels[b]);
    }
  int n = M->dim();
  set_shape(*M, n);
  int r = cd.rank();
  for (int i = 0; i < r; ++i)
    for (int col = 0; col < n; ++col) {
      auto [a, b] = M->factors[col];
      SVec ev, fv;
      bool etr = false, ftr = X.f[i][a].truncated || Y.f[i][b].truncated;
      auto addto = [&](SVec& v, bool& tr, int x, int y, const QFrac& c) {
        auto it = index.find({x, y});
        if (it == index.end()) {
          tr = true;
          return;
        }
        v[it->second] += c;
      };
      for (const auto& [x, c] : X.e[i][a].entries) addto(ev, etr, x, b, c);
      QFrac ka = QFrac(qpow(X.k_exp(i, a)));
      for (const auto& [y, c] : Y.e[i][b].entries) addto(ev, etr, a, y, ka * c);
      QFrac kbinv = QFrac(qpow(-Y.k_exp(i, b)));
      for (const auto& [x, c] : X.f[i][a].entries) addto(fv, ftr, x, b, c * kbinv);
      for (const auto& [y, c] : Y.f[i][b].entries) addto(fv, ftr, a, y, c);
      for (auto& [k, v] : ev)
        if (!v.is_zero()) M->e[i][col].entries.push_back({k, v});
      for (auto& [k, v] : fv)
        if (!v.is_zero()) M->f[i][col].entries.push_back({k, v});
      M->f[i][col].truncated = ftr;
      if (etr) throw std::logic_error("tensor: raising operator left the basis");
    }
  M->top = X.top + Y.top;
  M->finalize();
  return M;
}

namespace {

struct VermaLayout {
  std::map<Degree, int> offset;
  std::vector<Degree> degs;  // per basis vector
  std::vector<int> local;  // per basis vector
};

std::shared_ptr<WModule> verma_impl(const CartanPtr& cdp, const Weight& lambda, int H, UMinus& um,
                                    VermaLayout& lay) {
  const CartanData& cd = *cdp;
  if (H < 0) throw std::invalid_argument("truncation height must be nonnegative");
  auto M = std::make_shared<WModule>();
  M->kind = ModuleKind::verma;
  M->cd = cdp;
  M->H = H;
  M->top = lambda;
  M->highest_weight = lambda;
  int r = cd.rank();
  for (int h = 0; h <= H; ++h)
    for (const auto& beta : degrees_of_height(r, h)) {
      const auto& L = um.level(beta);
      if (L.words.empty()) continue;
      lay.offset[beta] = M->dim();
      Weight w = lambda - cd.weight_of(beta);
      for (std::size_t k = 0; k < L.words.size(); ++k) {
        M->weights.push_back(w);
        M->depth.push_back(h);
        M->labels.push_back(um.word_str(beta, static_cast<int>(k)) + "v");
        lay.degs.push_back(beta);
        lay.local.push_back(static_cast<int>(k));
      }
    }
  int n = M->dim();
  set_shape(*M, n);
  for (int col = 0; col < n; ++col) {
    const Degree& beta = lay.degs[col];
    int k = lay.local[col];
    const auto& L = um.level(beta);
    for (int i = 0; i < r; ++i) {
      if (beta[i] > 0) {
        Degree lower = add(beta, i, -1);
        int off = lay.offset.at(lower);
        Rational a = cd.pairing(cd.simple_roots()[i], M->weights[col] + cd.simple_roots()[i]);
        QFrac kp = QFrac(qpow(a)), km = QFrac(qpow(-a));
        QFrac inv = QFrac(QScalar(1), qi_minus_inv(cd, i));
        const DVec& d = L.deriv[i][k];
        const DVec& dp = L.derivp[i][k];
        for (std::size_t t = 0; t < d.size(); ++t) {
          QFrac c = (kp * d[t] - km * dp[t]) * inv;
          if (!c.is_zero()) M->e[i][col].entries.push_back({off + static_cast<int>(t), c});
        }
      }
      if (height(beta) + 1 > H) {
        M->f[i][col].truncated = true;
        continue;
      }
      Degree upper = add(beta, i, 1);
      const auto& U = um.level(upper);
      int off = lay.offset.at(upper);
      const DVec& c = U.left[i][k];
      for (std::size_t t = 0; t < c.size(); ++t)
        if (!c[t].is_zero()) M->f[i][col].entries.push_back({off + static_cast<int>(t), c[t]});
    }
  }
  M->finalize();
  return M;
}

}  // namespace

ModulePtr build_verma(const CartanPtr& cd, const Weight& lambda, int H, std::shared_ptr<UMinus> um) {
  if (!um) um = shared_uminus(cd);
  VermaLayout lay;
  return verma_impl(cd, lambda, H, *um, lay);
}

ModulePtr build_genverma(const CartanPtr& cdp, const LeviDatum& levi, const Weight& lambda, int H,
                         std::shared_ptr<UMinus> um) {
  const CartanData& cd = *cdp;
  require_center_character(cd, levi, lambda);
  if (!um) um = shared_uminus(cdp);
  VermaLayout lay;
  auto V = verma_impl(cdp, lambda, H, *um, lay);
  // kernel: U^- f_i v for i in the Levi
  std::map<Weight, SparseSubspace> N;
  int r = cd.rank();
  for (const auto& [beta, off] : lay.offset) {
    Weight w = lambda - cd.weight_of(beta);
    SparseSubspace& S = N[w];
    for (int i : levi.levi_simple) {
      if (beta[i] == 0) continue;
      Degree lower = add(beta, i, -1);
      std::size_t n = um->level(lower).words.size();
      for (std::size_t t = 0; t < n; ++t) {
        const DVec& c = um->right_mul(i, lower, static_cast<int>(t));
        SVec v;
        for (std::size_t s = 0; s < c.size(); ++s)
          if (!c[s].is_zero()) v[off + static_cast<int>(s)] = c[s];
        S.insert(std::move(v));
      }
    }
  }
  auto M = std::make_shared<WModule>();
  M->kind = ModuleKind::genverma;
  M->cd = cdp;
  M->H = H;
  M->top = lambda;
  M->highest_weight = lambda;
  M->levi = levi;
  std::vector<int> new_index(V->dim(), -1), old_index;
  for (int b = 0; b < V->dim(); ++b) {
    const auto& piv = N[V->weights[b]].pivots();
    if (std::binary_search(piv.begin(), piv.end(), b)) continue;
    new_index[b] = M->dim();
    old_index.push_back(b);
    M->weights.push_back(V->weights[b]);
    M->depth.push_back(V->depth[b]);
    M->labels.push_back(V->labels[b]);
  }
  int n = M->dim();
  set_shape(*M, n);
  auto project = [&](const SVec& v, const Weight& w) {
    std::vector<std::pair<int, QFrac>> out;
    auto it = N.find(w);
    SVec red = it == N.end() ? v : it->second.reduce(v);
    for (auto& [k, c] : red) {
      if (new_index[k] < 0) throw std::logic_error("genverma: projection hit a pivot");
      out.push_back({new_index[k], c});
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    return out;
  };
  for (int col = 0; col < n; ++col) {
    int b = old_index[col];
    SVec unit{{b, QFrac(1)}};
    for (int i = 0; i < r; ++i) {
      M->e[i][col].entries = project(V->apply_e(i, unit), V->weights[b] + cd.simple_roots()[i]);
      bool dropped = false;
      SVec fv = V->apply_f(i, unit, &dropped);
      M->f[i][col].truncated = dropped;
      M->f[i][col].entries = project(fv, V->weights[b] - cd.simple_roots()[i]);
    }
  }
  M->finalize();
  return M;
}

// ---------------------------------------------------------------- subspaces

namespace {

std::map<Weight, SVec> split_by_weight(const WModule& M, const SVec& v) {
  std::map<Weight, SVec> out;
  for (const auto& [k, c] : v) out[M.weights[k]][k] = c;
  return out;
}

}  // namespace

GradedSubspace submodule_generated(const WModule& M, const std::vector<SVec>& vectors) {
  GradedSubspace sub;
  std::vector<std::pair<Weight, SVec>> queue;
  for (const auto& v : vectors)
    for (auto& [w, part] : split_by_weight(M, v)) queue.push_back({w, part});
  int r = M.cd->rank();
  while (!queue.empty()) {
    auto [w, v] = std::move(queue.back());
    queue.pop_back();
    SparseSubspace& S = sub[w];
    SVec red = S.reduce(v);
    if (red.empty()) continue;
    S.insert(red);
    for (int i = 0; i < r; ++i) {
      SVec ev = M.apply_e(i, red);
      if (!ev.empty()) queue.push_back({w + M.cd->simple_roots()[i], std::move(ev)});
      SVec fv = M.apply_f(i, red);
      if (!fv.empty()) queue.push_back({w - M.cd->simple_roots()[i], std::move(fv)});
    }
  }
  for (auto it = sub.begin(); it != sub.end();) it = it->second.dim() == 0 ? sub.erase(it) : std::next(it);
  return sub;
}

std::size_t total_dim(const GradedSubspace& s) {
  std::size_t t = 0;
  for (const auto& [w, S] : s) t += S.dim();
  return t;
}

ModulePtr module_from_subspace(const WModule& Mb, const GradedSubspace& sub, const Weight& top) {
  const CartanData& cd = *Mb.cd;
  auto M = std::make_shared<WModule>();
  M->kind = ModuleKind::submodule;
  M->cd = Mb.cd;
  M->H = Mb.H;
  M->top = top;
  M->highest_weight = top;
  std::vector<std::pair<int, Weight>> order;
  for (const auto& [w, S] : sub) order.push_back({height(cd.degree_of(top - w)), w});
  std::sort(order.begin(), order.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first < b.first;
    return b.second < a.second;
  });
  std::map<Weight, int> offset;
  for (const auto& [d, w] : order) {
    offset[w] = M->dim();
    const auto& S = sub.at(w);
    for (std::size_t k = 0; k < S.dim(); ++k) {
      M->weights.push_back(w);
      M->depth.push_back(d);
      M->labels.push_back("[" + w.pretty() + "]" + std::to_string(k + 1));
    }
  }
  int n = M->dim();
  set_shape(*M, n);
  int r = cd.rank();
  for (const auto& [d, w] : order) {
    const auto& S = sub.at(w);
    for (std::size_t k = 0; k < S.dim(); ++k) {
      int col = offset[w] + static_cast<int>(k);
      const SVec& vec = S.basis()[k];
      for (int i = 0; i < r; ++i) {
        for (int sign : {1, -1}) {
          bool dropped = false;
          SVec img = sign > 0 ? Mb.apply_e(i, vec) : Mb.apply_f(i, vec, &dropped);
          Weight tw = sign > 0 ? w + cd.simple_roots()[i] : w - cd.simple_roots()[i];
          Column& c = sign > 0 ? M->e[i][col] : M->f[i][col];
          c.truncated = dropped;
          if (img.empty()) continue;
          auto it = sub.find(tw);
          if (it == sub.end()) throw std::logic_error("subspace is not closed under the action");
          auto co = it->second.coordinates(img);
          if (!co) throw std::logic_error("subspace is not closed under the action");
          for (std::size_t t = 0; t < co->size(); ++t)
            if (!(*co)[t].is_zero()) c.entries.push_back({offset[tw] + static_cast<int>(t), (*co)[t]});
        }
      }
    }
  }
  M->finalize();
  return M;
}

std::vector<SVec> highest_weight_vectors(const WModule& M, const Weight& mu) {
  const auto& idx = M.indices_of(mu);
  if (idx.empty()) return {};
  const CartanData& cd = *M.cd;
  std::map<int, std::size_t> col;
  for (std::size_t t = 0; t < idx.size(); ++t) col[idx[t]] = t;
  DMat rows;
  for (int i = 0; i < cd.rank(); ++i) {
    const auto& up = M.indices_of(mu + cd.simple_roots()[i]);
    std::map<int, std::size_t> rowof;
    for (std::size_t t = 0; t < up.size(); ++t) rowof[up[t]] = t;
    DMat block(up.size(), DVec(idx.size()));
    for (std::size_t t = 0; t < idx.size(); ++t)
      for (const auto& [rr, c] : M.e[i][idx[t]].entries) block[rowof.at(rr)][t] += c;
    for (auto& row : block) rows.push_back(std::move(row));
  }
  std::vector<SVec> out;
  for (const auto& v : kernel(rows, idx.size())) {
    SVec s;
    for (std::size_t t = 0; t < v.size(); ++t)
      if (!v[t].is_zero()) s[idx[t]] = v[t];
    out.push_back(std::move(s));
  }
  return out;
}

// ---------------------------------------------------------------- word actions

const WordAction::Result& WordAction::f_word(const Degree& beta, int k, int b) {
  auto key = std::make_tuple(beta, k, b);
  auto it = fcache_.find(key);
  if (it != fcache_.end()) return it->second;
  Result res;
  if (is_zero_degree(beta)) {
    res.v[b] = 1;
  } else {
    UMinus::Word w = um_->level(beta).words[k];
    const Result& inner = f_word(add(beta, w.first, -1), w.tail, b);
    bool dropped = false;
    res.v = M_->apply_f(w.first, inner.v, &dropped);
    res.exact = inner.exact && !dropped;
  }
  return fcache_.emplace(key, std::move(res)).first->second;
}

const WordAction::Result& WordAction::e_word(const Degree& beta, int k, int b) {
  auto key = std::make_tuple(beta, k, b);
  auto it = ecache_.find(key);
  if (it != ecache_.end()) return it->second;
  Result res;
  if (is_zero_degree(beta)) {
    res.v[b] = 1;
  } else {
    UMinus::Word w = um_->level(beta).words[k];
    const Result& inner = e_word(add(beta, w.first, -1), w.tail, b);
    res.v = M_->apply_e(w.first, inner.v);
    res.exact = inner.exact;
  }
  return ecache_.emplace(key, std::move(res)).first->second;
}

// ---------------------------------------------------------------- relations

RelationReport check_relations(const WModule& M) {
  const CartanData& cd = *M.cd;
  RelationReport rep;
  int r = cd.rank();
  auto fail = [&](const std::string& what, int b) { rep.failures.push_back(what + " on " + M.labels[b]); };
  for (int b = 0; b < M.dim(); ++b) {
    SVec unit{{b, QFrac(1)}};
    int room = M.H < 0 ? 1 << 20 : M.H - M.depth[b];
    for (int i = 0; i < r; ++i) {
      for (const auto& [t, c] : M.e[i][b].entries)
        if (!(M.weights[t] == M.weights[b] + cd.simple_roots()[i])) fail("weight of e" + std::to_string(i + 1), b);
      for (const auto& [t, c] : M.f[i][b].entries)
        if (!(M.weights[t] == M.weights[b] - cd.simple_roots()[i])) fail("weight of f" + std::to_string(i + 1), b);
    }
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j) {
        if (room < 1) continue;
        ++rep.checks;
        SVec lhs = M.apply_e(i, M.apply_f(j, unit));
        axpy(lhs, QFrac(-1), M.apply_f(j, M.apply_e(i, unit)));
        if (i == j) {
          QExp a = QExp::from_rational(M.k_exp(i, b));
          QFrac kk = QFrac(QScalar::q_pow(a) - QScalar::q_pow(-a), qi_minus_inv(cd, i));
          axpy(lhs, -kk, unit);
        }
        if (!lhs.empty()) fail("[e" + std::to_string(i + 1) + ",f" + std::to_string(j + 1) + "]", b);
      }
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j) {
        if (i == j) continue;
        int a = cd.cartan_integer(i, j);
        int m = 1 - a;
        QExp d = cd.qi_exp(i);
        for (bool raising : {true, false}) {
          if (!raising && room < m + 1) continue;
          ++rep.checks;
          SVec total;
          for (int k = 0; k <= m; ++k) {
            SVec v = unit;
            auto step = [&](int g) { v = raising ? M.apply_e(g, v) : M.apply_f(g, v); };
            for (int t = 0; t < k; ++t) step(i);
            step(j);
            for (int t = 0; t < m - k; ++t) step(i);
            QFrac coef = QFrac(q_binom(m, k, d));
            if (k % 2) coef = -coef;
            axpy(total, coef, v);
          }
          if (!total.empty())
            fail(std::string(raising ? "e" : "f") + "-Serre(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")",
                 b);
        }
      }
  }
  return rep;
}

}  // namespace qcc
