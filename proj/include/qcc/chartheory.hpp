#pragma once

#include <string>
#include <vector>

#include "qcc/rmatrix.hpp"

namespace qcc {

// (Tr_q (x) id)(op^ell) applied to basis vector y of the right factor.
struct TraceColumn {
  SVec v;
  bool exact = true;
};
TraceColumn qtrace_apply(PairOperator& op, int ell, int y);

// Checks that qtrace(op^ell) is a single scalar on every y with depth <= max_depth.
struct ScalarAction {
  Verdict verdict = Verdict::inconclusive;
  QFrac value;
  long checked = 0;
  std::string detail;
};
ScalarAction qtrace_scalar(PairOperator& op, int ell, int max_depth);

// Sum over x of q^{2(rho, wt x)} <x (x) top| Q |x (x) top>.  Only the identity
// blocks of both R factors reach this diagonal, so no truncation affects it.
QFrac projected_q1_trace(QAction& Q);

// Tr(q^{2h_rho}) on a finite module.
QScalar qdim_module(const WModule& W);
// Weyl q-dimension of the simple module with dominant integral highest weight.
QScalar qdim(const CartanData& cd, const Weight& lambda);
// d(lambda + nu) / d(lambda) in the ratio form; throws naming the root when a
// denominator bracket vanishes.
QFrac d_ratio(const CartanData& cd, const Weight& lambda, const Weight& nu);

// x_{nu_i} for the weights of W (multiset order preserved), nu the highest weight.
std::vector<QScalar> spec_eigenvalues(const CartanData& cd, const Weight& lambda, const std::vector<Weight>& weights,
                                      const Weight& nu);
std::vector<QScalar> spec_eigenvalues(const CartanData& cd, const Weight& lambda);

// Roots of the minimal polynomial on V (x) M_{p,lambda}, ordered as Lambda_l(V),
// duplicates collapsed.
std::vector<QScalar> parabolic_roots(const CartanData& cd, const LeviDatum& levi, const Weight& lambda);

struct SymbolicRoot {
  LeviWeight::Kind kind;
  int block;  // 0-based, -1 for zero
  QExp shift;  // root = mu^{+-1} q^shift, or q^shift for zero/middle
  std::string str() const;
};
std::vector<SymbolicRoot> parabolic_roots_symbolic(const CartanData& cd, const LeviDatum& levi);
// mu_i = q^{2(lambda+rho, eps_{m_i}) - 2(rho, nu)}: the block-top roots.
std::vector<QScalar> block_top_values(const CartanData& cd, const LeviDatum& levi, const Weight& lambda);

QFrac central_char_trace(const CartanData& cd, const Weight& lambda, const std::vector<Weight>& weights,
                         const Weight& nu, int ell);
QFrac central_char_trace(const CartanData& cd, const Weight& lambda, int ell);
// Iterated theta_lambda on End(W) using the numeric R on W (x) W.
QFrac theta_trace(const CartanPtr& cd, const Weight& lambda, int ell, ModulePtr W = nullptr);
// Tr pi_V(q^{2(h_lambda + h_rho)}).
QScalar trtr_closed_form(const CartanData& cd, const Weight& lambda);

TPoly char_min_poly(const std::vector<QScalar>& roots);

struct WedgePair {
  ModulePtr plus, minus;
};
// Submodules of V^{(x) n} with highest weights eps_1+...+eps_{n-1} +- eps_n (series D).
WedgePair build_wedge_pm(const CartanPtr& cd);
QScalar tau_minus_char(const CartanData& cd, const Weight& lambda);

// Q restricted to the total-weight block; nullopt when some column is inexact.
std::optional<DMat> q_block(QAction& Q, const Weight& total, std::vector<std::pair<int, int>>* pairs = nullptr);
// Multiset of eigenvalues of Q on the lowest block lambda + (lowest weight of X),
// where every summand appears; nullopt when inexact or not monomial.
std::optional<std::vector<QScalar>> diagonalized_spectrum(QAction& Q);
// Distinct eigenvalues over the blocks top(Y) + wt(x), x in X.
std::optional<std::vector<QScalar>> spectrum_root_set(QAction& Q);
// The same multiset predicted from spec_eigenvalues and Kostant counts.
std::vector<QScalar> predicted_block_spectrum(const CartanPtr& cd, const Weight& lambda);

// prod (Q - r) = 0 on all inputs of total depth <= bound with exact results.
IdentityReport check_annihilation(QAction& Q, const std::vector<QScalar>& roots, int bound);

}  // namespace qcc
