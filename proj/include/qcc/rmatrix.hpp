#pragma once

#include <map>
#include <array>
#include <memory>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "qcc/uqmod.hpp"

namespace qcc {

// Coefficients of the quasi-R part:  Theta_beta = sum C[k][l] y_k (x) x_l with
// y_k the U^- basis of degree beta and x_l its image in U^+ under f_i -> e_i.
class QuasiR {
 public:
  explicit QuasiR(std::shared_ptr<UMinus> um, unsigned order_seed = 0);
  const DMat& theta(const Degree& beta);
  UMinus& uminus() { return *um_; }
  std::shared_ptr<UMinus> uminus_ptr() const { return um_; }

 private:
  std::shared_ptr<UMinus> um_;
  unsigned order_seed_;
  std::map<Degree, DMat> cache_;
};

std::shared_ptr<QuasiR> shared_quasi_r(const CartanPtr& cd, unsigned seed = 0);

using PairTerms = std::map<std::pair<int, int>, QFrac>;

struct PairResult {
  PairTerms terms;
  bool exact = true;
};

// Operator on X (x) Y given on basis pairs.
class PairOperator {
 public:
  virtual ~PairOperator() = default;
  virtual const PairResult& apply(int x, int y) = 0;
  virtual const WModule& left() const = 0;
  virtual const WModule& right() const = 0;
};

// R = q^{Omega} Theta acting on X (x) Y.
class RAction : public PairOperator {
 public:
  RAction(ModulePtr X, ModulePtr Y, std::shared_ptr<QuasiR> theta = nullptr);
  const PairResult& apply(int x, int y) override;
  const WModule& left() const override { return *X_; }
  const WModule& right() const override { return *Y_; }
  // Number of nonzero Theta blocks met so far.
  std::size_t blocks_used() const { return blocks_.size(); }
  const std::set<Degree>& blocks() const { return blocks_; }

 private:
  ModulePtr X_, Y_;
  std::shared_ptr<QuasiR> th_;
  WordAction wx_, wy_;
  std::map<std::pair<int, int>, PairResult> cache_;
  std::set<Degree> blocks_;
};

// Q = R21 R on X (x) Y.
class QAction : public PairOperator {
 public:
  QAction(ModulePtr X, ModulePtr Y, std::shared_ptr<QuasiR> theta = nullptr);
  const PairResult& apply(int x, int y) override;
  const WModule& left() const override { return r12_.left(); }
  const WModule& right() const override { return r12_.right(); }
  RAction& r12() { return r12_; }
  RAction& r21() { return r21_; }

 private:
  RAction r12_, r21_;  // R_{X,Y} and R_{Y,X}
  std::map<std::pair<int, int>, PairResult> cache_;
};

// Pair operator given by an explicit matrix on a finite X (x) Y.
class DenseOperator : public PairOperator {
 public:
  DenseOperator(ModulePtr X, ModulePtr Y, DMat m);  // index x * dim Y + y
  const PairResult& apply(int x, int y) override;
  const WModule& left() const override { return *X_; }
  const WModule& right() const override { return *Y_; }
  const DMat& matrix() const { return m_; }

 private:
  ModulePtr X_, Y_;
  DMat m_;
  std::vector<PairResult> cols_;
};

// (block weight, row label, column label, scalar) for inputs of total depth <= max_depth.
std::vector<std::array<std::string, 4>> operator_triples(PairOperator& op, int max_depth = -1);

// Dense matrix of a pair operator on a finite product, index x * dim Y + y.
DMat dense_matrix(PairOperator& op);

// Vectors in a multiple tensor product X_0 (x) ... (x) X_{n-1}.
struct LegVector {
  std::map<std::vector<int>, QFrac> terms;
  bool exact = true;
  bool empty() const { return terms.empty(); }
};

LegVector leg_basis(const std::vector<int>& idx);
bool equal_terms(const LegVector& a, const LegVector& b);
void leg_axpy(LegVector& y, const QFrac& a, const LegVector& x);
// Applies op (acting on X_s (x) X_t in this order) to legs s and t.
LegVector apply_on_legs(const LegVector& v, int s, int t, PairOperator& op);
// Generator e_i or f_i through the iterated coproduct; order lists the legs as
// tensor factors of the coproduct (the identity order gives Delta, reversed gives Delta^op).
LegVector apply_generator(const std::vector<ModulePtr>& legs, const LegVector& v, char gen, int i,
                          const std::vector<int>& order);

enum class Verdict { pass, fail, inconclusive };
std::string verdict_str(Verdict v);

struct IdentityReport {
  std::string name;
  Verdict verdict = Verdict::inconclusive;
  long checked = 0;  // basis inputs compared
  long blocks = 0;  // total weight blocks compared
  int frontier = -1;  // max depth of the fully checked region, -1 when finite
  std::string detail;
};

IdentityReport check_intertwining(RAction& R);
IdentityReport check_q_invariance(QAction& Q);
IdentityReport check_ybe(const CartanPtr& cd);
IdentityReport check_hecke(const CartanPtr& cd);
IdentityReport check_uniqueness(const CartanPtr& cd, unsigned seed, ModulePtr Y = nullptr);
// Y is a truncated (generalized) Verma module; X = V.
IdentityReport check_ure(const CartanPtr& cd, ModulePtr Y);
IdentityReport check_fusion(const CartanPtr& cd, ModulePtr Y);
// R_{V(x)V,Y} against R13 R23.
IdentityReport check_hexagon(const CartanPtr& cd, ModulePtr Y);

// Minimal polynomial roots of PR on V (x) V.
std::vector<QScalar> hecke_roots(const CartanPtr& cd);

// Weight zero invariant of V (x) V, entries B[i][j] with B[0][N-1] = 1.
DMat invariant_form_B(const CartanPtr& cd);
// Relations of the orthogonal and symplectic quotient with K = Q_V on V (x) M.
IdentityReport check_frt_quotient(const CartanPtr& cd, ModulePtr M);

}  // namespace qcc
