#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "qcc/cartan.hpp"
#include "qcc/linalg.hpp"

namespace qcc {

// The negative part U^- graded by degrees in the simple roots.  A basis of each
// degree is chosen among the products f_j * b (b a basis element one degree
// lower); independence is detected through the skew derivations obtained by
// commuting e_i past f-words, which vanish simultaneously only on zero.
class UMinus {
 public:
  struct Word {
    int first = -1;  // -1 for the unit
    int tail = -1;  // basis index in degree beta - alpha_first
  };
  struct Level {
    Degree beta;
    std::vector<Word> words;
    // deriv[i][k], derivp[i][k]: images of basis element k under the left and
    // right derivations, as coordinates in degree beta - alpha_i.
    std::vector<std::vector<DVec>> deriv, derivp;
    // left[j][b]: coordinates of f_j * b for b in degree beta - alpha_j.
    std::vector<std::vector<DVec>> left;
  };

  explicit UMinus(CartanPtr cd, unsigned seed = 0);
  const CartanData& cartan() const { return *cd_; }
  CartanPtr cartan_ptr() const { return cd_; }
  unsigned seed() const { return seed_; }

  const Level& level(const Degree& beta);
  std::size_t dim(const Degree& beta) { return level(beta).words.size(); }
  // Coordinates of f_j * x for x in degree beta.
  DVec left_mul(int j, const Degree& beta, const DVec& x);
  // Coordinates of b_k * f_i for b_k in degree beta.
  const DVec& right_mul(int i, const Degree& beta, int k);
  std::vector<int> letters(const Degree& beta, int k);
  std::string word_str(const Degree& beta, int k, char letter = 'f');

 private:
  CartanPtr cd_;
  unsigned seed_;
  std::map<Degree, Level> levels_;
  std::map<std::tuple<int, Degree, int>, DVec> right_;
  Level build(const Degree& beta);
};

std::shared_ptr<UMinus> shared_uminus(const CartanPtr& cd, unsigned seed = 0);

// All degrees of a given height, lexicographically decreasing.
std::vector<Degree> degrees_of_height(int rank, int h);

enum class ModuleKind { findim, verma, genverma, tensor, submodule };
std::string kind_str(ModuleKind k);

struct Column {
  std::vector<std::pair<int, QFrac>> entries;
  bool truncated = false;  // the image left the truncation window
};

class WModule {
 public:
  ModuleKind kind = ModuleKind::findim;
  CartanPtr cd;
  std::vector<Weight> weights;
  std::vector<int> depth;  // height below the top weight
  std::vector<std::string> labels;
  std::vector<std::vector<Column>> e, f;  // [generator][column]
  int H = -1;  // truncation height, -1 when finite-dimensional
  Weight top;
  std::optional<Weight> highest_weight;
  std::optional<LeviDatum> levi;
  // tensor products: index -> (left, right) factor indices
  std::vector<std::pair<int, int>> factors;

  int dim() const { return static_cast<int>(weights.size()); }
  int max_depth() const;
  bool finite() const { return H < 0; }
  const std::vector<int>& indices_of(const Weight& w) const;
  bool has_weight(const Weight& w) const { return by_weight_.count(w) > 0; }
  std::vector<Weight> weight_list() const;
  void finalize();  // builds the weight index
  // Exponent of K_i on basis vector b.
  Rational k_exp(int i, int b) const { return cd->pairing(cd->simple_roots()[i], weights[b]); }

  SVec apply_e(int i, const SVec& v) const;
  SVec apply_f(int i, const SVec& v, bool* dropped = nullptr) const;

 private:
  std::map<Weight, std::vector<int>> by_weight_;
};

using ModulePtr = std::shared_ptr<const WModule>;

ModulePtr build_defining_module(const CartanPtr& cd);
// max_depth < 0: no truncation.
ModulePtr tensor(const WModule& X, const WModule& Y, int max_depth = -1);
ModulePtr build_verma(const CartanPtr& cd, const Weight& lambda, int H, std::shared_ptr<UMinus> um = nullptr);
ModulePtr build_genverma(const CartanPtr& cd, const LeviDatum& levi, const Weight& lambda, int H,
                         std::shared_ptr<UMinus> um = nullptr);

using GradedSubspace = std::map<Weight, SparseSubspace>;
GradedSubspace submodule_generated(const WModule& M, const std::vector<SVec>& vectors);
std::size_t total_dim(const GradedSubspace& s);
// Realizes a finite graded subspace (closed under the action) as a module.
ModulePtr module_from_subspace(const WModule& M, const GradedSubspace& sub, const Weight& top);
std::vector<SVec> highest_weight_vectors(const WModule& M, const Weight& mu);

// Caches actions of basis words on basis vectors of a module.
class WordAction {
 public:
  struct Result {
    SVec v;
    bool exact = true;
  };
  WordAction(std::shared_ptr<UMinus> um, ModulePtr M) : um_(std::move(um)), M_(std::move(M)) {}
  const Result& f_word(const Degree& beta, int k, int b);
  const Result& e_word(const Degree& beta, int k, int b);
  const WModule& module() const { return *M_; }
  ModulePtr module_ptr() const { return M_; }
  UMinus& uminus() { return *um_; }

 private:
  std::shared_ptr<UMinus> um_;
  ModulePtr M_;
  std::map<std::tuple<Degree, int, int>, Result> fcache_, ecache_;
};

// Relation checks on a module; returns a list of failure descriptions.
struct RelationReport {
  long checks = 0;
  std::vector<std::string> failures;
  bool ok() const { return failures.empty(); }
};
RelationReport check_relations(const WModule& M);

}  // namespace qcc
