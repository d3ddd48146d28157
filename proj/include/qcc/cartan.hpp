#pragma once

#include <memory>
#include <string>
#include <vector>

#include "qcc/qring.hpp"

namespace qcc {

enum class Series { A, B, C, D };

char series_char(Series s);
Series parse_series(const std::string& s);

// Element of h* in epsilon coordinates.  For series A the coordinates are
// stored with zero sum.
class Weight {
 public:
  Weight() = default;
  explicit Weight(std::vector<Rational> c) : c_(std::move(c)) {}
  std::size_t size() const { return c_.size(); }
  const Rational& operator[](std::size_t i) const { return c_[i]; }
  Rational& operator[](std::size_t i) { return c_[i]; }
  const std::vector<Rational>& coords() const { return c_; }

  Weight operator+(const Weight& o) const;
  Weight operator-(const Weight& o) const;
  Weight operator-() const;
  Weight operator*(const Rational& k) const;
  bool is_zero() const;

  friend bool operator==(const Weight& a, const Weight& b) { return a.c_ == b.c_; }
  friend bool operator!=(const Weight& a, const Weight& b) { return !(a == b); }
  friend bool operator<(const Weight& a, const Weight& b) { return a.c_ < b.c_; }

  std::string str() const;  // "a,b,c"
  std::string pretty() const;  // "e1+e2-1/2*e3" style

 private:
  std::vector<Rational> c_;
};

using Degree = std::vector<int>;  // coordinates in the simple roots

class CartanData {
 public:
  static std::shared_ptr<const CartanData> build(Series s, int rank);

  Series series() const { return series_; }
  int rank() const { return rank_; }
  int dim_defining() const { return N_; }
  int coord_len() const { return len_; }
  std::string name() const;

  Weight weight(std::vector<Rational> coords) const;  // normalizes
  Weight zero() const;
  Weight eps(int i) const;  // 1-based
  Rational pairing(const Weight& u, const Weight& v) const;
  Rational gram(int i, int j) const;  // (eps_i, eps_j), 1-based

  const std::vector<Weight>& simple_roots() const { return simple_; }
  const std::vector<Weight>& positive_roots() const { return positive_; }
  const Weight& rho() const { return rho_; }
  Rational rho1() const { return rho1_; }
  Rational rho_coord(int i) const { return rho1_ - (i - 1); }
  std::vector<Weight> defining_weights() const;
  const std::vector<Weight>& fundamental_weights() const { return fundamental_; }

  // (alpha_i, alpha_j), 0-based.
  const Rational& root_pairing(int i, int j) const { return rootgram_[i][j]; }
  int cartan_integer(int i, int j) const;  // a_ij = 2(a_i,a_j)/(a_i,a_i)
  QExp qi_exp(int i) const;  // (alpha_i, alpha_i)/2
  Rational coroot_pairing(const Weight& w, int i) const;  // (w, alpha_i^vee)

  // Simple-root coordinates of w (rational in general).
  std::vector<Rational> root_coords(const Weight& w) const;
  // Integral nonnegative coordinates or throw.
  Degree degree_of(const Weight& w) const;
  Weight weight_of(const Degree& d) const;

 private:
  Series series_ = Series::A;
  int rank_ = 0, N_ = 0, len_ = 0;
  Rational rho1_;
  std::vector<Weight> simple_, positive_, fundamental_;
  Weight rho_;
  std::vector<std::vector<Rational>> rootgram_, rootgram_inv_;
};

using CartanPtr = std::shared_ptr<const CartanData>;

int height(const Degree& d);
std::string degree_str(const Degree& d);

enum class Tail { gl, same };

struct LeviWeight {
  enum class Kind { top, zero, middle, dual };
  Weight weight;
  Kind kind;
  int block;  // 0-based block index (unused for zero)
};

struct LeviDatum {
  std::vector<int> composition;
  Tail tail = Tail::gl;
  std::vector<int> block_starts;  // m_i, 1-based
  std::vector<int> levi_simple;  // 0-based indices of Pi_l
  std::vector<LeviWeight> levi_highest_weights;  // Lambda_l(V)
  bool in_levi(int i) const;
};

LeviDatum levi_from_composition(const CartanData& cd, const std::vector<int>& composition, Tail tail);
LeviDatum cartan_levi(const CartanData& cd);  // all blocks of size one

enum class Genericity { regular, generic, neither };
std::string genericity_str(Genericity g);
Genericity genericity_check(const CartanData& cd, const LeviDatum& levi, const Weight& lambda);
void require_center_character(const CartanData& cd, const LeviDatum& levi, const Weight& lambda);

// Kostant partition function: number of ways to write d as a sum of positive roots.
long kostant_count(const CartanData& cd, const Degree& d);
// Same count restricted to positive roots outside the Levi.
long kostant_count(const CartanData& cd, const Degree& d, const LeviDatum& levi);

Weight parse_weight(const CartanData& cd, const std::string& csv);
std::vector<int> parse_int_list(const std::string& csv);

}  // namespace qcc
