#include "qcc/cartan.hpp"

#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>

namespace qcc {

namespace {

using RMatrix = std::vector<std::vector<Rational>>;

RMatrix invert(RMatrix a) {
  std::size_t n = a.size();
  RMatrix inv(n, std::vector<Rational>(n, Rational(0)));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && sgn(a[p][c]) == 0) ++p;
    if (p == n) throw MathError("singular root Gram matrix");
    std::swap(a[p], a[c]);
    std::swap(inv[p], inv[c]);
    Rational piv = a[c][c];
    for (std::size_t j = 0; j < n; ++j) {
      a[c][j] /= piv;
      inv[c][j] /= piv;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || sgn(a[r][c]) == 0) continue;
      Rational f = a[r][c];
      for (std::size_t j = 0; j < n; ++j) {
        a[r][j] -= f * a[c][j];
        inv[r][j] -= f * inv[c][j];
      }
    }
  }
  return inv;
}

}  // namespace

char series_char(Series s) {
  switch (s) {
    case Series::A: return 'A';
    case Series::B: return 'B';
    case Series::C: return 'C';
    case Series::D: return 'D';
  }
  return '?';
}

Series parse_series(const std::string& s) {
  if (s == "A" || s == "a") return Series::A;
  if (s == "B" || s == "b") return Series::B;
  if (s == "C" || s == "c") return Series::C;
  if (s == "D" || s == "d") return Series::D;
  throw std::invalid_argument("unknown series '" + s + "'");
}

// ---------------------------------------------------------------- Weight

Weight Weight::operator+(const Weight& o) const {
  if (o.size() != size()) throw std::invalid_argument("weight length mismatch");
  Weight r = *this;
  for (std::size_t i = 0; i < size(); ++i) r.c_[i] += o.c_[i];
  return r;
}

Weight Weight::operator-(const Weight& o) const {
  if (o.size() != size()) throw std::invalid_argument("weight length mismatch");
  Weight r = *this;
  for (std::size_t i = 0; i < size(); ++i) r.c_[i] -= o.c_[i];
  return r;
}

Weight Weight::operator-() const {
  Weight r = *this;
  for (auto& x : r.c_) x = -x;
  return r;
}

Weight Weight::operator*(const Rational& k) const {
  Weight r = *this;
  for (auto& x : r.c_) x *= k;
  return r;
}

bool Weight::is_zero() const {
  for (const auto& x : c_)
    if (sgn(x) != 0) return false;
  return true;
}

std::string Weight::str() const {
  std::string s;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (i) s += ",";
    s += c_[i].get_str();
  }
  return s;
}

std::string Weight::pretty() const {
  std::string s;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (sgn(c_[i]) == 0) continue;
    Rational m = abs(c_[i]);
    std::string t = (m == 1 ? "" : m.get_str() + "*") + "e" + std::to_string(i + 1);
    if (s.empty())
      s = (sgn(c_[i]) < 0 ? "-" : "") + t;
    else
      s += (sgn(c_[i]) < 0 ? "-" : "+") + t;
  }
  return s.empty() ? "0" : s;
}

// ---------------------------------------------------------------- CartanData

std::shared_ptr<const CartanData> CartanData::build(Series s, int rank) {
  if (s == Series::A && rank < 1) throw std::invalid_argument("series A requires rank >= 1");
  if (s != Series::A && rank < 2) throw std::invalid_argument("series B, C, D require rank >= 2");
  if (rank > 12) throw std::invalid_argument("rank too large");
  auto cd = std::make_shared<CartanData>();
  cd->series_ = s;
  cd->rank_ = rank;
  switch (s) {
    case Series::A: cd->N_ = rank + 1; cd->len_ = rank + 1; break;
    case Series::B: cd->N_ = 2 * rank + 1; cd->len_ = rank; break;
    case Series::C: cd->N_ = 2 * rank; cd->len_ = rank; break;
    case Series::D: cd->N_ = 2 * rank; cd->len_ = rank; break;
  }
  int n = cd->len_;
  auto e = [&](int i) { return cd->eps(i); };
  if (s == Series::A) {
    for (int i = 1; i < n; ++i) cd->simple_.push_back(e(i) - e(i + 1));
    for (int i = 1; i <= n; ++i)
      for (int j = i + 1; j <= n; ++j) cd->positive_.push_back(e(i) - e(j));
  } else {
    for (int i = 1; i < n; ++i) cd->simple_.push_back(e(i) - e(i + 1));
    if (s == Series::B) cd->simple_.push_back(e(n));
    if (s == Series::C) cd->simple_.push_back(e(n) * 2);
    if (s == Series::D) cd->simple_.push_back(e(n - 1) + e(n));
    for (int i = 1; i <= n; ++i)
      for (int j = i + 1; j <= n; ++j) {
        cd->positive_.push_back(e(i) - e(j));
        cd->positive_.push_back(e(i) + e(j));
      }
    if (s == Series::B)
      for (int i = 1; i <= n; ++i) cd->positive_.push_back(e(i));
    if (s == Series::C)
      for (int i = 1; i <= n; ++i) cd->positive_.push_back(e(i) * 2);
  }
  Weight two_rho = cd->zero();
  for (const auto& a : cd->positive_) two_rho = two_rho + a;
  cd->rho_ = two_rho * Rational(1, 2);
  cd->rho1_ = cd->pairing(cd->rho_, e(1));
  int r = rank;
  cd->rootgram_.assign(r, std::vector<Rational>(r));
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) cd->rootgram_[i][j] = cd->pairing(cd->simple_[i], cd->simple_[j]);
  cd->rootgram_inv_ = invert(cd->rootgram_);
  for (int i = 0; i < r; ++i) {
    Weight w = cd->zero();
    for (int k = 0; k < r; ++k) w = w + cd->simple_[k] * (cd->rootgram_inv_[k][i] * cd->rootgram_[i][i] / 2);
    cd->fundamental_.push_back(w);
  }
  return cd;
}

std::string CartanData::name() const { return std::string(1, series_char(series_)) + std::to_string(rank_); }

Weight CartanData::weight(std::vector<Rational> c) const {
  if (static_cast<int>(c.size()) != len_)
    throw std::invalid_argument("weight has " + std::to_string(c.size()) + " coordinates, expected " + std::to_string(len_));
  if (series_ == Series::A) {
    Rational mean = 0;
    for (const auto& x : c) mean += x;
    mean /= len_;
    for (auto& x : c) x -= mean;
  }
  return Weight(std::move(c));
}

Weight CartanData::zero() const { return Weight(std::vector<Rational>(len_, Rational(0))); }

Weight CartanData::eps(int i) const {
  if (i < 1 || i > len_) throw std::out_of_range("epsilon index");
  std::vector<Rational> c(len_, Rational(0));
  c[i - 1] = 1;
  return weight(std::move(c));
}

Rational CartanData::pairing(const Weight& u, const Weight& v) const {
  if (static_cast<int>(u.size()) != len_ || static_cast<int>(v.size()) != len_)
    throw std::invalid_argument("pairing: weight length mismatch");
  Rational acc = 0;
  for (int i = 0; i < len_; ++i) acc += u[i] * v[i];
  if (series_ == Series::A) {
    Rational su = 0, sv = 0;
    for (int i = 0; i < len_; ++i) {
      su += u[i];
      sv += v[i];
    }
    acc -= su * sv / len_;
  }
  return acc;
}

Rational CartanData::gram(int i, int j) const {
  Rational d = i == j ? 1 : 0;
  if (series_ == Series::A) d -= Rational(1, len_);
  return d;
}

std::vector<Weight> CartanData::defining_weights() const {
  std::vector<Weight> w;
  for (int i = 1; i <= len_; ++i) w.push_back(eps(i));
  if (series_ == Series::A) return w;
  if (series_ == Series::B) w.push_back(zero());
  for (int i = len_; i >= 1; --i) w.push_back(-eps(i));
  return w;
}

int CartanData::cartan_integer(int i, int j) const {
  Rational a = 2 * rootgram_[i][j] / rootgram_[i][i];
  return static_cast<int>(a.get_num().get_si());
}

QExp CartanData::qi_exp(int i) const { return QExp::from_rational(rootgram_[i][i] / 2); }

Rational CartanData::coroot_pairing(const Weight& w, int i) const {
  return 2 * pairing(w, simple_[i]) / rootgram_[i][i];
}

std::vector<Rational> CartanData::root_coords(const Weight& w) const {
  std::vector<Rational> b(rank_), c(rank_, Rational(0));
  for (int j = 0; j < rank_; ++j) b[j] = pairing(w, simple_[j]);
  for (int k = 0; k < rank_; ++k)
    for (int j = 0; j < rank_; ++j) c[k] += rootgram_inv_[k][j] * b[j];
  return c;
}

Degree CartanData::degree_of(const Weight& w) const {
  auto c = root_coords(w);
  Degree d(rank_);
  for (int k = 0; k < rank_; ++k) {
    if (c[k].get_den() != 1 || sgn(c[k]) < 0) throw std::invalid_argument("weight is not in the positive root cone");
    d[k] = static_cast<int>(c[k].get_num().get_si());
  }
  if (!(weight_of(d) == w)) throw std::invalid_argument("weight is not in the root lattice");
  return d;
}

Weight CartanData::weight_of(const Degree& d) const {
  Weight w = zero();
  for (int k = 0; k < rank_; ++k)
    if (d[k]) w = w + simple_[k] * d[k];
  return w;
}

int height(const Degree& d) {
  int h = 0;
  for (int x : d) h += x;
  return h;
}

std::string degree_str(const Degree& d) {
  std::string s = "(";
  for (std::size_t i = 0; i < d.size(); ++i) s += (i ? "," : "") + std::to_string(d[i]);
  return s + ")";
}

// ---------------------------------------------------------------- Levi data

bool LeviDatum::in_levi(int i) const {
  for (int j : levi_simple)
    if (j == i) return true;
  return false;
}

LeviDatum levi_from_composition(const CartanData& cd, const std::vector<int>& composition, Tail tail) {
  Series s = cd.series();
  int n = cd.coord_len();
  if (composition.empty()) throw std::invalid_argument("empty composition");
  int sum = 0;
  for (int x : composition) {
    if (x <= 0) throw std::invalid_argument("composition entries must be positive");
    sum += x;
  }
  if (sum != n)
    throw std::invalid_argument("composition sums to " + std::to_string(sum) + ", expected " + std::to_string(n));
  if (tail == Tail::same && s == Series::A) throw std::invalid_argument("same-type tail is not defined for series A");
  if (tail == Tail::same && s == Series::D && composition.back() < 2)
    throw std::invalid_argument("same-type tail of size 1 in series D is a gl(1) block; use the gl tail");
  LeviDatum L;
  L.composition = composition;
  L.tail = tail;
  int k = static_cast<int>(composition.size());
  std::vector<int> block_of(n + 1);
  int m = 1;
  for (int i = 0; i < k; ++i) {
    L.block_starts.push_back(m);
    for (int j = 0; j < composition[i]; ++j) block_of[m + j] = i;
    m += composition[i];
  }
  int last = s == Series::A ? cd.rank() : n - 1;
  for (int j = 1; j <= last; ++j)
    if (block_of[j] == block_of[j + 1]) L.levi_simple.push_back(j - 1);
  if (tail == Tail::same) L.levi_simple.push_back(n - 1);

  using K = LeviWeight::Kind;
  int tops = tail == Tail::same ? k - 1 : k;
  for (int i = 0; i < tops; ++i) L.levi_highest_weights.push_back({cd.eps(L.block_starts[i]), K::top, i});
  if (s == Series::A) return L;
  if (tail == Tail::same) L.levi_highest_weights.push_back({cd.eps(L.block_starts[k - 1]), K::middle, k - 1});
  if (tail == Tail::gl && s == Series::B) L.levi_highest_weights.push_back({cd.zero(), K::zero, -1});
  for (int i = tops - 1; i >= 0; --i)
    L.levi_highest_weights.push_back({-cd.eps(L.block_starts[i] + composition[i] - 1), K::dual, i});
  return L;
}

LeviDatum cartan_levi(const CartanData& cd) {
  return levi_from_composition(cd, std::vector<int>(cd.coord_len(), 1), Tail::gl);
}

std::string genericity_str(Genericity g) {
  switch (g) {
    case Genericity::regular: return "regular";
    case Genericity::generic: return "generic";
    case Genericity::neither: return "neither";
  }
  return "?";
}

void require_center_character(const CartanData& cd, const LeviDatum& levi, const Weight& lambda) {
  for (int i : levi.levi_simple)
    if (sgn(cd.pairing(lambda, cd.simple_roots()[i])) != 0)
      throw std::invalid_argument("weight is not a character of the Levi center: nonzero pairing with alpha_" +
                                  std::to_string(i + 1));
}

Genericity genericity_check(const CartanData& cd, const LeviDatum& levi, const Weight& lambda) {
  require_center_character(cd, levi, lambda);
  bool generic = true, regular = true;
  for (int i = 0; i < cd.rank(); ++i) {
    if (levi.in_levi(i)) continue;
    Rational p = cd.coroot_pairing(lambda, i);
    if (p.get_den() == 1) generic = false;
    if (sgn(p) == 0) regular = false;
  }
  if (generic) return Genericity::generic;
  if (regular) return Genericity::regular;
  return Genericity::neither;
}

// ---------------------------------------------------------------- partitions

namespace {

long kostant_impl(const std::vector<Degree>& roots, const Degree& d) {
  std::map<std::pair<Degree, std::size_t>, long> memo;
  std::function<long(const Degree&, std::size_t)> rec = [&](const Degree& rest, std::size_t from) -> long {
    bool zero = true;
    for (int x : rest) {
      if (x < 0) return 0;
      if (x) zero = false;
    }
    if (zero) return 1;
    if (from == roots.size()) return 0;
    auto key = std::make_pair(rest, from);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    long total = rec(rest, from + 1);
    Degree r = rest;
    while (true) {
      bool ok = true;
      for (std::size_t k = 0; k < r.size(); ++k) {
        r[k] -= roots[from][k];
        if (r[k] < 0) ok = false;
      }
      if (!ok) break;
      total += rec(r, from + 1);
    }
    memo[key] = total;
    return total;
  };
  return rec(d, 0);
}

}  // namespace

long kostant_count(const CartanData& cd, const Degree& d) {
  std::vector<Degree> roots;
  for (const auto& a : cd.positive_roots()) roots.push_back(cd.degree_of(a));
  return kostant_impl(roots, d);
}

long kostant_count(const CartanData& cd, const Degree& d, const LeviDatum& levi) {
  std::vector<Degree> roots;
  for (const auto& a : cd.positive_roots()) {
    Degree r = cd.degree_of(a);
    bool inside = true;
    for (int i = 0; i < cd.rank(); ++i)
      if (r[i] && !levi.in_levi(i)) inside = false;
    if (!inside) roots.push_back(r);
  }
  return kostant_impl(roots, d);
}

// ---------------------------------------------------------------- parsing

std::vector<int> parse_int_list(const std::string& csv) {
  std::vector<int> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(item, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("bad integer '" + item + "'");
    }
    while (used < item.size() && std::isspace(static_cast<unsigned char>(item[used]))) ++used;
    if (used != item.size()) throw std::invalid_argument("bad integer '" + item + "'");
    out.push_back(v);
  }
  return out;
}

Weight parse_weight(const CartanData& cd, const std::string& csv) {
  std::vector<Rational> c;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) c.push_back(parse_rational(item));
  if (cd.series() == Series::A && static_cast<int>(c.size()) == cd.rank()) c.push_back(0);
  return cd.weight(std::move(c));
}

}  // namespace qcc
