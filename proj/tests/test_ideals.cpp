#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>

#include "qcc/ideals.hpp"

using namespace qcc;

namespace {

QScalar qs(long n, long d = 1) { return QScalar::q_pow(QExp(n, d)); }
QScalar mono(long c, long n, long d = 1) { return QScalar::monomial(Rational(c), QExp(n, d)); }
QScalar inv(const QScalar& m) {
  const auto& t = m.terms().front();
  return QScalar::monomial(1 / t.coeff, QExp(0) - t.exp);
}

// [n]_q = q^{n-1} + q^{n-3} + ... + q^{1-n}
QScalar qint(int n) {
  QScalar s;
  for (int j = 0; j < n; ++j) s += qs(n - 1 - 2 * j);
  return s;
}

Rational at_one(const QScalar& s) {
  Rational v = 0;
  for (const auto& t : s.terms()) v += t.coeff;
  return v;
}

// eigenvalues of the classical element: constant blocks, inverses, a 1 for odd orthogonal
std::vector<Rational> classical_eigenvalues(const ClassSpec& cs) {
  std::vector<Rational> g;
  for (std::size_t b = 0; b < cs.composition.size(); ++b) {
    Rational c = cs.tail == Tail::same && b + 1 == cs.composition.size() ? Rational(1) : at_one(cs.mu[b]);
    for (int j = 0; j < cs.composition[b]; ++j) g.push_back(c);
  }
  if (cs.cd->series() == Series::A) return g;
  std::size_t n = g.size();
  for (std::size_t i = 0; i < n; ++i) g.push_back(1 / g[i]);
  if (cs.cd->series() == Series::B) g.push_back(1);
  return g;
}

std::vector<QScalar> values(const std::vector<RootEntry>& r) {
  std::vector<QScalar> v;
  for (const auto& e : r) v.push_back(e.value);
  std::sort(v.begin(), v.end());
  return v;
}

std::vector<QScalar> sorted(std::vector<QScalar> v) {
  std::sort(v.begin(), v.end());
  return v;
}

bool has_violation(const Diagnostics& d, const std::string& needle) {
  return std::any_of(d.violations.begin(), d.violations.end(),
                     [&](const std::string& v) { return v.find(needle) != std::string::npos; });
}

}  // namespace

TEST_CASE("quantum strings") {
  QScalar mu = mono(2, 1, 3);
  CHECK(quantum_string(mu, 1) == std::vector<QScalar>{mu});
  CHECK(quantum_string(mu, 3) == std::vector<QScalar>{mu, mu * qs(-2), mu * qs(-4)});
  CHECK(quantum_string(qs(2), 2) == std::vector<QScalar>{qs(2), QScalar(1)});
  CHECK_THROWS(quantum_string(mu, 0));
}

TEST_CASE("assembled eigenvalue vector") {
  QScalar mu = qs(1, 3);
  auto b2 = make_class(CartanData::build(Series::B, 2), {2}, Tail::gl, {mu});
  auto X = assemble_x(b2);
  CHECK(X.x == std::vector<QScalar>{mu, mu * qs(-2)});
  REQUIRE(X.x0);
  CHECK(*X.x0 == qs(-4));
  CHECK(X.dual == std::vector<QScalar>{inv(mu) * qs(-6), inv(mu) * qs(-4)});

  auto a2 = make_class(CartanData::build(Series::A, 2), {3}, Tail::gl, {mu});
  auto XA = assemble_x(a2);
  CHECK(XA.dual.empty());
  CHECK(!XA.x0);

  auto d3 = make_class(CartanData::build(Series::D, 3), {3}, Tail::gl, {mu});
  auto XD = assemble_x(d3);
  CHECK(XD.x == std::vector<QScalar>{mu, mu * qs(-2), mu * qs(-4)});
  for (int i = 0; i < 3; ++i) CHECK(XD.dual[i] * XD.x[i] == qs(-8));
}

TEST_CASE("duality of block strings") {
  auto c3 = make_class(CartanData::build(Series::C, 3), {2, 1}, Tail::gl, {mono(2, 1, 2), mono(-1, 3)});
  auto X = assemble_x(c3);
  Rational r1 = c3.cd->rho1();
  std::size_t pos = 0;
  for (std::size_t b = 0; b < c3.composition.size(); ++b) {
    int m = c3.composition[b];
    std::vector<QScalar> dual(X.dual.begin() + pos, X.dual.begin() + pos + m);
    std::reverse(dual.begin(), dual.end());
    QScalar top = inv(c3.mu[b]) * QScalar::q_pow(QExp::from_rational(-4 * r1 + 2 * (m - 1)));
    CHECK(dual == quantum_string(top, m));
    pos += m;
  }
}

TEST_CASE("theta functions in type A") {
  auto a1 = CartanData::build(Series::A, 1);
  QScalar mu = mono(2, 1, 3);
  auto cs = make_class(a1, {2}, Tail::gl, {mu});
  for (int ell = 0; ell <= 4; ++ell) CHECK(theta_ell(cs, ell) == mu.pow(ell) * (qs(1) + qs(-1)));

  // ell = 0 does not see the eigenvalues
  for (auto m : {std::pair{qs(1, 3), qs(5)}, std::pair{mono(3, 0), mono(-1, 2, 3)}})
    CHECK(theta_ell(make_class(a1, {1, 1}, Tail::gl, {m.first, m.second}), 0) == qs(1) + qs(-1));

  // point classes: mu^ell [n]_q
  for (int rank = 1; rank <= 3; ++rank) {
    auto cd = CartanData::build(Series::A, rank);
    for (QScalar m : {qs(2), mono(-3, 1, 2)}) {
      auto pc = make_class(cd, {rank + 1}, Tail::gl, {m});
      for (int ell = 0; ell <= 4; ++ell) CHECK(theta_ell(pc, ell) == m.pow(ell) * qint(rank + 1));
    }
  }
  auto named = parse_class("point-A2-mu=q^2");
  CHECK(theta_ell(named, 1) == qs(2) * qint(3));
}

TEST_CASE("theta at a weight equals the central character") {
  for (Series s : {Series::A, Series::B, Series::C, Series::D}) {
    auto cd = CartanData::build(s, 3);
    Weight lam = parse_weight(*cd, "1/3,-1/5,2/7");
    auto X = x_from_weight(*cd, lam);
    for (int ell = 0; ell <= 3; ++ell) CHECK_MESSAGE(theta_of_x(*cd, X, ell) == central_char_trace(*cd, lam, ell), cd->name());
  }
}

TEST_CASE("theta minus") {
  auto d3 = CartanData::build(Series::D, 3);
  QScalar mu = mono(2, 1, 3);
  auto cs = make_class(d3, {3}, Tail::gl, {mu});
  QScalar expect = qs(12);
  for (int j = 0; j <= 2; ++j) expect *= mu * qs(-2 * j) - inv(mu) * qs(2 * j - 8);
  CHECK(theta_minus(cs) == expect);
  CHECK(theta_minus(make_class(d3, {1, 2}, Tail::same, {mu})).is_zero());
  CHECK_THROWS(theta_minus(make_class(CartanData::build(Series::C, 2), {2}, Tail::gl, {mu})));
  // classical limit: q^0 prod (g - g^-1)
  Rational g = 2, v = 1;
  for (int j = 0; j < 3; ++j) v *= g - 1 / g;
  CHECK(at_one(theta_minus(cs)) == v);
}

TEST_CASE("minimal polynomial roots") {
  QScalar mu = mono(2, 1, 3), nu = qs(5, 2);
  auto b2 = make_class(CartanData::build(Series::B, 2), {2}, Tail::gl, {mu});
  CHECK(values(minimal_poly_roots(b2)) == sorted({mu, qs(-4), inv(mu) * qs(-4)}));
  auto a3 = make_class(CartanData::build(Series::A, 3), {1, 2, 1}, Tail::gl, {mu, nu, qs(7)});
  CHECK(values(minimal_poly_roots(a3)) == sorted({mu, nu, qs(7)}));
  auto c2 = make_class(CartanData::build(Series::C, 2), {1, 1}, Tail::same, {mu});
  CHECK(c2.mu.back() == qs(-2));
  CHECK(values(minimal_poly_roots(c2)) == sorted({mu, inv(mu) * qs(-8), qs(-2)}));
  auto d3 = make_class(CartanData::build(Series::D, 3), {3}, Tail::gl, {mu});
  CHECK(values(minimal_poly_roots(d3)) == sorted({mu, inv(mu) * qs(-4)}));
  CHECK(minimal_poly_roots(b2).front().symbolic == "mu_1");
}

TEST_CASE("printed root tables") {
  int flagged = 0;
  for (const auto& fc : compare_printed_fixtures(4)) {
    CHECK(fc.compared > 0);
    if (fc.discrepancy) {
      ++flagged;
      CHECK_MESSAGE(fc.agree < fc.compared, fc.name);
    } else {
      CHECK_MESSAGE(fc.agree == fc.compared, fc.name, " ", fc.detail);
    }
  }
  CHECK(flagged == 1);
}

TEST_CASE("class validation") {
  auto a1 = CartanData::build(Series::A, 1);
  CHECK(has_violation(validate_class(make_class(a1, {1, 1}, Tail::gl, {QScalar(1), QScalar(1)})), "distinct"));
  auto b2 = CartanData::build(Series::B, 2);
  CHECK(has_violation(validate_class(make_class(b2, {1, 1}, Tail::gl, {qs(2), qs(-2)})), "mu_1 * mu_2 = 1"));
  auto d3 = CartanData::build(Series::D, 3);
  CHECK(!validate_class(make_class(d3, {3}, Tail::gl, {QScalar(-1)})).ok());
  CHECK(has_violation(validate_class(make_class(b2, {2}, Tail::gl, {mono(-1, 1)})), "exceptional"));
  CHECK(has_violation(validate_class(make_class(b2, {2}, Tail::gl, {QScalar(0)})), "nonzero"));
  CHECK(has_violation(validate_class(make_class(b2, {2}, Tail::gl, {qs(1) + qs(-1)})), "monomial"));
  CHECK(validate_class(make_class(b2, {1, 1}, Tail::same, {qs(1, 3)})).ok());
  // distinct mu whose strings overlap
  CHECK(has_violation(validate_class(make_class(CartanData::build(Series::A, 2), {2, 1}, Tail::gl, {qs(2), QScalar(1)})),
                      "collision"));
  CHECK_THROWS_AS(make_class(b2, {1, 1}, Tail::same, {qs(1), qs(3)}), std::invalid_argument);
}

TEST_CASE("class parsing") {
  auto cs = parse_class(R"J({"series":"B","rank":2,"composition":[2],"tail":"gl","mu":["q^(3)"]})J");
  CHECK(cs.cd->name() == "B2");
  CHECK(cs.mu == std::vector<QScalar>{qs(3)});
  CHECK(validate_class(cs).ok());
  CHECK(class_name(cs) == "B2 (2) gl mu=q^(3)");
  auto pc = parse_class("point-A2-mu=q^2");
  CHECK(values(minimal_poly_roots(pc)) == std::vector<QScalar>{qs(2)});
  CHECK_THROWS(parse_class(R"J({"series":"B","rank":2,"composition":[1],"mu":["q"]})J"));
  CHECK_THROWS(parse_class(R"J({"series":"B","rank":2})J"));
  CHECK_THROWS(parse_class("{not json"));
}

TEST_CASE("random classes: polynomiality and classical limit") {
  std::mt19937_64 rng(20261014);
  for (Series s : {Series::A, Series::B, Series::C, Series::D}) {
    for (int trial = 0; trial < 25; ++trial) {
      int rank = std::uniform_int_distribution<int>(s == Series::A ? 1 : 2, 4)(rng);
      auto cs = random_class(CartanData::build(s, rank), rng);
      auto g = classical_eigenvalues(cs);
      CHECK(g.size() == static_cast<std::size_t>(cs.cd->dim_defining()));
      for (int ell = 0; ell <= 3; ++ell) {
        QScalar th = theta_ell(cs, ell);
        Rational sum = 0;
        for (const auto& v : g) {
          Rational p = 1;
          for (int k = 0; k < ell; ++k) p *= v;
          sum += p;
        }
        CHECK_MESSAGE(at_one(th) == sum, class_name(cs), " ell=", ell);
      }
    }
  }
}

TEST_CASE("theta is symmetric in the blocks") {
  for (Series s : {Series::B, Series::C, Series::D}) {
    auto cd = CartanData::build(s, 3);
    auto cs = make_class(cd, {2, 1}, Tail::gl, {mono(2, 1, 3), mono(3, 1, 2)});
    REQUIRE(validate_class(cs).ok());
    auto sw = make_class(cd, {1, 2}, Tail::gl, {cs.mu[1], cs.mu[0]});
    for (int ell = 1; ell <= 3; ++ell) CHECK_MESSAGE(theta_ell(cs, ell) == theta_ell(sw, ell), cd->name());
  }
}

TEST_CASE("certificates") {
  auto a1 = parse_class(R"J({"series":"A","rank":1,"composition":[1,1],"mu":["q^(1/3)","q^(-5/3)"]})J");
  auto c1 = consistency_check(a1, 5);
  CHECK(c1.verdict == Verdict::pass);
  auto b2 = parse_class(R"J({"series":"B","rank":2,"composition":[2],"tail":"gl","mu":["q^(1/3)"]})J");
  auto c2 = consistency_check(b2, 4);
  CHECK(c2.verdict == Verdict::pass);
  CHECK(c2.witness == "1/6,1/6");
  bool minpoly = false, theta1 = false;
  for (const auto& p : c2.parts) {
    minpoly = minpoly || (p.name == "minpoly" && p.verdict == Verdict::pass && p.checked > 0);
    theta1 = theta1 || (p.name == "theta(1)" && p.verdict == Verdict::pass);
  }
  CHECK(minpoly);
  CHECK(theta1);
  // an invalid class is a failed certificate
  auto bad = make_class(CartanData::build(Series::B, 2), {1, 1}, Tail::gl, {qs(2), qs(-2)});
  CHECK(consistency_check(bad, 4).verdict == Verdict::fail);
  // mu that is not a pure q-power has no witness
  auto nw = make_class(CartanData::build(Series::A, 1), {2}, Tail::gl, {mono(2, 1)});
  CHECK(consistency_check(nw, 3).verdict == Verdict::inconclusive);
}
