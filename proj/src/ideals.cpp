#include "qcc/ideals.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace qcc {

namespace {

QScalar qe(const Rational& r) { return QScalar::q_pow(QExp::from_rational(r)); }

QScalar mono_inverse(const QScalar& m) {
  if (!m.is_monomial()) throw MathError("inverse of a non-monomial " + m.str());
  const auto& t = m.terms().front();
  Rational c = 1 / t.coeff;
  return QScalar::monomial(c, -t.exp);
}

Rational classical(const QScalar& s) {
  Rational v = 0;
  for (const auto& t : s.terms()) v += t.coeff;
  return v;
}

}  // namespace

// ---------------------------------------------------------------- class specs

ClassSpec make_class(const CartanPtr& cd, const std::vector<int>& composition, Tail tail,
                     const std::vector<QScalar>& mu) {
  ClassSpec cs{cd, composition, tail, mu};
  levi_from_composition(*cd, composition, tail);  // validates shape
  std::size_t k = composition.size();
  if (tail == Tail::same) {
    QScalar derived = qe(2 * (composition.back() - cd->coord_len()));
    if (mu.size() + 1 == k) cs.mu.push_back(derived);
    else if (mu.size() != k || mu.back() != derived)
      throw std::invalid_argument("same-type tail fixes mu_k = " + derived.str());
  } else if (mu.size() != k) {
    throw std::invalid_argument("expected " + std::to_string(k) + " mu values, got " + std::to_string(mu.size()));
  }
  return cs;
}

ClassSpec parse_class(const std::string& text) {
  std::string body = text;
  if (text.rfind("point-", 0) == 0) {
    // point-<S><rank>-mu=<scalar>
    auto dash = text.find('-', 6);
    auto eq = text.find("-mu=");
    if (dash == std::string::npos || eq != dash || text.size() < 8) throw ParseError("bad class name " + text, 0);
    Series s = parse_series(text.substr(6, 1));
    int rank = std::stoi(text.substr(7, dash - 7));
    auto cd = CartanData::build(s, rank);
    return make_class(cd, {cd->coord_len()}, Tail::gl, {parse_scalar(text.substr(eq + 4))});
  }
  if (!text.empty() && text.front() != '{') {
    std::ifstream in(text);
    if (!in) throw ParseError("cannot read class file " + text, 0);
    std::stringstream ss;
    ss << in.rdbuf();
    body = ss.str();
  }
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(body);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("class JSON: ") + e.what(), e.byte);
  }
  for (const char* key : {"series", "rank", "composition", "mu"})
    if (!j.contains(key)) throw ParseError(std::string("class JSON lacks \"") + key + "\"", 0);
  auto cd = CartanData::build(parse_series(j["series"].get<std::string>()), j["rank"].get<int>());
  Tail tail = Tail::gl;
  if (j.contains("tail")) {
    std::string t = j["tail"].get<std::string>();
    if (t == "same") tail = Tail::same;
    else if (t != "gl") throw ParseError("tail must be gl or same", 0);
  }
  std::vector<QScalar> mu;
  for (const auto& m : j["mu"]) mu.push_back(parse_scalar(m.get<std::string>()));
  return make_class(cd, j["composition"].get<std::vector<int>>(), tail, mu);
}

std::string class_name(const ClassSpec& cs) {
  std::string s = cs.cd->name() + " (";
  for (std::size_t i = 0; i < cs.composition.size(); ++i) s += (i ? "," : "") + std::to_string(cs.composition[i]);
  s += cs.tail == Tail::gl ? ") gl mu=" : ") same mu=";
  for (std::size_t i = 0; i < cs.mu.size(); ++i) s += (i ? "," : "") + cs.mu[i].str();
  return s;
}

std::vector<QScalar> quantum_string(const QScalar& mu, int m) {
  if (m < 1) throw std::invalid_argument("quantum string length must be positive");
  std::vector<QScalar> out;
  for (int j = 0; j < m; ++j) out.push_back(mu.shifted(QExp(-2 * j)));
  return out;
}

XVector assemble_x(const ClassSpec& cs) {
  const CartanData& cd = *cs.cd;
  XVector X;
  for (std::size_t i = 0; i < cs.composition.size(); ++i)
    for (const auto& v : quantum_string(cs.mu[i], cs.composition[i])) X.x.push_back(v);
  if (cd.series() == Series::A) return X;
  QScalar s = qe(-4 * cd.rho1());
  for (const auto& v : X.x) X.dual.push_back(mono_inverse(v) * s);
  if (cd.series() == Series::B) X.x0 = qe(-2 * cd.rank());
  return X;
}

XVector x_from_weight(const CartanData& cd, const Weight& lambda) {
  XVector X;
  Weight lr = lambda + cd.rho();
  Rational rn = cd.pairing(cd.rho(), cd.eps(1));
  for (int i = 1; i <= cd.coord_len(); ++i) X.x.push_back(qe(2 * cd.pairing(lr, cd.eps(i)) - 2 * rn));
  if (cd.series() == Series::A) return X;
  for (int i = 1; i <= cd.coord_len(); ++i) X.dual.push_back(qe(-2 * cd.pairing(lr, cd.eps(i)) - 2 * rn));
  if (cd.series() == Series::B) X.x0 = qe(-2 * rn - cd.pairing(cd.eps(1), cd.eps(1)));
  return X;
}

ClassSpec random_class(const CartanPtr& cd, std::mt19937_64& rng, int attempts) {
  static const Rational coeffs[] = {Rational(1), Rational(2), Rational(-1), Rational(1, 2), Rational(3), Rational(-2)};
  int n = cd->coord_len();
  auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  for (int a = 0; a < attempts; ++a) {
    std::vector<int> comp{1};
    for (int i = 1; i < n; ++i) {
      if (pick(0, 1)) comp.push_back(1);
      else ++comp.back();
    }
    Tail tail = cd->series() != Series::A && pick(0, 2) == 0 ? Tail::same : Tail::gl;
    std::size_t count = comp.size() - (tail == Tail::same ? 1 : 0);
    std::vector<QScalar> mu;
    for (std::size_t i = 0; i < count; ++i) {
      int d = pick(1, 3);
      mu.push_back(QScalar::monomial(coeffs[pick(0, 5)], QExp(pick(-6 * d, 6 * d), d)));
    }
    try {
      ClassSpec cs = make_class(cd, comp, tail, mu);
      if (validate_class(cs).ok()) return cs;
    } catch (const std::invalid_argument&) {
    }
  }
  throw std::runtime_error("no valid random class for " + cd->name());
}

// ---------------------------------------------------------------- theta functions

namespace {

// Sum of num_t / prod_z (y_t - z) over terms, over the product of the distinct pair factors.
struct PairFraction {
  struct Term {
    QScalar num;
    QScalar y;
    std::vector<QScalar> zs;
  };
  std::vector<Term> terms;

  QFrac total() const {
    using Key = std::pair<QScalar, QScalar>;
    auto key = [](const QScalar& a, const QScalar& b) { return a < b ? Key{a, b} : Key{b, a}; };
    // repeated values make a factor appear more than once in one denominator
    std::map<Key, std::pair<QScalar, int>> factors;  // key -> (first - second, max multiplicity)
    std::vector<std::map<Key, int>> own(terms.size());
    for (std::size_t i = 0; i < terms.size(); ++i)
      for (const auto& z : terms[i].zs) {
        if (terms[i].y == z) throw MathError("vanishing denominator " + terms[i].y.str() + " - " + z.str());
        Key k = key(terms[i].y, z);
        int m = ++own[i][k];
        auto it = factors.emplace(k, std::pair{k.first - k.second, 0}).first;
        it->second.second = std::max(it->second.second, m);
      }
    QScalar D(1), N;
    for (const auto& [k, f] : factors) D *= f.first.pow(static_cast<unsigned>(f.second));
    for (std::size_t i = 0; i < terms.size(); ++i) {
      const auto& t = terms[i];
      Rational sign = 1;
      for (const auto& z : t.zs)
        if (!(key(t.y, z).first == t.y)) sign = -sign;
      QScalar c = t.num.scaled(sign);
      for (const auto& [k, f] : factors) {
        auto it = own[i].find(k);
        int have = it == own[i].end() ? 0 : it->second;
        if (f.second > have) c *= f.first.pow(static_cast<unsigned>(f.second - have));
      }
      N += c;
    }
    if (auto e = N.exact_div(D)) return QFrac(*e);
    return QFrac(N, D);
  }
};

}  // namespace

QFrac theta_of_x(const CartanData& cd, const XVector& X, int ell) {
  const QScalar q = qe(1), qb = qe(-1), q2 = qe(2), qb2 = qe(-2);
  Series s = cd.series();
  int n = static_cast<int>(X.x.size());
  PairFraction pf;
  // y^ell * prod over z of (q y - qb z), denominators prod (y - z)
  auto add = [&](const QScalar& y, std::vector<QScalar> zs, QScalar extra_num, std::vector<QScalar> extra_den) {
    QScalar num = y.pow(static_cast<unsigned>(ell)) * extra_num;
    for (const auto& z : zs) num *= q * y - qb * z;
    for (auto& z : extra_den) zs.push_back(z);
    pf.terms.push_back({num, y, zs});
  };
  if (s == Series::A) {
    for (int i = 0; i < n; ++i) {
      std::vector<QScalar> zs;
      for (int j = 0; j < n; ++j)
        if (j != i) zs.push_back(X.x[j]);
      add(X.x[i], zs, QScalar(1), {});
    }
    return pf.total();
  }
  for (int i = 0; i < n; ++i) {
    std::vector<QScalar> zs;
    for (int j = 0; j < n; ++j)
      if (j != i) {
        zs.push_back(X.x[j]);
        zs.push_back(X.dual[j]);
      }
    for (int side = 0; side < 2; ++side) {
      const QScalar& y = side == 0 ? X.x[i] : X.dual[i];
      const QScalar& ybar = side == 0 ? X.dual[i] : X.x[i];
      if (s == Series::B) add(y, zs, q * y - *X.x0, {*X.x0 * q});
      else if (s == Series::C) add(y, zs, q2 * y - qb2 * ybar, {ybar});
      else add(y, zs, QScalar(1), {});
    }
  }
  QFrac sum = pf.total();
  if (s == Series::B) sum += QFrac(X.x0->pow(static_cast<unsigned>(ell)));
  return sum;
}

QScalar theta_ell(const ClassSpec& cs, int ell) { return theta_of_x(*cs.cd, assemble_x(cs), ell).to_scalar(); }

QScalar theta_minus(const ClassSpec& cs) {
  if (cs.cd->series() != Series::D) throw std::invalid_argument("theta-minus is defined for series D only");
  XVector X = assemble_x(cs);
  QScalar p = qe(2 * cs.cd->rank() * cs.cd->rho1());
  for (std::size_t i = 0; i < X.x.size(); ++i) p *= X.x[i] - X.dual[i];
  return p;
}

namespace {

std::vector<Rational> classical_multiset(const ClassSpec& cs) {
  std::vector<Rational> g;
  for (std::size_t i = 0; i < cs.composition.size(); ++i) {
    Rational v = cs.tail == Tail::same && i + 1 == cs.composition.size() ? Rational(1) : classical(cs.mu[i]);
    for (int j = 0; j < cs.composition[i]; ++j) g.push_back(v);
  }
  if (cs.cd->series() == Series::A) return g;
  std::size_t n = g.size();
  for (std::size_t i = 0; i < n; ++i) g.push_back(1 / g[i]);
  if (cs.cd->series() == Series::B) g.push_back(1);
  return g;
}

}  // namespace

Rational classical_trace(const ClassSpec& cs, int ell) {
  Rational s = 0;
  for (const auto& g : classical_multiset(cs)) {
    Rational p = 1;
    for (int k = 0; k < ell; ++k) p *= g;
    s += p;
  }
  return s;
}

// ---------------------------------------------------------------- roots

std::vector<RootEntry> minimal_poly_roots(const ClassSpec& cs) {
  auto levi = levi_from_composition(*cs.cd, cs.composition, cs.tail);
  std::vector<RootEntry> out;
  for (const auto& r : parabolic_roots_symbolic(*cs.cd, levi)) {
    QScalar shift = QScalar::q_pow(r.shift), v;
    switch (r.kind) {
      case LeviWeight::Kind::top: v = cs.mu[r.block] * shift; break;
      case LeviWeight::Kind::dual: v = mono_inverse(cs.mu[r.block]) * shift; break;
      default: v = shift; break;
    }
    out.push_back({r.str(), v});
  }
  return out;
}

Diagnostics validate_class(const ClassSpec& cs) {
  Diagnostics d;
  const CartanData& cd = *cs.cd;
  bool classical_series = cd.series() != Series::A;
  std::size_t k = cs.mu.size();
  auto designated = [&](std::size_t i) { return cs.tail == Tail::same && i + 1 == k; };
  auto mu_name = [](std::size_t i) { return "mu_" + std::to_string(i + 1); };
  for (std::size_t i = 0; i < k; ++i)
    if (cs.mu[i].is_zero() || !cs.mu[i].is_monomial()) d.violations.push_back(mu_name(i) + " is not a nonzero monomial");
  if (!d.ok()) return d;
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j) {
      if (cs.mu[i] == cs.mu[j]) d.violations.push_back(mu_name(i) + " = " + mu_name(j) + ": not pairwise distinct");
      if (classical_series && (cs.mu[i] * cs.mu[j]).is_one())
        d.violations.push_back(mu_name(i) + " * " + mu_name(j) + " = 1");
    }
  if (classical_series)
    for (std::size_t i = 0; i < k; ++i)
      if (!designated(i) && (cs.mu[i] * cs.mu[i]).is_one()) d.violations.push_back(mu_name(i) + "^2 = 1");
  if (cd.series() == Series::B || cd.series() == Series::D) {
    auto g = classical_multiset(cs);
    bool plus = std::count(g.begin(), g.end(), Rational(1)) > 0;
    bool minus = std::count(g.begin(), g.end(), Rational(-1)) > 0;
    if (minus && (plus || cd.series() == Series::B))
      d.violations.push_back("eigenvalues 1 and -1 together: exceptional orthogonal class");
  }
  if (!d.ok()) return d;
  // denominators of the theta functions
  XVector X = assemble_x(cs);
  int n = static_cast<int>(X.x.size());
  auto pos = [](int i, bool dual) { return "x_" + std::to_string(i + 1) + (dual ? "'" : ""); };
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      if (j > i && X.x[i] == X.x[j]) d.violations.push_back("collision " + pos(i, false) + " = " + pos(j, false));
      if (classical_series && X.x[i] == X.dual[j]) d.violations.push_back("collision " + pos(i, false) + " = " + pos(j, true));
      if (classical_series && j > i && X.dual[i] == X.dual[j])
        d.violations.push_back("collision " + pos(i, true) + " = " + pos(j, true));
    }
  for (int i = 0; i < n; ++i) {
    if (cd.series() == Series::C && X.x[i] == X.dual[i]) d.violations.push_back("collision " + pos(i, false) + " = " + pos(i, true));
    if (cd.series() == Series::B)
      for (bool dual : {false, true})
        if ((dual ? X.dual[i] : X.x[i]) == *X.x0 * qe(1)) d.violations.push_back("collision " + pos(i, dual) + " = q x_0");
  }
  auto roots = minimal_poly_roots(cs);
  for (std::size_t i = 0; i < roots.size(); ++i)
    for (std::size_t j = i + 1; j < roots.size(); ++j)
      if (roots[i].value == roots[j].value)
        d.violations.push_back("minimal polynomial roots " + roots[i].symbolic + " and " + roots[j].symbolic + " coincide");
  return d;
}

// ---------------------------------------------------------------- printed tables

const std::vector<PrintedCase>& printed_cases() {
  static const std::vector<PrintedCase> cases = {
      {"A", Series::A, Tail::gl, 0, 0, 0, false, false, false},
      {"B case 1", Series::B, Tail::gl, -4, 2, 0, true, false, false},
      {"B case 2", Series::B, Tail::same, -1, 2, 0, false, true, true},
      {"C case 1", Series::C, Tail::gl, -4, 2, -2, false, false, false},
      {"C case 2", Series::C, Tail::same, -4, 2, -2, false, true, false},
      {"D case 1", Series::D, Tail::gl, -4, 2, 2, false, false, false},
      {"D case 2", Series::D, Tail::same, -4, 2, 2, false, true, false},
  };
  return cases;
}

namespace {

void compositions(int n, std::vector<int>& cur, const std::function<void(const std::vector<int>&)>& fn) {
  if (n == 0) {
    fn(cur);
    return;
  }
  for (int p = 1; p <= n; ++p) {
    cur.push_back(p);
    compositions(n - p, cur, fn);
    cur.pop_back();
  }
}

}  // namespace

std::vector<FixtureComparison> compare_printed_fixtures(int max_rank) {
  using K = LeviWeight::Kind;
  std::vector<FixtureComparison> out;
  for (const auto& pc : printed_cases()) {
    FixtureComparison fc;
    fc.name = pc.name;
    fc.discrepancy = pc.discrepancy;
    std::string first_mismatch;
    int lo = pc.series == Series::A ? 1 : (pc.series == Series::D ? 3 : 2);
    for (int rank = lo; rank <= max_rank; ++rank) {
      auto cd = CartanData::build(pc.series, rank);
      int n = cd->coord_len();
      std::vector<int> cur;
      compositions(n, cur, [&](const std::vector<int>& comp) {
        if (pc.tail == Tail::same && pc.series == Series::D && comp.back() < 2) return;
        auto levi = levi_from_composition(*cd, comp, pc.tail);
        auto derived = parabolic_roots_symbolic(*cd, levi);
        std::vector<std::tuple<int, int, QExp>> a, b;
        for (const auto& r : derived) a.emplace_back(static_cast<int>(r.kind), r.block, r.shift);
        int k = static_cast<int>(comp.size());
        int gl_blocks = pc.middle_root ? k - 1 : k;
        for (int i = 0; i < gl_blocks; ++i) {
          b.emplace_back(static_cast<int>(K::top), i, QExp(0));
          if (pc.series != Series::A) b.emplace_back(static_cast<int>(K::dual), i, QExp(pc.a * n + pc.b * comp[i] + pc.c));
        }
        if (pc.zero_root) b.emplace_back(static_cast<int>(K::zero), -1, QExp(-2 * n));
        if (pc.middle_root) b.emplace_back(static_cast<int>(K::middle), k - 1, QExp(2 * (comp.back() - n)));
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        ++fc.compared;
        if (a == b) {
          ++fc.agree;
        } else if (first_mismatch.empty()) {
          std::string c;
          for (std::size_t i = 0; i < comp.size(); ++i) c += (i ? "," : "") + std::to_string(comp[i]);
          first_mismatch = cd->name() + " (" + c + ")";
        }
      });
    }
    fc.detail = std::to_string(fc.agree) + "/" + std::to_string(fc.compared) + " compositions agree";
    if (!first_mismatch.empty()) fc.detail += "; first mismatch " + first_mismatch;
    if (pc.discrepancy) fc.detail += "; printed dual exponent -n+2n_i, derived -4n+2n_i";
    out.push_back(fc);
  }
  return out;
}

// ---------------------------------------------------------------- certificate

std::optional<std::pair<Weight, QScalar>> witness_weight(const ClassSpec& cs) {
  const CartanData& cd = *cs.cd;
  auto levi = levi_from_composition(cd, cs.composition, cs.tail);
  std::vector<Rational> coords(cd.coord_len(), Rational(0));
  Rational rn = cd.pairing(cd.rho(), cd.eps(1));
  std::size_t gl_blocks = cs.tail == Tail::same ? cs.mu.size() - 1 : cs.mu.size();
  for (std::size_t i = 0; i < gl_blocks; ++i) {
    const QScalar& m = cs.mu[i];
    if (!m.is_monomial() || m.top_coeff() != 1) return std::nullopt;
    int start = levi.block_starts[i];
    Rational v = m.top_exp().to_rational() / 2 + rn - cd.pairing(cd.rho(), cd.eps(start));
    for (int j = 0; j < cs.composition[i]; ++j) coords[start - 1 + j] = v;
  }
  Weight lambda = cd.weight(coords);
  auto tops = block_top_values(cd, levi, lambda);
  QScalar scale = cs.mu[0] * mono_inverse(tops[0]);
  for (std::size_t i = 0; i < cs.mu.size(); ++i)
    if (tops[i] * scale != cs.mu[i]) return std::nullopt;
  return std::make_pair(lambda, scale);
}

Certificate consistency_check(const ClassSpec& cs, int H, int max_ell) {
  Certificate cert;
  cert.height = H;
  auto diag = validate_class(cs);
  if (!diag.ok()) {
    std::string all;
    for (const auto& v : diag.violations) all += (all.empty() ? "" : "; ") + v;
    cert.parts.push_back({"validation", Verdict::fail, 0, all});
    cert.verdict = Verdict::fail;
    return cert;
  }
  auto wit = witness_weight(cs);
  if (!wit) {
    cert.parts.push_back({"witness", Verdict::inconclusive, 0, "mu values are not pure q-powers"});
    return cert;
  }
  const CartanPtr& cd = cs.cd;
  auto [lambda, scale] = *wit;
  cert.witness = lambda.str();
  cert.scale = scale;
  auto levi = levi_from_composition(*cd, cs.composition, cs.tail);
  Genericity gen = genericity_check(*cd, levi, lambda);
  cert.genericity = genericity_str(gen);
  auto V = build_defining_module(cd);
  auto M = build_genverma(cd, levi, lambda, H);
  QAction Q(V, M);
  QScalar inv_scale = mono_inverse(scale);
  int spread = V->max_depth();

  std::vector<QScalar> roots;
  for (const auto& r : minimal_poly_roots(cs)) roots.push_back(r.value * inv_scale);
  IdentityReport ann = check_annihilation(Q, roots, H);
  CertificatePart pa{"minpoly", ann.verdict, ann.checked, ann.detail};
  if (ann.verdict == Verdict::fail && gen != Genericity::generic) {
    pa.verdict = Verdict::inconclusive;
    pa.detail += "; witness weight is not generic";
  }
  cert.parts.push_back(pa);

  int N = cd->dim_defining();
  for (int ell = 1; ell <= std::min(N, max_ell); ++ell) {
    QScalar expect = theta_ell(cs, ell);
    CertificatePart p{"theta(" + std::to_string(ell) + ")", Verdict::inconclusive, 0, ""};
    if (H - spread >= 0) {
      ScalarAction sa = qtrace_scalar(Q, ell, H - spread);
      p.checked = sa.checked;
      p.verdict = sa.verdict;
      p.detail = sa.detail;
      if (sa.verdict == Verdict::pass && sa.value * QFrac(scale.pow(static_cast<unsigned>(ell))) != QFrac(expect)) {
        p.verdict = Verdict::fail;
        p.detail = "operator scalar differs from " + expect.str();
      }
    } else {
      p.detail = "height below the spread of V";
    }
    cert.parts.push_back(p);
  }

  if (cd->series() == Series::D) {
    QScalar expect = theta_minus(cs);
    auto W = build_wedge_pm(cd);
    QAction Qp(W.plus, M), Qm(W.minus, M);
    CertificatePart p{"tau-minus", Verdict::pass, 1, "projected top diagonal"};
    QFrac proj = projected_q1_trace(Qp) - projected_q1_trace(Qm);
    if (proj != QFrac(expect)) {
      p.verdict = Verdict::fail;
      p.detail = "projected trace " + proj.str() + " differs from " + expect.str();
    }
    int wspread = W.plus->max_depth();
    if (p.verdict == Verdict::pass && H - wspread >= 0) {
      ScalarAction a = qtrace_scalar(Qp, 1, H - wspread), b = qtrace_scalar(Qm, 1, H - wspread);
      if (a.verdict == Verdict::pass && b.verdict == Verdict::pass) {
        p.checked += std::min(a.checked, b.checked);
        p.detail += ", full trace on " + std::to_string(std::min(a.checked, b.checked)) + " columns";
        if (a.value - b.value != QFrac(expect)) {
          p.verdict = Verdict::fail;
          p.detail = "full trace differs from " + expect.str();
        }
      } else if (a.verdict == Verdict::fail || b.verdict == Verdict::fail) {
        p.verdict = Verdict::fail;
        p.detail = "q-trace over W is not scalar";
      }
    }
    cert.parts.push_back(p);
  }

  bool fail = false, all_pass = true;
  for (const auto& p : cert.parts) {
    fail = fail || p.verdict == Verdict::fail;
    all_pass = all_pass && p.verdict == Verdict::pass;
  }
  cert.verdict = fail ? Verdict::fail : (all_pass ? Verdict::pass : Verdict::inconclusive);
  return cert;
}

}  // namespace qcc
