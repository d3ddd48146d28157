#pragma once

#include <optional>
#include <random>
#include <string>
#include <vector>

#include "qcc/chartheory.hpp"

namespace qcc {

struct ClassSpec {
  CartanPtr cd;
  std::vector<int> composition;
  Tail tail = Tail::gl;
  std::vector<QScalar> mu;  // one per block; for a same-type tail the last is q^{2(n_k - n)}
};

// mu lists k values, or k-1 for a same-type tail (the last is then derived).
ClassSpec make_class(const CartanPtr& cd, const std::vector<int>& composition, Tail tail,
                     const std::vector<QScalar>& mu);
// JSON text, a path to a JSON file, or a name "point-<series><rank>-mu=<scalar>".
ClassSpec parse_class(const std::string& text);
std::string class_name(const ClassSpec& cs);
// A random composition, tail and mu of the form c q^(p/d), redrawn until validation passes.
ClassSpec random_class(const CartanPtr& cd, std::mt19937_64& rng, int attempts = 1000);

std::vector<QScalar> quantum_string(const QScalar& mu, int m);

struct XVector {
  std::vector<QScalar> x;  // x_1 .. x_n
  std::optional<QScalar> x0;  // series B
  std::vector<QScalar> dual;  // dual[i] = x_{i'} (B/C/D)
};
XVector assemble_x(const ClassSpec& cs);
// The same vector realized by a weight: x_i = q^{2(lambda+rho,eps_i) - 2(rho,nu)}.
XVector x_from_weight(const CartanData& cd, const Weight& lambda);

// Printed rational expressions evaluated at x; throws MathError on a vanishing denominator.
QFrac theta_of_x(const CartanData& cd, const XVector& x, int ell);
QScalar theta_ell(const ClassSpec& cs, int ell);
QScalar theta_minus(const ClassSpec& cs);
// Sum of g^ell over the classical eigenvalue multiset of the class.
Rational classical_trace(const ClassSpec& cs, int ell);

struct RootEntry {
  std::string symbolic;
  QScalar value;
};
std::vector<RootEntry> minimal_poly_roots(const ClassSpec& cs);

struct Diagnostics {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};
Diagnostics validate_class(const ClassSpec& cs);

// Root tables as printed, one per case.  Exponents are a*n + b*n_i + c.
struct PrintedCase {
  std::string name;
  Series series;
  Tail tail;
  int a, b, c;  // dual-top exponent (unused for A)
  bool zero_root;  // factor (Q - q^{-2n})
  bool middle_root;  // factor (Q - q^{2(n_k - n)})
  bool discrepancy;  // printed value disagrees with the derived rule
};
const std::vector<PrintedCase>& printed_cases();
struct FixtureComparison {
  std::string name;
  long compared = 0;
  long agree = 0;
  bool discrepancy = false;
  std::string detail;
};
// Compares the derived roots with every printed table on all compositions up to max_rank.
std::vector<FixtureComparison> compare_printed_fixtures(int max_rank);

struct CertificatePart {
  std::string name;
  Verdict verdict = Verdict::inconclusive;
  long checked = 0;
  std::string detail;
};
struct Certificate {
  Verdict verdict = Verdict::inconclusive;
  std::string witness;  // lambda in epsilon coordinates
  std::string genericity;
  QScalar scale{1};  // A series: Q_gl = scale * Q
  int height = 0;
  std::vector<CertificatePart> parts;
};
// Witness weight realizing the class (up to the scale for A), if the mu are pure q-powers.
std::optional<std::pair<Weight, QScalar>> witness_weight(const ClassSpec& cs);
Certificate consistency_check(const ClassSpec& cs, int H, int max_ell = 3);

}  // namespace qcc
