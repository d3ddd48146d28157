#include "qcc/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <json.hpp>
#include <optional>
#include <sstream>

#include "qcc/ideals.hpp"

namespace qcc {

namespace {

using nlohmann::json;

struct Options {
  std::string series, lambda, composition, tail = "gl", mu, format = "text", q, cls, suite;
  int rank = 0;
  int height = -1;
  int ell = -1;
  unsigned seed = 1;
};

struct Input {
  const Options& o;
  std::optional<Rational> q0;

  CartanPtr cartan() const {
    if (o.series.empty() || o.rank <= 0) throw std::invalid_argument("--series and --rank are required");
    return CartanData::build(parse_series(o.series), o.rank);
  }
  Weight weight(const CartanData& cd) const { return o.lambda.empty() ? cd.zero() : parse_weight(cd, o.lambda); }
  Tail tail() const {
    if (o.tail == "gl") return Tail::gl;
    if (o.tail == "same") return Tail::same;
    throw std::invalid_argument("--tail must be gl or same");
  }
  std::optional<LeviDatum> levi(const CartanData& cd) const {
    if (o.composition.empty()) return std::nullopt;
    return levi_from_composition(cd, parse_int_list(o.composition), tail());
  }
  ClassSpec spec() const {
    if (!o.cls.empty()) return parse_class(o.cls);
    auto cd = cartan();
    if (o.composition.empty()) throw std::invalid_argument("a class needs --class or --composition with --mu");
    std::vector<QScalar> mu;
    std::stringstream ss(o.mu);
    std::string item;
    while (std::getline(ss, item, ',')) mu.push_back(parse_scalar(item));
    return make_class(cd, parse_int_list(o.composition), tail(), mu);
  }
  ModulePtr verma(const CartanPtr& cd, int H) const {
    Weight lam = weight(*cd);
    if (auto l = levi(*cd)) return build_genverma(cd, *l, lam, H);
    return build_verma(cd, lam, H);
  }

  // exact text, plus the value at q0 in numeric mode
  json value(const QScalar& s) const {
    if (!q0) return s.str();
    return json{{"exact", s.str()}, {"numeric", scalar_eval(s, *q0).str()}};
  }
  json value(const QFrac& s) const {
    if (auto sc = s.as_scalar()) return value(*sc);
    if (!q0) return s.str();
    return json{{"exact", s.str()}, {"numeric", scalar_eval(s, *q0).str()}};
  }
};

std::vector<QScalar> sorted_copy(std::vector<QScalar> v) {
  std::sort(v.begin(), v.end());
  return v;
}

int verdict_code(Verdict v) { return v == Verdict::pass ? 0 : (v == Verdict::fail ? 1 : 2); }

json module_json(const WModule& M) {
  json ranks = json::object();
  for (const auto& w : M.weight_list()) ranks[w.str()] = M.indices_of(w).size();
  json j{{"kind", kind_str(M.kind)}, {"dim", M.dim()}, {"top", M.top.str()}, {"weight_ranks", ranks}};
  if (M.highest_weight) j["lambda"] = M.highest_weight->str();
  if (!M.finite()) j["H"] = M.H;
  return j;
}

json report_json(const IdentityReport& r) {
  json j{{"verdict", verdict_str(r.verdict)}, {"checked", r.checked}, {"blocks", r.blocks}};
  if (!r.detail.empty()) j["detail"] = r.detail;
  if (r.frontier >= 0) j["frontier"] = r.frontier;
  return j;
}

Verdict combine(std::initializer_list<Verdict> vs) {
  bool fail = false, all = true;
  for (Verdict v : vs) {
    fail = fail || v == Verdict::fail;
    all = all && v == Verdict::pass;
  }
  return fail ? Verdict::fail : (all ? Verdict::pass : Verdict::inconclusive);
}

json certificate_json(const Certificate& c) {
  json parts = json::array();
  for (const auto& p : c.parts)
    parts.push_back({{"name", p.name}, {"verdict", verdict_str(p.verdict)}, {"checked", p.checked}, {"detail", p.detail}});
  return {{"verdict", verdict_str(c.verdict)}, {"witness", c.witness}, {"genericity", c.genericity},
          {"scale", c.scale.str()},          {"height", c.height},   {"parts", parts}};
}

int cmd_qdim(const Input& in, json& rep) {
  auto cd = in.cartan();
  Weight lam = in.weight(*cd);
  rep["lambda"] = lam.str();
  rep["qdim"] = in.value(qdim(*cd, lam));
  return 0;
}

int cmd_ideal(const Input& in, json& rep, bool certify) {
  ClassSpec cs = in.spec();
  rep["class"] = {{"series", std::string(1, series_char(cs.cd->series()))},
                  {"rank", cs.cd->rank()},
                  {"composition", cs.composition},
                  {"tail", cs.tail == Tail::gl ? "gl" : "same"}};
  json mu = json::array();
  for (const auto& m : cs.mu) mu.push_back(m.str());
  rep["class"]["mu"] = mu;
  auto diag = validate_class(cs);
  rep["diagnostics"] = diag.violations;
  if (!diag.ok()) return 1;
  if (!certify) {
    json roots = json::array();
    for (const auto& r : minimal_poly_roots(cs)) roots.push_back({{"symbolic", r.symbolic}, {"value", in.value(r.value)}});
    rep["roots"] = roots;
    json theta = json::object();
    int lo = in.o.ell >= 0 ? in.o.ell : 1, hi = in.o.ell >= 0 ? in.o.ell : cs.cd->dim_defining();
    for (int l = lo; l <= hi; ++l) theta[std::to_string(l)] = in.value(theta_ell(cs, l));
    rep["theta"] = theta;
    if (cs.cd->series() == Series::D) rep["theta_minus"] = in.value(theta_minus(cs));
    if (in.o.height < 0) return 0;
  }
  Certificate c = consistency_check(cs, in.o.height >= 0 ? in.o.height : 4);
  rep["certificate"] = certificate_json(c);
  return verdict_code(c.verdict);
}

int cmd_spectrum(const Input& in, json& rep) {
  auto cd = in.cartan();
  Weight lam = in.weight(*cd);
  rep["lambda"] = lam.str();
  auto ws = cd->defining_weights();
  auto xs = spec_eigenvalues(*cd, lam, ws, ws.front());
  json eig = json::array();
  for (std::size_t i = 0; i < ws.size(); ++i) eig.push_back({{"weight", ws[i].str()}, {"value", in.value(xs[i])}});
  rep["eigenvalues"] = eig;
  json cp = json::array();
  for (const auto& c : char_min_poly(xs)) cp.push_back(in.value(c));
  rep["charpoly"] = cp;
  auto levi = in.levi(*cd);
  std::vector<QScalar> roots;
  if (levi) {
    rep["genericity"] = genericity_str(genericity_check(*cd, *levi, lam));
    roots = parabolic_roots(*cd, *levi, lam);
    auto sym = parabolic_roots_symbolic(*cd, *levi);
    json mr = json::array();
    for (std::size_t i = 0; i < roots.size(); ++i) mr.push_back({{"value", in.value(roots[i])}});
    json sy = json::array();
    for (const auto& s : sym) sy.push_back(s.str());
    rep["minpoly_roots"] = mr;
    rep["minpoly_symbolic"] = sy;
  }
  if (in.o.height < 0) return 0;
  auto V = build_defining_module(cd);
  auto M = in.verma(cd, in.o.height);
  rep["module"] = module_json(*M);
  QAction Q(V, M);
  if (levi) {
    auto ann = check_annihilation(Q, roots, in.o.height);
    rep["annihilation"] = report_json(ann);
    auto found = spectrum_root_set(Q);
    Verdict sv = !found ? Verdict::inconclusive : (*found == sorted_copy(roots) ? Verdict::pass : Verdict::fail);
    rep["root_set"] = {{"verdict", verdict_str(sv)}};
    Verdict v = combine({ann.verdict, sv});
    rep["verdict"] = verdict_str(v);
    return verdict_code(v);
  }
  auto ann = check_annihilation(Q, xs, in.o.height);
  rep["annihilation"] = report_json(ann);
  auto ds = diagonalized_spectrum(Q);
  Verdict dv = !ds ? Verdict::inconclusive : (*ds == predicted_block_spectrum(cd, lam) ? Verdict::pass : Verdict::fail);
  rep["diagonalized"] = {{"verdict", verdict_str(dv)}};
  Verdict v = combine({ann.verdict, dv});
  rep["verdict"] = verdict_str(v);
  return verdict_code(v);
}

int cmd_char(const Input& in, json& rep) {
  auto cd = in.cartan();
  Weight lam = in.weight(*cd);
  int ell = in.o.ell >= 0 ? in.o.ell : 1;
  rep["lambda"] = lam.str();
  rep["ell"] = ell;
  QFrac cc = central_char_trace(*cd, lam, ell);
  QFrac th = theta_trace(cd, lam, ell);
  rep["central_char"] = in.value(cc);
  rep["theta_trace"] = in.value(th);
  rep["trtr"] = in.value(trtr_closed_form(*cd, lam));
  Verdict v = cc == th ? Verdict::pass : Verdict::fail;
  if (in.o.height >= 0) {
    auto V = build_defining_module(cd);
    int depth = in.o.height - V->max_depth();
    if (depth < 0) {
      rep["operator"] = {{"verdict", "inconclusive"}, {"detail", "height below the spread of V"}};
      v = combine({v, Verdict::inconclusive});
    } else {
      auto M = build_verma(cd, lam, in.o.height);
      rep["module"] = module_json(*M);
      QAction Q(V, M);
      auto sa = qtrace_scalar(Q, ell, depth);
      Verdict ov = sa.verdict == Verdict::pass && !(sa.value == cc) ? Verdict::fail : sa.verdict;
      rep["operator"] = {{"verdict", verdict_str(ov)}, {"checked", sa.checked}, {"detail", sa.detail}};
      if (sa.verdict == Verdict::pass) rep["operator"]["value"] = in.value(sa.value);
      v = combine({v, ov});
    }
  }
  rep["verdict"] = verdict_str(v);
  return verdict_code(v);
}

int cmd_verify(const Input& in, json& rep) {
  const std::string& s = in.o.suite;
  auto cd = in.cartan();
  int H = in.o.height >= 0 ? in.o.height : 4;
  rep["suite"] = s;
  if (s != "ybe" && s != "hecke" && s != "uniqueness") rep["height"] = H;
  IdentityReport r;
  if (s == "ybe") {
    r = check_ybe(cd);
  } else if (s == "hecke") {
    r = check_hecke(cd);
  } else if (s == "uniqueness") {
    r = check_uniqueness(cd, in.o.seed);
  } else if (s == "relations") {
    auto M = in.verma(cd, H);
    rep["module"] = module_json(*M);
    auto rel = check_relations(*M);
    r.verdict = rel.ok() ? Verdict::pass : Verdict::fail;
    r.checked = rel.checks;
    if (!rel.ok()) r.detail = rel.failures.front();
  } else if (s == "ure" || s == "fusion" || s == "hexagon" || s == "frt") {
    auto M = in.verma(cd, H);
    rep["module"] = module_json(*M);
    if (s == "ure") r = check_ure(cd, M);
    else if (s == "fusion") r = check_fusion(cd, M);
    else if (s == "hexagon") r = check_hexagon(cd, M);
    else r = check_frt_quotient(cd, M);
  } else if (s == "spectral") {
    Options o = in.o;
    o.height = H;
    return cmd_spectrum(Input{o, in.q0}, rep);
  } else if (s == "char-paths") {
    int max_ell = in.o.ell >= 0 ? in.o.ell : 3;
    Weight lam = in.weight(*cd);
    auto V = build_defining_module(cd);
    auto M = build_verma(cd, lam, H);
    rep["module"] = module_json(*M);
    QAction Q(V, M);
    Verdict v = Verdict::pass;
    json per = json::array();
    for (int l = 0; l <= max_ell; ++l) {
      QFrac cc = central_char_trace(*cd, lam, l);
      Verdict pv = theta_trace(cd, lam, l) == cc ? Verdict::pass : Verdict::fail;
      if (H < V->max_depth()) {
        pv = combine({pv, Verdict::inconclusive});
      } else {
        auto sa = qtrace_scalar(Q, l, H - V->max_depth());
        pv = combine({pv, sa.verdict == Verdict::pass && !(sa.value == cc) ? Verdict::fail : sa.verdict});
        r.checked += sa.checked;
      }
      per.push_back({{"ell", l}, {"value", in.value(cc)}, {"verdict", verdict_str(pv)}});
      v = combine({v, pv});
    }
    rep["paths"] = per;
    r.verdict = v;
  } else if (s == "tau-minus") {
    if (cd->series() != Series::D) throw std::invalid_argument("tau-minus needs series D");
    Weight lam = in.weight(*cd);
    auto W = build_wedge_pm(cd);
    auto M = build_verma(cd, lam, H);
    rep["module"] = module_json(*M);
    QAction Qp(W.plus, M), Qm(W.minus, M);
    QScalar expect = tau_minus_char(*cd, lam);
    rep["expected"] = in.value(expect);
    r.checked = 1;
    r.verdict = projected_q1_trace(Qp) - projected_q1_trace(Qm) == QFrac(expect) ? Verdict::pass : Verdict::fail;
    r.detail = "projected top diagonal";
    int spread = W.plus->max_depth();
    if (r.verdict == Verdict::pass) {
      if (H < spread) {
        r.detail += "; full trace needs height " + std::to_string(spread);
      } else {
        auto a = qtrace_scalar(Qp, 1, H - spread), b = qtrace_scalar(Qm, 1, H - spread);
        Verdict fv = combine({a.verdict, b.verdict});
        if (fv == Verdict::pass && !(a.value - b.value == QFrac(expect))) fv = Verdict::fail;
        r.verdict = fv;
        r.checked += std::min(a.checked, b.checked);
        r.detail += "; full trace " + verdict_str(fv);
      }
    }
  } else {
    throw std::invalid_argument("unknown suite " + s);
  }
  json jr = report_json(r);
  for (auto it = jr.begin(); it != jr.end(); ++it) rep[it.key()] = it.value();
  if (r.verdict == Verdict::inconclusive) rep["limiting_height"] = H;
  return verdict_code(r.verdict);
}

void text_lines(const json& j, const std::string& prefix, std::ostream& os) {
  if (j.is_object()) {
    if (j.contains("exact") && j.size() == 2 && j.contains("numeric")) {
      os << prefix << ": " << j["exact"].get<std::string>() << " ~ " << j["numeric"].get<std::string>() << "\n";
      return;
    }
    for (auto it = j.begin(); it != j.end(); ++it)
      text_lines(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), os);
  } else if (j.is_array()) {
    if (j.empty()) os << prefix << ": []\n";
    for (std::size_t i = 0; i < j.size(); ++i) text_lines(j[i], prefix + "[" + std::to_string(i) + "]", os);
  } else {
    os << prefix << ": " << (j.is_string() ? j.get<std::string>() : j.dump()) << "\n";
  }
}

}  // namespace

CliResult run_cli(const std::vector<std::string>& args) {
  CliResult res;
  Options o;
  CLI::App app{"Quantized conjugacy classes: exact computations and checks", "qclass"};
  app.require_subcommand(1);
  app.failure_message(CLI::FailureMessage::help);
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--series", o.series, "A, B, C or D")->check(CLI::IsMember({"A", "B", "C", "D"}));
    sub->add_option("--rank", o.rank, "Lie rank");
    sub->add_option("--lambda", o.lambda, "weight, comma separated epsilon coordinates");
    sub->add_option("--composition", o.composition, "block sizes, comma separated");
    sub->add_option("--tail", o.tail, "gl or same")->check(CLI::IsMember({"gl", "same"}));
    sub->add_option("--mu", o.mu, "block eigenvalues, comma separated scalars");
    sub->add_option("--height", o.height, "truncation height");
    sub->add_option("--ell", o.ell, "power of Q");
    sub->add_option("--format", o.format, "json or text")->check(CLI::IsMember({"json", "text"}));
    sub->add_option("--q", o.q, "evaluate at this q (advisory)");
    sub->add_option("--class", o.cls, "class name, JSON text or JSON file");
  };
  const char* verbs[][2] = {{"ideal", "generators of the quantized class ideal"},
                            {"spectrum", "spectrum of Q on V (x) M"},
                            {"char", "central character of the q-trace of Q^ell"},
                            {"qdim", "q-dimension of a simple module"},
                            {"verify", "run an identity suite"},
                            {"certify", "operator-level certificate for a class"}};
  std::map<std::string, CLI::App*> subs;
  for (auto& v : verbs) {
    auto* sub = app.add_subcommand(v[0], v[1]);
    add_common(sub);
    subs[v[0]] = sub;
  }
  subs["verify"]
      ->add_option("suite", o.suite,
                   "ybe, hecke, uniqueness, relations, ure, fusion, hexagon, frt, spectral, char-paths, tau-minus")
      ->required();
  subs["verify"]->add_option("--seed", o.seed, "elimination order seed for uniqueness");

  std::vector<std::string> store{"qclass"};
  store.insert(store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : store) argv.push_back(s.data());
  std::ostringstream out, err;
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    res.out = out.str();
    res.err = err.str();
    res.code = code == 0 ? 0 : 1;
    return res;
  }

  std::string verb;
  for (auto& [name, sub] : subs)
    if (sub->parsed()) verb = name;
  Input in{o, std::nullopt};
  json rep{{"schema", 1}, {"verb", verb}};
  if (!o.series.empty()) rep["series"] = o.series;
  if (o.rank > 0) rep["rank"] = o.rank;
  try {
    if (!o.q.empty()) {
      in.q0 = parse_rational(o.q);
      rep["numeric"] = {{"q", in.q0->get_str()}, {"note", "numeric - not a certificate"}};
    }
    if (verb == "qdim") res.code = cmd_qdim(in, rep);
    else if (verb == "ideal") res.code = cmd_ideal(in, rep, false);
    else if (verb == "certify") res.code = cmd_ideal(in, rep, true);
    else if (verb == "spectrum") res.code = cmd_spectrum(in, rep);
    else if (verb == "char") res.code = cmd_char(in, rep);
    else res.code = cmd_verify(in, rep);
  } catch (const std::exception& e) {
    rep["error"] = e.what();
    res.code = 1;
  }
  if (o.format == "json") {
    out << rep.dump(2) << "\n";
  } else if (verb == "qdim" && rep.contains("qdim") && rep["qdim"].is_string()) {
    out << rep["qdim"].get<std::string>() << "\n";
  } else {
    rep.erase("schema");
    for (const char* key : {"verdict", "error"})
      if (rep.contains(key)) {
        text_lines(json{{key, rep[key]}}, "", out);
        rep.erase(key);
      }
    text_lines(rep, "", out);
  }
  res.out = out.str();
  res.err = err.str();
  return res;
}

}  // namespace qcc
