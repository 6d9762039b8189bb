#ifndef ELLSUM_REGISTRY_HPP
#define ELLSUM_REGISTRY_HPP

// The identity catalog: one record per verifiable identity, with a left
// side evaluated by quadrature or lattice transforms, a closed-form right
// side, the s-grid it is verified on, and its citation.  Records either
// come from the bundled JSON file or are generated by the symbolic
// pipelines (even-weight families, the f_{4p} families, the sqrt2-lattice
// cases, and the differentiated E-families).

#include <fstream>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ellsum/closed_form.hpp"
#include "ellsum/eintegrals.hpp"
#include "ellsum/eisenstein.hpp"
#include "ellsum/kintegral.hpp"
#include "ellsum/lattice.hpp"
#include "ellsum/modular.hpp"

namespace ellsum {

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};
class DuplicateId : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class ToleranceClass { Standard, Singular };

inline double tolerance_of(ToleranceClass t) {
  return t == ToleranceClass::Standard ? 1e-8 : 1e-7;
}

// compact lhs scale: rat * pi^{pi(s)} * 2^{two(s)} [/ Gamma(s)]
struct Prefactor {
  Rat rat = Rat(1);
  AffineS pi, two;
  bool inv_gamma_s = false;
  double at(double s) const {
    double v = to_double(rat) * std::pow(kPi, pi.at(s)) *
               std::pow(2.0, two.at(s));
    if (inv_gamma_s) v /= gamma_fn(s);
    return v;
  }
};

struct KIntegralLhs {
  Prefactor prefactor;
  KIntegralSpec spec;
};
struct LatticeLhs {
  Rat m, n, p;
  Prefactor scale;
};
struct ThetaMellinLhs {
  std::vector<ThetaPow> factors;
  bool minus_one = false;
  Prefactor scale;
};

struct IdentityRecord {
  std::string id;
  std::string citation;
  ToleranceClass tolerance = ToleranceClass::Standard;
  std::vector<std::string> tags;
  std::vector<double> s_values;
  std::set<double> regularized_at;
  // exactly one of:
  std::optional<KIntegralLhs> k_lhs;
  std::optional<LatticeLhs> lattice_lhs;
  std::optional<ThetaMellinLhs> theta_lhs;
  ExprPtr rhs;
  // for regularized points: the rhs split as finite-part * reglim(factors)
  ExprPtr rhs_regularized;  // may be null when regularized_at is empty
};

namespace detail {

inline LinS json_lin(const Json& j, const char* what) {
  AffineS a = json_affine(j, what);
  return LinS{a.c0, a.c1};
}

inline Prefactor parse_prefactor(const Json& j) {
  Prefactor p;
  if (j.contains("rat")) p.rat = json_rat(j.at("rat"), "prefactor rat");
  if (j.contains("pi")) p.pi = json_affine(j.at("pi"), "prefactor pi");
  if (j.contains("two")) p.two = json_affine(j.at("two"), "prefactor two");
  if (j.contains("inv_gamma_s")) p.inv_gamma_s = j.at("inv_gamma_s").get<bool>();
  return p;
}

inline KIntegrandTerm parse_term(const Json& j) {
  KIntegrandTerm t;
  if (j.contains("coef")) t.coef = json_rat(j.at("coef"), "coef");
  if (j.contains("two2")) t.two2 = j.at("two2").get<int>();
  if (j.contains("pi2")) t.pi2 = j.at("pi2").get<int>();
  if (j.contains("alpha")) t.alpha = json_lin(j.at("alpha"), "alpha");
  if (j.contains("beta")) t.beta = json_lin(j.at("beta"), "beta");
  if (j.contains("gammaK")) t.gammaK = json_lin(j.at("gammaK"), "gammaK");
  if (j.contains("deltaKp")) t.deltaKp = json_lin(j.at("deltaKp"), "deltaKp");
  if (j.contains("powE")) t.powE = j.at("powE").get<int>();
  if (j.contains("powEp")) t.powEp = j.at("powEp").get<int>();
  if (j.contains("poly")) {
    t.poly.clear();
    for (const auto& c : j.at("poly")) t.poly.push_back(json_rat(c, "poly"));
  }
  if (j.contains("factor"))
    t.factor = factor_from_name(j.at("factor").get<std::string>());
  return t;
}

}  // namespace detail

inline IdentityRecord parse_record(const Json& j) {
  IdentityRecord r;
  try {
    r.id = j.at("id").get<std::string>();
    if (j.contains("citation")) r.citation = j.at("citation").get<std::string>();
    if (j.contains("tolerance")) {
      std::string t = j.at("tolerance").get<std::string>();
      if (t == "standard")
        r.tolerance = ToleranceClass::Standard;
      else if (t == "singular")
        r.tolerance = ToleranceClass::Singular;
      else
        throw SchemaError("tolerance must be standard or singular");
    }
    if (j.contains("tags"))
      for (const auto& t : j.at("tags")) r.tags.push_back(t.get<std::string>());
    if (j.contains("s_values"))
      for (const auto& s : j.at("s_values")) r.s_values.push_back(s.get<double>());
    if (r.s_values.empty()) r.s_values.push_back(0.0);
    if (j.contains("regularized_at"))
      for (const auto& s : j.at("regularized_at"))
        r.regularized_at.insert(s.get<double>());

    const Json& lhs = j.at("lhs");
    std::string type = lhs.at("type").get<std::string>();
    if (type == "k_integral") {
      KIntegralLhs kl;
      if (lhs.contains("prefactor"))
        kl.prefactor = detail::parse_prefactor(lhs.at("prefactor"));
      for (const auto& t : lhs.at("terms"))
        kl.spec.terms.push_back(detail::parse_term(t));
      if (kl.spec.terms.empty()) throw SchemaError("k_integral without terms");
      r.k_lhs = std::move(kl);
    } else if (type == "lattice_mellin") {
      LatticeLhs ll;
      ll.m = detail::json_rat(lhs.at("m"), "m");
      ll.n = detail::json_rat(lhs.at("n"), "n");
      ll.p = detail::json_rat(lhs.at("p"), "p");
      if (ll.m < 0 || ll.n < 0 || ll.p < 0)
        throw SchemaError("lattice exponents must be nonnegative");
      if (lhs.contains("scale")) ll.scale = detail::parse_prefactor(lhs.at("scale"));
      r.lattice_lhs = std::move(ll);
    } else if (type == "theta_mellin") {
      ThetaMellinLhs tl;
      for (const auto& f : lhs.at("factors")) {
        ThetaPow tp;
        tp.index = f.at("theta").get<int>();
        tp.tscale = f.contains("tscale") ? f.at("tscale").get<int>() : 1;
        tp.power = f.contains("power")
                       ? to_double(detail::json_rat(f.at("power"), "power"))
                       : 1.0;
        tl.factors.push_back(tp);
      }
      if (lhs.contains("minus_one")) tl.minus_one = lhs.at("minus_one").get<bool>();
      if (lhs.contains("scale")) tl.scale = detail::parse_prefactor(lhs.at("scale"));
      r.theta_lhs = std::move(tl);
    } else {
      throw SchemaError("unknown lhs type '" + type + "'");
    }
    r.rhs = parse_expr(j.at("rhs"));
    if (j.contains("rhs_regularized"))
      r.rhs_regularized = parse_expr(j.at("rhs_regularized"));
    if (!r.regularized_at.empty() && !r.rhs_regularized)
      throw SchemaError("regularized_at without rhs_regularized");
  } catch (const Json::exception& e) {
    throw SchemaError("record '" + r.id + "': " + e.what());
  } catch (const SchemaError& e) {
    throw SchemaError("record '" + r.id + "': " + e.what());
  }
  return r;
}

inline std::vector<IdentityRecord> load_registry(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open registry file '" + path + "'");
  Json j;
  try {
    in >> j;
  } catch (const Json::exception& e) {
    throw ParseError(std::string("registry parse error: ") + e.what());
  }
  if (!j.is_array()) throw SchemaError("registry must be a JSON array");
  std::vector<IdentityRecord> out;
  std::set<std::string> ids;
  for (const auto& rec : j) {
    IdentityRecord r = parse_record(rec);
    if (!ids.insert(r.id).second)
      throw DuplicateId("duplicate record id '" + r.id + "'");
    out.push_back(std::move(r));
  }
  return out;
}

inline std::string default_registry_path() {
#ifdef ELLSUM_DATA_DIR
  return std::string(ELLSUM_DATA_DIR) + "/registry.json";
#else
  return "data/registry.json";
#endif
}

// ---------------------------------------------------------------------------
// Generated records
// ---------------------------------------------------------------------------

// even-weight families for n = 2..6, tagged generated:thm31, verified at
// s in {1, 2} (s = 1 through the regularized eta/lambda limit)
inline std::vector<IdentityRecord> generated_thm31() {
  std::vector<IdentityRecord> out;
  for (int n = 2; n <= 6; ++n) {
    auto id = thm31_identity(n);
    IdentityRecord r;
    r.id = "generated/thm31-n" + std::to_string(n);
    r.citation = "even-weight family, weight " + std::to_string(2 * n);
    r.tags = {"generated", "thm31"};
    r.s_values = {1.0, 2.0};
    r.regularized_at = {1.0};
    KIntegralLhs kl;
    KIntegrandTerm t;
    t.alpha = LinS::constant(Rat(1));
    t.gammaK = LinS::affine(Rat(2 * n - 1), Rat(-1));
    t.deltaKp = LinS::affine(Rat(-1), Rat(1));
    t.poly = id.ptilde.coeffs();
    kl.spec.terms.push_back(t);
    r.k_lhs = std::move(kl);
    // rhs = pref * pi^{2n-1-s} Gamma(s) eta(s+1-2n) lambda(s)
    using namespace exprs;
    auto gs = std::make_shared<Expr>();
    gs->kind = Expr::Kind::GammaS;
    r.rhs = mul({rational(id.prefactor), pow(pi(), Rat(2 * n - 1), Rat(-1)),
                 gs, lseries_at(CharId::Eta, Rat(1 - 2 * n), Rat(1)),
                 lseries_at(CharId::Lambda, Rat(0), Rat(1))});
    auto lim = std::make_shared<Expr>();
    lim->kind = Expr::Kind::RegLim;
    lim->reg_factors = {gamma_factor(0), char_factor(CharId::Eta, 1 - 2 * n),
                        char_factor(CharId::Lambda, 0)};
    r.rhs_regularized = mul(
        {rational(id.prefactor), pow(pi(), Rat(2 * n - 1), Rat(-1)), lim});
    out.push_back(std::move(r));
  }
  return out;
}

// f_{4p} families for p = 1..4, tagged generated:thm42 (fixed s = 4p)
inline std::vector<IdentityRecord> generated_thm42() {
  std::vector<IdentityRecord> out;
  for (int p = 1; p <= 4; ++p) {
    auto id = compute_gp(p);
    IdentityRecord r;
    r.id = "generated/thm42-p" + std::to_string(p);
    r.citation = "odd-power family, K'^" + std::to_string(4 * p - 1);
    r.tags = {"generated", "thm42"};
    r.tolerance = ToleranceClass::Singular;
    r.s_values = {0.0};
    KIntegralLhs kl;
    KIntegrandTerm t;
    t.alpha = LinS::constant(Rat(1));
    t.deltaKp = LinS::constant(Rat(4 * p - 1));
    t.poly = id.g_even.coeffs();
    kl.spec.terms.push_back(t);
    r.k_lhs = std::move(kl);
    using namespace exprs;
    r.rhs = mul({rational(id.constant), pow(gamma_rat(Rat(1, 4)), Rat(8 * p)),
                 pow(pi(), Rat(-2 * p))});
    out.push_back(std::move(r));
  }
  return out;
}

// sqrt2-lattice cases p = 2, 3, 4, tagged generated:rem44
inline std::vector<IdentityRecord> generated_rem44() {
  std::vector<IdentityRecord> out;
  for (int p = 2; p <= 4; ++p) {
    auto id = rem44_identity(p);
    IdentityRecord r;
    r.id = "generated/rem44-p" + std::to_string(p);
    r.citation = "sqrt2-lattice family, K^" + std::to_string(2 * p - 1);
    r.tags = {"generated", "rem44"};
    r.s_values = {0.0};
    KIntegralLhs kl;
    KIntegrandTerm t;
    t.gammaK = LinS::constant(Rat(2 * p - 1));
    t.poly = id.P.coeffs();
    t.factor = ExtraFactor::InvSqrtOnePlusK;
    kl.spec.terms.push_back(t);
    r.k_lhs = std::move(kl);
    using namespace exprs;
    // constant = (a + b sqrt2) G18^{2p} G38^{2p} pi^{-p}
    r.rhs = mul({add({rational(id.constant.a),
                      mul({rational(id.constant.b),
                           [] {
                             auto s2 = std::make_shared<Expr>();
                             s2->kind = Expr::Kind::SqrtRat;
                             s2->value = Rat(2);
                             return s2;
                           }()})}),
                 pow(gamma_rat(Rat(1, 8)), Rat(2 * p)),
                 pow(gamma_rat(Rat(3, 8)), Rat(2 * p)), pow(pi(), Rat(-p))});
    out.push_back(std::move(r));
  }
  return out;
}

// differentiated E-families, tagged generated:sec5
inline std::vector<IdentityRecord> generated_sec5() {
  struct Gen {
    std::string base;
    int derivs;
    std::vector<double> s;
    std::set<double> reg;
  };
  std::vector<Gen> plan = {
      {"e4case", 1, {2.0, 3.0, 4.0}, {2.0}},
      {"theta2^4", 1, {3.5, 4.0}, {}},
      {"theta2^2", 2, {3.5, 4.0}, {}},
  };
  std::vector<IdentityRecord> out;
  for (const auto& g : plan) {
    auto d = mellin_step(lambert_base(g.base), g.derivs);
    IdentityRecord r;
    std::string tagname = g.base;
    for (auto& ch : tagname)
      if (ch == '^') ch = 'p';
    r.id = "generated/sec5-" + tagname + "-d" + std::to_string(g.derivs);
    r.citation = "E-family from q-differentiation of " + g.base;
    r.tags = {"generated", "sec5"};
    r.s_values = g.s;
    r.regularized_at = g.reg;
    KIntegralLhs kl;
    kl.spec = d.lhs;
    r.k_lhs = std::move(kl);
    using namespace exprs;
    std::vector<ExprPtr> factors = {
        rational(d.rational), pow(rational(Rat(2)), d.two_c0, d.two_c1),
        pow(pi(), d.pi_c0, d.pi_c1)};
    auto gs = std::make_shared<Expr>();
    gs->kind = Expr::Kind::GammaS;
    factors.push_back(gs);
    std::vector<ExprPtr> plain = factors;
    for (const auto& [c, sh] : d.chars)
      plain.push_back(lseries_at(c, sh, Rat(1)));
    r.rhs = mul(plain);
    if (!g.reg.empty()) {
      auto lim = std::make_shared<Expr>();
      lim->kind = Expr::Kind::RegLim;
      for (const auto& [c, sh] : d.chars)
        lim->reg_factors.push_back(char_factor(c, to_double(sh)));
      std::vector<ExprPtr> regf = factors;
      regf.push_back(lim);
      r.rhs_regularized = mul(regf);
    }
    out.push_back(std::move(r));
  }
  return out;
}

inline std::vector<IdentityRecord> generated_records() {
  std::vector<IdentityRecord> out;
  for (auto&& v : {generated_thm31(), generated_thm42(), generated_rem44(),
                   generated_sec5()})
    for (auto&& r : v) out.push_back(std::move(r));
  return out;
}

}  // namespace ellsum

#endif  // ELLSUM_REGISTRY_HPP
