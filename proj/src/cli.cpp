#include "lh/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>

#include "lh/errors.hpp"
#include "lh/hierarchy.hpp"
#include "lh/laxpair.hpp"
#include "lh/lenard.hpp"
#include "lh/odesolve.hpp"
#include "lh/serialize.hpp"

namespace lh::cli {

namespace {

using nlohmann::ordered_json;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::vector<Rational> parse_rationals(const std::vector<std::string>& items, const std::string& flag) {
  std::vector<Rational> out;
  for (const auto& s : items) {
    try {
      out.push_back(parse_rational(s));
    } catch (const std::exception&) {
      throw UsageError(flag + ": '" + s + "' is not a rational number");
    }
  }
  return out;
}

Format output_format(const std::string& name, const std::string& flag) {
  try {
    return parse_format(name);
  } catch (const Error&) {
    throw UsageError(flag + ": unknown format '" + name + "'");
  }
}

// ------------------------------------------------------------------ output

ordered_json laurent_json(const LaurentPoly& p) {
  ordered_json arr = ordered_json::array();
  for (const auto& [power, coeff] : p.coefficients())
    arr.push_back({{"power", power}, {"coefficient", to_json(coeff)}});
  return arr;
}

std::string laurent_latex(const LaurentPoly& p) {
  if (p.is_zero()) return "0";
  std::string out;
  for (auto it = p.coefficients().rbegin(); it != p.coefficients().rend(); ++it) {
    if (!out.empty()) out += " + ";
    out += "\\left(" + to_latex(it->second) + "\\right)";
    if (it->first != 0) out += " z^{" + std::to_string(it->first) + "}";
  }
  return out;
}

// -------------------------------------------------------------- gen-lenard

struct LenardArgs {
  std::vector<std::string> seed{"standard"};
  int count = 3;
  std::vector<std::string> constants;
  std::string format = "json";
  bool allow_integrals = false;
};

SeedCondition seed_from(const std::vector<std::string>& words) {
  const std::string& kind = words.at(0);
  if (kind == "standard" && words.size() == 1) return SeedCondition::standard();
  if (kind == "p3" && words.size() == 1) return SeedCondition::painleve3();
  if (kind == "custom" && words.size() == 2) {
    try {
      return SeedCondition::custom(parse(words[1]));
    } catch (const ParseError& e) {
      throw UsageError(std::string("--seed: ") + e.what());
    }
  }
  throw UsageError("--seed: expected 'standard', 'p3' or 'custom <expr>'");
}

int gen_lenard(const LenardArgs& a, std::ostream& out) {
  const SeedCondition seed = seed_from(a.seed);
  if (a.count < 1) throw UsageError("--count: must be >= 1");
  std::vector<Rational> constants = parse_rationals(a.constants, "--constants");
  if (constants.empty()) constants.assign(static_cast<std::size_t>(a.count), Rational(0));
  if (static_cast<int>(constants.size()) != a.count)
    throw UsageError("--constants: need exactly " + std::to_string(a.count) + " values");
  const Format fmt = output_format(a.format, "--format");
  const LenardSequence seq = generate(seed, a.count, constants,
                                      a.allow_integrals ? Antiderivatives::Introduce : Antiderivatives::Reject);
  if (fmt == Format::Json) {
    ordered_json doc;
    doc["seed"] = seed.name();
    ordered_json cs = ordered_json::array();
    for (const auto& c : seq.constants()) cs.push_back(to_string(c));
    doc["constants"] = cs;
    ordered_json ells = ordered_json::array();
    for (const auto& l : seq.ells()) ells.push_back(to_json(l));
    doc["ells"] = ells;
    out << doc.dump() << '\n';
  } else {
    for (int j = 0; j <= seq.last_index(); ++j) {
      const DiffPoly& l = seq.at(j);
      if (fmt == Format::Latex)
        out << "\\ell_{" << j << "} = " << to_latex(l) << '\n';
      else
        out << 'l' << j << " = " << to_ascii(l) << '\n';
    }
  }
  return Ok;
}

// ----------------------------------------------------------- gen-hierarchy

struct HierarchyArgs {
  int k = 1;
  std::string format = "json";
  std::vector<std::string> tau;
};

int gen_hierarchy(const HierarchyArgs& a, std::ostream& out) {
  if (a.k < 1) throw UsageError("--k: must be >= 1");
  const Format fmt = output_format(a.format, "--format");
  TauParameters tau = TauParameters::symbolic(a.k);
  if (!a.tau.empty()) {
    if (static_cast<int>(a.tau.size()) != a.k + 1)
      throw UsageError("--tau: need " + std::to_string(a.k + 1) + " values");
    tau = TauParameters::values(parse_rationals(a.tau, "--tau"));
  }
  const HierarchySystem sys = build_p3_system(a.k, tau);
  if (fmt == Format::Json) {
    ordered_json doc;
    doc["k"] = a.k;
    doc["u"] = to_json(sys.u_expr);
    ordered_json eqs = ordered_json::array();
    for (const auto& e : sys.equations) eqs.push_back(to_json(e));
    doc["equations"] = eqs;
    out << doc.dump() << '\n';
  } else {
    const bool latex = fmt == Format::Latex;
    out << (latex ? "u = " + to_latex(sys.u_expr) : "u = " + to_ascii(sys.u_expr)) << '\n';
    for (const auto& e : sys.equations) out << (latex ? to_latex(e) : to_ascii(e)) << " = 0\n";
  }
  return Ok;
}

// ----------------------------------------------------------------- gen-lax

struct LaxArgs {
  int k = 1;
  std::string format = "json";
};

int gen_lax(const LaxArgs& a, std::ostream& out) {
  if (a.k < 0) throw UsageError("--k: must be >= 0");
  const Format fmt = output_format(a.format, "--format");
  std::vector<DiffPoly> ells = hierarchy_ells(std::max(a.k, 1));
  ells.resize(static_cast<std::size_t>(a.k + 1));
  const LaxMatrices lax = build_lax_matrices(ells, a.k, DiffPoly::u());
  if (fmt == Format::Json) {
    ordered_json doc;
    doc["k"] = a.k;
    doc["a"] = laurent_json(lax.a);
    doc["b"] = laurent_json(lax.b);
    doc["c"] = laurent_json(lax.c);
    out << doc.dump() << '\n';
  } else {
    out << "a = " << laurent_latex(lax.a) << '\n';
    out << "b = " << laurent_latex(lax.b) << '\n';
    out << "c = " << laurent_latex(lax.c) << '\n';
  }
  return Ok;
}

// ------------------------------------------------------------------ verify

struct VerifyArgs {
  std::string suite = "all";
  int max_index = 4;
};

struct Check {
  std::string suite;
  std::string label;
  bool pass = false;
};

struct NamedSeed {
  std::string name;
  SeedCondition seed;
};

std::vector<NamedSeed> verification_seeds() {
  const DiffPoly s = DiffPoly::s();
  return {{"standard", SeedCondition::standard()},
          {"p3", SeedCondition::painleve3()},
          {"custom", SeedCondition::custom((s * s).scaled(make_rational(1, 2)))}};
}

std::string idx(std::initializer_list<std::pair<const char*, int>> items) {
  std::string out;
  for (const auto& [name, value] : items) {
    if (!out.empty()) out += ' ';
    out += std::string(name) + '=' + std::to_string(value);
  }
  return out;
}

std::vector<Check> run_suite(const std::string& suite, int n_max) {
  std::vector<Check> checks;
  auto add = [&](const std::string& label, bool pass) { checks.push_back({suite, label, pass}); };
  const auto seeds = verification_seeds();
  std::vector<LenardSequence> seqs;
  for (const auto& s : seeds) seqs.push_back(generate(s.seed, n_max + 1, Antiderivatives::Introduce));

  for (std::size_t i = 0; i < seeds.size(); ++i) {
    const LenardSequence& seq = seqs[i];
    const std::string seed = "seed=" + seeds[i].name + ' ';
    if (suite == "master") {
      for (int n = 0; n <= n_max; ++n)
        for (int m = 0; m <= n_max; ++m) add(seed + idx({{"n", n}, {"m", m}}), master_identity_residual(seq, n, m).is_zero());
    } else if (suite == "shift") {
      for (int n = 1; n <= n_max; ++n)
        for (int m = 0; m <= n_max; ++m) add(seed + idx({{"n", n}, {"m", m}}), shift_identity_residual(seq, n, m).is_zero());
    } else if (suite == "transport") {
      for (int m = 0; m <= n_max; ++m)
        for (int n = 1; n <= n_max; ++n)
          for (int r = 1; r <= n && m + r <= n_max + 1; ++r)
            add(seed + idx({{"m", m}, {"n", n}, {"r", r}}), transport_residual(seq, m, n, r).is_zero());
    } else if (suite == "conservation") {
      for (int k = 0; k <= n_max; ++k)
        for (int p = 0; p <= k; ++p)
          add(seed + "tau " + idx({{"k", k}, {"p", p}}),
              conservation_residual(seq, k, p, ConservedKind::Tau).is_zero());
      for (int p = 0; p <= n_max; ++p)
        add(seed + "sigma " + idx({{"p", p}}), conservation_residual(seq, 0, p, ConservedKind::Sigma).is_zero());
      if (seeds[i].name == "standard")
        for (int p = 1; p <= n_max; ++p) add(seed + "sigma-vanishes " + idx({{"p", p}}), conserved_sigma(seq, p).expr.is_zero());
    }
  }

  if (suite == "closedform") {
    const LenardSequence& standard = seqs[0];
    for (int p = 1; p <= n_max; ++p) add(idx({{"p", p}}), closed_form_standard(p) == standard.at(p));
  } else if (suite == "lax") {
    for (int k = 0; k <= n_max; ++k) add("seed=p3 " + idx({{"k", k}}), compatibility_residual(seqs[1], k).is_zero());
    bool mismatch = false;
    try {
      compatibility_residual(seqs[0], 1);
    } catch (const SeedMismatch&) {
      mismatch = true;
    }
    add("seed=standard rejected", mismatch);
  }
  return checks;
}

int verify(const VerifyArgs& a, std::ostream& out) {
  static const std::vector<std::string> all{"master", "shift", "transport", "conservation", "closedform", "lax"};
  if (a.max_index < 0) throw UsageError("--max-index: must be >= 0");
  std::vector<std::string> suites;
  if (a.suite == "all") suites = all;
  else if (std::find(all.begin(), all.end(), a.suite) != all.end()) suites = {a.suite};
  else throw UsageError("--suite: unknown suite '" + a.suite + "'");

  int passed = 0, failed = 0;
  for (const auto& suite : suites)
    for (const Check& c : run_suite(suite, a.max_index)) {
      out << (c.pass ? "PASS " : "FAIL ") << c.suite << ' ' << c.label << '\n';
      (c.pass ? passed : failed) += 1;
    }
  out << "summary: " << passed << " passed, " << failed << " failed\n";
  return failed == 0 ? Ok : VerifyFailed;
}

// --------------------------------------------------------------- integrate

struct IntegrateArgs {
  int k = 1;
  std::vector<double> tau;
  std::vector<double> init;
  double s0 = 1.0;
  double s1 = 2.0;
  double step = 1e-4;
  std::string out;
  int decimate = 1;
};

int integrate_cmd(const IntegrateArgs& a, std::ostream& out, std::ostream& err) {
  if (a.k != 1 && a.k != 2) throw UsageError("--k: integration supports 1 or 2");
  if (static_cast<int>(a.tau.size()) != a.k + 1)
    throw UsageError("--tau: need " + std::to_string(a.k + 1) + " values");
  if (static_cast<int>(a.init.size()) != 2 * a.k)
    throw UsageError("--init: need " + std::to_string(2 * a.k) + " values");
  if (a.decimate < 1) throw UsageError("--decimate: must be >= 1");

  const CompiledSystem sys = compile_hierarchy(a.k, a.tau);
  const Trajectory traj = integrate(sys, a.init, SolverConfig{a.s0, a.s1, a.step, a.decimate});

  if (a.out.empty()) {
    write_csv(traj, a.k, out);
  } else {
    std::ofstream file(a.out);
    if (!file) throw Error("cannot open '" + a.out + "' for writing");
    write_csv(traj, a.k, file);
  }
  if (traj.status == Trajectory::Status::AbortedNonfinite) {
    err << "integration aborted at s = " << traj.abort_s << ": " << traj.abort_reason << '\n';
    return Runtime;
  }
  return Ok;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Lenard recursion, hierarchy and Lax-pair engine"};
  app.name("lh");
  app.require_subcommand(1);

  LenardArgs lenard;
  auto* gl = app.add_subcommand("gen-lenard", "Generate a Lenard sequence");
  gl->add_option("--seed", lenard.seed, "standard | p3 | custom <expr>")->expected(1, 2);
  gl->add_option("--count", lenard.count, "Last index N of l_0 .. l_N");
  gl->add_option("--constants", lenard.constants, "Integration constants c0,c1,...")->delimiter(',');
  gl->add_option("--format", lenard.format, "json | latex | ascii");
  gl->add_flag("--allow-integrals", lenard.allow_integrals, "Adjoin formal antiderivatives when a step is not exact");

  HierarchyArgs hier;
  auto* gh = app.add_subcommand("gen-hierarchy", "Generate the k-th hierarchy system");
  gh->add_option("--k", hier.k, "Hierarchy order")->required();
  gh->add_option("--format", hier.format, "json | latex | ascii");
  gh->add_option("--tau", hier.tau, "Numeric tau_0,...,tau_k (symbolic when omitted)")->delimiter(',');

  LaxArgs lax;
  auto* gx = app.add_subcommand("gen-lax", "Lax-pair coefficients a, b, c");
  gx->add_option("--k", lax.k, "Hierarchy order")->required();
  gx->add_option("--format", lax.format, "json | latex | ascii");

  VerifyArgs ver;
  auto* gv = app.add_subcommand("verify", "Check identities exactly");
  gv->add_option("--suite", ver.suite, "master|shift|transport|conservation|closedform|lax|all");
  gv->add_option("--max-index", ver.max_index, "Largest index checked");

  IntegrateArgs integ;
  auto* gi = app.add_subcommand("integrate", "Integrate the k = 1 or k = 2 system with RK4");
  gi->add_option("--k", integ.k, "1 or 2")->required();
  gi->add_option("--tau", integ.tau, "tau_0,...,tau_k")->delimiter(',')->required();
  gi->add_option("--init", integ.init, "l_1,l_1'[,l_2,l_2'] at s0")->delimiter(',')->required();
  gi->add_option("--s0", integ.s0, "Start of the interval");
  gi->add_option("--s1", integ.s1, "End of the interval")->required();
  gi->add_option("--step", integ.step, "Fixed step size");
  gi->add_option("--out", integ.out, "CSV path (stdout when omitted)");
  gi->add_option("--decimate", integ.decimate, "Keep every n-th step");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return Ok;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return Usage;
  }

  try {
    if (gl->parsed()) return gen_lenard(lenard, out);
    if (gh->parsed()) return gen_hierarchy(hier, out);
    if (gx->parsed()) return gen_lax(lax, out);
    if (gv->parsed()) return verify(ver, out);
    return integrate_cmd(integ, out, err);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return Usage;
  } catch (const NotExactDerivative& e) {
    err << "error: " << e.what() << " (use --allow-integrals to adjoin antiderivative symbols)\n";
    return Runtime;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return Runtime;
  }
}

}  // namespace lh::cli
