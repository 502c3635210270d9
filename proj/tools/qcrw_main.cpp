#include <CLI11.hpp>

#include <cctype>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "qcrw/dsl.hpp"
#include "qcrw/euler.hpp"
#include "qcrw/io.hpp"
#include "qcrw/normalform.hpp"
#include "qcrw/rewrite.hpp"
#include "qcrw/semantics.hpp"
#include "qcrw/transcode.hpp"

using namespace qcrw;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitNotEqual = 1;
constexpr int kExitUsage = 2;
constexpr int kExitInternal = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Global {
  bool json = false;
  int digits = 12;
  double eps = 1e-9;
};

// a path, "-" for stdin, or inline circuit text
std::string load(const std::string& arg) {
  if (arg == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::error_code ec;
  if (std::filesystem::exists(arg, ec)) {
    std::ifstream in(arg);
    if (!in) throw UsageError("cannot read " + arg);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }
  if (arg.find('{') != std::string::npos || arg.find('[') != std::string::npos) return arg;
  throw UsageError("no such file: " + arg);
}

bool looks_like_json(const std::string& text) {
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    return c == '{' || c == '[';
  }
  return false;
}

// a circuit's semantics or a literal matrix
Unitary load_matrix(const std::string& arg) {
  const std::string text = load(arg);
  if (looks_like_json(text)) return unitary_from_json_text(text);
  return semantics(parse_layered(text));
}

std::string fmt(double x, const Global& g) { return format_angle(round_sig(x, g.digits), g.digits); }

void print_matrix(const Unitary& u, const Global& g) {
  for (Eigen::Index i = 0; i < u.rows(); ++i) {
    for (Eigen::Index j = 0; j < u.cols(); ++j) {
      const double re = round_sig(u(i, j).real(), g.digits), im = round_sig(u(i, j).imag(), g.digits);
      std::cout << (j ? "  " : "") << format_angle(re, g.digits) << (im < 0 ? "-" : "+")
                << format_angle(std::abs(im), g.digits) << "i";
    }
    std::cout << "\n";
  }
}

ordered_json angles_json(const double* v, int n, int digits) {
  ordered_json a = ordered_json::array();
  for (int i = 0; i < n; ++i) a.push_back(round_sig(v[i], digits));
  return a;
}

int cmd_sem(const Global& g, const std::string& file) {
  LayeredCircuit c = parse_layered(load(file));
  Unitary u = semantics(c);
  if (g.json) {
    ordered_json out;
    out["flavor"] = flavor_name(c.flavor);
    out["wires"] = c.wires;
    out["matrix"] = unitary_to_json(u, g.digits);
    std::cout << out.dump() << "\n";
  } else {
    print_matrix(u, g);
  }
  return kExitOk;
}

int cmd_equiv(const Global& g, const std::string& a, const std::string& b, const std::string& pprs, long budget) {
  LayeredCircuit ca = parse_layered(load(a)), cb = parse_layered(load(b));
  EquivOptions opt;
  opt.eps = g.eps;
  opt.pprs = pprs == "on" ? 1 : pprs == "off" ? 0 : -1;
  opt.budget = budget;
  EquivVerdict v = check_equiv(ca, cb, opt);
  if (g.json) {
    ordered_json out;
    out["verdict"] = v.equal ? "equal" : "not-equal";
    out["max_deviation"] = round_sig(v.max_deviation, g.digits);
    out["eps"] = g.eps;
    out["canonical"] = {{"checked", v.canonical_checked}, {"identical", v.canonical_identical}};
    out["pprs"] = {{"checked", v.pprs_checked},
                   {"normalized", v.pprs_normalized},
                   {"agree", v.pprs_agree},
                   {"identical", v.pprs_identical}};
    std::cout << out.dump() << "\n";
  } else {
    std::cout << (v.equal ? "equal" : "not equal") << "\n";
    std::cout << "max deviation " << fmt(v.max_deviation, g) << "\n";
    if (v.canonical_checked) std::cout << "canonical forms " << (v.canonical_identical ? "identical" : "differ") << "\n";
    if (v.pprs_checked)
      std::cout << "pprs normal forms " << (v.pprs_normalized ? "" : "(budget hit) ")
                << (v.pprs_identical ? "identical" : v.pprs_agree ? "differ, same semantics" : "disagree") << "\n";
  }
  return v.equal ? kExitOk : kExitNotEqual;
}

int emit_circuit(const Global& g, const LayeredCircuit& c, ordered_json extra = ordered_json::object()) {
  if (g.json) {
    ordered_json out = std::move(extra);
    out["flavor"] = flavor_name(c.flavor);
    out["wires"] = c.wires;
    out["gates"] = c.gate_count();
    out["circuit"] = print(c, g.digits);
    std::cout << out.dump() << "\n";
  } else {
    std::cout << print(c, g.digits);
  }
  return kExitOk;
}

int cmd_encode(const Global& g, const std::string& file) {
  return emit_circuit(g, layer(encode(parse_layered(load(file)))));
}

int cmd_decode(const Global& g, const std::string& file, int qubits, bool no_expand) {
  LayeredCircuit c = parse_layered(load(file));
  const int n = qubits >= 0 ? qubits : qubits_for_modes(c.wires);
  return emit_circuit(g, layer(decode(c, n, !no_expand)));
}

int cmd_expand(const Global& g, const std::string& file) {
  return emit_circuit(g, expand_macros(parse_layered(load(file))));
}

int cmd_normalize(const Global& g, const std::string& file, long budget) {
  NormalFormReport r = pprs_normalize(parse_layered(load(file)), budget);
  if (g.json) {
    ordered_json out;
    out["status"] = status_name(r.status);
    out["steps"] = r.steps;
    out["budget"] = r.budget;
    ordered_json rules = ordered_json::object();
    for (const auto& [name, n] : r.rule_counts) rules[name] = n;
    out["rules"] = std::move(rules);
    out["circuit"] = print(r.normal, g.digits);
    std::cout << out.dump() << "\n";
  } else {
    std::cout << print(r.normal, g.digits);
    std::cout << "# " << status_name(r.status) << " after " << r.steps << " steps (budget " << r.budget << ")\n";
  }
  return r.status == NormalStatus::Normalized ? kExitOk : kExitNotEqual;
}

int cmd_euler1q(const Global& g, const std::string& file) {
  Unitary u = load_matrix(file);
  if (u.rows() != 2 || u.cols() != 2) throw DimensionMismatch("euler1q expects a 2x2 matrix");
  Euler1Q e = euler_1q(u);
  const double b[4] = {e.b0, e.b1, e.b2, e.b3};
  const double dev = max_deviation(recompose(e), u);
  if (g.json) {
    ordered_json out;
    out["beta"] = angles_json(b, 4, g.digits);
    out["recompose_deviation"] = round_sig(dev, g.digits);
    std::cout << out.dump() << "\n";
  } else {
    for (int i = 0; i < 4; ++i) std::cout << "beta" << i << " " << fmt(b[i], g) << "\n";
    std::cout << "# s(beta0); P(beta1); R_X(beta2); P(beta3), deviation " << fmt(dev, g) << "\n";
  }
  return kExitOk;
}

int cmd_euler3x3(const Global& g, const std::string& file) {
  Unitary u = load_matrix(file);
  if (u.rows() != 3 || u.cols() != 3) throw DimensionMismatch("euler3x3 expects a 3x3 matrix");
  Euler3x3 e = euler_3x3(u);
  const double dev = max_deviation(recompose(e), u);
  if (g.json) {
    ordered_json out;
    out["delta"] = angles_json(e.d.data(), 9, g.digits);
    out["recompose_deviation"] = round_sig(dev, g.digits);
    std::cout << out.dump() << "\n";
  } else {
    for (int i = 1; i <= 9; ++i) std::cout << "delta" << i << " " << fmt(e[i], g) << "\n";
    std::cout << "# deviation " << fmt(dev, g) << "\n";
  }
  return kExitOk;
}

int cmd_verify(const Global& g, int trials, std::uint64_t seed, const std::string& flavor) {
  std::vector<Flavor> fs;
  if (flavor != "lopp") fs.push_back(Flavor::QC);
  if (flavor != "qc") fs.push_back(Flavor::LOPP);
  ordered_json rows = ordered_json::array();
  bool ok = true;
  for (Flavor f : fs)
    for (const RewriteRule& r : catalog(f)) {
      ordered_json row;
      row["rule"] = r.name;
      row["trials"] = trials;
      try {
        SoundnessReport rep = verify_soundness(r, trials, seed, g.eps);
        row["max_deviation"] = round_sig(rep.max_deviation, g.digits);
        row["ok"] = true;
      } catch (const SoundnessViolation& e) {
        row["max_deviation"] = round_sig(e.deviation(), g.digits);
        row["ok"] = false;
        row["detail"] = e.what();
        ok = false;
      }
      if (!g.json)
        std::cout << (row["ok"].get<bool>() ? "ok    " : "FAIL  ") << r.name << "  "
                  << fmt(row["max_deviation"].get<double>(), g) << "\n";
      rows.push_back(std::move(row));
    }
  if (g.json) {
    ordered_json out;
    out["seed"] = seed;
    out["eps"] = g.eps;
    out["ok"] = ok;
    out["rules"] = std::move(rows);
    std::cout << out.dump() << "\n";
  }
  return ok ? kExitOk : kExitInternal;
}

int cmd_walk(const Global& g, const std::string& file, int steps, std::uint64_t seed, const std::string& trace) {
  LayeredCircuit c = parse_layered(load(file));
  auto [end, d] = random_walk(c, steps, seed);
  if (!trace.empty()) {
    std::ofstream out(trace);
    if (!out) throw UsageError("cannot write " + trace);
    out << derivation_to_jsonl(d);
  }
  if (g.json) {
    ordered_json out;
    out["seed"] = seed;
    out["start"] = print(c, g.digits);
    out["end"] = print(end, g.digits);
    ordered_json st = ordered_json::array();
    for (const Step& s : d.steps) {
      ordered_json j = ordered_json::parse(step_to_json(s));
      for (auto& [k, v] : j["angles"].items()) v = round_sig(v.get<double>(), g.digits);
      st.push_back(std::move(j));
    }
    out["steps"] = std::move(st);
    std::cout << out.dump() << "\n";
  } else {
    std::cout << print(end, g.digits);
    std::cout << "# " << d.steps.size() << " steps\n";
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qcrw: quantum and linear optical circuit rewriting"};
  app.require_subcommand(1);
  app.fallthrough();
  Global g;
  app.add_flag("--json", g.json, "machine-readable output");
  app.add_option("--digits", g.digits, "significant digits for angles and entries")->check(CLI::Range(1, 17));
  app.add_option("--eps", g.eps, "tolerance for semantic comparisons");

  std::string a, b, pprs = "auto", trace, flavor = "all";
  long budget = -1;
  int qubits = -1, trials = 100, steps = 10;
  std::uint64_t seed = 7;
  bool no_expand = false;

  auto* sem = app.add_subcommand("sem", "print the semantics of a circuit");
  sem->add_option("file", a, "circuit file, - for stdin, or inline text")->required();

  auto* eq = app.add_subcommand("equiv", "decide whether two circuits have equal semantics");
  eq->add_option("a", a)->required();
  eq->add_option("b", b)->required();
  eq->add_option("--pprs", pprs, "normal-form cross-check")->check(CLI::IsMember({"auto", "on", "off"}));
  eq->add_option("--budget", budget, "step budget for the normal-form cross-check");

  auto* enc = app.add_subcommand("encode", "encode a quantum circuit as an optical one");
  enc->add_option("file", a)->required();

  auto* dec = app.add_subcommand("decode", "decode an optical circuit on 2^n modes");
  dec->add_option("file", a)->required();
  dec->add_option("--qubits", qubits, "n; inferred from the mode count when omitted");
  dec->add_flag("--no-expand", no_expand, "keep multi-controlled gates");

  auto* nf = app.add_subcommand("normalize", "normalize an optical circuit");
  nf->add_option("file", a)->required();
  nf->add_option("--budget", budget);

  auto* ex = app.add_subcommand("expand", "replace abbreviations by elementary gates");
  ex->add_option("file", a)->required();

  auto* e1 = app.add_subcommand("euler1q", "Euler angles of a 2x2 unitary");
  e1->add_option("file", a, "JSON matrix or one-qubit circuit")->required();

  auto* e3 = app.add_subcommand("euler3x3", "Euler angles of a 3x3 unitary");
  e3->add_option("file", a, "JSON matrix or three-mode circuit")->required();

  auto* vr = app.add_subcommand("verify-rules", "check every catalog rule on random angles");
  vr->add_option("--trials", trials)->check(CLI::PositiveNumber);
  vr->add_option("--seed", seed);
  vr->add_option("--flavor", flavor)->check(CLI::IsMember({"all", "qc", "lopp"}));

  auto* rw = app.add_subcommand("random-walk", "apply random rules");
  rw->add_option("file", a)->required();
  rw->add_option("--steps", steps)->check(CLI::NonNegativeNumber);
  rw->add_option("--seed", seed);
  rw->add_option("--trace", trace, "write the derivation as JSON lines");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*sem) return cmd_sem(g, a);
    if (*eq) return cmd_equiv(g, a, b, pprs, budget);
    if (*enc) return cmd_encode(g, a);
    if (*dec) return cmd_decode(g, a, qubits, no_expand);
    if (*nf) return cmd_normalize(g, a, budget);
    if (*ex) return cmd_expand(g, a);
    if (*e1) return cmd_euler1q(g, a);
    if (*e3) return cmd_euler3x3(g, a);
    if (*vr) return cmd_verify(g, trials, seed, flavor);
    if (*rw) return cmd_walk(g, a, steps, seed, trace);
  } catch (const SoundnessViolation& e) {
    std::cerr << "qcrw: " << e.what() << "\n";
    return kExitInternal;
  } catch (const UsageError& e) {
    std::cerr << "qcrw: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << "qcrw: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "qcrw: internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitUsage;
}
