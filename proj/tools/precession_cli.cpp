#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/core.h>

#include <CLI11.hpp>
#include <json.hpp>

#include "precession/angles.hpp"
#include "precession/entanglement.hpp"
#include "precession/errors.hpp"
#include "precession/oscillator.hpp"
#include "precession/robustness.hpp"
#include "precession/spin.hpp"
#include "precession/wigner.hpp"

using namespace precession;
using Json = nlohmann::ordered_json;

namespace {

constexpr int kSchemaVersion = 1;

// --- parsing -----------------------------------------------------------------

// "1.2", "pi", "-pi/2", "2pi/3", "3*pi/4", "5/7"
double parse_angle(std::string s) {
  s.erase(std::remove_if(s.begin(), s.end(), ::isspace), s.end());
  static const std::regex re(R"(^([+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)?(\*?pi)?(?:/(\d+\.?\d*))?$)");
  std::smatch m;
  if (s.empty() || s == "+" || s == "-" || !std::regex_match(s, m, re)) throw ValidationError("cannot parse angle '" + s + "'");
  double v = 1.0;
  if (m[1].matched) v = std::stod(m[1].str());
  else if (!s.empty() && s[0] == '-') v = -1.0;
  if (m[2].matched) v *= kPi;
  else if (!m[1].matched) throw ValidationError("cannot parse angle '" + s + "'");
  if (m[3].matched) {
    const double d = std::stod(m[3].str());
    if (d == 0.0) throw ValidationError("zero denominator in angle '" + s + "'");
    v /= d;
  }
  return v;
}

std::vector<double> parse_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_angle(item));
  return out;
}

// "--theta" gives theta_1.. (theta_0 = 0 is implied unless the list already has K entries).
AngleSet parse_angles(const std::string& s, int K) {
  auto v = parse_list(s);
  if (int(v.size()) == K - 1) v.insert(v.begin(), 0.0);
  if (int(v.size()) != K) throw ValidationError(fmt::format("expected {} or {} angles, got {}", K - 1, K, v.size()));
  return canonicalize(std::span<const double>(v));
}

// "3/2", "1.5" or "3" -> 2j
int parse_two_j(const std::string& s) {
  double v;
  const auto slash = s.find('/');
  if (slash != std::string::npos) {
    if (s.substr(slash + 1) != "2") throw ValidationError("spin must be a multiple of 1/2, got '" + s + "'");
    v = std::stod(s.substr(0, slash)) / 2.0;
  } else {
    v = std::stod(s);
  }
  const double tj = 2.0 * v;
  if (tj < 1.0 || std::abs(tj - std::round(tj)) > 1e-12) throw ValidationError("spin must be a positive multiple of 1/2, got '" + s + "'");
  return int(std::lround(tj));
}

std::string spin_label(int two_j) { return two_j % 2 ? fmt::format("{}/2", two_j) : fmt::format("{}", two_j / 2); }

// --- output ------------------------------------------------------------------

std::string g17(double x) {
  if (!std::isfinite(x)) return "null";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

// JSON text with every float at 17 significant digits.
void dump17(const Json& j, std::string& out, int indent, int depth) {
  const std::string pad(std::size_t(indent * (depth + 1)), ' '), end_pad(std::size_t(indent * depth), ' ');
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ",\n";
        first = false;
        out += pad + Json(it.key()).dump() + ": ";
        dump17(it.value(), out, indent, depth + 1);
      }
      out += "\n" + end_pad + "}";
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      out += "[\n";
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) out += ",\n";
        out += pad;
        dump17(j[i], out, indent, depth + 1);
      }
      out += "\n" + end_pad + "]";
      return;
    }
    case Json::value_t::number_float: out += g17(j.get<double>()); return;
    default: out += j.dump();
  }
}

struct Output {
  bool json = false;
  std::string command;
  Json doc;
  std::vector<std::string> lines;

  void line(const std::string& s) { lines.push_back(s); }
  void emit() const {
    if (json) {
      Json root;
      root["schema_version"] = kSchemaVersion;
      root["command"] = command;
      for (auto it = doc.begin(); it != doc.end(); ++it) root[it.key()] = it.value();
      std::string s;
      dump17(root, s, 2, 0);
      std::cout << s << "\n";
    } else {
      for (const auto& l : lines) std::cout << l << "\n";
    }
  }
};

std::string h6(double x) { return fmt::format("{:.6g}", x); }

std::string region_name(Region r) { return to_string(r); }

Json angles_json(const AngleSet& a) {
  Json arr = Json::array();
  for (double t : a.values()) arr.push_back(t);
  return arr;
}

std::string angles_human(const AngleSet& a) {
  std::string s = "(";
  for (int k = 0; k < a.size(); ++k) s += (k ? ", " : "") + h6(a[k]);
  return s + ")";
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error("cannot open '" + path + "' for writing");
  f << text;
  if (!f) throw Error("write to '" + path + "' failed");
}

// --- commands ----------------------------------------------------------------

struct ClassicalArgs {
  std::string theta;
  int K = 3;
};

void cmd_classical(const ClassicalArgs& a, Output& out) {
  const auto th = parse_angles(a.theta, a.K);
  const auto m = classical_max_score(th);
  out.doc["angles"] = angles_json(th);
  out.doc["K"] = m.K;
  out.doc["delta"] = m.delta;
  out.doc["numerator"] = m.numerator();
  out.doc["denominator"] = m.denominator();
  out.doc["score"] = m.value();
  out.doc["region"] = region_name(m.region);
  const std::string frac = m.denominator() == 1 ? fmt::format("{}", m.numerator())
                                                : fmt::format("{}/{}", m.numerator(), m.denominator());
  out.line(fmt::format("{}, {}", frac, region_name(m.region)));
  out.line(fmt::format("angles {}  delta {}", angles_human(th), m.delta));
}

struct OscArgs {
  int n_hat = 40;
  std::string csv;
};

void cmd_osc_bounds(const OscArgs& a, Output& out) {
  if (a.n_hat < 1) throw ValidationError("--n-hat must be at least 1");
  const auto seq = lower_bound_sequence(a.n_hat);
  std::vector<int> ns(seq.size());
  for (std::size_t i = 0; i < ns.size(); ++i) ns[i] = int(i) + 1;
  const auto ub = upper_bound_p3_closed();
  const double trc = trace_a3_squared(), trq = trace_a3_squared_quadrature();
  Json lower = Json::array();
  for (std::size_t i = 0; i < seq.size(); ++i) lower.push_back({{"n_hat", ns[i]}, {"value", seq[i]}});
  out.doc["lower_bounds"] = lower;
  out.doc["upper_bound"] = ub.value;
  out.doc["trace_a3_squared"] = {{"closed", trc}, {"quadrature", trq}};
  if (seq.size() >= 3) {
    const auto fit = extrapolate_lower_bound(ns, seq);
    out.doc["fit"] = {{"p_inf", fit.p_inf}, {"a1", fit.a1}, {"a2", fit.a2}, {"residual", fit.residual}};
    out.doc["backflow"] = {{"lower", backflow_bound(seq.back())},
                           {"estimate", backflow_bound(fit.p_inf)},
                           {"upper", backflow_bound(ub.value)}};
  }
  for (std::size_t i = 0; i < seq.size(); ++i) out.line(fmt::format("P_lower({}) = {}", ns[i], h6(seq[i])));
  out.line(fmt::format("upper bound (closed form) = {}", h6(ub.value)));
  out.line(fmt::format("tr A3^2: closed {} quadrature {} diff {:.2e}", h6(trc), h6(trq), trq - trc));
  if (out.doc.contains("fit")) {
    out.line(fmt::format("fit estimate = {}", h6(out.doc["fit"]["p_inf"].get<double>())));
    out.line(fmt::format("backflow constant in [{}, {}], estimate {}", h6(out.doc["backflow"]["lower"].get<double>()),
                         h6(out.doc["backflow"]["upper"].get<double>()),
                         h6(out.doc["backflow"]["estimate"].get<double>())));
  }
  if (!a.csv.empty()) {
    std::string text = "n_hat,p_lower\n";
    for (std::size_t i = 0; i < seq.size(); ++i) text += fmt::format("{},{}\n", ns[i], g17(seq[i]));
    write_text(a.csv, text);
    out.doc["csv"] = a.csv;
  }
}

struct HeatArgs {
  std::string j = "3/2";
  int resolution = 121;
  std::string out;
};

void cmd_spin_heatmap(const HeatArgs& a, Output& out) {
  const int tj = parse_two_j(a.j);
  if (a.resolution < 16) throw ValidationError("--resolution must be at least 16");
  const auto pts = heatmap(tj, a.resolution);
  if (pts.empty()) throw Error("empty heatmap");
  const auto best = *std::max_element(pts.begin(), pts.end(), [](const auto& x, const auto& y) { return x.score < y.score; });
  const auto peaks = local_peaks(pts, a.resolution);
  // symmetry spot check: rotate the argmax by 2pi/3
  const SpinProtocol sp(tj);
  const double c = std::cos(kTwoPi / 3), s = std::sin(kTwoPi / 3);
  const Eigen::Vector2d v(best.vartheta1, best.vartheta2), w(c * v[0] - s * v[1], s * v[0] + c * v[1]);
  const double rotated = sp.max_score(from_vartheta(w));
  const long resonant = tj >= 3 ? resonant_count(tj) : 0;

  out.doc["j"] = spin_label(tj);
  out.doc["resolution"] = a.resolution;
  out.doc["points"] = pts.size();
  out.doc["max"] = {{"score", best.score}, {"vartheta1", best.vartheta1}, {"vartheta2", best.vartheta2}};
  out.doc["symmetry_check"] = {{"rotated_score", rotated}, {"residual", std::abs(rotated - best.score)}};
  out.doc["local_peaks"] = peaks.size();
  out.doc["resonant_count"] = resonant;
  Json pk = Json::array();
  for (const auto& p : peaks) pk.push_back({{"vartheta1", p.vartheta1}, {"vartheta2", p.vartheta2}, {"score", p.score}});
  out.doc["peaks"] = pk;

  out.line(fmt::format("j = {}, {} grid points", spin_label(tj), pts.size()));
  out.line(fmt::format("max {} at vartheta = ({}, {})", h6(best.score), h6(best.vartheta1), h6(best.vartheta2)));
  out.line(fmt::format("symmetry: rotated by 2pi/3 gives {} (residual {:.1e})", h6(rotated), std::abs(rotated - best.score)));
  out.line(fmt::format("local peaks on grid: {}, resonant points: {}", peaks.size(), resonant));
  if (!a.out.empty()) {
    std::ostringstream os;
    write_heatmap_csv(os, pts);
    write_text(a.out, os.str());
    out.doc["csv"] = a.out;
  }
}

struct OptArgs {
  std::string j = "7/2";
  int K = 3;
  std::string init = "guess";  // guess | resonant | midpoint | random | custom
  std::string theta;
  std::uint64_t seed = 0;
  double grad_tol = 1e-8;
  int max_iterations = 20000;
};

void cmd_spin_optimize(const OptArgs& a, Output& out) {
  const int tj = parse_two_j(a.j);
  if (a.grad_tol <= 0) throw ValidationError("--grad-tol must be positive");
  AngleSet init;
  if (!a.theta.empty() || a.init == "custom") {
    init = parse_angles(a.theta, a.K);
  } else if (a.init == "guess") {
    init = a.K == 3 ? global_peak_guess(tj) : resonant_init(tj, a.K);
  } else if (a.init == "resonant") {
    init = resonant_init(tj, a.K);
  } else if (a.init == "midpoint") {
    init = midpoint_init(tj, a.K);
  } else if (a.init == "random") {
    std::mt19937_64 rng(a.seed);
    std::uniform_real_distribution<double> u(0.0, kTwoPi);
    std::vector<double> th{0.0};
    for (int k = 1; k < a.K; ++k) th.push_back(u(rng));
    init = canonicalize(std::span<const double>(th));
  } else {
    throw ValidationError("unknown --init '" + a.init + "'");
  }
  const SpinProtocol sp(tj);
  const double start = sp.max_score(init);
  const auto r = optimize_angles(tj, init, {a.grad_tol, a.max_iterations, true});
  out.doc["j"] = spin_label(tj);
  out.doc["K"] = a.K;
  out.doc["init"] = {{"kind", a.theta.empty() ? a.init : "custom"}, {"angles", angles_json(init)}, {"score", start}};
  out.doc["angles"] = angles_json(r.angles);
  out.doc["score"] = r.value;
  out.doc["grad_norm"] = r.grad_norm;
  out.doc["iterations"] = r.iterations;
  out.doc["converged"] = r.converged;
  if (a.K == 3) {
    const auto v = to_vartheta(r.angles);
    out.doc["vartheta"] = {v[0], v[1]};
  }
  out.line(fmt::format("j = {}, K = {}", spin_label(tj), a.K));
  out.line(fmt::format("start {} score {}", angles_human(init), h6(start)));
  out.line(fmt::format("final {} score {}", angles_human(r.angles), h6(r.value)));
  out.line(fmt::format("iterations {}, grad norm {:.2e}, {}", r.iterations, r.grad_norm,
                       r.converged ? "converged" : "not converged"));
}

struct SdpArgs {
  std::string ja = "1/2", jb = "1/2";
  std::string theta = "2pi/3,4pi/3";
  double phi = std::nan("");
  int cutoff = 5;
  double residual_tol = 1e-7;
};

void cmd_sdp(const SdpArgs& a, Output& out) {
  const auto th = parse_angles(a.theta, 3);
  SdpOptions opt;
  if (a.residual_tol <= 0) throw ValidationError("--residual-tol must be positive");
  opt.residual_tol = a.residual_tol;
  auto fill = [&](const SdpSolution& s) {
    out.doc["theta1"] = th[1];
    out.doc["theta2"] = th[2];
    out.doc["value"] = s.value;
    out.doc["dual_bound"] = s.dual_bound;
    out.doc["residuals"] = {{"primal", s.primal_residual}, {"dual_gap", s.dual_gap_estimate}};
    out.doc["iterations"] = s.iterations;
    out.line(fmt::format("value {} (dual bound {}), {} iterations, residual {:.1e}", h6(s.value), h6(s.dual_bound),
                         s.iterations, s.primal_residual));
    out.line(fmt::format("classical bound 2/3 {}", s.value <= 2.0 / 3.0 + 1e-4 ? "respected" : "exceeded"));
  };
  if (!std::isnan(a.phi)) {
    if (a.cutoff < 1 || a.cutoff > 8) throw ValidationError("--cutoff must be in 1..8");
    out.doc["mode"] = "two_mode";
    out.doc["phi"] = a.phi;
    out.doc["cutoff"] = a.cutoff;
    out.line(fmt::format("two-mode bound, phi = {}, cutoff {}", h6(a.phi), a.cutoff));
    fill(sep_bound_two_mode(a.phi, th, a.cutoff, opt));
    return;
  }
  const int ta = parse_two_j(a.ja), tb = parse_two_j(a.jb);
  out.doc["jA"] = ta / 2.0;
  out.doc["jB"] = tb / 2.0;
  out.line(fmt::format("separable bound for {{{}, {}}} at {}", spin_label(ta), spin_label(tb), angles_human(th)));
  fill(sep_bound_spin(ta, tb, th, opt).solution);
}

void cmd_psi4(Output& out) {
  const auto s = psi4_scores();
  const double alpha = 49.0 * kPi / 60.0;
  const auto sep = sep_bound_ensemble({1, 1, 1, 1}, three_angles(alpha, 2 * alpha));
  const auto orig = gme_certify(s.p_original, sep.solution.value, 1e-3);
  const auto mod = gme_certify(s.p_modified, sep.solution.value, 1e-3);
  out.doc["p_original"] = s.p_original;
  out.doc["p_modified"] = s.p_modified;
  out.doc["classical_bound"] = 2.0 / 3.0;
  out.doc["sep_bound"] = {{"value", sep.solution.value}, {"jA", sep.two_jA / 2.0}, {"jB", sep.two_jB / 2.0}};
  out.doc["gme_original"] = {{"certified", orig.certified}, {"margin", orig.margin}};
  out.doc["gme_modified"] = {{"certified", mod.certified}, {"margin", mod.margin}};
  out.line(fmt::format("psi4 score at theta3: {} (classical 2/3)", h6(s.p_original)));
  out.line(fmt::format("psi4 score, modified protocol: {}", h6(s.p_modified)));
  out.line(fmt::format("biseparable bound {} -> GME {}", h6(sep.solution.value), mod.certified ? "certified" : "not certified"));
}

void cmd_chi4(Output& out) {
  const double x = chi4_score(), x3 = chi4_theta3_score();
  out.doc["score"] = x;
  out.doc["theta3_score"] = x3;
  out.doc["classical_bound"] = 2.0 / 3.0;
  out.doc["exceeds_classical"] = x > 2.0 / 3.0;
  out.line(fmt::format("chi4 score at (pi^2/4, pi^2/2): {} vs 2/3 = {}", h6(x), h6(2.0 / 3.0)));
  out.line(fmt::format("chi4 score at theta3: {}", h6(x3)));
}

struct WedgeArgs {
  double lower = 0.709364, upper = 0.730822;
  int K = 3;
};

void cmd_wedge(const WedgeArgs& a, Output& out) {
  const auto [lo, hi] = triple_wedge_bounds(a.lower, a.upper);
  const auto c = published_wedge_constants();
  out.doc["triple_wedge"] = {{"lower", lo}, {"upper", hi}};
  out.doc["negativity_volume_lower"] = negativity_volume_lower_bound(a.lower);
  out.doc["k_wedge"] = {{"K", a.K}, {"bound", k_wedge_bound(a.K, a.upper)}};
  out.doc["published"] = {{"single", c.single_wedge}, {"double", c.double_wedge}, {"old_triple", c.old_triple_wedge}};
  out.line(fmt::format("triple wedge deviation in [{}, {}]", h6(lo), h6(hi)));
  out.line(fmt::format("negativity volume >= {}", h6(negativity_volume_lower_bound(a.lower))));
  out.line(fmt::format("K = {} wedge bound {}", a.K, h6(k_wedge_bound(a.K, a.upper))));
}

struct SimArgs {
  std::string theta = "2pi/3,4pi/3";
  std::string scheme;
  double eps_minus = std::nan(""), eps_plus = std::nan("");
  int phi_points = 10000, r_points = 241;
};

std::vector<double> read_scheme(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw Error("cannot open scheme file '" + path + "'");
  std::vector<double> v;
  std::string tok;
  while (f >> tok) {
    std::stringstream ss(tok);
    std::string item;
    while (std::getline(ss, item, ','))
      if (!item.empty()) v.push_back(std::stod(item));
  }
  return v;
}

void cmd_simulate(const SimArgs& a, Output& out) {
  const auto th = parse_angles(a.theta, 3);
  CoarseSearch cfg;
  cfg.phi_points = a.phi_points;
  cfg.r_points = a.r_points;
  CoarseMax m;
  if (!a.scheme.empty()) {
    const auto s = validate_scheme(read_scheme(a.scheme));
    m = classical_coarse_max(th, s, cfg);
    out.doc["n_hat"] = s.n_hat();
    out.doc["zero_bin"] = {s.a(0), s.a(1)};
    out.line(fmt::format("scheme: zero bin [{}, {}), n_hat = {}", h6(s.a(0)), h6(s.a(1)), s.n_hat()));
  } else {
    const double em = std::isnan(a.eps_minus) ? 0.0 : a.eps_minus, ep = std::isnan(a.eps_plus) ? 0.0 : a.eps_plus;
    const auto b = validate_band(em, ep);
    m = classical_coarse_max(th, b, cfg);
    out.doc["band"] = {{"eps_minus", b.eps_minus}, {"eps_plus", b.eps_plus}};
    out.line(fmt::format("band [-{}, {}]", h6(b.eps_minus), h6(b.eps_plus)));
  }
  const auto sharp = classical_max_score(th);
  out.doc["angles"] = angles_json(th);
  out.doc["coarse_max"] = m.value();
  out.doc["half_units"] = m.half_units;
  out.doc["argmax"] = {{"r", m.r}, {"phi", m.phi}};
  out.doc["sharp_max"] = sharp.value();
  out.line(fmt::format("coarse-grained classical max {} ({}/6) at r = {}, phi = {}", h6(m.value()), m.half_units, h6(m.r),
                       h6(m.phi)));
  out.line(fmt::format("sharp classical max {}", h6(sharp.value())));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Precession protocol scores, bounds and scans"};
  app.require_subcommand(1);
  app.fallthrough();
  Output out;
  app.add_flag("--json", out.json, "Machine-readable JSON output");

  ClassicalArgs ca;
  auto* c1 = app.add_subcommand("classical", "Classical maximum score of an angle set");
  c1->add_option("--theta", ca.theta, "Angles theta_1..theta_{K-1} (radians or e.g. 2pi/3)")->required();
  c1->add_option("--K", ca.K, "Number of angles")->check(CLI::PositiveNumber);

  OscArgs oa;
  auto* c2 = app.add_subcommand("osc-bounds", "Oscillator lower/upper bounds on the three-angle score");
  c2->add_option("--n-hat", oa.n_hat, "Largest truncation index");
  c2->add_option("--csv", oa.csv, "Write the lower-bound sequence here");

  HeatArgs ha;
  auto* c3 = app.add_subcommand("spin-heatmap", "Score heatmap over the triangle");
  c3->add_option("--j", ha.j, "Spin, e.g. 3/2");
  c3->add_option("--resolution", ha.resolution, "Grid points per axis");
  c3->add_option("--out", ha.out, "CSV output path");

  OptArgs opa;
  auto* c4 = app.add_subcommand("spin-optimize", "Gradient ascent on the spin score");
  c4->add_option("--j", opa.j, "Spin, e.g. 7/2");
  c4->add_option("--K", opa.K, "Number of angles (odd)");
  c4->add_option("--init", opa.init, "guess | resonant | midpoint | random");
  c4->add_option("--theta", opa.theta, "Explicit starting angles");
  c4->add_option("--seed", opa.seed, "Seed for --init random");
  c4->add_option("--grad-tol", opa.grad_tol, "Gradient norm tolerance");
  c4->add_option("--max-iterations", opa.max_iterations, "Iteration cap");

  SdpArgs sa;
  auto* c5 = app.add_subcommand("sdp", "PPT bound for two spins, or for two modes with --phi");
  c5->add_option("--ja", sa.ja, "First spin");
  c5->add_option("--jb", sa.jb, "Second spin");
  c5->add_option("--theta", sa.theta, "Angles theta_1,theta_2");
  c5->add_option("--phi", sa.phi, "Beam-splitter angle for the two-mode bound");
  c5->add_option("--cutoff", sa.cutoff, "Levels per mode minus one (two-mode)");
  c5->add_option("--residual-tol", sa.residual_tol, "Primal residual tolerance");

  auto* c6 = app.add_subcommand("psi4", "Four-qubit example state and GME verdict");
  auto* c7 = app.add_subcommand("chi4", "Five-level oscillator example state");

  WedgeArgs wa;
  auto* c8 = app.add_subcommand("wedge", "Wigner wedge bounds from score bounds");
  c8->add_option("--lower", wa.lower, "Lower bound on the score");
  c8->add_option("--upper", wa.upper, "Upper bound on the score");
  c8->add_option("--K", wa.K, "Number of wedges for the K-wedge bound");

  SimArgs sm;
  auto* c9 = app.add_subcommand("simulate", "Coarse-grained classical maximum");
  c9->add_option("--theta", sm.theta, "Angles theta_1,theta_2");
  c9->add_option("--scheme", sm.scheme, "File with bin endpoints (whitespace or comma separated)");
  c9->add_option("--eps-minus", sm.eps_minus, "Lower half-score band width");
  c9->add_option("--eps-plus", sm.eps_plus, "Upper half-score band width");
  c9->add_option("--phi-points", sm.phi_points, "phi grid size");
  c9->add_option("--r-points", sm.r_points, "r grid size");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*c1) { out.command = "classical"; cmd_classical(ca, out); }
    else if (*c2) { out.command = "osc-bounds"; cmd_osc_bounds(oa, out); }
    else if (*c3) { out.command = "spin-heatmap"; cmd_spin_heatmap(ha, out); }
    else if (*c4) { out.command = "spin-optimize"; cmd_spin_optimize(opa, out); }
    else if (*c5) { out.command = "sdp"; cmd_sdp(sa, out); }
    else if (*c6) { out.command = "psi4"; cmd_psi4(out); }
    else if (*c7) { out.command = "chi4"; cmd_chi4(out); }
    else if (*c8) { out.command = "wedge"; cmd_wedge(wa, out); }
    else if (*c9) { out.command = "simulate"; cmd_simulate(sm, out); }
    out.emit();
  } catch (const std::exception& e) {
    std::cerr << "precession " << out.command << ": " << e.what() << "\n";
    return 2;
  }
  return 0;
}
