#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "pstlab/classical_walk.hpp"
#include "pstlab/dynamics.hpp"
#include "pstlab/entanglement.hpp"
#include "pstlab/errors.hpp"
#include "pstlab/exception.hpp"
#include "pstlab/graph.hpp"
#include "pstlab/hamiltonian.hpp"
#include "pstlab/io.hpp"
#include "pstlab/pst.hpp"
#include "pstlab/rng.hpp"
#include "pstlab/verify/reproduce.hpp"

namespace pstlab::cli {

namespace {

using io::Json;
using std::numbers::pi;

const std::vector<std::string> kSubcommands = {"build",        "evolve",         "fidelity-scan",
                                               "pst-check",    "classical-walk", "entangle",
                                               "phase",        "error-scan",     "reproduce"};

struct Globals {
  std::string format = "json";
  std::string output;
  std::uint64_t seed = 1;
  std::string config;
};

struct FamilyOptions {
  std::string family = "engineered";
  int n = 5;
  double lambda = 1.0;
  double gamma = 0.0;
  int sign = 1;
  int links = 1;
  int d = 2;
  std::string couplings;
  std::string graph_file;
  std::string hamiltonian_file;
  int a = -1;
  int b = -1;
};

struct Built {
  Hamiltonian h;
  std::optional<Graph> graph;
  std::optional<HeisenbergChain> heisenberg;
  std::string label;
  int a = 0;
  int b = 0;
};

// Plain rows for CSV output; the first row is the header.
using Table = std::vector<std::vector<std::string>>;

struct Report {
  Json json;
  Table table;  // empty: derive key,value rows from json
};

std::vector<double> parse_list(const std::string& text, const char* what) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != item.size()) throw CLI::ValidationError(what, "not a number: '" + item + "'");
    out.push_back(v);
  }
  return out;
}

void add_family_options(CLI::App* sub, FamilyOptions& f) {
  sub->add_option("--family", f.family, "System to build")
      ->check(CLI::IsMember({"uniform-chain", "engineered", "jy", "mixed", "heisenberg", "chain", "hypercube",
                             "scrambled", "graph", "hamiltonian"}))
      ->capture_default_str();
  sub->add_option("--n", f.n, "Chain length N_C (column count for scrambled)")->capture_default_str();
  sub->add_option("--lambda", f.lambda, "Coupling scale of the engineered families")->capture_default_str();
  sub->add_option("--gamma", f.gamma, "J_x weight of the mixed family")->capture_default_str();
  sub->add_option("--sign", f.sign, "Sign of the J_y term of the mixed family")->capture_default_str();
  sub->add_option("--links", f.links, "Hypercube links per dimension (1 or 2)")->capture_default_str();
  sub->add_option("--d", f.d, "Hypercube dimension")->capture_default_str();
  sub->add_option("--couplings", f.couplings, "Comma-separated chain couplings (chain, heisenberg)");
  sub->add_option("--graph", f.graph_file, "Graph JSON file (family graph)");
  sub->add_option("--hamiltonian", f.hamiltonian_file, "Hamiltonian JSON file (family hamiltonian)");
  sub->add_option("--a", f.a, "Sender vertex (default first)");
  sub->add_option("--b", f.b, "Receiver vertex (default last)");
}

Built build_family(const FamilyOptions& f, std::uint64_t seed) {
  const auto chain = [&](Hamiltonian h, std::string label) { return Built{std::move(h), {}, {}, std::move(label)}; };
  Built out = [&]() -> Built {
    if (f.family == "uniform-chain") return chain(uniform_chain(f.n), "uniform-chain");
    if (f.family == "engineered") return chain(engineered_chain(f.n, f.lambda), "engineered");
    if (f.family == "jy") return chain(jy_chain(f.n, f.lambda), "jy");
    if (f.family == "mixed") return chain(mixed_phase_chain(f.n, f.lambda, f.gamma, f.sign), "mixed");
    if (f.family == "chain") {
      const auto j = parse_list(f.couplings, "--couplings");
      return chain(chain_from_couplings(j), "chain");
    }
    if (f.family == "heisenberg") {
      const auto j = f.couplings.empty() ? engineered_couplings(f.n, f.lambda) : parse_list(f.couplings, "--couplings");
      HeisenbergChain hc = heisenberg_chain_with_field(j);
      Built b{hc.hamiltonian, {}, hc, "heisenberg"};
      return b;
    }
    if (f.family == "hamiltonian") {
      if (f.hamiltonian_file.empty()) throw CLI::ValidationError("--hamiltonian", "required for family hamiltonian");
      return chain(io::hamiltonian_from_json(io::read_json_file(f.hamiltonian_file)), "hamiltonian");
    }
    Graph g;
    if (f.family == "hypercube") {
      g = hypercube(f.links, f.d);
    } else if (f.family == "scrambled") {
      g = scrambled_hypercube(f.n, seed);
    } else {
      if (f.graph_file.empty()) throw CLI::ValidationError("--graph", "required for family graph");
      g = io::graph_from_json(io::read_json_file(f.graph_file));
    }
    Built b{from_graph(g), g, {}, f.family};
    return b;
  }();
  out.a = f.a < 0 ? 0 : f.a;
  out.b = f.b < 0 ? out.h.dim() - 1 : f.b;
  if (out.a >= out.h.dim() || out.b >= out.h.dim()) throw Error(ErrorKind::kIndex, "vertex out of range");
  return out;
}

Json system_json(const Built& s) {
  Json j{{"family", s.label}, {"n", s.h.dim()}, {"a", s.a}, {"b", s.b}};
  return j;
}

void flatten(const Json& j, const std::string& prefix, Table& rows) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) flatten(v, prefix.empty() ? k : prefix + "." + k, rows);
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "." + std::to_string(i), rows);
  } else if (j.is_number_float()) {
    rows.push_back({prefix, io::format_fixed17(j.get<double>())});
  } else if (j.is_string()) {
    rows.push_back({prefix, j.get<std::string>()});
  } else {
    rows.push_back({prefix, j.dump()});
  }
}

void write_table(std::ostream& out, const Table& t) {
  for (const auto& row : t) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << row[i];
    out << '\n';
  }
}

void emit(const Globals& g, const Report& r, std::ostream& out) {
  std::ofstream file;
  std::ostream* dest = &out;
  if (!g.output.empty()) {
    file.open(g.output);
    if (!file) throw Error(ErrorKind::kConfiguration, "cannot write " + g.output);
    dest = &file;
  }
  if (g.format == "json") {
    *dest << r.json.dump(2) << '\n';
  } else if (!r.table.empty()) {
    write_table(*dest, r.table);
  } else {
    Table rows{{"key", "value"}};
    flatten(r.json, "", rows);
    write_table(*dest, rows);
  }
}

std::string num(double x) { return io::format_fixed17(x); }

Json matrix4_json(const Eigen::Matrix4cd& m) { return io::complex_matrix_to_json(m); }

std::string to_string(SearchStatus s) {
  switch (s) {
    case SearchStatus::kFound: return "found";
    case SearchStatus::kNone: return "none";
    case SearchStatus::kInconclusive: return "inconclusive";
  }
  return "unknown";
}

Report cmd_build(const Built& s) {
  Report r;
  r.json = system_json(s);
  r.json["hamiltonian"] = io::hamiltonian_to_json(s.h);
  if (s.graph) r.json["graph"] = io::graph_to_json(*s.graph);
  if (s.heisenberg) {
    r.json["field"] = s.heisenberg->field;
    r.json["exchange_diagonal"] = s.heisenberg->diagonal;
    r.json["vacuum_energy"] = s.heisenberg->vacuum_energy;
  }
  r.table.push_back({"i", "j", "re", "im"});
  const auto& m = s.h.matrix();
  for (int i = 0; i < s.h.dim(); ++i) {
    for (int k = 0; k < s.h.dim(); ++k) {
      if (m(i, k) != Complex(0.0)) r.table.push_back({std::to_string(i), std::to_string(k), num(m(i, k).real()), num(m(i, k).imag())});
    }
  }
  return r;
}

Report cmd_evolve(const Built& s, double t, int site) {
  if (site < 0) site = s.a;
  if (site >= s.h.dim()) throw Error(ErrorKind::kIndex, "initial vertex out of range");
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(s.h.dim());
  psi[site] = 1.0;
  const Eigen::VectorXcd out = evolve(diagonalize(s.h), psi, t);
  Report r;
  r.json = system_json(s);
  r.json["t"] = t;
  r.json["initial"] = site;
  Json re = Json::array(), im = Json::array(), ab = Json::array();
  r.table.push_back({"vertex", "re", "im", "abs"});
  for (int i = 0; i < out.size(); ++i) {
    re.push_back(out[i].real());
    im.push_back(out[i].imag());
    ab.push_back(std::abs(out[i]));
    r.table.push_back({std::to_string(i), num(out[i].real()), num(out[i].imag()), num(std::abs(out[i]))});
  }
  r.json["re"] = re;
  r.json["im"] = im;
  r.json["abs"] = ab;
  return r;
}

Report cmd_fidelity_scan(const Built& s, double t_max, int samples) {
  if (samples < 2) throw Error(ErrorKind::kDomain, "need at least two samples");
  const FidelityTrace trace = sample_trace(diagonalize(s.h), s.a, s.b, t_max, samples, s.label);
  Report r;
  r.json = io::trace_to_json(trace);
  std::ostringstream csv;
  io::write_trace_csv(csv, trace);
  std::istringstream lines(csv.str());
  std::string line;
  while (std::getline(lines, line)) {
    std::vector<std::string> row;
    std::stringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) row.push_back(cell);
    r.table.push_back(std::move(row));
  }
  return r;
}

Report cmd_pst_check(const Built& s, double t_max, int grid, double tol) {
  const PstCertificate cert =
      grid > 0 ? pst_certificate(s.h, s.a, s.b, t_max, grid, tol) : pst_certificate(s.h, s.a, s.b, t_max, tol);
  Report r;
  r.json = system_json(s);
  r.json["verdict"] = to_string(cert.verdict);
  r.json["t0"] = cert.t0;
  r.json["magnitude"] = cert.magnitude;
  r.json["phase"] = cert.phase;
  r.json["symmetry"] = to_string(cert.symmetry);
  r.json["note"] = cert.note;
  r.json["t_max"] = t_max;
  r.json["tol"] = tol;
  if (cert.rationality) {
    Json pairs = Json::array();
    for (const auto& p : cert.rationality->pairs) {
      pairs.push_back({{"i", p.i}, {"ratio", p.ratio}, {"p", p.approx.p}, {"q", p.approx.q},
                       {"residual", p.residual}, {"rational", p.rational}});
    }
    r.json["rationality"] = {{"overall", to_string(cert.rationality->overall)},
                             {"caveat", RationalityReport::kCaveat},
                             {"tol", cert.rationality->tol},
                             {"q_max", cert.rationality->q_max},
                             {"pairs", pairs}};
  }
  return r;
}

Report cmd_classical_walk(int d, std::uint64_t samples, std::uint64_t seed) {
  const WalkEstimate est = ctrw_hitting_mc(d, samples, seed);
  Report r;
  r.json = {{"d", d},
            {"samples", samples},
            {"seed", seed},
            {"mean", est.mean},
            {"standard_error", est.standard_error},
            {"mean_jumps", est.mean_jumps},
            {"analytic", est.analytic}};
  r.json["exact"] = d <= kMaxExactDimension ? Json(exact_mean_hitting(d)) : Json();
  return r;
}

Eigen::Matrix4cd random_density(std::uint64_t seed) {
  auto gen = make_stream(seed, 0);
  Eigen::Matrix4cd g;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) g(i, j) = Complex(2.0 * uniform01(gen) - 1.0, 2.0 * uniform01(gen) - 1.0);
  }
  Eigen::Matrix4cd rho = g * g.adjoint();
  return rho / rho.trace().real();
}

Eigen::Matrix4cd named_input(const std::string& input, std::uint64_t seed) {
  Eigen::Matrix4cd rho = Eigen::Matrix4cd::Zero();
  if (input == "bell-phi-plus") {
    rho(0, 0) = rho(0, 3) = rho(3, 0) = rho(3, 3) = 0.5;
  } else if (input == "zero") {
    rho(0, 0) = 1.0;
  } else if (input == "maximally-mixed") {
    rho = 0.25 * Eigen::Matrix4cd::Identity();
  } else if (input == "random") {
    rho = random_density(seed);
  } else {
    const auto h = io::hamiltonian_from_json(io::read_json_file(input));
    if (h.dim() != 4) throw Error(ErrorKind::kParse, "density matrix must be 4 x 4");
    rho = h.matrix();
  }
  return rho;
}

std::optional<double> parse_time(const std::string& text) {
  if (text.empty() || text == "auto") return std::nullopt;
  const auto v = parse_list(text, "--t");
  if (v.size() != 1) throw CLI::ValidationError("--t", "expected a number or 'auto'");
  return v[0];
}

Report cmd_entangle(const Built& s, const std::string& mode, std::optional<double> t, double t_max,
                    const std::string& input, std::uint64_t seed) {
  if (s.a != 0 || s.b != s.h.dim() - 1) throw Error(ErrorKind::kUnsupported, "entanglement runs end to end");
  Report r;
  r.json = system_json(s);
  r.json["mode"] = mode;
  if (mode == "bell") {
    const BellTransfer bt = t ? bell_transfer_at(s.h, *t) : bell_transfer(s.h, t_max);
    r.json["t"] = bt.t0;
    r.json["overlap"] = {{"re", bt.overlap.real()}, {"im", bt.overlap.imag()}, {"abs", std::abs(bt.overlap)}};
    return r;
  }
  double time = 0.0;
  if (t) {
    time = *t;
  } else {
    const auto cert = pst_certificate(s.h, s.a, s.b, t_max);
    if (cert.verdict != Verdict::kPerfect) throw Error(ErrorKind::kPrecondition, "transfer not certified; pass --t");
    time = cert.t0;
  }
  r.json["t"] = time;
  const double phi = std::arg(transfer_amplitude(diagonalize(s.h), s.a, s.b, time));
  r.json["transport_phase"] = phi;
  if (mode == "distribute") {
    const TwoQubitDensity rho = distribute_entanglement(s.h, time);
    r.json["concurrence"] = concurrence(rho);
    r.json["rho"] = matrix4_json(rho.matrix());
    return r;
  }
  const TwoQubitDensity rho0(named_input(input, seed));
  r.json["input"] = input;
  const bool split = mode == "split";
  const TwoQubitDensity moved = split ? density_matrix_split(s.h, rho0, time) : parallel_chain_transfer(s.h, rho0, time);
  const TwoQubitDensity fixed = correct_phases(moved, split ? 0.0 : phi, phi);
  r.json["rho_in"] = matrix4_json(rho0.matrix());
  r.json["rho_out"] = matrix4_json(moved.matrix());
  r.json["rho_corrected"] = matrix4_json(fixed.matrix());
  r.json["max_deviation"] = (fixed.matrix() - rho0.matrix()).cwiseAbs().maxCoeff();
  r.json["concurrence_in"] = concurrence(rho0);
  r.json["concurrence_out"] = concurrence(moved);
  return r;
}

Report cmd_phase(const FamilyOptions& f, const std::string& mode, double phi) {
  Report r;
  const double t0 = pi / f.lambda;
  r.json = {{"n", f.n}, {"lambda", f.lambda}, {"t0", t0}, {"mode", mode}};
  if (mode == "transport") {
    const Hamiltonian h = mixed_phase_chain(f.n, f.lambda, f.gamma, f.sign);
    r.json["gamma"] = f.gamma;
    r.json["sign"] = f.sign;
    r.json["magnitude"] = std::abs(transfer_amplitude(diagonalize(h), 0, f.n - 1, t0));
    r.json["phase"] = phase_during_transfer(h, f.lambda);
    r.json["rotation_phase"] = rotation_phase(f.n, f.gamma, f.sign);
  } else {
    const Hamiltonian h = engineered_chain(f.n, f.lambda);
    const double b = field_for_phase(phi, f.n, t0);
    r.json["target_phase"] = phi;
    r.json["field"] = b;
    r.json["simulated_phase"] = fielded_phase(h, b, t0);
  }
  return r;
}

Report cmd_error_scan(const FamilyOptions& f, const std::string& kind, int points, std::optional<double> max_x,
                      const std::string& deltas_text, int trials, std::uint64_t seed) {
  if (f.family != "engineered") throw Error(ErrorKind::kUnsupported, "error scans use the engineered chain");
  Report r;
  const double t0 = pi / f.lambda;
  r.json = {{"n", f.n}, {"lambda", f.lambda}, {"t0", t0}, {"mode", kind}};
  Json rows = Json::array();
  if (kind == "timing") {
    if (f.n < 2) throw Error(ErrorKind::kInvalidSize, "chain needs at least two sites");
    if (points < 1) throw Error(ErrorKind::kDomain, "need at least one point");
    const double x_max = max_x ? *max_x : std::sqrt(0.1 / std::max(1, f.n - 1));
    std::vector<double> deltas;
    for (int k = 1; k <= points; ++k) deltas.push_back(x_max * t0 * k / points);
    const auto scan = errors::timing_error_scan(f.n, f.lambda, deltas);
    r.table.push_back({"dt", "x", "exact", "approx", "deficit_exact", "deficit_approx"});
    for (const auto& p : scan.points) {
      rows.push_back({{"dt", p.parameter}, {"x", p.parameter / t0}, {"exact", p.exact}, {"approx", p.approx}});
      r.table.push_back({num(p.parameter), num(p.parameter / t0), num(p.exact), num(p.approx), num(1.0 - p.exact),
                         num(1.0 - p.approx)});
    }
  } else {
    const Spectrum spec = diagonalize(engineered_chain(f.n, f.lambda));
    const auto deltas = parse_list(deltas_text, "--deltas");
    r.table.push_back({"delta", "t0_delta", "worst", "linear", "sample_mean", "sample_max", "outside_small_regime"});
    for (double delta : deltas) {
      const auto res = errors::disorder_error(spec, 0, t0, delta, trials, seed);
      double mean = 0.0, mx = 0.0;
      for (double x : res.samples) {
        mean += x;
        mx = std::max(mx, x);
      }
      if (!res.samples.empty()) mean /= static_cast<double>(res.samples.size());
      rows.push_back({{"delta", delta}, {"worst", res.worst}, {"linear", res.linear_estimate},
                      {"sample_mean", mean}, {"sample_max", mx}, {"outside_small_regime", res.outside_small_regime}});
      r.table.push_back({num(delta), num(t0 * delta), num(res.worst), num(res.linear_estimate), num(mean), num(mx),
                         res.outside_small_regime ? "true" : "false"});
    }
  }
  r.json["points"] = rows;
  return r;
}

std::string registry_listing() {
  std::string s = "known ids:";
  for (const auto& c : verify::criteria()) s += " " + c.id;
  return s;
}

}  // namespace

std::vector<std::string> config_tokens(const std::string& path) {
  const Json j = io::read_json_file(path);
  if (!j.is_object()) throw Error(ErrorKind::kParse, path + ": config must be a JSON object");
  std::vector<std::string> tokens;
  const auto scalar = [&](const Json& v) -> std::string {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_number_float()) {
      std::ostringstream ss;
      ss.precision(17);
      ss << v.get<double>();
      return ss.str();
    }
    return v.dump();
  };
  for (const auto& [key, v] : j.items()) {
    if (key == "command" || key == "config") continue;
    if (v.is_boolean()) {
      if (v.get<bool>()) tokens.push_back("--" + key);
      continue;
    }
    std::string value;
    if (v.is_array()) {
      for (std::size_t i = 0; i < v.size(); ++i) value += (i ? "," : "") + scalar(v[i]);
    } else {
      value = scalar(v);
    }
    tokens.push_back("--" + key);
    tokens.push_back(value);
  }
  return tokens;
}

int run(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
  CLI::App app{"pstlab: perfect state transfer in spin networks", "pstlab"};
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
  app.add_option("--output", g.output, "Write results to this file instead of stdout");
  app.add_option("--seed", g.seed, "Seed for random sampling")->capture_default_str();
  app.add_option("--config", g.config, "JSON file whose members mirror the flags; flags win");

  FamilyOptions fam;
  int site = -1;
  double t_max = 20.0;
  int samples = 1001;
  int grid = 0;
  double tol = kDefaultPeakTol;
  int walk_d = 2;
  std::uint64_t walk_samples = 100'000;
  std::string ent_mode = "split";
  std::string phase_mode = "transport";
  std::string ent_t = "auto";
  std::string input = "bell-phi-plus";
  std::optional<double> evolve_t;
  double phi = 0.0;
  std::string scan_mode = "timing";
  int points = 11;
  std::optional<double> max_x;
  std::string deltas = "0.001,0.002,0.005,0.01,0.016";
  int trials = 1000;
  std::vector<std::string> ids;
  bool verbose = false;
  bool list = false;

  auto* build = app.add_subcommand("build", "Emit the Hamiltonian (and graph) of a family");
  add_family_options(build, fam);

  auto* evolve_cmd = app.add_subcommand("evolve", "Amplitudes at time t, or the f_ab trace on [0, t_max]");
  add_family_options(evolve_cmd, fam);
  evolve_cmd->add_option("--t", evolve_t, "Single evolution time (all vertex amplitudes)");
  evolve_cmd->add_option("--site", site, "Initial vertex for --t (default --a)");
  evolve_cmd->add_option("--t-max", t_max, "Trace horizon when --t is absent")->capture_default_str();
  evolve_cmd->add_option("--samples", samples, "Trace samples when --t is absent")->capture_default_str();

  auto* scan = app.add_subcommand("fidelity-scan", "Sample f_ab(t) on an even grid of [0, t_max]");
  add_family_options(scan, fam);
  scan->add_option("--t-max", t_max, "Scan horizon")->capture_default_str();
  scan->add_option("--samples", samples, "Number of samples")->capture_default_str();

  auto* check = app.add_subcommand("pst-check", "Certify perfect transfer between a and b");
  add_family_options(check, fam);
  check->add_option("--t-max", t_max, "Search horizon")->capture_default_str();
  check->add_option("--grid", grid, "Coarse grid size (default 2048 per unit time)");
  check->add_option("--tol", tol, "Tolerance on 1 - |f|")->capture_default_str();

  auto* walk = app.add_subcommand("classical-walk", "Classical hitting time on the two-link hypercube");
  walk->add_option("--d", walk_d, "Dimension")->capture_default_str();
  walk->add_option("--samples", walk_samples, "Monte Carlo samples")->capture_default_str();

  auto* ent = app.add_subcommand("entangle", "Bell transfer, entanglement distribution and state transport");
  add_family_options(ent, fam);
  ent->add_option("--mode", ent_mode, "bell, distribute, split or parallel")
      ->check(CLI::IsMember({"bell", "distribute", "split", "parallel"}))
      ->capture_default_str();
  ent->add_option("--t", ent_t, "Time, or 'auto' for the certified transfer time")->capture_default_str();
  ent->add_option("--t-max", t_max, "Certification horizon")->capture_default_str();
  ent->add_option("--input", input,
                  "bell-phi-plus, zero, maximally-mixed, random (from --seed) or a 4 x 4 JSON {n, re, im} file")
      ->capture_default_str();

  auto* phase = app.add_subcommand("phase", "Transport phases from J_x/J_y mixing or a uniform field");
  add_family_options(phase, fam);
  phase->add_option("--mode", phase_mode, "transport or field")
      ->check(CLI::IsMember({"transport", "field"}))
      ->capture_default_str();
  phase->add_option("--phi", phi, "Target phase for --mode field")->capture_default_str();

  auto* errs = app.add_subcommand("error-scan", "Timing and disorder error scans of the engineered chain");
  add_family_options(errs, fam);
  errs->add_option("--mode", scan_mode, "timing or disorder")
      ->check(CLI::IsMember({"timing", "disorder"}))
      ->capture_default_str();
  errs->add_option("--points", points, "Timing offsets sampled")->capture_default_str();
  errs->add_option("--max-x", max_x, "Largest dt / t0 (default sqrt(0.1 / (N_C - 1)))");
  errs->add_option("--deltas", deltas, "Comma-separated disorder strengths")->capture_default_str();
  errs->add_option("--trials", trials, "Random disorder draws per strength")->capture_default_str();

  auto* repro = app.add_subcommand("reproduce", "Run registered verification checks");
  repro->add_option("ids", ids, "Check ids (default: all)")->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
  repro->add_flag("--verbose", verbose, "Print every measurement");
  repro->add_flag("--list", list, "List the registry");

  for (auto* sub : app.get_subcommands([](CLI::App*) { return true; })) sub->fallthrough();

  std::vector<std::string> args = raw_args;
  try {
    // Config tokens go right after the subcommand so explicit flags, which
    // come later, take precedence under the TakeLast policy.
    std::string config_path;
    for (std::size_t i = 0; i < args.size(); ++i) {
      if (args[i] == "--config" && i + 1 < args.size()) config_path = args[i + 1];
      if (args[i].rfind("--config=", 0) == 0) config_path = args[i].substr(9);
    }
    if (!config_path.empty()) {
      const auto tokens = config_tokens(config_path);
      auto pos = std::find_if(args.begin(), args.end(), [](const std::string& a) {
        return std::find(kSubcommands.begin(), kSubcommands.end(), a) != kSubcommands.end();
      });
      if (pos == args.end()) {
        const Json j = io::read_json_file(config_path);
        if (j.contains("command") && j["command"].is_string()) {
          args.insert(args.begin(), j["command"].get<std::string>());
          pos = args.begin();
        }
      }
      if (pos != args.end()) args.insert(pos + 1, tokens.begin(), tokens.end());
    }
  } catch (const Error& e) {
    err << "error (" << to_string(e.kind()) << "): " << e.what() << '\n';
    return kExitDomain;
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n' << "run 'pstlab --help' for usage\n";
    return kExitUsage;
  }

  try {
    Report report;
    if (*repro) {
      if (list) {
        for (const auto& c : verify::criteria()) out << c.id << "  " << c.title << '\n';
        return kExitOk;
      }
      std::vector<std::string> todo = ids;
      if (todo.empty() || (todo.size() == 1 && todo[0] == "all")) {
        todo.clear();
        for (const auto& c : verify::criteria()) todo.push_back(c.id);
      }
      for (const auto& id : todo) {
        const auto& all = verify::criteria();
        if (std::none_of(all.begin(), all.end(), [&](const auto& c) { return c.id == id; })) {
          err << "usage error: unknown check '" << id << "'; " << registry_listing() << '\n';
          return kExitUsage;
        }
      }
      bool ok = true;
      Json results = Json::array();
      std::ostringstream text;
      for (const auto& id : todo) {
        const auto res = verify::run_criterion(id, g.seed);
        ok = ok && res.pass;
        verify::print_result(text, res, verbose);
        Json ms = Json::array();
        for (const auto& m : res.measurements) {
          ms.push_back({{"label", m.label}, {"expected", m.expected}, {"obtained", m.obtained},
                        {"tolerance", m.tolerance}, {"pass", m.pass}});
        }
        results.push_back({{"id", res.id}, {"title", res.title}, {"pass", res.pass}, {"measurements", ms}});
      }
      report.json = {{"seed", g.seed}, {"pass", ok}, {"results", results}};
      // Human-readable lines unless JSON was asked for explicitly.
      const bool explicit_json = std::find(args.begin(), args.end(), "--format") != args.end() && g.format == "json";
      if (explicit_json || g.format == "csv") {
        if (g.format == "csv") {
          report.table.push_back({"id", "label", "expected", "obtained", "tolerance", "pass"});
          for (const auto& res : results) {
            for (const auto& m : res["measurements"]) {
              report.table.push_back({res["id"].get<std::string>(), m["label"].get<std::string>(),
                                      num(m["expected"].get<double>()), num(m["obtained"].get<double>()),
                                      num(m["tolerance"].get<double>()), m["pass"].get<bool>() ? "true" : "false"});
            }
          }
        }
        emit(g, report, out);
      } else if (!g.output.empty()) {
        std::ofstream file(g.output);
        if (!file) throw Error(ErrorKind::kConfiguration, "cannot write " + g.output);
        file << text.str();
      } else {
        out << text.str();
      }
      return ok ? kExitOk : kExitDomain;
    }

    if (*walk) {
      report = cmd_classical_walk(walk_d, walk_samples, g.seed);
    } else if (*phase) {
      report = cmd_phase(fam, phase_mode, phi);
    } else if (*errs) {
      report = cmd_error_scan(fam, scan_mode, points, max_x, deltas, trials, g.seed);
    } else {
      const Built sys = build_family(fam, g.seed);
      if (*build) report = cmd_build(sys);
      else if (*evolve_cmd) report = evolve_t ? cmd_evolve(sys, *evolve_t, site) : cmd_fidelity_scan(sys, t_max, samples);
      else if (*scan) report = cmd_fidelity_scan(sys, t_max, samples);
      else if (*check) report = cmd_pst_check(sys, t_max, grid, tol);
      else if (*ent) report = cmd_entangle(sys, ent_mode, parse_time(ent_t), t_max, input, g.seed);
    }
    emit(g, report, out);
    return kExitOk;
  } catch (const CLI::ValidationError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << "error (" << to_string(e.kind()) << "): " << e.what() << '\n';
    return kExitDomain;
  }
}

}  // namespace pstlab::cli
