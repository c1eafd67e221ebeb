// gaqi_cli: circuit simulation, Schmidt analysis, channel checks and demos.
#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "gaqi.hpp"

using namespace gaqi;

namespace {

struct Common {
  std::string in, out;
  int qubits = 0;
  std::uint64_t seed = 1;
  double tol = 1e-12;
};

class Csv {
 public:
  explicit Csv(double tol) : tol_(tol) {}
  void header(std::initializer_list<std::string> cols) {
    if (!os_.str().empty()) os_ << "\n";
    row_strings(cols);
  }
  void row(const std::string& key, std::initializer_list<double> vals) {
    os_ << key;
    for (double v : vals) os_ << "," << fmt(v, tol_);
    os_ << "\n";
  }
  void row(const std::string& key, const std::string& val) { os_ << key << "," << val << "\n"; }
  void row_strings(std::initializer_list<std::string> cols) {
    bool first = true;
    for (auto& c : cols) {
      os_ << (first ? "" : ",") << c;
      first = false;
    }
    os_ << "\n";
  }
  std::string str() const { return os_.str(); }

 private:
  double tol_;
  std::ostringstream os_;
};

std::string read_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw DomainError("cannot open " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

void emit(const Common& c, const std::string& text) {
  if (c.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(c.out);
  if (!f) throw DomainError("cannot write " + c.out);
  f << text;
}

std::string bits(std::size_t idx, int n) {
  std::string s(static_cast<std::size_t>(n), '0');
  for (int q = 0; q < n; ++q)
    if ((idx >> (n - 1 - q)) & 1) s[static_cast<std::size_t>(q)] = '1';
  return s;
}

std::string label(std::size_t idx, int n) {
  std::string s;
  for (int q = n - 1; q >= 0; --q) s += "0xyz"[(idx >> (2 * q)) & 3];
  return s;
}

const char* yes_no(bool b) { return b ? "yes" : "no"; }

void write_ket(Csv& csv, const Ket& k) {
  auto p = k.phase_normalized();
  csv.header({"basis", "re", "im"});
  for (std::size_t i = 0; i < p.amplitudes().size(); ++i) csv.row(bits(i, k.qubits()), {p[i].real(), p[i].imag()});
}

CircuitProgram random_circuit(int n, int gates, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> kind(0, n > 1 ? 4 : 3), qubit(1, n);
  std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);
  std::normal_distribution<double> gauss;
  CircuitProgram prog;
  prog.n_qubits = n;
  for (int k = 0; k < gates; ++k) {
    Gate g{};
    switch (kind(rng)) {
      case 0: g.kind = Gate::Kind::Hadamard; break;
      case 1: g.kind = Gate::Kind::Not; break;
      case 2: g.kind = Gate::Kind::Phase; g.angle = angle(rng); break;
      case 3:
        g.kind = Gate::Kind::Rotation;
        g.axis = {gauss(rng), gauss(rng), gauss(rng)};
        g.angle = angle(rng);
        break;
      default: g.kind = Gate::Kind::Cnot; break;
    }
    g.qubits.push_back(qubit(rng));
    if (g.kind == Gate::Kind::Cnot) {
      int t;
      do t = qubit(rng);
      while (t == g.qubits[0]);
      g.qubits.push_back(t);
    }
    prog.gates.push_back(g);
  }
  return prog;
}

struct SimulateArgs {
  std::string initial;
  int random_gates = 0;
};

void cmd_simulate(const Common& c, const SimulateArgs& a) {
  CircuitProgram prog;
  std::mt19937_64 rng(c.seed);
  if (a.random_gates > 0) {
    prog = random_circuit(c.qubits ? c.qubits : 2, a.random_gates, rng);
  } else {
    if (c.in.empty()) throw DomainError("simulate needs --in or --random");
    std::ifstream f(c.in);
    if (!f) throw DomainError("cannot open " + c.in);
    prog = parse_circuit(f, c.qubits);
  }
  int n = prog.n_qubits;
  std::string init = a.initial.empty() ? std::string(static_cast<std::size_t>(n), '0') : a.initial;
  if (static_cast<int>(init.size()) != n) throw DomainError("initial bitstring width does not match the circuit");
  Ket start = Ket::from_bits(init);

  auto psi = run_circuit(prog, start);
  Ket out = ket_from_spinor(psi);

  // Oracle: the same circuit as matrix-vector products.
  std::vector<cplx> amps = start.amplitudes();
  for (auto& g : prog.gates) amps = represent(gate_element(g, n)) * amps;
  double residual = out.max_abs_diff(Ket(n, amps));

  Csv csv(c.tol);
  write_ket(csv, out);
  auto table = product_operator_expand(density_from_spinor(psi));
  csv.header({"term", "coefficient"});
  for (std::size_t i = 0; i < table.coeffs.size(); ++i)
    if (std::abs(table.coeffs[i]) > c.tol) csv.row(label(i, n), {table.coeffs[i]});
  csv.header({"quantity", "value"});
  csv.row("gates", {static_cast<double>(prog.gates.size())});
  csv.row("oracle_residual", fmt(residual));
  emit(c, csv.str());
}

struct SchmidtArgs {
  std::string bits;
  bool random = false;
};

Ket read_ket(const std::string& path) {
  std::istringstream in(read_file(path));
  std::vector<cplx> amps;
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    if (auto h = raw.find('#'); h != std::string::npos) raw.erase(h);
    for (auto& ch : raw)
      if (ch == ',') ch = ' ';
    std::istringstream ls(raw);
    std::vector<double> v;
    for (std::string t; ls >> t;) {
      try {
        std::size_t used = 0;
        v.push_back(std::stod(t, &used));
        if (used != t.size()) throw std::invalid_argument(t);
      } catch (const std::exception&) {
        throw ParseError(line, "bad number '" + t + "'");
      }
    }
    if (v.empty()) continue;
    if (v.size() > 2) throw ParseError(line, "expected `re [im]`");
    amps.push_back({v[0], v.size() == 2 ? v[1] : 0.0});
  }
  if (amps.size() != 4) throw DomainError("a two-qubit ket needs 4 amplitudes, got " + std::to_string(amps.size()));
  return Ket(2, amps);
}

void cmd_schmidt(const Common& c, const SchmidtArgs& a) {
  if (c.qubits && c.qubits != 2) throw DomainError("Schmidt analysis needs two qubits");
  std::optional<Ket> ket;
  if (a.random) {
    std::mt19937_64 rng(c.seed);
    std::normal_distribution<double> g;
    std::vector<cplx> v(4);
    for (auto& x : v) x = {g(rng), g(rng)};
    ket = Ket(2, v);
  } else if (!a.bits.empty()) {
    if (a.bits.size() != 2) throw DomainError("Schmidt analysis needs a two-qubit bitstring");
    ket = Ket::from_bits(a.bits);
  } else if (!c.in.empty()) {
    ket = read_ket(c.in);
  } else {
    throw DomainError("schmidt needs --in, --bits or --random");
  }
  Ket k = ket->normalized();
  auto psi = spinor_from_ket(k);
  auto f = schmidt_decompose(psi);
  double residual = density_from_spinor(reconstruct(f)).value().max_abs_diff(density_from_spinor(psi).value());
  double ket_residual = reconstruct_ket(f).max_abs_diff(k);

  Csv csv(c.tol);
  write_ket(csv, k);
  csv.header({"quantity", "value"});
  csv.row("theta", {f.theta});
  csv.row("phi", {f.phi});
  csv.row("vartheta", {f.vartheta});
  csv.row("varphi", {f.varphi});
  csv.row("varsigma", {f.varsigma});
  csv.row("tau", {f.tau});
  csv.row("v11", {f.v11});
  csv.row("v22", {f.v22});
  csv.row("tangle_varsigma", {tangle_invariant(psi).varsigma});
  csv.row("product", yes_no(is_product_state(psi, c.tol > 1e-8 ? c.tol : 1e-8)));
  csv.row("reconstruction_residual", fmt(std::max(residual, ket_residual)));
  emit(c, csv.str());
}

struct ChannelArgs {
  std::vector<double> lambda;
};

void write_affine(Csv& csv, const AffineMap1Q& m) {
  const char* ax = "xyz";
  for (int i = 0; i < 3; ++i) csv.row(std::string("t_") + ax[i], {m.t[i]});
  for (int mu = 0; mu < 3; ++mu)
    for (int i = 0; i < 3; ++i) csv.row(std::string("s_") + ax[mu] + ax[i], {m.s[mu][i]});
}

void write_tetrahedron(Csv& csv, const Vec3& lam) {
  csv.row("lambda_1", {lam[0]});
  csv.row("lambda_2", {lam[1]});
  csv.row("lambda_3", {lam[2]});
  auto t = tetrahedron_check(lam);
  csv.row("tetrahedron", t.inside ? "inside" : "outside");
  csv.row("weight_0", {t.weights[0]});
  csv.row("weight_x", {t.weights[1]});
  csv.row("weight_y", {t.weights[2]});
  csv.row("weight_z", {t.weights[3]});
}

void cmd_channel(const Common& c, const ChannelArgs& a) {
  Csv csv(c.tol);
  csv.header({"quantity", "value"});
  if (!a.lambda.empty()) {
    if (a.lambda.size() != 3) throw DomainError("--lambda takes three values");
    Vec3 lam{a.lambda[0], a.lambda[1], a.lambda[2]};
    AffineMap1Q m;
    for (int i = 0; i < 3; ++i) m.s[i][i] = lam[i];
    csv.row("qubits", {1});
    write_affine(csv, m);
    write_tetrahedron(csv, lam);
    csv.row("choi_min_eigenvalue", {cp_check_choi_diagonal(lam).min_eigenvalue});
    emit(c, csv.str());
    return;
  }
  if (c.in.empty()) throw DomainError("channel needs --in or --lambda");
  std::ifstream f(c.in);
  if (!f) throw DomainError("cannot open " + c.in);
  auto ch = parse_kraus(f, c.qubits);
  double tol = std::max(c.tol, 1e-12);
  csv.row("qubits", {static_cast<double>(ch.n_qubits)});
  csv.row("operators", {static_cast<double>(ch.ops.size())});
  bool normal = check_normal(ch, tol * 1e3);
  csv.row("normal", yes_no(normal));
  csv.row("unital", yes_no(check_unital(ch, tol * 1e3)));
  if (ch.n_qubits == 1) {
    auto qc = quaternion_conditions(ch, tol * 1e3);
    csv.row("quaternion_normal", yes_no(qc.normal()));
    csv.row("quaternion_unital", yes_no(qc.unital()));
    csv.row("choi_min_eigenvalue", {cp_check_choi(ch).min_eigenvalue});
    if (!normal) {
      emit(c, csv.str());
      return;
    }
    auto m = affine_form_probe(ch);
    write_affine(csv, m);
    Vec3 lam;
    try {
      lam = diagonal_eigenvalues(ch);
    } catch (const DomainError&) {
      lam = signed_singular_values(m.s);
    }
    write_tetrahedron(csv, lam);
  }
  emit(c, csv.str());
}

struct NmrArgs {
  std::vector<double> omega{2 * std::numbers::pi};
  double alpha = 1, gamma = 1, duration = 1;
  int samples = 100;
  std::string spectrum;
};

void cmd_demo_nmr(const Common& c, const NmrArgs& a) {
  auto r = nmr_fid(a.omega, a.alpha, a.gamma, a.duration, a.samples);
  Csv series(c.tol);
  series.header({"t", "mx", "closed_form"});
  double worst = 0;
  for (std::size_t k = 0; k < r.t.size(); ++k) {
    double cf = fid_closed_form(a.omega, a.alpha, a.gamma, r.t[k]);
    worst = std::max(worst, std::abs(cf - r.mx[k]));
    series.row(fmt(r.t[k]), {r.mx[k], cf});
  }
  auto mag = dft_magnitude(r.mx);
  Csv spectrum_csv(c.tol);
  spectrum_csv.header({"bin", "frequency", "magnitude"});
  for (std::size_t j = 0; j < mag.size(); ++j)
    spectrum_csv.row(std::to_string(j), {static_cast<double>(j) / a.duration, mag[j]});
  spectrum_csv.header({"quantity", "value"});
  std::string peaks;
  for (auto p : peak_bins(mag, a.omega.size())) peaks += (peaks.empty() ? "" : " ") + std::to_string(p);
  spectrum_csv.row("peak_bins", peaks);
  spectrum_csv.row("max_closed_form_error", fmt(worst));

  if (a.spectrum.empty()) {
    emit(c, series.str() + "\n" + spectrum_csv.str());
  } else {
    emit(c, series.str());
    Common sc = c;
    sc.out = a.spectrum;
    emit(sc, spectrum_csv.str());
  }
}

struct BoostArgs {
  std::optional<double> alpha, beta, epsilon;
  double lambda_min = -2, lambda_max = 2;
  int points = 41;
};

void cmd_demo_boost(const Common& c, const BoostArgs& a) {
  if (a.points < 2) throw DomainError("need at least two grid points");
  if (!(a.lambda_max > a.lambda_min)) throw DomainError("empty rapidity range");
  double half_beta_eps;
  if (a.alpha) {
    if (a.beta || a.epsilon) throw DomainError("give either --alpha or --beta/--epsilon");
    if (!(std::abs(*a.alpha) <= 1)) throw DomainError("|alpha| must not exceed 1");
    half_beta_eps = std::abs(*a.alpha) == 1 ? -std::copysign(std::numeric_limits<double>::infinity(), *a.alpha)
                                            : -std::atanh(*a.alpha);
  } else {
    if (!a.beta || !a.epsilon) throw DomainError("demo-boost needs --alpha or both --beta and --epsilon");
    half_beta_eps = *a.beta * *a.epsilon / 2;
  }
  double alpha = a.alpha ? *a.alpha : std::tanh(-half_beta_eps);
  Csv csv(c.tol);
  csv.header({"lambda", "rational", "tanh"});
  double worst = 0;
  for (int i = 0; i < a.points; ++i) {
    double l = a.lambda_min + (a.lambda_max - a.lambda_min) * i / (a.points - 1);
    double r = boost_polarization(alpha, l), t = boost_polarization_thermal(half_beta_eps, l);
    worst = std::max(worst, std::abs(r - t));
    csv.row(fmt(l), {r, t});
  }
  csv.header({"quantity", "value"});
  csv.row("alpha", {alpha});
  csv.row("max_discrepancy", fmt(worst));
  emit(c, csv.str());
}

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--in", c.in, "Input file");
  sub->add_option("--out", c.out, "Output file (default stdout)");
  sub->add_option("--qubits", c.qubits, "Qubit count (0 infers it)")->check(CLI::Range(0, kMaxCorrelatedQubits));
  sub->add_option("--seed", c.seed, "Random seed");
  sub->add_option("--tol", c.tol, "Values below this print as 0")->check(CLI::NonNegativeNumber);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Geometric-algebra quantum information toolkit"};
  app.set_config("--config", "", "File of `key = value` lines; [command] sections apply to one command");
  app.require_subcommand(1);

  Common common;

  SimulateArgs sim;
  auto* s = app.add_subcommand("simulate", "Run a circuit and report the final state");
  add_common(s, common);
  s->add_option("--initial", sim.initial, "Initial basis state as a bitstring (default all zeros)");
  s->add_option("--random", sim.random_gates, "Simulate a random circuit of this many gates instead of --in")
      ->check(CLI::NonNegativeNumber);

  SchmidtArgs sch;
  auto* d = app.add_subcommand("schmidt", "Schmidt factors of a two-qubit ket");
  add_common(d, common);
  d->add_option("--bits", sch.bits, "Basis state instead of --in");
  d->add_flag("--random", sch.random, "Analyse a random ket drawn from --seed");

  ChannelArgs cha;
  auto* ch = app.add_subcommand("channel", "Analyse a Kraus channel");
  add_common(ch, common);
  ch->add_option("--lambda", cha.lambda, "Analyse the diagonal map with these three eigenvalues instead of --in")
      ->delimiter(',')
      ->expected(3);

  NmrArgs nmr;
  auto* nm = app.add_subcommand("demo-nmr", "Free induction decay under a Zeeman Hamiltonian");
  add_common(nm, common);
  nm->add_option("--omega", nmr.omega, "Larmor frequencies, comma separated")->delimiter(',');
  nm->add_option("--alpha", nmr.alpha, "Initial polarization")->check(CLI::Range(-1.0, 1.0));
  nm->add_option("--gamma", nmr.gamma, "Gyromagnetic ratio");
  nm->add_option("--duration", nmr.duration, "Acquisition time");
  nm->add_option("--samples", nmr.samples, "Number of samples");
  nm->add_option("--spectrum", nmr.spectrum, "Write the spectrum to this file instead of after the series");

  BoostArgs bst;
  auto* bo = app.add_subcommand("demo-boost", "Polarization seen from a boosted frame");
  add_common(bo, common);
  bo->add_option("--alpha", bst.alpha, "Rest-frame polarization");
  bo->add_option("--beta", bst.beta, "Inverse temperature");
  bo->add_option("--epsilon", bst.epsilon, "Level splitting");
  bo->add_option("--lambda-min", bst.lambda_min, "Smallest rapidity");
  bo->add_option("--lambda-max", bst.lambda_max, "Largest rapidity");
  bo->add_option("--points", bst.points, "Grid points");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*s) cmd_simulate(common, sim);
    else if (*d) cmd_schmidt(common, sch);
    else if (*ch) cmd_channel(common, cha);
    else if (*nm) cmd_demo_nmr(common, nmr);
    else if (*bo) cmd_demo_boost(common, bst);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
