// qgf: Fisher-information toolkit for (beta, mu) estimation in quantum gases.
//
// Subcommands: fisher, scan, sample, bec, regime. Output rows echo the full
// resolved configuration (SI units unless --reduced) and carry a versioned
// schema tag. Exit codes: 0 ok, 2 validation, 3 model range, 4 convergence.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <sstream>
#include <thread>

#include "emit.hpp"
#include "qgf/condensate.hpp"
#include "qgf/constants.hpp"
#include "qgf/eos.hpp"
#include "qgf/estimation.hpp"
#include "qgf/gas_model.hpp"
#include "qgf/interactions.hpp"
#include "qgf/lattice_sums.hpp"
#include "units.hpp"

using namespace qgf;
using namespace qgf_cli;

namespace {

constexpr double kPi = 3.14159265358979323846;
const double kNan = std::numeric_limits<double>::quiet_NaN();

struct OutputOptions {
  std::string format = "csv";
  std::string path;
};

struct GasOptions {
  std::string stat = "bose";
  std::string conf = "box";
  int dim = 3;
  std::string species;
  double mass = 0.0;
  std::vector<std::string> lengths;
  std::string omega;
  std::string temperature;
  double beta = 0.0;
  double mu = kNan;
  double target_n = 0.0;
  bool reduced = false;

  void add_common(CLI::App* cmd) {
    cmd->add_option("--stat", stat, "statistics: fermi|bose")
        ->check(CLI::IsMember({"fermi", "bose"}));
    cmd->add_option("--conf", conf, "confinement: box|trap|dirichlet")
        ->check(CLI::IsMember({"box", "trap", "dirichlet"}));
    cmd->add_option("--d", dim, "dimension 1..3")->check(CLI::Range(1, 3));
    cmd->add_option("--species", species, "Li6|Na23|Rb87 (sets the mass)");
    cmd->add_option("--mass", mass, "particle mass in kg (overrides --species)");
    cmd->add_option("--L", lengths,
                    "box side length(s) with unit suffix, e.g. 20um (repeatable)");
    cmd->add_option("--omega", omega,
                    "trap frequencies as comma list in Hz, e.g. 0.65,1.2,1.81Hz "
                    "(angular frequencies 2 pi f are used)");
    cmd->add_flag("--reduced", reduced, "reduced units: hbar = k_B = 1, plain numbers");
  }

  void add_thermo(CLI::App* cmd, bool with_n = true) {
    cmd->add_option("--T", temperature, "temperature with unit suffix, e.g. 450pK");
    cmd->add_option("--beta", beta, "inverse temperature 1/(k_B T) directly");
    cmd->add_option("--mu", mu, "chemical potential (J, or reduced units)");
    if (with_n) {
      cmd->add_option("--N", target_n,
                      "target mean particle number (inverts the equation of state)");
    }
  }

  GasSpec resolve_spec() const {
    GasSpec s;
    s.statistics = stat == "fermi" ? Statistics::Fermi : Statistics::Bose;
    s.confinement = conf == "trap"
                        ? Confinement::HarmonicTrap
                        : (conf == "dirichlet" ? Confinement::DirichletBox
                                               : Confinement::PeriodicBox);
    s.dimension = dim;
    s.unit_system = reduced ? UnitSystem::Reduced : UnitSystem::SI;
    if (!species.empty()) s.mass = species_mass_kg(species);
    if (mass > 0.0) s.mass = mass;
    if (s.mass <= 0.0) {
      if (reduced) {
        s.mass = 1.0;
      } else {
        throw_validation("a mass is required: --species or --mass");
      }
    }
    if (s.confinement == Confinement::HarmonicTrap) {
      if (omega.empty()) throw_validation("trap confinement requires --omega");
      std::vector<double> freqs =
          reduced ? parse_list(omega, +[](const std::string& t) {
              return parse_with_units(t, nullptr, 0, "frequency");
            })
                  : parse_list(omega, &parse_frequency);
      if (!reduced) {
        for (double& f : freqs) f *= 2.0 * kPi;  // Hz -> rad/s
      }
      if (freqs.size() == 1) freqs.assign(dim, freqs[0]);
      s.geometry = freqs;
    } else {
      if (lengths.empty()) throw_validation("box confinement requires --L");
      std::vector<double> ls;
      for (const std::string& t : lengths) {
        ls.push_back(reduced ? parse_with_units(t, nullptr, 0, "length")
                             : parse_length(t));
      }
      if (ls.size() == 1) ls.assign(dim, ls[0]);
      s.geometry = ls;
    }
    s.validate();
    return s;
  }

  double resolve_beta(const GasSpec& s) const {
    if (beta > 0.0) return beta;
    if (temperature.empty()) throw_validation("either --T or --beta is required");
    const double t = reduced ? parse_with_units(temperature, nullptr, 0, "temperature")
                             : parse_temperature(temperature);
    if (!(t > 0.0)) throw_validation("temperature must be positive");
    return 1.0 / (s.kb() * t);
  }

  void echo(std::vector<Cell>* cells, const GasSpec& s, double beta_val) const {
    cells->push_back({"units", reduced ? "reduced" : "si", true});
    cells->push_back({"stat", statistics_name(s.statistics), true});
    cells->push_back({"conf", confinement_name(s.confinement), true});
    cells->push_back({"d", std::to_string(s.dimension), false});
    cells->push_back({"mass", num10(s.mass), false});
    std::string geom;
    for (size_t i = 0; i < s.geometry.size(); ++i) {
      geom += (i ? ";" : "") + num10(s.geometry[i]);
    }
    cells->push_back({"geometry", geom, true});
    cells->push_back({"t_temp", num10(1.0 / (s.kb() * beta_val)), false});
    cells->push_back({"beta", num10(beta_val), false});
  }
};

std::unique_ptr<std::ostream> open_output(const OutputOptions& out, std::ostream** os) {
  if (out.path.empty()) {
    *os = &std::cout;
    return nullptr;
  }
  auto f = std::make_unique<std::ofstream>(out.path);
  if (!*f) throw_validation("cannot open output file: " + out.path);
  *os = f.get();
  return f;
}

int worker_count(size_t n) {
  unsigned hw = std::thread::hardware_concurrency();
  if (hw == 0) hw = 1;
  if (const char* env = std::getenv("QGF_THREADS")) {
    const long cap = std::strtol(env, nullptr, 10);
    if (cap > 0) hw = std::min<unsigned>(hw, static_cast<unsigned>(cap));
  }
  return static_cast<int>(std::min<size_t>(hw, std::max<size_t>(1, n / 8)));
}

// Evaluate grid rows in parallel, emit in grid order.
void parallel_rows(size_t n, const std::function<std::vector<Cell>(size_t)>& make,
                   RowSink* sink) {
  std::vector<std::vector<Cell>> rows(n);
  const int workers = worker_count(n);
  if (workers <= 1) {
    for (size_t i = 0; i < n; ++i) rows[i] = make(i);
  } else {
    std::vector<std::thread> pool;
    const size_t chunk = (n + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
      const size_t lo = w * chunk, hi = std::min(n, lo + chunk);
      if (lo < hi) {
        pool.emplace_back([&, lo, hi] {
          for (size_t i = lo; i < hi; ++i) rows[i] = make(i);
        });
      }
    }
    for (auto& t : pool) t.join();
  }
  for (auto& r : rows) sink->row(r);
}

double logspace(double lo, double hi, size_t i, size_t n) {
  return lo * std::pow(hi / lo, n > 1 ? static_cast<double>(i) / (n - 1) : 0.0);
}

// ---------------------------------------------------------------------------
int run_fisher(const GasOptions& gas, bool condensed, bool symmetry_breaking,
               const OutputOptions& out) {
  const GasSpec spec = gas.resolve_spec();
  const double beta = gas.resolve_beta(spec);

  std::ostream* os;
  auto holder = open_output(out, &os);
  RowSink sink(*os, out.format == "json");

  std::vector<Cell> cells;
  cells.push_back({"schema", "qgf.fisher.v1", true});
  gas.echo(&cells, spec, beta);

  double mu = gas.mu;
  double mean_n = gas.target_n > 0.0 ? gas.target_n : kNan;
  FisherMatrix2 f;
  std::string regime = "?";
  double t_c = kNan, fraction = kNan;

  if (condensed) {
    regime = "condensed";
    if (gas.target_n > 0.0) {
      t_c = critical_temperature(spec, density(spec, gas.target_n));
      const double t = 1.0 / (spec.kb() * beta);
      const CondensedState cs =
          make_condensed_state(spec, t, t_c, gas.target_n, symmetry_breaking);
      fraction = cs.fraction;
      mu = cs.mu_eff;
      f = condensed_fisher(spec, cs, gas.target_n);
    } else {
      f.f_bb = condensed_fbb(spec, beta);
      f.f_bm = kNan;
      f.f_mm = kNan;
      mu = kNan;
    }
  } else {
    if (gas.target_n > 0.0 && std::isnan(mu)) {
      mu = solve_mu(spec, beta, gas.target_n).mu;
    }
    if (std::isnan(mu)) throw_validation("fisher: provide --mu or --N");
    const ThermoPoint pt{beta, mu};
    mean_n = mean_particle_number(spec, pt);
    f = fisher_continuum(spec, pt);
    regime = regime_name(classify_regime(spec, pt, mean_n).regime);
  }

  cells.push_back({"mu", num10(mu), false});
  cells.push_back({"mean_n", num10(mean_n), false});
  cells.push_back({"regime", regime, true});
  cells.push_back({"f_bb", num10(f.f_bb), false});
  cells.push_back({"f_bm", num10(f.f_bm), false});
  cells.push_back({"f_mm", num10(f.f_mm), false});
  cells.push_back({"rel_temp_err", num10(1.0 / (beta * std::sqrt(f.f_bb))), false});
  cells.push_back({"t_c", num10(t_c), false});
  cells.push_back({"fraction", num10(fraction), false});
  sink.row(cells);
  return 0;
}

// ---------------------------------------------------------------------------
int run_regime(const GasOptions& gas, const OutputOptions& out) {
  const GasSpec spec = gas.resolve_spec();
  const double beta = gas.resolve_beta(spec);
  double mu = gas.mu;
  if (gas.target_n > 0.0 && std::isnan(mu)) mu = solve_mu(spec, beta, gas.target_n).mu;
  if (std::isnan(mu)) throw_validation("regime: provide --mu or --N");
  const ThermoPoint pt{beta, mu};
  const double mean_n =
      gas.target_n > 0.0 ? gas.target_n : mean_particle_number(spec, pt);
  const RegimeReport rep = classify_regime(spec, pt, mean_n);

  std::ostream* os;
  auto holder = open_output(out, &os);
  RowSink sink(*os, out.format == "json");
  std::vector<Cell> cells;
  cells.push_back({"schema", "qgf.regime.v1", true});
  gas.echo(&cells, spec, beta);
  cells.push_back({"mu", num10(mu), false});
  cells.push_back({"mean_n", num10(mean_n), false});
  cells.push_back({"regime", regime_name(rep.regime), true});
  cells.push_back({"continuum_bound", num10(rep.continuum_bound), false});
  cells.push_back({"ground_bound", num10(rep.ground_bound), false});
  cells.push_back({"fugacity", num10(rep.fugacity), false});
  sink.row(cells);
  return 0;
}

// ---------------------------------------------------------------------------
struct ScanOptions {
  std::string preset;
  double n_min = 1e3, n_max = 1e7;
  std::string t_min = "1nK", t_max = "1mK";
  std::string l_min = "1um", l_max = "500um";
  size_t points = 60;
  std::string rho = "13e12cm-3";
  std::string alpha = "10um-1";
  double ell = 0.0;
  std::vector<double> couplings = {0.0, 2.93e-40, 2.93e-38};
};

int run_scan(const GasOptions& gas_in, const ScanOptions& scan, const OutputOptions& out) {
  std::ostream* os;
  auto holder = open_output(out, &os);
  RowSink sink(*os, out.format == "json");

  if (scan.preset == "fig1" || scan.preset == "fig2") {
    // Optimal relative temperature error of a degenerate Fermi gas against
    // temperature (fig1) or box size (fig2), with the low-T and classical
    // reference values.
    GasOptions gas = gas_in;
    if (gas.stat.empty()) gas.stat = "fermi";
    if (gas.species.empty() && gas.mass == 0.0 && !gas.reduced) gas.species = "Li6";
    if (gas.lengths.empty()) gas.lengths = {"20um"};
    if (gas.target_n <= 0.0) gas.target_n = 1000.0;
    const bool size_scan = scan.preset == "fig2";
    if (size_scan && gas.temperature.empty() && gas.beta == 0.0) gas.temperature = "1uK";
    const double t_lo = parse_temperature(scan.t_min), t_hi = parse_temperature(scan.t_max);
    const double l_lo = parse_length(scan.l_min), l_hi = parse_length(scan.l_max);
    parallel_rows(scan.points, [&](size_t i) {
      GasOptions g = gas;
      if (size_scan) {
        g.lengths = {num10(logspace(l_lo, l_hi, i, scan.points)) + "m"};
      }
      const GasSpec spec = g.resolve_spec();
      const double beta = size_scan ? g.resolve_beta(spec)
                                    : 1.0 / (spec.kb() * logspace(t_lo, t_hi, i, scan.points));
      const ThermoPoint pt = solve_mu(spec, beta, g.target_n);
      const FisherMatrix2 f = fisher_continuum(spec, pt);
      std::vector<Cell> cells;
      cells.push_back({"schema", size_scan ? "qgf.scan.fig2.v1" : "qgf.scan.fig1.v1", true});
      g.echo(&cells, spec, beta);
      cells.push_back({"mean_n", num10(g.target_n), false});
      cells.push_back({"mu", num10(pt.mu), false});
      cells.push_back({"rel_temp_err", num10(1.0 / (beta * std::sqrt(f.f_bb))), false});
      double lowt = kNan;
      if (beta * pt.mu >= 10.0) {
        lowt = 1.0 / (beta * std::sqrt(fisher_lowT_fermi(spec, pt).f_bb));
      }
      cells.push_back({"rel_temp_err_lowt", num10(lowt), false});
      const FisherMatrix2 cl = classical_fisher(spec, pt).second;
      cells.push_back({"rel_temp_err_classical",
                       num10(1.0 / (beta * std::sqrt(cl.f_bb))), false});
      return cells;
    }, &sink);
    return 0;
  }

  if (scan.preset == "fig3" || scan.preset == "fig4") {
    // Upper bounds of F_mm/beta^2 for Bose gases near condensation onset,
    // d = 1, 2, 3, with the shot-noise line and the T = 0 envelope.
    const bool trap = scan.preset == "fig4";
    parallel_rows(scan.points, [&](size_t i) {
      const double n = logspace(scan.n_min, scan.n_max, i, scan.points);
      std::vector<Cell> cells;
      cells.push_back({"schema", trap ? "qgf.scan.fig4.v1" : "qgf.scan.fig3.v1", true});
      cells.push_back({"conf", trap ? "trap" : "box", true});
      cells.push_back({"n", num10(n), false});
      const ThermoPoint pt{1.0, -1e-9};
      for (int d = 1; d <= 3; ++d) {
        GasSpec s;
        s.statistics = Statistics::Bose;
        s.confinement = trap ? Confinement::HarmonicTrap : Confinement::PeriodicBox;
        s.dimension = d;
        s.geometry.assign(d, 1.0);
        s.unit_system = UnitSystem::Reduced;
        const double bound = continuum_fisher_bound_mm(s, pt, n);
        cells.push_back({"bound_d" + std::to_string(d), num10(bound), false});
      }
      cells.push_back({"shot_noise", num10(n), false});
      cells.push_back({"t0_envelope", num10(n + n * n), false});
      return cells;
    }, &sink);
    return 0;
  }

  if (scan.preset == "fig5") {
    SlabSpec slab;
    slab.rho = parse_density3(scan.rho);
    slab.alpha = parse_inv_length(scan.alpha);
    slab.ell = scan.ell;
    const double mass = gas_in.species.empty() ? species_mass_kg("Rb87")
                                               : species_mass_kg(gas_in.species);
    const auto [tc3, tc2] = slab_critical_temperatures(slab, mass);
    const double temps[3] = {tc3, 0.5 * tc3, tc2};
    const char* labels[3] = {"fmm_b2_tc3", "fmm_b2_tc3_half", "fmm_b2_tc2"};
    parallel_rows(scan.points, [&](size_t i) {
      const double n = logspace(std::max(scan.n_min, 1e4), std::max(scan.n_max, 1e8),
                                i, scan.points);
      std::vector<Cell> cells;
      cells.push_back({"schema", "qgf.scan.fig5.v1", true});
      cells.push_back({"rho", num10(slab.rho), false});
      cells.push_back({"alpha", num10(slab.alpha), false});
      cells.push_back({"tc3_kelvin", num10(tc3), false});
      cells.push_back({"tc2_kelvin", num10(tc2), false});
      cells.push_back({"n", num10(n), false});
      for (int k = 0; k < 3; ++k) {
        const double beta = 1.0 / (kBoltzmann * temps[k]);
        const double fpp = slab_fisher_per_particle(slab, mass, temps[k], n);
        cells.push_back({labels[k], num10(n * fpp / (beta * beta)), false});
      }
      cells.push_back({"shot_noise", num10(n), false});
      cells.push_back({"t0_envelope", num10(n + n * n), false});
      return cells;
    }, &sink);
    return 0;
  }

  if (scan.preset == "fig6") {
    GasOptions gas = gas_in;
    if (gas.species.empty() && gas.mass == 0.0) gas.species = "Rb87";
    if (gas.lengths.empty()) gas.lengths = {"4.5um"};
    if (gas.temperature.empty()) gas.temperature = "510nK";
    ContactSpec cs;
    cs.mass = gas.species.empty() ? gas.mass : species_mass_kg(gas.species);
    cs.unit_system = UnitSystem::SI;
    cs.l_x = parse_length(gas.lengths[0]);
    cs.beta = 1.0 / (kBoltzmann * parse_temperature(gas.temperature));
    // Untouched global defaults: use a window that shows the curves tracking
    // the ideal one and then dropping at their perturbative breakdown.
    const bool default_range = scan.n_min == 1e3 && scan.n_max == 1e7;
    const double n_lo = default_range ? 10.0 : scan.n_min;
    const double n_hi = default_range ? 2e4 : scan.n_max;
    parallel_rows(scan.points, [&](size_t i) {
      const double n = logspace(n_lo, n_hi, i, scan.points);
      std::vector<Cell> cells;
      cells.push_back({"schema", "qgf.scan.fig6.v1", true});
      cells.push_back({"l_x", num10(cs.l_x), false});
      cells.push_back({"t_temp", num10(1.0 / (kBoltzmann * cs.beta)), false});
      cells.push_back({"n", num10(n), false});
      const double b2 = cs.beta * cs.beta;
      for (size_t k = 0; k < scan.couplings.size(); ++k) {
        ContactSpec c = cs;
        c.c = scan.couplings[k];
        c.rho = n / c.l_x;
        const ContactFisherResult r = contact_fisher_mm(c, n);
        cells.push_back({"fmm_b2_c" + std::to_string(k), num10(r.value / b2), false});
        cells.push_back({"breakdown_c" + std::to_string(k),
                         r.breakdown ? "true" : "false", out.format != "json"});
      }
      cells.push_back({"shot_noise", num10(n), false});
      cells.push_back({"t0_envelope", num10(n + n * n), false});
      return cells;
    }, &sink);
    return 0;
  }

  throw_validation("unknown scan preset: " + scan.preset);
}

// ---------------------------------------------------------------------------
struct SampleOptions {
  std::uint64_t m = 10000;
  std::uint64_t seed = 1;
  int replications = 1;
  int cutoff = 100;
  std::string batch_out;
};

int run_sample(const GasOptions& gas, const SampleOptions& so, const OutputOptions& out) {
  const GasSpec spec = gas.resolve_spec();
  const double beta = gas.resolve_beta(spec);
  if (std::isnan(gas.mu)) throw_validation("sample: --mu is required");
  const ThermoPoint truth{beta, gas.mu};
  ModeCutoff cut;
  cut.max_index = so.cutoff;

  std::ostream* os;
  auto holder = open_output(out, &os);
  RowSink sink(*os, out.format == "json");

  std::vector<double> beta_hats, mu_hats;
  double sum_bb = 0, sum_bm = 0, sum_mm = 0;
  for (int rep = 0; rep < so.replications; ++rep) {
    const SampleBatch batch =
        sample_grand_canonical(spec, truth, so.m, so.seed + rep, cut);
    if (rep == 0 && !so.batch_out.empty()) {
      const bool binary = so.batch_out.size() > 5 &&
                          so.batch_out.compare(so.batch_out.size() - 5, 5, ".qgfb") == 0;
      std::ofstream bf(so.batch_out, binary ? std::ios::binary : std::ios::out);
      if (!bf) throw_validation("cannot open batch file: " + so.batch_out);
      binary ? write_batch_binary(batch, bf) : write_batch_csv(batch, bf);
    }
    double mean_n = 0, mean_e = 0;
    for (const auto& d : batch.draws) {
      mean_n += static_cast<double>(d.n);
      mean_e += d.e;
    }
    mean_n /= static_cast<double>(so.m);
    mean_e /= static_cast<double>(so.m);
    MlEstimate est;
    try {
      est = max_likelihood_estimate(batch, spec, truth, cut);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::OutOfModelRange) {
        throw Error(ErrorCode::OutOfModelRange,
                    std::string(e.what()) + " (moments: mean_n=" + num10(mean_n) +
                        ", mean_e=" + num10(mean_e) + ")");
      }
      throw;
    }
    beta_hats.push_back(est.estimate.beta);
    mu_hats.push_back(est.estimate.mu);

    std::vector<Cell> cells;
    cells.push_back({"schema", "qgf.sample.v1", true});
    gas.echo(&cells, spec, beta);
    cells.push_back({"rep", std::to_string(rep), false});
    cells.push_back({"seed", std::to_string(so.seed + rep), false});
    cells.push_back({"m", std::to_string(so.m), false});
    cells.push_back({"mean_n", num10(mean_n), false});
    cells.push_back({"mean_e", num10(mean_e), false});
    cells.push_back({"beta_hat", num10(est.estimate.beta), false});
    cells.push_back({"mu_hat", num10(est.estimate.mu), false});
    cells.push_back({"var_beta_emp", "nan", false});
    cells.push_back({"cov_emp", "nan", false});
    cells.push_back({"var_mu_emp", "nan", false});
    cells.push_back({"crb_var_beta", "nan", false});
    cells.push_back({"crb_cov", "nan", false});
    cells.push_back({"crb_var_mu", "nan", false});
    sink.row(cells);
    (void)sum_bb; (void)sum_bm; (void)sum_mm;
  }

  if (so.replications > 1) {
    const double r = so.replications;
    double mb = 0, mm = 0;
    for (int i = 0; i < so.replications; ++i) {
      mb += beta_hats[i];
      mm += mu_hats[i];
    }
    mb /= r;
    mm /= r;
    double vb = 0, vm = 0, cv = 0;
    for (int i = 0; i < so.replications; ++i) {
      vb += (beta_hats[i] - mb) * (beta_hats[i] - mb);
      vm += (mu_hats[i] - mm) * (mu_hats[i] - mm);
      cv += (beta_hats[i] - mb) * (mu_hats[i] - mm);
    }
    vb /= (r - 1.0);
    vm /= (r - 1.0);
    cv /= (r - 1.0);
    const FisherMatrix2 f = discrete_fisher(spec, truth, cut);
    const Covariance2 crb = cramer_rao_inverse(f);
    const double m = static_cast<double>(so.m);

    std::vector<Cell> cells;
    cells.push_back({"schema", "qgf.sample.v1", true});
    gas.echo(&cells, spec, beta);
    cells.push_back({"rep", "-1", false});
    cells.push_back({"seed", std::to_string(so.seed), false});
    cells.push_back({"m", std::to_string(so.m), false});
    cells.push_back({"mean_n", num10(mb), false});  // mean of estimates
    cells.push_back({"mean_e", num10(mm), false});
    cells.push_back({"beta_hat", num10(mb), false});
    cells.push_back({"mu_hat", num10(mm), false});
    cells.push_back({"var_beta_emp", num10(vb), false});
    cells.push_back({"cov_emp", num10(cv), false});
    cells.push_back({"var_mu_emp", num10(vm), false});
    cells.push_back({"crb_var_beta", num10(crb.var_beta / m), false});
    cells.push_back({"crb_cov", num10(crb.cov / m), false});
    cells.push_back({"crb_var_mu", num10(crb.var_mu / m), false});
    sink.row(cells);
  }
  return 0;
}

// ---------------------------------------------------------------------------
struct BecOptions {
  std::string mode = "normal";
  std::string rho;
  double rho_plain = 0.0;
  std::string alpha = "10um-1";
  double pressure = 0.0;
  double ell = 0.0;
  double mean_n = 0.0;
};

int run_bec(const GasOptions& gas, const BecOptions& bo, const OutputOptions& out) {
  std::ostream* os;
  auto holder = open_output(out, &os);
  RowSink sink(*os, out.format == "json");
  std::vector<Cell> cells;

  if (bo.mode == "normal") {
    const GasSpec spec = gas.resolve_spec();
    const double rho = spec.is_box() && !bo.rho.empty() ? parse_density3(bo.rho)
                                                        : bo.rho_plain;
    if (!(rho > 0.0)) throw_validation("bec normal: provide --rho (or --rho-plain)");
    const double t_c = critical_temperature(spec, rho);
    cells.push_back({"schema", "qgf.bec.normal.v1", true});
    double beta = 0.0;
    double t = kNan, fraction = kNan;
    if (!gas.temperature.empty() || gas.beta > 0.0) {
      beta = gas.resolve_beta(spec);
      t = 1.0 / (spec.kb() * beta);
      if (t <= t_c) fraction = condensate_fraction(spec, t, t_c);
    }
    gas.echo(&cells, spec, beta > 0.0 ? beta : 1.0 / (spec.kb() * t_c));
    cells.push_back({"rho", num10(rho), false});
    cells.push_back({"t_c", num10(t_c), false});
    cells.push_back({"fraction", num10(fraction), false});
    sink.row(cells);
    return 0;
  }

  if (bo.mode == "isobaric") {
    if (!(bo.pressure > 0.0)) throw_validation("bec isobaric: provide --P");
    double mass = gas.mass;
    if (!gas.species.empty()) mass = species_mass_kg(gas.species);
    if (!(mass > 0.0)) throw_validation("bec isobaric: provide --species or --mass");
    const UnitSystem us = gas.reduced ? UnitSystem::Reduced : UnitSystem::SI;
    const double t_c = isobaric_transition(bo.pressure, mass, us);
    cells.push_back({"schema", "qgf.bec.isobaric.v1", true});
    cells.push_back({"mass", num10(mass), false});
    cells.push_back({"pressure", num10(bo.pressure), false});
    cells.push_back({"t_c", num10(t_c), false});
    double rho = kNan;
    if (!gas.temperature.empty()) {
      const double t = gas.reduced
                           ? parse_with_units(gas.temperature, nullptr, 0, "temperature")
                           : parse_temperature(gas.temperature);
      rho = isobaric_density(t, bo.pressure, mass, us);
      cells.push_back({"t_temp", num10(t), false});
    } else {
      cells.push_back({"t_temp", "nan", false});
    }
    cells.push_back({"density", num10(rho), false});
    sink.row(cells);
    return 0;
  }

  if (bo.mode == "slab") {
    SlabSpec slab;
    slab.rho = parse_density3(bo.rho.empty() ? "13e12cm-3" : bo.rho);
    slab.alpha = parse_inv_length(bo.alpha);
    slab.ell = bo.ell;
    double mass = gas.mass;
    if (!gas.species.empty()) mass = species_mass_kg(gas.species);
    if (!(mass > 0.0)) throw_validation("bec slab: provide --species or --mass");
    const auto [tc3, tc2] = slab_critical_temperatures(slab, mass);
    cells.push_back({"schema", "qgf.bec.slab.v1", true});
    cells.push_back({"mass", num10(mass), false});
    cells.push_back({"rho", num10(slab.rho), false});
    cells.push_back({"alpha", num10(slab.alpha), false});
    cells.push_back({"tc3", num10(tc3), false});
    cells.push_back({"tc2", num10(tc2), false});
    double fpp = kNan;
    if (!gas.temperature.empty() && bo.mean_n > 0.0) {
      fpp = slab_fisher_per_particle(slab, mass, parse_temperature(gas.temperature),
                                     bo.mean_n);
    }
    cells.push_back({"fisher_mm_per_particle", num10(fpp), false});
    sink.row(cells);
    return 0;
  }

  throw_validation("unknown bec mode: " + bo.mode);
}

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::Validation:
    case ErrorCode::Domain:
    case ErrorCode::SingularFisher:
    case ErrorCode::NegativeVariance:
    case ErrorCode::UnsupportedScenario:
      return 2;
    case ErrorCode::NoSolution:
    case ErrorCode::NoTransition:
    case ErrorCode::OutOfModelRange:
      return 3;
    case ErrorCode::CutoffTooSmall:
    case ErrorCode::ConvergenceFailure:
      return 4;
  }
  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"quantum-gas Fisher information toolkit"};
  app.require_subcommand(1);

  OutputOptions out;
  app.add_option("--format", out.format, "output format: csv|json")
      ->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--out", out.path, "write rows to a file instead of stdout");

  GasOptions fisher_gas;
  bool condensed = false, symmetry_breaking = false;
  CLI::App* fisher = app.add_subcommand("fisher", "Fisher matrix at one point");
  fisher_gas.add_common(fisher);
  fisher_gas.add_thermo(fisher);
  fisher->add_flag("--condensed", condensed, "condensed-phase evaluation");
  fisher->add_flag("--sym-breaking", symmetry_breaking,
                   "drop the ground-mode fluctuations (Delta^2 N_0 = 0)");

  GasOptions regime_gas;
  CLI::App* regime = app.add_subcommand("regime", "classify the physical regime");
  regime_gas.add_common(regime);
  regime_gas.add_thermo(regime);

  GasOptions scan_gas;
  ScanOptions scan;
  CLI::App* scan_cmd = app.add_subcommand("scan", "parameter sweeps (figure datasets)");
  scan_gas.add_common(scan_cmd);
  scan_gas.add_thermo(scan_cmd);
  scan_cmd->add_option("--preset", scan.preset, "fig1|fig2|fig3|fig4|fig5|fig6")
      ->required()
      ->check(CLI::IsMember({"fig1", "fig2", "fig3", "fig4", "fig5", "fig6"}));
  scan_cmd->add_option("--Nmin", scan.n_min, "lower <N> of the sweep");
  scan_cmd->add_option("--Nmax", scan.n_max, "upper <N> of the sweep");
  scan_cmd->add_option("--Tmin", scan.t_min, "lower temperature (fig1)");
  scan_cmd->add_option("--Tmax", scan.t_max, "upper temperature (fig1)");
  scan_cmd->add_option("--Lmin", scan.l_min, "smallest box size (fig2)");
  scan_cmd->add_option("--Lmax", scan.l_max, "largest box size (fig2)");
  scan_cmd->add_option("--points", scan.points, "grid points");
  scan_cmd->add_option("--rho", scan.rho, "slab density, e.g. 13e12cm-3 (fig5)");
  scan_cmd->add_option("--alpha", scan.alpha, "slab growth rate, e.g. 10um-1 (fig5)");
  scan_cmd->add_option("--ell", scan.ell, "slab characteristic length; 0 = lambda_T");
  scan_cmd->add_option("--c", scan.couplings, "contact couplings in J m (fig6)");

  GasOptions sample_gas;
  SampleOptions so;
  CLI::App* sample = app.add_subcommand("sample", "grand-canonical Monte Carlo + ML");
  sample_gas.add_common(sample);
  sample_gas.add_thermo(sample, /*with_n=*/false);
  sample->add_option("--m", so.m, "draws per batch");
  sample->add_option("--seed", so.seed, "base seed");
  sample->add_option("--replications", so.replications, "independent batches");
  sample->add_option("--cutoff", so.cutoff, "per-axis mode cutoff");
  sample->add_option("--batch-out", so.batch_out,
                     "write the first batch (.qgfb = binary framing, else csv)");

  GasOptions bec_gas;
  BecOptions bo;
  CLI::App* bec = app.add_subcommand("bec", "condensation transitions");
  bec_gas.add_common(bec);
  bec_gas.add_thermo(bec, /*with_n=*/false);
  bec->add_option("--mode", bo.mode, "normal|isobaric|slab")
      ->check(CLI::IsMember({"normal", "isobaric", "slab"}));
  bec->add_option("--rho", bo.rho, "density with suffix (m-3, cm-3, um-3)");
  bec->add_option("--rho-plain", bo.rho_plain, "density as a raw number (traps/reduced)");
  bec->add_option("--alpha", bo.alpha, "slab transverse growth rate");
  bec->add_option("--P", bo.pressure, "2D pressure (isobaric mode)");
  bec->add_option("--ell", bo.ell, "slab characteristic length; 0 = lambda_T");
  bec->add_option("--Nmean", bo.mean_n, "mean particle number (slab fisher)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    std::cerr << "{\"error\":\"VALIDATION\",\"message\":\"" << e.what() << "\"}\n";
    return 2;
  }

  try {
    if (fisher->parsed()) return run_fisher(fisher_gas, condensed, symmetry_breaking, out);
    if (regime->parsed()) return run_regime(regime_gas, out);
    if (scan_cmd->parsed()) return run_scan(scan_gas, scan, out);
    if (sample->parsed()) return run_sample(sample_gas, so, out);
    if (bec->parsed()) return run_bec(bec_gas, bo, out);
  } catch (const Error& e) {
    std::cerr << "{\"error\":\"" << error_code_name(e.code()) << "\",\"message\":\""
              << e.what() << "\"}\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "{\"error\":\"INTERNAL\",\"message\":\"" << e.what() << "\"}\n";
    return 1;
  }
  return 0;
}
