#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <fstream>
#include <sstream>

#include "qgf/condensate.hpp"
#include "qgf/constants.hpp"
#include "qgf/eos.hpp"
#include "qgf/estimation.hpp"
#include "qgf/gas_model.hpp"
#include "qgf/interactions.hpp"
#include "qgf/lattice_sums.hpp"
#include "qgf/polylog.hpp"

namespace py = pybind11;
using namespace qgf;

PYBIND11_MODULE(_qgf, m) {
  m.doc() = "Fisher information for (beta, mu) estimation in quantum gases";

  py::register_exception<Error>(m, "QgfError");

  py::enum_<Statistics>(m, "Statistics")
      .value("Fermi", Statistics::Fermi)
      .value("Bose", Statistics::Bose);
  py::enum_<Confinement>(m, "Confinement")
      .value("PeriodicBox", Confinement::PeriodicBox)
      .value("HarmonicTrap", Confinement::HarmonicTrap)
      .value("DirichletBox", Confinement::DirichletBox);
  py::enum_<UnitSystem>(m, "UnitSystem")
      .value("SI", UnitSystem::SI)
      .value("Reduced", UnitSystem::Reduced);
  py::enum_<Regime>(m, "Regime")
      .value("Classical", Regime::Classical)
      .value("QuantumContinuum", Regime::QuantumContinuum)
      .value("DiscreteRequired", Regime::DiscreteRequired)
      .value("Condensed", Regime::Condensed);
  py::enum_<PolylogRegime>(m, "PolylogRegime")
      .value("DirectSeries", PolylogRegime::DirectSeries)
      .value("FermiAsymptotic", PolylogRegime::FermiAsymptotic)
      .value("BoseSingular", PolylogRegime::BoseSingular);

  py::class_<GasSpec>(m, "GasSpec")
      .def(py::init([](Statistics st, Confinement conf, int d, std::vector<double> geometry,
                       double mass, UnitSystem units) {
             GasSpec s;
             s.statistics = st;
             s.confinement = conf;
             s.dimension = d;
             s.geometry = std::move(geometry);
             s.mass = mass;
             s.unit_system = units;
             s.validate();
             return s;
           }),
           py::arg("statistics"), py::arg("confinement"), py::arg("dimension"),
           py::arg("geometry"), py::arg("mass") = 1.0,
           py::arg("units") = UnitSystem::Reduced)
      .def_readwrite("statistics", &GasSpec::statistics)
      .def_readwrite("confinement", &GasSpec::confinement)
      .def_readwrite("dimension", &GasSpec::dimension)
      .def_readwrite("geometry", &GasSpec::geometry)
      .def_readwrite("mass", &GasSpec::mass)
      .def_readwrite("units", &GasSpec::unit_system)
      .def("volume", &GasSpec::volume)
      .def("mean_frequency", &GasSpec::mean_frequency)
      .def("thermal_wavelength", &GasSpec::thermal_wavelength, py::arg("beta"));

  py::class_<ThermoPoint>(m, "ThermoPoint")
      .def(py::init<double, double>(), py::arg("beta"), py::arg("mu"))
      .def_readwrite("beta", &ThermoPoint::beta)
      .def_readwrite("mu", &ThermoPoint::mu)
      .def("__repr__", [](const ThermoPoint& p) {
        return "ThermoPoint(beta=" + std::to_string(p.beta) +
               ", mu=" + std::to_string(p.mu) + ")";
      });

  py::class_<FisherMatrix2>(m, "FisherMatrix2")
      .def(py::init<double, double, double>(), py::arg("f_bb") = 0.0,
           py::arg("f_bm") = 0.0, py::arg("f_mm") = 0.0)
      .def_readwrite("f_bb", &FisherMatrix2::f_bb)
      .def_readwrite("f_bm", &FisherMatrix2::f_bm)
      .def_readwrite("f_mm", &FisherMatrix2::f_mm)
      .def("det", &FisherMatrix2::det)
      .def("positive_semidefinite", &FisherMatrix2::positive_semidefinite,
           py::arg("slack") = 1e-12);

  py::class_<GasObservables>(m, "GasObservables")
      .def_readonly("mean_n", &GasObservables::mean_n)
      .def_readonly("mean_h", &GasObservables::mean_h)
      .def_readonly("var_n", &GasObservables::var_n)
      .def_readonly("compressibility", &GasObservables::compressibility);

  py::class_<RegimeReport>(m, "RegimeReport")
      .def_readonly("regime", &RegimeReport::regime)
      .def_readonly("continuum_bound", &RegimeReport::continuum_bound)
      .def_readonly("ground_bound", &RegimeReport::ground_bound)
      .def_readonly("fugacity", &RegimeReport::fugacity);

  py::class_<PolylogResult>(m, "PolylogResult")
      .def_readonly("value", &PolylogResult::value)
      .def_readonly("regime_used", &PolylogResult::regime_used)
      .def_readonly("estimated_abs_error", &PolylogResult::estimated_abs_error)
      .def("__float__", [](const PolylogResult& r) { return r.value; });

  m.def("species_mass_kg", &species_mass_kg, py::arg("name"));
  m.def("zeta", &zeta, py::arg("s"));
  m.def(
      "polylog", [](double s, double z) { return polylog(s, z); }, py::arg("s"),
      py::arg("z"));
  m.def(
      "polylog_neg_exp", [](double s, double x) { return polylog_neg_exp(s, x); },
      py::arg("s"), py::arg("x"));
  m.def(
      "polylog_fermi_large",
      [](double s, double x, int order) { return polylog_fermi_large(s, x, order); },
      py::arg("s"), py::arg("x"), py::arg("order") = 2);
  m.def(
      "polylog_bose_singular",
      [](double s, double x, int order) { return polylog_bose_singular(s, x, order); },
      py::arg("s"), py::arg("x"), py::arg("order") = 2);

  m.def("mean_particle_number", &mean_particle_number, py::arg("spec"), py::arg("pt"));
  m.def("mean_energy", &mean_energy, py::arg("spec"), py::arg("pt"));
  m.def("fisher_continuum", &fisher_continuum, py::arg("spec"), py::arg("pt"));
  m.def("fisher_lowT_fermi", &fisher_lowT_fermi, py::arg("spec"), py::arg("pt"));
  m.def("classical_fisher", &classical_fisher, py::arg("spec"), py::arg("pt"));
  m.def("compressibility", &compressibility, py::arg("spec"), py::arg("pt"));
  m.def("density", &density, py::arg("spec"), py::arg("mean_n"));

  m.def("solve_mu", &solve_mu, py::arg("spec"), py::arg("beta"), py::arg("target_n"));
  m.def("bose_continuum_max_n", &bose_continuum_max_n, py::arg("spec"), py::arg("beta"));
  m.def(
      "classify_regime",
      [](const GasSpec& s, const ThermoPoint& p, double n) {
        return classify_regime(s, p, n);
      },
      py::arg("spec"), py::arg("pt"), py::arg("mean_n"));
  m.def("continuum_fisher_bound_mm", &continuum_fisher_bound_mm, py::arg("spec"),
        py::arg("pt"), py::arg("mean_n"));

  py::class_<ModeCutoff>(m, "ModeCutoff")
      .def(py::init([](int max_index, bool zeta_tail) {
             ModeCutoff c;
             c.max_index = max_index;
             c.tail_policy =
                 zeta_tail ? ModeCutoff::Tail::ZetaTail : ModeCutoff::Tail::Truncate;
             return c;
           }),
           py::arg("max_index") = 64, py::arg("zeta_tail") = false)
      .def_readwrite("max_index", &ModeCutoff::max_index);

  m.def("ground_energy", &ground_energy, py::arg("spec"));
  m.def("mode_energies", &mode_energies, py::arg("spec"), py::arg("cutoff"));
  m.def("discrete_sum_N", &discrete_sum_N, py::arg("spec"), py::arg("pt"), py::arg("cutoff"));
  m.def("discrete_sum_E", &discrete_sum_E, py::arg("spec"), py::arg("pt"), py::arg("cutoff"));
  m.def("discrete_sum_Fmm", &discrete_sum_Fmm, py::arg("spec"), py::arg("pt"),
        py::arg("cutoff"));
  m.def("discrete_fisher", &discrete_fisher, py::arg("spec"), py::arg("pt"),
        py::arg("cutoff"));
  m.def(
      "lattice_constant",
      [](int d, int cutoff, bool zeta_tail) {
        return lattice_constant(
            d, cutoff, zeta_tail ? ModeCutoff::Tail::ZetaTail : ModeCutoff::Tail::Truncate);
      },
      py::arg("d"), py::arg("cutoff") = 256, py::arg("zeta_tail") = false);
  m.def("discrete_dominant_N", &discrete_dominant_N, py::arg("spec"), py::arg("pt"));
  m.def("discrete_dominant_Fmm", &discrete_dominant_Fmm, py::arg("spec"), py::arg("pt"));
  m.def("harmonic_discrete_Fmm_2d", &harmonic_discrete_Fmm_2d, py::arg("spec"),
        py::arg("pt"));

  py::class_<CondensedState>(m, "CondensedState")
      .def_readonly("temperature", &CondensedState::temperature)
      .def_readonly("t_c", &CondensedState::t_c)
      .def_readonly("fraction", &CondensedState::fraction)
      .def_readonly("mu_eff", &CondensedState::mu_eff)
      .def_readwrite("symmetry_breaking", &CondensedState::symmetry_breaking);
  py::class_<SlabSpec>(m, "SlabSpec")
      .def(py::init([](double rho, double alpha, double l_z, double gamma_len, double ell) {
             SlabSpec s;
             s.rho = rho;
             s.alpha = alpha;
             s.l_z = l_z;
             s.gamma_len = gamma_len;
             s.ell = ell;
             return s;
           }),
           py::arg("rho"), py::arg("alpha"), py::arg("l_z") = 1.0,
           py::arg("gamma_len") = 1.0, py::arg("ell") = 0.0)
      .def_readwrite("rho", &SlabSpec::rho)
      .def_readwrite("alpha", &SlabSpec::alpha)
      .def_readwrite("ell", &SlabSpec::ell);

  m.def("critical_temperature", &critical_temperature, py::arg("spec"), py::arg("density"));
  m.def("condensate_fraction", &condensate_fraction, py::arg("spec"),
        py::arg("temperature"), py::arg("t_c"));
  m.def("make_condensed_state", &make_condensed_state, py::arg("spec"),
        py::arg("temperature"), py::arg("t_c"), py::arg("mean_n"),
        py::arg("symmetry_breaking") = false);
  m.def("condensed_fbb", &condensed_fbb, py::arg("spec"), py::arg("beta"));
  m.def("condensed_fisher", &condensed_fisher, py::arg("spec"), py::arg("state"),
        py::arg("mean_n"));
  m.def("isobaric_transition", &isobaric_transition, py::arg("pressure"), py::arg("mass"),
        py::arg("units") = UnitSystem::SI);
  m.def("isobaric_density", &isobaric_density, py::arg("temperature"), py::arg("pressure"),
        py::arg("mass"), py::arg("units") = UnitSystem::SI);
  m.def("slab_critical_temperatures", &slab_critical_temperatures, py::arg("slab"),
        py::arg("mass"), py::arg("units") = UnitSystem::SI);
  m.def("slab_fisher_per_particle", &slab_fisher_per_particle, py::arg("slab"),
        py::arg("mass"), py::arg("temperature"), py::arg("mean_n"),
        py::arg("units") = UnitSystem::SI);
  m.def("cigar_fisher_per_particle", &cigar_fisher_per_particle, py::arg("omega_y"),
        py::arg("omega_z"), py::arg("rho_t"), py::arg("beta"), py::arg("mu"),
        py::arg("units") = UnitSystem::SI);

  py::class_<MeanFieldSpec>(m, "MeanFieldSpec")
      .def(py::init([](double lambda, GasSpec base) {
             MeanFieldSpec s;
             s.lambda = lambda;
             s.base = std::move(base);
             return s;
           }),
           py::arg("lam"), py::arg("base"))
      .def_readwrite("lam", &MeanFieldSpec::lambda)
      .def_readwrite("base", &MeanFieldSpec::base);
  py::class_<ContactSpec>(m, "ContactSpec")
      .def(py::init([](double c, double rho, double beta, double l_x, double mass,
                       UnitSystem units) {
             ContactSpec s;
             s.c = c;
             s.rho = rho;
             s.beta = beta;
             s.l_x = l_x;
             s.mass = mass;
             s.unit_system = units;
             return s;
           }),
           py::arg("c"), py::arg("rho"), py::arg("beta"), py::arg("l_x"),
           py::arg("mass") = 1.0, py::arg("units") = UnitSystem::Reduced)
      .def_readwrite("c", &ContactSpec::c)
      .def_readwrite("rho", &ContactSpec::rho)
      .def_readwrite("beta", &ContactSpec::beta)
      .def_readwrite("l_x", &ContactSpec::l_x)
      .def("thermal_wavelength", &ContactSpec::thermal_wavelength)
      .def("gamma_coupling", &ContactSpec::gamma_coupling)
      .def("tau_degeneracy", &ContactSpec::tau_degeneracy);
  py::class_<ContactFisherResult>(m, "ContactFisherResult")
      .def_readonly("value", &ContactFisherResult::value)
      .def_readonly("ideal", &ContactFisherResult::ideal)
      .def_readonly("correction", &ContactFisherResult::correction)
      .def_readonly("gamma_ok", &ContactFisherResult::gamma_ok)
      .def_readonly("tau_ok", &ContactFisherResult::tau_ok)
      .def_readonly("breakdown", &ContactFisherResult::breakdown);

  m.def("harmonic_remap", &harmonic_remap, py::arg("spec"), py::arg("coupling"),
        py::arg("n_modes") = 1);
  m.def("meanfield_alpha", &meanfield_alpha, py::arg("mf"), py::arg("pt"));
  m.def("meanfield_ideal_density", &meanfield_ideal_density, py::arg("base"),
        py::arg("beta"), py::arg("alpha"));
  m.def("meanfield_critical_density", &meanfield_critical_density, py::arg("base"),
        py::arg("beta"));
  m.def("meanfield_fisher_mm", &meanfield_fisher_mm, py::arg("f0_mm"), py::arg("lam"),
        py::arg("v_d"), py::arg("beta"));
  m.def("contact_g2", &contact_g2, py::arg("r"), py::arg("cs"));
  m.def("contact_fisher_mm", &contact_fisher_mm, py::arg("cs"), py::arg("mean_n"));
  m.def("variance_from_g2", &variance_from_g2, py::arg("g2"), py::arg("rho"),
        py::arg("length"), py::arg("mean_n"));

  py::class_<ScaleConstants>(m, "ScaleConstants")
      .def(py::init<double, double>(), py::arg("beta0"), py::arg("mu0"))
      .def_readwrite("beta0", &ScaleConstants::beta0)
      .def_readwrite("mu0", &ScaleConstants::mu0);
  py::class_<Covariance2>(m, "Covariance2")
      .def_readonly("var_beta", &Covariance2::var_beta)
      .def_readonly("cov", &Covariance2::cov)
      .def_readonly("var_mu", &Covariance2::var_mu);
  py::class_<JointDiag>(m, "JointDiag")
      .def_readonly("r11", &JointDiag::r11)
      .def_readonly("r12", &JointDiag::r12)
      .def_readonly("r21", &JointDiag::r21)
      .def_readonly("r22", &JointDiag::r22)
      .def_readonly("f_lambda1", &JointDiag::f_lambda1)
      .def_readonly("f_lambda2", &JointDiag::f_lambda2)
      .def_readonly("degenerate", &JointDiag::degenerate);
  py::class_<ObservableCoeffs>(m, "ObservableCoeffs")
      .def_readonly("c_id", &ObservableCoeffs::c_id)
      .def_readonly("c_n", &ObservableCoeffs::c_n)
      .def_readonly("c_h", &ObservableCoeffs::c_h);
  py::class_<OptimalObservables>(m, "OptimalObservables")
      .def_readonly("o_beta", &OptimalObservables::o_beta)
      .def_readonly("o_mu", &OptimalObservables::o_mu)
      .def_readonly("o_lambda1", &OptimalObservables::o_lambda1)
      .def_readonly("o_lambda2", &OptimalObservables::o_lambda2)
      .def_readonly("diag", &OptimalObservables::diag);
  py::class_<SampleDraw>(m, "SampleDraw")
      .def_readonly("n", &SampleDraw::n)
      .def_readonly("e", &SampleDraw::e);
  py::class_<SampleBatch>(m, "SampleBatch")
      .def_readonly("draws", &SampleBatch::draws)
      .def_readonly("m", &SampleBatch::m)
      .def_readonly("seed", &SampleBatch::seed)
      .def_readonly("spec_hash", &SampleBatch::spec_hash);
  py::class_<MlEstimate>(m, "MlEstimate")
      .def_readonly("estimate", &MlEstimate::estimate)
      .def_readonly("fisher", &MlEstimate::fisher)
      .def_readonly("hessian_negative_definite", &MlEstimate::hessian_negative_definite)
      .def_readonly("iterations", &MlEstimate::iterations);
  py::enum_<SpacingScenario>(m, "SpacingScenario")
      .value("EdgeAxisBox", SpacingScenario::EdgeAxisBox)
      .value("BulkBox", SpacingScenario::BulkBox)
      .value("SphericalBox", SpacingScenario::SphericalBox)
      .value("IsotropicTrap", SpacingScenario::IsotropicTrap)
      .value("AnisotropicTrap", SpacingScenario::AnisotropicTrap);
  py::class_<SpacingQuery>(m, "SpacingQuery")
      .def(py::init([](SpacingScenario sc, double eta, double n, double rho_t) {
             SpacingQuery q;
             q.scenario = sc;
             q.eta = eta;
             q.trap_exponent = n;
             q.rho_t = rho_t;
             return q;
           }),
           py::arg("scenario"), py::arg("eta") = 1.0, py::arg("trap_exponent") = 1.0,
           py::arg("rho_t") = 1.0);
  py::class_<SpacingReport>(m, "SpacingReport")
      .def_readonly("delta", &SpacingReport::delta)
      .def_readonly("degeneracy", &SpacingReport::degeneracy)
      .def_readonly("j", &SpacingReport::j)
      .def_readonly("degeneracy_estimated", &SpacingReport::degeneracy_estimated);
  py::class_<HckrQuery>(m, "HckrQuery")
      .def(py::init<int, double>(), py::arg("degeneracy"), py::arg("delta"))
      .def_readwrite("degeneracy", &HckrQuery::degeneracy)
      .def_readwrite("delta", &HckrQuery::delta);

  m.def("default_scale_constants", &default_scale_constants, py::arg("spec"));
  m.def("cramer_rao_inverse", &cramer_rao_inverse, py::arg("fisher"));
  m.def("joint_diagonalize", &joint_diagonalize, py::arg("fisher"), py::arg("scales"));
  m.def("optimal_observable_coeffs", &optimal_observable_coeffs, py::arg("fisher"),
        py::arg("pt"), py::arg("scales"), py::arg("mean_n"), py::arg("mean_h"));
  m.def("sample_grand_canonical", &sample_grand_canonical, py::arg("spec"), py::arg("pt"),
        py::arg("m"), py::arg("seed"), py::arg("cutoff"),
        py::call_guard<py::gil_scoped_release>());
  m.def("max_likelihood_estimate", &max_likelihood_estimate, py::arg("batch"),
        py::arg("spec"), py::arg("init"), py::arg("cutoff"),
        py::call_guard<py::gil_scoped_release>());
  m.def("discrete_solve_mu", &discrete_solve_mu, py::arg("spec"), py::arg("beta"),
        py::arg("target_n"), py::arg("cutoff"));
  m.def("hckr_bound", &hckr_bound, py::arg("query"));
  m.def("fermi_level_spacing", &fermi_level_spacing, py::arg("spec"), py::arg("mean_n"),
        py::arg("query"));

  m.def(
      "write_batch",
      [](const SampleBatch& b, const std::string& path, bool binary) {
        std::ofstream f(path, binary ? std::ios::binary : std::ios::out);
        if (!f) throw_validation("cannot open " + path);
        binary ? write_batch_binary(b, f) : write_batch_csv(b, f);
      },
      py::arg("batch"), py::arg("path"), py::arg("binary") = true);
  m.def(
      "read_batch",
      [](const std::string& path, bool binary) {
        std::ifstream f(path, binary ? std::ios::binary : std::ios::in);
        if (!f) throw_validation("cannot open " + path);
        return binary ? read_batch_binary(f) : read_batch_csv(f);
      },
      py::arg("path"), py::arg("binary") = true);

  m.attr("HBAR") = kHbar;
  m.attr("K_BOLTZMANN") = kBoltzmann;
#ifdef QGF_VERSION
  m.attr("__version__") = QGF_VERSION;
#else
  m.attr("__version__") = "dev";
#endif
}
