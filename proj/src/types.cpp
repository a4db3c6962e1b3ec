#include "qgf/types.hpp"

#include <cmath>

#include "qgf/constants.hpp"

namespace qgf {
namespace {
constexpr double kPi = 3.14159265358979323846;
}

double species_mass_kg(std::string_view name) {
  if (name == "Li6") return 6.0151228874 * kAtomicMassKg;
  if (name == "Na23") return 22.9897692820 * kAtomicMassKg;
  if (name == "Rb87") return 86.9091805310 * kAtomicMassKg;
  throw_validation("unknown species: " + std::string(name));
}

double GasSpec::volume() const {
  if (!is_box()) throw_validation("volume(): spec is not a box");
  double v = 1.0;
  for (double L : geometry) v *= L;
  return v;
}

double GasSpec::mean_frequency() const {
  if (is_box()) throw_validation("mean_frequency(): spec is not a trap");
  double p = 1.0;
  for (double w : geometry) p *= w;
  return std::pow(p, 1.0 / dimension);
}

double GasSpec::thermal_wavelength(double beta) const {
  return std::sqrt(2.0 * kPi * hbar() * hbar() * beta / mass);
}

bool GasSpec::isotropic(double rtol) const {
  for (double g : geometry) {
    if (std::abs(g - geometry.front()) > rtol * std::abs(geometry.front())) return false;
  }
  return true;
}

void GasSpec::validate() const {
  if (dimension < 1 || dimension > 3) throw_validation("dimension must be 1, 2 or 3");
  if (static_cast<int>(geometry.size()) != dimension) {
    throw_validation("geometry arity must equal the dimension");
  }
  for (double g : geometry) {
    if (!(g > 0.0) || !std::isfinite(g)) throw_validation("geometry entries must be positive");
  }
  if (!(mass > 0.0) || !std::isfinite(mass)) throw_validation("mass must be positive");
}

const char* regime_name(Regime r) {
  switch (r) {
    case Regime::Classical: return "classical";
    case Regime::QuantumContinuum: return "quantum_continuum";
    case Regime::DiscreteRequired: return "discrete_required";
    case Regime::Condensed: return "condensed";
  }
  return "?";
}

const char* statistics_name(Statistics s) {
  return s == Statistics::Fermi ? "fermi" : "bose";
}

const char* confinement_name(Confinement c) {
  switch (c) {
    case Confinement::PeriodicBox: return "box";
    case Confinement::HarmonicTrap: return "trap";
    case Confinement::DirichletBox: return "dirichlet_box";
  }
  return "?";
}

}  // namespace qgf
