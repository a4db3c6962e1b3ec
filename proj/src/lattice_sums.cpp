#include "qgf/lattice_sums.hpp"

#include <cmath>
#include <functional>

#include "qgf/polylog.hpp"

namespace qgf {
namespace {

constexpr double kPi = 3.14159265358979323846;

// Per-axis quadratic coefficients c_i with eps = sum_i c_i n_i^2 for boxes,
// or hbar omega_i for traps (eps = sum_i c_i n_i).
std::vector<double> axis_coefficients(const GasSpec& spec) {
  std::vector<double> c(spec.geometry.size());
  const double hbar = spec.hbar();
  for (size_t i = 0; i < c.size(); ++i) {
    switch (spec.confinement) {
      case Confinement::PeriodicBox: {
        const double k = 2.0 * kPi * hbar / spec.geometry[i];
        c[i] = k * k / (2.0 * spec.mass);
        break;
      }
      case Confinement::DirichletBox: {
        const double k = kPi * hbar / spec.geometry[i];
        c[i] = k * k / (2.0 * spec.mass);
        break;
      }
      case Confinement::HarmonicTrap:
        c[i] = hbar * spec.geometry[i];
        break;
    }
  }
  return c;
}

void axis_range(const GasSpec& spec, int M, int* lo, int* hi) {
  switch (spec.confinement) {
    case Confinement::PeriodicBox: *lo = -M; *hi = M; break;
    case Confinement::DirichletBox: *lo = 1; *hi = M; break;
    case Confinement::HarmonicTrap: *lo = 0; *hi = M; break;
  }
}

double axis_energy(const GasSpec& spec, double coeff, int n) {
  return spec.is_box() ? coeff * static_cast<double>(n) * n : coeff * n;
}

template <class F>
void for_each_mode(const GasSpec& spec, int M, F&& f) {
  const auto c = axis_coefficients(spec);
  int lo = 0, hi = 0;
  axis_range(spec, M, &lo, &hi);
  if (spec.dimension == 1) {
    for (int n0 = lo; n0 <= hi; ++n0) f(axis_energy(spec, c[0], n0));
  } else if (spec.dimension == 2) {
    for (int n0 = lo; n0 <= hi; ++n0) {
      const double e0 = axis_energy(spec, c[0], n0);
      for (int n1 = lo; n1 <= hi; ++n1) f(e0 + axis_energy(spec, c[1], n1));
    }
  } else {
    for (int n0 = lo; n0 <= hi; ++n0) {
      const double e0 = axis_energy(spec, c[0], n0);
      for (int n1 = lo; n1 <= hi; ++n1) {
        const double e01 = e0 + axis_energy(spec, c[1], n1);
        for (int n2 = lo; n2 <= hi; ++n2) f(e01 + axis_energy(spec, c[2], n2));
      }
    }
  }
}

}  // namespace

// Occupancy and Fisher weight, stable against exp overflow. y = beta(eps-mu).
double mode_occupancy(bool fermi, double y) {
  if (fermi) {
    return y >= 0.0 ? std::exp(-y) / (1.0 + std::exp(-y))
                    : 1.0 / (1.0 + std::exp(y));
  }
  return 1.0 / std::expm1(y);
}

double mode_fisher_weight(bool fermi, double y) {  // e^y / (e^y +- 1)^2
  const double h = 0.5 * y;
  if (fermi) {
    const double c = 2.0 * std::cosh(h);
    return 1.0 / (c * c);
  }
  if (h > 350.0) return 0.0;
  const double sh = 2.0 * std::sinh(h);
  return 1.0 / (sh * sh);
}

namespace {

// Boltzmann-weight bound on the modes dropped by the per-axis cutoff, as an
// absolute bound on the dropped contribution to sum_k e^{-beta(eps_k - mu)}.
double boltzmann_tail(const GasSpec& spec, const ThermoPoint& pt, int M) {
  const auto c = axis_coefficients(spec);
  int lo = 0, hi = 0;
  axis_range(spec, M, &lo, &hi);
  double inside_prod = 1.0, full_prod = 1.0;
  for (int i = 0; i < spec.dimension; ++i) {
    double inside = 0.0;
    for (int n = lo; n <= hi; ++n) inside += std::exp(-pt.beta * axis_energy(spec, c[i], n));
    double tail;
    if (spec.is_box()) {
      // e^{-a n^2} for n > M: successive ratios <= e^{-a(2M+3)}
      const double a = pt.beta * c[i];
      const double first = std::exp(-a * (M + 1.0) * (M + 1.0));
      const double ratio = std::exp(-a * (2.0 * M + 3.0));
      tail = first / std::max(1e-300, 1.0 - ratio);
      if (spec.confinement == Confinement::PeriodicBox) tail *= 2.0;
    } else {
      const double a = pt.beta * c[i];
      tail = std::exp(-a * (M + 1.0)) / -std::expm1(-a);
    }
    inside_prod *= inside;
    full_prod *= inside + tail;
  }
  return std::exp(pt.beta * pt.mu) * (full_prod - inside_prod);
}

struct SumSetup {
  double eps0;
  double bose_amp;  // occupancy bound amplification for the dropped modes
};

SumSetup validate_sum(const GasSpec& spec, const ThermoPoint& pt, const ModeCutoff& cutoff) {
  spec.validate();
  if (cutoff.max_index < 1) throw_validation("cutoff max_index must be >= 1");
  if (!(pt.beta > 0.0)) throw_validation("beta must be positive");
  SumSetup s;
  s.eps0 = ground_energy(spec);
  if (!spec.is_fermi() && !(pt.mu < s.eps0)) {
    throw_domain("discrete sums require mu < ground-state energy for bosons");
  }
  // 1/(e^y - 1) <= amp * e^{-y} for y >= y_out, the first excluded level.
  if (!spec.is_fermi()) {
    const auto c = axis_coefficients(spec);
    double eps_out = axis_energy(spec, c[0], cutoff.max_index + 1);
    for (int i = 1; i < spec.dimension; ++i) {
      eps_out = std::min(eps_out, axis_energy(spec, c[i], cutoff.max_index + 1));
    }
    const double y_out = pt.beta * (s.eps0 + eps_out - pt.mu);
    s.bose_amp = 1.0 / -std::expm1(-y_out);
  } else {
    s.bose_amp = 1.0;
  }
  return s;
}

double run_sum(const GasSpec& spec, const ThermoPoint& pt, const ModeCutoff& cutoff,
               const std::function<double(bool, double)>& weight, double tail_amp) {
  const SumSetup setup = validate_sum(spec, pt, cutoff);
  const bool fermi = spec.is_fermi();
  double sum = 0.0;
  for_each_mode(spec, cutoff.max_index, [&](double eps) {
    sum += weight(fermi, pt.beta * (eps - pt.mu));
  });
  const double tail = tail_amp * setup.bose_amp * boltzmann_tail(spec, pt, cutoff.max_index);
  if (cutoff.tail_policy == ModeCutoff::Tail::ZetaTail) return sum + tail;
  if (tail > 1e-8 * std::abs(sum)) {
    throw Error(ErrorCode::CutoffTooSmall,
                "discrete sum: dropped tail above 1e-8 of the sum");
  }
  return sum;
}

}  // namespace

double ground_energy(const GasSpec& spec) {
  if (spec.confinement != Confinement::DirichletBox) return 0.0;
  const auto c = axis_coefficients(spec);
  double e = 0.0;
  for (int i = 0; i < spec.dimension; ++i) e += c[i];
  return e;
}

double discrete_tail_bound(const GasSpec& spec, const ThermoPoint& pt,
                           const ModeCutoff& cutoff) {
  const SumSetup setup = validate_sum(spec, pt, cutoff);
  return setup.bose_amp * boltzmann_tail(spec, pt, cutoff.max_index);
}

std::vector<double> mode_energies(const GasSpec& spec, const ModeCutoff& cutoff) {
  spec.validate();
  std::vector<double> eps;
  for_each_mode(spec, cutoff.max_index, [&](double e) { eps.push_back(e); });
  return eps;
}

double discrete_sum_N(const GasSpec& spec, const ThermoPoint& pt, const ModeCutoff& cutoff) {
  return run_sum(spec, pt, cutoff,
                 [](bool fermi, double y) { return mode_occupancy(fermi, y); }, 1.0);
}

double discrete_sum_E(const GasSpec& spec, const ThermoPoint& pt, const ModeCutoff& cutoff) {
  const SumSetup setup = validate_sum(spec, pt, cutoff);
  const bool fermi = spec.is_fermi();
  double sum = 0.0;
  for_each_mode(spec, cutoff.max_index, [&](double eps) {
    sum += eps * mode_occupancy(fermi, pt.beta * (eps - pt.mu));
  });
  // Energy-weighted tail: bound eps by eps * e^{-beta eps} factored into the
  // Boltzmann bound via one extra decade of slack.
  const double tail =
      setup.bose_amp * boltzmann_tail(spec, pt, cutoff.max_index) / pt.beta * 10.0;
  if (cutoff.tail_policy == ModeCutoff::Tail::ZetaTail) return sum;
  if (tail > 1e-6 * std::abs(sum) && std::abs(sum) > 0.0) {
    throw Error(ErrorCode::CutoffTooSmall, "discrete energy sum: cutoff too small");
  }
  return sum;
}

double discrete_sum_Fmm(const GasSpec& spec, const ThermoPoint& pt, const ModeCutoff& cutoff) {
  const double b2 = pt.beta * pt.beta;
  return b2 * run_sum(spec, pt, cutoff,
                      [](bool fermi, double y) { return mode_fisher_weight(fermi, y); },
                      1.0);
}

FisherMatrix2 discrete_fisher(const GasSpec& spec, const ThermoPoint& pt,
                              const ModeCutoff& cutoff) {
  validate_sum(spec, pt, cutoff);
  const bool fermi = spec.is_fermi();
  FisherMatrix2 f;
  for_each_mode(spec, cutoff.max_index, [&](double eps) {
    const double w = mode_fisher_weight(fermi, pt.beta * (eps - pt.mu));
    const double dm = pt.mu - eps;
    f.f_mm += w;
    f.f_bm += dm * w;
    f.f_bb += dm * dm * w;
  });
  f.f_mm *= pt.beta * pt.beta;
  f.f_bm *= pt.beta;
  return f;
}

double lattice_constant(int d, int cutoff, ModeCutoff::Tail tail) {
  if (d < 1 || d > 3) throw_validation("lattice_constant: d must be 1, 2 or 3");
  if (cutoff < 16) throw_validation("lattice_constant: cutoff must be >= 16");
  double sum = 0.0;
  // Octant-reduced accumulation over nonzero n with |n_i| <= cutoff.
  if (d == 1) {
    for (int n = cutoff; n >= 1; --n) sum += 2.0 / (static_cast<double>(n) * n * static_cast<double>(n) * n);
  } else if (d == 2) {
    for (int nx = cutoff; nx >= 0; --nx) {
      for (int ny = cutoff; ny >= 0; --ny) {
        if (nx == 0 && ny == 0) continue;
        const double r2 = static_cast<double>(nx) * nx + static_cast<double>(ny) * ny;
        const double mult = (nx > 0 ? 2.0 : 1.0) * (ny > 0 ? 2.0 : 1.0);
        sum += mult / (r2 * r2);
      }
    }
  } else {
    for (int nx = cutoff; nx >= 0; --nx) {
      for (int ny = cutoff; ny >= 0; --ny) {
        for (int nz = cutoff; nz >= 0; --nz) {
          if (nx == 0 && ny == 0 && nz == 0) continue;
          const double r2 = static_cast<double>(nx) * nx + static_cast<double>(ny) * ny +
                            static_cast<double>(nz) * nz;
          const double mult =
              (nx > 0 ? 2.0 : 1.0) * (ny > 0 ? 2.0 : 1.0) * (nz > 0 ? 2.0 : 1.0);
          sum += mult / (r2 * r2);
        }
      }
    }
  }
  if (tail == ModeCutoff::Tail::ZetaTail) {
    const double c = cutoff;
    if (d == 1) {
      // Euler-Maclaurin tail of 2 sum_{n>c} n^-4, accurate far beyond double.
      sum += 2.0 * (1.0 / (3.0 * c * c * c) - 1.0 / (2.0 * c * c * c * c) +
                    1.0 / (3.0 * std::pow(c, 5)) - 1.0 / (6.0 * std::pow(c, 7)));
    } else if (d == 2) {
      sum += kPi / (c * c);  // continuum estimate of the exterior
    } else {
      sum += 4.0 * kPi / c;
    }
  }
  return sum;
}

double discrete_dominant_N(const GasSpec& spec, const ThermoPoint& pt) {
  spec.validate();
  if (spec.is_fermi() || !(pt.mu < 0.0)) {
    throw_domain("discrete_dominant_N: Bose statistics with mu < 0 required");
  }
  if (!spec.isotropic(1e-9)) throw_domain("discrete_dominant_N: isotropic geometry required");
  const double ground = -1.0 / (pt.beta * pt.mu);
  if (spec.confinement == Confinement::PeriodicBox && spec.dimension == 1) {
    const double L = spec.geometry[0];
    const double lam2 = std::pow(spec.thermal_wavelength(pt.beta), 2);
    return ground + kPi * L * L / (6.0 * lam2);
  }
  if (spec.confinement == Confinement::HarmonicTrap && spec.dimension == 1) {
    const double bhw = pt.beta * spec.hbar() * spec.geometry[0];
    return ground + std::log(1.0 / bhw) / bhw;
  }
  throw Error(ErrorCode::UnsupportedScenario,
              "discrete_dominant_N: implemented for d=1 box and d=1 trap");
}

double discrete_dominant_Fmm(const GasSpec& spec, const ThermoPoint& pt) {
  spec.validate();
  if (spec.is_fermi() || !(pt.mu < 0.0)) {
    throw_domain("discrete_dominant_Fmm: Bose statistics with mu < 0 required");
  }
  if (spec.confinement != Confinement::PeriodicBox) {
    throw Error(ErrorCode::UnsupportedScenario, "discrete_dominant_Fmm: box only");
  }
  if (!spec.isotropic(1e-9)) throw_domain("discrete_dominant_Fmm: isotropic geometry required");
  const double ground = 1.0 / (pt.mu * pt.mu);
  const double b2 = pt.beta * pt.beta;
  const double lam4 = std::pow(spec.thermal_wavelength(pt.beta), 4);
  const double v = spec.volume();
  const int d = spec.dimension;
  double c;
  switch (d) {
    case 3: c = lattice_constant(3, 256); break;
    case 2: c = lattice_constant(2, 256); break;
    default: c = zeta(4.0); break;  // one-sided 1D summation convention
  }
  return ground + c * b2 * std::pow(v, 4.0 / d) / (kPi * kPi * lam4);
}

double harmonic_discrete_Fmm_2d(const GasSpec& spec, const ThermoPoint& pt) {
  spec.validate();
  if (spec.is_fermi() || spec.confinement != Confinement::HarmonicTrap ||
      spec.dimension != 2 || !(pt.mu < 0.0)) {
    throw_domain("harmonic_discrete_Fmm_2d: Bose d=2 trap with mu < 0 required");
  }
  const double bhw = pt.beta * spec.hbar() * spec.mean_frequency();
  if (!(-pt.beta * pt.mu < bhw)) {
    throw_domain("harmonic_discrete_Fmm_2d: point is inside the continuum window");
  }
  const double hw = spec.hbar() * spec.mean_frequency();
  return 1.0 / (pt.mu * pt.mu) + std::log(1.0 / bhw) / (hw * hw);
}

}  // namespace qgf
