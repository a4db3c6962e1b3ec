#include "qgf/polylog.hpp"

#include <cmath>
#include <complex>
#include <cstdint>
#include <cstring>
#include <limits>
#include <unordered_map>
#include <vector>

namespace qgf {
namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kEulerGamma = 0.57721566490153286061;
constexpr double kStieltjes1 = -0.07281584548367672486;
constexpr double kLn2 = 0.69314718055994530942;
constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kNearInt = 1e-5;

bool near_integer(double s, int* n) {
  double r = std::round(s);
  *n = static_cast<int>(r);
  return std::abs(s - r) < kNearInt;
}

// Borwein's Chebyshev-weighted algorithm for the Dirichlet eta function.
// Error ~ (3+sqrt(8))^{-n} for real s >= 0.5; n = 40 is far below 1e-16.
double eta_borwein(double s) {
  constexpr int n = 40;
  static const std::vector<double> d = [] {
    std::vector<double> dk(n + 1);
    double term = 1.0;  // n (n+j-1)! 4^j / ((n-j)! (2j)!) at j = 0
    double acc = 1.0;
    dk[0] = 1.0;
    for (int j = 1; j <= n; ++j) {
      term *= 4.0 * (n + j - 1.0) * (n - j + 1.0) / ((2.0 * j) * (2.0 * j - 1.0));
      acc += term;
      dk[j] = acc;
    }
    return dk;
  }();
  double sum = 0.0;
  double sign = 1.0;
  for (int k = 0; k < n; ++k) {
    sum += sign * (d[k] - d[n]) * std::pow(k + 1.0, -s);
    sign = -sign;
  }
  return -sum / d[n];
}

double zeta_ac_impl(double s);

// Small memo: the expansion branches evaluate zeta at the same ladder of
// arguments s - k over and over during scans.
double zeta_ac_cached(double s) {
  thread_local std::unordered_map<std::uint64_t, double> cache;
  std::uint64_t key;
  std::memcpy(&key, &s, sizeof key);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  double v = zeta_ac_impl(s);
  if (cache.size() > 8192) cache.clear();
  cache.emplace(key, v);
  return v;
}

double zeta_ac_impl(double s) {
  if (s == 1.0) throw_domain("zeta: pole at s = 1");
  if (s == 0.0) return -0.5;  // reflection would touch the s = 1 pole
  if (s >= 0.5) {
    // zeta = eta / (1 - 2^{1-s}); expm1 keeps the denominator exact near the
    // pole so the ratio stays accurate to machine precision.
    return eta_borwein(s) / -std::expm1((1.0 - s) * kLn2);
  }
  // Functional equation: zeta(s) = 2^s pi^{s-1} sin(pi s/2) Gamma(1-s) zeta(1-s).
  return std::pow(2.0, s) * std::pow(kPi, s - 1.0) * std::sin(kPi * s / 2.0) *
         std::tgamma(1.0 - s) * zeta_ac_cached(1.0 - s);
}

double eta_ac(double s) {
  if (std::abs(s - 1.0) < 1e-12) {
    return kLn2 + (s - 1.0) * (kEulerGamma * kLn2 - 0.5 * kLn2 * kLn2);
  }
  if (s >= 0.5) return eta_borwein(s);
  return -std::expm1((1.0 - s) * kLn2) * zeta_ac_cached(s);
}

// ---------------------------------------------------------------------------
// Complex Hurwitz zeta by Euler-Maclaurin; a real (a != 1), q off the real
// axis. Used by the inversion formula for fermionic arguments. *scale
// accumulates the magnitudes of the partial pieces, which bound the
// cancellation loss of the final value.
std::complex<double> hurwitz_zeta_em(double a, std::complex<double> q, double* scale) {
  static const double B2r[] = {
      1.0 / 6,         -1.0 / 30,        1.0 / 42,       -1.0 / 30,
      5.0 / 66,        -691.0 / 2730,    7.0 / 6,        -3617.0 / 510,
      43867.0 / 798,   -174611.0 / 330,  854513.0 / 138, -236364091.0 / 2730};
  int shift = 0;
  while (std::abs(q + std::complex<double>(shift, 0)) < 18.0) ++shift;
  std::complex<double> head = 0.0;
  double mag = 0.0;
  for (int j = 0; j < shift; ++j) {
    const std::complex<double> t = std::pow(q + double(j), -a);
    head += t;
    mag += std::abs(t);
  }
  const std::complex<double> w = q + double(shift);
  const std::complex<double> t1 = std::pow(w, 1.0 - a) / (a - 1.0);
  const std::complex<double> t2 = 0.5 * std::pow(w, -a);
  std::complex<double> tail = t1 + t2;
  mag += std::abs(t1) + std::abs(t2);
  std::complex<double> corr = 0.0;
  double poch = a;       // (a)_{2r-1}
  double fact = 2.0;     // (2r)!
  std::complex<double> wpow = std::pow(w, -a - 1.0);
  const std::complex<double> w2inv = 1.0 / (w * w);
  for (int r = 1; r <= 12; ++r) {
    std::complex<double> term = (B2r[r - 1] / fact) * poch * wpow;
    corr += term;
    if (std::abs(term) < 1e-20 * mag) break;
    poch *= (a + 2.0 * r - 1.0) * (a + 2.0 * r);
    fact *= (2.0 * r + 1.0) * (2.0 * r + 2.0);
    wpow *= w2inv;
  }
  if (scale) *scale = mag;
  return head + tail + corr;
}

// Exact inversion formula for non-integer s and x > 0:
//   Li_s(-e^x) = 2 Gamma(1-s) / (2 pi)^{1-s} Re[e^{i pi (s-1)/2} zeta(1-s, 1/2 + i x/(2 pi))]
double fermi_hurwitz(double s, double x, double* abs_err) {
  const double a = 1.0 - s;
  const std::complex<double> q(0.5, x / (2.0 * kPi));
  double mag = 0.0;
  const std::complex<double> hz = hurwitz_zeta_em(a, q, &mag);
  const std::complex<double> phase =
      std::exp(std::complex<double>(0.0, kPi * (s - 1.0) / 2.0));
  const double pref = 2.0 * std::tgamma(a) / std::pow(2.0 * kPi, a);
  const double v = pref * (phase * hz).real();
  *abs_err = std::abs(pref) * mag * 64.0 * kEps;
  return v;
}

// ---------------------------------------------------------------------------
double direct_series(double s, double z, double* abs_err) {
  double sum = 0.0, comp = 0.0;
  double zk = 1.0;
  double term = 0.0;
  for (int k = 1; k <= 200000; ++k) {
    zk *= z;
    term = zk * std::pow(static_cast<double>(k), -s);
    double y = term - comp;
    double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
    if (k >= 4 && std::abs(term) <= 0.25 * kEps * std::abs(sum)) break;
  }
  *abs_err = std::abs(term) + 4.0 * kEps * std::abs(sum);
  return sum;
}

double harmonic_number(int n) {  // H_{n-1}
  double h = 0.0;
  for (int j = 1; j < n; ++j) h += 1.0 / j;
  return h;
}

// Expansion of Li_s(e^x) about x = 0 (|x| < 2 pi):
//   Li_s(e^x) = Gamma(1-s)(-x)^{s-1} + sum_k zeta(s-k) x^k / k!
// with the k = n-1 term and the Gamma pole merged analytically when s is
// within kNearInt of a positive integer n.
double bose_x_expansion(double s, double x, double* abs_err) {
  int n;
  const bool merged = near_integer(s, &n) && n >= 1;
  double singular;
  if (merged) {
    const double eps_s = s - n;
    const double L = std::log(-x);
    const double psi = harmonic_number(n) - kEulerGamma;  // digamma(n)
    double psi1 = kPi * kPi / 6.0;                        // trigamma(n)
    for (int j = 1; j < n; ++j) psi1 -= 1.0 / (static_cast<double>(j) * j);
    double fact = 1.0;
    for (int j = 2; j < n; ++j) fact *= j;
    const double c0 = psi + kEulerGamma - L;
    const double c1 = -(kPi * kPi / 6.0 + 0.5 * L * L + 0.5 * (psi * psi - psi1) -
                        L * psi + kStieltjes1);
    singular = std::pow(x, n - 1.0) * (c0 + eps_s * c1) / fact;
  } else {
    singular = std::tgamma(1.0 - s) * std::pow(-x, s - 1.0);
  }
  double sum = singular, comp = 0.0;
  double xk = 1.0;  // x^k / k!
  double scale = std::abs(singular);
  int small_run = 0;
  double last = 0.0;
  for (int k = 0; k <= 80; ++k) {
    if (!(merged && k == n - 1)) {
      const double term = zeta_ac_cached(s - k) * xk;
      if (!std::isfinite(term)) break;  // Gamma overflow far past convergence
      double y = term - comp;
      double t = sum + y;
      comp = (t - sum) - y;
      sum = t;
      scale += std::abs(term);
      last = std::abs(term);
      small_run = (last <= 0.5 * kEps * std::abs(sum)) ? small_run + 1 : 0;
      if (k >= 8 && small_run >= 2) break;
    }
    xk *= x / (k + 1.0);
  }
  *abs_err = last + 8.0 * kEps * scale;
  return sum;
}

// Expansion of Li_s(-e^x) about x = 0 (|x| < pi): -sum_k eta(s-k) x^k / k!.
// eta is entire, so no pole handling is needed.
double fermi_eta_expansion(double s, double x, double* abs_err) {
  double sum = 0.0, comp = 0.0;
  double xk = 1.0;
  double scale = 0.0;
  double last = 0.0;
  int small_run = 0;
  for (int k = 0; k <= 240; ++k) {
    const double term = -eta_ac(s - k) * xk;
    if (!std::isfinite(term)) break;  // Gamma overflow far past convergence
    double y = term - comp;
    double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
    scale += std::abs(term);
    last = std::abs(term);
    small_run = (last <= 0.5 * kEps * std::abs(sum)) ? small_run + 1 : 0;
    if (k >= 8 && small_run >= 2) break;
    xk *= x / (k + 1.0);
  }
  *abs_err = last + 8.0 * kEps * scale;
  return sum;
}

// Exact terminating form for positive integer order and x > 0:
//   Li_n(-e^x) = -sum_{2k<=n} 2 eta(2k) x^{n-2k}/(n-2k)! - (-1)^n Li_n(-e^{-x})
double fermi_integer_exact(int n, double x, double* abs_err) {
  double sum = 0.0;
  for (int k = 0; 2 * k <= n; ++k) {
    sum -= 2.0 * eta_ac(2.0 * k) * std::pow(x, n - 2.0 * k) / std::tgamma(n - 2.0 * k + 1.0);
  }
  double series_err;
  const double refl = direct_series(n, -std::exp(-x), &series_err);
  const double sign = (n % 2 == 0) ? 1.0 : -1.0;
  sum -= sign * refl;
  *abs_err = series_err + 8.0 * kEps * std::abs(sum);
  return sum;
}

double pole_distance_to_nonpositive_int(double a) {
  if (a > 0.5) return 1.0;
  return std::abs(a - std::round(a));
}

}  // namespace

namespace detail {
double zeta_ac(double s) { return zeta_ac_cached(s); }
double eta_ac(double s) { return qgf::eta_ac(s); }
}  // namespace detail

double zeta(double s) {
  if (!(s > 1.0)) throw_domain("zeta: requires s > 1");
  return zeta_ac_cached(s);
}

PolylogResult polylog(double s, double z, const PolylogConfig& cfg) {
  if (!std::isfinite(s) || !std::isfinite(z)) throw_domain("polylog: non-finite input");
  if (z > 1.0) throw_domain("polylog: z > 1 not supported");
  if (z == 1.0 && s <= 1.0) throw_domain("polylog: divergent at z = 1 for s <= 1");

  PolylogResult r;
  const bool in_band = (s >= -0.5 - 1e-12 && s <= 4.0 + 1e-12);

  if (z == 0.0) {
    r.value = 0.0;
    r.estimated_abs_error = 0.0;
    return r;
  }
  // Closed forms for the two integer orders with elementary expressions.
  if (s == 0.0) {
    r.value = z / (1.0 - z);
    r.estimated_abs_error = 4.0 * kEps * std::abs(r.value);
    return r;
  }
  if (s == 1.0) {
    r.value = -std::log1p(-z);
    r.estimated_abs_error = 4.0 * kEps * std::abs(r.value);
    return r;
  }

  if (std::abs(z) <= cfg.direct_series_z) {
    r.regime_used = PolylogRegime::DirectSeries;
    r.value = direct_series(s, z, &r.estimated_abs_error);
  } else if (z > 0.0) {
    if (z == 1.0) {
      r.regime_used = PolylogRegime::DirectSeries;
      r.value = zeta_ac_cached(s);
      r.estimated_abs_error = 4.0 * kEps * std::abs(r.value);
    } else {
      r.regime_used = PolylogRegime::BoseSingular;
      r.value = bose_x_expansion(s, std::log(z), &r.estimated_abs_error);
    }
  } else {
    return polylog_neg_exp(s, std::log(-z), cfg);
  }
  if (!in_band) r.estimated_abs_error *= cfg.out_of_band_error_factor;
  return r;
}

PolylogResult polylog_neg_exp(double s, double x, const PolylogConfig& cfg) {
  if (!std::isfinite(s) || !std::isfinite(x)) {
    throw_domain("polylog_neg_exp: non-finite input");
  }
  PolylogResult r;
  const bool in_band = (s >= -0.5 - 1e-12 && s <= 4.0 + 1e-12);
  if (s == 0.0) {  // -e^x/(1+e^x)
    r.value = x >= 0.0 ? -1.0 / (1.0 + std::exp(-x)) : -std::exp(x) / (1.0 + std::exp(x));
    r.estimated_abs_error = 4.0 * kEps * std::abs(r.value);
    return r;
  }
  if (s == 1.0) {  // -ln(1+e^x)
    r.value = x >= 0.0 ? -(x + std::log1p(std::exp(-x))) : -std::log1p(std::exp(x));
    r.estimated_abs_error = 4.0 * kEps * std::abs(r.value);
    return r;
  }
  {
    const int n_round = static_cast<int>(std::lround(s));
    const double eps_s = s - n_round;
    if (x <= std::log(cfg.direct_series_z)) {
      r.regime_used = PolylogRegime::DirectSeries;
      r.value = direct_series(s, -std::exp(x), &r.estimated_abs_error);
    } else if (x < cfg.fermi_eta_x_max) {
      r.regime_used = PolylogRegime::DirectSeries;
      r.value = fermi_eta_expansion(s, x, &r.estimated_abs_error);
    } else if (n_round >= 1 && std::abs(eps_s) < 3e-3) {
      // The inversion formula loses accuracy near the Gamma poles; anchor on
      // the exact integer value with a Richardson order-derivative
      // correction evaluated safely away from the pole.
      r.regime_used = PolylogRegime::FermiAsymptotic;
      r.value = fermi_integer_exact(n_round, x, &r.estimated_abs_error);
      if (eps_s != 0.0) {
        const double h = 0.05;
        double err[4];
        const double lp2 = fermi_hurwitz(n_round + 2.0 * h, x, &err[0]);
        const double lp1 = fermi_hurwitz(n_round + h, x, &err[1]);
        const double lm1 = fermi_hurwitz(n_round - h, x, &err[2]);
        const double lm2 = fermi_hurwitz(n_round - 2.0 * h, x, &err[3]);
        const double d1 = (-lp2 + 8.0 * lp1 - 8.0 * lm1 + lm2) / (12.0 * h);
        const double d2 =
            (-lp2 + 16.0 * lp1 - 30.0 * r.value + 16.0 * lm1 - lm2) / (12.0 * h * h);
        r.value += eps_s * d1 + 0.5 * eps_s * eps_s * d2;
        const double fd_err = (err[0] + err[1] + err[2] + err[3]) / (12.0 * h);
        r.estimated_abs_error += std::abs(eps_s) * fd_err +
                                 2.0 * std::pow(std::abs(eps_s), 3) *
                                     (std::abs(d2) + std::abs(d1)) +
                                 std::abs(eps_s) * h * h * h * h * std::abs(d1);
      }
    } else {
      r.regime_used = PolylogRegime::FermiAsymptotic;
      r.value = fermi_hurwitz(s, x, &r.estimated_abs_error);
    }
  }
  if (!in_band) r.estimated_abs_error *= cfg.out_of_band_error_factor;
  return r;
}

PolylogResult polylog_fermi_large(double s, double x, int order,
                                  const PolylogConfig& cfg) {
  if (!(x >= cfg.fermi_large_x_min)) {
    throw_domain("polylog_fermi_large: x below the asymptotic crossover");
  }
  if (order < 1) throw_validation("polylog_fermi_large: order must be >= 1");
  PolylogResult r;
  r.regime_used = PolylogRegime::FermiAsymptotic;
  auto term = [&](int k) -> double {
    const double a = s + 1.0 - 2.0 * k;
    // 1/Gamma vanishes at the non-positive integers.
    if (a <= 0.5 && pole_distance_to_nonpositive_int(a) < 1e-12) return 0.0;
    return -2.0 * eta_ac(2.0 * k) * std::pow(x, s - 2.0 * k) / std::tgamma(a);
  };
  double sum = 0.0;
  for (int k = 0; k < order; ++k) sum += term(k);
  double dropped = 0.0;
  for (int k = order; k < order + 4; ++k) {
    dropped = std::abs(term(k));
    if (dropped > 0.0) break;
  }
  r.value = sum;
  // Factor 2: the asymptotic remainder tracks the first omitted term only
  // to leading order.
  r.estimated_abs_error = 2.0 * dropped + 4.0 * kEps * std::abs(sum);
  return r;
}

PolylogResult polylog_bose_singular(double s, double x, int order,
                                    const PolylogConfig& cfg) {
  if (!(s < 1.0)) throw_domain("polylog_bose_singular: requires s < 1");
  if (!(x < 0.0) || !(x > -cfg.bose_x_small)) {
    throw_domain("polylog_bose_singular: requires -x_small < x < 0");
  }
  if (order < 1) throw_validation("polylog_bose_singular: order must be >= 1");
  PolylogResult r;
  r.regime_used = PolylogRegime::BoseSingular;
  double sum = std::tgamma(1.0 - s) * std::pow(-x, s - 1.0);
  double xk = 1.0;
  for (int k = 0; k < order; ++k) {
    sum += zeta_ac_cached(s - k) * xk;
    xk *= x / (k + 1.0);
  }
  r.value = sum;
  r.estimated_abs_error =
      2.0 * std::abs(zeta_ac_cached(s - order) * xk) + 4.0 * kEps * std::abs(sum);
  return r;
}

}  // namespace qgf
