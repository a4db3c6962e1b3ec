#include "qgf/estimation.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>

#include "qgf/constants.hpp"

static_assert(std::endian::native == std::endian::little,
              "batch serialization assumes a little-endian host");

namespace qgf {
namespace {

constexpr double kPi = 3.14159265358979323846;

// --------------------------------------------------------------------------
// Philox-4x32-10 counter-based generator (Salmon et al., SC 2011).
constexpr std::uint32_t kPhiloxM0 = 0xD2511F53u;
constexpr std::uint32_t kPhiloxM1 = 0xCD9E8D57u;
constexpr std::uint32_t kPhiloxW0 = 0x9E3779B9u;
constexpr std::uint32_t kPhiloxW1 = 0xBB67AE85u;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t* lo,
                    std::uint32_t* hi) {
  const std::uint64_t p = static_cast<std::uint64_t>(a) * b;
  *lo = static_cast<std::uint32_t>(p);
  *hi = static_cast<std::uint32_t>(p >> 32);
}

std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> ctr,
                                        std::array<std::uint32_t, 2> key) {
  for (int round = 0; round < 10; ++round) {
    std::uint32_t lo0, hi0, lo1, hi1;
    mulhilo(kPhiloxM0, ctr[0], &lo0, &hi0);
    mulhilo(kPhiloxM1, ctr[2], &lo1, &hi1);
    ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
    key[0] += kPhiloxW0;
    key[1] += kPhiloxW1;
  }
  return ctr;
}

int worker_count(std::uint64_t m) {
  unsigned hw = std::thread::hardware_concurrency();
  if (hw == 0) hw = 1;
  if (const char* env = std::getenv("QGF_THREADS")) {
    const long cap = std::strtol(env, nullptr, 10);
    if (cap > 0) hw = std::min<unsigned>(hw, static_cast<unsigned>(cap));
  }
  const std::uint64_t per = 4096;
  return static_cast<int>(std::min<std::uint64_t>(hw, std::max<std::uint64_t>(1, m / per)));
}

std::uint64_t fnv1a(const void* data, size_t len, std::uint64_t h = 1469598103934665603ull) {
  const auto* p = static_cast<const unsigned char*>(data);
  for (size_t i = 0; i < len; ++i) {
    h ^= p[i];
    h *= 1099511628211ull;
  }
  return h;
}

std::uint64_t hash_model(const GasSpec& spec, const ThermoPoint& pt,
                         const ModeCutoff& cutoff) {
  std::uint64_t h = 1469598103934665603ull;
  const int ints[] = {static_cast<int>(spec.statistics), static_cast<int>(spec.confinement),
                      spec.dimension, static_cast<int>(spec.unit_system), cutoff.max_index};
  h = fnv1a(ints, sizeof ints, h);
  h = fnv1a(&spec.mass, sizeof spec.mass, h);
  for (double g : spec.geometry) h = fnv1a(&g, sizeof g, h);
  h = fnv1a(&pt.beta, sizeof pt.beta, h);
  h = fnv1a(&pt.mu, sizeof pt.mu, h);
  return h;
}

struct Moments {
  double mean_n = 0.0;
  double mean_e = 0.0;
};

Moments batch_moments(const SampleBatch& batch) {
  if (batch.draws.empty()) throw_validation("batch is empty");
  Moments mo;
  for (const auto& d : batch.draws) {
    mo.mean_n += static_cast<double>(d.n);
    mo.mean_e += d.e;
  }
  mo.mean_n /= static_cast<double>(batch.draws.size());
  mo.mean_e /= static_cast<double>(batch.draws.size());
  return mo;
}

}  // namespace

namespace detail {
double philox_uniform(std::uint64_t seed, std::uint64_t draw, std::uint64_t mode) {
  const std::array<std::uint32_t, 2> key = {static_cast<std::uint32_t>(seed),
                                            static_cast<std::uint32_t>(seed >> 32)};
  const std::array<std::uint32_t, 4> ctr = {
      static_cast<std::uint32_t>(draw), static_cast<std::uint32_t>(draw >> 32),
      static_cast<std::uint32_t>(mode), static_cast<std::uint32_t>(mode >> 32)};
  const auto out = philox4x32(ctr, key);
  const std::uint64_t bits =
      (static_cast<std::uint64_t>(out[0]) << 32) | out[1];
  // 53-bit mantissa, strictly inside (0, 1).
  return static_cast<double>(bits >> 11) * 0x1.0p-53 + 0x1.0p-54;
}
}  // namespace detail

ScaleConstants default_scale_constants(const GasSpec& spec) {
  spec.validate();
  ScaleConstants sc;
  if (spec.is_box()) {
    const double hbar = spec.hbar();
    sc.mu0 = 2.0 * kPi * kPi * hbar * hbar /
             (spec.mass * std::pow(spec.volume(), 2.0 / spec.dimension));
  } else {
    sc.mu0 = spec.hbar() * spec.mean_frequency();
  }
  sc.beta0 = 1.0 / sc.mu0;
  return sc;
}

Covariance2 cramer_rao_inverse(const FisherMatrix2& f) {
  const double det = f.det();
  if (!(det > 0.0)) {
    throw Error(ErrorCode::SingularFisher, "cramer_rao_inverse: det(F) <= 0");
  }
  const double tr = f.f_bb + f.f_mm;
  const double disc = std::sqrt(std::max(0.0, tr * tr - 4.0 * det));
  const double lmax = 0.5 * (tr + disc);
  const double lmin = 0.5 * (tr - disc);
  if (!(lmin > 0.0) || lmax / lmin > 1e12) {
    throw Error(ErrorCode::SingularFisher, "cramer_rao_inverse: ill-conditioned F");
  }
  return {f.f_mm / det, -f.f_bm / det, f.f_bb / det};
}

JointDiag joint_diagonalize(const FisherMatrix2& f, const ScaleConstants& sc) {
  if (!(sc.beta0 > 0.0) || !(sc.mu0 > 0.0)) {
    throw_validation("joint_diagonalize: scale constants must be positive");
  }
  if (!f.positive_semidefinite()) {
    throw Error(ErrorCode::SingularFisher, "joint_diagonalize: F not PSD");
  }
  const double fbb = sc.beta0 * sc.beta0 * f.f_bb;
  const double fmm = sc.mu0 * sc.mu0 * f.f_mm;
  const double fbm = sc.beta0 * sc.mu0 * f.f_bm;
  const double diff = fbb - fmm;
  const double s = std::hypot(2.0 * fbm, diff);
  JointDiag jd;
  jd.f_lambda1 = 0.5 * (fbb + fmm - s);
  jd.f_lambda2 = 0.5 * (fbb + fmm + s);
  const double scale = std::abs(fbb) + std::abs(fmm);
  if (s <= 1e-15 * scale) {
    jd.degenerate = true;  // rotation undefined; any orthogonal basis works
    return jd;
  }
  if (fbm == 0.0) {
    if (fbb > fmm) {
      jd.r11 = 0.0; jd.r12 = 1.0; jd.r21 = 1.0; jd.r22 = 0.0;
    }
    return jd;
  }
  const double a1 = diff - s, a2 = diff + s;
  const double n1 = std::hypot(a1, 2.0 * fbm);
  const double n2 = std::hypot(a2, 2.0 * fbm);
  jd.r11 = a1 / n1;
  jd.r12 = 2.0 * fbm / n1;
  jd.r21 = a2 / n2;
  jd.r22 = 2.0 * fbm / n2;
  return jd;
}

OptimalObservables optimal_observable_coeffs(const FisherMatrix2& f,
                                             const ThermoPoint& pt,
                                             const ScaleConstants& sc,
                                             double mean_n, double mean_h) {
  if (!(f.f_mm > 0.0) || !(f.f_bb > 0.0)) {
    throw Error(ErrorCode::SingularFisher,
                "optimal_observable_coeffs: diagonal Fisher entries must be positive");
  }
  OptimalObservables out;
  const double w = pt.mu * mean_n - mean_h;  // <mu N - H>
  // O_mu = mu 1 + (N - <N>)/(beta Var N); beta Var N = F_mm / beta.
  out.o_mu.c_n = pt.beta / f.f_mm;
  out.o_mu.c_id = pt.mu - mean_n * pt.beta / f.f_mm;
  // O_beta = beta + (mu N - H - w)/F_bb.
  out.o_beta.c_n = pt.mu / f.f_bb;
  out.o_beta.c_h = -1.0 / f.f_bb;
  out.o_beta.c_id = pt.beta - w / f.f_bb;

  const JointDiag jd = joint_diagonalize(f, sc);
  out.diag = jd;
  if (!(jd.f_lambda1 > 0.0)) {
    throw Error(ErrorCode::SingularFisher,
                "optimal_observable_coeffs: joint eigenvalue not positive");
  }
  const double rows[2][2] = {{jd.r11, jd.r12}, {jd.r21, jd.r22}};
  const double flam[2] = {jd.f_lambda1, jd.f_lambda2};
  ObservableCoeffs* joint[2] = {&out.o_lambda1, &out.o_lambda2};
  for (int i = 0; i < 2; ++i) {
    const double rb = rows[i][0] * sc.beta0;
    const double rm = rows[i][1] * sc.mu0;
    // L_lambda = rb (mu N - H - w) + rm beta (N - <N>)
    joint[i]->c_n = (rb * pt.mu + rm * pt.beta) / flam[i];
    joint[i]->c_h = -rb / flam[i];
    joint[i]->c_id = rows[i][0] * pt.beta / sc.beta0 + rows[i][1] * pt.mu / sc.mu0 -
                     (rb * w + rm * pt.beta * mean_n) / flam[i];
  }
  return out;
}

SampleBatch sample_grand_canonical(const GasSpec& spec, const ThermoPoint& pt,
                                   std::uint64_t m, std::uint64_t seed,
                                   const ModeCutoff& cutoff) {
  spec.validate();
  if (m == 0) throw_validation("sample_grand_canonical: m must be positive");
  const double eps0 = ground_energy(spec);
  if (!spec.is_fermi() && !(pt.mu < eps0)) {
    throw_domain("sample_grand_canonical: Bose sampling requires mu < ground energy");
  }
  if (discrete_tail_bound(spec, pt, cutoff) > 1e-10) {
    throw Error(ErrorCode::CutoffTooSmall,
                "sample_grand_canonical: dropped-mode occupancy above 1e-10");
  }
  const std::vector<double> eps = mode_energies(spec, cutoff);
  const bool fermi = spec.is_fermi();
  // Precompute per-mode quantities: Bernoulli p for fermions, -1/y for the
  // geometric inversion for bosons.
  std::vector<double> aux(eps.size());
  for (size_t k = 0; k < eps.size(); ++k) {
    const double y = pt.beta * (eps[k] - pt.mu);
    aux[k] = fermi ? mode_occupancy(true, y) : -1.0 / y;
  }

  SampleBatch batch;
  batch.m = m;
  batch.seed = seed;
  batch.spec_hash = hash_model(spec, pt, cutoff);
  batch.draws.resize(m);

  auto run_range = [&](std::uint64_t lo, std::uint64_t hi) {
    for (std::uint64_t i = lo; i < hi; ++i) {
      std::uint64_t total_n = 0;
      double total_e = 0.0;
      for (std::uint64_t k = 0; k < eps.size(); ++k) {
        const double u = detail::philox_uniform(seed, i, k);
        std::uint64_t occ;
        if (fermi) {
          occ = u < aux[k] ? 1 : 0;
        } else {
          const double g = std::log(u) * aux[k];  // ln(u)/ln(q), q = e^{-y}
          occ = g >= 9.2e18 ? static_cast<std::uint64_t>(9.2e18)
                            : static_cast<std::uint64_t>(g);
        }
        total_n += occ;
        total_e += static_cast<double>(occ) * eps[k];
      }
      batch.draws[i] = {total_n, total_e};
    }
  };

  const int workers = worker_count(m);
  if (workers <= 1) {
    run_range(0, m);
  } else {
    std::vector<std::thread> pool;
    const std::uint64_t chunk = (m + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
      const std::uint64_t lo = w * chunk;
      const std::uint64_t hi = std::min<std::uint64_t>(m, lo + chunk);
      if (lo < hi) pool.emplace_back(run_range, lo, hi);
    }
    for (auto& t : pool) t.join();
  }
  return batch;
}

void write_batch_csv(const SampleBatch& batch, std::ostream& os) {
  os << "draw_index,n,e\n";
  char buf[64];
  for (size_t i = 0; i < batch.draws.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%zu,%llu,%.17g\n", i,
                  static_cast<unsigned long long>(batch.draws[i].n), batch.draws[i].e);
    os << buf;
  }
}

SampleBatch read_batch_csv(std::istream& is) {
  SampleBatch batch;
  std::string line;
  if (!std::getline(is, line) || line.rfind("draw_index,n,e", 0) != 0) {
    throw_validation("batch csv: bad header");
  }
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    SampleDraw d;
    std::uint64_t idx;
    if (std::sscanf(line.c_str(), "%llu,%llu,%lg",
                    reinterpret_cast<unsigned long long*>(&idx),
                    reinterpret_cast<unsigned long long*>(&d.n), &d.e) != 3) {
      throw_validation("batch csv: bad row");
    }
    batch.draws.push_back(d);
  }
  batch.m = batch.draws.size();
  return batch;
}

void write_batch_binary(const SampleBatch& batch, std::ostream& os) {
  os.write("QGFB", 4);
  const std::uint16_t version = 1;
  os.write(reinterpret_cast<const char*>(&version), sizeof version);
  const std::uint64_t m = batch.draws.size();
  os.write(reinterpret_cast<const char*>(&m), sizeof m);
  for (const auto& d : batch.draws) {
    os.write(reinterpret_cast<const char*>(&d.n), sizeof d.n);
    os.write(reinterpret_cast<const char*>(&d.e), sizeof d.e);
  }
}

SampleBatch read_batch_binary(std::istream& is) {
  char magic[4];
  is.read(magic, 4);
  if (!is || std::memcmp(magic, "QGFB", 4) != 0) {
    throw_validation("batch binary: bad magic");
  }
  std::uint16_t version;
  is.read(reinterpret_cast<char*>(&version), sizeof version);
  if (!is || version != 1) throw_validation("batch binary: unsupported version");
  std::uint64_t m;
  is.read(reinterpret_cast<char*>(&m), sizeof m);
  SampleBatch batch;
  batch.m = m;
  batch.draws.resize(m);
  for (auto& d : batch.draws) {
    is.read(reinterpret_cast<char*>(&d.n), sizeof d.n);
    is.read(reinterpret_cast<char*>(&d.e), sizeof d.e);
  }
  if (!is) throw_validation("batch binary: truncated");
  return batch;
}

double discrete_solve_mu(const GasSpec& spec, double beta, double target_n,
                         const ModeCutoff& cutoff) {
  if (!(target_n > 0.0)) throw_validation("discrete_solve_mu: target must be positive");
  const double eps0 = ground_energy(spec);
  const bool bose = !spec.is_fermi();
  if (spec.is_fermi()) {
    const double modes = static_cast<double>(mode_energies(spec, cutoff).size());
    if (target_n >= modes) {
      throw Error(ErrorCode::OutOfModelRange,
                  "discrete_solve_mu: target exceeds the mode count");
    }
  }
  ModeCutoff quiet = cutoff;
  quiet.tail_policy = ModeCutoff::Tail::ZetaTail;  // no mid-iteration aborts
  auto n_of = [&](double mu) {
    return discrete_sum_N(spec, ThermoPoint{beta, mu}, quiet);
  };
  // Bracket the root.
  double hi = bose ? eps0 - 1e-3 / beta : eps0 + 1.0 / beta;
  while (n_of(hi) < target_n) {
    if (bose) {
      hi = eps0 - (eps0 - hi) * 0.25;
      if (eps0 - hi < 1e-300 * std::max(1.0, std::abs(eps0))) {
        throw Error(ErrorCode::OutOfModelRange, "discrete_solve_mu: unreachable target");
      }
    } else {
      hi += 1.0 / beta * std::max(1.0, std::abs(hi - eps0) * beta);
    }
  }
  double lo = std::min(hi - 1.0 / beta, eps0 - 1.0 / beta);
  while (n_of(lo) > target_n) lo -= std::max(1.0 / beta, eps0 - lo);
  for (int it = 0; it < 300; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double f = n_of(mid) - target_n;
    if (std::abs(f) <= 1e-12 * target_n) return mid;
    (f > 0.0 ? hi : lo) = mid;
    if (hi - lo <= 1e-16 * (std::abs(hi) + 1.0 / beta)) break;
  }
  return 0.5 * (lo + hi);
}

MlEstimate max_likelihood_estimate(const SampleBatch& batch, const GasSpec& spec,
                                   const ThermoPoint& init, const ModeCutoff& cutoff) {
  spec.validate();
  const Moments mo = batch_moments(batch);
  if (!(mo.mean_n > 0.0)) {
    throw Error(ErrorCode::OutOfModelRange, "max_likelihood_estimate: mean N is zero");
  }
  if (spec.is_fermi() &&
      mo.mean_n >= static_cast<double>(mode_energies(spec, cutoff).size())) {
    throw Error(ErrorCode::OutOfModelRange,
                "max_likelihood_estimate: mean N exceeds the mode count");
  }
  const double eps0 = ground_energy(spec);
  const bool bose = !spec.is_fermi();
  ModeCutoff quiet = cutoff;
  quiet.tail_policy = ModeCutoff::Tail::ZetaTail;

  auto moments_at = [&](double beta, double mu) {
    const ThermoPoint p{beta, mu};
    return std::pair<double, double>(discrete_sum_N(spec, p, quiet),
                                     discrete_sum_E(spec, p, quiet));
  };

  double beta = init.beta > 0.0 ? init.beta : 1.0;
  double mu = init.mu;
  if (bose && !(mu < eps0)) mu = eps0 - 1.0 / (beta * mo.mean_n);

  const double e_scale = std::max(std::abs(mo.mean_e), mo.mean_n / beta) + 1e-300;
  MlEstimate out;
  bool converged = false;
  for (int it = 0; it < 120; ++it) {
    out.iterations = it + 1;
    const auto [n_th, e_th] = moments_at(beta, mu);
    const double r1 = n_th - mo.mean_n;
    const double r2 = e_th - mo.mean_e;
    if (std::abs(r1) <= 1e-12 * std::max(1.0, mo.mean_n) &&
        std::abs(r2) <= 1e-12 * e_scale) {
      converged = true;
      break;
    }
    const FisherMatrix2 f = discrete_fisher(spec, ThermoPoint{beta, mu}, quiet);
    // Jacobian of (<N>, <H>) wrt (beta, mu) from the Fisher relations.
    const double j11 = f.f_bm / beta;
    const double j12 = f.f_mm / beta;
    const double j21 = -f.f_bb + mu * f.f_bm / beta;
    const double j22 = mu * f.f_mm / beta - f.f_bm;
    const double det = j11 * j22 - j12 * j21;
    if (det == 0.0 || !std::isfinite(det)) break;
    double db = -(r1 * j22 - r2 * j12) / det;
    double dm = -(j11 * r2 - j21 * r1) / det;
    // Damping: stay in beta > 0 and (Bose) mu < eps0.
    double step = 1.0;
    while (beta + step * db <= 0.0 || (bose && mu + step * dm >= eps0)) {
      step *= 0.5;
      if (step < 1e-12) break;
    }
    beta += step * db;
    mu += step * dm;
  }

  if (!converged) {
    // Nested 1D fallback: phi(beta) = <H>(beta, mu*(beta)) - mean_e is
    // strictly decreasing in beta.
    auto phi = [&](double b) {
      const double m_star = discrete_solve_mu(spec, b, mo.mean_n, quiet);
      return moments_at(b, m_star).second - mo.mean_e;
    };
    double b_lo = init.beta > 0.0 ? init.beta : 1.0, b_hi = b_lo;
    int guard = 0;
    while (phi(b_lo) < 0.0) {  // too cold already at b_lo -> decrease beta
      b_lo *= 0.5;
      if (++guard > 120) {
        throw Error(ErrorCode::OutOfModelRange,
                    "max_likelihood_estimate: energy moment unreachable");
      }
    }
    guard = 0;
    while (phi(b_hi) > 0.0) {
      b_hi *= 2.0;
      if (++guard > 120) {
        throw Error(ErrorCode::OutOfModelRange,
                    "max_likelihood_estimate: energy moment unreachable");
      }
    }
    for (int it = 0; it < 200 && (b_hi - b_lo) > 1e-14 * b_hi; ++it) {
      const double mid = 0.5 * (b_lo + b_hi);
      (phi(mid) > 0.0 ? b_lo : b_hi) = mid;
      out.iterations++;
    }
    beta = 0.5 * (b_lo + b_hi);
    mu = discrete_solve_mu(spec, beta, mo.mean_n, quiet);
    const auto [n_th, e_th] = moments_at(beta, mu);
    if (std::abs(n_th - mo.mean_n) > 1e-6 * std::max(1.0, mo.mean_n) ||
        std::abs(e_th - mo.mean_e) > 1e-6 * e_scale) {
      throw Error(ErrorCode::ConvergenceFailure,
                  "max_likelihood_estimate: moment matching failed");
    }
  }

  out.estimate = ThermoPoint{beta, mu};
  out.fisher = discrete_fisher(spec, out.estimate, quiet);
  out.hessian_negative_definite = out.fisher.f_bb > 0.0 && out.fisher.det() > 0.0;
  return out;
}

double hckr_bound(const HckrQuery& q) {
  if (q.degeneracy < 1) throw_validation("hckr_bound: degeneracy must be >= 1");
  if (!(q.delta > 0.0)) throw_validation("hckr_bound: delta must be positive");
  return static_cast<double>(q.degeneracy) / (q.delta * q.delta);
}

namespace {

// Exact multiplicity of the Fermi level for a periodic box: enumerate the
// shells S = sum n_i^2 in ascending order until N states are filled.
std::pair<double, bool> box_fermi_degeneracy(int d, double mean_n) {
  const auto n_target = static_cast<std::uint64_t>(std::llround(std::max(1.0, mean_n)));
  if (mean_n > 1e6) {
    // Asymptotic shell density of states.
    double g;
    if (d == 3) {
      g = 2.0 * kPi * std::sqrt(std::pow(3.0 * mean_n / (4.0 * kPi), 2.0 / 3.0));
    } else if (d == 2) {
      g = kPi;
    } else {
      g = 2.0;
    }
    return {g, true};
  }
  int radius;
  if (d == 3) {
    radius = static_cast<int>(std::ceil(std::cbrt(3.0 * mean_n / (4.0 * kPi)))) + 3;
  } else if (d == 2) {
    radius = static_cast<int>(std::ceil(std::sqrt(mean_n / kPi))) + 3;
  } else {
    radius = static_cast<int>(mean_n / 2) + 2;
  }
  std::map<long long, std::uint64_t> shells;
  const long long r2max = static_cast<long long>(radius) * radius;
  auto add = [&](long long s2) {
    if (s2 <= r2max) ++shells[s2];
  };
  if (d == 1) {
    for (long long n = -radius; n <= radius; ++n) add(n * n);
  } else if (d == 2) {
    for (long long nx = -radius; nx <= radius; ++nx)
      for (long long ny = -radius; ny <= radius; ++ny) add(nx * nx + ny * ny);
  } else {
    for (long long nx = -radius; nx <= radius; ++nx)
      for (long long ny = -radius; ny <= radius; ++ny)
        for (long long nz = -radius; nz <= radius; ++nz)
          add(nx * nx + ny * ny + nz * nz);
  }
  std::uint64_t filled = 0;
  for (const auto& [s2, count] : shells) {
    filled += count;
    if (filled >= n_target) return {static_cast<double>(count), false};
  }
  return {1.0, true};  // radius margin exhausted; should not happen
}

std::pair<double, bool> trap_fermi_degeneracy(int d, double mean_n) {
  if (mean_n > 1e6) {
    double fact = 1.0;
    for (int j = 2; j < d; ++j) fact *= j;
    double df = 1.0;
    for (int j = 2; j <= d; ++j) df *= j;
    const double s_f = std::pow(mean_n * df, 1.0 / d);
    return {d == 1 ? 1.0 : std::pow(s_f, d - 1) / fact, true};
  }
  std::uint64_t filled = 0;
  for (std::uint64_t s = 0;; ++s) {
    std::uint64_t mult = 1;
    if (d == 2) mult = s + 1;
    if (d == 3) mult = (s + 1) * (s + 2) / 2;
    filled += mult;
    if (filled >= static_cast<std::uint64_t>(std::llround(std::max(1.0, mean_n)))) {
      return {static_cast<double>(mult), false};
    }
  }
}

}  // namespace

SpacingReport fermi_level_spacing(const GasSpec& spec, double mean_n,
                                  const SpacingQuery& q) {
  spec.validate();
  if (!spec.is_fermi()) throw_domain("fermi_level_spacing: Fermi statistics required");
  if (!(mean_n >= 1.0)) throw_validation("fermi_level_spacing: mean_n must be >= 1");
  const double hbar = spec.hbar();
  SpacingReport rep;
  switch (q.scenario) {
    case SpacingScenario::EdgeAxisBox:
    case SpacingScenario::BulkBox:
    case SpacingScenario::SphericalBox: {
      if (!spec.is_box()) {
        throw Error(ErrorCode::UnsupportedScenario, "box scenario for a trapped gas");
      }
      const double v = spec.volume();
      const int d = spec.dimension;
      auto [g, est] = box_fermi_degeneracy(d, mean_n);
      // In one dimension the box and spherical conventions coincide.
      SpacingScenario sc = q.scenario;
      if (d == 1) sc = SpacingScenario::SphericalBox;
      if (sc == SpacingScenario::EdgeAxisBox) {
        const double u = 2.0 * kPi * hbar;
        rep.delta = u * u / (2.0 * spec.mass * std::pow(v, 2.0 / d));
      } else if (sc == SpacingScenario::BulkBox) {
        rep.delta = hbar * hbar * q.eta / (spec.mass * std::pow(v, 1.0 / d));
      } else {
        const double rho = mean_n / v;
        const double k_f =
            2.0 * std::sqrt(kPi) * hbar * std::pow(rho * std::tgamma(d / 2.0 + 1.0), 1.0 / d);
        rep.delta = k_f / spec.mass * (2.0 * kPi * hbar / std::pow(v, 1.0 / d));
      }
      rep.degeneracy = g;
      rep.degeneracy_estimated = est;
      break;
    }
    case SpacingScenario::IsotropicTrap: {
      if (spec.is_box()) {
        throw Error(ErrorCode::UnsupportedScenario, "trap scenario for a box gas");
      }
      auto [g, est] = trap_fermi_degeneracy(spec.dimension, mean_n);
      rep.delta = hbar * spec.mean_frequency();
      rep.degeneracy = g;
      rep.degeneracy_estimated = est;
      break;
    }
    case SpacingScenario::AnisotropicTrap: {
      if (spec.is_box() || spec.dimension != 3) {
        throw Error(ErrorCode::UnsupportedScenario,
                    "anisotropic trap scenario requires a d=3 trap");
      }
      const double n_exp = q.trap_exponent;
      if (!(n_exp > 0.0) || !(q.rho_t > 0.0)) {
        throw_validation("anisotropic trap: exponent and density must be positive");
      }
      const double w = spec.geometry[0];
      const double alpha_x = std::pow(mean_n * w * w * w / q.rho_t, n_exp / (n_exp + 2.0));
      rep.delta = hbar * w / alpha_x;
      rep.degeneracy = 1.0;  // incommensurate ladder
      rep.degeneracy_estimated = false;
      break;
    }
  }
  rep.j = rep.degeneracy / (rep.delta * rep.delta);
  return rep;
}

}  // namespace qgf
