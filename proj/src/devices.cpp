#include "scissors/devices.hpp"

#include <omp.h>

#include <cmath>
#include <limits>
#include <string>
#include <utility>

namespace scissors {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// log k! table, k = 0..n-1.
std::vector<double> log_factorials(int n) {
  std::vector<double> lf(static_cast<size_t>(n));
  for (int k = 0; k < n; ++k) lf[static_cast<size_t>(k)] = std::lgamma(double(k) + 1.0);
  return lf;
}

// Unit-phase powers u^0..u^{n-1} built iteratively (deterministic).
std::vector<cplx> phase_powers(cplx u, int n) {
  std::vector<cplx> p(static_cast<size_t>(n));
  p[0] = cplx(1.0, 0.0);
  for (int k = 1; k < n; ++k) p[static_cast<size_t>(k)] = p[static_cast<size_t>(k - 1)] * u;
  return p;
}

struct LogSplit {
  double log_abs;
  cplx phase;  // unit modulus, or 1 when the value is zero
};

LogSplit log_split(cplx z) {
  const double a = std::abs(z);
  if (a == 0.0) return {kNegInf, cplx(1.0, 0.0)};
  return {std::log(a), z / a};
}

}  // namespace

cplx DeviceParams::transmittance() const { return cplx(std::cos(theta), 0.0); }

cplx DeviceParams::reflectance() const { return cplx(0.0, std::sin(theta)); }

void DeviceParams::validate() const {
  if (!(s >= 0.0)) throw Error("pump strength s must be >= 0");
  if (!std::isfinite(phi) || !std::isfinite(theta)) throw Error("device angles must be finite");
}

cplx squeeze_coefficient(int n, double s, double phi) {
  if (n < 0) throw Error("ladder index must be >= 0");
  if (n == 0) return cplx(1.0 / std::cosh(s), 0.0);
  const cplx ratio = -std::exp(cplx(0.0, phi)) * std::tanh(s);
  cplx out(1.0 / std::cosh(s), 0.0);
  for (int k = 0; k < n; ++k) out *= ratio;
  return out;
}

int squeeze_levels(double s, double tail) {
  if (s <= 0.0) return 1;
  const double lt = 2.0 * std::log(std::tanh(s));  // < 0
  const int n = static_cast<int>(std::ceil(std::log(tail) / lt));
  if (n > 512) throw TruncationError("pump strength too large for double-precision Fock simulation");
  return std::max(n, 1);
}

Cutoffs default_cutoffs(const FockVector& input, const DeviceParams& p) {
  const int ns = squeeze_levels(p.s);
  const int da = std::max(30, ns);
  const int dbc = std::max(30, input.dim() + ns);
  return Cutoffs{da, dbc, dbc};
}

double estimate_dropped_mass(const FockVector& input, const DeviceParams& p, const Cutoffs& cut) {
  // The output state decomposes orthogonally over (input index i, ladder
  // index n): each sector carries mass |psi_i|^2 |A_n|^2 and populates only
  // n_a = n, n_b + n_c = i + n. A sector is fully retained when n < D_a and
  // i + n < min(D_b, D_c); summing the mass of every other sector bounds the
  // dropped mass from above.
  const double t2 = std::tanh(p.s) * std::tanh(p.s);
  const double norm_in = input.norm2();
  double dropped = norm_in * std::pow(t2, double(cut.a));  // all sectors with n >= D_a
  const int dmin = std::min(cut.b, cut.c);
  const double sech2 = 1.0 / (std::cosh(p.s) * std::cosh(p.s));
  for (int n = 0; n < cut.a; ++n) {
    const double an2 = sech2 * std::pow(t2, double(n));
    double psi_mass = 0.0;
    for (int i = std::max(0, dmin - n); i < input.dim(); ++i) psi_mass += std::norm(input.amp[static_cast<size_t>(i)]);
    dropped += an2 * psi_mass;
    if (an2 * norm_in < 1e-300) break;
  }
  return dropped;
}

namespace {

MultimodeState closed_form_impl(const FockVector& input, const DeviceParams& p, const Cutoffs& cut, bool parallel) {
  p.validate();
  if (cut.a < 1 || cut.b < 1 || cut.c < 1) throw InvalidDimension("cutoffs must be >= 1");
  const double in_norm = input.norm2();
  if (std::abs(in_norm - 1.0) > 1e-9)
    throw Error("input state must be normalized (|norm^2 - 1| = " + display_value(std::abs(in_norm - 1.0)) + ")");
  const double dropped = estimate_dropped_mass(input, p, cut);
  if (dropped > 1e-9)
    throw TruncationError("cutoffs (" + std::to_string(cut.a) + "," + std::to_string(cut.b) + "," + std::to_string(cut.c) +
                          ") drop an estimated probability mass " + display_value(dropped));

  const int din = input.dim();
  const int na_max = cut.a;                      // ladder index n == n_a, so n < D_a suffices
  const auto lf = log_factorials(din + na_max);  // covers i, n, and i+n for B and t

  // Input amplitudes and ladder coefficients in log-magnitude + phase form.
  std::vector<double> lpsi(static_cast<size_t>(din));
  std::vector<cplx> upsi(static_cast<size_t>(din));
  for (int i = 0; i < din; ++i) {
    const auto sp = log_split(input.amp[static_cast<size_t>(i)]);
    lpsi[static_cast<size_t>(i)] = sp.log_abs;
    upsi[static_cast<size_t>(i)] = sp.phase;
  }
  const double log_sech = -std::log(std::cosh(p.s));
  const double log_tanh = p.s > 0.0 ? std::log(std::tanh(p.s)) : kNegInf;
  std::vector<double> la(static_cast<size_t>(na_max));
  for (int n = 0; n < na_max; ++n) la[static_cast<size_t>(n)] = n == 0 ? log_sech : (log_tanh == kNegInf ? kNegInf : log_sech + n * log_tanh);
  const auto ua = phase_powers(-std::exp(cplx(0.0, p.phi)), na_max);  // (-e^{i phi})^n

  const cplx t_amp = p.transmittance();
  const cplx r_amp = p.reflectance();
  const auto t_split = log_split(t_amp);
  const auto r_split = log_split(r_amp);
  const int pow_max = din + na_max;
  const auto pow_t = phase_powers(t_split.phase, pow_max);
  const auto pow_tc = phase_powers(std::conj(t_split.phase), pow_max);
  const auto pow_r = phase_powers(r_split.phase, pow_max);
  const auto pow_mrc = phase_powers(-std::conj(r_split.phase), pow_max);

  // One partial map per input index; contributions to a given triple are
  // accumulated in (n, j, m) loop order inside a partial and partials are
  // merged in ascending i, so the addition order per triple never depends on
  // the schedule and parallel output is bit-identical to serial output.
  std::vector<std::map<Occupation, cplx>> partial(static_cast<size_t>(din));
  const int nthreads = parallel ? omp_get_max_threads() : 1;
#pragma omp parallel for schedule(dynamic) num_threads(nthreads)
  for (int i = 0; i < din; ++i) {
    if (lpsi[static_cast<size_t>(i)] == kNegInf) continue;
    auto& local = partial[static_cast<size_t>(i)];
    for (int n = 0; n < na_max; ++n) {
      if (la[static_cast<size_t>(n)] == kNegInf) continue;
      const double base = lpsi[static_cast<size_t>(i)] + la[static_cast<size_t>(n)] + 0.5 * (lf[static_cast<size_t>(i)] + lf[static_cast<size_t>(n)]);
      const cplx base_phase = upsi[static_cast<size_t>(i)] * ua[static_cast<size_t>(n)];
      for (int j = 0; j <= i; ++j) {
        for (int m = 0; m <= n; ++m) {
          const int nb = i - j + n - m;
          if (nb >= cut.b) continue;
          const int nc = j + m;
          if (nc >= cut.c) continue;
          const int exp_t = j + (n - m);
          const int exp_r = m + (i - j);
          if (exp_t > 0 && t_split.log_abs == kNegInf) continue;
          if (exp_r > 0 && r_split.log_abs == kNegInf) continue;
          double lm = base - lf[static_cast<size_t>(j)] - lf[static_cast<size_t>(i - j)] - lf[static_cast<size_t>(m)] -
                      lf[static_cast<size_t>(n - m)] + 0.5 * (lf[static_cast<size_t>(nb)] + lf[static_cast<size_t>(nc)]);
          if (exp_t > 0) lm += exp_t * t_split.log_abs;
          if (exp_r > 0) lm += exp_r * r_split.log_abs;
          const cplx amp = std::exp(lm) * base_phase * pow_t[static_cast<size_t>(j)] * pow_tc[static_cast<size_t>(n - m)] *
                           pow_r[static_cast<size_t>(m)] * pow_mrc[static_cast<size_t>(i - j)];
          local[Occupation{n, nb, nc}] += amp;
        }
      }
    }
  }

  MultimodeState out;
  out.cutoffs = cut;
  for (int i = 0; i < din; ++i)
    for (const auto& [occ, amp] : partial[static_cast<size_t>(i)]) out.terms[occ] += amp;
  return out;
}

}  // namespace

MultimodeState output_state_closed_form(const FockVector& input, const DeviceParams& p, const Cutoffs& cut) {
  return closed_form_impl(input, p, cut, true);
}

MultimodeState output_state_closed_form_serial(const FockVector& input, const DeviceParams& p, const Cutoffs& cut) {
  return closed_form_impl(input, p, cut, false);
}

}  // namespace scissors
