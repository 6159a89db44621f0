#include "scissors/fock.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>
#include <utility>

namespace scissors {

const char* mode_name(Mode m) {
  switch (m) {
    case Mode::a: return "a";
    case Mode::b: return "b";
    default: return "c";
  }
}

FockVector::FockVector(int dim) {
  if (dim < 1) throw InvalidDimension("FockVector dimension must be >= 1, got " + std::to_string(dim));
  amp.assign(static_cast<size_t>(dim), cplx(0.0, 0.0));
}

double FockVector::norm2() const {
  double s = 0.0;
  for (const cplx& z : amp) s += std::norm(z);
  return s;
}

FockVector& FockVector::normalize() {
  const double n2 = norm2();
  if (n2 <= 0.0) throw Error("cannot normalize a zero state");
  if (std::abs(n2 - 1.0) <= kNormTolerance) return *this;
  const double inv = 1.0 / std::sqrt(n2);
  for (cplx& z : amp) z *= inv;
  return *this;
}

FockVector fock_basis_state(int n, int dim) {
  if (n < 0 || n >= dim) throw InvalidDimension("basis index " + std::to_string(n) + " outside dimension " + std::to_string(dim));
  FockVector v(dim);
  v.amp[static_cast<size_t>(n)] = 1.0;
  return v;
}

FockVector coherent_coefficients(cplx alpha, int dim) {
  FockVector v(dim);
  // Stable recursion psi_n = psi_{n-1} * alpha / sqrt(n); alpha = 0 yields
  // exactly the vacuum.
  v.amp[0] = std::exp(-0.5 * std::norm(alpha));
  for (int n = 1; n < dim; ++n) v.amp[static_cast<size_t>(n)] = v.amp[static_cast<size_t>(n - 1)] * alpha / std::sqrt(double(n));
  return v;
}

int coherent_dim(double alpha_mod, double tail, int floor_dim) {
  if (alpha_mod < 0.0) throw Error("coherent amplitude modulus must be >= 0");
  const double lam = alpha_mod * alpha_mod;
  double term = std::exp(-lam);  // Poisson p(0)
  double cum = term;
  int d = 1;
  while (1.0 - cum > tail && d < 4096) {
    term *= lam / double(d);
    cum += term;
    ++d;
  }
  if (d >= 4096) throw TruncationError("coherent amplitude too large for double-precision Fock representation");
  return std::max(d, floor_dim);
}

double truncation_tail(const FockVector& v) { return std::max(0.0, 1.0 - v.norm2()); }

FockVector padded(const FockVector& v, int dim) {
  if (dim < v.dim()) throw DimensionMismatch("padded() target dimension smaller than source");
  FockVector out(dim);
  std::copy(v.amp.begin(), v.amp.end(), out.amp.begin());
  return out;
}

cplx inner_product(const FockVector& u, const FockVector& v) {
  const int d = std::min(u.dim(), v.dim());
  cplx s(0.0, 0.0);
  for (int n = 0; n < d; ++n) s += std::conj(u.amp[static_cast<size_t>(n)]) * v.amp[static_cast<size_t>(n)];
  return s;
}

double max_deviation_up_to_global_phase(const FockVector& u, const FockVector& v) {
  const int d = std::max(u.dim(), v.dim());
  const cplx ov = inner_product(u, v);
  // If the states do not overlap at all there is no phase to align; report
  // the raw worst-component deviation.
  cplx phase(1.0, 0.0);
  if (std::abs(ov) > 0.0) phase = ov / std::abs(ov);
  double dev = 0.0;
  for (int n = 0; n < d; ++n) {
    const cplx un = n < u.dim() ? u.amp[static_cast<size_t>(n)] : cplx(0.0);
    const cplx vn = n < v.dim() ? v.amp[static_cast<size_t>(n)] : cplx(0.0);
    dev = std::max(dev, std::abs(un - std::conj(phase) * vn));
  }
  return dev;
}

void MultimodeState::add(const Occupation& t, cplx v) {
  if (t[0] < 0 || t[1] < 0 || t[2] < 0 || t[0] >= cutoffs.a || t[1] >= cutoffs.b || t[2] >= cutoffs.c)
    throw Error("occupation (" + std::to_string(t[0]) + "," + std::to_string(t[1]) + "," + std::to_string(t[2]) + ") outside cutoffs");
  terms[t] += v;
}

double MultimodeState::norm2() const {
  double s = 0.0;
  for (const auto& [occ, amp] : terms) s += std::norm(amp);
  return s;
}

double max_amplitude_deviation(const MultimodeState& x, const MultimodeState& y) {
  double dev = 0.0;
  for (const auto& [occ, amp] : x.terms) {
    const auto it = y.terms.find(occ);
    const cplx other = it == y.terms.end() ? cplx(0.0) : it->second;
    dev = std::max(dev, std::abs(amp - other));
  }
  for (const auto& [occ, amp] : y.terms) {
    if (!x.terms.count(occ)) dev = std::max(dev, std::abs(amp));
  }
  return dev;
}

DensityMatrix::DensityMatrix(int d) {
  if (d < 1) throw InvalidDimension("DensityMatrix dimension must be >= 1, got " + std::to_string(d));
  dim = d;
  m.assign(static_cast<size_t>(d) * static_cast<size_t>(d), cplx(0.0, 0.0));
}

double DensityMatrix::trace() const {
  double t = 0.0;
  for (int i = 0; i < dim; ++i) t += at(i, i).real();
  return t;
}

DensityMatrix& DensityMatrix::normalize() {
  const double t = trace();
  if (t <= 0.0) throw Error("cannot normalize a density matrix with non-positive trace");
  if (std::abs(t - 1.0) <= kNormTolerance) return *this;
  const double inv = 1.0 / t;
  for (cplx& z : m) z *= inv;
  return *this;
}

double DensityMatrix::hermiticity_defect() const {
  double d = 0.0;
  for (int i = 0; i < dim; ++i)
    for (int j = i; j < dim; ++j) d = std::max(d, std::abs(at(i, j) - std::conj(at(j, i))));
  return d;
}

DensityMatrix pure_density(const FockVector& v) {
  DensityMatrix rho(v.dim());
  for (int i = 0; i < rho.dim; ++i)
    for (int j = 0; j < rho.dim; ++j) rho.at(i, j) = v.amp[static_cast<size_t>(i)] * std::conj(v.amp[static_cast<size_t>(j)]);
  return rho;
}

bool is_positive_semidefinite(const DensityMatrix& rho, double tol) {
  // Cholesky of rho + tol*I succeeds iff all eigenvalues are >= -tol (up to
  // roundoff), which is all the invariant checks need.
  const int d = rho.dim;
  std::vector<cplx> l(static_cast<size_t>(d) * static_cast<size_t>(d), cplx(0.0));
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j <= i; ++j) {
      cplx s = rho.at(i, j) + (i == j ? cplx(tol) : cplx(0.0));
      for (int k = 0; k < j; ++k) s -= l[static_cast<size_t>(i) * d + k] * std::conj(l[static_cast<size_t>(j) * d + k]);
      if (i == j) {
        const double piv = s.real();
        if (piv < -tol) return false;
        l[static_cast<size_t>(i) * d + j] = std::sqrt(std::max(piv, 0.0));
      } else {
        const double diag = l[static_cast<size_t>(j) * d + j].real();
        l[static_cast<size_t>(i) * d + j] = diag > 0.0 ? s / diag : cplx(0.0);
      }
    }
  }
  return true;
}

cplx expectation(const FockVector& state, const LadderWord& word, bool* truncated) {
  if (truncated) *truncated = false;
  const int d = state.dim();
  std::vector<cplx> v = state.amp;
  for (auto it = word.rbegin(); it != word.rend(); ++it) {
    std::vector<cplx> w(static_cast<size_t>(d), cplx(0.0));
    if (*it == Ladder::lower) {
      for (int n = 0; n + 1 < d; ++n) w[static_cast<size_t>(n)] = std::sqrt(double(n + 1)) * v[static_cast<size_t>(n + 1)];
    } else {
      for (int n = 1; n < d; ++n) w[static_cast<size_t>(n)] = std::sqrt(double(n)) * v[static_cast<size_t>(n - 1)];
      if (truncated && v[static_cast<size_t>(d - 1)] != cplx(0.0)) *truncated = true;
    }
    v = std::move(w);
  }
  cplx s(0.0, 0.0);
  for (int n = 0; n < d; ++n) s += std::conj(state.amp[static_cast<size_t>(n)]) * v[static_cast<size_t>(n)];
  return s;
}

cplx expectation(const DensityMatrix& rho, const LadderWord& word, bool* truncated) {
  if (truncated) *truncated = false;
  // The word maps |m> to coeff(m)|m + shift>; Tr(rho W) = sum_m coeff(m) rho(m, m+shift).
  cplx acc(0.0, 0.0);
  for (int m0 = 0; m0 < rho.dim; ++m0) {
    double coeff = 1.0;
    int cur = m0;
    bool dead = false;
    for (auto it = word.rbegin(); it != word.rend(); ++it) {
      if (*it == Ladder::lower) {
        if (cur == 0) {
          dead = true;
          break;
        }
        coeff *= std::sqrt(double(cur));
        --cur;
      } else {
        ++cur;
        coeff *= std::sqrt(double(cur));
      }
    }
    if (dead) continue;
    if (cur >= rho.dim) {
      if (truncated) *truncated = true;
      continue;
    }
    acc += coeff * rho.at(m0, cur);
  }
  return acc;
}

DensityMatrix partial_trace(const MultimodeState& state, Mode keep) {
  const int k = mode_index(keep);
  const int t1 = k == 0 ? 1 : 0;          // first traced-out mode
  const int t2 = k == 2 ? 1 : 2;          // second traced-out mode
  DensityMatrix rho(state.cutoffs[keep]);
  // Group amplitudes sharing the traced-out occupations, then take outer
  // products within each group.
  std::map<std::pair<int, int>, std::vector<std::pair<int, cplx>>> groups;
  for (const auto& [occ, amp] : state.terms) groups[{occ[static_cast<size_t>(t1)], occ[static_cast<size_t>(t2)]}].emplace_back(occ[static_cast<size_t>(k)], amp);
  for (const auto& [key, slice] : groups) {
    for (const auto& [p, ap] : slice)
      for (const auto& [q, aq] : slice) rho.at(p, q) += ap * std::conj(aq);
  }
  return rho;
}

}  // namespace scissors
