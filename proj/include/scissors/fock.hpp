#pragma once

#include <array>
#include <complex>
#include <map>
#include <vector>

#include "scissors/errors.hpp"

namespace scissors {

using cplx = std::complex<double>;

/// Squared-norm window treated as "already normalized". normalize() is a
/// no-op inside the window, which makes it exactly idempotent.
inline constexpr double kNormTolerance = 1e-12;

/// Herald probabilities below this are treated as zero (no conditional state).
inline constexpr double kZeroProbability = 1e-15;

enum class Mode : int { a = 0, b = 1, c = 2 };

inline constexpr int mode_index(Mode m) { return static_cast<int>(m); }
const char* mode_name(Mode m);

/// Photon occupations (n_a, n_b, n_c) of one three-mode basis ket.
using Occupation = std::array<int, 3>;

/// Per-mode Fock cutoffs; kept levels of mode m are 0..dim-1.
struct Cutoffs {
  int a = 30;
  int b = 30;
  int c = 30;

  int operator[](Mode m) const {
    switch (m) {
      case Mode::a: return a;
      case Mode::b: return b;
      default: return c;
    }
  }
};

/// Single-mode pure state; amp[n] multiplies the number state |n>.
struct FockVector {
  std::vector<cplx> amp;

  FockVector() = default;
  explicit FockVector(int dim);

  int dim() const { return static_cast<int>(amp.size()); }
  double norm2() const;

  /// Rescales to unit norm. Zero states are an error; states already inside
  /// the kNormTolerance window are returned untouched.
  FockVector& normalize();
};

FockVector fock_basis_state(int n, int dim);

/// Coherent-state coefficients e^{-|alpha|^2/2} alpha^n / sqrt(n!) for
/// n = 0..dim-1, left unnormalized so the cutoff tail stays visible.
FockVector coherent_coefficients(cplx alpha, int dim);

/// Smallest dimension whose coherent-state cutoff tail is below `tail`.
int coherent_dim(double alpha_mod, double tail = 1e-13, int floor_dim = 30);

/// Probability mass lost to the cutoff, assuming the untruncated state had
/// unit norm: max(0, 1 - |v|^2).
double truncation_tail(const FockVector& v);

/// Zero-extends (or keeps) v so it has exactly `dim` levels.
FockVector padded(const FockVector& v, int dim);

/// <u|v>, zero-extending the shorter vector.
cplx inner_product(const FockVector& u, const FockVector& v);

/// max_n |u_n - e^{i gamma} v_n| where gamma = arg<u|v> aligns the global
/// phases. Zero iff the states are equal up to a global phase.
double max_deviation_up_to_global_phase(const FockVector& u, const FockVector& v);

/// Three-mode pure state held as a sparse map from occupation triples to
/// amplitudes. std::map iterates in sorted triple order, so every reduction
/// over the terms is reproducible run to run and thread-count independent.
struct MultimodeState {
  Cutoffs cutoffs;
  std::map<Occupation, cplx> terms;

  /// Accumulates v onto the amplitude at t; t must lie inside the cutoffs.
  void add(const Occupation& t, cplx v);
  double norm2() const;
};

/// max over the union of populated triples of |x(t) - y(t)|.
double max_amplitude_deviation(const MultimodeState& x, const MultimodeState& y);

/// Single-mode mixed state, row-major Fock-basis matrix rho(i,j) = <i|rho|j>.
struct DensityMatrix {
  int dim = 0;
  std::vector<cplx> m;

  DensityMatrix() = default;
  explicit DensityMatrix(int d);

  cplx& at(int i, int j) { return m[static_cast<size_t>(i) * dim + j]; }
  const cplx& at(int i, int j) const { return m[static_cast<size_t>(i) * dim + j]; }

  double trace() const;
  DensityMatrix& normalize();
  double hermiticity_defect() const;
};

DensityMatrix pure_density(const FockVector& v);

/// Cholesky-based test that every eigenvalue exceeds -tol.
bool is_positive_semidefinite(const DensityMatrix& rho, double tol = 1e-10);

enum class Ladder { lower, raise };

/// Operator word written left to right, e.g. {raise, lower} is a†a; the
/// rightmost operator acts on the ket first.
using LadderWord = std::vector<Ladder>;

/// <state| word |state>. If the word pushes population past the cutoff the
/// lost part is dropped and *truncated (when given) is set.
cplx expectation(const FockVector& state, const LadderWord& word, bool* truncated = nullptr);

/// Tr(rho · word), with the same cutoff flag semantics.
cplx expectation(const DensityMatrix& rho, const LadderWord& word, bool* truncated = nullptr);

/// Reduced density matrix of one mode; the trace equals the squared norm of
/// the input state (no renormalization happens here).
DensityMatrix partial_trace(const MultimodeState& state, Mode keep);

}  // namespace scissors
