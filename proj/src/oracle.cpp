#include <omp.h>

#include <atomic>
#include <cmath>
#include <exception>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "scissors/devices.hpp"

namespace scissors {

namespace {

// Cyclic Jacobi eigensolver for a real symmetric matrix (row-major, size n).
// Plenty for the beamsplitter blocks (n <= a few hundred); deterministic
// sweep order, so results are reproducible.
void jacobi_eigen(int n, std::vector<double> a, std::vector<double>& eigvec, std::vector<double>& eigval) {
  eigvec.assign(static_cast<size_t>(n) * static_cast<size_t>(n), 0.0);
  for (int i = 0; i < n; ++i) eigvec[static_cast<size_t>(i) * n + i] = 1.0;
  auto at = [&](std::vector<double>& mat, int i, int j) -> double& { return mat[static_cast<size_t>(i) * n + j]; };

  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0, diag = 0.0;
    for (int p = 0; p < n; ++p) {
      diag += at(a, p, p) * at(a, p, p);
      for (int q = p + 1; q < n; ++q) off += at(a, p, q) * at(a, p, q);
    }
    if (off <= 1e-28 * std::max(1.0, diag)) {
      eigval.resize(static_cast<size_t>(n));
      for (int i = 0; i < n; ++i) eigval[static_cast<size_t>(i)] = at(a, i, i);
      return;
    }
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const double apq = at(a, p, q);
        if (apq == 0.0) continue;
        const double tau = (at(a, q, q) - at(a, p, p)) / (2.0 * apq);
        const double t = tau >= 0.0 ? 1.0 / (tau + std::sqrt(1.0 + tau * tau)) : -1.0 / (-tau + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        for (int k = 0; k < n; ++k) {
          const double akp = at(a, k, p), akq = at(a, k, q);
          at(a, k, p) = c * akp - s * akq;
          at(a, k, q) = s * akp + c * akq;
        }
        for (int k = 0; k < n; ++k) {
          const double apk = at(a, p, k), aqk = at(a, q, k);
          at(a, p, k) = c * apk - s * aqk;
          at(a, q, k) = s * apk + c * aqk;
        }
        for (int k = 0; k < n; ++k) {
          const double vkp = at(eigvec, k, p), vkq = at(eigvec, k, q);
          at(eigvec, k, p) = c * vkp - s * vkq;
          at(eigvec, k, q) = s * vkp + c * vkq;
        }
      }
    }
  }
  throw OracleFailure("Jacobi eigensolver failed to converge");
}

// exp(xi* ab - xi a†b†)|0,0> on a levels x levels two-mode grid, evaluated by
// sub-stepped Taylor series of the generator action. The generator is
// anti-Hermitian, so each sub-step preserves the norm; |norm - 1| measures
// the quality of the series evaluation.
std::vector<cplx> amplified_vacuum_grid(double s, double phi, int levels) {
  const size_t dim = static_cast<size_t>(levels) * static_cast<size_t>(levels);
  std::vector<cplx> v(dim, cplx(0.0));
  v[0] = cplx(1.0, 0.0);
  if (s == 0.0) return v;

  const cplx xi = s * std::exp(cplx(0.0, phi));
  const cplx xic = std::conj(xi);
  std::vector<double> sq(static_cast<size_t>(levels) + 1);
  for (int k = 0; k <= levels; ++k) sq[static_cast<size_t>(k)] = std::sqrt(double(k));
  auto apply_generator = [&](const std::vector<cplx>& in, std::vector<cplx>& out) {
    for (int na = 0; na < levels; ++na) {
      for (int nb = 0; nb < levels; ++nb) {
        cplx z(0.0, 0.0);
        if (na + 1 < levels && nb + 1 < levels)
          z += xic * sq[static_cast<size_t>(na + 1)] * sq[static_cast<size_t>(nb + 1)] * in[static_cast<size_t>(na + 1) * levels + nb + 1];
        if (na > 0 && nb > 0)
          z -= xi * sq[static_cast<size_t>(na)] * sq[static_cast<size_t>(nb)] * in[static_cast<size_t>(na - 1) * levels + nb - 1];
        out[static_cast<size_t>(na) * levels + nb] = z;
      }
    }
  };

  const int steps = static_cast<int>(std::ceil(2.0 * s * levels)) + 1;
  std::vector<cplx> term(dim), next(dim);
  for (int step = 0; step < steps; ++step) {
    term = v;
    for (int k = 1;; ++k) {
      if (k > 80) throw OracleFailure("amplifier exponential series failed to converge");
      apply_generator(term, next);
      const double inv = 1.0 / (double(steps) * double(k));
      double tn = 0.0, vn = 0.0;
      for (size_t idx = 0; idx < dim; ++idx) {
        next[idx] *= inv;
        v[idx] += next[idx];
        tn += std::norm(next[idx]);
        vn += std::norm(v[idx]);
      }
      term.swap(next);
      if (tn <= 1e-34 * vn) break;
    }
  }

  double n2 = 0.0;
  for (const cplx& z : v) n2 += std::norm(z);
  if (std::abs(n2 - 1.0) > 1e-8)
    throw OracleFailure("amplifier exponential lost unitarity: |norm^2 - 1| = " + display_value(std::abs(n2 - 1.0)));
  return v;
}

}  // namespace

BeamsplitterBlocks::BeamsplitterBlocks(int max_total) {
  if (max_total < 0) throw Error("beamsplitter block total must be >= 0");
  blocks_.resize(static_cast<size_t>(max_total) + 1);
  // Exceptions must not escape the parallel region (that would terminate the
  // process); capture the first one and rethrow after the loop.
  std::atomic<bool> failed{false};
  std::exception_ptr first_error;
#pragma omp parallel for schedule(dynamic)
  for (int total = 0; total <= max_total; ++total) {
    if (failed.load(std::memory_order_relaxed)) continue;
    try {
      const int n = total + 1;
      // J(k, k+1) = sqrt((k+1)(total-k)) on the |n_b = k, n_c = total - k> basis.
      std::vector<double> j(static_cast<size_t>(n) * static_cast<size_t>(n), 0.0);
      for (int k = 0; k + 1 < n; ++k) {
        const double cpl = std::sqrt(double(k + 1) * double(total - k));
        j[static_cast<size_t>(k) * n + k + 1] = cpl;
        j[static_cast<size_t>(k + 1) * n + k] = cpl;
      }
      Block blk;
      jacobi_eigen(n, std::move(j), blk.eigvec, blk.eigval);
      blocks_[static_cast<size_t>(total)] = std::move(blk);
    } catch (...) {
#pragma omp critical(scissors_blocks_error)
      {
        if (!failed.exchange(true)) first_error = std::current_exception();
      }
    }
  }
  if (first_error) std::rethrow_exception(first_error);
}

std::vector<cplx> BeamsplitterBlocks::column(int total, int k, double theta) const {
  if (total < 0 || total > max_total()) throw Error("beamsplitter block total out of range");
  const Block& blk = blocks_[static_cast<size_t>(total)];
  const int n = total + 1;
  if (k < 0 || k >= n) throw Error("beamsplitter block column out of range");
  // exp(i theta J) e_k = V diag(e^{i theta lambda}) V^T e_k.
  std::vector<cplx> w(static_cast<size_t>(n));
  for (int j = 0; j < n; ++j)
    w[static_cast<size_t>(j)] = std::exp(cplx(0.0, theta * blk.eigval[static_cast<size_t>(j)])) * blk.eigvec[static_cast<size_t>(k) * n + j];
  std::vector<cplx> out(static_cast<size_t>(n), cplx(0.0));
  for (int r = 0; r < n; ++r) {
    cplx z(0.0, 0.0);
    for (int j = 0; j < n; ++j) z += blk.eigvec[static_cast<size_t>(r) * n + j] * w[static_cast<size_t>(j)];
    out[static_cast<size_t>(r)] = z;
  }
  return out;
}

MultimodeState output_state_oracle(const FockVector& input, const DeviceParams& p, const Cutoffs& cut, int pad,
                                   const BeamsplitterBlocks* cache) {
  p.validate();
  if (cut.a < 1 || cut.b < 1 || cut.c < 1) throw InvalidDimension("cutoffs must be >= 1");
  if (pad < 0) throw Error("oracle pad must be >= 0");
  const double in_norm = input.norm2();
  if (std::abs(in_norm - 1.0) > 1e-9) throw Error("input state must be normalized");
  const double dropped = estimate_dropped_mass(input, p, cut);
  if (dropped > 1e-9) throw TruncationError("cutoffs drop an estimated probability mass " + display_value(dropped));

  const int levels = cut.a + pad;
  const auto grid = amplified_vacuum_grid(p.s, p.phi, levels);
  // The amplifier generator conserves n_a - n_b even on the truncated grid,
  // so only the diagonal is populated.
  std::vector<cplx> ladder(static_cast<size_t>(cut.a));
  for (int n = 0; n < cut.a; ++n) ladder[static_cast<size_t>(n)] = grid[static_cast<size_t>(n) * levels + n];

  const int din = input.dim();
  const int needed = cut.a - 1 + din - 1;
  BeamsplitterBlocks own(cache ? 0 : needed);
  const BeamsplitterBlocks* blocks = cache ? cache : &own;
  if (blocks->max_total() < needed) throw Error("beamsplitter block cache too small for these dimensions");

  MultimodeState out;
  out.cutoffs = cut;
  double column_norm_defect = 0.0;
  for (int na = 0; na < cut.a; ++na) {
    if (ladder[static_cast<size_t>(na)] == cplx(0.0)) continue;
    for (int i = 0; i < din; ++i) {
      const cplx scale = ladder[static_cast<size_t>(na)] * input.amp[static_cast<size_t>(i)];
      if (scale == cplx(0.0)) continue;
      const int total = na + i;
      const auto col = blocks->column(total, na, p.theta);
      double cn = 0.0;
      for (int k = 0; k <= total; ++k) {
        cn += std::norm(col[static_cast<size_t>(k)]);
        const int nb = k, nc = total - k;
        if (nb < cut.b && nc < cut.c) out.add(Occupation{na, nb, nc}, scale * col[static_cast<size_t>(k)]);
      }
      column_norm_defect = std::max(column_norm_defect, std::abs(cn - 1.0));
    }
  }
  if (column_norm_defect > 1e-8)
    throw OracleFailure("beamsplitter exponential lost unitarity: |column norm^2 - 1| = " + display_value(column_norm_defect));
  return out;
}

OracleCheckReport run_oracle_check(int dim, int workers) {
  const double pi = std::numbers::pi;
  const std::vector<double> s_grid{0.0, 0.25, 0.5, 0.8};
  const std::vector<double> theta_grid{0.0, pi / 8, pi / 4, 3 * pi / 8, pi / 2};
  const std::vector<double> phi_grid{0.0, pi / 2, pi};
  const std::vector<double> alpha_grid{0.0, 1.0, 1.5};

  struct Point {
    double s, theta, phi, alpha;
  };
  std::vector<Point> pts;
  for (double s : s_grid)
    for (double th : theta_grid)
      for (double ph : phi_grid)
        for (double al : alpha_grid) pts.push_back({s, th, ph, al});

  const Cutoffs cut{dim, dim, dim};
  const BeamsplitterBlocks blocks(2 * (dim - 1));
  OracleCheckReport rep;
  rep.points = static_cast<int>(pts.size());
  rep.dim = dim;

  const int nthreads = workers > 0 ? workers : omp_get_max_threads();
  // Exceptions must not escape the parallel region (that would terminate the
  // process); capture the first one and rethrow after the loop.
  std::atomic<bool> failed{false};
  std::exception_ptr first_error;
#pragma omp parallel num_threads(nthreads)
  {
    OracleCheckReport local = rep;
#pragma omp for schedule(dynamic) nowait
    for (size_t idx = 0; idx < pts.size(); ++idx) {
      if (failed.load(std::memory_order_relaxed)) continue;
      try {
        const Point& pt = pts[idx];
        const FockVector input = coherent_coefficients(cplx(pt.alpha, 0.0), dim);
        const DeviceParams params{pt.s, pt.phi, pt.theta};
        const MultimodeState closed = output_state_closed_form_serial(input, params, cut);
        const MultimodeState numeric = output_state_oracle(input, params, cut, 15, &blocks);
        const double dev = max_amplitude_deviation(closed, numeric);
        if (dev > local.max_amplitude_deviation) {
          local.max_amplitude_deviation = dev;
          local.worst_s = pt.s;
          local.worst_theta = pt.theta;
          local.worst_phi = pt.phi;
          local.worst_alpha = pt.alpha;
        }
      } catch (...) {
#pragma omp critical(scissors_oracle_check_error)
        {
          if (!failed.exchange(true)) first_error = std::current_exception();
        }
      }
    }
#pragma omp critical(scissors_oracle_check_reduce)
    {
      if (local.max_amplitude_deviation > rep.max_amplitude_deviation) {
        rep.max_amplitude_deviation = local.max_amplitude_deviation;
        rep.worst_s = local.worst_s;
        rep.worst_theta = local.worst_theta;
        rep.worst_phi = local.worst_phi;
        rep.worst_alpha = local.worst_alpha;
      }
    }
  }
  if (first_error) std::rethrow_exception(first_error);
  return rep;
}

}  // namespace scissors
