#include "simdeg/ascent.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace simdeg {

namespace {

double inner(const MatrixTuple& a, const MatrixTuple& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i].conjugate().array() * b[i].array()).sum().real();
  return s;
}

MatrixTuple axpy(const MatrixTuple& x, double t, const MatrixTuple& g) {
  MatrixTuple out = x;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += t * g[i];
  return out;
}

MatrixTuple random_point(const std::vector<AscentBlock>& blocks, Rng& rng) {
  MatrixTuple x;
  x.reserve(blocks.size());
  for (const AscentBlock& b : blocks) {
    CMatrix g = random_gaussian(static_cast<std::size_t>(b.rows), static_cast<std::size_t>(b.cols), rng);
    const double n = b.ball == BallNorm::Operator ? op_norm(g) : g.norm();
    x.push_back(n > 0.0 ? CMatrix(g / n) : g);
  }
  return x;
}

MatrixTuple finite_difference(const AscentProblem& p, const MatrixTuple& x, double step, int& evals) {
  MatrixTuple g;
  g.reserve(x.size());
  MatrixTuple probe = x;
  for (std::size_t b = 0; b < x.size(); ++b) {
    CMatrix gb(x[b].rows(), x[b].cols());
    for (Eigen::Index j = 0; j < x[b].cols(); ++j)
      for (Eigen::Index i = 0; i < x[b].rows(); ++i) {
        const Complex orig = x[b](i, j);
        const double h = step * std::max(1.0, std::abs(orig));
        double parts[2];
        for (int k = 0; k < 2; ++k) {
          const Complex dir = k == 0 ? Complex(h, 0.0) : Complex(0.0, h);
          probe[b](i, j) = orig + dir;
          const double fp = p.objective(probe);
          probe[b](i, j) = orig - dir;
          const double fm = p.objective(probe);
          parts[k] = (fp - fm) / (2.0 * h);
          evals += 2;
        }
        probe[b](i, j) = orig;
        gb(i, j) = Complex(parts[0], parts[1]);
      }
    g.push_back(std::move(gb));
  }
  return g;
}

}  // namespace

MatrixTuple project_to_balls(const std::vector<AscentBlock>& blocks, MatrixTuple x) {
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    if (blocks[b].ball == BallNorm::Operator) {
      x[b] = clip_to_contraction(x[b]);
    } else {
      const double n = x[b].norm();
      if (n > 1.0) x[b] /= n;
    }
  }
  return x;
}

CMatrix op_norm_gradient(const CMatrix& x) {
  Eigen::JacobiSVD<CMatrix> svd(x, Eigen::ComputeThinU | Eigen::ComputeThinV);
  if (svd.singularValues().size() == 0 || svd.singularValues()(0) == 0.0)
    return CMatrix::Zero(x.rows(), x.cols());
  return svd.matrixU().col(0) * svd.matrixV().col(0).adjoint();
}

AscentResult ascent_lower_bound(const AscentProblem& p, const AscentOptions& o) {
  if (!p.objective) throw std::invalid_argument("ascent_lower_bound: objective missing");
  if (o.restarts < 0) throw std::invalid_argument("ascent_lower_bound: negative restart count");

  AscentResult best;
  auto start_for = [&](int run) {
    // The first run ascends from the point evaluated at run 0.
    Rng rng(derive_seed(o.seed, static_cast<std::uint64_t>(run <= 1 ? 0 : run)));
    if (run <= 1 && p.initial) return project_to_balls(p.blocks, *p.initial);
    return project_to_balls(p.blocks, p.sampler ? p.sampler(rng) : random_point(p.blocks, rng));
  };

  best.point = start_for(0);
  best.value = p.objective(best.point);
  best.evaluations = 1;

  for (int run = 1; run <= o.restarts; ++run) {
    MatrixTuple x = start_for(run);
    double fx = p.objective(x);
    ++best.evaluations;
    double t = 1.0;
    int quiet = 0;
    for (int it = 0; it < o.max_iterations; ++it) {
      const MatrixTuple g = p.gradient ? p.gradient(x) : finite_difference(p, x, o.fd_step, best.evaluations);
      if (std::sqrt(inner(g, g)) < 1e-14) break;
      bool moved = false;
      t = std::min(2.0 * t, 1e3);
      while (t > 1e-14) {
        MatrixTuple cand = project_to_balls(p.blocks, axpy(x, t, g));
        const double fc = p.objective(cand);
        ++best.evaluations;
        MatrixTuple step = axpy(cand, -1.0, x);
        if (std::isfinite(fc) && fc >= fx + 1e-4 * inner(g, step) && fc > fx) {
          const double gain = fc - fx;
          x = std::move(cand);
          fx = fc;
          moved = true;
          quiet = gain <= o.rel_tol * (1.0 + std::abs(fx)) ? quiet + 1 : 0;
          break;
        }
        t *= 0.5;
      }
      if (!moved || quiet >= 3) break;
    }
    if (fx > best.value) {
      best.value = fx;
      best.point = x;
    }
  }
  return best;
}

}  // namespace simdeg
