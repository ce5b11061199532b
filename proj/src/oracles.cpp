#include "oracles.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <cmath>
#include <random>

namespace dfkg::oracle {

Eigen::MatrixXcd dft_matrix(const TorusGrid& grid) {
  const Eigen::Index M = grid.size();
  Eigen::MatrixXcd F(M, M);
  const double scale = 1.0 / std::sqrt(static_cast<double>(M));
  for (Eigen::Index row = 0; row < M; ++row) {
    const Point xi = grid.freq(row);
    for (Eigen::Index col = 0; col < M; ++col) {
      const Point x = grid.node(col);
      const double phase = -(xi[0] * x[0] + xi[1] * x[1]);
      F(row, col) = scale * Complex(std::cos(phase), std::sin(phase));
    }
  }
  return F;
}

double sigma_min_normal(const Eigen::MatrixXcd& A) {
  const Eigen::MatrixXcd N = A.adjoint() * A;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(N);
  const double lam = es.eigenvalues()(0);
  return lam > 0.0 ? std::sqrt(lam) : 0.0;
}

std::pair<Complex, Complex> mode_ode_rk4(double a0, double sigma, Complex u0,
                                         Complex v0, double t, int steps) {
  const double dt = t / steps;
  Complex u = u0, v = v0;
  auto fu = [](Complex, Complex v_) { return v_; };
  auto fv = [a0, sigma](Complex u_, Complex v_) {
    return -sigma * u_ - a0 * v_;
  };
  for (int i = 0; i < steps; ++i) {
    const Complex k1u = fu(u, v), k1v = fv(u, v);
    const Complex k2u = fu(u + 0.5 * dt * k1u, v + 0.5 * dt * k1v);
    const Complex k2v = fv(u + 0.5 * dt * k1u, v + 0.5 * dt * k1v);
    const Complex k3u = fu(u + 0.5 * dt * k2u, v + 0.5 * dt * k2v);
    const Complex k3v = fv(u + 0.5 * dt * k2u, v + 0.5 * dt * k2v);
    const Complex k4u = fu(u + dt * k3u, v + dt * k3v);
    const Complex k4v = fv(u + dt * k3u, v + dt * k3v);
    u += dt / 6.0 * (k1u + 2.0 * k2u + 2.0 * k3u + k4u);
    v += dt / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
  }
  return {u, v};
}

namespace {

double sum_objective(const Eigen::MatrixXcd& P1, const Eigen::MatrixXcd& P2,
                     const Eigen::VectorXcd& f) {
  return (P1 * f).norm() + (P2 * f).norm();
}

}  // namespace

double sharp_sum_constant_estimate(const Eigen::MatrixXcd& P1,
                                   const Eigen::MatrixXcd& P2,
                                   const Eigen::VectorXcd& seed, int restarts,
                                   int iters) {
  const Eigen::Index n = P1.cols();
  std::mt19937_64 rng(0x0b5e55edULL);
  std::normal_distribution<double> gauss(0.0, 1.0);

  double best = seed.size() == n
                    ? sum_objective(P1, P2, seed.normalized())
                    : std::numeric_limits<double>::infinity();

  for (int r = 0; r < restarts + 1; ++r) {
    Eigen::VectorXcd f(n);
    if (r == 0 && seed.size() == n) {
      f = seed.normalized();
    } else {
      for (Eigen::Index i = 0; i < n; ++i)
        f[i] = Complex(gauss(rng), gauss(rng));
      f.normalize();
    }
    double step = 0.5;
    double val = sum_objective(P1, P2, f);
    for (int it = 0; it < iters; ++it) {
      // Subgradient of |P1 f| + |P2 f|.
      const Eigen::VectorXcd g1 = P1 * f;
      const Eigen::VectorXcd g2 = P2 * f;
      Eigen::VectorXcd grad = Eigen::VectorXcd::Zero(n);
      if (g1.norm() > 1e-14) grad += P1.adjoint() * g1 / g1.norm();
      if (g2.norm() > 1e-14) grad += P2.adjoint() * g2 / g2.norm();
      Eigen::VectorXcd cand = (f - step * grad).normalized();
      const double cand_val = sum_objective(P1, P2, cand);
      if (cand_val < val) {
        f = cand;
        val = cand_val;
      } else {
        step *= 0.7;
        if (step < 1e-10) break;
      }
    }
    best = std::min(best, val);
  }
  return best > 0.0 ? 1.0 / best : std::numeric_limits<double>::infinity();
}

RadialScan scan_annulus(double lambda, double s, double mu, double xi_max,
                        int n) {
  RadialScan out;
  for (int i = 0; i <= n; ++i) {
    const double r = xi_max * i / n;
    const double h = std::pow(r * r + 1.0, s / 4.0);
    if (std::abs(h - lambda) < mu) {
      if (!out.any) {
        out.any = true;
        out.first = r;
      }
      out.last = r;
    }
  }
  return out;
}

double mode_sigma_min_full(double h, double a0, double lambda) {
  Eigen::Matrix2cd blk;
  blk << Complex(0.0, -lambda), Complex(h, 0.0), Complex(-h, 0.0),
      Complex(-a0, -lambda);
  Eigen::JacobiSVD<Eigen::Matrix2cd> svd(blk);
  return svd.singularValues()(1);
}

double mode_sigma_min_halfwave(double h, double a0, double lambda) {
  return std::sqrt((h - lambda) * (h - lambda) + a0);
}

}  // namespace dfkg::oracle
