#include "resolvent.hpp"

#include "parallel.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>

namespace dfkg {

std::string to_string(OperatorKind k) {
  switch (k) {
    case OperatorKind::FullA: return "full_A";
    case OperatorKind::Halfwave: return "halfwave";
    case OperatorKind::OneSided: return "one_sided";
    case OperatorKind::TwoSided: return "two_sided";
  }
  return "?";
}

double sigma_min_dense(const Eigen::MatrixXcd& A) {
  // BDCSVD drops digits on the projection-structured complex matrices
  // assembled here (clustered singular values); one-sided Jacobi stays at
  // machine precision and the dense sizes are modest.
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(A);
  const auto& sv = svd.singularValues();
  return sv.size() > 0 ? sv(sv.size() - 1) : 0.0;
}

IterativeResult sigma_min_iterative(const ApplyFn& apply_op,
                                    const ApplyFn& apply_adjoint,
                                    Eigen::Index dim, double tol,
                                    int max_outer, int cg_max) {
  auto normal = [&](const Eigen::VectorXcd& v) {
    return apply_adjoint(apply_op(v));
  };

  std::mt19937_64 rng(0x5eed0001ULL);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::VectorXcd x(dim);
  for (Eigen::Index i = 0; i < dim; ++i) x[i] = Complex(gauss(rng), gauss(rng));
  x.normalize();

  // Estimate |T*T| by power iteration; the convergence test is residual
  // based and needs the scale.
  double theta_max = 0.0;
  {
    Eigen::VectorXcd p = x;
    for (int i = 0; i < 20; ++i) {
      p = normal(p);
      theta_max = p.norm();
      if (theta_max <= 0.0) break;
      p /= theta_max;
    }
  }
  if (theta_max <= 0.0) {
    // T*T annihilates the probe; treat as singular but do not certify.
    IterativeResult res;
    res.sigma = 0.0;
    res.converged = false;
    return res;
  }

  IterativeResult res;
  for (int outer = 0; outer < max_outer; ++outer) {
    // CG solve (T*T) y = x.
    Eigen::VectorXcd y = Eigen::VectorXcd::Zero(dim);
    Eigen::VectorXcd r = x;
    Eigen::VectorXcd p = r;
    double rs = r.squaredNorm();
    const double rs0 = rs;
    bool cg_ok = false;
    for (int it = 0; it < cg_max; ++it) {
      const Eigen::VectorXcd Np = normal(p);
      const Complex denom = p.dot(Np);
      if (std::abs(denom) < 1e-300) break;
      const Complex alpha = rs / denom;
      y += alpha * p;
      r -= alpha * Np;
      const double rs_new = r.squaredNorm();
      if (rs_new <= 1e-30 * rs0) {
        cg_ok = true;
        break;
      }
      p = r + (rs_new / rs) * p;
      rs = rs_new;
    }
    if (!cg_ok) break;

    x = y.normalized();
    const double theta = std::real(x.dot(normal(x)));
    const double resid = (normal(x) - theta * x).norm();
    res.iterations = outer + 1;
    if (resid <= std::max(tol * theta_max, 1e-14)) {
      res.sigma = theta > 0.0 ? std::sqrt(theta) : 0.0;
      res.converged = true;
      res.residual = resid;
      return res;
    }
  }
  const double theta = std::real(x.dot(normal(x)));
  res.sigma = theta > 0.0 ? std::sqrt(theta) : 0.0;
  res.converged = false;
  res.residual = (normal(x) - theta * x).norm();
  return res;
}

namespace {

ResolventPoint finish_point(ResolventPoint p, double sigma) {
  p.sigma_min = sigma;
  p.constant = sigma > 0.0 ? 1.0 / sigma
                           : std::numeric_limits<double>::infinity();
  p.sum_lo = p.constant / std::numbers::sqrt2;
  p.sum_hi = p.constant;
  return p;
}

Eigen::VectorXcd adjoint_weighted(const Generator& gen,
                                  const Eigen::VectorXcd& z, double lambda) {
  // (A_w - i lambda)^* = [[0, -H], [H, -M_a]] + i lambda.
  const Eigen::Index M = gen.grid().size();
  const Eigen::VectorXd& h = gen.half_symbols();
  Eigen::VectorXcd out(2 * M);
  for (Eigen::Index k = 0; k < M; ++k) out[k] = -h[k] * z[M + k];
  SpectralField v{gen.grid(), Rep::Freq, z.tail(M)};
  SpectralField av = to_space(v);
  av.values.array() *= gen.damping_samples().array().cast<Complex>();
  const Eigen::VectorXcd av_hat = to_freq(av).values;
  for (Eigen::Index k = 0; k < M; ++k) out[M + k] = h[k] * z[k] - av_hat[k];
  out += Complex(0.0, lambda) * z;
  return out;
}

}  // namespace

ResolventPoint resolvent_constant_full(const Generator& gen, double lambda,
                                       SigmaMethod method) {
  ResolventPoint p;
  p.lambda = lambda;
  p.op = OperatorKind::FullA;
  const bool dense = method == SigmaMethod::DenseSvd ||
                     (method == SigmaMethod::Auto && gen.dense_available());
  if (dense) {
    p.method = SigmaMethod::DenseSvd;
    return finish_point(p, sigma_min_dense(gen.dense_weighted(lambda)));
  }
  p.method = SigmaMethod::Iterative;
  auto apply = [&gen, lambda](const Eigen::VectorXcd& z) {
    return gen.apply_weighted(z, lambda);
  };
  auto adj = [&gen, lambda](const Eigen::VectorXcd& z) {
    return adjoint_weighted(gen, z, lambda);
  };
  const IterativeResult it =
      sigma_min_iterative(apply, adj, 2 * gen.grid().size());
  p.converged = it.converged;
  p.residual = it.residual;
  return finish_point(p, it.sigma);
}

Eigen::MatrixXcd assemble_halfwave(const Generator& gen, double lambda) {
  const Eigen::Index M = gen.grid().size();
  Eigen::MatrixXcd T = Eigen::MatrixXcd::Zero(2 * M, M);
  const Eigen::VectorXd& h = gen.half_symbols();
  for (Eigen::Index j = 0; j < M; ++j) T(j, j) = h[j] - lambda;
  // lower block: multiplication by sqrt(a) in the frequency basis
  SpectralField e{gen.grid(), Rep::Freq, Eigen::VectorXcd::Zero(M)};
  for (Eigen::Index j = 0; j < M; ++j) {
    e.values[j] = 1.0;
    SpectralField col = to_space(e);
    col.values.array() *= gen.sqrt_damping().array().cast<Complex>();
    T.col(j).tail(M) = to_freq(col).values;
    e.values[j] = 0.0;
  }
  return T;
}

ResolventPoint halfwave_constant(const Generator& gen, double lambda,
                                 SigmaMethod method) {
  ResolventPoint p;
  p.lambda = lambda;
  p.op = OperatorKind::Halfwave;
  const bool dense = method == SigmaMethod::DenseSvd ||
                     (method == SigmaMethod::Auto && gen.dense_available());
  if (dense) {
    p.method = SigmaMethod::DenseSvd;
    return finish_point(p, sigma_min_dense(assemble_halfwave(gen, lambda)));
  }
  p.method = SigmaMethod::Iterative;
  const Eigen::Index M = gen.grid().size();
  const Eigen::VectorXd& h = gen.half_symbols();
  auto apply = [&, lambda](const Eigen::VectorXcd& f) {
    Eigen::VectorXcd out(2 * M);
    for (Eigen::Index k = 0; k < M; ++k) out[k] = (h[k] - lambda) * f[k];
    SpectralField ff{gen.grid(), Rep::Freq, f};
    SpectralField sf = to_space(ff);
    sf.values.array() *= gen.sqrt_damping().array().cast<Complex>();
    out.tail(M) = to_freq(sf).values;
    return out;
  };
  auto adj = [&, lambda](const Eigen::VectorXcd& g) {
    Eigen::VectorXcd out(M);
    for (Eigen::Index k = 0; k < M; ++k) out[k] = (h[k] - lambda) * g[k];
    SpectralField gg{gen.grid(), Rep::Freq, g.tail(M)};
    SpectralField sg = to_space(gg);
    sg.values.array() *= gen.sqrt_damping().array().cast<Complex>();
    out += to_freq(sg).values;
    return out;
  };
  const IterativeResult it = sigma_min_iterative(apply, adj, M);
  p.converged = it.converged;
  p.residual = it.residual;
  return finish_point(p, it.sigma);
}

namespace {

std::vector<Eigen::Index> mask_modes(const AnnulusSet& sigma) {
  std::vector<Eigen::Index> modes;
  for (Eigen::Index k = 0; k < sigma.grid.size(); ++k)
    if (sigma.mask[k]) modes.push_back(k);
  return modes;
}

Eigen::MatrixXcd restricted_multiplier(const TorusGrid& grid,
                                       const Eigen::VectorXd& weights,
                                       const std::vector<Eigen::Index>& modes) {
  Eigen::MatrixXcd T(grid.size(), static_cast<Eigen::Index>(modes.size()));
  SpectralField e{grid, Rep::Freq, Eigen::VectorXcd::Zero(grid.size())};
  for (size_t j = 0; j < modes.size(); ++j) {
    e.values[modes[j]] = 1.0;
    SpectralField col = to_space(e);
    col.values.array() *= weights.array().cast<Complex>();
    T.col(static_cast<Eigen::Index>(j)) = col.values;
    e.values[modes[j]] = 0.0;
  }
  return T;
}

ResolventPoint one_sided_from_matrix(const Eigen::MatrixXcd& T,
                                     double lambda) {
  ResolventPoint p;
  p.lambda = lambda;
  p.op = OperatorKind::OneSided;
  p.method = SigmaMethod::DenseSvd;
  return finish_point(p, sigma_min_dense(T));
}

}  // namespace

Eigen::MatrixXcd assemble_one_sided(const Generator& gen,
                                    const AnnulusSet& sigma) {
  if (!(sigma.grid == gen.grid()))
    throw std::invalid_argument("annihilation_one_sided: grid mismatch");
  const auto modes = mask_modes(sigma);
  if (modes.empty())
    throw std::invalid_argument("annihilation_one_sided: empty Sigma");
  return restricted_multiplier(gen.grid(), gen.sqrt_damping(), modes);
}

Eigen::MatrixXcd assemble_one_sided(const SublevelMask& s_mask,
                                    const AnnulusSet& sigma) {
  if (!(sigma.grid == s_mask.grid))
    throw std::invalid_argument("annihilation_one_sided: grid mismatch");
  const auto modes = mask_modes(sigma);
  if (modes.empty())
    throw std::invalid_argument("annihilation_one_sided: empty Sigma");
  Eigen::VectorXd w(s_mask.grid.size());
  for (Eigen::Index k = 0; k < s_mask.grid.size(); ++k)
    w[k] = s_mask.mask[k] ? 0.0 : 1.0;
  return restricted_multiplier(s_mask.grid, w, modes);
}

ResolventPoint annihilation_one_sided(const Generator& gen,
                                      const AnnulusSet& sigma) {
  return one_sided_from_matrix(assemble_one_sided(gen, sigma), sigma.lambda);
}

ResolventPoint annihilation_one_sided(const SublevelMask& s_mask,
                                      const AnnulusSet& sigma) {
  return one_sided_from_matrix(assemble_one_sided(s_mask, sigma),
                               sigma.lambda);
}

Eigen::MatrixXcd assemble_two_sided(const SublevelMask& s_mask,
                                    const AnnulusSet& sigma) {
  if (!(sigma.grid == s_mask.grid))
    throw std::invalid_argument("annihilation_two_sided: grid mismatch");
  const TorusGrid& grid = s_mask.grid;
  const Eigen::Index M = grid.size();
  Eigen::MatrixXcd T = Eigen::MatrixXcd::Zero(2 * M, M);
  SpectralField e{grid, Rep::Space, Eigen::VectorXcd::Zero(M)};
  for (Eigen::Index j = 0; j < M; ++j) {
    e.values[j] = 1.0;
    Eigen::VectorXcd fhat = to_freq(e).values;
    for (Eigen::Index k = 0; k < M; ++k)
      if (sigma.mask[k]) fhat[k] = 0.0;
    T.col(j).head(M) = fhat;
    if (!s_mask.mask[j]) T(M + j, j) = 1.0;
    e.values[j] = 0.0;
  }
  return T;
}

AnnihilationResult annihilation_two_sided(const SublevelMask& s_mask,
                                          const AnnulusSet& sigma) {
  AnnihilationResult res;
  res.s_mask = s_mask.mask;
  res.sigma_mask = sigma.mask;
  res.method = SigmaMethod::DenseSvd;
  res.empty_sigma = sigma.count == 0;
  res.sigma_min = sigma_min_dense(assemble_two_sided(s_mask, sigma));
  res.combined_constant =
      res.sigma_min > 0.0 ? 1.0 / res.sigma_min
                          : std::numeric_limits<double>::infinity();
  res.sum_lo = res.combined_constant / std::numbers::sqrt2;
  res.sum_hi = res.combined_constant;
  return res;
}

SweepResult lambda_sweep(const TorusGrid& grid, const SweepSpec& spec,
                         double lambda_max, int n_points, int workers) {
  if (!(lambda_max > 0.0))
    throw std::invalid_argument("lambda_sweep: lambda_max must be > 0");
  if (n_points < 2)
    throw std::invalid_argument("lambda_sweep: n_points must be >= 2");

  const Generator gen(grid, spec.s, spec.damping);
  std::optional<SublevelMask> s_mask;
  if (spec.kind == OperatorKind::TwoSided)
    s_mask = sublevel_mask(spec.damping, grid, spec.epsilon);

  SweepResult sweep;
  sweep.points.resize(n_points);
  parallel_for(n_points, workers, [&](long i) {
    const double lambda = lambda_max * i / (n_points - 1);
    switch (spec.kind) {
      case OperatorKind::FullA:
        sweep.points[i] = resolvent_constant_full(gen, lambda);
        break;
      case OperatorKind::Halfwave:
        sweep.points[i] = halfwave_constant(gen, lambda);
        break;
      case OperatorKind::OneSided: {
        const AnnulusSet sigma = annulus(lambda, spec.s, spec.mu, grid);
        if (sigma.count == 0) {
          ResolventPoint p;
          p.lambda = lambda;
          p.op = OperatorKind::OneSided;
          p.empty_sigma = true;
          sweep.points[i] = p;
        } else {
          sweep.points[i] = annihilation_one_sided(gen, sigma);
        }
        break;
      }
      case OperatorKind::TwoSided: {
        const AnnulusSet sigma = annulus(lambda, spec.s, spec.mu, grid);
        const AnnihilationResult r = annihilation_two_sided(*s_mask, sigma);
        ResolventPoint p;
        p.lambda = lambda;
        p.op = OperatorKind::TwoSided;
        p.sigma_min = r.sigma_min;
        p.constant = r.combined_constant;
        p.sum_lo = r.sum_lo;
        p.sum_hi = r.sum_hi;
        p.empty_sigma = r.empty_sigma;
        sweep.points[i] = p;
      }
    }
  });

  sweep.sup_constant = 0.0;
  for (const ResolventPoint& p : sweep.points) {
    if (p.empty_sigma) continue;
    if (p.constant > sweep.sup_constant) {
      sweep.sup_constant = p.constant;
      sweep.argmax_lambda = p.lambda;
    }
  }

  // Tail diagnostic: beyond the largest grid symbol the constants should
  // decrease; check rather than assume.
  const double h_max = half_symbol(spec.s, grid.max_freq_norm() *
                                               grid.max_freq_norm());
  std::vector<const ResolventPoint*> tail;
  for (const ResolventPoint& p : sweep.points)
    if (p.lambda > h_max && !p.empty_sigma) tail.push_back(&p);
  if (tail.size() >= 2) {
    sweep.tail_checked = true;
    sweep.tail_monotone = true;
    for (size_t i = 1; i < tail.size(); ++i)
      if (tail[i]->constant > tail[i - 1]->constant * (1.0 + 1e-12))
        sweep.tail_monotone = false;
  }
  return sweep;
}

}  // namespace dfkg
