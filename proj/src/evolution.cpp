#include "evolution.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <map>
#include <stdexcept>

namespace dfkg {

Generator::Generator(const TorusGrid& grid, double s, DampingSpec damping,
                     Eigen::Index dense_cap)
    : grid_(grid), s_(s), damping_(std::move(damping)), dense_cap_(dense_cap) {
  if (!(s_ > 0.0)) throw std::invalid_argument("Generator: s must be > 0");
  a_ = sample(damping_, grid_);
  sqrt_a_ = a_.cwiseSqrt();
  a_sup_ = a_.size() > 0 ? a_.maxCoeff() : 0.0;
  h_.resize(grid_.size());
  for (Eigen::Index k = 0; k < grid_.size(); ++k)
    h_[k] = half_symbol(s_, grid_.freq_sq(k));
}

namespace {

void require_grid(const TorusGrid& g, const SpectralField& f,
                  const char* what) {
  if (!(f.grid == g)) throw std::invalid_argument(std::string(what) + ": grid mismatch");
}

}  // namespace

StatePair Generator::apply(const StatePair& f) const {
  require_grid(grid_, f.u, "Generator::apply");
  require_grid(grid_, f.v, "Generator::apply");
  const SpectralField u_hat = to_freq(f.u);
  const SpectralField v_hat = to_freq(f.v);

  // second component: -(1-Lap)^{s/2} u - a v
  SpectralField out2 = u_hat;
  for (Eigen::Index k = 0; k < grid_.size(); ++k)
    out2.values[k] *= -h_[k] * h_[k];
  SpectralField av = to_space(v_hat);
  av.values.array() *= a_.array().cast<Complex>();
  out2.values -= to_freq(av).values;

  return StatePair{v_hat, out2};
}

StatePair Generator::apply_inverse(const StatePair& g) const {
  require_grid(grid_, g.u, "Generator::apply_inverse");
  require_grid(grid_, g.v, "Generator::apply_inverse");
  const SpectralField g1_hat = to_freq(g.u);
  const SpectralField g2_hat = to_freq(g.v);

  // first component: -(1-Lap)^{-s/2} (g2 + a g1)
  SpectralField ag1 = to_space(g1_hat);
  ag1.values.array() *= a_.array().cast<Complex>();
  SpectralField out1 = to_freq(ag1);
  out1.values += g2_hat.values;
  for (Eigen::Index k = 0; k < grid_.size(); ++k)
    out1.values[k] *= -1.0 / (h_[k] * h_[k]);

  return StatePair{out1, g1_hat};
}

Eigen::VectorXcd Generator::to_weighted(const StatePair& f) const {
  require_grid(grid_, f.u, "Generator::to_weighted");
  require_grid(grid_, f.v, "Generator::to_weighted");
  const Eigen::Index M = grid_.size();
  Eigen::VectorXcd z(2 * M);
  const SpectralField u_hat = to_freq(f.u);
  const SpectralField v_hat = to_freq(f.v);
  for (Eigen::Index k = 0; k < M; ++k) z[k] = h_[k] * u_hat.values[k];
  z.tail(M) = v_hat.values;
  return z;
}

StatePair Generator::from_weighted(const Eigen::VectorXcd& z) const {
  const Eigen::Index M = grid_.size();
  SpectralField u{grid_, Rep::Freq, Eigen::VectorXcd(M)};
  SpectralField v{grid_, Rep::Freq, Eigen::VectorXcd(M)};
  for (Eigen::Index k = 0; k < M; ++k) u.values[k] = z[k] / h_[k];
  v.values = z.tail(M);
  return StatePair{u, v};
}

Eigen::VectorXcd Generator::apply_weighted(const Eigen::VectorXcd& z,
                                           double lambda) const {
  const Eigen::Index M = grid_.size();
  if (z.size() != 2 * M)
    throw std::invalid_argument("apply_weighted: stacked size mismatch");
  Eigen::VectorXcd out(2 * M);
  // top: H v_hat ; bottom: -H w - (multiplication by a) v_hat
  for (Eigen::Index k = 0; k < M; ++k) out[k] = h_[k] * z[M + k];

  SpectralField v{grid_, Rep::Freq, z.tail(M)};
  SpectralField av = to_space(v);
  av.values.array() *= a_.array().cast<Complex>();
  const Eigen::VectorXcd av_hat = to_freq(av).values;
  for (Eigen::Index k = 0; k < M; ++k)
    out[M + k] = -h_[k] * z[k] - av_hat[k];

  if (lambda != 0.0) out -= Complex(0.0, lambda) * z;
  return out;
}

Eigen::MatrixXcd Generator::dense_weighted(double lambda) const {
  if (!dense_available())
    throw std::invalid_argument("dense_weighted: problem exceeds dense_cap");
  const Eigen::Index n = 2 * grid_.size();
  Eigen::MatrixXcd A(n, n);
  Eigen::VectorXcd e = Eigen::VectorXcd::Zero(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    e[j] = 1.0;
    A.col(j) = apply_weighted(e, lambda);
    e[j] = 0.0;
  }
  return A;
}

double energy(const StatePair& state, double s) {
  if (!(state.u.grid == state.v.grid))
    throw std::invalid_argument("energy: grid mismatch");
  const SpectralField u_hat = to_freq(state.u);
  const SpectralField v_hat = to_freq(state.v);
  double e = 0.0;
  for (Eigen::Index k = 0; k < u_hat.grid.size(); ++k) {
    e += full_symbol(s, u_hat.grid.freq_sq(k)) * std::norm(u_hat.values[k]);
    e += std::norm(v_hat.values[k]);
  }
  return e;
}

double dissipation_rate(const Generator& gen, const StatePair& state) {
  const SpectralField v = to_space(state.v);
  double d = 0.0;
  for (Eigen::Index k = 0; k < gen.grid().size(); ++k)
    d += gen.damping_samples()[k] * std::norm(v.values[k]);
  return 2.0 * d;
}

namespace {

void check_times(const std::vector<double>& times) {
  if (times.empty()) throw std::invalid_argument("evolve: empty time list");
  if (times.front() < 0.0)
    throw std::invalid_argument("evolve: times must be >= 0");
  for (size_t i = 1; i < times.size(); ++i)
    if (!(times[i] > times[i - 1]))
      throw std::invalid_argument("evolve: times must be strictly increasing");
}

void record_sample(Trajectory& traj, const Generator& gen, double t,
                   const Eigen::VectorXcd& z, bool store) {
  const double e = z.squaredNorm();
  if (!std::isfinite(e))
    throw NumericError("evolve: non-finite energy at t = " + std::to_string(t));
  traj.times.push_back(t);
  traj.energies.push_back(e);
  if (store) traj.states.push_back(gen.from_weighted(z));
}

// One Strang step: free half, damping, free half. Both sub-flows are exact,
// and each is a contraction in the weighted norm.
void strang_step(const Generator& gen, Eigen::VectorXcd& z, double dt) {
  const Eigen::Index M = gen.grid().size();
  const Eigen::VectorXd& h = gen.half_symbols();
  const Eigen::VectorXd& a = gen.damping_samples();

  auto free_rotation = [&](double tau) {
    for (Eigen::Index k = 0; k < M; ++k) {
      const double th = h[k] * tau;
      const double c = std::cos(th), s = std::sin(th);
      const Complex w = z[k], y = z[M + k];
      z[k] = c * w + s * y;
      z[M + k] = -s * w + c * y;
    }
  };

  free_rotation(dt / 2.0);
  SpectralField v{gen.grid(), Rep::Freq, z.tail(M)};
  SpectralField vs = to_space(v);
  for (Eigen::Index k = 0; k < M; ++k) vs.values[k] *= std::exp(-a[k] * dt);
  z.tail(M) = to_freq(vs).values;
  free_rotation(dt / 2.0);
}

}  // namespace

Trajectory evolve(const Generator& gen, const StatePair& state0,
                  const std::vector<double>& times, const EvolveOptions& opt) {
  check_times(times);
  Trajectory traj;
  Eigen::VectorXcd z = gen.to_weighted(state0);

  if (opt.method == EvolveMethod::DenseExpm) {
    if (!gen.dense_available())
      throw std::invalid_argument(
          "evolve: dense_expm requires 2*N^d <= dense_cap");
    traj.method_tag = "dense_expm";
    const Eigen::MatrixXcd A = gen.dense_weighted(0.0);
    std::map<double, Eigen::MatrixXcd> propagators;
    double t = 0.0;
    for (double target : times) {
      const double gap = target - t;
      if (gap > 0.0) {
        auto it = propagators.find(gap);
        if (it == propagators.end()) {
          Eigen::MatrixXcd P = (A * gap).exp();
          it = propagators.emplace(gap, std::move(P)).first;
        }
        z = it->second * z;
        t = target;
      }
      record_sample(traj, gen, t, z, opt.store_states);
    }
  } else {
    if (!(opt.dt > 0.0))
      throw std::invalid_argument("evolve: strang_split requires dt > 0");
    traj.method_tag = "strang_split";
    traj.dt = opt.dt;
    double t = 0.0;
    for (double target : times) {
      const double gap = target - t;
      if (gap > 0.0) {
        const long n = std::max(1L, std::lround(gap / opt.dt));
        const double dt = gap / n;
        for (long i = 0; i < n; ++i) strang_step(gen, z, dt);
        t = target;
      }
      record_sample(traj, gen, t, z, opt.store_states);
    }
  }
  return traj;
}

namespace {

// sinh(z)/z with a series fallback near the origin.
Complex sinhc(Complex z) {
  if (std::abs(z) < 1e-2) {
    const Complex z2 = z * z;
    return 1.0 + z2 / 6.0 + z2 * z2 / 120.0;
  }
  return std::sinh(z) / z;
}

}  // namespace

StatePair constant_damping_closed_form(double a0, double s,
                                       const StatePair& state0, double t) {
  if (a0 < 0.0)
    throw std::invalid_argument("constant_damping_closed_form: a0 >= 0");
  if (t < 0.0)
    throw std::invalid_argument("constant_damping_closed_form: t >= 0");
  if (!(state0.u.grid == state0.v.grid))
    throw std::invalid_argument("constant_damping_closed_form: grid mismatch");

  const TorusGrid& grid = state0.u.grid;
  const SpectralField u0 = to_freq(state0.u);
  const SpectralField v0 = to_freq(state0.v);
  SpectralField u{grid, Rep::Freq, Eigen::VectorXcd(grid.size())};
  SpectralField v{grid, Rep::Freq, Eigen::VectorXcd(grid.size())};

  const double decay = std::exp(-a0 * t / 2.0);
  for (Eigen::Index k = 0; k < grid.size(); ++k) {
    const double sigma = full_symbol(s, grid.freq_sq(k));
    const Complex phi = std::sqrt(Complex(a0 * a0 / 4.0 - sigma, 0.0));
    const Complex ch = std::cosh(phi * t);
    const Complex shc = sinhc(phi * t);  // sinh(phi t)/(phi t)
    const Complex w0 = u0.values[k];
    const Complex w1 = v0.values[k] + (a0 / 2.0) * w0;  // w'(0)

    // w(t) = cosh(phi t) w0 + t sinhc(phi t) w1, u = e^{-a0 t/2} w
    const Complex w = ch * w0 + t * shc * w1;
    const Complex wp = phi * phi * t * shc * w0 + ch * w1;
    u.values[k] = decay * w;
    v.values[k] = decay * wp - (a0 / 2.0) * decay * w;
  }
  return StatePair{u, v};
}

Trajectory decay_curve(const Generator& gen, const StatePair& state0, double T,
                       int n, bool smooth, const EvolveOptions& opt) {
  if (!(T > 0.0)) throw std::invalid_argument("decay_curve: T must be > 0");
  if (n < 2) throw std::invalid_argument("decay_curve: need n >= 2 samples");
  std::vector<double> times(n);
  for (int i = 0; i < n; ++i) times[i] = T * i / (n - 1);
  const StatePair probe =
      smooth ? gen.apply_inverse(state0) : StatePair{to_freq(state0.u),
                                                     to_freq(state0.v)};
  Trajectory traj = evolve(gen, probe, times, opt);
  traj.smooth_probe = smooth;
  return traj;
}

}  // namespace dfkg
