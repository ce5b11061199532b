#include "grid.hpp"

#include <unsupported/Eigen/FFT>

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace dfkg {

TorusGrid::TorusGrid(int dim, double length, int points_per_axis)
    : d_(dim), L_(length), N_(points_per_axis) {
  if (d_ != 1 && d_ != 2)
    throw std::invalid_argument("TorusGrid: dim must be 1 or 2");
  if (!(L_ > 0.0))
    throw std::invalid_argument("TorusGrid: length must be positive");
  if (N_ < 4 || N_ % 2 != 0)
    throw std::invalid_argument("TorusGrid: N must be even and >= 4");
  size_ = 1;
  for (int a = 0; a < d_; ++a) size_ *= N_;
}

double TorusGrid::cell_volume() const {
  double v = 1.0;
  for (int a = 0; a < d_; ++a) v *= spacing();
  return v;
}

int TorusGrid::axis_node_index(Eigen::Index k, int axis) const {
  if (axis == 0) return static_cast<int>(k % N_);
  return static_cast<int>(k / N_);
}

int TorusGrid::axis_freq_index(Eigen::Index k, int axis) const {
  int i = axis_node_index(k, axis);
  return i < N_ / 2 ? i : i - N_;
}

Point TorusGrid::node(Eigen::Index k) const {
  Point x{0.0, 0.0};
  for (int a = 0; a < d_; ++a)
    x[a] = -L_ / 2.0 + axis_node_index(k, a) * spacing();
  return x;
}

Point TorusGrid::freq(Eigen::Index k) const {
  const double base = 2.0 * std::numbers::pi / L_;
  Point xi{0.0, 0.0};
  for (int a = 0; a < d_; ++a) xi[a] = base * axis_freq_index(k, a);
  return xi;
}

double TorusGrid::freq_sq(Eigen::Index k) const {
  Point xi = freq(k);
  return xi[0] * xi[0] + xi[1] * xi[1];
}

double TorusGrid::max_freq_norm() const {
  const double base = 2.0 * std::numbers::pi / L_;
  const double per_axis = base * (N_ / 2);
  return per_axis * std::sqrt(static_cast<double>(d_));
}

Eigen::Index TorusGrid::nearest_node(const Point& x) const {
  Eigen::Index k = 0;
  Eigen::Index stride = 1;
  for (int a = 0; a < d_; ++a) {
    double t = (x[a] + L_ / 2.0) / spacing();
    long i = std::lround(t);
    i %= N_;
    if (i < 0) i += N_;
    k += stride * i;
    stride *= N_;
  }
  return k;
}

SpectralField SpectralField::zero(const TorusGrid& g, Rep r) {
  return SpectralField{g, r, Eigen::VectorXcd::Zero(g.size())};
}

namespace {

// One unscaled DFT pass along the given axis (length N, possibly strided).
void fft_axis(Eigen::VectorXcd& v, int N, int axis, int d, bool inverse) {
  Eigen::FFT<double> fft;
  fft.SetFlag(Eigen::FFT<double>::Unscaled);
  std::vector<Complex> in(N), out(N);
  const Eigen::Index lines = v.size() / N;
  for (Eigen::Index line = 0; line < lines; ++line) {
    Eigen::Index base, stride;
    if (d == 1 || axis == 0) {
      base = line * N;
      stride = 1;
    } else {
      base = line;
      stride = N;
    }
    for (int i = 0; i < N; ++i) in[i] = v[base + stride * i];
    if (inverse)
      fft.inv(out, in);
    else
      fft.fwd(out, in);
    for (int i = 0; i < N; ++i) v[base + stride * i] = out[i];
  }
}

// Phase (-1)^{j0+...} aligning DFT bins with plane waves based at x = -L/2.
void apply_mode_phase(Eigen::VectorXcd& v, const TorusGrid& g) {
  for (Eigen::Index k = 0; k < v.size(); ++k) {
    int j = 0;
    for (int a = 0; a < g.dim(); ++a) j += g.axis_node_index(k, a);
    if (j % 2 != 0) v[k] = -v[k];
  }
}

}  // namespace

SpectralField transform(const SpectralField& f, TransformDirection dir) {
  const Rep want = dir == TransformDirection::Forward ? Rep::Space : Rep::Freq;
  if (f.rep != want)
    throw std::invalid_argument(
        "transform: field representation does not match direction");
  SpectralField out = f;
  const int N = f.grid.points_per_axis();
  const double scale = 1.0 / std::sqrt(static_cast<double>(f.grid.size()));
  if (dir == TransformDirection::Forward) {
    for (int a = 0; a < f.grid.dim(); ++a)
      fft_axis(out.values, N, a, f.grid.dim(), false);
    apply_mode_phase(out.values, f.grid);
    out.values *= scale;
    out.rep = Rep::Freq;
  } else {
    apply_mode_phase(out.values, f.grid);
    for (int a = 0; a < f.grid.dim(); ++a)
      fft_axis(out.values, N, a, f.grid.dim(), true);
    out.values *= scale;
    out.rep = Rep::Space;
  }
  return out;
}

SpectralField to_freq(const SpectralField& f) {
  return f.rep == Rep::Freq ? f : transform(f, TransformDirection::Forward);
}

SpectralField to_space(const SpectralField& f) {
  return f.rep == Rep::Space ? f : transform(f, TransformDirection::Inverse);
}

SpectralField apply_multiplier(const SpectralField& f,
                               const std::function<Complex(const Point&)>& m) {
  if (f.rep != Rep::Freq)
    throw std::invalid_argument(
        "apply_multiplier: field must be in frequency representation");
  SpectralField out = f;
  for (Eigen::Index k = 0; k < out.values.size(); ++k)
    out.values[k] *= m(f.grid.freq(k));
  return out;
}

double norm_l2(const SpectralField& f) { return f.values.norm(); }

}  // namespace dfkg
