#pragma once

#include <Eigen/Core>
#include <array>
#include <complex>
#include <functional>

namespace dfkg {

using Complex = std::complex<double>;

// Point in the periodic box (also used for frequency vectors).
// Only the first dim() entries are meaningful; the rest are zero.
using Point = std::array<double, 2>;

// Periodic box [-L/2, L/2)^d sampled with N points per axis.
// Frequencies live on (2pi/L) * Z^d, truncated to the integer range
// [-N/2, N/2) per axis (standard DFT ordering, Nyquist self-paired
// under negation mod N).
class TorusGrid {
public:
  TorusGrid() : TorusGrid(1, 1.0, 4) {}  // placeholder default
  TorusGrid(int dim, double length, int points_per_axis);

  int dim() const { return d_; }
  double length() const { return L_; }
  int points_per_axis() const { return N_; }
  Eigen::Index size() const { return size_; }
  double spacing() const { return L_ / N_; }
  double cell_volume() const;

  // Integer frequency index j in [-N/2, N/2) along one axis.
  int axis_freq_index(Eigen::Index k, int axis) const;
  int axis_node_index(Eigen::Index k, int axis) const;

  Point node(Eigen::Index k) const;
  Point freq(Eigen::Index k) const;
  double freq_sq(Eigen::Index k) const;

  // Radius of the largest |xi| present on the grid.
  double max_freq_norm() const;

  // Flat index of the node nearest to x, wrapping periodically.
  Eigen::Index nearest_node(const Point& x) const;

  bool operator==(const TorusGrid&) const = default;

private:
  int d_;
  double L_;
  int N_;
  Eigen::Index size_;
};

enum class Rep { Space, Freq };
enum class TransformDirection { Forward, Inverse };

// Complex field over the grid nodes, tagged with its current representation.
// The forward transform gives coefficients against the orthonormal plane
// waves e^{i xi.x}/sqrt(M); both directions carry 1/sqrt(N) per axis so the
// pair is unitary and Parseval holds with no extra factors.
struct SpectralField {
  TorusGrid grid;
  Rep rep = Rep::Space;
  Eigen::VectorXcd values;

  static SpectralField zero(const TorusGrid& g, Rep r);
};

SpectralField transform(const SpectralField& f, TransformDirection dir);
SpectralField to_freq(const SpectralField& f);   // no-op if already Freq
SpectralField to_space(const SpectralField& f);  // no-op if already Space

// Diagonal action m(xi) on frequency coefficients. Requires Freq rep.
SpectralField apply_multiplier(const SpectralField& f,
                               const std::function<Complex(const Point&)>& m);

double norm_l2(const SpectralField& f);

}  // namespace dfkg
