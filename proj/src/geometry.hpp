#pragma once

#include "damping.hpp"
#include "grid.hpp"

#include <functional>
#include <string>
#include <vector>

namespace dfkg {

enum class GccKind { Zero, One, Dim };
enum class Verdict { Holds, Fails, Inconclusive };

std::string to_string(GccKind k);
std::string to_string(Verdict v);

// Sampling densities for the geometric checks. The conditions quantify over
// a noncompact family; verdicts are certificates at this resolution only.
struct SamplingPlan {
  int centers_per_axis = 32;
  int directions = 64;
  int quad_per_axis = 32;    // ball quadrature for d-GCC
  int segment_samples = 256; // line quadrature for 1-GCC

  SamplingPlan scaled(int factor) const {
    return SamplingPlan{centers_per_axis * factor, directions * factor,
                        quad_per_axis * factor, segment_samples * factor};
  }
};

struct GccReport {
  GccKind kind = GccKind::Zero;
  double parameter = 0.0;  // r for d-GCC, ell for 1-GCC
  double infimum_estimate = 0.0;
  Point witness_center{0.0, 0.0};
  Point witness_direction{0.0, 0.0};  // 1-GCC only
  long sample_count = 0;
  Verdict verdict = Verdict::Inconclusive;
  bool boundary_witness = false;  // minimum attained at the sampled boundary
  double tolerance = 0.0;         // holds-threshold actually used
};

// Candidate control region, usually {x : a(x) >= eps}. Periodic regions
// reduce the infimum domain to one cell; otherwise the box is scanned and a
// boundary witness downgrades "holds" to "inconclusive".
struct Region {
  std::function<bool(const Point&)> contains;
  bool periodic = false;
  double period = 0.0;
};

Region damped_region(const DampingSpec& spec, const TorusGrid& grid,
                     double epsilon);

// 0-GCC of {a >= eps}: holds iff no grid node lies in S(a, eps).
GccReport check_zero_gcc(const DampingSpec& spec, const TorusGrid& grid,
                         double epsilon);

// d-GCC: infimum over sampled centers of |B(a, r) & Omega| by quadrature.
GccReport check_d_gcc(const Region& omega, double r, const TorusGrid& box,
                      const SamplingPlan& plan = {});

// 1-GCC: infimum over sampled (offset, direction) of H^1(L(a,e,ell) & Omega).
GccReport check_one_gcc(const Region& omega, double ell, const TorusGrid& box,
                        const SamplingPlan& plan = {});

// S_delta = { x : dist(x, S^c) >= delta }, torus metric, on grid nodes.
struct ShrunkSet {
  TorusGrid grid;
  double delta = 0.0;
  std::vector<char> base;
  std::vector<char> mask;
};

ShrunkSet shrink(const TorusGrid& grid, const std::vector<char>& base_mask,
                 double delta);

}  // namespace dfkg
