#pragma once

#include <cmath>

#include "tgv/grid.hpp"
#include "tgv/interp.hpp"
#include "tgv/rng.hpp"

// Shared random-input builders for the test suites.

namespace tgv::test {

inline Image random_image(Rng& rng, int rows, int cols, double h = 1.0) {
  Image u(rows, cols, h);
  for (double& v : u.g.v) v = rng.uniform(-1.0, 1.0);
  return u;
}

inline StaggeredField random_vector(Rng& rng, int rows, int cols, double h = 1.0,
                                    bool masked = true) {
  StaggeredField w = StaggeredField::vector(rows, cols, h);
  for (Grid& g : w.ch)
    for (double& v : g.v) v = rng.uniform(-1.0, 1.0);
  if (masked) w.apply_mask();
  return w;
}

inline StaggeredField random_tensor(Rng& rng, int rows, int cols, double h = 1.0,
                                    bool masked = true) {
  StaggeredField p = StaggeredField::tensor(rows, cols, h);
  for (Grid& g : p.ch)
    for (double& v : g.v) v = rng.uniform(-1.0, 1.0);
  if (masked) p.apply_mask();
  return p;
}

inline CoefficientField random_coeff(Rng& rng, int n, int C, int rows, int cols) {
  CoefficientField f(n, C, rows, cols);
  for (Grid& g : f.ch)
    for (double& v : g.v) v = rng.uniform(-1.0, 1.0);
  return f;
}

inline FilterBank random_bank(Rng& rng, BankTarget target, int n, int nu,
                              bool project = true) {
  FilterBank b = make_bank(target, n, nu);
  for (double& c : b.coeffs) c = rng.uniform(-1.0, 1.0);
  if (project) b = project_constraints(b);
  return b;
}

inline double rel_diff(double a, double b) {
  const double m = std::max(std::abs(a), std::abs(b));
  return m == 0.0 ? 0.0 : std::abs(a - b) / m;
}

}  // namespace tgv::test
