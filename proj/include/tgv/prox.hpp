#pragma once

#include "tgv/grid.hpp"

// Proximal maps used by the primal-dual iterations, plus the directional
// Jacobian applications the adjoint (piggyback) stream needs.

namespace tgv {

// Group soft-shrinkage: per (pixel, filter) group g over channels,
// g <- (1 - t/|g|)_+ g.
CoefficientField prox_group_z(const CoefficientField& x, double t);

// Applies the group-wise Jacobian of prox_group_z at x to dir. On the
// nonsmooth set |g| <= t the zero branch is used.
CoefficientField prox_group_z_jvp(const CoefficientField& x, double t, const CoefficientField& dir);

// prox of t * (1/2)||u - f||^2: (x + t f) / (1 + t).
Image prox_quadratic(const Image& x, const Image& f, double t);
Image prox_quadratic_jvp(const Image& dir, double t);

}  // namespace tgv
