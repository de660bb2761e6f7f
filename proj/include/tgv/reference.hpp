#pragma once

#include "tgv/grid.hpp"
#include "tgv/interp.hpp"

// Plain serial implementations of the hot kernels. They are written as
// direct loops with no shared code, kept as the comparison baseline for the
// parallel kernels: tests check agreement, tools/bench compares speed.

namespace tgv::ref {

double znorm(const CoefficientField& x);
double znorm_dual(const CoefficientField& x);
double dot(const CoefficientField& a, const CoefficientField& b);

StaggeredField grad(const Image& u);
StaggeredField sym_grad(const StaggeredField& w);

CoefficientField apply_bank(const StaggeredField& f, const FilterBank& bank);

CoefficientField prox_group_z(const CoefficientField& x, double t);

}  // namespace tgv::ref
