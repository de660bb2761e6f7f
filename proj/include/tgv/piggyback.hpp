#pragma once

#include <optional>
#include <utility>

#include "tgv/solver.hpp"

// Joint primal-dual iteration on the saddle point and its linearized adjoint
// state, plus assembly of the loss gradient with respect to the filter
// coefficients. The loss is quadratic, l(u,t) = 1/2 ||u - t||^2, injected as
// u^j - t into the adjoint image update each iteration. The adjoint prox
// Jacobians are evaluated at the primal pre-prox points of the same
// iteration.

namespace tgv {

struct AdjointState {
  Image U;
  CoefficientField VK;
  CoefficientField VL;
  StaggeredField P;
  StaggeredField P_bar;
};

AdjointState make_zero_adjoint(const Image& f, const BankPair& banks);

struct PiggybackResult {
  SaddleState saddle;
  AdjointState adjoint;
};

PiggybackResult piggyback_solve(const Image& f, const Image& target, const BankPair& banks,
                                Alpha alpha, const StepSizes& steps, long iters,
                                std::optional<PiggybackResult> init = std::nullopt);

// Gradient arrays shaped like the bank's kernels.
struct BankGradient {
  int n = 0, C = 0, nu = 0;
  std::vector<double> g;  // same layout as FilterBank::coeffs

  double& tap(int l, int c, int m, int n_) {
    const int ks = 2 * nu + 1;
    return g[(static_cast<size_t>(l) * C + c) * ks * ks + (m + nu) * ks + (n_ + nu)];
  }
  double tap(int l, int c, int m, int n_) const {
    const int ks = 2 * nu + 1;
    return g[(static_cast<size_t>(l) * C + c) * ks * ks + (m + nu) * ks + (n_ + nu)];
  }
};

// Correlation of a staggered field with a coefficient field at every kernel
// lag: out[l,c](m,n) = sum_ij Y[l,c](i,j) * X_c(i-m, j-n), structural slots
// of X read as zero. This is the derivative of <Y, Bank(X)> in the kernels.
BankGradient bank_correlation(const StaggeredField& X, const CoefficientField& Y, int nu);

// d loss / d kernels at the final iterate pair (fixed-point estimator).
std::pair<BankGradient, BankGradient> filter_gradients(const SaddleState& saddle,
                                                       const AdjointState& adjoint,
                                                       const BankPair& banks);

}  // namespace tgv
