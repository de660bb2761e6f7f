#pragma once

#include <optional>
#include <stdexcept>

#include "tgv/diffops.hpp"
#include "tgv/interp.hpp"
#include "tgv/prox.hpp"

// Block-preconditioned primal-dual iteration for the saddle-point problem
//   min_{u,vK,vL} max_p  G(u,f) + a0||vK||_Z + a1||vL||_Z
//                        + <D^2 u - E L* vL - K* vK, p>
// and evaluation of the discrete regularizer value
//   TGV(u) = min { h^2 a1||vL||_Z + h^2 a0||vK||_Z : E L* vL + K* vK = D^2 u }.

namespace tgv {

struct SolverDivergence : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Alpha {
  double a1 = 0.1;  // first-order weight
  double a0 = 0.2;  // second-order weight
};

struct StepSizes {
  double tau_u = 0.0;
  double tau_vK = 0.0;
  double tau_vL = 0.0;
  double sigma = 0.0;
  double theta = 1.0;
  // diagnostics
  double norm_D2 = 0.0, norm_K = 0.0, norm_EL = 0.0, lambda_joint = 0.0;
  bool power_converged = true;
};

struct SaddleState {
  Image u;
  CoefficientField vK;
  CoefficientField vL;
  StaggeredField p;
  StaggeredField p_bar;  // last extrapolated dual, used by the filter gradients
  long iters = 0;
};

struct PowerState {
  Grid u;           // D^2 block
  CoefficientField vK, vL;
  StaggeredField joint;
  bool ready = false;
};

// Power-iteration estimate of ||A|| given y = A^T A x as a functional on x.
// tol is the relative change of the estimate; on non-convergence the best
// estimate is inflated by 10% and reported.
struct StepOptions {
  double safety = 0.95;
  double tol = 1e-6;
  int max_iters = 500;
};

StepSizes precondition(const BankPair& banks, int rows, int cols, double h,
                       const StepOptions& opt = {}, PowerState* warm = nullptr);

SaddleState make_initial_state(const Image& f, const BankPair& banks);

SaddleState pd_solve(const Image& f, const BankPair& banks, Alpha alpha, long iters,
                     std::optional<SaddleState> init = std::nullopt,
                     std::optional<StepSizes> steps = std::nullopt);

// Objective of the saddle problem's primal part at the current iterate.
double primal_objective(const SaddleState& s, const Image& f, Alpha alpha);

// ||D^2 u - E L* vL - K* vK|| / max(1, ||D^2 u||).
double constraint_residual(const SaddleState& s, const BankPair& banks);

struct TgvValue {
  double value = 0.0;      // objective of the feasibility-corrected iterate (upper bound)
  double lower = 0.0;      // dual value of the scaled-feasible multiplier (lower bound)
  double residual = 0.0;   // constraint residual of the raw iterate
  double gap = 0.0;        // (value - lower) / max(value, eps), certified
  bool converged = false;
};

// Optional warm start for the constrained minimization (used by the
// refinement ladder to prolongate coarse-level iterates).
struct TgvWarmStart {
  CoefficientField vL;
  CoefficientField vK;
  StaggeredField p;
};

// The constrained minimization has no strongly convex block, so the steps
// are rebalanced towards the primal (gamma) and the returned value is
// certified: the iterate is projected onto the constraint set via CG on
// A A^T, and a scaled dual-feasible multiplier provides the lower bound.
// Stops early once the certified gap falls below gap_tol.
TgvValue tgv_value(const Image& u, const BankPair& banks, Alpha alpha, long iters,
                   double residual_tol = 1e-6, double gap_tol = 0.0, double gamma = 100.0,
                   const TgvWarmStart* init = nullptr, TgvWarmStart* final_state = nullptr);

namespace detail {

// Pre-prox points of one iteration; the adjoint stream evaluates its prox
// Jacobians exactly there.
struct StepTrace {
  Image u_prev;
  Image u_tilde;
  CoefficientField vL_tilde;
  CoefficientField vK_tilde;
};

// One primal-dual iteration in the exact update order; the piggyback stepper
// reuses it so both produce bit-identical primal sequences.
void pd_step(SaddleState& s, const Image& f, const BankPair& banks, Alpha alpha,
             const StepSizes& st, StepTrace* trace = nullptr);

}  // namespace detail

}  // namespace tgv
