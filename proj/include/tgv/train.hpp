#pragma once

#include <functional>
#include <string>
#include <vector>

#include "tgv/piggyback.hpp"

// Outer bilevel loop: blockwise Adam on the filter coefficients with
// constraint projection after every step, full-batch gradients averaged over
// the training pairs, and per-sample warm starting of the inner piggyback
// solves.

namespace tgv {

struct TrainConfig {
  int outer_iters = 3000;
  int inner_iters = 100;
  double lr = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
  BankConstraint constraint = BankConstraint::sum_to_one;
  bool symmetric = false;
  Alpha alpha;
  uint64_t seed = 0;
  int precond_refresh = 1;  // re-estimate step sizes every k outer steps
};

struct AdamMoments {
  std::vector<double> m;
  std::vector<double> v;
};

// One Adam block = one kernel (one constraint group). Moments are updated
// per coordinate, bias-corrected, and the kernel is re-projected onto its
// constraint set afterwards.
void adam_step_blockwise(FilterBank& bank, const BankGradient& grad, AdamMoments& moments,
                         long t, const TrainConfig& cfg);

struct TrainSample {
  Image f;       // corrupted input
  Image target;  // ground truth
};

struct TrainResult {
  BankPair banks;                   // banks at the best recorded train loss
  std::vector<double> loss_history; // loss per outer step
  long best_step = 0;
  double best_loss = 0.0;
};

// Per-step callback (step index, loss); used for logging. May be empty.
using TrainMonitor = std::function<void(long, double)>;

TrainResult bilevel_train(const std::vector<TrainSample>& dataset, BankPair init_banks,
                          const TrainConfig& cfg, TrainMonitor monitor = nullptr);

// U(-1/sqrt(b), 1/sqrt(b)) init with b = channels * (2nu+1)^2, projected to
// feasibility; handcrafted init is preferred for 3x3 banks with n <= 4.
BankPair initial_banks(int n_K, int n_L, int nu, BankConstraint constraint, bool symmetric,
                       uint64_t seed);

void write_loss_csv(const std::vector<double>& history, const std::string& path);

}  // namespace tgv
