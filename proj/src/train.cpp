#include "tgv/train.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <stdexcept>

#include "tgv/rng.hpp"

namespace tgv {

namespace {

double sample_loss(const Image& u, const Image& target) {
  return 0.5 * deterministic_sum(u.rows(), u.cols(), [&](int i) {
    double acc = 0.0;
    for (int j = 0; j < u.cols(); ++j) {
      const double d = u.at(i, j) - target.at(i, j);
      acc += d * d;
    }
    return acc;
  });
}

// One application of the 90-degree kernel action: (A,B) -> (rot B, rot A)
// with rot(k)(m,n) = k(n,-m). Matches rotate_filter_L.
void rotate_kernel_pair(const double* a, const double* b, double* ra, double* rb, int nu) {
  const int ks = 2 * nu + 1;
  auto idx = [&](int m, int n) { return (m + nu) * ks + (n + nu); };
  for (int m = -nu; m <= nu; ++m)
    for (int n = -nu; n <= nu; ++n) {
      ra[idx(m, n)] = b[idx(n, -m)];
      rb[idx(m, n)] = a[idx(n, -m)];
    }
}

// Fold the gradients of each 4-orbit into its representative (sum of the
// inverse rotations), zeroing the copies. The action is orthogonal, so the
// pullback is rho^-1 = rho^3.
void fold_symmetric_gradient(BankGradient& g) {
  const int T = (2 * g.nu + 1) * (2 * g.nu + 1);
  std::vector<double> t0(T), t1(T), s0(T), s1(T);
  for (int rep = 0; rep < g.n; rep += 4) {
    double* r0 = &g.tap(rep, 0, -g.nu, -g.nu);
    double* r1 = &g.tap(rep, 1, -g.nu, -g.nu);
    for (int k = 1; k < 4; ++k) {
      const double* c0 = &g.tap(rep + k, 0, -g.nu, -g.nu);
      const double* c1 = &g.tap(rep + k, 1, -g.nu, -g.nu);
      std::copy(c0, c0 + T, s0.begin());
      std::copy(c1, c1 + T, s1.begin());
      for (int r = 0; r < 4 - k; ++r) {  // rho^(4-k) = rho^-k
        rotate_kernel_pair(s0.data(), s1.data(), t0.data(), t1.data(), g.nu);
        std::swap(s0, t0);
        std::swap(s1, t1);
      }
      for (int t = 0; t < T; ++t) {
        r0[t] += s0[t];
        r1[t] += s1[t];
      }
    }
    for (int k = 1; k < 4; ++k) {
      std::fill_n(&g.tap(rep + k, 0, -g.nu, -g.nu), T, 0.0);
      std::fill_n(&g.tap(rep + k, 1, -g.nu, -g.nu), T, 0.0);
    }
  }
}

}  // namespace

void adam_step_blockwise(FilterBank& bank, const BankGradient& grad, AdamMoments& moments, long t,
                         const TrainConfig& cfg) {
  if (grad.n != bank.n || grad.C != bank.channels() || grad.nu != bank.nu)
    throw std::invalid_argument("adam_step_blockwise: gradient shape mismatch");
  const size_t P = bank.coeffs.size();
  if (moments.m.size() != P) {
    moments.m.assign(P, 0.0);
    moments.v.assign(P, 0.0);
  }
  const double bc1 = 1.0 - std::pow(cfg.beta1, static_cast<double>(t));
  const double bc2 = 1.0 - std::pow(cfg.beta2, static_cast<double>(t));
  for (size_t k = 0; k < P; ++k) {
    const double g = grad.g[k];
    moments.m[k] = cfg.beta1 * moments.m[k] + (1.0 - cfg.beta1) * g;
    moments.v[k] = cfg.beta2 * moments.v[k] + (1.0 - cfg.beta2) * g * g;
    const double mhat = moments.m[k] / bc1;
    const double vhat = moments.v[k] / bc2;
    bank.coeffs[k] -= cfg.lr * mhat / (std::sqrt(vhat) + cfg.eps);
  }
  bank = project_constraints(bank);
}

BankPair initial_banks(int n_K, int n_L, int nu, BankConstraint constraint, bool symmetric,
                       uint64_t seed) {
  if (symmetric && n_L % 4 != 0)
    throw std::invalid_argument("initial_banks: symmetric mode needs n_L divisible by 4");
  BankPair banks;
  const bool small = (nu == 1 && n_K <= 4 && n_L <= 4);
  if (small && !symmetric) {
    // slice the first n filters out of the 4-target handcrafted banks
    auto slice = [](const FilterBank& full, int n) {
      if (n == full.n) return full;
      FilterBank b = make_bank(full.target, n, full.nu);
      for (int l = 0; l < n; ++l)
        for (int c = 0; c < full.channels(); ++c)
          std::copy(full.kernel(l, c), full.kernel(l, c) + full.taps(), b.kernel(l, c));
      return b;
    };
    banks.K = n_K == 1 ? handcrafted_bank(HandcraftedKind::K1)
                       : slice(handcrafted_bank(HandcraftedKind::K4), n_K);
    banks.L = n_L == 3 ? handcrafted_bank(HandcraftedKind::L3)
                       : slice(handcrafted_bank(HandcraftedKind::L4), n_L);
  } else {
    Rng rng(seed ^ 0xf1173b44ull);
    banks.K = make_bank(BankTarget::K, n_K, nu);
    banks.L = make_bank(BankTarget::L, n_L, nu);
    const double bK = 1.0 / std::sqrt(3.0 * banks.K.taps());
    const double bL = 1.0 / std::sqrt(2.0 * banks.L.taps());
    for (double& c : banks.K.coeffs) c = rng.uniform(-bK, bK);
    for (double& c : banks.L.coeffs) c = rng.uniform(-bL, bL);
  }
  banks.K.constraint = constraint;
  banks.L.constraint = constraint;
  if (symmetric) banks.L = symmetrize_bank(banks.L);
  banks.K = project_constraints(banks.K);
  banks.L = project_constraints(banks.L);
  if (symmetric) banks.L = symmetrize_bank(banks.L);
  return banks;
}

TrainResult bilevel_train(const std::vector<TrainSample>& dataset, BankPair banks,
                          const TrainConfig& cfg, TrainMonitor monitor) {
  if (dataset.empty()) throw std::invalid_argument("bilevel_train: dataset is empty");
  if (cfg.symmetric && banks.L.n % 4 != 0)
    throw std::invalid_argument("bilevel_train: symmetric mode needs n_L divisible by 4");
  const int S = static_cast<int>(dataset.size());
  const int rows = dataset[0].f.rows(), cols = dataset[0].f.cols();
  const double h = dataset[0].f.h;

  std::vector<std::optional<PiggybackResult>> warm(static_cast<size_t>(S));
  AdamMoments momK, momL;
  PowerState power;
  StepSizes steps;

  TrainResult result;
  result.banks = banks;
  result.best_loss = std::numeric_limits<double>::infinity();
  result.loss_history.reserve(static_cast<size_t>(cfg.outer_iters));

  for (long t = 1; t <= cfg.outer_iters; ++t) {
    if (t == 1 || cfg.precond_refresh <= 1 || (t - 1) % cfg.precond_refresh == 0) {
      StepOptions opt;
      opt.max_iters = power.ready ? 60 : 500;
      steps = precondition(banks, rows, cols, h, opt, &power);
    }

    BankGradient gK, gL;
    bool have_grad = false;
    double loss = 0.0;
    int ok = 0;
    for (int s = 0; s < S; ++s) {
      PiggybackResult r;
      try {
        r = piggyback_solve(dataset[static_cast<size_t>(s)].f, dataset[static_cast<size_t>(s)].target,
                            banks, cfg.alpha, steps, cfg.inner_iters, warm[static_cast<size_t>(s)]);
      } catch (const SolverDivergence&) {
        warm[static_cast<size_t>(s)].reset();  // drop the bad state, retry cold next step
        continue;
      }
      loss += sample_loss(r.saddle.u, dataset[static_cast<size_t>(s)].target);
      auto [sgK, sgL] = filter_gradients(r.saddle, r.adjoint, banks);
      if (!have_grad) {
        gK = sgK;
        gL = sgL;
        have_grad = true;
      } else {
        for (size_t k = 0; k < gK.g.size(); ++k) gK.g[k] += sgK.g[k];
        for (size_t k = 0; k < gL.g.size(); ++k) gL.g[k] += sgL.g[k];
      }
      warm[static_cast<size_t>(s)] = std::move(r);
      ++ok;
    }
    if (ok == 0) throw SolverDivergence("bilevel_train: every inner solve diverged");
    loss /= ok;
    for (size_t k = 0; k < gK.g.size(); ++k) gK.g[k] /= ok;
    for (size_t k = 0; k < gL.g.size(); ++k) gL.g[k] /= ok;

    result.loss_history.push_back(loss);
    if (loss < result.best_loss) {
      result.best_loss = loss;
      result.best_step = t;
      result.banks = banks;
    }
    if (monitor) monitor(t, loss);

    if (cfg.symmetric) fold_symmetric_gradient(gL);
    adam_step_blockwise(banks.K, gK, momK, t, cfg);
    adam_step_blockwise(banks.L, gL, momL, t, cfg);
    if (cfg.symmetric) banks.L = symmetrize_bank(banks.L);
  }
  return result;
}

void write_loss_csv(const std::vector<double>& history, const std::string& path) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write " + path);
  f << "step,train_loss\n";
  char buf[64];
  for (size_t i = 0; i < history.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%zu,%.17g\n", i + 1, history[i]);
    f << buf;
  }
}

}  // namespace tgv
