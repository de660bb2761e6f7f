#include <cstring>

#include "doctest.h"
#include "support.hpp"
#include "tgv/data.hpp"
#include "tgv/train.hpp"

using namespace tgv;
using namespace tgv::test;

namespace {

BankGradient zero_grad_like(const FilterBank& b) {
  BankGradient g;
  g.n = b.n;
  g.C = b.channels();
  g.nu = b.nu;
  g.g.assign(b.coeffs.size(), 0.0);
  return g;
}

}  // namespace

TEST_SUITE_BEGIN("fast");

TEST_CASE("adam: zero gradient leaves a feasible bank unchanged") {
  Rng rng(91);
  FilterBank b = random_bank(rng, BankTarget::L, 3, 1);
  FilterBank before = b;
  AdamMoments mom;
  TrainConfig cfg;
  adam_step_blockwise(b, zero_grad_like(b), mom, 1, cfg);
  for (size_t k = 0; k < b.coeffs.size(); ++k)
    CHECK(b.coeffs[k] == doctest::Approx(before.coeffs[k]).epsilon(1e-14));
}

TEST_CASE("adam: a constant gradient is removed by the sum projection") {
  Rng rng(92);
  FilterBank b = random_bank(rng, BankTarget::K, 2, 1);
  FilterBank before = b;
  BankGradient g = zero_grad_like(b);
  for (double& v : g.g) v = 0.37;
  AdamMoments mom;
  TrainConfig cfg;
  adam_step_blockwise(b, g, mom, 1, cfg);
  for (size_t k = 0; k < b.coeffs.size(); ++k)
    CHECK(b.coeffs[k] == doctest::Approx(before.coeffs[k]).epsilon(1e-12));
}

TEST_CASE("adam: identical blocks with identical gradients stay identical") {
  Rng rng(93);
  FilterBank b = make_bank(BankTarget::L, 2, 1);
  for (int c = 0; c < 2; ++c)
    for (int t = 0; t < 9; ++t) {
      const double v = rng.uniform(-1, 1);
      b.kernel(0, c)[t] = v;
      b.kernel(1, c)[t] = v;
    }
  b = project_constraints(b);
  AdamMoments mom;
  TrainConfig cfg;
  Rng grng(94);
  for (long t = 1; t <= 25; ++t) {
    BankGradient g = zero_grad_like(b);
    for (int c = 0; c < 2; ++c)
      for (int k = 0; k < 9; ++k) {
        const double v = grng.uniform(-1, 1);
        g.g[static_cast<size_t>(c) * 9 + k] = v;          // filter 0
        g.g[(2ull + c) * 9 + k] = v;                      // filter 1
      }
    adam_step_blockwise(b, g, mom, t, cfg);
  }
  CHECK(std::memcmp(b.kernel(0, 0), b.kernel(1, 0), sizeof(double) * 18) == 0);
}

TEST_CASE("adam keeps feasibility through arbitrary steps") {
  Rng rng(95);
  FilterBank b = random_bank(rng, BankTarget::L, 4, 2);
  AdamMoments mom;
  TrainConfig cfg;
  for (long t = 1; t <= 10; ++t) {
    BankGradient g = zero_grad_like(b);
    for (double& v : g.g) v = rng.uniform(-1, 1);
    adam_step_blockwise(b, g, mom, t, cfg);
    for (int l = 0; l < b.n; ++l)
      for (int c = 0; c < 2; ++c) CHECK(std::abs(b.kernel_sum(l, c) - 1.0) < 1e-10);
  }
}

TEST_CASE("initial_banks: handcrafted for 3x3 small, projected uniform otherwise") {
  BankPair small = initial_banks(1, 3, 1, BankConstraint::sum_to_one, false, 7);
  FilterBank k1 = handcrafted_bank(HandcraftedKind::K1);
  CHECK(std::memcmp(small.K.coeffs.data(), k1.coeffs.data(), sizeof(double) * k1.coeffs.size()) == 0);

  BankPair big = initial_banks(8, 8, 3, BankConstraint::sum_to_one, false, 7);
  CHECK(big.K.nu == 3);
  for (int l = 0; l < big.L.n; ++l)
    for (int c = 0; c < 2; ++c) CHECK(std::abs(big.L.kernel_sum(l, c) - 1.0) < 1e-10);
  for (double v : big.K.coeffs) CHECK(std::abs(v) < 1.0);

  BankPair sym = initial_banks(4, 4, 1, BankConstraint::sum_to_one, true, 7);
  CHECK(bank_is_symmetric(sym.L));
}

TEST_SUITE_END();

TEST_SUITE_BEGIN("slow");

namespace {

std::vector<TrainSample> tiny_dataset(uint64_t seed, int count, int size) {
  SyntheticOptions opt;
  opt.count = count;
  opt.rows = size;
  opt.cols = size;
  opt.min_extent = 4;
  opt.max_extent = size * 0.6;
  std::vector<Image> clean = gen_synthetic(seed, opt);
  BankPair banks{handcrafted_bank(HandcraftedKind::K1), handcrafted_bank(HandcraftedKind::L3)};
  std::vector<TrainSample> out;
  for (size_t s = 0; s < clean.size(); ++s) {
    TrainSample ts;
    ts.f = clean[s];
    PseudoGtOptions gt;
    gt.iters = 1500;
    ts.target = pseudo_ground_truth(clean[s], {0.1, 0.2}, banks, gt);
    out.push_back(std::move(ts));
  }
  return out;
}

}  // namespace

TEST_CASE("bilevel_train: loss drops, feasibility holds, runs reproduce bitwise") {
  std::vector<TrainSample> data = tiny_dataset(1234, 2, 24);
  TrainConfig cfg;
  cfg.outer_iters = 60;
  cfg.inner_iters = 40;
  cfg.alpha = {0.1, 0.2};
  cfg.lr = 2e-3;
  BankPair init = initial_banks(1, 3, 1, BankConstraint::sum_to_one, false, 5);

  TrainResult r1 = bilevel_train(data, init, cfg);
  CHECK(r1.loss_history.size() == 60);
  CHECK(r1.best_loss < r1.loss_history.front());
  for (int l = 0; l < r1.banks.L.n; ++l)
    for (int c = 0; c < 2; ++c) CHECK(std::abs(r1.banks.L.kernel_sum(l, c) - 1.0) < 1e-10);
  for (int l = 0; l < r1.banks.K.n; ++l)
    for (int c = 0; c < 3; ++c) CHECK(std::abs(r1.banks.K.kernel_sum(l, c) - 1.0) < 1e-10);

  TrainResult r2 = bilevel_train(data, init, cfg);
  CHECK(r1.loss_history.size() == r2.loss_history.size());
  for (size_t k = 0; k < r1.loss_history.size(); ++k) CHECK(r1.loss_history[k] == r2.loss_history[k]);
  CHECK(std::memcmp(r1.banks.L.coeffs.data(), r2.banks.L.coeffs.data(),
                    sizeof(double) * r1.banks.L.coeffs.size()) == 0);
}

TEST_CASE("bilevel_train: an already-optimal configuration barely moves") {
  // target equals the reconstruction at the initial banks, so the loss starts
  // at its minimum and gradients vanish as the inner solves converge
  SyntheticOptions opt;
  opt.count = 1;
  opt.rows = 16;
  opt.cols = 16;
  std::vector<Image> clean = gen_synthetic(77, opt);
  BankPair init = initial_banks(1, 3, 1, BankConstraint::sum_to_one, false, 5);
  TrainConfig cfg;
  cfg.outer_iters = 8;
  cfg.inner_iters = 600;
  cfg.alpha = {0.05, 0.1};

  StepSizes st = precondition(init, 16, 16, 1.0);
  std::vector<TrainSample> data(1);
  data[0].f = clean[0];
  data[0].target = pd_solve(clean[0], init, cfg.alpha, 4000, std::nullopt, st).u;

  TrainResult r = bilevel_train(data, init, cfg);
  CHECK(r.best_loss < 1e-6);
  double drift = 0.0;
  for (size_t k = 0; k < init.L.coeffs.size(); ++k)
    drift = std::max(drift, std::abs(r.banks.L.coeffs[k] - init.L.coeffs[k]));
  CHECK(drift < 1e-3);
}

TEST_CASE("equal-sums banks: rescaled alpha compensates a renormalized bank") {
  // solving with bank K (sums gamma) at alpha0 equals solving with K/gamma
  // (sums 1) at alpha0/|gamma|; same for L
  Rng rng(96);
  Image f = random_image(rng, 12, 12);
  for (double& v : f.g.v) v = 0.5 + 0.3 * v;

  BankPair banks{handcrafted_bank(HandcraftedKind::K1), handcrafted_bank(HandcraftedKind::L3)};
  const double gK = 0.8, gL = 1.3;
  for (double& v : banks.K.coeffs) v *= gK;
  for (double& v : banks.L.coeffs) v *= gL;
  banks.K.constraint = BankConstraint::equal_sums;
  banks.L.constraint = BankConstraint::equal_sums;
  banks.K.gamma = gK;
  banks.L.gamma = gL;

  BankPair unit{handcrafted_bank(HandcraftedKind::K1), handcrafted_bank(HandcraftedKind::L3)};
  const Alpha scaled{0.1 / gL, 0.2 / gK};  // alpha1 pairs with L, alpha0 with K

  Image u1 = pd_solve(f, banks, {0.1, 0.2}, 8000).u;
  Image u2 = pd_solve(f, unit, scaled, 8000).u;
  double rms = 0.0;
  for (size_t k = 0; k < u1.g.v.size(); ++k)
    rms += (u1.g.v[k] - u2.g.v[k]) * (u1.g.v[k] - u2.g.v[k]);
  rms = std::sqrt(rms / u1.g.v.size());
  CHECK(rms < 1e-8);
}

TEST_SUITE_END();
