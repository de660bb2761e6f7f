// Compares the parallel kernels against the serial reference implementations:
// wall time per call plus a max-abs-difference check. Run manually.
//
//   tgv_bench [size] [repeats] [threads]

#include <chrono>
#include <cstdio>
#include <cstdlib>

#include "tgv/diffops.hpp"
#include "tgv/prox.hpp"
#include "tgv/reference.hpp"
#include "tgv/rng.hpp"
#include "tgv/solver.hpp"

using namespace tgv;
using Clock = std::chrono::steady_clock;

namespace {

template <typename Fn>
double time_ms(int repeats, Fn&& fn) {
  fn();  // warm up
  const auto t0 = Clock::now();
  for (int r = 0; r < repeats; ++r) fn();
  const auto t1 = Clock::now();
  return std::chrono::duration<double, std::milli>(t1 - t0).count() / repeats;
}

double max_diff(const CoefficientField& a, const CoefficientField& b) {
  double m = 0.0;
  for (size_t k = 0; k < a.ch.size(); ++k)
    for (size_t t = 0; t < a.ch[k].v.size(); ++t)
      m = std::max(m, std::abs(a.ch[k].v[t] - b.ch[k].v[t]));
  return m;
}

double max_diff(const StaggeredField& a, const StaggeredField& b) {
  double m = 0.0;
  for (size_t k = 0; k < a.ch.size(); ++k)
    for (size_t t = 0; t < a.ch[k].v.size(); ++t)
      m = std::max(m, std::abs(a.ch[k].v[t] - b.ch[k].v[t]));
  return m;
}

}  // namespace

int main(int argc, char** argv) {
  const int size = argc > 1 ? std::atoi(argv[1]) : 256;
  const int repeats = argc > 2 ? std::atoi(argv[2]) : 20;
  if (argc > 3) set_thread_cap(std::atoi(argv[3]));

  std::printf("grid %dx%d, %d repeats, %d threads\n\n", size, size, repeats, max_threads());
  std::printf("%-18s %10s %10s %9s %12s\n", "kernel", "serial ms", "parallel", "speedup", "max|diff|");

  Rng rng(1);
  Image u(size, size, 1.0);
  for (double& v : u.g.v) v = rng.uniform(0.0, 1.0);
  StaggeredField w = StaggeredField::vector(size, size, 1.0);
  for (Grid& g : w.ch)
    for (double& v : g.v) v = rng.uniform(-1.0, 1.0);
  w.apply_mask();
  StaggeredField p = StaggeredField::tensor(size, size, 1.0);
  for (Grid& g : p.ch)
    for (double& v : g.v) v = rng.uniform(-1.0, 1.0);
  p.apply_mask();
  FilterBank K = handcrafted_bank(HandcraftedKind::K4);
  FilterBank L = handcrafted_bank(HandcraftedKind::L4);
  CoefficientField vk = apply_K(p, K);

  {
    const double ts = time_ms(repeats, [&] { (void)ref::grad(u); });
    const double tp = time_ms(repeats, [&] { (void)grad(u); });
    std::printf("%-18s %10.3f %10.3f %8.2fx %12.2e\n", "grad", ts, tp, ts / tp,
                max_diff(ref::grad(u), grad(u)));
  }
  {
    const double ts = time_ms(repeats, [&] { (void)ref::sym_grad(w); });
    const double tp = time_ms(repeats, [&] { (void)sym_grad(w); });
    std::printf("%-18s %10.3f %10.3f %8.2fx %12.2e\n", "sym_grad", ts, tp, ts / tp,
                max_diff(ref::sym_grad(w), sym_grad(w)));
  }
  {
    const double ts = time_ms(repeats, [&] { (void)ref::apply_bank(p, K); });
    const double tp = time_ms(repeats, [&] { (void)apply_K(p, K); });
    std::printf("%-18s %10.3f %10.3f %8.2fx %12.2e\n", "apply_K (n=4)", ts, tp, ts / tp,
                max_diff(ref::apply_bank(p, K), apply_K(p, K)));
  }
  {
    const double ts = time_ms(repeats, [&] { (void)ref::apply_bank(w, L); });
    const double tp = time_ms(repeats, [&] { (void)apply_L(w, L); });
    std::printf("%-18s %10.3f %10.3f %8.2fx %12.2e\n", "apply_L (n=4)", ts, tp, ts / tp,
                max_diff(ref::apply_bank(w, L), apply_L(w, L)));
  }
  {
    const double ts = time_ms(repeats, [&] { (void)ref::prox_group_z(vk, 0.3); });
    const double tp = time_ms(repeats, [&] { (void)prox_group_z(vk, 0.3); });
    std::printf("%-18s %10.3f %10.3f %8.2fx %12.2e\n", "prox_group_z", ts, tp, ts / tp,
                max_diff(ref::prox_group_z(vk, 0.3), prox_group_z(vk, 0.3)));
  }
  {
    const double ts = time_ms(repeats, [&] { (void)ref::znorm(vk); });
    const double tp = time_ms(repeats, [&] { (void)znorm(vk); });
    std::printf("%-18s %10.3f %10.3f %8.2fx %12.2e\n", "znorm", ts, tp, ts / tp,
                std::abs(ref::znorm(vk) - znorm(vk)));
  }

  // end-to-end: a short denoising run
  {
    BankPair banks{K, L};
    Image f = u;
    const double t = time_ms(1, [&] { (void)pd_solve(f, banks, {0.1, 0.2}, 100); });
    std::printf("\npd_solve, 100 iterations: %.1f ms (%.3f ms/iter)\n", t, t / 100.0);
  }
  return 0;
}
