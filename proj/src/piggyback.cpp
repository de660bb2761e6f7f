#include "tgv/piggyback.hpp"

#include <cmath>

namespace tgv {

AdjointState make_zero_adjoint(const Image& f, const BankPair& banks) {
  AdjointState a;
  a.U = Image(f.rows(), f.cols(), f.h);
  a.VK = CoefficientField(banks.K.n, 3, f.rows(), f.cols());
  a.VL = CoefficientField(banks.L.n, 2, f.rows(), f.cols());
  a.P = StaggeredField::tensor(f.rows(), f.cols(), f.h);
  a.P_bar = a.P;
  return a;
}

PiggybackResult piggyback_solve(const Image& f, const Image& target, const BankPair& banks,
                                Alpha alpha, const StepSizes& st, long iters,
                                std::optional<PiggybackResult> init) {
  if (iters < 1) throw std::invalid_argument("piggyback_solve: iters must be >= 1");
  if (f.rows() != target.rows() || f.cols() != target.cols())
    throw std::invalid_argument("piggyback_solve: target shape mismatch");
  const int M = f.rows(), N = f.cols();
  const double h = f.h;

  PiggybackResult r;
  if (init) {
    r = std::move(*init);
  } else {
    r.saddle = make_initial_state(f, banks);
    r.adjoint = make_zero_adjoint(f, banks);
  }
  SaddleState& s = r.saddle;
  AdjointState& a = r.adjoint;

  detail::StepTrace trace;
  for (long j = 0; j < iters; ++j) {
    detail::pd_step(s, f, banks, alpha, st, &trace);

    // adjoint dual ascent from the old adjoint iterates
    {
      StaggeredField R = second_order(a.U);
      StaggeredField el = sym_grad(apply_L_adjoint(a.VL, banks.L, h));
      StaggeredField kt = apply_K_adjoint(a.VK, banks.K, h);
      for (int c = 0; c < 3; ++c) {
        Grid& pc = a.P.ch[c];
        Grid& pb = a.P_bar.ch[c];
        const Grid& rc = R.ch[c];
        const Grid& e = el.ch[c];
        const Grid& k = kt.ch[c];
        parallel_rows(M, N, [&](int i) {
          for (int jj = 0; jj < N; ++jj) {
            const double pnew = pc.at(i, jj) + st.sigma * (rc.at(i, jj) - e.at(i, jj) - k.at(i, jj));
            pb.at(i, jj) = pnew + st.theta * (pnew - pc.at(i, jj));
            pc.at(i, jj) = pnew;
          }
        });
      }
    }

    // U update: loss gradient injected at the previous primal iterate
    StaggeredField Et = sym_grad_adjoint(a.P_bar);
    {
      Image dU = grad_adjoint(Et);
      parallel_rows(M, N, [&](int i) {
        for (int jj = 0; jj < N; ++jj)
          a.U.at(i, jj) -= st.tau_u * (dU.at(i, jj) + (trace.u_prev.at(i, jj) - target.at(i, jj)));
      });
      a.U = prox_quadratic_jvp(a.U, st.tau_u);
    }
    // VL update with the prox Jacobian at the primal pre-prox point
    {
      CoefficientField dL = apply_L(Et, banks.L);
      for (size_t k = 0; k < a.VL.ch.size(); ++k) {
        Grid& g = a.VL.ch[k];
        const Grid& d = dL.ch[k];
        parallel_rows(M, N, [&](int i) {
          for (int jj = 0; jj < N; ++jj) g.at(i, jj) += st.tau_vL * d.at(i, jj);
        });
      }
      a.VL = prox_group_z_jvp(trace.vL_tilde, st.tau_vL * alpha.a1, a.VL);
    }
    // VK update
    {
      CoefficientField dK = apply_K(a.P_bar, banks.K);
      for (size_t k = 0; k < a.VK.ch.size(); ++k) {
        Grid& g = a.VK.ch[k];
        const Grid& d = dK.ch[k];
        parallel_rows(M, N, [&](int i) {
          for (int jj = 0; jj < N; ++jj) g.at(i, jj) += st.tau_vK * d.at(i, jj);
        });
      }
      a.VK = prox_group_z_jvp(trace.vK_tilde, st.tau_vK * alpha.a0, a.VK);
    }

    if ((j & 63) == 63 && (!all_finite(a.U) || !all_finite(s.u)))
      throw SolverDivergence("piggyback_solve: non-finite iterate");
  }
  if (!all_finite(a.U) || !all_finite(s.u))
    throw SolverDivergence("piggyback_solve: non-finite iterate");
  return r;
}

BankGradient bank_correlation(const StaggeredField& X, const CoefficientField& Y, int nu) {
  BankGradient out;
  out.n = Y.n;
  out.C = Y.C;
  out.nu = nu;
  const int ks = 2 * nu + 1;
  out.g.assign(static_cast<size_t>(Y.n) * Y.C * ks * ks, 0.0);
  const int M = X.rows(), N = X.cols();
  for (int l = 0; l < Y.n; ++l)
    for (int c = 0; c < Y.C; ++c) {
      const Grid& y = Y.at(l, c);
      const Grid& x = X.ch[static_cast<size_t>(c)];
      for (int m = -nu; m <= nu; ++m)
        for (int n_ = -nu; n_ <= nu; ++n_) {
          const double s = deterministic_sum(M, N, [&](int i) {
            const int ii = i - m;
            if (ii < 0 || ii >= M) return 0.0;
            double acc = 0.0;
            for (int j = 0; j < N; ++j) {
              const int jj = j - n_;
              if (jj < 0 || jj >= N) continue;
              if (!slot_valid(X.kind, c, ii, jj, M, N)) continue;
              acc += y.at(i, j) * x.at(ii, jj);
            }
            return acc;
          });
          out.tap(l, c, m, n_) = s;
        }
    }
  return out;
}

std::pair<BankGradient, BankGradient> filter_gradients(const SaddleState& saddle,
                                                       const AdjointState& adjoint,
                                                       const BankPair& banks) {
  if (saddle.vK.n != banks.K.n || saddle.vL.n != banks.L.n ||
      adjoint.VK.n != banks.K.n || adjoint.VL.n != banks.L.n)
    throw std::invalid_argument("filter_gradients: state/bank shape mismatch");

  // K coefficients: the coupling contributes -<vK, K p>, so
  // d loss/d xi = -[ corr(p_bar, VK) + corr(P_bar, vK) ].
  BankGradient gK = bank_correlation(saddle.p_bar, adjoint.VK, banks.K.nu);
  {
    BankGradient g2 = bank_correlation(adjoint.P_bar, saddle.vK, banks.K.nu);
    for (size_t k = 0; k < gK.g.size(); ++k) gK.g[k] = -(gK.g[k] + g2.g[k]);
  }

  // L coefficients couple through L E*: correlate E* p_bar with VL and
  // E* P_bar with vL on the vector grid.
  StaggeredField q = sym_grad_adjoint(saddle.p_bar);
  StaggeredField Q = sym_grad_adjoint(adjoint.P_bar);
  BankGradient gL = bank_correlation(q, adjoint.VL, banks.L.nu);
  {
    BankGradient g2 = bank_correlation(Q, saddle.vL, banks.L.nu);
    for (size_t k = 0; k < gL.g.size(); ++k) gL.g[k] = -(gL.g[k] + g2.g[k]);
  }
  return {gK, gL};
}

}  // namespace tgv
