#include "tgv/solver.hpp"

#include <cmath>

#include "tgv/rng.hpp"

namespace tgv {

namespace {

void fill_random(Grid& g, Rng& rng) {
  for (double& v : g.v) v = rng.uniform(-1.0, 1.0);
}

double grid_norm(const Grid& g) { return norm2(g); }

void scale_grid(Grid& g, double s) {
  for (double& v : g.v) v *= s;
}

// Rayleigh-quotient power iteration on x -> AtA(x); returns ||A||.
template <typename Vec, typename Norm, typename Scale, typename AtA>
double power_norm(Vec& x, Norm normf, Scale scalef, AtA step, const StepOptions& opt, bool& converged) {
  double nx = normf(x);
  if (nx == 0.0) {
    converged = true;
    return 0.0;
  }
  scalef(x, 1.0 / nx);
  double est = 0.0;
  converged = false;
  for (int it = 0; it < opt.max_iters; ++it) {
    Vec y = step(x);
    double ny = normf(y);
    if (ny == 0.0) {
      converged = true;
      return 0.0;
    }
    double new_est = std::sqrt(ny);  // x normalized, so ||AtA x|| ~ lambda_max
    scalef(y, 1.0 / ny);
    x = y;
    if (it > 1 && std::abs(new_est - est) <= opt.tol * std::max(new_est, 1e-300)) {
      est = new_est;
      converged = true;
      break;
    }
    est = new_est;
  }
  if (!converged) est *= 1.10;
  return est;
}

struct CoefVec {
  CoefficientField f;
};

double coef_norm(const CoefVec& v) { return std::sqrt(dot(v.f, v.f)); }
void coef_scale(CoefVec& v, double s) {
  for (Grid& g : v.f.ch) scale_grid(g, s);
}

}  // namespace

StepSizes precondition(const BankPair& banks, int rows, int cols, double h, const StepOptions& opt,
                       PowerState* warm) {
  StepSizes st;
  st.theta = 1.0;
  Rng rng(0x5eedf00d);

  const bool have_warm = warm && warm->ready;

  // ||D^2||: power iteration on u -> D2^T(D2 u)
  {
    Grid x = have_warm ? warm->u : Grid(rows, cols);
    if (!have_warm) fill_random(x, rng);
    bool conv = false;
    st.norm_D2 = power_norm(
        x, grid_norm, scale_grid,
        [&](const Grid& g) {
          Image u(rows, cols, h);
          u.g = g;
          return second_order_adjoint(second_order(u)).g;
        },
        opt, conv);
    st.power_converged = st.power_converged && conv;
    if (warm) warm->u = x;
  }
  // ||K*||: on coefficient space, v -> K(K^T v)
  {
    CoefVec x{have_warm ? warm->vK : CoefficientField(banks.K.n, 3, rows, cols)};
    if (!have_warm)
      for (Grid& g : x.f.ch) fill_random(g, rng);
    bool conv = false;
    st.norm_K = power_norm(
        x, coef_norm, coef_scale,
        [&](const CoefVec& v) { return CoefVec{apply_K(apply_K_adjoint(v.f, banks.K, h), banks.K)}; },
        opt, conv);
    st.power_converged = st.power_converged && conv;
    if (warm) warm->vK = x.f;
  }
  // ||E L*||: v -> (L E^T)(E L^T v)
  {
    CoefVec x{have_warm ? warm->vL : CoefficientField(banks.L.n, 2, rows, cols)};
    if (!have_warm)
      for (Grid& g : x.f.ch) fill_random(g, rng);
    bool conv = false;
    st.norm_EL = power_norm(
        x, coef_norm, coef_scale,
        [&](const CoefVec& v) {
          StaggeredField t = sym_grad(apply_L_adjoint(v.f, banks.L, h));
          return CoefVec{apply_L(sym_grad_adjoint(t), banks.L)};
        },
        opt, conv);
    st.power_converged = st.power_converged && conv;
    if (warm) warm->vL = x.f;
  }

  const double eps = 1e-12;
  st.tau_u = 1.0 / std::max(st.norm_D2 * st.norm_D2, eps);
  st.tau_vK = 1.0 / std::max(st.norm_K * st.norm_K, eps);
  st.tau_vL = 1.0 / std::max(st.norm_EL * st.norm_EL, eps);

  // Top eigenvalue of A T A^T on the dual space fixes sigma so that
  // sigma * ||A T A^T|| = safety.
  {
    StaggeredField x = have_warm ? warm->joint : StaggeredField::tensor(rows, cols, h);
    if (!have_warm)
      for (Grid& g : x.ch) fill_random(g, rng);
    auto norm_t = [](const StaggeredField& f) { return std::sqrt(dot(f, f)); };
    auto scale_t = [](StaggeredField& f, double s) {
      for (Grid& g : f.ch) scale_grid(g, s);
    };
    bool conv = false;
    double lam_sqrt = power_norm(
        x, norm_t, scale_t,
        [&](const StaggeredField& p) {
          Image du = second_order_adjoint(p);
          for (double& v : du.g.v) v *= st.tau_u;
          StaggeredField out = second_order(du);
          CoefficientField dk = apply_K(p, banks.K);
          for (Grid& g : dk.ch) scale_grid(g, st.tau_vK);
          StaggeredField back_k = apply_K_adjoint(dk, banks.K, h);
          CoefficientField dl = apply_L(sym_grad_adjoint(p), banks.L);
          for (Grid& g : dl.ch) scale_grid(g, st.tau_vL);
          StaggeredField back_l = sym_grad(apply_L_adjoint(dl, banks.L, h));
          for (int c = 0; c < 3; ++c)
            for (size_t k = 0; k < out.ch[c].v.size(); ++k)
              out.ch[c].v[k] += back_k.ch[c].v[k] + back_l.ch[c].v[k];
          return out;
        },
        opt, conv);
    st.power_converged = st.power_converged && conv;
    st.lambda_joint = lam_sqrt * lam_sqrt;
    if (warm) {
      warm->joint = x;
      warm->ready = true;
    }
  }

  st.sigma = opt.safety / std::max(st.lambda_joint, eps);
  return st;
}

SaddleState make_initial_state(const Image& f, const BankPair& banks) {
  SaddleState s;
  s.u = f;
  s.vK = CoefficientField(banks.K.n, 3, f.rows(), f.cols());
  s.vL = CoefficientField(banks.L.n, 2, f.rows(), f.cols());
  s.p = StaggeredField::tensor(f.rows(), f.cols(), f.h);
  s.p_bar = s.p;
  s.iters = 0;
  return s;
}

namespace detail {

void pd_step(SaddleState& s, const Image& f, const BankPair& banks, Alpha alpha,
             const StepSizes& st, StepTrace* trace) {
  const int M = f.rows(), N = f.cols();
  const double h = f.h;
  if (trace) trace->u_prev = s.u;

  // dual ascent on p
  StaggeredField r = second_order(s.u);
  {
    StaggeredField el = sym_grad(apply_L_adjoint(s.vL, banks.L, h));
    StaggeredField kt = apply_K_adjoint(s.vK, banks.K, h);
    for (int c = 0; c < 3; ++c) {
      Grid& rc = r.ch[c];
      const Grid& e = el.ch[c];
      const Grid& k = kt.ch[c];
      Grid& pc = s.p.ch[c];
      Grid& pb = s.p_bar.ch[c];
      parallel_rows(M, N, [&](int i) {
        for (int j = 0; j < N; ++j) {
          const double pnew = pc.at(i, j) + st.sigma * (rc.at(i, j) - e.at(i, j) - k.at(i, j));
          pb.at(i, j) = pnew + st.theta * (pnew - pc.at(i, j));
          pc.at(i, j) = pnew;
        }
      });
    }
  }

  // proximal descent on u, vL, vK using the extrapolated dual
  StaggeredField et = sym_grad_adjoint(s.p_bar);
  {
    Image du = grad_adjoint(et);
    parallel_rows(M, N, [&](int i) {
      for (int j = 0; j < N; ++j) s.u.at(i, j) -= st.tau_u * du.at(i, j);
    });
    if (trace) trace->u_tilde = s.u;
    s.u = prox_quadratic(s.u, f, st.tau_u);
  }
  {
    CoefficientField dl = apply_L(et, banks.L);
    for (size_t k = 0; k < s.vL.ch.size(); ++k) {
      Grid& g = s.vL.ch[k];
      const Grid& d = dl.ch[k];
      parallel_rows(M, N, [&](int i) {
        for (int j = 0; j < N; ++j) g.at(i, j) += st.tau_vL * d.at(i, j);
      });
    }
    if (trace) trace->vL_tilde = s.vL;
    s.vL = prox_group_z(s.vL, st.tau_vL * alpha.a1);
  }
  {
    CoefficientField dk = apply_K(s.p_bar, banks.K);
    for (size_t k = 0; k < s.vK.ch.size(); ++k) {
      Grid& g = s.vK.ch[k];
      const Grid& d = dk.ch[k];
      parallel_rows(M, N, [&](int i) {
        for (int j = 0; j < N; ++j) g.at(i, j) += st.tau_vK * d.at(i, j);
      });
    }
    if (trace) trace->vK_tilde = s.vK;
    s.vK = prox_group_z(s.vK, st.tau_vK * alpha.a0);
  }
  s.iters++;
}

}  // namespace detail

SaddleState pd_solve(const Image& f, const BankPair& banks, Alpha alpha, long iters,
                     std::optional<SaddleState> init, std::optional<StepSizes> steps) {
  if (iters < 1) throw std::invalid_argument("pd_solve: iters must be >= 1");
  if (alpha.a1 < 0.0 || alpha.a0 < 0.0) throw std::invalid_argument("pd_solve: alpha must be >= 0");
  StepSizes st = steps ? *steps : precondition(banks, f.rows(), f.cols(), f.h);
  SaddleState s = init ? std::move(*init) : make_initial_state(f, banks);
  for (long j = 0; j < iters; ++j) {
    detail::pd_step(s, f, banks, alpha, st);
    if ((j & 63) == 63 && !all_finite(s.u))
      throw SolverDivergence("pd_solve: non-finite iterate (step sizes violated)");
  }
  if (!all_finite(s.u))
    throw SolverDivergence("pd_solve: non-finite iterate (step sizes violated)");
  return s;
}

double primal_objective(const SaddleState& s, const Image& f, Alpha alpha) {
  double data = 0.0;
  const int M = f.rows(), N = f.cols();
  data = deterministic_sum(M, N, [&](int i) {
    double acc = 0.0;
    for (int j = 0; j < N; ++j) {
      const double d = s.u.at(i, j) - f.at(i, j);
      acc += d * d;
    }
    return acc;
  });
  return 0.5 * data + alpha.a1 * znorm(s.vL) + alpha.a0 * znorm(s.vK);
}

double constraint_residual(const SaddleState& s, const BankPair& banks) {
  StaggeredField r = second_order(s.u);
  StaggeredField el = sym_grad(apply_L_adjoint(s.vL, banks.L, s.u.h));
  StaggeredField kt = apply_K_adjoint(s.vK, banks.K, s.u.h);
  double rr = 0.0, dd = 0.0;
  for (int c = 0; c < 3; ++c) {
    const Grid& a = r.ch[c];
    dd += dot(a, a);
    Grid diff = a;
    for (size_t k = 0; k < diff.v.size(); ++k) diff.v[k] -= el.ch[c].v[k] + kt.ch[c].v[k];
    rr += dot(diff, diff);
  }
  return std::sqrt(rr) / std::max(1.0, std::sqrt(dd));
}

namespace {

struct CoeffPair {
  CoefficientField vL;
  CoefficientField vK;
};

StaggeredField apply_A(const CoeffPair& v, const BankPair& banks, double h) {
  StaggeredField t = sym_grad(apply_L_adjoint(v.vL, banks.L, h));
  StaggeredField k = apply_K_adjoint(v.vK, banks.K, h);
  for (int c = 0; c < 3; ++c)
    for (size_t s = 0; s < t.ch[c].v.size(); ++s) t.ch[c].v[s] += k.ch[c].v[s];
  return t;
}

CoeffPair apply_AT(const StaggeredField& p, const BankPair& banks) {
  return {apply_L(sym_grad_adjoint(p), banks.L), apply_K(p, banks.K)};
}

// CG on A A^T y = rhs (symmetric PSD on the tensor space).
StaggeredField cg_normal(const StaggeredField& rhs, const BankPair& banks, double h,
                         int max_iters = 200) {
  StaggeredField y = StaggeredField::tensor(rhs.rows(), rhs.cols(), h);
  StaggeredField r = rhs;
  StaggeredField d = r;
  double rr = dot(r, r);
  const double tol2 = rr * 1e-24;
  for (int it = 0; it < max_iters && rr > tol2; ++it) {
    StaggeredField q = apply_A(apply_AT(d, banks), banks, h);
    const double dq = dot(d, q);
    if (dq <= 0.0) break;
    const double a = rr / dq;
    for (int c = 0; c < 3; ++c)
      for (size_t s = 0; s < y.ch[c].v.size(); ++s) {
        y.ch[c].v[s] += a * d.ch[c].v[s];
        r.ch[c].v[s] -= a * q.ch[c].v[s];
      }
    const double rr_new = dot(r, r);
    const double beta = rr_new / rr;
    rr = rr_new;
    for (int c = 0; c < 3; ++c)
      for (size_t s = 0; s < d.ch[c].v.size(); ++s) d.ch[c].v[s] = r.ch[c].v[s] + beta * d.ch[c].v[s];
  }
  return y;
}

}  // namespace

TgvValue tgv_value(const Image& u, const BankPair& banks, Alpha alpha, long iters,
                   double residual_tol, double gap_tol, double gamma, const TgvWarmStart* init,
                   TgvWarmStart* final_state) {
  if (iters < 1) throw std::invalid_argument("tgv_value: iters must be >= 1");
  const int M = u.rows(), N = u.cols();
  const double h = u.h;
  const double h2 = h * h;
  StepSizes st = precondition(banks, M, N, h);
  st.tau_vK *= gamma;
  st.tau_vL *= gamma;
  st.sigma /= gamma;

  StaggeredField target = second_order(u);
  CoeffPair v{CoefficientField(banks.L.n, 2, M, N), CoefficientField(banks.K.n, 3, M, N)};
  StaggeredField p = StaggeredField::tensor(M, N, h);
  if (init) {
    v.vL = init->vL;
    v.vK = init->vK;
    p = init->p;
  }
  StaggeredField p_bar = p;

  const double target_norm = std::sqrt(dot(target, target));

  auto upper_of = [&](const CoeffPair& cand, double& raw_residual) {
    StaggeredField r = apply_A(cand, banks, h);
    for (int c = 0; c < 3; ++c)
      for (size_t s = 0; s < r.ch[c].v.size(); ++s) r.ch[c].v[s] = target.ch[c].v[s] - r.ch[c].v[s];
    raw_residual = std::sqrt(dot(r, r)) / std::max(1.0, target_norm);
    CoeffPair corr = apply_AT(cg_normal(r, banks, h), banks);
    CoeffPair vf = cand;
    for (size_t k = 0; k < vf.vL.ch.size(); ++k)
      for (size_t s = 0; s < vf.vL.ch[k].v.size(); ++s) vf.vL.ch[k].v[s] += corr.vL.ch[k].v[s];
    for (size_t k = 0; k < vf.vK.ch.size(); ++k)
      for (size_t s = 0; s < vf.vK.ch[k].v.size(); ++s) vf.vK.ch[k].v[s] += corr.vK.ch[k].v[s];
    return h2 * (alpha.a1 * znorm(vf.vL) + alpha.a0 * znorm(vf.vK));
  };
  auto lower_of = [&](const StaggeredField& pc) {
    CoeffPair at = apply_AT(pc, banks);
    const double dL = znorm_dual(at.vL), dK = znorm_dual(at.vK);
    double s = 1.0;
    if (dL > 0.0) s = std::min(s, h2 * alpha.a1 / dL);
    if (dK > 0.0) s = std::min(s, h2 * alpha.a0 / dK);
    return std::max(0.0, s * dot(target, pc));
  };
  auto certify = [&](TgvValue& out, const CoeffPair& v_alt, const StaggeredField& p_alt) {
    double res_last = 0.0, res_alt = 0.0;
    const double up_last = upper_of(v, res_last);
    const double up_alt = upper_of(v_alt, res_alt);
    out.value = std::min(up_last, up_alt);
    out.residual = res_last;
    out.lower = std::max(lower_of(p), lower_of(p_alt));
    out.gap = (out.value - out.lower) / std::max(out.value, 1e-300);
  };

  // ergodic averages over the second half of the run carry the certificate;
  // they settle far faster than the last iterate on this degenerate problem
  CoeffPair v_avg = v;
  StaggeredField p_avg = p;
  long avg_count = 0;
  auto reset_avg = [&]() {
    v_avg = v;
    p_avg = p;
    avg_count = 1;
  };
  auto push_avg = [&]() {
    ++avg_count;
    const double w = 1.0 / avg_count;
    for (size_t k = 0; k < v_avg.vL.ch.size(); ++k)
      for (size_t t = 0; t < v_avg.vL.ch[k].v.size(); ++t)
        v_avg.vL.ch[k].v[t] += w * (v.vL.ch[k].v[t] - v_avg.vL.ch[k].v[t]);
    for (size_t k = 0; k < v_avg.vK.ch.size(); ++k)
      for (size_t t = 0; t < v_avg.vK.ch[k].v.size(); ++t)
        v_avg.vK.ch[k].v[t] += w * (v.vK.ch[k].v[t] - v_avg.vK.ch[k].v[t]);
    for (int c = 0; c < 3; ++c)
      for (size_t t = 0; t < p_avg.ch[c].v.size(); ++t)
        p_avg.ch[c].v[t] += w * (p.ch[c].v[t] - p_avg.ch[c].v[t]);
  };

  TgvValue out;
  const long check_every = 2000;
  long next_restart = 1000;
  for (long j = 0; j < iters; ++j) {
    StaggeredField av = apply_A(v, banks, h);
    for (int c = 0; c < 3; ++c) {
      Grid& pc = p.ch[c];
      Grid& pb = p_bar.ch[c];
      const Grid& t = target.ch[c];
      const Grid& a = av.ch[c];
      parallel_rows(M, N, [&](int i) {
        for (int jj = 0; jj < N; ++jj) {
          const double pnew = pc.at(i, jj) + st.sigma * (t.at(i, jj) - a.at(i, jj));
          pb.at(i, jj) = pnew + st.theta * (pnew - pc.at(i, jj));
          pc.at(i, jj) = pnew;
        }
      });
    }
    CoeffPair d = apply_AT(p_bar, banks);
    for (size_t k = 0; k < v.vL.ch.size(); ++k)
      for (size_t t = 0; t < v.vL.ch[k].v.size(); ++t) v.vL.ch[k].v[t] += st.tau_vL * d.vL.ch[k].v[t];
    v.vL = prox_group_z(v.vL, st.tau_vL * h2 * alpha.a1);
    for (size_t k = 0; k < v.vK.ch.size(); ++k)
      for (size_t t = 0; t < v.vK.ch[k].v.size(); ++t) v.vK.ch[k].v[t] += st.tau_vK * d.vK.ch[k].v[t];
    v.vK = prox_group_z(v.vK, st.tau_vK * h2 * alpha.a0);

    if (j + 1 == next_restart) {
      reset_avg();  // doubling restarts keep the average on the recent tail
      next_restart *= 2;
    } else {
      push_avg();
    }

    if (gap_tol > 0.0 && (j + 1) % check_every == 0 && j + 1 < iters) {
      certify(out, v_avg, p_avg);
      if (out.gap <= gap_tol) {
        out.converged = out.residual <= residual_tol;
        if (final_state) {
          final_state->vL = v.vL;
          final_state->vK = v.vK;
          final_state->p = p;
        }
        return out;
      }
    }
  }
  certify(out, v_avg, p_avg);
  out.converged = out.residual <= residual_tol;
  if (final_state) {
    final_state->vL = v.vL;
    final_state->vK = v.vK;
    final_state->p = p;
  }
  return out;
}

}  // namespace tgv
