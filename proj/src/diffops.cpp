#include "tgv/diffops.hpp"

#include <stdexcept>

namespace tgv {

namespace {

void check_vector(const StaggeredField& w) {
  if (w.kind != FieldKind::vector2 || w.channels() != 2)
    throw std::invalid_argument("expected a 2-channel vector field");
}

void check_tensor(const StaggeredField& p) {
  if (p.kind != FieldKind::tensor3 || p.channels() != 3)
    throw std::invalid_argument("expected a 3-channel tensor field");
}

}  // namespace

StaggeredField grad(const Image& u) {
  const int M = u.rows(), N = u.cols();
  const double ih = 1.0 / u.h;
  StaggeredField w = StaggeredField::vector(M, N, u.h);
  Grid& w1 = w.ch[0];
  Grid& w2 = w.ch[1];
  parallel_rows(M, N, [&](int i) {
    for (int j = 0; j < N; ++j) {
      w1.at(i, j) = (i <= M - 2) ? (u.at(i + 1, j) - u.at(i, j)) * ih : 0.0;
      w2.at(i, j) = (j <= N - 2) ? (u.at(i, j + 1) - u.at(i, j)) * ih : 0.0;
    }
  });
  return w;
}

Image grad_adjoint(const StaggeredField& q) {
  check_vector(q);
  const int M = q.rows(), N = q.cols();
  const double ih = 1.0 / q.h;
  Image u(M, N, q.h);
  const Grid& q1 = q.ch[0];
  const Grid& q2 = q.ch[1];
  parallel_rows(M, N, [&](int i) {
    for (int j = 0; j < N; ++j) {
      double s = 0.0;
      if (i >= 1) s += q1.at(i - 1, j);
      if (i <= M - 2) s -= q1.at(i, j);
      if (j >= 1) s += q2.at(i, j - 1);
      if (j <= N - 2) s -= q2.at(i, j);
      u.at(i, j) = s * ih;
    }
  });
  return u;
}

StaggeredField sym_grad(const StaggeredField& w) {
  check_vector(w);
  const int M = w.rows(), N = w.cols();
  const double ih = 1.0 / w.h;
  const double ih2 = 0.5 / w.h;
  StaggeredField p = StaggeredField::tensor(M, N, w.h);
  const Grid& w1 = w.ch[0];
  const Grid& w2 = w.ch[1];
  Grid& e1 = p.ch[0];
  Grid& e2 = p.ch[1];
  Grid& e3 = p.ch[2];
  parallel_rows(M, N, [&](int i) {
    for (int j = 0; j < N; ++j) {
      e1.at(i, j) = (i >= 1 && i <= M - 2) ? (w1.at(i, j) - w1.at(i - 1, j)) * ih : 0.0;
      e2.at(i, j) = (i <= M - 2 && j <= N - 2)
                        ? ((w1.at(i, j + 1) - w1.at(i, j)) + (w2.at(i + 1, j) - w2.at(i, j))) * ih2
                        : 0.0;
      e3.at(i, j) = (j >= 1 && j <= N - 2) ? (w2.at(i, j) - w2.at(i, j - 1)) * ih : 0.0;
    }
  });
  return p;
}

StaggeredField sym_grad_adjoint(const StaggeredField& p) {
  check_tensor(p);
  const int M = p.rows(), N = p.cols();
  const double ih = 1.0 / p.h;
  const double ih2 = 0.5 / p.h;
  StaggeredField w = StaggeredField::vector(M, N, p.h);
  const Grid& e1 = p.ch[0];
  const Grid& e2 = p.ch[1];
  const Grid& e3 = p.ch[2];
  Grid& w1 = w.ch[0];
  Grid& w2 = w.ch[1];
  // Structural slots of p are ignored (mask-read); outputs land on the
  // vector field's own valid range.
  parallel_rows(M, N, [&](int i) {
    for (int j = 0; j < N; ++j) {
      double s1 = 0.0;
      if (i <= M - 2) {
        if (i >= 1) s1 += e1.at(i, j) * ih;
        if (i + 1 <= M - 2) s1 -= e1.at(i + 1, j) * ih;
        if (j >= 1 && j - 1 <= N - 2) s1 += e2.at(i, j - 1) * ih2;
        if (j <= N - 2) s1 -= e2.at(i, j) * ih2;
      }
      w1.at(i, j) = s1;

      double s2 = 0.0;
      if (j <= N - 2) {
        if (j >= 1) s2 += e3.at(i, j) * ih;
        if (j + 1 <= N - 2) s2 -= e3.at(i, j + 1) * ih;
        if (i >= 1 && i - 1 <= M - 2) s2 += e2.at(i - 1, j) * ih2;
        if (i <= M - 2) s2 -= e2.at(i, j) * ih2;
      }
      w2.at(i, j) = s2;
    }
  });
  return w;
}

StaggeredField second_order(const Image& u) { return sym_grad(grad(u)); }

Image second_order_adjoint(const StaggeredField& p) { return grad_adjoint(sym_grad_adjoint(p)); }

Image divV(const StaggeredField& q) {
  Image u = grad_adjoint(q);
  parallel_rows(u.rows(), u.cols(), [&](int i) {
    for (int j = 0; j < u.cols(); ++j) u.at(i, j) = -u.at(i, j);
  });
  return u;
}

StaggeredField tensor_weight(const StaggeredField& p) {
  check_tensor(p);
  StaggeredField r = p;
  Grid& e2 = r.ch[1];
  parallel_rows(e2.rows, e2.cols, [&](int i) {
    for (int j = 0; j < e2.cols; ++j) e2.at(i, j) *= 2.0;
  });
  return r;
}

StaggeredField divT(const StaggeredField& p) {
  StaggeredField w = sym_grad_adjoint(tensor_weight(p));
  for (Grid& g : w.ch)
    parallel_rows(g.rows, g.cols, [&](int i) {
      for (int j = 0; j < g.cols; ++j) g.at(i, j) = -g.at(i, j);
    });
  return w;
}

Image div2(const StaggeredField& p) { return divV(divT(p)); }

}  // namespace tgv
