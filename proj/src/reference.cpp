#include "tgv/reference.hpp"

#include <cmath>

namespace tgv::ref {

double znorm(const CoefficientField& x) {
  double total = 0.0;
  for (int i = 0; i < x.rows(); ++i)
    for (int j = 0; j < x.cols(); ++j)
      for (int l = 0; l < x.n; ++l) {
        double g2 = 0.0;
        for (int c = 0; c < x.C; ++c) g2 += x.at(l, c).at(i, j) * x.at(l, c).at(i, j);
        total += std::sqrt(g2);
      }
  return total;
}

double znorm_dual(const CoefficientField& x) {
  double best = 0.0;
  for (int i = 0; i < x.rows(); ++i)
    for (int j = 0; j < x.cols(); ++j)
      for (int l = 0; l < x.n; ++l) {
        double g2 = 0.0;
        for (int c = 0; c < x.C; ++c) g2 += x.at(l, c).at(i, j) * x.at(l, c).at(i, j);
        best = std::max(best, g2);
      }
  return std::sqrt(best);
}

double dot(const CoefficientField& a, const CoefficientField& b) {
  double s = 0.0;
  for (size_t k = 0; k < a.ch.size(); ++k)
    for (int i = 0; i < a.rows(); ++i)
      for (int j = 0; j < a.cols(); ++j) s += a.ch[k].at(i, j) * b.ch[k].at(i, j);
  return s;
}

StaggeredField grad(const Image& u) {
  const int M = u.rows(), N = u.cols();
  StaggeredField w = StaggeredField::vector(M, N, u.h);
  for (int i = 0; i < M; ++i)
    for (int j = 0; j < N; ++j) {
      w.ch[0].at(i, j) = (i <= M - 2) ? (u.at(i + 1, j) - u.at(i, j)) / u.h : 0.0;
      w.ch[1].at(i, j) = (j <= N - 2) ? (u.at(i, j + 1) - u.at(i, j)) / u.h : 0.0;
    }
  return w;
}

StaggeredField sym_grad(const StaggeredField& w) {
  const int M = w.rows(), N = w.cols();
  const double h = w.h;
  StaggeredField p = StaggeredField::tensor(M, N, h);
  for (int i = 0; i < M; ++i)
    for (int j = 0; j < N; ++j) {
      p.ch[0].at(i, j) =
          (i >= 1 && i <= M - 2) ? (w.ch[0].at(i, j) - w.ch[0].at(i - 1, j)) * (1.0 / h) : 0.0;
      p.ch[1].at(i, j) = (i <= M - 2 && j <= N - 2)
                             ? ((w.ch[0].at(i, j + 1) - w.ch[0].at(i, j)) +
                                (w.ch[1].at(i + 1, j) - w.ch[1].at(i, j))) *
                                   (0.5 / h)
                             : 0.0;
      p.ch[2].at(i, j) =
          (j >= 1 && j <= N - 2) ? (w.ch[1].at(i, j) - w.ch[1].at(i, j - 1)) * (1.0 / h) : 0.0;
    }
  return p;
}

CoefficientField apply_bank(const StaggeredField& f, const FilterBank& bank) {
  const int M = f.rows(), N = f.cols(), nu = bank.nu;
  CoefficientField out(bank.n, bank.channels(), M, N);
  for (int l = 0; l < bank.n; ++l)
    for (int c = 0; c < bank.channels(); ++c)
      for (int i = 0; i < M; ++i)
        for (int j = 0; j < N; ++j) {
          double s = 0.0;
          for (int m = -nu; m <= nu; ++m)
            for (int n = -nu; n <= nu; ++n) {
              const int ii = i - m, jj = j - n;
              if (ii < 0 || jj < 0 || ii >= M || jj >= N) continue;
              if (!slot_valid(f.kind, c, ii, jj, M, N)) continue;
              s += bank.tap(l, c, m, n) * f.ch[static_cast<size_t>(c)].at(ii, jj);
            }
          out.at(l, c).at(i, j) = s;
        }
  return out;
}

CoefficientField prox_group_z(const CoefficientField& x, double t) {
  CoefficientField out = x;
  if (t == 0.0) return out;
  for (int l = 0; l < x.n; ++l)
    for (int i = 0; i < x.rows(); ++i)
      for (int j = 0; j < x.cols(); ++j) {
        double g2 = 0.0;
        for (int c = 0; c < x.C; ++c) g2 += x.at(l, c).at(i, j) * x.at(l, c).at(i, j);
        const double norm = std::sqrt(g2);
        const double scale = norm > t ? 1.0 - t / norm : 0.0;
        for (int c = 0; c < x.C; ++c) out.at(l, c).at(i, j) = scale * x.at(l, c).at(i, j);
      }
  return out;
}

}  // namespace tgv::ref
