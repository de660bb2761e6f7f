#include "tgv/prox.hpp"

#include <cmath>
#include <stdexcept>

namespace tgv {

CoefficientField prox_group_z(const CoefficientField& x, double t) {
  if (t < 0.0) throw std::invalid_argument("prox_group_z: t must be >= 0");
  CoefficientField out = x;
  if (t == 0.0) return out;
  const int rows = x.rows(), cols = x.cols();
  for (int l = 0; l < x.n; ++l) {
    parallel_rows(rows, cols, [&](int i) {
      for (int j = 0; j < cols; ++j) {
        double g2 = 0.0;
        for (int c = 0; c < x.C; ++c) {
          double v = x.at(l, c).at(i, j);
          g2 += v * v;
        }
        const double norm = std::sqrt(g2);
        const double scale = norm > t ? 1.0 - t / norm : 0.0;
        for (int c = 0; c < x.C; ++c) out.at(l, c).at(i, j) = scale * x.at(l, c).at(i, j);
      }
    });
  }
  return out;
}

CoefficientField prox_group_z_jvp(const CoefficientField& x, double t, const CoefficientField& dir) {
  if (t < 0.0) throw std::invalid_argument("prox_group_z_jvp: t must be >= 0");
  if (x.n != dir.n || x.C != dir.C) throw std::invalid_argument("prox_group_z_jvp: shape mismatch");
  CoefficientField out = dir;
  if (t == 0.0) return out;
  const int rows = x.rows(), cols = x.cols();
  for (int l = 0; l < x.n; ++l) {
    parallel_rows(rows, cols, [&](int i) {
      for (int j = 0; j < cols; ++j) {
        double g2 = 0.0;
        double gd = 0.0;
        for (int c = 0; c < x.C; ++c) {
          const double g = x.at(l, c).at(i, j);
          g2 += g * g;
          gd += g * dir.at(l, c).at(i, j);
        }
        const double norm = std::sqrt(g2);
        if (norm > t) {
          // (1 - t/|g|) I + (t/|g|^3) g g^T
          const double a = 1.0 - t / norm;
          const double b = t / (norm * norm * norm) * gd;
          for (int c = 0; c < x.C; ++c)
            out.at(l, c).at(i, j) = a * dir.at(l, c).at(i, j) + b * x.at(l, c).at(i, j);
        } else {
          for (int c = 0; c < x.C; ++c) out.at(l, c).at(i, j) = 0.0;
        }
      }
    });
  }
  return out;
}

Image prox_quadratic(const Image& x, const Image& f, double t) {
  if (t < 0.0) throw std::invalid_argument("prox_quadratic: t must be >= 0");
  if (x.rows() != f.rows() || x.cols() != f.cols())
    throw std::invalid_argument("prox_quadratic: shape mismatch");
  Image out = x;
  const double inv = 1.0 / (1.0 + t);
  parallel_rows(x.rows(), x.cols(), [&](int i) {
    for (int j = 0; j < x.cols(); ++j) out.at(i, j) = (x.at(i, j) + t * f.at(i, j)) * inv;
  });
  return out;
}

Image prox_quadratic_jvp(const Image& dir, double t) {
  if (t < 0.0) throw std::invalid_argument("prox_quadratic_jvp: t must be >= 0");
  Image out = dir;
  const double inv = 1.0 / (1.0 + t);
  parallel_rows(dir.rows(), dir.cols(), [&](int i) {
    for (int j = 0; j < dir.cols(); ++j) out.at(i, j) = dir.at(i, j) * inv;
  });
  return out;
}

}  // namespace tgv
