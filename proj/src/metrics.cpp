#include "tgv/metrics.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace tgv {

namespace {

void check_shapes(const Image& u, const Image& ref) {
  if (u.rows() != ref.rows() || u.cols() != ref.cols())
    throw std::invalid_argument("metrics: shape mismatch");
}

}  // namespace

double mse(const Image& u, const Image& ref) {
  check_shapes(u, ref);
  const double s = deterministic_sum(u.rows(), u.cols(), [&](int i) {
    double acc = 0.0;
    for (int j = 0; j < u.cols(); ++j) {
      const double d = u.at(i, j) - ref.at(i, j);
      acc += d * d;
    }
    return acc;
  });
  return s / (static_cast<double>(u.rows()) * u.cols());
}

double psnr(const Image& u, const Image& ref, double peak) {
  const double m = mse(u, ref);
  if (m == 0.0) return std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(peak * peak / m);
}

double ssim(const Image& u, const Image& ref, double peak) {
  check_shapes(u, ref);
  const int M = u.rows(), N = u.cols();
  int win = 11;
  if (win > M) win = M - (M % 2 == 0 ? 1 : 0);
  if (win > N) win = N - (N % 2 == 0 ? 1 : 0);
  if (win < 3) throw std::invalid_argument("ssim: image too small");
  const int half = win / 2;

  std::vector<double> w(static_cast<size_t>(win) * win);
  {
    const double s2 = 2.0 * 1.5 * 1.5;
    double total = 0.0;
    for (int a = 0; a < win; ++a)
      for (int b = 0; b < win; ++b) {
        const double dx = a - half, dy = b - half;
        w[static_cast<size_t>(a) * win + b] = std::exp(-(dx * dx + dy * dy) / s2);
        total += w[static_cast<size_t>(a) * win + b];
      }
    for (double& v : w) v /= total;
  }

  const double c1 = (0.01 * peak) * (0.01 * peak);
  const double c2 = (0.03 * peak) * (0.03 * peak);
  const int rows_out = M - win + 1, cols_out = N - win + 1;
  const double total = deterministic_sum(rows_out, cols_out, [&](int i) {
    double acc = 0.0;
    for (int j = 0; j < cols_out; ++j) {
      double mx = 0, my = 0;
      for (int a = 0; a < win; ++a)
        for (int b = 0; b < win; ++b) {
          const double ww = w[static_cast<size_t>(a) * win + b];
          mx += ww * u.at(i + a, j + b);
          my += ww * ref.at(i + a, j + b);
        }
      double vx = 0, vy = 0, cxy = 0;
      for (int a = 0; a < win; ++a)
        for (int b = 0; b < win; ++b) {
          const double ww = w[static_cast<size_t>(a) * win + b];
          const double du = u.at(i + a, j + b) - mx;
          const double dr = ref.at(i + a, j + b) - my;
          vx += ww * du * du;
          vy += ww * dr * dr;
          cxy += ww * du * dr;
        }
      acc += ((2 * mx * my + c1) * (2 * cxy + c2)) /
             ((mx * mx + my * my + c1) * (vx + vy + c2));
    }
    return acc;
  });
  return total / (static_cast<double>(rows_out) * cols_out);
}

}  // namespace tgv
