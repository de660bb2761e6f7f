#include "tgv/data.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "tgv/rng.hpp"

namespace tgv {

namespace {

struct AffinePatch {
  double a, bx, by;  // value = a + bx*(x-cx) + by*(y-cy), domain units
  double cx, cy;
  double eval(double x, double y) const { return a + bx * (x - cx) + by * (y - cy); }
};

AffinePatch random_patch(Rng& rng, double cx, double cy, double max_slope) {
  AffinePatch p;
  p.a = rng.uniform(0.1, 0.9);
  p.bx = rng.uniform(-max_slope, max_slope);
  p.by = rng.uniform(-max_slope, max_slope);
  p.cx = cx;
  p.cy = cy;
  return p;
}

struct Shape {
  int kind;  // 0 triangle, 1 rectangle, 2 circle
  double x0, y0, x1, y1;          // rect bounds / triangle bbox
  double tx[3], ty[3];            // triangle vertices
  double cx, cy, r;               // circle
  AffinePatch fill;

  bool contains(double x, double y) const {
    switch (kind) {
      case 0: {
        auto side = [&](int i, int j) {
          return (tx[j] - tx[i]) * (y - ty[i]) - (ty[j] - ty[i]) * (x - tx[i]);
        };
        const double d0 = side(0, 1), d1 = side(1, 2), d2 = side(2, 0);
        const bool neg = (d0 < 0) || (d1 < 0) || (d2 < 0);
        const bool pos = (d0 > 0) || (d1 > 0) || (d2 > 0);
        return !(neg && pos);
      }
      case 1: return x >= x0 && x <= x1 && y >= y0 && y <= y1;
      default: return (x - cx) * (x - cx) + (y - cy) * (y - cy) <= r * r;
    }
  }
};

}  // namespace

std::vector<Image> gen_synthetic(uint64_t seed, const SyntheticOptions& opt) {
  if (opt.rows < 16 || opt.cols < 16) throw std::invalid_argument("gen_synthetic: size must be >= 16");
  std::vector<Image> out;
  out.reserve(static_cast<size_t>(opt.count));
  Rng rng(seed);
  const double sx = 1.0 / opt.rows, sy = 1.0 / opt.cols;  // domain units per px
  for (int img = 0; img < opt.count; ++img) {
    AffinePatch bg = random_patch(rng, 0.5, 0.5, opt.max_slope * 0.5);
    const int nshapes = rng.uniform_int(opt.min_shapes, opt.max_shapes);
    std::vector<Shape> shapes(static_cast<size_t>(nshapes));
    for (Shape& s : shapes) {
      s.kind = rng.uniform_int(0, 2);
      const double ex = rng.uniform(opt.min_extent, opt.max_extent) * sx;
      const double ey = rng.uniform(opt.min_extent, opt.max_extent) * sy;
      const double cx = rng.uniform(0.05, 0.95), cy = rng.uniform(0.05, 0.95);
      s.cx = cx;
      s.cy = cy;
      s.r = 0.5 * std::min(ex, ey);
      s.x0 = cx - 0.5 * ex;
      s.x1 = cx + 0.5 * ex;
      s.y0 = cy - 0.5 * ey;
      s.y1 = cy + 0.5 * ey;
      for (int k = 0; k < 3; ++k) {
        s.tx[k] = cx + rng.uniform(-0.5, 0.5) * ex;
        s.ty[k] = cy + rng.uniform(-0.5, 0.5) * ey;
      }
      s.fill = random_patch(rng, cx, cy, opt.max_slope);
    }
    Image u(opt.rows, opt.cols, 1.0);
    for (int i = 0; i < opt.rows; ++i)
      for (int j = 0; j < opt.cols; ++j) {
        const double x = (i + 0.5) * sx, y = (j + 0.5) * sy;
        double v = bg.eval(x, y);
        for (const Shape& s : shapes)
          if (s.contains(x, y)) v = s.fill.eval(x, y);
        u.at(i, j) = std::clamp(v, 0.0, 1.0);
      }
    out.push_back(std::move(u));
  }
  return out;
}

Image add_gaussian_noise(const Image& img, double sigma, uint64_t seed) {
  if (sigma < 0.0) throw std::invalid_argument("add_gaussian_noise: sigma must be >= 0");
  Image out = img;
  if (sigma == 0.0) return out;
  Rng rng(seed);
  const double s = sigma / 255.0;
  for (int i = 0; i < out.rows(); ++i)
    for (int j = 0; j < out.cols(); ++j) out.at(i, j) += rng.normal(0.0, s);
  return out;
}

Image upsample8(const Image& img) {
  Image out(img.rows() * 8, img.cols() * 8, img.h / 8.0);
  parallel_rows(out.rows(), out.cols(), [&](int i) {
    for (int j = 0; j < out.cols(); ++j) out.at(i, j) = img.at(i / 8, j / 8);
  });
  return out;
}

Image downsample8(const Image& img) {
  if (img.rows() % 8 != 0 || img.cols() % 8 != 0)
    throw std::invalid_argument("downsample8: size must be divisible by 8");
  Image out(img.rows() / 8, img.cols() / 8, img.h * 8.0);
  // pairwise tree sum: exact on replicated blocks (doubling never rounds)
  parallel_rows(out.rows(), out.cols(), [&](int i) {
    for (int j = 0; j < out.cols(); ++j) {
      double rows[8];
      for (int di = 0; di < 8; ++di) {
        const int ii = i * 8 + di, jj = j * 8;
        double a = img.at(ii, jj) + img.at(ii, jj + 1);
        double b = img.at(ii, jj + 2) + img.at(ii, jj + 3);
        double c = img.at(ii, jj + 4) + img.at(ii, jj + 5);
        double d = img.at(ii, jj + 6) + img.at(ii, jj + 7);
        rows[di] = (a + b) + (c + d);
      }
      const double s = ((rows[0] + rows[1]) + (rows[2] + rows[3])) +
                       ((rows[4] + rows[5]) + (rows[6] + rows[7]));
      out.at(i, j) = s / 64.0;
    }
  });
  return out;
}

Image pseudo_ground_truth(const Image& img, Alpha alpha, const BankPair& banks,
                          const PseudoGtOptions& opt) {
  Image fine = upsample8(img);
  SaddleState s = pd_solve(fine, banks, alpha, opt.iters);
  return downsample8(s.u);
}

std::vector<Image> gen_textured(uint64_t seed, int count, int rows, int cols) {
  SyntheticOptions opt;
  opt.count = count;
  opt.rows = rows;
  opt.cols = cols;
  std::vector<Image> base = gen_synthetic(seed ^ 0x7e57ab1eull, opt);
  Rng rng(seed);
  for (Image& u : base) {
    // a couple of oriented sine textures in random bands
    const int ntex = rng.uniform_int(2, 4);
    for (int k = 0; k < ntex; ++k) {
      const double fx = rng.uniform(2.0, 12.0), fy = rng.uniform(2.0, 12.0);
      const double amp = rng.uniform(0.02, 0.08);
      const double phase = rng.uniform(0.0, 2.0 * M_PI);
      const double x0 = rng.uniform(0.0, 0.7), y0 = rng.uniform(0.0, 0.7);
      const double x1 = x0 + rng.uniform(0.2, 0.3), y1 = y0 + rng.uniform(0.2, 0.3);
      for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) {
          const double x = (i + 0.5) / rows, y = (j + 0.5) / cols;
          if (x < x0 || x > x1 || y < y0 || y > y1) continue;
          u.at(i, j) += amp * std::sin(2.0 * M_PI * (fx * x + fy * y) + phase);
        }
    }
    for (double& v : u.g.v) v = std::clamp(v, 0.0, 1.0);
  }
  return base;
}

}  // namespace tgv
