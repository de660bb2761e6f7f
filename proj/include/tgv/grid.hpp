#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "tgv/parallel.hpp"

// Grid-aligned value types shared by every module: scalar images, staggered
// vector/tensor fields, and per-filter coefficient fields.
//
// Storage convention: every channel is a dense rows x cols array. Staggered
// placement is carried as an Offset tag plus a per-channel valid range; slots
// outside the valid range are structural zeros (they correspond to positions
// the staggered grid does not have). Array index [i][j] of a channel with
// offset (dx,dy) sits at physical position ((i+dx)*h, (j+dy)*h).

namespace tgv {

struct Grid {
  int rows = 0;
  int cols = 0;
  std::vector<double> v;

  Grid() = default;
  Grid(int r, int c) : rows(r), cols(c), v(static_cast<size_t>(r) * c, 0.0) {}

  double& at(int i, int j) { return v[static_cast<size_t>(i) * cols + j]; }
  double at(int i, int j) const { return v[static_cast<size_t>(i) * cols + j]; }
  size_t size() const { return v.size(); }

  bool same_shape(const Grid& o) const { return rows == o.rows && cols == o.cols; }
};

struct Image {
  Grid g;
  double h = 1.0;

  Image() = default;
  Image(int rows, int cols, double pixel = 1.0) : g(rows, cols), h(pixel) {
    if (rows < 2 || cols < 2) throw std::invalid_argument("Image: grid must be at least 2x2");
    if (!(pixel > 0.0)) throw std::invalid_argument("Image: pixel size must be positive");
  }

  int rows() const { return g.rows; }
  int cols() const { return g.cols; }
  double& at(int i, int j) { return g.at(i, j); }
  double at(int i, int j) const { return g.at(i, j); }
};

enum class Offset { center, edge_x, edge_y, corner };

inline double offset_dx(Offset o) { return (o == Offset::edge_x || o == Offset::corner) ? 0.5 : 0.0; }
inline double offset_dy(Offset o) { return (o == Offset::edge_y || o == Offset::corner) ? 0.5 : 0.0; }

enum class FieldKind { vector2, tensor3 };

// Valid index range of channel c: a slot is structural (forced zero) when
// the staggered position it would represent does not exist on the grid.
//   vector ch0 @ (1/2,0): i <= rows-2      vector ch1 @ (0,1/2): j <= cols-2
//   tensor ch0 @ (0,0):   1 <= i <= rows-2 (second differences in x)
//   tensor ch1 @ (1/2,1/2): i <= rows-2, j <= cols-2
//   tensor ch2 @ (0,0):   1 <= j <= cols-2
inline bool slot_valid(FieldKind kind, int c, int i, int j, int rows, int cols) {
  if (kind == FieldKind::vector2) {
    return c == 0 ? i <= rows - 2 : j <= cols - 2;
  }
  switch (c) {
    case 0: return i >= 1 && i <= rows - 2;
    case 1: return i <= rows - 2 && j <= cols - 2;
    default: return j >= 1 && j <= cols - 2;
  }
}

// The valid slots of every channel form a rectangle [r0,r1] x [c0,c1].
struct ValidRect {
  int r0 = 0, r1 = -1, c0 = 0, c1 = -1;
};

inline ValidRect valid_rect(FieldKind kind, int c, int rows, int cols) {
  if (kind == FieldKind::vector2)
    return c == 0 ? ValidRect{0, rows - 2, 0, cols - 1} : ValidRect{0, rows - 1, 0, cols - 2};
  switch (c) {
    case 0: return {1, rows - 2, 0, cols - 1};
    case 1: return {0, rows - 2, 0, cols - 2};
    default: return {0, rows - 1, 1, cols - 2};
  }
}

struct StaggeredField {
  FieldKind kind = FieldKind::vector2;
  double h = 1.0;
  std::vector<Grid> ch;
  std::vector<Offset> off;

  static StaggeredField vector(int rows, int cols, double h) {
    StaggeredField f;
    f.kind = FieldKind::vector2;
    f.h = h;
    f.ch.assign(2, Grid(rows, cols));
    f.off = {Offset::edge_x, Offset::edge_y};
    return f;
  }

  static StaggeredField tensor(int rows, int cols, double h) {
    StaggeredField f;
    f.kind = FieldKind::tensor3;
    f.h = h;
    f.ch.assign(3, Grid(rows, cols));
    f.off = {Offset::center, Offset::corner, Offset::center};
    return f;
  }

  int channels() const { return static_cast<int>(ch.size()); }
  int rows() const { return ch.empty() ? 0 : ch[0].rows; }
  int cols() const { return ch.empty() ? 0 : ch[0].cols; }

  // Zero every structural slot.
  void apply_mask() {
    for (int c = 0; c < channels(); ++c) {
      Grid& g = ch[static_cast<size_t>(c)];
      parallel_rows(g.rows, g.cols, [&](int i) {
        for (int j = 0; j < g.cols; ++j)
          if (!slot_valid(kind, c, i, j, g.rows, g.cols)) g.at(i, j) = 0.0;
      });
    }
  }
};

// n filters x C channels of rows x cols coefficient arrays. Channel (l,c)
// is stored at index l*C + c.
struct CoefficientField {
  int n = 0;
  int C = 0;
  std::vector<Grid> ch;

  CoefficientField() = default;
  CoefficientField(int n_filters, int channels, int rows, int cols)
      : n(n_filters), C(channels), ch(static_cast<size_t>(n_filters) * channels, Grid(rows, cols)) {
    if (n_filters < 1 || channels < 1) throw std::invalid_argument("CoefficientField: n, C must be >= 1");
  }

  Grid& at(int l, int c) { return ch[static_cast<size_t>(l) * C + c]; }
  const Grid& at(int l, int c) const { return ch[static_cast<size_t>(l) * C + c]; }
  int rows() const { return ch.empty() ? 0 : ch[0].rows; }
  int cols() const { return ch.empty() ? 0 : ch[0].cols; }
};

// ---- inner products and norms ------------------------------------------

inline double dot(const Grid& a, const Grid& b) {
  return deterministic_sum(a.rows, a.cols, [&](int i) {
    double s = 0.0;
    for (int j = 0; j < a.cols; ++j) s += a.at(i, j) * b.at(i, j);
    return s;
  });
}

inline double dot(const Image& a, const Image& b) { return dot(a.g, b.g); }

inline double dot(const StaggeredField& a, const StaggeredField& b) {
  double s = 0.0;
  for (int c = 0; c < a.channels(); ++c) s += dot(a.ch[c], b.ch[c]);
  return s;
}

// Frobenius pairing of symmetric tensors: the off-diagonal channel counts twice.
inline double dot_weighted(const StaggeredField& a, const StaggeredField& b) {
  return dot(a.ch[0], b.ch[0]) + 2.0 * dot(a.ch[1], b.ch[1]) + dot(a.ch[2], b.ch[2]);
}

inline double dot(const CoefficientField& a, const CoefficientField& b) {
  double s = 0.0;
  for (size_t k = 0; k < a.ch.size(); ++k) s += dot(a.ch[k], b.ch[k]);
  return s;
}

inline double norm2(const Grid& a) { return std::sqrt(dot(a, a)); }

// ||x||_{1,1,2}: sum over pixels and filters of the channel 2-norm.
inline double znorm(const CoefficientField& x) {
  const int rows = x.rows(), cols = x.cols();
  double total = 0.0;
  for (int l = 0; l < x.n; ++l) {
    total += deterministic_sum(rows, cols, [&](int i) {
      double s = 0.0;
      for (int j = 0; j < cols; ++j) {
        double g2 = 0.0;
        for (int c = 0; c < x.C; ++c) {
          double v = x.at(l, c).at(i, j);
          g2 += v * v;
        }
        s += std::sqrt(g2);
      }
      return s;
    });
  }
  return total;
}

// Dual norm: max over (pixel, filter) of the channel 2-norm.
inline double znorm_dual(const CoefficientField& x) {
  const int rows = x.rows(), cols = x.cols();
  double best = 0.0;
  for (int l = 0; l < x.n; ++l) {
    for (int i = 0; i < rows; ++i) {
      for (int j = 0; j < cols; ++j) {
        double g2 = 0.0;
        for (int c = 0; c < x.C; ++c) {
          double v = x.at(l, c).at(i, j);
          g2 += v * v;
        }
        if (g2 > best) best = g2;
      }
    }
  }
  return std::sqrt(best);
}

inline bool all_finite(const Grid& g) {
  for (double v : g.v)
    if (!std::isfinite(v)) return false;
  return true;
}

inline bool all_finite(const Image& u) { return all_finite(u.g); }

inline bool all_finite(const StaggeredField& f) {
  for (const Grid& g : f.ch)
    if (!all_finite(g)) return false;
  return true;
}

inline bool all_finite(const CoefficientField& f) {
  for (const Grid& g : f.ch)
    if (!all_finite(g)) return false;
  return true;
}

}  // namespace tgv
