#pragma once

#include <string>
#include <vector>

#include "tgv/solver.hpp"

// Grid-refinement study of the discrete regularizer value and rotation
// diagnostics. The refinement ladder evaluates a fixed closed-form field on
// finer and finer grids of (0,1)^2 and reports successive differences; the
// boundary handling is Neumann (not the periodic setting of the consistency
// theory), which the report header states.

namespace tgv {

enum class TestFieldKind { affine, affine_plus_sine, smooth_bump };

// Samples the closed-form field at pixel centers ((i+1/2)h, (j+1/2)h) on an
// N x N grid with h = 1/N. Constants:
//   affine:            0.3 + 0.4 x - 0.2 y
//   affine_plus_sine:  affine + 0.1 sin(2 pi x) sin(2 pi y)
//   smooth_bump:       0.5 + 0.35 exp(-((x-.5)^2+(y-.5)^2)/(2 * 0.12^2))
Image sample_test_field(TestFieldKind kind, int N);

struct LadderLevel {
  int N = 0;
  double h = 0.0;
  double value = 0.0;
  double residual = 0.0;
  bool converged = false;
};

struct LadderReport {
  std::vector<LadderLevel> levels;
  std::vector<double> diffs;  // |value_k - value_{k+1}|
  std::string header;
};

LadderReport refinement_ladder(TestFieldKind kind, Alpha alpha, const BankPair& banks,
                               const std::vector<int>& Ns = {16, 32, 64, 128},
                               long iters = 20000);

void write_ladder_csv(const LadderReport& r, const std::string& path);
std::string ladder_summary(const LadderReport& r);

// Exact 90-degree rotation of a square image about the grid center.
Image rotate_image_90(const Image& u);

struct RotationReport {
  double rms_90 = 0.0;        // denoise(rot f) vs rot(denoise f), interior RMS
  double rms_45 = 0.0;        // via bilinear resampling; resampling error included
  int excluded_band = 0;
  std::string caveat;
};

RotationReport rotation_diagnostic(const Image& img, Alpha alpha, const BankPair& banks,
                                   long iters);

}  // namespace tgv
