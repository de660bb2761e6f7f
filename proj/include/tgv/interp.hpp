#pragma once

#include <string>
#include <vector>

#include "tgv/grid.hpp"

// Interpolation filter banks K (tensor fields -> n_K x 3 coefficients) and
// L (vector fields -> n_L x 2 coefficients). Application of filter l to
// channel c is
//   out[l,c](i,j) = sum_{m,n=-nu..nu} ker[l,c](m,n) * in_c(i-m, j-n)
// with zero padding outside the grid and structural slots read as zero.
// Adjoints are the exact transposes (scatter with flipped lags, outputs
// masked to the staggered valid range).

namespace tgv {

enum class BankTarget { K, L };  // K acts on tensor fields (C=3), L on vector fields (C=2)
enum class BankConstraint { sum_to_one, equal_sums, none };

enum class HandcraftedKind { L3, L4, K1, K4 };

struct FilterBank {
  BankTarget target = BankTarget::L;
  BankConstraint constraint = BankConstraint::sum_to_one;
  int nu = 1;      // support radius, kernels are (2nu+1)^2
  int n = 1;       // number of filters
  double gamma = 1.0;  // shared kernel sum in equal_sums mode
  std::vector<double> coeffs;  // [l][c][(m+nu)*(2nu+1)+(n+nu)]

  int channels() const { return target == BankTarget::K ? 3 : 2; }
  int ksize() const { return 2 * nu + 1; }
  int taps() const { return ksize() * ksize(); }

  double* kernel(int l, int c) { return coeffs.data() + (static_cast<size_t>(l) * channels() + c) * taps(); }
  const double* kernel(int l, int c) const {
    return coeffs.data() + (static_cast<size_t>(l) * channels() + c) * taps();
  }
  double& tap(int l, int c, int m, int n) { return kernel(l, c)[(m + nu) * ksize() + (n + nu)]; }
  double tap(int l, int c, int m, int n) const { return kernel(l, c)[(m + nu) * ksize() + (n + nu)]; }

  double kernel_sum(int l, int c) const {
    const double* k = kernel(l, c);
    double s = 0.0;
    for (int t = 0; t < taps(); ++t) s += k[t];
    return s;
  }
};

FilterBank make_bank(BankTarget target, int n, int nu,
                     BankConstraint constraint = BankConstraint::sum_to_one);

// Delta banks (nu = 0, single unit coefficient): applying them is the
// masked identity, so the discretization reduces to plain TGV.
FilterBank identity_K();
FilterBank identity_L();

// Bilinear interpolation stencils between staggered positions (3x3 support,
// coefficients in {0, 1/4, 1/2, 1}).
FilterBank handcrafted_bank(HandcraftedKind kind);

CoefficientField apply_K(const StaggeredField& p, const FilterBank& bank);
StaggeredField apply_K_adjoint(const CoefficientField& v, const FilterBank& bank, double h);
CoefficientField apply_L(const StaggeredField& w, const FilterBank& bank);
StaggeredField apply_L_adjoint(const CoefficientField& v, const FilterBank& bank, double h);

// Euclidean projection onto the bank's constraint set.
FilterBank project_constraints(const FilterBank& bank);

// 90-degree rotation action on an L-bank filter: channels swap and kernels
// rotate. Closing a bank under this action makes the discretization
// rotation-equivariant (up to fp roundoff).
void rotate_filter_L(const FilterBank& src, int l_src, FilterBank& dst, int l_dst);

// Keeps filters 4k as representatives and regenerates 4k+1..4k+3 as their
// rotations. Requires n divisible by 4.
FilterBank symmetrize_bank(const FilterBank& bank);

bool bank_is_symmetric(const FilterBank& bank);

std::string bank_to_json(const FilterBank& bank);
FilterBank bank_from_json(const std::string& text);
void save_bank(const FilterBank& bank, const std::string& path);
FilterBank load_bank(const std::string& path);

// FNV-1a over kernel bytes and shape metadata; used by run manifests.
std::string bank_hash(const FilterBank& bank);

struct BankPair {
  FilterBank K;
  FilterBank L;
};

}  // namespace tgv
