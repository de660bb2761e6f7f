#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tgv/solver.hpp"

// Synthetic piecewise-affine dataset generation, Gaussian corruption,
// and the upsample -> solve -> downsample pseudo-ground-truth pipeline.

namespace tgv {

struct SyntheticOptions {
  int count = 32;
  int rows = 128;
  int cols = 128;
  int min_shapes = 2;
  int max_shapes = 6;
  double min_extent = 8.0;   // px
  double max_extent = 60.0;  // px
  double max_slope = 2.0;    // per unit domain length
};

// Background affine ramp plus random triangles/rectangles/circles, each
// filled with its own affine intensity; values clipped to [0,1].
std::vector<Image> gen_synthetic(uint64_t seed, const SyntheticOptions& opt = {});

// sigma is on the 0-255 scale and divided by 255 for [0,1] images.
Image add_gaussian_noise(const Image& img, double sigma, uint64_t seed);

Image upsample8(const Image& img);   // 8x8 replication, h/8
Image downsample8(const Image& img); // 8x8 block mean, h*8

struct PseudoGtOptions {
  long iters = 20000;
};

// upsample8 -> pd_solve at (alpha, handcrafted-by-default banks) -> downsample8
Image pseudo_ground_truth(const Image& img, Alpha alpha, const BankPair& banks,
                          const PseudoGtOptions& opt = {});

// "Natural-like" surrogate scenes (shapes + smooth ramps + oriented sine
// textures); stands in when no user-supplied natural images are available.
std::vector<Image> gen_textured(uint64_t seed, int count, int rows, int cols);

}  // namespace tgv
