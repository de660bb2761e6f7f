#pragma once

#include "tgv/grid.hpp"

namespace tgv {

double mse(const Image& u, const Image& ref);

// 10*log10(peak^2/mse); +inf when mse is 0.
double psnr(const Image& u, const Image& ref, double peak = 1.0);

// Mean local SSIM, 11x11 Gaussian window (sigma 1.5), C1=(0.01 peak)^2,
// C2=(0.03 peak)^2, windows fully inside the image.
double ssim(const Image& u, const Image& ref, double peak = 1.0);

}  // namespace tgv
