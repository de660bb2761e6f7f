#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tgv/grid.hpp"

// Grayscale PNG I/O (8- and 16-bit) and the dataset manifest format.
// Intensities map linearly between [0, 2^depth - 1] and [0, 1].

namespace tgv {

struct LoadOptions {
  bool luma_convert = false;  // accept RGB input and convert with Rec.601 weights
  double h = 1.0;
};

Image load_image(const std::string& path, const LoadOptions& opt = {});
void save_image(const Image& img, const std::string& path, int bit_depth = 16);

struct DatasetEntry {
  std::string clean;
  std::string corrupted;
  std::string target;  // optional pseudo ground truth path ("" if none)
  double sigma = 0.0;
  uint64_t seed = 0;
};

struct DatasetManifest {
  std::vector<DatasetEntry> entries;
  long pseudo_gt_iters = 0;
  std::string note;
};

void save_manifest(const DatasetManifest& m, const std::string& path);
DatasetManifest load_manifest(const std::string& path);

}  // namespace tgv
