#include "tgv/image_io.hpp"

#include <png.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <memory>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace tgv {

namespace {

struct FileCloser {
  void operator()(FILE* f) const {
    if (f) std::fclose(f);
  }
};
using FilePtr = std::unique_ptr<FILE, FileCloser>;

}  // namespace

Image load_image(const std::string& path, const LoadOptions& opt) {
  FilePtr fp(std::fopen(path.c_str(), "rb"));
  if (!fp) throw std::runtime_error("cannot open " + path);

  png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (!png) throw std::runtime_error("png_create_read_struct failed");
  png_infop info = png_create_info_struct(png);
  if (!info) {
    png_destroy_read_struct(&png, nullptr, nullptr);
    throw std::runtime_error("png_create_info_struct failed");
  }
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw std::runtime_error("failed to decode " + path);
  }
  png_init_io(png, fp.get());
  png_read_info(png, info);

  const png_uint_32 width = png_get_image_width(png, info);
  const png_uint_32 height = png_get_image_height(png, info);
  const int color = png_get_color_type(png, info);
  int depth = png_get_bit_depth(png, info);

  const bool is_gray = (color == PNG_COLOR_TYPE_GRAY);
  if (!is_gray && !opt.luma_convert) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw std::runtime_error(path + ": not grayscale (pass the luma-convert flag for color input)");
  }
  if (color == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(png);
  if (is_gray && depth < 8) png_set_expand_gray_1_2_4_to_8(png);
  if (png_get_valid(png, info, PNG_INFO_tRNS)) png_set_tRNS_to_alpha(png);
  if (color & PNG_COLOR_MASK_ALPHA) png_set_strip_alpha(png);
  if (!is_gray) png_set_rgb_to_gray_fixed(png, 1, 29900, 58700);  // Rec.601
  png_read_update_info(png, info);
  depth = png_get_bit_depth(png, info);

  const size_t rowbytes = png_get_rowbytes(png, info);
  std::vector<png_byte> buf(rowbytes * height);
  std::vector<png_bytep> rows(height);
  for (png_uint_32 r = 0; r < height; ++r) rows[r] = buf.data() + r * rowbytes;
  png_read_image(png, rows.data());
  png_read_end(png, nullptr);
  png_destroy_read_struct(&png, &info, nullptr);

  // Image uses (i = x/width index, j = y); PNG rows are y. Store transposed so
  // that i indexes the horizontal axis to match the operator convention.
  Image img(static_cast<int>(width), static_cast<int>(height), opt.h);
  const double scale = depth == 16 ? 1.0 / 65535.0 : 1.0 / 255.0;
  for (png_uint_32 y = 0; y < height; ++y)
    for (png_uint_32 x = 0; x < width; ++x) {
      double v;
      if (depth == 16) {
        const png_byte* p = rows[y] + 2 * x;
        v = static_cast<double>((p[0] << 8) | p[1]);
      } else {
        v = static_cast<double>(rows[y][x]);
      }
      img.at(static_cast<int>(x), static_cast<int>(y)) = v * scale;
    }
  return img;
}

void save_image(const Image& img, const std::string& path, int bit_depth) {
  if (bit_depth != 8 && bit_depth != 16) throw std::invalid_argument("save_image: depth must be 8 or 16");
  FilePtr fp(std::fopen(path.c_str(), "wb"));
  if (!fp) throw std::runtime_error("cannot write " + path);

  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (!png) throw std::runtime_error("png_create_write_struct failed");
  png_infop info = png_create_info_struct(png);
  if (!info) {
    png_destroy_write_struct(&png, nullptr);
    throw std::runtime_error("png_create_info_struct failed");
  }
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    throw std::runtime_error("failed to encode " + path);
  }
  png_init_io(png, fp.get());

  const int width = img.rows(), height = img.cols();
  png_set_IHDR(png, info, static_cast<png_uint_32>(width), static_cast<png_uint_32>(height),
               bit_depth, PNG_COLOR_TYPE_GRAY, PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
               PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);

  const double maxv = bit_depth == 16 ? 65535.0 : 255.0;
  const size_t rowbytes = static_cast<size_t>(width) * (bit_depth / 8);
  std::vector<png_byte> row(rowbytes);
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      double v = img.at(x, y);
      v = v < 0.0 ? 0.0 : (v > 1.0 ? 1.0 : v);
      const auto q = static_cast<unsigned>(std::lround(v * maxv));
      if (bit_depth == 16) {
        row[static_cast<size_t>(2 * x)] = static_cast<png_byte>(q >> 8);
        row[static_cast<size_t>(2 * x + 1)] = static_cast<png_byte>(q & 0xff);
      } else {
        row[static_cast<size_t>(x)] = static_cast<png_byte>(q);
      }
    }
    png_write_row(png, row.data());
  }
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
}

void save_manifest(const DatasetManifest& m, const std::string& path) {
  nlohmann::json j;
  j["pseudo_gt_iters"] = m.pseudo_gt_iters;
  j["note"] = m.note;
  nlohmann::json list = nlohmann::json::array();
  for (const DatasetEntry& e : m.entries) {
    list.push_back({{"clean", e.clean},
                    {"corrupted", e.corrupted},
                    {"target", e.target},
                    {"sigma", e.sigma},
                    {"seed", e.seed}});
  }
  j["entries"] = list;
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write " + path);
  f << j.dump(2) << "\n";
}

DatasetManifest load_manifest(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot read " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  nlohmann::json j = nlohmann::json::parse(ss.str());
  DatasetManifest m;
  m.pseudo_gt_iters = j.value("pseudo_gt_iters", 0L);
  m.note = j.value("note", std::string());
  for (const auto& e : j.at("entries")) {
    DatasetEntry d;
    d.clean = e.at("clean").get<std::string>();
    d.corrupted = e.at("corrupted").get<std::string>();
    d.target = e.value("target", std::string());
    d.sigma = e.at("sigma").get<double>();
    d.seed = e.at("seed").get<uint64_t>();
    m.entries.push_back(std::move(d));
  }
  return m;
}

}  // namespace tgv
