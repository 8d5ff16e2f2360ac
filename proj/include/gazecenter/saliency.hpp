#ifndef GAZECENTER_SALIENCY_HPP
#define GAZECENTER_SALIENCY_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <string>
#include <vector>

#include <png.h>

#include "gazecenter/errors.hpp"
#include "gazecenter/grid.hpp"
#include "gazecenter/map_io.hpp"

namespace gazecenter {

/// 8-bit RGB image, row-major interleaved.
struct ImageRGB {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> data;  // 3 bytes per pixel

  std::uint8_t r(int col, int row) const { return data[3 * (static_cast<std::size_t>(row) * width + col)]; }
  std::uint8_t g(int col, int row) const { return data[3 * (static_cast<std::size_t>(row) * width + col) + 1]; }
  std::uint8_t b(int col, int row) const { return data[3 * (static_cast<std::size_t>(row) * width + col) + 2]; }
};

inline ImageRGB read_ppm(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IO_ERROR, "cannot open: " + path);
  std::string magic;
  in >> magic;
  if (magic != "P6") throw Error(ErrorCode::MAGIC_MISMATCH, "not a P6 PPM: " + path);
  int w = 0, h = 0, maxval = 0;
  in >> w >> h >> maxval;
  if (!in || w <= 0 || h <= 0 || maxval != 255)
    throw Error(ErrorCode::PARSE_ERROR, "bad PPM header (expect maxval 255): " + path);
  in.get();
  ImageRGB img;
  img.width = w;
  img.height = h;
  img.data.resize(static_cast<std::size_t>(w) * h * 3);
  in.read(reinterpret_cast<char*>(img.data.data()),
          static_cast<std::streamsize>(img.data.size()));
  if (!in) throw Error(ErrorCode::PARSE_ERROR, "truncated PPM: " + path);
  return img;
}

inline ImageRGB read_png(const std::string& path) {
  FILE* fp = std::fopen(path.c_str(), "rb");
  if (!fp) throw Error(ErrorCode::IO_ERROR, "cannot open: " + path);
  png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  png_infop info = png ? png_create_info_struct(png) : nullptr;
  if (!png || !info) {
    if (png) png_destroy_read_struct(&png, &info, nullptr);
    std::fclose(fp);
    throw Error(ErrorCode::IO_ERROR, "libpng init failed");
  }
  ImageRGB img;
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_read_struct(&png, &info, nullptr);
    std::fclose(fp);
    throw Error(ErrorCode::PARSE_ERROR, "invalid PNG: " + path);
  }
  png_init_io(png, fp);
  png_read_info(png, info);
  // normalize any input layout to 8-bit RGB
  png_set_expand(png);
  png_set_strip_16(png);
  png_set_strip_alpha(png);
  png_set_gray_to_rgb(png);
  png_read_update_info(png, info);
  img.width = static_cast<int>(png_get_image_width(png, info));
  img.height = static_cast<int>(png_get_image_height(png, info));
  img.data.resize(static_cast<std::size_t>(img.width) * img.height * 3);
  std::vector<png_bytep> rows(img.height);
  for (int r = 0; r < img.height; ++r)
    rows[r] = img.data.data() + static_cast<std::size_t>(r) * img.width * 3;
  png_read_image(png, rows.data());
  png_read_end(png, nullptr);
  png_destroy_read_struct(&png, &info, nullptr);
  std::fclose(fp);
  return img;
}

inline ImageRGB read_image(const std::string& path) {
  if (path.size() >= 4 && path.compare(path.size() - 4, 4, ".ppm") == 0)
    return read_ppm(path);
  return read_png(path);
}

namespace detail {

/// Summed-area table over a channel; box means clamp the window to the image.
class BoxMean {
 public:
  BoxMean(const std::vector<double>& channel, int width, int height)
      : width_(width), height_(height),
        sat_(static_cast<std::size_t>(width + 1) * (height + 1), 0.0) {
    for (int row = 0; row < height; ++row)
      for (int col = 0; col < width; ++col)
        at(col + 1, row + 1) = channel[static_cast<std::size_t>(row) * width + col] +
                               at(col, row + 1) + at(col + 1, row) - at(col, row);
  }

  double mean(int col, int row, int radius) const {
    const int c0 = std::max(0, col - radius), c1 = std::min(width_ - 1, col + radius);
    const int r0 = std::max(0, row - radius), r1 = std::min(height_ - 1, row + radius);
    const double total = at(c1 + 1, r1 + 1) - at(c0, r1 + 1) - at(c1 + 1, r0) + at(c0, r0);
    return total / (static_cast<double>(c1 - c0 + 1) * (r1 - r0 + 1));
  }

 private:
  double& at(int col, int row) {
    return sat_[static_cast<std::size_t>(row) * (width_ + 1) + col];
  }
  double at(int col, int row) const {
    return sat_[static_cast<std::size_t>(row) * (width_ + 1) + col];
  }
  int width_, height_;
  std::vector<double> sat_;
};

}  // namespace detail

/// Multiscale center-surround contrast baseline: intensity plus two color
/// opponency channels, |value - box mean| at radii {2,4,8}, responses summed
/// and normalized. A constant image yields the uniform map.
inline DenseGrid builtin_saliency(const ImageRGB& image) {
  if (image.width <= 0 || image.height <= 0 || image.data.empty())
    throw Error(ErrorCode::EMPTY_IMAGE, "empty image");
  const int w = image.width, h = image.height;
  const std::size_t n = static_cast<std::size_t>(w) * h;

  // intensity, red-green, blue-yellow
  std::vector<std::vector<double>> channels(3, std::vector<double>(n));
  for (int row = 0; row < h; ++row)
    for (int col = 0; col < w; ++col) {
      const std::size_t i = static_cast<std::size_t>(row) * w + col;
      const double r = image.r(col, row), g = image.g(col, row), b = image.b(col, row);
      channels[0][i] = (r + g + b) / 3.0;
      channels[1][i] = r - g;
      channels[2][i] = b - (r + g) / 2.0;
    }

  DenseGrid out(w, h);
  static constexpr int kRadii[] = {2, 4, 8};
  for (const auto& ch : channels) {
    detail::BoxMean sat(ch, w, h);
    for (int radius : kRadii)
      for (int row = 0; row < h; ++row)
        for (int col = 0; col < w; ++col) {
          const std::size_t i = static_cast<std::size_t>(row) * w + col;
          out.values()[i] += std::abs(ch[i] - sat.mean(col, row, radius));
        }
  }

  if (out.sum() <= 0.0) {
    // zero contrast everywhere: fall back to the uniform map
    for (double& v : out.values()) v = 1.0 / static_cast<double>(n);
    return out;
  }
  normalize(out);
  return out;
}

/// Loads an externally computed saliency map (any dataset-io map format),
/// min-shifts negative values to zero, resamples to the expected dims when
/// allowed, and normalizes to sum 1.
inline DenseGrid load_external_saliency(const std::string& path, int expected_width,
                                        int expected_height,
                                        MapFormat format = MapFormat::float_binary,
                                        bool allow_resample = true) {
  DenseGrid grid = read_map(path, format);
  const double lo = grid.min();
  if (lo < 0)
    for (double& v : grid.values()) v -= lo;
  if (grid.sum() <= 0.0 || grid.max() <= grid.min())
    throw Error(ErrorCode::ALL_ZERO, "degenerate saliency map: " + path);
  if (grid.width() != expected_width || grid.height() != expected_height) {
    if (!allow_resample)
      throw Error(ErrorCode::DIM_MISMATCH,
                  path + ": got " + std::to_string(grid.width()) + "x" +
                      std::to_string(grid.height()) + ", expected " +
                      std::to_string(expected_width) + "x" + std::to_string(expected_height));
    grid = resample_bilinear(grid, expected_width, expected_height);
  }
  normalize(grid);
  return grid;
}

}  // namespace gazecenter

#endif  // GAZECENTER_SALIENCY_HPP
