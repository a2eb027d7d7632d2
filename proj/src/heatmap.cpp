// Copyright 2026 The samlfd Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <png.h>

#include <cstdio>
#include <memory>

#include "samlfd/error.hpp"
#include "samlfd/session.hpp"

namespace samlfd {

std::array<unsigned char, 3> representation_color(Representation rep) noexcept {
  switch (rep) {
    case Representation::JA: return {0xCF, 0x71, 0x75};
    case Representation::LTE: return {0x77, 0xB9, 0x86};
    case Representation::DMP: return {0x6F, 0x8F, 0xCF};
  }
  return {0, 0, 0};
}

void write_region_png(const SimilarityMap& map, const std::filesystem::path& path, std::optional<double> robust,
                      int cell_pixels) {
  if (cell_pixels < 1) fail(ErrorCode::InvalidArgument, "cell size must be at least one pixel");
  const std::size_t res = map.grid.resolution;
  const std::size_t dims = map.grid.dims();
  if (res == 0 || map.grid.size() != (dims == 2 ? res * res : res * res * res)) {
    fail(ErrorCode::Dimension, "heatmaps need a full 2-D or 3-D meshgrid");
  }
  const std::vector<bool> mask = robust ? robust_region(map, *robust) : std::vector<bool>(map.grid.size(), true);
  const std::size_t slice = dims == 3 ? res / 2 : 0;

  const std::size_t side = res * static_cast<std::size_t>(cell_pixels);
  std::vector<unsigned char> pixels(side * side * 3);
  for (std::size_t i = 0; i < res; ++i) {      // first axis, left to right
    for (std::size_t j = 0; j < res; ++j) {    // second axis, bottom to top
      const std::size_t idx = dims == 2 ? i * res + j : (i * res + j) * res + slice;
      std::array<unsigned char, 3> rgb{0x40, 0x40, 0x40};
      if (!map.flagged[idx]) rgb = mask[idx] ? representation_color(map.best_label[idx]) : std::array<unsigned char, 3>{0xB0, 0xB0, 0xB0};
      for (std::size_t y = 0; y < static_cast<std::size_t>(cell_pixels); ++y) {
        const std::size_t row = (res - 1 - j) * static_cast<std::size_t>(cell_pixels) + y;
        for (std::size_t x = 0; x < static_cast<std::size_t>(cell_pixels); ++x) {
          const std::size_t col = i * static_cast<std::size_t>(cell_pixels) + x;
          std::copy(rgb.begin(), rgb.end(), pixels.begin() + static_cast<std::ptrdiff_t>((row * side + col) * 3));
        }
      }
    }
  }

  std::unique_ptr<FILE, int (*)(FILE*)> file(std::fopen(path.string().c_str(), "wb"), &std::fclose);
  if (!file) fail(ErrorCode::Io, "cannot write '" + path.string() + "'");
  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  png_infop info = png ? png_create_info_struct(png) : nullptr;
  if (!png || !info) {
    png_destroy_write_struct(&png, nullptr);
    fail(ErrorCode::Io, "libpng could not initialise");
  }
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    fail(ErrorCode::Io, "libpng failed while writing '" + path.string() + "'");
  }
  png_init_io(png, file.get());
  png_set_IHDR(png, info, static_cast<png_uint_32>(side), static_cast<png_uint_32>(side), 8, PNG_COLOR_TYPE_RGB,
               PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  for (std::size_t row = 0; row < side; ++row) png_write_row(png, pixels.data() + row * side * 3);
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
}

}  // namespace samlfd
