// Copyright 2026 The Disambig Authors
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

#include "disambig/png_io.h"

#include <png.h>

#include <cmath>
#include <cstring>
#include <vector>

#include "disambig/base/error.h"

namespace disambig {

void ExportPng(const ImageTensor& t, const std::string& path) {
  std::vector<png_byte> pixels(static_cast<size_t>(t.width()) * t.height() * 3);
  for (int y = 0; y < t.height(); ++y) {
    for (int x = 0; x < t.width(); ++x) {
      for (int c = 0; c < kNumChannels; ++c) {
        const float v = t.at(static_cast<Channel>(c), x, y);
        pixels[(static_cast<size_t>(y) * t.width() + x) * 3 + c] =
            static_cast<png_byte>(std::lround(v * 255.0f));
      }
    }
  }
  png_image image;
  std::memset(&image, 0, sizeof(image));
  image.version = PNG_IMAGE_VERSION;
  image.width = static_cast<png_uint_32>(t.width());
  image.height = static_cast<png_uint_32>(t.height());
  image.format = PNG_FORMAT_RGB;
  if (!png_image_write_to_file(&image, path.c_str(), 0, pixels.data(), 0,
                               nullptr)) {
    const std::string message = image.message;
    png_image_free(&image);
    throw Error(ErrorCode::kIoError, "cannot write " + path + ": " + message);
  }
}

ImageTensor ReadPng(const std::string& path) {
  png_image image;
  std::memset(&image, 0, sizeof(image));
  image.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_file(&image, path.c_str())) {
    throw Error(ErrorCode::kIoError,
                "cannot read " + path + ": " + image.message);
  }
  image.format = PNG_FORMAT_RGB;
  std::vector<png_byte> pixels(PNG_IMAGE_SIZE(image));
  if (!png_image_finish_read(&image, nullptr, pixels.data(), 0, nullptr)) {
    const std::string message = image.message;
    png_image_free(&image);
    throw Error(ErrorCode::kIoError, "cannot decode " + path + ": " + message);
  }
  const int width = static_cast<int>(image.width);
  const int height = static_cast<int>(image.height);
  ImageTensor t(width, height);
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      for (int c = 0; c < kNumChannels; ++c) {
        t.set(static_cast<Channel>(c), x, y,
              pixels[(static_cast<size_t>(y) * width + x) * 3 + c] / 255.0f);
      }
    }
  }
  return t;
}

}  // namespace disambig
