#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace forge {

inline constexpr std::uint8_t kWhite = 255;
inline constexpr std::uint8_t kBlack = 0;

/// 8-bit grayscale raster, row-major.
struct Image {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> pixels;

  Image() = default;
  Image(int w, int h, std::uint8_t fill = kWhite)
      : width(w), height(h), pixels(static_cast<std::size_t>(w) * static_cast<std::size_t>(h), fill) {
    if (w <= 0 || h <= 0) throw std::invalid_argument("image dimensions must be positive");
  }

  std::uint8_t& at(int x, int y) {
    return pixels[static_cast<std::size_t>(y) * static_cast<std::size_t>(width) + static_cast<std::size_t>(x)];
  }
  std::uint8_t at(int x, int y) const {
    return pixels[static_cast<std::size_t>(y) * static_cast<std::size_t>(width) + static_cast<std::size_t>(x)];
  }

  std::size_t count_below(std::uint8_t threshold) const {
    return static_cast<std::size_t>(
        std::count_if(pixels.begin(), pixels.end(), [&](std::uint8_t v) { return v < threshold; }));
  }

  friend bool operator==(const Image&, const Image&) = default;
};

inline Image pad_image(const Image& img, int margin) {
  if (margin < 0) throw std::invalid_argument("margin must be non-negative");
  Image padded(img.width + 2 * margin, img.height + 2 * margin, kWhite);
  for (int y = 0; y < img.height; ++y)
    for (int x = 0; x < img.width; ++x) padded.at(x + margin, y + margin) = img.at(x, y);
  return padded;
}

/// Nearest-neighbour resampling; output pixel centres map onto source pixels.
inline Image resize_nearest(const Image& img, int width, int height) {
  Image out(width, height, kWhite);
  for (int y = 0; y < height; ++y) {
    const auto sy = static_cast<int>((2LL * y + 1) * img.height / (2LL * height));
    for (int x = 0; x < width; ++x) {
      const auto sx = static_cast<int>((2LL * x + 1) * img.width / (2LL * width));
      out.at(x, y) = img.at(sx, sy);
    }
  }
  return out;
}

/// Adds a white border of `margin` pixels on every side, then resamples back
/// to the input size.
inline Image pad_and_rescale(const Image& img, int margin) {
  if (margin == 0) return img;
  return resize_nearest(pad_image(img, margin), img.width, img.height);
}

}  // namespace forge
