#pragma once

// Fixed 8x8 grayscale test patches.

#include <cstdint>
#include <utility>
#include <vector>

#include "landsketch/image.hpp"
#include "support/reference_ssim.hpp"

namespace landsketch::testing {

inline constexpr std::uint8_t kPatchA[64] = {
    12,  40,  77,  91,  120, 133, 160, 201, 15,  44,  80,  99,  118, 140, 171, 210,
    20,  52,  85,  104, 125, 150, 175, 220, 30,  60,  90,  111, 130, 155, 180, 228,
    35,  66,  96,  117, 137, 161, 188, 233, 41,  70,  101, 122, 142, 166, 193, 240,
    47,  75,  108, 126, 150, 171, 199, 246, 50,  81,  112, 131, 156, 177, 204, 250};

inline constexpr std::uint8_t kPatchB[64] = {
    255, 0,   255, 0,   255, 0,   255, 0,   0,   255, 0,   255, 0,   255, 0,   255,
    255, 0,   255, 0,   255, 0,   255, 0,   0,   255, 0,   255, 0,   255, 0,   255,
    255, 0,   255, 0,   255, 0,   255, 0,   0,   255, 0,   255, 0,   255, 0,   255,
    255, 0,   255, 0,   255, 0,   255, 0,   0,   255, 0,   255, 0,   255, 0,   255};

inline constexpr std::uint8_t kPatchC[64] = {
    90,  92,  95,  97,  99,  101, 104, 106, 88,  90,  94,  96,  98,  103, 105, 107,
    85,  89,  93,  95,  100, 102, 106, 110, 83,  86,  91,  94,  99,  104, 108, 112,
    80,  84,  90,  93,  98,  105, 109, 115, 78,  82,  88,  92,  97,  106, 111, 118,
    75,  80,  86,  91,  96,  107, 113, 120, 73,  78,  85,  90,  95,  108, 115, 123};

inline Image patch_image(const std::uint8_t (&p)[64]) {
  Image img(8, 8, 1);
  for (int i = 0; i < 64; ++i) img.pixels[i] = p[i];
  return img;
}

inline GrayPlane plane_of(const Image& gray) {
  GrayPlane plane{gray.width, gray.height, {}};
  for (auto v : gray.pixels) plane.values.push_back(v);
  return plane;
}

/// Patch pairs covering correlated, anti-correlated and flat-ish content.
inline std::vector<std::pair<Image, Image>> fixed_patch_pairs() {
  const Image a = patch_image(kPatchA), b = patch_image(kPatchB), c = patch_image(kPatchC);
  Image inverted = a;
  for (auto& v : inverted.pixels) v = static_cast<std::uint8_t>(255 - v);
  return {{a, c}, {a, b}, {b, c}, {a, inverted}, {c, c}};
}

}  // namespace landsketch::testing
