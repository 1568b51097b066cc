#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

namespace landsketch {

/// 8-bit raster, row-major, interleaved channels (1 = gray, 3 = RGB).
struct Image {
  int width = 0;
  int height = 0;
  int channels = 3;
  std::vector<std::uint8_t> pixels;

  Image() = default;
  Image(int w, int h, int c, std::uint8_t fill = 0);

  std::uint8_t* at(int x, int y) noexcept {
    return pixels.data() + (static_cast<std::size_t>(y) * width + x) * channels;
  }
  const std::uint8_t* at(int x, int y) const noexcept {
    return pixels.data() + (static_cast<std::size_t>(y) * width + x) * channels;
  }
  bool empty() const noexcept { return pixels.empty(); }
  bool operator==(const Image&) const = default;
};

/// Rec.601 luma (0.299 R + 0.587 G + 0.114 B), rounded to 8 bits. Gray
/// images are returned unchanged.
Image to_grayscale(const Image& image);

/// Deterministic PNG encoding: identical images give identical bytes.
std::vector<std::uint8_t> encode_png(const Image& image);
/// Throws Error(InvalidArgument) on undecodable data. Alpha is dropped.
Image decode_png(std::span<const std::uint8_t> bytes);

void write_png(const std::filesystem::path& path, const Image& image);
Image read_png(const std::filesystem::path& path);

}  // namespace landsketch
