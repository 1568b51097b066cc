#include "landsketch/image.hpp"

#include <png.h>

#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>

#include "landsketch/error.hpp"

namespace landsketch {

Image::Image(int w, int h, int c, std::uint8_t fill)
    : width(w), height(h), channels(c),
      pixels(static_cast<std::size_t>(w) * h * c, fill) {}

Image to_grayscale(const Image& image) {
  if (image.channels == 1) return image;
  Image gray(image.width, image.height, 1);
  for (int y = 0; y < image.height; ++y) {
    for (int x = 0; x < image.width; ++x) {
      const std::uint8_t* p = image.at(x, y);
      const double luma = 0.299 * p[0] + 0.587 * p[1] + 0.114 * p[2];
      *gray.at(x, y) = static_cast<std::uint8_t>(std::lround(std::min(255.0, luma)));
    }
  }
  return gray;
}

std::vector<std::uint8_t> encode_png(const Image& image) {
  if (image.channels != 1 && image.channels != 3) {
    throw Error(ErrorCode::InvalidArgument, "PNG encoding needs 1 or 3 channels");
  }
  png_image info;
  std::memset(&info, 0, sizeof(info));
  info.version = PNG_IMAGE_VERSION;
  info.width = static_cast<png_uint_32>(image.width);
  info.height = static_cast<png_uint_32>(image.height);
  info.format = image.channels == 1 ? PNG_FORMAT_GRAY : PNG_FORMAT_RGB;

  png_alloc_size_t size = 0;
  if (!png_image_write_to_memory(&info, nullptr, &size, 0, image.pixels.data(), 0, nullptr)) {
    throw Error(ErrorCode::InvalidArgument, std::string("png: ") + info.message);
  }
  std::vector<std::uint8_t> out(size);
  if (!png_image_write_to_memory(&info, out.data(), &size, 0, image.pixels.data(), 0, nullptr)) {
    throw Error(ErrorCode::InvalidArgument, std::string("png: ") + info.message);
  }
  out.resize(size);
  return out;
}

Image decode_png(std::span<const std::uint8_t> bytes) {
  png_image info;
  std::memset(&info, 0, sizeof(info));
  info.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_memory(&info, bytes.data(), bytes.size())) {
    throw Error(ErrorCode::InvalidArgument, std::string("png: ") + info.message);
  }
  const bool gray = (info.format & PNG_FORMAT_FLAG_COLOR) == 0;
  info.format = gray ? PNG_FORMAT_GRAY : PNG_FORMAT_RGB;
  Image image(static_cast<int>(info.width), static_cast<int>(info.height), gray ? 1 : 3);
  if (!png_image_finish_read(&info, nullptr, image.pixels.data(), 0, nullptr)) {
    png_image_free(&info);
    throw Error(ErrorCode::InvalidArgument, std::string("png: ") + info.message);
  }
  return image;
}

void write_png(const std::filesystem::path& path, const Image& image) {
  const auto bytes = encode_png(image);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(ErrorCode::StorageError, "cannot write " + path.string());
}

Image read_png(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::NotFound, path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return decode_png(bytes);
}

}  // namespace landsketch
