#include "landsketch/evaluate/ssim.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "landsketch/error.hpp"

namespace landsketch::evaluate {
namespace {

constexpr int kWindow = 11;
constexpr double kSigma = 1.5;
constexpr double kC1 = (0.01 * 255) * (0.01 * 255);
constexpr double kC2 = (0.03 * 255) * (0.03 * 255);

std::vector<double> gaussian_kernel(int size) {
  std::vector<double> k(size);
  const double center = (size - 1) / 2.0;
  double sum = 0;
  for (int i = 0; i < size; ++i) {
    k[i] = std::exp(-(i - center) * (i - center) / (2 * kSigma * kSigma));
    sum += k[i];
  }
  for (double& v : k) v /= sum;
  return k;
}

// Separable valid-mode filter of a w x h plane; output is (w-n+1) x (h-n+1).
std::vector<double> filter_valid(const std::vector<double>& plane, int w, int h,
                                 const std::vector<double>& k) {
  const int n = static_cast<int>(k.size());
  const int ow = w - n + 1, oh = h - n + 1;
  std::vector<double> rows(static_cast<std::size_t>(ow) * h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < ow; ++x) {
      double acc = 0;
      for (int i = 0; i < n; ++i) acc += k[i] * plane[static_cast<std::size_t>(y) * w + x + i];
      rows[static_cast<std::size_t>(y) * ow + x] = acc;
    }
  }
  std::vector<double> out(static_cast<std::size_t>(ow) * oh);
  for (int y = 0; y < oh; ++y) {
    for (int x = 0; x < ow; ++x) {
      double acc = 0;
      for (int i = 0; i < n; ++i) acc += k[i] * rows[static_cast<std::size_t>(y + i) * ow + x];
      out[static_cast<std::size_t>(y) * ow + x] = acc;
    }
  }
  return out;
}

}  // namespace

double ssim(const Image& a, const Image& b) {
  if (a.width != b.width || a.height != b.height) {
    throw Error(ErrorCode::DimensionMismatch,
                std::to_string(a.width) + "x" + std::to_string(a.height) + " vs " +
                    std::to_string(b.width) + "x" + std::to_string(b.height));
  }
  if (a.width <= 0 || a.height <= 0) {
    throw Error(ErrorCode::DimensionMismatch, "empty image");
  }
  const Image ga = to_grayscale(a);
  const Image gb = to_grayscale(b);
  const int w = a.width, h = a.height;
  const std::size_t count = static_cast<std::size_t>(w) * h;
  std::vector<double> pa(count), pb(count), aa(count), bb(count), ab(count);
  for (std::size_t i = 0; i < count; ++i) {
    pa[i] = ga.pixels[i];
    pb[i] = gb.pixels[i];
    aa[i] = pa[i] * pa[i];
    bb[i] = pb[i] * pb[i];
    ab[i] = pa[i] * pb[i];
  }
  const auto k = gaussian_kernel(std::min({kWindow, w, h}));
  const auto mu_a = filter_valid(pa, w, h, k);
  const auto mu_b = filter_valid(pb, w, h, k);
  const auto e_aa = filter_valid(aa, w, h, k);
  const auto e_bb = filter_valid(bb, w, h, k);
  const auto e_ab = filter_valid(ab, w, h, k);

  double total = 0;
  for (std::size_t i = 0; i < mu_a.size(); ++i) {
    const double ma = mu_a[i], mb = mu_b[i];
    const double var_a = e_aa[i] - ma * ma;
    const double var_b = e_bb[i] - mb * mb;
    const double cov = e_ab[i] - ma * mb;
    total += ((2 * ma * mb + kC1) * (2 * cov + kC2)) /
             ((ma * ma + mb * mb + kC1) * (var_a + var_b + kC2));
  }
  return total / static_cast<double>(mu_a.size());
}

double group_mean_ssim(std::span<const Image> images) {
  if (images.size() < 2) {
    throw Error(ErrorCode::TooFewImages, std::to_string(images.size()) + " image(s)");
  }
  double total = 0;
  std::size_t pairs = 0;
  for (std::size_t i = 0; i < images.size(); ++i) {
    for (std::size_t j = i + 1; j < images.size(); ++j) {
      total += ssim(images[i], images[j]);
      ++pairs;
    }
  }
  return total / static_cast<double>(pairs);
}

}  // namespace landsketch::evaluate
