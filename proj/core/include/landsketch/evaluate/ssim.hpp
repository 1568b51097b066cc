#pragma once

#include <span>

#include "landsketch/image.hpp"

namespace landsketch::evaluate {

/// Mean structural similarity over all valid positions of an 11x11 Gaussian
/// window (sigma 1.5, K1 0.01, K2 0.03, dynamic range 255). Color input is
/// reduced to Rec.601 luma first. Images smaller than the window use a
/// window of min(11, width, height) per side with the same sigma. Throws
/// Error(DimensionMismatch).
double ssim(const Image& a, const Image& b);

/// Mean SSIM over all unordered pairs. Throws Error(TooFewImages) for fewer
/// than two images and Error(DimensionMismatch).
double group_mean_ssim(std::span<const Image> images);

}  // namespace landsketch::evaluate
