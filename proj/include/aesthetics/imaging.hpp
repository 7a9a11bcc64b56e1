#pragma once

#include <filesystem>

#include "aesthetics/image.hpp"

namespace aesthetics {

/// Hexcone HSV. h in degrees [0,360), s and v in [0,1].
struct HsvPixel {
    double h = 0.0;
    double s = 0.0;
    double v = 0.0;
};

/// Decodes a portable pixmap (binary P6 or ASCII P3).
/// Throws IoError / FormatError; both messages name the path.
RgbImage load_image(const std::filesystem::path& path);

/// Writes a binary P6 pixmap.
void save_ppm(const std::filesystem::path& path, const RgbImage& img);

/// BT.601 luma: 0.299 r + 0.587 g + 0.114 b.
GrayImage to_grayscale(const RgbImage& img);

/// Extracts channel 0 (r), 1 (g) or 2 (b) as reals on the 0-255 scale.
GrayImage channel(const RgbImage& img, int index);

/// 3x3 Laplacian with the alpha-parameterized kernel
///
///   4/(a+1) * | a/4      (1-a)/4  a/4     |
///             | (1-a)/4  -1       (1-a)/4 |
///             | a/4      (1-a)/4  a/4     |
///
/// Borders replicate the edge pixel. Requires at least 3x3 input and
/// alpha in [0,1].
GrayImage laplacian_filter(const GrayImage& channel, double alpha);

/// Bilinear resampling with pixel-center alignment and clamped borders.
/// Same-size resampling returns the input unchanged.
GrayImage resize_bilinear(const GrayImage& img, int width, int height);

/// Box-filter resampling: each output cell is the coverage-weighted mean of
/// the input area it spans. Preserves total mass up to the area ratio.
GrayImage resize_area(const GrayImage& img, int width, int height);

HsvPixel rgb_to_hsv(Rgb p);

/// Magnitude of the unnormalized forward 2-D DFT; DC lands at (0,0).
GrayImage dft2_magnitude(const GrayImage& img);

/// Separable Gaussian smoothing of each channel, replicate borders,
/// results rounded to the nearest byte. sigma <= 0 returns a copy.
RgbImage gaussian_blur(const RgbImage& img, double sigma);

RgbImage crop(const RgbImage& img, const Rect& region);

}  // namespace aesthetics
