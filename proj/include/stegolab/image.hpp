#pragma once

#include <Eigen/Core>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "stegolab/rng.hpp"

namespace stegolab {

/// Row-major raster: rows() is the height, cols() the width, and pixel
/// (x, y) lives at data()[y * width + x].
template <typename Scalar>
using Image = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// 8-bit grayscale cover/stego medium.
using GrayImage = Image<std::uint8_t>;

inline constexpr int kBitDepth = 8;
inline constexpr int kMaxGray = (1 << kBitDepth) - 1;

/// Throws ErrorCategory::Invalid when either dimension is zero.
void validate(const GrayImage& image);

inline std::size_t pixel_count(const GrayImage& image) {
  return static_cast<std::size_t>(image.size());
}

/// Decodes a binary P5 PGM with maxval 255.
GrayImage read_pgm(std::span<const std::uint8_t> bytes);

/// Encodes as "P5\n<w> <h>\n255\n" followed by the raw raster.
std::vector<std::uint8_t> write_pgm(const GrayImage& image);

GrayImage load_pgm(const std::string& path);
void save_pgm(const GrayImage& image, const std::string& path);

enum class Traversal { Raster, Permuted };

/// Order in which embedders visit pixels. Raster is 0..N-1; Permuted is a
/// Fisher-Yates shuffle drawn from `rng`. Both are bijections over pixels.
std::vector<std::size_t> traversal_order(const GrayImage& image, Traversal mode, Rng& rng);

}  // namespace stegolab
