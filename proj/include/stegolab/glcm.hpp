#pragma once

#include <Eigen/Core>
#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "stegolab/image.hpp"

namespace stegolab {

/// Pixel displacement (dx along columns, dy along rows).
struct Offset {
  int dx = 0;
  int dy = 0;

  friend bool operator==(const Offset&, const Offset&) = default;
};

/// Throws ErrorCategory::Invalid on (0,0).
void validate(Offset offset);

using OffsetSet = std::vector<Offset>;

/// Non-empty, no duplicates, no (0,0).
void validate(std::span<const Offset> offsets);

/// The eight immediate neighbors.
inline const OffsetSet kNeighborOffsets{{1, 0},  {-1, 1}, {0, 1},  {1, 1},
                                        {-1, -1}, {0, -1}, {1, -1}, {-1, 0}};
/// Default feature set: right, down, down-right, down-left.
inline const OffsetSet kFeatureOffsets{{1, 0}, {0, 1}, {1, 1}, {-1, 1}};
/// Horizontal and vertical only.
inline const OffsetSet kAxisOffsets{{1, 0}, {0, 1}};
/// Left-leaning half of the neighborhood.
inline const OffsetSet kLeftOffsets{{-1, 1}, {0, 1}, {-1, -1}, {-1, 0}};

inline constexpr int kGrayLevels = 256;
inline constexpr int kBands = 5;

using CountMatrix = Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>;

struct CooccurrenceMatrix {
  Offset offset;
  CountMatrix counts;  // kGrayLevels x kGrayLevels, counts(i, j)

  [[nodiscard]] std::int64_t total() const { return counts.sum(); }
};

/// Fraction of co-occurrence mass on the bands |i - j| = 0..4.
using DiagonalEnergies = Eigen::Array<double, kBands, 1>;

/// counts(i, j) = #{(x, y) : g(x, y) = i and g(x + dx, y + dy) = j}, with
/// both pixels inside the image. No wraparound, no padding.
CooccurrenceMatrix cooccurrence(const GrayImage& image, Offset offset);

/// Throws ErrorCategory::Metric on an empty matrix.
DiagonalEnergies diagonal_energies(const CooccurrenceMatrix& matrix);

/// diagonal_energies for each offset, concatenated in order.
Eigen::VectorXd band_features(const GrayImage& image, std::span<const Offset> offsets);

/// diagonal_energies averaged over `offsets`.
DiagonalEnergies mean_energies(const GrayImage& image, std::span<const Offset> offsets);

/// 256 lines of 256 comma-separated counts.
std::string matrix_csv(const CooccurrenceMatrix& matrix);

/// Header "offset,e0,e1,e2,e3,e4" then one row per offset; the offset
/// column is quoted as "dx,dy".
std::string energies_csv(const GrayImage& image, std::span<const Offset> offsets);

/// Parses "dx,dy".
Offset parse_offset(const std::string& text);

}  // namespace stegolab
