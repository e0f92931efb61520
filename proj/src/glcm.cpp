#include "stegolab/glcm.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include "stegolab/error.hpp"

namespace stegolab {

void validate(Offset offset) {
  if (offset.dx == 0 && offset.dy == 0) {
    throw Error(ErrorCategory::Invalid, "offset: (0,0) is not a displacement");
  }
}

void validate(std::span<const Offset> offsets) {
  if (offsets.empty()) throw Error(ErrorCategory::Invalid, "offset set: empty");
  for (std::size_t i = 0; i < offsets.size(); ++i) {
    validate(offsets[i]);
    if (std::find(offsets.begin(), offsets.begin() + static_cast<std::ptrdiff_t>(i), offsets[i]) !=
        offsets.begin() + static_cast<std::ptrdiff_t>(i)) {
      throw Error(ErrorCategory::Invalid, "offset set: duplicate offset");
    }
  }
}

CooccurrenceMatrix cooccurrence(const GrayImage& image, Offset offset) {
  validate(image);
  validate(offset);
  CooccurrenceMatrix out{offset, CountMatrix::Zero(kGrayLevels, kGrayLevels)};

  const Eigen::Index height = image.rows();
  const Eigen::Index width = image.cols();
  const Eigen::Index x0 = std::max<Eigen::Index>(0, -offset.dx);
  const Eigen::Index x1 = std::min<Eigen::Index>(width, width - offset.dx);
  const Eigen::Index y0 = std::max<Eigen::Index>(0, -offset.dy);
  const Eigen::Index y1 = std::min<Eigen::Index>(height, height - offset.dy);

  for (Eigen::Index y = y0; y < y1; ++y) {
    for (Eigen::Index x = x0; x < x1; ++x) {
      ++out.counts(image(y, x), image(y + offset.dy, x + offset.dx));
    }
  }
  return out;
}

DiagonalEnergies diagonal_energies(const CooccurrenceMatrix& matrix) {
  const auto total = matrix.total();
  if (total <= 0) {
    throw Error(ErrorCategory::Metric, "diagonal energies: co-occurrence matrix is empty");
  }
  DiagonalEnergies e;
  e(0) = static_cast<double>(matrix.counts.diagonal().sum());
  for (int k = 1; k < kBands; ++k) {
    e(k) = static_cast<double>(matrix.counts.diagonal(k).sum() + matrix.counts.diagonal(-k).sum());
  }
  return e / static_cast<double>(total);
}

Eigen::VectorXd band_features(const GrayImage& image, std::span<const Offset> offsets) {
  validate(offsets);
  Eigen::VectorXd features(static_cast<Eigen::Index>(offsets.size()) * kBands);
  for (std::size_t i = 0; i < offsets.size(); ++i) {
    features.segment<kBands>(static_cast<Eigen::Index>(i) * kBands) =
        diagonal_energies(cooccurrence(image, offsets[i])).matrix();
  }
  return features;
}

DiagonalEnergies mean_energies(const GrayImage& image, std::span<const Offset> offsets) {
  const Eigen::VectorXd features = band_features(image, offsets);
  return features.reshaped(kBands, static_cast<Eigen::Index>(offsets.size())).rowwise().mean().array();
}

std::string matrix_csv(const CooccurrenceMatrix& matrix) {
  std::string out;
  out.reserve(kGrayLevels * kGrayLevels * 2);
  for (int i = 0; i < kGrayLevels; ++i) {
    for (int j = 0; j < kGrayLevels; ++j) {
      if (j) out += ',';
      out += std::to_string(matrix.counts(i, j));
    }
    out += '\n';
  }
  return out;
}

std::string energies_csv(const GrayImage& image, std::span<const Offset> offsets) {
  validate(offsets);
  std::string out = "offset,e0,e1,e2,e3,e4\n";
  char buf[32];
  for (const auto& offset : offsets) {
    const auto e = diagonal_energies(cooccurrence(image, offset));
    out += "\"" + std::to_string(offset.dx) + "," + std::to_string(offset.dy) + "\"";
    for (int k = 0; k < kBands; ++k) {
      std::snprintf(buf, sizeof buf, ",%.8f", e(k));
      out += buf;
    }
    out += '\n';
  }
  return out;
}

Offset parse_offset(const std::string& text) {
  std::istringstream in(text);
  Offset offset;
  char comma = 0;
  if (!(in >> offset.dx >> comma >> offset.dy) || comma != ',' || !(in >> std::ws).eof()) {
    throw Error(ErrorCategory::Invalid, "offset: expected dx,dy, got '" + text + "'");
  }
  validate(offset);
  return offset;
}

}  // namespace stegolab
