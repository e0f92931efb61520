#pragma once

#include <Eigen/Core>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "stegolab/bitstream.hpp"
#include "stegolab/embed.hpp"
#include "stegolab/glcm.hpp"
#include "stegolab/image.hpp"

namespace stegolab {

// ---- corpus -----------------------------------------------------------

/// Smooth synthetic image: Gaussian-blurred white noise at two scales with
/// per-image blur, contrast, brightness and sensor noise drawn from `seed`.
GrayImage synthetic_image(int width, int height, std::uint64_t seed);

/// `count` synthetic images, image i seeded by Rng::derive(seed, i).
std::vector<GrayImage> synthetic_corpus(std::size_t count, int width, int height, std::uint64_t seed);

/// The 20-image 128x128 corpus used for desk-scale energy comparisons.
inline constexpr std::size_t kBundledCorpusSize = 20;
inline constexpr int kBundledCorpusSide = 128;
inline constexpr std::uint64_t kBundledCorpusSeed = 1;
std::vector<GrayImage> bundled_corpus();

/// Every *.pgm in `dir`, sorted by file name.
std::vector<GrayImage> load_corpus(const std::string& dir);

/// Writes corpus as img_0000.pgm, img_0001.pgm, ... under `dir`.
void save_corpus(std::span<const GrayImage> corpus, const std::string& dir);

// ---- experiments ------------------------------------------------------

struct ExperimentConfig {
  Method method = Method::Lsbm;
  double rate = 0.8;  // framed bits per pixel
  int threshold = kDefaultThreshold;
  std::uint64_t seed = 0;
  double split = 0.5;  // training fraction of images
};

/// Uniform random payload sized so the framed message is floor(rate * N)
/// bits. Throws ErrorCategory::Capacity when that is below the prefix or
/// above the method's capacity.
BitStream random_payload(const GrayImage& cover, Method method, double rate, Rng& rng);

/// Embeds a random payload into corpus[index] with seeds derived from
/// (config.seed, index).
GrayImage embed_random(const GrayImage& cover, std::size_t index, const ExperimentConfig& config);

struct EnergyPair {
  DiagonalEnergies cover;
  DiagonalEnergies stego;
};

/// Per-image cover/stego energies averaged over kFeatureOffsets.
std::vector<EnergyPair> energy_experiment(std::span<const GrayImage> corpus,
                                          const ExperimentConfig& config);

/// Held-out FLD accuracy (percent) separating covers from their stego
/// versions using band_features over kFeatureOffsets. Images are split
/// into train/test by a seeded shuffle; each test image contributes one
/// cover and one stego sample. Requires at least 20 images.
double detection_experiment(std::span<const GrayImage> corpus, const ExperimentConfig& config);

/// Null calibration: two disjoint random halves of the covers stand in for
/// the two classes, so held-out accuracy should sit near 50%.
double null_detection_experiment(std::span<const GrayImage> corpus, const ExperimentConfig& config);

/// Detection accuracy from precomputed features (one row per image).
double detection_accuracy(const Eigen::MatrixXd& cover_features, const Eigen::MatrixXd& stego_features,
                          std::uint64_t seed, double split);

// ---- reporting --------------------------------------------------------

struct ReportRow {
  Method method = Method::Lsbm;
  double rate = 0;
  int threshold = kDefaultThreshold;
  std::uint64_t seed = 0;
  std::size_t n = 0;
  DiagonalEnergies cover_mean = DiagonalEnergies::Zero();
  DiagonalEnergies stego_mean = DiagonalEnergies::Zero();
  double detect_pct = 0;
};

struct ExperimentReport {
  std::vector<ReportRow> rows;
};

/// One row per (method, rate), methods outermost.
ExperimentReport run_benchmark(std::span<const GrayImage> corpus, std::span<const Method> methods,
                               std::span<const double> rates, int threshold, std::uint64_t seed,
                               double split = 0.5);

std::string report_csv(const ExperimentReport& report);

/// Line plot of mean e0 against rate, one polyline per method plus cover.
std::string report_svg(const ExperimentReport& report);

}  // namespace stegolab
