#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>

#include "stegolab/bitstream.hpp"
#include "stegolab/image.hpp"
#include "stegolab/rng.hpp"

namespace stegolab {

enum class Method { Lsbm, Lsbmr, LsbmImproved, LsbmrImproved };

/// CLI spelling: lsbm, lsbmr, lsbm-imp, lsbmr-imp.
std::string_view to_string(Method method) noexcept;
Method parse_method(std::string_view text);

constexpr bool is_pair_method(Method m) noexcept {
  return m == Method::Lsbmr || m == Method::LsbmrImproved;
}
constexpr bool is_improved(Method m) noexcept {
  return m == Method::LsbmImproved || m == Method::LsbmrImproved;
}

inline constexpr int kDefaultThreshold = 4;

struct EmbedConfig {
  Method method = Method::Lsbm;
  double rate = 1.0;  // bits per pixel, used by callers that size random payloads
  int threshold = kDefaultThreshold;
  std::uint64_t seed = 0;
  Traversal traversal = Traversal::Raster;
};

/// Bits an image can carry under `method`, length prefix included.
std::size_t capacity_bits(Method method, const GrayImage& image);

/// 3x3 window around a pixel. Neighbor slots run row-major over the
/// window with the center skipped; slots outside the image are flagged.
struct Neighborhood {
  int center = 0;
  std::array<int, 8> values{};
  std::array<bool, 8> in_bounds{};

  [[nodiscard]] int available() const noexcept;
};

Neighborhood neighborhood_at(const GrayImage& image, std::size_t index);

enum class Direction { Minus, Plus };

constexpr int sign(Direction d) noexcept { return d == Direction::Plus ? 1 : -1; }

struct MaskDecision {
  std::array<bool, 8> mask{};
  int sad_minus = 0;  // sum over masked neighbors of |(center - 1) - n|
  int sad_plus = 0;   // sum over masked neighbors of |(center + 1) - n|
  Direction choice = Direction::Plus;
  bool forced = false;  // center at 0 or 255
};

/// Masks neighbors with |center - n| < threshold and picks the +-1 step
/// with the smaller sum of absolute differences to them. Ties and empty
/// masks fall back to a coin from `rng`; saturated centers are forced
/// inward without drawing.
MaskDecision choose_direction(const Neighborhood& neighborhood, int threshold, Rng& rng);

/// LSB(floor(y1 / 2) + y2).
constexpr int f_pair(int y1, int y2) noexcept { return ((y1 >> 1) + y2) & 1; }

// The embedders frame `payload` with its 32-bit length, visit pixels in
// traversal_order seeded by config.seed and draw their +-1 signs from
// `rng`. Pixels past the framed message are left untouched.

GrayImage lsbm_embed(const GrayImage& cover, const BitStream& payload, const EmbedConfig& config,
                     Rng& rng);
GrayImage lsbm_improved_embed(const GrayImage& cover, const BitStream& payload,
                              const EmbedConfig& config, Rng& rng);
GrayImage lsbmr_embed(const GrayImage& cover, const BitStream& payload, const EmbedConfig& config,
                      Rng& rng);
GrayImage lsbmr_improved_embed(const GrayImage& cover, const BitStream& payload,
                               const EmbedConfig& config, Rng& rng);

/// Reads the LSB of each visited pixel and unframes.
BitStream lsbm_extract(const GrayImage& stego, const EmbedConfig& config);
/// Reads (LSB(y1), f(y1, y2)) from each visited pair and unframes.
BitStream lsbmr_extract(const GrayImage& stego, const EmbedConfig& config);

/// Dispatch on config.method; signs come from a stream derived from config.seed.
GrayImage embed(const GrayImage& cover, const BitStream& payload, const EmbedConfig& config);
BitStream extract(const GrayImage& stego, const EmbedConfig& config);

}  // namespace stegolab
