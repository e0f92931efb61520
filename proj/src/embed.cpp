#include "stegolab/embed.hpp"

#include <cstdlib>
#include <string>

#include "stegolab/error.hpp"

namespace stegolab {

namespace {

constexpr std::array<std::array<int, 2>, 8> kWindow{{
    {-1, -1}, {0, -1}, {1, -1}, {-1, 0}, {1, 0}, {-1, 1}, {0, 1}, {1, 1}}};

// Stream of sign draws; traversal gets its own stream so the visiting
// order is independent of how many coins an embedder consumes.
constexpr std::uint64_t kSignStream = 1;

std::vector<std::size_t> visit_order(const GrayImage& image, const EmbedConfig& config) {
  Rng rng(config.seed);
  return traversal_order(image, config.traversal, rng);
}

BitStream frame_for(Method method, const GrayImage& image, const BitStream& payload) {
  validate(image);
  BitStream framed = frame_bits(payload);
  const auto capacity = capacity_bits(method, image);
  if (framed.size() > capacity) {
    throw Error(ErrorCategory::Capacity, "embed: framed message of " + std::to_string(framed.size()) +
                                             " bits exceeds capacity of " +
                                             std::to_string(capacity) + " bits");
  }
  if (is_pair_method(method) && framed.size() % 2 != 0) framed.push_back(0);
  return framed;
}

// Applies a +-1 step to a pixel whose LSB must flip. Saturated values
// move inward; otherwise `pick` supplies the sign.
template <typename Pick>
std::uint8_t step(std::uint8_t value, Pick&& pick) {
  if (value == 0) return 1;
  if (value == kMaxGray) return kMaxGray - 1;
  return static_cast<std::uint8_t>(value + pick());
}

template <typename Pick>
GrayImage embed_single(const GrayImage& cover, const BitStream& payload, Method method,
                       const EmbedConfig& config, Pick&& pick) {
  const BitStream framed = frame_for(method, cover, payload);
  const auto order = visit_order(cover, config);
  GrayImage stego = cover;
  auto* px = stego.data();
  for (std::size_t i = 0; i < framed.size(); ++i) {
    const auto idx = order[i];
    if ((px[idx] & 1) != framed[i]) px[idx] = step(px[idx], [&] { return pick(stego, idx); });
  }
  return stego;
}

template <typename Pick>
GrayImage embed_pairs(const GrayImage& cover, const BitStream& payload, Method method,
                      const EmbedConfig& config, Pick&& pick) {
  const BitStream framed = frame_for(method, cover, payload);
  const auto order = visit_order(cover, config);
  GrayImage stego = cover;
  auto* px = stego.data();
  for (std::size_t p = 0; 2 * p < framed.size(); ++p) {
    const auto i1 = order[2 * p];
    const auto i2 = order[2 * p + 1];
    const int s1 = framed[2 * p];
    const int s2 = framed[2 * p + 1];
    const int y1 = px[i1];
    const int y2 = px[i2];
    auto pick_y2 = [&] { return pick(stego, i2); };

    if ((y1 & 1) == s1) {
      if (f_pair(y1, y2) != s2) px[i2] = step(px[i2], pick_y2);
      continue;
    }
    // Exactly one of y1 - 1, y1 + 1 satisfies f(., y2) == s2.
    const int target = f_pair(y1 - 1, y2) == s2 ? y1 - 1 : y1 + 1;
    if (target >= 0 && target <= kMaxGray) {
      px[i1] = static_cast<std::uint8_t>(target);
      continue;
    }
    // Saturated y1: the in-range step keeps s1 but flips f, so y2 moves too.
    px[i1] = static_cast<std::uint8_t>(target < 0 ? y1 + 1 : y1 - 1);
    px[i2] = step(px[i2], pick_y2);
  }
  return stego;
}

auto coin_sign(Rng& rng) {
  return [&rng](const GrayImage&, std::size_t) { return rng.coin() ? 1 : -1; };
}

auto neighborhood_sign(Rng& rng, int threshold) {
  return [&rng, threshold](const GrayImage& live, std::size_t idx) {
    return sign(choose_direction(neighborhood_at(live, idx), threshold, rng).choice);
  };
}

void check_method(const EmbedConfig& config, Method expected) {
  if (config.method != expected) {
    throw Error(ErrorCategory::Invalid, "embed: config method " + std::string(to_string(config.method)) +
                                            " does not match " + std::string(to_string(expected)));
  }
}

void check_threshold(const EmbedConfig& config) {
  if (config.threshold < 0) throw Error(ErrorCategory::Invalid, "embed: threshold must be non-negative");
}

// Reads framed bits lazily: the prefix first, then exactly as many bits as it declares.
template <typename ReadBit>
BitStream read_framed(std::size_t capacity, ReadBit&& read_bit) {
  if (capacity < kLengthPrefixBits) {
    throw Error(ErrorCategory::Framing, "extract: image too small for the length prefix");
  }
  std::vector<std::uint8_t> bits;
  bits.reserve(kLengthPrefixBits);
  for (std::size_t i = 0; i < kLengthPrefixBits; ++i) bits.push_back(static_cast<std::uint8_t>(read_bit(i)));
  const std::uint64_t count = read_length_prefix(bits);
  if (kLengthPrefixBits + count > capacity) {
    throw Error(ErrorCategory::Framing, "extract: declared length " + std::to_string(count) +
                                            " exceeds image capacity of " +
                                            std::to_string(capacity - kLengthPrefixBits) + " bits");
  }
  for (std::size_t i = kLengthPrefixBits; i < kLengthPrefixBits + count; ++i) {
    bits.push_back(static_cast<std::uint8_t>(read_bit(i)));
  }
  return unframe_bits(BitStream(std::move(bits)));
}

}  // namespace

std::string_view to_string(Method method) noexcept {
  switch (method) {
    case Method::Lsbm: return "lsbm";
    case Method::Lsbmr: return "lsbmr";
    case Method::LsbmImproved: return "lsbm-imp";
    case Method::LsbmrImproved: return "lsbmr-imp";
  }
  return "unknown";
}

Method parse_method(std::string_view text) {
  if (text == "lsbm") return Method::Lsbm;
  if (text == "lsbmr") return Method::Lsbmr;
  if (text == "lsbm-imp" || text == "lsbm_improved") return Method::LsbmImproved;
  if (text == "lsbmr-imp" || text == "lsbmr_improved") return Method::LsbmrImproved;
  throw Error(ErrorCategory::Invalid, "unknown method '" + std::string(text) + "'");
}

std::size_t capacity_bits(Method method, const GrayImage& image) {
  const auto n = pixel_count(image);
  return is_pair_method(method) ? n - n % 2 : n;
}

int Neighborhood::available() const noexcept {
  int count = 0;
  for (const bool b : in_bounds) count += b;
  return count;
}

Neighborhood neighborhood_at(const GrayImage& image, std::size_t index) {
  const auto width = static_cast<Eigen::Index>(image.cols());
  const auto x = static_cast<Eigen::Index>(index) % width;
  const auto y = static_cast<Eigen::Index>(index) / width;
  Neighborhood hood;
  hood.center = image(y, x);
  for (std::size_t n = 0; n < kWindow.size(); ++n) {
    const auto nx = x + kWindow[n][0];
    const auto ny = y + kWindow[n][1];
    if (nx >= 0 && ny >= 0 && nx < image.cols() && ny < image.rows()) {
      hood.in_bounds[n] = true;
      hood.values[n] = image(ny, nx);
    }
  }
  return hood;
}

MaskDecision choose_direction(const Neighborhood& hood, int threshold, Rng& rng) {
  MaskDecision d;
  const int c = hood.center;
  for (std::size_t n = 0; n < hood.values.size(); ++n) {
    const int v = hood.values[n];
    d.mask[n] = hood.in_bounds[n] && std::abs(c - v) < threshold;
    if (!d.mask[n]) continue;
    d.sad_minus += std::abs(c - 1 - v);
    d.sad_plus += std::abs(c + 1 - v);
  }
  if (c <= 0) {
    d.forced = true;
    d.choice = Direction::Plus;
  } else if (c >= kMaxGray) {
    d.forced = true;
    d.choice = Direction::Minus;
  } else if (d.sad_minus < d.sad_plus) {
    d.choice = Direction::Minus;
  } else if (d.sad_plus < d.sad_minus) {
    d.choice = Direction::Plus;
  } else {
    d.choice = rng.coin() ? Direction::Plus : Direction::Minus;
  }
  return d;
}

GrayImage lsbm_embed(const GrayImage& cover, const BitStream& payload, const EmbedConfig& config,
                     Rng& rng) {
  check_method(config, Method::Lsbm);
  return embed_single(cover, payload, Method::Lsbm, config, coin_sign(rng));
}

GrayImage lsbm_improved_embed(const GrayImage& cover, const BitStream& payload,
                              const EmbedConfig& config, Rng& rng) {
  check_method(config, Method::LsbmImproved);
  check_threshold(config);
  return embed_single(cover, payload, Method::LsbmImproved, config,
                      neighborhood_sign(rng, config.threshold));
}

GrayImage lsbmr_embed(const GrayImage& cover, const BitStream& payload, const EmbedConfig& config,
                      Rng& rng) {
  check_method(config, Method::Lsbmr);
  return embed_pairs(cover, payload, Method::Lsbmr, config, coin_sign(rng));
}

GrayImage lsbmr_improved_embed(const GrayImage& cover, const BitStream& payload,
                               const EmbedConfig& config, Rng& rng) {
  check_method(config, Method::LsbmrImproved);
  check_threshold(config);
  return embed_pairs(cover, payload, Method::LsbmrImproved, config,
                     neighborhood_sign(rng, config.threshold));
}

BitStream lsbm_extract(const GrayImage& stego, const EmbedConfig& config) {
  validate(stego);
  const auto order = visit_order(stego, config);
  const auto* px = stego.data();
  return read_framed(capacity_bits(Method::Lsbm, stego),
                     [&](std::size_t i) { return px[order[i]] & 1; });
}

BitStream lsbmr_extract(const GrayImage& stego, const EmbedConfig& config) {
  validate(stego);
  const auto order = visit_order(stego, config);
  const auto* px = stego.data();
  return read_framed(capacity_bits(Method::Lsbmr, stego), [&](std::size_t i) {
    const int y1 = px[order[i & ~std::size_t{1}]];
    if (i % 2 == 0) return y1 & 1;
    return f_pair(y1, px[order[i]]);
  });
}

GrayImage embed(const GrayImage& cover, const BitStream& payload, const EmbedConfig& config) {
  Rng rng(Rng::derive(config.seed, kSignStream));
  switch (config.method) {
    case Method::Lsbm: return lsbm_embed(cover, payload, config, rng);
    case Method::Lsbmr: return lsbmr_embed(cover, payload, config, rng);
    case Method::LsbmImproved: return lsbm_improved_embed(cover, payload, config, rng);
    case Method::LsbmrImproved: return lsbmr_improved_embed(cover, payload, config, rng);
  }
  throw Error(ErrorCategory::Invalid, "embed: unknown method");
}

BitStream extract(const GrayImage& stego, const EmbedConfig& config) {
  return is_pair_method(config.method) ? lsbmr_extract(stego, config) : lsbm_extract(stego, config);
}

}  // namespace stegolab
