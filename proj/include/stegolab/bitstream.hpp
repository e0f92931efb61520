#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace stegolab {

/// Ordered message bits, one 0/1 value per element.
class BitStream {
 public:
  BitStream() = default;
  explicit BitStream(std::vector<std::uint8_t> bits);

  void push_back(int bit) { bits_.push_back(static_cast<std::uint8_t>(bit & 1)); }
  void append(const BitStream& other);

  [[nodiscard]] std::size_t size() const noexcept { return bits_.size(); }
  [[nodiscard]] bool empty() const noexcept { return bits_.empty(); }
  [[nodiscard]] int operator[](std::size_t i) const { return bits_[i]; }
  [[nodiscard]] std::span<const std::uint8_t> bits() const noexcept { return bits_; }

  friend bool operator==(const BitStream&, const BitStream&) = default;

 private:
  std::vector<std::uint8_t> bits_;
};

inline constexpr std::size_t kLengthPrefixBits = 32;

/// MSB-first expansion of bytes into bits.
BitStream to_bits(std::span<const std::uint8_t> bytes);

/// Inverse of to_bits; the bit count must be a multiple of 8.
std::vector<std::uint8_t> to_bytes(const BitStream& bits);

/// 32-bit big-endian bit-count prefix followed by the payload bits.
BitStream frame_bits(const BitStream& payload);
BitStream frame_message(std::span<const std::uint8_t> payload);

/// Decodes the 32-bit prefix at the start of `framed`.
std::uint32_t read_length_prefix(std::span<const std::uint8_t> framed);

/// Strips the prefix. Throws ErrorCategory::Framing when the declared
/// length exceeds the bits that follow it.
BitStream unframe_bits(const BitStream& framed);
std::vector<std::uint8_t> unframe_message(const BitStream& framed);

}  // namespace stegolab
