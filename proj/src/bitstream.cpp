#include "stegolab/bitstream.hpp"

#include <limits>
#include <string>

#include "stegolab/error.hpp"

namespace stegolab {

BitStream::BitStream(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {
  for (auto& b : bits_) b &= 1;
}

void BitStream::append(const BitStream& other) {
  bits_.insert(bits_.end(), other.bits_.begin(), other.bits_.end());
}

BitStream to_bits(std::span<const std::uint8_t> bytes) {
  std::vector<std::uint8_t> bits;
  bits.reserve(bytes.size() * 8);
  for (const auto byte : bytes) {
    for (int shift = 7; shift >= 0; --shift) bits.push_back((byte >> shift) & 1);
  }
  return BitStream(std::move(bits));
}

std::vector<std::uint8_t> to_bytes(const BitStream& bits) {
  if (bits.size() % 8 != 0) {
    throw Error(ErrorCategory::Framing,
                "bitstream: " + std::to_string(bits.size()) + " bits is not a whole number of bytes");
  }
  std::vector<std::uint8_t> bytes(bits.size() / 8, 0);
  for (std::size_t i = 0; i < bits.size(); ++i) {
    bytes[i / 8] = static_cast<std::uint8_t>(bytes[i / 8] | (bits[i] << (7 - i % 8)));
  }
  return bytes;
}

BitStream frame_bits(const BitStream& payload) {
  if (payload.size() > std::numeric_limits<std::uint32_t>::max()) {
    throw Error(ErrorCategory::Capacity, "frame: payload bit count does not fit in 32 bits");
  }
  const auto count = static_cast<std::uint32_t>(payload.size());
  BitStream framed;
  for (int shift = 31; shift >= 0; --shift) framed.push_back(static_cast<int>((count >> shift) & 1U));
  framed.append(payload);
  return framed;
}

BitStream frame_message(std::span<const std::uint8_t> payload) {
  if (payload.size() > std::numeric_limits<std::uint32_t>::max() / 8) {
    throw Error(ErrorCategory::Capacity, "frame: payload bit count does not fit in 32 bits");
  }
  return frame_bits(to_bits(payload));
}

std::uint32_t read_length_prefix(std::span<const std::uint8_t> framed) {
  if (framed.size() < kLengthPrefixBits) {
    throw Error(ErrorCategory::Framing, "frame: fewer than 32 bits available for the length prefix");
  }
  std::uint32_t count = 0;
  for (std::size_t i = 0; i < kLengthPrefixBits; ++i) count = (count << 1) | (framed[i] & 1U);
  return count;
}

BitStream unframe_bits(const BitStream& framed) {
  const auto count = read_length_prefix(framed.bits());
  const auto available = framed.size() - kLengthPrefixBits;
  if (count > available) {
    throw Error(ErrorCategory::Framing, "frame: declared length " + std::to_string(count) +
                                            " exceeds " + std::to_string(available) +
                                            " available bits");
  }
  const auto payload = framed.bits().subspan(kLengthPrefixBits, count);
  return BitStream(std::vector<std::uint8_t>(payload.begin(), payload.end()));
}

std::vector<std::uint8_t> unframe_message(const BitStream& framed) {
  return to_bytes(unframe_bits(framed));
}

}  // namespace stegolab
