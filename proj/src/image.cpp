#include "stegolab/image.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <iterator>
#include <numeric>
#include <string_view>

#include "stegolab/error.hpp"

namespace stegolab {

namespace {

class HeaderCursor {
 public:
  explicit HeaderCursor(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  // Skips whitespace and '#' comments that run to end of line.
  void skip_space() {
    while (pos_ < bytes_.size()) {
      const auto c = bytes_[pos_];
      if (c == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n' && bytes_[pos_] != '\r') ++pos_;
      } else if (std::isspace(c)) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  std::uint64_t number(std::string_view field) {
    skip_space();
    std::uint64_t value = 0;
    std::size_t digits = 0;
    while (pos_ < bytes_.size() && std::isdigit(bytes_[pos_])) {
      value = value * 10 + (bytes_[pos_] - '0');
      if (value > 0xFFFFFFFFULL) {
        throw Error(ErrorCategory::Format, "pgm: " + std::string(field) + " out of range");
      }
      ++pos_;
      ++digits;
    }
    if (digits == 0) throw Error(ErrorCategory::Format, "pgm: missing " + std::string(field));
    return value;
  }

  // Exactly one whitespace byte separates maxval from the raster.
  void raster_separator() {
    if (pos_ >= bytes_.size() || !std::isspace(bytes_[pos_])) {
      throw Error(ErrorCategory::Format, "pgm: missing whitespace after maxval");
    }
    ++pos_;
  }

  [[nodiscard]] std::size_t pos() const { return pos_; }
  void advance(std::size_t n) { pos_ += n; }

 private:
  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
};

}  // namespace

void validate(const GrayImage& image) {
  if (image.rows() < 1 || image.cols() < 1) {
    throw Error(ErrorCategory::Invalid, "image: width and height must be at least 1");
  }
}

GrayImage read_pgm(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 2 || bytes[0] != 'P' || bytes[1] != '5') {
    throw Error(ErrorCategory::Format, "pgm: magic must be P5");
  }
  HeaderCursor cursor(bytes);
  cursor.advance(2);
  const auto width = cursor.number("width");
  const auto height = cursor.number("height");
  const auto maxval = cursor.number("maxval");
  if (width == 0) throw Error(ErrorCategory::Format, "pgm: width is zero");
  if (height == 0) throw Error(ErrorCategory::Format, "pgm: height is zero");
  if (maxval != kMaxGray) {
    throw Error(ErrorCategory::Format, "pgm: maxval must be 255, got " + std::to_string(maxval));
  }
  cursor.raster_separator();

  const std::size_t n = width * height;
  if (bytes.size() - cursor.pos() < n) {
    throw Error(ErrorCategory::Format, "pgm: raster truncated, expected " + std::to_string(n) +
                                           " bytes, found " +
                                           std::to_string(bytes.size() - cursor.pos()));
  }
  GrayImage image(static_cast<Eigen::Index>(height), static_cast<Eigen::Index>(width));
  std::copy_n(bytes.begin() + static_cast<std::ptrdiff_t>(cursor.pos()), n, image.data());
  return image;
}

std::vector<std::uint8_t> write_pgm(const GrayImage& image) {
  validate(image);
  const std::string header =
      "P5\n" + std::to_string(image.cols()) + " " + std::to_string(image.rows()) + "\n255\n";
  std::vector<std::uint8_t> out(header.begin(), header.end());
  out.insert(out.end(), image.data(), image.data() + image.size());
  return out;
}

GrayImage load_pgm(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCategory::Format, "pgm: cannot open " + path);
  const std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                        std::istreambuf_iterator<char>());
  return read_pgm(bytes);
}

void save_pgm(const GrayImage& image, const std::string& path) {
  const auto bytes = write_pgm(image);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCategory::Format, "pgm: cannot write " + path);
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
}

std::vector<std::size_t> traversal_order(const GrayImage& image, Traversal mode, Rng& rng) {
  std::vector<std::size_t> order(pixel_count(image));
  std::iota(order.begin(), order.end(), std::size_t{0});
  if (mode == Traversal::Permuted) {
    for (std::size_t i = order.size(); i > 1; --i) {
      const auto j = static_cast<std::size_t>(rng.below(i));
      std::swap(order[i - 1], order[j]);
    }
  }
  return order;
}

}  // namespace stegolab
