#include "stegolab/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <numeric>

#include "stegolab/error.hpp"
#include "stegolab/fld.hpp"
#include "stegolab/rng.hpp"

namespace stegolab {

namespace fs = std::filesystem;

namespace {

using Field = Eigen::ArrayXXd;

Eigen::ArrayXd gaussian_kernel(double sigma) {
  const int radius = static_cast<int>(std::ceil(3.0 * sigma));
  Eigen::ArrayXd k(2 * radius + 1);
  for (int i = -radius; i <= radius; ++i) k(i + radius) = std::exp(-0.5 * i * i / (sigma * sigma));
  return k / k.sum();
}

// Separable blur with clamp-to-edge borders.
Field blur(const Field& in, double sigma) {
  const Eigen::ArrayXd k = gaussian_kernel(sigma);
  const auto radius = (k.size() - 1) / 2;
  const auto rows = in.rows();
  const auto cols = in.cols();
  auto clamp = [](Eigen::Index v, Eigen::Index hi) { return std::clamp<Eigen::Index>(v, 0, hi - 1); };

  Field tmp(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    for (Eigen::Index c = 0; c < cols; ++c) {
      double acc = 0;
      for (Eigen::Index t = -radius; t <= radius; ++t) acc += k(t + radius) * in(r, clamp(c + t, cols));
      tmp(r, c) = acc;
    }
  }
  Field out(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    for (Eigen::Index c = 0; c < cols; ++c) {
      double acc = 0;
      for (Eigen::Index t = -radius; t <= radius; ++t) acc += k(t + radius) * tmp(clamp(r + t, rows), c);
      out(r, c) = acc;
    }
  }
  return out;
}

Field noise_field(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
  Field f(rows, cols);
  for (Eigen::Index i = 0; i < f.size(); ++i) f(i) = rng.normal();
  return f;
}

Field standardized(const Field& f) {
  const double mean = f.mean();
  const double sd = std::sqrt((f - mean).square().mean());
  return sd > 0 ? Field((f - mean) / sd) : Field(f - mean);
}

double uniform_in(Rng& rng, double lo, double hi) { return lo + (hi - lo) * rng.uniform(); }

struct FeaturePairs {
  Eigen::MatrixXd cover;  // one row per image
  Eigen::MatrixXd stego;
};

Eigen::MatrixXd feature_rows(std::span<const GrayImage> images) {
  const auto dim = static_cast<Eigen::Index>(kFeatureOffsets.size()) * kBands;
  Eigen::MatrixXd rows(static_cast<Eigen::Index>(images.size()), dim);
  for (std::size_t i = 0; i < images.size(); ++i) {
    rows.row(static_cast<Eigen::Index>(i)) = band_features(images[i], kFeatureOffsets).transpose();
  }
  return rows;
}

std::vector<GrayImage> stego_corpus(std::span<const GrayImage> corpus, const ExperimentConfig& config) {
  std::vector<GrayImage> out;
  out.reserve(corpus.size());
  for (std::size_t i = 0; i < corpus.size(); ++i) out.push_back(embed_random(corpus[i], i, config));
  return out;
}

DiagonalEnergies averaged(const Eigen::VectorXd& features) {
  const auto offsets = features.size() / kBands;
  return features.reshaped(kBands, offsets).rowwise().mean().array();
}

void require_corpus(std::span<const GrayImage> corpus, std::size_t minimum) {
  if (corpus.size() < minimum) {
    throw Error(ErrorCategory::Invalid, "experiment: corpus needs at least " + std::to_string(minimum) +
                                            " images, got " + std::to_string(corpus.size()));
  }
}

std::string format_double(const char* fmt, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, fmt, v);
  return buf;
}

}  // namespace

GrayImage synthetic_image(int width, int height, std::uint64_t seed) {
  if (width < 1 || height < 1) throw Error(ErrorCategory::Invalid, "synthetic image: empty size");
  Rng rng(seed);
  const double coarse_sigma = uniform_in(rng, 4.0, 12.0);
  const double fine_sigma = uniform_in(rng, 0.7, 1.6);
  const double fine_weight = uniform_in(rng, 0.0, 0.2);
  const double contrast = uniform_in(rng, 4.0, 20.0);
  const double brightness = uniform_in(rng, 70.0, 185.0);
  const double sensor = uniform_in(rng, 0.2, 0.6);

  const Field coarse = standardized(blur(noise_field(height, width, rng), coarse_sigma));
  const Field fine = standardized(blur(noise_field(height, width, rng), fine_sigma));
  const Field grain = noise_field(height, width, rng);
  const Field value = brightness + contrast * (coarse + fine_weight * fine) + sensor * grain;

  GrayImage image(height, width);
  for (Eigen::Index i = 0; i < value.size(); ++i) {
    image(i) = static_cast<std::uint8_t>(std::clamp(std::lround(value(i)), 0L, static_cast<long>(kMaxGray)));
  }
  return image;
}

std::vector<GrayImage> synthetic_corpus(std::size_t count, int width, int height, std::uint64_t seed) {
  std::vector<GrayImage> corpus;
  corpus.reserve(count);
  for (std::size_t i = 0; i < count; ++i) corpus.push_back(synthetic_image(width, height, Rng::derive(seed, i)));
  return corpus;
}

std::vector<GrayImage> bundled_corpus() {
  return synthetic_corpus(kBundledCorpusSize, kBundledCorpusSide, kBundledCorpusSide, kBundledCorpusSeed);
}

std::vector<GrayImage> load_corpus(const std::string& dir) {
  if (!fs::is_directory(dir)) throw Error(ErrorCategory::Format, "corpus: not a directory: " + dir);
  std::vector<fs::path> paths;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".pgm") paths.push_back(entry.path());
  }
  std::sort(paths.begin(), paths.end());
  std::vector<GrayImage> corpus;
  corpus.reserve(paths.size());
  for (const auto& p : paths) corpus.push_back(load_pgm(p.string()));
  return corpus;
}

void save_corpus(std::span<const GrayImage> corpus, const std::string& dir) {
  fs::create_directories(dir);
  char name[32];
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    std::snprintf(name, sizeof name, "img_%04zu.pgm", i);
    save_pgm(corpus[i], (fs::path(dir) / name).string());
  }
}

BitStream random_payload(const GrayImage& cover, Method method, double rate, Rng& rng) {
  if (!(rate > 0.0 && rate <= 1.0)) throw Error(ErrorCategory::Invalid, "payload: rate must be in (0, 1]");
  const auto framed = static_cast<std::size_t>(std::floor(rate * static_cast<double>(pixel_count(cover))));
  if (framed < kLengthPrefixBits || framed > capacity_bits(method, cover)) {
    throw Error(ErrorCategory::Capacity, "payload: rate " + format_double("%g", rate) +
                                             " gives " + std::to_string(framed) +
                                             " framed bits, outside the image's usable range");
  }
  BitStream payload;
  for (std::size_t i = kLengthPrefixBits; i < framed; ++i) payload.push_back(rng.coin());
  return payload;
}

GrayImage embed_random(const GrayImage& cover, std::size_t index, const ExperimentConfig& config) {
  const auto image_seed = Rng::derive(config.seed, index);
  Rng message_rng(Rng::derive(image_seed, 0x6d657373));
  const BitStream payload = random_payload(cover, config.method, config.rate, message_rng);
  EmbedConfig embed_config;
  embed_config.method = config.method;
  embed_config.rate = config.rate;
  embed_config.threshold = config.threshold;
  embed_config.seed = image_seed;
  return embed(cover, payload, embed_config);
}

std::vector<EnergyPair> energy_experiment(std::span<const GrayImage> corpus, const ExperimentConfig& config) {
  require_corpus(corpus, 1);
  std::vector<EnergyPair> out;
  out.reserve(corpus.size());
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    out.push_back({mean_energies(corpus[i], kFeatureOffsets),
                   mean_energies(embed_random(corpus[i], i, config), kFeatureOffsets)});
  }
  return out;
}

double detection_accuracy(const Eigen::MatrixXd& cover_features, const Eigen::MatrixXd& stego_features,
                          std::uint64_t seed, double split) {
  if (!(split > 0.0 && split < 1.0)) throw Error(ErrorCategory::Invalid, "detection: split must be in (0, 1)");
  const auto n = static_cast<std::size_t>(cover_features.rows());
  if (n < 2 || stego_features.rows() != cover_features.rows()) {
    throw Error(ErrorCategory::Invalid, "detection: need matching cover/stego rows for at least 2 images");
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  Rng rng(Rng::derive(seed, 0x73706c6974));
  for (std::size_t i = n; i > 1; --i) std::swap(order[i - 1], order[rng.below(i)]);
  const auto n_train = std::clamp<std::size_t>(
      static_cast<std::size_t>(std::lround(split * static_cast<double>(n))), 1, n - 1);

  auto gather = [&](std::size_t begin, std::size_t end, std::vector<Label>& labels) {
    Eigen::MatrixXd rows(static_cast<Eigen::Index>(2 * (end - begin)), cover_features.cols());
    Eigen::Index r = 0;
    for (std::size_t i = begin; i < end; ++i) {
      rows.row(r++) = cover_features.row(static_cast<Eigen::Index>(order[i]));
      labels.push_back(Label::Cover);
      rows.row(r++) = stego_features.row(static_cast<Eigen::Index>(order[i]));
      labels.push_back(Label::Stego);
    }
    return rows;
  };

  std::vector<Label> train_labels;
  std::vector<Label> test_labels;
  const Eigen::MatrixXd train = gather(0, n_train, train_labels);
  const Eigen::MatrixXd test = gather(n_train, n, test_labels);
  const auto fld = train_fld(train, train_labels);
  return accuracy_pct(fld, test, test_labels);
}

double detection_experiment(std::span<const GrayImage> corpus, const ExperimentConfig& config) {
  require_corpus(corpus, 20);
  const auto stego = stego_corpus(corpus, config);
  return detection_accuracy(feature_rows(corpus), feature_rows(stego), config.seed, config.split);
}

double null_detection_experiment(std::span<const GrayImage> corpus, const ExperimentConfig& config) {
  require_corpus(corpus, 20);
  // Two disjoint random halves of the covers play the two classes.
  std::vector<std::size_t> order(corpus.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  Rng rng(Rng::derive(config.seed, 0x6e756c6c));
  for (std::size_t i = order.size(); i > 1; --i) std::swap(order[i - 1], order[rng.below(i)]);
  const Eigen::MatrixXd features = feature_rows(corpus);
  const auto half = static_cast<Eigen::Index>(corpus.size() / 2);
  Eigen::MatrixXd first(half, features.cols());
  Eigen::MatrixXd second(half, features.cols());
  for (Eigen::Index i = 0; i < half; ++i) {
    first.row(i) = features.row(static_cast<Eigen::Index>(order[static_cast<std::size_t>(i)]));
    second.row(i) = features.row(static_cast<Eigen::Index>(order[static_cast<std::size_t>(half + i)]));
  }
  return detection_accuracy(first, second, config.seed, config.split);
}

ExperimentReport run_benchmark(std::span<const GrayImage> corpus, std::span<const Method> methods,
                               std::span<const double> rates, int threshold, std::uint64_t seed,
                               double split) {
  require_corpus(corpus, 20);
  const Eigen::MatrixXd cover_features = feature_rows(corpus);
  DiagonalEnergies cover_mean = DiagonalEnergies::Zero();
  for (Eigen::Index i = 0; i < cover_features.rows(); ++i) cover_mean += averaged(cover_features.row(i).transpose());
  cover_mean /= static_cast<double>(corpus.size());

  ExperimentReport report;
  for (const auto method : methods) {
    for (const double rate : rates) {
      ExperimentConfig config{method, rate, threshold, seed, split};
      const Eigen::MatrixXd stego_features = feature_rows(stego_corpus(corpus, config));
      ReportRow row;
      row.method = method;
      row.rate = rate;
      row.threshold = threshold;
      row.seed = seed;
      row.n = corpus.size();
      row.cover_mean = cover_mean;
      for (Eigen::Index i = 0; i < stego_features.rows(); ++i) {
        row.stego_mean += averaged(stego_features.row(i).transpose());
      }
      row.stego_mean /= static_cast<double>(corpus.size());
      row.detect_pct = detection_accuracy(cover_features, stego_features, seed, split);
      report.rows.push_back(row);
    }
  }
  return report;
}

std::string report_csv(const ExperimentReport& report) {
  std::string out = "method,rate,T,seed,n";
  for (int k = 0; k < kBands; ++k) out += ",e" + std::to_string(k) + "_cover";
  for (int k = 0; k < kBands; ++k) out += ",e" + std::to_string(k) + "_stego";
  out += ",detect_pct\n";
  for (const auto& row : report.rows) {
    out += std::string(to_string(row.method)) + "," + format_double("%g", row.rate) + "," +
           std::to_string(row.threshold) + "," + std::to_string(row.seed) + "," + std::to_string(row.n);
    for (int k = 0; k < kBands; ++k) out += format_double(",%.8f", row.cover_mean(k));
    for (int k = 0; k < kBands; ++k) out += format_double(",%.8f", row.stego_mean(k));
    out += format_double(",%.2f", row.detect_pct) + "\n";
  }
  return out;
}

std::string report_svg(const ExperimentReport& report) {
  constexpr double kW = 640, kH = 400, kPad = 50;
  static constexpr const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"};

  std::vector<Method> methods;
  double rate_max = 0, e_min = 1, e_max = 0;
  for (const auto& row : report.rows) {
    if (std::find(methods.begin(), methods.end(), row.method) == methods.end()) methods.push_back(row.method);
    rate_max = std::max(rate_max, row.rate);
    e_min = std::min({e_min, row.stego_mean(0), row.cover_mean(0)});
    e_max = std::max({e_max, row.stego_mean(0), row.cover_mean(0)});
  }
  if (rate_max <= 0) rate_max = 1;
  if (e_max <= e_min) e_max = e_min + 1e-3;
  auto px = [&](double rate) { return kPad + (kW - 2 * kPad) * rate / rate_max; };
  auto py = [&](double e) { return kH - kPad - (kH - 2 * kPad) * (e - e_min) / (e_max - e_min); };

  std::string svg = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"400\">\n";
  svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg += "<line x1=\"50\" y1=\"350\" x2=\"590\" y2=\"350\" stroke=\"black\"/>\n";
  svg += "<line x1=\"50\" y1=\"50\" x2=\"50\" y2=\"350\" stroke=\"black\"/>\n";
  svg += "<text x=\"320\" y=\"385\" text-anchor=\"middle\">rate (bpp)</text>\n";
  svg += "<text x=\"15\" y=\"200\" transform=\"rotate(-90 15 200)\" text-anchor=\"middle\">mean e0</text>\n";

  for (std::size_t m = 0; m < methods.size(); ++m) {
    std::string points = format_double("%.2f", px(0)) + "," +
                         format_double("%.2f", py(report.rows.empty() ? 0 : report.rows.front().cover_mean(0)));
    for (const auto& row : report.rows) {
      if (row.method != methods[m]) continue;
      points += " " + format_double("%.2f", px(row.rate)) + "," + format_double("%.2f", py(row.stego_mean(0)));
    }
    const char* color = kColors[m % std::size(kColors)];
    svg += "<polyline fill=\"none\" stroke=\"" + std::string(color) + "\" stroke-width=\"2\" points=\"" + points +
           "\"/>\n";
    svg += "<text x=\"" + format_double("%.0f", kW - kPad - 80) + "\" y=\"" +
           format_double("%.0f", kPad + 16.0 * static_cast<double>(m)) + "\" fill=\"" + color + "\">" +
           std::string(to_string(methods[m])) + "</text>\n";
  }
  svg += "</svg>\n";
  return svg;
}

}  // namespace stegolab
