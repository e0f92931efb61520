// stegolab: embed/extract with LSB matching variants, co-occurrence
// analysis and corpus benchmarks.

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <iterator>
#include <string>
#include <vector>

#include "stegolab/embed.hpp"
#include "stegolab/error.hpp"
#include "stegolab/glcm.hpp"
#include "stegolab/harness.hpp"
#include "stegolab/image.hpp"

namespace {

using namespace stegolab;

std::vector<std::uint8_t> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCategory::Format, "cannot open " + path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

template <typename Bytes>
void write_file(const std::string& path, const Bytes& bytes) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCategory::Format, "cannot write " + path);
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
}

Traversal parse_traversal(const std::string& text) {
  if (text == "raster") return Traversal::Raster;
  if (text == "permuted") return Traversal::Permuted;
  throw CLI::ValidationError("--traversal", "expected raster or permuted");
}

std::pair<int, int> parse_size(const std::string& text) {
  const auto x = text.find('x');
  try {
    if (x == std::string::npos) throw std::invalid_argument(text);
    std::size_t used = 0;
    const int w = std::stoi(text.substr(0, x), &used);
    if (used != x) throw std::invalid_argument(text);
    const int h = std::stoi(text.substr(x + 1), &used);
    if (used != text.size() - x - 1 || w < 1 || h < 1) throw std::invalid_argument(text);
    return {w, h};
  } catch (const std::logic_error&) {
    throw CLI::ValidationError("--size", "expected WxH with positive integers, got '" + text + "'");
  }
}

struct StegoFlags {
  std::string method;
  std::string image;
  std::string out;
  std::string payload;
  std::uint64_t seed = 0;
  std::string traversal = "raster";
  int threshold = kDefaultThreshold;

  [[nodiscard]] EmbedConfig config() const {
    EmbedConfig c;
    c.method = parse_method(method);
    c.seed = seed;
    c.traversal = parse_traversal(traversal);
    c.threshold = threshold;
    return c;
  }
};

void add_stego_flags(CLI::App* cmd, StegoFlags& f) {
  cmd->add_option("--method", f.method, "lsbm | lsbmr | lsbm-imp | lsbmr-imp")
      ->required()
      ->check(CLI::IsMember({"lsbm", "lsbmr", "lsbm-imp", "lsbmr-imp"}));
  cmd->add_option("--seed", f.seed, "64-bit seed shared by sender and receiver")->required();
  cmd->add_option("--traversal", f.traversal, "raster | permuted")
      ->check(CLI::IsMember({"raster", "permuted"}));
  cmd->add_option("--threshold", f.threshold, "neighbor mask bound T")->check(CLI::NonNegativeNumber);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"LSB matching steganography and co-occurrence analysis"};
  app.require_subcommand(1);

  StegoFlags embed_flags;
  auto* embed_cmd = app.add_subcommand("embed", "hide a payload file in a PGM cover");
  add_stego_flags(embed_cmd, embed_flags);
  embed_cmd->add_option("--cover", embed_flags.image, "cover PGM")->required();
  embed_cmd->add_option("--payload", embed_flags.payload, "payload file")->required();
  embed_cmd->add_option("--out", embed_flags.out, "stego PGM")->required();

  StegoFlags extract_flags;
  auto* extract_cmd = app.add_subcommand("extract", "recover the payload from a stego PGM");
  add_stego_flags(extract_cmd, extract_flags);
  extract_cmd->add_option("--stego", extract_flags.image, "stego PGM")->required();
  extract_cmd->add_option("--out", extract_flags.out, "payload output file")->required();

  std::string glcm_image, glcm_offset, glcm_out;
  auto* glcm_cmd = app.add_subcommand("glcm", "dump one co-occurrence matrix as CSV");
  glcm_cmd->add_option("--image", glcm_image)->required();
  glcm_cmd->add_option("--offset", glcm_offset, "dx,dy (use --offset=-1,1 for negative dx)")->required();
  glcm_cmd->add_option("--out", glcm_out)->required();

  std::string features_image, features_out;
  auto* features_cmd = app.add_subcommand("features", "diagonal band energies for the default offsets");
  features_cmd->add_option("--image", features_image)->required();
  features_cmd->add_option("--out", features_out)->required();

  std::string bench_corpus, bench_out, bench_svg;
  std::vector<std::string> bench_methods;
  std::vector<double> bench_rates;
  int bench_threshold = kDefaultThreshold;
  std::uint64_t bench_seed = 0;
  double bench_split = 0.5;
  auto* bench_cmd = app.add_subcommand("bench", "energy and detection benchmark over a PGM corpus");
  bench_cmd->add_option("--corpus", bench_corpus, "directory of PGM files")->required();
  bench_cmd->add_option("--methods", bench_methods)->required()->delimiter(',')
      ->check(CLI::IsMember({"lsbm", "lsbmr", "lsbm-imp", "lsbmr-imp"}));
  bench_cmd->add_option("--rates", bench_rates)->required()->delimiter(',')
      ->check(CLI::Range(0.0, 1.0));
  bench_cmd->add_option("--threshold", bench_threshold)->check(CLI::NonNegativeNumber);
  bench_cmd->add_option("--seed", bench_seed)->required();
  bench_cmd->add_option("--split", bench_split, "training fraction")->check(CLI::Range(0.0, 1.0));
  bench_cmd->add_option("--out", bench_out, "report CSV")->required();
  bench_cmd->add_option("--svg", bench_svg, "optional e0-vs-rate plot");

  std::size_t gen_n = 20;
  std::string gen_size = "128x128", gen_out;
  std::uint64_t gen_seed = 0;
  auto* gen_cmd = app.add_subcommand("gen-corpus", "write a seeded synthetic corpus");
  gen_cmd->add_option("--n", gen_n)->required()->check(CLI::PositiveNumber);
  gen_cmd->add_option("--size", gen_size, "WxH")->required();
  gen_cmd->add_option("--seed", gen_seed)->required();
  gen_cmd->add_option("--out", gen_out, "output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*embed_cmd) {
      const auto cover = load_pgm(embed_flags.image);
      const auto payload = read_file(embed_flags.payload);
      const auto stego = embed(cover, to_bits(payload), embed_flags.config());
      save_pgm(stego, embed_flags.out);
    } else if (*extract_cmd) {
      const auto stego = load_pgm(extract_flags.image);
      write_file(extract_flags.out, to_bytes(extract(stego, extract_flags.config())));
    } else if (*glcm_cmd) {
      const auto image = load_pgm(glcm_image);
      write_file(glcm_out, matrix_csv(cooccurrence(image, parse_offset(glcm_offset))));
    } else if (*features_cmd) {
      const auto image = load_pgm(features_image);
      write_file(features_out, energies_csv(image, kFeatureOffsets));
    } else if (*bench_cmd) {
      std::vector<Method> methods;
      for (const auto& m : bench_methods) methods.push_back(parse_method(m));
      const auto corpus = load_corpus(bench_corpus);
      const auto report = run_benchmark(corpus, methods, bench_rates, bench_threshold, bench_seed, bench_split);
      write_file(bench_out, report_csv(report));
      if (!bench_svg.empty()) write_file(bench_svg, report_svg(report));
    } else if (*gen_cmd) {
      const auto [w, h] = parse_size(gen_size);
      save_corpus(synthetic_corpus(gen_n, w, h, gen_seed), gen_out);
    }
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: usage: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << to_string(e.category()) << ": " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: io: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
