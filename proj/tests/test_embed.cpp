#include <doctest.h>

#include <set>
#include <string>

#include "stegolab/embed.hpp"
#include "stegolab/error.hpp"
#include "test_util.hpp"

using namespace stegolab;

namespace {

EmbedConfig config_for(Method m, std::uint64_t seed = 1, Traversal t = Traversal::Raster) {
  EmbedConfig c;
  c.method = m;
  c.seed = seed;
  c.traversal = t;
  return c;
}

constexpr Method kAllMethods[] = {Method::Lsbm, Method::Lsbmr, Method::LsbmImproved, Method::LsbmrImproved};

// Value of pixel 32 (the first payload pixel under raster order) after
// embedding a one-bit payload.
int embed_first_payload_pixel(Method m, int value, int bit, std::uint64_t seed) {
  GrayImage cover = GrayImage::Zero(6, 6);
  cover(32) = static_cast<std::uint8_t>(value);
  BitStream payload;
  payload.push_back(bit);
  return embed(cover, payload, config_for(m, seed))(32);
}

Neighborhood make_hood(int center, std::initializer_list<int> neighbors) {
  Neighborhood h;
  h.center = center;
  std::size_t i = 0;
  for (const int v : neighbors) {
    h.values[i] = v;
    h.in_bounds[i] = true;
    ++i;
  }
  return h;
}

// Pair (pixel 32, pixel 33) carries payload bits (s1, s2) under raster order.
std::pair<int, int> embed_first_pair(Method m, int y1, int y2, int s1, int s2, std::uint64_t seed) {
  GrayImage cover = GrayImage::Zero(6, 6);
  cover(32) = static_cast<std::uint8_t>(y1);
  cover(33) = static_cast<std::uint8_t>(y2);
  BitStream payload;
  payload.push_back(s1);
  payload.push_back(s2);
  const auto stego = embed(cover, payload, config_for(m, seed));
  return {stego(32), stego(33)};
}

}  // namespace

TEST_CASE("method names") {
  for (const auto m : kAllMethods) CHECK(parse_method(to_string(m)) == m);
  CHECK(parse_method("lsbm_improved") == Method::LsbmImproved);
  CHECK_THROWS_AS(parse_method("lsb"), Error);
}

TEST_CASE("LSB matching boundary table") {
  for (const auto m : {Method::Lsbm, Method::LsbmImproved}) {
    for (std::uint64_t seed = 0; seed < 16; ++seed) {
      CHECK(embed_first_payload_pixel(m, 0, 1, seed) == 1);
      CHECK(embed_first_payload_pixel(m, 255, 0, seed) == 254);
      CHECK(embed_first_payload_pixel(m, 10, 0, seed) == 10);
      CHECK(embed_first_payload_pixel(m, 11, 1, seed) == 11);
      CHECK(embed_first_payload_pixel(m, 0, 0, seed) == 0);
      CHECK(embed_first_payload_pixel(m, 255, 1, seed) == 255);
    }
  }
}

TEST_CASE("LSB matching free sign comes from the coin") {
  std::set<int> outcomes;
  for (std::uint64_t seed = 0; seed < 64; ++seed) outcomes.insert(embed_first_payload_pixel(Method::Lsbm, 10, 1, seed));
  CHECK(outcomes == std::set<int>{9, 11});
}

TEST_CASE("lsbm extraction of a one-bit message on a zero cover") {
  const GrayImage cover = GrayImage::Zero(8, 8);
  const BitStream payload(std::vector<std::uint8_t>{1});
  const auto stego = embed(cover, payload, config_for(Method::Lsbm));
  // Prefix 0...01 then the payload bit: pixels 31 and 32 become 1.
  CHECK(stego(31) == 1);
  CHECK(stego(32) == 1);
  CHECK(stego.sum() == 2);
  CHECK(extract(stego, config_for(Method::Lsbm)) == payload);
}

TEST_CASE("f_pair") {
  CHECK(f_pair(4, 7) == 1);
  CHECK(f_pair(0, 0) == 0);
  CHECK(f_pair(3, 2) == 1);
  CHECK(f_pair(3, 7) == 0);
  CHECK(f_pair(255, 255) == 0);
}

TEST_CASE("LSB matching revisited pair table") {
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    CHECK(embed_first_pair(Method::Lsbmr, 4, 7, 0, 1, seed) == std::pair{4, 7});
    CHECK(embed_first_pair(Method::Lsbmr, 4, 7, 1, 0, seed) == std::pair{3, 7});
    CHECK(embed_first_pair(Method::Lsbmr, 4, 7, 1, 1, seed) == std::pair{5, 7});
  }
  std::set<std::pair<int, int>> free_branch;
  for (std::uint64_t seed = 0; seed < 64; ++seed) free_branch.insert(embed_first_pair(Method::Lsbmr, 4, 7, 0, 0, seed));
  CHECK(free_branch == std::set<std::pair<int, int>>{{4, 6}, {4, 8}});
  CHECK(f_pair(4, 6) == 0);
  CHECK(f_pair(4, 8) == 0);

  // Free branch with saturated y2 is forced inward.
  CHECK(embed_first_pair(Method::Lsbmr, 4, 0, 0, 1, 3) == std::pair{4, 1});
  CHECK(embed_first_pair(Method::Lsbmr, 4, 255, 0, 0, 3) == std::pair{4, 254});
}

TEST_CASE("LSB matching revisited saturated y1 fallback") {
  // y1 = 0, s1 = 1: candidate -1 would be required when f(1, y2) != s2.
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    const auto [a, b] = embed_first_pair(Method::Lsbmr, 0, 6, 1, 1, seed);
    CHECK(a == 1);
    CHECK((b == 5 || b == 7));
    CHECK(f_pair(a, b) == 1);

    // Candidate +1 already satisfies s2: no fallback.
    CHECK(embed_first_pair(Method::Lsbmr, 0, 6, 1, 0, seed) == std::pair{1, 6});

    const auto [c, d] = embed_first_pair(Method::Lsbmr, 255, 6, 0, 0, seed);
    CHECK(c == 254);
    CHECK((d == 5 || d == 7));
    CHECK(f_pair(c, d) == 0);
  }
  const auto [e, f] = embed_first_pair(Method::Lsbmr, 0, 0, 1, 0, 2);
  CHECK(f_pair(e, f) == 0);
  CHECK((e & 1) == 1);
}

TEST_CASE("lsbmr extraction formula") {
  GrayImage stego = GrayImage::Zero(6, 6);
  stego(32) = 3;
  stego(33) = 7;
  CHECK((stego(32) & 1) == 1);
  CHECK(f_pair(stego(32), stego(33)) == 0);
  stego(32) = 4;
  CHECK((stego(32) & 1) == 0);
  CHECK(f_pair(stego(32), stego(33)) == 1);
}

TEST_CASE("choose_direction") {
  Rng rng(1);
  // [[100,101,102],[100,.,103],[99,100,101]]
  const auto hood = make_hood(100, {100, 101, 102, 100, 103, 99, 100, 101});
  const auto d = choose_direction(hood, 4, rng);
  int sad_minus = 0, sad_plus = 0;
  for (const int v : {100, 101, 102, 100, 103, 99, 100, 101}) {
    sad_minus += std::abs(99 - v);
    sad_plus += std::abs(101 - v);
  }
  CHECK(sad_minus == 14);
  CHECK(sad_plus == 8);
  CHECK(d.sad_minus == 14);
  CHECK(d.sad_plus == 8);
  CHECK(d.choice == Direction::Plus);
  CHECK_FALSE(d.forced);
  for (const bool m : d.mask) CHECK(m);

  // |100 - 120| >= 4: unmasked. |100 - 104| == 4: unmasked (strict).
  const auto far = choose_direction(make_hood(100, {120, 104, 97}), 4, rng);
  CHECK_FALSE(far.mask[0]);
  CHECK_FALSE(far.mask[1]);
  CHECK(far.mask[2]);
  CHECK(far.choice == Direction::Minus);

  const auto low = choose_direction(make_hood(0, {3, 3, 3}), 4, rng);
  CHECK(low.forced);
  CHECK(low.choice == Direction::Plus);
  const auto high = choose_direction(make_hood(255, {250, 252, 254}), 4, rng);
  CHECK(high.forced);
  CHECK(high.choice == Direction::Minus);

  // Out-of-bounds slots never contribute.
  Neighborhood edge = make_hood(50, {51, 51, 51});
  edge.values[5] = 49;  // in_bounds stays false
  const auto e = choose_direction(edge, 4, rng);
  CHECK_FALSE(e.mask[5]);
  CHECK(e.choice == Direction::Plus);

  // Ties and empty masks are coin flips.
  std::set<Direction> tie, empty;
  for (int i = 0; i < 64; ++i) {
    tie.insert(choose_direction(make_hood(50, {49, 51}), 4, rng).choice);
    empty.insert(choose_direction(make_hood(50, {90, 10}), 4, rng).choice);
  }
  CHECK(tie.size() == 2);
  CHECK(empty.size() == 2);
  CHECK(choose_direction(make_hood(50, {51}), 0, rng).mask[0] == false);
}

TEST_CASE("neighborhood_at flags border slots") {
  const GrayImage img = GrayImage::Constant(3, 4, 7);
  CHECK(neighborhood_at(img, 0).available() == 3);
  CHECK(neighborhood_at(img, 1).available() == 5);
  CHECK(neighborhood_at(img, 5).available() == 8);
  CHECK(neighborhood_at(GrayImage::Zero(1, 1), 0).available() == 0);
}

TEST_CASE("improved LSB matching takes the neighborhood direction") {
  // Width-3 image; the pixel at index 40 has the worked-example
  // neighborhood and every earlier neighbor already carries its bit.
  GrayImage cover = GrayImage::Zero(15, 3);
  const int block[] = {100, 101, 102, 100, 100, 103, 99, 100, 101};
  const std::size_t at[] = {36, 37, 38, 39, 40, 41, 42, 43, 44};
  for (int i = 0; i < 9; ++i) cover(static_cast<Eigen::Index>(at[i])) = static_cast<std::uint8_t>(block[i]);
  // Payload occupies indices 32..40.
  const BitStream payload(std::vector<std::uint8_t>{0, 0, 0, 0, 0, 1, 0, 0, 1});
  for (std::uint64_t seed = 0; seed < 16; ++seed) {
    const auto stego = embed(cover, payload, config_for(Method::LsbmImproved, seed));
    CHECK(stego(40) == 101);
    for (const auto i : {36, 37, 38, 39, 41, 42, 43, 44}) CHECK(stego(i) == cover(i));
  }

  // Matching LSB leaves the pixel alone whatever its neighbors.
  const BitStream keep(std::vector<std::uint8_t>{0, 0, 0, 0, 0, 1, 0, 0, 0});
  CHECK(embed(cover, keep, config_for(Method::LsbmImproved))(40) == 100);
}

TEST_CASE("improved LSB matching revisited takes the neighborhood direction") {
  // Pair (42, 43) in a width-3 image: y1 = 98, y2 = 100 surrounded by 98/99.
  GrayImage cover = GrayImage::Zero(16, 3);
  const std::pair<int, int> pixels[] = {{38, 97}, {39, 99}, {40, 98}, {41, 99}, {42, 98},
                                        {43, 100}, {44, 99}, {45, 98}, {46, 99}, {47, 99}};
  for (const auto& [i, v] : pixels) cover(i) = static_cast<std::uint8_t>(v);
  // Pairs (38,39), (40,41) carry bits that need no change; (42,43) hits the free branch.
  BitStream payload;
  for (int i = 0; i < 6; ++i) payload.push_back(0);  // pixels 32..37 are zero: no change
  payload.push_back(97 & 1);
  payload.push_back(f_pair(97, 99));
  payload.push_back(98 & 1);
  payload.push_back(f_pair(98, 99));
  payload.push_back(0);                      // s1 == LSB(98)
  payload.push_back(1 - f_pair(98, 100));    // s2 != f(98, 100)
  for (std::uint64_t seed = 0; seed < 16; ++seed) {
    const auto stego = embed(cover, payload, config_for(Method::LsbmrImproved, seed));
    CHECK(stego(42) == 98);
    CHECK(stego(43) == 99);
    CHECK(extract(stego, config_for(Method::LsbmrImproved, seed)) == payload);
  }
  std::set<int> baseline;
  for (std::uint64_t seed = 0; seed < 64; ++seed) baseline.insert(embed(cover, payload, config_for(Method::Lsbmr, seed))(43));
  CHECK(baseline == std::set<int>{99, 101});

  // Determined branch is identical to the baseline.
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    CHECK(embed_first_pair(Method::LsbmrImproved, 4, 7, 1, 0, seed) == std::pair{3, 7});
  }
}

TEST_CASE("round trip, distortion and LSB properties") {
  Rng rng(2718);
  for (int trial = 0; trial < 40; ++trial) {
    const int w = 6 + static_cast<int>(rng.below(20));
    const int h = 6 + static_cast<int>(rng.below(20));
    GrayImage cover = test::random_image(w, h, rng);
    if (trial % 10 == 0) cover.setZero();
    if (trial % 10 == 1) cover.setConstant(255);
    if (trial % 10 == 2) {
      for (Eigen::Index i = 0; i < cover.size(); ++i) cover(i) = rng.coin() ? 0 : 255;
    }
    const auto traversal = rng.coin() ? Traversal::Permuted : Traversal::Raster;
    const std::uint64_t seed = rng.next();
    for (const auto m : kAllMethods) {
      const auto capacity = capacity_bits(m, cover);
      const auto payload = test::random_bits(rng.below(capacity - 31), rng);
      const auto cfg = config_for(m, seed, traversal);
      const auto stego = embed(cover, payload, cfg);
      CAPTURE(to_string(m));
      CHECK(extract(stego, cfg) == payload);

      const Eigen::ArrayXXi diff = stego.cast<int>().array() - cover.cast<int>().array();
      CHECK(diff.abs().maxCoeff() <= 1);

      Rng order_rng(seed);
      const auto order = traversal_order(cover, traversal, order_rng);
      const auto framed = frame_bits(payload);
      if (!is_pair_method(m)) {
        for (std::size_t i = 0; i < framed.size(); ++i) CHECK((stego(order[i]) & 1) == framed[i]);
      } else {
        for (std::size_t p = 0; 2 * p < framed.size(); ++p) {
          const auto i1 = order[2 * p], i2 = order[2 * p + 1];
          const int changed = (stego(i1) != cover(i1)) + (stego(i2) != cover(i2));
          const bool saturated = cover(i1) == 0 || cover(i1) == 255;
          CHECK(changed <= (saturated ? 2 : 1));
        }
      }
      for (std::size_t i = framed.size() + (framed.size() % 2); i < order.size(); ++i) {
        CHECK(stego(order[i]) == cover(order[i]));
      }
    }
  }
}

TEST_CASE("improvement changes signs only") {
  Rng rng(31);
  for (int trial = 0; trial < 20; ++trial) {
    const auto cover = test::random_image(32, 32, rng);
    const auto payload = test::random_bits(900, rng);
    for (const auto [base, improved] : {std::pair{Method::Lsbm, Method::LsbmImproved},
                                        std::pair{Method::Lsbmr, Method::LsbmrImproved}}) {
      const auto a = embed(cover, payload, config_for(base, 5));
      const auto b = embed(cover, payload, config_for(improved, 5));
      CHECK(((a.array() != cover.array()) == (b.array() != cover.array())).all());
    }
  }
}

TEST_CASE("capacity and framing errors") {
  const GrayImage cover = GrayImage::Constant(6, 6, 10);
  const auto too_long = BitStream(std::vector<std::uint8_t>(5, 1));
  for (const auto m : kAllMethods) {
    try {
      embed(cover, too_long, config_for(m));
      FAIL("expected capacity error");
    } catch (const Error& e) {
      CHECK(e.category() == ErrorCategory::Capacity);
    }
  }
  // 5x7 = 35 pixels: lsbm fits 3 payload bits, lsbmr only 2.
  const GrayImage odd = GrayImage::Constant(5, 7, 10);
  CHECK_NOTHROW(embed(odd, BitStream(std::vector<std::uint8_t>(3, 1)), config_for(Method::Lsbm)));
  CHECK_THROWS_AS(embed(odd, BitStream(std::vector<std::uint8_t>(3, 1)), config_for(Method::Lsbmr)), Error);
  const auto stego = embed(odd, BitStream(std::vector<std::uint8_t>(2, 1)), config_for(Method::Lsbmr));
  CHECK(stego(34) == 10);  // trailing unpaired pixel untouched

  // Tampered prefix: declare more bits than the image holds.
  GrayImage tampered = embed(GrayImage::Constant(8, 8, 10), BitStream(std::vector<std::uint8_t>{1}),
                             config_for(Method::Lsbm));
  tampered(0) |= 1;
  try {
    extract(tampered, config_for(Method::Lsbm));
    FAIL("expected framing error");
  } catch (const Error& e) {
    CHECK(e.category() == ErrorCategory::Framing);
  }
  CHECK_THROWS_AS(extract(GrayImage::Zero(4, 4), config_for(Method::Lsbm)), Error);

  EmbedConfig wrong = config_for(Method::Lsbmr);
  Rng rng(1);
  CHECK_THROWS_AS(lsbm_embed(cover, BitStream{}, wrong, rng), Error);
  EmbedConfig negative = config_for(Method::LsbmImproved);
  negative.threshold = -1;
  CHECK_THROWS_AS(lsbm_improved_embed(cover, BitStream{}, negative, rng), Error);
}

TEST_CASE("change-rate statistics") {
  // 1024 x 1024 uniform cover and message: 2^20 embedded bits per method.
  Rng rng(1001);
  const auto cover = test::random_image(1024, 1024, rng);
  const auto payload = test::random_bits(cover.size() - 32, rng);
  const auto changed_fraction = [&](Method m) {
    const auto stego = embed(cover, payload, config_for(m, 77));
    return static_cast<double>((stego.array() != cover.array()).count()) / static_cast<double>(cover.size());
  };
  CHECK(std::abs(changed_fraction(Method::Lsbm) - 0.5) <= 0.005);
  CHECK(std::abs(changed_fraction(Method::Lsbmr) - 0.375) <= 0.005);
}
