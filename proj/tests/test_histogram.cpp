/*
 * Copyright 2026 socsum contributors.
 *
 * Licensed under the terms of the Apache 2.0 License.
 * See LICENSE file in the project root for terms.
 */

#include <catch2/catch_amalgamated.hpp>

#include "socsum/histogram.hpp"
#include "support.hpp"

using namespace socsum;
using Catch::Approx;

TEST_CASE("luma histogram buckets at 4 values per bin") {
  auto seq = testsupport::make_seq(16, 8);
  testsupport::push_flat(seq, 3);
  testsupport::push_flat(seq, 4);
  testsupport::push_flat(seq, 255);
  auto h0 = luma_histogram(seq.frame(0).plane[0], 64);
  auto h1 = luma_histogram(seq.frame(1).plane[0], 64);
  auto h2 = luma_histogram(seq.frame(2).plane[0], 64);
  CHECK(h0[0] == 128);  // raw counts, 16x8 pixels
  CHECK(h1[0] == 0);
  CHECK(h1[1] == 128);
  CHECK(h2[63] == 128);
  CHECK_THROWS_AS(luma_histogram(seq.frame(0).plane[0], 60), analysis_error);
}

TEST_CASE("histogram normalization sums to one") {
  std::vector<std::int64_t> counts{2, 6, 0, 8};
  std::vector<double> h = normalize_histogram(counts);
  CHECK(h[0] == Approx(0.125));
  CHECK(h[1] == Approx(0.375));
  CHECK(h[3] == Approx(0.5));
  CHECK_THROWS_AS(normalize_histogram({0, 0}), analysis_error);
}

TEST_CASE("chi-square distance on frozen cases") {
  // identical distributions
  std::vector<double> a{0.25, 0.25, 0.5};
  CHECK(chi_square_distance(a, a) == 0.0);

  // disjoint support: 0.5 * (sum a + sum b) = 1 for normalized inputs
  std::vector<double> d1{1.0, 0.0};
  std::vector<double> d2{0.0, 1.0};
  CHECK(chi_square_distance(d1, d2) == Approx(1.0));

  // hand-evaluated: 0.5 * ((0.25^2)/0.75 + (0.25^2)/1.25) = 1/15
  std::vector<double> p{0.5, 0.5};
  std::vector<double> q{0.25, 0.75};
  CHECK(chi_square_distance(p, q) == Approx(1.0 / 15.0));

  CHECK_THROWS_AS(chi_square_distance(p, a), analysis_error);
  CHECK_THROWS_AS(chi_square_distance({}, {}), analysis_error);
}

TEST_CASE("chi-square distance matches the direct formula on random data") {
  testsupport::Rng rng(21);
  for (int iter = 0; iter < 500; ++iter) {
    std::vector<double> a(64), b(64);
    for (int i = 0; i < 64; ++i) {
      a[i] = testsupport::rand_real(rng, 0.0, 1.0);
      b[i] = testsupport::rand_real(rng, 0.0, 1.0);
      if (testsupport::rand_int(rng, 0, 4) == 0) a[i] = 0.0;
      if (testsupport::rand_int(rng, 0, 4) == 0) b[i] = 0.0;
    }
    CHECK(chi_square_distance(a, b) ==
          Approx(testsupport::oracle_chi_square(a, b)).margin(1e-12));
  }
}

TEST_CASE("chi-square distance is a bounded symmetric dissimilarity") {
  testsupport::Rng rng(22);
  for (int iter = 0; iter < 500; ++iter) {
    std::vector<double> a(16), b(16);
    double sa = 0.0, sb = 0.0;
    for (int i = 0; i < 16; ++i) {
      a[i] = testsupport::rand_real(rng, 0.0, 1.0);
      b[i] = testsupport::rand_real(rng, 0.0, 1.0);
      sa += a[i];
      sb += b[i];
    }
    for (int i = 0; i < 16; ++i) {
      a[i] /= sa;
      b[i] /= sb;
    }
    double d = chi_square_distance(a, b);
    CHECK(d >= 0.0);
    CHECK(d <= 1.0 + 1e-12);  // normalized inputs
    CHECK(d == Approx(chi_square_distance(b, a)));
  }
}

TEST_CASE("hsv histogram is 16x4x4 and localizes pure colors") {
  auto red = testsupport::solid_rgb(8, 8, 255, 0, 0);
  auto hist = hsv_histogram(red);
  REQUIRE(hist.size() == 256);
  double total = 0.0;
  for (double v : hist) total += v;
  CHECK(total == Approx(1.0));
  // H=0 -> bin 0, S=1 -> bin 3, V=1 -> bin 3
  CHECK(hist[0 * 16 + 3 * 4 + 3] == Approx(1.0));

  // cyan sits at H=180: bin 8 of 16
  auto cyan = testsupport::solid_rgb(8, 8, 0, 255, 255);
  auto hist2 = hsv_histogram(cyan);
  CHECK(hist2[8 * 16 + 3 * 4 + 3] == Approx(1.0));

  // black has V=0 (S treated as 0)
  auto black = testsupport::solid_rgb(8, 8, 0, 0, 0);
  auto hist3 = hsv_histogram(black);
  CHECK(hist3[0] == Approx(1.0));
}
