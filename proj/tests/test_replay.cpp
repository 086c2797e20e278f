/*
 * Copyright 2026 socsum contributors.
 *
 * Licensed under the terms of the Apache 2.0 License.
 * See LICENSE file in the project root for terms.
 */

#include <catch2/catch_amalgamated.hpp>

#include "socsum/replay.hpp"
#include "support.hpp"

using namespace socsum;
using Catch::Approx;

namespace {

// Alternating-row pattern: distinctive, high variance, mean 128.
void push_logo(FrameSequence& seq) {
  const VideoConfig& cfg = seq.config();
  std::vector<std::uint8_t> buf(frame_bytes(cfg));
  std::fill(buf.begin(), buf.end(), static_cast<std::uint8_t>(128));
  for (int r = 0; r < cfg.height; ++r) {
    std::uint8_t v = (r % 2 == 0) ? 64 : 192;
    std::fill_n(buf.begin() + static_cast<std::ptrdiff_t>(r) * cfg.width, cfg.width, v);
  }
  seq.push_frame(buf.data(), buf.size());
}

LogoTemplate flat_template(int w, int h, float value) {
  LogoTemplate t;
  t.width = w;
  t.height = h;
  t.px.assign(static_cast<std::size_t>(w) * h, value);
  return t;
}

std::vector<std::int64_t> collapse_runs(const std::vector<char>& hit) {
  std::vector<std::int64_t> out;
  for (std::size_t f = 0; f < hit.size(); ++f)
    if (hit[f] && (f == 0 || !hit[f - 1])) out.push_back(static_cast<std::int64_t>(f));
  return out;
}

}  // namespace

TEST_CASE("frame luma stats give mean and population variance per frame") {
  auto seq = testsupport::make_seq(32, 16);
  testsupport::push_flat(seq, 100);
  testsupport::push_flat(seq, 0);
  // third frame: top half 0, bottom half 200
  {
    const VideoConfig& cfg = seq.config();
    std::vector<std::uint8_t> buf(frame_bytes(cfg), 0);
    std::fill(buf.begin() + static_cast<std::ptrdiff_t>(cfg.width) * (cfg.height / 2),
              buf.begin() + static_cast<std::ptrdiff_t>(cfg.width) * cfg.height,
              static_cast<std::uint8_t>(200));
    seq.push_frame(buf.data(), buf.size());
  }
  LumaSequence luma(seq);
  FrameStats st = frame_luma_stats(luma);
  REQUIRE(st.mean.size() == 3);
  CHECK(st.mean[0] == Approx(100.0));
  CHECK(st.variance[0] == Approx(0.0).margin(1e-12));
  CHECK(st.mean[2] == Approx(100.0));
  CHECK(st.variance[2] == Approx(10000.0));

  FrameStats st3 = frame_luma_stats(luma, 3);
  CHECK(st3.mean == st.mean);
  CHECK(st3.variance == st.variance);
}

TEST_CASE("logo candidates are luma jumps plus boundary neighborhoods") {
  FrameStats st;
  st.mean = {100, 100, 109, 100, 95, 95, 95, 95, 95, 95};
  st.variance.assign(st.mean.size(), 0.0);
  // jumps: |109-100| = 9 at frame 2, |100-109| = 9 at frame 3; the 5 at
  // frame 4 stays under the threshold
  CHECK(logo_candidates(st, {}, 8.0) == std::vector<std::int64_t>{2, 3});
  // a jump of exactly the threshold does not nominate
  CHECK(logo_candidates(st, {}, 9.0).empty());
  // boundaries contribute a clipped two-frame halo
  CHECK(logo_candidates(st, {0}, 1000.0) == std::vector<std::int64_t>{0, 1, 2});
  CHECK(logo_candidates(st, {9}, 1000.0) == std::vector<std::int64_t>{7, 8, 9});
  // union is sorted and duplicate-free
  CHECK(logo_candidates(st, {1, 3}, 8.0) == std::vector<std::int64_t>{0, 1, 2, 3, 4, 5});
}

TEST_CASE("template matching uses strict mean absolute difference") {
  auto seq = testsupport::make_seq(16, 12);
  testsupport::push_flat(seq, 112);
  testsupport::push_flat(seq, 111);
  testsupport::push_flat(seq, 111);
  testsupport::push_flat(seq, 112);
  testsupport::push_flat(seq, 111);
  LumaSequence luma(seq);
  LogoTemplate tmpl = flat_template(16, 12, 100.0f);

  CHECK(template_mad(tmpl, luma.frame(0)) == Approx(12.0));
  CHECK(template_mad(tmpl, luma.frame(1)) == Approx(11.0));

  // MAD of exactly the threshold is not a match; runs collapse to their
  // first frame
  CHECK(match_logo(tmpl, luma, 12.0) == std::vector<std::int64_t>{1, 4});
  CHECK(match_logo(tmpl, luma, 12.5) == std::vector<std::int64_t>{0});

  LogoTemplate wrong = flat_template(8, 12, 100.0f);
  CHECK_THROWS_AS(template_mad(wrong, luma.frame(0)), analysis_error);
}

TEST_CASE("match_logo equals a direct threshold scan with run collapse") {
  testsupport::Rng rng(1213);
  for (int iter = 0; iter < 20; ++iter) {
    auto seq = testsupport::make_seq(12, 8);
    int n = testsupport::rand_int(rng, 5, 40);
    for (int i = 0; i < n; ++i)
      testsupport::push_flat(seq, testsupport::rand_int(rng, 90, 115), 6, &rng);
    LumaSequence luma(seq);
    LogoTemplate tmpl = flat_template(12, 8, static_cast<float>(testsupport::rand_int(rng, 95, 110)));
    double tau = testsupport::rand_real(rng, 2.0, 14.0);

    std::vector<char> hit(static_cast<std::size_t>(n), 0);
    for (int f = 0; f < n; ++f)
      if (template_mad(tmpl, luma.frame(f)) < tau) hit[static_cast<std::size_t>(f)] = 1;
    auto expect = collapse_runs(hit);

    CHECK(match_logo(tmpl, luma, tau) == expect);
    CHECK(match_logo(tmpl, luma, tau, 3) == expect);

    // a looser threshold can only add matched frames
    std::vector<char> hit2(static_cast<std::size_t>(n), 0);
    for (int f = 0; f < n; ++f)
      if (template_mad(tmpl, luma.frame(f)) < tau + 3.0) hit2[static_cast<std::size_t>(f)] = 1;
    for (int f = 0; f < n; ++f)
      if (hit[static_cast<std::size_t>(f)]) CHECK(hit2[static_cast<std::size_t>(f)]);
  }
}

TEST_CASE("the tightest candidate cluster becomes the template") {
  auto seq = testsupport::make_seq(16, 12);
  for (int i = 0; i < 26; ++i) {
    if (i == 2 || i == 10 || i == 18)
      push_logo(seq);
    else if (i < 2)
      testsupport::push_flat(seq, 90);
    else if (i < 10)
      testsupport::push_flat(seq, 100);
    else if (i < 18)
      testsupport::push_flat(seq, 110);
    else
      testsupport::push_flat(seq, 95);
  }
  LumaSequence luma(seq);
  FrameStats st = frame_luma_stats(luma);
  auto cand = logo_candidates(st, {}, 8.0);
  // every logo entry and exit jumps
  CHECK(cand == std::vector<std::int64_t>{2, 3, 10, 11, 18, 19});

  auto tmpl = discover_logo_template(cand, luma, 4);
  REQUIRE(tmpl.has_value());
  CHECK(tmpl->members == std::vector<std::int64_t>{2, 10, 18});
  CHECK(tmpl->width == 16);
  CHECK(tmpl->height == 12);
  // pixel mean of identical members is the pattern itself
  CHECK(tmpl->px[0] == 64.0f);
  CHECK(tmpl->px[static_cast<std::size_t>(16)] == 192.0f);

  CHECK(match_logo(*tmpl, luma, 12.0) == std::vector<std::int64_t>{2, 10, 18});

  CHECK_FALSE(discover_logo_template({}, luma, 4).has_value());
  CHECK_THROWS_AS(discover_logo_template(cand, luma, 0), analysis_error);

  // a lone candidate still yields a usable single-frame template
  auto solo = discover_logo_template({2}, luma, 4);
  REQUIRE(solo.has_value());
  CHECK(solo->members == std::vector<std::int64_t>{2});
  CHECK(solo->px[0] == 64.0f);
}

TEST_CASE("logo pairing is greedy earliest-first with an inclusive gap window") {
  Rational fps{25, 1};

  auto iv = pair_logos({250, 300, 1000}, fps, 2.0, 60.0);
  REQUIRE(iv.size() == 1);
  CHECK(iv[0].start_frame == 250);
  CHECK(iv[0].end_frame == 300);

  // 0 pairs with 75; 125 is then alone
  iv = pair_logos({0, 75, 125}, fps, 2.0, 60.0);
  REQUIRE(iv.size() == 1);
  CHECK(iv[0].start_frame == 0);
  CHECK(iv[0].end_frame == 75);

  // both window edges are inclusive
  CHECK(pair_logos({0, 50}, fps, 2.0, 60.0).size() == 1);
  CHECK(pair_logos({0, 49}, fps, 2.0, 60.0).empty());
  CHECK(pair_logos({0, 1500}, fps, 2.0, 60.0).size() == 1);
  CHECK(pair_logos({0, 1501}, fps, 2.0, 60.0).empty());

  // consumed closers cannot reopen; intervals stay disjoint
  iv = pair_logos({0, 50, 75, 125}, fps, 2.0, 60.0);
  REQUIRE(iv.size() == 2);
  CHECK(iv[0].end_frame == 50);
  CHECK(iv[1].start_frame == 75);
  CHECK(iv[1].end_frame == 125);

  CHECK(pair_logos({}, fps, 2.0, 60.0).empty());
  CHECK_THROWS_AS(pair_logos({0}, fps, -1.0, 60.0), analysis_error);
  CHECK_THROWS_AS(pair_logos({0}, fps, 5.0, 2.0), analysis_error);
}

TEST_CASE("single-logo spans merge when they touch") {
  Rational fps{25, 1};
  auto iv = single_logo_intervals({250, 300}, fps, 10.0, 10000);
  REQUIRE(iv.size() == 1);
  CHECK(iv[0].start_frame == 250);
  CHECK(iv[0].end_frame == 550);

  // an occurrence at the exact end of the previous span still merges
  iv = single_logo_intervals({0, 250}, fps, 10.0, 10000);
  REQUIRE(iv.size() == 1);
  CHECK(iv[0].end_frame == 500);

  iv = single_logo_intervals({0, 600}, fps, 10.0, 700);
  REQUIRE(iv.size() == 2);
  CHECK(iv[0].end_frame == 250);
  CHECK(iv[1].start_frame == 600);
  CHECK(iv[1].end_frame == 700);  // clipped at the stream end

  // a degenerate span still covers one frame
  iv = single_logo_intervals({40}, fps, 0.001, 100);
  REQUIRE(iv.size() == 1);
  CHECK(iv[0].end_frame == 41);
}

TEST_CASE("replay flags use strict half-open overlap") {
  std::vector<Shot> shots{{0, 0, 50}, {1, 50, 100}, {2, 100, 130}};
  std::vector<ReplayInterval> ivs{{2, 60}};
  auto flags = replay_flags_for_shots(shots, ivs);
  REQUIRE(flags.size() == 3);
  CHECK(flags[0]);
  CHECK(flags[1]);
  CHECK_FALSE(flags[2]);

  // touching at a boundary is not overlap
  CHECK_FALSE(interval_overlaps_shot({50, 60}, shots[0]));
  CHECK(interval_overlaps_shot({49, 50}, shots[0]));
  CHECK_FALSE(replay_flags_for_shots(shots, {})[0]);
}

TEST_CASE("end-to-end replay detection pairs discovered logo showings") {
  auto seq = testsupport::make_seq(16, 12);
  for (int i = 0; i < 130; ++i) {
    if (i == 2 || i == 60 || i == 120)
      push_logo(seq);
    else if (i < 2)
      testsupport::push_flat(seq, 90);
    else if (i < 60)
      testsupport::push_flat(seq, 100);
    else if (i < 120)
      testsupport::push_flat(seq, 110);
    else
      testsupport::push_flat(seq, 95);
  }
  LumaSequence luma(seq);
  FrameStats st = frame_luma_stats(luma);
  ReplayParams params;
  Rational fps{25, 1};

  auto analysis = detect_replays(luma, st, {}, fps, params, std::nullopt);
  REQUIRE(analysis.tmpl.has_value());
  CHECK(analysis.occurrences == std::vector<std::int64_t>{2, 60, 120});
  // 2 -> 60 is 2.32 s, inside the window; 120 finds no partner
  REQUIRE(analysis.intervals.size() == 1);
  CHECK(analysis.intervals[0].start_frame == 2);
  CHECK(analysis.intervals[0].end_frame == 60);

  // a caller-provided template skips discovery
  LogoTemplate user = flat_template(16, 12, 100.0f);
  auto direct = detect_replays(luma, st, {}, fps, params, user);
  CHECK(direct.tmpl->members.empty());
  // every flat-100 frame matches the flat template; the long run collapses
  CHECK_FALSE(direct.occurrences.empty());

  // single-logo mode opens a fixed span per occurrence
  ReplayParams single = params;
  single.single_logo = true;
  single.single_logo_span_s = 2.0;
  auto sl = detect_replays(luma, st, {}, fps, single, std::nullopt);
  REQUIRE(sl.intervals.size() == 3);
  CHECK(sl.intervals[0].start_frame == 2);
  CHECK(sl.intervals[0].end_frame == 52);
  CHECK(sl.intervals[2].end_frame == 130);  // clipped at the stream end
}
