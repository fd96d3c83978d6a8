// Copyright 2026 The longform Authors. All rights reserved.
// Use of this source code is governed by the Apache-2.0 license
// that can be found in the LICENSE file.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <cmath>
#include <cstring>
#include <random>

#include "doctest.h"
#include "longform/attribute.hpp"
#include "longform/io.hpp"

using namespace longform;

namespace {

std::string rvbp_bytes(uint32_t t, uint32_t v, uint32_t frame_us,
                       const std::vector<float>& values) {
  std::string b = "RVBP";
  auto u32 = [&](uint32_t x) {
    for (int i = 0; i < 4; ++i) b.push_back(static_cast<char>((x >> (8 * i)) & 0xff));
  };
  u32(1);
  u32(t);
  u32(v);
  u32(frame_us);
  size_t off = b.size();
  b.resize(off + values.size() * 4);
  std::memcpy(b.data() + off, values.data(), values.size() * 4);
  return b;
}

float ln(double x) { return static_cast<float>(std::log(x)); }

}  // namespace

TEST_CASE("read_posteriors accepts a normalized matrix") {
  auto bytes = rvbp_bytes(2, 2, 40000, {ln(.5), ln(.5), ln(.9), ln(.1)});
  LogPosteriors p = read_posteriors(bytes);
  CHECK(p.frames() == 2);
  CHECK(p.vocab_size() == 2);
  CHECK(p.frame_duration_s == doctest::Approx(0.04));
  CHECK(p.values(1, 0) == doctest::Approx(std::log(0.9)));
}

TEST_CASE("read_posteriors rejects a non-normalized row") {
  auto bytes = rvbp_bytes(1, 2, 40000, {ln(.9), ln(.9)});
  CHECK_THROWS_WITH_AS(read_posteriors(bytes),
                       doctest::Contains("frame 0"), std::invalid_argument);
}

TEST_CASE("read_posteriors reports the first offending frame") {
  auto bytes = rvbp_bytes(3, 2, 40000,
                          {ln(.5), ln(.5), ln(.7), ln(.7), ln(.8), ln(.8)});
  CHECK_THROWS_WITH_AS(read_posteriors(bytes),
                       doctest::Contains("frame 1"), std::invalid_argument);
}

TEST_CASE("read_posteriors rejects bad magic and truncation") {
  CHECK_THROWS_WITH_AS(read_posteriors(""), doctest::Contains("magic"),
                       ParseError);
  CHECK_THROWS_WITH_AS(read_posteriors("XXXXgarbage..."),
                       doctest::Contains("magic"), ParseError);
  auto bytes = rvbp_bytes(2, 2, 40000, {ln(.5), ln(.5), ln(.9), ln(.1)});
  bytes.resize(bytes.size() - 3);
  CHECK_THROWS_WITH_AS(read_posteriors(bytes), doctest::Contains("truncated"),
                       ParseError);
}

TEST_CASE("RVBP round-trip is byte-stable") {
  auto bytes = rvbp_bytes(2, 3, 10000,
                          {ln(.2), ln(.3), ln(.5), ln(.9), ln(.05), ln(.05)});
  auto once = write_posteriors(read_posteriors(bytes));
  auto twice = write_posteriors(read_posteriors(once));
  CHECK(once == twice);
  CHECK(once == bytes);
}

TEST_CASE("parse_ctm basic record") {
  Transcript t = parse_ctm("f1 1 0.50 0.30 hello\n");
  REQUIRE(t.words.size() == 1);
  CHECK(t.file_id == "f1");
  CHECK(t.words[0].text == "hello");
  CHECK(*t.words[0].start_s == doctest::Approx(0.50));
  CHECK(*t.words[0].end_s == doctest::Approx(0.80));
}

TEST_CASE("parse_ctm skips comments and keeps confidence optional") {
  Transcript t = parse_ctm(";; a comment\nf1 1 0.0 0.5 hi 0.98\n");
  REQUIRE(t.words.size() == 1);
  CHECK(parse_ctm(";; comment only\n").words.empty());
}

TEST_CASE("parse_ctm errors carry line numbers") {
  CHECK_THROWS_WITH_AS(parse_ctm("f1 1 0.50 -1 x\n"),
                       doctest::Contains("line 1"), ParseError);
  CHECK_THROWS_WITH_AS(parse_ctm("f1 1 0.5 0.5 a\nf1 1 oops\n"),
                       doctest::Contains("line 2"), ParseError);
}

TEST_CASE("CTM round-trip is byte-stable") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> ts(0.0, 100.0);
  Transcript t;
  t.file_id = "file7";
  double cur = 0;
  for (int i = 0; i < 50; ++i) {
    TimedWord w;
    w.text = "w" + std::to_string(rng() % 30);
    cur += ts(rng) / 50;
    w.start_s = cur;
    w.end_s = cur + 0.25;
    t.words.push_back(w);
  }
  std::string once = format_ctm(t);
  std::string twice = format_ctm(parse_ctm(once));
  CHECK(once == twice);
}

TEST_CASE("parse_rttm reads SPEAKER records and skips others") {
  auto segs = parse_rttm(
      "SPEAKER f1 1 0.50 1.20 <NA> <NA> spk0 <NA> <NA>\n"
      "LEXEME f1 1 0.50 0.20 hello lexeme spk0 <NA> <NA>\n");
  REQUIRE(segs.size() == 1);
  CHECK(segs[0].speaker == "spk0");
  CHECK(segs[0].start_s == doctest::Approx(0.50));
  CHECK(segs[0].end_s == doctest::Approx(1.70));
  CHECK(parse_rttm("").empty());
}

TEST_CASE("parse_rttm rejects malformed SPEAKER lines") {
  CHECK_THROWS_WITH_AS(parse_rttm("SPEAKER f1 1 x y <NA> <NA> a <NA> <NA>\n"),
                       doctest::Contains("line 1"), ParseError);
  CHECK_THROWS_WITH_AS(parse_rttm("SPEAKER f1 1\n"), doctest::Contains("line 1"),
                       ParseError);
}

TEST_CASE("RTTM round-trip is byte-stable") {
  std::string text =
      "SPEAKER f1 1 0.500 1.200 <NA> <NA> spk0 <NA> <NA>\n"
      "SPEAKER f1 1 1.700 2.000 <NA> <NA> spk1 <NA> <NA>\n";
  auto once = format_rttm(parse_rttm(text));
  auto twice = format_rttm(parse_rttm(once));
  CHECK(once == twice);
  CHECK(once == text);
}

TEST_CASE("transcript document round-trip") {
  Transcript t;
  t.file_id = "f9";
  t.words.push_back({"hello", 0.0, 0.4, std::string("A")});
  t.words.push_back({"there", {}, {}, {}});
  std::string doc = format_transcript_doc(t);
  Transcript u = parse_transcript_doc(doc);
  CHECK(u.file_id == "f9");
  REQUIRE(u.words.size() == 2);
  CHECK(u.words[0].speaker == std::string("A"));
  CHECK(!u.words[1].start_s.has_value());
  CHECK(format_transcript_doc(u) == doc);
}

TEST_CASE("attribute_speakers picks maximal overlap") {
  Transcript t;
  t.file_id = "f";
  t.words.push_back({"w", 1.0, 1.5, {}});
  std::vector<SpeakerSegment> segs = {{"f", "A", 0.0, 1.2}, {"f", "B", 1.2, 3.0}};
  // overlap A = 0.2, B = 0.3
  Transcript out = attribute_speakers(t, segs);
  CHECK(out.words[0].speaker == std::string("B"));
}

TEST_CASE("attribute_speakers word inside a single segment") {
  Transcript t;
  t.words.push_back({"w", 2.0, 2.5, {}});
  Transcript out = attribute_speakers(t, {{"f", "A", 1.0, 4.0}});
  CHECK(out.words[0].speaker == std::string("A"));
}

TEST_CASE("attribute_speakers policies for uncovered words") {
  Transcript t;
  t.words.push_back({"a", 0.0, 1.0, {}});
  t.words.push_back({"b", 5.0, 6.0, {}});
  std::vector<SpeakerSegment> segs = {{"f", "A", 0.0, 1.0}};
  auto inherit = attribute_speakers(t, segs, UnattributedPolicy::kInherit);
  CHECK(inherit.words[1].speaker == std::string("A"));
  auto unknown = attribute_speakers(t, segs, UnattributedPolicy::kLabelUnknown);
  CHECK(unknown.words[1].speaker == std::string("unknown"));
}

TEST_CASE("attribute_speakers requires times") {
  Transcript t;
  t.words.push_back({"a", {}, {}, {}});
  CHECK_THROWS_AS(attribute_speakers(t, {}), std::invalid_argument);
}

TEST_CASE("attribute_speakers is segment-order invariant and preserves words") {
  std::mt19937 rng(11);
  Transcript t;
  double cur = 0;
  for (int i = 0; i < 40; ++i) {
    cur += 0.3;
    t.words.push_back({"w" + std::to_string(i), cur, cur + 0.25, {}});
  }
  std::vector<SpeakerSegment> segs;
  for (int i = 0; i < 8; ++i)
    segs.push_back({"f", "S" + std::to_string(i % 3), i * 1.7, i * 1.7 + 1.9});
  auto a = attribute_speakers(t, segs);
  for (int trial = 0; trial < 20; ++trial) {
    std::shuffle(segs.begin(), segs.end(), rng);
    auto b = attribute_speakers(t, segs);
    REQUIRE(b.words.size() == a.words.size());
    for (size_t i = 0; i < a.words.size(); ++i) {
      CHECK(b.words[i].speaker == a.words[i].speaker);
      CHECK(b.words[i].text == t.words[i].text);
      CHECK(b.words[i].start_s == t.words[i].start_s);
    }
  }
}
