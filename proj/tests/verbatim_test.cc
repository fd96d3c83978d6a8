// Copyright 2026 The longform Authors. All rights reserved.
// Use of this source code is governed by the Apache-2.0 license
// that can be found in the LICENSE file.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>
#include <sstream>

#include "doctest.h"
#include "longform/align.hpp"
#include "longform/verbatim.hpp"

using namespace longform;

namespace {

std::vector<std::string> words_of(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  std::string w;
  while (in >> w) out.push_back(w);
  return out;
}

Transcript transcript_of(const std::string& text) {
  Transcript t;
  double cur = 0.0;
  for (const auto& w : words_of(text)) {
    TimedWord tw;
    tw.text = w;
    tw.start_s = cur;
    tw.end_s = cur + 0.2;
    cur += 0.3;
    t.words.push_back(tw);
  }
  return t;
}

std::string join(const Transcript& t) {
  std::string s;
  for (const auto& w : t.words) {
    if (!s.empty()) s += " ";
    s += w.text;
  }
  return s;
}

const std::string kVerbatimRow =
    "and and if you if you try and understand which ones there are you it's "
    "it's a it's a long list";
const std::string kNonVerbatimRow =
    "and if you try and understand which ones there are it's a long list";

}  // namespace

TEST_CASE("detects stutters and phrase repeats") {
  auto spans = detect_disfluencies(words_of("and and if you if you try"));
  REQUIRE(spans.size() == 2);
  CHECK(spans[0].begin == 0);
  CHECK(spans[0].end == 1);
  CHECK(spans[0].category == DisfluencyCategory::kRepeatedWord);
  CHECK(spans[1].begin == 2);
  CHECK(spans[1].end == 4);
  CHECK(spans[1].category == DisfluencyCategory::kRepeatedPhrase);
}

TEST_CASE("detects filled pauses by lexicon") {
  auto spans = detect_disfluencies(words_of("um i think"));
  REQUIRE(spans.size() == 1);
  CHECK(spans[0].begin == 0);
  CHECK(spans[0].category == DisfluencyCategory::kFilledPause);
}

TEST_CASE("discourse markers are not disfluencies") {
  CHECK(detect_disfluencies(words_of("you know i like it")).empty());
  CHECK(detect_disfluencies(words_of("it was kind of sort of fine")).empty());
}

TEST_CASE("level 1.0 is the identity") {
  auto t = transcript_of(kVerbatimRow);
  auto out = apply_verbatimicity(t, 1.0);
  CHECK(join(out) == kVerbatimRow);
}

TEST_CASE("level 0.0 approaches the edited style") {
  auto t = transcript_of(kVerbatimRow);
  auto out = apply_verbatimicity(t, 0.0);
  auto ops = align_words(words_of(join(out)), words_of(kNonVerbatimRow));
  auto counts = count_ops(ops);
  CHECK(counts.errors() <= 2);
}

TEST_CASE("full removal of filled pauses and stutters") {
  auto t = transcript_of("um um hello");
  auto out = apply_verbatimicity(t, 0.0);
  REQUIRE(out.words.size() == 1);
  CHECK(out.words[0].text == "hello");
}

TEST_CASE("level 0 leaves no filler or stutter detectable") {
  std::mt19937 rng(3);
  std::vector<std::string> pool = {"um", "uh", "the",  "cat", "sat",
                                   "on", "a",  "mat", "dog", "ran"};
  for (int trial = 0; trial < 100; ++trial) {
    std::string text;
    int n = 1 + static_cast<int>(rng() % 15);
    for (int i = 0; i < n; ++i) {
      if (!text.empty()) text += " ";
      text += pool[rng() % pool.size()];
    }
    auto out = apply_verbatimicity(transcript_of(text), 0.0);
    std::vector<std::string> surviving;
    for (const auto& w : out.words) surviving.push_back(w.text);
    for (const auto& s : detect_disfluencies(surviving)) {
      CHECK(s.category != DisfluencyCategory::kFilledPause);
      CHECK(s.category != DisfluencyCategory::kRepeatedWord);
    }
  }
}

TEST_CASE("levels form a monotone family") {
  std::mt19937 rng(9);
  std::vector<std::string> pool = {"um", "uh", "well", "i", "i",    "went",
                                   "to", "to", "the",  "the", "store", "again"};
  const double levels[] = {0.0, 0.25, 0.5, 0.75, 1.0};
  for (int trial = 0; trial < 50; ++trial) {
    std::string text;
    int n = 1 + static_cast<int>(rng() % 20);
    for (int i = 0; i < n; ++i) {
      if (!text.empty()) text += " ";
      text += pool[rng() % pool.size()];
    }
    Transcript t = transcript_of(text);
    std::vector<std::vector<std::string>> outputs;
    for (double level : levels)
      outputs.push_back(words_of(join(apply_verbatimicity(t, level))));
    for (size_t i = 0; i + 1 < outputs.size(); ++i) {
      // lower level output is a subsequence of the higher level output
      size_t j = 0;
      for (const auto& w : outputs[i + 1]) {
        if (j < outputs[i].size() && outputs[i][j] == w) ++j;
      }
      CHECK(j == outputs[i].size());
    }
  }
}

TEST_CASE("surviving words keep order and times") {
  auto t = transcript_of("um the the cat");
  auto out = apply_verbatimicity(t, 0.0);
  REQUIRE(out.words.size() == 2);
  CHECK(out.words[0].text == "the");
  CHECK(*out.words[0].start_s == doctest::Approx(0.6));  // third input word
  CHECK(out.words[1].text == "cat");
  CHECK(*out.words[1].start_s == doctest::Approx(0.9));
}

TEST_CASE("level bounds are enforced") {
  auto t = transcript_of("hello");
  CHECK_THROWS_AS(apply_verbatimicity(t, -0.1), std::invalid_argument);
  CHECK_THROWS_AS(apply_verbatimicity(t, 1.1), std::invalid_argument);
}

TEST_CASE("detection works on the original-cased transcript") {
  auto t = transcript_of("Um, the THE cat");
  auto out = apply_verbatimicity(t, 0.0);
  REQUIRE(out.words.size() == 2);
  CHECK(out.words[0].text == "THE");
  CHECK(out.words[1].text == "cat");
}
