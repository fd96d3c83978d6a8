// Copyright 2026 The longform Authors. All rights reserved.
// Use of this source code is governed by the Apache-2.0 license
// that can be found in the LICENSE file.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <functional>
#include <random>

#include "doctest.h"
#include "longform/wder.hpp"

using namespace longform;

namespace {

Transcript labeled(const std::vector<std::string>& words,
                   const std::vector<std::string>& speakers) {
  Transcript t;
  t.file_id = "f";
  for (size_t i = 0; i < words.size(); ++i) {
    TimedWord w;
    w.text = words[i];
    if (i < speakers.size() && !speakers[i].empty()) w.speaker = speakers[i];
    t.words.push_back(w);
  }
  return t;
}

std::vector<AlignmentOp> all_correct(size_t n) {
  std::vector<AlignmentOp> ops;
  for (size_t i = 0; i < n; ++i)
    ops.push_back({EditKind::kCorrect, static_cast<int>(i),
                   static_cast<int>(i)});
  return ops;
}

}  // namespace

TEST_CASE("perfect correspondence maps cleanly") {
  auto ref = labeled({"x", "y", "z"}, {"A", "A", "B"});
  auto hyp = labeled({"x", "y", "z"}, {"1", "1", "2"});
  auto ops = all_correct(3);
  auto map = optimal_speaker_map(ops, ref, hyp);
  CHECK(map.at("1") == "A");
  CHECK(map.at("2") == "B");
  auto score = compute_wder(ops, ref, hyp, map);
  CHECK(score.eligible_words == 3);
  CHECK(score.speaker_errors == 0);
  CHECK(score.wder == 0.0);
}

TEST_CASE("merged hypothesis speaker pays one error") {
  auto ref = labeled({"x", "y", "z"}, {"A", "A", "B"});
  auto hyp = labeled({"x", "y", "z"}, {"1", "1", "1"});
  auto ops = all_correct(3);
  auto map = optimal_speaker_map(ops, ref, hyp);
  CHECK(map.at("1") == "A");
  auto score = compute_wder(ops, ref, hyp, map);
  CHECK(score.speaker_errors == 1);
  CHECK(score.wder == doctest::Approx(1.0 / 3));
}

TEST_CASE("label swap changes nothing") {
  auto ref = labeled({"x", "y", "z"}, {"A", "A", "B"});
  auto hyp = labeled({"x", "y", "z"}, {"2", "2", "1"});
  auto ops = all_correct(3);
  auto map = optimal_speaker_map(ops, ref, hyp);
  CHECK(map.at("2") == "A");
  CHECK(map.at("1") == "B");
  CHECK(compute_wder(ops, ref, hyp, map).wder == 0.0);
}

TEST_CASE("all-mismatch scores one") {
  auto ref = labeled({"x", "y"}, {"A", "B"});
  auto hyp = labeled({"x", "y"}, {"1", "2"});
  SpeakerMapping crossed = {{"1", "B"}, {"2", "A"}};
  auto score = compute_wder(all_correct(2), ref, hyp, crossed);
  CHECK(score.wder == 1.0);
}

TEST_CASE("insertions and deletions never matter") {
  auto ref = labeled({"x", "y", "q"}, {"A", "B", "A"});
  auto hyp = labeled({"x", "y", "extra"}, {"1", "2", "9"});
  std::vector<AlignmentOp> ops = {
      {EditKind::kCorrect, 0, 0},
      {EditKind::kCorrect, 1, 1},
      {EditKind::kDeletion, 2, -1},
      {EditKind::kInsertion, -1, 2},
  };
  auto map = optimal_speaker_map(ops, ref, hyp);
  auto score = compute_wder(ops, ref, hyp, map);
  CHECK(score.eligible_words == 2);
  CHECK(score.speaker_errors == 0);
}

TEST_CASE("unlabeled words are excluded and reported") {
  auto ref = labeled({"x", "y"}, {"A", ""});
  auto hyp = labeled({"x", "y"}, {"1", "1"});
  auto ops = all_correct(2);
  auto score = compute_wder(ops, ref, hyp, optimal_speaker_map(ops, ref, hyp));
  CHECK(score.eligible_words == 1);
  CHECK(score.unlabeled_words == 1);
}

TEST_CASE("zero eligible words is an error") {
  auto ref = labeled({"x"}, {""});
  auto hyp = labeled({"x"}, {"1"});
  CHECK_THROWS_AS(optimal_speaker_map(all_correct(1), ref, hyp),
                  std::invalid_argument);
  CHECK_THROWS_AS(compute_wder(all_correct(1), ref, hyp, {}),
                  std::invalid_argument);
}

TEST_CASE("mapping must be injective") {
  auto ref = labeled({"x", "y"}, {"A", "A"});
  auto hyp = labeled({"x", "y"}, {"1", "2"});
  SpeakerMapping many_to_one = {{"1", "A"}, {"2", "A"}};
  CHECK_THROWS_AS(compute_wder(all_correct(2), ref, hyp, many_to_one),
                  std::invalid_argument);
}

TEST_CASE("permutation invariance under hypothesis relabeling") {
  std::mt19937 rng(8);
  for (int trial = 0; trial < 100; ++trial) {
    int n = 5 + static_cast<int>(rng() % 30);
    int nref = 2 + static_cast<int>(rng() % 4);
    int nhyp = 2 + static_cast<int>(rng() % 4);
    std::vector<std::string> words, rs, hs;
    for (int i = 0; i < n; ++i) {
      words.push_back("w" + std::to_string(i));
      rs.push_back("R" + std::to_string(rng() % nref));
      hs.push_back("H" + std::to_string(rng() % nhyp));
    }
    auto ref = labeled(words, rs);
    auto hyp = labeled(words, hs);
    auto ops = all_correct(n);
    auto base = compute_wder(ops, ref, hyp, optimal_speaker_map(ops, ref, hyp));

    std::vector<int> perm(nhyp);
    for (int i = 0; i < nhyp; ++i) perm[i] = i;
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<std::string> hs2;
    for (const auto& h : hs)
      hs2.push_back("P" + std::to_string(perm[h[1] - '0']));
    auto hyp2 = labeled(words, hs2);
    auto relabeled =
        compute_wder(ops, ref, hyp2, optimal_speaker_map(ops, ref, hyp2));
    CHECK(relabeled.speaker_errors == base.speaker_errors);
    CHECK(relabeled.wder == base.wder);
  }
}

TEST_CASE("exhaustive and assignment mappings agree") {
  std::mt19937 rng(15);
  for (int trial = 0; trial < 60; ++trial) {
    int n = 20 + static_cast<int>(rng() % 60);
    int nref = 2 + static_cast<int>(rng() % 6);
    int nhyp = 2 + static_cast<int>(rng() % 6);
    std::vector<std::string> words, rs, hs;
    for (int i = 0; i < n; ++i) {
      words.push_back("w");
      rs.push_back("R" + std::to_string(rng() % nref));
      hs.push_back("H" + std::to_string(rng() % nhyp));
    }
    auto ref = labeled(words, rs);
    auto hyp = labeled(words, hs);
    auto ops = all_correct(n);
    // the production routine (exhaustive at these sizes) vs a brute-force
    // score over every injective map, evaluated through compute_wder
    auto map = optimal_speaker_map(ops, ref, hyp);
    auto best = compute_wder(ops, ref, hyp, map);

    // brute force over injective maps hyp -> ref
    std::vector<std::string> rl, hl;
    for (int i = 0; i < nref; ++i) rl.push_back("R" + std::to_string(i));
    for (int i = 0; i < nhyp; ++i) hl.push_back("H" + std::to_string(i));
    int64_t best_errors = n;
    std::vector<int> assign(nhyp, -1);
    std::vector<bool> used(nref, false);
    std::function<void(int)> rec = [&](int h) {
      if (h == nhyp) {
        SpeakerMapping m;
        for (int i = 0; i < nhyp; ++i)
          if (assign[i] >= 0) m[hl[i]] = rl[assign[i]];
        auto s = compute_wder(ops, ref, hyp, m);
        best_errors = std::min(best_errors, s.speaker_errors);
        return;
      }
      assign[h] = -1;
      rec(h + 1);
      for (int r = 0; r < nref; ++r) {
        if (used[r]) continue;
        used[r] = true;
        assign[h] = r;
        rec(h + 1);
        used[r] = false;
      }
      assign[h] = -1;
    };
    rec(0);
    CHECK(best.speaker_errors == best_errors);
  }
}
