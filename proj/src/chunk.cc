// Copyright 2026 The longform Authors. All rights reserved.
// Use of this source code is governed by the Apache-2.0 license
// that can be found in the LICENSE file.

#include "longform/chunk.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace longform {

std::vector<ChunkSpec> plan_chunks(int total_frames, int chunk_frames,
                                   int overlap_frames) {
  if (overlap_frames < 0 || chunk_frames <= overlap_frames)
    throw std::invalid_argument("need chunk_frames > overlap_frames >= 0");
  if (total_frames < 0) throw std::invalid_argument("negative total_frames");
  std::vector<ChunkSpec> plan;
  int stride = chunk_frames - overlap_frames;
  for (int start = 0; start < total_frames; start += stride) {
    ChunkSpec c;
    c.index = static_cast<int>(plan.size());
    c.start_frame = start;
    c.end_frame = std::min(start + chunk_frames, total_frames);
    plan.push_back(c);
  }
  for (size_t i = 0; i < plan.size(); ++i) {
    if (i > 0)
      plan[i].left_overlap_frames =
          std::max(0, plan[i - 1].end_frame - plan[i].start_frame);
    if (i + 1 < plan.size())
      plan[i].right_overlap_frames =
          std::max(0, plan[i].end_frame - plan[i + 1].start_frame);
  }
  return plan;
}

namespace {

double word_mid(const TimedWord& w) {
  return (w.start_s.value_or(0.0) + w.end_s.value_or(0.0)) / 2.0;
}

// Longest common subsequence of word texts; returns matched index pairs.
std::vector<std::pair<int, int>> lcs_pairs(const std::vector<TimedWord>& a,
                                           const std::vector<TimedWord>& b) {
  int n = static_cast<int>(a.size()), m = static_cast<int>(b.size());
  std::vector<std::vector<int>> dp(n + 1, std::vector<int>(m + 1, 0));
  for (int i = n - 1; i >= 0; --i)
    for (int j = m - 1; j >= 0; --j)
      dp[i][j] = a[i].text == b[j].text
                     ? dp[i + 1][j + 1] + 1
                     : std::max(dp[i + 1][j], dp[i][j + 1]);
  std::vector<std::pair<int, int>> pairs;
  int i = 0, j = 0;
  while (i < n && j < m) {
    if (a[i].text == b[j].text && dp[i][j] == dp[i + 1][j + 1] + 1) {
      pairs.emplace_back(i, j);
      ++i;
      ++j;
    } else if (dp[i + 1][j] >= dp[i][j + 1]) {
      ++i;
    } else {
      ++j;
    }
  }
  return pairs;
}

}  // namespace

Transcript stitch(const std::vector<ChunkResult>& results,
                  int min_agreement_words) {
  Transcript out;
  if (results.empty()) return out;
  for (size_t i = 0; i < results.size(); ++i) {
    if (i > 0 && results[i].spec.index <= results[i - 1].spec.index)
      throw std::invalid_argument(
          "stitch: chunk results must be sorted by index without duplicates");
  }

  std::vector<TimedWord> acc = results[0].words;
  ChunkSpec prev = results[0].spec;
  double dur = results[0].frame_duration_s;

  for (size_t r = 1; r < results.size(); ++r) {
    const ChunkResult& right = results[r];
    double win_start = right.spec.start_frame * dur;
    double win_end = std::min(prev.end_frame, right.spec.end_frame) * dur;
    if (win_end <= win_start) {  // zero overlap: plain concatenation
      acc.insert(acc.end(), right.words.begin(), right.words.end());
      prev = right.spec;
      continue;
    }
    for (const auto& w : right.words)
      if (!w.has_times())
        throw std::invalid_argument("stitch: overlap words need times");
    for (const auto& w : acc)
      if (!w.has_times())
        throw std::invalid_argument("stitch: overlap words need times");

    auto in_window = [&](const TimedWord& w) {
      return *w.end_s > win_start && *w.start_s < win_end;
    };
    int l0 = static_cast<int>(acc.size());
    while (l0 > 0 && in_window(acc[l0 - 1])) --l0;
    std::vector<TimedWord> left_win(acc.begin() + l0, acc.end());
    int rn = 0;
    while (rn < static_cast<int>(right.words.size()) &&
           in_window(right.words[rn]))
      ++rn;
    std::vector<TimedWord> right_win(right.words.begin(),
                                     right.words.begin() + rn);

    auto pairs = lcs_pairs(left_win, right_win);
    if (static_cast<int>(pairs.size()) >= min_agreement_words) {
      // cut at the middle agreed word, taken from the left chunk
      auto [li, rj] = pairs[(pairs.size() - 1) / 2];
      acc.resize(l0 + li + 1);
      acc.insert(acc.end(), right.words.begin() + rj + 1, right.words.end());
    } else {
      // temporal midpoint fallback
      double mid = (win_start + win_end) / 2.0;
      while (!acc.empty() && acc.back().has_times() && word_mid(acc.back()) > mid)
        acc.pop_back();
      for (const auto& w : right.words)
        if (word_mid(w) > mid) acc.push_back(w);
    }
    prev = right.spec;
  }

  out.words = std::move(acc);
  return out;
}

}  // namespace longform
