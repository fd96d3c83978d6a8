// Copyright 2026 The longform Authors. All rights reserved.
// Use of this source code is governed by the Apache-2.0 license
// that can be found in the LICENSE file.

#include "longform/wder.hpp"

#include <algorithm>
#include <limits>
#include <set>

namespace longform {

namespace {

// Speaker pair counts over eligible (correct/substitution) ops.
struct CoCounts {
  std::vector<std::string> hyp_labels;  // sorted
  std::vector<std::string> ref_labels;  // sorted
  std::vector<std::vector<int64_t>> count;  // [hyp][ref]
  int64_t eligible = 0;
};

CoCounts gather_counts(const std::vector<AlignmentOp>& ops,
                       const Transcript& ref, const Transcript& hyp) {
  std::set<std::string> hs, rs;
  std::vector<std::pair<std::string, std::string>> pairs;
  for (const auto& op : ops) {
    if (op.kind != EditKind::kCorrect && op.kind != EditKind::kSubstitution)
      continue;
    const auto& rw = ref.words.at(op.ref_index);
    const auto& hw = hyp.words.at(op.hyp_index);
    if (!rw.speaker || !hw.speaker) continue;
    hs.insert(*hw.speaker);
    rs.insert(*rw.speaker);
    pairs.emplace_back(*hw.speaker, *rw.speaker);
  }
  CoCounts c;
  c.hyp_labels.assign(hs.begin(), hs.end());
  c.ref_labels.assign(rs.begin(), rs.end());
  c.count.assign(c.hyp_labels.size(),
                 std::vector<int64_t>(c.ref_labels.size(), 0));
  for (const auto& [h, r] : pairs) {
    size_t hi = std::lower_bound(c.hyp_labels.begin(), c.hyp_labels.end(), h) -
                c.hyp_labels.begin();
    size_t ri = std::lower_bound(c.ref_labels.begin(), c.ref_labels.end(), r) -
                c.ref_labels.begin();
    ++c.count[hi][ri];
  }
  c.eligible = static_cast<int64_t>(pairs.size());
  return c;
}

// Best injective assignment of every row to a distinct column (rows <= cols),
// maximizing the summed counts; exhaustive, first-found tie-break.
void exhaustive_assign(const std::vector<std::vector<int64_t>>& score,
                       size_t row, std::vector<int>& current,
                       std::vector<bool>& used, int64_t sum,
                       std::vector<int>& best, int64_t& best_sum) {
  if (row == score.size()) {
    if (sum > best_sum) {
      best_sum = sum;
      best = current;
    }
    return;
  }
  for (size_t col = 0; col < score[row].size(); ++col) {
    if (used[col]) continue;
    used[col] = true;
    current[row] = static_cast<int>(col);
    exhaustive_assign(score, row + 1, current, used, sum + score[row][col],
                      best, best_sum);
    used[col] = false;
  }
}

// Hungarian algorithm (potentials form), minimizing; n rows <= m cols.
// Returns for each row its assigned column.
std::vector<int> hungarian_min(const std::vector<std::vector<int64_t>>& a) {
  int n = static_cast<int>(a.size());
  int m = static_cast<int>(a[0].size());
  const int64_t inf = std::numeric_limits<int64_t>::max() / 4;
  std::vector<int64_t> u(n + 1), v(m + 1);
  std::vector<int> p(m + 1), way(m + 1);
  for (int i = 1; i <= n; ++i) {
    p[0] = i;
    int j0 = 0;
    std::vector<int64_t> minv(m + 1, inf);
    std::vector<char> used(m + 1, false);
    do {
      used[j0] = true;
      int i0 = p[j0], j1 = 0;
      int64_t delta = inf;
      for (int j = 1; j <= m; ++j) {
        if (used[j]) continue;
        int64_t cur = a[i0 - 1][j - 1] - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= m; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      int j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0);
  }
  std::vector<int> row_to_col(n, -1);
  for (int j = 1; j <= m; ++j)
    if (p[j] > 0) row_to_col[p[j] - 1] = j - 1;
  return row_to_col;
}

}  // namespace

SpeakerMapping optimal_speaker_map(const std::vector<AlignmentOp>& ops,
                                   const Transcript& ref,
                                   const Transcript& hyp) {
  CoCounts c = gather_counts(ops, ref, hyp);
  if (c.eligible == 0)
    throw std::invalid_argument("optimal_speaker_map: no eligible words");

  size_t H = c.hyp_labels.size(), R = c.ref_labels.size();
  bool hyp_rows = H <= R;
  // score[row][col], rows = smaller label set
  std::vector<std::vector<int64_t>> score(
      hyp_rows ? H : R, std::vector<int64_t>(hyp_rows ? R : H, 0));
  int64_t max_entry = 0;
  for (size_t h = 0; h < H; ++h)
    for (size_t r = 0; r < R; ++r) {
      int64_t v = c.count[h][r];
      if (hyp_rows)
        score[h][r] = v;
      else
        score[r][h] = v;
      max_entry = std::max(max_entry, v);
    }

  std::vector<int> row_to_col;
  if (score.size() <= 8) {
    std::vector<int> current(score.size(), -1);
    std::vector<bool> used(score[0].size(), false);
    int64_t best_sum = -1;
    exhaustive_assign(score, 0, current, used, 0, row_to_col, best_sum);
  } else {
    std::vector<std::vector<int64_t>> cost = score;
    for (auto& row : cost)
      for (auto& x : row) x = max_entry - x;
    row_to_col = hungarian_min(cost);
  }

  SpeakerMapping mapping;
  for (size_t row = 0; row < row_to_col.size(); ++row) {
    int col = row_to_col[row];
    if (col < 0) continue;
    if (hyp_rows)
      mapping[c.hyp_labels[row]] = c.ref_labels[col];
    else
      mapping[c.hyp_labels[col]] = c.ref_labels[row];
  }
  return mapping;
}

WderScore compute_wder(const std::vector<AlignmentOp>& ops,
                       const Transcript& ref, const Transcript& hyp,
                       const SpeakerMapping& mapping) {
  {
    std::set<std::string> targets;
    for (const auto& [h, r] : mapping)
      if (!targets.insert(r).second)
        throw std::invalid_argument("speaker mapping is not injective");
  }
  WderScore score;
  for (const auto& op : ops) {
    if (op.kind != EditKind::kCorrect && op.kind != EditKind::kSubstitution)
      continue;
    const auto& rw = ref.words.at(op.ref_index);
    const auto& hw = hyp.words.at(op.hyp_index);
    if (!rw.speaker || !hw.speaker) {
      ++score.unlabeled_words;
      continue;
    }
    ++score.eligible_words;
    auto it = mapping.find(*hw.speaker);
    if (it == mapping.end() || it->second != *rw.speaker)
      ++score.speaker_errors;
  }
  if (score.eligible_words == 0)
    throw std::invalid_argument("compute_wder: zero eligible words");
  score.wder =
      static_cast<double>(score.speaker_errors) / score.eligible_words;
  return score;
}

}  // namespace longform
