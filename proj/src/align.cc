// Copyright 2026 The longform Authors. All rights reserved.
// Use of this source code is governed by the Apache-2.0 license
// that can be found in the LICENSE file.

#include "longform/align.hpp"

#include <algorithm>
#include <cstdio>

namespace longform {

namespace {

// Combined additive metric: minimize edits, then maximize corrects.
// A correct step scores -1, every edit scores kBig; kBig dominates any
// achievable correct count.
constexpr int64_t kBig = int64_t{1} << 32;

struct CellCounter {
  size_t live = 0;
  size_t peak = 0;
  void add(size_t n) {
    live += n;
    peak = std::max(peak, live);
  }
  void sub(size_t n) { live -= n; }
};

struct Slice {
  const std::vector<std::string>* words;
  int begin;
  int end;
  int size() const { return end - begin; }
  const std::string& at(int i) const { return (*words)[begin + i]; }
};

// Full-matrix alignment with deterministic backtrace. Tie preference:
// correct > substitution > deletion > insertion.
void quadratic_align(const Slice& ref, const Slice& hyp,
                     std::vector<AlignmentOp>& out, CellCounter& cells) {
  const int n = ref.size(), m = hyp.size();
  std::vector<int64_t> prev(m + 1), cur(m + 1);
  std::vector<uint8_t> back(static_cast<size_t>(n + 1) * (m + 1), 0);
  cells.add(static_cast<size_t>(n + 1) * (m + 1) + 2 * (m + 1));

  for (int j = 0; j <= m; ++j) {
    prev[j] = static_cast<int64_t>(j) * kBig;
    back[j] = 2;  // insertion
  }
  for (int i = 1; i <= n; ++i) {
    cur[0] = static_cast<int64_t>(i) * kBig;
    back[static_cast<size_t>(i) * (m + 1)] = 1;  // deletion
    for (int j = 1; j <= m; ++j) {
      bool match = ref.at(i - 1) == hyp.at(j - 1);
      int64_t best = prev[j - 1] + (match ? -1 : kBig);
      uint8_t choice = 0;
      if (prev[j] + kBig < best) {
        best = prev[j] + kBig;
        choice = 1;
      }
      if (cur[j - 1] + kBig < best) {
        best = cur[j - 1] + kBig;
        choice = 2;
      }
      cur[j] = best;
      back[static_cast<size_t>(i) * (m + 1) + j] = choice;
    }
    std::swap(prev, cur);
  }

  std::vector<AlignmentOp> rev;
  int i = n, j = m;
  while (i > 0 || j > 0) {
    uint8_t c = back[static_cast<size_t>(i) * (m + 1) + j];
    AlignmentOp op;
    if (c == 0) {
      op.kind = ref.at(i - 1) == hyp.at(j - 1) ? EditKind::kCorrect
                                               : EditKind::kSubstitution;
      op.ref_index = ref.begin + i - 1;
      op.hyp_index = hyp.begin + j - 1;
      --i;
      --j;
    } else if (c == 1) {
      op.kind = EditKind::kDeletion;
      op.ref_index = ref.begin + i - 1;
      --i;
    } else {
      op.kind = EditKind::kInsertion;
      op.hyp_index = hyp.begin + j - 1;
      --j;
    }
    rev.push_back(op);
  }
  out.insert(out.end(), rev.rbegin(), rev.rend());
  cells.sub(static_cast<size_t>(n + 1) * (m + 1) + 2 * (m + 1));
}

// Last-row scores of aligning the whole ref slice against every hyp prefix
// (or suffix, when reversed).
std::vector<int64_t> nw_scores(const Slice& ref, const Slice& hyp,
                               bool reversed, CellCounter& cells) {
  const int n = ref.size(), m = hyp.size();
  std::vector<int64_t> prev(m + 1), cur(m + 1);
  cells.add(2 * (m + 1));
  for (int j = 0; j <= m; ++j) prev[j] = static_cast<int64_t>(j) * kBig;
  for (int i = 1; i <= n; ++i) {
    cur[0] = static_cast<int64_t>(i) * kBig;
    for (int j = 1; j <= m; ++j) {
      const std::string& r = reversed ? ref.at(n - i) : ref.at(i - 1);
      const std::string& h = reversed ? hyp.at(m - j) : hyp.at(j - 1);
      int64_t best = prev[j - 1] + (r == h ? -1 : kBig);
      best = std::min(best, prev[j] + kBig);
      best = std::min(best, cur[j - 1] + kBig);
      cur[j] = best;
    }
    std::swap(prev, cur);
  }
  cells.sub(m + 1);  // cur row freed; the returned row stays live
  return prev;
}

constexpr size_t kBaseCaseCells = 16384;

void hirschberg(const Slice& ref, const Slice& hyp,
                std::vector<AlignmentOp>& out, CellCounter& cells) {
  const int n = ref.size(), m = hyp.size();
  if (n == 0) {
    for (int j = 0; j < m; ++j)
      out.push_back({EditKind::kInsertion, -1, hyp.begin + j});
    return;
  }
  if (m == 0) {
    for (int i = 0; i < n; ++i)
      out.push_back({EditKind::kDeletion, ref.begin + i, -1});
    return;
  }
  if (n == 1 ||
      static_cast<size_t>(n + 1) * (m + 1) <= kBaseCaseCells) {
    quadratic_align(ref, hyp, out, cells);
    return;
  }
  int mid = n / 2;
  Slice ref_top{ref.words, ref.begin, ref.begin + mid};
  Slice ref_bot{ref.words, ref.begin + mid, ref.end};
  std::vector<int64_t> fwd = nw_scores(ref_top, hyp, false, cells);
  std::vector<int64_t> bwd = nw_scores(ref_bot, hyp, true, cells);
  int split = 0;
  int64_t best = fwd[0] + bwd[m];
  for (int j = 1; j <= m; ++j) {
    int64_t s = fwd[j] + bwd[m - j];
    if (s < best) {
      best = s;
      split = j;
    }
  }
  fwd.clear();
  fwd.shrink_to_fit();
  bwd.clear();
  bwd.shrink_to_fit();
  cells.sub(2 * (m + 1));
  Slice hyp_left{hyp.words, hyp.begin, hyp.begin + split};
  Slice hyp_right{hyp.words, hyp.begin + split, hyp.end};
  hirschberg(ref_top, hyp_left, out, cells);
  hirschberg(ref_bot, hyp_right, out, cells);
}

}  // namespace

std::vector<AlignmentOp> align_words(const std::vector<std::string>& ref,
                                     const std::vector<std::string>& hyp,
                                     const AlignOptions& options,
                                     AlignStats* stats) {
  // keep DP rows on the shorter side
  if (hyp.size() > ref.size()) {
    std::vector<AlignmentOp> swapped = align_words(hyp, ref, options, stats);
    for (auto& op : swapped) {
      std::swap(op.ref_index, op.hyp_index);
      if (op.kind == EditKind::kDeletion)
        op.kind = EditKind::kInsertion;
      else if (op.kind == EditKind::kInsertion)
        op.kind = EditKind::kDeletion;
    }
    return swapped;
  }
  CellCounter cells;
  std::vector<AlignmentOp> ops;
  Slice r{&ref, 0, static_cast<int>(ref.size())};
  Slice h{&hyp, 0, static_cast<int>(hyp.size())};
  size_t dp_cells = (ref.size() + 1) * (hyp.size() + 1);
  if (dp_cells <= options.quadratic_cell_limit)
    quadratic_align(r, h, ops, cells);
  else
    hirschberg(r, h, ops, cells);
  if (stats != nullptr) stats->peak_live_cells = cells.peak;
  return ops;
}

EditCounts count_ops(const std::vector<AlignmentOp>& ops) {
  EditCounts c;
  for (const auto& op : ops) {
    switch (op.kind) {
      case EditKind::kCorrect: ++c.correct; break;
      case EditKind::kSubstitution: ++c.substitutions; break;
      case EditKind::kInsertion: ++c.insertions; break;
      case EditKind::kDeletion: ++c.deletions; break;
    }
  }
  return c;
}

namespace {

std::vector<std::string> transcript_tokens(const Transcript& t,
                                           const NormalizationConfig& norm) {
  std::string joined;
  for (const auto& w : t.words) {
    if (!joined.empty()) joined += " ";
    joined += w.text;
  }
  return normalize(joined, norm);
}

}  // namespace

FileScore score_file(const Transcript& ref, const Transcript& hyp,
                     const NormalizationConfig& norm,
                     const AlignOptions& options) {
  auto ref_words = transcript_tokens(ref, norm);
  auto hyp_words = transcript_tokens(hyp, norm);
  if (ref_words.empty())
    throw std::invalid_argument("file '" + ref.file_id +
                                "': empty reference after normalization, WER "
                                "undefined");
  FileScore score;
  score.file_id = ref.file_id;
  score.ref_words = static_cast<int64_t>(ref_words.size());
  score.counts = count_ops(align_words(ref_words, hyp_words, options));
  score.wer = static_cast<double>(score.counts.errors()) / score.ref_words;
  return score;
}

SuiteReport micro_average(const std::vector<FileScore>& scores,
                          const std::string& suite_name) {
  if (scores.empty())
    throw std::invalid_argument("micro_average: empty suite");
  SuiteReport report;
  report.suite_name = suite_name;
  report.files = scores;
  for (const auto& s : scores) {
    report.total_ref_words += s.ref_words;
    report.total_errors += s.counts.errors();
  }
  report.micro_wer =
      static_cast<double>(report.total_errors) / report.total_ref_words;
  return report;
}

std::string side_by_side(const std::vector<std::string>& ref,
                         const std::vector<std::string>& hyp,
                         const std::vector<AlignmentOp>& ops) {
  EditCounts c = count_ops(ops);
  if (c.correct + c.substitutions + c.deletions !=
          static_cast<int64_t>(ref.size()) ||
      c.correct + c.substitutions + c.insertions !=
          static_cast<int64_t>(hyp.size()))
    throw std::invalid_argument("side_by_side: ops inconsistent with inputs");
  size_t width = 3;
  for (const auto& w : ref) width = std::max(width, w.size());
  std::string out;
  for (const auto& op : ops) {
    std::string r = op.ref_index >= 0 ? ref[op.ref_index] : "***";
    std::string h = op.hyp_index >= 0 ? hyp[op.hyp_index] : "***";
    const char* tag = "";
    switch (op.kind) {
      case EditKind::kCorrect: tag = ""; break;
      case EditKind::kSubstitution: tag = "SUB"; break;
      case EditKind::kInsertion: tag = "INS"; break;
      case EditKind::kDeletion: tag = "DEL"; break;
    }
    out += r;
    out.append(width + 2 - r.size(), ' ');
    out += h;
    if (*tag) {
      out.append(width + 2 > h.size() ? width + 2 - h.size() : 1, ' ');
      out += tag;
    }
    out += "\n";
  }
  char footer[128];
  std::snprintf(footer, sizeof(footer),
                "# C=%lld S=%lld I=%lld D=%lld\n",
                static_cast<long long>(c.correct),
                static_cast<long long>(c.substitutions),
                static_cast<long long>(c.insertions),
                static_cast<long long>(c.deletions));
  out += footer;
  return out;
}

}  // namespace longform
