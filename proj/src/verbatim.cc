// Copyright 2026 The longform Authors. All rights reserved.
// Use of this source code is governed by the Apache-2.0 license
// that can be found in the LICENSE file.

#include "longform/verbatim.hpp"

#include <algorithm>

#include "longform/normalize.hpp"

namespace longform {

const char* disfluency_category_name(DisfluencyCategory c) {
  switch (c) {
    case DisfluencyCategory::kFilledPause: return "filled_pause";
    case DisfluencyCategory::kRepeatedWord: return "repeated_word";
    case DisfluencyCategory::kRepeatedPhrase: return "repeated_phrase";
    case DisfluencyCategory::kFalseStart: return "false_start";
  }
  return "?";
}

namespace {

const std::set<std::string> kPronouns = {"i",  "you", "we",  "they",
                                         "he", "she", "it"};
const std::set<std::string> kRestartSubjects = {
    "it's",  "that's", "there's", "i'm",    "he's",
    "she's", "we're",  "they're", "you're", "i've"};

std::string join_range(const std::vector<std::string>& words, int begin,
                       int end) {
  std::string s;
  for (int i = begin; i < end; ++i) {
    if (i > begin) s += " ";
    s += words[i];
  }
  return s;
}

bool is_protected(const std::vector<std::string>& words, int begin, int end,
                  const VerbatimicityRules& rules) {
  std::string joined = join_range(words, begin, end);
  for (const auto& p : rules.protected_phrases)
    if (joined == p) return true;
  return false;
}

}  // namespace

std::vector<DisfluencySpan> detect_disfluencies(
    const std::vector<std::string>& words, const VerbatimicityRules& rules) {
  const int n = static_cast<int>(words.size());
  std::vector<DisfluencySpan> cand;

  for (int i = 0; i < n; ++i)
    if (rules.filled_pause_lexicon.count(words[i]))
      cand.push_back({i, i + 1, DisfluencyCategory::kFilledPause, 0});

  // runs of k identical words: the first k-1 are removable
  for (int i = 0; i < n;) {
    int j = i;
    while (j < n && words[j] == words[i]) ++j;
    if (j - i >= 2 && !is_protected(words, i, i + 1, rules))
      cand.push_back({i, j - 1, DisfluencyCategory::kRepeatedWord, 0});
    i = j;
  }

  for (int p = rules.max_phrase_len; p >= 2; --p)
    for (int i = 0; i + 2 * p <= n; ++i) {
      bool same = true;
      for (int k = 0; k < p && same; ++k) same = words[i + k] == words[i + p + k];
      if (same && !is_protected(words, i, i + p, rules))
        cand.push_back({i, i + p, DisfluencyCategory::kRepeatedPhrase, 0});
    }

  // best-effort false starts: a stray subject pronoun directly before a
  // clause restart ("... are you it's ..." -> drop "you")
  for (int i = 0; i + 1 < n; ++i)
    if (kPronouns.count(words[i]) && kRestartSubjects.count(words[i + 1]) &&
        !is_protected(words, i, i + 1, rules))
      cand.push_back({i, i + 1, DisfluencyCategory::kFalseStart, 0});

  // longest-first, then leftmost; greedy non-overlapping acceptance
  std::stable_sort(cand.begin(), cand.end(),
                   [](const DisfluencySpan& a, const DisfluencySpan& b) {
                     int la = a.end - a.begin, lb = b.end - b.begin;
                     if (la != lb) return la > lb;
                     if (a.begin != b.begin) return a.begin < b.begin;
                     return static_cast<int>(a.category) <
                            static_cast<int>(b.category);
                   });
  std::vector<bool> taken(n, false);
  std::vector<DisfluencySpan> out;
  for (const auto& s : cand) {
    bool free = true;
    for (int i = s.begin; i < s.end && free; ++i) free = !taken[i];
    if (!free) continue;
    for (int i = s.begin; i < s.end; ++i) taken[i] = true;
    DisfluencySpan accepted = s;
    accepted.severity_rank = static_cast<int>(s.category);
    out.push_back(accepted);
  }
  std::sort(out.begin(), out.end(),
            [](const DisfluencySpan& a, const DisfluencySpan& b) {
              return a.begin < b.begin;
            });
  return out;
}

namespace {

// Lowercased, punctuation-stripped detection token for one transcript word.
std::string detection_token(const std::string& text) {
  auto toks = normalize(text);
  if (toks.empty()) {
    std::string low = text;
    for (auto& c : low)
      if (c >= 'A' && c <= 'Z') c += 0x20;
    return low;
  }
  std::string joined = toks[0];
  for (size_t i = 1; i < toks.size(); ++i) joined += toks[i];
  return joined;
}

// One removal pass; returns the surviving words.
std::vector<TimedWord> remove_pass(const std::vector<TimedWord>& words,
                                   double level,
                                   const VerbatimicityRules& rules,
                                   bool* removed_any) {
  std::vector<std::string> det;
  det.reserve(words.size());
  for (const auto& w : words) det.push_back(detection_token(w.text));
  auto spans = detect_disfluencies(det, rules);

  int total = 0;
  for (const auto& s : spans) total += s.end - s.begin;
  std::vector<bool> drop(words.size(), false);
  if (total > 0) {
    std::stable_sort(spans.begin(), spans.end(),
                     [](const DisfluencySpan& a, const DisfluencySpan& b) {
                       if (a.severity_rank != b.severity_rank)
                         return a.severity_rank < b.severity_rank;
                       return a.begin < b.begin;
                     });
    int removed = 0;
    for (const auto& s : spans) {
      if (static_cast<double>(removed) / total >= 1.0 - level) break;
      for (int i = s.begin; i < s.end; ++i) drop[i] = true;
      removed += s.end - s.begin;
    }
  }
  std::vector<TimedWord> out;
  *removed_any = false;
  for (size_t i = 0; i < words.size(); ++i) {
    if (drop[i])
      *removed_any = true;
    else
      out.push_back(words[i]);
  }
  return out;
}

}  // namespace

Transcript apply_verbatimicity(const Transcript& transcript, double level,
                               const VerbatimicityRules& rules) {
  if (level < 0.0 || level > 1.0)
    throw std::invalid_argument("verbatimicity level must be in [0, 1]");
  Transcript out = transcript;
  bool removed_any = true;
  out.words = remove_pass(out.words, level, rules, &removed_any);
  if (level == 0.0) {
    // full removal iterates: deleting a span can expose a new adjacency
    while (removed_any)
      out.words = remove_pass(out.words, level, rules, &removed_any);
  }
  return out;
}

}  // namespace longform
