// Copyright 2026 The longform Authors. All rights reserved.
// Use of this source code is governed by the Apache-2.0 license
// that can be found in the LICENSE file.

#ifndef LONGFORM_VERBATIM_HPP
#define LONGFORM_VERBATIM_HPP

#include <set>
#include <string>
#include <vector>

#include "longform/types.hpp"

namespace longform {

enum class DisfluencyCategory {
  kFilledPause = 0,
  kRepeatedWord = 1,
  kRepeatedPhrase = 2,
  kFalseStart = 3,
};

const char* disfluency_category_name(DisfluencyCategory c);

struct DisfluencySpan {
  int begin = 0;  // word index, inclusive
  int end = 0;    // word index, exclusive
  DisfluencyCategory category = DisfluencyCategory::kFilledPause;
  int severity_rank = 0;  // removal priority; lower removes first
};

struct VerbatimicityRules {
  std::set<std::string> filled_pause_lexicon = {"um", "uh",  "uhm",
                                                "er", "hmm", "mm"};
  int max_phrase_len = 4;
  // Discourse markers are transcribed by every style and never removed.
  std::vector<std::string> protected_phrases = {"you know", "kind of",
                                                "sort of", "like"};
};

// Marks filled pauses, adjacent repeated words (first k-1 of a run of k),
// adjacent repeated phrases (earlier copy), and heuristic false starts on a
// normalized lowercase word list. Overlaps are resolved longest-first, then
// leftmost.
std::vector<DisfluencySpan> detect_disfluencies(
    const std::vector<std::string>& words, const VerbatimicityRules& rules = {});

// Continuous verbatimicity filter. Level 1.0 is the identity; level 0.0
// removes every detected span (iterated to a fixpoint); intermediate levels
// remove spans in severity order (filled pauses, then word stutters, then
// phrase repeats, then false starts) until the removed fraction of disfluent
// words reaches 1 - level. Surviving words keep their order and times.
Transcript apply_verbatimicity(const Transcript& transcript, double level,
                               const VerbatimicityRules& rules = {});

}  // namespace longform

#endif  // LONGFORM_VERBATIM_HPP
