// Copyright 2026 The longform Authors. All rights reserved.
// Use of this source code is governed by the Apache-2.0 license
// that can be found in the LICENSE file.

#ifndef LONGFORM_NORMALIZE_HPP
#define LONGFORM_NORMALIZE_HPP

#include <set>
#include <string>
#include <vector>

namespace longform {

struct NormalizationConfig {
  bool lowercase = true;
  bool strip_punctuation = true;
  bool collapse_whitespace = true;
  // Tokens dropped when apply_filler_removal is on. Entries must be
  // lowercase and non-empty.
  std::set<std::string> filler_tokens = {"um", "uh", "uhm", "er", "mm"};
  bool apply_filler_removal = false;  // off by default for scoring
};

// Deterministic pre-scoring normalization. Intra-word apostrophes and
// hyphens survive punctuation stripping ("don't", "long-form"); all other
// punctuation becomes a token boundary. Idempotent; total (never throws).
std::vector<std::string> normalize(const std::string& text,
                                   const NormalizationConfig& config = {});

}  // namespace longform

#endif  // LONGFORM_NORMALIZE_HPP
