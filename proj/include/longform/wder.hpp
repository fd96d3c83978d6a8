// Copyright 2026 The longform Authors. All rights reserved.
// Use of this source code is governed by the Apache-2.0 license
// that can be found in the LICENSE file.

#ifndef LONGFORM_WDER_HPP
#define LONGFORM_WDER_HPP

#include <map>
#include <string>
#include <vector>

#include "longform/align.hpp"
#include "longform/types.hpp"

namespace longform {

// Injective partial map from hypothesis speaker labels to reference labels.
using SpeakerMapping = std::map<std::string, std::string>;

struct WderScore {
  int64_t eligible_words = 0;  // correct + substitution ops, both speakers known
  int64_t speaker_errors = 0;
  int64_t unlabeled_words = 0;  // aligned pairs excluded for a missing label
  double wder = 0.0;            // speaker_errors / eligible_words
};

// Mapping maximizing speaker-correct eligible words: exhaustive over
// injective maps when min(#labels) <= 8, otherwise an optimal assignment on
// the label co-occurrence matrix. Throws when there are no eligible words.
SpeakerMapping optimal_speaker_map(const std::vector<AlignmentOp>& ops,
                                   const Transcript& ref,
                                   const Transcript& hyp);

WderScore compute_wder(const std::vector<AlignmentOp>& ops,
                       const Transcript& ref, const Transcript& hyp,
                       const SpeakerMapping& mapping);

}  // namespace longform

#endif  // LONGFORM_WDER_HPP
