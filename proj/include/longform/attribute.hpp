// Copyright 2026 The longform Authors. All rights reserved.
// Use of this source code is governed by the Apache-2.0 license
// that can be found in the LICENSE file.

#ifndef LONGFORM_ATTRIBUTE_HPP
#define LONGFORM_ATTRIBUTE_HPP

#include <vector>

#include "longform/types.hpp"

namespace longform {

enum class UnattributedPolicy {
  kLabelUnknown,  // words overlapping no segment get speaker "unknown"
  kInherit,       // inherit the previous word's speaker (default)
};

// Assigns each word the label of the segment with maximal temporal overlap;
// ties go to the earlier-starting segment. Word texts, times and order are
// never changed. Throws if any word lacks times.
Transcript attribute_speakers(
    const Transcript& transcript, const std::vector<SpeakerSegment>& segments,
    UnattributedPolicy policy = UnattributedPolicy::kInherit);

}  // namespace longform

#endif  // LONGFORM_ATTRIBUTE_HPP
