// Copyright 2026 The longform Authors. All rights reserved.
// Use of this source code is governed by the Apache-2.0 license
// that can be found in the LICENSE file.

#include "longform/attribute.hpp"

#include <algorithm>

namespace longform {

Transcript attribute_speakers(const Transcript& transcript,
                              const std::vector<SpeakerSegment>& segments,
                              UnattributedPolicy policy) {
  Transcript out = transcript;
  std::string previous = "unknown";
  for (size_t i = 0; i < out.words.size(); ++i) {
    TimedWord& w = out.words[i];
    if (!w.has_times())
      throw std::invalid_argument("word " + std::to_string(i) + " ('" + w.text +
                                  "') lacks times; cannot attribute speaker");
    const SpeakerSegment* best = nullptr;
    double best_overlap = 0.0;
    for (const auto& seg : segments) {
      double ov = std::min(*w.end_s, seg.end_s) - std::max(*w.start_s, seg.start_s);
      if (ov <= 0.0) continue;
      // tie-break toward the earlier segment, independent of list order
      bool better = ov > best_overlap ||
                    (ov == best_overlap && best != nullptr &&
                     (seg.start_s < best->start_s ||
                      (seg.start_s == best->start_s && seg.speaker < best->speaker)));
      if (best == nullptr || better) {
        best = &seg;
        best_overlap = ov;
      }
    }
    if (best != nullptr) {
      w.speaker = best->speaker;
      previous = best->speaker;
    } else if (policy == UnattributedPolicy::kInherit) {
      w.speaker = previous;
    } else {
      w.speaker = "unknown";
    }
  }
  return out;
}

}  // namespace longform
