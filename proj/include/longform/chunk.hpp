// Copyright 2026 The longform Authors. All rights reserved.
// Use of this source code is governed by the Apache-2.0 license
// that can be found in the LICENSE file.

#ifndef LONGFORM_CHUNK_HPP
#define LONGFORM_CHUNK_HPP

#include <vector>

#include "longform/types.hpp"

namespace longform {

struct ChunkSpec {
  int index = 0;
  int start_frame = 0;
  int end_frame = 0;  // exclusive
  int left_overlap_frames = 0;
  int right_overlap_frames = 0;
};

struct ChunkResult {
  ChunkSpec spec;
  double frame_duration_s = 0.0;
  std::vector<TimedWord> words;  // absolute times
};

// Tiles [0, total_frames) with stride chunk_frames - overlap_frames; the
// last chunk may be short. overlap_frames = 0 gives plain disjoint chunking.
std::vector<ChunkSpec> plan_chunks(int total_frames, int chunk_frames,
                                   int overlap_frames);

// Joins adjacent chunk transcripts at their overlap windows. Where the two
// sides agree on >= min_agreement_words (longest common subsequence of word
// texts inside the window) the seam is cut at the middle agreed word;
// otherwise both sides are cut at the overlap's temporal midpoint.
Transcript stitch(const std::vector<ChunkResult>& results,
                  int min_agreement_words = 3);

}  // namespace longform

#endif  // LONGFORM_CHUNK_HPP
