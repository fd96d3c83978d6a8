// Copyright 2026 The longform Authors. All rights reserved.
// Use of this source code is governed by the Apache-2.0 license
// that can be found in the LICENSE file.

#ifndef LONGFORM_SYNTH_HPP
#define LONGFORM_SYNTH_HPP

#include <cstdint>
#include <vector>

#include "longform/types.hpp"

namespace longform {

struct SynthConfig {
  int frames_per_token = 4;
  int blank_frames = 1;       // separator run between tokens
  double peak_prob = 0.99;    // mass on the intended token per frame
  double noise = 0.0;         // extra uniform jitter on the off-peak mass
  double frame_duration_s = 0.04;
  uint64_t seed = 0;
};

// Sharply peaked posteriors realizing the given token sequence, with the
// leftover probability mass spread (optionally jittered) over the other
// tokens. Rows are exactly normalized; output is reproducible per seed.
LogPosteriors synth_posteriors(const std::vector<int>& tokens,
                               const Vocabulary& vocab,
                               const SynthConfig& config = {});

}  // namespace longform

#endif  // LONGFORM_SYNTH_HPP
