// Copyright 2026 The longform Authors. All rights reserved.
// Use of this source code is governed by the Apache-2.0 license
// that can be found in the LICENSE file.

#include "longform/synth.hpp"

#include <cmath>
#include <random>

namespace longform {

LogPosteriors synth_posteriors(const std::vector<int>& tokens,
                               const Vocabulary& vocab,
                               const SynthConfig& config) {
  vocab.validate();
  if (config.frames_per_token < 1 || config.blank_frames < 0)
    throw std::invalid_argument("synth: bad frame counts");
  if (config.peak_prob <= 0.0 || config.peak_prob >= 1.0)
    throw std::invalid_argument("synth: peak_prob must be in (0, 1)");
  for (int tok : tokens)
    if (tok < 0 || tok >= vocab.size())
      throw std::invalid_argument("synth: token index out of range");

  const int V = vocab.size();
  std::vector<int> frame_label;
  for (size_t i = 0; i < tokens.size(); ++i) {
    // blank separator keeps equal neighbors distinct under collapse
    if (i > 0 && (config.blank_frames > 0 || tokens[i] == tokens[i - 1])) {
      int nb = std::max(config.blank_frames, tokens[i] == tokens[i - 1] ? 1 : 0);
      for (int k = 0; k < nb; ++k) frame_label.push_back(vocab.blank_index);
    }
    for (int k = 0; k < config.frames_per_token; ++k)
      frame_label.push_back(tokens[i]);
  }
  if (frame_label.empty()) frame_label.push_back(vocab.blank_index);

  std::mt19937_64 rng(config.seed);
  std::uniform_real_distribution<double> jitter(0.0, 1.0);

  LogPosteriors post;
  post.frame_duration_s = config.frame_duration_s;
  post.values.resize(static_cast<int>(frame_label.size()), V);
  for (int t = 0; t < post.frames(); ++t) {
    std::vector<double> p(V, 0.0);
    p[frame_label[t]] = config.peak_prob;
    double rest = 1.0 - config.peak_prob;
    std::vector<double> w(V, 1.0);
    double wsum = 0.0;
    for (int v = 0; v < V; ++v) {
      if (v == frame_label[t]) {
        w[v] = 0.0;
        continue;
      }
      if (config.noise > 0.0) w[v] = 1.0 + config.noise * jitter(rng);
      wsum += w[v];
    }
    for (int v = 0; v < V; ++v)
      if (v != frame_label[t]) p[v] = rest * w[v] / wsum;
    for (int v = 0; v < V; ++v)
      post.values(t, v) = static_cast<float>(std::log(p[v]));
  }
  // re-normalize in float so the parser's row invariant holds exactly
  for (int t = 0; t < post.frames(); ++t) {
    double m = post.values.row(t).maxCoeff();
    double s = 0.0;
    for (int v = 0; v < V; ++v) s += std::exp(post.values(t, v) - m);
    float lse = static_cast<float>(m + std::log(s));
    for (int v = 0; v < V; ++v) post.values(t, v) -= lse;
  }
  return post;
}

}  // namespace longform
