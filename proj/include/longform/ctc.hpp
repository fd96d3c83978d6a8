// Copyright 2026 The longform Authors. All rights reserved.
// Use of this source code is governed by the Apache-2.0 license
// that can be found in the LICENSE file.

#ifndef LONGFORM_CTC_HPP
#define LONGFORM_CTC_HPP

#include <map>
#include <memory>
#include <vector>

#include "longform/types.hpp"

namespace longform {

struct BeamConfig {
  int beam_size = 10;
  double prune_log_threshold = kLogZero;  // per frame-token floor; -inf = off
  double ctc_weight = 0.5;  // CTC vs scorer balance in joint/rescore modes
  double verbatimicity = 1.0;

  void validate() const;
};

// Incremental sequence-level scorer standing in for an attention decoder or
// fusion LM. For a fixed prefix the increments over the full vocabulary must
// log-sum-exp to <= 1e-6. Implementations must be safe for concurrent
// read-only use.
class SequenceScorer {
 public:
  virtual ~SequenceScorer() = default;
  // Log-prob increment for extending prefix with token.
  virtual double score_next(const std::vector<int>& prefix, int token,
                            double verbatimicity) const = 0;
  // Terminal adjustment (e.g. end-of-sequence mass).
  virtual double final_bonus(const std::vector<int>& prefix) const {
    return 0.0;
  }
};

// Assigns every extension the same log(1/V) increment; rank-neutral.
class UniformScorer : public SequenceScorer {
 public:
  explicit UniformScorer(int vocab_size);
  double score_next(const std::vector<int>& prefix, int token,
                    double verbatimicity) const override;

 private:
  double increment_;
};

// Explicit (prefix, token) -> increment map with a uniform fallback; the
// reference scorer for tests and CLI experiments.
class TableScorer : public SequenceScorer {
 public:
  TableScorer(int vocab_size, double default_logp = kLogZero);
  void set(const std::vector<int>& prefix, int token, double logp);
  void set_final(const std::vector<int>& prefix, double logp);
  double score_next(const std::vector<int>& prefix, int token,
                    double verbatimicity) const override;
  double final_bonus(const std::vector<int>& prefix) const override;

 private:
  std::map<std::pair<std::vector<int>, int>, double> table_;
  std::map<std::vector<int>, double> finals_;
  double default_logp_;
};

// Collapsed prefix with its blank/non-blank path masses.
struct PrefixHypothesis {
  std::vector<int> tokens;  // collapsed, blank-free
  double logp_blank = kLogZero;
  double logp_nonblank = kLogZero;
  double scorer_logp = 0.0;  // accumulated scorer increments (+ final bonus)

  double logp_ctc() const;
  // Ranking score: pure CTC without a scorer, interpolated with one.
  double combined(const BeamConfig& config, bool with_scorer) const;
};

// Collapse-of-argmax decoding; per-frame argmax ties go to the lowest index.
std::vector<int> greedy_decode(const LogPosteriors& post,
                               const Vocabulary& vocab);

// Standard CTC prefix beam search over collapsed prefixes. When a scorer is
// given its increments are shallow-fused at weight (1 - ctc_weight). Returns
// up to beam_size hypotheses, best first; ties break lexicographically on
// token indices.
std::vector<PrefixHypothesis> prefix_beam_search(
    const LogPosteriors& post, const Vocabulary& vocab,
    const BeamConfig& config, const SequenceScorer* scorer = nullptr);

// Second-pass re-ranking: ctc_weight * logp_ctc + (1 - ctc_weight) *
// (sum of score_next increments + final_bonus); stable sort descending.
std::vector<PrefixHypothesis> attention_rescore(
    const std::vector<PrefixHypothesis>& hyps, const SequenceScorer& scorer,
    const BeamConfig& config);

// Frame-synchronous joint CTC/scorer decoding; scorer increments are applied
// at extension time. With ctc_weight = 1 the ranking equals pure CTC
// prefix_beam_search.
std::vector<PrefixHypothesis> joint_decode(const LogPosteriors& post,
                                           const Vocabulary& vocab,
                                           const SequenceScorer& scorer,
                                           const BeamConfig& config);

// Viterbi path through the standard CTC target expansion.
struct AlignmentPath {
  std::vector<int> frame_labels;  // length T, blank allowed
  double total_logp = kLogZero;
  std::vector<int> token_frames;  // first emission frame of each target token
};

// Best frame-level alignment of target (blank-free, non-empty) to post.
// Throws if the target cannot be realized in T frames.
AlignmentPath forced_align(const LogPosteriors& post, const Vocabulary& vocab,
                           const std::vector<int>& target);

// Minimum frame count needed to realize target under CTC topology.
int min_alignment_frames(const std::vector<int>& target);

}  // namespace longform

#endif  // LONGFORM_CTC_HPP
