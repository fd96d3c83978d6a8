// Copyright 2026 The longform Authors. All rights reserved.
// Use of this source code is governed by the Apache-2.0 license
// that can be found in the LICENSE file.

#include "longform/ctc.hpp"

#include <algorithm>
#include <cmath>

namespace longform {

void BeamConfig::validate() const {
  if (beam_size < 1) throw std::invalid_argument("beam_size must be >= 1");
  if (ctc_weight < 0.0 || ctc_weight > 1.0)
    throw std::invalid_argument("ctc_weight must be in [0, 1]");
  if (verbatimicity < 0.0 || verbatimicity > 1.0)
    throw std::invalid_argument("verbatimicity must be in [0, 1]");
}

UniformScorer::UniformScorer(int vocab_size)
    : increment_(-std::log(static_cast<double>(vocab_size))) {}

double UniformScorer::score_next(const std::vector<int>&, int, double) const {
  return increment_;
}

TableScorer::TableScorer(int vocab_size, double default_logp)
    : default_logp_(default_logp == kLogZero
                        ? -std::log(static_cast<double>(vocab_size))
                        : default_logp) {}

void TableScorer::set(const std::vector<int>& prefix, int token, double logp) {
  table_[{prefix, token}] = logp;
}

void TableScorer::set_final(const std::vector<int>& prefix, double logp) {
  finals_[prefix] = logp;
}

double TableScorer::score_next(const std::vector<int>& prefix, int token,
                               double) const {
  auto it = table_.find({prefix, token});
  return it == table_.end() ? default_logp_ : it->second;
}

double TableScorer::final_bonus(const std::vector<int>& prefix) const {
  auto it = finals_.find(prefix);
  return it == finals_.end() ? 0.0 : it->second;
}

double PrefixHypothesis::logp_ctc() const {
  return log_add(logp_blank, logp_nonblank);
}

double PrefixHypothesis::combined(const BeamConfig& config,
                                  bool with_scorer) const {
  if (!with_scorer) return logp_ctc();
  return config.ctc_weight * logp_ctc() +
         (1.0 - config.ctc_weight) * scorer_logp;
}

namespace {

void check_dims(const LogPosteriors& post, const Vocabulary& vocab) {
  if (post.vocab_size() != vocab.size())
    throw std::invalid_argument(
        "posterior vocab size " + std::to_string(post.vocab_size()) +
        " != vocabulary size " + std::to_string(vocab.size()));
}

struct Cell {
  double pb = kLogZero;
  double pnb = kLogZero;
  double scorer_lp = 0.0;
  bool scorer_known = false;
};

std::vector<PrefixHypothesis> prefix_search_impl(const LogPosteriors& post,
                                                 const Vocabulary& vocab,
                                                 const BeamConfig& config,
                                                 const SequenceScorer* scorer) {
  config.validate();
  check_dims(post, vocab);
  vocab.validate();
  const int T = post.frames();
  const int V = post.vocab_size();
  const int blank = vocab.blank_index;

  // std::map keys iterate in lexicographic token order, which doubles as the
  // deterministic tie-break.
  std::map<std::vector<int>, Cell> beam;
  beam[{}] = Cell{0.0, kLogZero, 0.0, true};

  for (int t = 0; t < T; ++t) {
    std::map<std::vector<int>, Cell> next;
    for (const auto& [prefix, cell] : beam) {
      double total = log_add(cell.pb, cell.pnb);
      for (int v = 0; v < V; ++v) {
        double lp = post.values(t, v);
        if (lp < config.prune_log_threshold) continue;
        if (v == blank) {
          Cell& c = next[prefix];
          c.pb = log_add(c.pb, total + lp);
          c.scorer_lp = cell.scorer_lp;
          c.scorer_known = true;
        } else if (!prefix.empty() && v == prefix.back()) {
          if (cell.pnb != kLogZero) {  // same occurrence continues
            Cell& c = next[prefix];
            c.pnb = log_add(c.pnb, cell.pnb + lp);
            c.scorer_lp = cell.scorer_lp;
            c.scorer_known = true;
          }
          if (cell.pb != kLogZero) {  // new occurrence after a blank
            std::vector<int> ext = prefix;
            ext.push_back(v);
            Cell& c = next[ext];
            c.pnb = log_add(c.pnb, cell.pb + lp);
            if (!c.scorer_known && scorer != nullptr) {
              c.scorer_lp = cell.scorer_lp +
                            scorer->score_next(prefix, v, config.verbatimicity);
              c.scorer_known = true;
            }
          }
        } else {
          std::vector<int> ext = prefix;
          ext.push_back(v);
          Cell& c = next[ext];
          c.pnb = log_add(c.pnb, total + lp);
          if (!c.scorer_known && scorer != nullptr) {
            c.scorer_lp = cell.scorer_lp +
                          scorer->score_next(prefix, v, config.verbatimicity);
            c.scorer_known = true;
          }
        }
      }
    }
    // prune to beam_size by combined score; map order keeps ties stable
    std::vector<std::pair<std::vector<int>, Cell>> items(next.begin(),
                                                          next.end());
    std::stable_sort(items.begin(), items.end(),
                     [&](const auto& a, const auto& b) {
                       PrefixHypothesis ha{a.first, a.second.pb, a.second.pnb,
                                           a.second.scorer_lp};
                       PrefixHypothesis hb{b.first, b.second.pb, b.second.pnb,
                                           b.second.scorer_lp};
                       return ha.combined(config, scorer != nullptr) >
                              hb.combined(config, scorer != nullptr);
                     });
    if (static_cast<int>(items.size()) > config.beam_size)
      items.resize(config.beam_size);
    beam.clear();
    for (auto& [k, c] : items) beam.emplace(std::move(k), c);
  }

  std::vector<PrefixHypothesis> out;
  out.reserve(beam.size());
  for (const auto& [prefix, cell] : beam) {
    PrefixHypothesis h;
    h.tokens = prefix;
    h.logp_blank = cell.pb;
    h.logp_nonblank = cell.pnb;
    h.scorer_logp = cell.scorer_lp;
    if (scorer != nullptr) h.scorer_logp += scorer->final_bonus(prefix);
    out.push_back(std::move(h));
  }
  std::stable_sort(out.begin(), out.end(),
                   [&](const PrefixHypothesis& a, const PrefixHypothesis& b) {
                     return a.combined(config, scorer != nullptr) >
                            b.combined(config, scorer != nullptr);
                   });
  return out;
}

}  // namespace

std::vector<int> greedy_decode(const LogPosteriors& post,
                               const Vocabulary& vocab) {
  if (post.frames() == 0) return {};
  check_dims(post, vocab);
  std::vector<int> out;
  int prev = -1;
  for (int t = 0; t < post.frames(); ++t) {
    int arg = 0;
    for (int v = 1; v < post.vocab_size(); ++v)
      if (post.values(t, v) > post.values(t, arg)) arg = v;  // first max wins
    if (arg != prev && arg != vocab.blank_index) out.push_back(arg);
    prev = arg;
  }
  return out;
}

std::vector<PrefixHypothesis> prefix_beam_search(const LogPosteriors& post,
                                                 const Vocabulary& vocab,
                                                 const BeamConfig& config,
                                                 const SequenceScorer* scorer) {
  return prefix_search_impl(post, vocab, config, scorer);
}

std::vector<PrefixHypothesis> attention_rescore(
    const std::vector<PrefixHypothesis>& hyps, const SequenceScorer& scorer,
    const BeamConfig& config) {
  config.validate();
  if (hyps.empty()) throw std::invalid_argument("no hypotheses to rescore");
  std::vector<PrefixHypothesis> out = hyps;
  for (auto& h : out) {
    double s = 0.0;
    std::vector<int> prefix;
    for (int tok : h.tokens) {
      s += scorer.score_next(prefix, tok, config.verbatimicity);
      prefix.push_back(tok);
    }
    s += scorer.final_bonus(prefix);
    h.scorer_logp = s;
  }
  std::stable_sort(out.begin(), out.end(),
                   [&](const PrefixHypothesis& a, const PrefixHypothesis& b) {
                     return a.combined(config, true) > b.combined(config, true);
                   });
  return out;
}

std::vector<PrefixHypothesis> joint_decode(const LogPosteriors& post,
                                           const Vocabulary& vocab,
                                           const SequenceScorer& scorer,
                                           const BeamConfig& config) {
  return prefix_search_impl(post, vocab, config, &scorer);
}

int min_alignment_frames(const std::vector<int>& target) {
  int n = static_cast<int>(target.size());
  for (size_t i = 1; i < target.size(); ++i)
    if (target[i] == target[i - 1]) ++n;  // mandatory blank between repeats
  return n;
}

AlignmentPath forced_align(const LogPosteriors& post, const Vocabulary& vocab,
                           const std::vector<int>& target) {
  check_dims(post, vocab);
  if (target.empty()) throw std::invalid_argument("forced_align: empty target");
  for (int tok : target)
    if (tok == vocab.blank_index || tok < 0 || tok >= vocab.size())
      throw std::invalid_argument("forced_align: invalid target token " +
                                  std::to_string(tok));
  const int T = post.frames();
  const int L = static_cast<int>(target.size());
  if (T < min_alignment_frames(target))
    throw std::invalid_argument(
        "forced_align: target needs at least " +
        std::to_string(min_alignment_frames(target)) + " frames, got " +
        std::to_string(T));

  // Expanded state graph: blank, t0, blank, t1, ..., blank (S = 2L + 1).
  const int S = 2 * L + 1;
  auto label = [&](int s) {
    return (s % 2 == 0) ? vocab.blank_index : target[s / 2];
  };
  std::vector<double> alpha(S, kLogZero), alpha_prev;
  std::vector<uint8_t> back(static_cast<size_t>(T) * S, 0);  // 0 stay, 1 prev, 2 skip

  alpha[0] = post.values(0, label(0));
  alpha[1] = post.values(0, label(1));
  for (int t = 1; t < T; ++t) {
    alpha_prev = alpha;
    for (int s = 0; s < S; ++s) {
      double best = alpha_prev[s];
      uint8_t choice = 0;
      if (s >= 1 && alpha_prev[s - 1] > best) {
        best = alpha_prev[s - 1];
        choice = 1;
      }
      // skip over a blank only between distinct tokens
      if (s >= 2 && s % 2 == 1 && target[s / 2] != target[s / 2 - 1] &&
          alpha_prev[s - 2] > best) {
        best = alpha_prev[s - 2];
        choice = 2;
      }
      alpha[s] = (best == kLogZero) ? kLogZero
                                    : best + post.values(t, label(s));
      back[static_cast<size_t>(t) * S + s] = choice;
    }
  }

  int end_state = S - 1;
  double best = alpha[S - 1];
  if (alpha[S - 2] > best) {
    best = alpha[S - 2];
    end_state = S - 2;
  }
  if (best == kLogZero)
    throw std::invalid_argument("forced_align: no feasible path");

  AlignmentPath path;
  path.total_logp = best;
  path.frame_labels.assign(T, vocab.blank_index);
  int s = end_state;
  for (int t = T - 1; t >= 0; --t) {
    path.frame_labels[t] = label(s);
    if (t > 0) s -= back[static_cast<size_t>(t) * S + s];
  }
  // first emission frame of each target token
  path.token_frames.assign(L, -1);
  std::vector<int> states(T);
  int cur = end_state;
  for (int t = T - 1; t >= 0; --t) {
    states[t] = cur;
    if (t > 0) cur -= back[static_cast<size_t>(t) * S + cur];
  }
  for (int t = 0; t < T; ++t) {
    int st = states[t];
    if (st % 2 == 1 && (t == 0 || states[t - 1] != st))
      path.token_frames[st / 2] = t;
  }
  return path;
}

}  // namespace longform
