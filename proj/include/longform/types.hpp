// Copyright 2026 The longform Authors. All rights reserved.
// Use of this source code is governed by the Apache-2.0 license
// that can be found in the LICENSE file.

#ifndef LONGFORM_TYPES_HPP
#define LONGFORM_TYPES_HPP

#include <Eigen/Core>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "longform/numeric.hpp"

namespace longform {

// Frame-major matrix of per-frame token log-probabilities.
using PosteriorMatrix =
    Eigen::Matrix<float, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// CTC label alphabet. tokens[blank_index] is the blank symbol.
struct Vocabulary {
  std::vector<std::string> tokens;
  int blank_index = 0;

  int size() const { return static_cast<int>(tokens.size()); }

  // Returns token index or -1.
  int find(const std::string& token) const {
    for (int i = 0; i < size(); ++i)
      if (tokens[i] == token) return i;
    return -1;
  }

  void validate() const;
};

// T x V matrix of natural-log probabilities; each row is one frame's
// distribution over the vocabulary.
struct LogPosteriors {
  PosteriorMatrix values;
  double frame_duration_s = 0.0;

  int frames() const { return static_cast<int>(values.rows()); }
  int vocab_size() const { return static_cast<int>(values.cols()); }

  // Checks that every row log-sum-exps to 0 within tol and no entry
  // exceeds 1e-6. Throws with the first offending frame index.
  void validate(double tol = 1e-4) const;
};

struct TimedWord {
  std::string text;
  std::optional<double> start_s;
  std::optional<double> end_s;
  std::optional<std::string> speaker;

  bool has_times() const { return start_s.has_value() && end_s.has_value(); }
};

struct Transcript {
  std::string file_id;
  std::vector<TimedWord> words;
};

struct SpeakerSegment {
  std::string file_id;
  std::string speaker;
  double start_s = 0.0;
  double end_s = 0.0;
};

}  // namespace longform

#endif  // LONGFORM_TYPES_HPP
