// Copyright 2026 The longform Authors. All rights reserved.
// Use of this source code is governed by the Apache-2.0 license
// that can be found in the LICENSE file.

#ifndef LONGFORM_ALIGN_HPP
#define LONGFORM_ALIGN_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "longform/normalize.hpp"
#include "longform/types.hpp"

namespace longform {

enum class EditKind { kCorrect, kSubstitution, kInsertion, kDeletion };

struct AlignmentOp {
  EditKind kind = EditKind::kCorrect;
  int ref_index = -1;  // set for correct/substitution/deletion
  int hyp_index = -1;  // set for correct/substitution/insertion
};

struct AlignOptions {
  // Full-matrix backtrace up to this many DP cells; larger inputs switch to
  // the divide-and-conquer linear-memory variant.
  size_t quadratic_cell_limit = 4'000'000;
};

struct AlignStats {
  size_t peak_live_cells = 0;  // max DP cells allocated at once
};

// Minimum-edit-distance alignment, unit costs for S/I/D. Among minimal
// alignments the one with the most correct matches is chosen, so the
// (C, S, I, D) vector is identical across the quadratic and linear-memory
// paths. Deterministic; empty inputs give all-insertions/all-deletions.
std::vector<AlignmentOp> align_words(const std::vector<std::string>& ref,
                                     const std::vector<std::string>& hyp,
                                     const AlignOptions& options = {},
                                     AlignStats* stats = nullptr);

struct EditCounts {
  int64_t correct = 0;
  int64_t substitutions = 0;
  int64_t insertions = 0;
  int64_t deletions = 0;

  int64_t errors() const { return substitutions + insertions + deletions; }
};

EditCounts count_ops(const std::vector<AlignmentOp>& ops);

struct FileScore {
  std::string file_id;
  int64_t ref_words = 0;
  EditCounts counts;
  double wer = 0.0;
};

// Normalizes both sides, aligns, counts, computes WER = (S+I+D)/ref_words.
// Throws if the reference is empty after normalization.
FileScore score_file(const Transcript& ref, const Transcript& hyp,
                     const NormalizationConfig& norm = {},
                     const AlignOptions& options = {});

struct SuiteReport {
  std::string suite_name;
  std::vector<FileScore> files;
  int64_t total_ref_words = 0;
  int64_t total_errors = 0;
  double micro_wer = 0.0;  // pooled errors / pooled ref words, not macro mean
};

SuiteReport micro_average(const std::vector<FileScore>& scores,
                          const std::string& suite_name = "");

// fstalign-style two-column diff; footer counts match count_ops.
std::string side_by_side(const std::vector<std::string>& ref,
                         const std::vector<std::string>& hyp,
                         const std::vector<AlignmentOp>& ops);

}  // namespace longform

#endif  // LONGFORM_ALIGN_HPP
