// Copyright 2026 The longform Authors. All rights reserved.
// Use of this source code is governed by the Apache-2.0 license
// that can be found in the LICENSE file.

#ifndef LONGFORM_LEXICON_HPP
#define LONGFORM_LEXICON_HPP

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "longform/ctc.hpp"
#include "longform/types.hpp"

namespace longform {

struct LexiconEntry {
  std::string word;
  std::vector<int> spelling;  // token indices, blank-free, non-empty
  double unigram_logp = 0.0;
};

struct UnigramLexicon {
  std::vector<LexiconEntry> entries;
  double oov_logp = kLogZero;  // -inf = closed vocabulary

  // Checks spellings non-empty/blank-free and that unigram mass does not
  // exceed 1 (log-sum-exp <= 1e-6).
  void validate(const Vocabulary& vocab) const;
};

// Prefix tree over spellings; terminals carry the words ending there.
struct LexiconTrie {
  struct Node {
    std::map<int, int> children;       // token index -> node id
    std::vector<int> entry_indices;    // lexicon entries terminating here
  };
  std::vector<Node> nodes;  // nodes[0] is the root
  const UnigramLexicon* lexicon = nullptr;

  const Node& root() const { return nodes[0]; }
};

// Lexicon text format: one entry per line, "word<TAB>logp<TAB>tok tok ...".
UnigramLexicon parse_lexicon(std::string_view text, const Vocabulary& vocab);
std::string format_lexicon(const UnigramLexicon& lex, const Vocabulary& vocab);

// Shared-prefix trie; throws on a duplicate (word, spelling) pair.
LexiconTrie compile_trie(const UnigramLexicon& lexicon);

// Trie-synchronized CTC beam search with unigram shallow fusion. Words are
// emitted at trie terminals; only hypotheses ending on a word boundary rank
// at the end. Word times come from the first/last emission frames of the
// word's tokens. With oov_logp > -inf, any single token may also be emitted
// from the root as a fallback word carrying oov_logp.
Transcript lexicon_beam_search(const LogPosteriors& post,
                               const Vocabulary& vocab,
                               const LexiconTrie& trie, double lm_weight,
                               const BeamConfig& config);

}  // namespace longform

#endif  // LONGFORM_LEXICON_HPP
