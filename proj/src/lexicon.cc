// Copyright 2026 The longform Authors. All rights reserved.
// Use of this source code is governed by the Apache-2.0 license
// that can be found in the LICENSE file.

#include "longform/lexicon.hpp"

#include <algorithm>
#include <sstream>

#include "longform/io.hpp"

namespace longform {

void UnigramLexicon::validate(const Vocabulary& vocab) const {
  std::vector<double> logps;
  for (const auto& e : entries) {
    if (e.word.empty()) throw std::invalid_argument("lexicon: empty word");
    if (e.spelling.empty())
      throw std::invalid_argument("lexicon: empty spelling for '" + e.word + "'");
    for (int tok : e.spelling)
      if (tok < 0 || tok >= vocab.size() || tok == vocab.blank_index)
        throw std::invalid_argument("lexicon: bad token in spelling of '" +
                                    e.word + "'");
    logps.push_back(e.unigram_logp);
  }
  if (log_sum_exp(logps) > 1e-6)
    throw std::invalid_argument("lexicon: unigram probabilities sum above 1");
}

UnigramLexicon parse_lexicon(std::string_view text, const Vocabulary& vocab) {
  UnigramLexicon lex;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> fields;
    size_t pos = 0;
    while (true) {
      size_t tab = line.find('\t', pos);
      fields.push_back(line.substr(pos, tab - pos));
      if (tab == std::string::npos) break;
      pos = tab + 1;
    }
    if (fields.size() != 3)
      throw ParseError("lexicon line " + std::to_string(line_no) +
                       ": expected word<TAB>logp<TAB>tokens");
    LexiconEntry e;
    e.word = fields[0];
    try {
      e.unigram_logp = std::stod(fields[1]);
    } catch (const std::exception&) {
      throw ParseError("lexicon line " + std::to_string(line_no) +
                       ": bad log-prob '" + fields[1] + "'");
    }
    std::istringstream toks(fields[2]);
    std::string tok;
    while (toks >> tok) {
      int idx = vocab.find(tok);
      if (idx < 0)
        throw ParseError("lexicon line " + std::to_string(line_no) +
                         ": unknown token '" + tok + "'");
      e.spelling.push_back(idx);
    }
    lex.entries.push_back(std::move(e));
  }
  lex.validate(vocab);
  return lex;
}

std::string format_lexicon(const UnigramLexicon& lex, const Vocabulary& vocab) {
  std::string out;
  for (const auto& e : lex.entries) {
    out += e.word + "\t" + std::to_string(e.unigram_logp) + "\t";
    for (size_t i = 0; i < e.spelling.size(); ++i) {
      if (i > 0) out += " ";
      out += vocab.tokens[e.spelling[i]];
    }
    out += "\n";
  }
  return out;
}

LexiconTrie compile_trie(const UnigramLexicon& lexicon) {
  LexiconTrie trie;
  trie.lexicon = &lexicon;
  trie.nodes.emplace_back();
  for (size_t i = 0; i < lexicon.entries.size(); ++i) {
    const auto& e = lexicon.entries[i];
    int node = 0;
    for (int tok : e.spelling) {
      auto it = trie.nodes[node].children.find(tok);
      if (it == trie.nodes[node].children.end()) {
        int id = static_cast<int>(trie.nodes.size());
        trie.nodes[node].children[tok] = id;
        trie.nodes.emplace_back();
        node = id;
      } else {
        node = it->second;
      }
    }
    for (int prev : trie.nodes[node].entry_indices)
      if (lexicon.entries[prev].word == e.word)
        throw std::invalid_argument("duplicate lexicon entry for '" + e.word +
                                    "'");
    trie.nodes[node].entry_indices.push_back(static_cast<int>(i));
  }
  return trie;
}

namespace {

// A word mark closes the token span ending at token_end; entry >= 0 indexes
// the lexicon, entry = -(token+1) marks a single-token OOV fallback.
using WordMarks = std::vector<std::pair<int, int>>;
using LexKey = std::pair<std::vector<int>, WordMarks>;

struct LexCell {
  double pb = kLogZero;
  double pnb = kLogZero;
  double lm_sum = 0.0;
  int node = 0;
  std::vector<int> tok_frames;  // dominant-path emission frame per token
  bool meta_known = false;
};

double cell_total(const LexCell& c) { return log_add(c.pb, c.pnb); }

}  // namespace

Transcript lexicon_beam_search(const LogPosteriors& post,
                               const Vocabulary& vocab,
                               const LexiconTrie& trie, double lm_weight,
                               const BeamConfig& config) {
  config.validate();
  if (lm_weight < 0) throw std::invalid_argument("lm_weight must be >= 0");
  if (post.vocab_size() != vocab.size())
    throw std::invalid_argument("posterior/vocabulary size mismatch");
  const UnigramLexicon& lex = *trie.lexicon;
  if (trie.root().children.empty() && lex.oov_logp == kLogZero)
    throw std::invalid_argument(
        "empty lexicon with closed vocabulary: nothing decodable");

  const int T = post.frames();
  const int V = post.vocab_size();
  const int blank = vocab.blank_index;

  std::map<LexKey, LexCell> beam;
  beam[{{}, {}}] = LexCell{0.0, kLogZero, 0.0, 0, {}, true};

  // homophones: highest unigram wins, tie toward the lexicographic word
  auto best_terminal = [&](const std::vector<int>& terminals) {
    int best = terminals[0];
    for (int e : terminals) {
      const auto &we = lex.entries[e], &wb = lex.entries[best];
      if (we.unigram_logp > wb.unigram_logp ||
          (we.unigram_logp == wb.unigram_logp && we.word < wb.word))
        best = e;
    }
    return best;
  };

  for (int t = 0; t < T; ++t) {
    std::map<LexKey, LexCell> next;
    auto merge = [&](LexKey&& key, double pb_add, double pnb_add,
                     const LexCell& src, int node, int emit_frame,
                     double lm_extra) {
      auto& c = next[key];
      if (!c.meta_known) {
        c.node = node;
        c.lm_sum = src.lm_sum + lm_extra;
        c.tok_frames = src.tok_frames;
        if (emit_frame >= 0) c.tok_frames.push_back(emit_frame);
        c.meta_known = true;
      }
      if (pb_add != kLogZero) c.pb = log_add(c.pb, pb_add);
      if (pnb_add != kLogZero) c.pnb = log_add(c.pnb, pnb_add);
    };

    for (const auto& [key, cell] : beam) {
      const auto& tokens = key.first;
      double total = cell_total(cell);
      for (int v = 0; v < V; ++v) {
        double lp = post.values(t, v);
        if (lp < config.prune_log_threshold) continue;
        if (v == blank) {
          merge(LexKey(key), total + lp, kLogZero, cell, cell.node, -1, 0.0);
          continue;
        }
        bool repeat = !tokens.empty() && v == tokens.back();
        if (repeat && cell.pnb != kLogZero) {
          // same occurrence continues, no trie move
          merge(LexKey(key), kLogZero, cell.pnb + lp, cell, cell.node, -1, 0.0);
        }
        double src_mass = repeat ? cell.pb : total;
        if (src_mass == kLogZero) continue;
        auto child = trie.nodes[cell.node].children.find(v);
        if (child != trie.nodes[cell.node].children.end()) {
          LexKey nk = key;
          nk.first.push_back(v);
          merge(LexKey(nk), kLogZero, src_mass + lp, cell, child->second, t,
                0.0);
          // reaching a terminal forks an emitted twin back at the root;
          // emission happens exactly once, at arrival time
          const auto& terminals = trie.nodes[child->second].entry_indices;
          if (!terminals.empty()) {
            int entry = best_terminal(terminals);
            LexKey ek = std::move(nk);
            ek.second.emplace_back(static_cast<int>(ek.first.size()), entry);
            merge(std::move(ek), kLogZero, src_mass + lp, cell, 0, t,
                  lex.entries[entry].unigram_logp);
          }
        } else if (cell.node == 0 && lex.oov_logp != kLogZero) {
          // single-token OOV word emitted directly from the root
          LexKey nk = key;
          nk.first.push_back(v);
          nk.second.emplace_back(static_cast<int>(nk.first.size()), -(v + 1));
          merge(std::move(nk), kLogZero, src_mass + lp, cell, 0, t,
                lex.oov_logp);
        }
      }
    }

    std::vector<std::pair<LexKey, LexCell>> items(next.begin(), next.end());
    std::stable_sort(items.begin(), items.end(),
                     [&](const auto& a, const auto& b) {
                       return cell_total(a.second) + lm_weight * a.second.lm_sum >
                              cell_total(b.second) + lm_weight * b.second.lm_sum;
                     });
    if (static_cast<int>(items.size()) > config.beam_size)
      items.resize(config.beam_size);
    beam.clear();
    for (auto& [k, c] : items) beam.emplace(std::move(k), std::move(c));
  }

  // only fully word-terminated hypotheses rank at the end
  const LexKey* best_key = nullptr;
  const LexCell* best_cell = nullptr;
  double best_score = kLogZero;
  for (const auto& [key, cell] : beam) {
    if (cell.node != 0) continue;
    double score = cell_total(cell) + lm_weight * cell.lm_sum;
    if (best_cell == nullptr || score > best_score) {
      best_key = &key;
      best_cell = &cell;
      best_score = score;
    }
  }
  if (best_cell == nullptr)
    throw std::runtime_error(
        "lexicon_beam_search: no hypothesis ends on a word boundary");

  Transcript out;
  int span_begin = 0;
  for (const auto& [end, entry] : best_key->second) {
    TimedWord w;
    w.text = entry >= 0 ? lex.entries[entry].word : vocab.tokens[-(entry + 1)];
    int first = best_cell->tok_frames[span_begin];
    int last = best_cell->tok_frames[end - 1];
    w.start_s = first * post.frame_duration_s;
    w.end_s = (last + 1) * post.frame_duration_s;
    out.words.push_back(std::move(w));
    span_begin = end;
  }
  return out;
}

}  // namespace longform
