// Copyright 2026 The longform Authors. All rights reserved.
// Use of this source code is governed by the Apache-2.0 license
// that can be found in the LICENSE file.
//
// longform: CTC decoding and long-form ASR evaluation toolkit.

#include <atomic>
#include <chrono>
#include <filesystem>
#include <iostream>
#include <mutex>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"
#include "longform/attribute.hpp"
#include "longform/align.hpp"
#include "longform/chunk.hpp"
#include "longform/ctc.hpp"
#include "longform/io.hpp"
#include "longform/lexicon.hpp"
#include "longform/normalize.hpp"
#include "longform/synth.hpp"
#include "longform/verbatim.hpp"
#include "longform/wder.hpp"

namespace fs = std::filesystem;
using json = nlohmann::json;
using namespace longform;

namespace {

constexpr const char* kVersion = "0.1.0";

struct GlobalOpts {
  int jobs = static_cast<int>(std::thread::hardware_concurrency());
  uint64_t seed = 0;
  std::string output_dir;
  bool quiet = false;
};

void log_err(const GlobalOpts& g, const std::string& msg) {
  if (!g.quiet) std::cerr << "longform: " << msg << "\n";
}

void run_parallel(int n, int jobs, const std::function<void(int)>& fn) {
  jobs = std::max(1, std::min(jobs, n));
  if (jobs <= 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(jobs);
  for (int w = 0; w < jobs; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) fn(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

std::string stem_of(const std::string& path) {
  return fs::path(path).stem().string();
}

// Writes the run manifest next to the outputs; data files stay free of
// timestamps so reruns are byte-identical.
struct ManifestWriter {
  json manifest;
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();

  void init(int argc, char** argv, const GlobalOpts& g) {
    (void)g;
    manifest["tool_version"] = kVersion;
    json args = json::array();
    for (int i = 0; i < argc; ++i) args.push_back(argv[i]);
    manifest["command_line"] = args;
    manifest["inputs"] = json::object();
    manifest["config"] = json::object();
  }
  void add_input(const std::string& path, const std::string& bytes) {
    manifest["inputs"][path] = fnv1a64_hex(bytes);
  }
  void set_config(const json& cfg) { manifest["config"] = cfg; }
  void finish(const GlobalOpts& g) {
    if (g.output_dir.empty()) return;
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                  std::chrono::steady_clock::now() - t0)
                  .count();
    manifest["elapsed_ms"] = ms;
    fs::create_directories(g.output_dir);
    write_file((fs::path(g.output_dir) / "manifest.json").string(),
               manifest.dump(2) + "\n");
  }
};

void emit_output(const GlobalOpts& g, const std::string& name,
                 const std::string& data) {
  if (g.output_dir.empty()) {
    std::cout << data;
  } else {
    fs::create_directories(g.output_dir);
    write_file((fs::path(g.output_dir) / name).string(), data);
  }
}

// Recovers per-token run extents for transcripts built from raw token
// sequences: the Viterbi alignment of the decoded sequence to the matrix.
Transcript tokens_to_transcript(const std::vector<int>& tokens,
                                const LogPosteriors& post,
                                const Vocabulary& vocab,
                                const std::string& file_id) {
  Transcript t;
  t.file_id = file_id;
  if (tokens.empty()) return t;
  AlignmentPath path = forced_align(post, vocab, tokens);
  for (size_t i = 0; i < tokens.size(); ++i) {
    int first = path.token_frames[i];
    int last = first;
    while (last + 1 < post.frames() &&
           path.frame_labels[last + 1] == tokens[i] &&
           (i + 1 == tokens.size() ||
            last + 1 < path.token_frames[i + 1]))
      ++last;
    TimedWord w;
    w.text = vocab.tokens[tokens[i]];
    w.start_s = first * post.frame_duration_s;
    w.end_s = (last + 1) * post.frame_duration_s;
    t.words.push_back(std::move(w));
  }
  return t;
}

TableScorer load_table_scorer(const std::string& path, const Vocabulary& vocab) {
  TableScorer scorer(vocab.size());
  std::string text = read_file(path);
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    // "prefix tokens|next_token|logp"; empty prefix allowed
    auto p1 = line.find('|');
    auto p2 = line.rfind('|');
    if (p1 == std::string::npos || p2 == p1)
      throw ParseError("scorer table line " + std::to_string(line_no) +
                       ": expected prefix|token|logp");
    std::vector<int> prefix;
    std::istringstream ptoks(line.substr(0, p1));
    std::string tok;
    while (ptoks >> tok) {
      int idx = vocab.find(tok);
      if (idx < 0)
        throw ParseError("scorer table line " + std::to_string(line_no) +
                         ": unknown token '" + tok + "'");
      prefix.push_back(idx);
    }
    std::string next = line.substr(p1 + 1, p2 - p1 - 1);
    int next_idx = vocab.find(next);
    if (next_idx < 0)
      throw ParseError("scorer table line " + std::to_string(line_no) +
                       ": unknown token '" + next + "'");
    scorer.set(prefix, next_idx, std::stod(line.substr(p2 + 1)));
  }
  return scorer;
}

struct DecodeOpts {
  std::string mode = "greedy";
  std::string vocab_path;
  std::string lexicon_path;
  std::string scorer_table_path;
  int beam = 10;
  double ctc_weight = 0.5;
  double verbatimicity = 1.0;
  double lm_weight = 0.5;
  std::string format = "doc";  // doc | ctm
};

BeamConfig beam_config(const DecodeOpts& d) {
  BeamConfig cfg;
  cfg.beam_size = d.beam;
  cfg.ctc_weight = d.ctc_weight;
  cfg.verbatimicity = d.verbatimicity;
  return cfg;
}

Transcript decode_one(const LogPosteriors& post, const Vocabulary& vocab,
                      const DecodeOpts& d, const LexiconTrie* trie,
                      const SequenceScorer* scorer,
                      const std::string& file_id) {
  BeamConfig cfg = beam_config(d);
  if (d.mode == "greedy") {
    return tokens_to_transcript(greedy_decode(post, vocab), post, vocab,
                                file_id);
  }
  if (d.mode == "beam") {
    auto hyps = prefix_beam_search(post, vocab, cfg, scorer);
    return tokens_to_transcript(hyps.empty() ? std::vector<int>{}
                                             : hyps.front().tokens,
                                post, vocab, file_id);
  }
  if (d.mode == "rescore") {
    if (scorer == nullptr)
      throw std::invalid_argument("mode rescore needs --scorer-table");
    auto hyps = prefix_beam_search(post, vocab, cfg);
    auto ranked = attention_rescore(hyps, *scorer, cfg);
    return tokens_to_transcript(ranked.front().tokens, post, vocab, file_id);
  }
  if (d.mode == "joint") {
    if (scorer == nullptr)
      throw std::invalid_argument("mode joint needs --scorer-table");
    auto hyps = joint_decode(post, vocab, *scorer, cfg);
    return tokens_to_transcript(hyps.empty() ? std::vector<int>{}
                                             : hyps.front().tokens,
                                post, vocab, file_id);
  }
  if (d.mode == "lexicon") {
    if (trie == nullptr)
      throw std::invalid_argument("mode lexicon needs --lexicon");
    Transcript t = lexicon_beam_search(post, vocab, *trie, d.lm_weight, cfg);
    t.file_id = file_id;
    return t;
  }
  throw std::invalid_argument("unknown decode mode '" + d.mode + "'");
}

std::string render_transcript(const Transcript& t, const std::string& format) {
  if (format == "ctm") return format_ctm(t);
  if (format == "doc") return format_transcript_doc(t);
  throw std::invalid_argument("unknown output format '" + format + "'");
}

// Loads a scoring-side transcript: .json transcript document, .ctm, or
// plain text (one transcript per file).
Transcript load_transcript(const std::string& path) {
  std::string text = read_file(path);
  std::string ext = fs::path(path).extension().string();
  if (ext == ".json") return parse_transcript_doc(text);
  if (ext == ".ctm") return parse_ctm(text);
  Transcript t;
  t.file_id = stem_of(path);
  std::istringstream in(text);
  std::string w;
  while (in >> w) t.words.push_back({w, {}, {}, {}});
  return t;
}

std::vector<std::pair<std::string, std::string>> pair_inputs(
    const std::string& ref, const std::string& hyp) {
  std::vector<std::pair<std::string, std::string>> pairs;
  if (!fs::is_directory(ref)) {
    pairs.emplace_back(ref, hyp);
    return pairs;
  }
  std::vector<fs::path> refs;
  for (const auto& e : fs::directory_iterator(ref))
    if (e.is_regular_file()) refs.push_back(e.path());
  std::sort(refs.begin(), refs.end());
  for (const auto& r : refs) {
    fs::path h = fs::path(hyp) / r.filename();
    if (!fs::exists(h)) {
      // allow a different extension on the hypothesis side
      bool found = false;
      for (const char* ext : {".json", ".ctm", ".txt"}) {
        fs::path cand = fs::path(hyp) / (r.stem().string() + ext);
        if (fs::exists(cand)) {
          h = cand;
          found = true;
          break;
        }
      }
      if (!found)
        throw std::runtime_error("no hypothesis file for " + r.string());
    }
    pairs.emplace_back(r.string(), h.string());
  }
  return pairs;
}

// Per-word alignment keys: the word's normalized form, so scoring and
// speaker attribution stay index-aligned with the transcript.
std::vector<std::string> word_keys(const Transcript& t) {
  std::vector<std::string> keys;
  for (const auto& w : t.words) {
    auto toks = normalize(w.text);
    std::string key;
    for (const auto& x : toks) key += key.empty() ? x : "_" + x;
    if (key.empty()) {
      key = w.text;
      for (auto& c : key)
        if (c >= 'A' && c <= 'Z') c += 0x20;
    }
    keys.push_back(key);
  }
  return keys;
}

int cmd_decode(const GlobalOpts& g, const DecodeOpts& d,
               const std::vector<std::string>& inputs, ManifestWriter& mw) {
  Vocabulary vocab = parse_vocab(read_file(d.vocab_path));
  std::unique_ptr<LexiconTrie> trie;
  UnigramLexicon lex;
  if (!d.lexicon_path.empty()) {
    lex = parse_lexicon(read_file(d.lexicon_path), vocab);
    trie = std::make_unique<LexiconTrie>(compile_trie(lex));
  }
  std::unique_ptr<TableScorer> scorer;
  if (!d.scorer_table_path.empty())
    scorer = std::make_unique<TableScorer>(
        load_table_scorer(d.scorer_table_path, vocab));

  std::vector<std::string> outputs(inputs.size());
  std::mutex io_mutex;
  run_parallel(static_cast<int>(inputs.size()), g.jobs, [&](int i) {
    std::string bytes = read_file(inputs[i]);
    {
      std::lock_guard<std::mutex> lock(io_mutex);
      mw.add_input(inputs[i], bytes);
    }
    LogPosteriors post = read_posteriors(bytes);
    Transcript t = decode_one(post, vocab, d, trie.get(), scorer.get(),
                              stem_of(inputs[i]));
    outputs[i] = render_transcript(t, d.format);
  });
  for (size_t i = 0; i < inputs.size(); ++i) {
    std::string ext = d.format == "ctm" ? ".ctm" : ".json";
    emit_output(g, stem_of(inputs[i]) + ext, outputs[i]);
  }
  return 0;
}

int cmd_pipeline(const GlobalOpts& g, const DecodeOpts& d,
                 const std::string& input, double chunk_s, double overlap_s,
                 int min_agreement, ManifestWriter& mw) {
  Vocabulary vocab = parse_vocab(read_file(d.vocab_path));
  std::unique_ptr<LexiconTrie> trie;
  UnigramLexicon lex;
  if (!d.lexicon_path.empty()) {
    lex = parse_lexicon(read_file(d.lexicon_path), vocab);
    trie = std::make_unique<LexiconTrie>(compile_trie(lex));
  }
  std::string bytes = read_file(input);
  mw.add_input(input, bytes);
  LogPosteriors post = read_posteriors(bytes);
  double dur = post.frame_duration_s;
  int chunk_frames = std::max(1, static_cast<int>(chunk_s / dur + 0.5));
  int overlap_frames = static_cast<int>(overlap_s / dur + 0.5);
  auto plan = plan_chunks(post.frames(), chunk_frames, overlap_frames);

  std::vector<ChunkResult> results(plan.size());
  run_parallel(static_cast<int>(plan.size()), g.jobs, [&](int i) {
    const ChunkSpec& spec = plan[i];
    LogPosteriors piece;
    piece.frame_duration_s = dur;
    piece.values = post.values.middleRows(spec.start_frame,
                                          spec.end_frame - spec.start_frame);
    Transcript t = decode_one(piece, vocab, d, trie.get(), nullptr, "chunk");
    ChunkResult r;
    r.spec = spec;
    r.frame_duration_s = dur;
    double offset = spec.start_frame * dur;
    for (auto w : t.words) {
      if (w.start_s) w.start_s = *w.start_s + offset;
      if (w.end_s) w.end_s = *w.end_s + offset;
      r.words.push_back(std::move(w));
    }
    results[i] = std::move(r);
  });
  Transcript stitched = stitch(results, min_agreement);
  stitched.file_id = stem_of(input);
  std::string ext = d.format == "ctm" ? ".ctm" : ".json";
  emit_output(g, stitched.file_id + ext, render_transcript(stitched, d.format));
  return 0;
}

int cmd_score(const GlobalOpts& g, const std::string& ref,
              const std::string& hyp, const std::string& suite,
              const NormalizationConfig& norm, const std::string& sbs_dir,
              ManifestWriter& mw) {
  auto pairs = pair_inputs(ref, hyp);
  std::vector<FileScore> scores(pairs.size());
  std::vector<std::string> failures(pairs.size());
  std::mutex io_mutex;
  run_parallel(static_cast<int>(pairs.size()), g.jobs, [&](int i) {
    try {
      Transcript r = load_transcript(pairs[i].first);
      Transcript h = load_transcript(pairs[i].second);
      if (r.file_id.empty()) r.file_id = stem_of(pairs[i].first);
      scores[i] = score_file(r, h, norm);
      scores[i].file_id = stem_of(pairs[i].first);
      if (!sbs_dir.empty()) {
        std::string rj, hj;
        for (const auto& w : r.words) rj += w.text + " ";
        for (const auto& w : h.words) hj += w.text + " ";
        auto rw = normalize(rj, norm);
        auto hw = normalize(hj, norm);
        auto ops = align_words(rw, hw);
        fs::create_directories(sbs_dir);
        write_file((fs::path(sbs_dir) / (scores[i].file_id + ".sbs")).string(),
                   side_by_side(rw, hw, ops));
      }
      std::lock_guard<std::mutex> lock(io_mutex);
      mw.add_input(pairs[i].first, format_transcript_doc(r));
    } catch (const std::exception& e) {
      failures[i] = e.what();
    }
  });
  bool failed = false;
  std::vector<FileScore> ok;
  for (size_t i = 0; i < pairs.size(); ++i) {
    if (!failures[i].empty()) {
      log_err(g, pairs[i].first + ": " + failures[i]);
      failed = true;
    } else {
      ok.push_back(scores[i]);
    }
  }
  if (ok.empty()) {
    log_err(g, "no file scored");
    return 1;
  }
  SuiteReport report = micro_average(ok, suite);
  std::ostringstream out;
  for (const auto& s : report.files) {
    char line[256];
    std::snprintf(line, sizeof(line),
                  "file %s ref_words %lld C %lld S %lld I %lld D %lld wer "
                  "%.4f\n",
                  s.file_id.c_str(), static_cast<long long>(s.ref_words),
                  static_cast<long long>(s.counts.correct),
                  static_cast<long long>(s.counts.substitutions),
                  static_cast<long long>(s.counts.insertions),
                  static_cast<long long>(s.counts.deletions), s.wer);
    out << line;
  }
  char tail[160];
  std::snprintf(tail, sizeof(tail),
                "suite %s files %zu ref_words %lld errors %lld micro_wer "
                "%.4f\n",
                suite.empty() ? "default" : suite.c_str(), report.files.size(),
                static_cast<long long>(report.total_ref_words),
                static_cast<long long>(report.total_errors), report.micro_wer);
  out << tail;
  emit_output(g, "report.txt", out.str());
  if (!g.output_dir.empty()) std::cout << tail;
  return failed ? 1 : 0;
}

Transcript load_speaker_transcript(const std::string& path,
                                   const std::string& rttm_path) {
  Transcript t = load_transcript(path);
  if (!rttm_path.empty()) {
    auto segs = parse_rttm(read_file(rttm_path));
    t = attribute_speakers(t, segs);
  }
  return t;
}

int cmd_wder(const GlobalOpts& g, const std::string& ref,
             const std::string& hyp, const std::string& ref_rttm,
             const std::string& hyp_rttm, ManifestWriter& mw) {
  auto pairs = pair_inputs(ref, hyp);
  if (pairs.size() != 1 && (!ref_rttm.empty() || !hyp_rttm.empty()))
    throw std::runtime_error("RTTM flags only apply to single-file scoring");
  int64_t pooled_eligible = 0, pooled_errors = 0;
  std::ostringstream out;
  for (const auto& [rp, hp] : pairs) {
    Transcript r = load_speaker_transcript(rp, ref_rttm);
    Transcript h = load_speaker_transcript(hp, hyp_rttm);
    mw.add_input(rp, format_transcript_doc(r));
    auto ops = align_words(word_keys(r), word_keys(h));
    auto mapping = optimal_speaker_map(ops, r, h);
    auto score = compute_wder(ops, r, h, mapping);
    pooled_eligible += score.eligible_words;
    pooled_errors += score.speaker_errors;
    char line[256];
    std::snprintf(line, sizeof(line),
                  "file %s eligible %lld speaker_errors %lld unlabeled %lld "
                  "wder %.4f\n",
                  stem_of(rp).c_str(),
                  static_cast<long long>(score.eligible_words),
                  static_cast<long long>(score.speaker_errors),
                  static_cast<long long>(score.unlabeled_words), score.wder);
    out << line;
  }
  char tail[128];
  std::snprintf(tail, sizeof(tail),
                "pooled eligible %lld speaker_errors %lld wder %.4f\n",
                static_cast<long long>(pooled_eligible),
                static_cast<long long>(pooled_errors),
                pooled_eligible > 0
                    ? static_cast<double>(pooled_errors) / pooled_eligible
                    : 0.0);
  out << tail;
  emit_output(g, "wder.txt", out.str());
  return 0;
}

int cmd_normalize(const NormalizationConfig& cfg) {
  std::string line;
  while (std::getline(std::cin, line)) {
    auto toks = normalize(line, cfg);
    std::string joined;
    for (const auto& t : toks) joined += joined.empty() ? t : " " + t;
    std::cout << joined << "\n";
  }
  return 0;
}

int cmd_filter_verbatim(const GlobalOpts& g, double level, bool emit_spans,
                        const std::vector<std::string>& inputs,
                        ManifestWriter& mw) {
  for (const auto& path : inputs) {
    std::string bytes = read_file(path);
    mw.add_input(path, bytes);
    Transcript t = parse_transcript_doc(bytes);
    if (emit_spans) {
      std::vector<std::string> det;
      for (const auto& w : t.words) {
        auto toks = normalize(w.text);
        det.push_back(toks.empty() ? w.text : toks[0]);
      }
      std::ostringstream out;
      for (const auto& s : detect_disfluencies(det))
        out << s.begin << "\t" << s.end << "\t"
            << disfluency_category_name(s.category) << "\n";
      emit_output(g, stem_of(path) + ".spans", out.str());
    } else {
      Transcript filtered = apply_verbatimicity(t, level);
      emit_output(g, stem_of(path) + ".json", format_transcript_doc(filtered));
    }
  }
  return 0;
}

int cmd_stitch(const GlobalOpts& g, double chunk_s, double overlap_s,
               int min_agreement, const std::vector<std::string>& inputs,
               ManifestWriter& mw) {
  // reconstruct chunk windows on a 10 ms grid from the CLI geometry
  const double grid = 0.01;
  std::vector<ChunkResult> results;
  double stride = chunk_s - overlap_s;
  if (stride <= 0) throw std::runtime_error("need chunk-s > overlap-s");
  for (size_t i = 0; i < inputs.size(); ++i) {
    std::string bytes = read_file(inputs[i]);
    mw.add_input(inputs[i], bytes);
    Transcript t = parse_transcript_doc(bytes);
    ChunkResult r;
    r.spec.index = static_cast<int>(i);
    r.spec.start_frame = static_cast<int>(i * stride / grid + 0.5);
    r.spec.end_frame = static_cast<int>((i * stride + chunk_s) / grid + 0.5);
    r.frame_duration_s = grid;
    r.words = t.words;
    results.push_back(std::move(r));
  }
  Transcript out = stitch(results, min_agreement);
  out.file_id = results.empty() ? "stitched" : stem_of(inputs[0]);
  emit_output(g, out.file_id + ".json", format_transcript_doc(out));
  return 0;
}

int cmd_synth(const GlobalOpts& g, const std::string& vocab_path,
              const std::string& text, const SynthConfig& synth_cfg,
              const std::string& out_path) {
  Vocabulary vocab = parse_vocab(read_file(vocab_path));
  std::vector<int> tokens;
  std::istringstream in(text);
  std::string tok;
  while (in >> tok) {
    int idx = vocab.find(tok);
    if (idx < 0) throw std::runtime_error("synth: unknown token '" + tok + "'");
    tokens.push_back(idx);
  }
  LogPosteriors post = synth_posteriors(tokens, vocab, synth_cfg);
  std::string bytes = write_posteriors(post);
  if (out_path.empty())
    emit_output(g, "synth.rvbp", bytes);
  else
    write_file(out_path, bytes);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"CTC decoding and long-form ASR evaluation toolkit"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand
  GlobalOpts g;
  app.add_option("--jobs", g.jobs, "parallel worker count");
  app.add_option("--seed", g.seed, "RNG seed for synthetic data");
  app.add_option("--output-dir", g.output_dir,
                 "write outputs (and a run manifest) here instead of stdout");
  app.add_flag("--quiet", g.quiet, "suppress log output");

  DecodeOpts d;
  std::vector<std::string> inputs;

  auto* decode = app.add_subcommand("decode", "decode RVBP posterior files");
  decode->add_option("--mode", d.mode,
                     "greedy|beam|rescore|joint|lexicon");
  decode->add_option("--vocab", d.vocab_path, "token list file")->required();
  decode->add_option("--beam", d.beam, "beam size");
  decode->add_option("--ctc-weight", d.ctc_weight, "CTC weight in [0,1]");
  decode->add_option("--verbatimicity", d.verbatimicity,
                     "scorer conditioning level in [0,1]");
  decode->add_option("--lexicon", d.lexicon_path, "lexicon file (mode lexicon)");
  decode->add_option("--lm-weight", d.lm_weight, "unigram fusion weight");
  decode->add_option("--scorer-table", d.scorer_table_path,
                     "table scorer file (modes rescore/joint)");
  decode->add_option("--format", d.format, "doc|ctm");
  decode->add_option("inputs", inputs, "RVBP files")->required();

  double chunk_s = 20.0, overlap_s = 2.0;
  int min_agreement = 3;
  std::string single_input;
  auto* pipeline =
      app.add_subcommand("pipeline", "chunked decode + stitch of one stream");
  pipeline->add_option("--mode", d.mode, "greedy|beam|lexicon");
  pipeline->add_option("--vocab", d.vocab_path, "token list file")->required();
  pipeline->add_option("--beam", d.beam, "beam size");
  pipeline->add_option("--lexicon", d.lexicon_path, "lexicon file");
  pipeline->add_option("--lm-weight", d.lm_weight, "unigram fusion weight");
  pipeline->add_option("--chunk-s", chunk_s, "chunk length in seconds");
  pipeline->add_option("--overlap-s", overlap_s, "chunk overlap in seconds");
  pipeline->add_option("--min-agreement", min_agreement,
                       "words of overlap agreement required for an LCS seam");
  pipeline->add_option("--format", d.format, "doc|ctm");
  pipeline->add_option("input", single_input, "RVBP file")->required();

  std::string ref_path, hyp_path, suite_name = "default", sbs_dir;
  NormalizationConfig norm;
  bool no_lowercase = false, keep_punct = false, remove_fillers = false;
  std::vector<std::string> fillers;
  auto* score = app.add_subcommand("score", "WER scoring with micro-average");
  score->add_option("--ref", ref_path, "reference file or directory")
      ->required();
  score->add_option("--hyp", hyp_path, "hypothesis file or directory")
      ->required();
  score->add_option("--suite-name", suite_name, "suite label for the report");
  score->add_option("--side-by-side", sbs_dir, "write per-file diffs here");
  score->add_flag("--no-lowercase", no_lowercase, "keep case");
  score->add_flag("--keep-punctuation", keep_punct, "keep punctuation");
  score->add_flag("--remove-fillers", remove_fillers,
                  "drop filler tokens before scoring");

  std::string ref_rttm, hyp_rttm;
  auto* wder_cmd =
      app.add_subcommand("wder", "speaker-attributed WDER scoring");
  wder_cmd->add_option("--ref", ref_path, "reference transcripts")->required();
  wder_cmd->add_option("--hyp", hyp_path, "hypothesis transcripts")->required();
  wder_cmd->add_option("--ref-rttm", ref_rttm,
                       "attach reference speakers from this RTTM");
  wder_cmd->add_option("--hyp-rttm", hyp_rttm,
                       "attach hypothesis speakers from this RTTM");

  auto* normalize_cmd =
      app.add_subcommand("normalize", "normalize text lines from stdin");
  normalize_cmd->add_flag("--no-lowercase", no_lowercase, "keep case");
  normalize_cmd->add_flag("--keep-punctuation", keep_punct, "keep punctuation");
  normalize_cmd->add_flag("--remove-fillers", remove_fillers,
                          "drop filler tokens");
  normalize_cmd->add_option("--filler", fillers,
                            "override the filler token set");

  double level = 1.0;
  bool emit_spans = false;
  auto* filter = app.add_subcommand("filter-verbatim",
                                    "apply a verbatimicity level to documents");
  filter->add_option("--level", level, "verbatimicity in [0,1]")->required();
  filter->add_flag("--emit-spans", emit_spans,
                   "dump detected disfluency spans instead of filtering");
  filter->add_option("inputs", inputs, "transcript documents")->required();

  auto* stitch_cmd =
      app.add_subcommand("stitch", "stitch chunk transcript documents");
  stitch_cmd->add_option("--chunk-s", chunk_s, "chunk length in seconds");
  stitch_cmd->add_option("--overlap-s", overlap_s, "chunk overlap in seconds");
  stitch_cmd->add_option("--min-agreement", min_agreement,
                         "LCS agreement threshold");
  stitch_cmd->add_option("inputs", inputs, "chunk documents in order")
      ->required();

  SynthConfig synth_cfg;
  std::string synth_text, synth_out;
  auto* synth = app.add_subcommand(
      "synth", "generate peaked RVBP posteriors from a token sequence");
  synth->add_option("--vocab", d.vocab_path, "token list file")->required();
  synth->add_option("--tokens", synth_text, "space-separated token sequence")
      ->required();
  synth->add_option("--frames-per-token", synth_cfg.frames_per_token,
                    "frames per token");
  synth->add_option("--blank-frames", synth_cfg.blank_frames,
                    "blank separator frames");
  synth->add_option("--peak", synth_cfg.peak_prob, "peak probability");
  synth->add_option("--noise", synth_cfg.noise, "off-peak jitter amount");
  synth->add_option("--frame-dur", synth_cfg.frame_duration_s,
                    "seconds per frame");
  synth->add_option("--out", synth_out, "output RVBP path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  norm.lowercase = !no_lowercase;
  norm.strip_punctuation = !keep_punct;
  norm.apply_filler_removal = remove_fillers;
  if (!fillers.empty())
    norm.filler_tokens = std::set<std::string>(fillers.begin(), fillers.end());
  synth_cfg.seed = g.seed;

  ManifestWriter mw;
  mw.init(argc, argv, g);

  try {
    int rc = 0;
    if (decode->parsed()) {
      mw.set_config({{"mode", d.mode},
                     {"beam", d.beam},
                     {"ctc_weight", d.ctc_weight},
                     {"verbatimicity", d.verbatimicity},
                     {"lm_weight", d.lm_weight},
                     {"format", d.format}});
      rc = cmd_decode(g, d, inputs, mw);
    } else if (pipeline->parsed()) {
      mw.set_config({{"mode", d.mode},
                     {"chunk_s", chunk_s},
                     {"overlap_s", overlap_s},
                     {"min_agreement", min_agreement}});
      rc = cmd_pipeline(g, d, single_input, chunk_s, overlap_s, min_agreement,
                        mw);
    } else if (score->parsed()) {
      mw.set_config({{"suite", suite_name}});
      rc = cmd_score(g, ref_path, hyp_path, suite_name, norm, sbs_dir, mw);
    } else if (wder_cmd->parsed()) {
      rc = cmd_wder(g, ref_path, hyp_path, ref_rttm, hyp_rttm, mw);
    } else if (normalize_cmd->parsed()) {
      rc = cmd_normalize(norm);
    } else if (filter->parsed()) {
      mw.set_config({{"level", level}});
      rc = cmd_filter_verbatim(g, level, emit_spans, inputs, mw);
    } else if (stitch_cmd->parsed()) {
      rc = cmd_stitch(g, chunk_s, overlap_s, min_agreement, inputs, mw);
    } else if (synth->parsed()) {
      mw.set_config({{"tokens", synth_text},
                     {"frames_per_token", synth_cfg.frames_per_token},
                     {"peak", synth_cfg.peak_prob},
                     {"noise", synth_cfg.noise},
                     {"seed", g.seed}});
      rc = cmd_synth(g, d.vocab_path, synth_text, synth_cfg, synth_out);
    }
    mw.finish(g);
    return rc;
  } catch (const std::exception& e) {
    log_err(g, e.what());
    return 1;
  }
}
