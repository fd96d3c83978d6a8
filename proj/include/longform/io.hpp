// Copyright 2026 The longform Authors. All rights reserved.
// Use of this source code is governed by the Apache-2.0 license
// that can be found in the LICENSE file.

#ifndef LONGFORM_IO_HPP
#define LONGFORM_IO_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "longform/types.hpp"

namespace longform {

// Raised by every parser in this header; message carries the line number
// or byte offset of the first offending record.
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

// RVBP posterior binary: magic "RVBP", then little-endian u32 version (=1),
// u32 T, u32 V, u32 frame duration in microseconds, then T*V f32 values,
// frame-major. Values are natural-log probabilities.
LogPosteriors read_posteriors(std::string_view bytes);
std::string write_posteriors(const LogPosteriors& post);

// CTM: "file channel start dur word [conf]" per line, ";;" comments.
Transcript parse_ctm(std::string_view text);
std::string format_ctm(const Transcript& t, const std::string& channel = "1");

// RTTM SPEAKER records; non-SPEAKER record types are skipped.
std::vector<SpeakerSegment> parse_rttm(std::string_view text);
std::string format_rttm(const std::vector<SpeakerSegment>& segments);

// Transcript document, JSON:
//   {"file_id": "...", "words": [{"text": "...", "start_s": 1.0,
//    "end_s": 2.0, "speaker": "A"}, ...]}
// start_s/end_s/speaker are optional per word.
Transcript parse_transcript_doc(std::string_view text);
std::string format_transcript_doc(const Transcript& t);

// Vocabulary file: one token per line; the blank token is the line "<blk>".
Vocabulary parse_vocab(std::string_view text);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view data);

// FNV-1a 64 over raw bytes, hex encoded. Used for manifest input digests.
std::string fnv1a64_hex(std::string_view data);

}  // namespace longform

#endif  // LONGFORM_IO_HPP
