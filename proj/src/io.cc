// Copyright 2026 The longform Authors. All rights reserved.
// Use of this source code is governed by the Apache-2.0 license
// that can be found in the LICENSE file.

#include "longform/io.hpp"

#include <cstring>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace longform {

namespace {

using json = nlohmann::json;

std::vector<std::string> split_ws(std::string_view line) {
  std::vector<std::string> out;
  std::istringstream iss{std::string(line)};
  std::string tok;
  while (iss >> tok) out.push_back(tok);
  return out;
}

double parse_double(const std::string& s, int line_no, const char* what) {
  try {
    size_t pos = 0;
    double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ParseError("line " + std::to_string(line_no) + ": bad " +
                     std::string(what) + " field '" + s + "'");
  }
}

std::string fmt_time(double t) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3f", t);
  return buf;
}

void put_u32(std::string& out, uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

uint32_t get_u32(std::string_view bytes, size_t off) {
  uint32_t v = 0;
  for (int i = 0; i < 4; ++i)
    v |= static_cast<uint32_t>(static_cast<unsigned char>(bytes[off + i])) << (8 * i);
  return v;
}

}  // namespace

void Vocabulary::validate() const {
  if (size() < 2) throw std::invalid_argument("vocabulary needs at least 2 tokens");
  if (blank_index < 0 || blank_index >= size())
    throw std::invalid_argument("blank_index out of range");
  for (int i = 0; i < size(); ++i)
    for (int j = i + 1; j < size(); ++j)
      if (tokens[i] == tokens[j])
        throw std::invalid_argument("duplicate token '" + tokens[i] + "'");
}

void LogPosteriors::validate(double tol) const {
  for (int t = 0; t < frames(); ++t) {
    double m = kLogZero;
    for (int v = 0; v < vocab_size(); ++v) {
      double x = values(t, v);
      if (x > 1e-6)
        throw std::invalid_argument("frame " + std::to_string(t) +
                                    ": log-prob entry above 0");
      m = std::max(m, x);
    }
    double s = 0.0;
    for (int v = 0; v < vocab_size(); ++v) s += std::exp(values(t, v) - m);
    double lse = (m == kLogZero) ? kLogZero : m + std::log(s);
    if (!(std::abs(lse) <= tol))
      throw std::invalid_argument("frame " + std::to_string(t) +
                                  ": row not normalized (log-sum-exp = " +
                                  std::to_string(lse) + ")");
  }
}

LogPosteriors read_posteriors(std::string_view bytes) {
  static const char kMagic[4] = {'R', 'V', 'B', 'P'};
  if (bytes.size() < 4 || std::memcmp(bytes.data(), kMagic, 4) != 0)
    throw ParseError("bad magic: expected RVBP header");
  if (bytes.size() < 20) throw ParseError("truncated header (need 20 bytes)");
  uint32_t version = get_u32(bytes, 4);
  if (version != 1) throw ParseError("unsupported RVBP version " + std::to_string(version));
  uint32_t T = get_u32(bytes, 8);
  uint32_t V = get_u32(bytes, 12);
  uint32_t frame_us = get_u32(bytes, 16);
  if (frame_us == 0) throw ParseError("frame duration must be positive");
  size_t need = 20 + static_cast<size_t>(T) * V * 4;
  if (bytes.size() < need)
    throw ParseError("truncated payload: need " + std::to_string(need) +
                     " bytes, got " + std::to_string(bytes.size()));
  LogPosteriors post;
  post.frame_duration_s = frame_us * 1e-6;
  post.values.resize(T, V);
  if (T > 0 && V > 0)
    std::memcpy(post.values.data(), bytes.data() + 20,
                static_cast<size_t>(T) * V * 4);
  post.validate();
  return post;
}

std::string write_posteriors(const LogPosteriors& post) {
  std::string out = "RVBP";
  put_u32(out, 1);
  put_u32(out, static_cast<uint32_t>(post.frames()));
  put_u32(out, static_cast<uint32_t>(post.vocab_size()));
  put_u32(out, static_cast<uint32_t>(post.frame_duration_s * 1e6 + 0.5));
  size_t n = static_cast<size_t>(post.frames()) * post.vocab_size() * 4;
  size_t off = out.size();
  out.resize(off + n);
  if (n > 0) std::memcpy(out.data() + off, post.values.data(), n);
  return out;
}

Transcript parse_ctm(std::string_view text) {
  Transcript t;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.rfind(";;", 0) == 0) continue;
    auto fields = split_ws(line);
    if (fields.empty()) continue;
    if (fields.size() < 5 || fields.size() > 6)
      throw ParseError("line " + std::to_string(line_no) + ": expected 5 or 6 CTM fields, got " +
                       std::to_string(fields.size()));
    double start = parse_double(fields[2], line_no, "start");
    double dur = parse_double(fields[3], line_no, "duration");
    if (dur < 0)
      throw ParseError("line " + std::to_string(line_no) + ": negative duration");
    if (start < 0)
      throw ParseError("line " + std::to_string(line_no) + ": negative start time");
    if (t.file_id.empty()) t.file_id = fields[0];
    TimedWord w;
    w.text = fields[4];
    w.start_s = start;
    w.end_s = start + dur;
    t.words.push_back(std::move(w));
  }
  return t;
}

std::string format_ctm(const Transcript& t, const std::string& channel) {
  std::string out;
  std::string fid = t.file_id.empty() ? "unknown" : t.file_id;
  for (const auto& w : t.words) {
    double start = w.start_s.value_or(0.0);
    double dur = w.has_times() ? *w.end_s - *w.start_s : 0.0;
    out += fid + " " + channel + " " + fmt_time(start) + " " + fmt_time(dur) +
           " " + w.text + "\n";
  }
  return out;
}

std::vector<SpeakerSegment> parse_rttm(std::string_view text) {
  std::vector<SpeakerSegment> segs;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto fields = split_ws(line);
    if (fields.empty() || fields[0].rfind(";", 0) == 0) continue;
    if (fields[0] != "SPEAKER") continue;  // other record types tolerated
    if (fields.size() < 9)
      throw ParseError("line " + std::to_string(line_no) +
                       ": SPEAKER record needs at least 9 fields");
    SpeakerSegment s;
    s.file_id = fields[1];
    double start = parse_double(fields[3], line_no, "start");
    double dur = parse_double(fields[4], line_no, "duration");
    if (dur <= 0)
      throw ParseError("line " + std::to_string(line_no) + ": non-positive duration");
    s.start_s = start;
    s.end_s = start + dur;
    s.speaker = fields[7];
    segs.push_back(std::move(s));
  }
  return segs;
}

std::string format_rttm(const std::vector<SpeakerSegment>& segments) {
  std::string out;
  for (const auto& s : segments) {
    out += "SPEAKER " + s.file_id + " 1 " + fmt_time(s.start_s) + " " +
           fmt_time(s.end_s - s.start_s) + " <NA> <NA> " + s.speaker +
           " <NA> <NA>\n";
  }
  return out;
}

Transcript parse_transcript_doc(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("transcript document: ") + e.what());
  }
  Transcript t;
  if (!doc.is_object() || !doc.contains("file_id") || !doc.contains("words"))
    throw ParseError("transcript document: need object with file_id and words");
  t.file_id = doc.at("file_id").get<std::string>();
  for (const auto& jw : doc.at("words")) {
    TimedWord w;
    w.text = jw.at("text").get<std::string>();
    if (jw.contains("start_s")) w.start_s = jw.at("start_s").get<double>();
    if (jw.contains("end_s")) w.end_s = jw.at("end_s").get<double>();
    if (jw.contains("speaker")) w.speaker = jw.at("speaker").get<std::string>();
    t.words.push_back(std::move(w));
  }
  return t;
}

std::string format_transcript_doc(const Transcript& t) {
  json words = json::array();
  for (const auto& w : t.words) {
    json jw;
    jw["text"] = w.text;
    if (w.start_s) jw["start_s"] = *w.start_s;
    if (w.end_s) jw["end_s"] = *w.end_s;
    if (w.speaker) jw["speaker"] = *w.speaker;
    words.push_back(std::move(jw));
  }
  json doc;
  doc["file_id"] = t.file_id;
  doc["words"] = std::move(words);
  return doc.dump(2) + "\n";
}

Vocabulary parse_vocab(std::string_view text) {
  Vocabulary v;
  v.blank_index = -1;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
    if (line.empty()) continue;
    if (line == "<blk>") v.blank_index = static_cast<int>(v.tokens.size());
    v.tokens.push_back(line);
  }
  if (v.blank_index < 0) throw ParseError("vocabulary has no <blk> line");
  v.validate();
  return v;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, std::string_view data) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out.write(data.data(), static_cast<std::streamsize>(data.size()));
}

std::string fnv1a64_hex(std::string_view data) {
  uint64_t h = 1469598103934665603ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace longform
