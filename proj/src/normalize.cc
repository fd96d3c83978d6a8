// Copyright 2026 The longform Authors. All rights reserved.
// Use of this source code is governed by the Apache-2.0 license
// that can be found in the LICENSE file.

#include "longform/normalize.hpp"

#include <cstdint>

namespace longform {

namespace {

// Decodes UTF-8, mapping malformed bytes to U+FFFD.
std::vector<uint32_t> decode_utf8(const std::string& s) {
  std::vector<uint32_t> cps;
  size_t i = 0;
  while (i < s.size()) {
    unsigned char c = s[i];
    uint32_t cp = 0xFFFD;
    size_t len = 1;
    if (c < 0x80) {
      cp = c;
    } else if ((c & 0xE0) == 0xC0 && i + 1 < s.size()) {
      cp = (c & 0x1F) << 6 | (s[i + 1] & 0x3F);
      len = 2;
    } else if ((c & 0xF0) == 0xE0 && i + 2 < s.size()) {
      cp = (c & 0x0F) << 12 | (s[i + 1] & 0x3F) << 6 | (s[i + 2] & 0x3F);
      len = 3;
    } else if ((c & 0xF8) == 0xF0 && i + 3 < s.size()) {
      cp = (c & 0x07) << 18 | (s[i + 1] & 0x3F) << 12 | (s[i + 2] & 0x3F) << 6 |
           (s[i + 3] & 0x3F);
      len = 4;
    }
    cps.push_back(cp);
    i += len;
  }
  return cps;
}

void encode_utf8(uint32_t cp, std::string& out) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

bool is_space_cp(uint32_t cp) {
  return cp == ' ' || cp == '\t' || cp == '\n' || cp == '\r' || cp == '\f' ||
         cp == '\v' || cp == 0x00A0 || cp == 0x3000 ||
         (cp >= 0x2000 && cp <= 0x200B);
}

// Unicode P* coverage for the scripts this toolkit meets in practice:
// ASCII, Latin-1, General Punctuation, CJK symbols, fullwidth forms.
bool is_punct_cp(uint32_t cp) {
  if (cp < 0x80) {
    return (cp >= '!' && cp <= '/') || (cp >= ':' && cp <= '@') ||
           (cp >= '[' && cp <= '`') || (cp >= '{' && cp <= '~');
  }
  if (cp == 0xA1 || cp == 0xA7 || cp == 0xAB || cp == 0xAD || cp == 0xB6 ||
      cp == 0xB7 || cp == 0xBB || cp == 0xBF)
    return true;
  if (cp >= 0x2010 && cp <= 0x2027) return true;
  if (cp >= 0x2030 && cp <= 0x205E) return true;
  if (cp >= 0x3001 && cp <= 0x303F) return true;
  if (cp >= 0xFF01 && cp <= 0xFF0F) return true;
  if (cp >= 0xFF1A && cp <= 0xFF20) return true;
  if (cp >= 0xFF3B && cp <= 0xFF40) return true;
  if (cp >= 0xFF5B && cp <= 0xFF65) return true;
  return false;
}

bool is_word_cp(uint32_t cp) { return !is_space_cp(cp) && !is_punct_cp(cp); }

bool is_apostrophe(uint32_t cp) { return cp == '\'' || cp == 0x2019; }

bool is_hyphen(uint32_t cp) { return cp == '-' || cp == 0x2010 || cp == 0x2011; }

uint32_t lower_cp(uint32_t cp) {
  if (cp >= 'A' && cp <= 'Z') return cp + 0x20;
  if (cp >= 0xC0 && cp <= 0xDE && cp != 0xD7) return cp + 0x20;  // Latin-1
  return cp;
}

}  // namespace

std::vector<std::string> normalize(const std::string& text,
                                   const NormalizationConfig& config) {
  std::vector<uint32_t> cps = decode_utf8(text);
  if (config.lowercase)
    for (auto& cp : cps) cp = lower_cp(cp);

  std::string flat;
  for (size_t i = 0; i < cps.size(); ++i) {
    uint32_t cp = cps[i];
    if (config.strip_punctuation && is_punct_cp(cp)) {
      bool intra_word = (is_apostrophe(cp) || is_hyphen(cp)) && i > 0 &&
                        i + 1 < cps.size() && is_word_cp(cps[i - 1]) &&
                        is_word_cp(cps[i + 1]);
      if (!intra_word) {
        flat.push_back(' ');
        continue;
      }
    }
    if (is_space_cp(cp)) {
      flat.push_back(' ');
      continue;
    }
    encode_utf8(cp, flat);
  }

  std::vector<std::string> tokens;
  std::string cur;
  auto flush = [&] {
    if (cur.empty()) return;
    if (!config.apply_filler_removal || !config.filler_tokens.count(cur))
      tokens.push_back(cur);
    cur.clear();
  };
  for (char c : flat) {
    if (c == ' ')
      flush();
    else
      cur.push_back(c);
  }
  flush();
  return tokens;
}

}  // namespace longform
