// Copyright 2026 The slipeval Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "slipeval/notation.hpp"

#include <cctype>
#include <fstream>

#include "slipeval/errors.hpp"
#include "slipeval/text.hpp"

namespace slipeval {

namespace {

constexpr std::string_view kIntendedTag = "intended:";

bool starts_with_icase(std::string_view s, std::string_view prefix) {
  return s.size() >= prefix.size() &&
         text::iequals(s.substr(0, prefix.size()), prefix);
}

bool is_leading_punct(char32_t c) {
  return c == U'"' || c == U'\'' || c == U'(' || c == U'“' ||
         c == U'‘' || c == U'¿' || c == U'¡';
}

bool is_trailing_punct(char32_t c) {
  return c == U'.' || c == U',' || c == U'!' || c == U'?' || c == U';' ||
         c == U':' || c == U'"' || c == U'\'' || c == U')' ||
         c == U'”' || c == U'’' || c == U'…';
}

struct PeeledToken {
  std::string leading;
  std::string core;
  std::string trailing;
};

PeeledToken peel(std::string_view token) {
  const std::u32string cps = text::decode_utf8(token);
  std::size_t b = 0;
  std::size_t e = cps.size();
  while (b < e && is_leading_punct(cps[b])) ++b;
  while (e > b && is_trailing_punct(cps[e - 1])) --e;
  std::u32string_view v(cps);
  return {text::encode_utf8(v.substr(0, b)), text::encode_utf8(v.substr(b, e - b)),
          text::encode_utf8(v.substr(e))};
}

bool has_markup(std::string_view core) {
  if (core.empty()) return false;
  return core.front() == '/' || core.back() == '=' ||
         core.find('[') != std::string_view::npos ||
         core.find(']') != std::string_view::npos;
}

}  // namespace

SegmentMap load_segment_map(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open segment map: " + path.string());
  SegmentMap map;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto t = text::trim(line);
    if (t.empty() || t.front() == '#') continue;
    const auto cols = text::split(line, '\t');
    if (cols.size() != 2 || cols[0].empty() || cols[1].empty()) {
      throw SchemaError(path.string() + ":" + std::to_string(lineno) +
                        ": expected ipa<TAB>graphemes");
    }
    map.insert_or_assign(std::string(cols[0]), std::string(cols[1]));
  }
  return map;
}

ParsedAnnotation parse_notation(std::string_view token,
                                const NotationOptions& options) {
  token = text::trim(token);
  ParsedAnnotation out;
  out.raw_notation = std::string(token);
  if (token.empty() || token.front() != '/') {
    throw MalformedNotation("notation must begin with '/': '" +
                            std::string(token) + "'");
  }

  std::string_view body = token;
  if (body.back() == ')') {
    for (auto open = body.rfind('('); open != std::string_view::npos;
         open = open == 0 ? std::string_view::npos : body.rfind('(', open - 1)) {
      const auto inner = body.substr(open + 1, body.size() - open - 2);
      if (!starts_with_icase(inner, kIntendedTag)) continue;
      const auto word = text::trim(inner.substr(kIntendedTag.size()));
      if (word.empty()) {
        throw MalformedNotation("empty intended word in '" +
                                std::string(token) + "'");
      }
      out.intended_inline = std::string(word);
      body = text::trim(body.substr(0, open));
      break;
    }
  }
  body.remove_prefix(1);

  bool in_bracket = false;
  std::string segment;
  std::size_t segment_start = 0;
  for (std::size_t i = 0; i < body.size(); ++i) {
    const char c = body[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      throw MalformedNotation("whitespace inside notation '" +
                              std::string(token) + "'");
    }
    switch (c) {
      case '[':
        if (in_bracket) {
          throw MalformedNotation("nested '[' in '" + std::string(token) + "'");
        }
        in_bracket = true;
        segment.clear();
        segment_start = out.error_surface.size();
        break;
      case ']': {
        if (!in_bracket) {
          throw MalformedNotation("unbalanced ']' in '" + std::string(token) +
                                  "'");
        }
        if (segment.empty()) {
          throw MalformedNotation("empty [] segment in '" + std::string(token) +
                                  "'");
        }
        in_bracket = false;
        if (options.segment_map) {
          if (auto it = options.segment_map->find(segment);
              it != options.segment_map->end()) {
            segment = it->second;
          }
        }
        if (!options.deletion) out.error_surface += segment;
        out.mispronounced_segments.push_back({segment_start, segment});
        break;
      }
      case '=':
        if (in_bracket || i + 1 != body.size()) {
          throw MalformedNotation("'=' must be the final character in '" +
                                  std::string(token) + "'");
        }
        out.incomplete = true;
        break;
      case '/':
        throw MalformedNotation("unexpected '/' in '" + std::string(token) + "'");
      default:
        (in_bracket ? segment : out.error_surface).push_back(c);
    }
  }
  if (in_bracket) {
    throw MalformedNotation("unbalanced '[' in '" + std::string(token) + "'");
  }
  if (out.error_surface.empty()) {
    throw MalformedNotation("empty error surface in '" + std::string(token) +
                            "'");
  }
  return out;
}

std::string render_notation(const ParsedAnnotation& annotation, bool deletion) {
  const std::string& surface = annotation.error_surface;
  std::string out = "/";
  std::size_t pos = 0;
  for (const auto& seg : annotation.mispronounced_segments) {
    out.append(surface, pos, seg.index - pos);
    out += '[';
    out += seg.segment;
    out += ']';
    pos = deletion ? seg.index : seg.index + seg.segment.size();
  }
  out.append(surface, pos);
  if (annotation.incomplete) out += '=';
  if (annotation.intended_inline) {
    out += " (Intended: ";
    out += *annotation.intended_inline;
    out += ')';
  }
  return out;
}

PlainContext read_context(std::string_view context_text,
                          const NotationOptions& error_options) {
  const auto tokens = text::split_whitespace(context_text);
  PlainContext ctx;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (starts_with_icase(tokens[i], "(intended:")) {
      // Stray metadata group not attached to a marked token.
      while (i < tokens.size() && tokens[i].find(')') == std::string::npos) ++i;
      continue;
    }
    PeeledToken tok = peel(tokens[i]);
    if (!has_markup(tok.core)) {
      if (tok.core == "=" && tok.leading.empty() && tok.trailing.empty()) continue;
      ctx.words.push_back(tokens[i]);
      continue;
    }
    std::string notation = tok.core.front() == '/' ? tok.core : "/" + tok.core;
    // Attach a following "(Intended: X)" group to this token.
    if (i + 1 < tokens.size() && starts_with_icase(tokens[i + 1], "(intended:")) {
      std::string group;
      std::size_t j = i + 1;
      for (; j < tokens.size(); ++j) {
        if (!group.empty()) group += ' ';
        group += tokens[j];
        if (tokens[j].find(')') != std::string::npos) break;
      }
      if (j == tokens.size()) {
        throw MalformedNotation("unterminated (Intended: ...) group");
      }
      const auto close = group.rfind(')');
      tok.trailing += group.substr(close + 1);
      notation += ' ';
      notation += group.substr(0, close + 1);
      i = j;
    }
    const bool is_error = tok.core.front() == '/' && !ctx.error_word;
    ParsedAnnotation parsed =
        parse_notation(notation, is_error ? error_options : NotationOptions{});
    if (is_error) ctx.error_word = ctx.words.size();
    ctx.words.push_back(tok.leading + parsed.error_surface + tok.trailing);
    if (is_error) ctx.annotation = std::move(parsed);
  }
  return ctx;
}

std::string strip_notation(std::string_view context_text,
                           const NotationOptions& error_options) {
  return text::join(read_context(context_text, error_options).words, " ");
}

}  // namespace slipeval
