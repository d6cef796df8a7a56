// Copyright 2026 The Biaslens Authors
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

#include "biaslens/ingest/html.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <map>
#include <vector>

#include "biaslens/util/error.hpp"
#include "biaslens/util/strings.hpp"

namespace biaslens {
namespace {

constexpr std::array<std::string_view, 14> kVoidElements = {
    "area", "base", "br", "col", "embed", "hr", "img", "input", "link", "meta", "param", "source", "track", "wbr"};
constexpr std::array<std::string_view, 4> kRawTextElements = {"script", "style", "noscript", "template"};
constexpr std::array<std::string_view, 12> kSkippedElements = {
    "nav", "header", "footer", "aside", "form", "figure", "figcaption", "button", "svg", "iframe", "select", "dialog"};
constexpr std::array<std::string_view, 13> kSkippedMarkers = {
    "ad", "ads", "advert", "advertisement", "promo", "newsletter", "related", "sponsored",
    "share", "social", "subscribe", "recirc", "outbrain"};
constexpr std::array<std::string_view, 7> kBlockElements = {"p", "h2", "h3", "h4", "li", "blockquote", "pre"};

template <std::size_t N>
bool one_of(std::string_view s, const std::array<std::string_view, N>& set) {
  return std::find(set.begin(), set.end(), s) != set.end();
}

void append_utf8(std::string& out, unsigned long cp) {
  if (cp < 0x80) {
    out += static_cast<char>(cp);
  } else if (cp < 0x800) {
    out += static_cast<char>(0xC0 | (cp >> 6));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else if (cp < 0x10000) {
    out += static_cast<char>(0xE0 | (cp >> 12));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else if (cp < 0x110000) {
    out += static_cast<char>(0xF0 | (cp >> 18));
    out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  }
}

const std::map<std::string, unsigned long, std::less<>>& named_entities() {
  static const std::map<std::string, unsigned long, std::less<>> table = {
      {"amp", '&'},      {"lt", '<'},       {"gt", '>'},       {"quot", '"'},     {"apos", '\''},
      {"nbsp", ' '},     {"rsquo", 0x2019}, {"lsquo", 0x2018}, {"ldquo", 0x201C}, {"rdquo", 0x201D},
      {"mdash", 0x2014}, {"ndash", 0x2013}, {"hellip", 0x2026}, {"copy", 0xA9},   {"reg", 0xAE},
      {"trade", 0x2122}, {"eacute", 0xE9},  {"middot", 0xB7},  {"bull", 0x2022}};
  return table;
}

struct Tag {
  std::string name;
  std::map<std::string, std::string> attrs;
  bool closing = false;
  bool self_closing = false;

  std::string attr(const std::string& key) const {
    auto it = attrs.find(key);
    return it == attrs.end() ? std::string() : it->second;
  }
};

// Parses the tag starting at html[pos] == '<'. Advances pos past '>'.
Tag parse_tag(std::string_view html, std::size_t& pos) {
  Tag tag;
  std::size_t i = pos + 1;
  if (i < html.size() && html[i] == '/') {
    tag.closing = true;
    ++i;
  }
  auto is_name_char = [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == ':' || c == '_'; };
  std::size_t start = i;
  while (i < html.size() && is_name_char(html[i])) ++i;
  tag.name = text::to_lower(html.substr(start, i - start));
  while (i < html.size() && html[i] != '>') {
    char c = html[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (c == '/') {
      tag.self_closing = true;
      ++i;
      continue;
    }
    std::size_t ns = i;
    while (i < html.size() && !std::isspace(static_cast<unsigned char>(html[i])) && html[i] != '=' && html[i] != '>' &&
           html[i] != '/') {
      ++i;
    }
    std::string key = text::to_lower(html.substr(ns, i - ns));
    if (key.empty()) {
      ++i;
      continue;
    }
    std::string value;
    while (i < html.size() && std::isspace(static_cast<unsigned char>(html[i]))) ++i;
    if (i < html.size() && html[i] == '=') {
      ++i;
      while (i < html.size() && std::isspace(static_cast<unsigned char>(html[i]))) ++i;
      if (i < html.size() && (html[i] == '"' || html[i] == '\'')) {
        char q = html[i++];
        std::size_t vs = i;
        while (i < html.size() && html[i] != q) ++i;
        value = decode_entities(html.substr(vs, i - vs));
        if (i < html.size()) ++i;
      } else {
        std::size_t vs = i;
        while (i < html.size() && !std::isspace(static_cast<unsigned char>(html[i])) && html[i] != '>') ++i;
        value = decode_entities(html.substr(vs, i - vs));
      }
    }
    tag.attrs.emplace(std::move(key), std::move(value));
  }
  pos = i < html.size() ? i + 1 : html.size();
  return tag;
}

bool has_skip_marker(const Tag& tag, bool& paywall) {
  if (tag.attrs.count("hidden") || tag.attr("aria-hidden") == "true") return true;
  std::string tokens = text::to_lower(tag.attr("class") + " " + tag.attr("id"));
  for (char& c : tokens) {
    if (c == '-' || c == '_') c = ' ';
  }
  bool skip = false;
  for (const std::string& w : text::words(tokens)) {
    if (w == "paywall" || w == "meter") {
      paywall = true;
      skip = true;
    }
    if (one_of(w, kSkippedMarkers)) skip = true;
  }
  return skip;
}

std::optional<Timestamp> parse_published(std::string value) {
  value = std::string(text::trim(value));
  if (value.empty()) return std::nullopt;
  // Drop fractional seconds: 2024-10-01T10:00:00.123Z
  if (std::size_t dot = value.find('.', 19); dot == 19) {
    std::size_t end = dot + 1;
    while (end < value.size() && std::isdigit(static_cast<unsigned char>(value[end]))) ++end;
    value.erase(dot, end - dot);
  }
  try {
    return parse_timestamp(value);
  } catch (const InvalidArgument&) {
    return std::nullopt;
  }
}

std::string collapse(std::string_view raw) {
  std::string decoded = decode_entities(raw);
  std::string out;
  bool space = false;
  for (char c : decoded) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      space = !out.empty();
    } else {
      if (space) out += ' ';
      space = false;
      out += c;
    }
  }
  return out;
}

struct Block {
  std::string text;
  bool in_article = false;
};

}  // namespace

std::string decode_entities(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] != '&') {
      out += s[i];
      continue;
    }
    std::size_t semi = s.find(';', i + 1);
    if (semi == std::string_view::npos || semi - i > 10) {
      out += '&';
      continue;
    }
    std::string_view ref = s.substr(i + 1, semi - i - 1);
    if (!ref.empty() && ref[0] == '#') {
      unsigned long cp = 0;
      bool hex = ref.size() > 1 && (ref[1] == 'x' || ref[1] == 'X');
      std::string_view digits = ref.substr(hex ? 2 : 1);
      bool ok = !digits.empty();
      for (char c : digits) {
        int d = std::isdigit(static_cast<unsigned char>(c)) ? c - '0'
                : hex && std::isxdigit(static_cast<unsigned char>(c)) ? std::tolower(c) - 'a' + 10
                                                                       : -1;
        if (d < 0 || cp > 0x10FFFF) {
          ok = false;
          break;
        }
        cp = cp * (hex ? 16 : 10) + static_cast<unsigned long>(d);
      }
      if (ok && cp > 0 && cp <= 0x10FFFF) {
        append_utf8(out, cp == 0xA0 ? ' ' : cp);
        i = semi;
        continue;
      }
    } else if (auto it = named_entities().find(ref); it != named_entities().end()) {
      append_utf8(out, it->second);
      i = semi;
      continue;
    }
    out += '&';
  }
  return out;
}

ExtractedPage extract_article(std::string_view html) {
  ExtractedPage page;
  struct Open {
    std::string name;
    bool skip;
  };
  std::vector<Open> stack;
  std::vector<Block> blocks;
  std::string title_text, h1_text, og_title;
  std::string* capture = nullptr;  // title or h1 buffer
  std::string current;
  bool in_block = false;
  int block_depth = 0;
  int article_depth = 0;
  int skip_depth = 0;
  bool seen_h1 = false;

  auto flush_block = [&] {
    if (in_block) {
      std::string t = collapse(current);
      if (!t.empty()) blocks.push_back({std::move(t), article_depth > 0});
    }
    current.clear();
    in_block = false;
    block_depth = 0;
  };

  std::size_t pos = 0;
  while (pos < html.size()) {
    if (html[pos] != '<') {
      std::size_t next = html.find('<', pos);
      if (next == std::string_view::npos) next = html.size();
      std::string_view chunk = html.substr(pos, next - pos);
      if (skip_depth == 0) {
        if (capture) capture->append(chunk);
        if (in_block) current.append(chunk);
      }
      pos = next;
      continue;
    }
    if (html.substr(pos, 4) == "<!--") {
      std::size_t end = html.find("-->", pos + 4);
      pos = end == std::string_view::npos ? html.size() : end + 3;
      continue;
    }
    if (pos + 1 < html.size() && (html[pos + 1] == '!' || html[pos + 1] == '?')) {
      std::size_t end = html.find('>', pos);
      pos = end == std::string_view::npos ? html.size() : end + 1;
      continue;
    }
    if (pos + 1 >= html.size() || !(std::isalpha(static_cast<unsigned char>(html[pos + 1])) || html[pos + 1] == '/')) {
      if (skip_depth == 0 && in_block) current += '<';
      ++pos;
      continue;
    }
    Tag tag = parse_tag(html, pos);
    if (tag.name.empty()) continue;

    if (tag.closing) {
      auto it = std::find_if(stack.rbegin(), stack.rend(), [&](const Open& o) { return o.name == tag.name; });
      if (it == stack.rend()) continue;
      std::size_t target = static_cast<std::size_t>(stack.rend() - it) - 1;
      while (stack.size() > target) {
        Open top = stack.back();
        stack.pop_back();
        if (top.skip) --skip_depth;
        if (top.name == "article") --article_depth;
        if (top.name == "title" || top.name == "h1") capture = nullptr;
        if (in_block && one_of(top.name, kBlockElements) && static_cast<int>(stack.size()) < block_depth) flush_block();
      }
      continue;
    }

    if (tag.name == "meta") {
      std::string key = text::to_lower(tag.attr("property").empty() ? tag.attr("name") : tag.attr("property"));
      std::string content = tag.attr("content");
      if (key == "og:title" && og_title.empty()) og_title = content;
      if (key == "og:type") page.og_type = text::to_lower(content);
      if ((key == "article:published_time" || key == "pubdate" || key == "date") && !page.published_at) {
        page.published_at = parse_published(content);
      }
      continue;
    }
    if (tag.name == "link") {
      if (text::to_lower(tag.attr("rel")) == "canonical") page.canonical_url = tag.attr("href");
      continue;
    }
    if (one_of(tag.name, kRawTextElements)) {
      if (!tag.self_closing) {
        std::string close = "</" + tag.name;
        std::size_t end = pos;
        while (true) {
          end = html.find("</", end);
          if (end == std::string_view::npos) break;
          if (text::to_lower(html.substr(end, close.size())) == close) break;
          end += 2;
        }
        if (end == std::string_view::npos) {
          pos = html.size();
        } else {
          std::size_t gt = html.find('>', end);
          pos = gt == std::string_view::npos ? html.size() : gt + 1;
        }
      }
      continue;
    }
    if (one_of(tag.name, kVoidElements) || tag.self_closing) {
      if (tag.name == "br" && in_block && skip_depth == 0) current += ' ';
      continue;
    }

    bool paywall = false;
    bool skip = one_of(tag.name, kSkippedElements) || has_skip_marker(tag, paywall);
    if (paywall) page.paywall_marker = true;
    if (tag.name == "p" && in_block) flush_block();
    stack.push_back({tag.name, skip});
    if (skip) ++skip_depth;
    if (tag.name == "article") {
      ++article_depth;
      page.has_article_element = true;
    }
    if (skip_depth > 0) continue;
    if (tag.name == "title" && title_text.empty()) capture = &title_text;
    if (tag.name == "h1" && !seen_h1) {
      seen_h1 = true;
      capture = &h1_text;
    }
    if (one_of(tag.name, kBlockElements) && !in_block) {
      in_block = true;
      block_depth = static_cast<int>(stack.size());
    }
  }
  flush_block();

  if (!og_title.empty()) {
    page.title = collapse(og_title);
  } else if (!h1_text.empty()) {
    page.title = collapse(h1_text);
  } else {
    page.title = collapse(title_text);
  }
  std::vector<std::string> kept;
  for (const Block& b : blocks) {
    if (!page.has_article_element || b.in_article) kept.push_back(b.text);
  }
  page.body = text::join(kept, "\n\n");
  return page;
}

}  // namespace biaslens
