#pragma once

#include <charconv>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "sflow/error.hpp"
#include "sflow/eventually_periodic.hpp"

namespace sflow::literal {

inline std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

inline std::int64_t parse_int(std::string_view s, const char* what) {
  s = trim(s);
  std::int64_t v = 0;
  const char* b = s.data();
  const char* e = s.data() + s.size();
  if (!s.empty() && *b == '+') ++b;
  auto [ptr, ec] = std::from_chars(b, e, v);
  if (ec != std::errc() || ptr != e || b == e) throw ParseError(std::string("invalid integer for ") + what + ": '" + std::string(s) + "'");
  return v;
}

template <typename Symbol, typename Lex>
std::vector<Symbol> parse_tail(std::string_view t, Lex& lex) {
  t = trim(t);
  if (t.size() >= 3 && t.front() == '(') {
    if (t.substr(t.size() - 2) != ")*") throw ParseError("tail must look like '(w)*': '" + std::string(t) + "'");
    auto w = lex(t.substr(1, t.size() - 3));
    if (w.empty()) throw ParseError("tail period word is empty");
    return w;
  }
  if (t.size() >= 2 && t.back() == '*') {
    auto w = lex(t.substr(0, t.size() - 1));
    if (w.size() != 1) throw ParseError("tail 's*' needs exactly one symbol: '" + std::string(t) + "'");
    return w;
  }
  throw ParseError("malformed tail: '" + std::string(t) + "'");
}

/// Parses `tail|body|tail[@k]`; `lex` turns a text fragment into symbols.
template <typename Symbol, typename Lex>
EventuallyPeriodic<Symbol> parse(std::string_view text, Lex lex) {
  text = trim(text);
  const auto p1 = text.find('|');
  const auto p2 = p1 == std::string_view::npos ? p1 : text.find('|', p1 + 1);
  if (p2 == std::string_view::npos || text.find('|', p2 + 1) != std::string_view::npos)
    throw ParseError("literal needs exactly two '|' separators: '" + std::string(text) + "'");
  std::string_view right = text.substr(p2 + 1);
  std::optional<std::int64_t> at;
  if (auto a = right.find('@'); a != std::string_view::npos) {
    at = parse_int(right.substr(a + 1), "origin index");
    right = right.substr(0, a);
  }
  auto lw = parse_tail<Symbol>(text.substr(0, p1), lex);
  auto rw = parse_tail<Symbol>(right, lex);

  std::string_view body = text.substr(p1 + 1, p2 - p1 - 1);
  std::vector<Symbol> window;
  std::int64_t origin = at.value_or(0);
  const auto ob = body.find('[');
  if (ob != std::string_view::npos) {
    if (at) throw ParseError("origin given both by brackets and by '@'");
    const auto cb = body.find(']', ob);
    if (cb == std::string_view::npos || body.find('[', ob + 1) != std::string_view::npos ||
        body.find(']', cb + 1) != std::string_view::npos)
      throw ParseError("body must contain at most one bracketed symbol");
    window = lex(body.substr(0, ob));
    origin = static_cast<std::int64_t>(window.size());
    auto mid = lex(body.substr(ob + 1, cb - ob - 1));
    if (mid.size() != 1) throw ParseError("brackets must enclose exactly one symbol");
    window.push_back(mid[0]);
    auto rest = lex(body.substr(cb + 1));
    window.insert(window.end(), rest.begin(), rest.end());
  } else {
    if (body.find(']') != std::string_view::npos) throw ParseError("unbalanced ']' in body");
    window = lex(body);
  }
  return EventuallyPeriodic<Symbol>(std::move(lw), std::move(window), origin, std::move(rw));
}

template <typename Symbol, typename Fmt>
std::string format(const EventuallyPeriodic<Symbol>& x, Fmt fmt, std::string_view sep) {
  auto join = [&](const std::vector<Symbol>& w) {
    std::string s;
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (i) s += sep;
      s += fmt(w[i]);
    }
    return s;
  };
  auto tail = [&](const std::vector<Symbol>& w) {
    return w.size() == 1 ? fmt(w[0]) + "*" : "(" + join(w) + ")*";
  };
  const auto& win = x.window();
  const std::int64_t off = x.origin_offset();
  std::string body;
  bool bracketed = off >= 0 && off < static_cast<std::int64_t>(win.size());
  for (std::size_t i = 0; i < win.size(); ++i) {
    if (i) body += sep;
    if (bracketed && static_cast<std::int64_t>(i) == off)
      body += "[" + fmt(win[i]) + "]";
    else
      body += fmt(win[i]);
  }
  std::string out = tail(x.left_period()) + "|" + body + "|" + tail(x.right_period());
  if (!bracketed && off != 0) out += "@" + std::to_string(off);
  return out;
}

}  // namespace sflow::literal
