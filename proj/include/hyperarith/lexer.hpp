#pragma once

#include <algorithm>
#include <cctype>
#include <string>
#include <string_view>
#include <vector>

#include "hyperarith/errors.hpp"

namespace hyperarith {

struct Token {
  enum class Kind { Ident, Number, Symbol, End };
  Kind kind;
  std::string text;
  int line;
  int column;
};

/// Tokenizer shared by the formula and sequence-expression grammars.
/// Identifiers may contain letters, digits, '_' and a trailing "'".
inline std::vector<Token> tokenize(std::string_view src) {
  std::vector<Token> out;
  int line = 1;
  int col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
      ++i;
    }
  };
  while (i < src.size()) {
    char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    int l = line;
    int cl = col;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_')) ++j;
      while (j < src.size() && src[j] == '\'') ++j;
      out.push_back({Token::Kind::Ident, std::string(src.substr(i, j - i)), l, cl});
      advance(j - i);
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      out.push_back({Token::Kind::Number, std::string(src.substr(i, j - i)), l, cl});
      advance(j - i);
      continue;
    }
    static constexpr std::string_view kMulti[] = {"<->", "->", "!="};
    bool matched = false;
    for (auto m : kMulti) {
      if (src.substr(i, m.size()) == m) {
        out.push_back({Token::Kind::Symbol, std::string(m), l, cl});
        advance(m.size());
        matched = true;
        break;
      }
    }
    if (matched) continue;
    if (std::string_view("+-*^=<>|&!().,/").find(c) != std::string_view::npos) {
      out.push_back({Token::Kind::Symbol, std::string(1, c), l, cl});
      advance(1);
      continue;
    }
    throw SyntaxError(std::string("unexpected character '") + c + "'", l, cl);
  }
  out.push_back({Token::Kind::End, "", line, col});
  return out;
}

/// Cursor over a token vector with the usual peek/accept/expect helpers.
class TokenCursor {
 public:
  explicit TokenCursor(std::vector<Token> toks) : toks_(std::move(toks)) {}

  const Token& peek(std::size_t ahead = 0) const {
    std::size_t k = std::min(pos_ + ahead, toks_.size() - 1);
    return toks_[k];
  }
  bool at_symbol(std::string_view s, std::size_t ahead = 0) const {
    return peek(ahead).kind == Token::Kind::Symbol && peek(ahead).text == s;
  }
  bool at_ident(std::string_view s) const { return peek().kind == Token::Kind::Ident && peek().text == s; }
  bool at_end() const { return peek().kind == Token::Kind::End; }
  Token next() {
    Token t = peek();
    if (pos_ < toks_.size() - 1) ++pos_;
    return t;
  }
  bool accept_symbol(std::string_view s) {
    if (!at_symbol(s)) return false;
    next();
    return true;
  }
  void expect_symbol(std::string_view s) {
    if (!accept_symbol(s)) fail("expected '" + std::string(s) + "'");
  }
  [[noreturn]] void fail(const std::string& msg) const {
    const Token& t = peek();
    std::string got = t.kind == Token::Kind::End ? "end of input" : "'" + t.text + "'";
    throw SyntaxError(msg + ", found " + got, t.line, t.column);
  }
  std::size_t position() const noexcept { return pos_; }
  void reset(std::size_t p) noexcept { pos_ = p; }

 private:
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

}  // namespace hyperarith
