#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace sstt::lex {

struct Token {
  enum class Kind { Ident, Num, Kw, Sym, End };
  Kind kind = Kind::End;
  std::string text;  // canonical ASCII spelling for keywords and symbols
  std::uint32_t begin = 0, end = 0;

  bool is(Kind k, const char* t) const { return kind == k && text == t; }
  bool sym(const char* t) const { return is(Kind::Sym, t); }
  bool kw(const char* t) const { return is(Kind::Kw, t); }
};

/// Human-readable description of a token for error messages.
std::string describe(const Token& t);

/// Throws ParseError on characters that start no token.
std::vector<Token> tokenize(const std::string& text);

bool is_keyword(const std::string& s);

}  // namespace sstt::lex
