#include "lexer.hpp"

#include <array>
#include <cctype>
#include <cstring>
#include <utility>

#include "sstt/surface.hpp"

namespace sstt {

std::pair<std::uint32_t, std::uint32_t> line_col(const std::string& text, std::uint32_t offset) {
  std::uint32_t line = 1, col = 1;
  for (std::uint32_t i = 0; i < offset && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else if ((static_cast<unsigned char>(text[i]) & 0xC0) != 0x80) {
      ++col;
    }
  }
  return {line, col};
}

namespace lex {

namespace {

constexpr std::array<const char*, 17> kKeywords = {"def", "postulate", "thm", "shape", "U",   "Unit",
                                                   "tt",  "refl",      "J",   "Id",    "fst", "snd",
                                                   "cases", "TOP",     "BOT", "Pi",    "Sigma"};

// Longest first so that prefixes do not shadow longer symbols.
constexpr std::array<const char*, 23> kSymbols = {"|->", "===", "|-", "->", "=>", ":=", "<=", "/\\",
                                                  "\\/", "\\",  "(",  ")",  "{",  "}",  "[",  "]",
                                                  "<",   ">",   ",",  ":",  ".",  "|",  "*"};

struct UnicodeOp {
  const char* utf8;
  Token::Kind kind;
  const char* ascii;
};

constexpr std::array<UnicodeOp, 17> kUnicode = {{
    {"→", Token::Kind::Sym, "->"},    {"↦", Token::Kind::Sym, "|->"}, {"λ", Token::Kind::Sym, "\\"},
    {"Π", Token::Kind::Kw, "Pi"},     {"∏", Token::Kind::Kw, "Pi"},   {"Σ", Token::Kind::Kw, "Sigma"},
    {"×", Token::Kind::Sym, "*"},     {"≤", Token::Kind::Sym, "<="},  {"≡", Token::Kind::Sym, "==="},
    {"∧", Token::Kind::Sym, "/\\"},   {"∨", Token::Kind::Sym, "\\/"}, {"⊤", Token::Kind::Kw, "TOP"},
    {"⊥", Token::Kind::Kw, "BOT"},    {"⊢", Token::Kind::Sym, "|-"},  {"⟨", Token::Kind::Sym, "<"},
    {"⟩", Token::Kind::Sym, ">"},     {"⇒", Token::Kind::Sym, "=>"},
}};

bool starts_with(const std::string& text, std::size_t pos, const char* s) {
  std::size_t n = std::strlen(s);
  return text.compare(pos, n, s) == 0;
}

const UnicodeOp* unicode_op_at(const std::string& text, std::size_t pos) {
  for (const auto& op : kUnicode)
    if (starts_with(text, pos, op.utf8)) return &op;
  return nullptr;
}

bool ident_start(unsigned char c) { return std::isalpha(c) || c == '_' || c >= 0x80; }
bool ident_char(unsigned char c) { return std::isalnum(c) || c == '_' || c == '\'' || c >= 0x80; }

std::size_t utf8_len(unsigned char c) {
  if (c < 0x80) return 1;
  if ((c & 0xE0) == 0xC0) return 2;
  if ((c & 0xF0) == 0xE0) return 3;
  if ((c & 0xF8) == 0xF0) return 4;
  return 1;
}

Span span_at(const std::string& text, std::size_t b, std::size_t e) {
  Span s;
  s.begin = static_cast<std::uint32_t>(b);
  s.end = static_cast<std::uint32_t>(e);
  std::tie(s.line, s.col) = line_col(text, s.begin);
  std::tie(s.end_line, s.end_col) = line_col(text, s.end);
  return s;
}

}  // namespace

bool is_keyword(const std::string& s) {
  for (const char* k : kKeywords)
    if (s == k) return true;
  return false;
}

std::string describe(const Token& t) {
  switch (t.kind) {
    case Token::Kind::End: return "end of input";
    case Token::Kind::Ident: return "identifier '" + t.text + "'";
    case Token::Kind::Num: return "'" + t.text + "'";
    default: return "'" + t.text + "'";
  }
}

std::vector<Token> tokenize(const std::string& text) {
  std::vector<Token> out;
  std::size_t i = 0, n = text.size();
  auto push = [&](Token::Kind k, std::string s, std::size_t b, std::size_t e) {
    out.push_back(Token{k, std::move(s), static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(e)});
  };
  while (i < n) {
    unsigned char c = static_cast<unsigned char>(text[i]);
    if (std::isspace(c)) {
      ++i;
      continue;
    }
    if (starts_with(text, i, "--")) {
      while (i < n && text[i] != '\n') ++i;
      continue;
    }
    if (const UnicodeOp* op = unicode_op_at(text, i)) {
      std::size_t len = std::strlen(op->utf8);
      push(op->kind, op->ascii, i, i + len);
      i += len;
      continue;
    }
    if (starts_with(text, i, "𝟚")) {
      push(Token::Kind::Num, "2", i, i + std::strlen("𝟚"));
      i += std::strlen("𝟚");
      continue;
    }
    if (std::isdigit(c)) {
      std::size_t b = i;
      while (i < n && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
      std::string num = text.substr(b, i - b);
      if (num != "0" && num != "1" && num != "2")
        throw ParseError("unexpected number '" + num + "' (only 0, 1 and 2 are meaningful)", span_at(text, b, i));
      push(Token::Kind::Num, num, b, i);
      continue;
    }
    if (ident_start(c)) {
      std::size_t b = i;
      while (i < n) {
        unsigned char d = static_cast<unsigned char>(text[i]);
        if (!ident_char(d) || unicode_op_at(text, i)) break;
        i += utf8_len(d);
      }
      if (i > n) i = n;
      std::string word = text.substr(b, i - b);
      push(is_keyword(word) ? Token::Kind::Kw : Token::Kind::Ident, word, b, i);
      continue;
    }
    bool matched = false;
    for (const char* s : kSymbols) {
      if (starts_with(text, i, s)) {
        std::size_t len = std::strlen(s);
        push(Token::Kind::Sym, s, i, i + len);
        i += len;
        matched = true;
        break;
      }
    }
    if (!matched) {
      std::size_t len = utf8_len(c);
      throw ParseError("unexpected character '" + text.substr(i, len) + "'", span_at(text, i, i + len));
    }
  }
  push(Token::Kind::End, "", n, n);
  return out;
}

}  // namespace lex
}  // namespace sstt
