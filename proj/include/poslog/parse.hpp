#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "poslog/formula.hpp"
#include "poslog/kb.hpp"
#include "poslog/rational.hpp"
#include "poslog/syntax.hpp"
#include "poslog/valuation.hpp"

namespace poslog {

/// A positioned parse failure. Parsing is all-or-nothing per input: the
/// first error aborts and is reported with its source span.
struct ParseError {
  std::size_t line = 0;
  std::size_t column = 0;
  std::string message;
  std::string token;

  std::string to_string() const {
    return std::to_string(line) + ":" + std::to_string(column) + ": " + message;
  }
};

namespace detail {

struct Token {
  enum class Type {
    Ident,
    Number,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Period,
    Bang,
    Amp,
    Pipe,
    Arrow,
    End,
  };

  Type type;
  std::string text;
  std::size_t line;
  std::size_t column;
};

inline bool lex_alpha(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); }
inline bool lex_digit(char c) { return c >= '0' && c <= '9'; }
inline bool lex_alnum(char c) { return lex_alpha(c) || lex_digit(c); }

inline std::variant<std::vector<Token>, ParseError> lex(std::string_view text) {
  std::vector<Token> out;
  std::size_t line = 1;
  std::size_t col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) {
      if (text[i + k] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    i += n;
  };
  while (i < text.size()) {
    char c = text[i];
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
      advance(1);
      continue;
    }
    if (c == '#') {
      std::size_t n = 0;
      while (i + n < text.size() && text[i + n] != '\n') ++n;
      advance(n);
      continue;
    }
    std::size_t tok_line = line;
    std::size_t tok_col = col;
    if (lex_alpha(c)) {
      std::size_t n = 1;
      while (i + n < text.size()) {
        char d = text[i + n];
        if (lex_alnum(d) || d == '_') {
          ++n;
        } else if (d == '-' && i + n + 1 < text.size() && lex_alnum(text[i + n + 1])) {
          ++n;  // hyphenated name; "->" still terminates an identifier
        } else {
          break;
        }
      }
      out.push_back({Token::Type::Ident, std::string(text.substr(i, n)), tok_line, tok_col});
      advance(n);
      continue;
    }
    if (lex_digit(c)) {
      std::size_t n = 1;
      while (i + n < text.size() && lex_digit(text[i + n])) ++n;
      if (i + n + 1 < text.size() && text[i + n] == '.' && lex_digit(text[i + n + 1])) {
        ++n;
        while (i + n < text.size() && lex_digit(text[i + n])) ++n;
      }
      out.push_back({Token::Type::Number, std::string(text.substr(i, n)), tok_line, tok_col});
      advance(n);
      continue;
    }
    if (c == '-' && i + 1 < text.size() && text[i + 1] == '>') {
      out.push_back({Token::Type::Arrow, "->", tok_line, tok_col});
      advance(2);
      continue;
    }
    Token::Type type;
    switch (c) {
      case '(': type = Token::Type::LParen; break;
      case ')': type = Token::Type::RParen; break;
      case '[': type = Token::Type::LBracket; break;
      case ']': type = Token::Type::RBracket; break;
      case ',': type = Token::Type::Comma; break;
      case '.': type = Token::Type::Period; break;
      case '!': type = Token::Type::Bang; break;
      case '&': type = Token::Type::Amp; break;
      case '|': type = Token::Type::Pipe; break;
      default:
        return ParseError{tok_line, tok_col, "unexpected character", std::string(1, c)};
    }
    out.push_back({type, std::string(1, c), tok_line, tok_col});
    advance(1);
  }
  out.push_back({Token::Type::End, "", line, col});
  return out;
}

// Formula parse tree prior to classification. Unlike Formula it may carry
// variables, which are only legal once the statement turns out to be a
// clause.
struct Proto {
  enum class Kind { True, False, Atom, Not, And, Or, Implies };

  Kind kind = Kind::True;
  Atom atom;
  std::vector<Proto> kids;
};

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  std::variant<KnowledgeBase, ParseError> parse_kb() {
    KnowledgeBase kb;
    while (peek().type != Token::Type::End) {
      auto entry = parse_statement();
      if (const auto* err = std::get_if<ParseError>(&entry)) return *err;
      kb.add(std::get<KnowledgeBase::Entry>(entry));
    }
    return kb;
  }

  std::variant<Formula, ParseError> parse_single_formula() {
    statement_vars_.clear();
    auto proto = parse_implication();
    if (const auto* err = std::get_if<ParseError>(&proto)) return *err;
    if (auto err = expect(Token::Type::End, "expected end of input")) return *err;
    if (!statement_vars_.empty()) {
      const VarUse& use = statement_vars_.front();
      return ParseError{use.line, use.column, "query must be ground and closed", use.name};
    }
    return to_formula(std::get<Proto>(proto));
  }

 private:
  struct VarUse {
    std::string name;
    std::size_t line;
    std::size_t column;
  };

  const Token& peek() const { return tokens_[pos_]; }
  const Token& next() { return tokens_[pos_++]; }

  ParseError error(const Token& at, std::string message) const {
    return ParseError{at.line, at.column, std::move(message), at.text};
  }

  std::optional<ParseError> expect(Token::Type type, std::string message) {
    if (peek().type != type) return error(peek(), std::move(message));
    next();
    return std::nullopt;
  }

  std::variant<KnowledgeBase::Entry, ParseError> parse_statement() {
    statement_vars_.clear();
    auto proto = parse_implication();
    if (const auto* err = std::get_if<ParseError>(&proto)) return *err;
    auto weight = parse_weight();
    if (const auto* err = std::get_if<ParseError>(&weight)) return *err;
    if (auto err = expect(Token::Type::Period, "expected '.' after statement")) return *err;

    std::vector<Literal> literals;
    if (clause_literals(std::get<Proto>(proto), literals)) {
      return KnowledgeBase::Entry{PossClause{Clause(std::move(literals)), std::get<Valuation>(weight)}};
    }
    if (!statement_vars_.empty()) {
      const VarUse& use = statement_vars_.front();
      return ParseError{use.line, use.column,
                        "variables are only allowed in clauses (disjunctions of literals)", use.name};
    }
    return KnowledgeBase::Entry{PossFormula{to_formula(std::get<Proto>(proto)), std::get<Valuation>(weight)}};
  }

  std::variant<Valuation, ParseError> parse_weight() {
    if (auto err = expect(Token::Type::LBracket, "expected '[' before weight")) return *err;
    const Token& mode = peek();
    if (mode.type != Token::Type::Ident || (mode.text != "N" && mode.text != "Pi" && mode.text != "P"))
      return error(mode, "expected weight mode 'N' or 'Pi'");
    next();
    const Token& num = peek();
    if (num.type != Token::Type::Number) return error(num, "expected a decimal degree");
    auto dot = num.text.find('.');
    if (dot != std::string::npos && num.text.size() - dot - 1 > 9)
      return error(num, "degrees carry at most 9 fractional digits");
    auto degree = Rational::parse_decimal(num.text);
    if (!degree) return error(num, "malformed decimal degree");
    if (Rational::integer(1) < *degree) return error(num, "degree must not exceed 1");
    if (mode.text == "N" && degree->is_zero())
      return error(num, "necessity degree must be strictly positive");
    next();
    if (auto err = expect(Token::Type::RBracket, "expected ']' after weight")) return *err;
    return mode.text == "N" ? Valuation::necessity(*degree) : Valuation::possibility(*degree);
  }

  std::variant<Proto, ParseError> parse_implication() {
    auto left = parse_disjunction();
    if (std::get_if<ParseError>(&left)) return left;
    if (peek().type != Token::Type::Arrow) return left;
    next();
    auto right = parse_implication();  // right-associative
    if (std::get_if<ParseError>(&right)) return right;
    Proto node{Proto::Kind::Implies, {}, {}};
    node.kids.push_back(std::get<Proto>(std::move(left)));
    node.kids.push_back(std::get<Proto>(std::move(right)));
    return node;
  }

  std::variant<Proto, ParseError> parse_disjunction() {
    auto first = parse_conjunction();
    if (std::get_if<ParseError>(&first)) return first;
    if (peek().type != Token::Type::Pipe) return first;
    Proto node{Proto::Kind::Or, {}, {}};
    node.kids.push_back(std::get<Proto>(std::move(first)));
    while (peek().type == Token::Type::Pipe) {
      next();
      auto kid = parse_conjunction();
      if (std::get_if<ParseError>(&kid)) return kid;
      node.kids.push_back(std::get<Proto>(std::move(kid)));
    }
    return node;
  }

  std::variant<Proto, ParseError> parse_conjunction() {
    auto first = parse_unary();
    if (std::get_if<ParseError>(&first)) return first;
    if (peek().type != Token::Type::Amp) return first;
    Proto node{Proto::Kind::And, {}, {}};
    node.kids.push_back(std::get<Proto>(std::move(first)));
    while (peek().type == Token::Type::Amp) {
      next();
      auto kid = parse_unary();
      if (std::get_if<ParseError>(&kid)) return kid;
      node.kids.push_back(std::get<Proto>(std::move(kid)));
    }
    return node;
  }

  std::variant<Proto, ParseError> parse_unary() {
    if (peek().type == Token::Type::Bang) {
      next();
      auto kid = parse_unary();
      if (std::get_if<ParseError>(&kid)) return kid;
      Proto node{Proto::Kind::Not, {}, {}};
      node.kids.push_back(std::get<Proto>(std::move(kid)));
      return node;
    }
    return parse_primary();
  }

  std::variant<Proto, ParseError> parse_primary() {
    const Token& tok = peek();
    if (tok.type == Token::Type::LParen) {
      next();
      auto inner = parse_implication();
      if (std::get_if<ParseError>(&inner)) return inner;
      if (auto err = expect(Token::Type::RParen, "expected ')'")) return *err;
      return inner;
    }
    if (tok.type != Token::Type::Ident) return error(tok, "expected an atom, 'True', 'False', or '('");
    if (tok.text == "True") {
      next();
      return Proto{Proto::Kind::True, {}, {}};
    }
    if (tok.text == "False") {
      next();
      return Proto{Proto::Kind::False, {}, {}};
    }
    return parse_atom();
  }

  std::variant<Proto, ParseError> parse_atom() {
    const Token& name = next();
    std::vector<Term> args;
    if (peek().type == Token::Type::LParen) {
      next();
      while (true) {
        const Token& arg = peek();
        if (arg.type != Token::Type::Ident) return error(arg, "expected a term");
        if (arg.text == "True" || arg.text == "False")
          return error(arg, "'True' and 'False' are reserved");
        if (arg.text[0] >= 'a' && arg.text[0] <= 'z')
          statement_vars_.push_back({arg.text, arg.line, arg.column});
        args.push_back(Term::from_name(arg.text));
        next();
        if (peek().type == Token::Type::Comma) {
          next();
          continue;
        }
        break;
      }
      if (auto err = expect(Token::Type::RParen, "expected ')' after terms")) return *err;
    }
    auto [it, inserted] = arities_.emplace(name.text, std::make_pair(args.size(), name));
    if (!inserted && it->second.first != args.size()) {
      return error(name, "predicate '" + name.text + "' used with arity " +
                             std::to_string(args.size()) + " but first used with arity " +
                             std::to_string(it->second.first) + " at line " +
                             std::to_string(it->second.second.line));
    }
    Proto node{Proto::Kind::Atom, Atom(name.text, std::move(args)), {}};
    return node;
  }

  // Clause shape: an Or-tree of literals; False disjuncts vanish. Anything
  // containing True, And, Implies, or a negation of a non-atom is not a
  // clause.
  bool clause_literals(const Proto& p, std::vector<Literal>& out) const {
    switch (p.kind) {
      case Proto::Kind::False: return true;
      case Proto::Kind::Atom:
        out.emplace_back(p.atom, true);
        return true;
      case Proto::Kind::Not:
        if (p.kids.front().kind != Proto::Kind::Atom) return false;
        out.emplace_back(p.kids.front().atom, false);
        return true;
      case Proto::Kind::Or:
        for (const Proto& kid : p.kids)
          if (!clause_literals(kid, out)) return false;
        return true;
      default: return false;
    }
  }

  static Formula to_formula(const Proto& p) {
    switch (p.kind) {
      case Proto::Kind::True: return Formula::truth();
      case Proto::Kind::False: return Formula::falsity();
      case Proto::Kind::Atom: return Formula::atom(p.atom);
      case Proto::Kind::Not: return Formula::negation(to_formula(p.kids.front()));
      case Proto::Kind::And:
      case Proto::Kind::Or: {
        std::vector<Formula> kids;
        kids.reserve(p.kids.size());
        for (const Proto& kid : p.kids) kids.push_back(to_formula(kid));
        return p.kind == Proto::Kind::And ? Formula::conjunction(std::move(kids))
                                          : Formula::disjunction(std::move(kids));
      }
      case Proto::Kind::Implies:
        return Formula::implication(to_formula(p.kids[0]), to_formula(p.kids[1]));
    }
    return Formula::truth();
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  std::map<std::string, std::pair<std::size_t, Token>> arities_;
  std::vector<VarUse> statement_vars_;
};

}  // namespace detail

/// Parses a knowledge base in the .pkb surface syntax:
///
///   statement := formula "[" ("N" | "Pi") decimal "]" "."
///   formula   := atoms over "!", "&", "|", "->" with parentheses, plus the
///                constants True and False; "#" starts a line comment.
///   term      := identifier; lowercase-initial names are variables,
///                uppercase-initial names are constants.
inline std::variant<KnowledgeBase, ParseError> parse_kb(std::string_view text) {
  auto tokens = detail::lex(text);
  if (const auto* err = std::get_if<ParseError>(&tokens)) return *err;
  detail::Parser parser(std::get<std::vector<detail::Token>>(std::move(tokens)));
  return parser.parse_kb();
}

/// Parses a single ground, closed query formula.
inline std::variant<Formula, ParseError> parse_query(std::string_view text) {
  auto tokens = detail::lex(text);
  if (const auto* err = std::get_if<ParseError>(&tokens)) return *err;
  detail::Parser parser(std::get<std::vector<detail::Token>>(std::move(tokens)));
  return parser.parse_single_formula();
}

}  // namespace poslog
