#pragma once

// Concrete syntax for terms, templates, rules and substitutions.
//
//   term   := eq ('=>' term)?                 right associative
//   eq     := unary ('==' unary)?             not associative
//   unary  := a x '.' term                    a has shape [{1}]; body extends right
//           | atom
//   atom   := x | x '[' term (',' term)* ']'  variable application
//           | v                               abstraction of shape []
//           | '(' a x1 .. xm '.' t1 .. tn ')' the dot is optional when m = 0;
//                                             for n >= 2 each ti is an atom
//           | '(' term ')'
//
// `=>`, `==` stand for the abstractions `imp` and `eq`; the glyphs ⇒ ≡ ∀ are
// accepted for `=>`, `==` and `forall`.

#include <string>
#include <string_view>
#include <vector>

#include "al/error.hpp"
#include "al/substitution.hpp"
#include "al/terms.hpp"

namespace al {

enum class Tok {
  Ident,
  LParen,
  RParen,
  LBrack,
  RBrack,
  LBrace,
  RBrace,
  Comma,
  Dot,
  Semi,
  Colon,
  Slash,
  Hash,
  Implies,
  Equiv,
  Forall,
  Turnstile,
  Assign,
  Arrow,
  End,
};

struct Token {
  Tok kind;
  std::string text;
  SourceSpan span;
};

/// Splits `text` into tokens.  `origin` gives the file name and the position
/// of the first character.  Throws SyntaxError on unknown characters.
std::vector<Token> tokenize(std::string_view text, const SourceSpan& origin = {});

/// Span of a parsed term node; children follow the node's arguments.
struct SpanTree {
  SourceSpan span;
  std::vector<SpanTree> children;
};

/// Recursive-descent parser over a token list; used directly by the file
/// readers, which parse terms embedded in larger lines.
class Parser {
 public:
  Parser(const Signature& sig, std::vector<Token> tokens);

  const Token& peek(std::size_t ahead = 0) const;
  Token next();
  bool at(Tok kind, std::size_t ahead = 0) const { return peek(ahead).kind == kind; }
  bool at_word(std::string_view word) const { return at(Tok::Ident) && peek().text == word; }
  bool accept(Tok kind);
  Token expect(Tok kind, std::string_view what);
  void expect_word(std::string_view word);
  void expect_end();
  [[noreturn]] void error(const Token& at, const std::string& message) const;

  Term term(SpanTree* spans = nullptr);
  /// `[x1 .. xn. body]` or a bare term.
  Template template_();
  /// `premise P ; premise Q |- c`, or `|- c` for an axiom.
  Rule rule();

  const Signature& signature() const { return sig_; }

 private:
  Term expr(SpanTree& spans);
  Term eq_expr(SpanTree& spans);
  Term unary(SpanTree& spans);
  Term atom(SpanTree& spans);
  Term paren(SpanTree& spans);
  Term generic(const Token& open, const Token& head, SpanTree& spans);
  Term binder_sugar(const Token& head, SpanTree& spans);
  Term infix(const char* name, const Token& op, Term lhs, SpanTree lhs_spans, Term rhs, SpanTree rhs_spans,
             SpanTree& spans);
  Term build_abs(const Token& at, std::string_view name, std::vector<std::string> binders, std::vector<Term> args);
  bool starts_term() const;

  const Signature& sig_;
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

Term parse_term(const Signature& sig, std::string_view text, const SourceSpan& origin = {});
Term parse_term_with_spans(const Signature& sig, std::string_view text, SpanTree& spans,
                           const SourceSpan& origin = {});
Template parse_template(const Signature& sig, std::string_view text, const SourceSpan& origin = {});
Rule parse_rule(const Signature& sig, std::string_view text, const SourceSpan& origin = {});

std::string print_term(const Term& t);
std::string print_template(const Template& t);
std::string print_rule(const Rule& r);
/// `{ x := t ; P/1 := [z. body] }`
std::string print_substitution(const Substitution& sigma);
/// Dependency sets as written in theory files, e.g. `[{1}, {2}]` or `[]`.
std::string print_shape(const Shape& s);

bool is_identifier(std::string_view s);

}  // namespace al
