#include "al/syntax.hpp"

#include <utility>

namespace al {

namespace {

bool ident_char(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_' || c == '\'';
}

std::string quoted(const Token& t) { return t.kind == Tok::End ? "end of input" : "'" + t.text + "'"; }

}  // namespace

bool is_identifier(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!ident_char(c)) return false;
  return true;
}

std::vector<Token> tokenize(std::string_view text, const SourceSpan& origin) {
  std::vector<Token> out;
  std::size_t line = origin.known() ? origin.line : 1;
  std::size_t col = origin.known() ? origin.column : 1;
  std::size_t i = 0;
  auto span_from = [&](std::size_t l, std::size_t c) {
    return SourceSpan{origin.file, l, c, line, col};
  };
  while (i < text.size()) {
    char c = text[i];
    if (c == '\n') {
      ++line;
      col = 1;
      ++i;
      continue;
    }
    if (c == ' ' || c == '\t' || c == '\r') {
      ++col;
      ++i;
      continue;
    }
    std::size_t l0 = line, c0 = col;
    auto emit = [&](Tok kind, std::size_t bytes, std::size_t width) {
      std::string s(text.substr(i, bytes));
      i += bytes;
      col += width;
      out.push_back(Token{kind, std::move(s), span_from(l0, c0)});
    };
    if (ident_char(c)) {
      std::size_t j = i;
      while (j < text.size() && ident_char(text[j])) ++j;
      emit(Tok::Ident, j - i, j - i);
      continue;
    }
    std::string_view rest = text.substr(i);
    if (rest.starts_with("=>")) emit(Tok::Implies, 2, 2);
    else if (rest.starts_with("==")) emit(Tok::Equiv, 2, 2);
    else if (rest.starts_with("|-")) emit(Tok::Turnstile, 2, 2);
    else if (rest.starts_with(":=")) emit(Tok::Assign, 2, 2);
    else if (rest.starts_with("->")) emit(Tok::Arrow, 2, 2);
    else if (rest.starts_with("\xE2\x87\x92")) emit(Tok::Implies, 3, 1);
    else if (rest.starts_with("\xE2\x89\xA1")) emit(Tok::Equiv, 3, 1);
    else if (rest.starts_with("\xE2\x88\x80")) emit(Tok::Forall, 3, 1);
    else {
      switch (c) {
        case '(': emit(Tok::LParen, 1, 1); break;
        case ')': emit(Tok::RParen, 1, 1); break;
        case '[': emit(Tok::LBrack, 1, 1); break;
        case ']': emit(Tok::RBrack, 1, 1); break;
        case '{': emit(Tok::LBrace, 1, 1); break;
        case '}': emit(Tok::RBrace, 1, 1); break;
        case ',': emit(Tok::Comma, 1, 1); break;
        case '.': emit(Tok::Dot, 1, 1); break;
        case ';': emit(Tok::Semi, 1, 1); break;
        case ':': emit(Tok::Colon, 1, 1); break;
        case '/': emit(Tok::Slash, 1, 1); break;
        case '#': emit(Tok::Hash, 1, 1); break;
        default: {
          std::size_t bytes = 1;
          auto u = static_cast<unsigned char>(c);
          if (u >= 0xF0) bytes = 4;
          else if (u >= 0xE0) bytes = 3;
          else if (u >= 0xC0) bytes = 2;
          throw Error(Errc::SyntaxError, "unexpected character '" + std::string(text.substr(i, bytes)) + "'",
                      SourceSpan{origin.file, l0, c0, l0, c0 + 1});
        }
      }
    }
  }
  out.push_back(Token{Tok::End, "", SourceSpan{origin.file, line, col, line, col}});
  return out;
}

Parser::Parser(const Signature& sig, std::vector<Token> tokens) : sig_(sig), toks_(std::move(tokens)) {
  if (toks_.empty() || toks_.back().kind != Tok::End) toks_.push_back(Token{Tok::End, "", {}});
}

const Token& Parser::peek(std::size_t ahead) const { return toks_[std::min(pos_ + ahead, toks_.size() - 1)]; }

Token Parser::next() {
  Token t = peek();
  if (pos_ + 1 < toks_.size()) ++pos_;
  return t;
}

bool Parser::accept(Tok kind) {
  if (!at(kind)) return false;
  next();
  return true;
}

Token Parser::expect(Tok kind, std::string_view what) {
  if (!at(kind)) error(peek(), "expected " + std::string(what) + ", found " + quoted(peek()));
  return next();
}

void Parser::expect_word(std::string_view word) {
  if (!at_word(word)) error(peek(), "expected '" + std::string(word) + "', found " + quoted(peek()));
  next();
}

void Parser::expect_end() {
  if (!at(Tok::End)) error(peek(), "unexpected " + quoted(peek()));
}

void Parser::error(const Token& at, const std::string& message) const {
  throw Error(Errc::SyntaxError, message, at.span);
}

namespace {

SourceSpan join(const SourceSpan& a, const SourceSpan& b) {
  return SourceSpan{a.file, a.line, a.column, b.end_line, b.end_column};
}

bool is_binary_operation(const Shape* s) {
  return s && s->arity() == 2 && s->valence() == 0;
}

}  // namespace

Term Parser::term(SpanTree* spans) {
  SpanTree local;
  Term t = expr(local);
  if (spans) *spans = std::move(local);
  return t;
}

Term Parser::build_abs(const Token& at, std::string_view name, std::vector<std::string> binders,
                       std::vector<Term> args) {
  try {
    return Term::abs(sig_, name, std::move(binders), std::move(args));
  } catch (const Error& e) {
    throw e.located(at.span);
  }
}

Term Parser::infix(const char* name, const Token& op, Term lhs, SpanTree lhs_spans, Term rhs, SpanTree rhs_spans,
                   SpanTree& spans) {
  if (!is_binary_operation(sig_.find(name)))
    throw Error(Errc::UnknownAbstraction, std::string("'") + op.text + "' needs a binary abstraction '" + name + "'",
                op.span);
  spans.span = join(lhs_spans.span, rhs_spans.span);
  spans.children = {std::move(lhs_spans), std::move(rhs_spans)};
  return build_abs(op, name, {}, {std::move(lhs), std::move(rhs)});
}

Term Parser::expr(SpanTree& spans) {
  SpanTree ls;
  Term lhs = eq_expr(ls);
  if (!at(Tok::Implies)) {
    spans = std::move(ls);
    return lhs;
  }
  Token op = next();
  SpanTree rs;
  Term rhs = expr(rs);
  return infix("imp", op, std::move(lhs), std::move(ls), std::move(rhs), std::move(rs), spans);
}

Term Parser::eq_expr(SpanTree& spans) {
  SpanTree ls;
  Term lhs = unary(ls);
  if (!at(Tok::Equiv)) {
    spans = std::move(ls);
    return lhs;
  }
  Token op = next();
  SpanTree rs;
  Term rhs = unary(rs);
  if (at(Tok::Equiv)) error(peek(), "'==' is not associative; add parentheses");
  return infix("eq", op, std::move(lhs), std::move(ls), std::move(rhs), std::move(rs), spans);
}

Term Parser::binder_sugar(const Token& head, SpanTree& spans) {
  std::string name = head.kind == Tok::Forall ? "forall" : head.text;
  const Shape* shape = sig_.find(name);
  if (!shape) throw Error(Errc::UnknownAbstraction, "unknown abstraction '" + name + "'", head.span);
  std::vector<std::string> binders;
  while (at(Tok::Ident)) {
    Token b = next();
    if (sig_.contains(b.text)) error(b, "'" + b.text + "' is an abstraction and cannot be a binder");
    binders.push_back(b.text);
  }
  expect(Tok::Dot, "'.' after the binders");
  SpanTree body_spans;
  Term body = expr(body_spans);
  spans.span = join(head.span, body_spans.span);
  spans.children = {std::move(body_spans)};
  return build_abs(head, name, std::move(binders), {std::move(body)});
}

Term Parser::unary(SpanTree& spans) {
  if (at(Tok::Forall)) return binder_sugar(next(), spans);
  if (at(Tok::Ident) && at(Tok::Ident, 1)) {
    const Shape* s = sig_.find(peek().text);
    if (s && s->arity() == 1 && s->valence() == 1) return binder_sugar(next(), spans);
  }
  return atom(spans);
}

bool Parser::starts_term() const {
  return at(Tok::Ident) || at(Tok::LParen) || at(Tok::Forall);
}

Term Parser::atom(SpanTree& spans) {
  if (at(Tok::LParen)) return paren(spans);
  if (!at(Tok::Ident)) error(peek(), "expected a term, found " + quoted(peek()));
  Token head = next();
  if (const Shape* s = sig_.find(head.text)) {
    if (s->arity() != 0 || s->valence() != 0)
      error(head, "abstraction '" + head.text + "' takes arguments; write (" + head.text + " ...)");
    spans.span = head.span;
    return build_abs(head, head.text, {}, {});
  }
  std::vector<Term> args;
  SourceSpan last = head.span;
  if (accept(Tok::LBrack)) {
    do {
      SpanTree as;
      args.push_back(expr(as));
      spans.children.push_back(std::move(as));
    } while (accept(Tok::Comma));
    last = expect(Tok::RBrack, "',' or ']'").span;
  }
  spans.span = join(head.span, last);
  return Term::var(head.text, std::move(args));
}

Term Parser::paren(SpanTree& spans) {
  Token open = next();
  if (at(Tok::Forall)) return generic(open, next(), spans);
  if (at(Tok::Ident)) {
    if (const Shape* s = sig_.find(peek().text)) {
      bool value = s->arity() == 0 && s->valence() == 0;
      if (!value || at(Tok::RParen, 1) || at(Tok::Dot, 1)) return generic(open, next(), spans);
    }
    // `(name. ...)` and `(name x ...` can only be abstractions.
    if (at(Tok::Dot, 1) || at(Tok::Ident, 1)) return generic(open, next(), spans);
  }
  SpanTree inner;
  Term t = expr(inner);
  expect(Tok::RParen, "')'");
  spans = std::move(inner);
  return t;
}

Term Parser::generic(const Token& open, const Token& head, SpanTree& spans) {
  std::string name = head.kind == Tok::Forall ? "forall" : head.text;
  const Shape* shape = sig_.find(name);
  if (!shape) throw Error(Errc::UnknownAbstraction, "unknown abstraction '" + name + "'", head.span);

  std::size_t save = pos_;
  std::vector<std::string> binders;
  while (at(Tok::Ident)) binders.push_back(next().text);
  if (accept(Tok::Dot)) {
    for (std::size_t i = 0; i < binders.size(); ++i)
      if (sig_.contains(binders[i])) error(toks_[save + i], "'" + binders[i] + "' is an abstraction and cannot be a binder");
    if (binders.size() != shape->valence())
      throw Error(Errc::ArityError,
                  "'" + name + "' binds " + std::to_string(shape->valence()) + " variable(s), got " +
                      std::to_string(binders.size()),
                  head.span);
  } else {
    pos_ = save;
    binders.clear();
    if (shape->valence() != 0) error(peek(), "expected binders and '.' after '" + name + "'");
  }

  std::vector<Term> args;
  std::size_t n = shape->arity();
  auto arity_error = [&](std::size_t got) {
    throw Error(Errc::ArityError,
                "'" + name + "' takes " + std::to_string(n) + " argument(s), got " + std::to_string(got), head.span);
  };
  if (n == 1) {
    SpanTree as;
    args.push_back(expr(as));
    spans.children.push_back(std::move(as));
    if (starts_term()) arity_error(2);
  } else {
    while (starts_term()) {
      SpanTree as;
      args.push_back(atom(as));
      spans.children.push_back(std::move(as));
    }
    if (args.size() != n) arity_error(args.size());
  }
  Token close = expect(Tok::RParen, "')'");
  spans.span = join(open.span, close.span);
  return build_abs(head, name, std::move(binders), std::move(args));
}

Template Parser::template_() {
  if (!at(Tok::LBrack)) return Template::of(term());
  Token open = next();
  std::vector<std::string> binders;
  while (at(Tok::Ident)) {
    Token b = next();
    if (sig_.contains(b.text)) error(b, "'" + b.text + "' is an abstraction and cannot be a binder");
    binders.push_back(b.text);
  }
  expect(Tok::Dot, "'.' after the template binders");
  Term body = term();
  expect(Tok::RBrack, "']'");
  try {
    return Template::make(std::move(binders), std::move(body));
  } catch (const Error& e) {
    throw e.located(open.span);
  }
}

Rule Parser::rule() {
  Token start = peek();
  std::vector<Template> premises;
  if (at_word("premise")) {
    do {
      expect_word("premise");
      premises.push_back(template_());
    } while (accept(Tok::Semi));
  }
  expect(Tok::Turnstile, "'|-'");
  Term conclusion = term();
  try {
    return Rule::make(premises, conclusion);
  } catch (const Error& e) {
    throw e.located(start.span);
  }
}

Term parse_term(const Signature& sig, std::string_view text, const SourceSpan& origin) {
  Parser p(sig, tokenize(text, origin));
  Term t = p.term();
  p.expect_end();
  return t;
}

Term parse_term_with_spans(const Signature& sig, std::string_view text, SpanTree& spans, const SourceSpan& origin) {
  Parser p(sig, tokenize(text, origin));
  Term t = p.term(&spans);
  p.expect_end();
  return t;
}

Template parse_template(const Signature& sig, std::string_view text, const SourceSpan& origin) {
  Parser p(sig, tokenize(text, origin));
  Template t = p.template_();
  p.expect_end();
  return t;
}

Rule parse_rule(const Signature& sig, std::string_view text, const SourceSpan& origin) {
  Parser p(sig, tokenize(text, origin));
  Rule r = p.rule();
  p.expect_end();
  return r;
}

namespace {

// Context levels: an implication needs parentheses at level >= 1, an
// equation at level >= 2.
constexpr int kTop = 0;
constexpr int kImpLeft = 1;
constexpr int kOperand = 2;

void print(const Term& t, int level, std::string& out) {
  if (t.is_var()) {
    out += t.name();
    if (!t.args().empty()) {
      out += '[';
      for (std::size_t i = 0; i < t.args().size(); ++i) {
        if (i) out += ", ";
        print(t.args()[i], kTop, out);
      }
      out += ']';
    }
    return;
  }
  const Shape& s = t.shape();
  if (s.arity() == 0 && s.valence() == 0) {
    out += t.name();
    return;
  }
  bool imp = t.name() == "imp" && is_binary_operation(&s);
  bool eq = t.name() == "eq" && is_binary_operation(&s);
  if (imp || eq) {
    bool parens = level >= (imp ? kImpLeft : kOperand);
    if (parens) out += '(';
    print(t.args()[0], imp ? kImpLeft : kOperand, out);
    out += imp ? " => " : " == ";
    print(t.args()[1], imp ? kTop : kOperand, out);
    if (parens) out += ')';
    return;
  }
  out += '(';
  out += t.name();
  for (const auto& b : t.binders()) out += ' ' + b;
  out += '.';
  for (const auto& a : t.args()) {
    out += ' ';
    print(a, s.arity() == 1 ? kTop : kOperand, out);
  }
  out += ')';
}

}  // namespace

std::string print_term(const Term& t) {
  std::string out;
  print(t, kTop, out);
  return out;
}

std::string print_template(const Template& t) {
  if (t.binders.empty()) return print_term(t.body);
  std::string out = "[";
  for (std::size_t i = 0; i < t.binders.size(); ++i) {
    if (i) out += ' ';
    out += t.binders[i];
  }
  return out + ". " + print_term(t.body) + "]";
}

std::string print_rule(const Rule& r) {
  std::string out;
  for (const auto& p : r.premises()) {
    if (!out.empty()) out += " ; ";
    out += "premise " + print_template(p.named());
  }
  if (!out.empty()) out += ' ';
  return out + "|- " + print_term(r.conclusion());
}

std::string print_substitution(const Substitution& sigma) {
  if (sigma.empty()) return "{ }";
  std::string out = "{ ";
  bool first = true;
  for (const auto& [key, tmpl] : sigma.entries()) {
    if (!first) out += " ; ";
    first = false;
    out += key.name;
    if (key.arity) out += "/" + std::to_string(key.arity);
    out += " := " + print_template(tmpl);
  }
  return out + " }";
}

std::string print_shape(const Shape& s) {
  std::string out = "[";
  for (std::size_t i = 0; i < s.deps().size(); ++i) {
    if (i) out += ", ";
    out += '{';
    for (std::size_t j = 0; j < s.deps()[i].size(); ++j) {
      if (j) out += ", ";
      out += std::to_string(s.deps()[i][j]);
    }
    out += '}';
  }
  return out + "]";
}

}  // namespace al
