#include "al/files.hpp"

#include <charconv>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "al/syntax.hpp"

namespace al {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::IoError, "cannot read '" + path + "'", SourceSpan{path, 1, 1, 1, 1});
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

FileReader filesystem_reader() {
  return [](const std::string& path) { return read_file(path); };
}

std::string print_rule_text(const RuleText& r) {
  std::string out;
  for (const auto& p : r.premises) {
    if (!out.empty()) out += " ; ";
    out += "premise " + print_template(p);
  }
  if (!out.empty()) out += ' ';
  return out + "|- " + print_term(r.conclusion);
}

RuleText rule_text(const Rule& r) {
  RuleText out{{}, r.conclusion()};
  for (const auto& p : r.premises()) out.premises.push_back(p.named());
  return out;
}

namespace {

struct RawLine {
  std::string text;
  std::size_t number;
};

std::vector<RawLine> split_lines(std::string_view text) {
  std::vector<RawLine> out;
  std::size_t start = 0, number = 1;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string line(text.substr(start, end - start));
    if (!line.empty() && line.back() == '\r') line.pop_back();
    out.push_back({std::move(line), number++});
    start = end + 1;
  }
  return out;
}

std::string trim(std::string_view s) {
  std::size_t a = s.find_first_not_of(" \t");
  if (a == std::string_view::npos) return "";
  std::size_t b = s.find_last_not_of(" \t");
  return std::string(s.substr(a, b - a + 1));
}

SourceSpan line_span(const std::string& file, const RawLine& line) {
  return SourceSpan{file, line.number, 1, line.number, line.text.size() + 1};
}

struct Word {
  std::string text;
  std::size_t column;
};

std::vector<Word> split_words(const std::string& line) {
  std::vector<Word> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    if (i >= line.size()) break;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t') ++j;
    out.push_back({line.substr(i, j - i), i + 1});
    i = j;
  }
  return out;
}

SourceSpan word_span(const std::string& file, const RawLine& line, const Word& w) {
  return SourceSpan{file, line.number, w.column, line.number, w.column + w.text.size()};
}

[[noreturn]] void fail_at(Errc code, const std::string& message, const SourceSpan& span) {
  throw Error(code, message, span);
}

/// Runs `f`, attaching `span` to any error that has no position yet.
template <class F>
auto located(const SourceSpan& span, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Error& e) {
    throw e.located(span);
  }
}

/// `abstraction <name> shape [{..}, ..]`
void parse_abstraction(Parser& p, std::string& name, Shape& shape) {
  p.expect_word("abstraction");
  Token n = p.expect(Tok::Ident, "abstraction name");
  name = n.text;
  p.expect_word("shape");
  Token open = p.expect(Tok::LBrack, "'['");
  std::vector<std::vector<long>> deps;
  if (!p.at(Tok::RBrack)) {
    do {
      p.expect(Tok::LBrace, "'{'");
      std::vector<long> set;
      if (!p.at(Tok::RBrace)) {
        do {
          Token num = p.expect(Tok::Ident, "a binder index");
          long v = 0;
          auto [ptr, ec] = std::from_chars(num.text.data(), num.text.data() + num.text.size(), v);
          if (ec != std::errc() || ptr != num.text.data() + num.text.size()) p.error(num, "expected a number");
          set.push_back(v);
        } while (p.accept(Tok::Comma));
      }
      p.expect(Tok::RBrace, "',' or '}'");
      deps.push_back(std::move(set));
    } while (p.accept(Tok::Comma));
  }
  p.expect(Tok::RBrack, "',' or ']'");
  p.expect_end();
  shape = located(open.span, [&] { return validate_shape(deps); });
}

std::string print_abstraction(const std::string& name, const Shape& shape) {
  return "abstraction " + name + " shape " + print_shape(shape);
}

bool is_comment(const std::string& trimmed) { return !trimmed.empty() && trimmed[0] == '#'; }

constexpr int kMaxExtendsDepth = 16;

LoadedTheory parse_theory_at(std::string_view text, const std::string& file, const FileReader& reader, int depth) {
  TheoryDocument doc{file, {}};
  std::optional<Logic> base;
  Signature sig;
  Signature additions;
  std::vector<NamedRule> rules;
  std::set<std::string> rule_names;
  bool seen_content = false;

  for (const RawLine& raw : split_lines(text)) {
    TheoryLine line;
    line.span = line_span(file, raw);
    std::string t = trim(raw.text);
    if (t.empty()) {
      doc.lines.push_back(std::move(line));
      continue;
    }
    if (is_comment(t)) {
      line.kind = TheoryLine::Kind::Comment;
      line.text = t;
      doc.lines.push_back(std::move(line));
      continue;
    }
    auto words = split_words(raw.text);
    if (words[0].text == "extends") {
      if (seen_content || base) fail_at(Errc::SyntaxError, "'extends' must come first and only once", line.span);
      if (words.size() != 2) fail_at(Errc::SyntaxError, "expected: extends <path>", line.span);
      if (depth >= kMaxExtendsDepth) fail_at(Errc::SyntaxError, "'extends' nested too deeply", line.span);
      std::string path = (std::filesystem::path(file).parent_path() / words[1].text).lexically_normal().string();
      SourceSpan where = word_span(file, raw, words[1]);
      std::string base_text = located(where, [&] { return reader(path); });
      base = parse_theory_at(base_text, path, reader, depth + 1).logic;
      sig = base->signature();
      for (const auto& nr : base->rules()) rule_names.insert(nr.name);
      line.kind = TheoryLine::Kind::Extends;
      line.text = words[1].text;
      doc.lines.push_back(std::move(line));
      continue;
    }
    seen_content = true;
    Parser p(sig, tokenize(raw.text, SourceSpan{file, raw.number, 1, raw.number, 1}));
    if (p.at_word("abstraction")) {
      line.kind = TheoryLine::Kind::Abstraction;
      Token name_tok = p.peek(1);
      parse_abstraction(p, line.name, line.shape);
      if (base && base->signature().contains(line.name))
        fail_at(Errc::NameClash, "abstraction '" + line.name + "' already exists in the base logic", name_tok.span);
      if (!rules.empty()) fail_at(Errc::SyntaxError, "abstractions must be declared before rules", line.span);
      located(name_tok.span, [&] {
        sig.add(line.name, line.shape);
        additions.add(line.name, line.shape);
      });
    } else if (p.at_word("rule")) {
      line.kind = TheoryLine::Kind::Rule;
      p.next();
      Token name_tok = p.expect(Tok::Ident, "rule name");
      line.name = name_tok.text;
      p.expect(Tok::Colon, "':'");
      Token start = p.peek();
      RuleText rt{{}, Term::var("_")};
      if (p.at_word("premise")) {
        do {
          p.expect_word("premise");
          rt.premises.push_back(p.template_());
        } while (p.accept(Tok::Semi));
      }
      p.expect(Tok::Turnstile, "'|-'");
      rt.conclusion = p.term();
      p.expect_end();
      Rule rule = located(start.span, [&] { return rt.rule(); });
      if (!rule_names.insert(line.name).second) {
        if (base && base->find(line.name))
          fail_at(Errc::NameClash, "rule '" + line.name + "' already exists in the base logic", name_tok.span);
        fail_at(Errc::DuplicateRuleName, "rule '" + line.name + "' is defined twice", name_tok.span);
      }
      if (base && !rule.is_axiom())
        fail_at(Errc::MalformedRule, "an extending theory may only add axioms", name_tok.span);
      rules.push_back({line.name, std::move(rule)});
      line.rule = std::move(rt);
    } else {
      p.error(p.peek(), "expected 'abstraction', 'rule' or 'extends'");
    }
    doc.lines.push_back(std::move(line));
  }

  SourceSpan whole{file, 1, 1, 1, 1};
  Logic logic = located(whole, [&] {
    return base ? axiomatic_extension(*base, additions, rules) : mk_logic(sig, rules);
  });
  return LoadedTheory{std::move(doc), std::move(logic)};
}

}  // namespace

LoadedTheory parse_theory(std::string_view text, const std::string& file, const FileReader& reader) {
  return parse_theory_at(text, file, reader, 0);
}

LoadedTheory load_theory(const std::string& path, const FileReader& reader) {
  return parse_theory(reader(path), path, reader);
}

std::string print_theory(const TheoryDocument& doc) {
  std::string out;
  for (const auto& line : doc.lines) {
    switch (line.kind) {
      case TheoryLine::Kind::Blank: break;
      case TheoryLine::Kind::Comment: out += line.text; break;
      case TheoryLine::Kind::Extends: out += "extends " + line.text; break;
      case TheoryLine::Kind::Abstraction: out += print_abstraction(line.name, line.shape); break;
      case TheoryLine::Kind::Rule: out += "rule " + line.name + ": " + print_rule_text(*line.rule); break;
    }
    out += '\n';
  }
  return out;
}

// ---------------------------------------------------------------- models

ModelDocument parse_model_document(std::string_view text, const std::string& file) {
  ModelDocument doc{file, {}};
  bool in_table = false;
  Signature none;
  for (const RawLine& raw : split_lines(text)) {
    ModelLine line;
    line.span = line_span(file, raw);
    std::string t = trim(raw.text);
    if (t.empty() || is_comment(t)) {
      if (!t.empty()) {
        line.kind = ModelLine::Kind::Comment;
        line.text = t;
      }
      doc.lines.push_back(std::move(line));
      continue;
    }
    auto words = split_words(raw.text);
    bool indented = raw.text[0] == ' ' || raw.text[0] == '\t';
    if (indented) {
      if (!in_table) fail_at(Errc::SyntaxError, "table row outside an 'op ... table:' block", line.span);
      Parser p(none, tokenize(raw.text, SourceSpan{file, raw.number, 1, raw.number, 1}));
      if (p.at_word("default") && p.at(Tok::Ident, 1) && p.at(Tok::End, 2)) {
        p.next();
        line.kind = ModelLine::Kind::Default;
        line.elements.push_back(p.next().text);
      } else {
        line.kind = ModelLine::Kind::Row;
        bool any_bracket = false, any_bare = false;
        while (!p.at(Tok::Arrow) && !p.at(Tok::End)) {
          if (p.accept(Tok::LBrack)) {
            any_bracket = true;
            std::vector<std::string> table;
            while (p.at(Tok::Ident)) table.push_back(p.next().text);
            p.expect(Tok::RBrack, "']'");
            line.row_args.push_back(std::move(table));
          } else {
            any_bare = true;
            line.row_args.push_back({p.expect(Tok::Ident, "an element or '['").text});
          }
        }
        if (any_bracket && any_bare) fail_at(Errc::SyntaxError, "mix of bare and bracketed arguments", line.span);
        line.bracketed = any_bracket;
        p.expect(Tok::Arrow, "'->'");
        line.elements.push_back(p.expect(Tok::Ident, "a result element").text);
        p.expect_end();
      }
      doc.lines.push_back(std::move(line));
      continue;
    }
    in_table = false;
    const std::string& key = words[0].text;
    auto need_identifiers = [&](std::size_t from) {
      for (std::size_t i = from; i < words.size(); ++i)
        if (!is_identifier(words[i].text))
          fail_at(Errc::SyntaxError, "'" + words[i].text + "' is not an element name", word_span(file, raw, words[i]));
    };
    if (key == "abstraction") {
      Parser p(none, tokenize(raw.text, SourceSpan{file, raw.number, 1, raw.number, 1}));
      line.kind = ModelLine::Kind::Abstraction;
      parse_abstraction(p, line.name, line.shape);
    } else if (key == "carrier") {
      if (words.size() < 2) fail_at(Errc::SyntaxError, "the carrier needs at least one element", line.span);
      need_identifiers(1);
      line.kind = ModelLine::Kind::Carrier;
      for (std::size_t i = 1; i < words.size(); ++i) line.elements.push_back(words[i].text);
    } else if (key == "truth") {
      if (words.size() != 2) fail_at(Errc::SyntaxError, "expected: truth <element>", line.span);
      need_identifiers(1);
      line.kind = ModelLine::Kind::Truth;
      line.elements.push_back(words[1].text);
    } else if (key == "op") {
      if (words.size() < 3 || !is_identifier(words[1].text))
        fail_at(Errc::SyntaxError, "expected: op <name> builtin ... | op <name> table:", line.span);
      line.name = words[1].text;
      if (words[2].text == "table:" && words.size() == 3) {
        line.kind = ModelLine::Kind::OpTable;
        in_table = true;
      } else if (words[2].text == "builtin" && words.size() == 5 && words[3].text == "const") {
        need_identifiers(4);
        line.kind = ModelLine::Kind::OpConst;
        line.elements.push_back(words[4].text);
      } else if (words[2].text == "builtin" && (words.size() == 4 || words.size() == 5) &&
                 words[3].text == "forall-like") {
        need_identifiers(4);
        line.kind = ModelLine::Kind::OpForall;
        if (words.size() == 5) line.elements.push_back(words[4].text);
      } else {
        fail_at(Errc::SyntaxError,
                "expected 'table:', 'builtin const <element>' or 'builtin forall-like [<element>]'",
                word_span(file, raw, words[2]));
      }
    } else {
      fail_at(Errc::SyntaxError, "expected 'abstraction', 'carrier', 'truth' or 'op'", word_span(file, raw, words[0]));
    }
    doc.lines.push_back(std::move(line));
  }
  return doc;
}

namespace {

Elem element_at(const std::vector<std::string>& carrier, const std::string& name, const SourceSpan& span) {
  for (std::size_t i = 0; i < carrier.size(); ++i)
    if (carrier[i] == name) return static_cast<Elem>(i);
  fail_at(Errc::InvalidModel, "'" + name + "' is not a carrier element", span);
}

Elem default_false(Elem truth) { return truth == 0 ? 1 : 0; }

}  // namespace

Model build_model(const ModelDocument& doc) {
  Signature sig;
  std::map<std::string, SourceSpan> declared_at;
  const ModelLine* carrier_line = nullptr;
  const ModelLine* truth_line = nullptr;
  for (const auto& line : doc.lines) {
    if (line.kind == ModelLine::Kind::Abstraction) {
      located(line.span, [&] { sig.add(line.name, line.shape); });
      declared_at[line.name] = line.span;
    } else if (line.kind == ModelLine::Kind::Carrier) {
      if (carrier_line) fail_at(Errc::SyntaxError, "the carrier is declared twice", line.span);
      carrier_line = &line;
    } else if (line.kind == ModelLine::Kind::Truth) {
      if (truth_line) fail_at(Errc::SyntaxError, "truth is declared twice", line.span);
      truth_line = &line;
    }
  }
  SourceSpan top{doc.file, 1, 1, 1, 1};
  if (!carrier_line) fail_at(Errc::InvalidModel, "missing 'carrier' line", top);
  if (!truth_line) fail_at(Errc::InvalidModel, "missing 'truth' line", top);
  const auto& carrier = carrier_line->elements;
  {
    std::set<std::string> distinct(carrier.begin(), carrier.end());
    if (distinct.size() != carrier.size())
      fail_at(Errc::DuplicateName, "carrier elements must be distinct", carrier_line->span);
  }
  const std::size_t c = carrier.size();
  Elem truth = element_at(carrier, truth_line->elements[0], truth_line->span);

  std::map<std::string, OperatorInterp> interps;
  for (std::size_t i = 0; i < doc.lines.size(); ++i) {
    const ModelLine& line = doc.lines[i];
    using K = ModelLine::Kind;
    if (line.kind != K::OpConst && line.kind != K::OpForall && line.kind != K::OpTable) continue;
    const Shape* shape = sig.find(line.name);
    if (!shape) fail_at(Errc::InvalidModel, "'" + line.name + "' is not a declared abstraction", line.span);
    if (interps.contains(line.name))
      fail_at(Errc::DuplicateName, "'" + line.name + "' is interpreted twice", line.span);
    auto ops = shape->operator_shape();

    if (line.kind == K::OpConst) {
      interps.emplace(line.name, ConstantElement{element_at(carrier, line.elements[0], line.span)});
      continue;
    }
    if (line.kind == K::OpForall) {
      if (ops.size() != 1) fail_at(Errc::InvalidModel, "forall-like operators take one argument", line.span);
      if (c < 2 && line.elements.empty()) {
        interps.emplace(line.name, ForallLike{truth, truth});
        continue;
      }
      Elem f = line.elements.empty() ? default_false(truth) : element_at(carrier, line.elements[0], line.span);
      interps.emplace(line.name, ForallLike{truth, f});
      continue;
    }

    // table rows
    std::vector<const ModelLine*> rows;
    const ModelLine* dflt = nullptr;
    for (std::size_t j = i + 1; j < doc.lines.size(); ++j) {
      const ModelLine& r = doc.lines[j];
      if (r.kind == K::Row) rows.push_back(&r);
      else if (r.kind == K::Default) {
        if (dflt) fail_at(Errc::SyntaxError, "two default rows", r.span);
        dflt = &r;
      } else if (r.kind != K::Comment && r.kind != K::Blank) break;
    }
    std::optional<Elem> fallback;
    if (dflt) fallback = element_at(carrier, dflt->elements[0], dflt->span);

    bool pointwise = std::all_of(ops.begin(), ops.end(), [](std::size_t k) { return k == 0; });
    if (pointwise) {
      std::size_t size = located(line.span, [&] {
        auto n = checked_pow(c, ops.size(), std::size_t{1} << 24);
        if (!n) fail(Errc::EnumerationTooLarge, "table too large");
        return *n;
      });
      std::vector<std::optional<Elem>> values(size);
      for (const ModelLine* r : rows) {
        if (r->bracketed || r->row_args.size() != ops.size())
          fail_at(Errc::InvalidModel, "rows of '" + line.name + "' need " + std::to_string(ops.size()) + " element(s)",
                  r->span);
        std::vector<Elem> tuple;
        for (const auto& a : r->row_args) tuple.push_back(element_at(carrier, a[0], r->span));
        auto& slot = values[tuple_index(c, tuple)];
        if (slot) fail_at(Errc::InvalidModel, "row given twice", r->span);
        slot = element_at(carrier, r->elements[0], r->span);
      }
      std::vector<Elem> table;
      for (std::size_t k = 0; k < size; ++k) {
        if (!values[k] && !fallback) {
          std::string row;
          for (Elem e : tuple_at(c, ops.size(), k)) row += carrier[e] + " ";
          fail_at(Errc::InvalidModel, "table of '" + line.name + "' misses the row " + row + "-> ?", line.span);
        }
        table.push_back(values[k] ? *values[k] : *fallback);
      }
      interps.emplace(line.name, PointwiseLift{OperationTable(c, ops.size(), std::move(table))});
      continue;
    }

    ExplicitOperator op;
    for (const ModelLine* r : rows) {
      if (!r->bracketed || r->row_args.size() != ops.size())
        fail_at(Errc::InvalidModel,
                "rows of '" + line.name + "' need " + std::to_string(ops.size()) + " bracketed argument table(s)",
                r->span);
      std::vector<Elem> key;
      for (std::size_t a = 0; a < ops.size(); ++a) {
        auto want = checked_pow(c, ops[a], std::size_t{1} << 24);
        if (!want || r->row_args[a].size() != *want)
          fail_at(Errc::InvalidModel, "argument " + std::to_string(a + 1) + " must list " +
                                          std::to_string(want.value_or(0)) + " values",
                  r->span);
        for (const auto& e : r->row_args[a]) key.push_back(element_at(carrier, e, r->span));
      }
      if (!op.entries.emplace(std::move(key), element_at(carrier, r->elements[0], r->span)).second)
        fail_at(Errc::InvalidModel, "row given twice", r->span);
    }
    std::size_t domain = 1;
    bool complete = true;
    for (std::size_t k : ops) {
      auto n = checked_pow(c, k, std::size_t{1} << 24);
      auto m = n ? checked_pow(c, *n, std::size_t{1} << 24) : std::nullopt;
      if (!m || domain > (std::size_t{1} << 24) / *m) {
        complete = false;
        break;
      }
      domain *= *m;
    }
    complete = complete && op.entries.size() == domain;
    if (!fallback && !complete)
      fail_at(Errc::InvalidModel, "table of '" + line.name + "' is partial and needs a 'default' row", line.span);
    op.fallback = fallback.value_or(0);
    interps.emplace(line.name, std::move(op));
  }

  for (const auto& [name, span] : declared_at)
    if (!interps.contains(name)) fail_at(Errc::InterpMissing, "no interpretation for '" + name + "'", span);

  return located(top, [&] { return Model(FiniteAlgebra(carrier, sig, std::move(interps)), truth); });
}

Model load_model(const std::string& path, const FileReader& reader) {
  return build_model(parse_model_document(reader(path), path));
}

std::string print_model(const ModelDocument& doc) {
  std::string out;
  for (const auto& line : doc.lines) {
    using K = ModelLine::Kind;
    switch (line.kind) {
      case K::Blank: break;
      case K::Comment: out += line.text; break;
      case K::Abstraction: out += print_abstraction(line.name, line.shape); break;
      case K::Carrier:
        out += "carrier";
        for (const auto& e : line.elements) out += ' ' + e;
        break;
      case K::Truth: out += "truth " + line.elements[0]; break;
      case K::OpConst: out += "op " + line.name + " builtin const " + line.elements[0]; break;
      case K::OpForall:
        out += "op " + line.name + " builtin forall-like";
        if (!line.elements.empty()) out += ' ' + line.elements[0];
        break;
      case K::OpTable: out += "op " + line.name + " table:"; break;
      case K::Row:
        out += ' ';
        for (const auto& a : line.row_args) {
          out += ' ';
          if (line.bracketed) {
            out += '[';
            for (std::size_t i = 0; i < a.size(); ++i) out += (i ? " " : "") + a[i];
            out += ']';
          } else {
            out += a[0];
          }
        }
        out += " -> " + line.elements[0];
        break;
      case K::Default: out += "  default " + line.elements[0]; break;
    }
    out += '\n';
  }
  return out;
}

ModelDocument model_document(const Model& model) {
  ModelDocument doc;
  const auto& carrier = model.algebra.carrier();
  const std::size_t c = carrier.size();
  auto add = [&](ModelLine line) { doc.lines.push_back(std::move(line)); };
  for (const auto& [name, shape] : model.algebra.signature().abstractions()) {
    ModelLine l;
    l.kind = ModelLine::Kind::Abstraction;
    l.name = name;
    l.shape = shape;
    add(l);
  }
  {
    ModelLine l;
    l.kind = ModelLine::Kind::Carrier;
    l.elements = carrier;
    add(l);
    ModelLine t;
    t.kind = ModelLine::Kind::Truth;
    t.elements = {carrier[model.truth]};
    add(t);
  }
  auto row = [&](std::vector<std::vector<std::string>> args, bool bracketed, Elem result) {
    ModelLine r;
    r.kind = ModelLine::Kind::Row;
    r.row_args = std::move(args);
    r.bracketed = bracketed;
    r.elements = {carrier[result]};
    add(r);
  };
  for (const auto& [name, op] : model.algebra.interps()) {
    ModelLine l;
    l.name = name;
    auto ops = model.algebra.signature().find(name)->operator_shape();
    if (const auto* k = std::get_if<ConstantElement>(&op)) {
      l.kind = ModelLine::Kind::OpConst;
      l.elements = {carrier[k->value]};
      add(l);
    } else if (const auto* f = std::get_if<ForallLike>(&op); f && f->true_value == model.truth) {
      l.kind = ModelLine::Kind::OpForall;
      if (c >= 2 && f->false_value != default_false(model.truth)) l.elements = {carrier[f->false_value]};
      add(l);
    } else if (const auto* p = std::get_if<PointwiseLift>(&op)) {
      l.kind = ModelLine::Kind::OpTable;
      add(l);
      for (std::size_t i = 0; i < p->table.values().size(); ++i) {
        std::vector<std::vector<std::string>> args;
        for (Elem e : tuple_at(c, p->table.arity(), i)) args.push_back({carrier[e]});
        row(std::move(args), false, p->table.values()[i]);
      }
    } else {
      // Explicit operators, and forall-like ones over a different truth
      // element, are written out as full tables.
      l.kind = ModelLine::Kind::OpTable;
      add(l);
      std::vector<std::vector<OperationTable>> domains;
      std::size_t rows = 1;
      for (std::size_t k : ops) {
        domains.push_back(enumerate_operations(c, k));
        rows *= domains.back().size();
      }
      for (std::size_t r = 0; r < rows; ++r) {
        std::size_t rest = r;
        std::vector<std::size_t> pick(domains.size());
        for (std::size_t i = domains.size(); i-- > 0;) {
          pick[i] = rest % domains[i].size();
          rest /= domains[i].size();
        }
        std::vector<OperationTable> args;
        std::vector<std::vector<std::string>> text;
        for (std::size_t i = 0; i < domains.size(); ++i) {
          args.push_back(domains[i][pick[i]]);
          std::vector<std::string> names;
          for (Elem e : args.back().values()) names.push_back(carrier[e]);
          text.push_back(std::move(names));
        }
        row(std::move(text), true, apply_operator(op, args));
      }
    }
  }
  return doc;
}

// ---------------------------------------------------------------- scripts

ScriptDocument parse_script(std::string_view text, const std::string& file, const Signature& sig) {
  ScriptDocument doc{file, {}};
  std::set<std::string> names;
  bool have_thm = false, expect_used = false;
  for (const RawLine& raw : split_lines(text)) {
    ScriptLine line;
    line.span = line_span(file, raw);
    std::string t = trim(raw.text);
    if (t.empty()) {
      doc.lines.push_back(std::move(line));
      continue;
    }
    if (is_comment(t)) {
      line.kind = ScriptLine::Kind::Comment;
      line.text = t;
      doc.lines.push_back(std::move(line));
      continue;
    }
    Parser p(sig, tokenize(raw.text, SourceSpan{file, raw.number, 1, raw.number, 1}));
    if (p.at_word("expect")) {
      Token kw = p.next();
      if (!have_thm) p.error(kw, "'expect:' must follow a thm line");
      if (expect_used) p.error(kw, "the previous thm already has an 'expect:' line");
      p.expect(Tok::Colon, "':'");
      Token start = p.peek();
      RuleText rt{{}, Term::var("_")};
      if (p.at_word("premise")) {
        do {
          p.expect_word("premise");
          rt.premises.push_back(p.template_());
        } while (p.accept(Tok::Semi));
      }
      p.expect(Tok::Turnstile, "'|-'");
      rt.conclusion = p.term();
      p.expect_end();
      located(start.span, [&] { (void)rt.rule(); });
      line.kind = ScriptLine::Kind::Expect;
      line.expect = std::move(rt);
      expect_used = true;
      doc.lines.push_back(std::move(line));
      continue;
    }
    p.expect_word("thm");
    Token name = p.expect(Tok::Ident, "theorem name");
    if (!names.insert(name.text).second)
      fail_at(Errc::DuplicateName, "theorem '" + name.text + "' is defined twice", name.span);
    line.kind = ScriptLine::Kind::Thm;
    line.name = name.text;
    p.expect(Tok::Assign, "':='");
    if (p.at_word("rule")) {
      p.next();
      line.step = ScriptLine::Step::Rule;
      line.source = p.expect(Tok::Ident, "rule name").text;
    } else if (p.at_word("subst")) {
      p.next();
      line.step = ScriptLine::Step::Subst;
      line.source = p.expect(Tok::Ident, "theorem name").text;
      p.expect(Tok::LBrace, "'{'");
      Substitution check;
      if (!p.at(Tok::RBrace)) {
        do {
          Token var = p.expect(Tok::Ident, "variable");
          VarKey key{var.text, 0};
          if (p.accept(Tok::Slash)) {
            Token n = p.expect(Tok::Ident, "arity");
            auto [ptr, ec] = std::from_chars(n.text.data(), n.text.data() + n.text.size(), key.arity);
            if (ec != std::errc() || ptr != n.text.data() + n.text.size()) p.error(n, "expected an arity");
          }
          if (sig.contains(var.text)) p.error(var, "'" + var.text + "' is an abstraction, not a variable");
          p.expect(Tok::Assign, "':='");
          Template tmpl = p.template_();
          located(var.span, [&] { check.add(key, tmpl); });
          line.entries.emplace_back(std::move(key), std::move(tmpl));
        } while (p.accept(Tok::Semi));
      }
      p.expect(Tok::RBrace, "';' or '}'");
    } else if (p.at_word("infer")) {
      p.next();
      line.step = ScriptLine::Step::Infer;
      line.source = p.expect(Tok::Ident, "major theorem name").text;
      p.expect(Tok::Hash, "'#'");
      Token n = p.expect(Tok::Ident, "premise number");
      auto [ptr, ec] = std::from_chars(n.text.data(), n.text.data() + n.text.size(), line.index);
      if (ec != std::errc() || ptr != n.text.data() + n.text.size() || line.index == 0)
        p.error(n, "premise numbers start at 1");
      line.minor = p.expect(Tok::Ident, "minor theorem name").text;
    } else {
      p.error(p.peek(), "expected 'rule', 'subst' or 'infer'");
    }
    p.expect_end();
    have_thm = true;
    expect_used = false;
    doc.lines.push_back(std::move(line));
  }
  return doc;
}

std::string print_script(const ScriptDocument& doc) {
  std::string out;
  for (const auto& line : doc.lines) {
    switch (line.kind) {
      case ScriptLine::Kind::Blank: break;
      case ScriptLine::Kind::Comment: out += line.text; break;
      case ScriptLine::Kind::Expect: out += "expect: " + print_rule_text(*line.expect); break;
      case ScriptLine::Kind::Thm:
        out += "thm " + line.name + " := ";
        switch (line.step) {
          case ScriptLine::Step::Rule: out += "rule " + line.source; break;
          case ScriptLine::Step::Subst: {
            out += "subst " + line.source + " {";
            bool first = true;
            for (const auto& [key, tmpl] : line.entries) {
              out += first ? " " : " ; ";
              first = false;
              out += key.name;
              if (key.arity) out += "/" + std::to_string(key.arity);
              out += " := " + print_template(tmpl);
            }
            out += " }";
            break;
          }
          case ScriptLine::Step::Infer:
            out += "infer " + line.source + " # " + std::to_string(line.index) + " " + line.minor;
            break;
        }
        break;
    }
    out += '\n';
  }
  return out;
}

std::vector<std::pair<std::string, Proof>> script_proofs(const ScriptDocument& doc) {
  std::vector<std::pair<std::string, Proof>> out;
  std::map<std::string, std::size_t> index;
  auto lookup = [&](const std::string& name, const ScriptLine& line) -> const Proof& {
    auto it = index.find(name);
    if (it == index.end()) fail_at(Errc::UnknownTheoremName, "no theorem named '" + name + "' before this line", line.span);
    return out[it->second].second;
  };
  for (const auto& line : doc.lines) {
    if (line.kind == ScriptLine::Kind::Expect) {
      auto& last = out.back().second;
      last = last.with_target(line.expect->rule());
      continue;
    }
    if (line.kind != ScriptLine::Kind::Thm) continue;
    std::optional<Proof> p;
    switch (line.step) {
      case ScriptLine::Step::Rule:
        p = Proof::truism(line.source);
        break;
      case ScriptLine::Step::Subst: {
        Substitution sigma;
        for (const auto& [key, tmpl] : line.entries) sigma.add(key, tmpl);
        p = Proof::subst(lookup(line.source, line), std::move(sigma));
        break;
      }
      case ScriptLine::Step::Infer:
        p = Proof::infer(lookup(line.source, line), line.index - 1, lookup(line.minor, line));
        break;
    }
    index[line.name] = out.size();
    out.emplace_back(line.name, p->with_origin("thm " + line.name, line.span));
  }
  return out;
}

std::vector<std::pair<std::string, Theorem>> check_script(const Logic& logic, const ScriptDocument& doc) {
  ProofChecker checker(logic);
  std::vector<std::pair<std::string, Theorem>> out;
  for (const auto& [name, proof] : script_proofs(doc)) out.emplace_back(name, checker.check(proof));
  return out;
}

}  // namespace al
