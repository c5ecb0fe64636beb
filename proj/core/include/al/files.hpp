#pragma once

// Line-oriented text formats for theories (.th), finite models (.model) and
// proof scripts (.proof).  Each document keeps comments and blank lines so
// that printing a parsed file reproduces it exactly when it is already in
// canonical form.
//
// Theory:
//   extends le.th
//   abstraction imp shape [{}, {}]
//   rule ModusPonens: premise A => B ; premise A |- B
//   rule Truth1: |- T
//
// Model:
//   abstraction imp shape [{}, {}]
//   carrier T F
//   truth T
//   op T builtin const T
//   op forall builtin forall-like
//   op imp table:
//     T T -> T
//     ...
//   op q table:               proper operators list argument tables in [..]
//     [T T] -> T
//     default F
//
// Proof script:
//   thm a := rule Implication1
//   thm b := subst a { B := A => A ; P/1 := [x. P[x]] }
//   thm c := infer b # 1 a     premise numbers are 1-based, canonical order
//   expect: premise A |- B

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "al/kernel.hpp"
#include "al/semantics.hpp"
#include "al/terms.hpp"

namespace al {

/// Reads a file by path; throws IoError.
using FileReader = std::function<std::string(const std::string& path)>;

FileReader filesystem_reader();
std::string read_file(const std::string& path);

/// A rule as written: premisses in file order, with their binder names.
struct RuleText {
  std::vector<Template> premises;
  Term conclusion;

  Rule rule() const { return Rule::make(premises, conclusion); }
};

std::string print_rule_text(const RuleText& r);
RuleText rule_text(const Rule& r);

struct TheoryLine {
  enum class Kind { Blank, Comment, Extends, Abstraction, Rule };
  Kind kind = Kind::Blank;
  /// Comment text (with '#') or the extended path.
  std::string text;
  std::string name;
  Shape shape;
  std::optional<RuleText> rule;
  SourceSpan span;
};

struct TheoryDocument {
  std::string file;
  std::vector<TheoryLine> lines;
};

struct LoadedTheory {
  TheoryDocument document;
  Logic logic;
};

/// Parses a theory and builds its logic.  `extends` paths are resolved
/// relative to the directory of `file` and read through `reader`; a theory
/// that extends another may only add axioms.
LoadedTheory parse_theory(std::string_view text, const std::string& file, const FileReader& reader);
LoadedTheory load_theory(const std::string& path, const FileReader& reader = filesystem_reader());
std::string print_theory(const TheoryDocument& doc);

struct ModelLine {
  enum class Kind { Blank, Comment, Abstraction, Carrier, Truth, OpConst, OpForall, OpTable, Row, Default };
  Kind kind = Kind::Blank;
  std::string text;
  /// Abstraction or operator name.
  std::string name;
  Shape shape;
  /// Carrier elements, the truth element, the constant, the optional false
  /// element of forall-like, a default, or a row result (last entry).
  std::vector<std::string> elements;
  /// Row arguments; a bracketed argument lists a whole table.
  std::vector<std::vector<std::string>> row_args;
  bool bracketed = false;
  SourceSpan span;
};

struct ModelDocument {
  std::string file;
  std::vector<ModelLine> lines;
};

ModelDocument parse_model_document(std::string_view text, const std::string& file);
/// Throws InvalidModel, InterpMissing or DuplicateName with positions.
Model build_model(const ModelDocument& doc);
Model load_model(const std::string& path, const FileReader& reader = filesystem_reader());
std::string print_model(const ModelDocument& doc);
/// Canonical document for a model: abstractions, carrier, truth, operators.
ModelDocument model_document(const Model& model);

struct ScriptLine {
  enum class Kind { Blank, Comment, Thm, Expect };
  enum class Step { Rule, Subst, Infer };
  Kind kind = Kind::Blank;
  std::string text;
  std::string name;
  Step step = Step::Rule;
  /// Rule name for Rule, source theorem for Subst, major theorem for Infer.
  std::string source;
  std::vector<std::pair<VarKey, Template>> entries;
  std::size_t index = 0;  // 1-based
  std::string minor;
  std::optional<RuleText> expect;
  SourceSpan span;
};

struct ScriptDocument {
  std::string file;
  std::vector<ScriptLine> lines;
};

ScriptDocument parse_script(std::string_view text, const std::string& file, const Signature& sig);
std::string print_script(const ScriptDocument& doc);

/// Proof trees for every `thm` line, in file order.  Each carries its
/// `expect` target and the position of its line.  Throws
/// UnknownTheoremName for references to undefined theorems.
std::vector<std::pair<std::string, Proof>> script_proofs(const ScriptDocument& doc);

/// Replays every theorem of the script.
std::vector<std::pair<std::string, Theorem>> check_script(const Logic& logic, const ScriptDocument& doc);

}  // namespace al
