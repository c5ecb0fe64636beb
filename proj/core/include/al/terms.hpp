#pragma once

// Signatures, terms, templates and rules, together with their nameless
// (de Bruijn) canonical forms.  Alpha-equivalence is identity of canonical
// forms; the canonical byte encoding is what rules and logics are hashed by.

#include <compare>
#include <cstddef>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "al/error.hpp"

namespace al {

/// A variable is identified by its name *and* the arity it occurs with:
/// in `x[x]` the head is (x, 1) and the argument is the distinct (x, 0).
struct VarKey {
  std::string name;
  std::size_t arity = 0;

  friend auto operator<=>(const VarKey&, const VarKey&) = default;
};

using VarSet = std::set<VarKey>;

std::string to_string(const VarKey& key);

/// Abstraction shape [p_1, ..., p_n]: argument i binds the binder slots in
/// p_i (1-based, ascending).  The union of the p_i is exactly {1..valence}.
class Shape {
 public:
  Shape() = default;  // the value shape []

  const std::vector<std::vector<std::size_t>>& deps() const { return deps_; }
  std::size_t arity() const { return deps_.size(); }
  std::size_t valence() const { return valence_; }
  /// Operator shape [|p_1|, ..., |p_n|].
  std::vector<std::size_t> operator_shape() const;

  friend bool operator==(const Shape&, const Shape&) = default;

 private:
  friend Shape validate_shape(const std::vector<std::vector<long>>& deps);
  std::vector<std::vector<std::size_t>> deps_;
  std::size_t valence_ = 0;
};

/// Validates a dependency list and computes arity and valence.  Indices
/// inside one set may be given in any order; duplicates collapse.
Shape validate_shape(const std::vector<std::vector<long>>& deps);
/// As above, but also checks the union against a declared valence.
Shape validate_shape(const std::vector<std::vector<long>>& deps, std::size_t declared_valence);

class Signature {
 public:
  using Map = std::map<std::string, Shape, std::less<>>;

  Signature() = default;
  Signature(std::initializer_list<std::pair<const std::string, Shape>> entries);

  /// Throws DuplicateAbstraction if the name is already present.
  void add(const std::string& name, const Shape& shape);
  const Shape* find(std::string_view name) const;
  bool contains(std::string_view name) const { return find(name) != nullptr; }
  const Map& abstractions() const { return abstractions_; }
  std::size_t size() const { return abstractions_.size(); }
  /// True if every abstraction of `other` is present here with the same shape.
  bool includes(const Signature& other) const;

  friend bool operator==(const Signature&, const Signature&) = default;

 private:
  Map abstractions_;
};

/// A named term: either a variable application x[t1, ..., tn] or an
/// abstraction application (a x1 ... xm. t1 ... tn).  Immutable and cheap to
/// copy.  Abstraction applications are checked against the signature when
/// constructed and remember their shape.
class Term {
 public:
  enum class Kind { Var, Abs };

  static Term var(std::string name, std::vector<Term> args = {});
  static Term abs(const Signature& sig, std::string_view name, std::vector<std::string> binders,
                  std::vector<Term> args);

  Kind kind() const;
  bool is_var() const { return kind() == Kind::Var; }
  bool is_abs() const { return kind() == Kind::Abs; }
  /// Variable name or abstraction name.
  const std::string& name() const;
  const std::vector<std::string>& binders() const;
  const std::vector<Term>& args() const;
  /// Shape of the abstraction; the value shape for variable applications.
  const Shape& shape() const;
  /// (name, argument count); only meaningful for variable applications.
  VarKey var_key() const;

 private:
  struct Node;
  friend class TermFactory;
  explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

/// [x1 ... xn. body].  A 0-ary template is its body.
struct Template {
  std::vector<std::string> binders;
  Term body;

  /// Throws DuplicateBinder if the binder names repeat.
  static Template make(std::vector<std::string> binders, Term body);
  static Template of(Term body) { return Template{{}, std::move(body)}; }
  std::size_t arity() const { return binders.size(); }
};

VarSet free_variables(const Term& t);
VarSet free_variables(const Template& t);

/// Re-validates every abstraction application of `t` against `sig`.
void check_term(const Signature& sig, const Term& t);

/// Nameless form.  Bound arity-0 occurrences become indices counted from the
/// innermost binder; free occurrences keep their VarKey.  For an abstraction
/// argument with p_i = {q1 < ... < qk} the binders x_q1 .. x_qk are entered
/// in that order, so x_qk has index 0 inside the argument.  Binder names
/// survive only as hints for printing and do not take part in comparison.
class CanonicalTerm {
 public:
  enum class Kind { Bound, Free, Abs };

  static CanonicalTerm bound(std::size_t index);
  static CanonicalTerm free_var(std::string name, std::vector<CanonicalTerm> args = {});
  static CanonicalTerm abs(std::string name, Shape shape, std::vector<CanonicalTerm> args,
                           std::vector<std::string> hints);

  Kind kind() const;
  std::size_t index() const;
  const std::string& name() const;
  const std::vector<CanonicalTerm>& args() const;
  const Shape& shape() const;
  const std::vector<std::string>& hints() const;

  /// Stable byte encoding; equal iff the canonical forms are equal.
  std::string encode() const;
  void encode_to(std::string& out) const;

  friend bool operator==(const CanonicalTerm& a, const CanonicalTerm& b);

 private:
  struct Node;
  explicit CanonicalTerm(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

/// A template in nameless form: `arity` binders, the last of which has index
/// 0 at the top of `body`.
struct CanonicalTemplate {
  std::size_t arity = 0;
  CanonicalTerm body;
  std::vector<std::string> hints;

  std::string encode() const;
  friend bool operator==(const CanonicalTemplate& a, const CanonicalTemplate& b) {
    return a.arity == b.arity && a.body == b.body;
  }
};

CanonicalTerm to_canonical(const Term& t);
CanonicalTemplate to_canonical(const Template& t);
/// Names bound variables after their hints, adding the smallest numeric
/// suffix that avoids capturing anything free in scope.
Term from_canonical(const CanonicalTerm& t);
Template from_canonical(const CanonicalTemplate& t);

VarSet free_variables(const CanonicalTerm& t);
VarSet free_variables(const CanonicalTemplate& t);

bool alpha_eq_term(const Term& s, const Term& t);
bool alpha_eq_template(const Template& s, const Template& t);

/// Picks a name based on `base` that is not in `avoid`: `base` itself if
/// possible, otherwise its digit-stripped stem plus the smallest suffix.
std::string fresh_name(const std::string& base, const std::set<std::string>& avoid);

/// A template all of whose binders occur free (arity 0) in its body, with the
/// binders put in canonical order: by first occurrence in the body.
class Premise {
 public:
  const CanonicalTemplate& canonical() const { return canonical_; }
  const Template& named() const { return named_; }
  std::size_t arity() const { return canonical_.arity; }
  const std::string& encoding() const { return encoding_; }

  friend bool operator==(const Premise& a, const Premise& b) { return a.encoding_ == b.encoding_; }

 private:
  friend Premise canonicalize_premise(const CanonicalTemplate&, bool);
  Premise(CanonicalTemplate canonical, Template named, std::string encoding)
      : canonical_(std::move(canonical)), named_(std::move(named)), encoding_(std::move(encoding)) {}
  CanonicalTemplate canonical_;
  Template named_;
  std::string encoding_;
};

/// Throws UnusedBinder if some binder does not occur free in the body.
Premise canonicalize_premise(const Template& t);
/// With `drop_unused`, binders absent from the body are removed instead.
Premise canonicalize_premise(const CanonicalTemplate& t, bool drop_unused = false);

/// (P, c): a finite set of premisses and a conclusion.  Premisses are kept
/// sorted by encoding and deduplicated, so equal rules encode identically.
class Rule {
 public:
  static Rule make(const std::vector<Template>& premises, const Term& conclusion);
  static Rule axiom(const Term& conclusion) { return make({}, conclusion); }
  /// Builds from nameless parts; unused premise binders are dropped.
  static Rule from_canonical(const std::vector<CanonicalTemplate>& premises,
                             const CanonicalTerm& conclusion);

  const std::vector<Premise>& premises() const { return premises_; }
  const Term& conclusion() const { return conclusion_; }
  const CanonicalTerm& canonical_conclusion() const { return canonical_conclusion_; }
  bool is_axiom() const { return premises_.empty(); }
  std::string encode() const;

 private:
  Rule(std::vector<Premise> premises, CanonicalTerm conclusion);
  std::vector<Premise> premises_;
  CanonicalTerm canonical_conclusion_;
  Term conclusion_;
};

VarSet free_variables(const Rule& r);
bool alpha_eq_rule(const Rule& r, const Rule& s);
/// Checks every abstraction in the rule against `sig`.
void check_rule(const Signature& sig, const Rule& r);

}  // namespace al
