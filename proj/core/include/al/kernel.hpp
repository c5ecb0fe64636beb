#pragma once

// The trusted proof checker.  A Theorem can only be produced by truism,
// by_subst and infer (and by the functions built from them); each one is
// sealed to the identity of the logic it was derived in.

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "al/substitution.hpp"
#include "al/terms.hpp"

namespace al {

struct NamedRule {
  std::string name;
  Rule rule;
};

/// A signature plus an ordered list of named inference rules.  Immutable;
/// copies share state.
class Logic {
 public:
  /// Throws MalformedRule, DuplicateRuleName or UnknownAbstraction.
  static Logic make(Signature sig, std::vector<NamedRule> rules);

  const Signature& signature() const;
  const std::vector<NamedRule>& rules() const;
  const NamedRule* find(std::string_view name) const;
  /// Stable digest of the signature and the rules.
  const std::string& id() const;

 private:
  struct Data;
  explicit Logic(std::shared_ptr<const Data> data) : data_(std::move(data)) {}
  std::shared_ptr<const Data> data_;
};

inline Logic mk_logic(Signature sig, std::vector<NamedRule> rules) {
  return Logic::make(std::move(sig), std::move(rules));
}

/// New logic with all base rules plus the given axioms.  Throws NameClash when
/// an abstraction or rule name is already taken and MalformedRule when one of
/// the added rules has premisses.
Logic axiomatic_extension(const Logic& base, const Signature& additions, const std::vector<NamedRule>& axioms);
Logic axiomatic_extension(const Logic& base, const Signature& additions,
                          const std::vector<std::pair<std::string, Term>>& axioms);

/// Every abstraction of `base` has the same shape in `ext`, every base rule
/// has an alpha-equivalent rule in `ext`, and every other rule of `ext` is an
/// axiom.
bool is_axiomatic_extension(const Logic& ext, const Logic& base);

class Theorem;

Theorem truism(const Logic& logic, std::string_view rule_name);
Theorem by_subst(const Theorem& thm, const Substitution& sigma);
/// Discharges premise `premise_index` (0-based, canonical order) of `major`
/// using `minor`, whose conclusion must match the premise body up to a
/// renaming of the premise binders.
Theorem infer(const Theorem& major, std::size_t premise_index, const Theorem& minor);

class Theorem {
 public:
  const Rule& rule() const { return rule_; }
  const Logic& logic() const { return logic_; }

 private:
  Theorem(Logic logic, Rule rule) : logic_(std::move(logic)), rule_(std::move(rule)) {}
  friend Theorem truism(const Logic&, std::string_view);
  friend Theorem by_subst(const Theorem&, const Substitution&);
  friend Theorem infer(const Theorem&, std::size_t, const Theorem&);

  Logic logic_;
  Rule rule_;
};

/// A proof tree.  Targets are optional; when present the checker verifies
/// them against the rule it computes.
class Proof {
 public:
  enum class Kind { Truism, Subst, Infer };

  static Proof truism(std::string rule_name);
  static Proof subst(Proof sub, Substitution sigma);
  /// `premise_index` is 0-based.
  static Proof infer(Proof major, std::size_t premise_index, Proof minor);

  Proof with_target(Rule target) const;
  /// Attaches a label and position used when reporting replay errors.
  Proof with_origin(std::string label, SourceSpan span) const;

  Kind kind() const;
  const std::string& rule_name() const;
  const Substitution& substitution() const;
  std::size_t premise_index() const;
  /// Sub-proof for Subst; major premise proof for Infer.
  const Proof& first() const;
  /// Minor premise proof for Infer.
  const Proof& second() const;
  const std::optional<Rule>& target() const;
  const std::string& label() const;
  const SourceSpan& span() const;
  const void* identity() const { return node_.get(); }

 private:
  struct Node;
  explicit Proof(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

/// Replays proof trees bottom-up, remembering every node it has checked so
/// that shared sub-proofs are replayed once.  Throws TargetMismatch when a
/// declared target differs from the computed rule.
class ProofChecker {
 public:
  explicit ProofChecker(Logic logic) : logic_(std::move(logic)) {}
  Theorem check(const Proof& proof);
  const Logic& logic() const { return logic_; }

 private:
  Theorem step(const Proof& proof);
  Logic logic_;
  std::map<const void*, Theorem> memo_;
  /// Keeps checked nodes alive so their addresses stay unique.
  std::vector<Proof> seen_;
};

Theorem check_proof(const Logic& logic, const Proof& proof);

/// Given a theorem ({}, forall x. x) of an extension of deduction logic with
/// equality, derives ({}, t).  Throws NotAnExtension if the logic lacks Modus
/// Ponens or Universal1 or the theorem has a different form.
Theorem explosion(const Logic& logic, const Theorem& forall_x_x, const Term& t);

}  // namespace al
