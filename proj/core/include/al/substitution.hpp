#pragma once

// Capture-avoiding substitution of templates for variables.  Everything is
// done on the nameless forms, so capture cannot happen; names are only
// re-chosen when converting the result back.

#include <map>
#include <vector>

#include "al/terms.hpp"

namespace al {

/// Partial map (x, n) -> n-ary template.
class Substitution {
 public:
  Substitution() = default;

  /// Throws ArityMismatch if the template arity differs from key.arity and
  /// DuplicateKey if the key is already mapped.
  void add(const VarKey& key, const Template& tmpl);
  Substitution& with(const VarKey& key, const Template& tmpl) {
    add(key, tmpl);
    return *this;
  }

  bool empty() const { return named_.empty(); }
  std::size_t size() const { return named_.size(); }
  bool contains(const VarKey& key) const { return named_.contains(key); }
  const std::map<VarKey, Template>& entries() const { return named_; }
  const std::map<VarKey, CanonicalTemplate>& canonical() const { return canonical_; }

 private:
  std::map<VarKey, Template> named_;
  std::map<VarKey, CanonicalTemplate> canonical_;
};

CanonicalTerm apply(const Substitution& sigma, const CanonicalTerm& t);
CanonicalTemplate apply(const Substitution& sigma, const CanonicalTemplate& t);

Term apply_to_term(const Substitution& sigma, const Term& t);
/// Template binders are bound, so sigma never touches their occurrences.
Template apply_to_template(const Substitution& sigma, const Template& t);
/// Applies sigma to every premise and the conclusion; premise binders that no
/// longer occur are dropped and the result is re-canonicalized.
Rule apply_to_rule(const Substitution& sigma, const Rule& r);

/// kappa: (x, n) -> [y1 ... yn. x[y1, ..., yn]] for every key.
Substitution canonical_substitution(const VarSet& keys);

/// Checks every template of sigma against `sig`.
void check_substitution(const Signature& sig, const Substitution& sigma);

}  // namespace al
