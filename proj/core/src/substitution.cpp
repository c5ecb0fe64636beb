#include "al/substitution.hpp"

#include <cassert>

namespace al {

void Substitution::add(const VarKey& key, const Template& tmpl) {
  if (tmpl.arity() != key.arity)
    fail(Errc::ArityMismatch, "variable " + to_string(key) + " needs a " + std::to_string(key.arity) +
                                  "-ary template, got " + std::to_string(tmpl.arity()) + " binder(s)");
  if (named_.contains(key)) fail(Errc::DuplicateKey, "variable " + to_string(key) + " substituted twice");
  Template checked = Template::make(tmpl.binders, tmpl.body);
  canonical_.emplace(key, to_canonical(checked));
  named_.emplace(key, std::move(checked));
}

namespace {

// Adds `by` to every index that escapes `cutoff` local binders.
CanonicalTerm shift(const CanonicalTerm& c, std::size_t by, std::size_t cutoff) {
  if (by == 0) return c;
  switch (c.kind()) {
    case CanonicalTerm::Kind::Bound:
      return c.index() >= cutoff ? CanonicalTerm::bound(c.index() + by) : c;
    case CanonicalTerm::Kind::Free: {
      if (c.args().empty()) return c;
      std::vector<CanonicalTerm> args;
      for (const auto& a : c.args()) args.push_back(shift(a, by, cutoff));
      return CanonicalTerm::free_var(c.name(), std::move(args));
    }
    case CanonicalTerm::Kind::Abs: break;
  }
  const auto& deps = c.shape().deps();
  std::vector<CanonicalTerm> args;
  for (std::size_t i = 0; i < c.args().size(); ++i) args.push_back(shift(c.args()[i], by, cutoff + deps[i].size()));
  return CanonicalTerm::abs(c.name(), c.shape(), std::move(args), c.hints());
}

// Replaces the template binders of `body` by `values`; values[j] belongs to
// binder j (0-based, binder order) and lives in the context of the
// occurrence being replaced, hence the shift under local binders.
CanonicalTerm instantiate(const CanonicalTerm& body, std::size_t depth, const std::vector<CanonicalTerm>& values) {
  const std::size_t arity = values.size();
  switch (body.kind()) {
    case CanonicalTerm::Kind::Bound: {
      if (body.index() < depth) return body;
      std::size_t outer = body.index() - depth;
      assert(outer < arity);
      return shift(values[arity - 1 - outer], depth, 0);
    }
    case CanonicalTerm::Kind::Free: {
      if (body.args().empty()) return body;
      std::vector<CanonicalTerm> args;
      for (const auto& a : body.args()) args.push_back(instantiate(a, depth, values));
      return CanonicalTerm::free_var(body.name(), std::move(args));
    }
    case CanonicalTerm::Kind::Abs: break;
  }
  const auto& deps = body.shape().deps();
  std::vector<CanonicalTerm> args;
  for (std::size_t i = 0; i < body.args().size(); ++i)
    args.push_back(instantiate(body.args()[i], depth + deps[i].size(), values));
  return CanonicalTerm::abs(body.name(), body.shape(), std::move(args), body.hints());
}

}  // namespace

CanonicalTerm apply(const Substitution& sigma, const CanonicalTerm& t) {
  switch (t.kind()) {
    case CanonicalTerm::Kind::Bound: return t;
    case CanonicalTerm::Kind::Free: {
      std::vector<CanonicalTerm> args;
      args.reserve(t.args().size());
      for (const auto& a : t.args()) args.push_back(apply(sigma, a));
      auto it = sigma.canonical().find(VarKey{t.name(), t.args().size()});
      if (it == sigma.canonical().end()) return CanonicalTerm::free_var(t.name(), std::move(args));
      // Template bodies are closed apart from their own binders, so they
      // need no shifting when placed under the binders of t.
      return instantiate(it->second.body, 0, args);
    }
    case CanonicalTerm::Kind::Abs: break;
  }
  std::vector<CanonicalTerm> args;
  args.reserve(t.args().size());
  for (const auto& a : t.args()) args.push_back(apply(sigma, a));
  return CanonicalTerm::abs(t.name(), t.shape(), std::move(args), t.hints());
}

CanonicalTemplate apply(const Substitution& sigma, const CanonicalTemplate& t) {
  return CanonicalTemplate{t.arity, apply(sigma, t.body), t.hints};
}

Term apply_to_term(const Substitution& sigma, const Term& t) {
  return from_canonical(apply(sigma, to_canonical(t)));
}

Template apply_to_template(const Substitution& sigma, const Template& t) {
  return from_canonical(apply(sigma, to_canonical(t)));
}

Rule apply_to_rule(const Substitution& sigma, const Rule& r) {
  std::vector<CanonicalTemplate> premises;
  premises.reserve(r.premises().size());
  for (const Premise& p : r.premises()) premises.push_back(apply(sigma, p.canonical()));
  return Rule::from_canonical(premises, apply(sigma, r.canonical_conclusion()));
}

Substitution canonical_substitution(const VarSet& keys) {
  Substitution kappa;
  for (const VarKey& key : keys) {
    std::vector<std::string> binders;
    std::vector<Term> args;
    for (std::size_t i = 1; i <= key.arity; ++i) {
      binders.push_back("y" + std::to_string(i));
      args.push_back(Term::var(binders.back()));
    }
    kappa.add(key, Template{binders, Term::var(key.name, std::move(args))});
  }
  return kappa;
}

void check_substitution(const Signature& sig, const Substitution& sigma) {
  for (const auto& [key, tmpl] : sigma.entries()) check_term(sig, tmpl.body);
}

}  // namespace al
