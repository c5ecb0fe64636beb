#include "al/kernel.hpp"

#include <cstdint>
#include <map>
#include <set>

#include "al/syntax.hpp"

namespace al {

struct Logic::Data {
  Signature sig;
  std::vector<NamedRule> rules;
  std::string id;
};

namespace {

std::string digest(const Signature& sig, const std::vector<NamedRule>& rules) {
  std::string bytes;
  for (const auto& [name, shape] : sig.abstractions()) {
    bytes += 'A' + name + '\0';
    for (const auto& p : shape.deps()) {
      bytes += '{';
      for (std::size_t q : p) bytes += std::to_string(q) + ',';
      bytes += '}';
    }
  }
  for (const auto& nr : rules) bytes += 'R' + nr.name + '\0' + nr.rule.encode();
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char ch : bytes) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  static const char* hex = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i, h >>= 4) out[static_cast<std::size_t>(i)] = hex[h & 0xf];
  return out;
}

}  // namespace

Logic Logic::make(Signature sig, std::vector<NamedRule> rules) {
  std::set<std::string, std::less<>> names;
  for (const auto& nr : rules) {
    if (nr.name.empty()) fail(Errc::MalformedRule, "rule without a name");
    if (!names.insert(nr.name).second) fail(Errc::DuplicateRuleName, "rule '" + nr.name + "' is defined twice");
    try {
      check_rule(sig, nr.rule);
    } catch (const Error& e) {
      if (e.code() == Errc::UnknownAbstraction) throw;
      throw Error(Errc::MalformedRule, "rule '" + nr.name + "': " + e.message());
    }
  }
  auto data = std::make_shared<Data>();
  data->id = digest(sig, rules);
  data->sig = std::move(sig);
  data->rules = std::move(rules);
  return Logic(std::move(data));
}

const Signature& Logic::signature() const { return data_->sig; }
const std::vector<NamedRule>& Logic::rules() const { return data_->rules; }
const std::string& Logic::id() const { return data_->id; }

const NamedRule* Logic::find(std::string_view name) const {
  for (const auto& nr : data_->rules)
    if (nr.name == name) return &nr;
  return nullptr;
}

Logic axiomatic_extension(const Logic& base, const Signature& additions, const std::vector<NamedRule>& axioms) {
  Signature sig = base.signature();
  for (const auto& [name, shape] : additions.abstractions()) {
    if (sig.contains(name)) fail(Errc::NameClash, "abstraction '" + name + "' already exists in the base logic");
    sig.add(name, shape);
  }
  std::vector<NamedRule> rules = base.rules();
  for (const auto& ax : axioms) {
    if (base.find(ax.name)) fail(Errc::NameClash, "rule '" + ax.name + "' already exists in the base logic");
    if (!ax.rule.is_axiom()) fail(Errc::MalformedRule, "'" + ax.name + "' has premisses; only axioms can be added");
    rules.push_back(ax);
  }
  return Logic::make(std::move(sig), std::move(rules));
}

Logic axiomatic_extension(const Logic& base, const Signature& additions,
                          const std::vector<std::pair<std::string, Term>>& axioms) {
  std::vector<NamedRule> rules;
  for (const auto& [name, term] : axioms) rules.push_back({name, Rule::axiom(term)});
  return axiomatic_extension(base, additions, rules);
}

bool is_axiomatic_extension(const Logic& ext, const Logic& base) {
  if (!ext.signature().includes(base.signature())) return false;
  std::set<std::string> base_rules;
  for (const auto& nr : base.rules()) base_rules.insert(nr.rule.encode());
  std::set<std::string> ext_rules;
  for (const auto& nr : ext.rules()) {
    std::string enc = nr.rule.encode();
    if (!nr.rule.is_axiom() && !base_rules.contains(enc)) return false;
    ext_rules.insert(enc);
  }
  for (const auto& enc : base_rules)
    if (!ext_rules.contains(enc)) return false;
  return true;
}

Theorem truism(const Logic& logic, std::string_view rule_name) {
  const NamedRule* nr = logic.find(rule_name);
  if (!nr) fail(Errc::UnknownRule, "no rule named '" + std::string(rule_name) + "'");
  return Theorem(logic, nr->rule);
}

Theorem by_subst(const Theorem& thm, const Substitution& sigma) {
  try {
    check_substitution(thm.logic().signature(), sigma);
  } catch (const Error& e) {
    throw Error(Errc::SignatureMismatch, e.message());
  }
  return Theorem(thm.logic(), apply_to_rule(sigma, thm.rule()));
}

namespace {

/// Matches a premise body (with `arity` outer binders) against a term, where
/// the binders may only be renamed to free value variables.
class PremiseMatcher {
 public:
  explicit PremiseMatcher(std::size_t arity) : slots_(arity) {}

  bool match(const CanonicalTerm& p, const CanonicalTerm& t, std::size_t depth) {
    using K = CanonicalTerm::Kind;
    if (p.kind() == K::Bound) {
      if (p.index() < depth) return t.kind() == K::Bound && t.index() == p.index();
      std::size_t slot = slots_.size() - 1 - (p.index() - depth);
      if (t.kind() != K::Free || !t.args().empty()) return false;
      if (slots_[slot]) return *slots_[slot] == t.name();
      if (!taken_.insert(t.name()).second) return false;
      slots_[slot] = t.name();
      return true;
    }
    if (p.kind() != t.kind() || p.name() != t.name() || p.args().size() != t.args().size()) return false;
    if (p.kind() == K::Free) {
      if (p.args().empty()) itself_.insert(p.name());
      for (std::size_t i = 0; i < p.args().size(); ++i)
        if (!match(p.args()[i], t.args()[i], depth)) return false;
      return true;
    }
    if (!(p.shape() == t.shape())) return false;
    for (std::size_t i = 0; i < p.args().size(); ++i)
      if (!match(p.args()[i], t.args()[i], depth + p.shape().deps()[i].size())) return false;
    return true;
  }

  /// A binder may not be renamed to a name that also occurs free in the body.
  bool consistent() const {
    for (const auto& s : slots_)
      if (s && itself_.contains(*s)) return false;
    return true;
  }

  const std::vector<std::optional<std::string>>& slots() const { return slots_; }

 private:
  std::vector<std::optional<std::string>> slots_;
  std::set<std::string> taken_;
  std::set<std::string> itself_;
};

bool occurs_free_value(const CanonicalTerm& t, const std::string& name) {
  if (t.kind() == CanonicalTerm::Kind::Bound) return false;
  if (t.kind() == CanonicalTerm::Kind::Free && t.args().empty() && t.name() == name) return true;
  for (const auto& a : t.args())
    if (occurs_free_value(a, name)) return true;
  return false;
}

CanonicalTerm abstract_names(const CanonicalTerm& t, std::size_t depth, std::size_t inner,
                             const std::map<std::string, std::size_t>& pos, std::size_t q) {
  switch (t.kind()) {
    case CanonicalTerm::Kind::Bound:
      return t;
    case CanonicalTerm::Kind::Free: {
      if (t.args().empty()) {
        auto it = pos.find(t.name());
        if (it != pos.end()) return CanonicalTerm::bound(depth + inner + (q - 1 - it->second));
        return t;
      }
      std::vector<CanonicalTerm> args;
      for (const auto& a : t.args()) args.push_back(abstract_names(a, depth, inner, pos, q));
      return CanonicalTerm::free_var(t.name(), std::move(args));
    }
    case CanonicalTerm::Kind::Abs:
      break;
  }
  std::vector<CanonicalTerm> args;
  for (std::size_t i = 0; i < t.args().size(); ++i)
    args.push_back(abstract_names(t.args()[i], depth + t.shape().deps()[i].size(), inner, pos, q));
  return CanonicalTerm::abs(t.name(), t.shape(), std::move(args), t.hints());
}

/// [x_a1 .. x_aq y1 .. yl. g] for the premise binder names x_a that occur free
/// in g.  The x_a sit outside g's own binders, so those keep their indices.
CanonicalTemplate prefix_binders(const CanonicalTemplate& g, const std::vector<std::string>& names) {
  std::vector<std::string> used;
  for (const auto& n : names)
    if (occurs_free_value(g.body, n)) used.push_back(n);
  if (used.empty()) return g;
  std::map<std::string, std::size_t> pos;
  for (std::size_t i = 0; i < used.size(); ++i) pos.emplace(used[i], i);
  std::vector<std::string> hints = used;
  hints.insert(hints.end(), g.hints.begin(), g.hints.end());
  return CanonicalTemplate{used.size() + g.arity, abstract_names(g.body, 0, g.arity, pos, used.size()),
                           std::move(hints)};
}

}  // namespace

Theorem infer(const Theorem& major, std::size_t premise_index, const Theorem& minor) {
  if (major.logic().id() != minor.logic().id())
    fail(Errc::LogicMismatch, "the theorems belong to different logics");
  const auto& premises = major.rule().premises();
  if (premise_index >= premises.size())
    fail(Errc::BadIndex, "premise " + std::to_string(premise_index + 1) + " requested but the rule has " +
                             std::to_string(premises.size()));
  const Premise& h = premises[premise_index];
  PremiseMatcher m(h.arity());
  if (!m.match(h.canonical().body, minor.rule().canonical_conclusion(), 0) || !m.consistent())
    fail(Errc::PremiseMismatch, "conclusion " + print_term(minor.rule().conclusion()) +
                                    " does not match premise " + print_template(h.named()));

  std::vector<std::string> names;
  for (const auto& s : m.slots())
    if (s) names.push_back(*s);

  std::vector<CanonicalTemplate> out;
  for (const auto& g : minor.rule().premises()) out.push_back(prefix_binders(g.canonical(), names));
  for (std::size_t i = 0; i < premises.size(); ++i)
    if (i != premise_index) out.push_back(premises[i].canonical());
  return Theorem(major.logic(), Rule::from_canonical(out, major.rule().canonical_conclusion()));
}

struct Proof::Node {
  Kind kind = Kind::Truism;
  std::string rule_name;
  Substitution sigma;
  std::size_t index = 0;
  std::vector<Proof> children;
  std::optional<Rule> target;
  std::string label;
  SourceSpan span;
};

Proof Proof::truism(std::string rule_name) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Truism;
  n->rule_name = std::move(rule_name);
  return Proof(std::move(n));
}

Proof Proof::subst(Proof sub, Substitution sigma) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Subst;
  n->sigma = std::move(sigma);
  n->children.push_back(std::move(sub));
  return Proof(std::move(n));
}

Proof Proof::infer(Proof major, std::size_t premise_index, Proof minor) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Infer;
  n->index = premise_index;
  n->children.push_back(std::move(major));
  n->children.push_back(std::move(minor));
  return Proof(std::move(n));
}

Proof Proof::with_target(Rule target) const {
  auto n = std::make_shared<Node>(*node_);
  n->target = std::move(target);
  return Proof(std::move(n));
}

Proof Proof::with_origin(std::string label, SourceSpan span) const {
  auto n = std::make_shared<Node>(*node_);
  n->label = std::move(label);
  n->span = std::move(span);
  return Proof(std::move(n));
}

Proof::Kind Proof::kind() const { return node_->kind; }
const std::string& Proof::rule_name() const { return node_->rule_name; }
const Substitution& Proof::substitution() const { return node_->sigma; }
std::size_t Proof::premise_index() const { return node_->index; }
const Proof& Proof::first() const { return node_->children.at(0); }
const Proof& Proof::second() const { return node_->children.at(1); }
const std::optional<Rule>& Proof::target() const { return node_->target; }
const std::string& Proof::label() const { return node_->label; }
const SourceSpan& Proof::span() const { return node_->span; }

namespace {

Term make_imp(const Signature& sig, Term a, Term b) { return Term::abs(sig, "imp", {}, {std::move(a), std::move(b)}); }

const NamedRule* find_alpha(const Logic& logic, const Rule& wanted) {
  for (const auto& nr : logic.rules())
    if (alpha_eq_rule(nr.rule, wanted)) return &nr;
  return nullptr;
}

std::size_t premise_position(const Rule& r, const Term& body) {
  std::string enc = canonicalize_premise(Template::of(body)).encoding();
  for (std::size_t i = 0; i < r.premises().size(); ++i)
    if (r.premises()[i].encoding() == enc) return i;
  fail(Errc::NotAnExtension, "unexpected premise layout");
}

}  // namespace

Theorem ProofChecker::check(const Proof& p) {
  if (auto it = memo_.find(p.identity()); it != memo_.end()) return it->second;
  try {
    Theorem thm = step(p);
    if (p.target() && !alpha_eq_rule(*p.target(), thm.rule())) {
      std::string who = p.label().empty() ? "" : p.label() + ": ";
      fail(Errc::TargetMismatch, who + "expected " + print_rule(*p.target()) + " but derived " + print_rule(thm.rule()));
    }
    memo_.emplace(p.identity(), thm);
    seen_.push_back(p);
    return thm;
  } catch (const Error& e) {
    if (p.span().known()) throw e.located(p.span());
    throw;
  }
}

Theorem ProofChecker::step(const Proof& p) {
  switch (p.kind()) {
    case Proof::Kind::Truism:
      return truism(logic_, p.rule_name());
    case Proof::Kind::Subst:
      return by_subst(check(p.first()), p.substitution());
    case Proof::Kind::Infer:
      break;
  }
  Theorem major = check(p.first());
  Theorem minor = check(p.second());
  return infer(major, p.premise_index(), minor);
}

Theorem check_proof(const Logic& logic, const Proof& proof) { return ProofChecker(logic).check(proof); }

Theorem explosion(const Logic& logic, const Theorem& forall_x_x, const Term& t) {
  const Signature& sig = logic.signature();
  if (!sig.contains("imp") || !sig.contains("forall"))
    fail(Errc::NotAnExtension, "the logic lacks implication or universal quantification");
  if (forall_x_x.logic().id() != logic.id()) fail(Errc::LogicMismatch, "the theorem belongs to a different logic");

  Term A = Term::var("A"), B = Term::var("B"), x = Term::var("x");
  Term all_x = Term::abs(sig, "forall", {"x"}, {x});
  if (!alpha_eq_rule(forall_x_x.rule(), Rule::axiom(all_x)))
    fail(Errc::NotAnExtension, "expected the theorem |- (forall x. x), got " + print_rule(forall_x_x.rule()));

  const NamedRule* mp = find_alpha(logic, Rule::make({Template::of(make_imp(sig, A, B)), Template::of(A)}, B));
  Term ax = Term::var("A", {x});
  const NamedRule* u1 = find_alpha(logic, Rule::axiom(make_imp(sig, Term::abs(sig, "forall", {"x"}, {ax}), ax)));
  if (!mp) fail(Errc::NotAnExtension, "the logic has no Modus Ponens rule");
  if (!u1) fail(Errc::NotAnExtension, "the logic has no rule (forall x. A[x]) => A[x]");

  // (forall x. x) => x
  Theorem step1 = by_subst(truism(logic, u1->name), Substitution().with({"A", 1}, Template::make({"x"}, x)));
  // premisses (forall x. x) => x and forall x. x, conclusion x
  Theorem mp_inst = by_subst(truism(logic, mp->name),
                             Substitution().with({"A", 0}, Template::of(all_x)).with({"B", 0}, Template::of(x)));
  Theorem step2 = infer(mp_inst, premise_position(mp_inst.rule(), make_imp(sig, all_x, x)), step1);
  Theorem step3 = infer(step2, premise_position(step2.rule(), all_x), forall_x_x);
  check_term(sig, t);
  return by_subst(step3, Substitution().with({"x", 0}, Template::of(t)));
}

}  // namespace al
