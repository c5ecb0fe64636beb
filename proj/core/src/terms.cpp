#include "al/terms.hpp"

#include <algorithm>
#include <cassert>
#include <optional>
#include <utility>

namespace al {

std::string to_string(const VarKey& key) {
  return key.arity == 0 ? key.name : key.name + "/" + std::to_string(key.arity);
}

// ---------------------------------------------------------------------------
// Shapes and signatures

std::vector<std::size_t> Shape::operator_shape() const {
  std::vector<std::size_t> out;
  out.reserve(deps_.size());
  for (const auto& p : deps_) out.push_back(p.size());
  return out;
}

Shape validate_shape(const std::vector<std::vector<long>>& deps) {
  Shape shape;
  std::size_t valence = 0;
  for (const auto& p : deps) {
    std::vector<std::size_t> set;
    for (long q : p) {
      if (q <= 0) fail(Errc::NonPositiveIndex, "shape index " + std::to_string(q) + " is not positive");
      set.push_back(static_cast<std::size_t>(q));
    }
    std::sort(set.begin(), set.end());
    set.erase(std::unique(set.begin(), set.end()), set.end());
    if (!set.empty()) valence = std::max(valence, set.back());
    shape.deps_.push_back(std::move(set));
  }
  std::vector<bool> covered(valence + 1, false);
  for (const auto& p : shape.deps_)
    for (std::size_t q : p) covered[q] = true;
  for (std::size_t j = 1; j <= valence; ++j)
    if (!covered[j])
      fail(Errc::CoverageGap, "binder slot " + std::to_string(j) + " is bound by no argument");
  shape.valence_ = valence;
  return shape;
}

Shape validate_shape(const std::vector<std::vector<long>>& deps, std::size_t declared_valence) {
  Shape shape = validate_shape(deps);
  if (shape.valence() == declared_valence) return shape;
  if (shape.valence() == 0)
    fail(Errc::EmptyUnionMismatch, "declared valence " + std::to_string(declared_valence) +
                                       " but no argument binds anything");
  if (shape.valence() < declared_valence)
    fail(Errc::CoverageGap, "binder slots above " + std::to_string(shape.valence()) +
                                " are bound by no argument");
  fail(Errc::CoverageGap, "binder slot " + std::to_string(shape.valence()) + " exceeds declared valence " +
                              std::to_string(declared_valence));
}

Signature::Signature(std::initializer_list<std::pair<const std::string, Shape>> entries) {
  for (const auto& [name, shape] : entries) add(name, shape);
}

void Signature::add(const std::string& name, const Shape& shape) {
  if (!abstractions_.emplace(name, shape).second)
    fail(Errc::DuplicateAbstraction, "abstraction '" + name + "' declared twice");
}

const Shape* Signature::find(std::string_view name) const {
  auto it = abstractions_.find(name);
  return it == abstractions_.end() ? nullptr : &it->second;
}

bool Signature::includes(const Signature& other) const {
  for (const auto& [name, shape] : other.abstractions_) {
    const Shape* mine = find(name);
    if (mine == nullptr || !(*mine == shape)) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Named terms

struct Term::Node {
  Kind kind;
  std::string name;
  std::vector<std::string> binders;
  std::vector<Term> args;
  Shape shape;
};

class TermFactory {
 public:
  static Term make(Term::Kind kind, std::string name, std::vector<std::string> binders, std::vector<Term> args,
                   Shape shape) {
    return Term(std::make_shared<const Term::Node>(
        Term::Node{kind, std::move(name), std::move(binders), std::move(args), std::move(shape)}));
  }
};

Term Term::var(std::string name, std::vector<Term> args) {
  return TermFactory::make(Kind::Var, std::move(name), {}, std::move(args), Shape{});
}

Term Term::abs(const Signature& sig, std::string_view name, std::vector<std::string> binders,
               std::vector<Term> args) {
  const Shape* shape = sig.find(name);
  if (shape == nullptr) fail(Errc::UnknownAbstraction, "unknown abstraction '" + std::string(name) + "'");
  if (binders.size() != shape->valence())
    fail(Errc::ArityError, "'" + std::string(name) + "' binds " + std::to_string(shape->valence()) +
                               " variable(s), got " + std::to_string(binders.size()));
  if (args.size() != shape->arity())
    fail(Errc::ArityError, "'" + std::string(name) + "' takes " + std::to_string(shape->arity()) +
                               " argument(s), got " + std::to_string(args.size()));
  for (std::size_t i = 0; i < binders.size(); ++i)
    for (std::size_t j = i + 1; j < binders.size(); ++j)
      if (binders[i] == binders[j])
        fail(Errc::DuplicateBinder, "binder '" + binders[i] + "' repeated in '" + std::string(name) + "'");
  return TermFactory::make(Kind::Abs, std::string(name), std::move(binders), std::move(args), *shape);
}

Term::Kind Term::kind() const { return node_->kind; }
const std::string& Term::name() const { return node_->name; }
const std::vector<std::string>& Term::binders() const { return node_->binders; }
const std::vector<Term>& Term::args() const { return node_->args; }
const Shape& Term::shape() const { return node_->shape; }
VarKey Term::var_key() const { return VarKey{node_->name, node_->args.size()}; }

Template Template::make(std::vector<std::string> binders, Term body) {
  for (std::size_t i = 0; i < binders.size(); ++i)
    for (std::size_t j = i + 1; j < binders.size(); ++j)
      if (binders[i] == binders[j]) fail(Errc::DuplicateBinder, "template binder '" + binders[i] + "' repeated");
  return Template{std::move(binders), std::move(body)};
}

namespace {

void collect_free(const Term& t, std::vector<std::string>& bound, VarSet& out) {
  if (t.is_var()) {
    if (t.args().empty()) {
      if (std::find(bound.begin(), bound.end(), t.name()) == bound.end()) out.insert(VarKey{t.name(), 0});
      return;
    }
    out.insert(t.var_key());
    for (const Term& a : t.args()) collect_free(a, bound, out);
    return;
  }
  const auto& deps = t.shape().deps();
  for (std::size_t i = 0; i < t.args().size(); ++i) {
    for (std::size_t q : deps[i]) bound.push_back(t.binders()[q - 1]);
    collect_free(t.args()[i], bound, out);
    bound.resize(bound.size() - deps[i].size());
  }
}

}  // namespace

VarSet free_variables(const Term& t) {
  VarSet out;
  std::vector<std::string> bound;
  collect_free(t, bound, out);
  return out;
}

VarSet free_variables(const Template& t) {
  VarSet out;
  std::vector<std::string> bound = t.binders;
  collect_free(t.body, bound, out);
  return out;
}

void check_term(const Signature& sig, const Term& t) {
  if (t.is_abs()) {
    const Shape* shape = sig.find(t.name());
    if (shape == nullptr) fail(Errc::UnknownAbstraction, "unknown abstraction '" + t.name() + "'");
    if (!(*shape == t.shape()))
      fail(Errc::SignatureMismatch, "abstraction '" + t.name() + "' has a different shape in this signature");
  }
  for (const Term& a : t.args()) check_term(sig, a);
}

// ---------------------------------------------------------------------------
// Canonical terms

struct CanonicalTerm::Node {
  Kind kind;
  std::size_t index = 0;
  std::string name;
  std::vector<CanonicalTerm> args;
  Shape shape;
  std::vector<std::string> hints;
};

CanonicalTerm CanonicalTerm::bound(std::size_t index) {
  return CanonicalTerm(std::make_shared<const Node>(Node{Kind::Bound, index, {}, {}, {}, {}}));
}

CanonicalTerm CanonicalTerm::free_var(std::string name, std::vector<CanonicalTerm> args) {
  return CanonicalTerm(std::make_shared<const Node>(Node{Kind::Free, 0, std::move(name), std::move(args), {}, {}}));
}

CanonicalTerm CanonicalTerm::abs(std::string name, Shape shape, std::vector<CanonicalTerm> args,
                                 std::vector<std::string> hints) {
  assert(args.size() == shape.arity());
  return CanonicalTerm(std::make_shared<const Node>(
      Node{Kind::Abs, 0, std::move(name), std::move(args), std::move(shape), std::move(hints)}));
}

CanonicalTerm::Kind CanonicalTerm::kind() const { return node_->kind; }
std::size_t CanonicalTerm::index() const { return node_->index; }
const std::string& CanonicalTerm::name() const { return node_->name; }
const std::vector<CanonicalTerm>& CanonicalTerm::args() const { return node_->args; }
const Shape& CanonicalTerm::shape() const { return node_->shape; }
const std::vector<std::string>& CanonicalTerm::hints() const { return node_->hints; }

namespace {

void put_varint(std::string& out, std::size_t v) {
  while (v >= 0x80) {
    out.push_back(static_cast<char>((v & 0x7f) | 0x80));
    v >>= 7;
  }
  out.push_back(static_cast<char>(v));
}

void put_string(std::string& out, const std::string& s) {
  put_varint(out, s.size());
  out += s;
}

}  // namespace

void CanonicalTerm::encode_to(std::string& out) const {
  switch (node_->kind) {
    case Kind::Bound:
      out.push_back('b');
      put_varint(out, node_->index);
      return;
    case Kind::Free:
      out.push_back('f');
      put_string(out, node_->name);
      put_varint(out, node_->args.size());
      break;
    case Kind::Abs:
      out.push_back('a');
      put_string(out, node_->name);
      put_varint(out, node_->shape.valence());
      put_varint(out, node_->args.size());
      for (const auto& p : node_->shape.deps()) {
        put_varint(out, p.size());
        for (std::size_t q : p) put_varint(out, q);
      }
      break;
  }
  for (const CanonicalTerm& a : node_->args) a.encode_to(out);
}

std::string CanonicalTerm::encode() const {
  std::string out;
  encode_to(out);
  return out;
}

bool operator==(const CanonicalTerm& a, const CanonicalTerm& b) {
  if (a.node_ == b.node_) return true;
  const auto& x = *a.node_;
  const auto& y = *b.node_;
  if (x.kind != y.kind) return false;
  switch (x.kind) {
    case CanonicalTerm::Kind::Bound: return x.index == y.index;
    case CanonicalTerm::Kind::Free:
      if (x.name != y.name) return false;
      break;
    case CanonicalTerm::Kind::Abs:
      if (x.name != y.name || !(x.shape == y.shape)) return false;
      break;
  }
  if (x.args.size() != y.args.size()) return false;
  for (std::size_t i = 0; i < x.args.size(); ++i)
    if (!(x.args[i] == y.args[i])) return false;
  return true;
}

std::string CanonicalTemplate::encode() const {
  std::string out;
  out.push_back('t');
  put_varint(out, arity);
  body.encode_to(out);
  return out;
}

namespace {

CanonicalTerm canon(const Term& t, std::vector<std::string>& ctx) {
  if (t.is_var()) {
    if (t.args().empty()) {
      for (std::size_t k = ctx.size(); k-- > 0;)
        if (ctx[k] == t.name()) return CanonicalTerm::bound(ctx.size() - 1 - k);
      return CanonicalTerm::free_var(t.name());
    }
    std::vector<CanonicalTerm> args;
    args.reserve(t.args().size());
    for (const Term& a : t.args()) args.push_back(canon(a, ctx));
    return CanonicalTerm::free_var(t.name(), std::move(args));
  }
  const auto& deps = t.shape().deps();
  std::vector<CanonicalTerm> args;
  args.reserve(t.args().size());
  for (std::size_t i = 0; i < t.args().size(); ++i) {
    for (std::size_t q : deps[i]) ctx.push_back(t.binders()[q - 1]);
    args.push_back(canon(t.args()[i], ctx));
    ctx.resize(ctx.size() - deps[i].size());
  }
  return CanonicalTerm::abs(t.name(), t.shape(), std::move(args), t.binders());
}

// Names that occurrences inside `c` (entered under `depth` local binders)
// refer to outside of it: arity-0 free variables and enclosing binders.
void escaping_names(const CanonicalTerm& c, std::size_t depth, const std::vector<std::string>& ctx,
                    std::set<std::string>& out) {
  switch (c.kind()) {
    case CanonicalTerm::Kind::Bound:
      if (c.index() >= depth) {
        std::size_t outer = c.index() - depth;
        assert(outer < ctx.size());
        out.insert(ctx[ctx.size() - 1 - outer]);
      }
      return;
    case CanonicalTerm::Kind::Free:
      if (c.args().empty()) out.insert(c.name());
      for (const auto& a : c.args()) escaping_names(a, depth, ctx, out);
      return;
    case CanonicalTerm::Kind::Abs: {
      const auto& deps = c.shape().deps();
      for (std::size_t i = 0; i < c.args().size(); ++i) escaping_names(c.args()[i], depth + deps[i].size(), ctx, out);
      return;
    }
  }
}

std::string hint_or_default(const std::vector<std::string>& hints, std::size_t i) {
  if (i < hints.size() && !hints[i].empty()) return hints[i];
  return "x";
}

Term uncanon(const CanonicalTerm& c, std::vector<std::string>& ctx) {
  switch (c.kind()) {
    case CanonicalTerm::Kind::Bound:
      assert(c.index() < ctx.size());
      return Term::var(ctx[ctx.size() - 1 - c.index()]);
    case CanonicalTerm::Kind::Free: {
      std::vector<Term> args;
      args.reserve(c.args().size());
      for (const auto& a : c.args()) args.push_back(uncanon(a, ctx));
      return Term::var(c.name(), std::move(args));
    }
    case CanonicalTerm::Kind::Abs: break;
  }
  const auto& deps = c.shape().deps();
  std::vector<std::set<std::string>> escapes(c.args().size());
  for (std::size_t i = 0; i < c.args().size(); ++i) escaping_names(c.args()[i], deps[i].size(), ctx, escapes[i]);

  std::vector<std::string> names(c.shape().valence());
  std::set<std::string> chosen;
  for (std::size_t j = 1; j <= names.size(); ++j) {
    std::set<std::string> avoid = chosen;
    for (std::size_t i = 0; i < deps.size(); ++i)
      if (std::binary_search(deps[i].begin(), deps[i].end(), j)) avoid.insert(escapes[i].begin(), escapes[i].end());
    names[j - 1] = fresh_name(hint_or_default(c.hints(), j - 1), avoid);
    chosen.insert(names[j - 1]);
  }

  std::vector<Term> args;
  args.reserve(c.args().size());
  for (std::size_t i = 0; i < c.args().size(); ++i) {
    for (std::size_t q : deps[i]) ctx.push_back(names[q - 1]);
    args.push_back(uncanon(c.args()[i], ctx));
    ctx.resize(ctx.size() - deps[i].size());
  }
  return TermFactory::make(Term::Kind::Abs, c.name(), std::move(names), std::move(args), c.shape());
}

void collect_free(const CanonicalTerm& c, VarSet& out) {
  if (c.kind() == CanonicalTerm::Kind::Free) out.insert(VarKey{c.name(), c.args().size()});
  for (const auto& a : c.args()) collect_free(a, out);
}

}  // namespace

CanonicalTerm to_canonical(const Term& t) {
  std::vector<std::string> ctx;
  return canon(t, ctx);
}

CanonicalTemplate to_canonical(const Template& t) {
  std::vector<std::string> ctx = t.binders;
  return CanonicalTemplate{t.binders.size(), canon(t.body, ctx), t.binders};
}

Term from_canonical(const CanonicalTerm& t) {
  std::vector<std::string> ctx;
  return uncanon(t, ctx);
}

Template from_canonical(const CanonicalTemplate& t) {
  std::set<std::string> escapes;
  escaping_names(t.body, t.arity, {}, escapes);
  std::vector<std::string> names;
  std::set<std::string> avoid = escapes;
  for (std::size_t j = 0; j < t.arity; ++j) {
    names.push_back(fresh_name(hint_or_default(t.hints, j), avoid));
    avoid.insert(names.back());
  }
  std::vector<std::string> ctx = names;
  return Template{std::move(names), uncanon(t.body, ctx)};
}

VarSet free_variables(const CanonicalTerm& t) {
  VarSet out;
  collect_free(t, out);
  return out;
}

VarSet free_variables(const CanonicalTemplate& t) { return free_variables(t.body); }

bool alpha_eq_term(const Term& s, const Term& t) { return to_canonical(s) == to_canonical(t); }

bool alpha_eq_template(const Template& s, const Template& t) { return to_canonical(s) == to_canonical(t); }

std::string fresh_name(const std::string& base, const std::set<std::string>& avoid) {
  if (!avoid.contains(base)) return base;
  std::string stem = base;
  while (!stem.empty() && stem.back() >= '0' && stem.back() <= '9') stem.pop_back();
  if (stem.empty()) stem = "x";
  for (std::size_t n = 1;; ++n) {
    std::string candidate = stem + std::to_string(n);
    if (!avoid.contains(candidate)) return candidate;
  }
}

// ---------------------------------------------------------------------------
// Premisses and rules

namespace {

// Template binder slot (0-based, in binder order) referenced by a bound index
// at local depth `depth`, if the index escapes the local binders.
std::optional<std::size_t> template_slot(std::size_t index, std::size_t depth, std::size_t arity) {
  if (index < depth) return std::nullopt;
  std::size_t outer = index - depth;
  assert(outer < arity);
  return arity - 1 - outer;
}

void first_occurrences(const CanonicalTerm& c, std::size_t depth, std::size_t arity, std::vector<std::size_t>& order,
                       std::vector<bool>& seen) {
  switch (c.kind()) {
    case CanonicalTerm::Kind::Bound:
      if (auto slot = template_slot(c.index(), depth, arity); slot && !seen[*slot]) {
        seen[*slot] = true;
        order.push_back(*slot);
      }
      return;
    case CanonicalTerm::Kind::Free:
      for (const auto& a : c.args()) first_occurrences(a, depth, arity, order, seen);
      return;
    case CanonicalTerm::Kind::Abs: {
      const auto& deps = c.shape().deps();
      for (std::size_t i = 0; i < c.args().size(); ++i)
        first_occurrences(c.args()[i], depth + deps[i].size(), arity, order, seen);
      return;
    }
  }
}

CanonicalTerm reindex(const CanonicalTerm& c, std::size_t depth, std::size_t arity,
                      const std::vector<std::size_t>& position, std::size_t new_arity) {
  switch (c.kind()) {
    case CanonicalTerm::Kind::Bound:
      if (auto slot = template_slot(c.index(), depth, arity))
        return CanonicalTerm::bound(depth + (new_arity - 1 - position[*slot]));
      return c;
    case CanonicalTerm::Kind::Free: {
      if (c.args().empty()) return c;
      std::vector<CanonicalTerm> args;
      for (const auto& a : c.args()) args.push_back(reindex(a, depth, arity, position, new_arity));
      return CanonicalTerm::free_var(c.name(), std::move(args));
    }
    case CanonicalTerm::Kind::Abs: break;
  }
  const auto& deps = c.shape().deps();
  std::vector<CanonicalTerm> args;
  for (std::size_t i = 0; i < c.args().size(); ++i)
    args.push_back(reindex(c.args()[i], depth + deps[i].size(), arity, position, new_arity));
  return CanonicalTerm::abs(c.name(), c.shape(), std::move(args), c.hints());
}

}  // namespace

Premise canonicalize_premise(const CanonicalTemplate& t, bool drop_unused) {
  std::vector<std::size_t> order;
  std::vector<bool> seen(t.arity, false);
  first_occurrences(t.body, 0, t.arity, order, seen);
  if (order.size() < t.arity && !drop_unused) {
    std::size_t unused = 0;
    while (seen[unused]) ++unused;
    fail(Errc::UnusedBinder, "premise binder '" + hint_or_default(t.hints, unused) + "' does not occur in the body");
  }
  std::vector<std::size_t> position(t.arity, 0);
  std::vector<std::string> hints;
  for (std::size_t p = 0; p < order.size(); ++p) {
    position[order[p]] = p;
    hints.push_back(hint_or_default(t.hints, order[p]));
  }
  CanonicalTemplate canonical{order.size(), reindex(t.body, 0, t.arity, position, order.size()), std::move(hints)};
  Template named = from_canonical(canonical);
  std::string encoding = canonical.encode();
  return Premise(std::move(canonical), std::move(named), std::move(encoding));
}

Premise canonicalize_premise(const Template& t) { return canonicalize_premise(to_canonical(t), false); }

namespace {

std::vector<Premise> sorted_unique(std::vector<Premise> premises) {
  std::sort(premises.begin(), premises.end(),
            [](const Premise& a, const Premise& b) { return a.encoding() < b.encoding(); });
  premises.erase(std::unique(premises.begin(), premises.end()), premises.end());
  return premises;
}

}  // namespace

Rule::Rule(std::vector<Premise> premises, CanonicalTerm conclusion)
    : premises_(sorted_unique(std::move(premises))),
      canonical_conclusion_(std::move(conclusion)),
      conclusion_(al::from_canonical(canonical_conclusion_)) {}

Rule Rule::make(const std::vector<Template>& premises, const Term& conclusion) {
  std::vector<Premise> canonical;
  canonical.reserve(premises.size());
  for (const Template& p : premises) canonical.push_back(canonicalize_premise(p));
  return Rule(std::move(canonical), to_canonical(conclusion));
}

Rule Rule::from_canonical(const std::vector<CanonicalTemplate>& premises, const CanonicalTerm& conclusion) {
  std::vector<Premise> canonical;
  canonical.reserve(premises.size());
  for (const auto& p : premises) canonical.push_back(canonicalize_premise(p, true));
  return Rule(std::move(canonical), conclusion);
}

std::string Rule::encode() const {
  std::string out;
  out.push_back('r');
  put_varint(out, premises_.size());
  for (const Premise& p : premises_) out += p.encoding();
  canonical_conclusion_.encode_to(out);
  return out;
}

VarSet free_variables(const Rule& r) {
  VarSet out = free_variables(r.canonical_conclusion());
  for (const Premise& p : r.premises()) {
    VarSet fv = free_variables(p.canonical());
    out.insert(fv.begin(), fv.end());
  }
  return out;
}

bool alpha_eq_rule(const Rule& r, const Rule& s) {
  if (!(r.canonical_conclusion() == s.canonical_conclusion())) return false;
  if (r.premises().size() != s.premises().size()) return false;
  for (std::size_t i = 0; i < r.premises().size(); ++i)
    if (!(r.premises()[i] == s.premises()[i])) return false;
  return true;
}

void check_rule(const Signature& sig, const Rule& r) {
  for (const Premise& p : r.premises()) check_term(sig, p.named().body);
  check_term(sig, r.conclusion());
}

}  // namespace al
