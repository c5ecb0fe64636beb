#include "al/semantics.hpp"

#include <algorithm>
#include <set>
#include <utility>

namespace al {

std::optional<std::size_t> checked_pow(std::size_t c, std::size_t e, std::size_t limit) {
  std::size_t result = 1;
  for (std::size_t i = 0; i < e; ++i) {
    if (c != 0 && result > limit / c) return std::nullopt;
    result *= c;
  }
  if (result > limit) return std::nullopt;
  return result;
}

namespace {

constexpr std::size_t kTableLimit = std::size_t{1} << 24;

std::size_t table_size(std::size_t c, std::size_t k) {
  auto n = checked_pow(c, k, kTableLimit);
  if (!n) fail(Errc::EnumerationTooLarge, "operation table of arity " + std::to_string(k) + " is too large");
  return *n;
}

}  // namespace

std::size_t tuple_index(std::size_t carrier_size, std::span<const Elem> args) {
  std::size_t idx = 0;
  for (Elem a : args) idx = idx * carrier_size + a;
  return idx;
}

std::vector<Elem> tuple_at(std::size_t carrier_size, std::size_t arity, std::size_t index) {
  std::vector<Elem> out(arity);
  for (std::size_t i = arity; i-- > 0;) {
    out[i] = static_cast<Elem>(index % carrier_size);
    index /= carrier_size;
  }
  return out;
}

OperationTable::OperationTable(std::size_t carrier_size, std::size_t arity, std::vector<Elem> values)
    : carrier_size_(carrier_size), arity_(arity), values_(std::move(values)) {
  if (carrier_size_ == 0) fail(Errc::InvalidModel, "empty carrier");
  if (values_.size() != table_size(carrier_size_, arity_))
    fail(Errc::InvalidModel, "operation table of arity " + std::to_string(arity_) + " needs " +
                                 std::to_string(table_size(carrier_size_, arity_)) + " entries, got " +
                                 std::to_string(values_.size()));
  for (Elem v : values_)
    if (v >= carrier_size_) fail(Errc::InvalidModel, "table value outside the carrier");
}

OperationTable OperationTable::constant(std::size_t carrier_size, std::size_t arity, Elem value) {
  return OperationTable(carrier_size, arity, std::vector<Elem>(table_size(carrier_size, arity), value));
}

Elem OperationTable::at(std::span<const Elem> args) const { return values_[tuple_index(carrier_size_, args)]; }

bool OperationTable::is_constant(Elem value) const {
  return std::all_of(values_.begin(), values_.end(), [&](Elem v) { return v == value; });
}

Elem apply_operator(const OperatorInterp& op, std::span<const OperationTable> args) {
  struct Visitor {
    std::span<const OperationTable> args;
    Elem operator()(const ConstantElement& c) const { return c.value; }
    Elem operator()(const PointwiseLift& p) const {
      std::vector<Elem> tuple;
      tuple.reserve(args.size());
      for (const auto& a : args) tuple.push_back(a.values().front());
      return p.table.at(tuple);
    }
    Elem operator()(const ForallLike& f) const {
      return args.front().is_constant(f.true_value) ? f.true_value : f.false_value;
    }
    Elem operator()(const ExplicitOperator& e) const {
      std::vector<Elem> key;
      for (const auto& a : args) key.insert(key.end(), a.values().begin(), a.values().end());
      auto it = e.entries.find(key);
      return it == e.entries.end() ? e.fallback : it->second;
    }
  };
  return std::visit(Visitor{args}, op);
}

namespace {

void check_interp(const std::string& name, const Shape& shape, const OperatorInterp& op, std::size_t c) {
  auto bad = [&](const std::string& why) { fail(Errc::InvalidModel, "interpretation of '" + name + "': " + why); };
  auto ops = shape.operator_shape();
  if (const auto* k = std::get_if<ConstantElement>(&op)) {
    if (k->value >= c) bad("element outside the carrier");
  } else if (const auto* p = std::get_if<PointwiseLift>(&op)) {
    if (std::any_of(ops.begin(), ops.end(), [](std::size_t k) { return k != 0; }))
      bad("a pointwise table needs value arguments only");
    if (p->table.arity() != ops.size() || p->table.carrier_size() != c) bad("table does not match the shape");
  } else if (const auto* f = std::get_if<ForallLike>(&op)) {
    if (ops.size() != 1) bad("forall-like operators take exactly one argument");
    if (f->true_value >= c || f->false_value >= c) bad("element outside the carrier");
  } else {
    const auto& e = std::get<ExplicitOperator>(op);
    std::size_t key_len = 0;
    for (std::size_t k : ops) key_len += table_size(c, k);
    if (e.fallback >= c) bad("default outside the carrier");
    for (const auto& [key, value] : e.entries) {
      if (key.size() != key_len) bad("table row has the wrong number of argument values");
      if (value >= c) bad("result outside the carrier");
      for (Elem v : key)
        if (v >= c) bad("argument outside the carrier");
    }
  }
}

}  // namespace

FiniteAlgebra::FiniteAlgebra(std::vector<std::string> carrier, Signature sig,
                             std::map<std::string, OperatorInterp> interps)
    : carrier_(std::move(carrier)), sig_(std::move(sig)), interps_(std::move(interps)) {
  if (carrier_.empty()) fail(Errc::InvalidModel, "the carrier must not be empty");
  std::set<std::string> seen(carrier_.begin(), carrier_.end());
  if (seen.size() != carrier_.size()) fail(Errc::DuplicateName, "carrier elements must be distinct");
  for (const auto& [name, shape] : sig_.abstractions()) {
    auto it = interps_.find(name);
    if (it == interps_.end()) fail(Errc::InterpMissing, "no interpretation for '" + name + "'");
    check_interp(name, shape, it->second, carrier_.size());
  }
  for (const auto& [name, op] : interps_)
    if (!sig_.contains(name)) fail(Errc::InvalidModel, "interpretation for undeclared abstraction '" + name + "'");
}

const OperatorInterp* FiniteAlgebra::find(std::string_view name) const {
  auto it = interps_.find(std::string(name));
  return it == interps_.end() ? nullptr : &it->second;
}

Elem FiniteAlgebra::element(std::string_view name) const {
  auto it = std::find(carrier_.begin(), carrier_.end(), name);
  if (it == carrier_.end()) fail(Errc::InvalidModel, "unknown carrier element '" + std::string(name) + "'");
  return static_cast<Elem>(it - carrier_.begin());
}

Model::Model(FiniteAlgebra a, Elem t) : algebra(std::move(a)), truth(t) {
  if (truth >= algebra.carrier_size()) fail(Errc::InvalidModel, "truth is not a carrier element");
}

OperationTable Valuation::lookup(const VarKey& key) const {
  auto it = overrides_.find(key);
  if (it != overrides_.end()) return it->second;
  return OperationTable::constant(carrier_size_, key.arity, 0);
}

Elem Valuation::apply(const VarKey& key, std::span<const Elem> args) const {
  auto it = overrides_.find(key);
  return it == overrides_.end() ? 0 : it->second.at(args);
}

void Valuation::set(const VarKey& key, OperationTable table) {
  if (table.arity() != key.arity)
    fail(Errc::ArityMismatch, "valuation of " + to_string(key) + " needs a table of arity " +
                                  std::to_string(key.arity));
  if (table.carrier_size() != carrier_size_) fail(Errc::InvalidModel, "table over a different carrier");
  overrides_.insert_or_assign(key, std::move(table));
}

Valuation update_valuation(const Valuation& nu, const std::vector<std::pair<std::string, Elem>>& updates) {
  std::set<std::string> names;
  for (const auto& [name, value] : updates)
    if (!names.insert(name).second) fail(Errc::DuplicateName, "variable '" + name + "' updated twice");
  Valuation out = nu;
  for (const auto& [name, value] : updates)
    out.set(VarKey{name, 0}, OperationTable::constant(nu.carrier_size(), 0, value));
  return out;
}

namespace {

class Evaluator {
 public:
  Evaluator(const Model& model, const Valuation& nu) : model_(model), nu_(nu), c_(model.algebra.carrier_size()) {}

  Elem eval(const CanonicalTerm& t) {
    switch (t.kind()) {
      case CanonicalTerm::Kind::Bound:
        return env_[env_.size() - 1 - t.index()];
      case CanonicalTerm::Kind::Free: {
        std::vector<Elem> args;
        args.reserve(t.args().size());
        for (const auto& a : t.args()) args.push_back(eval(a));
        auto it = nu_.overrides().find(VarKey{t.name(), args.size()});
        return it == nu_.overrides().end() ? 0 : it->second.at(args);
      }
      case CanonicalTerm::Kind::Abs:
        break;
    }
    const OperatorInterp* op = model_.algebra.find(t.name());
    if (!op) fail(Errc::InterpMissing, "no interpretation for '" + t.name() + "'");
    const Shape* declared = model_.algebra.signature().find(t.name());
    if (!declared || !(*declared == t.shape()))
      fail(Errc::SignatureMismatch, "'" + t.name() + "' has a different shape in the model");
    if (const auto* k = std::get_if<ConstantElement>(op)) return k->value;

    std::vector<OperationTable> tables;
    tables.reserve(t.args().size());
    for (std::size_t i = 0; i < t.args().size(); ++i) tables.push_back(table(t.args()[i], t.shape().deps()[i].size()));
    return apply_operator(*op, tables);
  }

  /// The k-ary operation obtained by binding the next k environment slots.
  OperationTable table(const CanonicalTerm& body, std::size_t k) {
    std::size_t n = table_size(c_, k);
    std::vector<Elem> values(n);
    std::size_t base = env_.size();
    env_.resize(base + k);
    for (std::size_t idx = 0; idx < n; ++idx) {
      std::size_t rest = idx;
      for (std::size_t j = k; j-- > 0;) {
        env_[base + j] = static_cast<Elem>(rest % c_);
        rest /= c_;
      }
      values[idx] = eval(body);
    }
    env_.resize(base);
    return OperationTable(c_, k, std::move(values));
  }

 private:
  const Model& model_;
  const Valuation& nu_;
  std::size_t c_;
  std::vector<Elem> env_;
};

}  // namespace

Elem eval_term(const Model& model, const Valuation& nu, const CanonicalTerm& t) {
  return Evaluator(model, nu).eval(t);
}

Elem eval_term(const Model& model, const Valuation& nu, const Term& t) {
  return eval_term(model, nu, to_canonical(t));
}

OperationTable eval_template(const Model& model, const Valuation& nu, const CanonicalTemplate& t) {
  return Evaluator(model, nu).table(t.body, t.arity);
}

OperationTable eval_template(const Model& model, const Valuation& nu, const Template& t) {
  return eval_template(model, nu, to_canonical(t));
}

Valuation subst_valuation(const Model& model, const Valuation& nu, const Substitution& sigma) {
  Valuation out = nu;
  for (const auto& [key, tmpl] : sigma.canonical()) out.set(key, eval_template(model, nu, tmpl));
  return out;
}

bool rule_true(const Model& model, const Valuation& nu, const Rule& r) {
  Evaluator ev(model, nu);
  if (ev.eval(r.canonical_conclusion()) == model.truth) return true;
  for (const auto& p : r.premises())
    if (!ev.table(p.canonical().body, p.arity()).is_constant(model.truth)) return true;
  return false;
}

std::vector<OperationTable> enumerate_operations(std::size_t carrier_size, std::size_t arity, std::size_t cap) {
  if (carrier_size == 0) fail(Errc::InvalidModel, "empty carrier");
  auto n = checked_pow(carrier_size, arity, kTableLimit);
  auto count = n ? checked_pow(carrier_size, *n, cap) : std::nullopt;
  if (!count)
    fail(Errc::EnumerationTooLarge, std::to_string(carrier_size) + "^(" + std::to_string(carrier_size) + "^" +
                                        std::to_string(arity) + ") operations exceed the cap of " +
                                        std::to_string(cap));
  std::vector<OperationTable> out;
  out.reserve(*count);
  for (std::size_t i = 0; i < *count; ++i) out.emplace_back(carrier_size, arity, tuple_at(carrier_size, *n, i));
  return out;
}

ValidityResult check_rule_valid(const Model& model, const Rule& r, std::size_t cap) {
  const std::size_t c = model.algebra.carrier_size();
  VarSet free = free_variables(r);
  std::vector<VarKey> keys(free.begin(), free.end());

  std::map<std::size_t, std::vector<OperationTable>> by_arity;
  std::size_t total = 1;
  for (const auto& key : keys) {
    auto [it, fresh] = by_arity.try_emplace(key.arity);
    if (fresh) it->second = enumerate_operations(c, key.arity, cap);
    std::size_t n = it->second.size();
    if (total > cap / n) fail(Errc::EnumerationTooLarge, "more than " + std::to_string(cap) + " valuations");
    total *= n;
  }

  ValidityResult result;
  std::vector<std::size_t> digits(keys.size(), 0);
  for (;;) {
    Valuation nu(c);
    for (std::size_t i = 0; i < keys.size(); ++i) nu.set(keys[i], by_arity.at(keys[i].arity)[digits[i]]);
    ++result.valuations_checked;
    if (!rule_true(model, nu, r)) {
      result.valid = false;
      result.counterexample = std::move(nu);
      return result;
    }
    std::size_t i = keys.size();
    while (i > 0) {
      --i;
      if (++digits[i] < by_arity.at(keys[i].arity).size()) break;
      digits[i] = 0;
      if (i == 0) return result;
    }
    if (keys.empty()) return result;
  }
}

std::size_t ModelReport::valid_count() const {
  return static_cast<std::size_t>(
      std::count_if(rules.begin(), rules.end(), [](const RuleReport& r) { return r.result.valid; }));
}

ModelReport check_model(const Model& model, const Logic& logic, std::size_t cap) {
  if (!model.algebra.signature().includes(logic.signature()))
    fail(Errc::SignatureMismatch, "the model does not interpret every abstraction of the logic");
  ModelReport report;
  for (const auto& nr : logic.rules()) report.rules.push_back({nr.name, check_rule_valid(model, nr.rule, cap)});
  return report;
}

std::vector<std::string> default_carrier(std::size_t size) {
  if (size == 2) return {"T", "F"};
  std::vector<std::string> out{"T"};
  for (std::size_t i = 1; i < size; ++i) out.push_back("e" + std::to_string(i));
  return out;
}

Model degenerate_model(const Signature& sig) {
  std::map<std::string, OperatorInterp> interps;
  for (const auto& [name, shape] : sig.abstractions()) interps.emplace(name, ConstantElement{0});
  return Model(FiniteAlgebra({"T"}, sig, std::move(interps)), 0);
}

Model standard_two_element_model() {
  Signature sig;
  sig.add("T", validate_shape({}));
  sig.add("imp", validate_shape({{}, {}}));
  sig.add("eq", validate_shape({{}, {}}));
  sig.add("forall", validate_shape({{1}}));
  constexpr Elem T = 0, F = 1;
  std::map<std::string, OperatorInterp> interps;
  interps.emplace("T", ConstantElement{T});
  // (x, y) in order TT, TF, FT, FF
  interps.emplace("imp", PointwiseLift{OperationTable(2, 2, {T, F, T, T})});
  interps.emplace("eq", PointwiseLift{OperationTable(2, 2, {T, F, F, T})});
  interps.emplace("forall", ForallLike{T, F});
  return Model(FiniteAlgebra({"T", "F"}, std::move(sig), std::move(interps)), T);
}

std::vector<OperatorInterp> enumerate_interpretations(std::size_t carrier_size, const Shape& shape,
                                                      std::size_t cap) {
  auto ops = shape.operator_shape();
  std::vector<OperatorInterp> out;
  if (ops.empty()) {
    for (Elem e = 0; e < carrier_size; ++e) out.emplace_back(ConstantElement{e});
    return out;
  }
  if (std::all_of(ops.begin(), ops.end(), [](std::size_t k) { return k == 0; })) {
    for (auto& t : enumerate_operations(carrier_size, ops.size(), cap)) out.emplace_back(PointwiseLift{std::move(t)});
    return out;
  }
  // Every tuple of argument tables, then every assignment of results to them.
  std::vector<std::vector<OperationTable>> domains;
  std::size_t rows = 1;
  for (std::size_t k : ops) {
    domains.push_back(enumerate_operations(carrier_size, k, cap));
    if (rows > cap / domains.back().size()) fail(Errc::EnumerationTooLarge, "operator domain exceeds the cap");
    rows *= domains.back().size();
  }
  auto count = checked_pow(carrier_size, rows, cap);
  if (!count) fail(Errc::EnumerationTooLarge, "operator count exceeds the cap");
  std::vector<std::vector<Elem>> keys;
  keys.reserve(rows);
  for (std::size_t r = 0; r < rows; ++r) {
    std::vector<Elem> key;
    std::size_t rest = r;
    std::vector<std::size_t> pick(domains.size());
    for (std::size_t i = domains.size(); i-- > 0;) {
      pick[i] = rest % domains[i].size();
      rest /= domains[i].size();
    }
    for (std::size_t i = 0; i < domains.size(); ++i) {
      const auto& v = domains[i][pick[i]].values();
      key.insert(key.end(), v.begin(), v.end());
    }
    keys.push_back(std::move(key));
  }
  for (std::size_t i = 0; i < *count; ++i) {
    ExplicitOperator op;
    auto results = tuple_at(carrier_size, rows, i);
    for (std::size_t r = 0; r < rows; ++r) op.entries.emplace(keys[r], results[r]);
    out.emplace_back(std::move(op));
  }
  return out;
}

ModelSearch search_models(const Logic& logic, std::size_t carrier_size, std::size_t cap) {
  const auto& abs = logic.signature().abstractions();
  std::vector<std::string> names;
  std::vector<std::vector<OperatorInterp>> choices;
  std::size_t total = 1;
  for (const auto& [name, shape] : abs) {
    names.push_back(name);
    choices.push_back(enumerate_interpretations(carrier_size, shape, cap));
    if (total > cap / choices.back().size()) fail(Errc::EnumerationTooLarge, "model space exceeds the cap");
    total *= choices.back().size();
  }
  ModelSearch search;
  search.candidates = total;
  auto carrier = default_carrier(carrier_size);
  std::vector<std::size_t> digits(names.size(), 0);
  for (std::size_t n = 0; n < total; ++n) {
    std::size_t rest = n;
    for (std::size_t i = names.size(); i-- > 0;) {
      digits[i] = rest % choices[i].size();
      rest /= choices[i].size();
    }
    std::map<std::string, OperatorInterp> interps;
    for (std::size_t i = 0; i < names.size(); ++i) interps.emplace(names[i], choices[i][digits[i]]);
    Model model(FiniteAlgebra(carrier, logic.signature(), std::move(interps)), 0);
    bool ok = std::all_of(logic.rules().begin(), logic.rules().end(),
                          [&](const NamedRule& nr) { return check_rule_valid(model, nr.rule, cap).valid; });
    if (ok) search.models.push_back(std::move(model));
  }
  return search;
}

}  // namespace al
