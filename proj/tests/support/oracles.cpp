#include "oracles.hpp"

#include <optional>

namespace al::test {

namespace {

using Names = std::vector<std::string>;

/// Distance to the innermost binder of `name`, if bound.
std::optional<std::size_t> depth_of(const Names& env, const std::string& name) {
  for (std::size_t i = env.size(); i-- > 0;)
    if (env[i] == name) return env.size() - 1 - i;
  return std::nullopt;
}

bool alpha(const Term& s, Names& es, const Term& t, Names& et) {
  if (s.kind() != t.kind() || s.args().size() != t.args().size()) return false;
  if (s.is_var() && s.args().empty()) {
    auto ds = depth_of(es, s.name());
    auto dt = depth_of(et, t.name());
    if (ds || dt) return ds == dt;
  }
  if (s.name() != t.name()) return false;
  if (s.is_var()) {
    // Heads of arity > 0 are never bound.
    for (std::size_t i = 0; i < s.args().size(); ++i)
      if (!alpha(s.args()[i], es, t.args()[i], et)) return false;
    return true;
  }
  for (std::size_t i = 0; i < s.args().size(); ++i) {
    std::size_t ms = es.size(), mt = et.size();
    for (std::size_t q : s.shape().deps()[i]) es.push_back(s.binders()[q - 1]);
    for (std::size_t q : t.shape().deps()[i]) et.push_back(t.binders()[q - 1]);
    bool ok = alpha(s.args()[i], es, t.args()[i], et);
    es.resize(ms);
    et.resize(mt);
    if (!ok) return false;
  }
  return true;
}

std::size_t power(std::size_t base, std::size_t exp) {
  std::size_t r = 1;
  for (std::size_t i = 0; i < exp; ++i) r *= base;
  return r;
}

}  // namespace

bool named_alpha_eq(const Term& s, const Term& t) {
  Names es, et;
  return alpha(s, es, t, et);
}

bool named_alpha_eq(const Template& s, const Template& t) {
  if (s.binders.size() != t.binders.size()) return false;
  Names es = s.binders, et = t.binders;
  return alpha(s.body, es, t.body, et);
}

Elem NamedEvaluator::eval(const Term& t) const {
  Env env;
  return eval(t, env);
}

std::vector<Elem> NamedEvaluator::eval(const Template& t) const {
  Env env;
  return table(t.body, t.binders, env);
}

Elem NamedEvaluator::eval(const Term& t, Env& env) const {
  if (t.is_var()) {
    if (t.args().empty()) {
      for (std::size_t i = env.size(); i-- > 0;)
        if (env[i].first == t.name()) return env[i].second;
    }
    const std::size_t c = model_.algebra.carrier_size();
    std::size_t index = 0;
    for (const auto& a : t.args()) index = index * c + eval(a, env);
    return nu_.lookup(VarKey{t.name(), t.args().size()}).values().at(index);
  }
  std::vector<std::vector<Elem>> args;
  for (std::size_t i = 0; i < t.args().size(); ++i) {
    Names binders;
    for (std::size_t q : t.shape().deps()[i]) binders.push_back(t.binders()[q - 1]);
    args.push_back(table(t.args()[i], binders, env));
  }
  return apply(t.name(), args);
}

std::vector<Elem> NamedEvaluator::table(const Term& body, const std::vector<std::string>& binders, Env& env) const {
  const std::size_t c = model_.algebra.carrier_size();
  const std::size_t k = binders.size();
  std::vector<Elem> values;
  for (std::size_t row = 0; row < power(c, k); ++row) {
    std::size_t mark = env.size();
    for (std::size_t j = 0; j < k; ++j) {
      Elem u = static_cast<Elem>((row / power(c, k - 1 - j)) % c);
      env.emplace_back(binders[j], u);
    }
    values.push_back(eval(body, env));
    env.resize(mark);
  }
  return values;
}

Elem NamedEvaluator::apply(const std::string& abstraction, const std::vector<std::vector<Elem>>& args) const {
  const OperatorInterp* op = model_.algebra.find(abstraction);
  if (op == nullptr) throw Error(Errc::InterpMissing, abstraction);
  const std::size_t c = model_.algebra.carrier_size();
  if (auto* k = std::get_if<ConstantElement>(op)) return k->value;
  if (auto* lift = std::get_if<PointwiseLift>(op)) {
    std::size_t index = 0;
    for (const auto& a : args) index = index * c + a.at(0);
    return lift->table.values().at(index);
  }
  if (auto* all = std::get_if<ForallLike>(op)) {
    for (Elem e : args.at(0))
      if (e != all->true_value) return all->false_value;
    return all->true_value;
  }
  const auto& explicit_op = std::get<ExplicitOperator>(*op);
  std::vector<Elem> key;
  for (const auto& a : args) key.insert(key.end(), a.begin(), a.end());
  auto it = explicit_op.entries.find(key);
  return it == explicit_op.entries.end() ? explicit_op.fallback : it->second;
}

}  // namespace al::test
