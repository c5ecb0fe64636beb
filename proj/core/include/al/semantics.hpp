#pragma once

// Finite abstraction algebras, valuations and evaluation, plus brute-force
// validity checking of rules over all valuations of a small carrier.

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "al/kernel.hpp"
#include "al/substitution.hpp"
#include "al/terms.hpp"

namespace al {

/// A carrier element, as an index into the carrier list.
using Elem = std::uint32_t;

inline constexpr std::size_t kDefaultEnumerationCap = std::size_t{1} << 20;

/// c^e, or nullopt if it exceeds `limit`.
std::optional<std::size_t> checked_pow(std::size_t c, std::size_t e, std::size_t limit);

/// A k-ary operation on a carrier of size c, stored as c^k results.  Argument
/// tuples are ordered lexicographically with the first argument most
/// significant.
class OperationTable {
 public:
  OperationTable(std::size_t carrier_size, std::size_t arity, std::vector<Elem> values);
  static OperationTable constant(std::size_t carrier_size, std::size_t arity, Elem value);

  std::size_t carrier_size() const { return carrier_size_; }
  std::size_t arity() const { return arity_; }
  const std::vector<Elem>& values() const { return values_; }
  Elem at(std::span<const Elem> args) const;
  bool is_constant(Elem value) const;

  friend bool operator==(const OperationTable&, const OperationTable&) = default;

 private:
  std::size_t carrier_size_;
  std::size_t arity_;
  std::vector<Elem> values_;
};

/// Position of an argument tuple in table order.
std::size_t tuple_index(std::size_t carrier_size, std::span<const Elem> args);
/// Inverse of tuple_index for tuples of length `arity`.
std::vector<Elem> tuple_at(std::size_t carrier_size, std::size_t arity, std::size_t index);

struct ConstantElement {
  Elem value;
  friend bool operator==(const ConstantElement&, const ConstantElement&) = default;
};
/// An operation applied to value arguments; only for all-zero operator shapes.
struct PointwiseLift {
  OperationTable table;
  friend bool operator==(const PointwiseLift&, const PointwiseLift&) = default;
};
/// `true_value` iff the single argument operation is constantly `true_value`.
struct ForallLike {
  Elem true_value;
  Elem false_value;
  friend bool operator==(const ForallLike&, const ForallLike&) = default;
};
/// Keyed by the concatenated values of the argument tables.
struct ExplicitOperator {
  std::map<std::vector<Elem>, Elem> entries;
  Elem fallback = 0;
  friend bool operator==(const ExplicitOperator&, const ExplicitOperator&) = default;
};

using OperatorInterp = std::variant<ConstantElement, PointwiseLift, ForallLike, ExplicitOperator>;

Elem apply_operator(const OperatorInterp& op, std::span<const OperationTable> args);

class FiniteAlgebra {
 public:
  /// Throws InterpMissing if an abstraction has no interpretation and
  /// InvalidModel if an interpretation does not fit its operator shape.
  FiniteAlgebra(std::vector<std::string> carrier, Signature sig, std::map<std::string, OperatorInterp> interps);

  const std::vector<std::string>& carrier() const { return carrier_; }
  std::size_t carrier_size() const { return carrier_.size(); }
  const Signature& signature() const { return sig_; }
  const std::map<std::string, OperatorInterp>& interps() const { return interps_; }
  const OperatorInterp* find(std::string_view name) const;
  /// Index of a named element; throws InvalidModel if absent.
  Elem element(std::string_view name) const;
  const std::string& element_name(Elem e) const { return carrier_.at(e); }

 private:
  std::vector<std::string> carrier_;
  Signature sig_;
  std::map<std::string, OperatorInterp> interps_;
};

struct Model {
  FiniteAlgebra algebra;
  Elem truth;

  /// Throws InvalidModel if `truth` is not a carrier element.
  Model(FiniteAlgebra algebra, Elem truth);
};

/// Total map VarKey -> operation of matching arity: explicit overrides over
/// the constant operation returning the first carrier element.
class Valuation {
 public:
  explicit Valuation(std::size_t carrier_size) : carrier_size_(carrier_size) {}

  std::size_t carrier_size() const { return carrier_size_; }
  OperationTable lookup(const VarKey& key) const;
  Elem apply(const VarKey& key, std::span<const Elem> args) const;
  /// Throws ArityMismatch or InvalidModel if the table does not fit.
  void set(const VarKey& key, OperationTable table);
  const std::map<VarKey, OperationTable>& overrides() const { return overrides_; }

 private:
  std::size_t carrier_size_;
  std::map<VarKey, OperationTable> overrides_;
};

/// nu[x1 := u1, ..., xn := un].  Throws DuplicateName on repeated names.
Valuation update_valuation(const Valuation& nu, const std::vector<std::pair<std::string, Elem>>& updates);

/// Throws InterpMissing, or SignatureMismatch when a shape differs from the
/// model's.
Elem eval_term(const Model& model, const Valuation& nu, const Term& t);
Elem eval_term(const Model& model, const Valuation& nu, const CanonicalTerm& t);
OperationTable eval_template(const Model& model, const Valuation& nu, const Template& t);
OperationTable eval_template(const Model& model, const Valuation& nu, const CanonicalTemplate& t);

/// nu_sigma: sigma's templates evaluated under nu, nu elsewhere.
Valuation subst_valuation(const Model& model, const Valuation& nu, const Substitution& sigma);

bool rule_true(const Model& model, const Valuation& nu, const Rule& r);

/// All c^(c^k) tables, in increasing tuple_index order of their value lists.
/// Throws EnumerationTooLarge if there are more than `cap`.
std::vector<OperationTable> enumerate_operations(std::size_t carrier_size, std::size_t arity,
                                                 std::size_t cap = kDefaultEnumerationCap);

struct ValidityResult {
  bool valid = true;
  /// The first failing valuation in enumeration order.
  std::optional<Valuation> counterexample;
  std::size_t valuations_checked = 0;
};

/// Tries every assignment of tables to the free variables of `r`.  Throws
/// EnumerationTooLarge if there are more than `cap` assignments.
ValidityResult check_rule_valid(const Model& model, const Rule& r, std::size_t cap = kDefaultEnumerationCap);

struct RuleReport {
  std::string name;
  ValidityResult result;
};

struct ModelReport {
  std::vector<RuleReport> rules;
  std::size_t valid_count() const;
  bool all_valid() const { return valid_count() == rules.size(); }
};

/// Throws SignatureMismatch if the model does not cover the logic's signature.
ModelReport check_model(const Model& model, const Logic& logic, std::size_t cap = kDefaultEnumerationCap);

Model degenerate_model(const Signature& sig);
/// Carrier {T, F} over the signature {T, imp, eq, forall} of deduction logic.
Model standard_two_element_model();

/// Every interpretation of an abstraction of the given shape on carrier c.
std::vector<OperatorInterp> enumerate_interpretations(std::size_t carrier_size, const Shape& shape,
                                                      std::size_t cap = kDefaultEnumerationCap);

struct ModelSearch {
  std::size_t candidates = 0;
  std::vector<Model> models;
};

/// Exhaustive search over all interpretations of the logic's abstractions on
/// a carrier of the given size, with element 0 as truth (any model can be
/// relabelled so).  Throws EnumerationTooLarge past `cap` candidates.
ModelSearch search_models(const Logic& logic, std::size_t carrier_size, std::size_t cap = kDefaultEnumerationCap);

/// Default carrier names: {T} for size 1, {T, F} for 2, T e1 e2 ... beyond.
std::vector<std::string> default_carrier(std::size_t size);

}  // namespace al
