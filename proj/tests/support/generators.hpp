#pragma once

// Random terms, templates, substitutions, valuations and models for the
// property tests.  Names are drawn from small pools on purpose so that
// shadowing and would-be captures happen often.

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "al/semantics.hpp"
#include "al/substitution.hpp"
#include "al/terms.hpp"

namespace al::test {

/// Deduction logic plus abstractions with richer shapes:
/// pair [{1}, {2}], both [{1}, {1}], twice [{1, 2}], S [{}].
Signature rich_signature();

class Generator {
 public:
  explicit Generator(std::uint64_t seed, Signature sig = rich_signature());

  const Signature& signature() const { return sig_; }
  std::mt19937_64& rng() { return rng_; }
  std::size_t below(std::size_t n);
  bool coin() { return below(2) == 0; }

  /// A term of depth at most `depth` whose variable applications have at
  /// most two arguments.
  Term term(std::size_t depth);
  Template tmpl(std::size_t arity, std::size_t depth);
  /// Maps a random subset of the variable pool.
  Substitution substitution(std::size_t depth);

  /// Renames every binder to a name that occurs nowhere else.
  Term rename_fresh(const Term& t);
  /// Renames binders to names from the pool; may or may not stay
  /// alpha-equivalent.
  Term rename_from_pool(const Term& t);

  OperationTable table(std::size_t carrier_size, std::size_t arity);
  /// Random tables for exactly the given keys.
  Valuation valuation(const VarSet& keys, std::size_t carrier_size);
  /// A random interpretation of the signature.  Truth is random too.
  Model model(std::size_t carrier_size);

  /// Every variable the generator can produce.
  static VarSet variable_pool();

 private:
  Term term(std::size_t depth, std::vector<std::string>& scope);
  Term leaf(std::vector<std::string>& scope);
  std::vector<std::string> pick_binders(std::size_t n);
  Term rename(const Term& t, std::vector<std::pair<std::string, std::string>>& env, bool fresh);

  Signature sig_;
  std::mt19937_64 rng_;
  std::size_t fresh_counter_ = 0;
};

}  // namespace al::test
