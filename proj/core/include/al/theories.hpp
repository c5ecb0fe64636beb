#pragma once

// The logics and proof scripts shipped with the library.  The texts in
// theories/ are compiled in, so everything here works without the source
// tree.

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "al/files.hpp"
#include "al/kernel.hpp"
#include "al/semantics.hpp"

namespace al {

/// Contents of a shipped file such as "le.th", if there is one.
std::optional<std::string_view> shipped_file(std::string_view name);
std::vector<std::string> shipped_file_names();
/// Reads shipped files by name; throws IoError for anything else.
FileReader shipped_reader();

/// {T: [], imp: [{}, {}], eq: [{}, {}], forall: [{1}]}
Signature le_signature();

/// Deduction logic with equality: ten rules, eight of them axioms.
const Logic& logic_E();
/// Peano arithmetic as an axiomatic extension of logic_E().
const Logic& logic_peano();
/// logic_E() plus the axiom (forall x. x).
const Logic& logic_explode();

struct TheoryBundle {
  Logic logic;
  std::map<std::string, Proof> proofs;
};

/// Derived theorems of logic_E(): imp_refl, truth_eq, forall_true, eq_sym,
/// eq_trans, congruence1, congruence2 and the lemmas they use.
TheoryBundle derived_proofs_E();

struct InconsistencyDemo {
  Logic logic;
  /// ({}, x), obtained by explosion.
  Theorem x;
  /// All interpretations on a two-element carrier that satisfy the logic.
  ModelSearch two_element;
  bool degenerate_is_model = false;
};

InconsistencyDemo inconsistent_logic_demo(std::size_t cap = kDefaultEnumerationCap);

}  // namespace al
