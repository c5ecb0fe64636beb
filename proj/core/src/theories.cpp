#include "al/theories.hpp"


namespace al {

namespace detail {
extern const std::pair<std::string_view, std::string_view> kShippedFiles[];
}

std::optional<std::string_view> shipped_file(std::string_view name) {
  for (const auto* f = detail::kShippedFiles; !f->first.empty(); ++f)
    if (f->first == name) return f->second;
  return std::nullopt;
}

std::vector<std::string> shipped_file_names() {
  std::vector<std::string> out;
  for (const auto* f = detail::kShippedFiles; !f->first.empty(); ++f) out.emplace_back(f->first);
  return out;
}

FileReader shipped_reader() {
  return [](const std::string& path) {
    auto text = shipped_file(path);
    if (!text) throw Error(Errc::IoError, "no shipped file named '" + path + "'");
    return std::string(*text);
  };
}

Signature le_signature() {
  Signature sig;
  sig.add("T", validate_shape({}));
  sig.add("imp", validate_shape({{}, {}}));
  sig.add("eq", validate_shape({{}, {}}));
  sig.add("forall", validate_shape({{1}}));
  return sig;
}

namespace {

Logic load_shipped(const char* name) { return load_theory(name, shipped_reader()).logic; }

}  // namespace

const Logic& logic_E() {
  static const Logic logic = load_shipped("le.th");
  return logic;
}

const Logic& logic_peano() {
  static const Logic logic = load_shipped("peano.th");
  return logic;
}

const Logic& logic_explode() {
  static const Logic logic = load_shipped("le_explode.th");
  return logic;
}

TheoryBundle derived_proofs_E() {
  const Logic& logic = logic_E();
  ScriptDocument doc = parse_script(*shipped_file("le_derived.proof"), "le_derived.proof", logic.signature());
  TheoryBundle bundle{logic, {}};
  for (auto& [name, proof] : script_proofs(doc)) bundle.proofs.emplace(name, std::move(proof));
  return bundle;
}

InconsistencyDemo inconsistent_logic_demo(std::size_t cap) {
  const Logic& logic = logic_explode();
  Theorem forall_x_x = truism(logic, "Explode");
  Theorem x = explosion(logic, forall_x_x, Term::var("x"));
  ModelSearch search = search_models(logic, 2, cap);
  bool degenerate = check_model(degenerate_model(logic.signature()), logic, cap).all_valid();
  return InconsistencyDemo{logic, std::move(x), std::move(search), degenerate};
}

}  // namespace al
