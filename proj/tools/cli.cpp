#include "cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <ostream>

#include "CLI11.hpp"
#include "al/files.hpp"
#include "al/semantics.hpp"
#include "al/syntax.hpp"
#include "al/theories.hpp"

namespace al::cli {

namespace {

void report(const Error& e, std::ostream& err) {
  err << "ERROR " << to_string(e.code()) << ' ';
  if (e.span() && e.span()->known())
    err << e.span()->file << ':' << e.span()->line << ':' << e.span()->column;
  else
    err << "-:0:0";
  err << ' ' << e.message() << '\n';
}

std::string key_name(const VarKey& k) { return k.arity ? k.name + "/" + std::to_string(k.arity) : k.name; }

void print_valuation(const Model& model, const Valuation& nu, bool tables, std::ostream& out) {
  const auto& carrier = model.algebra.carrier();
  const std::size_t c = carrier.size();
  if (!tables) {
    bool first = true;
    for (const auto& [key, table] : nu.overrides()) {
      out << (first ? " " : ", ") << key_name(key) << " = ";
      first = false;
      if (key.arity == 0) {
        out << carrier[table.values()[0]];
      } else {
        out << '[';
        for (std::size_t i = 0; i < table.values().size(); ++i) out << (i ? " " : "") << carrier[table.values()[i]];
        out << ']';
      }
    }
    out << '\n';
    return;
  }
  out << '\n';
  for (const auto& [key, table] : nu.overrides()) {
    if (key.arity == 0) {
      out << "    " << key.name << " = " << carrier[table.values()[0]] << '\n';
      continue;
    }
    out << "    " << key_name(key) << ":\n";
    for (std::size_t i = 0; i < table.values().size(); ++i) {
      out << "     ";
      for (Elem e : tuple_at(c, key.arity, i)) out << ' ' << carrier[e];
      out << " -> " << carrier[table.values()[i]] << '\n';
    }
  }
}

void print_numbered(const std::string& name, const Rule& r, bool numbered, std::ostream& out) {
  if (!numbered || r.is_axiom()) {
    out << name << ": " << print_rule(r) << '\n';
    return;
  }
  out << name << ":\n";
  for (std::size_t i = 0; i < r.premises().size(); ++i)
    out << "  #" << i + 1 << " premise " << print_template(r.premises()[i].named()) << '\n';
  out << "  |- " << print_term(r.conclusion()) << '\n';
}

ScriptDocument read_script(const std::string& path, const Logic& logic) {
  return parse_script(read_file(path), path, logic.signature());
}

int cmd_check(const std::string& theory, const std::string& script, bool verbose, std::ostream& out) {
  Logic logic = load_theory(theory).logic;
  auto thms = check_script(logic, read_script(script, logic));
  for (const auto& [name, thm] : thms) print_numbered(name, thm.rule(), verbose, out);
  out << thms.size() << " theorem" << (thms.size() == 1 ? "" : "s") << " replayed\n";
  return 0;
}

int cmd_rules(const std::string& theory, std::ostream& out) {
  Logic logic = load_theory(theory).logic;
  for (const auto& [name, shape] : logic.signature().abstractions())
    out << "abstraction " << name << " shape " << print_shape(shape) << '\n';
  for (const auto& nr : logic.rules()) print_numbered(nr.name, nr.rule, true, out);
  return 0;
}

int cmd_model_check(const std::string& theory, const std::string& model_path, std::size_t cap, bool verbose,
                    std::ostream& out) {
  Logic logic = load_theory(theory).logic;
  Model model = load_model(model_path);
  ModelReport report = check_model(model, logic, cap);
  for (const auto& r : report.rules) {
    out << r.name << ": ";
    if (r.result.valid) {
      out << "valid (" << r.result.valuations_checked << " valuation"
          << (r.result.valuations_checked == 1 ? "" : "s") << ")\n";
    } else {
      out << "invalid, counterexample";
      print_valuation(model, *r.result.counterexample, verbose, out);
    }
  }
  out << report.valid_count() << '/' << report.rules.size() << " rules valid\n";
  return report.all_valid() ? 0 : 1;
}

int cmd_eval(const std::string& model_path, const std::string& text, const std::vector<std::string>& sets,
             std::ostream& out) {
  Model model = load_model(model_path);
  Term t = parse_term(model.algebra.signature(), text, SourceSpan{"<term>", 1, 1, 1, 1});
  std::vector<std::pair<std::string, Elem>> updates;
  for (const auto& s : sets) {
    auto eq = s.find('=');
    if (eq == std::string::npos || !is_identifier(s.substr(0, eq)))
      throw Error(Errc::UsageError, "--set expects name=element, got '" + s + "'");
    updates.emplace_back(s.substr(0, eq), model.algebra.element(s.substr(eq + 1)));
  }
  Valuation nu = update_valuation(Valuation(model.algebra.carrier_size()), updates);
  out << model.algebra.element_name(eval_term(model, nu, t)) << '\n';
  return 0;
}

int cmd_alpha(const std::string& a, const std::string& b, const std::string& theory, std::ostream& out) {
  Signature sig = theory.empty() ? le_signature() : load_theory(theory).logic.signature();
  Term s = parse_term(sig, a, SourceSpan{"<term1>", 1, 1, 1, 1});
  Term t = parse_term(sig, b, SourceSpan{"<term2>", 1, 1, 1, 1});
  bool same = alpha_eq_term(s, t);
  out << (same ? "true" : "false") << '\n';
  return same ? 0 : 1;
}

int cmd_oracle(const std::string& theory, const std::string& script, const std::string& dir, std::size_t cap,
               bool verbose, std::ostream& out) {
  Logic logic = load_theory(theory).logic;
  auto thms = check_script(logic, read_script(script, logic));
  out << thms.size() << " theorem" << (thms.size() == 1 ? "" : "s") << " replayed\n";

  std::vector<std::filesystem::path> models;
  std::error_code ec;
  for (const auto& entry : std::filesystem::directory_iterator(dir, ec))
    if (entry.is_regular_file() && entry.path().extension() == ".model") models.push_back(entry.path());
  if (ec) throw Error(Errc::IoError, "cannot list '" + dir + "': " + ec.message());
  std::sort(models.begin(), models.end());

  std::size_t checked = 0;
  bool all_valid = true;
  for (const auto& path : models) {
    Model model = load_model(path.string());
    if (!model.algebra.signature().includes(logic.signature())) {
      out << path.filename().string() << ": skipped, does not interpret the theory's signature\n";
      continue;
    }
    ++checked;
    std::size_t valid = 0;
    for (const auto& [name, thm] : thms) {
      ValidityResult r = check_rule_valid(model, thm.rule(), cap);
      if (r.valid) {
        ++valid;
        continue;
      }
      all_valid = false;
      out << "  " << name << ": invalid in " << path.filename().string() << ", counterexample";
      print_valuation(model, *r.counterexample, verbose, out);
    }
    out << path.filename().string() << ": " << valid << '/' << thms.size() << " theorems valid\n";
  }
  if (checked == 0) throw Error(Errc::UsageError, "no model in '" + dir + "' interprets the theory's signature");
  return all_valid ? 0 : 1;
}

int cmd_fmt(const std::string& path, const std::string& theory, bool check_only, bool in_place, std::ostream& out) {
  std::string text = read_file(path);
  std::string ext = std::filesystem::path(path).extension().string();
  std::string canonical;
  if (ext == ".th") {
    canonical = print_theory(parse_theory(text, path, filesystem_reader()).document);
  } else if (ext == ".model") {
    ModelDocument doc = parse_model_document(text, path);
    (void)build_model(doc);
    canonical = print_model(doc);
  } else if (ext == ".proof") {
    if (theory.empty()) throw Error(Errc::UsageError, "formatting a proof script needs --theory");
    Logic logic = load_theory(theory).logic;
    canonical = print_script(parse_script(text, path, logic.signature()));
  } else {
    throw Error(Errc::UsageError, "unknown file kind '" + ext + "'; expected .th, .model or .proof");
  }
  if (check_only) {
    if (canonical == text) return 0;
    out << path << ": not in canonical form\n";
    return 1;
  }
  if (in_place) {
    if (canonical != text) {
      std::ofstream f(path, std::ios::binary | std::ios::trunc);
      if (!(f << canonical)) throw Error(Errc::IoError, "cannot write '" + path + "'");
    }
    return 0;
  }
  out << canonical;
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Proof checker and finite model checker for abstraction logic", "al"};
  app.require_subcommand(1);

  std::string theory, script, model, file, dir, term1, term2;
  std::vector<std::string> sets;
  std::size_t cap = kDefaultEnumerationCap;
  bool verbose = false, check_only = false, in_place = false;

  auto* check = app.add_subcommand("check", "Replay every theorem of a proof script");
  check->add_option("theory", theory, "Theory file (.th)")->required();
  check->add_option("script", script, "Proof script (.proof)")->required();
  check->add_flag("-v,--verbose", verbose, "Number the premisses of each theorem");

  auto* rules = app.add_subcommand("rules", "List a theory's abstractions and numbered rules");
  rules->add_option("theory", theory, "Theory file (.th)")->required();

  auto* mcheck = app.add_subcommand("model-check", "Check every rule of a theory in a finite model");
  mcheck->add_option("theory", theory, "Theory file (.th)")->required();
  mcheck->add_option("model", model, "Model file (.model)")->required();
  mcheck->add_option("--cap", cap, "Maximum number of valuations per rule");
  mcheck->add_flag("-v,--verbose", verbose, "Print counterexamples as tables");

  auto* eval = app.add_subcommand("eval", "Evaluate a term in a finite model");
  eval->add_option("model", model, "Model file (.model)")->required();
  eval->add_option("term", term1, "Term")->required();
  eval->add_option("--set", sets, "Value of a variable, as name=element");

  auto* alpha = app.add_subcommand("alpha", "Decide alpha-equivalence of two terms");
  alpha->add_option("t1", term1, "First term")->required();
  alpha->add_option("t2", term2, "Second term")->required();
  alpha->add_option("--theory", theory, "Theory whose signature to parse with (default: deduction logic)");

  auto* oracle = app.add_subcommand("oracle", "Replay a script, then check each theorem in every model of a directory");
  oracle->add_option("theory", theory, "Theory file (.th)")->required();
  oracle->add_option("script", script, "Proof script (.proof)")->required();
  oracle->add_option("--models", dir, "Directory of .model files")->required();
  oracle->add_option("--cap", cap, "Maximum number of valuations per rule");
  oracle->add_flag("-v,--verbose", verbose, "Print counterexamples as tables");

  auto* fmt = app.add_subcommand("fmt", "Print a theory, model or proof file in canonical form");
  fmt->add_option("file", file, "File to format")->required();
  fmt->add_option("--theory", theory, "Theory for proof scripts");
  fmt->add_flag("--check", check_only, "Only report whether the file is canonical");
  fmt->add_flag("-i,--in-place", in_place, "Rewrite the file");

  std::vector<const char*> argv{"al"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "ERROR UsageError -:0:0 " << e.what() << '\n';
    return 2;
  }

  try {
    if (check->parsed()) return cmd_check(theory, script, verbose, out);
    if (rules->parsed()) return cmd_rules(theory, out);
    if (mcheck->parsed()) return cmd_model_check(theory, model, cap, verbose, out);
    if (eval->parsed()) return cmd_eval(model, term1, sets, out);
    if (alpha->parsed()) return cmd_alpha(term1, term2, theory, out);
    if (oracle->parsed()) return cmd_oracle(theory, script, dir, cap, verbose, out);
    if (fmt->parsed()) return cmd_fmt(file, theory, check_only, in_place, out);
  } catch (const Error& e) {
    report(e, err);
    return e.code() == Errc::UsageError ? 2 : 1;
  }
  return 2;
}

}  // namespace al::cli
