#include "al/kernel.hpp"

#include <type_traits>

#include "al/semantics.hpp"
#include "doctest.h"
#include "generators.hpp"
#include "helpers.hpp"

using namespace al;
using al::test::error_code;
using al::test::rl;
using al::test::tm;
using al::test::tp;

namespace {

static_assert(!std::is_default_constructible_v<Theorem>);
static_assert(!std::is_constructible_v<Theorem, Logic, Rule>);

Substitution sub(std::initializer_list<std::pair<VarKey, std::string_view>> entries) {
  Substitution s;
  for (const auto& [key, text] : entries) s.add(key, tp(text));
  return s;
}

/// Position of the premise whose body is alpha-equivalent to `body`.
std::size_t index_of(const Rule& r, const Term& body) {
  for (std::size_t i = 0; i < r.premises().size(); ++i)
    if (alpha_eq_term(r.premises()[i].named().body, body)) return i;
  FAIL("no such premise");
  return 0;
}

}  // namespace

TEST_SUITE("kernel") {

TEST_CASE("building logics") {
  const Logic& le = logic_E();
  Logic copy = mk_logic(le.signature(), le.rules());
  CHECK(copy.id() == le.id());
  CHECK(copy.rules().size() == 10);

  Logic empty = mk_logic(le.signature(), {});
  CHECK(empty.rules().empty());
  CHECK(error_code([&] { truism(empty, "ModusPonens"); }) == Errc::UnknownRule);
  CHECK(empty.id() != le.id());

  Rule zero = rl("|- 0 == 0");
  CHECK(error_code([&] { mk_logic(le_signature(), {{"Z", zero}}); }) == Errc::UnknownAbstraction);
  CHECK(error_code([&] { mk_logic(le_signature(), {{"A", rl("|- T")}, {"A", rl("|- T => T")}}); }) ==
        Errc::DuplicateRuleName);
  CHECK(error_code([&] { mk_logic(le_signature(), {{"", rl("|- T")}}); }) == Errc::MalformedRule);
}

TEST_CASE("axiomatic extensions") {
  const Logic& le = logic_E();
  CHECK(is_axiomatic_extension(logic_peano(), le));
  CHECK(is_axiomatic_extension(logic_explode(), le));
  CHECK_FALSE(is_axiomatic_extension(le, logic_peano()));
  CHECK(logic_peano().rules().size() == 10 + 9 + 2);

  Logic boom = axiomatic_extension(le, Signature{}, std::vector<std::pair<std::string, Term>>{{"Boom", tm("(forall x. x)")}});
  CHECK(boom.rules().size() == 11);
  REQUIRE(boom.find("Boom") != nullptr);
  CHECK(boom.find("Boom")->rule.is_axiom());
  CHECK(is_axiomatic_extension(boom, le));

  Signature zero;
  zero.add("0", validate_shape({}));
  Logic with_zero = axiomatic_extension(le, zero, std::vector<std::pair<std::string, Term>>{{"Z", tm("0 == 0")}});
  CHECK(with_zero.signature().contains("0"));

  CHECK(error_code([&] {
          axiomatic_extension(le, Signature{}, std::vector<NamedRule>{{"Bad", rl("premise A |- A")}});
        }) == Errc::MalformedRule);
  Signature clash;
  clash.add("imp", validate_shape({{}, {}}));
  CHECK(error_code([&] { axiomatic_extension(le, clash, std::vector<NamedRule>{}); }) == Errc::NameClash);
  CHECK(error_code([&] {
          axiomatic_extension(le, Signature{}, std::vector<NamedRule>{{"Truth1", rl("|- T")}});
        }) == Errc::NameClash);
}

TEST_CASE("truisms") {
  const Logic& le = logic_E();
  CHECK(alpha_eq_rule(truism(le, "ModusPonens").rule(), rl("premise A => B ; premise A |- B")));
  CHECK(alpha_eq_rule(truism(le, "Truth1").rule(), rl("|- T")));
  CHECK(error_code([&] { truism(le, "Foo"); }) == Errc::UnknownRule);
  CHECK(truism(le, "Truth1").logic().id() == le.id());
}

TEST_CASE("substitution steps") {
  const Logic& le = logic_E();
  Theorem i1 = by_subst(truism(le, "Implication1"), sub({{{"B", 0}, "A => A"}}));
  CHECK(alpha_eq_rule(i1.rule(), rl("|- A => ((A => A) => A)")));

  Theorem e2 = by_subst(truism(le, "Equality2"), sub({{{"A", 1}, "[z. A[x] == A[z]]"}}));
  CHECK(alpha_eq_rule(e2.rule(), rl("|- x == y => (A[x] == A[x] => A[x] == A[y])")));

  Theorem same = by_subst(truism(le, "UniversalIntroduction"), Substitution{});
  CHECK(alpha_eq_rule(same.rule(), truism(le, "UniversalIntroduction").rule()));

  CHECK(error_code([&] { by_subst(truism(le, "Truth1"), sub({{{"x", 0}, "0"}})); }) == Errc::SignatureMismatch);
}

TEST_CASE("inference steps") {
  const Logic& le = logic_E();

  // ({A => (B => A), A}, B => A) with the implication discharged by Implication1.
  Theorem mp = by_subst(truism(le, "ModusPonens"), sub({{{"B", 0}, "B => A"}}));
  Theorem imp1 = truism(le, "Implication1");
  Theorem r = infer(mp, index_of(mp.rule(), tm("A => (B => A)")), imp1);
  CHECK(alpha_eq_rule(r.rule(), rl("premise A |- B => A")));

  // Universal introduction discharged by Equality1.
  Theorem ui = by_subst(truism(le, "UniversalIntroduction"), sub({{{"P", 1}, "[z. z == z]"}}));
  CHECK(alpha_eq_rule(ui.rule(), rl("premise [x. x == x] |- (forall x. x == x)")));
  Theorem all = infer(ui, 0, truism(le, "Equality1"));
  CHECK(alpha_eq_rule(all.rule(), rl("|- (forall x. x == x)")));

  CHECK(error_code([&] { infer(mp, 2, imp1); }) == Errc::BadIndex);
  CHECK(error_code([&] { infer(mp, index_of(mp.rule(), tm("A")), imp1); }) == Errc::PremiseMismatch);
  CHECK(error_code([&] { infer(mp, 0, truism(logic_peano(), "Implication1")); }) == Errc::LogicMismatch);
}

TEST_CASE("inference prefixes the discharged premise's binders") {
  Logic l = mk_logic(le_signature(), {{"Major", rl("premise [x. P[x]] |- C")},
                                      {"Minor", rl("premise [y. Q[x, y]] |- P[x]")},
                                      {"Other", rl("premise [y. Q[y, y]] |- P[x]")}});
  Theorem r = infer(truism(l, "Major"), 0, truism(l, "Minor"));
  CHECK(alpha_eq_rule(r.rule(), rl("premise [x y. Q[x, y]] |- C")));

  // The binder is not used by the minor's premise, so nothing is prefixed.
  Theorem s = infer(truism(l, "Major"), 0, truism(l, "Other"));
  CHECK(alpha_eq_rule(s.rule(), rl("premise [y. Q[y, y]] |- C")));

  // The minor's own binder named x must not be confused with the frame's x.
  Logic m = mk_logic(le_signature(), {{"Major", rl("premise [x. P[x]] |- C")},
                                      {"Minor", rl("premise [x. Q[x] => R] |- P[x]")}});
  Theorem t = infer(truism(m, "Major"), 0, truism(m, "Minor"));
  CHECK(alpha_eq_rule(t.rule(), rl("premise [a. Q[a] => R] |- C")));
}

TEST_CASE("inference needs a renaming of the premise frame") {
  Logic l = mk_logic(le_signature(), {{"Major", rl("premise [x. P[x, y]] |- C")},
                                      {"Swapped", rl("|- P[y, x]")},
                                      {"Renamed", rl("|- P[z, y]")},
                                      {"Captured", rl("|- P[y, y]")}});
  // Matching may rename the frame binder x, but only to a name that does not
  // already occur free.
  CHECK(alpha_eq_rule(infer(truism(l, "Major"), 0, truism(l, "Renamed")).rule(), rl("|- C")));
  CHECK(error_code([&] { infer(truism(l, "Major"), 0, truism(l, "Swapped")); }) == Errc::PremiseMismatch);
  CHECK(error_code([&] { infer(truism(l, "Major"), 0, truism(l, "Captured")); }) == Errc::PremiseMismatch);
}

TEST_CASE("checking proof trees") {
  const Logic& le = logic_E();
  // A => A from Implication1, Implication2 and Modus Ponens.
  Proof i2 = Proof::subst(Proof::truism("Implication2"), sub({{{"B", 0}, "A => A"}, {{"C", 0}, "A"}}));
  Proof i1a = Proof::subst(Proof::truism("Implication1"), sub({{{"B", 0}, "A => A"}}));
  Proof i1b = Proof::subst(Proof::truism("Implication1"), sub({{{"B", 0}, "A"}}));
  Proof mp1 = Proof::subst(Proof::truism("ModusPonens"),
                           sub({{{"A", 0}, "A => (A => A) => A"}, {{"B", 0}, "(A => A => A) => A => A"}}));
  Proof mp2 = Proof::subst(Proof::truism("ModusPonens"), sub({{{"A", 0}, "A => A => A"}, {{"B", 0}, "A => A"}}));
  Theorem mp1t = check_proof(le, mp1), mp2t = check_proof(le, mp2);
  Proof s1 = Proof::infer(mp1, index_of(mp1t.rule(), tm("(A => (A => A) => A) => (A => A => A) => A => A")), i2);
  Proof s2 = Proof::infer(s1, 0, i1a);
  Proof s3 = Proof::infer(mp2, index_of(mp2t.rule(), tm("(A => A => A) => A => A")), s2);
  Proof done = Proof::infer(s3, 0, i1b).with_target(rl("|- A => A"));
  CHECK(alpha_eq_rule(check_proof(le, done).rule(), rl("|- A => A")));

  Proof zero = Proof::subst(Proof::truism("Equality1"), sub({{{"x", 0}, "0"}}));
  Logic with_zero = mk_logic(al::test::le_with_zero(), le.rules());
  CHECK(alpha_eq_rule(check_proof(with_zero, zero).rule(), rl("|- 0 == 0")));

  Proof wrong = Proof::subst(Proof::truism("Equality1"), sub({{{"x", 0}, "T"}}))
                    .with_target(rl("|- T == x"))
                    .with_origin("thm bad", SourceSpan{"f.proof", 3, 1, 3, 20});
  try {
    check_proof(le, wrong);
    FAIL("expected TargetMismatch");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::TargetMismatch);
    CHECK(e.message() == "thm bad: expected |- T == x but derived |- T == T");
    REQUIRE(e.span());
    CHECK(e.span()->line == 3);
  }

  // Errors deep in the tree carry the position of the failing node.
  Proof bad_leaf = Proof::truism("Nope").with_origin("thm n", SourceSpan{"f.proof", 7, 1, 7, 5});
  try {
    check_proof(le, Proof::subst(bad_leaf, Substitution{}));
    FAIL("expected UnknownRule");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::UnknownRule);
    REQUIRE(e.span());
    CHECK(e.span()->line == 7);
  }
}

TEST_CASE("shared sub-proofs") {
  // t proves T and is used three times; all proves (forall x. T) and is used twice.
  Proof t = Proof::truism("Truth1");
  Proof all = Proof::infer(Proof::subst(Proof::truism("UniversalIntroduction"), sub({{{"P", 1}, "[x. T]"}})), 0, t);
  Proof k = Proof::subst(Proof::truism("Implication1"), sub({{{"A", 0}, "(forall x. T)"}, {{"B", 0}, "T"}}));
  Proof mp1 = Proof::subst(Proof::truism("ModusPonens"), sub({{{"A", 0}, "(forall x. T)"}, {{"B", 0}, "T => (forall x. T)"}}));
  Proof t_all = Proof::infer(Proof::infer(mp1, index_of(check_proof(logic_E(), mp1).rule(), tm("(forall x. T)")), all), 0, k);
  Proof mp2 = Proof::subst(Proof::truism("ModusPonens"), sub({{{"A", 0}, "T"}, {{"B", 0}, "(forall x. T)"}}));
  Proof back = Proof::infer(Proof::infer(mp2, index_of(check_proof(logic_E(), mp2).rule(), tm("T")), t), 0, t_all).with_target(rl("|- (forall x. T)"));

  ProofChecker checker(logic_E());
  CHECK(alpha_eq_rule(checker.check(back).rule(), rl("|- (forall x. T)")));
  CHECK(checker.check(t).rule().encode() == rl("|- T").encode());
  CHECK(alpha_eq_rule(checker.check(all).rule(), checker.check(back).rule()));
}

TEST_CASE("explosion") {
  const Logic& boom = logic_explode();
  Theorem all = truism(boom, "Explode");
  CHECK(alpha_eq_rule(explosion(boom, all, tm("x")).rule(), rl("|- x")));
  Term f = tm("(forall x. x == x) => (forall x. x)");
  CHECK(alpha_eq_rule(explosion(boom, all, f).rule(), Rule::axiom(f)));

  const Logic& le = logic_E();
  CHECK(error_code([&] { explosion(le, truism(le, "Truth1"), tm("x")); }) == Errc::NotAnExtension);
  CHECK(error_code([&] { explosion(le, all, tm("x")); }) == Errc::LogicMismatch);
  Logic bare = mk_logic(le_signature(), {{"Explode", rl("|- (forall x. x)")}});
  CHECK(error_code([&] { explosion(bare, truism(bare, "Explode"), tm("x")); }) == Errc::NotAnExtension);
}

TEST_CASE("canonical substitution leaves theorems unchanged") {
  for (const Logic* logic : {&logic_E(), &logic_peano()}) {
    for (const auto& nr : logic->rules()) {
      Theorem t = truism(*logic, nr.name);
      CHECK(alpha_eq_rule(by_subst(t, canonical_substitution(free_variables(t.rule()))).rule(), t.rule()));
    }
  }
}

TEST_CASE("discharging with an axiom removes exactly one premise") {
  const Logic& boom = logic_explode();
  Theorem all = truism(boom, "Explode");
  al::test::Generator gen(41, le_signature());
  for (int i = 0; i < 200; ++i) {
    std::string rule = i % 2 ? "ModusPonens" : "UniversalIntroduction";
    Substitution s;
    if (rule == "ModusPonens") {
      s.add({"A", 0}, Template::of(gen.term(3)));
      s.add({"B", 0}, Template::of(gen.term(3)));
    } else {
      s.add({"P", 1}, gen.tmpl(1, 3));
    }
    Theorem major = by_subst(truism(boom, rule), s);
    for (std::size_t k = 0; k < major.rule().premises().size(); ++k) {
      const Premise& p = major.rule().premises()[k];
      Theorem minor = explosion(boom, all, p.named().body);
      CHECK(infer(major, k, minor).rule().premises().size() == major.rule().premises().size() - 1);
    }
  }
}

TEST_CASE("substitution instances of deduction logic are valid in both models") {
  const Logic& le = logic_E();
  Model two = standard_two_element_model();
  Model one = degenerate_model(le.signature());
  al::test::Generator gen(42, le_signature());
  for (int i = 0; i < 200; ++i) {
    const NamedRule& nr = le.rules()[gen.below(le.rules().size())];
    Substitution s;
    for (const auto& key : free_variables(nr.rule))
      if (gen.coin()) s.add(key, gen.tmpl(key.arity, 2));
    Theorem t = by_subst(truism(le, nr.name), s);
    CHECK(check_rule_valid(two, t.rule()).valid);
    CHECK(check_rule_valid(one, t.rule()).valid);
  }
}

}  // TEST_SUITE
