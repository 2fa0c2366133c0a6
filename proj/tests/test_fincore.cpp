#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "hvdc/corpus.hpp"
#include "hvdc/fincore.hpp"

using namespace hvdc;

TEST_CASE("finite sets are canonically ordered and deduplicated") {
  FinSet s{"b", "a", "b"};
  CHECK(s.elems == std::vector<Atom>{"a", "b"});
  CHECK(s.contains("a"));
  CHECK_FALSE(s.contains("c"));
  CHECK(FinSet{"a", "b"} == s);
}

TEST_CASE("category validation accepts the corpus") {
  for (const auto& [name, cat] : corpus::standard_categories()) {
    INFO(name);
    CHECK(validate_category(cat).empty());
  }
}

TEST_CASE("category validation flags a broken composite") {
  FinCategory two = corpus::walking_arrow();
  two.comp[{"le:0:1", "le:0:0"}] = "le:0:0";  // a∘id0 must be a, and le:0:0 has wrong cod
  auto report = validate_category(two);
  REQUIRE_FALSE(report.empty());
  bool names_pair = false;
  for (const auto& line : report)
    if (line.find("le:0:1") != std::string::npos && line.find("le:0:0") != std::string::npos)
      names_pair = true;
  CHECK(names_pair);
}

TEST_CASE("category validation flags missing and non-composable entries") {
  FinCategory two = corpus::walking_arrow();
  two.comp.erase({"le:0:1", "le:0:0"});
  CHECK_FALSE(validate_category(two).empty());

  FinCategory two2 = corpus::walking_arrow();
  two2.comp[{"le:0:0", "le:0:1"}] = "le:0:1";  // pair (id0, a) is not composable
  CHECK_FALSE(validate_category(two2).empty());
}

TEST_CASE("opposite category") {
  CHECK(opposite(corpus::terminal_category()) == corpus::terminal_category());

  FinCategory two_op = opposite(corpus::walking_arrow());
  CHECK(validate_category(two_op).empty());
  CHECK(two_op.hom_set("1", "0").contains("le:0:1"));
  CHECK(two_op.hom_set("0", "1").empty());

  FinCategory span = corpus::span_category();
  CHECK(opposite(opposite(span)) == span);
}

TEST_CASE("quotient by generated equivalence") {
  FinSet x{"a", "b", "c"};

  auto r0 = quotient(x, {});
  CHECK(r0.classes == x);
  CHECK(r0.projection("b") == "b");

  auto r1 = quotient(x, {{"a", "b"}});
  CHECK(r1.classes == FinSet{"a", "c"});
  CHECK(r1.projection("b") == "a");

  FinSet y{"a", "b", "c", "d"};
  auto r2 = quotient(y, {{"a", "b"}, {"b", "c"}});
  CHECK(r2.classes == FinSet{"a", "d"});
  CHECK(r2.projection("c") == "a");
  CHECK(r2.projection("d") == "d");

  CHECK_THROWS_AS(quotient(x, {{"a", "nope"}}), std::out_of_range);
}

TEST_CASE("quotient is idempotent on representatives") {
  FinSet y{"a", "b", "c", "d"};
  std::vector<AtomPair> pairs{{"a", "b"}, {"b", "c"}};
  auto r = quotient(y, pairs);
  std::vector<AtomPair> projected;
  for (const auto& [p, q] : pairs) projected.push_back({r.projection(p), r.projection(q)});
  auto r2 = quotient(r.classes, projected);
  CHECK(r2.classes == r.classes);
  for (const Atom& c : r.classes) CHECK(r2.projection(c) == c);
}

TEST_CASE("enumerate_functions counts |Y|^|X|") {
  FinSet empty;
  FinSet two{"a", "b"};
  FinSet three{"p", "q", "r"};
  CHECK(enumerate_functions(empty, three).size() == 1);
  CHECK(enumerate_functions(two, three).size() == 9);
  CHECK(enumerate_functions(FinSet{"x"}, empty).empty());

  // Deterministic order and totality.
  auto fns = enumerate_functions(two, three);
  CHECK(fns.front().table.at("a") == "p");
  CHECK(fns.front().table.at("b") == "p");
  CHECK(fns.back().table.at("a") == "r");
  for (const auto& f : fns) CHECK(validate_function(f).empty());
}

TEST_CASE("functor validation and composition") {
  FinCategory one = corpus::terminal_category();
  FinCategory two = corpus::walking_arrow();

  FinFunctor pick0;
  pick0.source = one;
  pick0.target = two;
  pick0.obj_map = {{"*", "0"}};
  pick0.mor_map = {{"id:*", "le:0:0"}};
  CHECK(validate_functor(pick0).empty());

  FinFunctor bad = pick0;
  bad.mor_map["id:*"] = "le:0:1";
  CHECK_FALSE(validate_functor(bad).empty());

  FinFunctor idtwo = identity_functor(two);
  CHECK(validate_functor(idtwo).empty());
  CHECK(compose_functors(idtwo, pick0) == pick0);
}

TEST_CASE("natural transformation validation") {
  FinCategory one = corpus::terminal_category();
  FinCategory two = corpus::walking_arrow();

  FinFunctor c0, c1;
  c0.source = c1.source = one;
  c0.target = c1.target = two;
  c0.obj_map = {{"*", "0"}};
  c0.mor_map = {{"id:*", "le:0:0"}};
  c1.obj_map = {{"*", "1"}};
  c1.mor_map = {{"id:*", "le:1:1"}};

  NatTransformation t;
  t.source = c0;
  t.target = c1;
  t.components = {{"*", "le:0:1"}};
  CHECK(validate_nat_transformation(t).empty());

  NatTransformation wrong = t;
  wrong.components["*"] = "le:0:0";
  CHECK_FALSE(validate_nat_transformation(wrong).empty());
}

TEST_CASE("enumerate_nat_transformations matches hand counts") {
  FinCategory one = corpus::terminal_category();
  FinCategory two = corpus::walking_arrow();

  FinFunctor id1 = identity_functor(one);
  CHECK(enumerate_nat_transformations(id1, id1).size() == 1);

  FinFunctor c0, c1;
  c0.source = c1.source = one;
  c0.target = c1.target = two;
  c0.obj_map = {{"*", "0"}};
  c0.mor_map = {{"id:*", "le:0:0"}};
  c1.obj_map = {{"*", "1"}};
  c1.mor_map = {{"id:*", "le:1:1"}};

  CHECK(enumerate_nat_transformations(c0, c1).size() == 1);
  CHECK(enumerate_nat_transformations(c1, c0).empty());
}

TEST_CASE("enumerate_nat_transformations agrees with an order-independent search") {
  FinCategory chain = corpus::chain_poset(3);
  FinCategory square = corpus::commuting_square();
  for (const FinFunctor& f : enumerate_functors(chain, square))
    for (const FinFunctor& g : enumerate_functors(chain, square)) {
      auto fast = enumerate_nat_transformations(f, g);
      for (const auto& t : fast) CHECK(validate_nat_transformation(t).empty());

      // Second search: filter the raw component space.
      std::size_t slow = 0;
      std::vector<Atom> obs = chain.objects.elems;
      std::vector<std::vector<Atom>> choices;
      for (const Atom& x : obs)
        choices.push_back(square.hom_set(f.ob(x), g.ob(x)).elems);
      std::vector<std::size_t> pick(obs.size(), 0);
      bool any_empty = false;
      for (const auto& c : choices) any_empty |= c.empty();
      if (!any_empty) {
        while (true) {
          NatTransformation t;
          t.source = f;
          t.target = g;
          for (std::size_t i = 0; i < obs.size(); ++i) t.components[obs[i]] = choices[i][pick[i]];
          if (validate_nat_transformation(t).empty()) ++slow;
          std::size_t i = obs.size();
          while (i > 0 && pick[i - 1] + 1 == choices[i - 1].size()) pick[--i] = 0;
          if (i == 0) break;
          ++pick[i - 1];
        }
      }
      CHECK(fast.size() == slow);
    }
}

TEST_CASE("enumerate_functors finds exactly the functors") {
  FinCategory one = corpus::terminal_category();
  FinCategory two = corpus::walking_arrow();
  FinCategory iso = corpus::walking_iso();

  CHECK(enumerate_functors(one, two).size() == 2);   // pick an object
  CHECK(enumerate_functors(two, two).size() == 3);   // const0, const1, id
  CHECK(enumerate_functors(two, one).size() == 1);

  for (const FinFunctor& f : enumerate_functors(two, iso)) {
    CHECK(validate_functor(f).empty());
  }
  // 2 objects to choose freely, every hom is a singleton: 4 functors.
  CHECK(enumerate_functors(two, iso).size() == 4);

  // Group homomorphisms Z/2 -> Z/3: only the trivial one.
  CHECK(enumerate_functors(corpus::cyclic_group_category(2),
                           corpus::cyclic_group_category(3)).size() == 1);
  // Z/2 -> Z/2: trivial and identity.
  CHECK(enumerate_functors(corpus::cyclic_group_category(2),
                           corpus::cyclic_group_category(2)).size() == 2);
}

TEST_CASE("enumeration budget aborts with a diagnostic") {
  setenv("HVDC_MAX_ENUM", "10", 1);
  FinSet big{"a", "b", "c", "d"};
  CHECK_THROWS_AS(enumerate_functions(big, big), EnumLimitError);
  unsetenv("HVDC_MAX_ENUM");
  CHECK(enumerate_functions(big, big).size() == 256);
}
