#include <catch_amalgamated.hpp>

#include "splitlab/descriptors.hpp"
#include "splitlab/errors.hpp"
#include "splitlab/families.hpp"

using namespace splitlab;

namespace {

using V = std::vector<double>;

SplittingFamily diagonal_family() {
  return SplittingFamily("diagonal", [](std::span<const double> w) { return w.size(); });
}

}  // namespace

TEST_CASE("argmin family on direct examples", "[families][argmin]") {
  auto id = argmin_family(OddMap::identity());
  CHECK(id(V{-1.5, 2.0, -0.3}) == 1);
  CHECK(id(V{}) == 0);

  auto cube = argmin_family(OddMap::cubepoly());
  CHECK(cube(V{-0.5, 2.0}) == 0);  // kappa-walk 0, 0.375, 6.375
  CHECK(id(V{-0.5, 2.0}) == 1);
}

TEST_CASE("argmin tie policies", "[families][argmin]") {
  auto earliest = argmin_family(OddMap::identity(), TiePolicy::earliest);
  CHECK(earliest(V{1.0, -1.0}) == 0);

  auto flag = argmin_family(OddMap::identity(), TiePolicy::flag);
  try {
    flag(V{1.0, -1.0});
    FAIL("expected a tie");
  } catch (const TieDetected& e) {
    CHECK(e.indices() == std::vector<std::size_t>{0, 2});
  }
}

TEST_CASE("double_index shifts then evaluates", "[families]") {
  auto id = argmin_family(OddMap::identity());
  V w{5.0, -1.0, 0.5};
  CHECK(double_index(id, 1, 3, w) == 2);
  CHECK(double_index(id, 2, 2, w) == 2);
  CHECK(double_index(id, 0, 3, w) == id(w));
  CHECK_THROWS_AS(double_index(id, 2, 1, w), std::out_of_range);
  CHECK_THROWS_AS(double_index(id, 0, 4, w), std::out_of_range);
}

TEST_CASE("families that leave [0, n] are rejected", "[families]") {
  SplittingFamily bad("bad", [](std::span<const double> w) { return w.size() + 1; });
  CHECK_THROWS_AS(bad(V{1.0}), std::logic_error);
}

TEST_CASE("stopping iterates of the descending ladder", "[families][rules]") {
  auto ladder = descending_ladder();
  CHECK(stopping_iterates(ladder, V{-1, -2, 3, -0.5}, 4).points() == std::vector<std::size_t>{0, 1, 2});
  CHECK(stopping_iterates(never_rule(), V{-1, 2, 3}, 3).points() == std::vector<std::size_t>{0});
  CHECK(stopping_iterates(constant_rule(1), V{1, 2, 3}, 3).points() ==
        std::vector<std::size_t>{0, 1, 2, 3});
  CHECK(stopping_iterates(constant_rule(2), V{1, 2, 3, 4}, 4).points() ==
        std::vector<std::size_t>{0, 2, 4});
  CHECK_THROWS_AS(stopping_iterates(ladder, V{1}, 2), std::out_of_range);
}

TEST_CASE("bracket is the last iterate", "[families][rules]") {
  auto ladder = descending_ladder();
  CHECK(bracket_eval(ladder, 4, V{-1, -2, 3, -0.5}) == 2);
  CHECK(bracket_eval(ladder, 0, V{-1, -2}) == 0);
  CHECK(bracket_eval(ladder, 3, V{0.5, -0.8, -0.1}) == 3);
  CHECK(stopping_iterates(ladder, V{0.5, -0.8, -0.1}, 3).points() == std::vector<std::size_t>{0, 2, 3});
  auto fam = bracket_family(ladder);
  CHECK(fam(V{-1, -2, 3, -0.5}) == 2);
  CHECK(fam.descriptor() == "bracket:ladder-desc");
}

TEST_CASE("diagonal infimum", "[families]") {
  auto id = argmin_family(OddMap::identity());
  CHECK(diag_inf(id, V{0.5, -0.8, -0.1}) == 2u);
  CHECK_FALSE(diag_inf(id, V{0.3, 0.4}).has_value());
  CHECK(diag_inf(diagonal_family(), V{0.3, 0.4}) == 1u);
  CHECK(diag_inf_rule(id).first_hit(V{0.5, -0.8, -0.1}) == 2u);
}

TEST_CASE("ladder rules and ties", "[families][rules]") {
  CHECK(ascending_ladder().first_hit(V{-1.0, 0.5, 0.7}) == 3u);
  CHECK_FALSE(descending_ladder().first_hit(V{}).has_value());
  CHECK_THROWS_AS(descending_ladder().first_hit(V{1.0, -1.0, -2.0}), TieDetected);
  CHECK(descending_ladder(OddMap::identity(), TiePolicy::earliest).first_hit(V{1.0, -1.0, -2.0}) == 3u);
  CHECK_THROWS_AS(constant_rule(0), std::invalid_argument);
}

TEST_CASE("chooser validation", "[families][chooser]") {
  auto endpoint = endpoint_chooser({OddMap::identity()});
  CHECK(validate_chooser(endpoint, V{0.7, -1.2}, 2) == ChooserValidity::valid);
  CHECK(validate_chooser(first_entry_chooser(), V{0.5, -0.9}, 2) == ChooserValidity::neither_holds);
  CHECK(validate_chooser(first_entry_chooser(), V{-0.5, 0.9}, 2) == ChooserValidity::both_hold);
  CHECK(validate_chooser(endpoint, V{0.5, -0.5}, 2) == ChooserValidity::neither_holds);
  auto lenient = endpoint_chooser({OddMap::identity()}, std::nullopt, TiePolicy::earliest);
  CHECK(validate_chooser(lenient, V{0.5, -0.5}, 2) == ChooserValidity::neither_holds);
  CHECK_THROWS_AS(validate_chooser(endpoint, V{0.5}, 2), std::out_of_range);
}

TEST_CASE("endpoint chooser level selection", "[families][chooser]") {
  // level 1 identity, level 2 cubepoly, then cycling.
  auto mixed = endpoint_chooser({OddMap::identity(), OddMap::cubepoly()});
  CHECK(mixed(1, V{-0.5}));
  CHECK_FALSE(mixed(2, V{0.5, -0.6}));   // -0.375 + 0.384 > 0
  CHECK(mixed(3, V{0.5, -0.6, 0.05}) == (0.5 - 0.6 + 0.05 < 0));
  CHECK(mixed(4, V{0.5, -0.6, 0.2, 0.2}));  // cubepoly again: -0.375 + 0.384 - 0.384

  auto with_default = endpoint_chooser({OddMap::identity()}, OddMap::negation());
  CHECK(with_default(1, V{-0.5}));
  CHECK_FALSE(with_default(2, V{-0.5, -0.1}));
}

TEST_CASE("descriptor vocabulary", "[descriptors]") {
  CHECK(parse_family("argmin:identity", TiePolicy::flag).descriptor() == "argmin:identity");
  CHECK(parse_family("argmin:signpow:1.5", TiePolicy::flag).descriptor() == "argmin:signpow:1.5");
  CHECK(parse_family("bracket:ladder-desc", TiePolicy::flag).descriptor() == "bracket:ladder-desc");
  CHECK(parse_family("bracket:ladder-asc:cubepoly", TiePolicy::flag).descriptor() ==
        "bracket:ladder-asc:cubepoly");
  CHECK(parse_family("jconstruct:identity,cubepoly", TiePolicy::flag).descriptor() ==
        "jconstruct:identity,cubepoly");
  CHECK(parse_family("jconstruct:identity,default=sine", TiePolicy::flag).descriptor() ==
        "jconstruct:identity,default=sine");
  CHECK(parse_rule("const:3", TiePolicy::flag).descriptor() == "const:3");
  CHECK(parse_rule("never", TiePolicy::flag).descriptor() == "never");

  for (const char* bad : {"argmin", "argmin:", "median:identity", "bracket:ladder", "jconstruct:default=sine,identity",
                          "argmin:cosine", "const:0", "jconstruct:"})
    CHECK_THROWS_AS(parse_family(bad, TiePolicy::flag), std::invalid_argument);
}
