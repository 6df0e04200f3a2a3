#include <doctest.h>

#include "properties.hpp"

using namespace testing_support;

TEST_CASE("order rules on random pairs") {
  auto r = order_rules(1, 100);
  CHECK_MESSAGE(r.ok(), r.first_failure);
  CHECK(r.cases >= 300);
}

TEST_CASE("delta does not depend on generators") {
  auto r = delta_generator_independence(2, 20);
  CHECK_MESSAGE(r.ok(), r.first_failure);
}

TEST_CASE("delta locus agrees with pointwise orders") {
  auto r = delta_locus_pointwise(3, 20);
  CHECK_MESSAGE(r.ok(), r.first_failure);
}
