#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "helpers.hpp"
#include "skexp/errors.hpp"
#include "skexp/term.hpp"

#include <algorithm>
#include <random>

using namespace skexp;
using namespace skexp::test;

TEST_CASE("epsilon order counts odd-multiplicity replicas") {
    CHECK(epsilon_order(mono({{1, 2}, {1, 2}})) == 0);
    CHECK(epsilon_order(mono({{1, 2}, {1, 3}})) == 2);
    CHECK(epsilon_order(mono({{1, 2}, {3, 4}})) == 4);
    CHECK(epsilon_order(mono({{1, 2}})) == 2);
    CHECK(epsilon_order(Monomial()) == 0);
}

TEST_CASE("canonicalization relabels onto a minimal form") {
    CHECK(canonicalize(mono({{1, 3}, {2, 3}})) == mono({{1, 2}, {1, 3}}));
    CHECK(canonicalize(mono({{5, 7}})) == mono({{1, 2}}));
    CHECK(canonicalize(mono({{1, 2}, {1, 2}})) == mono({{1, 2}, {1, 2}}));
}

TEST_CASE("factor pair validation") {
    CHECK_THROWS_AS(Monomial({{2, 2, false}}), InternalError);
    CHECK_THROWS_AS(Monomial({{0, 1, false}}), InternalError);
}

TEST_CASE("term order in quarter units") {
    CHECK(term_order(0, mono({{1, 2}, {1, 2}})).units == 4);
    CHECK(term_order(1, mono({{1, 2}})).units == 8);
    CHECK(term_order(0, mono({{1, 2}, {3, 4}})).units == 8);
    CHECK(term_order(3, Monomial()).units == 12);
}

TEST_CASE("expression merge") {
    Expression e;
    e.add(Term(beta_pow(2), AvgKind::coupled, 0, mono({{1, 2}})));
    CHECK(e.size() == 1);

    SUBCASE("cancellation removes the entry") {
        e.add(Term(-beta_pow(2), AvgKind::coupled, 0, mono({{1, 2}})));
        CHECK(e.empty());
    }
    SUBCASE("distinct npow keeps two entries") {
        e.add(Term(beta_pow(2), AvgKind::coupled, 1, mono({{1, 2}})));
        CHECK(e.size() == 2);
    }
    SUBCASE("kinds are distinct keys") {
        e.add(Term(beta_pow(2), AvgKind::decoupled, 0, mono({{1, 2}})));
        CHECK(e.size() == 2);
    }
}

TEST_CASE("epsilon order is even and canonicalization preserves it") {
    std::mt19937_64 rng(42);
    for (int i = 0; i < 300; ++i) {
        Monomial m = random_monomial(rng);
        int eps = epsilon_order(m);
        CHECK(eps % 2 == 0);
        Monomial c = canonicalize(m);
        CHECK(epsilon_order(c) == eps);
        CHECK(term_order(2, c) == term_order(2, m));
        CHECK(canonicalize(c) == c);
    }
}

TEST_CASE("canonical form is invariant under replica permutations") {
    std::mt19937_64 rng(43);
    std::vector<int> perm(8);
    for (int i = 0; i < 300; ++i) {
        Monomial m = random_monomial(rng, 5, 6);
        std::iota(perm.begin(), perm.end(), 1);
        std::shuffle(perm.begin(), perm.end(), rng);
        CHECK(canonicalize(apply_permutation(m, perm)) == canonicalize(m));
    }
}

TEST_CASE("empty monomial conventions") {
    Monomial empty;
    CHECK(empty.factor_count() == 0);
    CHECK(epsilon_order(empty) == 0);
    CHECK(term_order(2, empty) == QuarterOrder::of_integer(2));
    CHECK(canonicalize(empty) == empty);
}
