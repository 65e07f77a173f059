#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "abe/shares.hpp"
#include "test_util.hpp"

using namespace abe;
using namespace abe::test;

namespace {

ParamsPtr small_params() { return GroupParams::with_prime(101, BackendId::Transparent); }

ParamsPtr big_params() {
    static ParamsPtr params = [] {
        Bytes seed(32, 0x01);
        return group_setup(61, BackendId::Transparent,
                           std::span<const std::uint8_t>(seed));
    }();
    return params;
}

}  // namespace

TEST_CASE("AND splits additively, last child forced") {
    auto p = small_params();
    auto u = Universe::parse("a1: x\na2: x");
    Policy w = normalize(parse_policy("a1=x AND a2=x", u));
    ScriptedRng rng({3});
    ShareMap shares = assign_shares(w, Scalar(p, 10), rng);
    CHECK(shares.share(0).value() == 3);
    CHECK(shares.share(1).value() == 7);
}

TEST_CASE("OR copies the node value to every child") {
    auto p = small_params();
    auto u = Universe::parse("a1: x\na2: x");
    Policy w = normalize(parse_policy("a1=x OR a2=x", u));
    SeededRng rng(1);
    ShareMap shares = assign_shares(w, Scalar(p, 10), rng);
    CHECK(shares.share(0).value() == 10);
    CHECK(shares.share(1).value() == 10);
}

TEST_CASE("nested AND over OR hand vector") {
    auto p = small_params();
    auto u = Universe::parse("a1: x\na2: x\na3: x");
    Policy w = normalize(parse_policy("a1=x AND (a2=x OR a3=x)", u));
    ScriptedRng rng({4});
    ShareMap shares = assign_shares(w, Scalar(p, 10), rng);
    CHECK(shares.share(0).value() == 4);
    CHECK(shares.share(1).value() == 6);
    CHECK(shares.share(2).value() == 6);
}

TEST_CASE("assign_shares requires a normalized policy") {
    auto p = small_params();
    auto u = two_attr_universe();
    Policy w = parse_policy("dept=cs", u);
    SeededRng rng(2);
    CHECK_THROWS_AS(assign_shares(w, Scalar(p, 5), rng), Error);
}

TEST_CASE("assign_shares is deterministic per seed and covers all leaves") {
    auto p = big_params();
    SeededRng meta(31);
    for (int i = 0; i < 50; ++i) {
        auto u = random_universe(meta, 1 + meta.next_u64() % 6, 3);
        Policy w = normalize(random_policy(u, meta));
        Scalar s = random_scalar(p, meta);
        SeededRng r1(1000 + i), r2(1000 + i);
        ShareMap a = assign_shares(w, s, r1);
        ShareMap b = assign_shares(w, s, r2);
        REQUIRE(a.shares.size() == u->attr_count());
        for (std::size_t k = 0; k < a.shares.size(); ++k)
            CHECK(a.shares[k] == b.shares[k]);
    }
}

TEST_CASE("pruned sets of simple policies") {
    auto u = Universe::parse("a1: x, y\na2: x, y");
    auto l = AttributeList::parse(u, "a1=x,a2=x");

    Policy w_and = parse_policy("a1=x AND a2=x", u);
    auto sets = pruned_sets(w_and, l);
    REQUIRE(sets.size() == 1);
    CHECK(sets[0] == 0b11);

    Policy w_or = parse_policy("a1=x OR a2=x", u);
    sets = pruned_sets(w_or, l);
    REQUIRE(sets.size() == 2);
    CHECK(sets[0] == 0b01);
    CHECK(sets[1] == 0b10);

    auto l_miss = AttributeList::parse(u, "a1=y,a2=y");
    CHECK(pruned_sets(w_and, l_miss).empty());
}

TEST_CASE("pruned sets non-empty iff satisfied") {
    SeededRng rng(47);
    for (int i = 0; i < 300; ++i) {
        auto u = random_universe(rng, 1 + rng.next_u64() % 6, 3);
        Policy w = random_policy(u, rng);
        AttributeList l = random_attribute_list(u, rng);
        CHECK(pruned_sets(w, l).empty() == !satisfies(l, w));
    }
}

TEST_CASE("verify_reconstruction hand vectors") {
    auto p = small_params();
    ShareMap and_shares{Scalar(p, 10), {Scalar(p, 3), Scalar(p, 7)}};
    CHECK(verify_reconstruction(and_shares, 0b11));
    CHECK_FALSE(verify_reconstruction(and_shares, 0b01));

    ShareMap or_shares{Scalar(p, 10), {Scalar(p, 10), Scalar(p, 10)}};
    CHECK(verify_reconstruction(or_shares, 0b01));
    CHECK_FALSE(verify_reconstruction(or_shares, 0b11));  // 20 != 10 mod 101

    CHECK_THROWS_AS(verify_reconstruction(and_shares, 0b100), Error);
}

TEST_CASE("every pruned set of every satisfying list reconstructs the secret") {
    auto p = big_params();
    SeededRng rng(53);
    int checked = 0;
    for (int i = 0; i < 1000; ++i) {
        auto u = random_universe(rng, 1 + rng.next_u64() % 6, 3);
        Policy w = normalize(random_policy(u, rng, 4));
        Scalar s = random_scalar(p, rng);
        ShareMap shares = assign_shares(w, s, rng);
        for (const auto& l : all_attribute_lists(u)) {
            if (!satisfies(l, w)) continue;
            for (PrunedSet set : pruned_sets(w, l)) {
                CHECK(verify_reconstruction(shares, set));
                ++checked;
            }
        }
    }
    CHECK(checked > 1000);
}

TEST_CASE("strict subsets of AND pruned sets almost never reconstruct") {
    auto p = big_params();
    SeededRng rng(59);
    int hits = 0, tries = 0;
    for (int i = 0; i < 500; ++i) {
        auto u = random_universe(rng, 2 + rng.next_u64() % 4, 2);
        // AND over all attributes: the full set is the only pruned set
        std::vector<PolicyNode> leaves;
        for (std::size_t a = 0; a < u->attr_count(); ++a)
            leaves.push_back(PolicyNode::leaf(a, {0}));
        Policy w(u, PolicyNode::and_node(std::move(leaves)), false);
        ShareMap shares = assign_shares(normalize(w), random_scalar(p, rng), rng);
        PrunedSet full = (PrunedSet{1} << u->attr_count()) - 1;
        for (PrunedSet sub = 1; sub < full; ++sub) {
            ++tries;
            if (verify_reconstruction(shares, sub)) ++hits;
        }
    }
    // collision probability per try ~ 1/p with p >= 2^60
    CHECK(tries > 1000);
    CHECK(hits == 0);
}
