#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>

#include "factorlab/zerosum.hpp"

#include "../common/test_oracles.hpp"

using namespace factorlab;
using abelian::FiniteAbelianGroup;
using abelian::GroupElement;
using zerosum::ZsSequence;

namespace {

ZsSequence seq(const FiniteAbelianGroup& g, const std::string& literal) { return zerosum::parse_sequence(g, literal); }

}  // namespace

TEST_SUITE("zerosum") {

TEST_CASE("sigma") {
    auto c3 = abelian::parse_group("3");
    CHECK(zerosum::sigma(ZsSequence::empty(c3)).is_zero());
    CHECK(zerosum::sigma(seq(c3, "(1)*(2)")).is_zero());
    auto c2c2 = abelian::parse_group("2,2");
    CHECK(zerosum::sigma(seq(c2c2, "(1,0)*(0,1)*(1,1)")).is_zero());
    CHECK(zerosum::sigma(seq(c3, "(1)*(1)")) == abelian::parse_element(c3, "(2)"));
}

TEST_CASE("sequence literals round-trip") {
    auto c3 = abelian::parse_group("3");
    auto s = seq(c3, "(1)^3*(2)^3");
    CHECK(s.length() == 6);
    CHECK(s.to_literal() == "(1)^3*(2)^3");
    CHECK(zerosum::parse_sequence(c3, s.to_literal()) == s);
    CHECK(ZsSequence::empty(c3).to_literal() == "[]");
    CHECK(zerosum::parse_sequence(c3, "[]").is_empty());
    CHECK_THROWS_AS(zerosum::parse_sequence(c3, "(1)^0"), InvalidArgument);
}

TEST_CASE("is_atom examples") {
    auto c2 = abelian::parse_group("2");
    CHECK(zerosum::is_atom(seq(c2, "(1)^2")));
    auto c3 = abelian::parse_group("3");
    CHECK_FALSE(zerosum::is_atom(seq(c3, "(1)^3*(2)^3")));  // contains (1)*(2)
    CHECK(zerosum::is_atom(seq(c3, "(0)")));
    CHECK_FALSE(zerosum::is_atom(seq(c3, "(0)^2")));
    CHECK_FALSE(zerosum::is_atom(seq(c3, "(0)*(1)*(2)")));
    CHECK_FALSE(zerosum::is_atom(seq(c3, "(1)")));  // not zero-sum
}

TEST_CASE("is_atom agrees with the direct minimality check") {
    for (const char* literal : {"4", "2,2", "5"}) {
        auto g = abelian::parse_group(literal);
        for (const auto& s : testing::all_sequences(g, 4)) CHECK(zerosum::is_atom(s) == testing::brute_is_atom(s));
    }
}

TEST_CASE("enumerate_atoms matches the exhaustive scan on small groups") {
    struct Case {
        const char* group;
        std::uint32_t bound;
    };
    for (const Case& c : {Case{"2", 4}, Case{"3", 4}, Case{"4", 4}, Case{"5", 5}, Case{"2,2", 4},
                          Case{"6", 6}, Case{"2,4", 5}, Case{"3,3", 5}}) {
        CAPTURE(c.group);
        auto g = abelian::parse_group(c.group);
        auto table = zerosum::enumerate_atoms(g, c.bound);
        CHECK(table.complete);
        auto expected = testing::brute_force_atoms(g, c.bound);
        REQUIRE(table.atoms.size() == expected.size());
        CHECK(table.atoms == expected);
    }
}

TEST_CASE("frozen atom tables") {
    auto c2 = abelian::parse_group("2");
    auto t2 = zerosum::enumerate_atoms(c2, 4);
    REQUIRE(t2.atoms.size() == 2);
    CHECK(t2.atoms[0] == seq(c2, "(0)"));
    CHECK(t2.atoms[1] == seq(c2, "(1)^2"));

    auto c3 = abelian::parse_group("3");
    auto t3 = zerosum::enumerate_atoms(c3, 4);
    REQUIRE(t3.atoms.size() == 4);
    CHECK(t3.atoms[0] == seq(c3, "(0)"));
    CHECK(t3.atoms[1] == seq(c3, "(1)*(2)"));
    CHECK(t3.atoms[2] == seq(c3, "(1)^3"));
    CHECK(t3.atoms[3] == seq(c3, "(2)^3"));

    auto c2c2 = abelian::parse_group("2,2");
    auto t22 = zerosum::enumerate_atoms(c2c2, 4);
    CHECK(t22.atoms.size() == 5);

    // atoms are listed by nondecreasing length
    for (std::size_t i = 1; i < t3.atoms.size(); ++i) CHECK(t3.atoms[i - 1].length() <= t3.atoms[i].length());

    auto trivial = FiniteAbelianGroup{};
    auto tt = zerosum::enumerate_atoms(trivial, 1);
    REQUIRE(tt.atoms.size() == 1);
    CHECK(tt.atoms[0].length() == 1);
}

TEST_CASE("davenport constants") {
    for (std::int64_t n = 1; n <= 8; ++n) {
        auto g = FiniteAbelianGroup{{n}};
        CHECK(zerosum::davenport_constant(g) == static_cast<std::uint32_t>(n));
    }
    CHECK(zerosum::davenport_constant(abelian::parse_group("2,2")) == 3);
    CHECK(zerosum::davenport_constant(abelian::parse_group("3,3")) == 5);
    CHECK(zerosum::davenport_constant(FiniteAbelianGroup{}) == 1);

    // brute-force cross-check: D = longest atom in the exhaustive scan
    for (const char* literal : {"4", "6", "2,2", "2,4"}) {
        auto g = abelian::parse_group(literal);
        std::uint32_t brute = 0;
        for (const auto& a : testing::brute_force_atoms(g, static_cast<std::uint32_t>(g.order())))
            brute = std::max<std::uint32_t>(brute, static_cast<std::uint32_t>(a.length()));
        CHECK(zerosum::davenport_constant(g) == brute);
    }

    zerosum::DavenportOptions opts;
    opts.group_order_cap = 4;
    CHECK_THROWS_AS(zerosum::davenport_constant(abelian::parse_group("7"), opts), BudgetExceeded);
}

TEST_CASE("atom budget carries a partial table") {
    auto g = abelian::parse_group("3,3");
    zerosum::AtomEnumOptions opts;
    opts.node_budget = 5;
    try {
        zerosum::enumerate_atoms(g, 5, opts);
        FAIL("expected AtomBudgetExceeded");
    } catch (const zerosum::AtomBudgetExceeded& e) {
        CHECK_FALSE(e.partial.complete);
        CHECK(e.partial.group == g);
    }
}

TEST_CASE("factorizations") {
    auto c3 = abelian::parse_group("3");
    auto table = zerosum::full_atom_table(c3);

    auto empty = zerosum::factorizations_zs(ZsSequence::empty(c3), table);
    REQUIRE(empty.size() == 1);
    CHECK(empty[0].empty());

    auto fs = zerosum::factorizations_zs(seq(c3, "(1)^3*(2)^3"), table);
    REQUIRE(fs.size() == 2);
    // {(1)*(2) three times} and {(1)^3, (2)^3}
    CHECK(fs[0] == std::vector<ZsSequence>{seq(c3, "(1)*(2)"), seq(c3, "(1)*(2)"), seq(c3, "(1)*(2)")});
    CHECK(fs[1] == std::vector<ZsSequence>{seq(c3, "(1)^3"), seq(c3, "(2)^3")});

    auto c2 = abelian::parse_group("2");
    auto table2 = zerosum::full_atom_table(c2);
    auto f2 = zerosum::factorizations_zs(seq(c2, "(1)^4"), table2);
    REQUIRE(f2.size() == 1);
    CHECK(f2[0] == std::vector<ZsSequence>{seq(c2, "(1)^2"), seq(c2, "(1)^2")});

    CHECK_THROWS_AS(zerosum::factorizations_zs(seq(c3, "(1)"), table), InvalidArgument);
}

TEST_CASE("factorizations match the block-partition brute force") {
    std::mt19937_64 rng(20240811);
    for (const char* literal : {"3", "4", "2,2", "5"}) {
        auto g = abelian::parse_group(literal);
        auto table = zerosum::full_atom_table(g);
        auto elements = abelian::enumerate_elements(g);
        int tested = 0;
        while (tested < 25) {
            std::vector<GroupElement> elems;
            auto len = 2 + rng() % 6;
            for (std::uint64_t i = 0; i < len; ++i) elems.push_back(elements[rng() % elements.size()]);
            auto s = ZsSequence::from_elements(g, elems);
            if (!s.is_zero_sum()) continue;
            ++tested;
            auto got = zerosum::factorizations_zs(s, table);
            auto expected = testing::brute_force_factorizations(s);
            CHECK(std::set<std::vector<ZsSequence>>(got.begin(), got.end()) == expected);
        }
    }
}

TEST_CASE("lengths and distances") {
    auto c3 = abelian::parse_group("3");
    auto table = zerosum::full_atom_table(c3);
    auto s = seq(c3, "(1)^3*(2)^3");
    CHECK(zerosum::lengths_zs(s, table) == std::set<std::uint64_t>{2, 3});
    CHECK(zerosum::distances_zs(s, table) == std::set<std::uint64_t>{1});

    CHECK(zerosum::lengths_zs(seq(c3, "(1)*(2)"), table) == std::set<std::uint64_t>{1});
    CHECK(zerosum::distances_zs(seq(c3, "(1)*(2)"), table).empty());

    auto c2 = abelian::parse_group("2");
    auto table2 = zerosum::full_atom_table(c2);
    CHECK(zerosum::lengths_zs(seq(c2, "(1)^4"), table2) == std::set<std::uint64_t>{2});
    CHECK(zerosum::lengths_zs(ZsSequence::empty(c2), table2) == std::set<std::uint64_t>{0});
    CHECK_THROWS_AS(zerosum::lengths_zs(seq(c3, "(1)"), table), InvalidArgument);
}

TEST_CASE("length-set bounds invariant") {
    for (const char* literal : {"3", "2,2", "4"}) {
        auto g = abelian::parse_group(literal);
        auto table = zerosum::full_atom_table(g);
        auto d = zerosum::davenport_constant(g);
        for (const auto& s : testing::all_sequences(g, 7)) {
            if (!s.is_zero_sum()) continue;
            auto ls = zerosum::lengths_zs(s, table);
            REQUIRE_FALSE(ls.empty());
            for (auto l : ls) {
                CHECK(l <= s.length());
                CHECK(s.length() <= l * d);
            }
        }
    }
}

TEST_CASE("multiplicativity of length sets") {
    auto g = abelian::parse_group("2,2");
    auto table = zerosum::full_atom_table(g);
    std::mt19937_64 rng(7);
    auto elements = abelian::enumerate_elements(g);
    int tested = 0;
    while (tested < 40) {
        std::vector<GroupElement> ea, eb;
        for (std::uint64_t i = 0; i < 2 + rng() % 4; ++i) ea.push_back(elements[rng() % 4]);
        for (std::uint64_t i = 0; i < 2 + rng() % 4; ++i) eb.push_back(elements[rng() % 4]);
        auto sa = ZsSequence::from_elements(g, ea);
        auto sb = ZsSequence::from_elements(g, eb);
        if (!sa.is_zero_sum() || !sb.is_zero_sum()) continue;
        ++tested;
        auto la = zerosum::lengths_zs(sa, table);
        auto lb = zerosum::lengths_zs(sb, table);
        auto lab = zerosum::lengths_zs(sa.concat(sb), table);
        for (auto x : la)
            for (auto y : lb) CHECK(lab.count(x + y) == 1);
    }
}

TEST_CASE("half-factoriality boundary") {
    // |G| <= 2: every zero-sum sequence has a single length
    for (const char* literal : {"", "2"}) {
        auto g = abelian::parse_group(literal);
        auto table = zerosum::full_atom_table(g);
        for (const auto& s : testing::all_sequences(g, 8))
            if (s.is_zero_sum()) CHECK(zerosum::lengths_zs(s, table).size() == 1);
    }
    // |G| >= 3: a witness with two lengths exists within bound 6
    for (const char* literal : {"3", "2,2"}) {
        auto g = abelian::parse_group(literal);
        auto table = zerosum::full_atom_table(g);
        bool witness = false;
        for (const auto& s : testing::all_sequences(g, 6))
            if (s.is_zero_sum() && zerosum::lengths_zs(s, table).size() >= 2) witness = true;
        CHECK(witness);
    }
}

TEST_CASE("monoid delta and U_k") {
    auto d2 = zerosum::monoid_delta(abelian::parse_group("2"), 10);
    CHECK(d2.values.empty());
    CHECK(d2.length_bound == 10);

    auto d3 = zerosum::monoid_delta(abelian::parse_group("3"), 12);
    CHECK(d3.values == std::set<std::uint64_t>{1});

    auto d4 = zerosum::monoid_delta(abelian::parse_group("4"), 8);
    REQUIRE_FALSE(d4.values.empty());
    CHECK(*d4.values.begin() == 1);

    auto d22 = zerosum::monoid_delta(abelian::parse_group("2,2"), 8);
    REQUIRE_FALSE(d22.values.empty());
    CHECK(*d22.values.begin() == 1);

    auto u2 = zerosum::union_k(abelian::parse_group("3"), 2, 12);
    CHECK(u2.values.count(2) == 1);
    CHECK(u2.values.count(3) == 1);
}

TEST_CASE("classify_lengths") {
    using K = zerosum::LengthClassification::Kind;
    CHECK(zerosum::classify_lengths({3}).kind == K::Singleton);
    auto interval = zerosum::classify_lengths({2, 3, 4});
    CHECK(interval.kind == K::Interval);
    CHECK(interval.difference == 1);
    auto ap = zerosum::classify_lengths({2, 5, 8});
    CHECK(ap.kind == K::ArithmeticProgression);
    CHECK(ap.difference == 3);
    CHECK(zerosum::classify_lengths({1, 2, 4}).kind == K::Other);
    CHECK_THROWS_AS(zerosum::classify_lengths({}), InvalidArgument);
}

TEST_CASE("support restriction") {
    auto c4 = abelian::parse_group("4");
    zerosum::AtomEnumOptions opts;
    opts.support = std::vector<GroupElement>{abelian::parse_element(c4, "(1)")};
    auto table = zerosum::enumerate_atoms(c4, 4, opts);
    REQUIRE(table.atoms.size() == 1);
    CHECK(table.atoms[0] == seq(c4, "(1)^4"));

    zerosum::DavenportOptions dopts;
    dopts.support = opts.support;
    CHECK(zerosum::davenport_constant(c4, dopts) == 4);

    // sequences outside the support are rejected
    CHECK_THROWS_AS(zerosum::lengths_zs(seq(c4, "(2)^2"), table), InvalidArgument);
}

TEST_CASE("atom cache round-trips") {
    auto dir = std::filesystem::temp_directory_path() / "factorlab-test-cache";
    std::filesystem::remove_all(dir);
    auto g = abelian::parse_group("3,3");
    auto fresh = zerosum::full_atom_table_cached(g, dir.string());
    REQUIRE(std::filesystem::exists(dir));
    auto cached = zerosum::full_atom_table_cached(g, dir.string());
    CHECK(fresh.atoms == cached.atoms);
    CHECK(fresh.max_length == cached.max_length);
    CHECK(cached.complete);

    // a cached full table serves smaller bounds by filtering
    auto filtered = zerosum::load_atom_table(dir.string(), g, 2);
    REQUIRE(filtered.has_value());
    for (const auto& a : filtered->atoms) CHECK(a.length() <= 2);
    CHECK(filtered->complete);

    // corrupt cache entries are treated as misses
    {
        std::ofstream out(dir / "atoms-3,3.json");
        out << "{ not json";
    }
    CHECK_FALSE(zerosum::load_atom_table(dir.string(), g, 9).has_value());
    std::filesystem::remove_all(dir);
}

}  // TEST_SUITE
