#include <doctest.h>

#include <numeric>

#include "factorlab/factor_core.hpp"
#include "factorlab/zerosum.hpp"

#include "../common/test_oracles.hpp"

using namespace factorlab;
using factor_core::EngineOptions;
using factor_core::FactorEngine;
using zerosum::ZsSequence;

namespace {

/// Free commutative monoid on two letters: elements (m, n), atoms x = (1,0)
/// and y = (0,1). Rigid factorizations of (m, n) are the interleavings, so
/// their number is binomial(m+n, m) and the only length is m+n.
struct GridOracle {
    using Element = std::pair<std::uint32_t, std::uint32_t>;
    using Key = Element;

    std::vector<int> objects() const { return {0}; }
    int source(const Element&) const { return 0; }
    int target(const Element&) const { return 0; }
    Element identity() const { return {0, 0}; }
    Element compose(const Element& a, const Element& b) const { return {a.first + b.first, a.second + b.second}; }
    bool is_unit(const Element& a) const { return a.first == 0 && a.second == 0; }
    Key canonical_key(const Element& a) const { return a; }
    std::uint64_t size_measure(const Element& a) const { return a.first + a.second; }
    std::string describe(const Element& a) const {
        return "(" + std::to_string(a.first) + "," + std::to_string(a.second) + ")";
    }
    std::vector<std::pair<Element, Element>> atom_left_divisors(const Element& a) const {
        std::vector<std::pair<Element, Element>> out;
        if (a.first > 0) out.push_back({{1, 0}, {a.first - 1, a.second}});
        if (a.second > 0) out.push_back({{0, 1}, {a.first, a.second - 1}});
        return out;
    }
};

/// The zero-sum monoid B(G) itself as a divisor oracle: a reduced commutative
/// instance whose rigid factorizations are the ordered factorizations.
struct ZsOracle {
    using Element = ZsSequence;
    using Key = std::vector<std::pair<std::uint32_t, std::uint64_t>>;

    zerosum::AtomTable table;

    std::vector<int> objects() const { return {0}; }
    int source(const Element&) const { return 0; }
    int target(const Element&) const { return 0; }
    Element identity() const { return ZsSequence::empty(table.group); }
    Element compose(const Element& a, const Element& b) const { return a.concat(b); }
    bool is_unit(const Element& a) const { return a.is_empty(); }
    Key canonical_key(const Element& a) const { return a.indexed(); }
    std::uint64_t size_measure(const Element& a) const { return a.length(); }
    std::string describe(const Element& a) const { return a.to_literal(); }
    std::vector<std::pair<Element, Element>> atom_left_divisors(const Element& a) const {
        std::vector<std::pair<Element, Element>> out;
        for (const auto& atom : table.atoms)
            if (a.contains(atom)) out.push_back({atom, a.remove(atom)});
        return out;
    }
};

/// Deliberately broken oracle: lists the same divisor class twice.
struct DuplicatingOracle : GridOracle {
    std::vector<std::pair<Element, Element>> atom_left_divisors(const Element& a) const {
        auto out = GridOracle::atom_left_divisors(a);
        if (!out.empty()) out.push_back(out.front());
        return out;
    }
};

std::uint64_t binomial(std::uint32_t n, std::uint32_t k) {
    std::uint64_t r = 1;
    for (std::uint32_t i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
    return r;
}

}  // namespace

TEST_SUITE("factor_core") {

TEST_CASE("units factor trivially") {
    FactorEngine<GridOracle> engine{GridOracle{}};
    auto zs = engine.rigid_factorizations({0, 0});
    REQUIRE(zs.size() == 1);
    CHECK(zs[0].length() == 0);
    CHECK(zs[0].unit.has_value());
    CHECK(engine.lengths({0, 0}) == std::set<std::uint64_t>{0});
}

TEST_CASE("grid monoid: counts are binomial, lengths are degenerate") {
    FactorEngine<GridOracle> engine{GridOracle{}};
    for (std::uint32_t m = 0; m <= 5; ++m)
        for (std::uint32_t n = 0; n <= 5; ++n) {
            if (m + n == 0) continue;
            auto zs = engine.rigid_factorizations({m, n});
            CHECK(zs.size() == binomial(m + n, m));
            for (const auto& z : zs) CHECK(z.length() == m + n);
            CHECK(engine.lengths({m, n}) == std::set<std::uint64_t>{m + n});
            CHECK(engine.distances({m, n}).empty());
        }
}

TEST_CASE("zero-sum oracle reproduces zerosum lengths through the engine") {
    auto g = abelian::parse_group("3");
    ZsOracle oracle{zerosum::full_atom_table(g)};
    FactorEngine<ZsOracle> engine{oracle};

    auto s = zerosum::parse_sequence(g, "(1)^3*(2)^3");
    auto zs = engine.rigid_factorizations(s);
    // ordered factorizations: {(1)(2)}^3 in one order, {(1)^3, (2)^3} in two
    CHECK(zs.size() == 3);
    CHECK(engine.lengths(s) == zerosum::lengths_zs(s, oracle.table));
    CHECK(engine.lengths(s) == std::set<std::uint64_t>{2, 3});
    CHECK(engine.distances(s) == std::set<std::uint64_t>{1});

    // engine lengths agree with the commutative solver across small inputs
    for (const auto& t : testing::all_sequences(g, 6)) {
        if (!t.is_zero_sum()) continue;
        CHECK(engine.lengths(t) == zerosum::lengths_zs(t, oracle.table));
    }
}

TEST_CASE("memoized and non-memoized DFS agree") {
    auto g = abelian::parse_group("2,2");
    ZsOracle oracle{zerosum::full_atom_table(g)};
    FactorEngine<ZsOracle> memo{oracle, EngineOptions{100000, true, true}};
    FactorEngine<ZsOracle> plain{oracle, EngineOptions{100000, false, true}};
    for (const auto& s : testing::all_sequences(g, 6)) {
        if (!s.is_zero_sum()) continue;
        CHECK(memo.lengths(s) == plain.lengths(s));
        CHECK(memo.rigid_factorizations(s).size() == plain.rigid_factorizations(s).size());
    }
}

TEST_CASE("factorization cap raises BudgetExceeded") {
    FactorEngine<GridOracle> engine{GridOracle{}, EngineOptions{5, true, true}};
    CHECK_THROWS_AS(engine.rigid_factorizations({4, 4}), BudgetExceeded);
    // the length DFS is unaffected by the cap
    CHECK(engine.lengths({4, 4}) == std::set<std::uint64_t>{8});
}

TEST_CASE("duplicate divisor classes are rejected") {
    FactorEngine<DuplicatingOracle> engine{DuplicatingOracle{}};
    CHECK_THROWS_AS(engine.rigid_factorizations({2, 1}), OracleContractViolation);
}

TEST_CASE("verify_transfer accepts the identity transfer of B(C3)") {
    auto g = abelian::parse_group("3");
    auto table = zerosum::full_atom_table(g);
    ZsOracle oracle{table};

    std::vector<ZsSequence> samples;
    for (const auto& s : testing::all_sequences(g, 5))
        if (s.is_zero_sum()) samples.push_back(s);
    samples.push_back(ZsSequence::empty(g));

    // theta: a zero-sum sequence maps to itself (classes of a trivial ideal
    // structure); the identity is a transfer homomorphism B(G) -> B(G)
    auto theta = [](const ZsSequence& s) { return s; };
    auto report = factor_core::verify_transfer<ZsOracle>(oracle, theta, samples, table);
    CHECK(report.all_ok());
    CHECK(report.violations.empty());
    CHECK_FALSE(report.surjectivity_note.empty());
}

TEST_CASE("verify_transfer flags a padded theta via the unit criterion") {
    auto g = abelian::parse_group("3");
    auto table = zerosum::full_atom_table(g);
    ZsOracle oracle{table};
    std::vector<ZsSequence> samples = {ZsSequence::empty(g), zerosum::parse_sequence(g, "(1)*(2)")};
    auto zero = abelian::zero_element(g);
    auto broken = [zero](const ZsSequence& s) {
        return s.concat(ZsSequence::from_elements(s.group(), {zero}));  // always one extra zero
    };
    auto report = factor_core::verify_transfer<ZsOracle>(oracle, broken, samples, table);
    CHECK_FALSE(report.unit_ok);
    CHECK_FALSE(report.all_ok());
    CHECK_FALSE(report.violations.empty());
}

}  // TEST_SUITE
