#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "factorlab/abelian.hpp"
#include "factorlab/errors.hpp"

namespace factorlab::zerosum {

using abelian::FiniteAbelianGroup;
using abelian::GroupElement;

/**
 * A finite multiset of group elements (a sequence in the free abelian monoid
 * over G), with cached length and sum. Internally elements are kept as
 * (lexicographic index, multiplicity) pairs sorted by index, which doubles as
 * the canonical form. Immutable after construction.
 */
class ZsSequence {
public:
    static ZsSequence empty(const FiniteAbelianGroup& g);
    static ZsSequence from_elements(const FiniteAbelianGroup& g, const std::vector<GroupElement>& elems);
    static ZsSequence from_multiplicities(const FiniteAbelianGroup& g,
                                          const std::vector<std::pair<GroupElement, std::uint64_t>>& mult);

    const FiniteAbelianGroup& group() const { return group_; }
    std::uint64_t length() const { return length_; }
    GroupElement sum() const;
    bool is_zero_sum() const;
    bool is_empty() const { return mult_.empty(); }

    /// (element index, multiplicity) pairs, ascending by index.
    const std::vector<std::pair<std::uint32_t, std::uint64_t>>& indexed() const { return mult_; }
    std::vector<std::pair<GroupElement, std::uint64_t>> multiplicities() const;
    std::uint64_t multiplicity_of(const GroupElement& g) const;

    /// Concatenation S*T in the free abelian monoid. Groups must match.
    ZsSequence concat(const ZsSequence& other) const;
    bool contains(const ZsSequence& other) const;
    /// Multiset difference; `other` must be contained in *this.
    ZsSequence remove(const ZsSequence& other) const;

    /// Literal form "(c)^m*(d)^n" with factors sorted; "[]" for the empty sequence.
    std::string to_literal() const;

    bool operator==(const ZsSequence& other) const { return group_ == other.group_ && mult_ == other.mult_; }
    bool operator!=(const ZsSequence& other) const { return !(*this == other); }
    /// Orders by (length, lexicographic expanded index sequence); used wherever
    /// a deterministic sequence order is needed.
    bool operator<(const ZsSequence& other) const;

private:
    ZsSequence(FiniteAbelianGroup g, std::vector<std::pair<std::uint32_t, std::uint64_t>> mult, std::uint64_t len,
               std::uint32_t sum_idx)
        : group_(std::move(g)), mult_(std::move(mult)), length_(len), sum_index_(sum_idx) {}

    FiniteAbelianGroup group_;
    std::vector<std::pair<std::uint32_t, std::uint64_t>> mult_;
    std::uint64_t length_ = 0;
    std::uint32_t sum_index_ = 0;

    friend class GroupArith;
};

/// Sequence literal "(1)^3*(2)" (multiplicity 1 may omit "^1"); "[]" is empty.
ZsSequence parse_sequence(const FiniteAbelianGroup& g, const std::string& literal);

/// Set of atoms (minimal zero-sum sequences) of B(G_P) up to a length bound.
struct AtomTable {
    FiniteAbelianGroup group;
    std::uint32_t max_length = 0;
    bool complete = false;  ///< contains ALL atoms of length <= max_length
    std::vector<ZsSequence> atoms;  ///< sorted by (length, lex)
    std::optional<std::vector<GroupElement>> support;  ///< G_P restriction, if any
};

/// Thrown when atom enumeration runs out of budget; carries the partial table.
struct AtomBudgetExceeded : BudgetExceeded {
    AtomBudgetExceeded(const std::string& what, AtomTable partial_table)
        : BudgetExceeded(what), partial(std::move(partial_table)) {}
    AtomTable partial;
};

struct AtomEnumOptions {
    std::uint64_t node_budget = 20'000'000;
    std::optional<std::vector<GroupElement>> support;  ///< restrict to G_P; default all of G
};

GroupElement sigma(const ZsSequence& s);

/// True iff s is a nonempty zero-sum sequence with no nonempty proper
/// zero-sum subsequence (checked by subset-sum search over the multiset).
bool is_atom(const ZsSequence& s);

/// All atoms of B(G_P) of length <= max_length, by pruned zero-sum-free DFS.
/// Throws AtomBudgetExceeded (with the partial table, complete=false) when the
/// node budget is exhausted.
AtomTable enumerate_atoms(const FiniteAbelianGroup& g, std::uint32_t max_length, const AtomEnumOptions& opts = {});

struct DavenportOptions {
    std::uint64_t group_order_cap = 256;
    std::uint64_t node_budget = 20'000'000;
    std::optional<std::vector<GroupElement>> support;
};

/// Exact Davenport constant D(G_P): maximal length of an atom. Enumerates up
/// to the pigeonhole bound |G|. Throws BudgetExceeded when |G| exceeds the cap.
std::uint32_t davenport_constant(const FiniteAbelianGroup& g, const DavenportOptions& opts = {});

/// Builds a complete atom table at bound |G| (covers every atom of B(G_P)).
AtomTable full_atom_table(const FiniteAbelianGroup& g, const AtomEnumOptions& opts = {});

/// All unordered decompositions of s into atoms, each factorization sorted,
/// the list of factorizations sorted. Requires sigma(s)=0 and a table that is
/// complete up to min(|s|, |G|).
std::vector<std::vector<ZsSequence>> factorizations_zs(const ZsSequence& s, const AtomTable& table,
                                                       std::uint64_t count_cap = 100'000);

std::set<std::uint64_t> lengths_zs(const ZsSequence& s, const AtomTable& table);
std::set<std::uint64_t> distances_zs(const ZsSequence& s, const AtomTable& table);

/// A set computed over sequences of bounded length only; `length_bound` is
/// echoed so under-approximations are self-describing.
struct BoundedSet {
    std::set<std::uint64_t> values;
    std::uint64_t length_bound = 0;
};

/// Delta(B(G_P)) restricted to zero-sum sequences with |S| <= length_bound.
BoundedSet monoid_delta(const FiniteAbelianGroup& g, std::uint64_t length_bound, const AtomEnumOptions& opts = {});

/// U_k(B(G_P)) restricted to zero-sum sequences with |S| <= length_bound.
BoundedSet union_k(const FiniteAbelianGroup& g, std::uint64_t k, std::uint64_t length_bound,
                   const AtomEnumOptions& opts = {});

struct LengthClassification {
    enum class Kind { Singleton, Interval, ArithmeticProgression, Other };
    Kind kind = Kind::Other;
    std::uint64_t difference = 0;  ///< minimal d for AP; 1 for Interval; 0 otherwise
};

/// Exact AP/interval classification of a finite nonempty set of lengths.
LengthClassification classify_lengths(const std::set<std::uint64_t>& lengths);

std::string to_string(LengthClassification::Kind kind);

// Atom-table disk cache. Tables are stored one JSON file per group under
// `cache_dir`, only for unrestricted (full-G) tables. Loading returns a table
// filtered to `max_length` when the cached bound covers it.
std::optional<AtomTable> load_atom_table(const std::string& cache_dir, const FiniteAbelianGroup& g,
                                         std::uint32_t max_length);
void save_atom_table(const std::string& cache_dir, const AtomTable& table);

/// Cached wrapper around full_atom_table; empty cache_dir disables caching.
AtomTable full_atom_table_cached(const FiniteAbelianGroup& g, const std::string& cache_dir);

}  // namespace factorlab::zerosum
