#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "factorlab/errors.hpp"

namespace factorlab::abelian {

/**
 * A finite abelian group in invariant-factor form,
 *   G = Z/n1 + Z/n2 + ... + Z/nk,   each ni >= 1.
 *
 * The factor list is not required to satisfy n1 | n2 | ...; any list of
 * moduli is accepted. The empty list denotes the trivial group.
 * Immutable after construction.
 */
class FiniteAbelianGroup {
public:
    FiniteAbelianGroup() = default;
    explicit FiniteAbelianGroup(std::vector<std::int64_t> invariant_factors);

    const std::vector<std::int64_t>& invariant_factors() const { return factors_; }
    std::size_t rank() const { return factors_.size(); }
    bool is_trivial() const;

    /// Group order, saturated at 2^63-1 when the product overflows.
    std::uint64_t order() const;

    /// Literal form "n1,n2,...,nk"; "" for the trivial group.
    std::string to_literal() const;

    bool operator==(const FiniteAbelianGroup& other) const { return factors_ == other.factors_; }
    bool operator!=(const FiniteAbelianGroup& other) const { return !(*this == other); }

private:
    std::vector<std::int64_t> factors_;
};

/// An element of a FiniteAbelianGroup; coordinates are stored reduced,
/// 0 <= coords[i] < ni. Immutable after construction.
class GroupElement {
public:
    GroupElement() = default;

    /// Coordinates are reduced modulo the invariant factors.
    GroupElement(FiniteAbelianGroup group, std::vector<std::int64_t> coords);

    const FiniteAbelianGroup& group() const { return group_; }
    const std::vector<std::int64_t>& coords() const { return coords_; }
    bool is_zero() const;

    /// Literal form "(c1,...,ck)"; "()" in the trivial group.
    std::string to_literal() const;

    bool operator==(const GroupElement& other) const;
    bool operator!=(const GroupElement& other) const { return !(*this == other); }
    bool operator<(const GroupElement& other) const;

private:
    FiniteAbelianGroup group_;
    std::vector<std::int64_t> coords_;
};

GroupElement zero_element(const FiniteAbelianGroup& g);

/// Componentwise modular addition. Throws InvalidArgument on mismatched groups.
GroupElement add(const GroupElement& a, const GroupElement& b);

GroupElement negate(const GroupElement& a);

/// Smallest m >= 1 with m*a = 0; divides the group order.
std::uint64_t element_order(const GroupElement& a);

/// All group elements in lexicographic coordinate order.
/// Throws BudgetExceeded when the group order exceeds `cap`.
std::vector<GroupElement> enumerate_elements(const FiniteAbelianGroup& g,
                                             std::uint64_t cap = 1'000'000);

// Literal parsing. Group: "2,2" (C2+C2), "" (trivial). Element: "(1,0)".
FiniteAbelianGroup parse_group(const std::string& literal);
GroupElement parse_element(const FiniteAbelianGroup& g, const std::string& literal);

// Dense indexing used by the enumeration-heavy zerosum algorithms. The index
// of an element is its position in enumerate_elements order (mixed radix,
// first coordinate most significant).
std::uint64_t element_index(const GroupElement& a);
GroupElement element_at(const FiniteAbelianGroup& g, std::uint64_t index);

}  // namespace factorlab::abelian
