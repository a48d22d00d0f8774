#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "factorlab/errors.hpp"

namespace factorlab::matorder {

using BigInt = boost::multiprecision::cpp_int;

/// A 2x2 integer matrix [[a,b],[c,d]], an element of the maximal order M2(Z).
/// Cancellative iff det != 0; the reduced norm is det.
struct IntMatrix2 {
    BigInt a, b, c, d;

    static IntMatrix2 identity() { return {1, 0, 0, 1}; }
    static IntMatrix2 scalar(const BigInt& s) { return {s, 0, 0, s}; }

    BigInt det() const { return a * d - b * c; }
    IntMatrix2 adjugate() const { return {d, -b, -c, a}; }
    IntMatrix2 operator*(const IntMatrix2& r) const {
        return {a * r.a + b * r.c, a * r.b + b * r.d, c * r.a + d * r.c, c * r.b + d * r.d};
    }
    IntMatrix2 operator-() const { return {-a, -b, -c, -d}; }

    std::array<BigInt, 4> tuple() const { return {a, b, c, d}; }
    bool operator==(const IntMatrix2& r) const { return a == r.a && b == r.b && c == r.c && d == r.d; }
    bool operator!=(const IntMatrix2& r) const { return !(*this == r); }
    bool operator<(const IntMatrix2& r) const { return tuple() < r.tuple(); }

    /// Literal form "[[a,b],[c,d]]".
    std::string to_literal() const;
};

IntMatrix2 parse_matrix(const std::string& literal);

/**
 * A left ideal of M2(Z), i.e. the matrices whose rows lie in a full-rank
 * sublattice of Z^2. Represented by the unique row Hermite normal form
 * generator: upper triangular, positive diagonal, entry above the diagonal
 * reduced into [0, lower-right diagonal). norm = det(gen) = lattice index.
 */
struct LeftIdeal2 {
    IntMatrix2 gen;
    BigInt norm() const { return gen.det(); }
    bool operator==(const LeftIdeal2& r) const { return gen == r.gen; }
    bool operator!=(const LeftIdeal2& r) const { return !(*this == r); }
    bool operator<(const LeftIdeal2& r) const { return gen < r.gen; }
};

/// Row HNF of the GL2(Z)-left-orbit of A. Throws InvalidArgument when singular.
LeftIdeal2 hnf(const IntMatrix2& A);

/// HNF of the lattice generated by the given rows; must have full rank.
LeftIdeal2 hnf_rows(const std::vector<std::array<BigInt, 2>>& rows);

LeftIdeal2 unit_ideal();
LeftIdeal2 scaled_order(const BigInt& s);  ///< the two-sided ideal s*M2(Z)

bool lattice_contains(const LeftIdeal2& I, const std::array<BigInt, 2>& row);
bool ideal_contains(const LeftIdeal2& outer, const LeftIdeal2& inner);  ///< inner subset of outer

/// Exactly the p+1 maximal left ideals of norm p, deterministically ordered.
/// Throws InvalidArgument when p is not prime.
std::vector<LeftIdeal2> maximal_left_ideals_over(const BigInt& p);

LeftIdeal2 ideal_meet(const LeftIdeal2& I, const LeftIdeal2& J);  ///< module intersection
LeftIdeal2 ideal_join(const LeftIdeal2& I, const LeftIdeal2& J);  ///< module sum

/// Outcome of transposing two maximal steps u, v (prime norms p != q) in a
/// product a = u*v into a = v'*u' with norms swapped.
struct Transposition {
    IntMatrix2 v_prime, u_prime;         // a = v_prime * u_prime
    LeftIdeal2 v_prime_ideal, u_prime_ideal;
};

/// Transposes the element product u*v. Both factors must have prime
/// determinant, of distinct primes ("coprimality required" otherwise).
/// The returned pair is unique at the ideal level.
Transposition transpose_elements(const IntMatrix2& u, const IntMatrix2& v);

/// As above, on the principal generators of two ideal steps.
Transposition transpose_steps(const LeftIdeal2& u, const LeftIdeal2& v);

/// Chain selection for abstract_norm: prime ordering and branch choice when a
/// step has several maximal refinements.
struct ChainPolicy {
    bool descending_primes = false;
    std::uint32_t branch = 0;
};

/// The primes under each maximal step of a maximal chain from the full order
/// down to I, in chain order.
std::vector<BigInt> chain_primes(const LeftIdeal2& I, const ChainPolicy& policy = {});

/// Product of the chain primes; by the chain-independence of the abstract
/// norm this equals det(gen) for every policy.
BigInt abstract_norm(const LeftIdeal2& I, const ChainPolicy& policy = {});

bool is_prime(const BigInt& n);
std::vector<BigInt> factor(const BigInt& n);  ///< ascending, with multiplicity
bool is_squarefree(const BigInt& n);

/// Random matrix with entries in [-entry_bound, entry_bound] and
/// 0 < |det| <= max_abs_det (rejection sampling).
IntMatrix2 random_matrix(std::mt19937_64& rng, std::int64_t entry_bound, const BigInt& max_abs_det);

/**
 * Divisor oracle presenting M2(Z) to the factorization engine. Atoms are the
 * matrices of prime determinant; left-divisor classes of A correspond to the
 * index-p superlattices of the column lattice of A. Cofactors are returned in
 * row HNF.
 */
class MatOrderOracle {
public:
    using Element = IntMatrix2;
    using Key = std::array<BigInt, 4>;

    std::vector<int> objects() const { return {0}; }
    int source(const Element&) const { return 0; }
    int target(const Element&) const { return 0; }
    Element identity() const { return IntMatrix2::identity(); }
    Element compose(const Element& a, const Element& b) const { return a * b; }
    bool is_unit(const Element& a) const { return a.det() == 1 || a.det() == -1; }
    Key canonical_key(const Element& a) const { return hnf(a).gen.tuple(); }
    std::uint64_t size_measure(const Element& a) const;
    std::string describe(const Element& a) const { return a.to_literal(); }

    std::vector<std::pair<Element, Element>> atom_left_divisors(const Element& a) const;
};

}  // namespace factorlab::matorder
