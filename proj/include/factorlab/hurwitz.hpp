#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "factorlab/errors.hpp"

namespace factorlab::hurwitz {

/**
 * An element of the Hurwitz quaternion order Z[1, i, j, (1+i+j+ij)/2].
 *
 * Stored as doubled coordinates: the element is (a + b*i + c*j + d*k)/2 where
 * a,b,c,d all have equal parity. All even means an integral (Lipschitz)
 * element, all odd a halved one. Immutable value type.
 */
class HurwitzQuaternion {
public:
    HurwitzQuaternion() : x_{0, 0, 0, 0} {}

    static HurwitzQuaternion integral(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d) {
        return HurwitzQuaternion(2 * a, 2 * b, 2 * c, 2 * d);
    }
    /// (a + b*i + c*j + d*k)/2 with all components odd.
    static HurwitzQuaternion halved(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d);
    /// From doubled coordinates; validates the equal-parity invariant.
    static HurwitzQuaternion from_doubled(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d);
    static HurwitzQuaternion one() { return integral(1, 0, 0, 0); }

    const std::array<std::int64_t, 4>& doubled() const { return x_; }
    bool is_halved() const { return (x_[0] & 1) != 0; }
    bool is_zero() const { return x_[0] == 0 && x_[1] == 0 && x_[2] == 0 && x_[3] == 0; }
    bool is_unit() const { return norm() == 1; }

    /// Reduced norm x * conj(x), a nonnegative integer.
    std::int64_t norm() const;
    /// Reduced trace x + conj(x), an integer.
    std::int64_t trace() const { return x_[0]; }

    HurwitzQuaternion conjugate() const { return HurwitzQuaternion(x_[0], -x_[1], -x_[2], -x_[3]); }
    HurwitzQuaternion operator*(const HurwitzQuaternion& rhs) const;
    HurwitzQuaternion operator+(const HurwitzQuaternion& rhs) const;
    HurwitzQuaternion operator-(const HurwitzQuaternion& rhs) const;
    HurwitzQuaternion operator-() const { return HurwitzQuaternion(-x_[0], -x_[1], -x_[2], -x_[3]); }

    bool operator==(const HurwitzQuaternion& rhs) const { return x_ == rhs.x_; }
    bool operator!=(const HurwitzQuaternion& rhs) const { return !(*this == rhs); }
    /// Lexicographic order on (halved, nominal coordinates); integral elements
    /// sort before halved ones. Used for canonical associate picks.
    bool operator<(const HurwitzQuaternion& rhs) const;

    /// Literal form "a+b*i+c*j+d*k", with "/2" coefficients for halved elements.
    std::string to_literal() const;

private:
    HurwitzQuaternion(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d) : x_{a, b, c, d} {}
    std::array<std::int64_t, 4> x_;
};

/// The 24 units of the Hurwitz order, sorted.
const std::vector<HurwitzQuaternion>& units();

/// Lexicographically least element of the left-unit orbit {u*x : u unit}.
HurwitzQuaternion canonical_associate(const HurwitzQuaternion& x);

/// True iff x is irreducible, equivalently nr(x) is a rational prime.
bool is_atom(const HurwitzQuaternion& x);

/// One representative per left-unit orbit {u*x : u unit} among the elements of
/// norm n, deterministically ordered. Throws BudgetExceeded past the cap.
std::vector<HurwitzQuaternion> elements_of_norm(std::int64_t n, std::int64_t cap = 1'000'000);

/// Greatest common right divisor: a generator of Hx + Hy, canonicalized.
/// Throws InvalidArgument when both arguments are zero.
HurwitzQuaternion gcrd(const HurwitzQuaternion& x, const HurwitzQuaternion& y);

/// u^{-1} * x when it lies in the order.
std::optional<HurwitzQuaternion> exact_left_quotient(const HurwitzQuaternion& u, const HurwitzQuaternion& x);
/// x * c^{-1} when it lies in the order.
std::optional<HurwitzQuaternion> exact_right_quotient(const HurwitzQuaternion& x, const HurwitzQuaternion& c);

HurwitzQuaternion parse_quaternion(const std::string& literal);

/// Uniform-ish random element with 2 <= nr <= max_norm (rejection sampling).
HurwitzQuaternion random_element(std::mt19937_64& rng, std::int64_t max_norm);

std::uint32_t omega(std::int64_t n);  ///< number of prime factors with multiplicity
bool is_prime_i64(std::int64_t n);
std::vector<std::int64_t> prime_factors(std::int64_t n);  ///< ascending, with multiplicity

/**
 * Divisor oracle presenting the Hurwitz order to the factorization engine.
 * Atoms are the elements of prime reduced norm; left divisors of x are
 * enumerated per prime q | nr(x) as the norm-q associate classes u with
 * conj(u)*x divisible by q. Cofactors are returned canonically.
 */
class HurwitzOracle {
public:
    using Element = HurwitzQuaternion;
    using Key = std::array<std::int64_t, 4>;

    std::vector<int> objects() const { return {0}; }
    int source(const Element&) const { return 0; }
    int target(const Element&) const { return 0; }
    Element identity() const { return HurwitzQuaternion::one(); }
    Element compose(const Element& a, const Element& b) const { return a * b; }
    bool is_unit(const Element& a) const { return a.is_unit(); }
    Key canonical_key(const Element& a) const { return canonical_associate(a).doubled(); }
    std::uint64_t size_measure(const Element& a) const;
    std::string describe(const Element& a) const { return a.to_literal(); }

    std::vector<std::pair<Element, Element>> atom_left_divisors(const Element& a) const;

private:
    struct ClassCache {
        std::mutex mutex;
        std::map<std::int64_t, std::vector<HurwitzQuaternion>> table;
    };

    const std::vector<HurwitzQuaternion>& right_orbit_reps(std::int64_t q) const;

    std::shared_ptr<ClassCache> cache_ = std::make_shared<ClassCache>();
};

}  // namespace factorlab::hurwitz
