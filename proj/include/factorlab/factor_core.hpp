#pragma once

#include <concepts>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "factorlab/errors.hpp"
#include "factorlab/zerosum.hpp"

namespace factorlab::factor_core {

/**
 * Behavioral contract for a cancellative small category fed to the engine.
 *
 * atom_left_divisors(a) returns all pairs (u, a') with a = u*a', u an atom,
 * one pair per left-divisor class u*H^x, with the cofactor a' in canonical
 * form (canonical_key-stable representative; the exact identity when a' is a
 * unit). The list must be deterministic and duplicate-free.
 * canonical_key(a) agrees for a and e*a for every unit e.
 * size_measure(a) strictly decreases under proper left division.
 */
template <typename O>
concept CategoryOracle = requires(const O& o, const typename O::Element& a, const typename O::Element& b) {
    typename O::Element;
    typename O::Key;
    { o.source(a) } -> std::convertible_to<int>;
    { o.target(a) } -> std::convertible_to<int>;
    { o.identity() } -> std::same_as<typename O::Element>;
    { o.compose(a, b) } -> std::same_as<typename O::Element>;
    { o.is_unit(a) } -> std::convertible_to<bool>;
    { o.canonical_key(a) } -> std::same_as<typename O::Key>;
    { o.size_measure(a) } -> std::convertible_to<std::uint64_t>;
    { o.describe(a) } -> std::convertible_to<std::string>;
    { o.atom_left_divisors(a) } ->
        std::same_as<std::vector<std::pair<typename O::Element, typename O::Element>>>;
    { a == b } -> std::convertible_to<bool>;
};

/// An ordered factorization unit * u1 * ... * uk. The unit slot is engaged
/// only for the empty factorization of a unit; otherwise it is absorbed into
/// the leading atom.
template <typename E>
struct RigidFactorization {
    std::optional<E> unit;
    std::vector<E> atoms;
    std::size_t length() const { return atoms.size(); }
};

struct EngineOptions {
    std::uint64_t max_factorizations = 100'000;
    bool memoize = true;
    bool verify_products = true;
};

/**
 * Rigid-factorization engine over a divisor oracle: depth-first left-divisor
 * peeling with memoization on canonical cofactor keys, terminating by the
 * oracle's size measure. Length sets are computed by a separate memoized DFS
 * so they stay available when the full factorization set would blow the cap.
 */
template <CategoryOracle O>
class FactorEngine {
public:
    using Element = typename O::Element;
    using Key = typename O::Key;

    explicit FactorEngine(O oracle, EngineOptions opts = {}) : oracle_(std::move(oracle)), opts_(opts) {}

    const O& oracle() const { return oracle_; }

    std::vector<RigidFactorization<Element>> rigid_factorizations(const Element& a) {
        if (oracle_.is_unit(a)) return {RigidFactorization<Element>{a, {}}};
        auto lists = assemble(a);
        if (opts_.verify_products) {
            for (const auto& atoms : lists) {
                Element prod = atoms.front();
                for (std::size_t i = 1; i < atoms.size(); ++i) prod = oracle_.compose(prod, atoms[i]);
                if (!(prod == a))
                    throw OracleContractViolation("factorization of " + oracle_.describe(a) +
                                                  " fails to re-multiply");
            }
        }
        std::vector<RigidFactorization<Element>> out;
        out.reserve(lists.size());
        for (auto& atoms : lists) out.push_back(RigidFactorization<Element>{std::nullopt, std::move(atoms)});
        return out;
    }

    std::set<std::uint64_t> lengths(const Element& a) {
        if (oracle_.is_unit(a)) return {0};
        return length_rec(a, false);
    }

    std::set<std::uint64_t> distances(const Element& a) {
        auto ls = lengths(a);
        std::set<std::uint64_t> out;
        auto it = ls.begin();
        auto prev = *it;
        for (++it; it != ls.end(); ++it) {
            out.insert(*it - prev);
            prev = *it;
        }
        return out;
    }

private:
    std::vector<std::pair<Element, Element>> checked_divisors(const Element& a) {
        auto divisors = oracle_.atom_left_divisors(a);
        if (divisors.empty())
            throw OracleContractViolation("non-unit " + oracle_.describe(a) + " has no atom left divisor");
        std::uint64_t measure = oracle_.size_measure(a);
        std::set<Key> seen;
        for (const auto& [u, rest] : divisors) {
            if (oracle_.is_unit(u)) throw OracleContractViolation("divisor list contains a unit atom");
            if (!seen.insert(oracle_.canonical_key(rest)).second)
                throw OracleContractViolation("duplicate left-divisor class for " + oracle_.describe(a));
            if (opts_.verify_products && !(oracle_.compose(u, rest) == a))
                throw OracleContractViolation("divisor pair does not multiply back to " + oracle_.describe(a));
            if (!oracle_.is_unit(rest) && oracle_.size_measure(rest) >= measure)
                throw OracleContractViolation("size measure failed to decrease");
        }
        return divisors;
    }

    std::vector<std::vector<Element>> assemble(const Element& a) {
        std::vector<std::vector<Element>> out;
        for (const auto& [u, rest] : checked_divisors(a)) {
            if (oracle_.is_unit(rest)) {
                out.push_back({u});
            } else {
                for (const auto& tail : factor_rec(rest)) {
                    std::vector<Element> atoms;
                    atoms.reserve(tail.size() + 1);
                    atoms.push_back(u);
                    atoms.insert(atoms.end(), tail.begin(), tail.end());
                    out.push_back(std::move(atoms));
                }
            }
            if (out.size() > opts_.max_factorizations)
                throw BudgetExceeded("factorization count exceeds cap of " +
                                     std::to_string(opts_.max_factorizations));
        }
        return out;
    }

    /// Factorizations of a canonical cofactor, memoized by key.
    const std::vector<std::vector<Element>>& factor_rec(const Element& c) {
        Key key = oracle_.canonical_key(c);
        auto it = factor_memo_.find(key);
        if (it != factor_memo_.end()) {
            if (!opts_.memoize) it->second = assemble(c);  // recompute, no reuse
            return it->second;
        }
        auto lists = assemble(c);
        return factor_memo_.emplace(std::move(key), std::move(lists)).first->second;
    }

    std::set<std::uint64_t> length_rec(const Element& a, bool canonical) {
        Key key = oracle_.canonical_key(a);
        if (opts_.memoize && canonical) {
            auto it = length_memo_.find(key);
            if (it != length_memo_.end()) return it->second;
        }
        std::set<std::uint64_t> out;
        for (const auto& [u, rest] : checked_divisors(a)) {
            if (oracle_.is_unit(rest)) {
                out.insert(1);
            } else {
                for (std::uint64_t l : length_rec(rest, true)) out.insert(l + 1);
            }
        }
        if (opts_.memoize && canonical) length_memo_.emplace(std::move(key), out);
        return out;
    }

    O oracle_;
    EngineOptions opts_;
    std::map<Key, std::vector<std::vector<Element>>> factor_memo_;
    std::map<Key, std::set<std::uint64_t>> length_memo_;
};

struct TransferCheckOptions {
    std::uint64_t factorization_cap = 100'000;
    std::size_t max_violations_reported = 20;
};

/// Outcome of machine-checking a candidate transfer homomorphism on samples.
struct TransferReport {
    bool homomorphism_ok = true;  ///< theta(ab) = theta(a)theta(b), images zero-sum
    bool unit_ok = true;          ///< theta(a) empty iff a is a unit
    bool lifting_ok = true;       ///< every splitting of theta(a) lifts to a = a1*a2
    bool lengths_ok = true;       ///< L_H(a) = L_B(theta(a))
    std::size_t sample_count = 0;
    std::size_t pair_count = 0;
    std::size_t split_count = 0;
    std::vector<std::string> violations;
    std::string surjectivity_note;
    bool all_ok() const { return homomorphism_ok && unit_ok && lifting_ok && lengths_ok; }
};

namespace detail {

/// All zero-sum sub-multisets of s (including the empty and full ones).
inline std::vector<zerosum::ZsSequence> zero_sum_splittings(const zerosum::ZsSequence& s) {
    const auto& mult = s.indexed();
    std::set<zerosum::ZsSequence> out;
    std::vector<std::pair<abelian::GroupElement, std::uint64_t>> chosen;
    std::function<void(std::size_t)> rec = [&](std::size_t pos) {
        if (pos == mult.size()) {
            auto sub = zerosum::ZsSequence::from_multiplicities(s.group(), chosen);
            if (sub.is_zero_sum()) out.insert(sub);
            return;
        }
        rec(pos + 1);
        auto elem = abelian::element_at(s.group(), mult[pos].first);
        for (std::uint64_t c = 1; c <= mult[pos].second; ++c) {
            chosen.emplace_back(elem, 1);
            rec(pos + 1);
        }
        chosen.resize(chosen.size() - mult[pos].second);
    };
    rec(0);
    return {out.begin(), out.end()};
}

}  // namespace detail

/**
 * Checks the transfer-homomorphism axioms for theta against samples:
 * (i) homomorphism on composable sample pairs, (ii) theta^{-1}(identity
 * sequences) = units, (iii) lifting of every splitting theta(a) = b1*b2 to a
 * factorization a = a1*a2, (iv) preservation of sets of lengths. Violations
 * become report entries rather than errors. Surjectivity is only meaningful
 * relative to the samples, which the report states.
 */
template <CategoryOracle O>
TransferReport verify_transfer(const O& oracle,
                               const std::function<zerosum::ZsSequence(const typename O::Element&)>& theta,
                               const std::vector<typename O::Element>& samples,
                               const zerosum::AtomTable& target_atoms, const TransferCheckOptions& opts = {}) {
    TransferReport report;
    report.sample_count = samples.size();
    report.surjectivity_note =
        "surjectivity (T1) verified only onto the subsemigroup generated by the sample images; "
        "full surjectivity is not decidable from samples";

    auto note = [&](bool& flag, const std::string& message) {
        flag = false;
        if (report.violations.size() < opts.max_violations_reported) report.violations.push_back(message);
    };

    FactorEngine<O> engine(oracle, EngineOptions{opts.factorization_cap, true, true});

    // (i) homomorphism: images are zero-sum and theta is multiplicative
    for (const auto& a : samples)
        if (!theta(a).is_zero_sum())
            note(report.homomorphism_ok, "theta(" + oracle.describe(a) + ") is not a zero-sum sequence");
    for (const auto& a : samples)
        for (const auto& b : samples) {
            if (oracle.target(a) != oracle.source(b)) continue;
            ++report.pair_count;
            if (theta(oracle.compose(a, b)) != theta(a).concat(theta(b)))
                note(report.homomorphism_ok,
                     "theta(ab) != theta(a)theta(b) for a=" + oracle.describe(a) + " b=" + oracle.describe(b));
        }

    // (ii) unit criterion
    if (!theta(oracle.identity()).is_empty())
        note(report.unit_ok, "theta(identity) is a nonempty sequence");
    for (const auto& a : samples) {
        bool unit = oracle.is_unit(a);
        bool empty_image = theta(a).is_empty();
        if (unit != empty_image)
            note(report.unit_ok, "unit criterion fails for " + oracle.describe(a) + ": is_unit=" +
                                     (unit ? "true" : "false") + " but theta image " +
                                     (empty_image ? "empty" : "nonempty"));
    }

    // (iii) lifting of splittings (T2)
    for (const auto& a : samples) {
        if (oracle.is_unit(a)) continue;
        auto image = theta(a);
        auto factorizations = engine.rigid_factorizations(a);
        for (const auto& b1 : detail::zero_sum_splittings(image)) {
            ++report.split_count;
            auto b2 = image.remove(b1);
            bool found = false;
            if (b1.is_empty() || b2.is_empty()) {
                found = true;  // lift with a unit factor: a = e*a or a = a*e
            } else {
                for (const auto& z : factorizations) {
                    for (std::size_t cut = 1; !found && cut < z.atoms.size(); ++cut) {
                        typename O::Element left = z.atoms.front();
                        for (std::size_t i = 1; i < cut; ++i) left = oracle.compose(left, z.atoms[i]);
                        typename O::Element right = z.atoms[cut];
                        for (std::size_t i = cut + 1; i < z.atoms.size(); ++i)
                            right = oracle.compose(right, z.atoms[i]);
                        if (theta(left) == b1 && theta(right) == b2) found = true;
                    }
                    if (found) break;
                }
            }
            if (!found)
                note(report.lifting_ok, "splitting " + b1.to_literal() + " * " + b2.to_literal() +
                                            " of theta(" + oracle.describe(a) + ") does not lift");
        }
    }

    // (iv) sets of lengths coincide
    for (const auto& a : samples) {
        auto image = theta(a);
        if (!image.is_zero_sum()) continue;  // already flagged under (i)
        auto lhs = engine.lengths(a);
        auto rhs = zerosum::lengths_zs(image, target_atoms);
        if (lhs != rhs)
            note(report.lengths_ok, "L_H(a) != L_B(theta(a)) for a=" + oracle.describe(a));
    }

    return report;
}

}  // namespace factorlab::factor_core
