#include "factorlab/abelian.hpp"

#include <limits>
#include <numeric>
#include <sstream>

namespace factorlab::abelian {

namespace {

constexpr std::int64_t kModulusCap = std::int64_t{1} << 31;

std::int64_t mod_reduce(std::int64_t value, std::int64_t modulus) {
    std::int64_t r = value % modulus;
    if (r < 0) r += modulus;
    return r;
}

}  // namespace

FiniteAbelianGroup::FiniteAbelianGroup(std::vector<std::int64_t> invariant_factors)
    : factors_(std::move(invariant_factors)) {
    for (std::int64_t n : factors_) {
        if (n < 1) throw InvalidArgument("invariant factor must be >= 1, got " + std::to_string(n));
        if (n > kModulusCap) throw InvalidArgument("invariant factor exceeds 2^31 cap");
    }
}

bool FiniteAbelianGroup::is_trivial() const {
    for (std::int64_t n : factors_)
        if (n != 1) return false;
    return true;
}

std::uint64_t FiniteAbelianGroup::order() const {
    std::uint64_t o = 1;
    constexpr std::uint64_t kMax = std::numeric_limits<std::int64_t>::max();
    for (std::int64_t n : factors_) {
        auto un = static_cast<std::uint64_t>(n);
        if (o > kMax / un) return kMax;
        o *= un;
    }
    return o;
}

std::string FiniteAbelianGroup::to_literal() const {
    std::ostringstream out;
    for (std::size_t i = 0; i < factors_.size(); ++i) {
        if (i) out << ',';
        out << factors_[i];
    }
    return out.str();
}

GroupElement::GroupElement(FiniteAbelianGroup group, std::vector<std::int64_t> coords)
    : group_(std::move(group)), coords_(std::move(coords)) {
    if (coords_.size() != group_.rank())
        throw InvalidArgument("element has " + std::to_string(coords_.size()) + " coordinates, group has rank " +
                              std::to_string(group_.rank()));
    for (std::size_t i = 0; i < coords_.size(); ++i)
        coords_[i] = mod_reduce(coords_[i], group_.invariant_factors()[i]);
}

bool GroupElement::is_zero() const {
    for (std::int64_t c : coords_)
        if (c != 0) return false;
    return true;
}

std::string GroupElement::to_literal() const {
    std::ostringstream out;
    out << '(';
    for (std::size_t i = 0; i < coords_.size(); ++i) {
        if (i) out << ',';
        out << coords_[i];
    }
    out << ')';
    return out.str();
}

bool GroupElement::operator==(const GroupElement& other) const {
    return group_ == other.group_ && coords_ == other.coords_;
}

bool GroupElement::operator<(const GroupElement& other) const {
    return coords_ < other.coords_;
}

GroupElement zero_element(const FiniteAbelianGroup& g) {
    return GroupElement(g, std::vector<std::int64_t>(g.rank(), 0));
}

GroupElement add(const GroupElement& a, const GroupElement& b) {
    if (a.group() != b.group()) throw InvalidArgument("cannot add elements of different groups");
    std::vector<std::int64_t> out(a.coords().size());
    const auto& n = a.group().invariant_factors();
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = (a.coords()[i] + b.coords()[i]) % n[i];
    return GroupElement(a.group(), std::move(out));
}

GroupElement negate(const GroupElement& a) {
    std::vector<std::int64_t> out(a.coords().size());
    const auto& n = a.group().invariant_factors();
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = a.coords()[i] == 0 ? 0 : n[i] - a.coords()[i];
    return GroupElement(a.group(), std::move(out));
}

std::uint64_t element_order(const GroupElement& a) {
    std::uint64_t m = 1;
    const auto& n = a.group().invariant_factors();
    for (std::size_t i = 0; i < n.size(); ++i) {
        auto ni = static_cast<std::uint64_t>(n[i]);
        auto ci = static_cast<std::uint64_t>(a.coords()[i]);
        std::uint64_t coord_order = ni / std::gcd(ni, ci == 0 ? ni : ci);
        m = std::lcm(m, coord_order);
    }
    return m;
}

std::vector<GroupElement> enumerate_elements(const FiniteAbelianGroup& g, std::uint64_t cap) {
    std::uint64_t n = g.order();
    if (n > cap)
        throw BudgetExceeded("group order " + std::to_string(n) + " exceeds enumeration cap " + std::to_string(cap));
    std::vector<GroupElement> out;
    out.reserve(n);
    std::vector<std::int64_t> coords(g.rank(), 0);
    for (std::uint64_t i = 0; i < n; ++i) {
        out.emplace_back(g, coords);
        // increment mixed-radix counter, last coordinate fastest
        for (std::size_t j = g.rank(); j-- > 0;) {
            if (++coords[j] < g.invariant_factors()[j]) break;
            coords[j] = 0;
        }
    }
    return out;
}

FiniteAbelianGroup parse_group(const std::string& literal) {
    if (literal.empty()) return FiniteAbelianGroup{};
    std::vector<std::int64_t> factors;
    std::istringstream in(literal);
    std::string part;
    while (std::getline(in, part, ',')) {
        try {
            std::size_t pos = 0;
            std::int64_t v = std::stoll(part, &pos);
            if (pos != part.size()) throw std::invalid_argument(part);
            factors.push_back(v);
        } catch (const std::exception&) {
            throw InvalidArgument("bad group literal component '" + part + "'");
        }
    }
    if (factors.empty()) throw InvalidArgument("bad group literal '" + literal + "'");
    return FiniteAbelianGroup(std::move(factors));
}

GroupElement parse_element(const FiniteAbelianGroup& g, const std::string& literal) {
    if (literal.size() < 2 || literal.front() != '(' || literal.back() != ')')
        throw InvalidArgument("element literal must look like '(c1,...,ck)', got '" + literal + "'");
    std::string body = literal.substr(1, literal.size() - 2);
    std::vector<std::int64_t> coords;
    if (!body.empty()) {
        std::istringstream in(body);
        std::string part;
        while (std::getline(in, part, ',')) {
            try {
                std::size_t pos = 0;
                std::int64_t v = std::stoll(part, &pos);
                if (pos != part.size()) throw std::invalid_argument(part);
                coords.push_back(v);
            } catch (const std::exception&) {
                throw InvalidArgument("bad element coordinate '" + part + "'");
            }
        }
    }
    return GroupElement(g, std::move(coords));
}

std::uint64_t element_index(const GroupElement& a) {
    std::uint64_t idx = 0;
    const auto& n = a.group().invariant_factors();
    for (std::size_t i = 0; i < n.size(); ++i)
        idx = idx * static_cast<std::uint64_t>(n[i]) + static_cast<std::uint64_t>(a.coords()[i]);
    return idx;
}

GroupElement element_at(const FiniteAbelianGroup& g, std::uint64_t index) {
    std::vector<std::int64_t> coords(g.rank(), 0);
    const auto& n = g.invariant_factors();
    for (std::size_t i = g.rank(); i-- > 0;) {
        coords[i] = static_cast<std::int64_t>(index % static_cast<std::uint64_t>(n[i]));
        index /= static_cast<std::uint64_t>(n[i]);
    }
    return GroupElement(g, std::move(coords));
}

}  // namespace factorlab::abelian
