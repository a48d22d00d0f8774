#include "factorlab/zerosum.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <unordered_map>

#include <json.hpp>

namespace factorlab::zerosum {

namespace {

using Json = nlohmann::ordered_json;

/// Dense arithmetic over element indices, with lazily built addition rows.
class GroupArith {
public:
    explicit GroupArith(const FiniteAbelianGroup& g) : group_(g), n_(g.order()) {
        if (n_ > 0xFFFFFFFFull) throw InvalidArgument("group too large for sequence operations");
    }

    std::uint32_t size() const { return static_cast<std::uint32_t>(n_); }

    std::uint32_t add(std::uint32_t x, std::uint32_t y) const {
        auto ex = abelian::element_at(group_, x);
        auto ey = abelian::element_at(group_, y);
        return static_cast<std::uint32_t>(abelian::element_index(abelian::add(ex, ey)));
    }

    std::uint32_t neg(std::uint32_t x) const {
        return static_cast<std::uint32_t>(abelian::element_index(abelian::negate(abelian::element_at(group_, x))));
    }

    /// Row of the addition table for g, built on first use.
    const std::vector<std::uint32_t>& row(std::uint32_t g) {
        auto it = rows_.find(g);
        if (it != rows_.end()) return it->second;
        std::vector<std::uint32_t> r(size());
        auto eg = abelian::element_at(group_, g);
        for (std::uint32_t x = 0; x < size(); ++x)
            r[x] = static_cast<std::uint32_t>(
                abelian::element_index(abelian::add(abelian::element_at(group_, x), eg)));
        return rows_.emplace(g, std::move(r)).first->second;
    }

private:
    const FiniteAbelianGroup& group_;
    std::uint64_t n_;
    std::unordered_map<std::uint32_t, std::vector<std::uint32_t>> rows_;
};

class Bitset {
public:
    explicit Bitset(std::uint32_t bits) : words_((bits + 63) / 64, 0) {}
    void set(std::uint32_t i) { words_[i >> 6] |= (std::uint64_t{1} << (i & 63)); }
    bool test(std::uint32_t i) const { return (words_[i >> 6] >> (i & 63)) & 1; }

    /// this | (this + g), where + shifts every member by the addition row of g.
    Bitset shifted_union(const std::vector<std::uint32_t>& add_row) const {
        Bitset out = *this;
        for (std::uint32_t w = 0; w < words_.size(); ++w) {
            std::uint64_t word = words_[w];
            while (word) {
                std::uint32_t bit = static_cast<std::uint32_t>(__builtin_ctzll(word));
                word &= word - 1;
                out.set(add_row[(w << 6) | bit]);
            }
        }
        return out;
    }

private:
    std::vector<std::uint64_t> words_;
};

std::vector<std::uint32_t> support_indices(const FiniteAbelianGroup& g,
                                           const std::optional<std::vector<GroupElement>>& support) {
    std::vector<std::uint32_t> out;
    if (support) {
        for (const auto& e : *support) {
            if (e.group() != g) throw InvalidArgument("support element from a different group");
            out.push_back(static_cast<std::uint32_t>(abelian::element_index(e)));
        }
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
    } else {
        std::uint64_t n = g.order();
        if (n > 0xFFFFFFFFull) throw InvalidArgument("group too large for sequence operations");
        out.resize(n);
        for (std::uint32_t i = 0; i < n; ++i) out[i] = i;
    }
    return out;
}

using MultKey = std::vector<std::pair<std::uint32_t, std::uint64_t>>;

ZsSequence sequence_from_indexed(const FiniteAbelianGroup& g, const MultKey& mult) {
    std::vector<std::pair<GroupElement, std::uint64_t>> pairs;
    pairs.reserve(mult.size());
    for (const auto& [idx, m] : mult) pairs.emplace_back(abelian::element_at(g, idx), m);
    return ZsSequence::from_multiplicities(g, pairs);
}

}  // namespace

ZsSequence ZsSequence::empty(const FiniteAbelianGroup& g) {
    if (g.order() > 0xFFFFFFFFull) throw InvalidArgument("group too large for sequence operations");
    return ZsSequence(g, {}, 0, 0);
}

ZsSequence ZsSequence::from_elements(const FiniteAbelianGroup& g, const std::vector<GroupElement>& elems) {
    std::vector<std::pair<GroupElement, std::uint64_t>> pairs;
    pairs.reserve(elems.size());
    for (const auto& e : elems) pairs.emplace_back(e, 1);
    return from_multiplicities(g, pairs);
}

ZsSequence ZsSequence::from_multiplicities(const FiniteAbelianGroup& g,
                                           const std::vector<std::pair<GroupElement, std::uint64_t>>& mult) {
    if (g.order() > 0xFFFFFFFFull) throw InvalidArgument("group too large for sequence operations");
    std::map<std::uint32_t, std::uint64_t> acc;
    for (const auto& [e, m] : mult) {
        if (e.group() != g) throw InvalidArgument("sequence element from a different group");
        if (m == 0) throw InvalidArgument("sequence multiplicity must be positive");
        acc[static_cast<std::uint32_t>(abelian::element_index(e))] += m;
    }
    MultKey pairs(acc.begin(), acc.end());
    std::uint64_t len = 0;
    std::vector<std::int64_t> sum(g.rank(), 0);
    const auto& factors = g.invariant_factors();
    for (const auto& [idx, m] : pairs) {
        len += m;
        auto e = abelian::element_at(g, idx);
        for (std::size_t i = 0; i < sum.size(); ++i) {
            std::int64_t contrib = (e.coords()[i] * static_cast<std::int64_t>(m % static_cast<std::uint64_t>(
                                                        factors[i]))) % factors[i];
            sum[i] = (sum[i] + contrib) % factors[i];
        }
    }
    auto sum_idx = static_cast<std::uint32_t>(abelian::element_index(GroupElement(g, sum)));
    return ZsSequence(g, std::move(pairs), len, sum_idx);
}

GroupElement ZsSequence::sum() const { return abelian::element_at(group_, sum_index_); }

bool ZsSequence::is_zero_sum() const { return sum_index_ == 0; }

std::vector<std::pair<GroupElement, std::uint64_t>> ZsSequence::multiplicities() const {
    std::vector<std::pair<GroupElement, std::uint64_t>> out;
    out.reserve(mult_.size());
    for (const auto& [idx, m] : mult_) out.emplace_back(abelian::element_at(group_, idx), m);
    return out;
}

std::uint64_t ZsSequence::multiplicity_of(const GroupElement& g) const {
    if (g.group() != group_) return 0;
    auto idx = static_cast<std::uint32_t>(abelian::element_index(g));
    for (const auto& [i, m] : mult_)
        if (i == idx) return m;
    return 0;
}

ZsSequence ZsSequence::concat(const ZsSequence& other) const {
    if (group_ != other.group_) throw InvalidArgument("cannot concatenate sequences over different groups");
    auto pairs = multiplicities();
    auto more = other.multiplicities();
    pairs.insert(pairs.end(), more.begin(), more.end());
    return from_multiplicities(group_, pairs);
}

bool ZsSequence::contains(const ZsSequence& other) const {
    if (group_ != other.group_) return false;
    auto it = mult_.begin();
    for (const auto& [idx, m] : other.mult_) {
        while (it != mult_.end() && it->first < idx) ++it;
        if (it == mult_.end() || it->first != idx || it->second < m) return false;
    }
    return true;
}

ZsSequence ZsSequence::remove(const ZsSequence& other) const {
    if (!contains(other)) throw InvalidArgument("sequence difference is not defined: not a subsequence");
    std::map<std::uint32_t, std::uint64_t> acc(mult_.begin(), mult_.end());
    for (const auto& [idx, m] : other.mult_) {
        acc[idx] -= m;
        if (acc[idx] == 0) acc.erase(idx);
    }
    std::vector<std::pair<GroupElement, std::uint64_t>> pairs;
    for (const auto& [idx, m] : acc) pairs.emplace_back(abelian::element_at(group_, idx), m);
    return from_multiplicities(group_, pairs);
}

std::string ZsSequence::to_literal() const {
    if (mult_.empty()) return "[]";
    std::ostringstream out;
    bool first = true;
    for (const auto& [idx, m] : mult_) {
        if (!first) out << '*';
        first = false;
        out << abelian::element_at(group_, idx).to_literal();
        if (m != 1) out << '^' << m;
    }
    return out.str();
}

bool ZsSequence::operator<(const ZsSequence& other) const {
    if (length_ != other.length_) return length_ < other.length_;
    // lexicographic comparison of the expanded index sequences
    auto ia = mult_.begin();
    auto ib = other.mult_.begin();
    std::uint64_t ra = 0, rb = 0;  // remaining multiplicity at current pair
    while (ia != mult_.end() && ib != other.mult_.end()) {
        if (ra == 0) ra = ia->second;
        if (rb == 0) rb = ib->second;
        if (ia->first != ib->first) return ia->first < ib->first;
        std::uint64_t step = std::min(ra, rb);
        ra -= step;
        rb -= step;
        if (ra == 0) ++ia;
        if (rb == 0) ++ib;
    }
    return false;  // equal length and equal prefix: sequences are equal
}

ZsSequence parse_sequence(const FiniteAbelianGroup& g, const std::string& literal) {
    if (literal == "[]") return ZsSequence::empty(g);
    std::vector<std::pair<GroupElement, std::uint64_t>> pairs;
    std::istringstream in(literal);
    std::string token;
    while (std::getline(in, token, '*')) {
        std::uint64_t mult = 1;
        auto caret = token.find('^');
        std::string elem_part = token;
        if (caret != std::string::npos) {
            elem_part = token.substr(0, caret);
            std::string mult_part = token.substr(caret + 1);
            try {
                std::size_t pos = 0;
                long long m = std::stoll(mult_part, &pos);
                if (pos != mult_part.size() || m < 1) throw std::invalid_argument(mult_part);
                mult = static_cast<std::uint64_t>(m);
            } catch (const std::exception&) {
                throw InvalidArgument("bad multiplicity '" + mult_part + "' in sequence literal");
            }
        }
        pairs.emplace_back(abelian::parse_element(g, elem_part), mult);
    }
    if (pairs.empty()) throw InvalidArgument("bad sequence literal '" + literal + "'");
    return ZsSequence::from_multiplicities(g, pairs);
}

GroupElement sigma(const ZsSequence& s) { return s.sum(); }

bool is_atom(const ZsSequence& s) {
    if (s.length() == 0 || !s.is_zero_sum()) return false;
    if (s.length() == 1) return true;
    // search for a nonempty proper zero-sum sub-multiset
    GroupArith arith(s.group());
    const auto& mult = s.indexed();
    std::vector<std::uint64_t> counts(mult.size(), 0);
    std::function<bool(std::size_t, std::uint32_t, std::uint64_t)> search =
        [&](std::size_t pos, std::uint32_t partial_sum, std::uint64_t taken) -> bool {
        if (pos == mult.size()) return taken > 0 && taken < s.length() && partial_sum == 0;
        std::uint32_t sum = partial_sum;
        for (std::uint64_t c = 0; c <= mult[pos].second; ++c) {
            if (search(pos + 1, sum, taken + c)) return true;
            sum = arith.add(sum, mult[pos].first);
        }
        return false;
    };
    return !search(0, 0, 0);
}

AtomTable enumerate_atoms(const FiniteAbelianGroup& g, std::uint32_t max_length, const AtomEnumOptions& opts) {
    GroupArith arith(g);
    auto support = support_indices(g, opts.support);

    std::vector<ZsSequence> atoms;
    if (max_length >= 1 && std::binary_search(support.begin(), support.end(), 0u))
        atoms.push_back(ZsSequence::from_elements(g, {abelian::zero_element(g)}));

    std::vector<std::uint32_t> nonzero;
    for (std::uint32_t idx : support)
        if (idx != 0) nonzero.push_back(idx);

    std::uint64_t nodes = 0;
    MultKey path;

    auto finish_partial = [&](const std::string& what) {
        std::sort(atoms.begin(), atoms.end());
        AtomTable partial{g, max_length, false, std::move(atoms), opts.support};
        throw AtomBudgetExceeded(what, std::move(partial));
    };

    auto emit = [&](std::uint32_t idx) {
        MultKey m = path;
        if (!m.empty() && m.back().first == idx)
            ++m.back().second;
        else
            m.emplace_back(idx, 1);
        atoms.push_back(sequence_from_indexed(g, m));
    };

    // DFS over zero-sum-free multisets with nondecreasing element index.
    // A = sums of all sub-multisets of the path; extending by g keeps the
    // path zero-sum free iff -g is not a proper sub-multiset sum, and closes
    // an atom iff -g equals the full path sum.
    std::function<void(std::size_t, std::uint32_t, const Bitset&, std::uint32_t)> dfs =
        [&](std::size_t start, std::uint32_t path_sum, const Bitset& sums, std::uint32_t len) {
            if (len >= max_length) return;
            for (std::size_t si = start; si < nonzero.size(); ++si) {
                std::uint32_t gidx = nonzero[si];
                if (++nodes > opts.node_budget)
                    finish_partial("atom enumeration exceeded node budget of " + std::to_string(opts.node_budget));
                std::uint32_t minus_g = arith.neg(gidx);
                if (sums.test(minus_g)) {
                    // the only sub-multiset with that sum is the full path
                    // (zero-sum freeness), so the extension is zero-sum
                    if (minus_g == path_sum) emit(gidx);
                    continue;
                }
                bool merged = !path.empty() && path.back().first == gidx;
                if (merged)
                    ++path.back().second;
                else
                    path.emplace_back(gidx, 1);
                dfs(si, arith.add(path_sum, gidx), sums.shifted_union(arith.row(gidx)), len + 1);
                if (merged)
                    --path.back().second;
                else
                    path.pop_back();
            }
        };

    Bitset initial(arith.size());
    initial.set(0);
    dfs(0, 0, initial, 0);

    std::sort(atoms.begin(), atoms.end());
    return AtomTable{g, max_length, true, std::move(atoms), opts.support};
}

std::uint32_t davenport_constant(const FiniteAbelianGroup& g, const DavenportOptions& opts) {
    std::uint64_t order = g.order();
    if (order > opts.group_order_cap)
        throw BudgetExceeded("group order " + std::to_string(order) + " exceeds Davenport cap " +
                             std::to_string(opts.group_order_cap));
    AtomEnumOptions eopts;
    eopts.node_budget = opts.node_budget;
    eopts.support = opts.support;
    // every sequence of length |G| has a nonempty zero-sum subsequence, so
    // atoms never exceed length |G| and the bounded table is the full one
    AtomTable table = enumerate_atoms(g, static_cast<std::uint32_t>(order), eopts);
    std::uint32_t d = 0;
    for (const auto& a : table.atoms) d = std::max<std::uint32_t>(d, static_cast<std::uint32_t>(a.length()));
    return d;
}

AtomTable full_atom_table(const FiniteAbelianGroup& g, const AtomEnumOptions& opts) {
    std::uint64_t order = g.order();
    if (order > 0xFFFFFFFFull) throw InvalidArgument("group too large for sequence operations");
    return enumerate_atoms(g, static_cast<std::uint32_t>(order), opts);
}

namespace {

/// Shared machinery for factorization and length-set queries against a table.
class FactorizationSolver {
public:
    explicit FactorizationSolver(const AtomTable& table) : table_(table) {
        if (!table.complete) throw InvalidArgument("atom table is incomplete");
        std::uint32_t max_elem = 0;
        for (const auto& atom : table.atoms)
            for (const auto& [idx, m] : atom.indexed()) max_elem = std::max(max_elem, idx);
        by_element_.resize(max_elem + 1);
        for (std::uint32_t id = 0; id < table.atoms.size(); ++id)
            for (const auto& [idx, m] : table.atoms[id].indexed()) by_element_[idx].push_back(id);
    }

    void check_coverage(const ZsSequence& s) const {
        if (s.group() != table_.group) throw InvalidArgument("sequence group does not match atom table");
        std::uint64_t needed = std::min<std::uint64_t>(s.length(), table_.group.order());
        if (table_.max_length < needed)
            throw InvalidArgument("atom table bound " + std::to_string(table_.max_length) +
                                  " does not cover sequences of length " + std::to_string(s.length()));
        if (table_.support) {
            auto supported = support_indices(table_.group, table_.support);
            for (const auto& [idx, m] : s.indexed())
                if (!std::binary_search(supported.begin(), supported.end(), idx))
                    throw InvalidArgument("sequence uses an element outside the table's support");
        }
    }

    std::set<std::uint64_t> lengths(const ZsSequence& s) {
        check_coverage(s);
        if (!s.is_zero_sum()) throw InvalidArgument("lengths are defined for zero-sum sequences only");
        return lengths_rec(s.indexed());
    }

    std::vector<std::vector<std::uint32_t>> factorizations(const ZsSequence& s, std::uint64_t count_cap) {
        check_coverage(s);
        if (!s.is_zero_sum()) throw InvalidArgument("cannot factor a sequence with nonzero sum");
        count_cap_ = count_cap;
        auto result = factor_rec(s.indexed());
        return {result.begin(), result.end()};
    }

    const AtomTable& table() const { return table_; }

private:
    std::set<std::uint64_t> lengths_rec(const MultKey& key) {
        if (key.empty()) return {0};
        auto it = length_memo_.find(key);
        if (it != length_memo_.end()) return it->second;
        std::set<std::uint64_t> out;
        for_each_peel(key, [&](std::uint32_t /*atom_id*/, const MultKey& rest) {
            for (std::uint64_t l : lengths_rec(rest)) out.insert(l + 1);
        });
        length_memo_.emplace(key, out);
        return out;
    }

    std::set<std::vector<std::uint32_t>> factor_rec(const MultKey& key) {
        if (key.empty()) return {{}};
        auto it = factor_memo_.find(key);
        if (it != factor_memo_.end()) return it->second;
        std::set<std::vector<std::uint32_t>> out;
        for_each_peel(key, [&](std::uint32_t atom_id, const MultKey& rest) {
            for (const auto& f : factor_rec(rest)) {
                std::vector<std::uint32_t> g;
                g.reserve(f.size() + 1);
                auto pos = std::lower_bound(f.begin(), f.end(), atom_id);
                g.insert(g.end(), f.begin(), pos);
                g.push_back(atom_id);
                g.insert(g.end(), pos, f.end());
                out.insert(std::move(g));
                if (out.size() > count_cap_)
                    throw BudgetExceeded("factorization count exceeds cap of " + std::to_string(count_cap_));
            }
        });
        factor_memo_.emplace(key, out);
        return out;
    }

    /// Invokes fn for every atom covering the smallest remaining element.
    template <typename Fn>
    void for_each_peel(const MultKey& key, Fn&& fn) {
        std::uint32_t smallest = key.front().first;
        if (smallest >= by_element_.size()) return;
        for (std::uint32_t atom_id : by_element_[smallest]) {
            const ZsSequence& atom = table_.atoms[atom_id];
            MultKey rest;
            if (!subtract(key, atom.indexed(), rest)) continue;
            fn(atom_id, rest);
        }
    }

    static bool subtract(const MultKey& key, const MultKey& atom, MultKey& out) {
        out.clear();
        auto ia = key.begin();
        auto ib = atom.begin();
        while (ia != key.end()) {
            if (ib != atom.end() && ia->first == ib->first) {
                if (ia->second < ib->second) return false;
                if (ia->second > ib->second) out.emplace_back(ia->first, ia->second - ib->second);
                ++ia;
                ++ib;
            } else if (ib != atom.end() && ib->first < ia->first) {
                return false;
            } else {
                out.push_back(*ia);
                ++ia;
            }
        }
        return ib == atom.end();
    }

    const AtomTable& table_;
    std::vector<std::vector<std::uint32_t>> by_element_;
    std::map<MultKey, std::set<std::uint64_t>> length_memo_;
    std::map<MultKey, std::set<std::vector<std::uint32_t>>> factor_memo_;
    std::uint64_t count_cap_ = 100'000;
};

std::set<std::uint64_t> gaps_of(const std::set<std::uint64_t>& lengths) {
    std::set<std::uint64_t> out;
    auto it = lengths.begin();
    if (it == lengths.end()) return out;
    auto prev = *it;
    for (++it; it != lengths.end(); ++it) {
        out.insert(*it - prev);
        prev = *it;
    }
    return out;
}

}  // namespace

std::vector<std::vector<ZsSequence>> factorizations_zs(const ZsSequence& s, const AtomTable& table,
                                                       std::uint64_t count_cap) {
    FactorizationSolver solver(table);
    auto id_lists = solver.factorizations(s, count_cap);
    std::vector<std::vector<ZsSequence>> out;
    out.reserve(id_lists.size());
    for (const auto& ids : id_lists) {
        std::vector<ZsSequence> f;
        f.reserve(ids.size());
        for (std::uint32_t id : ids) f.push_back(table.atoms[id]);
        out.push_back(std::move(f));
    }
    return out;
}

std::set<std::uint64_t> lengths_zs(const ZsSequence& s, const AtomTable& table) {
    FactorizationSolver solver(table);
    return solver.lengths(s);
}

std::set<std::uint64_t> distances_zs(const ZsSequence& s, const AtomTable& table) {
    return gaps_of(lengths_zs(s, table));
}

namespace {

/// Enumerates every zero-sum sequence with |S| <= bound over the support and
/// feeds its length set to `consume`.
void for_each_bounded_zero_sum(const FiniteAbelianGroup& g, std::uint64_t length_bound, const AtomEnumOptions& opts,
                               const std::function<void(const ZsSequence&, const std::set<std::uint64_t>&)>& consume) {
    AtomTable table = full_atom_table(g, opts);
    std::uint64_t davenport = 0;
    for (const auto& a : table.atoms) davenport = std::max<std::uint64_t>(davenport, a.length());
    if (length_bound > 12 * std::max<std::uint64_t>(davenport, 1))
        throw BudgetExceeded("length bound " + std::to_string(length_bound) + " exceeds 12*D(G) = " +
                             std::to_string(12 * std::max<std::uint64_t>(davenport, 1)));
    FactorizationSolver solver(table);
    GroupArith arith(g);
    auto support = support_indices(g, opts.support);

    MultKey path;
    std::function<void(std::size_t, std::uint32_t, std::uint64_t)> dfs = [&](std::size_t start,
                                                                             std::uint32_t path_sum,
                                                                             std::uint64_t len) {
        if (path_sum == 0 && len > 0) {
            ZsSequence s = sequence_from_indexed(g, path);
            consume(s, solver.lengths(s));
        }
        if (len == length_bound) return;
        for (std::size_t si = start; si < support.size(); ++si) {
            std::uint32_t gidx = support[si];
            if (!path.empty() && path.back().first == gidx)
                ++path.back().second;
            else
                path.emplace_back(gidx, 1);
            dfs(si, arith.add(path_sum, gidx), len + 1);
            if (--path.back().second == 0) path.pop_back();
        }
    };
    dfs(0, 0, 0);
}

}  // namespace

BoundedSet monoid_delta(const FiniteAbelianGroup& g, std::uint64_t length_bound, const AtomEnumOptions& opts) {
    BoundedSet out;
    out.length_bound = length_bound;
    for_each_bounded_zero_sum(g, length_bound, opts, [&](const ZsSequence&, const std::set<std::uint64_t>& lengths) {
        for (std::uint64_t d : gaps_of(lengths)) out.values.insert(d);
    });
    return out;
}

BoundedSet union_k(const FiniteAbelianGroup& g, std::uint64_t k, std::uint64_t length_bound,
                   const AtomEnumOptions& opts) {
    BoundedSet out;
    out.length_bound = length_bound;
    for_each_bounded_zero_sum(g, length_bound, opts, [&](const ZsSequence&, const std::set<std::uint64_t>& lengths) {
        if (lengths.count(k)) out.values.insert(lengths.begin(), lengths.end());
    });
    if (k == 0) out.values.insert(0);  // the empty sequence
    return out;
}

LengthClassification classify_lengths(const std::set<std::uint64_t>& lengths) {
    if (lengths.empty()) throw InvalidArgument("cannot classify an empty set of lengths");
    LengthClassification out;
    if (lengths.size() == 1) {
        out.kind = LengthClassification::Kind::Singleton;
        return out;
    }
    auto gaps = gaps_of(lengths);
    if (gaps.size() == 1) {
        out.difference = *gaps.begin();
        out.kind = out.difference == 1 ? LengthClassification::Kind::Interval
                                       : LengthClassification::Kind::ArithmeticProgression;
        return out;
    }
    out.kind = LengthClassification::Kind::Other;
    return out;
}

std::string to_string(LengthClassification::Kind kind) {
    switch (kind) {
        case LengthClassification::Kind::Singleton: return "singleton";
        case LengthClassification::Kind::Interval: return "interval";
        case LengthClassification::Kind::ArithmeticProgression: return "ap";
        case LengthClassification::Kind::Other: return "other";
    }
    return "other";
}

namespace {

std::string cache_path(const std::string& cache_dir, const FiniteAbelianGroup& g) {
    std::string name = g.to_literal();
    if (name.empty()) name = "trivial";
    return cache_dir + "/atoms-" + name + ".json";
}

}  // namespace

std::optional<AtomTable> load_atom_table(const std::string& cache_dir, const FiniteAbelianGroup& g,
                                         std::uint32_t max_length) {
    std::ifstream in(cache_path(cache_dir, g));
    if (!in) return std::nullopt;
    try {
        Json doc = Json::parse(in);
        if (doc.at("group").get<std::string>() != g.to_literal()) return std::nullopt;
        if (!doc.at("complete").get<bool>()) return std::nullopt;
        auto cached_bound = doc.at("max_length").get<std::uint32_t>();
        if (cached_bound < max_length) return std::nullopt;
        AtomTable table{g, max_length, true, {}, std::nullopt};
        for (const auto& atom_json : doc.at("atoms")) {
            std::vector<std::pair<GroupElement, std::uint64_t>> pairs;
            for (const auto& entry : atom_json)
                pairs.emplace_back(abelian::parse_element(g, entry.at(0).get<std::string>()),
                                   entry.at(1).get<std::uint64_t>());
            ZsSequence atom = ZsSequence::from_multiplicities(g, pairs);
            if (atom.length() <= max_length) table.atoms.push_back(std::move(atom));
        }
        std::sort(table.atoms.begin(), table.atoms.end());
        return table;
    } catch (const std::exception&) {
        return std::nullopt;  // unreadable cache entries are treated as misses
    }
}

void save_atom_table(const std::string& cache_dir, const AtomTable& table) {
    if (!table.complete || table.support) return;
    std::error_code ec;
    std::filesystem::create_directories(cache_dir, ec);
    Json doc;
    doc["group"] = table.group.to_literal();
    doc["max_length"] = table.max_length;
    doc["complete"] = table.complete;
    Json atoms = Json::array();
    for (const auto& atom : table.atoms) {
        Json entry = Json::array();
        for (const auto& [e, m] : atom.multiplicities()) entry.push_back(Json::array({e.to_literal(), m}));
        atoms.push_back(std::move(entry));
    }
    doc["atoms"] = std::move(atoms);
    std::ofstream out(cache_path(cache_dir, table.group));
    out << doc.dump(2) << '\n';
}

AtomTable full_atom_table_cached(const FiniteAbelianGroup& g, const std::string& cache_dir) {
    std::uint64_t order = g.order();
    if (order > 0xFFFFFFFFull) throw InvalidArgument("group too large for sequence operations");
    auto bound = static_cast<std::uint32_t>(order);
    if (!cache_dir.empty()) {
        if (auto cached = load_atom_table(cache_dir, g, bound)) return *std::move(cached);
    }
    AtomTable table = full_atom_table(g);
    if (!cache_dir.empty()) save_atom_table(cache_dir, table);
    return table;
}

}  // namespace factorlab::zerosum
