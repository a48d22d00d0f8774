#include "factorlab/hurwitz.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace factorlab::hurwitz {

namespace {

std::int64_t isqrt64(std::int64_t n) {
    if (n < 0) return -1;
    auto r = static_cast<std::int64_t>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
    std::int64_t q = a / b;
    if (a % b != 0 && ((a < 0) != (b < 0))) --q;
    return q;
}

std::array<std::int64_t, 4> nominal(const HurwitzQuaternion& x) {
    auto d = x.doubled();
    if (x.is_halved()) return d;
    return {d[0] / 2, d[1] / 2, d[2] / 2, d[3] / 2};
}

}  // namespace

HurwitzQuaternion HurwitzQuaternion::halved(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d) {
    return from_doubled(a, b, c, d);
}

HurwitzQuaternion HurwitzQuaternion::from_doubled(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d) {
    int parity = static_cast<int>(a & 1);
    if ((b & 1) != parity || (c & 1) != parity || (d & 1) != parity)
        throw InvalidArgument("not a Hurwitz quaternion: components of mixed parity");
    return HurwitzQuaternion(a, b, c, d);
}

std::int64_t HurwitzQuaternion::norm() const {
    return (x_[0] * x_[0] + x_[1] * x_[1] + x_[2] * x_[2] + x_[3] * x_[3]) / 4;
}

HurwitzQuaternion HurwitzQuaternion::operator*(const HurwitzQuaternion& rhs) const {
    const auto& p = x_;
    const auto& q = rhs.x_;
    std::int64_t a = p[0] * q[0] - p[1] * q[1] - p[2] * q[2] - p[3] * q[3];
    std::int64_t b = p[0] * q[1] + p[1] * q[0] + p[2] * q[3] - p[3] * q[2];
    std::int64_t c = p[0] * q[2] - p[1] * q[3] + p[2] * q[0] + p[3] * q[1];
    std::int64_t d = p[0] * q[3] + p[1] * q[2] - p[2] * q[1] + p[3] * q[0];
    // the order is closed under multiplication, so the doubled product is even
    return HurwitzQuaternion(a / 2, b / 2, c / 2, d / 2);
}

HurwitzQuaternion HurwitzQuaternion::operator+(const HurwitzQuaternion& rhs) const {
    return from_doubled(x_[0] + rhs.x_[0], x_[1] + rhs.x_[1], x_[2] + rhs.x_[2], x_[3] + rhs.x_[3]);
}

HurwitzQuaternion HurwitzQuaternion::operator-(const HurwitzQuaternion& rhs) const {
    return from_doubled(x_[0] - rhs.x_[0], x_[1] - rhs.x_[1], x_[2] - rhs.x_[2], x_[3] - rhs.x_[3]);
}

bool HurwitzQuaternion::operator<(const HurwitzQuaternion& rhs) const {
    bool h1 = is_halved(), h2 = rhs.is_halved();
    if (h1 != h2) return !h1;
    return nominal(*this) < nominal(rhs);
}

std::string HurwitzQuaternion::to_literal() const {
    auto n = nominal(*this);
    bool halved = is_halved();
    static const char* suffix[4] = {"", "*i", "*j", "*k"};
    std::ostringstream out;
    for (int t = 0; t < 4; ++t) {
        std::int64_t v = n[t];
        if (t == 0) {
            out << v;
        } else {
            out << (v < 0 ? "-" : "+") << std::abs(v);
        }
        if (halved) out << "/2";
        out << suffix[t];
    }
    return out.str();
}

const std::vector<HurwitzQuaternion>& units() {
    static const std::vector<HurwitzQuaternion> all = [] {
        std::vector<HurwitzQuaternion> out;
        for (int t = 0; t < 4; ++t)
            for (int s : {1, -1}) {
                std::int64_t c[4] = {0, 0, 0, 0};
                c[t] = s;
                out.push_back(HurwitzQuaternion::integral(c[0], c[1], c[2], c[3]));
            }
        for (int a : {1, -1})
            for (int b : {1, -1})
                for (int c : {1, -1})
                    for (int d : {1, -1}) out.push_back(HurwitzQuaternion::from_doubled(a, b, c, d));
        std::sort(out.begin(), out.end());
        return out;
    }();
    return all;
}

HurwitzQuaternion canonical_associate(const HurwitzQuaternion& x) {
    if (x.is_zero()) return x;
    HurwitzQuaternion best = x;
    for (const auto& u : units()) {
        HurwitzQuaternion y = u * x;
        if (y < best) best = y;
    }
    return best;
}

namespace {

HurwitzQuaternion canonical_right_associate(const HurwitzQuaternion& x) {
    HurwitzQuaternion best = x;
    for (const auto& u : units()) {
        HurwitzQuaternion y = x * u;
        if (y < best) best = y;
    }
    return best;
}

/// All lattice points of the given norm (not up to associates).
std::vector<HurwitzQuaternion> raw_elements_of_norm(std::int64_t n) {
    std::vector<HurwitzQuaternion> out;
    // integral layer: a^2+b^2+c^2+d^2 = n
    std::int64_t r = isqrt64(n);
    for (std::int64_t a = -r; a <= r; ++a) {
        std::int64_t rb = isqrt64(n - a * a);
        for (std::int64_t b = -rb; b <= rb; ++b) {
            std::int64_t rc = isqrt64(n - a * a - b * b);
            for (std::int64_t c = -rc; c <= rc; ++c) {
                std::int64_t rest = n - a * a - b * b - c * c;
                std::int64_t d = isqrt64(rest);
                if (d * d != rest) continue;
                out.push_back(HurwitzQuaternion::integral(a, b, c, d));
                if (d != 0) out.push_back(HurwitzQuaternion::integral(a, b, c, -d));
            }
        }
    }
    // halved layer: odd doubled components with square sum 4n
    std::int64_t m = 4 * n;
    auto odd_floor = [](std::int64_t v) { return (v & 1) ? v : v - 1; };
    std::int64_t ra = odd_floor(isqrt64(m));
    for (std::int64_t a = -ra; a <= ra; a += 2) {
        std::int64_t rb = odd_floor(isqrt64(m - a * a));
        for (std::int64_t b = -rb; b <= rb; b += 2) {
            std::int64_t rc = odd_floor(isqrt64(m - a * a - b * b));
            for (std::int64_t c = -rc; c <= rc; c += 2) {
                std::int64_t rest = m - a * a - b * b - c * c;
                if (rest < 1) continue;
                std::int64_t d = isqrt64(rest);
                if (d * d != rest || (d & 1) == 0) continue;
                out.push_back(HurwitzQuaternion::from_doubled(a, b, c, d));
                out.push_back(HurwitzQuaternion::from_doubled(a, b, c, -d));
            }
        }
    }
    return out;
}

}  // namespace

bool is_atom(const HurwitzQuaternion& x) { return is_prime_i64(x.norm()); }

std::vector<HurwitzQuaternion> elements_of_norm(std::int64_t n, std::int64_t cap) {
    if (n < 1) throw InvalidArgument("norm must be >= 1");
    if (n > cap) throw BudgetExceeded("norm " + std::to_string(n) + " exceeds cap " + std::to_string(cap));
    std::set<HurwitzQuaternion> reps;
    for (const auto& x : raw_elements_of_norm(n)) reps.insert(canonical_associate(x));
    return {reps.begin(), reps.end()};
}

HurwitzQuaternion gcrd(const HurwitzQuaternion& x_in, const HurwitzQuaternion& y_in) {
    if (x_in.is_zero() && y_in.is_zero()) throw InvalidArgument("gcrd(0, 0) is undefined");
    HurwitzQuaternion x = x_in, y = y_in;
    while (!y.is_zero()) {
        std::int64_t n = y.norm();
        HurwitzQuaternion w = x * y.conjugate();  // q should approximate w / n
        const auto& w2 = w.doubled();

        HurwitzQuaternion best_q = HurwitzQuaternion::one();
        HurwitzQuaternion best_r = x;
        std::int64_t best_norm = -1;
        auto consider = [&](std::int64_t qa, std::int64_t qb, std::int64_t qc, std::int64_t qd) {
            HurwitzQuaternion q = HurwitzQuaternion::from_doubled(qa, qb, qc, qd);
            HurwitzQuaternion r = x - q * y;
            std::int64_t rn = r.norm();
            if (best_norm < 0 || rn < best_norm || (rn == best_norm && q < best_q)) {
                best_norm = rn;
                best_q = q;
                best_r = r;
            }
        };
        std::int64_t e[4], o[4];
        for (int t = 0; t < 4; ++t) {
            e[t] = 2 * floor_div(w2[t], 2 * n);    // greatest even doubled value <= w2/n
            std::int64_t f = floor_div(w2[t], n);  // greatest doubled value <= w2/n
            o[t] = (f & 1) ? f : f - 1;            // greatest odd doubled value <= w2/n
        }
        for (int mask = 0; mask < 16; ++mask)
            consider(e[0] + 2 * ((mask >> 0) & 1), e[1] + 2 * ((mask >> 1) & 1), e[2] + 2 * ((mask >> 2) & 1),
                     e[3] + 2 * ((mask >> 3) & 1));
        for (int mask = 0; mask < 16; ++mask)
            consider(o[0] + 2 * ((mask >> 0) & 1), o[1] + 2 * ((mask >> 1) & 1), o[2] + 2 * ((mask >> 2) & 1),
                     o[3] + 2 * ((mask >> 3) & 1));

        if (best_norm >= n) throw OracleContractViolation("Euclidean division failed to shrink the remainder");
        x = y;
        y = best_r;
    }
    return canonical_associate(x);
}

std::optional<HurwitzQuaternion> exact_left_quotient(const HurwitzQuaternion& u, const HurwitzQuaternion& x) {
    std::int64_t n = u.norm();
    if (n == 0) return std::nullopt;
    HurwitzQuaternion w = u.conjugate() * x;
    const auto& d = w.doubled();
    for (int t = 0; t < 4; ++t)
        if (d[t] % n != 0) return std::nullopt;
    int parity = static_cast<int>((d[0] / n) & 1);
    for (int t = 1; t < 4; ++t)
        if (((d[t] / n) & 1) != parity) return std::nullopt;
    return HurwitzQuaternion::from_doubled(d[0] / n, d[1] / n, d[2] / n, d[3] / n);
}

std::optional<HurwitzQuaternion> exact_right_quotient(const HurwitzQuaternion& x, const HurwitzQuaternion& c) {
    std::int64_t n = c.norm();
    if (n == 0) return std::nullopt;
    HurwitzQuaternion w = x * c.conjugate();
    const auto& d = w.doubled();
    for (int t = 0; t < 4; ++t)
        if (d[t] % n != 0) return std::nullopt;
    int parity = static_cast<int>((d[0] / n) & 1);
    for (int t = 1; t < 4; ++t)
        if (((d[t] / n) & 1) != parity) return std::nullopt;
    return HurwitzQuaternion::from_doubled(d[0] / n, d[1] / n, d[2] / n, d[3] / n);
}

HurwitzQuaternion parse_quaternion(const std::string& literal) {
    if (literal.empty()) throw InvalidArgument("empty quaternion literal");
    std::int64_t doubled[4] = {0, 0, 0, 0};
    std::size_t pos = 0;
    while (pos < literal.size()) {
        int sign = 1;
        if (literal[pos] == '+') {
            ++pos;
        } else if (literal[pos] == '-') {
            sign = -1;
            ++pos;
        }
        std::size_t end = pos;
        while (end < literal.size() && literal[end] != '+' && literal[end] != '-') ++end;
        std::string term = literal.substr(pos, end - pos);
        pos = end;
        if (term.empty()) throw InvalidArgument("bad quaternion literal '" + literal + "'");

        int slot = 0;
        char last = term.back();
        if (last == 'i' || last == 'j' || last == 'k') {
            slot = last == 'i' ? 1 : (last == 'j' ? 2 : 3);
            term.pop_back();
            if (!term.empty() && term.back() == '*') term.pop_back();
        }
        std::int64_t num = 1, den = 1;
        if (!term.empty()) {
            auto slash = term.find('/');
            std::string num_part = slash == std::string::npos ? term : term.substr(0, slash);
            if (slash != std::string::npos) {
                std::string den_part = term.substr(slash + 1);
                if (den_part != "2") throw InvalidArgument("only /2 denominators are allowed, got '" + term + "'");
                den = 2;
            }
            try {
                std::size_t used = 0;
                num = std::stoll(num_part, &used);
                if (used != num_part.size()) throw std::invalid_argument(num_part);
            } catch (const std::exception&) {
                throw InvalidArgument("bad coefficient '" + term + "' in quaternion literal");
            }
        }
        doubled[slot] += sign * num * (2 / den);
    }
    return HurwitzQuaternion::from_doubled(doubled[0], doubled[1], doubled[2], doubled[3]);
}

HurwitzQuaternion random_element(std::mt19937_64& rng, std::int64_t max_norm) {
    if (max_norm < 2) throw InvalidArgument("max_norm must be >= 2");
    std::int64_t r = isqrt64(max_norm);
    std::int64_t rr = isqrt64(4 * max_norm);
    if ((rr & 1) == 0) --rr;
    for (;;) {
        HurwitzQuaternion x;
        if (rng() & 1) {
            auto pick = [&] { return static_cast<std::int64_t>(rng() % (2 * r + 1)) - r; };
            x = HurwitzQuaternion::integral(pick(), pick(), pick(), pick());
        } else {
            std::int64_t count = rr + 1;  // odd values in [-rr, rr]
            auto pick = [&] { return -rr + 2 * static_cast<std::int64_t>(rng() % count); };
            x = HurwitzQuaternion::from_doubled(pick(), pick(), pick(), pick());
        }
        std::int64_t n = x.norm();
        if (n >= 2 && n <= max_norm) return x;
    }
}

std::uint32_t omega(std::int64_t n) {
    if (n < 1) throw InvalidArgument("omega is defined for positive integers");
    std::uint32_t count = 0;
    for (std::int64_t p = 2; p * p <= n; ++p)
        while (n % p == 0) {
            n /= p;
            ++count;
        }
    if (n > 1) ++count;
    return count;
}

bool is_prime_i64(std::int64_t n) {
    if (n < 2) return false;
    for (std::int64_t p = 2; p * p <= n; ++p)
        if (n % p == 0) return false;
    return true;
}

std::vector<std::int64_t> prime_factors(std::int64_t n) {
    std::vector<std::int64_t> out;
    for (std::int64_t p = 2; p * p <= n; ++p)
        while (n % p == 0) {
            out.push_back(p);
            n /= p;
        }
    if (n > 1) out.push_back(n);
    return out;
}

std::uint64_t HurwitzOracle::size_measure(const Element& a) const {
    std::int64_t n = a.norm();
    if (n == 0) throw InvalidArgument("zero is not cancellative");
    return omega(n);
}

const std::vector<HurwitzQuaternion>& HurwitzOracle::right_orbit_reps(std::int64_t q) const {
    std::lock_guard<std::mutex> lock(cache_->mutex);
    auto it = cache_->table.find(q);
    if (it != cache_->table.end()) return it->second;
    std::set<HurwitzQuaternion> reps;
    for (const auto& x : raw_elements_of_norm(q)) reps.insert(canonical_right_associate(x));
    return cache_->table.emplace(q, std::vector<HurwitzQuaternion>(reps.begin(), reps.end())).first->second;
}

std::vector<std::pair<HurwitzQuaternion, HurwitzQuaternion>> HurwitzOracle::atom_left_divisors(
    const Element& a) const {
    std::int64_t n = a.norm();
    if (n == 0) throw InvalidArgument("zero is not cancellative");
    std::vector<std::pair<Element, Element>> out;
    if (n == 1) return out;
    auto factors = prime_factors(n);
    factors.erase(std::unique(factors.begin(), factors.end()), factors.end());
    for (std::int64_t q : factors) {
        for (const auto& u : right_orbit_reps(q)) {
            auto cofactor = exact_left_quotient(u, a);
            if (!cofactor) continue;
            HurwitzQuaternion c = canonical_associate(*cofactor);
            if (c.is_unit()) {
                out.emplace_back(a, identity());
                continue;
            }
            auto atom = exact_right_quotient(a, c);
            if (!atom || atom->norm() != q)
                throw OracleContractViolation("hurwitz divisor normalization failed");
            out.emplace_back(*atom, c);
        }
    }
    return out;
}

}  // namespace factorlab::hurwitz
