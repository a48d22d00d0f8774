#include "factorlab/matorder.hpp"

#include <algorithm>
#include <sstream>

namespace factorlab::matorder {

namespace {

BigInt floor_div(const BigInt& a, const BigInt& b) {
    BigInt q = a / b;
    if (a % b != 0 && ((a < 0) != (b < 0))) --q;
    return q;
}

BigInt mod_reduce(const BigInt& a, const BigInt& m) {
    BigInt r = a % m;
    if (r < 0) r += m;
    return r;
}

/// Exact division of every entry; throws on inexactness.
IntMatrix2 exact_divide(const IntMatrix2& A, const BigInt& s) {
    if (s == 0 || A.a % s != 0 || A.b % s != 0 || A.c % s != 0 || A.d % s != 0)
        throw OracleContractViolation("inexact matrix division");
    return {A.a / s, A.b / s, A.c / s, A.d / s};
}

/// B * A^{-1} when integral (all entries of B*adj(A) divisible by det(A)).
IntMatrix2 right_quotient(const IntMatrix2& B, const IntMatrix2& A) {
    BigInt det = A.det();
    IntMatrix2 raw = B * A.adjugate();
    return exact_divide(raw, det);
}

}  // namespace

std::string IntMatrix2::to_literal() const {
    std::ostringstream out;
    out << "[[" << a << ',' << b << "],[" << c << ',' << d << "]]";
    return out.str();
}

IntMatrix2 parse_matrix(const std::string& literal) {
    // strict grammar: [[a,b],[c,d]] with optional spaces
    std::string s;
    for (char ch : literal)
        if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
    auto fail = [&]() -> IntMatrix2 { throw InvalidArgument("bad matrix literal '" + literal + "'"); };
    if (s.size() < 13 || s.substr(0, 2) != "[[" || s.substr(s.size() - 2) != "]]") return fail();
    std::string body = s.substr(2, s.size() - 4);
    auto mid = body.find("],[");
    if (mid == std::string::npos) return fail();
    std::string row1 = body.substr(0, mid);
    std::string row2 = body.substr(mid + 3);
    auto split = [&](const std::string& row) -> std::pair<BigInt, BigInt> {
        auto comma = row.find(',');
        if (comma == std::string::npos || row.find(',', comma + 1) != std::string::npos) fail();
        try {
            return {BigInt(row.substr(0, comma)), BigInt(row.substr(comma + 1))};
        } catch (const std::exception&) {
            fail();
        }
        return {};
    };
    auto [a, b] = split(row1);
    auto [c, d] = split(row2);
    return {a, b, c, d};
}

LeftIdeal2 hnf(const IntMatrix2& A) {
    if (A.det() == 0) throw InvalidArgument("singular matrix has no Hermite normal form");
    std::array<BigInt, 2> r1{A.a, A.b}, r2{A.c, A.d};
    // Euclid on the first column
    while (r2[0] != 0) {
        BigInt q = floor_div(r1[0], r2[0]);
        r1[0] -= q * r2[0];
        r1[1] -= q * r2[1];
        std::swap(r1, r2);
    }
    if (r1[0] == 0) std::swap(r1, r2);
    if (r1[0] < 0) {
        r1[0] = -r1[0];
        r1[1] = -r1[1];
    }
    if (r2[1] < 0) r2[1] = -r2[1];
    r1[1] = mod_reduce(r1[1], r2[1]);
    return LeftIdeal2{IntMatrix2{r1[0], r1[1], 0, r2[1]}};
}

LeftIdeal2 hnf_rows(const std::vector<std::array<BigInt, 2>>& rows) {
    // gcd-chain every row into a single pivot with nonzero first coordinate;
    // rows that end up with zero first coordinate contribute to the second
    // column's gcd
    std::array<BigInt, 2> pivot{0, 0};
    BigInt g2 = 0;
    for (auto v : rows) {
        while (v[0] != 0) {
            if (pivot[0] == 0) {
                std::swap(pivot, v);
                continue;
            }
            BigInt q = floor_div(pivot[0], v[0]);
            pivot[0] -= q * v[0];
            pivot[1] -= q * v[1];
            std::swap(pivot, v);
        }
        if (v[1] != 0) g2 = boost::multiprecision::gcd(g2, v[1] < 0 ? BigInt(-v[1]) : v[1]);
    }
    if (pivot[0] == 0 || g2 == 0) throw InvalidArgument("rows do not span a full-rank lattice");
    if (pivot[0] < 0) {
        pivot[0] = -pivot[0];
        pivot[1] = -pivot[1];
    }
    return LeftIdeal2{IntMatrix2{pivot[0], mod_reduce(pivot[1], g2), 0, g2}};
}

LeftIdeal2 unit_ideal() { return LeftIdeal2{IntMatrix2::identity()}; }

LeftIdeal2 scaled_order(const BigInt& s) {
    if (s == 0) throw InvalidArgument("zero scale");
    BigInt t = s < 0 ? -s : s;
    return LeftIdeal2{IntMatrix2::scalar(t)};
}

bool lattice_contains(const LeftIdeal2& I, const std::array<BigInt, 2>& row) {
    const IntMatrix2& G = I.gen;
    BigInt det = G.det();
    // row * adj(G) must be divisible by det
    IntMatrix2 adj = G.adjugate();
    BigInt x = row[0] * adj.a + row[1] * adj.c;
    BigInt y = row[0] * adj.b + row[1] * adj.d;
    return x % det == 0 && y % det == 0;
}

bool ideal_contains(const LeftIdeal2& outer, const LeftIdeal2& inner) {
    return lattice_contains(outer, {inner.gen.a, inner.gen.b}) &&
           lattice_contains(outer, {inner.gen.c, inner.gen.d});
}

std::vector<LeftIdeal2> maximal_left_ideals_over(const BigInt& p) {
    if (!is_prime(p)) throw InvalidArgument("maximal ideals are enumerated over a prime, got " + p.str());
    std::vector<LeftIdeal2> out;
    for (BigInt c = 0; c < p; ++c) out.push_back(LeftIdeal2{IntMatrix2{1, c, 0, p}});
    out.push_back(LeftIdeal2{IntMatrix2{p, 0, 0, 1}});
    return out;
}

LeftIdeal2 ideal_join(const LeftIdeal2& I, const LeftIdeal2& J) {
    return hnf_rows({{I.gen.a, I.gen.b}, {I.gen.c, I.gen.d}, {J.gen.a, J.gen.b}, {J.gen.c, J.gen.d}});
}

LeftIdeal2 ideal_meet(const LeftIdeal2& I, const LeftIdeal2& J) {
    // intersection via duals: (L1 cap L2)* = L1* + L2*, with the dual of a
    // row lattice generated by G spanned by the rows of adj(G)^T / det(G)
    BigInt d1 = I.gen.det(), d2 = J.gen.det();
    auto scaled_dual_rows = [](const IntMatrix2& G, const BigInt& scale) {
        IntMatrix2 adj = G.adjugate();
        // adj(G)^T rows, scaled
        return std::array<std::array<BigInt, 2>, 2>{
            std::array<BigInt, 2>{scale * adj.a, scale * adj.c},
            std::array<BigInt, 2>{scale * adj.b, scale * adj.d}};
    };
    auto rI = scaled_dual_rows(I.gen, d2);
    auto rJ = scaled_dual_rows(J.gen, d1);
    LeftIdeal2 H = hnf_rows({rI[0], rI[1], rJ[0], rJ[1]});  // = d1*d2*(L1* + L2*)
    BigInt m = d1 * d2;
    BigInt detH = H.gen.det();
    IntMatrix2 adjT{H.gen.d, -H.gen.c, -H.gen.b, H.gen.a};  // adj(H)^T
    IntMatrix2 raw{m * adjT.a, m * adjT.b, m * adjT.c, m * adjT.d};
    return hnf(exact_divide(raw, detH));
}

Transposition transpose_elements(const IntMatrix2& u, const IntMatrix2& v) {
    BigInt du = u.det(), dv = v.det();
    BigInt p = du < 0 ? -du : du;
    BigInt q = dv < 0 ? -dv : dv;
    if (!is_prime(p) || !is_prime(q))
        throw InvalidArgument("transposition requires maximal steps (prime norms)");
    if (p == q) throw InvalidArgument("coprimality required");

    IntMatrix2 a = u * v;
    LeftIdeal2 Ia = hnf(a);
    LeftIdeal2 Ip = ideal_join(Ia, scaled_order(p));
    LeftIdeal2 Iq = ideal_join(Ia, scaled_order(q));
    if (Ip.norm() != p || Iq.norm() != q)
        throw OracleContractViolation("transposition joins have unexpected norms");
    if (Iq != hnf(v)) throw OracleContractViolation("q-side join does not recover the right factor's ideal");
    if (ideal_meet(Iq, Ip) != Ia || ideal_join(Iq, Ip) != unit_ideal())
        throw OracleContractViolation("transposition lattice identities failed");

    IntMatrix2 u_prime = Ip.gen;
    IntMatrix2 v_prime = right_quotient(a, u_prime);
    BigInt dvp = v_prime.det();
    if (dvp != q && dvp != -q) throw OracleContractViolation("transposed factor has wrong norm");
    return Transposition{v_prime, u_prime, hnf(v_prime), Ip};
}

Transposition transpose_steps(const LeftIdeal2& u, const LeftIdeal2& v) {
    return transpose_elements(u.gen, v.gen);
}

std::vector<BigInt> chain_primes(const LeftIdeal2& I, const ChainPolicy& policy) {
    std::vector<BigInt> steps;
    LeftIdeal2 current = unit_ideal();
    while (current != I) {
        // express I in the basis of the current lattice
        IntMatrix2 X = right_quotient(I.gen, current.gen);
        BigInt index = X.det();
        if (index < 0) index = -index;
        auto primes = factor(index);
        primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
        BigInt p = policy.descending_primes ? primes.back() : primes.front();

        LeftIdeal2 step{IntMatrix2::identity()};
        bool all_zero = X.a % p == 0 && X.b % p == 0 && X.c % p == 0 && X.d % p == 0;
        if (all_zero) {
            auto candidates = maximal_left_ideals_over(p);
            step = candidates[policy.branch % candidates.size()];
        } else {
            step = ideal_join(hnf(X), scaled_order(p));
            if (step.norm() != p) throw OracleContractViolation("chain step has unexpected index");
        }
        current = hnf(step.gen * current.gen);
        steps.push_back(p);
    }
    return steps;
}

BigInt abstract_norm(const LeftIdeal2& I, const ChainPolicy& policy) {
    BigInt out = 1;
    for (const BigInt& p : chain_primes(I, policy)) out *= p;
    return out;
}

namespace {

// trial-division limit; beyond it a remaining cofactor's primality is unknown
const BigInt kTrialDivisionBound = 10'000'000;

}  // namespace

bool is_prime(const BigInt& n) {
    if (n < 2) return false;
    for (BigInt p = 2; p * p <= n; ++p) {
        if (n % p == 0) return false;
        if (p > kTrialDivisionBound)
            throw BudgetExceeded("primality of " + n.str() + " exceeds the trial-division budget");
    }
    return true;
}

std::vector<BigInt> factor(const BigInt& n_in) {
    BigInt n = n_in < 0 ? -n_in : n_in;
    if (n == 0) throw InvalidArgument("cannot factor zero");
    std::vector<BigInt> out;
    for (BigInt p = 2; p * p <= n; ++p) {
        while (n % p == 0) {
            out.push_back(p);
            n /= p;
        }
        if (p > kTrialDivisionBound)
            throw BudgetExceeded("factoring " + n_in.str() + " exceeds the trial-division budget");
    }
    if (n > 1) out.push_back(n);
    return out;
}

bool is_squarefree(const BigInt& n) {
    auto fs = factor(n);
    for (std::size_t i = 1; i < fs.size(); ++i)
        if (fs[i] == fs[i - 1]) return false;
    return true;
}

IntMatrix2 random_matrix(std::mt19937_64& rng, std::int64_t entry_bound, const BigInt& max_abs_det) {
    auto pick = [&] {
        return BigInt(static_cast<std::int64_t>(rng() % (2 * entry_bound + 1)) - entry_bound);
    };
    for (;;) {
        IntMatrix2 A{pick(), pick(), pick(), pick()};
        BigInt det = A.det();
        if (det == 0) continue;
        if (det < 0) det = -det;
        if (det <= max_abs_det) return A;
    }
}

std::uint64_t MatOrderOracle::size_measure(const Element& a) const {
    BigInt det = a.det();
    if (det == 0) throw InvalidArgument("singular matrices are not cancellative");
    return factor(det).size();
}

std::vector<std::pair<IntMatrix2, IntMatrix2>> MatOrderOracle::atom_left_divisors(const Element& A) const {
    BigInt det = A.det();
    if (det == 0) throw InvalidArgument("singular matrices are not cancellative");
    BigInt absdet = det < 0 ? -det : det;
    std::vector<std::pair<Element, Element>> out;
    if (absdet == 1) return out;

    auto primes = factor(absdet);
    primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
    for (const BigInt& p : primes) {
        // left-divisor classes of norm p correspond to the lines of F_p^2
        // containing both columns of A mod p
        std::array<BigInt, 2> col1{mod_reduce(A.a, p), mod_reduce(A.c, p)};
        std::array<BigInt, 2> col2{mod_reduce(A.b, p), mod_reduce(A.d, p)};
        std::vector<std::pair<BigInt, bool>> lines;  // (t, is_infinity): span{(1,t)} or span{(0,1)}
        bool zero_mod_p = col1[0] == 0 && col1[1] == 0 && col2[0] == 0 && col2[1] == 0;
        if (zero_mod_p) {
            for (BigInt t = 0; t < p; ++t) lines.emplace_back(t, false);
            lines.emplace_back(0, true);
        } else {
            auto& v = (col1[0] != 0 || col1[1] != 0) ? col1 : col2;
            if (v[0] != 0) {
                // t = v.y / v.x mod p via Fermat inverse
                BigInt inv = 1, base = v[0], e = p - 2;
                while (e > 0) {
                    if (e % 2 == 1) inv = inv * base % p;
                    base = base * base % p;
                    e /= 2;
                }
                lines.emplace_back(v[1] * inv % p, false);
            } else {
                lines.emplace_back(0, true);
            }
        }
        for (const auto& [t, infinity] : lines) {
            IntMatrix2 U = infinity ? IntMatrix2{p, 0, 0, 1} : IntMatrix2{1, 0, t, p};
            IntMatrix2 cofactor = exact_divide(U.adjugate() * A, p);  // U^{-1} A
            IntMatrix2 c = hnf(cofactor).gen;
            IntMatrix2 atom = right_quotient(A, c);
            out.emplace_back(atom, c);
        }
    }
    return out;
}

}  // namespace factorlab::matorder
