// Copyright 2026 The cymub Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <bit>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "cymub/bitmatrix.hpp"
#include "cymub/errors.hpp"

namespace cymub {

// Polynomial over F2, coefficients bit-packed LSB-first (bit b of words[w] is
// the coefficient of x^(64w + b)). Canonical form: no trailing zero words, so
// default equality is value equality. The zero polynomial is the empty vector
// and deliberately has no integer degree; callers branch on is_zero() first.
struct Poly2 {
    std::vector<uint64_t> words;

    Poly2() = default;

    static Poly2 zero() {
        return {};
    }
    static Poly2 one() {
        return monomial(0);
    }
    static Poly2 x() {
        return monomial(1);
    }

    static Poly2 monomial(int64_t degree) {
        if (degree < 0) {
            throw ArgumentError("monomial: negative degree");
        }
        Poly2 p;
        p.words.resize(size_t(degree >> 6) + 1, 0);
        p.words[degree >> 6] = uint64_t{1} << (degree & 63);
        return p;
    }

    // Low 64 coefficients from an integer bit pattern (bit i = coefficient of x^i).
    static Poly2 from_coeff_bits(uint64_t bits) {
        Poly2 p;
        if (bits) {
            p.words = {bits};
        }
        return p;
    }

    void normalize() {
        while (!words.empty() && words.back() == 0) {
            words.pop_back();
        }
    }

    bool is_zero() const {
        return words.empty();
    }

    bool is_one() const {
        return words.size() == 1 && words[0] == 1;
    }

    int64_t degree() const {
        if (words.empty()) {
            throw InternalError("degree: the zero polynomial has no degree");
        }
        return int64_t(words.size() - 1) * 64 + 63 - std::countl_zero(words.back());
    }

    bool get(int64_t i) const {
        if (i < 0 || size_t(i >> 6) >= words.size()) {
            return false;
        }
        return (words[i >> 6] >> (i & 63)) & 1;
    }

    void set(int64_t i, bool v) {
        if (i < 0) {
            throw ArgumentError("set: negative exponent");
        }
        if (size_t(i >> 6) >= words.size()) {
            if (!v) {
                return;
            }
            words.resize(size_t(i >> 6) + 1, 0);
        }
        uint64_t mask = uint64_t{1} << (i & 63);
        if (v) {
            words[i >> 6] |= mask;
        } else {
            words[i >> 6] &= ~mask;
            normalize();
        }
    }

    bool operator==(const Poly2 &other) const {
        return words == other.words;
    }
    bool operator!=(const Poly2 &other) const {
        return words != other.words;
    }

    // Big-integer-style total order (used for deterministic factor lists).
    bool operator<(const Poly2 &other) const {
        if (words.size() != other.words.size()) {
            return words.size() < other.words.size();
        }
        for (size_t w = words.size(); w-- > 0;) {
            if (words[w] != other.words[w]) {
                return words[w] < other.words[w];
            }
        }
        return false;
    }

    Poly2 operator+(const Poly2 &other) const {
        Poly2 out = words.size() >= other.words.size() ? *this : other;
        const Poly2 &small = words.size() >= other.words.size() ? other : *this;
        for (size_t w = 0; w < small.words.size(); w++) {
            out.words[w] ^= small.words[w];
        }
        out.normalize();
        return out;
    }

    Poly2 shifted(int64_t s) const {
        if (s < 0) {
            throw ArgumentError("shifted: negative shift");
        }
        if (is_zero()) {
            return {};
        }
        Poly2 out;
        size_t word_shift = s >> 6;
        int bit_shift = s & 63;
        out.words.assign(words.size() + word_shift + 1, 0);
        for (size_t w = 0; w < words.size(); w++) {
            out.words[w + word_shift] ^= words[w] << bit_shift;
            if (bit_shift) {
                out.words[w + word_shift + 1] ^= words[w] >> (64 - bit_shift);
            }
        }
        out.normalize();
        return out;
    }

    // Carry-less schoolbook product.
    Poly2 operator*(const Poly2 &other) const {
        if (is_zero() || other.is_zero()) {
            return {};
        }
        Poly2 out;
        out.words.assign(words.size() + other.words.size(), 0);
        for (size_t w = 0; w < words.size(); w++) {
            uint64_t bits = words[w];
            while (bits) {
                int b = std::countr_zero(bits);
                bits &= bits - 1;
                size_t word_shift = w + (size_t(b) >> 6);  // b < 64, so this is just w
                int bit_shift = b & 63;
                for (size_t v = 0; v < other.words.size(); v++) {
                    out.words[word_shift + v] ^= other.words[v] << bit_shift;
                    if (bit_shift) {
                        out.words[word_shift + v + 1] ^= other.words[v] >> (64 - bit_shift);
                    }
                }
            }
        }
        out.normalize();
        return out;
    }

    Poly2 square() const {
        return *this * *this;
    }

    // Formal derivative; over F2 only the odd-degree terms survive.
    Poly2 derivative() const {
        Poly2 out;
        out.words.resize(words.size(), 0);
        constexpr uint64_t even_mask = 0x5555555555555555ull;
        for (size_t w = 0; w < words.size(); w++) {
            out.words[w] = (words[w] >> 1) & even_mask;
        }
        out.normalize();
        return out;
    }

    // Square root of a perfect square (all exponents even): compresses bit 2i to bit i.
    Poly2 sqrt() const {
        Poly2 out;
        for (size_t w = 0; w < words.size(); w++) {
            uint64_t bits = words[w];
            while (bits) {
                int b = std::countr_zero(bits);
                bits &= bits - 1;
                int64_t pos = int64_t(w) * 64 + b;
                if (pos & 1) {
                    throw ArgumentError("sqrt: polynomial is not a perfect square");
                }
                out.set(pos >> 1, true);
            }
        }
        return out;
    }

    static std::pair<Poly2, Poly2> divmod(const Poly2 &a, const Poly2 &b) {
        if (b.is_zero()) {
            throw ArgumentError("divmod: division by the zero polynomial");
        }
        Poly2 q;
        Poly2 r = a;
        int64_t db = b.degree();
        while (!r.is_zero() && r.degree() >= db) {
            int64_t shift = r.degree() - db;
            q.set(shift, true);
            r = r + b.shifted(shift);
        }
        return {q, r};
    }

    Poly2 operator/(const Poly2 &other) const {
        return divmod(*this, other).first;
    }
    Poly2 operator%(const Poly2 &other) const {
        return divmod(*this, other).second;
    }

    // Human-oriented rendering, e.g. "x^4 + x + 1".
    std::string to_pretty() const {
        if (is_zero()) {
            return "0";
        }
        std::string out;
        for (int64_t i = degree(); i >= 0; i--) {
            if (!get(i)) {
                continue;
            }
            if (!out.empty()) {
                out += " + ";
            }
            if (i == 0) {
                out += "1";
            } else if (i == 1) {
                out += "x";
            } else {
                out += "x^" + std::to_string(i);
            }
        }
        return out;
    }

    // Hex encoding of the coefficient bits (least-significant hex digit holds
    // the coefficients of x^0..x^3).
    std::string to_hex() const {
        if (is_zero()) {
            return "0";
        }
        static const char digits[] = "0123456789abcdef";
        std::string out;
        bool leading = true;
        for (size_t w = words.size(); w-- > 0;) {
            for (int nib = 15; nib >= 0; nib--) {
                int v = int(words[w] >> (nib * 4)) & 0xf;
                if (leading && v == 0) {
                    continue;
                }
                leading = false;
                out += digits[v];
            }
        }
        return out;
    }

    static Poly2 from_hex(const std::string &s) {
        if (s.empty()) {
            throw ArgumentError("from_hex: empty string");
        }
        Poly2 out;
        for (char ch : s) {
            int v;
            if (ch >= '0' && ch <= '9') {
                v = ch - '0';
            } else if (ch >= 'a' && ch <= 'f') {
                v = ch - 'a' + 10;
            } else if (ch >= 'A' && ch <= 'F') {
                v = ch - 'A' + 10;
            } else {
                throw ArgumentError("from_hex: invalid hex digit");
            }
            // out = out * 16 + v
            out = out.shifted(4);
            if (v) {
                if (out.words.empty()) {
                    out.words.push_back(0);
                }
                out.words[0] |= uint64_t(v);
            }
        }
        out.normalize();
        return out;
    }
};

inline Poly2 poly_gcd(Poly2 a, Poly2 b) {
    while (!b.is_zero()) {
        Poly2 r = a % b;
        a = std::move(b);
        b = std::move(r);
    }
    return a;  // gcd(0, 0) = 0; otherwise nonzero (monic is automatic over F2)
}

inline Poly2 poly_lcm(const Poly2 &a, const Poly2 &b) {
    if (a.is_zero() || b.is_zero()) {
        return {};
    }
    return (a / poly_gcd(a, b)) * b;
}

inline bool poly_divides(const Poly2 &a, const Poly2 &b) {
    return (b % a).is_zero();
}

// Parity of the binomial coefficient C(n, k): odd exactly when the subtraction
// n - k borrows nowhere in base 2, i.e. (k AND (n - k)) == 0.
inline int binom_parity(int64_t n, int64_t k) {
    if (n < 0 || k < 0 || k > n) {
        return 0;
    }
    return ((k & (n - k)) == 0) ? 1 : 0;
}

// The Fibonacci-style polynomial family over F2:
//   f(-2) = 1, f(-1) = 0, f(0) = 1, f(k) = x*f(k-1) + f(k-2).
// Direct construction; for huge indices use fib_pair_at against a modulus.
inline Poly2 fib_poly(int64_t k) {
    if (k < -2) {
        throw ArgumentError("fib_poly: index below -2");
    }
    if (k == -2) {
        return Poly2::one();
    }
    if (k == -1) {
        return Poly2::zero();
    }
    if (k > (int64_t{1} << 20)) {
        throw BudgetError("fib_poly: direct construction capped at k <= 2^20");
    }
    Poly2 prev = Poly2::zero();  // f(-1)
    Poly2 cur = Poly2::one();    // f(0)
    for (int64_t j = 1; j <= k; j++) {
        Poly2 next = cur.shifted(1) + prev;
        prev = std::move(cur);
        cur = std::move(next);
    }
    return cur;
}

// Coefficient of x^i in fib_poly(k), k >= 0, without building the polynomial:
// zero unless i and k share parity, else the parity of C((k+i)/2, (k-i)/2).
inline int fib_coeff(int64_t k, int64_t i) {
    if (k < 0) {
        throw ArgumentError("fib_coeff: negative index");
    }
    if (i < 0 || i > k || (((k - i) & 1) != 0)) {
        return 0;
    }
    return binom_parity((k + i) / 2, (k - i) / 2);
}

// Companion family with C(k+i, k-i) parities as coefficients; satisfies
// fib_poly(2k)(x) = g_poly(k)(x^2).
inline Poly2 g_poly(int64_t k) {
    if (k < 0) {
        throw ArgumentError("g_poly: negative index");
    }
    Poly2 out;
    for (int64_t i = 0; i <= k; i++) {
        if (binom_parity(k + i, k - i)) {
            out.set(i, true);
        }
    }
    return out;
}

// Horner evaluation of p at a square matrix over F2.
inline BitMatrix poly_eval_matrix(const Poly2 &p, const BitMatrix &b) {
    if (!b.is_square()) {
        throw ShapeError("poly_eval_matrix: matrix not square");
    }
    size_t n = b.n_rows;
    BitMatrix acc = BitMatrix::zeros(n, n);
    if (p.is_zero()) {
        return acc;
    }
    BitMatrix id = BitMatrix::identity(n);
    for (int64_t i = p.degree(); i >= 0; i--) {
        acc = acc * b;
        if (p.get(i)) {
            acc = acc + id;
        }
    }
    return acc;
}

// Minimal polynomial of a square matrix (up to 64 x 64): least-degree monic
// annihilator, found as the lcm of per-basis-vector Krylov relations. The
// result is cross-checked by evaluation before it is returned.
inline Poly2 min_poly(const BitMatrix &b) {
    if (!b.is_square()) {
        throw ShapeError("min_poly: matrix not square");
    }
    size_t n = b.n_rows;
    if (n == 0) {
        throw ArgumentError("min_poly: empty matrix");
    }
    if (n > 64) {
        throw BudgetError("min_poly: capped at 64 x 64");
    }
    std::vector<uint64_t> rows(n);
    for (size_t i = 0; i < n; i++) {
        rows[i] = b.row_bits(i);
    }
    // v holds a column vector; component i of B*v is <row i of B, v>.
    auto apply = [&](uint64_t v) {
        uint64_t out = 0;
        for (size_t i = 0; i < n; i++) {
            out |= uint64_t(std::popcount(rows[i] & v) & 1) << i;
        }
        return out;
    };
    Poly2 mu = Poly2::one();
    for (size_t s = 0; s < n; s++) {
        if (!mu.is_zero() && !mu.is_one() && mu.degree() == int64_t(n)) {
            break;  // cannot grow further
        }
        // Reduce the Krylov sequence of e_s to its first linear relation.
        std::vector<std::optional<std::pair<uint64_t, Poly2>>> pivots(n);
        uint64_t cur = uint64_t{1} << s;  // B^t e_s, unreduced
        for (int64_t t = 0;; t++) {
            uint64_t r = cur;
            Poly2 q = Poly2::monomial(t);
            while (r) {
                size_t lead = 63 - std::countl_zero(r);
                if (!pivots[lead].has_value()) {
                    break;
                }
                r ^= pivots[lead]->first;
                q = q + pivots[lead]->second;
            }
            if (r == 0) {
                mu = poly_lcm(mu, q);
                break;
            }
            pivots[63 - std::countl_zero(r)] = std::make_pair(r, q);
            cur = apply(cur);
        }
    }
    if (!poly_eval_matrix(mu, b).is_zero()) {
        throw InternalError("min_poly: candidate does not annihilate the matrix");
    }
    return mu;
}

namespace detail {

// Splits a squarefree polynomial into its irreducible factors: distinct-degree
// splitting by gcd with x^(2^i) + x, then ascending trial division for parts
// that hold several factors of one degree.
inline void split_squarefree(const Poly2 &w, std::set<Poly2> &out) {
    if (w.is_zero()) {
        throw InternalError("split_squarefree: zero input");
    }
    if (w.is_one()) {
        return;
    }
    Poly2 rem = w;
    Poly2 h = Poly2::x() % w;
    for (int64_t i = 1; !rem.is_one() && 2 * i <= rem.degree(); i++) {
        h = h.square() % w;  // x^(2^i) mod w
        Poly2 part = poly_gcd(h + (Poly2::x() % w), rem);
        if (part.is_one() || part.is_zero()) {
            continue;
        }
        rem = rem / part;
        if (part.degree() == i) {
            out.insert(part);
            continue;
        }
        // Several factors share degree i; peel them off in ascending order.
        if (i > 20) {
            throw BudgetError("split_squarefree: equal-degree part too large to split");
        }
        Poly2 g = part;
        for (uint64_t code = 0; g.degree() > i; code++) {
            Poly2 cand = Poly2::monomial(i) + Poly2::from_coeff_bits(code);
            if (poly_divides(cand, g)) {
                out.insert(cand);
                g = g / cand;
            }
        }
        out.insert(g);
    }
    if (!rem.is_one()) {
        out.insert(rem);  // leftover of degree > 2i is itself irreducible
    }
}

}  // namespace detail

// Distinct irreducible factors of p (multiplicities dropped), sorted ascending.
inline std::vector<Poly2> factor_squarefree_irreducible(const Poly2 &p) {
    if (p.is_zero()) {
        throw ArgumentError("factor_squarefree_irreducible: zero polynomial");
    }
    std::set<Poly2> out;
    std::vector<Poly2> stack = {p};
    while (!stack.empty()) {
        Poly2 q = std::move(stack.back());
        stack.pop_back();
        if (q.degree() < 1) {
            continue;
        }
        Poly2 d = q.derivative();
        if (d.is_zero()) {
            stack.push_back(q.sqrt());  // perfect square in characteristic 2
            continue;
        }
        Poly2 g = poly_gcd(q, d);
        detail::split_squarefree(q / g, out);
        stack.push_back(std::move(g));
    }
    return std::vector<Poly2>(out.begin(), out.end());
}

// Reduced pair (f(k-1) mod modulus, f(k) mod modulus), computed in O(log k)
// quotient-ring products with the index-doubling identities
//   f(2j-1) = x * f(j-1)^2,   f(2j) = f(j)^2 + f(j-1)^2.
struct QuotientPair {
    Poly2 modulus;
    Poly2 lo;  // f(k-1) mod modulus
    Poly2 hi;  // f(k)   mod modulus
};

inline QuotientPair fib_pair_at(int64_t k, const Poly2 &modulus) {
    if (k < 0) {
        throw ArgumentError("fib_pair_at: negative index");
    }
    if (modulus.is_zero() || modulus.degree() < 1) {
        throw ArgumentError("fib_pair_at: modulus must have degree >= 1");
    }
    Poly2 lo = Poly2::zero();  // f(-1)
    Poly2 hi = Poly2::one();   // f(0)
    for (int bit = 63 - std::countl_zero(uint64_t(k) | 1); bit >= 0; bit--) {
        Poly2 lo2 = lo.square() % modulus;
        Poly2 hi2 = hi.square() % modulus;
        lo = lo2.shifted(1) % modulus;
        hi = hi2 + lo2;
        if ((k >> bit) & 1) {
            Poly2 next = (hi.shifted(1) % modulus) + lo;
            lo = std::move(hi);
            hi = std::move(next);
        }
    }
    return {modulus, std::move(lo), std::move(hi)};
}

// Outcome of scanning f(1)..f(k_max) for a zero residue against a factor list.
struct ScanReport {
    bool passed = false;
    std::optional<int64_t> first_failing_j;
    int64_t k_max = 0;
    bool skipped_odd = false;
};

// Walks the three-term recursion inside F2[x]/(p) for every supplied factor p
// in lockstep and reports the first index j in 1..k_max where some residue of
// f(j) vanishes. With skip_odd set, odd indices are not tested: f(2k+1) =
// x * f(k)^2, so once x is a unit (checked) the first vanishing index is even.
// Any hit is re-derived through fib_pair_at before it is reported; the two
// routes disagreeing means a library bug.
inline ScanReport fib_scan_invertibility(const std::vector<Poly2> &factors, int64_t k_max, bool skip_odd = false) {
    if (factors.empty()) {
        throw ArgumentError("fib_scan_invertibility: no factors supplied");
    }
    if (k_max < 0) {
        throw ArgumentError("fib_scan_invertibility: negative scan bound");
    }
    for (const Poly2 &f : factors) {
        if (f.is_zero() || f.degree() < 1) {
            throw ArgumentError("fib_scan_invertibility: factors must have degree >= 1");
        }
    }
    auto confirm_hit = [&](int64_t j, const Poly2 &factor) {
        if (!fib_pair_at(j, factor).hi.is_zero()) {
            throw InternalError("fib_scan_invertibility: iterative and doubling routes disagree");
        }
    };
    if (skip_odd) {
        for (const Poly2 &f : factors) {
            if (!f.get(0)) {
                // x divides the factor, so f(1) = x already vanishes there.
                if (k_max >= 1) {
                    confirm_hit(1, f);
                    return {false, 1, k_max, true};
                }
                return {true, std::nullopt, k_max, true};
            }
        }
    }

    bool all_small = true;
    for (const Poly2 &f : factors) {
        all_small = all_small && f.degree() <= 63;
    }
    if (all_small) {
        struct Slot {
            uint64_t mod;
            int deg;
            uint64_t lo = 0;  // f(j-1) residue
            uint64_t hi = 1;  // f(j) residue
        };
        std::vector<Slot> slots;
        slots.reserve(factors.size());
        for (const Poly2 &f : factors) {
            slots.push_back({f.words[0], int(f.degree()), 0, 1});
        }
        for (int64_t j = 1; j <= k_max; j++) {
            bool test = !(skip_odd && (j & 1));
            for (size_t s = 0; s < slots.size(); s++) {
                Slot &sl = slots[s];
                uint64_t next = sl.hi << 1;
                if (sl.deg < 64 && (next >> sl.deg) & 1) {
                    next ^= sl.mod;
                }
                next ^= sl.lo;
                sl.lo = sl.hi;
                sl.hi = next;
                if (test && sl.hi == 0) {
                    confirm_hit(j, factors[s]);
                    return {false, j, k_max, skip_odd};
                }
            }
        }
        return {true, std::nullopt, k_max, skip_odd};
    }

    // Wide-modulus fallback: same recursion in full Poly2 arithmetic.
    std::vector<std::pair<Poly2, Poly2>> pairs(factors.size(), {Poly2::zero(), Poly2::one()});
    for (int64_t j = 1; j <= k_max; j++) {
        bool test = !(skip_odd && (j & 1));
        for (size_t s = 0; s < pairs.size(); s++) {
            Poly2 next = (pairs[s].second.shifted(1) % factors[s]) + pairs[s].first;
            pairs[s].first = std::move(pairs[s].second);
            pairs[s].second = std::move(next);
            if (test && pairs[s].second.is_zero()) {
                confirm_hit(j, factors[s]);
                return {false, j, k_max, skip_odd};
            }
        }
    }
    return {true, std::nullopt, k_max, skip_odd};
}

}  // namespace cymub
