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
#include <string>
#include <vector>

#include "cymub/bitmatrix.hpp"
#include "cymub/errors.hpp"
#include "cymub/symplectic.hpp"

namespace cymub {

// A Pauli word on m sites up to phase: bit k of x_bits / z_bits records an X /
// Z contribution on site k. Both bits set means Y. Signs are out of scope
// here; commutation only depends on these bit vectors.
struct PauliVec {
    size_t m = 0;
    uint64_t x_bits = 0;
    uint64_t z_bits = 0;

    PauliVec() = default;
    PauliVec(size_t m_, uint64_t x, uint64_t z) : m(m_), x_bits(x), z_bits(z) {
        if (m_ > 64) {
            throw ArgumentError("PauliVec: at most 64 sites");
        }
        uint64_t mask = m_ == 64 ? ~uint64_t{0} : (uint64_t{1} << m_) - 1;
        if ((x & ~mask) || (z & ~mask)) {
            throw ArgumentError("PauliVec: bits beyond site count");
        }
    }

    // Splits a packed 2m-bit row (x part in the low m bits, z part above).
    static PauliVec from_row_bits(size_t m, uint64_t row) {
        if (m == 0 || m > 32) {
            throw ArgumentError("from_row_bits: need 1 <= m <= 32");
        }
        uint64_t mask = (uint64_t{1} << m) - 1;
        return PauliVec(m, row & mask, (row >> m) & mask);
    }

    bool is_identity() const {
        return x_bits == 0 && z_bits == 0;
    }

    bool operator==(const PauliVec &o) const {
        return m == o.m && x_bits == o.x_bits && z_bits == o.z_bits;
    }

    PauliVec operator+(const PauliVec &o) const {
        if (m != o.m) {
            throw ShapeError("PauliVec add: mixed site counts");
        }
        return PauliVec(m, x_bits ^ o.x_bits, z_bits ^ o.z_bits);
    }

    // Rendering such as "Z1" or "YX": site 0 leftmost, '1' for the identity site.
    std::string label() const {
        std::string out(m, '1');
        for (size_t k = 0; k < m; k++) {
            bool x = (x_bits >> k) & 1;
            bool z = (z_bits >> k) & 1;
            out[k] = x ? (z ? 'Y' : 'X') : (z ? 'Z' : '1');
        }
        return out;
    }
};

// The symplectic pairing <a, b> = a_x . b_z + a_z . b_x over F2; zero exactly
// when the two Pauli words commute.
inline int sympl_inner(const PauliVec &a, const PauliVec &b) {
    if (a.m != b.m) {
        throw ShapeError("sympl_inner: mixed site counts");
    }
    return (std::popcount(a.x_bits & b.z_bits) + std::popcount(a.z_bits & b.x_bits)) & 1;
}

inline bool commute(const PauliVec &a, const PauliVec &b) {
    return sympl_inner(a, b) == 0;
}

// All 2^m row-span elements of a generator matrix (the zero word included),
// in Gray-free subset order: element c is the XOR of the rows picked by c's bits.
inline std::vector<PauliVec> class_members(const GeneratorMatrix &g, bool allow_large = false) {
    size_t m = g.m;
    if (m == 0 || m > 32) {
        throw ArgumentError("class_members: need 1 <= m <= 32");
    }
    if (m > 12 && !allow_large) {
        throw BudgetError("class_members: 2^m span enumeration capped at m <= 12 (pass allow_large to override)");
    }
    std::vector<uint64_t> rows(m);
    for (size_t r = 0; r < m; r++) {
        rows[r] = g.mat.row_bits(r);
    }
    std::vector<uint64_t> span(size_t{1} << m, 0);
    for (uint64_t c = 1; c < span.size(); c++) {
        uint64_t low = c & (c - 1);
        span[c] = span[low] ^ rows[std::countr_zero(c)];
    }
    std::vector<PauliVec> out;
    out.reserve(span.size());
    for (uint64_t v : span) {
        out.push_back(PauliVec::from_row_bits(m, v));
    }
    return out;
}

enum class PartitionMode {
    kAuto,        // enumeration up to m = 12, polynomial criterion beyond
    kEnumerate,   // explicit span walk with an occupancy table
    kPolynomial,  // invertibility of f(1)..f(2^m - 1) plus the order identity
};

// Checks that the 2^m + 1 classes generated by B slice the nonzero Pauli
// words into commuting, pairwise disjoint sets that cover everything.
// Returns false (rather than throwing) when the candidate fails mathematically.
inline bool partition_verify(const BitMatrix &b, PartitionMode mode = PartitionMode::kAuto) {
    if (!b.is_square() || b.n_rows == 0) {
        throw ShapeError("partition_verify: candidate must be square and nonempty");
    }
    size_t m = b.n_rows;
    if (!b.is_symmetric()) {
        return false;
    }
    if (mode == PartitionMode::kAuto) {
        mode = m <= 12 ? PartitionMode::kEnumerate : PartitionMode::kPolynomial;
    }

    if (mode == PartitionMode::kPolynomial) {
        // Disjointness of classes j and k reduces to f(|j-k|-1)(B) being
        // invertible, so scanning the full index range once covers every pair;
        // symplecticity of the companion transports isotropy from the first
        // class to all others, and the order identity closes the cycle.
        if (m > 28) {
            throw BudgetError("partition_verify: polynomial scan capped at m <= 28");
        }
        if (!is_symplectic(embed_c(b))) {
            return false;
        }
        Poly2 mu = min_poly(b);
        std::vector<Poly2> factors = factor_squarefree_irreducible(mu);
        int64_t full_range = (int64_t{1} << m) - 1;
        ScanReport scan = fib_scan_invertibility(factors, full_range);
        return scan.passed && order_check(b);
    }

    if (m > 14) {
        throw BudgetError("partition_verify: enumeration mode capped at m <= 14");
    }
    size_t n_classes = (size_t{1} << m) + 1;
    std::vector<uint64_t> seen((size_t{1} << (2 * m)) / 64 + 1, 0);
    size_t marked = 0;

    // Walk the classes with the two-term matrix recursion instead of
    // re-evaluating polynomials per class. Class j uses the pair
    // (f(j-2) | f(j-3)); the walk starts at j = 1 with (f(-1), f(-2)) = (0, I).
    BitMatrix fm2 = BitMatrix::identity(m);  // f(j-3)(B)
    BitMatrix fm1 = BitMatrix::zeros(m, m);  // f(j-2)(B)
    for (size_t j = 1; j <= n_classes; j++) {
        BitMatrix g = hstack(fm1, fm2);  // (f(j-2) | f(j-3)) at this point
        if (g.rank() != m) {
            return false;
        }
        GeneratorMatrix gen{m, int64_t(j), g};
        std::vector<PauliVec> members = class_members(gen, true);
        // Isotropy: explicit pair loop for small m, matrix identity beyond.
        if (m <= 6) {
            for (size_t a = 0; a < m; a++) {
                for (size_t c = a + 1; c < m; c++) {
                    PauliVec pa = PauliVec::from_row_bits(m, g.row_bits(a));
                    PauliVec pc = PauliVec::from_row_bits(m, g.row_bits(c));
                    if (!commute(pa, pc)) {
                        return false;
                    }
                }
            }
        } else {
            if (!(g * symplectic_form(m) * g.transposed()).is_zero()) {
                return false;
            }
        }
        for (const PauliVec &p : members) {
            if (p.is_identity()) {
                continue;
            }
            uint64_t v = p.x_bits | (p.z_bits << m);
            if ((seen[v >> 6] >> (v & 63)) & 1) {
                return false;  // some nonzero word sits in two classes
            }
            seen[v >> 6] |= uint64_t{1} << (v & 63);
            marked++;
        }
        // Advance the pair: f(j-1) = B * f(j-2) + f(j-3).
        BitMatrix next = b * fm1 + fm2;
        fm2 = std::move(fm1);
        fm1 = std::move(next);
    }
    return marked == (size_t{1} << (2 * m)) - 1;
}

}  // namespace cymub
