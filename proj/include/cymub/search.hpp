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

#ifndef CYMUB_SEARCH_HPP_
#define CYMUB_SEARCH_HPP_

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cymub/bitmatrix.hpp"
#include "cymub/errors.hpp"
#include "cymub/symplectic.hpp"

namespace cymub {

// The staircase matrix: ones on and above the main anti-diagonal. It is
// symmetric by construction and is the starting point of the corner search.
inline BitMatrix staircase(size_t m) {
    if (m == 0) {
        throw ArgumentError("staircase: need m >= 1");
    }
    BitMatrix b = BitMatrix::zeros(m, m);
    for (size_t i = 0; i < m; i++) {
        for (size_t j = 0; i + j < m; j++) {
            b.set(i, j, true);
        }
    }
    return b;
}

// Staircase with a small symmetric adjustment block XORed into the
// lower-right corner. The corner must be square, symmetric and no larger
// than the matrix itself.
inline BitMatrix ansatz_b(size_t m, const BitMatrix &corner) {
    if (!corner.is_square() || corner.n_rows == 0 || corner.n_rows > m) {
        throw ShapeError("ansatz_b: corner must be square, nonempty and fit inside the seed");
    }
    if (!corner.is_symmetric()) {
        throw ValidationError("ansatz_b: corner must be symmetric to keep the seed symmetric");
    }
    size_t c = corner.n_rows;
    BitMatrix b = staircase(m);
    for (size_t i = 0; i < c; i++) {
        for (size_t j = 0; j < c; j++) {
            size_t r = m - c + i;
            size_t s = m - c + j;
            b.set(r, s, b.get(r, s) ^ corner.get(i, j));
        }
    }
    return b;
}

// Number of symmetric n x n binary matrices: 2^(n(n+1)/2).
inline uint64_t symmetric_code_count(size_t n) {
    size_t bits = n * (n + 1) / 2;
    if (bits > 62) {
        throw BudgetError("symmetric_code_count: code space exceeds 62 bits");
    }
    return uint64_t{1} << bits;
}

// Decodes a symmetric matrix from an integer code. The upper triangle is
// filled row by row, least significant bit first, and mirrored; the code
// order therefore fixes which solution counts as the first one found.
inline BitMatrix symmetric_from_code(size_t n, uint64_t code) {
    if (n == 0) {
        throw ArgumentError("symmetric_from_code: need n >= 1");
    }
    if (code >= symmetric_code_count(n)) {
        throw ArgumentError("symmetric_from_code: code out of range");
    }
    BitMatrix b = BitMatrix::zeros(n, n);
    size_t t = 0;
    for (size_t i = 0; i < n; i++) {
        for (size_t j = i; j < n; j++) {
            bool v = (code >> t) & 1;
            b.set(i, j, v);
            b.set(j, i, v);
            t++;
        }
    }
    return b;
}

// One accepted seed: the matrix, the corner that produced it (absent for
// exhaustive sweeps) and the full condition report.
struct SearchHit {
    std::optional<BitMatrix> corner;
    BitMatrix b;
    ConditionReport report;
};

struct SearchResult {
    size_t m = 0;
    std::string strategy;
    std::optional<size_t> corner_size;  // set when the corner strategy found hits
    std::vector<SearchHit> hits;
    uint64_t tested = 0;
    double elapsed_ms = 0.0;
    bool budget_exhausted = false;
};

// Every symmetric seed that satisfies all conditions, in ascending code
// order. The sweep is exponential in m(m+1)/2, hence the tight cap.
inline std::vector<BitMatrix> enumerate_all(size_t m, bool force = false) {
    if (m == 0) {
        throw ArgumentError("enumerate_all: need m >= 1");
    }
    size_t cap = force ? 5 : 4;
    if (m > cap) {
        throw BudgetError("enumerate_all: exhaustive sweep capped at m <= 4 (m <= 5 with force)");
    }
    std::vector<BitMatrix> out;
    uint64_t total = symmetric_code_count(m);
    for (uint64_t code = 0; code < total; code++) {
        BitMatrix b = symmetric_from_code(m, code);
        if (check_conditions(b).all_ok()) {
            out.push_back(b);
        }
    }
    return out;
}

inline SearchResult enumerate_search(size_t m, bool force = false) {
    auto t0 = std::chrono::steady_clock::now();
    SearchResult out;
    out.m = m;
    out.strategy = "exhaustive";
    uint64_t total = symmetric_code_count(m);
    if (m == 0) {
        throw ArgumentError("enumerate_search: need m >= 1");
    }
    size_t cap = force ? 5 : 4;
    if (m > cap) {
        throw BudgetError("enumerate_search: exhaustive sweep capped at m <= 4 (m <= 5 with force)");
    }
    for (uint64_t code = 0; code < total; code++) {
        BitMatrix b = symmetric_from_code(m, code);
        out.tested++;
        ConditionReport rep = check_conditions(b);
        if (rep.all_ok()) {
            out.hits.push_back({std::nullopt, b, rep});
        }
    }
    auto t1 = std::chrono::steady_clock::now();
    out.elapsed_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    return out;
}

// Sweeps symmetric corner adjustments of growing size over the staircase,
// stopping at the smallest corner size that yields any accepted seed. All
// corners of that size are reported, in ascending code order. A budget of
// zero seconds means no limit; the budget is polled between candidates.
inline SearchResult corner_search(size_t m, size_t max_corner = 3, double budget_seconds = 0.0) {
    if (m < 2) {
        throw ArgumentError("corner_search: need m >= 2; use the exhaustive sweep below that");
    }
    if (max_corner < 2 || max_corner > 4) {
        throw ArgumentError("corner_search: largest corner size must lie in 2..4");
    }
    auto t0 = std::chrono::steady_clock::now();
    auto finalize = [&](SearchResult &r) {
        auto t1 = std::chrono::steady_clock::now();
        r.elapsed_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    };
    SearchResult out;
    out.m = m;
    out.strategy = "corner";
    for (size_t c = 2; c <= max_corner && c <= m; c++) {
        uint64_t total = symmetric_code_count(c);
        for (uint64_t code = 0; code < total; code++) {
            if (budget_seconds > 0) {
                auto now = std::chrono::steady_clock::now();
                double spent = std::chrono::duration<double>(now - t0).count();
                if (spent > budget_seconds) {
                    out.budget_exhausted = true;
                    if (!out.hits.empty()) {
                        out.corner_size = c;
                    }
                    finalize(out);
                    return out;
                }
            }
            BitMatrix corner = symmetric_from_code(c, code);
            BitMatrix b = ansatz_b(m, corner);
            out.tested++;
            ConditionReport rep = check_conditions(b);
            if (rep.all_ok()) {
                out.hits.push_back({corner, b, rep});
            }
        }
        if (!out.hits.empty()) {
            out.corner_size = c;
            break;
        }
    }
    finalize(out);
    return out;
}

// Conjugates the seed by a permutation: out(i, j) = b(sigma(i), sigma(j)).
// Relabeling the index bits this way preserves all acceptance conditions.
inline BitMatrix permute_b(const BitMatrix &b, const std::vector<size_t> &sigma) {
    if (!b.is_square()) {
        throw ShapeError("permute_b: seed must be square");
    }
    size_t m = b.n_rows;
    if (sigma.size() != m) {
        throw ArgumentError("permute_b: permutation length must match the seed size");
    }
    std::vector<bool> seen(m, false);
    for (size_t v : sigma) {
        if (v >= m || seen[v]) {
            throw ArgumentError("permute_b: not a permutation");
        }
        seen[v] = true;
    }
    BitMatrix out = BitMatrix::zeros(m, m);
    for (size_t i = 0; i < m; i++) {
        for (size_t j = 0; j < m; j++) {
            out.set(i, j, b.get(sigma[i], sigma[j]));
        }
    }
    return out;
}

// Tabulated corner adjustments known to turn the staircase into an accepted
// seed, one per size in 4..24. Sizes 12, 20 and 21 need a 3 x 3 corner;
// every other size gets by with 2 x 2.
inline BitMatrix known_corner(size_t m) {
    switch (m) {
        case 4:
            return BitMatrix::from_rows({"00", "01"});
        case 5:
            return BitMatrix::from_rows({"00", "00"});
        case 6:
            return BitMatrix::from_rows({"00", "00"});
        case 7:
            return BitMatrix::from_rows({"00", "01"});
        case 8:
            return BitMatrix::from_rows({"01", "11"});
        case 9:
            return BitMatrix::from_rows({"00", "00"});
        case 10:
            return BitMatrix::from_rows({"10", "00"});
        case 11:
            return BitMatrix::from_rows({"00", "00"});
        case 12:
            return BitMatrix::from_rows({"001", "000", "100"});
        case 13:
            return BitMatrix::from_rows({"00", "01"});
        case 14:
            return BitMatrix::from_rows({"00", "00"});
        case 15:
            return BitMatrix::from_rows({"01", "11"});
        case 16:
            return BitMatrix::from_rows({"00", "01"});
        case 17:
            return BitMatrix::from_rows({"00", "01"});
        case 18:
            return BitMatrix::from_rows({"00", "00"});
        case 19:
            return BitMatrix::from_rows({"00", "01"});
        case 20:
            return BitMatrix::from_rows({"100", "000", "001"});
        case 21:
            return BitMatrix::from_rows({"001", "000", "100"});
        case 22:
            return BitMatrix::from_rows({"10", "00"});
        case 23:
            return BitMatrix::from_rows({"00", "00"});
        case 24:
            return BitMatrix::from_rows({"10", "01"});
        default:
            throw ArgumentError("known_corner: corners are tabulated for 4 <= m <= 24 only");
    }
}

// A seed known to pass all conditions: the bare staircase for m <= 3 and
// the staircase with the tabulated corner for 4 <= m <= 24.
inline BitMatrix known_seed(size_t m) {
    if (m == 0) {
        throw ArgumentError("known_seed: need m >= 1");
    }
    if (m <= 3) {
        return staircase(m);
    }
    return ansatz_b(m, known_corner(m));
}

}  // namespace cymub

#endif  // CYMUB_SEARCH_HPP_
