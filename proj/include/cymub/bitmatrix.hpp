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
#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "cymub/errors.hpp"

namespace cymub {

// Dense matrix over F2 with each row bit-packed into 64-bit words. Column c of a
// row lives at bit (c % 64) of word (c / 64). Bits at column indices >= n_cols
// are kept zero at all times, so whole-word XOR and equality are exact.
struct BitMatrix {
    size_t n_rows = 0;
    size_t n_cols = 0;
    size_t words_per_row = 0;
    std::vector<uint64_t> words;

    BitMatrix() = default;

    BitMatrix(size_t rows, size_t cols)
        : n_rows(rows),
          n_cols(cols),
          words_per_row((cols + 63) >> 6),
          words(rows * ((cols + 63) >> 6), 0) {}

    static BitMatrix zeros(size_t rows, size_t cols) {
        return BitMatrix(rows, cols);
    }

    static BitMatrix identity(size_t n) {
        BitMatrix m(n, n);
        for (size_t i = 0; i < n; i++) {
            m.set(i, i, true);
        }
        return m;
    }

    // Builds a matrix from '0'/'1' strings; the leftmost character is column 0.
    static BitMatrix from_rows(const std::vector<std::string> &rows) {
        size_t cols = rows.empty() ? 0 : rows[0].size();
        BitMatrix m(rows.size(), cols);
        for (size_t i = 0; i < rows.size(); i++) {
            if (rows[i].size() != cols) {
                throw ArgumentError("from_rows: ragged row lengths");
            }
            for (size_t j = 0; j < cols; j++) {
                char ch = rows[i][j];
                if (ch != '0' && ch != '1') {
                    throw ArgumentError("from_rows: expected '0' or '1'");
                }
                m.set(i, j, ch == '1');
            }
        }
        return m;
    }

    std::vector<std::string> to_row_strings() const {
        std::vector<std::string> out(n_rows, std::string(n_cols, '0'));
        for (size_t i = 0; i < n_rows; i++) {
            for (size_t j = 0; j < n_cols; j++) {
                if (get(i, j)) {
                    out[i][j] = '1';
                }
            }
        }
        return out;
    }

    uint64_t *row(size_t r) {
        return words.data() + r * words_per_row;
    }
    const uint64_t *row(size_t r) const {
        return words.data() + r * words_per_row;
    }

    // Whole row as one word; only valid for matrices at most 64 columns wide.
    uint64_t row_bits(size_t r) const {
        if (n_cols > 64) {
            throw ShapeError("row_bits: matrix wider than one word");
        }
        return n_cols == 0 ? 0 : row(r)[0];
    }

    bool get(size_t r, size_t c) const {
        return (row(r)[c >> 6] >> (c & 63)) & 1;
    }

    void set(size_t r, size_t c, bool v) {
        uint64_t mask = uint64_t{1} << (c & 63);
        if (v) {
            row(r)[c >> 6] |= mask;
        } else {
            row(r)[c >> 6] &= ~mask;
        }
    }

    bool operator==(const BitMatrix &other) const {
        return n_rows == other.n_rows && n_cols == other.n_cols && words == other.words;
    }
    bool operator!=(const BitMatrix &other) const {
        return !(*this == other);
    }

    // Entrywise XOR.
    BitMatrix operator+(const BitMatrix &other) const {
        if (n_rows != other.n_rows || n_cols != other.n_cols) {
            throw ShapeError("add: shape mismatch");
        }
        BitMatrix out = *this;
        for (size_t w = 0; w < words.size(); w++) {
            out.words[w] ^= other.words[w];
        }
        return out;
    }

    // F2 matrix product: accumulates rows of `other` selected by the set bits of
    // each row of `this`, one packed word at a time.
    BitMatrix operator*(const BitMatrix &other) const {
        if (n_cols != other.n_rows) {
            throw ShapeError("mul: inner dimensions differ");
        }
        BitMatrix out(n_rows, other.n_cols);
        for (size_t i = 0; i < n_rows; i++) {
            const uint64_t *src = row(i);
            uint64_t *dst = out.row(i);
            for (size_t w = 0; w < words_per_row; w++) {
                uint64_t bits = src[w];
                while (bits) {
                    size_t k = (w << 6) + std::countr_zero(bits);
                    bits &= bits - 1;
                    const uint64_t *other_row = other.row(k);
                    for (size_t v = 0; v < other.words_per_row; v++) {
                        dst[v] ^= other_row[v];
                    }
                }
            }
        }
        return out;
    }

    BitMatrix transposed() const {
        BitMatrix out(n_cols, n_rows);
        for (size_t i = 0; i < n_rows; i++) {
            for (size_t j = 0; j < n_cols; j++) {
                if (get(i, j)) {
                    out.set(j, i, true);
                }
            }
        }
        return out;
    }

    bool is_square() const {
        return n_rows == n_cols;
    }

    bool is_symmetric() const {
        return is_square() && *this == transposed();
    }

    bool is_zero() const {
        for (uint64_t w : words) {
            if (w) {
                return false;
            }
        }
        return true;
    }

    void swap_rows(size_t a, size_t b) {
        if (a == b) {
            return;
        }
        for (size_t w = 0; w < words_per_row; w++) {
            std::swap(row(a)[w], row(b)[w]);
        }
    }

    void xor_row_into(size_t src, size_t dst) {
        const uint64_t *s = row(src);
        uint64_t *d = row(dst);
        for (size_t w = 0; w < words_per_row; w++) {
            d[w] ^= s[w];
        }
    }

    size_t rank() const {
        BitMatrix work = *this;
        size_t pivot = 0;
        for (size_t col = 0; col < work.n_cols && pivot < work.n_rows; col++) {
            size_t sel = pivot;
            while (sel < work.n_rows && !work.get(sel, col)) {
                sel++;
            }
            if (sel == work.n_rows) {
                continue;
            }
            work.swap_rows(pivot, sel);
            for (size_t r = pivot + 1; r < work.n_rows; r++) {
                if (work.get(r, col)) {
                    work.xor_row_into(pivot, r);
                }
            }
            pivot++;
        }
        return pivot;
    }

    bool invertible() const {
        if (!is_square()) {
            throw ShapeError("invertible: matrix not square");
        }
        return rank() == n_rows;
    }

    // Gauss-Jordan inverse; throws SingularMatrixError when no inverse exists.
    BitMatrix inverse() const {
        if (!is_square()) {
            throw ShapeError("inverse: matrix not square");
        }
        BitMatrix work = *this;
        BitMatrix aug = identity(n_rows);
        for (size_t col = 0; col < n_cols; col++) {
            size_t sel = col;
            while (sel < n_rows && !work.get(sel, col)) {
                sel++;
            }
            if (sel == n_rows) {
                throw SingularMatrixError("inverse: matrix is singular");
            }
            work.swap_rows(col, sel);
            aug.swap_rows(col, sel);
            for (size_t r = 0; r < n_rows; r++) {
                if (r != col && work.get(r, col)) {
                    work.xor_row_into(col, r);
                    aug.xor_row_into(col, r);
                }
            }
        }
        return aug;
    }
};

// Assembles [[a, b], [c, d]] out of four equally sized square blocks.
inline BitMatrix block2x2(const BitMatrix &a, const BitMatrix &b, const BitMatrix &c, const BitMatrix &d) {
    size_t n = a.n_rows;
    for (const BitMatrix *blk : {&a, &b, &c, &d}) {
        if (!blk->is_square() || blk->n_rows != n) {
            throw ShapeError("block2x2: blocks must be square and equally sized");
        }
    }
    BitMatrix out(2 * n, 2 * n);
    for (size_t i = 0; i < n; i++) {
        for (size_t j = 0; j < n; j++) {
            if (a.get(i, j)) {
                out.set(i, j, true);
            }
            if (b.get(i, j)) {
                out.set(i, j + n, true);
            }
            if (c.get(i, j)) {
                out.set(i + n, j, true);
            }
            if (d.get(i, j)) {
                out.set(i + n, j + n, true);
            }
        }
    }
    return out;
}

// Copies the rows x cols block whose top-left corner sits at (r0, c0).
inline BitMatrix extract_block(const BitMatrix &src, size_t r0, size_t c0, size_t rows, size_t cols) {
    if (r0 + rows > src.n_rows || c0 + cols > src.n_cols) {
        throw ShapeError("extract_block: block exceeds matrix bounds");
    }
    BitMatrix out(rows, cols);
    for (size_t i = 0; i < rows; i++) {
        for (size_t j = 0; j < cols; j++) {
            if (src.get(r0 + i, c0 + j)) {
                out.set(i, j, true);
            }
        }
    }
    return out;
}

// Stacks two matrices with equal column counts on top of each other.
inline BitMatrix vstack(const BitMatrix &top, const BitMatrix &bottom) {
    if (top.n_cols != bottom.n_cols) {
        throw ShapeError("vstack: column counts differ");
    }
    BitMatrix out(top.n_rows + bottom.n_rows, top.n_cols);
    for (size_t w = 0; w < top.words.size(); w++) {
        out.words[w] = top.words[w];
    }
    for (size_t w = 0; w < bottom.words.size(); w++) {
        out.words[top.words.size() + w] = bottom.words[w];
    }
    return out;
}

// Joins two matrices with equal row counts side by side.
inline BitMatrix hstack(const BitMatrix &left, const BitMatrix &right) {
    if (left.n_rows != right.n_rows) {
        throw ShapeError("hstack: row counts differ");
    }
    BitMatrix out(left.n_rows, left.n_cols + right.n_cols);
    for (size_t i = 0; i < left.n_rows; i++) {
        for (size_t j = 0; j < left.n_cols; j++) {
            if (left.get(i, j)) {
                out.set(i, j, true);
            }
        }
        for (size_t j = 0; j < right.n_cols; j++) {
            if (right.get(i, j)) {
                out.set(i, left.n_cols + j, true);
            }
        }
    }
    return out;
}

}  // namespace cymub
