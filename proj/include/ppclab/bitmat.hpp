// Dense linear algebra over GF(2): bit-packed vectors and matrices,
// elimination, nullspaces and coset representatives.
#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace ppclab {

class BitVector {
public:
    BitVector() = default;
    explicit BitVector(std::size_t len) : len_(len), words_((len + 63) / 64, 0) {}

    // "0101" -> bits, coordinate 0 first
    static BitVector from_string(std::string_view bits);
    // bit i of value becomes coordinate i; len <= 64
    static BitVector from_uint(std::uint64_t value, std::size_t len);

    std::size_t size() const { return len_; }
    bool empty() const { return len_ == 0; }

    bool get(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }
    void set(std::size_t i, bool v) {
        const std::uint64_t mask = std::uint64_t{1} << (i & 63);
        if (v) words_[i >> 6] |= mask; else words_[i >> 6] &= ~mask;
    }
    void flip(std::size_t i) { words_[i >> 6] ^= std::uint64_t{1} << (i & 63); }

    BitVector& operator^=(const BitVector& other);
    friend BitVector operator^(BitVector a, const BitVector& b) { a ^= b; return a; }
    bool operator==(const BitVector&) const = default;

    std::size_t popcount() const;
    bool parity() const { return popcount() & 1u; }
    // <a,b> over GF(2)
    bool dot(const BitVector& other) const;
    bool is_zero() const;

    std::uint64_t to_uint() const;  // len <= 64
    std::string to_string() const;

    const std::vector<std::uint64_t>& words() const { return words_; }

private:
    std::size_t len_ = 0;
    std::vector<std::uint64_t> words_;
};

std::size_t hamming_distance(const BitVector& a, const BitVector& b);

class BitMatrix {
public:
    BitMatrix() = default;
    BitMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), wpr_((cols + 63) / 64), bits_(rows * wpr_, 0) {}

    static BitMatrix identity(std::size_t n);
    static BitMatrix from_rows(const std::vector<std::string>& rows);
    // text format: first line "rows cols", then one line of '0'/'1' per row
    static BitMatrix parse_text(std::string_view text);
    std::string to_text() const;

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    bool get(std::size_t r, std::size_t c) const {
        return (bits_[r * wpr_ + (c >> 6)] >> (c & 63)) & 1u;
    }
    void set(std::size_t r, std::size_t c, bool v) {
        const std::uint64_t mask = std::uint64_t{1} << (c & 63);
        if (v) bits_[r * wpr_ + (c >> 6)] |= mask; else bits_[r * wpr_ + (c >> 6)] &= ~mask;
    }

    BitVector row(std::size_t r) const;
    void set_row(std::size_t r, const BitVector& v);
    void xor_row_into(std::size_t src, std::size_t dst);  // row[dst] ^= row[src]
    void swap_rows(std::size_t a, std::size_t b);

    bool operator==(const BitMatrix&) const = default;

    // s = x * this^T; x.size() == cols, result size == rows
    BitVector syndrome(const BitVector& x) const;

    std::size_t rank() const;
    std::vector<BitVector> nullspace_basis() const;
    // any x with x * this^T == s, deterministic (free variables zero);
    // throws std::runtime_error when s is not in the image
    BitVector solve_coset_rep(const BitVector& s) const;
    BitMatrix column_submatrix(const std::vector<std::size_t>& idx) const;
    BitMatrix transpose() const;

private:
    std::size_t rows_ = 0, cols_ = 0, wpr_ = 1;
    std::vector<std::uint64_t> bits_;

    const std::uint64_t* row_ptr(std::size_t r) const { return bits_.data() + r * wpr_; }
    std::uint64_t* row_ptr(std::size_t r) { return bits_.data() + r * wpr_; }
    friend class Gf2RowEchelon;
    friend BitMatrix mat_mul(const BitMatrix&, const BitMatrix&);
};

BitMatrix mat_mul(const BitMatrix& a, const BitMatrix& b);
BitMatrix kron(const BitMatrix& a, const BitMatrix& b);
BitMatrix kron_power(const BitMatrix& base, std::size_t ell);

// Reduced row echelon form of a matrix, kept around for repeated
// coset-representative solves against the same H.
class Gf2RowEchelon {
public:
    explicit Gf2RowEchelon(const BitMatrix& m);

    std::size_t rank() const { return pivot_cols_.size(); }
    const std::vector<std::size_t>& pivot_cols() const { return pivot_cols_; }
    std::vector<BitVector> nullspace_basis() const;
    // solve x * H^T = s for the original H; empty optional when infeasible
    bool solve(const BitVector& s, BitVector& out) const;

private:
    BitMatrix rref_;              // eliminated copy of H
    BitMatrix ops_;               // row operations applied (rows x rows identity transformed)
    std::vector<std::size_t> pivot_cols_;
    std::size_t n_ = 0;
};

}  // namespace ppclab
