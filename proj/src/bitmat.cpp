#include "ppclab/bitmat.hpp"

#include <bit>
#include <sstream>
#include <stdexcept>

namespace ppclab {

BitVector BitVector::from_string(std::string_view bits) {
    BitVector v(bits.size());
    for (std::size_t i = 0; i < bits.size(); ++i) {
        if (bits[i] == '1') v.set(i, true);
        else if (bits[i] != '0') throw std::invalid_argument("BitVector: expected '0'/'1'");
    }
    return v;
}

BitVector BitVector::from_uint(std::uint64_t value, std::size_t len) {
    if (len > 64) throw std::invalid_argument("BitVector::from_uint: len > 64");
    BitVector v(len);
    if (len > 0) v.words_[0] = len == 64 ? value : (value & ((std::uint64_t{1} << len) - 1));
    return v;
}

BitVector& BitVector::operator^=(const BitVector& other) {
    if (len_ != other.len_) throw std::invalid_argument("BitVector xor: length mismatch");
    for (std::size_t w = 0; w < words_.size(); ++w) words_[w] ^= other.words_[w];
    return *this;
}

std::size_t BitVector::popcount() const {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
}

bool BitVector::dot(const BitVector& other) const {
    if (len_ != other.len_) throw std::invalid_argument("BitVector dot: length mismatch");
    std::uint64_t acc = 0;
    for (std::size_t w = 0; w < words_.size(); ++w) acc ^= words_[w] & other.words_[w];
    return std::popcount(acc) & 1u;
}

bool BitVector::is_zero() const {
    for (auto w : words_) if (w) return false;
    return true;
}

std::uint64_t BitVector::to_uint() const {
    if (len_ > 64) throw std::invalid_argument("BitVector::to_uint: len > 64");
    return words_.empty() ? 0 : words_[0];
}

std::string BitVector::to_string() const {
    std::string s(len_, '0');
    for (std::size_t i = 0; i < len_; ++i) if (get(i)) s[i] = '1';
    return s;
}

std::size_t hamming_distance(const BitVector& a, const BitVector& b) {
    if (a.size() != b.size()) throw std::invalid_argument("hamming_distance: length mismatch");
    std::size_t c = 0;
    for (std::size_t w = 0; w < a.words().size(); ++w)
        c += static_cast<std::size_t>(std::popcount(a.words()[w] ^ b.words()[w]));
    return c;
}

BitMatrix BitMatrix::identity(std::size_t n) {
    BitMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i, true);
    return m;
}

BitMatrix BitMatrix::from_rows(const std::vector<std::string>& rows) {
    const std::size_t r = rows.size();
    const std::size_t c = r == 0 ? 0 : rows[0].size();
    BitMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i) {
        if (rows[i].size() != c) throw std::invalid_argument("BitMatrix: ragged rows");
        for (std::size_t j = 0; j < c; ++j) {
            if (rows[i][j] == '1') m.set(i, j, true);
            else if (rows[i][j] != '0') throw std::invalid_argument("BitMatrix: expected '0'/'1'");
        }
    }
    return m;
}

BitMatrix BitMatrix::parse_text(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::size_t r = 0, c = 0;
    if (!(in >> r >> c)) throw std::invalid_argument("BitMatrix: bad header, expected 'rows cols'");
    std::vector<std::string> rows;
    rows.reserve(r);
    std::string line;
    while (rows.size() < r && in >> line) rows.push_back(line);
    if (rows.size() != r) throw std::invalid_argument("BitMatrix: missing rows");
    for (const auto& row : rows)
        if (row.size() != c) throw std::invalid_argument("BitMatrix: row length != cols");
    BitMatrix m = from_rows(rows);
    if (m.rows() != r || m.cols() != c) throw std::invalid_argument("BitMatrix: inconsistent dims");
    return m;
}

std::string BitMatrix::to_text() const {
    std::ostringstream out;
    out << rows_ << ' ' << cols_ << '\n';
    for (std::size_t i = 0; i < rows_; ++i) out << row(i).to_string() << '\n';
    return out.str();
}

BitVector BitMatrix::row(std::size_t r) const {
    BitVector v(cols_);
    for (std::size_t j = 0; j < cols_; ++j) v.set(j, get(r, j));
    return v;
}

void BitMatrix::set_row(std::size_t r, const BitVector& v) {
    if (v.size() != cols_) throw std::invalid_argument("BitMatrix::set_row: length mismatch");
    for (std::size_t j = 0; j < cols_; ++j) set(r, j, v.get(j));
}

void BitMatrix::xor_row_into(std::size_t src, std::size_t dst) {
    std::uint64_t* d = row_ptr(dst);
    const std::uint64_t* s = row_ptr(src);
    for (std::size_t w = 0; w < wpr_; ++w) d[w] ^= s[w];
}

void BitMatrix::swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    std::uint64_t* pa = row_ptr(a);
    std::uint64_t* pb = row_ptr(b);
    for (std::size_t w = 0; w < wpr_; ++w) std::swap(pa[w], pb[w]);
}

BitVector BitMatrix::syndrome(const BitVector& x) const {
    if (x.size() != cols_) throw std::invalid_argument("syndrome: x length != cols");
    BitVector s(rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
        std::uint64_t acc = 0;
        const std::uint64_t* rp = row_ptr(i);
        for (std::size_t w = 0; w < wpr_; ++w) acc ^= rp[w] & x.words()[w];
        s.set(i, std::popcount(acc) & 1u);
    }
    return s;
}

std::size_t BitMatrix::rank() const { return Gf2RowEchelon(*this).rank(); }

std::vector<BitVector> BitMatrix::nullspace_basis() const {
    return Gf2RowEchelon(*this).nullspace_basis();
}

BitVector BitMatrix::solve_coset_rep(const BitVector& s) const {
    if (s.size() != rows_) throw std::invalid_argument("solve_coset_rep: syndrome length != rows");
    BitVector x;
    if (!Gf2RowEchelon(*this).solve(s, x))
        throw std::runtime_error("solve_coset_rep: syndrome not in the image of H (rank-deficient H, infeasible s)");
    return x;
}

BitMatrix BitMatrix::column_submatrix(const std::vector<std::size_t>& idx) const {
    BitMatrix m(rows_, idx.size());
    for (std::size_t j = 0; j < idx.size(); ++j) {
        if (idx[j] >= cols_) throw std::invalid_argument("column_submatrix: index out of range");
        for (std::size_t i = 0; i < rows_; ++i) m.set(i, j, get(i, idx[j]));
    }
    return m;
}

BitMatrix BitMatrix::transpose() const {
    BitMatrix m(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            if (get(i, j)) m.set(j, i, true);
    return m;
}

BitMatrix mat_mul(const BitMatrix& a, const BitMatrix& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("mat_mul: dimension mismatch");
    BitMatrix out(a.rows(), b.cols());
    // row i of result = xor of rows k of b with a(i,k)=1
    for (std::size_t i = 0; i < a.rows(); ++i) {
        std::uint64_t* dst = out.row_ptr(i);
        for (std::size_t k = 0; k < a.cols(); ++k) {
            if (!a.get(i, k)) continue;
            const std::uint64_t* src = b.row_ptr(k);
            for (std::size_t w = 0; w < out.wpr_; ++w) dst[w] ^= src[w];
        }
    }
    return out;
}

BitMatrix kron(const BitMatrix& a, const BitMatrix& b) {
    BitMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t ia = 0; ia < a.rows(); ++ia)
        for (std::size_t ja = 0; ja < a.cols(); ++ja) {
            if (!a.get(ia, ja)) continue;
            for (std::size_t ib = 0; ib < b.rows(); ++ib)
                for (std::size_t jb = 0; jb < b.cols(); ++jb)
                    if (b.get(ib, jb))
                        out.set(ia * b.rows() + ib, ja * b.cols() + jb, true);
        }
    return out;
}

BitMatrix kron_power(const BitMatrix& base, std::size_t ell) {
    BitMatrix out = BitMatrix::identity(1);
    for (std::size_t k = 0; k < ell; ++k) out = kron(out, base);
    return out;
}

Gf2RowEchelon::Gf2RowEchelon(const BitMatrix& m)
    : rref_(m), ops_(BitMatrix::identity(m.rows())), n_(m.cols()) {
    const std::size_t rows = rref_.rows();
    std::size_t pivot_row = 0;
    // deterministic pivoting: columns left to right, first available row
    for (std::size_t c = 0; c < n_ && pivot_row < rows; ++c) {
        std::size_t piv = rows;
        for (std::size_t i = pivot_row; i < rows; ++i) {
            if (rref_.get(i, c)) { piv = i; break; }
        }
        if (piv == rows) continue;
        rref_.swap_rows(pivot_row, piv);
        ops_.swap_rows(pivot_row, piv);
        for (std::size_t i = 0; i < rows; ++i) {
            if (i != pivot_row && rref_.get(i, c)) {
                rref_.xor_row_into(pivot_row, i);
                ops_.xor_row_into(pivot_row, i);
            }
        }
        pivot_cols_.push_back(c);
        ++pivot_row;
    }
}

std::vector<BitVector> Gf2RowEchelon::nullspace_basis() const {
    std::vector<BitVector> basis;
    std::vector<bool> is_pivot(n_, false);
    for (auto c : pivot_cols_) is_pivot[c] = true;
    for (std::size_t f = 0; f < n_; ++f) {
        if (is_pivot[f]) continue;
        BitVector v(n_);
        v.set(f, true);
        for (std::size_t i = 0; i < pivot_cols_.size(); ++i)
            if (rref_.get(i, f)) v.set(pivot_cols_[i], true);
        basis.push_back(std::move(v));
    }
    return basis;
}

bool Gf2RowEchelon::solve(const BitVector& s, BitVector& out) const {
    if (s.size() != rref_.rows()) throw std::invalid_argument("Gf2RowEchelon::solve: bad syndrome length");
    const std::size_t rows = rref_.rows();
    // transformed rhs: t = ops * s
    BitVector t(rows);
    for (std::size_t i = 0; i < rows; ++i) {
        const std::uint64_t* rp = ops_.row_ptr(i);
        std::uint64_t acc = 0;
        for (std::size_t w = 0; w < ops_.wpr_; ++w) acc ^= rp[w] & s.words()[w];
        t.set(i, std::popcount(acc) & 1u);
    }
    for (std::size_t i = pivot_cols_.size(); i < rows; ++i)
        if (t.get(i)) return false;
    BitVector x(n_);
    for (std::size_t i = 0; i < pivot_cols_.size(); ++i) x.set(pivot_cols_[i], t.get(i));
    out = std::move(x);
    return true;
}

}  // namespace ppclab
