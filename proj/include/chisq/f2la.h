#pragma once

// Dense bit-packed linear algebra over GF(2).

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace chisq::f2la {

using Word = std::uint64_t;
constexpr size_t kWordBits = 64;

inline size_t words_for(size_t bits)
{
    return (bits + kWordBits - 1) / kWordBits;
}

class BitVector
{
public:
    BitVector() = default;
    explicit BitVector(size_t size) : size_(size), words_(words_for(size), 0) {}
    // "1011" -> bits 0..3, leftmost character is index 0.
    static BitVector from_string(std::string_view bits);
    static BitVector unit(size_t size, size_t index);

    size_t size() const
    {
        return size_;
    }
    bool get(size_t i) const
    {
        return (words_[i / kWordBits] >> (i % kWordBits)) & 1;
    }
    void set(size_t i, bool value = true)
    {
        Word mask = Word(1) << (i % kWordBits);
        if (value)
            words_[i / kWordBits] |= mask;
        else
            words_[i / kWordBits] &= ~mask;
    }
    void flip(size_t i)
    {
        words_[i / kWordBits] ^= Word(1) << (i % kWordBits);
    }

    BitVector& operator^=(const BitVector& rhs);
    friend BitVector operator^(BitVector lhs, const BitVector& rhs)
    {
        lhs ^= rhs;
        return lhs;
    }
    bool operator==(const BitVector&) const = default;

    bool is_zero() const;
    size_t popcount() const;
    // Index of the lowest set bit, or size() if none.
    size_t first_set() const;
    std::vector<size_t> support() const;

    std::span<Word> words()
    {
        return words_;
    }
    std::span<const Word> words() const
    {
        return words_;
    }

    std::string str() const;

private:
    size_t size_ = 0;
    std::vector<Word> words_;
};

class F2Matrix
{
public:
    F2Matrix() = default;
    F2Matrix(size_t rows, size_t cols);
    static F2Matrix identity(size_t n);
    // One string per row, e.g. {"110", "011"}.
    static F2Matrix from_rows(const std::vector<std::string>& rows);
    static F2Matrix from_rows(const std::vector<BitVector>& rows, size_t cols);

    size_t rows() const
    {
        return rows_;
    }
    size_t cols() const
    {
        return cols_;
    }

    bool get(size_t r, size_t c) const
    {
        return (row_words(r)[c / kWordBits] >> (c % kWordBits)) & 1;
    }
    void set(size_t r, size_t c, bool value = true);

    BitVector row(size_t r) const;
    void set_row(size_t r, const BitVector& v);
    void append_row(const BitVector& v);

    // M v, with v indexed by columns.
    BitVector apply(const BitVector& v) const;
    // w^T M, with w indexed by rows.
    BitVector left_apply(const BitVector& w) const;
    F2Matrix transpose() const;
    F2Matrix operator*(const F2Matrix& rhs) const;
    bool is_zero() const;

    bool operator==(const F2Matrix&) const = default;

    std::span<const Word> row_words(size_t r) const
    {
        return {data_.data() + r * stride_, stride_};
    }
    std::span<Word> row_words(size_t r)
    {
        return {data_.data() + r * stride_, stride_};
    }

private:
    size_t rows_ = 0, cols_ = 0, stride_ = 0;
    std::vector<Word> data_;
};

// Row-reduced echelon form built by the fixed pivot rule: columns left to
// right, pivot row = lowest-index remaining row with a 1 in that column.
struct RowEchelon
{
    F2Matrix reduced;                // rank rows, fully reduced
    std::vector<size_t> pivots;      // pivot column of each reduced row
    std::optional<F2Matrix> combos;  // combos.row(i)^T M == reduced.row(i), if tracked
};

RowEchelon row_echelon(const F2Matrix& m, bool track_combinations = false);

size_t rank(const F2Matrix& m);

struct SpanResult
{
    bool member = false;
    std::optional<BitVector> witness;  // w with w^T M = v, set when member
};

// Throws DimensionMismatch if v.size() != m.cols().
SpanResult in_span(const F2Matrix& m, const BitVector& v);

// Basis of {k : M k = 0}; size cols - rank.
std::vector<BitVector> kernel_basis(const F2Matrix& m);

// Incrementally grown row space with canonical reduced representatives.
// Rows are inserted in order; each is reduced against the current basis and,
// if nonzero, becomes a new basis row pivoted at its lowest set column.
class Echelon
{
public:
    explicit Echelon(size_t cols) : cols_(cols) {}

    size_t cols() const
    {
        return cols_;
    }
    size_t rank() const
    {
        return rows_.size();
    }

    // Reduces v modulo the span; the result is zero iff v is in the span.
    BitVector reduce(BitVector v) const;
    bool contains(const BitVector& v) const
    {
        return reduce(v).is_zero();
    }
    // Returns true if v was independent and has been added.
    bool insert(const BitVector& v);

    const std::vector<BitVector>& basis() const
    {
        return rows_;
    }
    // Pivot column of each basis row; v in the span equals the sum of the
    // rows whose pivot is set in v.
    const std::vector<size_t>& pivots() const
    {
        return pivots_;
    }

private:
    size_t cols_;
    std::vector<BitVector> rows_;
    std::vector<size_t> pivots_;
};

}  // namespace chisq::f2la
