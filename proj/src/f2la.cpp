#include "chisq/f2la.h"
#include "chisq/error.h"
#include <algorithm>
#include <bit>
#include <fmt/format.h>

namespace chisq::f2la {

/****************************************************
 *                   BitVector
 ***************************************************/

BitVector BitVector::from_string(std::string_view bits)
{
    BitVector v(bits.size());
    for (size_t i = 0; i < bits.size(); ++i) {
        if (bits[i] == '1')
            v.set(i);
        else if (bits[i] != '0')
            throw Error(ErrorCode::ParseError, fmt::format("bad bit string '{}'", bits));
    }
    return v;
}

BitVector BitVector::unit(size_t size, size_t index)
{
    BitVector v(size);
    v.set(index);
    return v;
}

BitVector& BitVector::operator^=(const BitVector& rhs)
{
    if (rhs.size_ != size_)
        throw Error(ErrorCode::DimensionMismatch, fmt::format("xor of vectors of sizes {} and {}", size_, rhs.size_));
    for (size_t i = 0; i < words_.size(); ++i)
        words_[i] ^= rhs.words_[i];
    return *this;
}

bool BitVector::is_zero() const
{
    return std::all_of(words_.begin(), words_.end(), [](Word w) { return w == 0; });
}

size_t BitVector::popcount() const
{
    size_t n = 0;
    for (Word w : words_)
        n += std::popcount(w);
    return n;
}

size_t BitVector::first_set() const
{
    for (size_t i = 0; i < words_.size(); ++i)
        if (words_[i])
            return i * kWordBits + std::countr_zero(words_[i]);
    return size_;
}

std::vector<size_t> BitVector::support() const
{
    std::vector<size_t> out;
    for (size_t i = 0; i < words_.size(); ++i) {
        Word w = words_[i];
        while (w) {
            out.push_back(i * kWordBits + std::countr_zero(w));
            w &= w - 1;
        }
    }
    return out;
}

std::string BitVector::str() const
{
    std::string s(size_, '0');
    for (size_t i = 0; i < size_; ++i)
        if (get(i))
            s[i] = '1';
    return s;
}

/****************************************************
 *                   F2Matrix
 ***************************************************/

F2Matrix::F2Matrix(size_t rows, size_t cols)
    : rows_(rows), cols_(cols), stride_(words_for(cols)), data_(rows * stride_, 0)
{
}

F2Matrix F2Matrix::identity(size_t n)
{
    F2Matrix m(n, n);
    for (size_t i = 0; i < n; ++i)
        m.set(i, i);
    return m;
}

F2Matrix F2Matrix::from_rows(const std::vector<std::string>& rows)
{
    size_t cols = rows.empty() ? 0 : rows.front().size();
    F2Matrix m(rows.size(), cols);
    for (size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != cols)
            throw Error(ErrorCode::DimensionMismatch, "rows of unequal length");
        m.set_row(r, BitVector::from_string(rows[r]));
    }
    return m;
}

F2Matrix F2Matrix::from_rows(const std::vector<BitVector>& rows, size_t cols)
{
    F2Matrix m(rows.size(), cols);
    for (size_t r = 0; r < rows.size(); ++r)
        m.set_row(r, rows[r]);
    return m;
}

void F2Matrix::set(size_t r, size_t c, bool value)
{
    Word mask = Word(1) << (c % kWordBits);
    Word& w = row_words(r)[c / kWordBits];
    w = value ? (w | mask) : (w & ~mask);
}

BitVector F2Matrix::row(size_t r) const
{
    BitVector v(cols_);
    auto src = row_words(r);
    std::copy(src.begin(), src.end(), v.words().begin());
    return v;
}

void F2Matrix::set_row(size_t r, const BitVector& v)
{
    if (v.size() != cols_)
        throw Error(ErrorCode::DimensionMismatch, fmt::format("row of size {} in a matrix with {} columns", v.size(), cols_));
    std::copy(v.words().begin(), v.words().end(), row_words(r).begin());
}

void F2Matrix::append_row(const BitVector& v)
{
    data_.resize((rows_ + 1) * stride_, 0);
    ++rows_;
    set_row(rows_ - 1, v);
}

BitVector F2Matrix::apply(const BitVector& v) const
{
    if (v.size() != cols_)
        throw Error(ErrorCode::DimensionMismatch, fmt::format("vector of size {} applied to {} columns", v.size(), cols_));
    BitVector out(rows_);
    auto vw = v.words();
    for (size_t r = 0; r < rows_; ++r) {
        auto rw = row_words(r);
        Word acc = 0;
        for (size_t i = 0; i < stride_; ++i)
            acc ^= rw[i] & vw[i];
        if (std::popcount(acc) & 1)
            out.set(r);
    }
    return out;
}

BitVector F2Matrix::left_apply(const BitVector& w) const
{
    if (w.size() != rows_)
        throw Error(ErrorCode::DimensionMismatch, fmt::format("vector of size {} left-applied to {} rows", w.size(), rows_));
    BitVector out(cols_);
    auto ow = out.words();
    for (size_t r : w.support()) {
        auto rw = row_words(r);
        for (size_t i = 0; i < stride_; ++i)
            ow[i] ^= rw[i];
    }
    return out;
}

F2Matrix F2Matrix::transpose() const
{
    F2Matrix t(cols_, rows_);
    for (size_t r = 0; r < rows_; ++r)
        for (size_t c : row(r).support())
            t.set(c, r);
    return t;
}

F2Matrix F2Matrix::operator*(const F2Matrix& rhs) const
{
    if (cols_ != rhs.rows_)
        throw Error(ErrorCode::DimensionMismatch, fmt::format("product of {}x{} and {}x{}", rows_, cols_, rhs.rows_, rhs.cols_));
    F2Matrix out(rows_, rhs.cols_);
    for (size_t r = 0; r < rows_; ++r)
        out.set_row(r, rhs.left_apply(row(r)));
    return out;
}

bool F2Matrix::is_zero() const
{
    return std::all_of(data_.begin(), data_.end(), [](Word w) { return w == 0; });
}

/****************************************************
 *                   Elimination
 ***************************************************/

RowEchelon row_echelon(const F2Matrix& m, bool track_combinations)
{
    const size_t rows = m.rows(), cols = m.cols();
    std::vector<BitVector> work(rows), combo;
    for (size_t r = 0; r < rows; ++r)
        work[r] = m.row(r);
    if (track_combinations) {
        combo.reserve(rows);
        for (size_t r = 0; r < rows; ++r)
            combo.push_back(BitVector::unit(rows, r));
    }

    // order[i] = original index of the row now in slot i; slots [0, rank) hold pivots.
    std::vector<size_t> order(rows);
    for (size_t r = 0; r < rows; ++r)
        order[r] = r;

    std::vector<size_t> pivots;
    size_t rank = 0;
    for (size_t c = 0; c < cols && rank < rows; ++c) {
        size_t best = rows;
        for (size_t i = rank; i < rows; ++i)
            if (work[order[i]].get(c) && (best == rows || order[i] < order[best]))
                best = i;
        if (best == rows)
            continue;
        std::swap(order[rank], order[best]);
        const size_t p = order[rank];
        for (size_t i = 0; i < rows; ++i) {
            size_t q = order[i];
            if (q != p && work[q].get(c)) {
                work[q] ^= work[p];
                if (track_combinations)
                    combo[q] ^= combo[p];
            }
        }
        pivots.push_back(c);
        ++rank;
    }

    RowEchelon result;
    result.reduced = F2Matrix(rank, cols);
    if (track_combinations)
        result.combos = F2Matrix(rank, rows);
    for (size_t i = 0; i < rank; ++i) {
        result.reduced.set_row(i, work[order[i]]);
        if (track_combinations)
            result.combos->set_row(i, combo[order[i]]);
    }
    result.pivots = std::move(pivots);
    return result;
}

size_t rank(const F2Matrix& m)
{
    return row_echelon(m).pivots.size();
}

SpanResult in_span(const F2Matrix& m, const BitVector& v)
{
    if (v.size() != m.cols())
        throw Error(ErrorCode::DimensionMismatch,
                    fmt::format("in_span: vector of size {} against {} columns", v.size(), m.cols()));
    RowEchelon ech = row_echelon(m, true);
    BitVector rest = v;
    BitVector witness(m.rows());
    for (size_t i = 0; i < ech.pivots.size(); ++i) {
        if (rest.get(ech.pivots[i])) {
            rest ^= ech.reduced.row(i);
            witness ^= ech.combos->row(i);
        }
    }
    SpanResult result;
    result.member = rest.is_zero();
    if (result.member)
        result.witness = std::move(witness);
    return result;
}

std::vector<BitVector> kernel_basis(const F2Matrix& m)
{
    RowEchelon ech = row_echelon(m);
    const size_t cols = m.cols();
    std::vector<bool> is_pivot(cols, false);
    for (size_t c : ech.pivots)
        is_pivot[c] = true;
    std::vector<BitVector> out;
    for (size_t f = 0; f < cols; ++f) {
        if (is_pivot[f])
            continue;
        BitVector k(cols);
        k.set(f);
        for (size_t i = 0; i < ech.pivots.size(); ++i)
            if (ech.reduced.get(i, f))
                k.set(ech.pivots[i]);
        out.push_back(std::move(k));
    }
    return out;
}

/****************************************************
 *                   Echelon
 ***************************************************/

BitVector Echelon::reduce(BitVector v) const
{
    if (v.size() != cols_)
        throw Error(ErrorCode::DimensionMismatch, fmt::format("vector of size {} reduced in {} columns", v.size(), cols_));
    for (size_t i = 0; i < rows_.size(); ++i)
        if (v.get(pivots_[i]))
            v ^= rows_[i];
    return v;
}

bool Echelon::insert(const BitVector& v)
{
    BitVector r = reduce(v);
    size_t p = r.first_set();
    if (p == r.size())
        return false;
    // Keep the basis fully reduced so reduce() output is canonical.
    for (auto& row : rows_)
        if (row.get(p))
            row ^= r;
    rows_.push_back(std::move(r));
    pivots_.push_back(p);
    return true;
}

}  // namespace chisq::f2la
