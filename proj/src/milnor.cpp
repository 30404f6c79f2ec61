#include "chisq/milnor.h"
#include "chisq/error.h"
#include <algorithm>
#include <cctype>
#include <charconv>
#include <fmt/format.h>
#include <fmt/ranges.h>

namespace chisq::milnor {

namespace {

void trim(std::vector<int>& r)
{
    while (!r.empty() && r.back() == 0)
        r.pop_back();
}

std::string_view strip(std::string_view s)
{
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
        s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
        s.remove_suffix(1);
    return s;
}

}  // namespace

MilnorSeq::MilnorSeq(std::initializer_list<int> entries) : MilnorSeq(std::vector<int>(entries)) {}

MilnorSeq::MilnorSeq(std::vector<int> entries) : r_(std::move(entries))
{
    for (int x : r_)
        if (x < 0)
            throw Error(ErrorCode::InvalidArgument, "Milnor sequence entries must be nonnegative");
    trim(r_);
}

int MilnorSeq::degree() const
{
    int result = 0;
    for (size_t j = 0; j < r_.size(); ++j)
        result += ((1 << (j + 1)) - 1) * r_[j];
    return result;
}

int MilnorSeq::excess() const
{
    int result = 0;
    for (int x : r_)
        result += x;
    return result;
}

std::string MilnorSeq::str() const
{
    if (r_.empty())
        return "1";
    return fmt::format("Sq({})", fmt::join(r_, ","));
}

MilnorSeq MilnorSeq::parse(std::string_view text)
{
    std::string_view s = strip(text);
    if (s == "1")
        return {};
    if (s.size() >= 2 && (s.substr(0, 2) == "Sq" || s.substr(0, 2) == "sq"))
        s = strip(s.substr(2));
    if (!s.empty() && s.front() == '(') {
        if (s.back() != ')')
            throw Error(ErrorCode::ParseError, fmt::format("unbalanced parentheses in '{}'", text));
        s = strip(s.substr(1, s.size() - 2));
    }
    std::vector<int> entries;
    while (!s.empty()) {
        size_t comma = s.find(',');
        std::string_view item = strip(s.substr(0, comma));
        int value = 0;
        auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), value);
        if (item.empty() || ec != std::errc() || ptr != item.data() + item.size() || value < 0)
            throw Error(ErrorCode::ParseError, fmt::format("bad Milnor sequence '{}'", text));
        entries.push_back(value);
        if (comma == std::string_view::npos)
            break;
        s = s.substr(comma + 1);
        if (strip(s).empty())
            throw Error(ErrorCode::ParseError, fmt::format("trailing comma in '{}'", text));
    }
    return MilnorSeq(std::move(entries));
}

bool basis_order_less(const MilnorSeq& a, const MilnorSeq& b)
{
    size_t n = std::max(a.length(), b.length());
    for (size_t i = 1; i <= n; ++i)
        if (a.r(i) != b.r(i))
            return a.r(i) > b.r(i);
    return false;
}

std::strong_ordering MilnorSeq::operator<=>(const MilnorSeq& rhs) const
{
    if (auto c = degree() <=> rhs.degree(); c != 0)
        return c;
    if (basis_order_less(*this, rhs))
        return std::strong_ordering::less;
    if (basis_order_less(rhs, *this))
        return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

int degree(const MilnorSeq& seq)
{
    return seq.degree();
}

int excess(const MilnorSeq& seq)
{
    return seq.excess();
}

/****************************************************
 *                   SteenrodSum
 ***************************************************/

SteenrodSum::SteenrodSum(const MilnorSeq& term) : terms_{term} {}

SteenrodSum SteenrodSum::from_terms(std::vector<MilnorSeq> terms)
{
    std::sort(terms.begin(), terms.end());
    SteenrodSum result;
    for (size_t i = 0; i < terms.size();) {
        size_t j = i;
        while (j < terms.size() && terms[j] == terms[i])
            ++j;
        if ((j - i) % 2 == 1)
            result.terms_.push_back(std::move(terms[i]));
        i = j;
    }
    return result;
}

bool SteenrodSum::contains(const MilnorSeq& term) const
{
    return std::binary_search(terms_.begin(), terms_.end(), term);
}

int SteenrodSum::degree() const
{
    if (terms_.empty())
        return -1;
    int d = terms_.front().degree();
    return terms_.back().degree() == d ? d : -1;
}

SteenrodSum& SteenrodSum::operator+=(const SteenrodSum& rhs)
{
    std::vector<MilnorSeq> merged;
    merged.reserve(terms_.size() + rhs.terms_.size());
    std::set_symmetric_difference(terms_.begin(), terms_.end(), rhs.terms_.begin(), rhs.terms_.end(),
                                  std::back_inserter(merged));
    terms_ = std::move(merged);
    return *this;
}

std::string SteenrodSum::str() const
{
    if (terms_.empty())
        return "0";
    std::vector<std::string> parts;
    for (auto& t : terms_)
        parts.push_back(t.str());
    return fmt::format("{}", fmt::join(parts, " + "));
}

SteenrodSum SteenrodSum::parse(std::string_view text)
{
    std::string_view s = strip(text);
    if (s == "0" || s.empty())
        return {};
    std::vector<MilnorSeq> terms;
    size_t depth = 0, start = 0;
    for (size_t i = 0; i <= s.size(); ++i) {
        if (i < s.size() && s[i] == '(')
            ++depth;
        else if (i < s.size() && s[i] == ')')
            --depth;
        if (i == s.size() || (s[i] == '+' && depth == 0)) {
            terms.push_back(MilnorSeq::parse(s.substr(start, i - start)));
            start = i + 1;
        }
    }
    return from_terms(std::move(terms));
}

/****************************************************
 *                   Basis enumeration
 ***************************************************/

namespace {

void enumerate_basis(int weight_index, int remaining, int excess_left, std::vector<int>& prefix,
                     std::vector<MilnorSeq>& out)
{
    if (remaining == 0) {
        out.emplace_back(prefix);
        return;
    }
    int w = (1 << weight_index) - 1;
    if (w > remaining)
        return;
    int top = std::min(remaining / w, excess_left);
    for (int r = top; r >= 0; --r) {
        prefix.push_back(r);
        enumerate_basis(weight_index + 1, remaining - r * w, excess_left - r, prefix, out);
        prefix.pop_back();
    }
}

}  // namespace

std::vector<MilnorSeq> basis(int d, int max_excess)
{
    if (d < 0)
        throw Error(ErrorCode::InvalidArgument, "basis degree must be nonnegative");
    std::vector<MilnorSeq> out;
    std::vector<int> prefix;
    if (max_excess >= 0)
        enumerate_basis(1, d, max_excess, prefix, out);
    return out;
}

std::vector<MilnorSeq> basis(int d)
{
    return basis(d, d);
}

/****************************************************
 *                   Milnor product
 ***************************************************/

namespace {

// Enumerates matrices X = (x_ij), i <= rows, j <= cols, with weighted row sums
// sum_j 2^j x_ij = r_i and column sums sum_i x_ij = s_j. The coefficient of the
// resulting Sq(T), t_n = sum_{i+j=n} x_ij, is the product over the diagonals of
// the multinomial coefficients mod 2, i.e. 1 iff each diagonal has pairwise
// disjoint binary digits.
class ProductEnumerator
{
public:
    ProductEnumerator(const std::vector<int>& r, const std::vector<int>& s)
        : rows_(r.size()), cols_(s.size()), x_((rows_ + 1) * (cols_ + 1), 0), row_rem_(r), col_rem_(s)
    {
    }

    std::vector<MilnorSeq> run()
    {
        visit(1, 1);
        return std::move(out_);
    }

private:
    int& at(size_t i, size_t j)
    {
        return x_[i * (cols_ + 1) + j];
    }

    void visit(size_t i, size_t j)
    {
        if (i > rows_) {
            emit();
            return;
        }
        if (j > cols_) {
            visit(i + 1, 1);
            return;
        }
        int top = std::min(row_rem_[i - 1] >> j, col_rem_[j - 1]);
        for (int x = 0; x <= top; ++x) {
            at(i, j) = x;
            row_rem_[i - 1] -= x << j;
            col_rem_[j - 1] -= x;
            visit(i, j + 1);
            row_rem_[i - 1] += x << j;
            col_rem_[j - 1] += x;
        }
        at(i, j) = 0;
    }

    void emit()
    {
        for (size_t i = 1; i <= rows_; ++i)
            at(i, 0) = row_rem_[i - 1];
        for (size_t j = 1; j <= cols_; ++j)
            at(0, j) = col_rem_[j - 1];
        std::vector<int> t(rows_ + cols_, 0);
        for (size_t n = 1; n <= rows_ + cols_; ++n) {
            int bits = 0;
            size_t i_lo = n > cols_ ? n - cols_ : 0;
            size_t i_hi = std::min(n, rows_);
            for (size_t i = i_lo; i <= i_hi; ++i) {
                int e = at(i, n - i);
                if (bits & e)
                    return;
                bits |= e;
            }
            t[n - 1] = bits;
        }
        out_.emplace_back(std::move(t));
    }

    size_t rows_, cols_;
    std::vector<int> x_;
    std::vector<int> row_rem_, col_rem_;
    std::vector<MilnorSeq> out_;
};

}  // namespace

SteenrodSum product(const MilnorSeq& lhs, const MilnorSeq& rhs)
{
    if (lhs.is_unit())
        return SteenrodSum(rhs);
    if (rhs.is_unit())
        return SteenrodSum(lhs);
    return SteenrodSum::from_terms(ProductEnumerator(lhs.entries(), rhs.entries()).run());
}

SteenrodSum product(const SteenrodSum& lhs, const SteenrodSum& rhs)
{
    std::vector<MilnorSeq> all;
    for (auto& a : lhs.terms())
        for (auto& b : rhs.terms()) {
            auto p = product(a, b);
            all.insert(all.end(), p.terms().begin(), p.terms().end());
        }
    return SteenrodSum::from_terms(std::move(all));
}

SteenrodSum sq(int i)
{
    if (i < 0)
        throw Error(ErrorCode::InvalidArgument, "Sq^i needs i >= 0");
    return SteenrodSum(MilnorSeq{i});
}

/****************************************************
 *                   Antipode
 ***************************************************/

SteenrodSum chi(int d)
{
    return SteenrodSum::from_terms(basis(d));
}

SteenrodSum chi_recursive(int d)
{
    if (d < 0)
        throw Error(ErrorCode::InvalidArgument, "chi degree must be nonnegative");
    std::vector<SteenrodSum> chis{SteenrodSum(MilnorSeq{})};
    for (int e = 1; e <= d; ++e) {
        SteenrodSum acc;
        for (int i = 1; i <= e; ++i)
            acc += product(sq(i), chis[e - i]);
        chis.push_back(std::move(acc));
    }
    return chis[d];
}

/****************************************************
 *                   Ideal criterion
 ***************************************************/

std::string_view ideal_name(Ideal ideal)
{
    return ideal == Ideal::Sq1 ? "sq1" : "sq12";
}

Ideal parse_ideal(std::string_view text)
{
    std::string lower;
    for (char c : strip(text))
        lower.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    if (lower == "sq1")
        return Ideal::Sq1;
    if (lower == "sq12")
        return Ideal::Sq12;
    throw Error(ErrorCode::InvalidArgument, fmt::format("unknown ideal '{}' (expected sq1 or sq12)", text));
}

bool ideal_criterion(const MilnorSeq& seq, Ideal ideal)
{
    if (ideal == Ideal::Sq1)
        return seq.r(1) % 2 == 0;
    return seq.r(1) % 4 == 0 && seq.r(2) % 2 == 0;
}

}  // namespace chisq::milnor
