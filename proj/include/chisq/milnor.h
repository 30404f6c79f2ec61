#pragma once

// Mod-2 Steenrod algebra in the Milnor basis.

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

namespace chisq::milnor {

// A Milnor basis element Sq(r1, r2, ...). Trailing zeros are always trimmed;
// the empty sequence is the unit.
class MilnorSeq
{
public:
    MilnorSeq() = default;
    MilnorSeq(std::initializer_list<int> entries);
    explicit MilnorSeq(std::vector<int> entries);

    const std::vector<int>& entries() const
    {
        return r_;
    }
    // 1-based, as in r_1; zero past the end.
    int r(size_t i) const
    {
        return (i >= 1 && i <= r_.size()) ? r_[i - 1] : 0;
    }
    size_t length() const
    {
        return r_.size();
    }
    bool is_unit() const
    {
        return r_.empty();
    }

    int degree() const;
    int excess() const;

    std::string str() const;
    // Accepts "Sq(3,1)", "Sq()", "Sq(0)", "1" and bare "(3,1)" / "3,1".
    static MilnorSeq parse(std::string_view text);

    bool operator==(const MilnorSeq&) const = default;
    // Lower degree first; within a degree, basis enumeration order.
    std::strong_ordering operator<=>(const MilnorSeq& rhs) const;

private:
    std::vector<int> r_;
};

int degree(const MilnorSeq& seq);
int excess(const MilnorSeq& seq);

// Within one degree: descending lexicographic on (r1, r2, ...), e.g.
// (6) < (3,1) < (0,2).
bool basis_order_less(const MilnorSeq& a, const MilnorSeq& b);

// A GF(2) sum of Milnor basis elements, kept sorted; adding a term twice removes it.
class SteenrodSum
{
public:
    SteenrodSum() = default;
    SteenrodSum(const MilnorSeq& term);
    static SteenrodSum from_terms(std::vector<MilnorSeq> terms);

    const std::vector<MilnorSeq>& terms() const
    {
        return terms_;
    }
    bool is_zero() const
    {
        return terms_.empty();
    }
    bool contains(const MilnorSeq& term) const;
    // Degree of the terms if all agree, -1 for zero or inhomogeneous sums.
    int degree() const;

    SteenrodSum& operator+=(const SteenrodSum& rhs);
    friend SteenrodSum operator+(SteenrodSum lhs, const SteenrodSum& rhs)
    {
        lhs += rhs;
        return lhs;
    }
    bool operator==(const SteenrodSum&) const = default;

    std::string str() const;
    static SteenrodSum parse(std::string_view text);

private:
    std::vector<MilnorSeq> terms_;
};

// All Milnor basis elements of degree d, in basis order.
std::vector<MilnorSeq> basis(int d);
// Same, restricted to excess <= max_excess.
std::vector<MilnorSeq> basis(int d, int max_excess);

SteenrodSum product(const MilnorSeq& lhs, const MilnorSeq& rhs);
SteenrodSum product(const SteenrodSum& lhs, const SteenrodSum& rhs);

SteenrodSum sq(int i);

// chi(Sq^d) as the sum of the whole degree-d basis.
SteenrodSum chi(int d);
// chi(Sq^d) from the antipode recursion chi(Sq^d) = sum_{i>=1} Sq^i chi(Sq^{d-i}).
SteenrodSum chi_recursive(int d);

enum class Ideal
{
    Sq1,   // left ideal generated by Sq^1
    Sq12,  // left ideal generated by Sq^1 and Sq^2
};

std::string_view ideal_name(Ideal ideal);
Ideal parse_ideal(std::string_view text);

// True iff Sq(R) lies outside the image (Sq^1 A, or Sq^1 A + Sq^2 A).
bool ideal_criterion(const MilnorSeq& seq, Ideal ideal);

}  // namespace chisq::milnor
