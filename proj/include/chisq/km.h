#pragma once

// H^*(K(Z/2, k); Z/2) as the polynomial algebra on the classes Sq(R) iota_k
// with exc(R) < k, together with the action of the Steenrod algebra.

#include "chisq/milnor.h"
#include <compare>
#include <cstdint>
#include <deque>
#include <map>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace chisq::km {

using milnor::MilnorSeq;
using milnor::SteenrodSum;

struct KmGenerator
{
    int k = 0;
    MilnorSeq seq;
    int degree = 0;
    size_t id = 0;  // position in the deterministic generator order
};

struct Factor
{
    std::uint32_t gen = 0;
    std::uint32_t exp = 0;
    bool operator==(const Factor&) const = default;
};

// A monomial in the generators of one H^*(K(Z/2,k)). Factors are sorted by
// generator id; the degree is carried along.
class KMonomial
{
public:
    KMonomial() = default;
    KMonomial(int degree, std::vector<Factor> factors);

    int degree() const
    {
        return degree_;
    }
    const std::vector<Factor>& factors() const
    {
        return factors_;
    }
    bool is_unit() const
    {
        return factors_.empty();
    }
    std::uint32_t exponent(std::uint32_t gen) const;

    KMonomial operator*(const KMonomial& rhs) const;
    KMonomial pow(std::uint32_t e) const;

    bool operator==(const KMonomial&) const = default;
    // By degree, then at the first generator whose exponents differ, the
    // larger exponent comes first.
    std::strong_ordering operator<=>(const KMonomial& rhs) const;

private:
    int degree_ = 0;
    std::vector<Factor> factors_;
};

// A GF(2) sum of monomials of one H^*(K(Z/2,k)); terms sorted, no repeats.
class KPoly
{
public:
    KPoly() = default;
    explicit KPoly(int k) : k_(k) {}
    KPoly(int k, KMonomial m);
    static KPoly from_terms(int k, std::vector<KMonomial> terms);
    static KPoly one(int k)
    {
        return KPoly(k, KMonomial());
    }

    int k() const
    {
        return k_;
    }
    const std::vector<KMonomial>& terms() const
    {
        return terms_;
    }
    bool is_zero() const
    {
        return terms_.empty();
    }
    // -1 for zero or inhomogeneous polynomials.
    int degree() const;
    bool contains(const KMonomial& m) const;

    KPoly& operator+=(const KPoly& rhs);
    friend KPoly operator+(KPoly lhs, const KPoly& rhs)
    {
        lhs += rhs;
        return lhs;
    }
    KPoly operator*(const KPoly& rhs) const;
    // Frobenius: the sum of the squares of the terms.
    KPoly square() const;
    KPoly pow(std::uint32_t e) const;

    bool operator==(const KPoly&) const = default;

private:
    int k_ = 0;
    std::vector<KMonomial> terms_;
};

// The generator table and caches for one k. Generators are enumerated by
// degree, then by basis order of their sequence, so ids are stable however
// far the table has been extended. All members lock internally.
class Ring
{
public:
    explicit Ring(int k);
    Ring(const Ring&) = delete;
    Ring& operator=(const Ring&) = delete;

    int k() const
    {
        return k_;
    }

    // Generators of degree <= max_deg, extending the table as needed.
    std::vector<KmGenerator> generators(int max_deg);
    KmGenerator generator(size_t id);
    // Id of Sq(seq) iota_k when exc(seq) < k.
    std::optional<size_t> generator_id(const MilnorSeq& seq);
    KMonomial generator_monomial(size_t id);

    const std::vector<KMonomial>& monomial_basis(int n);

    KPoly reduce(const MilnorSeq& seq);
    KPoly act_on_generator(const MilnorSeq& op, size_t id);

private:
    void extend_through(int degree);

    const int k_;
    std::recursive_mutex mu_;
    std::deque<KmGenerator> gens_;
    int complete_through_;
    std::map<MilnorSeq, size_t> by_seq_;
    std::map<std::pair<MilnorSeq, size_t>, KPoly> action_cache_;
    std::map<int, std::vector<KMonomial>> basis_cache_;
};

// Process-wide ring for k >= 1.
Ring& ring(int k);

std::vector<KmGenerator> generators(int k, int max_deg);
std::vector<KMonomial> monomial_basis(int k, int n);

// Sq(R) iota_k in the monomial basis.
KPoly reduce(const MilnorSeq& seq, int k);

// Action of a Milnor basis element (or sum) on a class, through the Milnor
// coproduct sum_{R'+R''=R} Sq(R') (x) Sq(R'').
KPoly act(const MilnorSeq& op, const KPoly& p);
KPoly act(const SteenrodSum& op, const KPoly& p);
KPoly sq_action(int i, const KPoly& p);
// Milnor primitive Q_j = Sq(0,...,0,1), acting as a derivation.
KPoly q_action(int j, const KPoly& p);

// chi(Sq^{n-k}) iota_k, for n >= k >= 1.
KPoly chi_class(int n, int k);

// Sq^{i1} Sq^{i2} ... Sq^{im} iota_k.
KPoly admissible_class(std::span<const int> word, int k);

struct ImageOptions
{
    bool sq1 = true;
    bool sq2 = true;
    size_t column_cap = 200000;
};

struct ImageWitnessTerm
{
    int op = 0;  // 1 or 2
    KMonomial source;
};

struct ImageResult
{
    bool in_image = false;
    std::vector<ImageWitnessTerm> witness;  // target = sum Sq^op(source), when in_image
    size_t rows = 0, cols = 0, rank = 0;
};

// Decides whether a homogeneous class lies in Sq^1 H + Sq^2 H (or the part
// selected by options) by direct linear algebra on monomial bases.
ImageResult in_image(const KPoly& target, const ImageOptions& options = {});

/****************************************************
 *                   Naming
 ***************************************************/

// Human names: u2, u3, u5, u9, ... for k = 2 and g3, ..., g21 for k = 3, each
// an admissible composite applied to iota; other generators print as [R]ι_k.
struct NamedClass
{
    std::string name;
    std::vector<int> word;
};
const std::vector<NamedClass>& name_table(int k, int max_deg = 64);

// Parses "g6 + g3^2", "u2 u3", "x5", "Sq[4,2,1]", "0", "1".
KPoly parse_named(int k, std::string_view text);
// Writes p as a polynomial in the named classes where available.
std::string format_named(const KPoly& p);
std::string format_monomial(int k, const KMonomial& m);

// Change of basis between monomials in the generators Sq(R) iota_k and
// monomials in the named classes (a named class replaces the generator it
// is congruent to modulo decomposables). Both sides share the id space.
KPoly to_named_basis(const KPoly& p);
KPoly from_named_basis(const KPoly& p);

}  // namespace chisq::km
