#pragma once

// The finite sub-Hopf algebras A(1) = <Sq1, Sq2> and E(1) = E[Q0, Q1] of
// the Steenrod algebra, with structure constants restricted from the Milnor
// product.

#include "chisq/f2la.h"
#include "chisq/milnor.h"
#include <string>
#include <string_view>
#include <vector>

namespace chisq::resolve {

using milnor::MilnorSeq;

enum class AlgebraName
{
    A1,
    E1,
};

std::string_view algebra_name(AlgebraName name);
// "A1", "a1", "E1", "e1".
AlgebraName parse_algebra(std::string_view text);

// A word in the algebra generators, e.g. {0, 1} = Sq1 Sq2 (leftmost acts last).
using Word = std::vector<int>;

struct WordSum
{
    int degree = 0;
    std::vector<Word> words;
};

class FiniteAlgebra
{
public:
    static const FiniteAlgebra& get(AlgebraName name);

    AlgebraName name() const
    {
        return name_;
    }
    // Basis ordered by degree, then basis order; index 0 is the unit.
    const std::vector<MilnorSeq>& basis() const
    {
        return basis_;
    }
    size_t dim() const
    {
        return basis_.size();
    }
    int degree(size_t i) const
    {
        return degrees_[i];
    }
    int top_degree() const
    {
        return degrees_.back();
    }
    // Indices of basis elements in degree d (empty outside [0, top]).
    const std::vector<size_t>& in_degree(int d) const;
    // Position of i within in_degree(degree(i)).
    size_t local_index(size_t i) const
    {
        return local_[i];
    }
    size_t index_of(const MilnorSeq& seq) const;

    // Product of basis elements as a set of basis indices.
    const std::vector<size_t>& product(size_t a, size_t b) const
    {
        return mult_[a * basis_.size() + b];
    }

    // Generators: Sq1, Sq2 or Q0, Q1.
    const std::vector<std::string>& generator_symbols() const
    {
        return symbols_;
    }
    int generator_degree(int g) const
    {
        return degrees_[generator_index_[g]];
    }
    size_t generator_index(int g) const
    {
        return generator_index_[g];
    }
    int generator_from_symbol(std::string_view symbol) const;

    // A sum of generator words equal to basis element i.
    const WordSum& expression(size_t i) const
    {
        return expressions_[i];
    }
    // Relations among generator words that generate all others as a
    // two-sided ideal.
    const std::vector<WordSum>& relations() const
    {
        return relations_;
    }
    std::string word_str(const Word& w) const;
    std::string relation_str(const WordSum& r) const;

    // Dimension in each degree 0..top.
    std::vector<int> poincare_series() const;

private:
    explicit FiniteAlgebra(AlgebraName name);

    AlgebraName name_;
    std::vector<MilnorSeq> basis_;
    std::vector<int> degrees_;
    std::vector<std::vector<size_t>> by_degree_;
    std::vector<size_t> local_;
    std::vector<std::vector<size_t>> mult_;
    std::vector<std::string> symbols_;
    std::vector<size_t> generator_index_;
    std::vector<WordSum> expressions_;
    std::vector<WordSum> relations_;
};

}  // namespace chisq::resolve
