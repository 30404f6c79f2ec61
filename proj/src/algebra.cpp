#include "chisq/algebra.h"
#include "chisq/error.h"
#include <algorithm>
#include <fmt/format.h>
#include <fmt/ranges.h>
#include <map>

namespace chisq::resolve {

std::string_view algebra_name(AlgebraName name)
{
    return name == AlgebraName::A1 ? "A1" : "E1";
}

AlgebraName parse_algebra(std::string_view text)
{
    if (text == "A1" || text == "a1")
        return AlgebraName::A1;
    if (text == "E1" || text == "e1")
        return AlgebraName::E1;
    throw Error(ErrorCode::InvalidArgument, fmt::format("unknown algebra '{}', expected A1 or E1", text));
}

const FiniteAlgebra& FiniteAlgebra::get(AlgebraName name)
{
    static const FiniteAlgebra a1(AlgebraName::A1);
    static const FiniteAlgebra e1(AlgebraName::E1);
    return name == AlgebraName::A1 ? a1 : e1;
}

namespace {

const std::vector<size_t> kNone;

}  // namespace

const std::vector<size_t>& FiniteAlgebra::in_degree(int d) const
{
    if (d < 0 || d >= static_cast<int>(by_degree_.size()))
        return kNone;
    return by_degree_[d];
}

size_t FiniteAlgebra::index_of(const MilnorSeq& seq) const
{
    auto it = std::find(basis_.begin(), basis_.end(), seq);
    if (it == basis_.end())
        throw Error(ErrorCode::InvalidArgument, fmt::format("{} is not in {}", seq.str(), algebra_name(name_)));
    return static_cast<size_t>(it - basis_.begin());
}

int FiniteAlgebra::generator_from_symbol(std::string_view symbol) const
{
    for (size_t g = 0; g < symbols_.size(); ++g)
        if (symbols_[g] == symbol)
            return static_cast<int>(g);
    throw Error(ErrorCode::InvalidArgument,
                fmt::format("unknown generator '{}' for {}, expected one of {}", symbol, algebra_name(name_), fmt::join(symbols_, ", ")));
}

std::string FiniteAlgebra::word_str(const Word& w) const
{
    if (w.empty())
        return "1";
    std::vector<std::string> parts;
    for (int g : w)
        parts.push_back(symbols_[g]);
    return fmt::format("{}", fmt::join(parts, " "));
}

std::string FiniteAlgebra::relation_str(const WordSum& r) const
{
    std::vector<std::string> parts;
    for (auto& w : r.words)
        parts.push_back(word_str(w));
    return fmt::format("{} = 0", fmt::join(parts, " + "));
}

std::vector<int> FiniteAlgebra::poincare_series() const
{
    std::vector<int> out;
    for (auto& b : by_degree_)
        out.push_back(static_cast<int>(b.size()));
    return out;
}

FiniteAlgebra::FiniteAlgebra(AlgebraName name) : name_(name)
{
    if (name == AlgebraName::A1) {
        for (int r2 = 0; r2 <= 1; ++r2)
            for (int r1 = 0; r1 <= 3; ++r1)
                basis_.emplace_back(MilnorSeq{r1, r2});
        symbols_ = {"Sq1", "Sq2"};
    }
    else {
        for (int r2 = 0; r2 <= 1; ++r2)
            for (int r1 = 0; r1 <= 1; ++r1)
                basis_.emplace_back(MilnorSeq{r1, r2});
        symbols_ = {"Q0", "Q1"};
    }
    std::sort(basis_.begin(), basis_.end());
    const size_t n = basis_.size();
    for (auto& b : basis_)
        degrees_.push_back(b.degree());
    by_degree_.resize(degrees_.back() + 1);
    local_.resize(n);
    for (size_t i = 0; i < n; ++i) {
        local_[i] = by_degree_[degrees_[i]].size();
        by_degree_[degrees_[i]].push_back(i);
    }

    mult_.resize(n * n);
    for (size_t a = 0; a < n; ++a)
        for (size_t b = 0; b < n; ++b) {
            auto prod = milnor::product(basis_[a], basis_[b]);
            for (auto& t : prod.terms())
                mult_[a * n + b].push_back(index_of(t));
        }

    if (name == AlgebraName::A1)
        generator_index_ = {index_of(MilnorSeq{1}), index_of(MilnorSeq{2})};
    else
        generator_index_ = {index_of(MilnorSeq{1}), index_of(MilnorSeq{0, 1})};

    // Words by degree up to top + (largest generator degree); relations
    // generating the ideal can only occur in that range.
    int max_gen = 0;
    for (size_t g = 0; g < symbols_.size(); ++g)
        max_gen = std::max(max_gen, generator_degree(static_cast<int>(g)));
    const int max_deg = top_degree() + max_gen;
    std::vector<std::vector<Word>> words(max_deg + 1);
    std::vector<std::map<Word, size_t>> word_index(max_deg + 1);
    words[0].push_back({});
    for (int d = 1; d <= max_deg; ++d)
        for (size_t g = 0; g < symbols_.size(); ++g) {
            int gd = generator_degree(static_cast<int>(g));
            if (gd > d)
                continue;
            for (auto w : words[d - gd]) {
                w.push_back(static_cast<int>(g));
                words[d].push_back(std::move(w));
            }
        }
    for (int d = 0; d <= max_deg; ++d) {
        std::sort(words[d].begin(), words[d].end());
        for (size_t i = 0; i < words[d].size(); ++i)
            word_index[d][words[d][i]] = i;
    }

    // Value of a word as a set of basis indices.
    auto value = [&](const Word& w) {
        std::vector<size_t> v{0};
        for (int g : w) {
            std::vector<size_t> next;
            for (size_t a : v)
                for (size_t c : product(a, generator_index_[g])) {
                    auto it = std::find(next.begin(), next.end(), c);
                    if (it == next.end())
                        next.push_back(c);
                    else
                        next.erase(it);
                }
            v = std::move(next);
        }
        return v;
    };

    expressions_.resize(n);
    expressions_[0] = {0, {Word{}}};
    for (int d = 1; d <= max_deg; ++d) {
        const auto& ws = words[d];
        const auto& cols = in_degree(d);
        f2la::F2Matrix m(ws.size(), cols.size());
        for (size_t r = 0; r < ws.size(); ++r)
            for (size_t c : value(ws[r]))
                m.set(r, local_[c]);

        for (size_t i : cols) {
            auto span = f2la::in_span(m, f2la::BitVector::unit(cols.size(), local_[i]));
            if (!span.member)
                throw Error(ErrorCode::RelationViolation, fmt::format("{} is not generated by {}", basis_[i].str(), fmt::join(symbols_, ", ")));
            WordSum e{d, {}};
            for (size_t r : span.witness->support())
                e.words.push_back(ws[r]);
            expressions_[i] = std::move(e);
        }

        // Consequences in degree d of the relations found so far.
        f2la::Echelon ideal(ws.size());
        for (auto& rel : relations_)
            for (int du = 0; du + rel.degree <= d; ++du) {
                int dv = d - du - rel.degree;
                for (auto& u : words[du])
                    for (auto& v : words[dv]) {
                        f2la::BitVector x(ws.size());
                        for (auto& w : rel.words) {
                            Word full = u;
                            full.insert(full.end(), w.begin(), w.end());
                            full.insert(full.end(), v.begin(), v.end());
                            x.flip(word_index[d].at(full));
                        }
                        ideal.insert(x);
                    }
            }
        for (auto& k : f2la::kernel_basis(m.transpose())) {
            if (!ideal.insert(k))
                continue;
            WordSum rel{d, {}};
            for (size_t r : k.support())
                rel.words.push_back(ws[r]);
            relations_.push_back(std::move(rel));
        }
    }
}

}  // namespace chisq::resolve
