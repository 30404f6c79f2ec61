#pragma once

// Minimal free resolutions over A(1) / E(1), Ext charts and Margolis homology.

#include "chisq/module.h"
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace chisq::resolve {

// Worker count for per-degree eliminations: CHISQ_THREADS if set, else the
// hardware concurrency. Results never depend on it.
unsigned default_threads();

struct ExtChart
{
    AlgebraName algebra = AlgebraName::A1;
    std::string source;
    std::optional<int> truncation;
    int max_s = 0;
    int max_t = 0;
    int valid_t_max = 0;  // cells with t > valid_t_max are unknown
    std::map<std::pair<int, int>, int> ranks;  // (s, t) -> rank, nonzero only

    bool known(int s, int t) const
    {
        return s >= 0 && s <= max_s && t >= 0 && t <= valid_t_max;
    }
    // 0 for known empty cells; nullopt for unknown ones.
    std::optional<int> rank(int s, int t) const;
};

// Valid window for resolving m: t <= D - top degree of the algebra for a
// truncated module, unrestricted otherwise.
std::optional<int> valid_t_limit(const GradedModule& m);

struct FreeGenerator
{
    int degree = 0;
    // d(g): in M_degree for s = 0, else in (F_{s-1})_degree.
    BitVector image;
    // The same as (algebra basis index, generator index) pairs, for s >= 1.
    std::vector<std::pair<size_t, size_t>> terms;
};

class Resolution
{
public:
    // Resolves m through homological degree max_s and internal degree
    // min(max_t, valid window).
    Resolution(const GradedModule& m, int max_s, int max_t, unsigned threads = default_threads());

    const GradedModule& module() const
    {
        return *module_;
    }
    int max_s() const
    {
        return max_s_;
    }
    int max_t() const
    {
        return max_t_;
    }
    const std::vector<FreeGenerator>& generators(int s) const
    {
        return gens_[s];
    }

    // dim (F_s)_t
    size_t dim(int s, int t) const;
    // Matrix of d_s : (F_s)_t -> (F_{s-1})_t, or M_t when s = 0.
    F2Matrix differential(int s, int t) const;
    // Position of (b, g) in the basis of (F_s)_t, t = |b| + |g|.
    size_t index(int s, size_t b, size_t g) const;
    size_t target_dim(int s, int t) const
    {
        return s == 0 ? module_->dim(t) : dim(s - 1, t);
    }

    ExtChart chart() const;

private:
    struct Layout
    {
        size_t first = 0, last = 0;   // generator range with t - top <= degree <= t
        std::vector<size_t> offset;  // per generator in range
        size_t dim = 0;
    };
    Layout layout(int s, int t) const;
    BitVector column(int s, int t, size_t b, size_t g) const;
    void decode_terms(int s, FreeGenerator& g) const;
    void resolve_stage(int s, unsigned threads);

    const GradedModule* module_;
    const FiniteAlgebra* alg_;
    int max_s_, max_t_;
    std::vector<std::vector<FreeGenerator>> gens_;
};

ExtChart minimal_resolution(const GradedModule& m, int max_s, int max_t, unsigned threads = default_threads());

struct VerifyReport
{
    bool d_squared_zero = true;
    bool minimal = true;
    bool exact = true;
    bool euler = true;
    size_t checks = 0;
    std::vector<std::string> failures;

    bool ok() const
    {
        return d_squared_zero && minimal && exact && euler;
    }
};

// d o d = 0 on every generator, no unit coefficients in differentials,
// exactness in every computed degree, and the Euler characteristic identity
// sum_s (-1)^s dim (F_s)_t = dim M_t where the resolution is long enough.
VerifyReport verify(const Resolution& r);

struct MargolisHomology
{
    int j = 0;
    int valid_through = 0;
    std::map<int, int> dims;  // nonzero only
    std::map<int, std::vector<std::string>> representatives;
};

// H(M; Q_j) in each degree <= D - |Q_j| (every degree for complete modules).
// Over A(1), Q0 = Sq1 and Q1 = Sq(0,1) = Sq1 Sq2 + Sq2 Sq1.
MargolisHomology margolis_homology(const GradedModule& m, int j);

/****************************************************
 *                   Chart documents
 ***************************************************/

enum class ChartFormat
{
    Text,
    Svg,
    Json,
};

ChartFormat parse_chart_format(std::string_view text);
std::string chart_to_json(const ExtChart& chart);
ExtChart chart_from_json(const std::string& text);
std::string render_chart(const ExtChart& chart, ChartFormat format);

}  // namespace chisq::resolve
