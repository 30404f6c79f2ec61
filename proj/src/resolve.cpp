#include "chisq/resolve.h"
#include "chisq/error.h"
#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <fmt/format.h>
#include <thread>

namespace chisq::resolve {

unsigned default_threads()
{
    if (const char* env = std::getenv("CHISQ_THREADS")) {
        int n = std::atoi(env);
        if (n >= 1)
            return static_cast<unsigned>(n);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

std::optional<int> ExtChart::rank(int s, int t) const
{
    if (!known(s, t))
        return std::nullopt;
    auto it = ranks.find({s, t});
    return it == ranks.end() ? 0 : it->second;
}

std::optional<int> valid_t_limit(const GradedModule& m)
{
    if (!m.truncation())
        return std::nullopt;
    return *m.truncation() - m.algebra().top_degree();
}

namespace {

// Runs f(i) for i in [0, n) on up to `threads` workers.
template <typename F>
void parallel_for(size_t n, unsigned threads, F&& f)
{
    threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(n)));
    if (threads <= 1) {
        for (size_t i = 0; i < n; ++i)
            f(i);
        return;
    }
    std::atomic<size_t> next{0};
    std::vector<std::thread> pool;
    std::exception_ptr error;
    std::mutex error_mu;
    for (unsigned w = 0; w < threads; ++w)
        pool.emplace_back([&] {
            for (size_t i = next++; i < n; i = next++) {
                try {
                    f(i);
                }
                catch (...) {
                    std::lock_guard lock(error_mu);
                    if (!error)
                        error = std::current_exception();
                }
            }
        });
    for (auto& t : pool)
        t.join();
    if (error)
        std::rethrow_exception(error);
}

}  // namespace

/****************************************************
 *                   Resolution
 ***************************************************/

Resolution::Resolution(const GradedModule& m, int max_s, int max_t, unsigned threads)
    : module_(&m), alg_(&m.algebra()), max_s_(max_s), max_t_(max_t)
{
    if (max_s < 0 || max_t < 0)
        throw Error(ErrorCode::InvalidArgument, fmt::format("resolution needs max_s, max_t >= 0, got {} and {}", max_s, max_t));
    if (auto limit = valid_t_limit(m))
        max_t_ = std::min(max_t_, *limit);
    gens_.resize(max_s_ + 1);
    for (int s = 0; s <= max_s_; ++s)
        resolve_stage(s, threads);
}

Resolution::Layout Resolution::layout(int s, int t) const
{
    const auto& gens = gens_[s];
    const int top = alg_->top_degree();
    auto lo = std::lower_bound(gens.begin(), gens.end(), t - top, [](const FreeGenerator& g, int d) { return g.degree < d; });
    auto hi = std::upper_bound(gens.begin(), gens.end(), t, [](int d, const FreeGenerator& g) { return d < g.degree; });
    Layout l;
    l.first = static_cast<size_t>(lo - gens.begin());
    l.last = static_cast<size_t>(hi - gens.begin());
    for (size_t g = l.first; g < l.last; ++g) {
        l.offset.push_back(l.dim);
        l.dim += alg_->in_degree(t - gens[g].degree).size();
    }
    return l;
}

size_t Resolution::dim(int s, int t) const
{
    return layout(s, t).dim;
}

size_t Resolution::index(int s, size_t b, size_t g) const
{
    const int t = gens_[s][g].degree + alg_->degree(b);
    Layout l = layout(s, t);
    return l.offset[g - l.first] + alg_->local_index(b);
}

// d_s(b g) = b d_s(g), written in the basis of the target in degree |b| + |g|.
BitVector Resolution::column(int s, int t, size_t b, size_t g) const
{
    const FreeGenerator& gen = gens_[s][g];
    if (s == 0)
        return module_->apply_element(b, gen.degree, gen.image);
    Layout target = layout(s - 1, t);
    BitVector out(target.dim);
    for (auto [b2, g2] : gen.terms)
        for (size_t c : alg_->product(b, b2))
            out.flip(target.offset[g2 - target.first] + alg_->local_index(c));
    return out;
}

F2Matrix Resolution::differential(int s, int t) const
{
    Layout src = layout(s, t);
    F2Matrix m(target_dim(s, t), src.dim);
    for (size_t g = src.first; g < src.last; ++g) {
        const auto& bs = alg_->in_degree(t - gens_[s][g].degree);
        for (size_t b : bs) {
            size_t c = src.offset[g - src.first] + alg_->local_index(b);
            for (size_t r : column(s, t, b, g).support())
                m.set(r, c);
        }
    }
    return m;
}

void Resolution::decode_terms(int s, FreeGenerator& g) const
{
    if (s == 0)
        return;
    Layout l = layout(s - 1, g.degree);
    for (size_t p : g.image.support()) {
        auto it = std::upper_bound(l.offset.begin(), l.offset.end(), p);
        size_t pos = static_cast<size_t>(it - l.offset.begin()) - 1;
        size_t g2 = l.first + pos;
        const auto& bs = alg_->in_degree(g.degree - gens_[s - 1][g2].degree);
        g.terms.emplace_back(bs[p - l.offset[pos]], g2);
    }
}

void Resolution::resolve_stage(int s, unsigned threads)
{
    const int t_lo = module_->min_degree() + s;
    if (t_lo > max_t_ || module_->basis().empty())
        return;
    const size_t count = static_cast<size_t>(max_t_ - t_lo + 1);

    // Phase 1: ker d_{s-1} in every degree, independently.
    std::vector<std::vector<BitVector>> kernels(count);
    if (s > 0)
        parallel_for(count, threads, [&](size_t i) { kernels[i] = f2la::kernel_basis(differential(s - 1, t_lo + static_cast<int>(i))); });

    // Phase 2: in increasing degree, cover what the image misses.
    for (size_t i = 0; i < count; ++i) {
        const int t = t_lo + static_cast<int>(i);
        f2la::Echelon image(target_dim(s, t));
        Layout src = layout(s, t);
        for (size_t g = src.first; g < src.last; ++g)
            for (size_t b : alg_->in_degree(t - gens_[s][g].degree))
                image.insert(column(s, t, b, g));

        std::vector<BitVector> candidates;
        if (s == 0)
            for (size_t c = 0; c < module_->dim(t); ++c)
                candidates.push_back(BitVector::unit(module_->dim(t), c));
        else
            candidates = std::move(kernels[i]);
        for (auto& cand : candidates) {
            BitVector r = image.reduce(cand);
            if (r.is_zero())
                continue;
            image.insert(r);
            FreeGenerator gen;
            gen.degree = t;
            gen.image = s == 0 ? cand : r;
            decode_terms(s, gen);
            gens_[s].push_back(std::move(gen));
        }
    }
}

ExtChart Resolution::chart() const
{
    ExtChart c;
    c.algebra = alg_->name();
    c.source = module_->name();
    c.truncation = module_->truncation();
    c.max_s = max_s_;
    c.max_t = max_t_;
    c.valid_t_max = max_t_;
    for (int s = 0; s <= max_s_; ++s)
        for (auto& g : gens_[s])
            ++c.ranks[{s, g.degree}];
    return c;
}

ExtChart minimal_resolution(const GradedModule& m, int max_s, int max_t, unsigned threads)
{
    ExtChart c = Resolution(m, max_s, max_t, threads).chart();
    c.max_t = max_t;
    return c;
}

/****************************************************
 *                   Verification
 ***************************************************/

VerifyReport verify(const Resolution& r)
{
    VerifyReport rep;
    const GradedModule& m = r.module();
    const FiniteAlgebra& alg = m.algebra();
    const int t_lo = m.min_degree();
    const int t_hi = r.max_t();
    if (m.basis().empty() || t_hi < t_lo)
        return rep;

    // rank d_s in degree t, for the exactness comparison.
    std::vector<std::vector<size_t>> rank(r.max_s() + 1);
    for (int s = 0; s <= r.max_s(); ++s)
        for (int t = t_lo; t <= t_hi; ++t)
            rank[s].push_back(f2la::rank(r.differential(s, t)));

    for (int s = 0; s <= r.max_s(); ++s)
        for (int t = t_lo; t <= t_hi; ++t) {
            size_t i = static_cast<size_t>(t - t_lo);
            size_t expected = s == 0 ? m.dim(t) : r.dim(s - 1, t) - rank[s - 1][i];
            ++rep.checks;
            if (rank[s][i] != expected) {
                rep.exact = false;
                rep.failures.push_back(fmt::format("not exact at s={} t={}: rank {} vs {}", s, t, rank[s][i], expected));
            }
        }

    for (int s = 1; s <= r.max_s(); ++s)
        for (size_t g = 0; g < r.generators(s).size(); ++g) {
            const FreeGenerator& gen = r.generators(s)[g];
            ++rep.checks;
            if (!r.differential(s - 1, gen.degree).apply(gen.image).is_zero()) {
                rep.d_squared_zero = false;
                rep.failures.push_back(fmt::format("d d != 0 on generator {} of F_{} (t={})", g, s, gen.degree));
            }
            ++rep.checks;
            for (auto [b, g2] : gen.terms)
                if (alg.degree(b) == 0) {
                    rep.minimal = false;
                    rep.failures.push_back(fmt::format("unit coefficient in d(generator {} of F_{})", g, s));
                    break;
                }
        }

    // F_s vanishes below degree min + s, so the alternating sum is complete
    // through min + max_s.
    const auto series = alg.poincare_series();
    for (int t = t_lo; t <= std::min(t_hi, t_lo + r.max_s()); ++t) {
        long long sum = 0;
        for (int s = 0; s <= r.max_s(); ++s) {
            long long d = 0;
            for (auto& g : r.generators(s))
                if (t - g.degree >= 0 && t - g.degree < static_cast<int>(series.size()))
                    d += series[t - g.degree];
            sum += (s % 2 == 0) ? d : -d;
        }
        ++rep.checks;
        if (sum != static_cast<long long>(m.dim(t))) {
            rep.euler = false;
            rep.failures.push_back(fmt::format("Euler characteristic {} != dim M_{} = {}", sum, t, m.dim(t)));
        }
    }
    return rep;
}

}  // namespace chisq::resolve
