#include "chisq/km.h"
#include "chisq/error.h"
#include "chisq/f2la.h"
#include <algorithm>
#include <fmt/format.h>
#include <memory>

namespace chisq::km {

/****************************************************
 *                   KMonomial
 ***************************************************/

KMonomial::KMonomial(int degree, std::vector<Factor> factors) : degree_(degree), factors_(std::move(factors))
{
    std::sort(factors_.begin(), factors_.end(), [](const Factor& a, const Factor& b) { return a.gen < b.gen; });
}

std::uint32_t KMonomial::exponent(std::uint32_t gen) const
{
    for (auto& f : factors_)
        if (f.gen == gen)
            return f.exp;
    return 0;
}

KMonomial KMonomial::operator*(const KMonomial& rhs) const
{
    KMonomial out;
    out.degree_ = degree_ + rhs.degree_;
    out.factors_.reserve(factors_.size() + rhs.factors_.size());
    size_t i = 0, j = 0;
    while (i < factors_.size() || j < rhs.factors_.size()) {
        if (j == rhs.factors_.size() || (i < factors_.size() && factors_[i].gen < rhs.factors_[j].gen))
            out.factors_.push_back(factors_[i++]);
        else if (i == factors_.size() || rhs.factors_[j].gen < factors_[i].gen)
            out.factors_.push_back(rhs.factors_[j++]);
        else {
            out.factors_.push_back({factors_[i].gen, factors_[i].exp + rhs.factors_[j].exp});
            ++i;
            ++j;
        }
    }
    return out;
}

KMonomial KMonomial::pow(std::uint32_t e) const
{
    if (e == 0)
        return {};
    KMonomial out = *this;
    out.degree_ *= static_cast<int>(e);
    for (auto& f : out.factors_)
        f.exp *= e;
    return out;
}

std::strong_ordering KMonomial::operator<=>(const KMonomial& rhs) const
{
    if (auto c = degree_ <=> rhs.degree_; c != 0)
        return c;
    size_t i = 0, j = 0;
    while (i < factors_.size() || j < rhs.factors_.size()) {
        if (j == rhs.factors_.size() || (i < factors_.size() && factors_[i].gen < rhs.factors_[j].gen))
            return std::strong_ordering::less;
        if (i == factors_.size() || rhs.factors_[j].gen < factors_[i].gen)
            return std::strong_ordering::greater;
        if (factors_[i].exp != rhs.factors_[j].exp)
            return factors_[i].exp > rhs.factors_[j].exp ? std::strong_ordering::less : std::strong_ordering::greater;
        ++i;
        ++j;
    }
    return std::strong_ordering::equal;
}

/****************************************************
 *                   KPoly
 ***************************************************/

KPoly::KPoly(int k, KMonomial m) : k_(k), terms_{std::move(m)} {}

KPoly KPoly::from_terms(int k, std::vector<KMonomial> terms)
{
    std::sort(terms.begin(), terms.end());
    KPoly out(k);
    for (size_t i = 0; i < terms.size();) {
        size_t j = i;
        while (j < terms.size() && terms[j] == terms[i])
            ++j;
        if ((j - i) % 2 == 1)
            out.terms_.push_back(std::move(terms[i]));
        i = j;
    }
    return out;
}

int KPoly::degree() const
{
    if (terms_.empty())
        return -1;
    int d = terms_.front().degree();
    return terms_.back().degree() == d ? d : -1;
}

bool KPoly::contains(const KMonomial& m) const
{
    return std::binary_search(terms_.begin(), terms_.end(), m);
}

KPoly& KPoly::operator+=(const KPoly& rhs)
{
    if (rhs.terms_.empty())
        return *this;
    if (terms_.empty())
        k_ = rhs.k_;
    else if (k_ != rhs.k_)
        throw Error(ErrorCode::InvalidArgument, fmt::format("adding classes of K(Z/2,{}) and K(Z/2,{})", k_, rhs.k_));
    std::vector<KMonomial> merged;
    merged.reserve(terms_.size() + rhs.terms_.size());
    std::set_symmetric_difference(terms_.begin(), terms_.end(), rhs.terms_.begin(), rhs.terms_.end(),
                                  std::back_inserter(merged));
    terms_ = std::move(merged);
    return *this;
}

KPoly KPoly::operator*(const KPoly& rhs) const
{
    if (terms_.empty() || rhs.terms_.empty())
        return KPoly(k_ ? k_ : rhs.k_);
    if (k_ != rhs.k_)
        throw Error(ErrorCode::InvalidArgument, fmt::format("multiplying classes of K(Z/2,{}) and K(Z/2,{})", k_, rhs.k_));
    std::vector<KMonomial> all;
    all.reserve(terms_.size() * rhs.terms_.size());
    for (auto& a : terms_)
        for (auto& b : rhs.terms_)
            all.push_back(a * b);
    return from_terms(k_, std::move(all));
}

KPoly KPoly::square() const
{
    std::vector<KMonomial> sq;
    sq.reserve(terms_.size());
    for (auto& t : terms_)
        sq.push_back(t.pow(2));
    return from_terms(k_, std::move(sq));
}

KPoly KPoly::pow(std::uint32_t e) const
{
    KPoly result = one(k_);
    KPoly base = *this;
    while (e) {
        if (e & 1)
            result = result * base;
        e >>= 1;
        if (e)
            base = base.square();
    }
    return result;
}

/****************************************************
 *                   Ring
 ***************************************************/

Ring::Ring(int k) : k_(k), complete_through_(k - 1)
{
    if (k < 1)
        throw Error(ErrorCode::InvalidArgument, fmt::format("K(Z/2,k) needs k >= 1, got {}", k));
}

void Ring::extend_through(int degree)
{
    std::lock_guard lock(mu_);
    for (int d = complete_through_ + 1; d <= degree; ++d) {
        for (auto& seq : milnor::basis(d - k_, k_ - 1)) {
            KmGenerator g{k_, seq, d, gens_.size()};
            by_seq_.emplace(seq, g.id);
            gens_.push_back(std::move(g));
        }
        complete_through_ = d;
    }
}

std::vector<KmGenerator> Ring::generators(int max_deg)
{
    std::lock_guard lock(mu_);
    extend_through(max_deg);
    std::vector<KmGenerator> out;
    for (auto& g : gens_) {
        if (g.degree > max_deg)
            break;
        out.push_back(g);
    }
    return out;
}

KmGenerator Ring::generator(size_t id)
{
    std::lock_guard lock(mu_);
    if (id >= gens_.size())
        throw Error(ErrorCode::InvalidArgument, fmt::format("generator id {} not yet enumerated for k={}", id, k_));
    return gens_[id];
}

std::optional<size_t> Ring::generator_id(const MilnorSeq& seq)
{
    if (seq.excess() >= k_)
        return std::nullopt;
    std::lock_guard lock(mu_);
    extend_through(k_ + seq.degree());
    return by_seq_.at(seq);
}

KMonomial Ring::generator_monomial(size_t id)
{
    auto g = generator(id);
    return KMonomial(g.degree, {Factor{static_cast<std::uint32_t>(id), 1}});
}

namespace {

void enumerate_monomials(const std::vector<KmGenerator>& gens, size_t idx, int remaining,
                         std::vector<Factor>& factors, int degree, std::vector<KMonomial>& out)
{
    if (remaining == 0) {
        out.emplace_back(degree, factors);
        return;
    }
    if (idx == gens.size() || gens[idx].degree > remaining)
        return;
    const int d = gens[idx].degree;
    for (int e = remaining / d; e >= 0; --e) {
        if (e > 0)
            factors.push_back({static_cast<std::uint32_t>(idx), static_cast<std::uint32_t>(e)});
        enumerate_monomials(gens, idx + 1, remaining - e * d, factors, degree, out);
        if (e > 0)
            factors.pop_back();
    }
}

}  // namespace

const std::vector<KMonomial>& Ring::monomial_basis(int n)
{
    std::lock_guard lock(mu_);
    if (auto it = basis_cache_.find(n); it != basis_cache_.end())
        return it->second;
    std::vector<KMonomial> out;
    if (n >= 0) {
        auto gens = generators(n);
        std::vector<Factor> factors;
        enumerate_monomials(gens, 0, n, factors, n, out);
        std::sort(out.begin(), out.end());
    }
    return basis_cache_.emplace(n, std::move(out)).first->second;
}

KPoly Ring::reduce(const MilnorSeq& seq)
{
    const int e = seq.excess();
    if (e > k_)
        return KPoly(k_);
    if (e < k_)
        return KPoly(k_, generator_monomial(*generator_id(seq)));
    // exc(R) = k: Sq(R) iota = (Sq(S) iota)^{2^t}, t the first nonzero slot.
    const auto& r = seq.entries();
    size_t t = 0;
    while (r[t] == 0)
        ++t;
    MilnorSeq tail(std::vector<int>(r.begin() + static_cast<std::ptrdiff_t>(t) + 1, r.end()));
    return reduce(tail).pow(1u << (t + 1));
}

KPoly Ring::act_on_generator(const MilnorSeq& op, size_t id)
{
    std::lock_guard lock(mu_);
    auto key = std::make_pair(op, id);
    if (auto it = action_cache_.find(key); it != action_cache_.end())
        return it->second;
    KPoly result(k_);
    auto g = generator(id);
    const SteenrodSum prod = milnor::product(op, g.seq);
    for (auto& t : prod.terms())
        result += reduce(t);
    action_cache_.emplace(std::move(key), result);
    return result;
}

Ring& ring(int k)
{
    static std::mutex mu;
    static std::map<int, std::unique_ptr<Ring>> rings;
    std::lock_guard lock(mu);
    auto& slot = rings[k];
    if (!slot)
        slot = std::make_unique<Ring>(k);
    return *slot;
}

std::vector<KmGenerator> generators(int k, int max_deg)
{
    return ring(k).generators(max_deg);
}

std::vector<KMonomial> monomial_basis(int k, int n)
{
    return ring(k).monomial_basis(n);
}

KPoly reduce(const MilnorSeq& seq, int k)
{
    return ring(k).reduce(seq);
}

/****************************************************
 *                   Action
 ***************************************************/

namespace {

// Calls f(H) for every H <= bound componentwise, with H_i <= bound_i / divisor.
template <typename F>
void for_each_below(const MilnorSeq& bound, int divisor, F&& f)
{
    const auto& b = bound.entries();
    std::vector<int> h(b.size(), 0);
    while (true) {
        f(MilnorSeq(h));
        size_t i = 0;
        while (i < h.size() && h[i] == b[i] / divisor)
            h[i++] = 0;
        if (i == h.size())
            return;
        ++h[i];
    }
}

MilnorSeq difference(const MilnorSeq& a, const MilnorSeq& b)
{
    std::vector<int> d(a.entries());
    for (size_t i = 0; i < b.length(); ++i)
        d[i] -= b.entries()[i];
    return MilnorSeq(std::move(d));
}

MilnorSeq scaled(const MilnorSeq& a, int factor)
{
    std::vector<int> d(a.entries());
    for (auto& x : d)
        x *= factor;
    return MilnorSeq(std::move(d));
}

KPoly act_squarefree(Ring& ring, const MilnorSeq& op, const std::vector<Factor>& factors, size_t idx)
{
    const size_t gen = factors[idx].gen;
    if (idx + 1 == factors.size())
        return ring.act_on_generator(op, gen);
    KPoly result(ring.k());
    for_each_below(op, 1, [&](const MilnorSeq& left_op) {
        KPoly left = ring.act_on_generator(left_op, gen);
        if (left.is_zero())
            return;
        KPoly right = act_squarefree(ring, difference(op, left_op), factors, idx + 1);
        if (!right.is_zero())
            result += left * right;
    });
    return result;
}

KPoly act_monomial(Ring& ring, const MilnorSeq& op, const KMonomial& m)
{
    const int k = ring.k();
    if (op.is_unit())
        return KPoly(k, m);
    if (m.is_unit())
        return KPoly(k);

    // m = a * b^2 with a squarefree.
    std::vector<Factor> odd, half;
    int odd_degree = 0;
    for (auto& f : m.factors()) {
        if (f.exp & 1)
            odd.push_back({f.gen, 1});
        if (f.exp >= 2)
            half.push_back({f.gen, f.exp / 2});
    }
    for (auto& f : odd)
        odd_degree += ring.generator(f.gen).degree;
    if (half.empty())
        return act_squarefree(ring, op, odd, 0);

    KMonomial b((m.degree() - odd_degree) / 2, std::move(half));
    KPoly result(k);
    // Sq(R)(a b^2) = sum over R = R' + 2H of Sq(R')a * (Sq(H) b)^2.
    for_each_below(op, 2, [&](const MilnorSeq& h) {
        MilnorSeq rest = difference(op, scaled(h, 2));
        KPoly left(k);
        if (odd.empty()) {
            if (!rest.is_unit())
                return;
            left = KPoly::one(k);
        }
        else {
            left = act_squarefree(ring, rest, odd, 0);
        }
        if (left.is_zero())
            return;
        KPoly right = act_monomial(ring, h, b);
        if (!right.is_zero())
            result += left * right.square();
    });
    return result;
}

}  // namespace

KPoly act(const MilnorSeq& op, const KPoly& p)
{
    if (p.is_zero())
        return p;
    Ring& r = ring(p.k());
    KPoly result(p.k());
    for (auto& m : p.terms())
        result += act_monomial(r, op, m);
    return result;
}

KPoly act(const SteenrodSum& op, const KPoly& p)
{
    KPoly result(p.k());
    for (auto& t : op.terms())
        result += act(t, p);
    return result;
}

KPoly sq_action(int i, const KPoly& p)
{
    if (i < 0)
        throw Error(ErrorCode::InvalidArgument, "Sq^i needs i >= 0");
    return act(MilnorSeq{i}, p);
}

KPoly q_action(int j, const KPoly& p)
{
    if (j < 0)
        throw Error(ErrorCode::InvalidArgument, "Q_j needs j >= 0");
    std::vector<int> seq(static_cast<size_t>(j) + 1, 0);
    seq.back() = 1;
    return act(MilnorSeq(std::move(seq)), p);
}

KPoly chi_class(int n, int k)
{
    if (k < 1 || n < k)
        throw Error(ErrorCode::InvalidArgument, fmt::format("chi_class needs n >= k >= 1, got n={}, k={}", n, k));
    Ring& r = ring(k);
    KPoly result(k);
    for (auto& seq : milnor::basis(n - k, k))
        result += r.reduce(seq);
    return result;
}

KPoly admissible_class(std::span<const int> word, int k)
{
    Ring& r = ring(k);
    KPoly p(k, r.generator_monomial(*r.generator_id(MilnorSeq{})));
    for (auto it = word.rbegin(); it != word.rend(); ++it)
        p = sq_action(*it, p);
    return p;
}

/****************************************************
 *                   Image membership
 ***************************************************/

ImageResult in_image(const KPoly& target, const ImageOptions& options)
{
    ImageResult result;
    if (target.is_zero()) {
        result.in_image = true;
        return result;
    }
    const int n = target.degree();
    if (n < 0)
        throw Error(ErrorCode::InvalidArgument, "in_image needs a homogeneous class");
    const int k = target.k();
    Ring& r = ring(k);

    const auto& columns = r.monomial_basis(n);
    std::vector<std::pair<int, const KMonomial*>> sources;
    if (options.sq1 && n >= 1)
        for (auto& m : r.monomial_basis(n - 1))
            sources.emplace_back(1, &m);
    if (options.sq2 && n >= 2)
        for (auto& m : r.monomial_basis(n - 2))
            sources.emplace_back(2, &m);
    if (columns.size() > options.column_cap || sources.size() > options.column_cap)
        throw Error(ErrorCode::CapExceeded,
                    fmt::format("in_image: {} columns / {} rows exceed the cap of {} (k={}, n={})", columns.size(),
                                sources.size(), options.column_cap, k, n));

    auto column_of = [&](const KMonomial& m) {
        auto it = std::lower_bound(columns.begin(), columns.end(), m);
        return static_cast<size_t>(it - columns.begin());
    };

    f2la::F2Matrix matrix(sources.size(), columns.size());
    for (size_t i = 0; i < sources.size(); ++i) {
        KPoly image = sq_action(sources[i].first, KPoly(k, *sources[i].second));
        for (auto& m : image.terms())
            matrix.set(i, column_of(m));
    }
    f2la::BitVector v(columns.size());
    for (auto& m : target.terms())
        v.set(column_of(m));

    auto span = f2la::in_span(matrix, v);
    result.rows = sources.size();
    result.cols = columns.size();
    result.rank = f2la::rank(matrix);
    result.in_image = span.member;
    if (span.witness)
        for (size_t i : span.witness->support())
            result.witness.push_back({sources[i].first, *sources[i].second});
    return result;
}

}  // namespace chisq::km
