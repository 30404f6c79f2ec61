#include "oracle.h"
#include <map>
#include <utility>

namespace oracle {

namespace {

int xi_degree(int i)
{
    return (1 << i) - 1;
}

void trim(Seq& r)
{
    while (!r.empty() && r.back() == 0)
        r.pop_back();
}

Seq add(const Seq& a, const Seq& b)
{
    Seq out(std::max(a.size(), b.size()), 0);
    for (size_t i = 0; i < a.size(); ++i)
        out[i] += a[i];
    for (size_t i = 0; i < b.size(); ++i)
        out[i] += b[i];
    return out;
}

// xi_i^e as an exponent vector; xi_0 = 1.
Seq power(int i, int e)
{
    if (i == 0)
        return {};
    Seq r(i, 0);
    r[i - 1] = e;
    return r;
}

using Mono = std::pair<Seq, Seq>;  // left (x) right
using Poly = std::set<Mono>;

void toggle(Poly& p, const Mono& m)
{
    auto [it, inserted] = p.insert(m);
    if (!inserted)
        p.erase(it);
}

Poly mul(const Poly& a, const Poly& b)
{
    Poly out;
    for (auto& x : a)
        for (auto& y : b)
            toggle(out, {add(x.first, y.first), add(x.second, y.second)});
    return out;
}

const Poly& coproduct(const Seq& t)
{
    static std::map<Seq, Poly> cache;
    if (auto it = cache.find(t); it != cache.end())
        return it->second;
    Poly acc{{Seq{}, Seq{}}};
    for (size_t n = 1; n <= t.size(); ++n)
        for (int j = 0; (t[n - 1] >> j) != 0; ++j) {
            if (!((t[n - 1] >> j) & 1))
                continue;
            // psi(xi_n)^{2^j}
            Poly factor;
            for (int i = 0; i <= static_cast<int>(n); ++i)
                toggle(factor, {power(static_cast<int>(n) - i, 1 << (i + j)), power(i, 1 << j)});
            acc = mul(acc, factor);
        }
    Poly trimmed;
    for (auto m : acc) {
        trim(m.first);
        trim(m.second);
        toggle(trimmed, m);
    }
    return cache.emplace(t, std::move(trimmed)).first->second;
}

void enumerate(int d, int i, Seq& prefix, std::vector<Seq>& out)
{
    if (d == 0) {
        Seq r = prefix;
        trim(r);
        out.push_back(r);
        return;
    }
    if (xi_degree(i) > d)
        return;
    for (int e = 0; e * xi_degree(i) <= d; ++e) {
        prefix.push_back(e);
        enumerate(d - e * xi_degree(i), i + 1, prefix, out);
        prefix.pop_back();
    }
}

}  // namespace

int degree(const Seq& r)
{
    int d = 0;
    for (size_t i = 0; i < r.size(); ++i)
        d += r[i] * xi_degree(static_cast<int>(i) + 1);
    return d;
}

int excess(const Seq& r)
{
    int e = 0;
    for (int x : r)
        e += x;
    return e;
}

std::vector<Seq> milnor_basis(int d)
{
    std::vector<Seq> out;
    Seq prefix;
    enumerate(d, 1, prefix, out);
    return out;
}

std::set<Seq> product(const Seq& r, const Seq& s)
{
    Seq a = r, b = s;
    trim(a);
    trim(b);
    std::set<Seq> out;
    for (auto& t : milnor_basis(degree(a) + degree(b)))
        if (coproduct(t).count({a, b}))
            out.insert(t);
    return out;
}

Series polynomial_series(const std::vector<int>& generator_degrees, int max_deg)
{
    Series s(max_deg + 1, 0);
    s[0] = 1;
    for (int g : generator_degrees)
        for (int d = g; d <= max_deg; ++d)
            s[d] += s[d - g];
    return s;
}

Series exterior_series(const std::vector<int>& generator_degrees, int max_deg)
{
    Series s(max_deg + 1, 0);
    s[0] = 1;
    for (int g : generator_degrees)
        for (int d = max_deg; d >= g; --d)
            s[d] += s[d - g];
    return s;
}

Series multiply(const Series& a, const Series& b)
{
    Series out(std::min(a.size(), b.size()), 0);
    for (size_t i = 0; i < out.size(); ++i)
        for (size_t j = 0; i + j < out.size(); ++j)
            out[i + j] += a[i] * b[j];
    return out;
}

std::vector<int> km_generator_degrees(int k, int max_deg)
{
    std::vector<int> out;
    for (int d = 0; d + k <= max_deg; ++d)
        for (auto& r : milnor_basis(d))
            if (excess(r) < k)
                out.push_back(d + k);
    return out;
}

int koszul_rank(int s, int t)
{
    int n = 0;
    for (int b = 0; b <= s; ++b)
        if ((s - b) + 3 * b == t)
            ++n;
    return n;
}

}  // namespace oracle
