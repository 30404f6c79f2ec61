#include "chisq/theorems.h"
#include "chisq/error.h"
#include "chisq/km.h"
#include <algorithm>
#include <bit>
#include <limits>
#include <fmt/format.h>
#include <set>

namespace chisq::theorems {

int alpha(std::int64_t n)
{
    if (n < 0)
        throw Error(ErrorCode::InvalidArgument, fmt::format("alpha({}) of a negative number", n));
    return std::popcount(static_cast<std::uint64_t>(n));
}

std::string CaseTag::str() const
{
    switch (letter) {
    case 'A':
    case 'C':
        return fmt::format("{}(m={},b={})", letter, m, b);
    case 'D':
    case 'E':
        return fmt::format("{}(e={})", letter, e);
    default:
        return std::string(1, letter);
    }
}

CaseTag classify(std::int64_t n, Ideal ideal)
{
    if (n < 1)
        throw Error(ErrorCode::InvalidArgument, fmt::format("classify: n={} must be positive", n));
    CaseTag tag;
    if (ideal == Ideal::Sq1) {
        if (n % 4 != 0) {
            tag.letter = 'A';
            tag.m = n / 4;
            tag.b = static_cast<int>(n % 4);
        }
        else
            tag.letter = 'B';
        return tag;
    }
    if (n % 8 != 0) {
        tag.letter = 'C';
        tag.m = n / 8;
        tag.b = static_cast<int>(n % 8);
        return tag;
    }
    tag.e = std::countr_zero(static_cast<std::uint64_t>(n));
    tag.letter = ((n >> tag.e) % 4 == 1) ? 'D' : 'E';
    return tag;
}

std::optional<int> min_k_formula(std::int64_t n, Ideal ideal)
{
    if (n < 2)
        throw Error(ErrorCode::InvalidArgument, fmt::format("min_k_formula: n={} must be at least 2", n));
    if (ideal == Ideal::Sq12 && n < 8)
        return std::nullopt;
    CaseTag tag = classify(n, ideal);
    switch (tag.letter) {
    case 'A':
    case 'C':
        return alpha(tag.m) + tag.b;
    case 'B':
    case 'D':
        return alpha(n) + 1;
    default:
        return alpha(n) + 2;
    }
}

int eps(std::int64_t n)
{
    if (n < 1)
        throw Error(ErrorCode::InvalidArgument, fmt::format("eps: n={} must be positive", n));
    return n % 4 == 1 ? 0 : 1;
}

int eps_prime(std::int64_t n)
{
    if (n < 1)
        throw Error(ErrorCode::InvalidArgument, fmt::format("eps_prime: n={} must be positive", n));
    switch (n % 8) {
    case 1:
        return 0;
    case 2:
    case 3:
        return 1;
    case 4:
    case 5:
        return 3;
    case 6:
    case 7:
        return 4;
    default:
        break;
    }
    // n = 2^e u, e >= 3: n = 2^e or 3 * 2^e mod 2^{e+2}.
    int e = std::countr_zero(static_cast<std::uint64_t>(n));
    return ((n >> e) % 4 == 1) ? 1 : 2;
}

std::optional<int> min_k_search(int n, Ideal ideal, int k_max)
{
    if (n < 2 || k_max < 1)
        throw Error(ErrorCode::InvalidArgument, fmt::format("min_k_search: need n >= 2 and k_max >= 1, got n={} k_max={}", n, k_max));
    km::ImageOptions options;
    options.sq2 = ideal == Ideal::Sq12;
    for (int k = 1; k <= std::min(k_max, n); ++k)
        if (!km::in_image(km::chi_class(n, k), options).in_image)
            return k;
    return std::nullopt;
}

/****************************************************
 *                   Lemma on Mersenne weights
 ***************************************************/

namespace {

// All r = (r_1, ..., r_len) with sum r_i (2^i - 1) = target.
void enumerate_weights(int target, size_t slot, std::vector<int>& r, std::vector<std::vector<int>>& out)
{
    if (slot == 0) {
        // slot 1 has weight 1 and absorbs the rest
        r[0] = target;
        out.push_back(r);
        r[0] = 0;
        return;
    }
    const int w = (1 << (slot + 1)) - 1;
    for (int x = 0; x * w <= target; ++x) {
        r[slot] = x;
        enumerate_weights(target - x * w, slot - 1, r, out);
    }
    r[slot] = 0;
}

void apply_moves(const std::vector<int>& v, int moves_left, std::set<std::vector<int>>& out)
{
    if (moves_left == 0) {
        out.insert(v);
        return;
    }
    // (.., 2 at slot j, -1 at slot j+1, ..), zero-based slots
    for (size_t j = 0; j + 1 < v.size(); ++j) {
        if (v[j + 1] == 0)
            continue;
        auto w = v;
        w[j] += 2;
        w[j + 1] -= 1;
        apply_moves(w, moves_left - 1, out);
    }
}

}  // namespace

Lemma23Result lemma23(int n, LemmaPart part)
{
    const int modulus = part == LemmaPart::A ? 4 : 8;
    if (n < modulus || n % modulus != 0)
        throw Error(ErrorCode::InvalidArgument,
                    fmt::format("lemma23 part {} needs a positive n divisible by {}, got {}",
                                part == LemmaPart::A ? 'a' : 'b', modulus, n));
    const int extra = part == LemmaPart::A ? 1 : 2;
    Lemma23Result result;
    result.target = n - alpha(n) - extra;

    // 2^i - 1 <= target bounds the length.
    size_t len = 1;
    while ((1 << (len + 1)) - 1 <= result.target)
        ++len;
    std::vector<std::vector<int>> solutions;
    std::vector<int> r(len, 0);
    enumerate_weights(result.target, len - 1, r, solutions);

    result.min_sum = std::numeric_limits<int>::max();
    for (auto& s : solutions) {
        int sum = 0;
        for (int x : s)
            sum += x;
        if (sum < result.min_sum) {
            result.min_sum = sum;
            result.minimizers.clear();
        }
        if (sum == result.min_sum)
            result.minimizers.emplace_back(s);
    }

    // Binary digits e_1, e_2, ... of n (e_0 = 0 here).
    std::vector<int> digits;
    for (int i = 1; (n >> i) > 0; ++i)
        digits.push_back((n >> i) & 1);
    std::set<std::vector<int>> reached;
    apply_moves(digits, extra, reached);
    for (auto& v : reached)
        result.reachable.emplace_back(v);

    auto order = [](const MilnorSeq& a, const MilnorSeq& b) { return milnor::basis_order_less(a, b); };
    std::sort(result.minimizers.begin(), result.minimizers.end(), order);
    std::sort(result.reachable.begin(), result.reachable.end(), order);
    return result;
}

std::map<int, BigInt> two_series_image(int j)
{
    if (j < 1)
        throw Error(ErrorCode::InvalidArgument, fmt::format("two_series_image: j={} must be positive", j));
    std::map<int, BigInt> out;
    for (int i = (j + 1) / 2; i <= j; ++i) {
        // C(i, j-i) * 2^(2i-j)
        BigInt c = 1;
        const int r = j - i;
        for (int t = 0; t < r; ++t)
            c = c * (i - t) / (t + 1);
        out[i] = c << (2 * i - j);
    }
    return out;
}

}  // namespace chisq::theorems
