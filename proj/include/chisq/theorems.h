#pragma once

// Closed forms for the smallest k with chi(Sq^{n-k}) iota_k outside the
// image of Sq^1 (resp. Sq^1, Sq^2), brute-force search for the same, and the
// supporting combinatorics.

#include "chisq/milnor.h"
#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace chisq::theorems {

using milnor::Ideal;
using milnor::MilnorSeq;
using BigInt = boost::multiprecision::cpp_int;

int alpha(std::int64_t n);

// Which clause of the closed form applies to n. A and B belong to Sq1:
// A(m, b) is n = 4m + b with 1 <= b <= 3, B is n = 0 mod 4. C, D, E belong to
// Sq12: C(m, b) is n = 8m + b with 1 <= b <= 7, D(e) is n = 2^e u with
// u = 1 mod 4, E(e) is n = 2^e u with u = 3 mod 4 (e >= 3 for both).
struct CaseTag
{
    char letter = '?';
    std::int64_t m = 0;
    int b = 0;
    int e = 0;

    std::string str() const;
    bool operator==(const CaseTag&) const = default;
};

CaseTag classify(std::int64_t n, Ideal ideal);

// Smallest k; nullopt for Sq12 with n < 8. Requires n >= 2.
std::optional<int> min_k_formula(std::int64_t n, Ideal ideal);

int eps(std::int64_t n);
int eps_prime(std::int64_t n);

// Smallest 1 <= k <= min(k_max, n) with chi_class(n, k) outside the image.
std::optional<int> min_k_search(int n, Ideal ideal, int k_max);

enum class LemmaPart
{
    A,  // n = 0 mod 4, weight n - alpha(n) - 1
    B,  // n = 0 mod 8, weight n - alpha(n) - 2
};

struct Lemma23Result
{
    int target = 0;
    int min_sum = 0;
    std::vector<MilnorSeq> minimizers;  // basis order
    std::vector<MilnorSeq> reachable;   // digit vector plus 1 (A) or 2 (B) moves
};

// Exhaustive minimisation of sum r_i subject to sum r_i (2^i - 1) = target,
// together with the vectors obtained from the binary digits (e_1, e_2, ...)
// of n by adding (0,..,0,2,-1,0,..) once (A) or twice (B).
Lemma23Result lemma23(int n, LemmaPart part);

// Coefficient of x^j in sum_i beta_i (v x^2 + 2x)^i: i -> C(i, j-i) 2^(2i-j).
std::map<int, BigInt> two_series_image(int j);

}  // namespace chisq::theorems
