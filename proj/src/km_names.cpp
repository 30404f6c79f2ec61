#include "chisq/error.h"
#include "chisq/km.h"
#include <cctype>
#include <charconv>
#include <fmt/format.h>
#include <fmt/ranges.h>
#include <map>
#include <memory>
#include <mutex>

namespace chisq::km {

namespace {

struct DerivedName
{
    const char* name;
    const char* expr;
};

std::vector<DerivedName> derived_names(int k)
{
    if (k == 2)
        return {
            {"x5", "u5 + u2 u3"},
            {"x7", "u2 u5"},
            {"x9", "u9 + u3^3"},
            {"x17", "u17 + u2 u5^3"},
            {"x33", "u33 + u2 u3 u5^2 u9^2"},
        };
    if (k == 3)
        return {
            {"g10'", "g10 + g4 g6"},
            {"g11'", "g11 + g4 g7"},
            {"g13'", "g13 + g6 g7"},
            {"x19", "g4^2 g5 g6 + g3 g4 g6^2 + g3 g4^4"},
        };
    return {};
}

// Per-k naming data: which generator id each named class stands in for, and
// each generator rewritten as a polynomial in the named variables (id i
// standing for the named class attached to generator i).
struct NameData
{
    std::map<size_t, std::string> name_of;
    std::map<std::string, KPoly> class_of;
    std::map<size_t, KPoly> rewritten;
    std::map<size_t, KPoly> decomposable_part;  // named class minus its generator
};

std::mutex names_mu;
std::map<int, std::unique_ptr<NameData>> names_cache;

KPoly rewrite_generator(int k, NameData& data, size_t id);

KPoly rewrite(int k, NameData& data, const KPoly& p)
{
    KPoly out(k);
    for (auto& m : p.terms()) {
        KPoly term = KPoly::one(k);
        for (auto& f : m.factors())
            term = term * rewrite_generator(k, data, f.gen).pow(f.exp);
        out += term;
    }
    return out;
}

KPoly rewrite_generator(int k, NameData& data, size_t id)
{
    if (auto it = data.rewritten.find(id); it != data.rewritten.end())
        return it->second;
    KPoly var(k, ring(k).generator_monomial(id));
    KPoly out = var;
    if (auto it = data.decomposable_part.find(id); it != data.decomposable_part.end())
        out += rewrite(k, data, it->second);
    data.rewritten.emplace(id, out);
    return out;
}

NameData& name_data(int k)
{
    std::lock_guard lock(names_mu);
    auto& slot = names_cache[k];
    if (slot)
        return *slot;
    slot = std::make_unique<NameData>();
    NameData& data = *slot;
    Ring& r = ring(k);
    for (auto& named : name_table(k)) {
        KPoly cls = admissible_class(named.word, k);
        std::vector<size_t> indecomposable;
        for (auto& m : cls.terms())
            if (m.factors().size() == 1 && m.factors()[0].exp == 1)
                indecomposable.push_back(m.factors()[0].gen);
        if (indecomposable.size() != 1)
            throw Error(ErrorCode::InvalidArgument,
                        fmt::format("named class {} is not a generator modulo decomposables", named.name));
        size_t id = indecomposable[0];
        data.name_of[id] = named.name;
        data.class_of.emplace(named.name, cls);
        data.decomposable_part.emplace(id, cls + KPoly(k, r.generator_monomial(id)));
    }
    return data;
}

std::string generic_name(const KmGenerator& g)
{
    if (g.seq.is_unit())
        return fmt::format("ι_{}", g.k);
    return fmt::format("[{}]ι_{}", fmt::join(g.seq.entries(), ","), g.k);
}

std::string monomial_in_names(int k, NameData& data, const KMonomial& m)
{
    if (m.is_unit())
        return "1";
    std::vector<std::string> parts;
    for (auto& f : m.factors()) {
        auto it = data.name_of.find(f.gen);
        std::string base = it != data.name_of.end() ? it->second : generic_name(ring(k).generator(f.gen));
        parts.push_back(f.exp == 1 ? base : fmt::format("{}^{}", base, f.exp));
    }
    return fmt::format("{}", fmt::join(parts, " "));
}

/****************************************************
 *                   Expression parser
 ***************************************************/

class Parser
{
public:
    Parser(int k, std::string_view text, int depth) : k_(k), s_(text), depth_(depth) {}

    KPoly parse()
    {
        KPoly p = expr();
        skip_ws();
        if (pos_ != s_.size())
            fail("unexpected trailing input");
        return p;
    }

private:
    [[noreturn]] void fail(const std::string& why) const
    {
        throw Error(ErrorCode::ParseError, fmt::format("cannot parse '{}' at offset {}: {}", s_, pos_, why));
    }

    void skip_ws()
    {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])))
            ++pos_;
    }

    bool at_factor_start()
    {
        skip_ws();
        if (pos_ >= s_.size())
            return false;
        char c = s_[pos_];
        return std::isalnum(static_cast<unsigned char>(c)) || c == '(' || c == '[' || s_.substr(pos_).starts_with("ι_");
    }

    KPoly expr()
    {
        KPoly p = term();
        while (true) {
            skip_ws();
            if (pos_ < s_.size() && s_[pos_] == '+') {
                ++pos_;
                p += term();
            }
            else
                return p;
        }
    }

    KPoly term()
    {
        KPoly p = power();
        while (true) {
            skip_ws();
            if (pos_ < s_.size() && s_[pos_] == '*') {
                ++pos_;
                p = p * power();
            }
            else if (at_factor_start())
                p = p * power();
            else
                return p;
        }
    }

    int integer()
    {
        skip_ws();
        int value = 0;
        auto [ptr, ec] = std::from_chars(s_.data() + pos_, s_.data() + s_.size(), value);
        if (ec != std::errc())
            fail("expected an integer");
        pos_ = static_cast<size_t>(ptr - s_.data());
        return value;
    }

    std::vector<int> int_list(char close)
    {
        std::vector<int> out;
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == close) {
            ++pos_;
            return out;
        }
        while (true) {
            out.push_back(integer());
            skip_ws();
            if (pos_ < s_.size() && s_[pos_] == ',') {
                ++pos_;
                continue;
            }
            if (pos_ < s_.size() && s_[pos_] == close) {
                ++pos_;
                return out;
            }
            fail("expected ',' or closing bracket");
        }
    }

    KPoly power()
    {
        KPoly base = atom();
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == '^') {
            ++pos_;
            int e = integer();
            if (e < 0)
                fail("negative exponent");
            return base.pow(static_cast<std::uint32_t>(e));
        }
        return base;
    }

    KPoly atom()
    {
        skip_ws();
        if (pos_ >= s_.size())
            fail("unexpected end of input");
        char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            KPoly p = expr();
            skip_ws();
            if (pos_ >= s_.size() || s_[pos_] != ')')
                fail("expected ')'");
            ++pos_;
            return p;
        }
        if (c == '[') {
            ++pos_;
            auto seq = int_list(']');
            skip_iota_suffix();
            return reduce(MilnorSeq(seq), k_);
        }
        if (s_.substr(pos_).starts_with("ι_")) {
            skip_iota_suffix();
            return reduce(MilnorSeq(), k_);
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            int v = integer();
            if (v == 0)
                return KPoly(k_);
            if (v == 1)
                return KPoly::one(k_);
            fail("only the constants 0 and 1 are allowed");
        }
        size_t start = pos_;
        while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '\''))
            ++pos_;
        std::string name(s_.substr(start, pos_ - start));
        if (name == "Sq" && pos_ < s_.size() && s_[pos_] == '[') {
            ++pos_;
            auto word = int_list(']');
            return admissible_class(word, k_);
        }
        return lookup(name);
    }

    void skip_iota_suffix()
    {
        static constexpr std::string_view iota = "ι_";
        if (s_.substr(pos_, iota.size()) == iota) {
            pos_ += iota.size();
            integer();
        }
    }

    KPoly lookup(const std::string& name)
    {
        if (name.empty())
            fail("expected a class name");
        NameData& data = name_data(k_);
        if (auto it = data.class_of.find(name); it != data.class_of.end())
            return it->second;
        for (auto& d : derived_names(k_))
            if (name == d.name) {
                if (depth_ > 4)
                    fail("derived names nest too deeply");
                return Parser(k_, d.expr, depth_ + 1).parse();
            }
        fail(fmt::format("unknown class name '{}' for k={}", name, k_));
    }

    int k_;
    std::string_view s_;
    size_t pos_ = 0;
    int depth_;
};

}  // namespace

const std::vector<NamedClass>& name_table(int k, int max_deg)
{
    static const std::vector<NamedClass> k1 = {{"x", {}}};
    static const std::vector<NamedClass> k2 = [] {
        std::vector<NamedClass> t;
        std::vector<int> word;
        for (int j = 0; j <= 6; ++j) {
            t.push_back({fmt::format("u{}", (1 << j) + 1), word});
            word.insert(word.begin(), 1 << j);
        }
        return t;
    }();
    static const std::vector<NamedClass> k3 = {
        {"g3", {}},           {"g4", {1}},          {"g5", {2}},           {"g6", {2, 1}},
        {"g7", {3, 1}},       {"g9", {4, 2}},       {"g10", {4, 2, 1}},    {"g11", {5, 2, 1}},
        {"g13", {6, 3, 1}},   {"g17", {8, 4, 2}},   {"g18", {8, 4, 2, 1}}, {"g19", {9, 4, 2, 1}},
        {"g21", {10, 5, 2, 1}},
    };
    static const std::vector<NamedClass> none;
    (void)max_deg;
    switch (k) {
    case 1:
        return k1;
    case 2:
        return k2;
    case 3:
        return k3;
    default:
        return none;
    }
}

KPoly parse_named(int k, std::string_view text)
{
    return Parser(k, text, 0).parse();
}

std::string format_monomial(int k, const KMonomial& m)
{
    NameData& data = name_data(k);
    std::lock_guard lock(names_mu);
    return monomial_in_names(k, data, m);
}

KPoly to_named_basis(const KPoly& p)
{
    if (p.is_zero())
        return p;
    NameData& data = name_data(p.k());
    std::lock_guard lock(names_mu);
    return rewrite(p.k(), data, p);
}

KPoly from_named_basis(const KPoly& p)
{
    const int k = p.k();
    if (p.is_zero())
        return p;
    NameData& data = name_data(k);
    std::map<size_t, KPoly> value_of;
    {
        std::lock_guard lock(names_mu);
        for (auto& [id, part] : data.decomposable_part)
            value_of.emplace(id, part + KPoly(k, ring(k).generator_monomial(id)));
    }
    KPoly out(k);
    for (auto& m : p.terms()) {
        KPoly term = KPoly::one(k);
        for (auto& f : m.factors()) {
            auto it = value_of.find(f.gen);
            KPoly base = it != value_of.end() ? it->second : KPoly(k, ring(k).generator_monomial(f.gen));
            term = term * base.pow(f.exp);
        }
        out += term;
    }
    return out;
}

std::string format_named(const KPoly& p)
{
    if (p.is_zero())
        return "0";
    const int k = p.k();
    NameData& data = name_data(k);
    std::lock_guard lock(names_mu);
    KPoly named = rewrite(k, data, p);
    std::vector<std::string> parts;
    for (auto& m : named.terms())
        parts.push_back(monomial_in_names(k, data, m));
    return fmt::format("{}", fmt::join(parts, " + "));
}

}  // namespace chisq::km
