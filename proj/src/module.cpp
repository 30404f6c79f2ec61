#include "chisq/module.h"
#include "chisq/error.h"
#include "chisq/km.h"
#include <algorithm>
#include <fmt/format.h>
#include <json.hpp>

namespace chisq::resolve {

namespace {

const std::vector<size_t> kEmpty;

}  // namespace

GradedModule::GradedModule(std::string name, AlgebraName algebra, std::vector<ModuleElement> basis,
                           std::optional<int> truncation)
    : name_(std::move(name)), algebra_(&FiniteAlgebra::get(algebra)), basis_(std::move(basis)), truncation_(truncation)
{
    std::stable_sort(basis_.begin(), basis_.end(), [](auto& a, auto& b) { return a.degree < b.degree; });
    if (!basis_.empty()) {
        min_degree_ = basis_.front().degree;
        max_degree_ = basis_.back().degree;
    }
    if (min_degree_ < 0)
        throw Error(ErrorCode::SchemaViolation, fmt::format("module {}: negative degree {}", name_, min_degree_));
    by_degree_.resize(basis_.empty() ? 0 : max_degree_ - min_degree_ + 1);
    local_.resize(basis_.size());
    for (size_t i = 0; i < basis_.size(); ++i) {
        auto& slot = by_degree_[basis_[i].degree - min_degree_];
        local_[i] = slot.size();
        slot.push_back(i);
        if (!by_id_.emplace(basis_[i].id, i).second)
            throw Error(ErrorCode::SchemaViolation, fmt::format("module {}: duplicate basis id '{}'", name_, basis_[i].id));
    }
    actions_.assign(algebra_->generator_symbols().size(), std::vector<std::vector<size_t>>(basis_.size()));
}

size_t GradedModule::index_of(const std::string& id) const
{
    auto it = by_id_.find(id);
    if (it == by_id_.end())
        throw Error(ErrorCode::SchemaViolation, fmt::format("module {}: unknown basis id '{}'", name_, id));
    return it->second;
}

const std::vector<size_t>& GradedModule::in_degree(int d) const
{
    if (basis_.empty() || d < min_degree_ || d > max_degree_)
        return kEmpty;
    return by_degree_[d - min_degree_];
}

void GradedModule::set_action(int gen, size_t from, std::vector<size_t> to)
{
    const int target = basis_[from].degree + algebra_->generator_degree(gen);
    std::sort(to.begin(), to.end());
    for (size_t i = 0; i < to.size(); ++i) {
        if (basis_[to[i]].degree != target)
            throw Error(ErrorCode::SchemaViolation,
                        fmt::format("module {}: {} {} has degree {}, but '{}' has degree {}", name_,
                                    algebra_->generator_symbols()[gen], basis_[from].id, target, basis_[to[i]].id,
                                    basis_[to[i]].degree));
        if (i > 0 && to[i] == to[i - 1])
            throw Error(ErrorCode::SchemaViolation,
                        fmt::format("module {}: '{}' repeated in the action on '{}'", name_, basis_[to[i]].id, basis_[from].id));
    }
    actions_[gen][from] = std::move(to);
}

BitVector GradedModule::apply_generator(int gen, int d, const BitVector& v) const
{
    BitVector out(dim(d + algebra_->generator_degree(gen)));
    const auto& src = in_degree(d);
    for (size_t i : v.support())
        for (size_t t : actions_[gen][src[i]])
            out.flip(local_[t]);
    return out;
}

BitVector GradedModule::apply_word(const Word& w, int d, const BitVector& v) const
{
    BitVector cur = v;
    for (auto it = w.rbegin(); it != w.rend(); ++it) {
        cur = apply_generator(*it, d, cur);
        d += algebra_->generator_degree(*it);
    }
    return cur;
}

BitVector GradedModule::apply_element(size_t b, int d, const BitVector& v) const
{
    const auto& e = algebra_->expression(b);
    BitVector out(dim(d + e.degree));
    for (auto& w : e.words)
        out ^= apply_word(w, d, v);
    return out;
}

F2Matrix GradedModule::element_matrix(size_t b, int d) const
{
    const size_t rows = dim(d + algebra_->degree(b)), cols = dim(d);
    F2Matrix m(rows, cols);
    for (size_t c = 0; c < cols; ++c)
        for (size_t r : apply_element(b, d, BitVector::unit(cols, c)).support())
            m.set(r, c);
    return m;
}

void GradedModule::check_relations() const
{
    for (auto& rel : algebra_->relations())
        for (int d = min_degree_; d + rel.degree <= max_degree_; ++d) {
            const size_t n = dim(d);
            for (size_t c = 0; c < n; ++c) {
                BitVector v = BitVector::unit(n, c);
                BitVector sum(dim(d + rel.degree));
                for (auto& w : rel.words)
                    sum ^= apply_word(w, d, v);
                if (!sum.is_zero())
                    throw Error(ErrorCode::RelationViolation,
                                fmt::format("module {}: relation {} fails on '{}' in degree {}", name_,
                                            algebra_->relation_str(rel), basis_[in_degree(d)[c]].id, d));
            }
        }
}

/****************************************************
 *                   Sources of modules
 ***************************************************/

GradedModule module_from_km(int k, AlgebraName algebra, int max_degree)
{
    if (k < 1 || max_degree < k)
        throw Error(ErrorCode::InvalidArgument, fmt::format("module_from_km: need k >= 1 and D >= k, got k={} D={}", k, max_degree));
    std::vector<ModuleElement> basis;
    std::vector<km::KMonomial> monomials;
    for (int d = 0; d <= max_degree; ++d)
        for (auto& m : km::monomial_basis(k, d)) {
            basis.push_back({km::format_monomial(k, m), d});
            monomials.push_back(m);
        }
    GradedModule mod(fmt::format("K{}", k), algebra, basis, max_degree);
    const FiniteAlgebra& alg = mod.algebra();

    std::map<km::KMonomial, size_t> index;
    for (size_t i = 0; i < monomials.size(); ++i)
        index.emplace(monomials[i], i);
    for (size_t i = 0; i < monomials.size(); ++i) {
        km::KPoly value = km::from_named_basis(km::KPoly(k, monomials[i]));
        for (int g = 0; g < static_cast<int>(alg.generator_symbols().size()); ++g) {
            if (basis[i].degree + alg.generator_degree(g) > max_degree)
                continue;
            km::KPoly image = km::to_named_basis(km::act(alg.basis()[alg.generator_index(g)], value));
            std::vector<size_t> to;
            for (auto& t : image.terms())
                to.push_back(index.at(t));
            mod.set_action(g, i, std::move(to));
        }
    }
    return mod;
}

namespace {

using nlohmann::json;

[[noreturn]] void schema_error(const std::string& what)
{
    throw Error(ErrorCode::SchemaViolation, "module document: " + what);
}

const json& require(const json& obj, const char* key, json::value_t type, const char* type_name)
{
    auto it = obj.find(key);
    if (it == obj.end())
        schema_error(fmt::format("missing field '{}'", key));
    bool ok = it->type() == type ||
              (type == json::value_t::number_integer && it->type() == json::value_t::number_unsigned);
    if (!ok)
        schema_error(fmt::format("field '{}' must be {}", key, type_name));
    return *it;
}

void only_keys(const json& obj, std::initializer_list<const char*> keys, const std::string& where)
{
    for (auto& [key, _] : obj.items())
        if (std::none_of(keys.begin(), keys.end(), [&](const char* k) { return key == k; }))
            schema_error(fmt::format("unexpected field '{}' in {}", key, where));
}

}  // namespace

GradedModule module_from_json(const std::string& text)
{
    json doc;
    try {
        doc = json::parse(text);
    }
    catch (const json::parse_error& e) {
        throw Error(ErrorCode::ParseError, fmt::format("module document is not valid JSON: {}", e.what()));
    }
    if (!doc.is_object())
        schema_error("top level must be an object");
    only_keys(doc, {"name", "algebra", "basis", "actions", "truncation"}, "the document");
    auto name = require(doc, "name", json::value_t::string, "a string").get<std::string>();
    auto alg_text = require(doc, "algebra", json::value_t::string, "a string").get<std::string>();
    if (alg_text != "A1" && alg_text != "E1")
        schema_error(fmt::format("algebra must be \"A1\" or \"E1\", got \"{}\"", alg_text));
    AlgebraName alg = parse_algebra(alg_text);

    std::optional<int> truncation;
    if (auto it = doc.find("truncation"); it != doc.end() && !it->is_null()) {
        if (!it->is_number_integer())
            schema_error("truncation must be an integer or null");
        truncation = it->get<int>();
    }

    std::vector<ModuleElement> basis;
    for (auto& e : require(doc, "basis", json::value_t::array, "an array")) {
        if (!e.is_object())
            schema_error("basis entries must be objects");
        only_keys(e, {"id", "degree"}, "a basis entry");
        basis.push_back({require(e, "id", json::value_t::string, "a string").get<std::string>(),
                         require(e, "degree", json::value_t::number_integer, "an integer").get<int>()});
    }
    GradedModule mod(name, alg, basis, truncation);
    if (truncation && mod.max_degree() > *truncation)
        schema_error(fmt::format("basis element in degree {} beyond truncation {}", mod.max_degree(), *truncation));

    const auto& actions = require(doc, "actions", json::value_t::object, "an object");
    for (auto& [symbol, entries] : actions.items()) {
        int g;
        try {
            g = mod.algebra().generator_from_symbol(symbol);
        }
        catch (const Error& e) {
            schema_error(e.what());
        }
        if (!entries.is_array())
            schema_error(fmt::format("actions.{} must be an array", symbol));
        std::vector<bool> seen(mod.basis().size(), false);
        for (auto& entry : entries) {
            if (!entry.is_object())
                schema_error(fmt::format("actions.{} entries must be objects", symbol));
            only_keys(entry, {"from", "to"}, "an action entry");
            size_t from = mod.index_of(require(entry, "from", json::value_t::string, "a string").get<std::string>());
            if (seen[from])
                schema_error(fmt::format("actions.{} lists '{}' twice", symbol, mod.basis()[from].id));
            seen[from] = true;
            std::vector<size_t> to;
            for (auto& t : require(entry, "to", json::value_t::array, "an array")) {
                if (!t.is_string())
                    schema_error(fmt::format("actions.{} targets must be ids", symbol));
                to.push_back(mod.index_of(t.get<std::string>()));
            }
            mod.set_action(g, from, std::move(to));
        }
    }
    mod.check_relations();
    return mod;
}

std::string module_to_json(const GradedModule& m)
{
    nlohmann::ordered_json doc;
    doc["name"] = m.name();
    doc["algebra"] = std::string(algebra_name(m.algebra().name()));
    if (m.truncation())
        doc["truncation"] = *m.truncation();
    doc["basis"] = nlohmann::ordered_json::array();
    for (auto& e : m.basis())
        doc["basis"].push_back({{"id", e.id}, {"degree", e.degree}});
    doc["actions"] = nlohmann::ordered_json::object();
    const auto& symbols = m.algebra().generator_symbols();
    for (size_t g = 0; g < symbols.size(); ++g) {
        auto entries = nlohmann::ordered_json::array();
        for (size_t i = 0; i < m.basis().size(); ++i) {
            const auto& to = m.action(static_cast<int>(g), i);
            if (to.empty())
                continue;
            nlohmann::ordered_json ids = nlohmann::ordered_json::array();
            for (size_t t : to)
                ids.push_back(m.basis()[t].id);
            entries.push_back({{"from", m.basis()[i].id}, {"to", ids}});
        }
        doc["actions"][symbols[g]] = std::move(entries);
    }
    return doc.dump(2) + "\n";
}

std::map<int, f2la::Echelon> submodule_span(const GradedModule& m, const std::vector<std::vector<std::string>>& generators)
{
    const FiniteAlgebra& alg = m.algebra();
    std::map<int, f2la::Echelon> span;
    for (auto& ids : generators) {
        if (ids.empty())
            throw Error(ErrorCode::InvalidArgument, "submodule: empty generator");
        const int d = m.basis()[m.index_of(ids.front())].degree;
        BitVector v(m.dim(d));
        for (auto& id : ids) {
            size_t i = m.index_of(id);
            if (m.basis()[i].degree != d)
                throw Error(ErrorCode::InvalidArgument, "submodule: generator mixes degrees");
            v.flip(m.local_index(i));
        }
        for (size_t b = 0; b < alg.dim(); ++b) {
            int target = d + alg.degree(b);
            if (target > m.max_degree())
                continue;
            span.try_emplace(target, m.dim(target)).first->second.insert(m.apply_element(b, d, v));
        }
    }
    return span;
}

GradedModule submodule(const GradedModule& m, const std::string& name,
                       const std::vector<std::vector<std::string>>& generators)
{
    const FiniteAlgebra& alg = m.algebra();
    auto span = submodule_span(m, generators);

    auto label = [&](int d, const BitVector& v) {
        std::vector<std::string> parts;
        for (size_t c : v.support())
            parts.push_back(m.basis()[m.in_degree(d)[c]].id);
        return fmt::format("{}", fmt::join(parts, " + "));
    };
    std::vector<ModuleElement> basis;
    for (auto& [d, ech] : span)
        for (auto& row : ech.basis())
            basis.push_back({label(d, row), d});
    GradedModule sub(name, alg.name(), basis, m.truncation());

    for (auto& [d, ech] : span)
        for (size_t r = 0; r < ech.basis().size(); ++r) {
            size_t from = sub.index_of(label(d, ech.basis()[r]));
            for (int g = 0; g < static_cast<int>(alg.generator_symbols().size()); ++g) {
                int target = d + alg.generator_degree(g);
                BitVector image = m.apply_generator(g, d, ech.basis()[r]);
                if (image.is_zero())
                    continue;
                auto& tgt = span.at(target);
                std::vector<size_t> to;
                for (size_t i = 0; i < tgt.basis().size(); ++i)
                    if (image.get(tgt.pivots()[i]))
                        to.push_back(sub.index_of(label(target, tgt.basis()[i])));
                sub.set_action(g, from, std::move(to));
            }
        }
    return sub;
}

}  // namespace chisq::resolve
