#include "chisq/error.h"
#include "chisq/resolve.h"
#include <fmt/format.h>
#include <json.hpp>

namespace chisq::resolve {

ChartFormat parse_chart_format(std::string_view text)
{
    if (text == "text")
        return ChartFormat::Text;
    if (text == "svg")
        return ChartFormat::Svg;
    if (text == "json")
        return ChartFormat::Json;
    throw Error(ErrorCode::InvalidArgument, fmt::format("unknown chart format '{}', expected text, svg or json", text));
}

std::string chart_to_json(const ExtChart& chart)
{
    nlohmann::ordered_json doc;
    doc["algebra"] = std::string(algebra_name(chart.algebra));
    doc["source"] = chart.source;
    doc["truncation"] = chart.truncation ? nlohmann::ordered_json(*chart.truncation) : nlohmann::ordered_json(nullptr);
    doc["max_s"] = chart.max_s;
    doc["max_t"] = chart.max_t;
    doc["valid_t_max"] = chart.valid_t_max;
    doc["ranks"] = nlohmann::ordered_json::array();
    for (auto& [st, rank] : chart.ranks)
        doc["ranks"].push_back({{"s", st.first}, {"t", st.second}, {"rank", rank}});
    return doc.dump(2) + "\n";
}

ExtChart chart_from_json(const std::string& text)
{
    using nlohmann::json;
    json doc;
    try {
        doc = json::parse(text);
    }
    catch (const json::parse_error& e) {
        throw Error(ErrorCode::ParseError, fmt::format("chart document is not valid JSON: {}", e.what()));
    }
    auto fail = [](const std::string& what) { throw Error(ErrorCode::SchemaViolation, "chart document: " + what); };
    if (!doc.is_object())
        fail("top level must be an object");
    auto integer = [&](const json& obj, const char* key) {
        auto it = obj.find(key);
        if (it == obj.end() || !it->is_number_integer())
            fail(fmt::format("field '{}' must be an integer", key));
        return it->get<int>();
    };
    ExtChart c;
    auto alg = doc.find("algebra");
    if (alg == doc.end() || !alg->is_string() || (*alg != "A1" && *alg != "E1"))
        fail("algebra must be \"A1\" or \"E1\"");
    c.algebra = parse_algebra(alg->get<std::string>());
    if (auto it = doc.find("source"); it != doc.end()) {
        if (!it->is_string())
            fail("source must be a string");
        c.source = it->get<std::string>();
    }
    if (auto it = doc.find("truncation"); it != doc.end() && !it->is_null()) {
        if (!it->is_number_integer())
            fail("truncation must be an integer or null");
        c.truncation = it->get<int>();
    }
    c.valid_t_max = integer(doc, "valid_t_max");
    c.max_s = doc.contains("max_s") ? integer(doc, "max_s") : 0;
    c.max_t = doc.contains("max_t") ? integer(doc, "max_t") : c.valid_t_max;
    auto ranks = doc.find("ranks");
    if (ranks == doc.end() || !ranks->is_array())
        fail("ranks must be an array");
    int seen_s = 0;
    for (auto& r : *ranks) {
        if (!r.is_object())
            fail("rank entries must be objects");
        int s = integer(r, "s"), t = integer(r, "t"), rank = integer(r, "rank");
        if (s < 0 || t < 0 || rank < 0)
            fail("s, t and rank must be nonnegative");
        if (rank > 0)
            c.ranks[{s, t}] = rank;
        seen_s = std::max(seen_s, s);
    }
    if (!doc.contains("max_s"))
        c.max_s = seen_s;
    return c;
}

namespace {

std::string render_text(const ExtChart& c)
{
    // Stems 0 .. max_t; a cell (s, n) shows rank Ext^{s, n+s}.
    const int stems = std::max(c.max_t, 0);
    std::string out = fmt::format("Ext_{} {}  (s vertical, t-s horizontal; . zero, ? unknown; valid t <= {})\n",
                                  algebra_name(c.algebra), c.source.empty() ? "?" : c.source, c.valid_t_max);
    for (int s = c.max_s; s >= 0; --s) {
        out += fmt::format("{:>3} |", s);
        for (int n = 0; n <= stems; ++n) {
            auto r = c.rank(s, n + s);
            std::string cell = !r ? "?" : *r == 0 ? "." : std::to_string(*r);
            out += fmt::format("{:>3}", cell);
        }
        out += "\n";
    }
    out += "    +" + std::string(3 * (stems + 1), '-') + "\n     ";
    for (int n = 0; n <= stems; ++n)
        out += fmt::format("{:>3}", n);
    out += "\n";
    return out;
}

std::string render_svg(const ExtChart& c)
{
    constexpr int unit = 24, margin = 32;
    const int stems = std::max(c.max_t, 0);
    const int width = margin * 2 + unit * (stems + 1);
    const int height = margin * 2 + unit * (c.max_s + 1);
    auto x_of = [&](int n) { return margin + unit * n + unit / 2; };
    auto y_of = [&](int s) { return height - margin - unit * s - unit / 2; };

    std::string out = fmt::format(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{}\" height=\"{}\" viewBox=\"0 0 {} {}\">\n", width, height,
        width, height);
    out += "<style>line{stroke:#ddd;stroke-width:1}text{font:10px monospace;fill:#333}"
           ".dot{fill:#000}.unknown{fill:#f2f2f2}</style>\n";
    for (int s = 0; s <= c.max_s; ++s)
        for (int n = 0; n <= stems; ++n)
            if (!c.known(s, n + s))
                out += fmt::format("<rect class=\"unknown\" x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\"/>\n",
                                   x_of(n) - unit / 2, y_of(s) - unit / 2, unit, unit);
    for (int n = 0; n <= stems + 1; ++n) {
        int x = margin + unit * n;
        out += fmt::format("<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\"/>\n", x, margin, x, height - margin);
    }
    for (int s = 0; s <= c.max_s + 1; ++s) {
        int y = height - margin - unit * s;
        out += fmt::format("<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\"/>\n", margin, y, width - margin, y);
    }
    for (int n = 0; n <= stems; ++n)
        out += fmt::format("<text x=\"{}\" y=\"{}\" text-anchor=\"middle\">{}</text>\n", x_of(n), height - margin + 14, n);
    for (int s = 0; s <= c.max_s; ++s)
        out += fmt::format("<text x=\"{}\" y=\"{}\" text-anchor=\"end\">{}</text>\n", margin - 6, y_of(s) + 4, s);
    for (auto& [st, rank] : c.ranks) {
        auto [s, t] = st;
        int n = t - s;
        if (n < 0 || n > stems || s > c.max_s || !c.known(s, t))
            continue;
        // Dots side by side, centred in the cell.
        for (int i = 0; i < rank; ++i) {
            int dx = (2 * i - (rank - 1)) * 3;
            out += fmt::format("<circle class=\"dot\" cx=\"{}\" cy=\"{}\" r=\"3\"/>\n", x_of(n) + dx, y_of(s));
        }
    }
    out += "</svg>\n";
    return out;
}

}  // namespace

std::string render_chart(const ExtChart& chart, ChartFormat format)
{
    switch (format) {
    case ChartFormat::Text:
        return render_text(chart);
    case ChartFormat::Svg:
        return render_svg(chart);
    case ChartFormat::Json:
        return chart_to_json(chart);
    }
    return {};
}

}  // namespace chisq::resolve
