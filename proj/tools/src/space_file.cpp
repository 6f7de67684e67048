#include "moravak/cli/space_file.hpp"

#include "moravak/error.hpp"

#include <fmt/core.h>

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

namespace moravak::cli {

namespace {

std::string_view trim(std::string_view s)
{
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
        s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
        s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> tokens(std::string_view s)
{
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i])))
            ++i;
        std::size_t j = i;
        while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j])))
            ++j;
        if (j > i)
            out.push_back(s.substr(i, j - i));
        i = j;
    }
    return out;
}

/// One line of a sectioned file.
struct Line {
    std::string_view text;
    int number = 0;
    /// The untrimmed line, for columns.
    std::string_view full;

    int column_of(std::string_view part) const { return static_cast<int>(part.data() - full.data()) + 1; }
    [[noreturn]] void fail(const std::string& what, std::string_view at) const
    {
        throw ParseError(what, number, at.empty() ? 1 : column_of(at));
    }
};

int to_int(const Line& line, std::string_view s, const char* what)
{
    int value = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc{} || ptr != s.data() + s.size())
        line.fail(fmt::format("{} must be an integer, got '{}'", what, s), s);
    return value;
}

bool to_bool(const Line& line, std::string_view s)
{
    if (s == "true" || s == "yes" || s == "1")
        return true;
    if (s == "false" || s == "no" || s == "0")
        return false;
    line.fail(fmt::format("expected true or false, got '{}'", s), s);
}

std::vector<bool> to_bits(const Line& line, std::string_view s)
{
    std::vector<bool> out;
    for (auto t : tokens(s)) {
        if (t != "0" && t != "1")
            line.fail(fmt::format("expected 0 or 1, got '{}'", t), t);
        out.push_back(t == "1");
    }
    return out;
}

/// Splits "key = value"; the value keeps its position in the line.
std::pair<std::string_view, std::string_view> key_value(const Line& line)
{
    auto eq = line.text.find('=');
    if (eq == std::string_view::npos)
        line.fail("expected 'key = value'", line.text);
    auto key = trim(line.text.substr(0, eq));
    auto value = trim(line.text.substr(eq + 1));
    if (key.empty())
        line.fail("missing key", line.text);
    return {key, value};
}

SourceText source(const Line& line, std::string_view value)
{
    return {std::string(value), line.number, line.column_of(value)};
}

/// Parses "w<i>" into i, or returns nullopt.
std::optional<int> sw_index(std::string_view key)
{
    if (key.size() < 2 || key[0] != 'w')
        return std::nullopt;
    int i = 0;
    auto [ptr, ec] = std::from_chars(key.data() + 1, key.data() + key.size(), i);
    if (ec != std::errc{} || ptr != key.data() + key.size())
        return std::nullopt;
    return i;
}

void parse_line(RawDocument& doc, const std::string& section, const Line& line)
{
    if (section == "generators") {
        auto t = tokens(line.text);
        if (t.size() < 2)
            line.fail("expected 'name degree [kind] [trunc=N]'", line.text);
        Generator g;
        g.name = std::string(t[0]);
        g.degree = to_int(line, t[1], "degree");
        for (std::size_t i = 2; i < t.size(); ++i) {
            if (t[i].starts_with("trunc="))
                g.truncation = to_int(line, t[i].substr(6), "truncation");
            else {
                try {
                    g.kind = generator_kind_from_string(t[i]);
                }
                catch (const Error& e) {
                    line.fail(e.what(), t[i]);
                }
            }
        }
        doc.generators.push_back({g, line.number});
    }
    else if (section == "relations") {
        doc.relations.push_back(source(line, line.text));
    }
    else if (section == "integral") {
        doc.integral->push_back(source(line, line.text));
    }
    else if (section == "sq") {
        auto [lhs, value] = key_value(line);
        auto t = tokens(lhs);
        if (t.size() != 2)
            line.fail("expected 'generator i = value'", lhs);
        doc.sq.push_back({std::string(t[0]), to_int(line, t[1], "square index"), source(line, value)});
    }
    else if (section == "space") {
        auto [key, value] = key_value(line);
        if (key == "cap")
            doc.cap = to_int(line, value, "cap");
        else if (key == "top")
            doc.top = to_int(line, value, "top");
        else if (key == "truncated")
            doc.truncated = to_bool(line, value);
        else
            line.fail(fmt::format("unknown key '{}'", key), key);
    }
    else if (section == "manifold") {
        doc.has_manifold = true;
        auto [key, value] = key_value(line);
        if (key == "dimension")
            doc.dimension = to_int(line, value, "dimension");
        else if (key == "closed")
            doc.closed = to_bool(line, value);
        else if (key == "oriented")
            doc.oriented = to_bool(line, value);
        else if (key == "spin")
            doc.spin = to_bool(line, value);
        else if (key == "string")
            doc.string = to_bool(line, value);
        else if (key == "lambda")
            doc.lambda = source(line, value);
        else if (key == "pairing")
            doc.pairing = to_bits(line, value);
        else if (auto i = sw_index(key))
            doc.sw[*i] = source(line, value);
        else
            line.fail(fmt::format("unknown key '{}'", key), key);
    }
    else if (section == "index") {
        auto [key, value] = key_value(line);
        if (key != "values")
            line.fail(fmt::format("unknown key '{}'", key), key);
        doc.index = to_bits(line, value);
    }
    else if (section == "relative") {
        auto [key, value] = key_value(line);
        auto i = sw_index(key);
        if (!i)
            line.fail(fmt::format("expected a relative class w<i>, got '{}'", key), key);
        doc.relative_sw[*i] = source(line, value);
    }
    else if (section == "restriction") {
        auto [key, value] = key_value(line);
        doc.restriction.emplace_back(std::string(key), source(line, value));
    }
}

const char* const sections[] = {"generators", "relations", "sq",       "integral",    "space",
                                "manifold",   "index",     "relative", "restriction"};

RawDocument parse_text(std::string_view text)
{
    RawDocument doc;
    std::string section;
    int number = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto end = text.find('\n', pos);
        if (end == std::string_view::npos)
            end = text.size();
        std::string_view raw = text.substr(pos, end - pos);
        pos = end + 1;
        ++number;
        if (auto hash = raw.find('#'); hash != std::string_view::npos)
            raw = raw.substr(0, hash);
        Line line{trim(raw), number, raw};
        if (line.text.empty())
            continue;
        if (line.text.front() == '[') {
            if (line.text.back() != ']')
                line.fail("unterminated section header", line.text);
            section = std::string(trim(line.text.substr(1, line.text.size() - 2)));
            if (std::find(std::begin(sections), std::end(sections), section) == std::end(sections))
                line.fail(fmt::format("unknown section '{}'", section), line.text);
            if (section == "integral" && !doc.integral)
                doc.integral.emplace();
            if (section == "manifold")
                doc.has_manifold = true;
            continue;
        }
        if (section.empty())
            line.fail("content before the first section", line.text);
        parse_line(doc, section, line);
    }
    return doc;
}

[[noreturn]] void json_fail(const std::string& what)
{
    throw ParseError(what);
}

const Json& field(const Json& j, const char* key, Json::value_t type)
{
    const auto& v = j.at(key);
    bool ok = v.type() == type || (type == Json::value_t::number_integer && v.is_number_integer());
    if (!ok)
        json_fail(fmt::format("field '{}' has the wrong type", key));
    return v;
}

SourceText json_text(const Json& v, const char* where)
{
    if (!v.is_string())
        json_fail(fmt::format("{} must be a string expression", where));
    return {v.get<std::string>(), 0, 0};
}

int json_key_int(const std::string& key, const char* where)
{
    int value = 0;
    auto [ptr, ec] = std::from_chars(key.data(), key.data() + key.size(), value);
    if (ec != std::errc{} || ptr != key.data() + key.size())
        json_fail(fmt::format("{} key '{}' must be an integer", where, key));
    return value;
}

std::vector<bool> json_bits(const Json& v, const char* where)
{
    if (!v.is_array())
        json_fail(fmt::format("{} must be an array of 0/1", where));
    std::vector<bool> out;
    for (const auto& b : v) {
        if (!b.is_number_integer() || (b.get<int>() != 0 && b.get<int>() != 1))
            json_fail(fmt::format("{} must be an array of 0/1", where));
        out.push_back(b.get<int>() == 1);
    }
    return out;
}

RawDocument parse_json(std::string_view text)
{
    Json j;
    try {
        j = Json::parse(text);
    }
    catch (const Json::parse_error& e) {
        int line = 1;
        int column = 1;
        for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
            if (text[i] == '\n') {
                ++line;
                column = 1;
            }
            else
                ++column;
        }
        throw ParseError("malformed JSON", line, column);
    }
    if (!j.is_object())
        json_fail("a JSON space file must be an object");
    RawDocument doc;
    try {
        if (j.contains("generators"))
            for (const auto& g : field(j, "generators", Json::value_t::array)) {
                Generator gen;
                gen.name = g.at("name").get<std::string>();
                gen.degree = g.at("degree").get<int>();
                if (g.contains("kind"))
                    gen.kind = generator_kind_from_string(g.at("kind").get<std::string>());
                if (g.contains("truncation"))
                    gen.truncation = g.at("truncation").get<int>();
                doc.generators.push_back({gen, 0});
            }
        if (j.contains("relations"))
            for (const auto& r : field(j, "relations", Json::value_t::array))
                doc.relations.push_back(json_text(r, "relation"));
        if (j.contains("sq"))
            for (const auto& [g, entries] : field(j, "sq", Json::value_t::object).items())
                for (const auto& [i, value] : entries.items())
                    doc.sq.push_back({g, json_key_int(i, "sq"), json_text(value, "sq value")});
        if (j.contains("integral")) {
            doc.integral.emplace();
            for (const auto& e : field(j, "integral", Json::value_t::array))
                doc.integral->push_back(json_text(e, "integral class"));
        }
        if (j.contains("space")) {
            const auto& s = field(j, "space", Json::value_t::object);
            if (s.contains("cap"))
                doc.cap = s.at("cap").get<int>();
            if (s.contains("top"))
                doc.top = s.at("top").get<int>();
            if (s.contains("truncated"))
                doc.truncated = s.at("truncated").get<bool>();
        }
        if (j.contains("manifold")) {
            doc.has_manifold = true;
            const auto& m = field(j, "manifold", Json::value_t::object);
            if (m.contains("dimension"))
                doc.dimension = m.at("dimension").get<int>();
            doc.closed = m.value("closed", true);
            doc.oriented = m.value("oriented", false);
            doc.spin = m.value("spin", false);
            doc.string = m.value("string", false);
            if (m.contains("lambda"))
                doc.lambda = json_text(m.at("lambda"), "lambda");
            if (m.contains("sw"))
                for (const auto& [i, value] : m.at("sw").items())
                    doc.sw[json_key_int(i, "sw")] = json_text(value, "Stiefel-Whitney class");
            if (m.contains("pairing"))
                doc.pairing = json_bits(m.at("pairing"), "pairing");
        }
        if (j.contains("index"))
            doc.index = json_bits(j.at("index"), "index");
        if (j.contains("relative"))
            for (const auto& [i, value] : field(j, "relative", Json::value_t::object).items())
                doc.relative_sw[json_key_int(i, "relative")] = json_text(value, "relative class");
        if (j.contains("restriction"))
            for (const auto& [g, value] : field(j, "restriction", Json::value_t::object).items())
                doc.restriction.emplace_back(g, json_text(value, "restriction image"));
    }
    catch (const Json::exception& e) {
        json_fail(fmt::format("invalid field: {}", e.what()));
    }
    return doc;
}

Element parse_expr(const Algebra& alg, const SourceText& s)
{
    try {
        return alg.normal_form(alg.parse(s.text));
    }
    catch (const ParseError& e) {
        if (s.line == 0)
            throw;
        throw ParseError(e.what(), s.line, s.column + std::max(e.column(), 1) - 1);
    }
    catch (const Error& e) {
        if (s.line == 0)
            throw;
        throw Error(e.kind(), fmt::format("line {}:{}: {}", s.line, s.column, e.what()));
    }
}

}  // namespace

RawDocument parse_raw(std::string_view text)
{
    auto body = trim(text);
    if (!body.empty() && body.front() == '{')
        return parse_json(text);
    return parse_text(text);
}

SpaceDocument build(const RawDocument& raw, std::optional<int> cap_override)
{
    std::optional<int> cap = cap_override ? cap_override : raw.cap;
    if (!cap)
        cap = raw.top ? raw.top : raw.dimension;
    if (!cap)
        throw ParseError("the space needs a degree cap: set 'cap' or 'top' in [space]");
    int top = raw.top.value_or(raw.dimension.value_or(*cap));

    std::vector<Generator> gens;
    for (const auto& g : raw.generators)
        gens.push_back(g.generator);
    std::shared_ptr<const Algebra> algebra;
    {
        Algebra free(gens, *cap);
        std::vector<Element> relations;
        for (const auto& r : raw.relations)
            relations.push_back(parse_expr(free, r));
        algebra = std::make_shared<Algebra>(gens, *cap, relations);
    }
    const auto& alg = *algebra;

    SqTable table;
    for (const auto& entry : raw.sq) {
        if (!alg.find(entry.generator))
            throw ParseError(fmt::format("Sq entry for unknown generator '{}'", entry.generator), entry.value.line,
                             1);
        table[entry.generator][entry.i] = parse_expr(alg, entry.value);
    }
    auto action = SteenrodAction::load(algebra, table);

    std::optional<IntegralityData> integral;
    if (raw.integral) {
        std::vector<Element> spanning;
        for (const auto& e : *raw.integral)
            spanning.push_back(parse_expr(alg, e));
        integral.emplace(action, std::move(spanning));
    }

    SpaceDocument doc{SpaceModel{algebra, action, integral, top, raw.truncated}, std::nullopt, std::nullopt, {}, {}};
    doc.space.validate();

    if (raw.has_manifold) {
        if (!raw.dimension)
            throw ParseError("[manifold] needs a dimension");
        ManifoldData m{doc.space, *raw.dimension, {}, {}, BitVector(raw.pairing.size()),
                       raw.closed, raw.oriented, raw.spin, raw.string};
        for (std::size_t i = 0; i < raw.pairing.size(); ++i)
            m.pairing.set(i, raw.pairing[i]);
        for (const auto& [i, text] : raw.sw)
            m.sw[i] = parse_expr(alg, text);
        if (raw.lambda)
            m.lambda = parse_expr(alg, *raw.lambda);
        m.validate();
        doc.manifold = std::move(m);
    }
    if (raw.index) {
        if (alg.degree_cap() < 4)
            throw Error(ErrorKind::invalid_manifold, "an index table needs classes in degree 4");
        doc.index = IndexTable(alg.dim(4), *raw.index);
    }
    for (const auto& [i, text] : raw.relative_sw)
        doc.relative_sw[i] = parse_expr(alg, text);
    doc.restriction = raw.restriction;
    return doc;
}

SpaceDocument parse_space(std::string_view text, std::optional<int> cap_override)
{
    return build(parse_raw(text), cap_override);
}

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ParseError(fmt::format("cannot read '{}'", path));
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

SpaceDocument load_space(const std::string& path, std::optional<int> cap_override)
{
    return parse_space(read_file(path), cap_override);
}

Json to_json(const SpaceDocument& doc)
{
    const auto& alg = *doc.space.algebra;
    Json j = Json::object();
    Json gens = Json::array();
    for (const auto& g : alg.generators()) {
        Json e = {{"name", g.name}, {"degree", g.degree}, {"kind", to_string(g.kind)}};
        if (g.truncation > 0)
            e["truncation"] = g.truncation;
        gens.push_back(std::move(e));
    }
    j["generators"] = std::move(gens);
    Json rels = Json::array();
    for (const auto& r : alg.relations())
        rels.push_back(alg.format(r));
    j["relations"] = std::move(rels);
    Json sq = Json::object();
    for (const auto& [g, entries] : doc.space.action.table()) {
        Json e = Json::object();
        for (const auto& [i, value] : entries)
            e[std::to_string(i)] = alg.format(value);
        sq[g] = std::move(e);
    }
    j["sq"] = std::move(sq);
    if (doc.space.integral) {
        Json integ = Json::array();
        for (const auto& e : doc.space.integral->spanning())
            integ.push_back(alg.format(e));
        j["integral"] = std::move(integ);
    }
    j["space"] = {{"cap", alg.degree_cap()}, {"top", doc.space.top_degree}, {"truncated", doc.space.truncated}};
    if (doc.manifold) {
        const auto& m = *doc.manifold;
        Json sw = Json::object();
        for (const auto& [i, w] : m.sw)
            sw[std::to_string(i)] = alg.format(w);
        Json pairing = Json::array();
        for (std::size_t i = 0; i < m.pairing.size(); ++i)
            pairing.push_back(m.pairing.test(i) ? 1 : 0);
        j["manifold"] = {{"dimension", m.dimension}, {"closed", m.closed},       {"oriented", m.oriented},
                         {"spin", m.spin},           {"string", m.string},       {"lambda", alg.format(m.lambda)},
                         {"sw", std::move(sw)},      {"pairing", std::move(pairing)}};
    }
    if (doc.index) {
        Json values = Json::array();
        for (bool b : doc.index->values())
            values.push_back(b ? 1 : 0);
        j["index"] = std::move(values);
    }
    if (!doc.relative_sw.empty()) {
        Json rel = Json::object();
        for (const auto& [i, w] : doc.relative_sw)
            rel[std::to_string(i)] = alg.format(w);
        j["relative"] = std::move(rel);
    }
    if (!doc.restriction.empty()) {
        Json res = Json::object();
        for (const auto& [g, text] : doc.restriction)
            res[g] = text.text;
        j["restriction"] = std::move(res);
    }
    return j;
}

AlgebraMap restriction_map(const ManifoldData& m, const SpaceDocument& boundary)
{
    const auto& source = *m.space.algebra;
    const auto& target = *boundary.space.algebra;
    std::vector<Element> images(source.num_generators());
    for (const auto& [g, text] : boundary.restriction) {
        auto i = source.find(g);
        if (!i)
            throw ParseError(fmt::format("restriction of unknown generator '{}'", g), text.line, 1);
        images[*i] = parse_expr(target, text);
    }
    return AlgebraMap(m.space.algebra, boundary.space.algebra, std::move(images));
}

namespace {

ModuleDocument parse_module_text(std::string_view text)
{
    ModuleDocument doc;
    bool have_n = false;
    bool have_degrees = false;
    std::string section;
    int k = -1;
    int number = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto end = text.find('\n', pos);
        if (end == std::string_view::npos)
            end = text.size();
        std::string_view raw = text.substr(pos, end - pos);
        pos = end + 1;
        ++number;
        if (auto hash = raw.find('#'); hash != std::string_view::npos)
            raw = raw.substr(0, hash);
        Line line{trim(raw), number, raw};
        if (line.text.empty())
            continue;
        if (line.text.front() == '[') {
            if (line.text.back() != ']')
                line.fail("unterminated section header", line.text);
            section = std::string(trim(line.text.substr(1, line.text.size() - 2)));
            if (section == "module")
                continue;
            if (section.size() < 2 || section[0] != 'b')
                line.fail(fmt::format("unknown section '{}'", section), line.text);
            k = to_int(line, std::string_view(section).substr(1), "operator index");
            if (k < 0)
                line.fail("operator index must be non-negative", line.text);
            if (doc.operators.contains(k))
                line.fail(fmt::format("duplicate operator b{}", k), line.text);
            doc.operators[k];
            continue;
        }
        if (section.empty())
            line.fail("content before the first section", line.text);
        if (section == "module") {
            auto [key, value] = key_value(line);
            if (key == "n") {
                doc.n = to_int(line, value, "n");
                have_n = true;
            }
            else if (key == "degrees") {
                doc.degrees.clear();
                for (auto t : tokens(value))
                    doc.degrees.push_back(to_int(line, t, "degree"));
                have_degrees = true;
            }
            else
                line.fail(fmt::format("unknown key '{}'", key), key);
            continue;
        }
        std::vector<std::string> row;
        for (auto t : tokens(line.text))
            row.emplace_back(t);
        doc.operators[k].push_back(std::move(row));
    }
    if (!have_n || !have_degrees)
        throw ParseError("[module] needs n and degrees");
    return doc;
}

ModuleDocument parse_module_json(std::string_view text)
{
    Json j;
    try {
        j = Json::parse(text);
        ModuleDocument doc;
        doc.n = j.at("n").get<int>();
        doc.degrees = j.at("degrees").get<std::vector<int>>();
        if (j.contains("b"))
            for (const auto& [k, m] : j.at("b").items())
                doc.operators[json_key_int(k, "b")] = m.get<std::vector<std::vector<std::string>>>();
        return doc;
    }
    catch (const Json::parse_error& e) {
        throw ParseError(fmt::format("malformed JSON at byte {}", e.byte));
    }
    catch (const Json::exception& e) {
        throw ParseError(fmt::format("invalid module field: {}", e.what()));
    }
}

}  // namespace

ModuleDocument parse_module(std::string_view text)
{
    auto body = trim(text);
    if (!body.empty() && body.front() == '{')
        return parse_module_json(text);
    return parse_module_text(text);
}

ModuleDocument load_module(const std::string& path)
{
    return parse_module(read_file(path));
}

Json to_json(const ModuleDocument& doc)
{
    Json b = Json::object();
    for (const auto& [k, m] : doc.operators)
        b[std::to_string(k)] = m;
    return {{"n", doc.n}, {"degrees", doc.degrees}, {"b", std::move(b)}};
}

TensorModule tensor_module(const ModuleDocument& doc, int factors)
{
    if (!doc.operators.empty() && doc.operators.rbegin()->first >= factors)
        throw Error(ErrorKind::invalid_tensor_module,
                    fmt::format("b{} lies beyond the {} tensor factors", doc.operators.rbegin()->first, factors));
    std::vector<std::vector<std::vector<std::string>>> entries(
        factors, std::vector<std::vector<std::string>>(doc.degrees.size(),
                                                       std::vector<std::string>(doc.degrees.size(), "0")));
    for (const auto& [k, m] : doc.operators)
        entries[k] = m;
    return TensorModule::from_entries(doc.n, doc.degrees, entries);
}

RbkModule single_factor(const ModuleDocument& doc)
{
    if (doc.operators.size() != 1)
        throw Error(ErrorKind::invalid_module,
                    fmt::format("expected exactly one operator section, found {}", doc.operators.size()));
    const auto& [k, m] = *doc.operators.begin();
    return RbkModule::from_entries(doc.n, k, doc.degrees, m);
}

}  // namespace moravak::cli
