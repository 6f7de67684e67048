#include "moravak/cli/cli.hpp"

#include "moravak/cli/space_file.hpp"
#include "moravak/error.hpp"
#include "moravak/fgl.hpp"
#include "moravak/twistgroup.hpp"

#include <CLI11.hpp>
#include <fmt/core.h>

#include <cctype>
#include <charconv>
#include <optional>
#include <sstream>

namespace moravak::cli {

const char* version()
{
    return "0.1.0";
}

namespace {

struct Common {
    bool json = false;
    std::optional<int> degree_cap;
    std::optional<int> truncation;
};

struct Report {
    std::string command;
    Json input = Json::object();
    Json result = Json::object();
    std::vector<std::string> text;

    void line(std::string s) { text.push_back(std::move(s)); }
};

std::string render(const Report& r, bool json)
{
    Json doc = Json::object();
    doc["tool"] = "moravak";
    doc["version"] = version();
    doc["command"] = r.command;
    doc["input"] = r.input;
    doc["result"] = r.result;
    if (json)
        return doc.dump(2) + "\n";
    std::string out;
    for (const auto& l : r.text)
        out += l + "\n";
    out += "\n" + doc.dump(2) + "\n";
    return out;
}

std::string join(const std::vector<std::string>& parts, const char* sep)
{
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i)
            out += sep;
        out += parts[i];
    }
    return out;
}

std::string trimmed(std::string s)
{
    auto b = s.find_first_not_of(" \t");
    auto e = s.find_last_not_of(" \t");
    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
}

/// "(0,1)", "0, 1", "()" and "" are accepted.
std::vector<int> parse_exponents(std::string text)
{
    text = trimmed(text);
    if (!text.empty() && text.front() == '(') {
        if (text.back() != ')')
            throw ParseError(fmt::format("unbalanced parentheses in '{}'", text));
        text = text.substr(1, text.size() - 2);
    }
    std::vector<int> out;
    if (trimmed(text).empty())
        return out;
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, ',')) {
        part = trimmed(part);
        int v = 0;
        auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
        if (part.empty() || ec != std::errc{} || ptr != part.data() + part.size())
            throw ParseError(fmt::format("'{}' is not an exponent", part));
        out.push_back(v);
    }
    return out;
}

/// Polynomial in x with integer coefficients, such as "1 + x", "2*x - x^3".
PowerSeries parse_series(const std::string& text, Modulus mod, int truncation)
{
    PowerSeries out(mod, truncation);
    std::size_t i = 0;
    auto skip = [&] {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i])))
            ++i;
    };
    auto fail = [&](const char* what) -> void {
        throw ParseError(fmt::format("{} at column {} in '{}'", what, i + 1, text), 0, static_cast<int>(i + 1));
    };
    auto number = [&]() -> std::int64_t {
        std::size_t start = i;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])))
            ++i;
        std::int64_t v = 0;
        std::from_chars(text.data() + start, text.data() + i, v);
        return v;
    };
    std::vector<std::int64_t> coeffs(truncation + 1, 0);
    skip();
    if (i == text.size())
        fail("empty series");
    bool first = true;
    while (true) {
        skip();
        if (i == text.size())
            break;
        std::int64_t sign = 1;
        if (text[i] == '+' || text[i] == '-') {
            sign = text[i] == '-' ? -1 : 1;
            ++i;
            skip();
        }
        else if (!first)
            fail("expected '+' or '-'");
        first = false;
        std::int64_t c = 1;
        bool have_coeff = false;
        if (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
            c = number();
            have_coeff = true;
            skip();
            if (i < text.size() && text[i] == '*') {
                ++i;
                skip();
                if (i == text.size() || text[i] != 'x')
                    fail("expected 'x' after '*'");
            }
        }
        int e = 0;
        if (i < text.size() && text[i] == 'x') {
            ++i;
            e = 1;
            skip();
            if (i < text.size() && text[i] == '^') {
                ++i;
                skip();
                if (i == text.size() || !std::isdigit(static_cast<unsigned char>(text[i])))
                    fail("expected an exponent");
                e = static_cast<int>(number());
            }
        }
        else if (!have_coeff)
            fail("expected a term");
        if (e <= truncation)
            coeffs[e] += sign * c;
    }
    for (int k = 0; k <= truncation; ++k)
        out.set(k, coeffs[k]);
    return out;
}

Json module_json(const GradedKnModule& m)
{
    return {{"rank", m.rank()}, {"degrees", m.degrees}, {"module", m.format()}};
}

Json obstruction_json(const Algebra& alg, const ObstructionReport& r)
{
    return {{"verdict", to_string(r.verdict)},
            {"obstruction", alg.format(r.obstruction)},
            {"pre_bockstein", alg.format(r.pre_bockstein)},
            {"vanishes", to_string(r.vanishes)},
            {"warnings", r.warnings}};
}

void obstruction_text(Report& rep, const Algebra& alg, const ObstructionReport& r, const std::string& name)
{
    rep.line(fmt::format("{}: {}", name, alg.format(r.obstruction)));
    rep.line(fmt::format("  = beta({}), integral class vanishes: {}", alg.format(r.pre_bockstein),
                         to_string(r.vanishes)));
    rep.line(fmt::format("verdict: {}", to_string(r.verdict)));
    for (const auto& w : r.warnings)
        rep.line("warning: " + w);
}

// twist

struct TwistArgs {
    std::string encode;
    std::optional<std::uint64_t> decode;
    int n = 1;
    std::optional<int> factors;
    std::optional<int> vanishing;
    int prime = 2;
};

Report run_twist(const TwistArgs& a, const Common& c)
{
    Report rep{"twist"};
    int m = c.truncation.value_or(TwistElement::default_truncation);
    if (m < 1 || m > 63)
        throw Error(ErrorKind::invalid_index, fmt::format("truncation {} outside [1, 63]", m));
    TwistElement f = TwistElement::universal(m);
    if (!a.encode.empty()) {
        rep.input["encode"] = a.encode;
        f = TwistElement::from_exponents(parse_exponents(a.encode), m);
    }
    else if (a.decode) {
        rep.input["decode"] = *a.decode;
        f = decode({*a.decode, m});
    }
    rep.input["truncation"] = m;
    rep.input["n"] = a.n;
    Dyadic d = encode(f);
    int factors = a.factors.value_or(m);
    auto hom = to_algebra_hom(f, a.n, factors);
    std::vector<std::string> exps;
    for (int k : f.exponents())
        exps.push_back(std::to_string(k));
    rep.result["exponents"] = f.exponents();
    rep.result["encoding"] = d.value;
    rep.result["series"] = f.series().format();
    rep.result["universal"] = hom.universal();
    rep.result["algebra_hom"] = hom.format();
    rep.line(fmt::format("twist: prod (1 + y^(2^k)) for k in ({})", join(exps, ",")));
    rep.line(fmt::format("encoding: {} mod 2^{}", d.value, m));
    rep.line(fmt::format("series: {}", f.series().format()));
    rep.line(fmt::format("algebra hom (n = {}): {}", a.n, hom.format()));
    if (a.vanishing) {
        auto v = vanishing_check(*a.vanishing, a.n, a.prime);
        rep.input["vanishing"] = *a.vanishing;
        rep.input["prime"] = a.prime;
        rep.result["vanishing"] = {{"m", *a.vanishing}, {"n", a.n}, {"prime", a.prime}, {"verdict", to_string(v)}};
        rep.line(fmt::format("twists of K({}) over K(Z, {}) at p = {}: {}", a.n, *a.vanishing, a.prime, to_string(v)));
    }
    return rep;
}

// tor

struct TorArgs {
    std::string module;
    std::string standard;
    int n = 1;
    int k = 0;
    int max_degree = 4;
};

StandardModule standard_from(const std::string& s)
{
    if (s == "M")
        return StandardModule::M;
    if (s == "N")
        return StandardModule::N;
    if (s == "R")
        return StandardModule::R;
    throw ParseError(fmt::format("unknown standard module '{}'", s));
}

Report run_tor(const TorArgs& a, const Common&)
{
    Report rep{"tor"};
    std::optional<RbkModule> p;
    if (!a.module.empty()) {
        auto doc = load_module(a.module);
        rep.input["module"] = to_json(doc);
        p = single_factor(doc);
    }
    else {
        rep.input["standard"] = a.standard;
        rep.input["n"] = a.n;
        rep.input["k"] = a.k;
        p = standard_module(standard_from(a.standard), a.n, a.k);
    }
    rep.input["max_degree"] = a.max_degree;
    rep.line(fmt::format("module over R(b{}) with n = {}, generators in degrees ({})", p->k(), p->n(),
                         join([&] {
                             std::vector<std::string> s;
                             for (int d : p->degrees())
                                 s.push_back(std::to_string(d));
                             return s;
                         }(), ",")));
    Json matrix = Json::array();
    for (std::size_t i = 0; i < p->rank(); ++i) {
        Json row = Json::array();
        std::vector<std::string> cells;
        for (std::size_t j = 0; j < p->rank(); ++j) {
            row.push_back(p->entry(i, j));
            cells.push_back(p->entry(i, j));
        }
        matrix.push_back(std::move(row));
        rep.line("  [" + join(cells, " ") + "]");
    }
    rep.result["b"] = std::move(matrix);
    Json tors = Json::object();
    for (auto which : {StandardModule::M, StandardModule::N}) {
        Json list = Json::array();
        for (int i = 0; i <= a.max_degree; ++i) {
            auto t = tor(*p, which, i);
            Json e = module_json(t);
            e["i"] = i;
            list.push_back(std::move(e));
            rep.line(fmt::format("Tor_{}(P, {}) = {}", i, to_string(which), t.format()));
        }
        tors[to_string(which)] = std::move(list);
    }
    rep.result["tor"] = std::move(tors);
    return rep;
}

// khorami

struct KhoramiArgs {
    std::string module;
    int n = 1;
    int max_degree = 4;
};

Report run_khorami(const KhoramiArgs& a, const Common& c)
{
    Report rep{"khorami"};
    int factors = c.truncation.value_or(TensorModule::default_factors);
    std::optional<TensorModule> p;
    if (!a.module.empty()) {
        auto doc = load_module(a.module);
        rep.input["module"] = to_json(doc);
        p = tensor_module(doc, factors);
    }
    else {
        rep.input["point"] = true;
        rep.input["n"] = a.n;
        p = TensorModule::from_factor(standard_module(StandardModule::M, a.n, 0), factors);
    }
    rep.input["factors"] = factors;
    rep.input["max_degree"] = a.max_degree;
    auto q = khorami_quotient(*p);
    auto hom = to_algebra_hom(TwistElement::universal(), p->n(), factors);
    auto e2 = bar_e2(*p, hom, a.max_degree);
    rep.result["n"] = p->n();
    rep.result["quotient"] = module_json(q);
    Json list = Json::array();
    for (std::size_t i = 0; i < e2.size(); ++i) {
        Json e = module_json(e2[i]);
        e["i"] = i;
        list.push_back(std::move(e));
    }
    rep.result["bar_e2"] = std::move(list);
    rep.result["agrees"] = !e2.empty() && e2[0] == q;
    rep.line(fmt::format("P / (b0 - v{}, b1, b2, ...) = {}", p->n(), q.format()));
    for (std::size_t i = 0; i < e2.size(); ++i)
        rep.line(fmt::format("E2_{} = {}", i, e2[i].format()));
    rep.line(fmt::format("quotient agrees with E2_0: {}", !e2.empty() && e2[0] == q));
    return rep;
}

// ahss

struct AhssArgs {
    std::string space;
    int n = 1;
    std::string twist = "0";
    bool integral = false;
};

Json page_json(const Page& page, const Algebra& alg)
{
    Json cols = Json::array();
    for (const auto& col : page.columns()) {
        Json basis = Json::array();
        for (const auto& e : col.basis)
            basis.push_back(alg.format(e));
        auto rank = page.rank(col.p, 0);
        cols.push_back({{"p", col.p},
                        {"rank", rank ? Json(*rank) : Json(nullptr)},
                        {"edge_incomplete", col.edge_incomplete},
                        {"basis", std::move(basis)}});
    }
    return {{"index", page.index()}, {"upper_bound", page.upper_bound()}, {"period", page.period()},
            {"columns", std::move(cols)}};
}

std::string ranks_text(const Page& page)
{
    std::vector<std::string> parts;
    for (const auto& col : page.columns()) {
        auto r = page.rank(col.p, 0);
        parts.push_back(r ? std::to_string(*r) : "?");
    }
    return join(parts, " ");
}

Element parse_twist(const SpaceModel& space, const std::string& text, int degree)
{
    const auto& alg = *space.algebra;
    if (text == "0")
        return {};
    if (text == "fundamental") {
        if (degree > alg.degree_cap() || alg.dim(degree) != 1)
            throw Error(ErrorKind::wrong_twist_degree,
                        fmt::format("'fundamental' needs H^{} of rank 1", degree));
        return alg.from_coordinates(degree, BitVector::unit(1, 0));
    }
    return alg.normal_form(alg.parse(text));
}

Report run_ahss(const AhssArgs& a, const Common& c)
{
    Report rep{"ahss"};
    auto doc = load_space(a.space, c.degree_cap);
    const auto& alg = *doc.space.algebra;
    rep.input["n"] = a.n;
    rep.input["twist"] = a.twist;
    rep.input["space"] = to_json(doc);
    TwistClass twist{parse_twist(doc.space, a.twist, a.n + 2), true};
    auto e2 = e2_page(doc.space, a.n);
    auto d = first_differential(e2, doc.space, twist);
    auto next = turn_page(d);
    int r = first_length(a.n);
    rep.result["twist"] = alg.format(twist.h);
    rep.result["differential_length"] = r;
    rep.result["e2"] = page_json(e2, alg);
    Json drank = Json::array();
    for (int p = 0; p + r <= d.top(); ++p)
        drank.push_back({{"p", p}, {"rank", d.differential(p).rank()}});
    rep.result["differential_ranks"] = std::move(drank);
    rep.result["next"] = page_json(next, alg);
    bool all_zero = true;
    for (const auto& col : next.columns())
        all_zero = all_zero && !col.edge_incomplete && col.basis.empty();
    rep.result["next_all_zero"] = all_zero;
    rep.line(fmt::format("twisted AHSS for K({}) with twist {}", a.n, alg.format(twist.h)));
    rep.line(fmt::format("E2 ranks by column p (every q = e*{}): {}", e2.period(), ranks_text(e2)));
    rep.line(fmt::format("d{}: (p, q) -> (p + {}, q - {})", r, r, e2.period()));
    rep.line(fmt::format("E{} ranks: {}{}", next.index(), ranks_text(next),
                         next.upper_bound() ? " (upper bounds)" : ""));
    if (a.integral) {
        auto integ = integral_first_differential(e2, doc.space, twist);
        Json entries = Json::array();
        for (const auto& e : integ.entries) {
            entries.push_back({{"p", e.p},
                               {"source", alg.format(e.source)},
                               {"shadow", alg.format(e.shadow)},
                               {"pre_bockstein", e.pre_bockstein ? Json(alg.format(*e.pre_bockstein)) : Json(nullptr)},
                               {"vanishes", to_string(e.vanishes)}});
            rep.line(fmt::format("integral d({}) = {} [vanishes: {}]", alg.format(e.source), alg.format(e.shadow),
                                 to_string(e.vanishes)));
        }
        rep.result["integral"] = std::move(entries);
    }
    return rep;
}

// fgl

struct FglArgs {
    std::string law = "gm";
    int bits = 1;
    std::string grouplike;
    int theta = 4;
};

Report run_fgl(const FglArgs& a, const Common& c)
{
    Report rep{"fgl"};
    int t = c.truncation.value_or(FGL::default_truncation);
    Modulus mod(a.bits);
    FGL f = a.law == "gm" ? FGL::multiplicative(mod, t) : FGL::additive(mod, t);
    rep.input["law"] = a.law;
    rep.input["bits"] = a.bits;
    rep.input["truncation"] = t;
    rep.line(fmt::format("law {} over Z/2^{}, truncated at total degree {}", a.law, a.bits, t));
    if (!a.grouplike.empty()) {
        rep.input["check_grouplike"] = a.grouplike;
        auto alpha = parse_series(a.grouplike, mod, t);
        bool ok = grouplike_check(alpha, f);
        auto composed = f.coefficients().substitute_into(alpha);
        auto product = Series2::outer(alpha, alpha);
        rep.result["alpha"] = alpha.format();
        rep.result["alpha_of_sum"] = composed.format();
        rep.result["alpha_tensor_alpha"] = product.format();
        rep.result["grouplike"] = ok;
        rep.line(fmt::format("alpha = {}", alpha.format()));
        rep.line(fmt::format("alpha(F(y, z)) = {}", composed.format()));
        rep.line(fmt::format("alpha(y) alpha(z) = {}", product.format()));
        rep.line(fmt::format("grouplike: {}", ok ? "true" : "false"));
        return rep;
    }
    auto two = two_series(f);
    rep.result["two_series"] = two.format();
    rep.line(fmt::format("[2](x) = {}", two.format()));
    if (a.bits == 1) {
        auto h = height(f);
        rep.result["height"] = {{"value", h.value}, {"lower_bound", h.lower_bound}};
        rep.line(fmt::format("height: {}{}", h.lower_bound ? ">= " : "", h.value));
    }
    rep.input["theta"] = a.theta;
    try {
        auto th = solve_theta(f, a.theta);
        std::vector<std::string> parts{std::to_string(th.linear)};
        for (auto v : th.theta)
            parts.push_back(std::to_string(v));
        rep.result["theta"] = {{"two_typical", true}, {"linear", th.linear}, {"values", th.theta}};
        rep.line(fmt::format("theta_0..theta_{} = ({})", a.theta, join(parts, ", ")));
    }
    catch (const Error& e) {
        if (e.kind() != ErrorKind::not_two_typical)
            throw;
        rep.result["theta"] = {{"two_typical", false}, {"reason", e.what()}};
        rep.line(fmt::format("not 2-typical: {}", e.what()));
    }
    return rep;
}

// obstruct

struct ObstructArgs {
    std::string space;
    std::string check = "string";
    std::string twist = "0";
    std::string a = "0";
    std::string b = "0";
    std::string h5 = "0";
    int i = 7;
    int j = 8;
    int odd = 7;
    std::string boundary;
    bool b_not_torsion = false;
};

Report run_obstruct(const ObstructArgs& args, const Common& c)
{
    Report rep{"obstruct"};
    auto doc = load_space(args.space, c.degree_cap);
    if (!doc.manifold)
        throw Error(ErrorKind::invalid_manifold, "the file has no [manifold] section");
    const auto& m = *doc.manifold;
    const auto& alg = *m.space.algebra;
    auto expr = [&](const std::string& s) { return alg.normal_form(alg.parse(s)); };
    auto require_index = [&]() -> const IndexTable& {
        if (!doc.index)
            throw Error(ErrorKind::invalid_manifold, "the file has no [index] table");
        return *doc.index;
    };
    rep.input["check"] = args.check;
    rep.input["space"] = to_json(doc);
    rep.result["check"] = args.check;
    const auto& check = args.check;
    if (check == "string") {
        rep.input["twist"] = args.twist;
        auto r = twisted_string_check(m, {expr(args.twist), true});
        rep.result["report"] = obstruction_json(alg, r);
        obstruction_text(rep, alg, r, "W7 + Sq_Z^3 H4");
    }
    else if (check == "heterotic") {
        rep.input["a"] = args.a;
        rep.input["b"] = args.b;
        auto r = heterotic_check(m, expr(args.a), expr(args.b));
        rep.result["report"] = obstruction_json(alg, r.obstruction);
        rep.result["sq3_a"] = alg.format(r.sq3_a);
        rep.result["hypotheses_hold"] = r.hypotheses_hold;
        rep.result["failed_hypotheses"] = r.failed_hypotheses;
        rep.line(fmt::format("Sq3 a = {}", alg.format(r.sq3_a)));
        for (const auto& h : r.failed_hypotheses)
            rep.line("hypothesis failed: " + h);
        obstruction_text(rep, alg, r.obstruction, "W7 + Sq_Z^3 b");
    }
    else if (check == "fivebrane") {
        rep.input["h5"] = args.h5;
        auto r = fivebrane_check(m, expr(args.h5));
        rep.result["report"] = obstruction_json(alg, r.obstruction);
        rep.result["alpha8"] = alg.format(r.alpha8);
        rep.result["q2q1_h5"] = alg.format(r.q2q1);
        rep.result["sq7sq3_h5"] = alg.format(r.sq7sq3);
        rep.line(fmt::format("alpha8 = Sq3 h5 = {}", alg.format(r.alpha8)));
        rep.line(fmt::format("Q2 Q1 h5 = {}, Sq7 Sq3 h5 = {}", alg.format(r.q2q1), alg.format(r.sq7sq3)));
        obstruction_text(rep, alg, r.obstruction, "W15 + Sq_Z^7 alpha8");
    }
    else if (check == "phase") {
        rep.input["a"] = args.a;
        rep.input["b"] = args.b;
        rep.input["b_torsion"] = !args.b_not_torsion;
        auto r = phase_invariance_check(m, require_index(), expr(args.a), expr(args.b), !args.b_not_torsion);
        rep.result["f_a"] = r.f_a;
        rep.result["f_2b"] = r.f_2b;
        rep.result["cross_term"] = r.cross_term;
        rep.result["f_a_plus_3b"] = r.f_a_plus_3b;
        rep.result["invariant"] = r.invariant;
        rep.result["sufficient_condition"] = r.sufficient_condition;
        rep.result["orientation"] = obstruction_json(alg, r.orientation);
        rep.result["warnings"] = r.warnings;
        rep.line(fmt::format("f(a) = {}, f(2b) = <b Sq2 lambda> = {}, <b Sq2 a> = {}", int(r.f_a), int(r.f_2b),
                             int(r.cross_term)));
        rep.line(fmt::format("f(a + 3b) = {}", int(r.f_a_plus_3b)));
        rep.line(fmt::format("phase invariant: {}", r.invariant ? "true" : "false"));
        rep.line(fmt::format("Sq3 lambda + Sq3 a = 0: {}", r.sufficient_condition ? "true" : "false"));
        for (const auto& w : r.warnings)
            rep.line("warning: " + w);
        obstruction_text(rep, alg, r.orientation, "W7 + Sq_Z^3 a");
    }
    else if (check == "refinement") {
        auto failure = refinement_failure(m, require_index());
        rep.result["valid"] = !failure.has_value();
        if (failure) {
            rep.result["failure"] = {alg.format(failure->first), alg.format(failure->second)};
            rep.line(fmt::format("quadratic refinement fails on ({}, {})", alg.format(failure->first),
                                 alg.format(failure->second)));
        }
        else
            rep.line("index table is a quadratic refinement of <a Sq2 a'>");
    }
    else if (check == "wu") {
        rep.input["i"] = args.i;
        rep.input["j"] = args.j;
        WuAssumptions flags{m.oriented, m.spin, m.w4_zero()};
        auto general = wu_expansion(args.i, args.j);
        auto reduced = wu_expansion(args.i, args.j, flags);
        auto value = wu_sq(m, args.i, args.j);
        rep.result["expansion"] = format_wu(general);
        rep.result["reduced"] = format_wu(reduced);
        rep.result["value"] = alg.format(value);
        rep.line(fmt::format("Sq{} w{} = {}", args.i, args.j, format_wu(general)));
        rep.line(fmt::format("  under the manifold's flags: {}", format_wu(reduced)));
        rep.line(fmt::format("  = {}", alg.format(value)));
    }
    else if (check == "sw") {
        rep.input["odd"] = args.odd;
        auto s = integral_sw(m, args.odd);
        rep.result["representative"] = alg.format(s.representative);
        rep.result["vanishes"] = to_string(s.vanishes);
        rep.line(fmt::format("W{} shadow: {}, vanishes: {}", args.odd, alg.format(s.representative),
                             to_string(s.vanishes)));
    }
    else if (check == "relative") {
        rep.input["twist"] = args.twist;
        RelativePair pair{std::nullopt, std::nullopt, doc.relative_sw};
        if (!args.boundary.empty()) {
            auto boundary = load_space(args.boundary);
            rep.input["boundary"] = to_json(boundary);
            pair.restriction = restriction_map(m, boundary);
            pair.boundary = boundary.space;
        }
        auto r = relative_obstruction(m, pair, {expr(args.twist), true});
        rep.result["report"] = obstruction_json(alg, r);
        obstruction_text(rep, alg, r, "W7(X, A) + Sq3 H4");
    }
    return rep;
}

int exit_code_for(ErrorCategory c)
{
    switch (c) {
    case ErrorCategory::parse:
        return exit_parse;
    case ErrorCategory::validation:
        return exit_validation;
    case ErrorCategory::computation:
        return exit_computation;
    case ErrorCategory::hypothesis:
        return exit_hypothesis;
    }
    return exit_computation;
}

}  // namespace

RunResult run(const std::vector<std::string>& args)
{
    CLI::App app{"Twisted Morava K-theory computations at p = 2", "moravak"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_version_flag("--version", version());
    Common common;
    app.add_flag("--json", common.json, "Emit only the JSON report");
    app.add_option("--degree-cap", common.degree_cap, "Override the degree cap of space files");
    app.add_option("--truncation", common.truncation,
                   "Truncation: M for twist, factor count K for khorami, total degree T for fgl");

    TwistArgs twist;
    auto* tw = app.add_subcommand("twist", "Encode and decode twists of K(n)");
    auto* tw_encode = tw->add_option("--encode", twist.encode, "Exponent list such as \"(0,1)\"");
    auto* tw_decode = tw->add_option("--decode", twist.decode, "Dyadic value to decode");
    tw_encode->excludes(tw_decode);
    tw->add_option("--n", twist.n, "Height n")->check(CLI::PositiveNumber);
    tw->add_option("--factors", twist.factors, "Tensor factors of the algebra hom");
    tw->add_option("--vanishing", twist.vanishing, "Classify twists over K(Z, m)");
    tw->add_option("--prime", twist.prime, "Prime for --vanishing");

    TorArgs tor_args;
    auto* to = app.add_subcommand("tor", "Tor over R(b_k) against M_k and N_k");
    auto* tor_module = to->add_option("--module", tor_args.module, "Module file with one [b<k>] section");
    auto* tor_standard =
        to->add_option("--standard", tor_args.standard, "Standard module M, N or R")->check(CLI::IsMember({"M", "N", "R"}));
    tor_module->excludes(tor_standard);
    to->add_option("--n", tor_args.n, "Height n")->check(CLI::PositiveNumber);
    to->add_option("--k", tor_args.k, "Factor index k")->check(CLI::NonNegativeNumber);
    to->add_option("--max-degree", tor_args.max_degree, "Largest homological degree")->check(CLI::NonNegativeNumber);

    KhoramiArgs kh;
    auto* kho = app.add_subcommand("khorami", "The quotient P / (b0 - v_n, b1, ...) and the bar E2 term");
    kho->add_option("--module", kh.module, "Module file; the point module when absent");
    kho->add_option("--n", kh.n, "Height n for the point module")->check(CLI::PositiveNumber);
    kho->add_option("--max-degree", kh.max_degree, "Largest homological degree")->check(CLI::NonNegativeNumber);

    AhssArgs ahss;
    auto* ah = app.add_subcommand("ahss", "Pages of the twisted Atiyah-Hirzebruch spectral sequence");
    ah->add_option("--space", ahss.space, "Space file")->required();
    ah->add_option("--n", ahss.n, "Height n")->check(CLI::PositiveNumber);
    ah->add_option("--twist", ahss.twist, "Twist class: an expression, 'fundamental' or 0");
    ah->add_flag("--integral", ahss.integral, "Report integral certificates for the first differential");

    FglArgs fgl;
    auto* fg = app.add_subcommand("fgl", "Formal group law checks");
    fg->add_option("--law", fgl.law, "gm (multiplicative) or ga (additive)")->check(CLI::IsMember({"gm", "ga"}));
    fg->add_option("--bits", fgl.bits, "Coefficients in Z/2^bits")->check(CLI::Range(1, 62));
    fg->add_option("--check-grouplike", fgl.grouplike, "Series in x to test for grouplikeness");
    fg->add_option("--theta", fgl.theta, "Number of theta values to solve for")->check(CLI::NonNegativeNumber);

    ObstructArgs ob;
    auto* obs = app.add_subcommand("obstruct", "Orientation obstructions on a manifold file");
    obs->add_option("--space", ob.space, "Manifold file")->required();
    obs->add_option("--check", ob.check, "Which check to run")
        ->check(CLI::IsMember({"string", "heterotic", "fivebrane", "phase", "refinement", "wu", "sw", "relative"}));
    obs->add_option("--twist", ob.twist, "Degree-4 twist for string and relative");
    obs->add_option("--a", ob.a, "Class a for heterotic and phase");
    obs->add_option("--b", ob.b, "Class b for heterotic and phase");
    obs->add_flag("--b-not-torsion", ob.b_not_torsion, "Mark b as not torsion for phase");
    obs->add_option("--h5", ob.h5, "Degree-5 class for fivebrane");
    obs->add_option("--i", ob.i, "Square index for wu");
    obs->add_option("--j", ob.j, "Class index for wu");
    obs->add_option("--odd", ob.odd, "Odd index of the integral class for sw");
    obs->add_option("--boundary", ob.boundary, "Boundary file with a [restriction] section for relative");

    RunResult out;
    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    }
    catch (const CLI::Success& e) {
        std::ostringstream o;
        std::ostringstream err;
        app.exit(e, o, err);
        out.output = o.str() + err.str();
        return out;
    }
    catch (const CLI::ParseError& e) {
        std::ostringstream o;
        std::ostringstream err;
        app.exit(e, o, err);
        out.exit_code = exit_usage;
        out.output = o.str();
        out.error = err.str();
        return out;
    }

    try {
        Report rep;
        if (tw->parsed())
            rep = run_twist(twist, common);
        else if (to->parsed()) {
            if (tor_args.module.empty() && tor_args.standard.empty()) {
                out.exit_code = exit_usage;
                out.error = "tor needs --module or --standard\n";
                return out;
            }
            rep = run_tor(tor_args, common);
        }
        else if (kho->parsed())
            rep = run_khorami(kh, common);
        else if (ah->parsed())
            rep = run_ahss(ahss, common);
        else if (fg->parsed())
            rep = run_fgl(fgl, common);
        else
            rep = run_obstruct(ob, common);
        out.output = render(rep, common.json);
    }
    catch (const Error& e) {
        out.exit_code = exit_code_for(e.category());
        out.error = fmt::format("error: {}: {}\n", to_string(e.kind()), e.what());
    }
    catch (const std::exception& e) {
        out.exit_code = exit_computation;
        out.error = fmt::format("error: {}\n", e.what());
    }
    return out;
}

}  // namespace moravak::cli
