// Acceptance suite: one PASS/FAIL line per criterion.

#include "moravak/cli/space_file.hpp"
#include "moravak/error.hpp"
#include "moravak/fgl.hpp"
#include "rbk_oracle.hpp"
#include "spaces.hpp"
#include "testing.hpp"

#include <fmt/core.h>

#include <algorithm>
#include <array>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <set>

using namespace moravak;
using namespace moravak::testing;

#ifndef MORAVAK_CLI_PATH
#define MORAVAK_CLI_PATH "moravak"
#endif

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
    int failures = 0;

    void expect(bool ok, const std::string& what)
    {
        if (ok)
            return;
        if (failures++ < 3)
            detail += (detail.empty() ? "" : "; ") + what;
        pass = false;
    }
};

struct Criterion {
    int id;
    const char* name;
    std::function<Outcome()> run;
};

// Sq^i(t^m) = C(m, i) t^{m+i}; C(m, i) is odd iff the bits of i are a subset of those of m.
std::set<int> binomial_sq(int i, const std::set<int>& exponents)
{
    std::set<int> out;
    for (int m : exponents)
        if (i <= m && (i & m) == i && !out.erase(m + i))
            out.insert(m + i);
    return out;
}

std::set<int> binomial_q(int j, const std::set<int>& exponents)
{
    if (j == 0)
        return binomial_sq(1, exponents);
    int p = 1 << j;
    auto a = binomial_sq(p, binomial_q(j - 1, exponents));
    for (int m : binomial_q(j - 1, binomial_sq(p, exponents)))
        if (!a.erase(m))
            a.insert(m);
    return a;
}

Outcome milnor_oracle()
{
    Outcome o;
    auto rp = rp_space(40);
    const auto& a = *rp.algebra;
    auto t = a.parse("t");
    for (int j = 0; j <= 3; ++j) {
        auto q = milnor_q(j, t, rp.action);
        std::set<int> recursion;
        for (const auto& m : q.terms())
            recursion.insert(m[0]);
        o.expect(recursion == binomial_q(j, {1}), fmt::format("Q{}(t) differs from the binomial expansion", j));
        o.expect(q == a.monomial({1 << (j + 1)}), fmt::format("Q{}(t) = {}", j, a.format(q)));
    }
    o.detail = o.pass ? "Q_j(t) = t^(2^(j+1)) for j = 0..3 by both routes" : o.detail;
    return o;
}

Outcome derivation()
{
    Outcome o;
    auto gen = rng(101);
    std::vector<SpaceModel> spaces{bv2_space(16), kz3_space(), synthetic12_space(), m10_space(), rp_space(24)};
    int pairs = 0;
    for (const auto& space : spaces) {
        const auto& a = *space.algebra;
        int cap = a.degree_cap();
        int here = 0;
        for (int rep = 0; rep < 2000 && here < 60; ++rep) {
            int j = rep % 3;
            int shift = (1 << (j + 1)) - 1;
            if (shift > cap)
                continue;
            int dx = std::uniform_int_distribution<int>(0, cap - shift)(gen);
            int dy = std::uniform_int_distribution<int>(0, cap - shift - dx)(gen);
            auto x = random_element(a, dx, gen);
            auto y = random_element(a, dy, gen);
            if (x.is_zero() || y.is_zero())
                continue;
            auto lhs = milnor_q(j, a.multiply(x, y), space.action);
            auto rhs = a.multiply(milnor_q(j, x, space.action), y) + a.multiply(x, milnor_q(j, y, space.action));
            o.expect(a.equal(lhs, rhs), fmt::format("Q{} on ({}, {})", j, a.format(x), a.format(y)));
            ++here;
        }
        pairs += here;
    }
    o.expect(pairs >= 200, fmt::format("only {} pairs", pairs));
    if (o.pass)
        o.detail = fmt::format("{} pairs in {} algebras", pairs, spaces.size());
    return o;
}

Outcome twist_group()
{
    Outcome o;
    const int m = 8;
    const std::uint64_t size = std::uint64_t{1} << m;
    std::vector<TwistElement> elements;
    std::set<std::vector<int>> seen;
    for (std::uint64_t d = 0; d < size; ++d) {
        auto f = decode({d, m});
        o.expect(encode(f).value == d, fmt::format("encode(decode({})) != {}", d, d));
        seen.insert(f.exponents());
        // (1 + y)^d has y^i exactly when the bits of i lie in those of d.
        std::vector<std::size_t> support;
        for (std::size_t i = 0; i < size; ++i)
            if ((i & d) == i)
                support.push_back(i);
        o.expect(f.series().support() == support, fmt::format("series of {} is not (1+y)^{}", d, d));
        elements.push_back(f);
    }
    o.expect(seen.size() == size, "decode is not injective");
    for (std::uint64_t a = 0; a < size; ++a)
        for (std::uint64_t b = 0; b < size; ++b)
            o.expect(encode(elements[a] * elements[b]).value == (a + b) % size,
                     fmt::format("encode({} * {})", a, b));
    auto u = TwistElement::universal(m);
    for (int k = 0; k < m; ++k) {
        auto power = TwistElement::from_exponents({}, m);
        for (std::uint64_t i = 0; i < (std::uint64_t{1} << k); ++i)
            power = power * u;
        std::vector<std::size_t> expected{0, std::size_t{1} << k};
        o.expect(power.series().support() == expected, fmt::format("(1+y)^(2^{})", k));
    }
    if (o.pass)
        o.detail = "256 x 256 products; (1+y)^(2^k) = 1 + y^(2^k) for k < 8";
    return o;
}

std::vector<int> random_degrees(std::size_t rank, int period, std::mt19937_64& gen)
{
    std::uniform_int_distribution<int> res(0, 1), shift(-2, 2);
    std::vector<int> out;
    for (std::size_t i = 0; i < rank; ++i)
        out.push_back(2 * res(gen) + shift(gen) * period);
    return out;
}

Outcome flatness()
{
    Outcome o;
    auto gen = rng(104);
    int modules = 0;
    for (int rep = 0; rep < 60; ++rep) {
        int n = 1 + rep % 3;
        int k = rep % 3;
        int period = vn_degree(n);
        std::uniform_int_distribution<std::size_t> rank(1, 4);
        DenseModule dm{n, k, random_degrees(rank(gen), period, gen), {}};
        auto beta = random_commuting_idempotents(dm.degrees, period, 1, gen)[0];
        dm.entries = entries_of(beta, dm.degrees, n, k);
        auto p = RbkModule::from_entries(n, k, dm.degrees, dm.entries);
        for (auto which : {StandardModule::M, StandardModule::N}) {
            bool is_n = which == StandardModule::N;
            for (int i = 1; i <= 4; ++i)
                o.expect(tor(p, which, i).is_zero(), fmt::format("Tor_{} nonzero on module {}", i, rep));
            auto t0 = tor(p, which, 0);
            for (int res = 0; res < period; ++res)
                o.expect(t0.rank_in(res) == dense_tor(dm, is_n, 0, res + period),
                         fmt::format("Tor_0 rank at residue {} on module {}", res, rep));
        }
        ++modules;
    }
    o.expect(modules >= 50, "too few modules");
    if (o.pass)
        o.detail = fmt::format("{} random modules of rank <= 4", modules);
    return o;
}

TensorModule random_tensor_module(int n, int factors, std::mt19937_64& gen)
{
    int period = vn_degree(n);
    std::uniform_int_distribution<std::size_t> rank(1, 4);
    auto degrees = random_degrees(rank(gen), period, gen);
    auto betas = random_commuting_idempotents(degrees, period, factors, gen);
    std::vector<std::vector<std::vector<std::string>>> entries;
    for (int k = 0; k < factors; ++k)
        entries.push_back(entries_of(betas[k], degrees, n, k));
    return TensorModule::from_entries(n, degrees, entries);
}

Outcome khorami()
{
    Outcome o;
    for (int n = 1; n <= 3; ++n) {
        auto point = TensorModule::from_factor(standard_module(StandardModule::M, n, 0));
        o.expect(khorami_quotient(point).is_zero(), fmt::format("point quotient nonzero at n = {}", n));
    }
    std::vector<TensorModule> modules;
    for (int n = 1; n <= 3; ++n)
        for (auto which : {StandardModule::M, StandardModule::N, StandardModule::R})
            for (int k = 0; k < 3; ++k)
                modules.push_back(TensorModule::from_factor(standard_module(which, n, k)));
    modules.push_back(cli::tensor_module(cli::load_module(fixture("r0.module")), TensorModule::default_factors));
    auto gen = rng(105);
    for (int rep = 0; rep < 40; ++rep)
        modules.push_back(random_tensor_module(1 + rep % 3, 1 + rep % 4, gen));
    for (const auto& p : modules) {
        auto hom = to_algebra_hom(TwistElement::universal(), p.n(), p.factors());
        o.expect(bar_e2(p, hom, 2)[0] == khorami_quotient(p), "bar_e2 degree 0 differs from the quotient");
    }
    if (o.pass)
        o.detail = fmt::format("point module is 0 for n = 1..3; {} modules agree with bar_e2", modules.size());
    return o;
}

Outcome s3_golden()
{
    Outcome o;
    auto doc = cli::load_space(fixture("s3.space"));
    const auto& space = doc.space;
    auto e2 = e2_page(space, 1);
    auto h = space.algebra->parse("h");
    auto e4 = turn_page(first_differential(e2, space, {h, true}));
    o.expect(e4.index() == 4, "wrong page index");
    for (const auto& col : e4.columns())
        o.expect(e4.rank(col.p, 0) == 0u, fmt::format("E4 rank at p = {}", col.p));
    auto plain = turn_page(first_differential(e2, space, {Element{}, true}));
    o.expect(plain.columns() == e2.columns(), "zero twist changes the page");
    for (int p = 0; p <= e2.top(); ++p)
        for (int q : {-4, 0, 2, 6})
            o.expect(plain.rank(p, q) == e2.rank(p, q), fmt::format("E4 != E2 at ({}, {})", p, q));
    if (o.pass)
        o.detail = "fundamental twist kills every column; zero twist leaves E4 = E2";
    return o;
}

Outcome d7_formula()
{
    Outcome o;
    auto space = synthetic12_space();
    const auto& a = *space.algebra;
    auto h = a.parse("h");
    auto page = first_differential(e2_page(space, 2), space, {h, true});
    auto untwisted = first_differential(e2_page(space, 2), space, {Element{}, true});
    Element expected = space.action.sq(3, h) + space.action.sq(2, space.action.sq(1, h));
    for (int q : {-6, 0, 6, 12, 18}) {
        Element image;
        for (auto i : page.differential(0, q).apply(BitVector::unit(1, 0)).support())
            image += page.column(7).basis[i];
        o.expect(image == expected, fmt::format("d7(v2^{}) = {}", q / 6, a.format(image)));
    }
    auto image_of = [&](const Page& pg, int p, const Element& x) {
        Element out;
        for (auto i : pg.differential(p).apply(pg.coordinates(p, x)).support())
            out += pg.column(p + 7).basis[i];
        return out;
    };
    auto gen = rng(107);
    std::uniform_int_distribution<int> deg(0, space.top_degree);
    int pairs = 0;
    for (int rep = 0; rep < 4000 && pairs < 120; ++rep) {
        int p1 = deg(gen), p2 = deg(gen);
        if (p1 + p2 + 7 > space.top_degree)
            continue;
        auto x = random_element(a, p1, gen);
        auto y = random_element(a, p2, gen);
        auto lhs = image_of(page, p1 + p2, a.multiply(x, y));
        auto rhs = a.multiply(image_of(untwisted, p1, x), y) + a.multiply(x, image_of(page, p2, y));
        o.expect(a.equal(lhs, rhs), fmt::format("module property on ({}, {})", a.format(x), a.format(y)));
        ++pairs;
    }
    o.expect(pairs >= 100, "too few pairs");
    struct Window {
        SpaceModel space;
        int n;
        const char* h;
    };
    std::vector<Window> windows{{synthetic12_space(), 2, "h"}, {synthetic12_space(), 1, "0"}, {kz3_space(), 1, "i"},
                                {rp_space(24), 1, "0"},       {bv2_space(14), 1, "0"},       {s3_space(), 1, "h"},
                                {cp_space(16), 1, "0"}};
    int squares = 0;
    for (const auto& w : windows) {
        auto pg = first_differential(e2_page(w.space, w.n), w.space, {w.space.algebra->parse(w.h), true});
        int r = first_length(w.n);
        for (int p = 0; p + 2 * r <= pg.top(); ++p) {
            o.expect(pg.differential(p + r).compose(pg.differential(p)).is_zero(), "d^2 != 0");
            ++squares;
        }
    }
    if (o.pass)
        o.detail = fmt::format("d7(1) = Sq3 h + Sq2 Sq1 h; {} module pairs; d^2 = 0 at {} columns", pairs, squares);
    return o;
}

Outcome fgl_checks()
{
    Outcome o;
    auto gm = FGL::multiplicative();
    auto theta = solve_theta(gm, 6);
    o.expect(theta.theta == std::vector<std::uint64_t>{1, 0, 0, 0, 0, 0}, "theta(G_m) is not (1, 0, ...)");
    auto h = height(gm);
    o.expect(h.value == 1 && !h.lower_bound, "height(G_m) != 1");
    PowerSeries one_plus_x(Modulus(1), gm.truncation());
    one_plus_x.set(0, 1);
    one_plus_x.set(1, 1);
    o.expect(grouplike_check(one_plus_x, gm), "1 + x is not grouplike");
    o.expect(gm.coefficients().substitute_into(one_plus_x).format() == "1 + y + z + y*z",
             "alpha(F(y, z)) != 1 + y + z + y*z");
    o.expect(Series2::outer(one_plus_x, one_plus_x).format() == "1 + y + z + y*z", "alpha (x) alpha");
    auto quadratic = one_plus_x;
    quadratic.set(2, 1);
    o.expect(!grouplike_check(quadratic, gm), "1 + x + x^2 is grouplike");
    if (o.pass)
        o.detail = "theta = (1, 0, ...), height 1, 1 + x grouplike, 1 + x + x^2 not";
    return o;
}

// Coefficient of w_{i-t} w_{j+t} in Sq^i w_j: C(j - i + t - 1, t) mod 2, via Lucas.
std::string wu_oracle(int i, int j, const std::function<bool(int)>& vanishes)
{
    std::vector<std::string> terms;
    for (int t = 0; t <= i; ++t) {
        long top = j - i + t - 1;
        bool odd = t == 0 || (top >= 0 && (top & t) == t);
        if (!odd || vanishes(i - t) || vanishes(j + t))
            continue;
        terms.push_back(i - t == 0 ? fmt::format("w{}", j + t) : fmt::format("w{}*w{}", i - t, j + t));
    }
    std::string out;
    for (std::size_t k = 0; k < terms.size(); ++k)
        out += (k ? " + " : "") + terms[k];
    return out.empty() ? "0" : out;
}

Outcome wu_golden()
{
    Outcome o;
    const std::string quoted = "w7*w8 + w6*w9 + w5*w10 + w4*w11 + w15";
    auto spin = format_wu(wu_expansion(7, 8, {false, true, false}));
    o.expect(spin == quoted, "spin expansion: " + spin);
    o.expect(spin == wu_oracle(7, 8, [](int k) { return k >= 1 && k <= 3; }), "binomial oracle disagrees");
    auto reduced = format_wu(wu_expansion(7, 8, {true, true, true}));
    o.expect(reduced == "w15", "reduced: " + reduced);
    // The string manifold fixture: w4 = 0 and spin, so w5, w6, w7 vanish as well.
    auto doc = cli::load_space(fixture("string10.manifold"));
    const auto& m = *doc.manifold;
    o.expect(format_wu(wu_expansion(7, 8, {m.oriented || m.spin, m.spin, m.w4_zero()})) == "w15",
             "string fixture does not reduce to w15");
    for (int k : {5, 6, 7})
        o.expect(m.w(k).is_zero(), fmt::format("w{} does not vanish", k));
    if (o.pass)
        o.detail = "Sq7 w8 = " + quoted + "; reduces to w15";
    return o;
}

Outcome physics()
{
    Outcome o;
    {
        auto m = synthetic12_manifold("0");
        auto r = twisted_string_check(m, {Element{}, true});
        o.expect(r.verdict == Verdict::oriented, "h = 0 with W7 = 0");
    }
    {
        auto m = synthetic12_manifold("g6");
        const auto& a = *m.space.algebra;
        auto h = a.parse("h");
        // Both terms equal g7 and cancel.
        o.expect(integral_sw(m, 7).representative == a.parse("g7"), "w7 shadow is not g7");
        o.expect(m.space.action.sq(3, h) == a.parse("g7"), "Sq3 h is not g7");
        auto r = twisted_string_check(m, {h, true});
        o.expect(r.verdict == Verdict::oriented && r.obstruction.is_zero(), "cancellation");
    }
    {
        auto m = m10_manifold(true);
        auto r = twisted_string_check(m, {m.lambda, true});
        o.expect(r.verdict == Verdict::oriented, "string manifold with h = lambda");
    }
    {
        auto m = m10_manifold();
        auto r = heterotic_check(m, m.lambda, Element{});
        o.expect(r.hypotheses_hold, "hypotheses fail on the spin 10-manifold");
        o.expect(r.obstruction.obstruction == integral_sw(m, 7).representative, "a = lambda, b = 0 is not W7");
        o.expect(r.obstruction.pre_bockstein == m.w(6), "pre-Bockstein is not w6");
        auto k = synthetic12_manifold("g6");
        auto bad = heterotic_check(k, k.lambda, Element{});
        o.expect(!bad.hypotheses_hold, "Sq3 a != 0 is not reported");
        o.expect(std::find(bad.failed_hypotheses.begin(), bad.failed_hypotheses.end(), "Sq3 a = 0") !=
                     bad.failed_hypotheses.end(),
                 "missing 'Sq3 a = 0' failure");
    }
    {
        auto doc = cli::load_space(fixture("m10.manifold"));
        const auto& m = *doc.manifold;
        const auto& alg = *m.space.algebra;
        const auto& f = *doc.index;
        std::size_t r = alg.dim(4);
        int checked = 0;
        for (std::size_t bits = 0; bits < (std::size_t{1} << r); ++bits) {
            BitVector v(r);
            for (std::size_t i = 0; i < r; ++i)
                v.set(i, (bits >> i) & 1u);
            if (f.at(v))
                continue;
            auto rep = phase_invariance_check(m, f, m.lambda, alg.from_coordinates(4, v));
            o.expect(rep.invariant, fmt::format("a = lambda not invariant for b = {}", bits));
            ++checked;
        }
        o.expect(checked > 0, "no admissible b");
    }
    if (o.pass)
        o.detail = "three String examples oriented; heterotic W7 structure and failures; a = lambda invariant";
    return o;
}

std::string capture(const std::string& command)
{
    std::string out;
    FILE* pipe = popen(command.c_str(), "r");
    if (!pipe)
        throw std::runtime_error("cannot run " + command);
    std::array<char, 4096> buf;
    std::size_t got;
    while ((got = std::fread(buf.data(), 1, buf.size(), pipe)) > 0)
        out.append(buf.data(), got);
    int status = pclose(pipe);
    return out + fmt::format("\n[status {}]", status);
}

Outcome determinism()
{
    Outcome o;
    namespace fs = std::filesystem;
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(fixture("")))
        if (entry.is_regular_file())
            files.push_back(entry.path());
    std::sort(files.begin(), files.end());
    const std::string cli = MORAVAK_CLI_PATH;
    int runs = 0;
    for (const auto& file : files) {
        auto name = file.filename().string();
        auto path = "'" + file.string() + "'";
        std::vector<std::string> commands;
        if (name.find(".module") != std::string::npos) {
            commands.push_back("tor --module " + path);
            commands.push_back("khorami --module " + path);
        }
        else if (name.ends_with(".manifold")) {
            commands.push_back("obstruct --space " + path);
            commands.push_back("ahss --space " + path + " --n 2 --twist h");
        }
        else
            commands.push_back("ahss --space " + path + " --n 1");
        for (const auto& c : commands) {
            auto full = "'" + cli + "' " + c + " 2>&1";
            auto first = capture(full);
            auto second = capture(full);
            o.expect(first == second, "reports differ for " + c);
            o.expect(!first.empty(), "empty report for " + c);
            ++runs;
        }
    }
    o.expect(files.size() >= 10, "fixture directory not found");
    if (o.pass)
        o.detail = fmt::format("{} commands over {} fixtures", runs, files.size());
    return o;
}

}  // namespace

int main()
{
    std::vector<Criterion> criteria{
        {1, "Milnor oracle", milnor_oracle},
        {2, "Derivation property", derivation},
        {3, "Twist group isomorphism", twist_group},
        {4, "Flatness", flatness},
        {5, "Khorami universal case", khorami},
        {6, "tAHSS golden case", s3_golden},
        {7, "d7 formula", d7_formula},
        {8, "FGL", fgl_checks},
        {9, "Wu golden case", wu_golden},
        {10, "Physics verdicts", physics},
        {11, "Determinism", determinism},
    };
    int failed = 0;
    for (const auto& c : criteria) {
        Outcome o;
        try {
            o = c.run();
        }
        catch (const std::exception& e) {
            o.pass = false;
            o.detail = std::string("exception: ") + e.what();
        }
        if (!o.pass)
            ++failed;
        std::printf("%s %2d %s: %s\n", o.pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str());
    }
    std::printf("%zu/%zu criteria passed\n", criteria.size() - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
