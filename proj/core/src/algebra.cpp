#include "moravak/algebra.hpp"

#include "moravak/error.hpp"

#include <algorithm>
#include <cctype>
#include <fmt/core.h>
#include <numeric>

namespace moravak {

const char* to_string(GeneratorKind kind)
{
    switch (kind) {
    case GeneratorKind::polynomial: return "polynomial";
    case GeneratorKind::exterior: return "exterior";
    case GeneratorKind::laurent: return "laurent";
    }
    return "polynomial";
}

GeneratorKind generator_kind_from_string(std::string_view s)
{
    if (s == "polynomial" || s == "poly")
        return GeneratorKind::polynomial;
    if (s == "exterior" || s == "ext")
        return GeneratorKind::exterior;
    if (s == "laurent" || s == "laurent-unit" || s == "unit")
        return GeneratorKind::laurent;
    throw ParseError(fmt::format("unknown generator kind '{}'", s));
}

/****************************************************
 *                   Element
 ***************************************************/

Element Element::from_terms(std::vector<Monomial> terms)
{
    std::sort(terms.begin(), terms.end());
    Element e;
    for (std::size_t i = 0; i < terms.size();) {
        std::size_t j = i;
        while (j < terms.size() && terms[j] == terms[i])
            ++j;
        if ((j - i) % 2 == 1)
            e.terms_.push_back(std::move(terms[i]));
        i = j;
    }
    return e;
}

bool Element::contains(const Monomial& m) const
{
    return std::binary_search(terms_.begin(), terms_.end(), m);
}

Element& Element::operator+=(const Element& other)
{
    std::vector<Monomial> merged;
    merged.reserve(terms_.size() + other.terms_.size());
    std::set_symmetric_difference(terms_.begin(), terms_.end(), other.terms_.begin(),
                                  other.terms_.end(), std::back_inserter(merged));
    terms_ = std::move(merged);
    return *this;
}

/****************************************************
 *                   Algebra
 ***************************************************/

Algebra::Algebra(std::vector<Generator> generators, int degree_cap, std::vector<std::string> relations)
    : cap_(degree_cap)
{
    init_generators(std::move(generators));
    std::vector<Element> parsed;
    for (const auto& r : relations)
        parsed.push_back(parse(r));
    init_relations(std::move(parsed));
}

Algebra::Algebra(std::vector<Generator> generators, int degree_cap, std::vector<Element> relations)
    : cap_(degree_cap)
{
    init_generators(std::move(generators));
    for (const auto& r : relations)
        check(r);
    init_relations(std::move(relations));
}

void Algebra::init_generators(std::vector<Generator> generators)
{
    if (cap_ < 0)
        throw Error(ErrorKind::invalid_algebra, "degree cap must be non-negative");
    std::sort(generators.begin(), generators.end(),
              [](const Generator& a, const Generator& b) { return a.name < b.name; });
    for (std::size_t i = 0; i < generators.size(); ++i) {
        const auto& g = generators[i];
        if (g.name.empty() || !(std::isalpha(static_cast<unsigned char>(g.name[0])) || g.name[0] == '_'))
            throw Error(ErrorKind::invalid_algebra, fmt::format("invalid generator name '{}'", g.name));
        if (i > 0 && generators[i - 1].name == g.name)
            throw Error(ErrorKind::invalid_algebra, fmt::format("duplicate generator '{}'", g.name));
        if (g.degree < 0)
            throw Error(ErrorKind::invalid_algebra, fmt::format("generator '{}' has negative degree", g.name));
        if (g.truncation < 0)
            throw Error(ErrorKind::invalid_algebra, fmt::format("generator '{}' has negative truncation", g.name));
        if (g.kind == GeneratorKind::laurent) {
            if (laurent_)
                throw Error(ErrorKind::invalid_algebra, "at most one laurent-unit generator is supported");
            if (g.degree <= 0)
                throw Error(ErrorKind::invalid_algebra,
                            fmt::format("laurent unit '{}' needs positive degree", g.name));
            laurent_ = i;
            period_ = g.degree;
        }
        if (g.kind == GeneratorKind::polynomial && g.degree == 0 && g.truncation == 0)
            throw Error(ErrorKind::invalid_algebra,
                        fmt::format("degree-0 polynomial generator '{}' needs a truncation", g.name));
        by_name_.emplace(g.name, i);
    }
    generators_ = std::move(generators);
}

void Algebra::init_relations(std::vector<Element> relations)
{
    for (const auto& r : relations) {
        if (r.is_zero())
            continue;
        auto d = degree(r);
        if (!d)
            throw Error(ErrorKind::invalid_algebra, fmt::format("relation '{}' is not homogeneous", format(r)));
        if (max_filtration(r) > cap_)
            throw Error(ErrorKind::invalid_algebra,
                        fmt::format("relation '{}' exceeds the degree cap {}", format(r), cap_));
        relations_.push_back(r);
    }
    if (laurent_) {
        for (int r = 0; r < period_; ++r)
            degrees_.emplace(r, build_degree(r));
    }
    else {
        for (int d = 0; d <= cap_; ++d)
            degrees_.emplace(d, build_degree(d));
    }
}

std::optional<std::size_t> Algebra::find(std::string_view name) const
{
    auto it = by_name_.find(name);
    if (it == by_name_.end())
        return std::nullopt;
    return it->second;
}

std::size_t Algebra::index_of(std::string_view name) const
{
    auto i = find(name);
    if (!i)
        throw Error(ErrorKind::ill_formed_element, fmt::format("unknown generator '{}'", name));
    return *i;
}

Element Algebra::one() const
{
    return Element(Monomial(generators_.size(), 0));
}

Element Algebra::generator(std::string_view name) const
{
    Monomial m(generators_.size(), 0);
    m[index_of(name)] = 1;
    return normal_form(Element(std::move(m)));
}

Element Algebra::monomial(Monomial m) const
{
    Element e(std::move(m));
    check(e);
    if (vanishes(e.terms().front()))
        return {};
    return e;
}

int Algebra::degree(const Monomial& m) const
{
    int d = 0;
    for (std::size_t i = 0; i < m.size(); ++i)
        d += m[i] * generators_[i].degree;
    return d;
}

int Algebra::filtration(const Monomial& m) const
{
    int d = degree(m);
    if (laurent_)
        d -= m[*laurent_] * period_;
    return d;
}

std::optional<int> Algebra::degree(const Element& e) const
{
    if (e.is_zero())
        return std::nullopt;
    int d = degree(e.terms().front());
    for (const auto& m : e.terms())
        if (degree(m) != d)
            return std::nullopt;
    return d;
}

std::vector<int> Algebra::degrees(const Element& e) const
{
    std::vector<int> ds;
    for (const auto& m : e.terms())
        ds.push_back(degree(m));
    std::sort(ds.begin(), ds.end());
    ds.erase(std::unique(ds.begin(), ds.end()), ds.end());
    return ds;
}

Element Algebra::component(const Element& e, int d) const
{
    std::vector<Monomial> terms;
    for (const auto& m : e.terms())
        if (degree(m) == d)
            terms.push_back(m);
    return Element::from_terms(std::move(terms));
}

int Algebra::max_filtration(const Element& e) const
{
    int f = -1;
    for (const auto& m : e.terms())
        f = std::max(f, filtration(m));
    return f;
}

void Algebra::check(const Element& e) const
{
    for (const auto& m : e.terms()) {
        if (m.size() != generators_.size())
            throw Error(ErrorKind::ill_formed_element, "monomial does not match the algebra's generators");
        for (std::size_t i = 0; i < m.size(); ++i)
            if (m[i] < 0 && generators_[i].kind != GeneratorKind::laurent)
                throw Error(ErrorKind::ill_formed_element,
                            fmt::format("negative exponent on non-unit generator '{}'", generators_[i].name));
    }
}

bool Algebra::vanishes(const Monomial& m) const
{
    for (std::size_t i = 0; i < m.size(); ++i) {
        const auto& g = generators_[i];
        if (g.kind == GeneratorKind::exterior && m[i] >= 2)
            return true;
        if (g.truncation > 0 && m[i] >= g.truncation)
            return true;
    }
    return false;
}

bool Algebra::in_window(const Monomial& m) const
{
    if (vanishes(m))
        return false;
    int f = filtration(m);
    return f >= 0 && f <= cap_;
}

Element Algebra::raw_multiply(const Element& a, const Element& b) const
{
    std::vector<Monomial> terms;
    terms.reserve(a.size() * b.size());
    for (const auto& x : a.terms()) {
        for (const auto& y : b.terms()) {
            Monomial m(x.size());
            for (std::size_t i = 0; i < x.size(); ++i)
                m[i] = x[i] + y[i];
            if (in_window(m))
                terms.push_back(std::move(m));
        }
    }
    return Element::from_terms(std::move(terms));
}

Element Algebra::multiply(const Element& a, const Element& b) const
{
    check(a);
    check(b);
    return normal_form(raw_multiply(a, b));
}

Element Algebra::power(const Element& a, int k) const
{
    Element r = one();
    for (int i = 0; i < k; ++i)
        r = multiply(r, a);
    return r;
}

std::vector<Monomial> Algebra::monomials_of_filtration(int f) const
{
    std::vector<Monomial> out;
    if (f < 0)
        return out;
    Monomial m(generators_.size(), 0);
    // depth-first over non-unit generators
    auto rec = [&](auto&& self, std::size_t i, int remaining) -> void {
        if (i == generators_.size()) {
            if (remaining == 0)
                out.push_back(m);
            return;
        }
        const auto& g = generators_[i];
        if (g.kind == GeneratorKind::laurent) {
            self(self, i + 1, remaining);
            return;
        }
        int max_exp = g.kind == GeneratorKind::exterior ? 1 : (g.degree > 0 ? remaining / g.degree : g.truncation - 1);
        if (g.truncation > 0)
            max_exp = std::min(max_exp, g.truncation - 1);
        for (int e = 0; e <= max_exp && e * g.degree <= remaining; ++e) {
            m[i] = e;
            self(self, i + 1, remaining - e * g.degree);
        }
        m[i] = 0;
    };
    rec(rec, 0, f);
    return out;
}

Algebra::DegreeData Algebra::build_degree(int window_degree) const
{
    DegreeData dd;
    if (laurent_) {
        for (int f = 0; f <= cap_; ++f) {
            if (((window_degree - f) % period_ + period_) % period_ != 0)
                continue;
            for (auto m : monomials_of_filtration(f)) {
                m[*laurent_] = (window_degree - f) / period_;
                dd.monomials.push_back(std::move(m));
            }
        }
    }
    else {
        dd.monomials = monomials_of_filtration(window_degree);
    }
    std::sort(dd.monomials.begin(), dd.monomials.end());
    for (std::size_t i = 0; i < dd.monomials.size(); ++i)
        dd.position.emplace(dd.monomials[i], i);

    dd.relations = Echelon(dd.monomials.size(), PivotRule::highest);
    for (const auto& rel : relations_) {
        int rd = degree(rel.terms().front());
        std::vector<Monomial> multipliers;
        if (laurent_) {
            for (int f = 0; f <= cap_; ++f) {
                int rest = window_degree - rd - f;
                if ((rest % period_ + period_) % period_ != 0)
                    continue;
                for (auto m : monomials_of_filtration(f)) {
                    m[*laurent_] = rest / period_;
                    multipliers.push_back(std::move(m));
                }
            }
        }
        else {
            multipliers = monomials_of_filtration(window_degree - rd);
        }
        for (const auto& mu : multipliers) {
            BitVector row(dd.monomials.size());
            bool inside = true;
            for (const auto& t : rel.terms()) {
                Monomial m(t.size());
                for (std::size_t i = 0; i < t.size(); ++i)
                    m[i] = t[i] + mu[i];
                if (vanishes(m))
                    continue;
                auto it = dd.position.find(m);
                if (it == dd.position.end()) {
                    inside = false;
                    break;
                }
                row.flip(it->second);
            }
            if (inside)
                dd.relations.insert(std::move(row));
        }
    }
    dd.coordinate.assign(dd.monomials.size(), -1);
    for (std::size_t i = 0; i < dd.monomials.size(); ++i) {
        if (!dd.relations.is_pivot(i)) {
            dd.coordinate[i] = static_cast<int>(dd.basis_positions.size());
            dd.basis_positions.push_back(i);
        }
    }
    return dd;
}

std::pair<int, int> Algebra::locate(int d) const
{
    if (laurent_) {
        int r = ((d % period_) + period_) % period_;
        return {r, (d - r) / period_};
    }
    if (d > cap_)
        throw Error(ErrorKind::degree_cap_exceeded, fmt::format("degree {} exceeds the cap {}", d, cap_));
    return {d, 0};
}

const Algebra::DegreeData& Algebra::data(int d) const
{
    static const DegreeData empty{};
    auto [w, shift] = locate(d);
    auto it = degrees_.find(w);
    if (it == degrees_.end())
        return empty;
    return it->second;
}

std::vector<Monomial> Algebra::basis(int d) const
{
    auto [w, shift] = locate(d);
    const auto& dd = data(d);
    std::vector<Monomial> out;
    for (auto p : dd.basis_positions) {
        Monomial m = dd.monomials[p];
        if (laurent_)
            m[*laurent_] += shift;
        out.push_back(std::move(m));
    }
    return out;
}

std::size_t Algebra::dim(int d) const
{
    return data(d).basis_positions.size();
}

BitVector Algebra::express_component(const Element& homogeneous, int d) const
{
    auto [w, shift] = locate(d);
    const auto& dd = data(d);
    BitVector v(dd.monomials.size());
    for (const auto& t : homogeneous.terms()) {
        if (vanishes(t))
            continue;
        Monomial m = t;
        if (laurent_)
            m[*laurent_] -= shift;
        auto it = dd.position.find(m);
        if (it == dd.position.end())
            throw Error(ErrorKind::degree_cap_exceeded,
                        fmt::format("monomial {} lies outside the degree window (cap {})", format(t), cap_));
        v.flip(it->second);
    }
    dd.relations.reduce(v);
    BitVector coords(dd.basis_positions.size());
    for (std::size_t p : v.support())
        coords.set(static_cast<std::size_t>(dd.coordinate[p]));
    return coords;
}

BitVector Algebra::express(const Element& e, int d) const
{
    check(e);
    return express_component(component(e, d), d);
}

std::map<int, BitVector> Algebra::express(const Element& e) const
{
    check(e);
    std::map<int, BitVector> out;
    for (int d : degrees(e)) {
        auto v = express_component(component(e, d), d);
        if (v.any())
            out.emplace(d, std::move(v));
    }
    return out;
}

Element Algebra::from_coordinates(int d, const BitVector& coords) const
{
    auto b = basis(d);
    std::vector<Monomial> terms;
    for (std::size_t i : coords.support())
        terms.push_back(b.at(i));
    return Element::from_terms(std::move(terms));
}

Element Algebra::normal_form(const Element& e) const
{
    check(e);
    Element out;
    for (int d : degrees(e)) {
        if (!laurent_ && (d < 0 || d > cap_))
            continue;
        out += from_coordinates(d, express_component(component(e, d), d));
    }
    return out;
}

std::vector<int> Algebra::window_degrees() const
{
    std::vector<int> ds(static_cast<std::size_t>(cap_ + 1));
    std::iota(ds.begin(), ds.end(), 0);
    return ds;
}

/****************************************************
 *                   Parsing and printing
 ***************************************************/

namespace {

class ExprParser {
public:
    ExprParser(const Algebra& algebra, std::string_view text) : alg_(algebra), s_(text) {}

    Element parse()
    {
        Element result;
        skip_ws();
        if (pos_ == s_.size())
            fail("empty expression");
        result += term();
        skip_ws();
        while (pos_ < s_.size()) {
            char c = s_[pos_];
            if (c != '+' && c != '-')
                fail(fmt::format("unexpected '{}'", c));
            ++pos_;
            result += term();
            skip_ws();
        }
        return result;
    }

private:
    [[noreturn]] void fail(const std::string& what) const
    {
        throw ParseError(fmt::format("{} at column {} in '{}'", what, pos_ + 1, s_), 0,
                         static_cast<int>(pos_ + 1));
    }

    void skip_ws()
    {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])))
            ++pos_;
    }

    long integer()
    {
        bool neg = false;
        if (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+')) {
            neg = s_[pos_] == '-';
            ++pos_;
        }
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
            ++pos_;
        if (start == pos_)
            fail("expected an integer");
        long v = std::stol(std::string(s_.substr(start, pos_ - start)));
        return neg ? -v : v;
    }

    Element term()
    {
        Monomial m(alg_.num_generators(), 0);
        bool odd = true;
        bool any = false;
        while (true) {
            skip_ws();
            if (pos_ >= s_.size())
                break;
            char c = s_[pos_];
            if (std::isdigit(static_cast<unsigned char>(c))) {
                odd = odd && (integer() % 2 != 0);
            }
            else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
                std::size_t start = pos_;
                while (pos_ < s_.size() &&
                       (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
                    ++pos_;
                auto name = s_.substr(start, pos_ - start);
                auto idx = alg_.find(name);
                if (!idx)
                    throw Error(ErrorKind::ill_formed_element,
                                fmt::format("unknown generator '{}' in '{}'", name, s_));
                long e = 1;
                skip_ws();
                if (pos_ < s_.size() && s_[pos_] == '^') {
                    ++pos_;
                    skip_ws();
                    e = integer();
                }
                m[*idx] += static_cast<int>(e);
            }
            else {
                break;
            }
            any = true;
            skip_ws();
            if (pos_ < s_.size() && s_[pos_] == '*')
                ++pos_;
        }
        if (!any)
            fail("expected a term");
        if (!odd)
            return {};
        Element e(std::move(m));
        alg_.check(e);
        return e;
    }

    const Algebra& alg_;
    std::string_view s_;
    std::size_t pos_ = 0;
};

}  // namespace

Element Algebra::parse(std::string_view text) const
{
    Element raw = ExprParser(*this, text).parse();
    std::vector<Monomial> terms;
    for (const auto& m : raw.terms())
        if (!vanishes(m))
            terms.push_back(m);
    return Element::from_terms(std::move(terms));
}

std::string Algebra::format(const Monomial& m) const
{
    std::string out;
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (m[i] == 0)
            continue;
        if (!out.empty())
            out += '*';
        out += generators_[i].name;
        if (m[i] != 1)
            out += fmt::format("^{}", m[i]);
    }
    return out.empty() ? "1" : out;
}

std::string Algebra::format(const Element& e) const
{
    if (e.is_zero())
        return "0";
    std::string out;
    for (const auto& m : e.terms()) {
        if (!out.empty())
            out += " + ";
        out += format(m);
    }
    return out;
}

/****************************************************
 *                   AlgebraMap
 ***************************************************/

AlgebraMap::AlgebraMap(std::shared_ptr<const Algebra> source, std::shared_ptr<const Algebra> target,
                       std::vector<Element> images)
    : source_(std::move(source)), target_(std::move(target)), images_(std::move(images))
{
    if (images_.size() != source_->num_generators())
        throw Error(ErrorKind::invalid_pair, "algebra map needs one image per source generator");
    for (std::size_t i = 0; i < images_.size(); ++i) {
        const auto& g = source_->generators()[i];
        if (g.kind == GeneratorKind::laurent)
            throw Error(ErrorKind::invalid_pair, "algebra maps out of laurent algebras are not supported");
        target_->check(images_[i]);
        images_[i] = target_->normal_form(images_[i]);
        auto d = target_->degree(images_[i]);
        if (d && *d != g.degree)
            throw Error(ErrorKind::invalid_pair,
                        fmt::format("image of '{}' has degree {}, expected {}", g.name, *d, g.degree));
        if (g.kind == GeneratorKind::exterior && !target_->multiply(images_[i], images_[i]).is_zero())
            throw Error(ErrorKind::invalid_pair,
                        fmt::format("image of exterior generator '{}' does not square to zero", g.name));
    }
    for (const auto& r : source_->relations()) {
        if (!apply(r).is_zero())
            throw Error(ErrorKind::invalid_pair,
                        fmt::format("relation '{}' does not map to zero", source_->format(r)));
    }
}

AlgebraMap AlgebraMap::identity(std::shared_ptr<const Algebra> algebra)
{
    std::vector<Element> images;
    for (const auto& g : algebra->generators())
        images.push_back(algebra->generator(g.name));
    return AlgebraMap(algebra, algebra, std::move(images));
}

AlgebraMap AlgebraMap::to_zero(std::shared_ptr<const Algebra> source)
{
    AlgebraMap m;
    m.source_ = source;
    m.target_ = source;
    m.images_.assign(source->num_generators(), Element{});
    m.zero_target_ = true;
    return m;
}

Element AlgebraMap::apply(const Element& e) const
{
    if (zero_target_)
        return {};
    Element out;
    for (const auto& m : e.terms()) {
        Element term = target_->one();
        for (std::size_t i = 0; i < m.size(); ++i)
            for (int k = 0; k < m[i]; ++k)
                term = target_->multiply(term, images_[i]);
        out += term;
    }
    return target_->normal_form(out);
}

LinearMap AlgebraMap::matrix(int d) const
{
    auto src = source_->basis(d);
    if (zero_target_)
        return LinearMap(src.size(), 0);
    std::size_t tdim = d <= target_->degree_cap() ? target_->dim(d) : 0;
    LinearMap m(src.size(), tdim);
    for (std::size_t j = 0; j < src.size(); ++j)
        if (tdim > 0)
            m.column(j) = target_->express(apply(Element(src[j])), d);
    return m;
}

}  // namespace moravak
