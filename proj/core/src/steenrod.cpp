#include "moravak/steenrod.hpp"

#include "moravak/error.hpp"

#include <algorithm>
#include <fmt/core.h>

namespace moravak {

SteenrodAction::SteenrodAction(std::shared_ptr<const Algebra> algebra, const SqTable& table, Status status)
    : algebra_(std::move(algebra)), table_(table), status_(status)
{
    const auto& alg = *algebra_;
    for (const auto& [name, entries] : table_) {
        if (!alg.find(name))
            throw Error(ErrorKind::invalid_action, fmt::format("Sq table names unknown generator '{}'", name));
        for (const auto& [i, value] : entries) {
            if (i < 0)
                throw Error(ErrorKind::invalid_action, fmt::format("Sq^{} is not defined", i));
            alg.check(value);
        }
    }
    generator_table_.resize(alg.num_generators());
    for (std::size_t g = 0; g < alg.num_generators(); ++g) {
        const auto& gen = alg.generators()[g];
        Monomial m(alg.num_generators(), 0);
        m[g] = 1;
        Element self = alg.normal_form(Element(m));
        if (gen.kind == GeneratorKind::laurent) {
            generator_table_[g] = {Element(m)};
            continue;
        }
        auto& row = generator_table_[g];
        row.assign(static_cast<std::size_t>(gen.degree) + 1, Element{});
        row[0] = self;
        if (gen.degree > 0)
            row[gen.degree] = alg.multiply(self, self);
        auto it = table_.find(gen.name);
        if (it == table_.end())
            continue;
        for (const auto& [i, value] : it->second) {
            if (i > gen.degree) {
                if (!value.is_zero() && status_ != Status::trusted)
                    throw Error(ErrorKind::invalid_action,
                                fmt::format("unstable axiom: Sq^{}({}) must vanish above the degree", i, gen.name));
                continue;
            }
            row[i] = alg.normal_form(value);
        }
    }
}

SteenrodAction SteenrodAction::load(std::shared_ptr<const Algebra> algebra, const SqTable& table)
{
    return SteenrodAction(std::move(algebra), table, Status::unchecked).validated();
}

SteenrodAction SteenrodAction::unchecked(std::shared_ptr<const Algebra> algebra, const SqTable& table)
{
    return SteenrodAction(std::move(algebra), table, Status::unchecked);
}

SteenrodAction SteenrodAction::trusted(std::shared_ptr<const Algebra> algebra, const SqTable& table)
{
    return SteenrodAction(std::move(algebra), table, Status::trusted);
}

SteenrodAction SteenrodAction::validated() const
{
    const auto& alg = *algebra_;
    for (std::size_t g = 0; g < alg.num_generators(); ++g) {
        const auto& gen = alg.generators()[g];
        if (gen.kind == GeneratorKind::laurent)
            continue;
        const auto& row = generator_table_[g];
        Monomial m(alg.num_generators(), 0);
        m[g] = 1;
        Element self = alg.normal_form(Element(m));
        if (row[0] != self)
            throw Error(ErrorKind::invalid_action, fmt::format("unstable axiom: Sq^0({}) must be {}", gen.name, gen.name));
        if (gen.degree > 0 && row[gen.degree] != alg.multiply(self, self))
            throw Error(ErrorKind::invalid_action,
                        fmt::format("unstable axiom: Sq^{}({}) must be its square", gen.degree, gen.name));
        for (int i = 0; i <= gen.degree; ++i) {
            const auto& v = row[i];
            if (v.is_zero())
                continue;
            auto d = alg.degree(v);
            if (!d || *d != gen.degree + i)
                throw Error(ErrorKind::invalid_action,
                            fmt::format("Sq^{}({}) = {} is not homogeneous of degree {}", i, gen.name,
                                        alg.format(v), gen.degree + i));
        }
    }
    SteenrodAction out = *this;
    out.status_ = Status::trusted;  // relation checks below need a usable action
    for (const auto& r : alg.relations()) {
        int top = alg.degree_cap() - alg.max_filtration(r);
        for (int i = 1; i <= top; ++i) {
            if (!out.sq(i, r).is_zero())
                throw Error(ErrorKind::invalid_action,
                            fmt::format("Sq^{} does not descend to the quotient: Sq^{}({}) = {}", i, i,
                                        alg.format(r), alg.format(out.sq(i, r))));
        }
    }
    out.status_ = Status::validated;
    out.cache_ = std::make_shared<Cache>();
    return out;
}

const Element& SteenrodAction::on_generator(std::size_t g, int i) const
{
    static const Element zero{};
    const auto& row = generator_table_.at(g);
    if (i < 0 || static_cast<std::size_t>(i) >= row.size())
        return zero;
    return row[i];
}

void SteenrodAction::require_usable() const
{
    if (status_ == Status::unchecked)
        throw Error(ErrorKind::action_not_checked, "Steenrod action has not been validated");
}

const Element& SteenrodAction::total_square(const Monomial& m) const
{
    {
        std::lock_guard lock(cache_->mutex);
        auto it = cache_->total.find(m);
        if (it != cache_->total.end())
            return it->second;
    }
    const auto& alg = *algebra_;
    Element total = alg.one();
    for (std::size_t g = 0; g < m.size(); ++g) {
        if (m[g] == 0)
            continue;
        if (alg.generators()[g].kind == GeneratorKind::laurent) {
            Monomial unit(m.size(), 0);
            unit[g] = m[g];
            total = alg.raw_multiply(total, Element(unit));
            continue;
        }
        Element sum;
        for (const auto& v : generator_table_[g])
            sum += v;
        for (int k = 0; k < m[g]; ++k)
            total = alg.raw_multiply(total, sum);
    }
    std::lock_guard lock(cache_->mutex);
    return cache_->total.emplace(m, std::move(total)).first->second;
}

Element SteenrodAction::sq(int i, const Element& e) const
{
    require_usable();
    algebra_->check(e);
    if (i < 0)
        return {};
    const auto& alg = *algebra_;
    Element out;
    for (const auto& m : e.terms())
        out += alg.component(total_square(m), alg.degree(m) + i);
    return alg.normal_form(out);
}

Element SteenrodAction::apply_word(const std::vector<int>& word, const Element& e) const
{
    Element x = e;
    for (int i : word) {
        if (x.is_zero())
            break;
        x = sq(i, x);
    }
    return x;
}

std::vector<std::vector<int>> milnor_words(int j)
{
    std::vector<std::vector<int>> words{{1}};
    for (int step = 0; step < j; ++step) {
        int p = 2 << step;
        std::map<std::vector<int>, int> parity;
        for (const auto& w : words) {
            auto first = w;
            first.push_back(p);  // Sq^{2^{j+1}} after Q_j
            auto second = std::vector<int>{p};
            second.insert(second.end(), w.begin(), w.end());  // Q_j after Sq^{2^{j+1}}
            parity[first] ^= 1;
            parity[second] ^= 1;
        }
        words.clear();
        for (const auto& [w, odd] : parity)
            if (odd)
                words.push_back(w);
    }
    return words;
}

Element milnor_q(int j, const Element& e, const SteenrodAction& action)
{
    Element out;
    for (const auto& w : milnor_words(j))
        out += action.apply_word(w, e);
    return out;
}

bool check_derivation(int j, const Element& a, const Element& b, const SteenrodAction& action)
{
    const auto& alg = action.algebra();
    Element lhs = milnor_q(j, alg.multiply(a, b), action);
    Element rhs = alg.multiply(milnor_q(j, a, action), b) + alg.multiply(a, milnor_q(j, b, action));
    return alg.equal(lhs, rhs);
}

std::vector<std::string> adem_spot_check(const SteenrodAction& action)
{
    const auto& alg = action.algebra();
    std::vector<std::string> failures;
    for (int d = 0; d + 3 <= alg.degree_cap(); ++d) {
        for (const auto& m : alg.basis(d)) {
            Element x(m);
            if (!action.apply_word({1, 1}, x).is_zero())
                failures.push_back(fmt::format("Sq1 Sq1 ({}) != 0", alg.format(m)));
            if (action.apply_word({2, 1}, x) != action.sq(3, x))
                failures.push_back(fmt::format("Sq1 Sq2 ({}) != Sq3 ({})", alg.format(m), alg.format(m)));
        }
    }
    return failures;
}

const char* to_string(Certainty c)
{
    switch (c) {
    case Certainty::yes: return "yes";
    case Certainty::no: return "no";
    case Certainty::unknown: return "unknown";
    }
    return "unknown";
}

IntegralityData::IntegralityData(const SteenrodAction& action, std::vector<Element> spanning)
    : algebra_(action.algebra_ptr())
{
    const auto& alg = *algebra_;
    auto add = [&](int d, const BitVector& coords) {
        auto it = image_.find(d);
        if (it == image_.end())
            it = image_.emplace(d, Echelon(alg.dim(d), PivotRule::lowest)).first;
        return it->second.insert(coords);
    };
    for (auto& e : spanning) {
        alg.check(e);
        e = alg.normal_form(e);
        for (const auto& [d, coords] : alg.express(e))
            add(d, coords);
    }
    spanning_ = std::move(spanning);
    // The unit is always integral.
    for (const auto& [d, coords] : alg.express(alg.one()))
        add(d, coords);
    // Close the span under products; the image of reduction is a subring.
    for (bool grew = true; grew;) {
        grew = false;
        auto snapshot = image_;
        for (const auto& [d1, e1] : snapshot)
            for (const auto& [d2, e2] : snapshot) {
                if (d2 < d1 || (!alg.has_laurent() && d1 + d2 > alg.degree_cap()))
                    continue;
                for (const auto& r1 : e1.rows())
                    for (const auto& r2 : e2.rows()) {
                        Element p = alg.multiply(alg.from_coordinates(d1, r1), alg.from_coordinates(d2, r2));
                        for (const auto& [d, coords] : alg.express(p))
                            grew |= add(d, coords);
                    }
            }
    }
    for (const auto& [d, ech] : image_) {
        for (const auto& row : ech.rows()) {
            Element x = alg.from_coordinates(d, row);
            if (!action.sq(1, x).is_zero())
                throw Error(ErrorKind::invalid_action,
                            fmt::format("integral class {} has nonzero Sq^1", alg.format(x)));
        }
    }
}

bool IntegralityData::contains(const Element& e) const
{
    const auto& alg = *algebra_;
    for (const auto& [d, coords] : alg.express(e)) {
        auto it = image_.find(d);
        if (it == image_.end() || !it->second.contains(coords))
            return false;
    }
    return true;
}

std::size_t IntegralityData::dim(int d) const
{
    auto it = image_.find(d);
    return it == image_.end() ? 0 : it->second.rank();
}

IntegralShadow bockstein(const Element& y, const SteenrodAction& action, const IntegralityData& integ)
{
    IntegralShadow s;
    s.representative = action.sq(1, y);
    if (integ.contains(y))
        s.vanishes = Certainty::yes;
    else if (!s.representative.is_zero())
        s.vanishes = Certainty::no;
    return s;
}

IntegralShadow sq_z(int k, const Element& e, const SteenrodAction& action, const IntegralityData& integ)
{
    if (!integ.contains(e))
        throw Error(ErrorKind::not_integral,
                    fmt::format("{} is not the reduction of a declared integral class", action.algebra().format(e)));
    return bockstein(action.sq(2 * k, e), action, integ);
}

}  // namespace moravak
