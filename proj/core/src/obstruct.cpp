#include "moravak/obstruct.hpp"

#include "moravak/error.hpp"

#include <fmt/core.h>

namespace moravak {

namespace {

bool binomial_odd(int n, int t)
{
    if (t == 0)
        return true;
    if (n < 0 || t < 0)
        return false;
    return (n & t) == t;
}

void require_degree(const Algebra& alg, const Element& e, int d, const char* what)
{
    alg.check(e);
    auto deg = alg.degree(e);
    if (!e.is_zero() && deg != d)
        throw Error(ErrorKind::invalid_manifold, fmt::format("{} must have degree {}", what, d));
}

/// Drops components above the dimension of the manifold.
Element clip(const ManifoldData& m, const Element& e)
{
    const auto& alg = *m.space.algebra;
    Element out;
    for (int d : alg.degrees(e))
        if (d <= m.dimension)
            out += alg.component(e, d);
    return out;
}

Element sq(const ManifoldData& m, int i, const Element& e)
{
    if (e.is_zero())
        return {};
    return clip(m, m.space.action.sq(i, e));
}

/// Sq^3 = Sq^1 Sq^2.
Element sq3(const ManifoldData& m, const Element& e)
{
    return sq(m, 1, sq(m, 2, e));
}

Certainty certify(const ManifoldData& m, const Element& y)
{
    if (y.is_zero())
        return Certainty::yes;
    if (m.space.integral && m.space.integral->contains(y))
        return Certainty::yes;
    return Certainty::unknown;
}

ObstructionReport conclude(const ManifoldData& m, const Element& pre_bockstein)
{
    ObstructionReport r;
    r.pre_bockstein = pre_bockstein;
    r.obstruction = sq(m, 1, pre_bockstein);
    if (!r.obstruction.is_zero()) {
        r.vanishes = Certainty::no;
        r.verdict = Verdict::obstructed;
        return r;
    }
    r.vanishes = certify(m, pre_bockstein);
    r.verdict = r.vanishes == Certainty::yes ? Verdict::oriented : Verdict::undecided;
    return r;
}

void require_integral(const ManifoldData& m, const Element& h, const char* what)
{
    if (!sq(m, 1, h).is_zero())
        throw Error(ErrorKind::not_integral, fmt::format("Sq1 {} != 0, so {} is not integral", what, what));
    if (m.space.integral && !m.space.integral->contains(h))
        throw Error(ErrorKind::not_integral,
                    fmt::format("{} is not the reduction of a declared integral class", what));
}

void require_ten_dimensional(const ManifoldData& m)
{
    if (m.dimension != 10)
        throw Error(ErrorKind::invalid_manifold,
                    fmt::format("the index pairing needs dimension 10, got {}", m.dimension));
}

}  // namespace

bool WuAssumptions::vanishes(int k) const
{
    bool orient = oriented || spin;
    switch (k) {
    case 1:
        return orient;
    case 2:
    case 3:
        return spin;
    case 4:
        return w4_zero;
    case 5:
        return w4_zero && orient;
    case 6:
    case 7:
        return w4_zero && spin;
    default:
        return false;
    }
}

void ManifoldData::validate() const
{
    space.validate();
    const auto& alg = *space.algebra;
    if (dimension < 0 || dimension > alg.degree_cap())
        throw Error(ErrorKind::invalid_manifold,
                    fmt::format("dimension {} outside the window [0, {}]", dimension, alg.degree_cap()));
    if (string && !spin)
        throw Error(ErrorKind::invalid_manifold, "a string manifold must be spin");
    for (const auto& [i, w] : sw) {
        if (i <= 0)
            throw Error(ErrorKind::invalid_manifold, fmt::format("w{} is not a Stiefel-Whitney index", i));
        require_degree(alg, w, i, fmt::format("w{}", i).c_str());
        bool zero = alg.normal_form(w).is_zero();
        if (!zero && i > dimension)
            throw Error(ErrorKind::invalid_manifold, fmt::format("w{} is nonzero above the dimension", i));
    }
    require_degree(alg, lambda, 4, "lambda");
    if (string && !alg.normal_form(lambda).is_zero())
        throw Error(ErrorKind::invalid_manifold, "a string manifold has lambda = 0");
    WuAssumptions flags{oriented, spin, w4_zero()};
    for (const auto& [i, w] : sw)
        if (flags.vanishes(i) && !alg.normal_form(w).is_zero())
            throw Error(ErrorKind::invalid_manifold, fmt::format("w{} must vanish under the declared flags", i));
    if (sw.contains(4) || flags.vanishes(4))
        if (!alg.equal(w(4), lambda))
            throw Error(ErrorKind::invalid_manifold, "lambda must reduce to w4 mod 2");
    std::size_t top = alg.dim(dimension);
    if (closed) {
        if (top != 1)
            throw Error(ErrorKind::invalid_manifold,
                        fmt::format("a closed manifold has rank-1 top cohomology, found rank {}", top));
        if (pairing.size() != 1 || pairing.none())
            throw Error(ErrorKind::invalid_manifold, "the fundamental class must pair nontrivially");
    } else if (pairing.size() != 0 && pairing.size() != top) {
        throw Error(ErrorKind::invalid_manifold,
                    fmt::format("pairing has {} entries for a rank-{} top degree", pairing.size(), top));
    }
}

bool ManifoldData::w4_zero() const
{
    if (string)
        return true;
    auto it = sw.find(4);
    return it != sw.end() && space.algebra->normal_form(it->second).is_zero();
}

Element ManifoldData::w(int i) const
{
    if (i == 0)
        return space.algebra->one();
    if (i < 0 || i > dimension)
        return {};
    if (WuAssumptions{oriented, spin, w4_zero()}.vanishes(i))
        return {};
    auto it = sw.find(i);
    if (it == sw.end())
        throw Error(ErrorKind::missing_class, fmt::format("w{} is not supplied", i));
    return it->second;
}

bool ManifoldData::evaluate(const Element& e) const
{
    const auto& alg = *space.algebra;
    std::size_t top = alg.dim(dimension);
    if (pairing.size() != top || top == 0)
        throw Error(ErrorKind::invalid_manifold, "no fundamental class to evaluate against");
    return pairing.dot(alg.express(alg.component(e, dimension), dimension));
}

std::vector<WuTerm> wu_expansion(int i, int j, const WuAssumptions& assumptions)
{
    std::vector<WuTerm> out;
    if (i < 0 || i > j)
        return out;
    for (int t = 0; t <= i; ++t) {
        if (!binomial_odd(j - i + t - 1, t))
            continue;
        WuTerm term{i - t, j + t};
        if (assumptions.vanishes(term.a) || assumptions.vanishes(term.b))
            continue;
        out.push_back(term);
    }
    return out;
}

std::string format_wu(const std::vector<WuTerm>& terms)
{
    if (terms.empty())
        return "0";
    std::string out;
    for (const auto& t : terms) {
        if (!out.empty())
            out += " + ";
        if (t.a == 0)
            out += fmt::format("w{}", t.b);
        else
            out += fmt::format("w{}*w{}", t.a, t.b);
    }
    return out;
}

Element wu_sq(const ManifoldData& m, int i, int j)
{
    const auto& alg = *m.space.algebra;
    Element out;
    for (const auto& t : wu_expansion(i, j, {m.oriented, m.spin, m.w4_zero()})) {
        Element wa = m.w(t.a);
        Element wb = m.w(t.b);
        if (wa.is_zero() || wb.is_zero())
            continue;
        out += alg.multiply(wa, wb);
    }
    return clip(m, alg.normal_form(out));
}

IntegralShadow integral_sw(const ManifoldData& m, int odd)
{
    if (odd < 1 || odd % 2 == 0)
        throw Error(ErrorKind::invalid_index, fmt::format("W{} is not an odd integral class", odd));
    Element w = m.w(odd - 1);
    IntegralShadow s;
    s.representative = sq(m, 1, w);
    if (!s.representative.is_zero())
        s.vanishes = Certainty::no;
    else
        s.vanishes = certify(m, w);
    return s;
}

const char* to_string(Verdict v)
{
    switch (v) {
    case Verdict::oriented:
        return "oriented";
    case Verdict::obstructed:
        return "obstructed";
    case Verdict::undecided:
        return "undecided";
    }
    return "?";
}

ObstructionReport twisted_string_check(const ManifoldData& m, const TwistClass& h4)
{
    const auto& alg = *m.space.algebra;
    alg.check(h4.h);
    if (!h4.h.is_zero() && alg.degree(h4.h) != 4)
        throw Error(ErrorKind::wrong_twist_degree, "the twist must have degree 4");
    if (!h4.integral)
        throw Error(ErrorKind::hypothesis_violated, "the twist must be an integral class");
    require_integral(m, h4.h, "h4");
    auto r = conclude(m, m.w(6) + sq(m, 2, h4.h));
    if (m.dimension > 12)
        r.warnings.push_back(fmt::format("dimension {} exceeds 12; the condition is only the first obstruction",
                                         m.dimension));
    return r;
}

HeteroticReport heterotic_check(const ManifoldData& m, const Element& a, const Element& b)
{
    const auto& alg = *m.space.algebra;
    require_degree(alg, a, 4, "a");
    require_degree(alg, b, 4, "b");
    if (!alg.equal(a + b, m.lambda))
        throw Error(ErrorKind::anomaly_relation_violated, "a + b != lambda");
    HeteroticReport r;
    r.sq3_a = sq3(m, a);
    if (!r.sq3_a.is_zero())
        r.failed_hypotheses.push_back("Sq3 a = 0");
    if (!m.spin)
        r.failed_hypotheses.push_back("spin");
    if (m.dimension != 10)
        r.failed_hypotheses.push_back("dimension 10");
    r.hypotheses_hold = r.failed_hypotheses.empty();
    r.obstruction = twisted_string_check(m, {b, true});
    return r;
}

FivebraneReport fivebrane_check(const ManifoldData& m, const Element& h5)
{
    const auto& alg = *m.space.algebra;
    require_degree(alg, h5, 5, "h5");
    require_integral(m, h5, "h5");
    FivebraneReport r;
    r.alpha8 = sq3(m, h5);
    r.q2q1 = clip(m, milnor_q(2, milnor_q(1, h5, m.space.action), m.space.action));
    r.sq7sq3 = sq(m, 7, r.alpha8);
    // Sq_Z^7 = beta Sq^6.
    r.obstruction = conclude(m, m.w(14) + sq(m, 6, r.alpha8));
    if (!m.string)
        r.obstruction.warnings.push_back("hypothesis violated: the manifold is not string");
    if (!alg.equal(r.q2q1, r.sq7sq3))
        r.obstruction.warnings.push_back("Q2 Q1 h5 differs from Sq7 Sq3 h5");
    return r;
}

IndexTable::IndexTable(std::size_t rank, std::vector<bool> values) : rank_(rank), values_(std::move(values))
{
    if (rank_ >= 24 || values_.size() != (std::size_t{1} << rank_))
        throw Error(ErrorKind::invalid_manifold,
                    fmt::format("an index table on a rank-{} space needs 2^{} values", rank_, rank_));
}

bool IndexTable::at(const BitVector& coords) const
{
    if (coords.size() != rank_)
        throw Error(ErrorKind::invalid_manifold, "coordinates do not match the index table");
    std::size_t index = 0;
    for (std::size_t i : coords.support())
        index |= std::size_t{1} << i;
    return values_[index];
}

namespace {

bool index_of(const ManifoldData& m, const IndexTable& f, const Element& a)
{
    const auto& alg = *m.space.algebra;
    if (f.rank() != alg.dim(4))
        throw Error(ErrorKind::invalid_manifold,
                    fmt::format("index table has rank {}, H^4 has rank {}", f.rank(), alg.dim(4)));
    return f.at(alg.express(a, 4));
}

bool cup_sq2(const ManifoldData& m, const Element& a, const Element& b)
{
    return m.evaluate(m.space.algebra->multiply(a, sq(m, 2, b)));
}

}  // namespace

bool quadratic_refinement_check(const ManifoldData& m, const IndexTable& f, const Element& a, const Element& a2)
{
    require_ten_dimensional(m);
    const auto& alg = *m.space.algebra;
    require_degree(alg, a, 4, "a");
    require_degree(alg, a2, 4, "a'");
    return index_of(m, f, a + a2) == ((index_of(m, f, a) != index_of(m, f, a2)) != cup_sq2(m, a, a2));
}

std::optional<std::pair<Element, Element>> refinement_failure(const ManifoldData& m, const IndexTable& f)
{
    require_ten_dimensional(m);
    const auto& alg = *m.space.algebra;
    std::size_t r = alg.dim(4);
    if (f.rank() != r)
        throw Error(ErrorKind::invalid_manifold,
                    fmt::format("index table has rank {}, H^4 has rank {}", f.rank(), r));
    // <a Sq^2 a'> is bilinear, so a Gram matrix decides every pair.
    std::vector<BitVector> gram(r, BitVector(r));
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j)
            gram[i].set(j, cup_sq2(m, alg.from_coordinates(4, BitVector::unit(r, i)),
                                   alg.from_coordinates(4, BitVector::unit(r, j))));
    auto coords = [r](std::size_t bits) {
        BitVector v(r);
        for (std::size_t i = 0; i < r; ++i)
            v.set(i, (bits >> i) & 1u);
        return v;
    };
    const auto& values = f.values();
    for (std::size_t x = 0; x < values.size(); ++x) {
        BitVector vx = coords(x);
        for (std::size_t y = 0; y < values.size(); ++y) {
            BitVector vy = coords(y);
            bool b = false;
            for (std::size_t i : vx.support())
                b ^= gram[i].dot(vy);
            if (values[x ^ y] != ((values[x] != values[y]) != b))
                return std::pair{alg.from_coordinates(4, vx), alg.from_coordinates(4, vy)};
        }
    }
    return std::nullopt;
}

PhaseReport phase_invariance_check(const ManifoldData& m, const IndexTable& f, const Element& a,
                                   const Element& b, bool b_torsion)
{
    require_ten_dimensional(m);
    const auto& alg = *m.space.algebra;
    require_degree(alg, a, 4, "a");
    require_degree(alg, b, 4, "b");
    if (index_of(m, f, b))
        throw Error(ErrorKind::hypothesis_violated, "f(b) != 0");
    PhaseReport r;
    if (!b_torsion)
        r.warnings.push_back("hypothesis violated: b is not torsion");
    r.f_a = index_of(m, f, a);
    r.f_2b = cup_sq2(m, b, m.lambda);
    r.cross_term = cup_sq2(m, b, a);
    r.f_a_plus_3b = (r.f_a != r.f_2b) != r.cross_term;
    r.invariant = r.f_2b == r.cross_term;
    r.sufficient_condition = sq3(m, m.lambda + a).is_zero();
    r.orientation = twisted_string_check(m, {a, true});
    return r;
}

ObstructionReport relative_obstruction(const ManifoldData& m, const RelativePair& pair, const TwistClass& h4)
{
    const auto& alg = *m.space.algebra;
    alg.check(h4.h);
    if (!h4.h.is_zero() && alg.degree(h4.h) != 4)
        throw Error(ErrorKind::wrong_twist_degree, "the twist must have degree 4");
    if (!h4.integral)
        throw Error(ErrorKind::hypothesis_violated, "the twist must be an integral class");
    require_integral(m, h4.h, "h4");

    const bool has_boundary = pair.boundary.has_value();
    if (has_boundary) {
        if (!pair.restriction)
            throw Error(ErrorKind::invalid_pair, "a boundary needs a restriction map");
        const auto& r = *pair.restriction;
        const auto& target = *pair.boundary->algebra;
        if (!(r.source() == alg) || r.is_zero_target() || !(r.target() == target))
            throw Error(ErrorKind::invalid_pair, "the restriction map does not go from X to A");
        pair.boundary->validate();
        for (std::size_t g = 0; g < alg.num_generators(); ++g) {
            const auto& gen = alg.generators()[g];
            Element x = alg.generator(gen.name);
            for (int i = 0; i <= gen.degree; ++i)
                if (!target.equal(r.apply(m.space.action.sq(i, x)), pair.boundary->action.sq(i, r.apply(x))))
                    throw Error(ErrorKind::invalid_pair,
                                fmt::format("restriction does not commute with Sq{} on {}", i, gen.name));
        }
    } else if (pair.restriction) {
        throw Error(ErrorKind::invalid_pair, "a restriction map needs a boundary");
    }

    auto relative = [&](int i) -> Element {
        auto it = pair.relative_sw.find(i);
        if (it != pair.relative_sw.end()) {
            alg.check(it->second);
            if (!it->second.is_zero() && alg.degree(it->second) != i)
                throw Error(ErrorKind::invalid_manifold, fmt::format("relative w{} must have degree {}", i, i));
            return it->second;
        }
        if (!has_boundary || i > m.dimension || WuAssumptions{m.oriented, m.spin, m.w4_zero()}.vanishes(i))
            return m.w(i);
        throw Error(ErrorKind::missing_class, fmt::format("relative w{} is not supplied", i));
    };
    Element w6 = relative(6);
    if (has_boundary) {
        const auto& target = *pair.boundary->algebra;
        if (!target.normal_form(pair.restriction->apply(w6)).is_zero())
            throw Error(ErrorKind::invalid_pair, "relative w6 does not vanish on the boundary");
        if (!target.normal_form(pair.restriction->apply(h4.h)).is_zero())
            throw Error(ErrorKind::invalid_pair, "the relative twist does not vanish on the boundary");
    }

    auto r = conclude(m, w6 + sq(m, 2, h4.h));
    if (has_boundary && r.verdict == Verdict::oriented) {
        const auto& target = *pair.boundary->algebra;
        std::size_t six = target.degree_cap() >= 6 ? target.dim(6) : 0;
        if (pair.restriction->matrix(6).rank() != six) {
            r.verdict = Verdict::undecided;
            r.vanishes = Certainty::unknown;
            r.warnings.push_back("H6(X) -> H6(A) is not onto; the relative class is not determined by its image");
        }
    }
    if (m.dimension > 12)
        r.warnings.push_back(fmt::format("dimension {} exceeds 12; the condition is only the first obstruction",
                                         m.dimension));
    return r;
}

}  // namespace moravak
