#include "moravak/ahss.hpp"

#include "moravak/error.hpp"

#include <fmt/core.h>

namespace moravak {

void SpaceModel::validate() const
{
    if (!algebra)
        throw Error(ErrorKind::invalid_algebra, "space model has no algebra");
    if (!(action.algebra() == *algebra))
        throw Error(ErrorKind::invalid_action, "Steenrod action belongs to a different algebra");
    if (algebra->has_laurent())
        throw Error(ErrorKind::invalid_algebra, "cohomology of a space cannot contain a laurent unit");
    if (top_degree < 0 || top_degree > algebra->degree_cap())
        throw Error(ErrorKind::invalid_algebra,
                    fmt::format("top degree {} must lie in [0, {}]", top_degree, algebra->degree_cap()));
    if (!truncated)
        for (int d = top_degree + 1; d <= algebra->degree_cap(); ++d)
            if (algebra->dim(d) != 0)
                throw Error(ErrorKind::invalid_algebra,
                            fmt::format("classes in degree {} above the top degree {}", d, top_degree));
}

int vn_period(int n)
{
    return (2 << n) - 2;
}

int first_length(int n)
{
    return (2 << n) - 1;
}

const PageColumn& Page::column(int p) const
{
    if (p < 0 || p > top())
        throw Error(ErrorKind::invalid_index, fmt::format("column {} outside [0, {}]", p, top()));
    return columns_[p];
}

std::optional<std::size_t> Page::rank(int p, int q) const
{
    if (p < 0 || p > top())
        return std::size_t{0};
    if (q % period() != 0)
        return std::size_t{0};
    if (columns_[p].edge_incomplete)
        return std::nullopt;
    return columns_[p].basis.size();
}

LinearMap Page::differential(int p, int q) const
{
    if (q % period() != 0)
        throw Error(ErrorKind::invalid_index, fmt::format("q = {} is not a multiple of {}", q, period()));
    std::size_t source = (p >= 0 && p <= top()) ? columns_[p].basis.size() : 0;
    int t = p + first_length(n_);
    std::size_t target = (t >= 0 && t <= top()) ? columns_[t].basis.size() : 0;
    if (differentials_.empty() || p < 0 || p > top())
        return LinearMap::zero(source, target);
    return differentials_[p];
}

BitVector Page::coordinates(int p, const Element& e) const
{
    const auto& col = column(p);
    const auto& alg = *algebra_;
    // Solve in the algebra basis: columns of the matrix are the stored basis.
    std::size_t dim = alg.dim(p);
    std::size_t r = col.basis.size();
    Echelon ech(dim + r);
    for (std::size_t i = 0; i < r; ++i)
        ech.insert(alg.express(col.basis[i], p).concat(BitVector::unit(r, i)));
    BitVector target = alg.express(e, p).concat(BitVector(r));
    ech.reduce(target);
    if (target.slice(0, dim).any())
        throw Error(ErrorKind::invalid_index, fmt::format("{} is not in the span of column {}", alg.format(e), p));
    return target.slice(dim, dim + r);
}

Page e2_page(const SpaceModel& space, int n)
{
    space.validate();
    if (n < 1)
        throw Error(ErrorKind::invalid_index, fmt::format("height {} must be positive", n));
    if (space.action.status() == SteenrodAction::Status::unchecked)
        throw Error(ErrorKind::action_not_checked, "Steenrod action has not been validated");
    Page page;
    page.n_ = n;
    page.index_ = 2;
    page.algebra_ = space.algebra;
    const auto& alg = *space.algebra;
    page.truncated_ = space.truncated;
    for (int p = 0; p <= space.top_degree; ++p) {
        PageColumn col;
        col.p = p;
        for (const auto& m : alg.basis(p))
            col.basis.emplace_back(m);
        page.columns_.push_back(std::move(col));
    }
    return page;
}

Element twist_term(const SpaceModel& space, const TwistClass& twist, int n)
{
    const auto& alg = *space.algebra;
    alg.check(twist.h);
    if (twist.h.is_zero())
        return {};
    auto d = alg.degree(twist.h);
    if (!d || *d != n + 2)
        throw Error(ErrorKind::wrong_twist_degree,
                    fmt::format("twist {} must be homogeneous of degree {}", alg.format(twist.h), n + 2));
    Element phi = alg.normal_form(twist.h);
    for (int j = 1; j < n; ++j)
        phi = milnor_q(j, phi, space.action);
    return phi;
}

Element apply_differential(const SpaceModel& space, const Element& phi, int n, const Element& m)
{
    const auto& alg = *space.algebra;
    return milnor_q(n, m, space.action) + alg.multiply(m, phi);
}

Page first_differential(const Page& page, const SpaceModel& space, const TwistClass& twist)
{
    if (page.has_differential() || page.index() > first_length(page.n()))
        throw Error(ErrorKind::invalid_index, "the first differential acts on an E_2 page");
    if (!(*page.algebra_ == *space.algebra))
        throw Error(ErrorKind::invalid_algebra, "page and space have different algebras");
    int n = page.n();
    int r = first_length(n);
    Element phi = twist_term(space, twist, n);
    const auto& alg = *space.algebra;
    Page out = page;
    out.differentials_.clear();
    for (int p = 0; p <= page.top(); ++p) {
        const auto& col = page.columns_[p];
        int t = p + r;
        if (t > page.top()) {
            out.differentials_.push_back(LinearMap::zero(col.basis.size(), 0));
            continue;
        }
        LinearMap d(col.basis.size(), page.columns_[t].basis.size());
        for (std::size_t j = 0; j < col.basis.size(); ++j) {
            Element image = apply_differential(space, phi, n, col.basis[j]);
            alg.check(image);
            d.column(j) = page.coordinates(t, image);
        }
        out.differentials_.push_back(std::move(d));
    }
    for (int p = 0; p + r <= out.top(); ++p) {
        const auto& d1 = out.differentials_[p];
        const auto& d2 = out.differentials_[p + r];
        if (!d2.compose(d1).is_zero())
            throw Error(ErrorKind::inconsistent_action,
                        fmt::format("d^2 != 0 from column {}; the Sq table or the twist is inconsistent", p));
    }
    return out;
}

Page turn_page(const Page& page)
{
    Page out = page;
    out.differentials_.clear();
    out.index_ = page.index_ + 1;
    int r = first_length(page.n());
    if (!page.has_differential()) {
        if (page.index_ + 1 > r + 1)
            out.upper_bound_ = true;
        return out;
    }
    out.index_ = r + 1;
    const auto& alg = *page.algebra_;
    for (int p = 0; p <= page.top(); ++p) {
        const auto& col = page.columns_[p];
        LinearMap incoming = p - r >= 0 ? page.differentials_[p - r] : LinearMap::zero(0, col.basis.size());
        const LinearMap& outgoing = page.differentials_[p];
        auto h = homology(incoming, outgoing);
        std::vector<Element> basis;
        for (const auto& rep : h.representatives) {
            Element e;
            for (auto i : rep.support())
                e += col.basis[i];
            basis.push_back(alg.normal_form(e));
        }
        out.columns_[p].basis = std::move(basis);
        if (page.truncated_ && p + r > page.top())
            out.columns_[p].edge_incomplete = true;
    }
    return out;
}

IntegralDifferential integral_first_differential(const Page& page, const SpaceModel& space, const TwistClass& twist)
{
    if (!space.integral)
        throw Error(ErrorKind::integral_data_required, "the integral differential needs integrality data");
    if (!twist.integral)
        throw Error(ErrorKind::integral_data_required, "the twist must be the reduction of an integral class");
    const auto& integ = *space.integral;
    const auto& alg = *space.algebra;
    const auto& action = space.action;
    if (!integ.contains(twist.h))
        throw Error(ErrorKind::not_integral,
                    fmt::format("twist {} is not in the declared integral image", alg.format(twist.h)));
    IntegralDifferential out{first_differential(page, space, twist), {}};
    int n = page.n();
    int r = first_length(n);
    Element phi = twist_term(space, twist, n);
    // Pre-Bockstein of the twist term along the Sq_Z chain: psi_2 = Sq^2 h,
    // psi_{j+1} = Sq^{2^{j+1}-2} Sq^1 psi_j.
    Element psi;
    if (n >= 2) {
        psi = action.sq(2, twist.h);
        for (int j = 2; j < n; ++j)
            psi = action.sq((2 << j) - 2, action.sq(1, psi));
    }
    for (int p = 0; p + r <= page.top(); ++p) {
        for (const auto& m : page.column(p).basis) {
            IntegralEntry entry;
            entry.p = p;
            entry.source = m;
            entry.shadow = apply_differential(space, phi, n, m);
            if (!entry.shadow.is_zero()) {
                entry.vanishes = Certainty::no;
            }
            else if (integ.contains(m)) {
                if (n == 1) {
                    entry.pre_bockstein = action.sq(2, m);
                    if (twist.h.is_zero() && integ.contains(*entry.pre_bockstein))
                        entry.vanishes = Certainty::yes;
                }
                else {
                    entry.pre_bockstein = action.sq(r - 1, m) + alg.multiply(m, psi);
                    if (integ.contains(*entry.pre_bockstein))
                        entry.vanishes = Certainty::yes;
                }
            }
            out.entries.push_back(std::move(entry));
        }
    }
    return out;
}

}  // namespace moravak
