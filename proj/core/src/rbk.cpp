#include "moravak/rbk.hpp"

#include "moravak/error.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fmt/core.h>
#include <fmt/format.h>
#include <map>
#include <optional>

namespace moravak {

namespace {

int residue(int d, int period)
{
    int r = d % period;
    return r < 0 ? r + period : r;
}

void check_height(int n)
{
    if (n < 1 || n > 20)
        throw Error(ErrorKind::invalid_module, fmt::format("height {} out of range", n));
}

/// Indices of generators whose degree lies in each residue class.
std::map<int, std::vector<std::size_t>> residue_blocks(const std::vector<int>& degrees, int period)
{
    std::map<int, std::vector<std::size_t>> blocks;
    for (std::size_t i = 0; i < degrees.size(); ++i)
        blocks[residue(degrees[i], period)].push_back(i);
    return blocks;
}

LinearMap restrict(const LinearMap& m, const std::vector<std::size_t>& idx)
{
    LinearMap out(idx.size(), idx.size());
    for (std::size_t a = 0; a < idx.size(); ++a)
        for (std::size_t b = 0; b < idx.size(); ++b)
            if (m.entry(idx[a], idx[b]))
                out.set(a, b);
    return out;
}

/// Parses "0", "1", "v", "v^e", "vN^e"; returns nullopt for zero.
std::optional<int> parse_entry(std::string_view text, int n)
{
    auto trim = [](std::string_view s) {
        while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
            s.remove_prefix(1);
        while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
            s.remove_suffix(1);
        return s;
    };
    std::string_view s = trim(text);
    if (s == "0")
        return std::nullopt;
    if (s == "1")
        return 0;
    if (s.empty() || s.front() != 'v')
        throw Error(ErrorKind::invalid_module, fmt::format("cannot read matrix entry '{}'", text));
    s.remove_prefix(1);
    std::size_t digits = 0;
    while (digits < s.size() && std::isdigit(static_cast<unsigned char>(s[digits])))
        ++digits;
    if (digits > 0) {
        int sub = 0;
        std::from_chars(s.data(), s.data() + digits, sub);
        if (sub != n)
            throw Error(ErrorKind::invalid_module, fmt::format("entry '{}' names v{} at height {}", text, sub, n));
        s.remove_prefix(digits);
    }
    s = trim(s);
    if (s.empty())
        return 1;
    if (s.front() != '^')
        throw Error(ErrorKind::invalid_module, fmt::format("cannot read matrix entry '{}'", text));
    s = trim(s.substr(1));
    if (!s.empty() && s.front() == '(' && s.back() == ')')
        s = trim(s.substr(1, s.size() - 2));
    int e = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), e);
    if (ec != std::errc{} || ptr != s.data() + s.size())
        throw Error(ErrorKind::invalid_module, fmt::format("cannot read exponent in '{}'", text));
    return e;
}

/// Exponent of v carried by a nonzero entry (i, j) of v^{2^k} beta.
int entry_exponent(int di, int dj, int k, int period)
{
    return (dj - di) / period + (1 << k);
}

void check_idempotent(const LinearMap& beta, int k)
{
    if (beta.compose(beta) != beta)
        throw Error(ErrorKind::invalid_module,
                    fmt::format("relation b{0}^2 = v^{1} b{0} fails", k, 1 << k));
}

/// Boundary map of the resolution of M_k (hit = false) or N_k (hit = true) at level i >= 1,
/// tensored with P: b_k or b_k - v^{2^k}, normalised.
LinearMap resolution_map(const LinearMap& beta, bool hit, int i)
{
    bool plain = (i % 2 == 1) != hit;
    return plain ? beta : beta + LinearMap::identity(beta.domain());
}

/// Multi-indices (i_0, ..., i_{K-1}) with the given sum, in lexicographic order.
std::vector<std::vector<int>> multi_indices(int factors, int total)
{
    std::vector<std::vector<int>> out;
    std::vector<int> cur(factors, 0);
    auto rec = [&](auto&& self, int pos, int left) -> void {
        if (pos == factors - 1) {
            cur[pos] = left;
            out.push_back(cur);
            return;
        }
        for (int v = left; v >= 0; --v) {
            cur[pos] = v;
            self(self, pos + 1, left - v);
        }
    };
    if (factors == 0) {
        if (total == 0)
            out.push_back({});
        return out;
    }
    rec(rec, 0, total);
    return out;
}

/// Boundary C_h -> C_{h-1} of P tensored with the product of periodic resolutions.
LinearMap total_boundary(const std::vector<LinearMap>& betas, const std::vector<bool>& hits, int h)
{
    int factors = static_cast<int>(betas.size());
    std::size_t r = betas.empty() ? 0 : betas.front().domain();
    auto source = multi_indices(factors, h);
    if (h == 0)
        return LinearMap(source.size() * r, 0);
    auto target = multi_indices(factors, h - 1);
    std::map<std::vector<int>, std::size_t> position;
    for (std::size_t t = 0; t < target.size(); ++t)
        position[target[t]] = t;
    LinearMap d(source.size() * r, target.size() * r);
    for (std::size_t s = 0; s < source.size(); ++s) {
        for (int k = 0; k < factors; ++k) {
            if (source[s][k] == 0)
                continue;
            auto to = source[s];
            --to[k];
            std::size_t t = position.at(to);
            LinearMap block = resolution_map(betas[k], hits[k], source[s][k]);
            for (std::size_t a = 0; a < r; ++a)
                for (std::size_t b = 0; b < r; ++b)
                    if (block.entry(a, b))
                        d.column(s * r + b).flip(t * r + a);
        }
    }
    return d;
}

GradedKnModule resolution_homology(int n, const std::vector<int>& degrees, const std::vector<LinearMap>& betas,
                                   const std::vector<bool>& hits, int h)
{
    int period = vn_degree(n);
    GradedKnModule out{n, {}};
    for (const auto& [res, idx] : residue_blocks(degrees, period)) {
        // With no factors the complex is P itself in degree 0.
        if (betas.empty()) {
            if (h == 0)
                out.degrees.insert(out.degrees.end(), idx.size(), res);
            continue;
        }
        std::vector<LinearMap> block;
        for (const auto& b : betas)
            block.push_back(restrict(b, idx));
        auto incoming = total_boundary(block, hits, h + 1);
        auto outgoing = total_boundary(block, hits, h);
        auto dim = homology(incoming, outgoing).dim();
        out.degrees.insert(out.degrees.end(), dim, res);
    }
    std::sort(out.degrees.begin(), out.degrees.end());
    return out;
}

}  // namespace

int vn_degree(int n)
{
    return (2 << n) - 2;
}

std::size_t GradedKnModule::rank_in(int r) const
{
    return static_cast<std::size_t>(std::count(degrees.begin(), degrees.end(), r));
}

std::string GradedKnModule::format() const
{
    if (degrees.empty())
        return "0";
    return fmt::format("K({})_*{{{}}}", n, fmt::join(degrees, ", "));
}

RbkModule::RbkModule(int n, int k, std::vector<int> degrees, LinearMap beta)
    : n_(n), k_(k), degrees_(std::move(degrees)), beta_(std::move(beta))
{
}

RbkModule RbkModule::normalized(int n, int k, std::vector<int> degrees, LinearMap beta)
{
    check_height(n);
    if (k < 0 || k > 20)
        throw Error(ErrorKind::invalid_module, fmt::format("factor index {} out of range", k));
    if (beta.domain() != degrees.size() || beta.codomain() != degrees.size())
        throw Error(ErrorKind::invalid_module, "operator size does not match the rank");
    int period = vn_degree(n);
    for (std::size_t j = 0; j < degrees.size(); ++j)
        for (std::size_t i = 0; i < degrees.size(); ++i)
            if (beta.entry(i, j) && residue(degrees[i], period) != residue(degrees[j], period))
                throw Error(ErrorKind::invalid_module,
                            fmt::format("entry ({}, {}) joins degrees {} and {} which differ mod {}", i, j,
                                        degrees[i], degrees[j], period));
    check_idempotent(beta, k);
    return RbkModule(n, k, std::move(degrees), std::move(beta));
}

RbkModule RbkModule::from_entries(int n, int k, std::vector<int> degrees,
                                  const std::vector<std::vector<std::string>>& entries)
{
    check_height(n);
    int period = vn_degree(n);
    std::size_t r = degrees.size();
    if (entries.size() != r)
        throw Error(ErrorKind::invalid_module, fmt::format("operator has {} rows, rank is {}", entries.size(), r));
    LinearMap beta(r, r);
    for (std::size_t i = 0; i < r; ++i) {
        if (entries[i].size() != r)
            throw Error(ErrorKind::invalid_module, fmt::format("row {} has {} entries, rank is {}", i, entries[i].size(), r));
        for (std::size_t j = 0; j < r; ++j) {
            auto e = parse_entry(entries[i][j], n);
            if (!e)
                continue;
            if ((degrees[j] - degrees[i]) % period != 0)
                throw Error(ErrorKind::invalid_module,
                            fmt::format("entry ({}, {}) joins degrees {} and {} which differ mod {}", i, j,
                                        degrees[i], degrees[j], period));
            int expected = entry_exponent(degrees[i], degrees[j], k, period);
            if (*e != expected)
                throw Error(ErrorKind::invalid_module,
                            fmt::format("entry ({}, {}) must be v^{} to have the degree of b{}", i, j, expected, k));
            beta.set(i, j);
        }
    }
    return normalized(n, k, std::move(degrees), std::move(beta));
}

std::string RbkModule::entry(std::size_t i, std::size_t j) const
{
    if (!beta_.entry(i, j))
        return "0";
    int e = entry_exponent(degrees_[i], degrees_[j], k_, vn_degree(n_));
    if (e == 0)
        return "1";
    if (e == 1)
        return "v";
    return fmt::format("v^{}", e);
}

const char* to_string(StandardModule which)
{
    switch (which) {
    case StandardModule::M: return "M";
    case StandardModule::N: return "N";
    case StandardModule::R: return "R";
    }
    return "M";
}

RbkModule standard_module(StandardModule which, int n, int k)
{
    switch (which) {
    case StandardModule::M:
        return RbkModule::normalized(n, k, {0}, LinearMap::zero(1, 1));
    case StandardModule::N:
        return RbkModule::normalized(n, k, {0}, LinearMap::identity(1));
    case StandardModule::R: {
        // Basis (1, b_k): b_k * 1 = b_k, b_k * b_k = v^{2^k} b_k.
        LinearMap beta(2, 2);
        beta.set(1, 0);
        beta.set(1, 1);
        return RbkModule::normalized(n, k, {0, (1 << k) * vn_degree(n)}, beta);
    }
    }
    throw Error(ErrorKind::invalid_module, "unknown standard module");
}

GradedKnModule tor(const RbkModule& p, StandardModule which, int i)
{
    if (i < 0)
        throw Error(ErrorKind::invalid_index, fmt::format("Tor index {} is negative", i));
    if (which == StandardModule::R)
        throw Error(ErrorKind::invalid_module, "Tor coefficients must be M_k or N_k");
    return resolution_homology(p.n(), p.degrees(), {p.beta()}, {which == StandardModule::N}, i);
}

TensorModule TensorModule::create(int n, std::vector<int> degrees, std::vector<LinearMap> betas)
{
    for (std::size_t k = 0; k < betas.size(); ++k)
        RbkModule::normalized(n, static_cast<int>(k), degrees, betas[k]);
    for (std::size_t a = 0; a < betas.size(); ++a)
        for (std::size_t b = a + 1; b < betas.size(); ++b)
            if (betas[a].compose(betas[b]) != betas[b].compose(betas[a]))
                throw Error(ErrorKind::invalid_tensor_module, fmt::format("b{} and b{} do not commute", a, b));
    TensorModule t;
    t.n_ = n;
    t.degrees_ = std::move(degrees);
    t.betas_ = std::move(betas);
    return t;
}

TensorModule TensorModule::from_entries(int n, std::vector<int> degrees,
                                        const std::vector<std::vector<std::vector<std::string>>>& entries)
{
    std::vector<LinearMap> betas;
    for (std::size_t k = 0; k < entries.size(); ++k)
        betas.push_back(RbkModule::from_entries(n, static_cast<int>(k), degrees, entries[k]).beta());
    return create(n, std::move(degrees), std::move(betas));
}

TensorModule TensorModule::from_factor(const RbkModule& m, int factors)
{
    if (m.k() >= factors)
        throw Error(ErrorKind::invalid_tensor_module,
                    fmt::format("factor b{} lies beyond the truncation {}", m.k(), factors));
    std::vector<LinearMap> betas(static_cast<std::size_t>(factors), LinearMap::zero(m.rank(), m.rank()));
    betas[m.k()] = m.beta();
    return create(m.n(), m.degrees(), std::move(betas));
}

RbkModule TensorModule::factor(int k) const
{
    if (k < 0)
        throw Error(ErrorKind::invalid_index, fmt::format("factor index {} is negative", k));
    if (k >= factors())
        return RbkModule::normalized(n_, k, degrees_, LinearMap::zero(rank(), rank()));
    return RbkModule::normalized(n_, k, degrees_, betas_[k]);
}

std::vector<GradedKnModule> bar_e2(const TensorModule& p, const AlgebraHom& hom, int max_degree)
{
    if (hom.truncation() != p.factors())
        throw Error(ErrorKind::invalid_tensor_module,
                    fmt::format("homomorphism covers {} factors, module has {}", hom.truncation(), p.factors()));
    if (hom.n != p.n())
        throw Error(ErrorKind::invalid_tensor_module,
                    fmt::format("homomorphism is at height {}, module at height {}", hom.n, p.n()));
    if (max_degree < 0)
        throw Error(ErrorKind::invalid_index, fmt::format("homological degree {} is negative", max_degree));
    std::vector<GradedKnModule> out;
    for (int h = 0; h <= max_degree; ++h)
        out.push_back(resolution_homology(p.n(), p.degrees(), p.betas(), hom.hits, h));
    return out;
}

GradedKnModule khorami_quotient(const TensorModule& p)
{
    int period = vn_degree(p.n());
    GradedKnModule out{p.n(), {}};
    for (const auto& [res, idx] : residue_blocks(p.degrees(), period)) {
        Echelon span(idx.size());
        for (int k = 0; k < p.factors(); ++k) {
            LinearMap m = restrict(p.betas()[k], idx);
            if (k == 0)
                m = m + LinearMap::identity(idx.size());
            for (std::size_t j = 0; j < idx.size(); ++j)
                span.insert(m.column(j));
        }
        if (p.factors() == 0) {
            // b_0 acts as 0, so b_0 - v_n is invertible.
            continue;
        }
        out.degrees.insert(out.degrees.end(), idx.size() - span.rank(), res);
    }
    std::sort(out.degrees.begin(), out.degrees.end());
    return out;
}

}  // namespace moravak
