#pragma once

#include "moravak/steenrod.hpp"

#include <memory>
#include <optional>
#include <vector>

namespace moravak {

/// H*(X; F2) with its Steenrod action, optional integrality data and dimension.
struct SpaceModel {
    std::shared_ptr<const Algebra> algebra;
    SteenrodAction action;
    std::optional<IntegralityData> integral;
    int top_degree = 0;
    /// The algebra is a truncation of an infinite complex (cells above the cap exist).
    bool truncated = false;

    /// Throws when the top degree exceeds the cap, the algebra has a laurent unit,
    /// or a non-truncated model has classes above its top degree.
    void validate() const;
};

/// Twisting class H, given by its mod-2 reduction.
struct TwistClass {
    Element h;
    bool integral = true;
};

/// Degree of v_n and length of the first differential, 2^{n+1} - 1.
int vn_period(int n);
int first_length(int n);

struct PageColumn {
    int p = 0;
    /// Representatives in H^p(X; F2) of a basis of E_r^{p, q} for every q = e |v_n|.
    std::vector<Element> basis;
    /// The rank needs classes beyond the computed window and is only an upper bound.
    bool edge_incomplete = false;

    friend bool operator==(const PageColumn&, const PageColumn&) = default;
};

/// A page E_r^{p,q} of the twisted Atiyah-Hirzebruch spectral sequence for K(n).
///
/// Entries x v_n^e sit at (|x|, e |v_n|). Everything is K(n)_*-linear, so one
/// strip of columns describes the page; d_r maps (p, q) to (p + r, q - |v_n|).
class Page {
public:
    int n() const noexcept { return n_; }
    int index() const noexcept { return index_; }
    /// Past E_{2^{n+1}} higher differentials are unknown and ranks are upper bounds.
    bool upper_bound() const noexcept { return upper_bound_; }
    bool has_differential() const noexcept { return !differentials_.empty(); }
    int period() const noexcept { return vn_period(n_); }

    const std::vector<PageColumn>& columns() const noexcept { return columns_; }
    const PageColumn& column(int p) const;
    int top() const noexcept { return static_cast<int>(columns_.size()) - 1; }
    /// Rank at (p, q); nullopt off the lattice q = e |v_n| or at an edge-incomplete column.
    std::optional<std::size_t> rank(int p, int q) const;
    /// Matrix of d_{2^{n+1}-1} from (p, q) to (p + r, q - |v_n|); independent of q by K(n)_*-linearity.
    LinearMap differential(int p, int q = 0) const;
    /// Coordinates of e (of degree p) in the column's basis; requires e to lie in its span.
    BitVector coordinates(int p, const Element& e) const;

    friend bool operator==(const Page&, const Page&) = default;

private:
    friend Page e2_page(const SpaceModel&, int);
    friend Page first_differential(const Page&, const SpaceModel&, const TwistClass&);
    friend Page turn_page(const Page&);

    int n_ = 1;
    int index_ = 2;
    bool upper_bound_ = false;
    bool truncated_ = false;
    std::shared_ptr<const Algebra> algebra_;
    std::vector<PageColumn> columns_;
    std::vector<LinearMap> differentials_;  // indexed by source column
};

Page e2_page(const SpaceModel& space, int n);

/// Q_{n-1} ... Q_1 (h), of degree 2^{n+1} - 1; h itself when n = 1.
Element twist_term(const SpaceModel& space, const TwistClass& twist, int n);

/// Cochain-level d(m v^e) = (Q_n(m) + m phi) v^{e-1}; returns the F2 part.
Element apply_differential(const SpaceModel& space, const Element& phi, int n, const Element& m);

/// Fills d_{2^{n+1}-1}; throws inconsistent-action when d^2 != 0.
Page first_differential(const Page& page, const SpaceModel& space, const TwistClass& twist);

/// Homology of the page. Without a differential the page is carried to the next index.
Page turn_page(const Page& page);

/// Per-entry certificate for the integral first differential.
struct IntegralEntry {
    int p = 0;
    Element source;
    /// Mod-2 reduction of the image: Q_n(m) + m phi.
    Element shadow;
    /// Class y with d(m) = beta(y) under the Sq_Z lift of Q_n, when one is used.
    std::optional<Element> pre_bockstein;
    /// Whether the integral image of m vanishes.
    Certainty vanishes = Certainty::unknown;
};

struct IntegralDifferential {
    Page page;
    std::vector<IntegralEntry> entries;
};

/// Mod-2 shadow of the integral differential with beta-certificates. For n >= 2
/// the integral lift of Q_n is taken to be its leading term Sq_Z^{2^{n+1}-1} and the
/// twist term the iterated Sq_Z chain on H, so "yes" is relative to that lift.
IntegralDifferential integral_first_differential(const Page& page, const SpaceModel& space, const TwistClass& twist);

}  // namespace moravak
