#pragma once

#include "moravak/ahss.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace moravak {

/// Mod-2 data of a manifold X together with the characteristic classes the
/// orientation checks need.
struct ManifoldData {
    SpaceModel space;
    int dimension = 0;
    /// Stiefel-Whitney classes w_i by index. Classes forced to vanish by the
    /// flags or by dimension may be left out.
    std::map<int, Element> sw;
    /// Mod-2 representative of the first Spin class; must agree with w_4.
    Element lambda;
    /// Evaluation against [X] on the basis of H^dimension.
    BitVector pairing;
    bool closed = true;
    bool oriented = false;
    bool spin = false;
    bool string = false;

    /// Throws invalid-manifold naming the violated condition.
    void validate() const;
    /// w_i, using flags and dimension for classes that are left out.
    Element w(int i) const;
    /// Whether w_4 = 0 is known (string, or declared zero).
    bool w4_zero() const;
    /// <e, [X]> on the top-degree component of e.
    bool evaluate(const Element& e) const;
};

/// Which classes may be dropped from a Wu expansion.
struct WuAssumptions {
    bool oriented = false;
    bool spin = false;
    bool w4_zero = false;

    /// Whether w_k is forced to vanish: w_1 when oriented, w_2 and w_3 when spin,
    /// w_4 and w_5 once w_4 = 0, and also w_6 and w_7 when spin as well.
    bool vanishes(int k) const;
};

/// The product w_a w_b, with w_0 = 1.
struct WuTerm {
    int a = 0;
    int b = 0;

    friend bool operator==(const WuTerm&, const WuTerm&) = default;
};

/// Sq^i w_j = sum_t C(j - i + t - 1, t) w_{i-t} w_{j+t}, with terms in increasing t
/// and classes known to vanish dropped.
std::vector<WuTerm> wu_expansion(int i, int j, const WuAssumptions& assumptions = {});
std::string format_wu(const std::vector<WuTerm>& terms);

/// Sq^i w_j evaluated in the manifold through the Wu expansion.
Element wu_sq(const ManifoldData& m, int i, int j);

/// W_{2k+1} = beta(w_{2k}): representative Sq^1 w_{2k} and its vanishing verdict.
IntegralShadow integral_sw(const ManifoldData& m, int odd);

enum class Verdict { oriented, obstructed, undecided };
const char* to_string(Verdict v);

struct ObstructionReport {
    Verdict verdict = Verdict::undecided;
    /// Mod-2 shadow of the integral obstruction class.
    Element obstruction;
    /// Class y with obstruction = beta(y).
    Element pre_bockstein;
    Certainty vanishes = Certainty::unknown;
    std::vector<std::string> warnings;
};

/// W_7 + Sq_Z^3 H_4 = beta(w_6 + Sq^2 h) with h integral of degree 4.
ObstructionReport twisted_string_check(const ManifoldData& m, const TwistClass& h4);

struct HeteroticReport {
    ObstructionReport obstruction;
    /// Mod-2 Sq^3 a; the hypothesis asks for zero.
    Element sq3_a;
    bool hypotheses_hold = true;
    std::vector<std::string> failed_hypotheses;
};

/// Requires a + b = lambda; the obstruction is W_7 + Sq_Z^3 b.
HeteroticReport heterotic_check(const ManifoldData& m, const Element& a, const Element& b);

struct FivebraneReport {
    ObstructionReport obstruction;
    /// Mod-2 shadow of Sq_Z^3 h_5.
    Element alpha8;
    /// Q_2 Q_1 h_5 and Sq^7 Sq^3 h_5, which agree when Sq^1 h_5 = 0.
    Element q2q1;
    Element sq7sq3;
};

/// W_15 + Sq_Z^7 alpha_8 = beta(w_14 + Sq^6 alpha_8) with alpha_8 = Sq_Z^3 h_5.
FivebraneReport fivebrane_check(const ManifoldData& m, const Element& h5);

/// Mod-2 index function on H^4, indexed by the coordinate bits of a class in basis(4).
class IndexTable {
public:
    IndexTable() = default;
    /// values.size() must be 2^rank.
    IndexTable(std::size_t rank, std::vector<bool> values);

    std::size_t rank() const noexcept { return rank_; }
    const std::vector<bool>& values() const noexcept { return values_; }
    bool at(const BitVector& coords) const;

private:
    std::size_t rank_ = 0;
    std::vector<bool> values_;
};

/// Whether f(a + a2) = f(a) + f(a2) + <a Sq^2 a2, [X]>.
bool quadratic_refinement_check(const ManifoldData& m, const IndexTable& f, const Element& a, const Element& a2);
/// Some pair violating the refinement, if any.
std::optional<std::pair<Element, Element>> refinement_failure(const ManifoldData& m, const IndexTable& f);

struct PhaseReport {
    bool f_a = false;
    /// f(2b) = <b Sq^2 lambda>.
    bool f_2b = false;
    /// <b Sq^2 a>.
    bool cross_term = false;
    /// f(a + 3b) = f(a) + f(2b) + <b Sq^2 a>.
    bool f_a_plus_3b = false;
    bool invariant = false;
    /// Sq^3 lambda + Sq^3 a = 0 mod 2.
    bool sufficient_condition = false;
    /// W_7 + Sq_Z^3 a, the orientation condition behind the sufficient condition.
    ObstructionReport orientation;
    std::vector<std::string> warnings;
};

/// Phase change of the partition function under a -> a + 3b for torsion b with f(b) = 0.
PhaseReport phase_invariance_check(const ManifoldData& m, const IndexTable& f, const Element& a,
                                   const Element& b, bool b_torsion = true);

/// Boundary data for (X, A). An absent boundary means A is empty.
struct RelativePair {
    std::optional<SpaceModel> boundary;
    /// Restriction H*(X) -> H*(A).
    std::optional<AlgebraMap> restriction;
    /// Images in H*(X) of the relative Stiefel-Whitney classes; each restricts to 0 on A.
    std::map<int, Element> relative_sw;
};

/// W_7(X, A) + Sq^3 H_4 with H_4 relative. Relative classes are handled through
/// their images in H*(X), which is injective in degree 7 when H^6(X) -> H^6(A) is onto.
ObstructionReport relative_obstruction(const ManifoldData& m, const RelativePair& pair, const TwistClass& h4);

}  // namespace moravak
