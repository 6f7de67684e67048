#pragma once

#include "moravak/algebra.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

namespace moravak {

/// Sq^i values on generators: generator name -> i -> value. Entries left out
/// default to the unstable axioms: Sq^0 g = g, Sq^|g| g = g^2, zero otherwise.
using SqTable = std::map<std::string, std::map<int, Element>>;

/// Steenrod squares on a presented algebra, Cartan-extended from a generator table.
///
/// A table only becomes usable once validated against the unstable axioms and
/// the relations of the algebra (Sq^i(r) = 0 for every relation r).
class SteenrodAction {
public:
    enum class Status { unchecked, validated, trusted };

    /// Builds and validates; throws invalid-action naming the violated axiom.
    static SteenrodAction load(std::shared_ptr<const Algebra> algebra, const SqTable& table);
    /// Builds without validation. Operations refuse an unchecked action.
    static SteenrodAction unchecked(std::shared_ptr<const Algebra> algebra, const SqTable& table);
    /// Builds without validation but allows operations. Meant for fault injection.
    static SteenrodAction trusted(std::shared_ptr<const Algebra> algebra, const SqTable& table);

    /// Returns a validated copy or throws invalid-action.
    SteenrodAction validated() const;

    const Algebra& algebra() const noexcept { return *algebra_; }
    const std::shared_ptr<const Algebra>& algebra_ptr() const noexcept { return algebra_; }
    Status status() const noexcept { return status_; }
    const SqTable& table() const noexcept { return table_; }
    /// Sq^i of the generator with the given index.
    const Element& on_generator(std::size_t g, int i) const;

    Element sq(int i, const Element& e) const;
    /// Applies Sq^{word[0]} first, then Sq^{word[1]}, and so on.
    Element apply_word(const std::vector<int>& word, const Element& e) const;

    friend bool operator==(const SteenrodAction& a, const SteenrodAction& b)
    {
        return *a.algebra_ == *b.algebra_ && a.generator_table_ == b.generator_table_;
    }

private:
    SteenrodAction(std::shared_ptr<const Algebra> algebra, const SqTable& table, Status status);
    void require_usable() const;
    const Element& total_square(const Monomial& m) const;

    std::shared_ptr<const Algebra> algebra_;
    SqTable table_;
    std::vector<std::vector<Element>> generator_table_;
    Status status_;

    struct Cache {
        std::mutex mutex;
        std::map<Monomial, Element> total;
    };
    std::shared_ptr<Cache> cache_ = std::make_shared<Cache>();
};

/// Words (in application order) whose sum is the Milnor primitive Q_j, built by
/// Q_0 = Sq^1, Q_{j+1} = Sq^{2^{j+1}} Q_j + Q_j Sq^{2^{j+1}} with mod-2 cancellation.
/// The exponent 2^{j+1} is the one that gives Q_j degree 2^{j+1} - 1.
std::vector<std::vector<int>> milnor_words(int j);

Element milnor_q(int j, const Element& e, const SteenrodAction& action);

/// Whether Q_j(ab) = Q_j(a) b + a Q_j(b).
bool check_derivation(int j, const Element& a, const Element& b, const SteenrodAction& action);

/// Failures of Sq^1 Sq^1 = 0 and Sq^1 Sq^2 = Sq^3 on basis elements of degree <= cap - 3.
std::vector<std::string> adem_spot_check(const SteenrodAction& action);

enum class Certainty { yes, no, unknown };
const char* to_string(Certainty c);

/// Subspace of mod-2 classes declared to be reductions of integral classes.
class IntegralityData {
public:
    /// The image is the subring generated by `spanning`; Sq^1 must vanish on it.
    IntegralityData(const SteenrodAction& action, std::vector<Element> spanning);

    const std::vector<Element>& spanning() const noexcept { return spanning_; }
    /// Whether every homogeneous component of e lies in the declared image.
    bool contains(const Element& e) const;
    std::size_t dim(int d) const;

    friend bool operator==(const IntegralityData& a, const IntegralityData& b)
    {
        return a.spanning_ == b.spanning_;
    }

private:
    std::shared_ptr<const Algebra> algebra_;
    std::vector<Element> spanning_;
    std::map<int, Echelon> image_;
};

/// Mod-2 shadow of an integral class beta(y) with a vanishing verdict.
struct IntegralShadow {
    Element representative;
    Certainty vanishes = Certainty::unknown;
};

/// beta(y): representative Sq^1 y; vanishes when y is a reduction of an integral class.
IntegralShadow bockstein(const Element& y, const SteenrodAction& action, const IntegralityData& integ);

/// Sq_Z^{2k+1} = beta Sq^{2k} on the reduction e of an integral class.
IntegralShadow sq_z(int k, const Element& e, const SteenrodAction& action, const IntegralityData& integ);

}  // namespace moravak
