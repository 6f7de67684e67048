#pragma once

#include "moravak/bitlinalg.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace moravak {

enum class GeneratorKind { polynomial, exterior, laurent };

const char* to_string(GeneratorKind kind);
GeneratorKind generator_kind_from_string(std::string_view s);

/// A named graded generator. `truncation > 0` marks a power-series variable
/// with g^truncation = 0 (required for degree-0 polynomial generators).
struct Generator {
    std::string name;
    int degree = 0;
    GeneratorKind kind = GeneratorKind::polynomial;
    int truncation = 0;

    friend bool operator==(const Generator&, const Generator&) = default;
};

/// Exponent vector indexed by the owning algebra's generators (sorted by name).
/// Only laurent-unit entries may be negative.
using Monomial = std::vector<int>;

/// Formal F2-sum of monomials in canonical form: sorted, no duplicates.
class Element {
public:
    Element() = default;
    explicit Element(Monomial m) : terms_{std::move(m)} {}
    /// Duplicate monomials cancel pairwise.
    static Element from_terms(std::vector<Monomial> terms);

    const std::vector<Monomial>& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }
    std::size_t size() const noexcept { return terms_.size(); }
    bool contains(const Monomial& m) const;

    Element& operator+=(const Element& other);
    friend Element operator+(Element a, const Element& b) { return a += b; }

    friend bool operator==(const Element&, const Element&) = default;
    friend auto operator<=>(const Element&, const Element&) = default;

private:
    std::vector<Monomial> terms_;
};

/// A finitely presented graded-commutative F2-algebra, truncated above a degree cap.
///
/// Degrees are measured on the non-unit part of a monomial (the laurent unit,
/// if any, does not count against the cap). Each degree of the quotient gets a
/// basis of monomials: the non-pivot monomials of the span of relation multiples
/// lying inside the window, with pivots taken on the largest monomial.
class Algebra {
public:
    Algebra(std::vector<Generator> generators, int degree_cap,
            std::vector<std::string> relations = {});
    Algebra(std::vector<Generator> generators, int degree_cap, std::vector<Element> relations);

    const std::vector<Generator>& generators() const noexcept { return generators_; }
    std::size_t num_generators() const noexcept { return generators_.size(); }
    int degree_cap() const noexcept { return cap_; }
    const std::vector<Element>& relations() const noexcept { return relations_; }
    std::optional<std::size_t> find(std::string_view name) const;
    std::size_t index_of(std::string_view name) const;
    bool has_laurent() const noexcept { return laurent_.has_value(); }
    /// Degree of the laurent unit, 0 when there is none.
    int period() const noexcept { return period_; }

    Element one() const;
    Element generator(std::string_view name) const;
    Element monomial(Monomial m) const;

    int degree(const Monomial& m) const;
    /// Degree of the non-unit part; this is what the cap applies to.
    int filtration(const Monomial& m) const;
    std::optional<int> degree(const Element& e) const;
    bool is_homogeneous(const Element& e) const { return e.is_zero() || degree(e).has_value(); }
    std::vector<int> degrees(const Element& e) const;
    Element component(const Element& e, int d) const;
    /// Highest filtration among the terms of e, or -1 for zero.
    int max_filtration(const Element& e) const;

    /// Throws ill-formed-element when e does not belong to this algebra's monomial space.
    void check(const Element& e) const;

    /// Product without relation reduction; truncation and exterior squares applied.
    Element raw_multiply(const Element& a, const Element& b) const;
    Element multiply(const Element& a, const Element& b) const;
    Element power(const Element& a, int k) const;
    /// Canonical representative modulo the relations.
    Element normal_form(const Element& e) const;
    bool equal(const Element& a, const Element& b) const { return normal_form(a + b).is_zero(); }

    std::vector<Monomial> basis(int d) const;
    std::size_t dim(int d) const;
    /// Coordinates of the degree-d component in basis(d).
    BitVector express(const Element& e, int d) const;
    /// Per-degree coordinates of every nonzero component.
    std::map<int, BitVector> express(const Element& e) const;
    Element from_coordinates(int d, const BitVector& coords) const;
    /// Degrees in which the quotient may be nonzero (non-laurent algebras only).
    std::vector<int> window_degrees() const;

    Element parse(std::string_view text) const;
    std::string format(const Element& e) const;
    std::string format(const Monomial& m) const;

    friend bool operator==(const Algebra& a, const Algebra& b)
    {
        return a.generators_ == b.generators_ && a.cap_ == b.cap_ && a.relations_ == b.relations_;
    }

private:
    struct DegreeData {
        std::vector<Monomial> monomials;
        std::map<Monomial, std::size_t> position;
        Echelon relations;
        std::vector<std::size_t> basis_positions;
        std::vector<int> coordinate;  // position -> basis coordinate, -1 on pivots
    };

    void init_generators(std::vector<Generator> generators);
    void init_relations(std::vector<Element> relations);
    /// Drops the term when it is zero in every quotient (exterior square, truncation).
    bool vanishes(const Monomial& m) const;
    bool in_window(const Monomial& m) const;
    std::vector<Monomial> monomials_of_filtration(int f) const;
    DegreeData build_degree(int window_degree) const;
    /// Maps a degree to its stored window degree and the laurent shift.
    std::pair<int, int> locate(int d) const;
    const DegreeData& data(int d) const;
    BitVector express_component(const Element& homogeneous, int d) const;

    std::vector<Generator> generators_;
    std::map<std::string, std::size_t, std::less<>> by_name_;
    std::optional<std::size_t> laurent_;
    int period_ = 0;
    int cap_ = 0;
    std::vector<Element> relations_;
    std::map<int, DegreeData> degrees_;
};

/// Algebra homomorphism given by images of generators.
class AlgebraMap {
public:
    /// Validates degrees and that relations of the source map to zero.
    AlgebraMap(std::shared_ptr<const Algebra> source, std::shared_ptr<const Algebra> target,
               std::vector<Element> images);

    static AlgebraMap identity(std::shared_ptr<const Algebra> algebra);
    /// The zero map to the zero ring (empty space), sending 1 to 0 as well.
    static AlgebraMap to_zero(std::shared_ptr<const Algebra> source);

    const Algebra& source() const { return *source_; }
    const Algebra& target() const { return *target_; }
    const std::shared_ptr<const Algebra>& target_ptr() const { return target_; }
    bool is_zero_target() const noexcept { return zero_target_; }
    const std::vector<Element>& images() const noexcept { return images_; }

    Element apply(const Element& e) const;
    /// Matrix of the map in degree d between the two bases.
    LinearMap matrix(int d) const;

private:
    AlgebraMap() = default;

    std::shared_ptr<const Algebra> source_;
    std::shared_ptr<const Algebra> target_;
    std::vector<Element> images_;
    bool zero_target_ = false;
};

}  // namespace moravak
