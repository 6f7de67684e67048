#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace moravak {

/// Truncated power series over F2 in a degree-0 variable y, stored densely
/// as coefficients of y^0 .. y^{length-1}.
class Series {
public:
    explicit Series(std::size_t length = 1) : coeffs_(length, false) {}
    static Series one(std::size_t length);

    std::size_t length() const noexcept { return coeffs_.size(); }
    bool operator[](std::size_t i) const { return i < coeffs_.size() && coeffs_[i]; }
    void set(std::size_t i, bool value);
    void flip(std::size_t i) { coeffs_.at(i) = !coeffs_.at(i); }

    Series operator*(const Series& other) const;
    std::vector<std::size_t> support() const;
    std::string format(const std::string& var = "y") const;

    friend bool operator==(const Series&, const Series&) = default;

private:
    std::vector<bool> coeffs_;
};

/// A twist: the grouplike series prod_i (1 + y^{2^{k_i}}) truncated at y^{2^M}.
class TwistElement {
public:
    static constexpr int default_truncation = 8;

    TwistElement() : TwistElement(std::vector<int>{}, default_truncation) {}
    /// Throws malformed-exponent-list unless the exponents are strictly increasing and below M.
    static TwistElement from_exponents(std::vector<int> exponents, int truncation = default_truncation);
    /// Factors a series into (1 + y^{2^k}) factors; throws not-grouplike when impossible.
    static TwistElement from_series(const Series& series, int truncation);
    static TwistElement universal(int truncation = default_truncation)
    {
        return from_exponents({0}, truncation);
    }

    const std::vector<int>& exponents() const noexcept { return exponents_; }
    int truncation() const noexcept { return truncation_; }
    Series series() const;

    TwistElement operator*(const TwistElement& other) const;

    friend bool operator==(const TwistElement&, const TwistElement&) = default;

private:
    TwistElement(std::vector<int> exponents, int truncation)
        : exponents_(std::move(exponents)), truncation_(truncation)
    {
    }

    std::vector<int> exponents_;
    int truncation_;
};

/// Truncated 2-adic integer.
struct Dyadic {
    std::uint64_t value = 0;
    int truncation = TwistElement::default_truncation;

    friend bool operator==(const Dyadic&, const Dyadic&) = default;
};

Dyadic encode(const TwistElement& f);
TwistElement decode(const Dyadic& d);
Dyadic operator+(const Dyadic& a, const Dyadic& b);

/// Algebra homomorphism on the truncated tensor product of the R(b_k):
/// b_k goes to v_n^{2^k} when hits[k], to 0 otherwise.
struct AlgebraHom {
    int n = 1;
    std::vector<bool> hits;

    int truncation() const noexcept { return static_cast<int>(hits.size()); }
    bool universal() const;
    std::string format() const;

    friend bool operator==(const AlgebraHom&, const AlgebraHom&) = default;
};

AlgebraHom to_algebra_hom(const TwistElement& f, int n, int factors);

enum class TwistVerdict {
    no_nontrivial_twists,
    twist_group_z2,
    odd_prime_trivial,
    /// m < n + 2: no statement is made for this range.
    undetermined,
};

const char* to_string(TwistVerdict v);

/// Twists of K(n) over K(Z, m).
TwistVerdict vanishing_check(int m, int n, int prime = 2);

}  // namespace moravak
