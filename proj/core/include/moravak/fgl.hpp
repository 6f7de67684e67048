#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace moravak {

/// Coefficient ring Z/2^s; s = 1 is F2.
class Modulus {
public:
    explicit Modulus(int s = 1);
    int bits() const noexcept { return bits_; }
    std::uint64_t value() const noexcept { return std::uint64_t{1} << bits_; }
    std::uint64_t reduce(std::int64_t c) const;
    bool characteristic_two() const noexcept { return bits_ == 1; }

    friend bool operator==(const Modulus&, const Modulus&) = default;

private:
    int bits_;
};

/// One-variable power series over Z/2^s keeping degrees 0..T.
class PowerSeries {
public:
    PowerSeries(Modulus mod, int truncation);
    static PowerSeries monomial(Modulus mod, int truncation, int degree, std::int64_t coeff = 1);

    const Modulus& modulus() const noexcept { return mod_; }
    int truncation() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
    std::uint64_t operator[](int i) const;
    void set(int i, std::int64_t c);
    const std::vector<std::uint64_t>& coefficients() const noexcept { return coeffs_; }

    PowerSeries operator+(const PowerSeries& other) const;
    PowerSeries operator-(const PowerSeries& other) const;
    PowerSeries operator*(const PowerSeries& other) const;
    /// this(inner(x)); inner must have zero constant term.
    PowerSeries compose(const PowerSeries& inner) const;
    /// Compositional inverse of x + (higher terms).
    PowerSeries inverse() const;
    /// Lowest degree with a nonzero coefficient.
    std::optional<int> order() const;
    std::string format(const std::string& var = "x") const;

    friend bool operator==(const PowerSeries&, const PowerSeries&) = default;

private:
    Modulus mod_;
    std::vector<std::uint64_t> coeffs_;
};

/// Two-variable power series c_{ij} y^i z^j over Z/2^s keeping total degree <= T.
class Series2 {
public:
    Series2(Modulus mod, int truncation);

    const Modulus& modulus() const noexcept { return mod_; }
    int truncation() const noexcept { return truncation_; }
    std::uint64_t at(int i, int j) const;
    void set(int i, int j, std::int64_t c);

    Series2 operator+(const Series2& other) const;
    Series2 operator*(const Series2& other) const;
    /// Substitutes a(y) for y and b(z) for z.
    static Series2 outer(const PowerSeries& a, const PowerSeries& b);
    /// f(this(y, z)), with f read as a polynomial of degree <= T.
    Series2 substitute_into(const PowerSeries& f) const;
    std::string format() const;

    friend bool operator==(const Series2&, const Series2&) = default;

private:
    Modulus mod_;
    int truncation_;
    std::vector<std::uint64_t> coeffs_;  // (i, j) at i * (T + 1) + j
};

/// Formal group law F(y, z) over Z/2^s, validated for unitality, commutativity and
/// associativity up to total degree T.
class FGL {
public:
    static constexpr int default_truncation = 16;

    /// Throws invalid-fgl naming the first failing axiom.
    explicit FGL(Series2 coefficients);

    static FGL multiplicative(Modulus mod = Modulus(1), int truncation = default_truncation);
    static FGL additive(Modulus mod = Modulus(1), int truncation = default_truncation);

    const Series2& coefficients() const noexcept { return coeffs_; }
    const Modulus& modulus() const noexcept { return coeffs_.modulus(); }
    int truncation() const noexcept { return coeffs_.truncation(); }

    /// F(a(x), b(x)).
    PowerSeries add(const PowerSeries& a, const PowerSeries& b) const;
    /// Left fold a_1 +_F a_2 +_F ...
    PowerSeries sum(const std::vector<PowerSeries>& terms) const;

    friend bool operator==(const FGL&, const FGL&) = default;

private:
    Series2 coeffs_;
};

/// [2](x) = F(x, x).
PowerSeries two_series(const FGL& f);

/// theta_0 is the linear coefficient of the target; theta_i for i >= 1 solves
/// sum^F theta_i x^{2^i} = target.
struct ThetaAssignment {
    std::uint64_t linear = 0;
    std::vector<std::uint64_t> theta;  // theta[i - 1] = theta_i

    std::uint64_t at(int i) const;
};

/// Solves degree by degree; throws not-2-typical with the offending degree.
ThetaAssignment solve_theta_for(const FGL& f, const PowerSeries& target, int count);
ThetaAssignment solve_theta(const FGL& f, int count);
/// sum^F theta_i x^{2^i} with the linear term theta_0 x.
PowerSeries series_from_theta(const FGL& f, const ThetaAssignment& theta);

struct Height {
    int value = 0;
    /// [2](x) vanished through the truncation; value is then a lower bound.
    bool lower_bound = false;
};

/// Height from the leading exponent 2^h of [2](x); requires characteristic 2.
Height height(const FGL& f);

/// Whether alpha(F(y, z)) = alpha(y) alpha(z).
bool grouplike_check(const PowerSeries& alpha, const FGL& f);

/// The law g(F(g^{-1}(y), g^{-1}(z))) for g(x) = x + (higher terms).
FGL change_coordinates(const FGL& f, const PowerSeries& g);

}  // namespace moravak
