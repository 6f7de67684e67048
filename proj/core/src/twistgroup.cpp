#include "moravak/twistgroup.hpp"

#include "moravak/error.hpp"

#include <fmt/core.h>

namespace moravak {

Series Series::one(std::size_t length)
{
    Series s(length);
    if (length > 0)
        s.coeffs_[0] = true;
    return s;
}

void Series::set(std::size_t i, bool value)
{
    if (i < coeffs_.size())
        coeffs_[i] = value;
}

Series Series::operator*(const Series& other) const
{
    std::size_t n = std::min(length(), other.length());
    Series out(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (!coeffs_[i])
            continue;
        for (std::size_t j = 0; i + j < n; ++j)
            if (other.coeffs_[j])
                out.coeffs_[i + j] = !out.coeffs_[i + j];
    }
    return out;
}

std::vector<std::size_t> Series::support() const
{
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
        if (coeffs_[i])
            out.push_back(i);
    return out;
}

std::string Series::format(const std::string& var) const
{
    std::string out;
    for (auto i : support()) {
        if (!out.empty())
            out += " + ";
        if (i == 0)
            out += "1";
        else if (i == 1)
            out += var;
        else
            out += fmt::format("{}^{}", var, i);
    }
    return out.empty() ? "0" : out;
}

TwistElement TwistElement::from_exponents(std::vector<int> exponents, int truncation)
{
    if (truncation < 1 || truncation > 62)
        throw Error(ErrorKind::malformed_exponent_list, fmt::format("truncation {} out of range", truncation));
    for (std::size_t i = 0; i < exponents.size(); ++i) {
        int k = exponents[i];
        if (k < 0 || k >= truncation)
            throw Error(ErrorKind::malformed_exponent_list,
                        fmt::format("exponent {} outside [0, {})", k, truncation));
        if (i > 0 && exponents[i - 1] >= k)
            throw Error(ErrorKind::malformed_exponent_list, "exponents must be strictly increasing");
    }
    return TwistElement(std::move(exponents), truncation);
}

Series TwistElement::series() const
{
    std::size_t length = std::size_t{1} << truncation_;
    Series s = Series::one(length);
    for (int k : exponents_) {
        Series factor = Series::one(length);
        factor.set(std::size_t{1} << k, true);
        s = s * factor;
    }
    return s;
}

TwistElement TwistElement::from_series(const Series& series, int truncation)
{
    std::size_t length = std::size_t{1} << truncation;
    if (series.length() != length || !series[0])
        throw Error(ErrorKind::not_grouplike, "series must have constant term 1 and length 2^M");
    // Peel off the lowest non-constant term y^j: it must be a power of two,
    // and dividing by 1 + y^j (multiplying by sum_i y^{ij}) removes it.
    std::vector<int> exponents;
    Series rest = series;
    for (;;) {
        auto supp = rest.support();
        if (supp.size() == 1)
            break;
        std::size_t j = supp[1];
        if ((j & (j - 1)) != 0)
            throw Error(ErrorKind::not_grouplike,
                        fmt::format("{} is not a product of factors 1 + y^(2^k)", series.format()));
        Series inverse(length);
        for (std::size_t i = 0; i < length; i += j)
            inverse.set(i, true);
        rest = rest * inverse;
        int k = 0;
        while ((std::size_t{1} << k) < j)
            ++k;
        exponents.push_back(k);
    }
    return TwistElement(std::move(exponents), truncation);
}

TwistElement TwistElement::operator*(const TwistElement& other) const
{
    if (truncation_ != other.truncation_)
        throw Error(ErrorKind::malformed_exponent_list, "twists with different truncations");
    return from_series(series() * other.series(), truncation_);
}

Dyadic encode(const TwistElement& f)
{
    Dyadic d{0, f.truncation()};
    for (int k : f.exponents())
        d.value |= std::uint64_t{1} << k;
    return d;
}

TwistElement decode(const Dyadic& d)
{
    std::vector<int> exponents;
    for (int k = 0; k < d.truncation; ++k)
        if ((d.value >> k) & 1u)
            exponents.push_back(k);
    return TwistElement::from_exponents(std::move(exponents), d.truncation);
}

Dyadic operator+(const Dyadic& a, const Dyadic& b)
{
    if (a.truncation != b.truncation)
        throw Error(ErrorKind::malformed_exponent_list, "dyadics with different truncations");
    std::uint64_t mask = (std::uint64_t{1} << a.truncation) - 1;
    return {(a.value + b.value) & mask, a.truncation};
}

bool AlgebraHom::universal() const
{
    for (std::size_t k = 0; k < hits.size(); ++k)
        if (hits[k] != (k == 0))
            return false;
    return !hits.empty();
}

std::string AlgebraHom::format() const
{
    std::string out;
    for (std::size_t k = 0; k < hits.size(); ++k) {
        if (!out.empty())
            out += ", ";
        if (hits[k])
            out += fmt::format("b{} -> v{}^{}", k, n, std::uint64_t{1} << k);
        else
            out += fmt::format("b{} -> 0", k);
    }
    return out;
}

AlgebraHom to_algebra_hom(const TwistElement& f, int n, int factors)
{
    if (n < 1)
        throw Error(ErrorKind::invalid_index, fmt::format("height {} must be positive", n));
    if (factors < 0)
        throw Error(ErrorKind::invalid_index, fmt::format("factor count {} must be non-negative", factors));
    AlgebraHom hom{n, std::vector<bool>(static_cast<std::size_t>(factors), false)};
    for (int k : f.exponents())
        if (k < factors)
            hom.hits[k] = true;
    return hom;
}

const char* to_string(TwistVerdict v)
{
    switch (v) {
    case TwistVerdict::no_nontrivial_twists: return "no-nontrivial-twists";
    case TwistVerdict::twist_group_z2: return "twist-group-Z2";
    case TwistVerdict::odd_prime_trivial: return "odd-prime-trivial";
    case TwistVerdict::undetermined: return "undetermined";
    }
    return "undetermined";
}

TwistVerdict vanishing_check(int m, int n, int prime)
{
    if (m < 1 || n < 1)
        throw Error(ErrorKind::invalid_index, fmt::format("need m >= 1 and n >= 1, got m={} n={}", m, n));
    if (m > n + 2)
        return TwistVerdict::no_nontrivial_twists;
    if (m == n + 2)
        return prime == 2 ? TwistVerdict::twist_group_z2 : TwistVerdict::odd_prime_trivial;
    return TwistVerdict::undetermined;
}

}  // namespace moravak
