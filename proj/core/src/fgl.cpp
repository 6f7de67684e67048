#include "moravak/fgl.hpp"

#include "moravak/error.hpp"

#include <fmt/core.h>

namespace moravak {

// Arithmetic is done in uint64_t with wrap-around and masked afterwards;
// since 2^s divides 2^64 this is exact modulo 2^s.

Modulus::Modulus(int s) : bits_(s)
{
    if (s < 1 || s > 62)
        throw Error(ErrorKind::invalid_fgl, fmt::format("coefficient ring Z/2^{} is not supported", s));
}

std::uint64_t Modulus::reduce(std::int64_t c) const
{
    return static_cast<std::uint64_t>(c) & (value() - 1);
}

PowerSeries::PowerSeries(Modulus mod, int truncation) : mod_(mod)
{
    if (truncation < 1)
        throw Error(ErrorKind::invalid_fgl, fmt::format("truncation {} must be positive", truncation));
    coeffs_.assign(static_cast<std::size_t>(truncation) + 1, 0);
}

PowerSeries PowerSeries::monomial(Modulus mod, int truncation, int degree, std::int64_t coeff)
{
    PowerSeries s(mod, truncation);
    s.set(degree, coeff);
    return s;
}

std::uint64_t PowerSeries::operator[](int i) const
{
    if (i < 0 || i > truncation())
        return 0;
    return coeffs_[i];
}

void PowerSeries::set(int i, std::int64_t c)
{
    if (i < 0)
        throw Error(ErrorKind::invalid_fgl, fmt::format("negative exponent {}", i));
    if (i <= truncation())
        coeffs_[i] = mod_.reduce(c);
}

PowerSeries PowerSeries::operator+(const PowerSeries& other) const
{
    PowerSeries out = *this;
    for (int i = 0; i <= truncation(); ++i)
        out.coeffs_[i] = mod_.reduce(static_cast<std::int64_t>(coeffs_[i] + other[i]));
    return out;
}

PowerSeries PowerSeries::operator-(const PowerSeries& other) const
{
    PowerSeries out = *this;
    for (int i = 0; i <= truncation(); ++i)
        out.coeffs_[i] = mod_.reduce(static_cast<std::int64_t>(coeffs_[i] - other[i]));
    return out;
}

PowerSeries PowerSeries::operator*(const PowerSeries& other) const
{
    int t = std::min(truncation(), other.truncation());
    PowerSeries out(mod_, t);
    for (int i = 0; i <= t; ++i) {
        if (coeffs_[i] == 0)
            continue;
        for (int j = 0; i + j <= t; ++j)
            out.coeffs_[i + j] += coeffs_[i] * other.coeffs_[j];
    }
    for (auto& c : out.coeffs_)
        c = mod_.reduce(static_cast<std::int64_t>(c));
    return out;
}

PowerSeries PowerSeries::compose(const PowerSeries& inner) const
{
    if (inner[0] != 0)
        throw Error(ErrorKind::invalid_fgl, "inner series of a composition needs zero constant term");
    // Horner: c_0 + inner (c_1 + inner (c_2 + ...)).
    int t = std::min(truncation(), inner.truncation());
    PowerSeries out(mod_, t);
    for (int k = truncation(); k >= 0; --k) {
        out = out * inner;
        out.set(0, static_cast<std::int64_t>(out[0] + coeffs_[k]));
    }
    return out;
}

PowerSeries PowerSeries::inverse() const
{
    if (coeffs_[0] != 0 || (*this)[1] != 1)
        throw Error(ErrorKind::invalid_fgl, "only series x + (higher terms) are inverted");
    PowerSeries h = monomial(mod_, truncation(), 1);
    for (int d = 2; d <= truncation(); ++d) {
        auto err = compose(h)[d];
        h.set(d, static_cast<std::int64_t>(h[d] - err));
    }
    return h;
}

std::optional<int> PowerSeries::order() const
{
    for (int i = 0; i <= truncation(); ++i)
        if (coeffs_[i] != 0)
            return i;
    return std::nullopt;
}

std::string PowerSeries::format(const std::string& var) const
{
    std::string out;
    for (int i = 0; i <= truncation(); ++i) {
        auto c = coeffs_[i];
        if (c == 0)
            continue;
        if (!out.empty())
            out += " + ";
        std::string mono = i == 0 ? "" : (i == 1 ? var : fmt::format("{}^{}", var, i));
        if (i == 0)
            out += fmt::format("{}", c);
        else if (c == 1)
            out += mono;
        else
            out += fmt::format("{}*{}", c, mono);
    }
    return out.empty() ? "0" : out;
}

Series2::Series2(Modulus mod, int truncation) : mod_(mod), truncation_(truncation)
{
    if (truncation < 1)
        throw Error(ErrorKind::invalid_fgl, fmt::format("truncation {} must be positive", truncation));
    coeffs_.assign(static_cast<std::size_t>(truncation + 1) * (truncation + 1), 0);
}

std::uint64_t Series2::at(int i, int j) const
{
    if (i < 0 || j < 0 || i + j > truncation_)
        return 0;
    return coeffs_[static_cast<std::size_t>(i) * (truncation_ + 1) + j];
}

void Series2::set(int i, int j, std::int64_t c)
{
    if (i < 0 || j < 0)
        throw Error(ErrorKind::invalid_fgl, fmt::format("negative exponent in y^{} z^{}", i, j));
    if (i + j <= truncation_)
        coeffs_[static_cast<std::size_t>(i) * (truncation_ + 1) + j] = mod_.reduce(c);
}

Series2 Series2::operator+(const Series2& other) const
{
    Series2 out(mod_, truncation_);
    for (int i = 0; i <= truncation_; ++i)
        for (int j = 0; i + j <= truncation_; ++j)
            out.set(i, j, static_cast<std::int64_t>(at(i, j) + other.at(i, j)));
    return out;
}

Series2 Series2::operator*(const Series2& other) const
{
    int t = truncation_;
    Series2 out(mod_, t);
    for (int i = 0; i <= t; ++i)
        for (int j = 0; i + j <= t; ++j) {
            auto c = at(i, j);
            if (c == 0)
                continue;
            for (int a = 0; i + j + a <= t; ++a)
                for (int b = 0; i + j + a + b <= t; ++b) {
                    auto d = other.at(a, b);
                    if (d != 0)
                        out.coeffs_[static_cast<std::size_t>(i + a) * (t + 1) + j + b] += c * d;
                }
        }
    for (auto& c : out.coeffs_)
        c = mod_.reduce(static_cast<std::int64_t>(c));
    return out;
}

Series2 Series2::outer(const PowerSeries& a, const PowerSeries& b)
{
    int t = std::min(a.truncation(), b.truncation());
    Series2 out(a.modulus(), t);
    for (int i = 0; i <= t; ++i)
        for (int j = 0; i + j <= t; ++j)
            out.set(i, j, static_cast<std::int64_t>(a[i] * b[j]));
    return out;
}

Series2 Series2::substitute_into(const PowerSeries& f) const
{
    Series2 out(mod_, truncation_);
    Series2 power(mod_, truncation_);
    power.set(0, 0, 1);
    for (int k = 0; k <= f.truncation(); ++k) {
        if (f[k] != 0)
            for (int i = 0; i <= truncation_; ++i)
                for (int j = 0; i + j <= truncation_; ++j)
                    out.set(i, j, static_cast<std::int64_t>(out.at(i, j) + f[k] * power.at(i, j)));
        power = power * *this;
    }
    return out;
}

std::string Series2::format() const
{
    std::string out;
    for (int d = 0; d <= truncation_; ++d)
        for (int i = d; i >= 0; --i) {
            int j = d - i;
            auto c = at(i, j);
            if (c == 0)
                continue;
            std::string mono;
            if (i > 0)
                mono += i == 1 ? "y" : fmt::format("y^{}", i);
            if (j > 0)
                mono += (mono.empty() ? "" : "*") + (j == 1 ? std::string("z") : fmt::format("z^{}", j));
            if (!out.empty())
                out += " + ";
            if (mono.empty())
                out += fmt::format("{}", c);
            else if (c == 1)
                out += mono;
            else
                out += fmt::format("{}*{}", c, mono);
        }
    return out.empty() ? "0" : out;
}

FGL::FGL(Series2 coefficients) : coeffs_(std::move(coefficients))
{
    const auto& c = coeffs_;
    int t = c.truncation();
    for (int i = 0; i <= t; ++i) {
        if (c.at(i, 0) != (i == 1 ? 1u : 0u) || c.at(0, i) != (i == 1 ? 1u : 0u))
            throw Error(ErrorKind::invalid_fgl, fmt::format("unitality fails: F(y, 0) != y at degree {}", i));
    }
    for (int i = 0; i <= t; ++i)
        for (int j = 0; i + j <= t; ++j)
            if (c.at(i, j) != c.at(j, i))
                throw Error(ErrorKind::invalid_fgl,
                            fmt::format("commutativity fails: c({},{}) != c({},{})", i, j, j, i));
    // P_k = F^k as a series in two variables; F(F(y,z),w) and F(y,F(z,w)) are read off from them.
    std::vector<Series2> powers;
    Series2 p(modulus(), t);
    p.set(0, 0, 1);
    for (int k = 0; k <= t; ++k) {
        powers.push_back(p);
        p = p * c;
    }
    for (int a = 0; a <= t; ++a)
        for (int b = 0; a + b <= t; ++b)
            for (int w = 0; a + b + w <= t; ++w) {
                std::uint64_t lhs = 0, rhs = 0;
                for (int k = 0; k <= t; ++k) {
                    lhs += c.at(k, w) * powers[k].at(a, b);
                    rhs += c.at(a, k) * powers[k].at(b, w);
                }
                if (modulus().reduce(static_cast<std::int64_t>(lhs - rhs)) != 0)
                    throw Error(ErrorKind::invalid_fgl,
                                fmt::format("associativity fails at y^{} z^{} w^{}", a, b, w));
            }
}

FGL FGL::multiplicative(Modulus mod, int truncation)
{
    Series2 c(mod, truncation);
    c.set(1, 0, 1);
    c.set(0, 1, 1);
    c.set(1, 1, 1);
    return FGL(c);
}

FGL FGL::additive(Modulus mod, int truncation)
{
    Series2 c(mod, truncation);
    c.set(1, 0, 1);
    c.set(0, 1, 1);
    return FGL(c);
}

PowerSeries FGL::add(const PowerSeries& a, const PowerSeries& b) const
{
    if (a[0] != 0 || b[0] != 0)
        throw Error(ErrorKind::invalid_fgl, "formal sums need series with zero constant term");
    int t = std::min({truncation(), a.truncation(), b.truncation()});
    std::vector<PowerSeries> pa, pb;
    PowerSeries one = PowerSeries::monomial(modulus(), t, 0);
    pa.push_back(one);
    pb.push_back(one);
    for (int k = 1; k <= t; ++k) {
        pa.push_back(pa.back() * a);
        pb.push_back(pb.back() * b);
    }
    PowerSeries out(modulus(), t);
    for (int i = 0; i <= t; ++i)
        for (int j = 0; i + j <= t; ++j) {
            auto c = coeffs_.at(i, j);
            if (c != 0)
                out = out + PowerSeries::monomial(modulus(), t, 0, static_cast<std::int64_t>(c)) * pa[i] * pb[j];
        }
    return out;
}

PowerSeries FGL::sum(const std::vector<PowerSeries>& terms) const
{
    PowerSeries acc(modulus(), truncation());
    for (const auto& s : terms)
        acc = add(acc, s);
    return acc;
}

PowerSeries two_series(const FGL& f)
{
    int t = f.truncation();
    PowerSeries out(f.modulus(), t);
    for (int i = 0; i <= t; ++i)
        for (int j = 0; i + j <= t; ++j)
            out.set(i + j, static_cast<std::int64_t>(out[i + j] + f.coefficients().at(i, j)));
    return out;
}

std::uint64_t ThetaAssignment::at(int i) const
{
    if (i == 0)
        return linear;
    if (i < 1 || static_cast<std::size_t>(i) > theta.size())
        return 0;
    return theta[i - 1];
}

ThetaAssignment solve_theta_for(const FGL& f, const PowerSeries& target, int count)
{
    if (count < 0)
        throw Error(ErrorKind::invalid_index, fmt::format("theta count {} is negative", count));
    int t = std::min(f.truncation(), target.truncation());
    const auto& mod = f.modulus();
    auto mismatch = [](int degree) {
        return Error(ErrorKind::not_two_typical,
                     fmt::format("no 2-typical solution: the series disagree in degree {}", degree));
    };
    if (target[0] != 0)
        throw mismatch(0);
    ThetaAssignment out;
    out.linear = target[1];
    PowerSeries sum = PowerSeries::monomial(mod, t, 1, static_cast<std::int64_t>(out.linear));
    int checked = 1;
    auto check_through = [&](int last) {
        for (int d = checked + 1; d <= std::min(last, t); ++d)
            if (sum[d] != target[d])
                throw mismatch(d);
        checked = std::max(checked, std::min(last, t));
    };
    for (int i = 1; i <= count; ++i) {
        int d = 1 << i;
        if (d > t) {
            out.theta.push_back(0);
            continue;
        }
        check_through(d - 1);
        std::uint64_t theta = mod.reduce(static_cast<std::int64_t>(target[d] - sum[d]));
        out.theta.push_back(theta);
        sum = f.add(sum, PowerSeries::monomial(mod, t, d, static_cast<std::int64_t>(theta)));
        checked = d;
    }
    check_through(count >= 62 ? t : std::min<long long>(t, (1LL << (count + 1)) - 1));
    return out;
}

ThetaAssignment solve_theta(const FGL& f, int count)
{
    return solve_theta_for(f, two_series(f), count);
}

PowerSeries series_from_theta(const FGL& f, const ThetaAssignment& theta)
{
    int t = f.truncation();
    std::vector<PowerSeries> terms{PowerSeries::monomial(f.modulus(), t, 1, static_cast<std::int64_t>(theta.linear))};
    for (std::size_t i = 1; i <= theta.theta.size(); ++i) {
        int d = i < 62 ? (1 << i) : t + 1;
        if (d <= t)
            terms.push_back(PowerSeries::monomial(f.modulus(), t, d, static_cast<std::int64_t>(theta.theta[i - 1])));
    }
    return f.sum(terms);
}

Height height(const FGL& f)
{
    if (!f.modulus().characteristic_two())
        throw Error(ErrorKind::invalid_fgl, "height is read off the 2-series in characteristic 2");
    auto order = two_series(f).order();
    if (!order) {
        int h = 0;
        while ((2 << h) <= f.truncation())
            ++h;
        return {h + 1, true};
    }
    int e = *order;
    if ((e & (e - 1)) != 0)
        throw Error(ErrorKind::invalid_fgl, fmt::format("2-series starts in degree {}, not a power of 2", e));
    int h = 0;
    while ((1 << h) < e)
        ++h;
    return {h, false};
}

bool grouplike_check(const PowerSeries& alpha, const FGL& f)
{
    if (alpha[0] != 1)
        throw Error(ErrorKind::not_grouplike, "a grouplike series has constant term 1");
    Series2 lhs = f.coefficients().substitute_into(alpha);
    Series2 rhs = Series2::outer(alpha, alpha);
    int t = std::min(lhs.truncation(), rhs.truncation());
    for (int i = 0; i <= t; ++i)
        for (int j = 0; i + j <= t; ++j)
            if (lhs.at(i, j) != rhs.at(i, j))
                return false;
    return true;
}

FGL change_coordinates(const FGL& f, const PowerSeries& g)
{
    PowerSeries ginv = g.inverse();
    int t = std::min(f.truncation(), g.truncation());
    std::vector<PowerSeries> powers;
    PowerSeries p = PowerSeries::monomial(f.modulus(), t, 0);
    for (int k = 0; k <= t; ++k) {
        powers.push_back(p);
        p = p * ginv;
    }
    Series2 h(f.modulus(), t);
    for (int i = 0; i <= t; ++i)
        for (int j = 0; i + j <= t; ++j) {
            auto c = f.coefficients().at(i, j);
            if (c == 0)
                continue;
            Series2 term = Series2::outer(powers[i], powers[j]);
            for (int a = 0; a <= t; ++a)
                for (int b = 0; a + b <= t; ++b)
                    h.set(a, b, static_cast<std::int64_t>(h.at(a, b) + c * term.at(a, b)));
        }
    return FGL(h.substitute_into(g));
}

}  // namespace moravak
