#include "moravak/error.hpp"
#include "moravak/twistgroup.hpp"

#include <doctest.h>

using namespace moravak;

namespace {

// Independent series oracle: (1+y)^d by repeated multiplication, truncated at y^{2^M}.
Series binomial_power(std::uint64_t d, int truncation)
{
    std::size_t length = std::size_t{1} << truncation;
    Series base = Series::one(length);
    base.set(1, true);
    Series out = Series::one(length);
    for (std::uint64_t i = 0; i < d; ++i)
        out = out * base;
    return out;
}

ErrorKind kind_of(auto&& f)
{
    try {
        f();
    }
    catch (const Error& e) {
        return e.kind();
    }
    return ErrorKind::parse;
}

}  // namespace

TEST_CASE("from_exponents")
{
    CHECK(TwistElement::from_exponents({0}, 4).series().format() == "1 + y");
    CHECK(TwistElement::from_exponents({}, 4).series().format() == "1");
    CHECK(TwistElement::from_exponents({0, 1}, 4).series().format() == "1 + y + y^2 + y^3");
    CHECK(kind_of([] { TwistElement::from_exponents({1, 1}, 4); }) == ErrorKind::malformed_exponent_list);
    CHECK(kind_of([] { TwistElement::from_exponents({2, 1}, 4); }) == ErrorKind::malformed_exponent_list);
    CHECK(kind_of([] { TwistElement::from_exponents({4}, 4); }) == ErrorKind::malformed_exponent_list);
    CHECK(kind_of([] { TwistElement::from_exponents({-1}, 4); }) == ErrorKind::malformed_exponent_list);
}

TEST_CASE("multiply")
{
    auto u = TwistElement::universal(4);
    CHECK((u * u).exponents() == std::vector<int>{1});
    CHECK((u * u).series().format() == "1 + y^2");
    auto one = TwistElement::from_exponents({}, 4);
    auto f = TwistElement::from_exponents({0, 2}, 4);
    CHECK(f * one == f);
    CHECK((u * TwistElement::from_exponents({1}, 4)).exponents() == std::vector<int>{0, 1});
    // Carries wrap around at 2^M.
    auto top = TwistElement::from_exponents({3}, 4);
    CHECK((top * top).exponents().empty());
}

TEST_CASE("from_series rejects non-grouplike series")
{
    Series s = Series::one(16);
    s.set(3, true);
    CHECK(kind_of([&] { TwistElement::from_series(s, 4); }) == ErrorKind::not_grouplike);
    CHECK(kind_of([&] { TwistElement::from_series(Series(16), 4); }) == ErrorKind::not_grouplike);
}

TEST_CASE("encode and decode")
{
    CHECK(encode(TwistElement::universal()).value == 1);
    CHECK(encode(TwistElement()).value == 0);
    CHECK(encode(TwistElement::from_exponents({0, 1})).value == 3);
    CHECK(decode({1, 8}) == TwistElement::universal());
    CHECK(decode({0, 8}) == TwistElement());
    CHECK(decode({5, 8}).exponents() == std::vector<int>{0, 2});
    CHECK(decode({5, 8}).series() == binomial_power(5, 8));
}

TEST_CASE("encode is a group isomorphism onto Z/2^M")
{
    for (int m = 1; m <= 8; ++m) {
        std::uint64_t size = std::uint64_t{1} << m;
        for (std::uint64_t d = 0; d < size; ++d) {
            auto f = decode({d, m});
            CHECK(encode(f).value == d);
            CHECK(decode(encode(f)) == f);
        }
    }
    const int m = 8;
    for (std::uint64_t a = 0; a < 64; ++a)
        for (std::uint64_t b = 0; b < 64; ++b) {
            auto f = decode({a, m});
            auto g = decode({b, m});
            auto fg = f * g;
            CHECK(encode(fg) == encode(f) + encode(g));
            CHECK(fg.series() == binomial_power((a + b) % 256, m));
        }
}

TEST_CASE("Frobenius on the universal twist")
{
    const int m = 8;
    auto u = TwistElement::universal(m);
    for (int k = 0; k < m; ++k) {
        Series expected = Series::one(std::size_t{1} << m);
        expected.set(std::size_t{1} << k, true);
        CHECK(binomial_power(std::uint64_t{1} << k, m) == expected);
        auto power = TwistElement::from_exponents({}, m);
        for (std::uint64_t i = 0; i < (std::uint64_t{1} << k); ++i)
            power = power * u;
        CHECK(power.series() == expected);
    }
}

TEST_CASE("to_algebra_hom")
{
    auto u = to_algebra_hom(TwistElement::universal(), 2, 4);
    CHECK(u.universal());
    CHECK(u.format() == "b0 -> v2^1, b1 -> 0, b2 -> 0, b3 -> 0");
    auto trivial = to_algebra_hom(TwistElement(), 2, 4);
    CHECK(trivial.hits == std::vector<bool>(4, false));
    auto k1 = to_algebra_hom(TwistElement::from_exponents({1}), 3, 3);
    CHECK(k1.hits == std::vector<bool>{false, true, false});
    for (std::uint64_t a = 0; a < 32; ++a)
        for (std::uint64_t b = 0; b < 32; ++b) {
            auto hom = to_algebra_hom(decode({a, 8}) * decode({b, 8}), 1, 8);
            std::uint64_t sum = (a + b) % 256;
            for (int k = 0; k < 8; ++k)
                CHECK(hom.hits[k] == (((sum >> k) & 1u) == 1u));
        }
}

TEST_CASE("vanishing_check")
{
    CHECK(vanishing_check(5, 2) == TwistVerdict::no_nontrivial_twists);
    CHECK(vanishing_check(4, 2) == TwistVerdict::twist_group_z2);
    CHECK(vanishing_check(3, 1) == TwistVerdict::twist_group_z2);
    CHECK(vanishing_check(4, 2, 3) == TwistVerdict::odd_prime_trivial);
    CHECK(vanishing_check(6, 2, 3) == TwistVerdict::no_nontrivial_twists);
    CHECK(vanishing_check(2, 2) == TwistVerdict::undetermined);
    CHECK(std::string(to_string(TwistVerdict::twist_group_z2)) == "twist-group-Z2");
}
