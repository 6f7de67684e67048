#include "moravak/error.hpp"
#include "moravak/rbk.hpp"
#include "rbk_oracle.hpp"
#include "testing.hpp"

#include <doctest.h>

using namespace moravak;
using namespace moravak::testing;

namespace {

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

std::vector<int> random_degrees(std::size_t rank, int period, std::mt19937_64& gen)
{
    // Few residues so blocks have size > 1; several v-shifts per residue.
    std::uniform_int_distribution<int> res(0, 1), shift(-2, 2);
    std::vector<int> out;
    for (std::size_t i = 0; i < rank; ++i)
        out.push_back(2 * res(gen) + shift(gen) * period);
    return out;
}

TensorModule random_tensor_module(int n, int factors, std::mt19937_64& gen)
{
    int period = vn_degree(n);
    std::uniform_int_distribution<std::size_t> rank(1, 4);
    auto degrees = random_degrees(rank(gen), period, gen);
    auto betas = random_commuting_idempotents(degrees, period, factors, gen);
    std::vector<std::vector<std::vector<std::string>>> entries;
    for (int k = 0; k < factors; ++k)
        entries.push_back(entries_of(betas[k], degrees, n, k));
    return TensorModule::from_entries(n, degrees, entries);
}

}  // namespace

TEST_CASE("standard modules")
{
    auto m0 = standard_module(StandardModule::M, 2, 0);
    CHECK(m0.rank() == 1);
    CHECK(m0.entry(0, 0) == "0");
    auto n0 = standard_module(StandardModule::N, 2, 0);
    CHECK(n0.entry(0, 0) == "v");
    auto n2 = standard_module(StandardModule::N, 2, 2);
    CHECK(n2.entry(0, 0) == "v^4");
    auto r0 = standard_module(StandardModule::R, 2, 0);
    CHECK(r0.rank() == 2);
    CHECK(r0.degrees() == std::vector<int>{0, 6});
    CHECK(r0.entry(0, 0) == "0");
    CHECK(r0.entry(0, 1) == "0");
    CHECK(r0.entry(1, 0) == "1");
    CHECK(r0.entry(1, 1) == "v");
    auto parsed = RbkModule::from_entries(2, 0, {0, 6}, {{"0", "0"}, {"1", "v2"}});
    CHECK(parsed == r0);
}

TEST_CASE("module validation")
{
    // Nilpotent b_0: B^2 = 0 != v B.
    CHECK(kind_of([] { RbkModule::from_entries(2, 0, {0, 0}, {{"0", "v"}, {"0", "0"}}); }) ==
          ErrorKind::invalid_module);
    // Wrong v-exponent for the degree of b_1 at height 2.
    CHECK(kind_of([] { RbkModule::from_entries(2, 1, {0}, {{"v"}}); }) == ErrorKind::invalid_module);
    CHECK_NOTHROW(RbkModule::from_entries(2, 1, {0}, {{"v^2"}}));
    // Degrees in different residue classes cannot be joined.
    CHECK(kind_of([] { RbkModule::from_entries(2, 0, {0, 2}, {{"0", "v"}, {"0", "0"}}); }) ==
          ErrorKind::invalid_module);
    CHECK(kind_of([] { RbkModule::from_entries(2, 0, {0}, {{"w"}}); }) == ErrorKind::invalid_module);
    CHECK(kind_of([] { RbkModule::from_entries(2, 0, {0}, {{"v3"}}); }) == ErrorKind::invalid_module);
}

TEST_CASE("tor examples")
{
    auto m0 = standard_module(StandardModule::M, 2, 0);
    auto n0 = standard_module(StandardModule::N, 2, 0);
    CHECK(tor(m0, StandardModule::M, 0).rank() == 1);
    CHECK(tor(n0, StandardModule::M, 0).is_zero());
    CHECK(tor(n0, StandardModule::N, 0).rank() == 1);
    auto r0 = standard_module(StandardModule::R, 2, 0);
    CHECK(tor(r0, StandardModule::M, 0).rank() == 1);
    CHECK(tor(r0, StandardModule::N, 0).rank() == 1);
    CHECK(kind_of([&] { tor(m0, StandardModule::M, -1); }) == ErrorKind::invalid_index);
    for (int i = 1; i <= 4; ++i) {
        CHECK(tor(m0, StandardModule::M, i).is_zero());
        CHECK(tor(n0, StandardModule::M, i).is_zero());
        CHECK(tor(r0, StandardModule::N, i).is_zero());
    }
}

TEST_CASE("flatness on random modules against the dense oracle")
{
    auto gen = rng(21);
    int modules = 0;
    for (int rep = 0; rep < 60; ++rep) {
        int n = 1 + rep % 3;
        int k = rep % 3;
        int period = vn_degree(n);
        std::uniform_int_distribution<std::size_t> rank(1, 4);
        DenseModule dm{n, k, random_degrees(rank(gen), period, gen), {}};
        auto beta = random_commuting_idempotents(dm.degrees, period, 1, gen)[0];
        dm.entries = entries_of(beta, dm.degrees, n, k);
        auto p = RbkModule::from_entries(n, k, dm.degrees, dm.entries);
        for (auto which : {StandardModule::M, StandardModule::N}) {
            bool is_n = which == StandardModule::N;
            for (int i = 0; i <= 4; ++i) {
                auto t = tor(p, which, i);
                if (i > 0)
                    CHECK(t.is_zero());
                for (int res = 0; res < period; ++res)
                    CHECK(t.rank_in(res) == dense_tor(dm, is_n, i, res + 3 * period));
            }
            // Periodicity of the resolution: levels i and i + 2 carry the same map.
            CHECK(tor(p, which, 1) == tor(p, which, 3));
            CHECK(tor(p, which, 2) == tor(p, which, 4));
        }
        ++modules;
    }
    CHECK(modules >= 50);
}

TEST_CASE("dense oracle on the standard modules")
{
    DenseModule m0{2, 0, {0}, {{"0"}}};
    DenseModule n0{2, 0, {0}, {{"v"}}};
    CHECK(dense_tor(m0, false, 0, 0) == 1);
    CHECK(dense_tor(m0, false, 0, 6) == 1);
    CHECK(dense_tor(m0, false, 0, 1) == 0);
    CHECK(dense_tor(n0, false, 0, 0) == 0);
    CHECK(dense_tor(n0, true, 0, 0) == 1);
    CHECK(dense_tor(m0, true, 1, 0) == 0);
    DenseModule bad{2, 1, {0}, {{"v"}}};
    CHECK_THROWS(dense_tor(bad, false, 0, 0));
}

TEST_CASE("tensor modules")
{
    LinearMap a(2, 2), b(2, 2);
    a.set(0, 0);
    b.set(0, 0);
    b.set(0, 1);
    CHECK(kind_of([&] { TensorModule::create(2, {0, 0}, {a, b}); }) == ErrorKind::invalid_tensor_module);
    LinearMap c(2, 2);
    c.set(0, 1);
    CHECK(kind_of([&] { TensorModule::create(2, {0, 0}, {c}); }) == ErrorKind::invalid_module);
    auto t = TensorModule::create(2, {0, 0}, {a, a});
    CHECK(t.factors() == 2);
    CHECK(t.factor(5).beta().is_zero());
}

TEST_CASE("bar_e2 examples")
{
    auto universal = to_algebra_hom(TwistElement::universal(), 2, TensorModule::default_factors);
    auto r0 = standard_module(StandardModule::R, 2, 0);
    auto free = TensorModule::from_factor(r0);
    auto e2 = bar_e2(free, universal);
    CHECK(e2.size() == 5);
    CHECK(e2[0].rank() == 1);
    for (std::size_t h = 1; h < e2.size(); ++h)
        CHECK(e2[h].is_zero());

    auto point = TensorModule::from_factor(standard_module(StandardModule::M, 2, 0));
    auto e2p = bar_e2(point, universal);
    for (const auto& entry : e2p)
        CHECK(entry.is_zero());

    auto trivial = to_algebra_hom(TwistElement(), 2, TensorModule::default_factors);
    auto e2t = bar_e2(point, trivial);
    CHECK(e2t[0].rank() == 1);

    CHECK(kind_of([&] { bar_e2(point, to_algebra_hom(TwistElement(), 2, 3)); }) ==
          ErrorKind::invalid_tensor_module);
}

TEST_CASE("khorami quotient")
{
    for (int n = 1; n <= 3; ++n) {
        auto point = TensorModule::from_factor(standard_module(StandardModule::M, n, 0));
        CHECK(khorami_quotient(point).is_zero());
    }
    auto v_identity = TensorModule::create(2, {0, 2, 6}, {LinearMap::identity(3)});
    CHECK(khorami_quotient(v_identity).rank() == 3);
    CHECK(khorami_quotient(v_identity).degrees == std::vector<int>{0, 0, 2});
    auto r0 = TensorModule::from_factor(standard_module(StandardModule::R, 2, 0));
    CHECK(khorami_quotient(r0).rank() == 1);
    CHECK(khorami_quotient(r0).format() == "K(2)_*{0}");
}

TEST_CASE("khorami quotient matches bar_e2 and higher entries vanish")
{
    auto gen = rng(22);
    for (int rep = 0; rep < 60; ++rep) {
        int n = 1 + rep % 3;
        int factors = 1 + rep % 4;
        auto p = random_tensor_module(n, factors, gen);
        auto hom = to_algebra_hom(TwistElement::universal(), n, factors);
        auto e2 = bar_e2(p, hom, 3);
        CHECK(e2[0] == khorami_quotient(p));
        for (std::size_t h = 1; h < e2.size(); ++h)
            CHECK(e2[h].is_zero());
        // Any other twist is also flat.
        auto other = to_algebra_hom(decode({static_cast<std::uint64_t>(rep % 16), 8}), n, factors);
        auto e2o = bar_e2(p, other, 2);
        for (std::size_t h = 1; h < e2o.size(); ++h)
            CHECK(e2o[h].is_zero());
    }
}
