#pragma once

// Small cohomology models shared by the test suites.

#include "moravak/ahss.hpp"
#include "moravak/obstruct.hpp"

#include <memory>
#include <string>
#include <vector>

namespace moravak::testing {

inline std::shared_ptr<const Algebra> make_algebra(std::vector<Generator> gens, int cap,
                                                   std::vector<std::string> relations = {})
{
    return std::make_shared<Algebra>(std::move(gens), cap, std::move(relations));
}

inline SqTable table(const Algebra& a, const std::vector<std::tuple<std::string, int, std::string>>& entries)
{
    SqTable t;
    for (const auto& [g, i, value] : entries)
        t[g][i] = a.parse(value);
    return t;
}

inline SpaceModel point_space()
{
    auto a = make_algebra({}, 0);
    return SpaceModel{a, SteenrodAction::load(a, {}), IntegralityData(SteenrodAction::load(a, {}), {}), 0, false};
}

/// S^3 = Lambda(h), |h| = 3.
inline SpaceModel s3_space(int cap = 3)
{
    auto a = make_algebra({{"h", 3, GeneratorKind::exterior}}, cap);
    auto action = SteenrodAction::load(a, {});
    return SpaceModel{a, action, IntegralityData(action, {a->parse("h")}), 3, false};
}

/// RP^infinity truncated at the cap.
inline SpaceModel rp_space(int cap)
{
    auto a = make_algebra({{"t", 1, GeneratorKind::polynomial}}, cap);
    auto action = SteenrodAction::load(a, {});
    return SpaceModel{a, action, IntegralityData(action, {a->parse("t^2")}), cap, true};
}

/// CP^infinity truncated at the cap; every class is integral.
inline SpaceModel cp_space(int cap)
{
    auto a = make_algebra({{"x", 2, GeneratorKind::polynomial}}, cap);
    auto action = SteenrodAction::load(a, {});
    return SpaceModel{a, action, IntegralityData(action, {a->parse("x")}), cap, true};
}

/// B(Z/2)^2 truncated at the cap.
inline SpaceModel bv2_space(int cap)
{
    auto a = make_algebra({{"a", 1, GeneratorKind::polynomial}, {"b", 1, GeneratorKind::polynomial}}, cap);
    auto action = SteenrodAction::load(a, {});
    return SpaceModel{a, action, IntegralityData(action, {a->parse("a^2"), a->parse("b^2")}), cap, true};
}

/// K(Z, 3) through degree 10: polynomial on i (3), a5 = Sq^2 i, a9 = Sq^4 a5.
inline SpaceModel kz3_space()
{
    auto a = make_algebra({{"i", 3, GeneratorKind::polynomial},
                           {"a5", 5, GeneratorKind::polynomial},
                           {"a9", 9, GeneratorKind::polynomial}},
                          10);
    auto action = SteenrodAction::load(
        a, table(*a, {{"i", 2, "a5"}, {"a5", 1, "i^2"}, {"a5", 4, "a9"}, {"a9", 1, "a5^2"}}));
    return SpaceModel{a, action, IntegralityData(action, {a->parse("i")}), 10, true};
}

/// K(Z, 4) through degree 12: polynomial on h (4), g6 = Sq^2 h, g7 = Sq^3 h,
/// g10 = Sq^4 g6, g11 = Sq^1 g10.
inline SpaceModel synthetic12_space()
{
    auto a = make_algebra({{"h", 4, GeneratorKind::polynomial},
                           {"g6", 6, GeneratorKind::polynomial},
                           {"g7", 7, GeneratorKind::polynomial},
                           {"g10", 10, GeneratorKind::polynomial},
                           {"g11", 11, GeneratorKind::polynomial}},
                          12);
    auto action = SteenrodAction::load(a, table(*a, {{"h", 2, "g6"},
                                                     {"h", 3, "g7"},
                                                     {"g6", 1, "g7"},
                                                     {"g6", 4, "g10"},
                                                     {"g6", 5, "g11"},
                                                     {"g7", 4, "g11"},
                                                     {"g10", 1, "g11"},
                                                     {"g10", 2, "g6^2"}}));
    return SpaceModel{a, action, IntegralityData(action, {a->parse("h"), a->parse("g7"), a->parse("g11")}), 12,
                      true};
}

/// A synthetic 10-manifold: x, y in degree 4, u = Sq^2 x and z = Sq^2 y in degree 6,
/// with H^10 spanned by xz = yu.
inline SpaceModel m10_space()
{
    auto a = make_algebra({{"x", 4, GeneratorKind::polynomial},
                           {"y", 4, GeneratorKind::polynomial},
                           {"u", 6, GeneratorKind::polynomial},
                           {"z", 6, GeneratorKind::polynomial}},
                          12, {"x^2", "y^2", "x*y", "x*u", "y*z", "x*z + y*u", "u^2", "u*z", "z^2"});
    auto action = SteenrodAction::load(a, table(*a, {{"x", 2, "u"}, {"y", 2, "z"}}));
    return SpaceModel{a, action, IntegralityData(action, {a->parse("x"), a->parse("y")}), 10, false};
}

/// Spin structure on m10_space with lambda = w4 = x and w6 = Sq^2 w4 = u,
/// or the string structure with lambda = 0 when `string` is set.
inline ManifoldData m10_manifold(bool string = false)
{
    ManifoldData m{m10_space(), 10, {}, {}, BitVector(1), true, true, true, string};
    const auto& a = *m.space.algebra;
    m.pairing.set(0);
    if (!string) {
        m.lambda = a.parse("x");
        m.sw = {{4, a.parse("x")}, {5, {}}, {6, a.parse("u")}, {7, {}}, {8, {}}, {9, {}}, {10, {}}};
    }
    else {
        m.sw = {{8, {}}, {9, {}}, {10, {}}};
    }
    m.validate();
    return m;
}

/// Spin manifold with boundary on the K(Z, 4) window, lambda = w4 = h and the given w6.
inline ManifoldData synthetic12_manifold(const std::string& w6)
{
    ManifoldData m{synthetic12_space(), 12, {}, {}, {}, false, true, true, false};
    const auto& a = *m.space.algebra;
    m.lambda = a.parse("h");
    Element six = a.parse(w6);
    m.sw = {{4, a.parse("h")}, {5, {}}, {6, six}, {7, m.space.action.sq(1, six)}};
    m.validate();
    return m;
}

}  // namespace moravak::testing
