#pragma once

// Shared test fixtures: the quiver algebras used throughout the suite and a
// few named modules over them, built through the public constructors.

#include <map>
#include <string>
#include <vector>

#include "filtral/homology.hpp"
#include "filtral/quiver_module.hpp"

namespace fx {

using namespace filtral;

inline int arrow_index(const QuiverPresentation& q, const std::string& name)
{
    for (size_t i = 0; i < q.arrows.size(); ++i)
        if (q.arrows[i].name == name)
            return static_cast<int>(i);
    throw std::runtime_error("unknown arrow " + name);
}

inline Relation monomial(const QuiverPresentation& q, const std::vector<std::string>& path)
{
    RelationTerm t;
    t.coef = 1;
    for (const auto& a : path)
        t.arrows.push_back(arrow_index(q, a));
    return {t};
}

inline Relation commutator(const QuiverPresentation& q, const std::vector<std::string>& p1,
                           const std::vector<std::string>& p2)
{
    RelationTerm t1, t2;
    t1.coef = 1;
    t2.coef = -1;
    for (const auto& a : p1)
        t1.arrows.push_back(arrow_index(q, a));
    for (const auto& a : p2)
        t2.arrows.push_back(arrow_index(q, a));
    return {t1, t2};
}

/// One vertex, one loop alpha, alpha^2 = 0 (the two-dimensional local algebra).
inline Algebra loop_algebra(int p = 2)
{
    QuiverPresentation q;
    q.vertices = {"1"};
    q.arrows = {{"alpha", 0, 0}};
    q.nilpotency_bound = 4;
    q.relations = {monomial(q, {"alpha", "alpha"})};
    return build_quiver_algebra(q, PrimeField(p));
}

/// A2 quiver 1 -> 2, hereditary.
inline Algebra a2_algebra(int p = 2)
{
    QuiverPresentation q;
    q.vertices = {"1", "2"};
    q.arrows = {{"a", 0, 1}};
    q.nilpotency_bound = 4;
    return build_quiver_algebra(q, PrimeField(p));
}

/// Three isolated vertices (semisimple).
inline Algebra semisimple3(int p = 2)
{
    QuiverPresentation q;
    q.vertices = {"1", "2", "3"};
    q.nilpotency_bound = 2;
    return build_quiver_algebra(q, PrimeField(p));
}

/// The six-vertex algebra with two commutativity relations and all loop
/// compositions zero (the seven-element boundary example).
inline Algebra big_algebra(int p = 2)
{
    QuiverPresentation q;
    q.vertices = {"1", "2", "3", "4", "5", "6"};
    q.arrows = {
        {"alpha", 0, 1},   // 1 -> 2
        {"beta", 0, 3},    // 1 -> 4
        {"gamma", 1, 2},   // 2 -> 3
        {"delta", 1, 4},   // 2 -> 5
        {"epsilon", 3, 4}, // 4 -> 5
        {"zeta", 2, 5},    // 3 -> 6
        {"eta", 4, 5},     // 5 -> 6
        {"theta", 4, 4},   // loop at 5
        {"iota", 5, 5},    // loop at 6
    };
    q.nilpotency_bound = 8;
    q.relations = {
        commutator(q, {"alpha", "delta"}, {"beta", "epsilon"}),
        commutator(q, {"gamma", "zeta"}, {"delta", "eta"}),
        monomial(q, {"delta", "theta"}),
        monomial(q, {"epsilon", "theta"}),
        monomial(q, {"theta", "theta"}),
        monomial(q, {"theta", "eta"}),
        monomial(q, {"zeta", "iota"}),
        monomial(q, {"iota", "iota"}),
        monomial(q, {"eta", "iota"}),
    };
    return build_quiver_algebra(q, PrimeField(p));
}

/// Two vertices, arrows gamma: 1->2 and alpha, beta: 2->1 with
/// gamma*alpha = gamma*beta = alpha*gamma = 0 (the infinite-boundary example).
inline Algebra ist_algebra(int p = 3)
{
    QuiverPresentation q;
    q.vertices = {"1", "2"};
    q.arrows = {{"gamma", 0, 1}, {"alpha", 1, 0}, {"beta", 1, 0}};
    q.nilpotency_bound = 6;
    q.relations = {
        monomial(q, {"gamma", "alpha"}),
        monomial(q, {"gamma", "beta"}),
        monomial(q, {"alpha", "gamma"}),
    };
    return build_quiver_algebra(q, PrimeField(p));
}

/// Three vertices, arrows alpha: 1->3, gamma: 2->3, loop beta at 3, bound by
/// alpha*beta = 0 and beta^2 = 0.
inline Algebra three_vertex_algebra(int p = 2)
{
    QuiverPresentation q;
    q.vertices = {"1", "2", "3"};
    q.arrows = {{"alpha", 0, 2}, {"gamma", 1, 2}, {"beta", 2, 2}};
    q.nilpotency_bound = 6;
    q.relations = {
        monomial(q, {"alpha", "beta"}),
        monomial(q, {"beta", "beta"}),
    };
    return build_quiver_algebra(q, PrimeField(p));
}

inline Module make_module(const Algebra& A, const std::vector<int>& dims,
                          const std::map<std::string, Mat>& arrows)
{
    return module_from_arrow_matrices(A, dims, arrows);
}

inline Mat m1x1(int v)
{
    Mat m(1, 1);
    m.at(0, 0) = v;
    return m;
}

/// The module [1 2 3 / 3 3] over three_vertex_algebra: basis x (vertex 1),
/// y (vertex 2), z_a, z_b, w (vertex 3) with x*alpha = z_a, y*gamma = z_b,
/// w*beta = z_a + z_b.
inline Module module_M_d(const Algebra& A)
{
    Mat alpha(1, 3), gamma(1, 3), beta(3, 3);
    alpha.at(0, 0) = 1;                    // x -> z_a
    gamma.at(0, 1) = 1;                    // y -> z_b
    beta.at(2, 0) = 1;                     // w -> z_a + z_b
    beta.at(2, 1) = 1;
    return make_module(A, {1, 1, 3}, {{"alpha", alpha}, {"gamma", gamma}, {"beta", beta}});
}

/// The seven boundary modules of the six-vertex algebra, by Loewy shape.
inline std::vector<Module> seven_modules(const Algebra& A)
{
    std::vector<Module> out;
    // [1/4]
    out.push_back(make_module(A, {1, 0, 0, 1, 0, 0}, {{"beta", m1x1(1)}}));
    // [2/5]
    out.push_back(make_module(A, {0, 1, 0, 0, 1, 0}, {{"delta", m1x1(1)}}));
    // [3/6]
    out.push_back(make_module(A, {0, 0, 1, 0, 0, 1}, {{"zeta", m1x1(1)}}));
    // [1/2/3]
    out.push_back(make_module(A, {1, 1, 1, 0, 0, 0}, {{"alpha", m1x1(1)}, {"gamma", m1x1(1)}}));
    // [4/5/6]
    out.push_back(make_module(A, {0, 0, 0, 1, 1, 1}, {{"epsilon", m1x1(1)}, {"eta", m1x1(1)}}));
    // [5 / 5 6]: vertex-5 space has basis (top, socle); theta maps top to
    // socle, eta maps top to the vertex-6 line.
    {
        Mat theta(2, 2), eta(2, 1);
        theta.at(0, 1) = 1;
        eta.at(0, 0) = 1;
        out.push_back(make_module(A, {0, 0, 0, 0, 2, 1}, {{"theta", theta}, {"eta", eta}}));
    }
    // [6/6]
    {
        Mat iota(2, 2);
        iota.at(0, 1) = 1;
        out.push_back(make_module(A, {0, 0, 0, 0, 0, 2}, {{"iota", iota}}));
    }
    return out;
}

/// Length-two module over ist_algebra with y*alpha = a*x and y*beta = b*x,
/// annihilated by gamma.
inline Module ist_Y(const Algebra& A, int a, int b)
{
    return make_module(A, {1, 1}, {{"alpha", m1x1(a)}, {"beta", m1x1(b)}});
}

} // namespace fx
