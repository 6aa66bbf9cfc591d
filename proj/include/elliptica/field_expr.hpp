#pragma once

#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "elliptica/lie_algebra.hpp"
#include "elliptica/oscillator.hpp"

namespace elliptica {

/// Laurent polynomial in z over CoeffPoly: z-power -> coefficient.
using ZPoly = std::map<long, CoeffPoly>;

struct FieldExpr;
using FieldExprPtr = std::shared_ptr<const FieldExpr>;

/// AST of a normal-ordered free-field expression. NormProd chains are
/// right-nested and their leaves are plain generators; z-polynomial
/// prefactors, scalars, z-derivatives and sums wrap around them.
struct FieldExpr {
    enum class Node { gen, norm_prod, zpoly_mul, dz, scale, sum };

    Node node = Node::gen;
    FieldGen gen = FieldGen::alpha;       // node == gen
    FieldExprPtr left, right;             // node == norm_prod
    FieldExprPtr child;                   // zpoly_mul / dz / scale
    ZPoly zpoly;                          // zpoly_mul
    CoeffPoly coeff;                      // scale
    std::vector<FieldExprPtr> parts;      // sum

    static FieldExprPtr make_gen(FieldGen g) {
        auto e = std::make_shared<FieldExpr>();
        e->node = Node::gen;
        e->gen = g;
        return e;
    }
    static FieldExprPtr make_nprod(FieldExprPtr l, FieldExprPtr r) {
        if (!l || !r) throw std::invalid_argument("nprod: null child");
        auto e = std::make_shared<FieldExpr>();
        e->node = Node::norm_prod;
        e->left = std::move(l);
        e->right = std::move(r);
        return e;
    }
    static FieldExprPtr make_zmul(ZPoly zp, FieldExprPtr c) {
        auto e = std::make_shared<FieldExpr>();
        e->node = Node::zpoly_mul;
        e->zpoly = std::move(zp);
        e->child = std::move(c);
        return e;
    }
    static FieldExprPtr make_dz(FieldExprPtr c) {
        auto e = std::make_shared<FieldExpr>();
        e->node = Node::dz;
        e->child = std::move(c);
        return e;
    }
    static FieldExprPtr make_scale(CoeffPoly coeff, FieldExprPtr c) {
        auto e = std::make_shared<FieldExpr>();
        e->node = Node::scale;
        e->coeff = std::move(coeff);
        e->child = std::move(c);
        return e;
    }
    static FieldExprPtr make_sum(std::vector<FieldExprPtr> parts) {
        auto e = std::make_shared<FieldExpr>();
        e->node = Node::sum;
        e->parts = std::move(parts);
        return e;
    }
};

/// Collects the generator leaves of a right-nested normal product.
inline void flatten_nprod(const FieldExprPtr& e, std::vector<FieldGen>& out) {
    if (e->node == FieldExpr::Node::gen) {
        out.push_back(e->gen);
        return;
    }
    if (e->node != FieldExpr::Node::norm_prod)
        throw std::invalid_argument("normal products must nest generators only");
    flatten_nprod(e->left, out);
    flatten_nprod(e->right, out);
}

/// The six currents of the realization, indexed by the underlying sl2
/// generator and ring sector.
enum class ThetaGen : int { e = 0, f, h, e1, f1, h1 };

inline const char* theta_name(ThetaGen g) {
    switch (g) {
        case ThetaGen::e: return "e";
        case ThetaGen::f: return "f";
        case ThetaGen::h: return "h";
        case ThetaGen::e1: return "e1";
        case ThetaGen::f1: return "f1";
        case ThetaGen::h1: return "h1";
    }
    return "?";
}

inline std::pair<Gen3, Sector> theta_target(ThetaGen g) {
    switch (g) {
        case ThetaGen::e: return {Gen3::e, Sector::plain};
        case ThetaGen::f: return {Gen3::f, Sector::plain};
        case ThetaGen::h: return {Gen3::h, Sector::plain};
        case ThetaGen::e1: return {Gen3::e, Sector::u};
        case ThetaGen::f1: return {Gen3::f, Sector::u};
        case ThetaGen::h1: return {Gen3::h, Sector::u};
    }
    throw std::invalid_argument("theta_target: bad generator");
}

inline ThetaGen theta_from_target(Gen3 x, Sector s) {
    if (s == Sector::plain) {
        return x == Gen3::e ? ThetaGen::e : x == Gen3::f ? ThetaGen::f : ThetaGen::h;
    }
    return x == Gen3::e ? ThetaGen::e1 : x == Gen3::f ? ThetaGen::f1 : ThetaGen::h1;
}

constexpr ThetaGen kAllThetaGens[] = {ThetaGen::e,  ThetaGen::f,  ThetaGen::h,
                                      ThetaGen::e1, ThetaGen::f1, ThetaGen::h1};

/// The free-field expression assigned to each current. The images of the
/// central elements are handled separately (w+- map to zero; the w0 image is
/// what the calibration sweep measures). `level` is the scalar carried by the
/// derivative terms; it equals the module level symbol unless the caller
/// splits them for diagnosis.
inline FieldExprPtr build_theta(ThetaGen g, int r,
                                const CoeffPoly& level = CoeffPoly::symbol(Symbol::chi0)) {
    using E = FieldExpr;
    if (r != 0 && r != 1) throw std::invalid_argument("build_theta: r must be 0 or 1");
    const CoeffPoly b = CoeffPoly::symbol(Symbol::b);
    const CoeffPoly two = CoeffPoly::constant(2);
    // z(1 - 2bz + z^2) = z - 2b z^2 + z^3 and its z-derivative
    const ZPoly p2{{1, CoeffPoly::one()}, {2, (-b).scale(Rational(2))}, {3, CoeffPoly::one()}};
    const ZPoly dp2{{0, CoeffPoly::one()}, {1, (-b).scale(Rational(4))}, {2, CoeffPoly::constant(3)}};
    ZPoly half_dp2;
    for (const auto& [j, c] : dp2) half_dp2[j] = c.scale(Rational(1, 2));

    auto G = [](FieldGen f) { return E::make_gen(f); };
    auto NP = [](FieldExprPtr a, FieldExprPtr b2) { return E::make_nprod(std::move(a), std::move(b2)); };

    switch (g) {
        case ThetaGen::f:
            return E::make_scale(CoeffPoly::constant(-1), G(FieldGen::alpha));
        case ThetaGen::f1:
            return E::make_scale(CoeffPoly::constant(-1), G(FieldGen::alpha1));
        case ThetaGen::h:
            return E::make_sum({
                E::make_scale(two, NP(G(FieldGen::alpha), G(FieldGen::alpha_star))),
                E::make_scale(two, NP(G(FieldGen::alpha1), G(FieldGen::alpha1_star))),
                G(FieldGen::beta),
            });
        case ThetaGen::h1:
            return E::make_sum({
                E::make_scale(two, NP(G(FieldGen::alpha1), G(FieldGen::alpha_star))),
                E::make_scale(two, E::make_zmul(p2, NP(G(FieldGen::alpha), G(FieldGen::alpha1_star)))),
                G(FieldGen::beta1),
            });
        case ThetaGen::e:
            return E::make_sum({
                NP(G(FieldGen::alpha), NP(G(FieldGen::alpha_star), G(FieldGen::alpha_star))),
                E::make_zmul(p2, NP(G(FieldGen::alpha),
                                    NP(G(FieldGen::alpha1_star), G(FieldGen::alpha1_star)))),
                E::make_scale(two, NP(G(FieldGen::alpha1),
                                      NP(G(FieldGen::alpha_star), G(FieldGen::alpha1_star)))),
                NP(G(FieldGen::beta), G(FieldGen::alpha_star)),
                NP(G(FieldGen::beta1), G(FieldGen::alpha1_star)),
                E::make_scale(level, E::make_dz(G(FieldGen::alpha_star))),
            });
        case ThetaGen::e1:
            return E::make_sum({
                NP(G(FieldGen::alpha1), NP(G(FieldGen::alpha_star), G(FieldGen::alpha_star))),
                E::make_zmul(p2, NP(G(FieldGen::alpha1),
                                    NP(G(FieldGen::alpha1_star), G(FieldGen::alpha1_star)))),
                E::make_zmul(p2, E::make_scale(two, NP(G(FieldGen::alpha),
                                                       NP(G(FieldGen::alpha_star),
                                                          G(FieldGen::alpha1_star))))),
                NP(G(FieldGen::beta1), G(FieldGen::alpha_star)),
                E::make_zmul(p2, NP(G(FieldGen::beta), G(FieldGen::alpha1_star))),
                E::make_scale(level, E::make_zmul(p2, E::make_dz(G(FieldGen::alpha1_star)))),
                E::make_scale(level, E::make_zmul(half_dp2, G(FieldGen::alpha1_star))),
            });
    }
    throw std::invalid_argument("build_theta: bad generator");
}

}  // namespace elliptica
