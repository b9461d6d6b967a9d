#pragma once

#include "thermoexact/materials.hpp"
#include "thermoexact/tensor4.hpp"

#include <utility>
#include <vector>

namespace te {

// Psi_{A,B}(L) = (B (x) I) T (a1 L + b1 T)^-1 (a0 L + b0 T) (B^T (x) I), A = [[a0, b0], [a1, b1]]
struct LinkMap {
    Mat2 A = Mat2::Identity();
    Mat2 B = Mat2::Identity();
};

BlockTensor psi_apply(const LinkMap& m, const BlockTensor& L);
// psi_apply(compose(m1, m2), L) = psi_apply(m1, psi_apply(m2, L))
LinkMap psi_compose(const LinkMap& m1, const LinkMap& m2);
LinkMap psi_inverse(const LinkMap& m);
// |det A| = |det B| = 1 and the first nonzero entry of each is positive
LinkMap canonical(const LinkMap& m);
bool same_map(const LinkMap& m1, const LinkMap& m2, double tol = 1e-10);

// Named one-parameter subgroups.
LinkMap link_identity();
LinkMap link_flip();                     // L^-1 -> T - L^-1
LinkMap link_inverse_shift(double a0);   // L^-1 -> a0 T + L^-1
LinkMap link_shift(double b0);           // L -> b0 T + L
LinkMap link_congruence(const Mat2& b);  // L -> (B (x) I) L (B^T (x) I)

// Maps the isotropic tensor Lambda (x) I + nu T to I: B = Lambda^-1/2, shift by -nu.
LinkMap psi_normalizer(const IsoMaterial& iso);

// L* = <L^-1>^-1 for the L parameter of relation 13
Mat2 link13_volume_fraction(const std::vector<std::pair<Mat2, double>>& phases);

// Relation 19 family: L(L, M) -> L(P^-1, M),
// P = g M L^-1 M^T + (1 + g) L^-1 + 2 g M Rperp; requires P > 0 and P + 2 M Rperp < 0.
BlockTensor link19_family(double gamma0, const BlockTensor& L);
// Residual of M L^-1 - L^-1 M^T = 2 Rperp (the extra relation reached at gamma0 = -1/2).
double er18_extra_residual(const BlockTensor& L);

struct Conductivity19 {
    Mat2 sigma;  // -Rperp M, det 1
    double mu;   // 2 / tr(L sigma)
};
Conductivity19 link19_conductivity(const BlockTensor& L);
// The relation 7 member L(mu sigma, Rperp sigma) carrying the same (sigma, mu).
BlockTensor er7_from_conductivity(const Conductivity19& c);

struct Factor21 {
    Mat2 lambda;
    Mat2 p;
};
Factor21 link21_factor(const Mat2& M);
Mat2 link21_unfactor(const Factor21& f);  // M = Lambda12 I + Rperp P det Lambda

}  // namespace te
