#pragma once

#include "thermoexact/algebra.hpp"
#include "thermoexact/materials.hpp"
#include "thermoexact/random.hpp"
#include "thermoexact/tensor4.hpp"

#include <string>
#include <vector>

namespace te {

// Ids of the exact relations with first-class predicates.
const std::vector<int>& er_ids();

struct ERSpec {
    int id = 0;
    int algebra_id = 0;
    InversionKey key = InversionKey::Half;
    std::string description;
};
const ERSpec& er_spec(int id);  // InputError for unknown ids

// Parameters of [[L, L M], [M^T L, M^T L M]] + T
struct LMPair {
    Mat2 L = Mat2::Identity();
    Mat2 M = Rperp();
};
BlockTensor lm_par(const LMPair& p);
LMPair lm_unpar(const BlockTensor& L);  // M = L11^-1 (L12 + Rperp); DomainError if L11 singular

// Lambda^-1 (x) (n n^T) / |n|^2
Mat4 gamma0(const Vec2& n, const IsoMaterial& iso);

// W(L) = [(L - L0)^-1 + M]^-1 with M = M0 (x) I, written as A (I + M A)^-1, A = L - L0.
KTensor w_transform(const BlockTensor& L, const BlockTensor& L0, InversionKey key);
BlockTensor w_inverse(const KTensor& K, const BlockTensor& L0, InversionKey key);
KTensor w_transform(const BlockTensor& L, InversionKey key);  // L0 = I
BlockTensor w_inverse(const KTensor& K, InversionKey key);

struct Constraint {
    std::string name;
    double value = 0.0;  // signed margin; ok when value > 0
    bool ok = true;
};

struct ERResult {
    int id = 0;
    bool pd = false;
    bool member = false;
    double residual = 0.0;  // normalized by (1 + |L|)^2
    std::vector<Constraint> constraints;
};

inline constexpr double kMemberTol = 1e-9;

ERResult er_member(int id, const BlockTensor& L, double tol = kMemberTol);
// Residual of the pullback K = W(L) against the algebra of the relation.
double er_pullback_residual(int id, const BlockTensor& L);

// Sample K in the algebra and map it back with the relation's key; the scale halves
// until the result is positive definite (at most 100 attempts).
BlockTensor er_sample(int id, Rng& rng, double scale = 1.0);
BlockTensor er_sample(int id, std::uint64_t seed, double scale = 1.0);
// Members built from the closed-form parametrizations, independent of the algebra.
BlockTensor er_generate(int id, Rng& rng);

// Block component systems for 17 and 22 including the redundant third equation.
double er_component_residual(int id, const BlockTensor& L);

// L = Lambda (x) P with Lambda11 = 1 for members of 9.
void er9_factor(const BlockTensor& L, Mat2& lambda, Mat2& p);

// (Lambda^-1/2 (x) I) L (Lambda^-1/2 (x) I)
BlockTensor covariance(const Mat2& lambda, const BlockTensor& L);

// max eigenvalue of sym(L11/det L11 + 2 Rperp M); negative iff the LM form is PD
double lm_positivity_margin(const LMPair& p);

}  // namespace te
