#pragma once

#include "thermoexact/laminate.hpp"
#include "thermoexact/tensor4.hpp"

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace te {

// L = sigma (x) I + r T; positive definite iff sigma > 0 and r^2 < det sigma.
struct IsoPhase {
    Mat2 sigma = Mat2::Identity();
    double r = 0.0;
    BlockTensor tensor() const;
};

struct IsoPhasePair {
    IsoPhase phase1, phase2;
};

enum class CaseTag { C1ai, C1aii, C1b, C1ci, C1cii, C2a, C2b, C2c };
std::string to_string(CaseTag t);

// sigma = sigma1^-1/2 sigma2 sigma1^-1/2 = Q diag(l1, l2) Q^T with l1 >= l2 and det Q = 1,
// rho = (r2 - r1) / sqrt(det sigma1).
struct Reduced {
    Mat2 sigma;  // diag(l1, l2)
    double lambda1 = 1, lambda2 = 1;
    double rho = 0;
    Mat2 frame = Mat2::Identity();
    Mat2 s1_half = Mat2::Identity();
};
Reduced reduce(const IsoPhasePair& p);

// Roots of rho a^2 - (det sigma - rho^2 - 1) a + rho = 0.
struct A0Roots {
    double discriminant = 0;
    bool real = true;
    bool degenerate = false;  // rho = 0: roots 0 and infinity
    double small = 0;         // |small| <= 1 (0 when degenerate)
    double large = 0;         // 1 / small (+inf when degenerate)
};
A0Roots a0_roots(double det_sigma, double rho);

// S1 = (sigma2 - l1 sigma1) / (l2 - l1), S2 = (sigma2 - l2 sigma1) / (l1 - l2)
struct SPair {
    Mat2 S1, S2;
};
SPair s_matrices(const Mat2& sigma1, const Mat2& sigma2, double l1, double l2);

struct StrongAB {
    double a = 0, b = 0, A = 0, B = 0;
};
StrongAB strong_ab(const IsoPhasePair& p);

struct Classification {
    CaseTag tag = CaseTag::C1ai;
    bool proportional = false;
    bool weak = false;
    double d1 = 0, d2 = 0, dr = 0;
    Reduced red;
    A0Roots roots;
};
inline constexpr double kBoundaryTol = 1e-10;
Classification classify(const IsoPhasePair& p, double tol = kBoundaryTol);

struct TwoPhaseResult {
    Classification info;
    bool explicit_form = false;
    std::optional<BlockTensor> Lstar;
    std::optional<Mat2> sigma_star;  // conductivity of the shape entering the formula
    std::optional<StrongAB> ab;
    std::optional<SPair> S;
    double a0 = 0;
    // 0 for tensors satisfying the case's relation or formula (scale-free).
    std::function<double(const BlockTensor&)> residual;
    std::vector<std::string> notes;
};

TwoPhaseResult effective(const IsoPhasePair& p, const SigmaModel& micro);

// Individual closed forms, exposed for tests.
BlockTensor form_1aii(double r1, double d1, double a0, const SPair& S, const Mat2& sigma1,
                      const Mat2& sigma_star);
BlockTensor form_1aii_iso(double r1, double d1, double a0, const SPair& S, double x_star);
BlockTensor form_1cii(double r0, const SPair& S, const Mat2& sigma_star);
BlockTensor form_1ci(const IsoPhasePair& p, const SPair& S, const Mat2& sigma_star, const Mat2& L);
BlockTensor form_2a(const IsoPhasePair& p, double a0, const Mat2& sigma_star);
BlockTensor form_2c(const IsoPhasePair& p, double f1);
// Weakly coupled cases through the decoupling map and two conductivity problems.
BlockTensor decoupled_effective(const IsoPhasePair& p, const SigmaModel& micro);

double residual_1b(const IsoPhasePair& p, const BlockTensor& L);
double residual_2b(const IsoPhasePair& p, const BlockTensor& L);

}  // namespace te
