#pragma once

#include "thermoexact/tensor4.hpp"

#include <array>
#include <vector>

namespace te {

using Vec4 = Eigen::Vector4d;

// Real coordinates (H00, H11, Re H01, Im H01) of a Hermitian 2x2 matrix.
Vec4 herm_coords(const CMat2& h);
CMat2 herm_from_coords(const Vec4& c);

// B_Y Z = Y cof(Z)^T Y^H on Hermitian Z, as a real 4x4 matrix in herm_coords.
Mat4 b_op(const CMat2& Y);
// Coefficients of x^4, x^3, ..., x^0 of (x^2 - |det Y|^2)(x^2 + |det Y|^2 + x <Y, cof Y>),
// <A, B> = Re tr(A B^H).
std::array<double, 5> b_charpoly(const CMat2& Y);

struct PolyRoot {
    double theta = 0;
    bool feasible = false;  // Z(theta) - conj(X) positive definite
};

struct PolyResult {
    double theta = 0;
    CMat2 Z;
    CMat2 Lstar;        // B^-2 + i alpha Rperp
    BlockTensor tensor;  // B^-2 (x) I + alpha T
    double alpha = 0;
    Mat2 B;
    std::vector<PolyRoot> roots;  // ascending theta
    bool conjectural = false;     // more than one feasible root
    double residual_theta = 0;    // |theta det Z - 1|
    double residual_z = 0;        // |Z + Y Z^-1 Y^H - X - conj(X)| / |X + conj(X)|
};

PolyResult solve_isotropic(const KTensor& L0);
PolyResult solve_isotropic(const BlockTensor& L0);

// Z(theta) = (I + theta B_Y)^-1 (X + conj(X))
CMat2 z_hat(const KTensor& L0, double theta);

// p(t) = t (1 + t)^2 s1 s2 - t^2 (s1 + s2)^2 - (1 - t^2)^2 / 4 for |s_j| > 1.
struct QuarticReport {
    std::array<double, 5> coeffs;  // t^0 .. t^4
    std::vector<double> real_roots;
    int in_unit = 0;   // roots in (0, 1)
    int above_one = 0;  // roots in (1, inf)
    double p0 = 0;
    double p1 = 0;
    double discriminant = 0;  // from the roots
    double discriminant_closed = 0;
};
QuarticReport special_quartic(double s1, double s2);

}  // namespace te
