#pragma once

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>
#include <string>

namespace te {

using cplx = std::complex<double>;
using Mat2 = Eigen::Matrix2d;
using CMat2 = Eigen::Matrix2cd;
using Mat4 = Eigen::Matrix4d;
using Vec2 = Eigen::Vector2d;

// Bad or inconsistent input (CLI exit code 2).
struct InputError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
// Mathematically outside the domain: singular, not positive definite (exit code 3).
struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

// Element X u + Y conj(u) acting on C^2 ~ R^2 (+) R^2. For members of Sym(T) X is
// Hermitian and Y complex symmetric; products of members need not be.
struct KTensor {
    CMat2 X = CMat2::Zero();
    CMat2 Y = CMat2::Zero();
};

// Real symmetric 4x4 operator in field (x) space block order.
struct BlockTensor {
    Mat2 L11 = Mat2::Zero();
    Mat2 L12 = Mat2::Zero();
    Mat2 L22 = Mat2::Zero();

    Mat4 dense() const;
    // Symmetrizes if the asymmetry is below tol * scale, throws InputError otherwise.
    static BlockTensor from_dense(const Mat4& m, double tol = 1e-10);
};

// Constants
const Mat2& I2();
const Mat2& Rperp();
const CMat2& Z0();  // z0 (x) conj(z0), z0 = (1, -i)
const Eigen::Vector2cd& z0();
const Mat4& Tmat();  // Rperp (x) Rperp
const Mat4& I4();

Mat2 phi(cplx z);
Mat2 psi(cplx z);

Mat2 cof(const Mat2& m);  // m * cof(m)^T = det(m) I
CMat2 cof(const CMat2& m);
Mat4 kron(const Mat2& a, const Mat2& b);
Mat2 rot2(double theta);

double scale_of(const Mat4& m);
double scale_of(const Mat2& m);
double scale_of(const CMat2& m);

// Representation map, valid for arbitrary X, Y (no symmetry assumed).
Mat4 kt_dense(const KTensor& k);
KTensor kt_from_dense(const Mat4& m);

KTensor kt_make(const CMat2& X, const CMat2& Y, double tol = 1e-10);
BlockTensor kt_to_block(const KTensor& k, double tol = 1e-10);
KTensor kt_from_block(const BlockTensor& b);

KTensor operator+(const KTensor& a, const KTensor& b);
KTensor operator-(const KTensor& a, const KTensor& b);
KTensor operator*(double s, const KTensor& a);
KTensor kt_mul(const KTensor& a, const KTensor& b);
KTensor kt_transpose(const KTensor& k);
double kt_norm(const KTensor& k);  // Frobenius norm of the 4x4 form

// Both Schur-complement expressions; kt_inverse picks the better conditioned.
KTensor kt_inverse_x(const KTensor& k);
KTensor kt_inverse_y(const KTensor& k);
KTensor kt_inverse(const KTensor& k);

// Two symmetric Schur forms; falls back to the one-sided Schur path or a dense
// inverse when a diagonal block is singular.
BlockTensor block_inverse_a(const BlockTensor& b);
BlockTensor block_inverse_b(const BlockTensor& b);
BlockTensor block_inverse(const BlockTensor& b);

Mat4 dense_inverse(const Mat4& m);
bool is_pd(const Mat2& m, double tol = 1e-12);
bool is_pd(const Mat4& m, double tol = 1e-12);
bool is_positive_definite(const KTensor& k, double tol = 1e-12);

KTensor rotate(double theta, const KTensor& k);
BlockTensor rotate(double theta, const BlockTensor& b);

KTensor jordan_star(const KTensor& k1, const KTensor& a, const KTensor& k2);

Mat2 sqrtm_spd(const Mat2& m);
Mat2 inv_sqrtm_spd(const Mat2& m);
Mat2 sym(const Mat2& m);

std::string describe(const Mat4& m);

}  // namespace te
