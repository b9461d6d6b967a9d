#include "thermoexact/tensor4.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <sstream>

namespace te {

namespace {
constexpr cplx I_{0.0, 1.0};

double det_guard(const Mat2& m) { return std::abs(m.determinant()) / std::pow(scale_of(m), 2); }
double det_guard(const CMat2& m) { return std::abs(m.determinant()) / std::pow(scale_of(m), 2); }
constexpr double kSingular = 1e-13;
}  // namespace

const Mat2& I2() {
    static const Mat2 m = Mat2::Identity();
    return m;
}

const Mat2& Rperp() {
    static const Mat2 m = (Mat2() << 0.0, -1.0, 1.0, 0.0).finished();
    return m;
}

const Eigen::Vector2cd& z0() {
    static const Eigen::Vector2cd v(1.0, -I_);
    return v;
}

const CMat2& Z0() {
    static const CMat2 m = z0() * z0().adjoint();
    return m;
}

const Mat4& Tmat() {
    static const Mat4 m = kron(Rperp(), Rperp());
    return m;
}

const Mat4& I4() {
    static const Mat4 m = Mat4::Identity();
    return m;
}

Mat2 phi(cplx z) { return z.real() * I2() + z.imag() * Rperp(); }

Mat2 psi(cplx z) { return (Mat2() << z.real(), z.imag(), z.imag(), -z.real()).finished(); }

Mat2 cof(const Mat2& m) { return (Mat2() << m(1, 1), -m(1, 0), -m(0, 1), m(0, 0)).finished(); }

CMat2 cof(const CMat2& m) { return (CMat2() << m(1, 1), -m(1, 0), -m(0, 1), m(0, 0)).finished(); }

Mat4 kron(const Mat2& a, const Mat2& b) {
    Mat4 r;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) r.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
    return r;
}

Mat2 rot2(double theta) {
    const double c = std::cos(theta), s = std::sin(theta);
    return (Mat2() << c, -s, s, c).finished();
}

double scale_of(const Mat4& m) { return 1.0 + m.cwiseAbs().maxCoeff(); }
double scale_of(const Mat2& m) { return 1.0 + m.cwiseAbs().maxCoeff(); }
double scale_of(const CMat2& m) { return 1.0 + m.cwiseAbs().maxCoeff(); }

Mat4 BlockTensor::dense() const {
    Mat4 m;
    m << L11, L12, L12.transpose(), L22;
    return m;
}

BlockTensor BlockTensor::from_dense(const Mat4& m, double tol) {
    const double asym = (m - m.transpose()).cwiseAbs().maxCoeff();
    if (asym > tol * scale_of(m)) throw InputError("4x4 tensor is not symmetric: " + describe(m));
    const Mat4 s = 0.5 * (m + m.transpose());
    return {s.topLeftCorner<2, 2>(), s.topRightCorner<2, 2>(), s.bottomRightCorner<2, 2>()};
}

Mat4 kt_dense(const KTensor& k) {
    Mat4 m;
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) m.block<2, 2>(2 * a, 2 * b) = phi(k.X(a, b)) + psi(k.Y(a, b));
    return m;
}

KTensor kt_from_dense(const Mat4& m) {
    KTensor k;
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
            const Mat2 B = m.block<2, 2>(2 * a, 2 * b);
            k.X(a, b) = cplx(0.5 * (B(0, 0) + B(1, 1)), 0.5 * (B(1, 0) - B(0, 1)));
            k.Y(a, b) = cplx(0.5 * (B(0, 0) - B(1, 1)), 0.5 * (B(0, 1) + B(1, 0)));
        }
    return k;
}

KTensor kt_make(const CMat2& X, const CMat2& Y, double tol) {
    const double sx = scale_of(X), sy = scale_of(Y);
    if ((X - X.adjoint()).cwiseAbs().maxCoeff() > tol * sx)
        throw InputError("X is not Hermitian");
    if ((Y - Y.transpose()).cwiseAbs().maxCoeff() > tol * sy)
        throw InputError("Y is not symmetric");
    return {0.5 * (X + X.adjoint()), 0.5 * (Y + Y.transpose())};
}

BlockTensor kt_to_block(const KTensor& k, double tol) {
    const KTensor s = kt_make(k.X, k.Y, tol);
    return BlockTensor::from_dense(kt_dense(s), tol);
}

KTensor kt_from_block(const BlockTensor& b) { return kt_from_dense(b.dense()); }

KTensor operator+(const KTensor& a, const KTensor& b) { return {a.X + b.X, a.Y + b.Y}; }
KTensor operator-(const KTensor& a, const KTensor& b) { return {a.X - b.X, a.Y - b.Y}; }
KTensor operator*(double s, const KTensor& a) { return {s * a.X, s * a.Y}; }

KTensor kt_mul(const KTensor& a, const KTensor& b) {
    return {a.X * b.X + a.Y * b.Y.conjugate(), a.X * b.Y + a.Y * b.X.conjugate()};
}

KTensor kt_transpose(const KTensor& k) { return {k.X.adjoint(), k.Y.transpose()}; }

double kt_norm(const KTensor& k) { return kt_dense(k).norm(); }

KTensor kt_inverse_x(const KTensor& k) {
    const CMat2 Xb = k.X.conjugate();
    if (det_guard(Xb) < kSingular) throw DomainError("kt_inverse: X is singular");
    const CMat2 Xbi = Xb.inverse();
    const CMat2 S = k.X - k.Y * Xbi * k.Y.conjugate();
    if (det_guard(S) < kSingular) throw DomainError("kt_inverse: Schur complement of X is singular");
    const CMat2 Si = S.inverse();
    return {Si, -Si * k.Y * Xbi};
}

KTensor kt_inverse_y(const KTensor& k) {
    if (det_guard(k.Y) < kSingular) throw DomainError("kt_inverse: Y is singular");
    const CMat2 Yi = k.Y.inverse();
    const CMat2 S = k.Y.conjugate() - k.X.conjugate() * Yi * k.X;
    if (det_guard(S) < kSingular) throw DomainError("kt_inverse: Schur complement of Y is singular");
    const CMat2 Si = S.inverse();
    return {-Si * k.X.conjugate() * Yi, Si};
}

KTensor kt_inverse(const KTensor& k) {
    const double gx = det_guard(k.X), gy = det_guard(k.Y);
    try {
        if (gx >= gy) return kt_inverse_x(k);
        return kt_inverse_y(k);
    } catch (const DomainError&) {
        return kt_from_dense(dense_inverse(kt_dense(k)));
    }
}

BlockTensor block_inverse_a(const BlockTensor& b) {
    const Mat2 F21 = b.L12.transpose();
    const Mat2 F11i = b.L11.inverse(), F22i = b.L22.inverse();
    const Mat2 S11i = (b.L11 - b.L12 * F22i * F21).inverse();
    const Mat2 S22i = (b.L22 - F21 * F11i * b.L12).inverse();
    return {sym(S11i), -S11i * b.L12 * F22i, sym(S22i)};
}

BlockTensor block_inverse_b(const BlockTensor& b) {
    const Mat2 F21 = b.L12.transpose();
    const Mat2 F11i = b.L11.inverse(), F22i = b.L22.inverse();
    const Mat2 S11i = (b.L11 - b.L12 * F22i * F21).inverse();
    const Mat2 S22i = (b.L22 - F21 * F11i * b.L12).inverse();
    return {sym(S11i), -F11i * b.L12 * S22i, sym(S22i)};
}

BlockTensor block_inverse(const BlockTensor& b) {
    const bool ok11 = det_guard(b.L11) > kSingular, ok22 = det_guard(b.L22) > kSingular;
    const Mat2 F21 = b.L12.transpose();
    if (ok11 && ok22) {
        const Mat2 S11 = b.L11 - b.L12 * b.L22.inverse() * F21;
        const Mat2 S22 = b.L22 - F21 * b.L11.inverse() * b.L12;
        if (det_guard(S11) > kSingular && det_guard(S22) > kSingular) return block_inverse_a(b);
    } else if (ok11) {
        const Mat2 F11i = b.L11.inverse();
        const Mat2 S22 = b.L22 - F21 * F11i * b.L12;
        if (det_guard(S22) > kSingular) {
            const Mat2 S22i = S22.inverse();
            const Mat2 U = F11i * b.L12;
            return {sym(F11i + U * S22i * U.transpose()), -U * S22i, sym(S22i)};
        }
    } else if (ok22) {
        const Mat2 F22i = b.L22.inverse();
        const Mat2 S11 = b.L11 - b.L12 * F22i * F21;
        if (det_guard(S11) > kSingular) {
            const Mat2 S11i = S11.inverse();
            const Mat2 V = F22i * F21;
            return {sym(S11i), -S11i * V.transpose(), sym(F22i + V * S11i * V.transpose())};
        }
    }
    return BlockTensor::from_dense(dense_inverse(b.dense()), 1e-8);
}

Mat4 dense_inverse(const Mat4& m) {
    Eigen::PartialPivLU<Mat4> lu(m);
    if (!(lu.rcond() > 1e-14)) throw DomainError("singular 4x4 operator: " + describe(m));
    return lu.inverse();
}

bool is_pd(const Mat2& m, double tol) {
    Eigen::SelfAdjointEigenSolver<Mat2> es(sym(m), Eigen::EigenvaluesOnly);
    return es.eigenvalues()(0) > tol * scale_of(m);
}

bool is_pd(const Mat4& m, double tol) {
    Eigen::SelfAdjointEigenSolver<Mat4> es(0.5 * (m + m.transpose()), Eigen::EigenvaluesOnly);
    return es.eigenvalues()(0) > tol * scale_of(m);
}

bool is_positive_definite(const KTensor& k, double tol) {
    const double s = scale_of(kt_dense(k));
    auto herm_pd = [&](const CMat2& h) {
        const CMat2 hh = 0.5 * (h + h.adjoint());
        Eigen::SelfAdjointEigenSolver<CMat2> es(hh, Eigen::EigenvaluesOnly);
        return es.eigenvalues()(0) > tol * s;
    };
    if (!herm_pd(k.X)) return false;
    const CMat2 S = k.X - k.Y * k.X.conjugate().inverse() * k.Y.conjugate();
    return herm_pd(S);
}

KTensor rotate(double theta, const KTensor& k) {
    return {k.X, std::exp(cplx(0.0, 2.0 * theta)) * k.Y};
}

BlockTensor rotate(double theta, const BlockTensor& b) {
    const Mat4 Q = kron(I2(), rot2(theta));
    return BlockTensor::from_dense(Q * b.dense() * Q.transpose(), 1e-8);
}

KTensor jordan_star(const KTensor& k1, const KTensor& a, const KTensor& k2) {
    return 0.5 * (kt_mul(kt_mul(k1, a), k2) + kt_mul(kt_mul(k2, a), k1));
}

Mat2 sqrtm_spd(const Mat2& m) {
    Eigen::SelfAdjointEigenSolver<Mat2> es(sym(m));
    if (es.eigenvalues()(0) <= 0.0) throw DomainError("matrix square root of a non-SPD matrix");
    return es.eigenvectors() * es.eigenvalues().cwiseSqrt().asDiagonal() * es.eigenvectors().transpose();
}

Mat2 inv_sqrtm_spd(const Mat2& m) {
    Eigen::SelfAdjointEigenSolver<Mat2> es(sym(m));
    if (es.eigenvalues()(0) <= 0.0) throw DomainError("matrix square root of a non-SPD matrix");
    return es.eigenvectors() * es.eigenvalues().cwiseSqrt().cwiseInverse().asDiagonal() *
           es.eigenvectors().transpose();
}

Mat2 sym(const Mat2& m) { return 0.5 * (m + m.transpose()); }

std::string describe(const Mat4& m) {
    std::ostringstream os;
    os.precision(6);
    os << "[";
    for (int i = 0; i < 4; ++i) {
        os << (i ? "; " : "");
        for (int j = 0; j < 4; ++j) os << (j ? " " : "") << m(i, j);
    }
    os << "]";
    return os.str();
}

}  // namespace te
