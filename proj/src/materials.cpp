#include "thermoexact/materials.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>

namespace te {

bool IsoMaterial::valid() const {
    return lambda(0, 0) > 0.0 && lambda.determinant() > nu * nu &&
           std::abs(lambda(0, 1) - lambda(1, 0)) <= 1e-12 * scale_of(lambda);
}

BlockTensor IsoMaterial::tensor() const {
    return BlockTensor::from_dense(kron(lambda, I2()) + nu * Tmat());
}

IsoMaterial iso_from_tensor(const BlockTensor& b, double tol) {
    const Mat4 m = b.dense();
    IsoMaterial iso;
    iso.lambda << b.L11.trace() / 2, b.L12.trace() / 2, b.L12.trace() / 2, b.L22.trace() / 2;
    // T has R_perp off-diagonal blocks: T_12 = -R_perp
    iso.nu = -(b.L12(1, 0) - b.L12(0, 1)) / 2;
    if ((iso.tensor().dense() - m).cwiseAbs().maxCoeff() > tol * scale_of(m))
        throw DomainError("tensor is not isotropic: " + describe(m));
    return iso;
}

BlockTensor canon_from_physical(const Material& m) {
    if (!(m.T0 > 0.0)) throw DomainError("T0 must be positive");
    if (!is_pd(m.sigma) || !is_pd(m.kappa)) throw DomainError("sigma and kappa must be SPD");
    const double t = m.T0;
    const Mat2 sS = m.sigma * m.seebeck;
    BlockTensor L;
    L.L11 = t * m.sigma;
    L.L12 = -t * t * sS;
    L.L22 = sym(t * t * m.kappa + t * t * t * m.seebeck.transpose() * sS);
    return L;
}

Material physical_from_canon(const BlockTensor& L, double T0) {
    if (!(T0 > 0.0)) throw DomainError("T0 must be positive");
    if (std::abs(L.L11.determinant()) < 1e-14 * std::pow(scale_of(L.L11), 2))
        throw DomainError("L11 is singular");
    const double b = 1.0 / T0;
    const Mat2 L11i = L.L11.inverse();
    Material m;
    m.T0 = T0;
    m.sigma = b * L.L11;
    m.seebeck = -b * L11i * L.L12;
    m.kappa = sym(b * b * (L.L22 - L.L12.transpose() * L11i * L.L12));
    return m;
}

double coupling_eigenvalue(const BlockTensor& L) {
    if (!is_pd(L.dense())) throw DomainError("figure of merit needs a positive definite tensor");
    // Generalized symmetric problem: (L12^T L11^-1 L12) h = lambda L22 h
    const Mat2 A = sym(L.L12.transpose() * L.L11.inverse() * L.L12);
    Eigen::GeneralizedSelfAdjointEigenSolver<Mat2> es(A, L.L22, Eigen::EigenvaluesOnly);
    return es.eigenvalues()(1);
}

double figure_of_merit(const BlockTensor& L) {
    const double lam = coupling_eigenvalue(L);
    return std::max(0.0, lam / (1.0 - lam));
}

}  // namespace te
