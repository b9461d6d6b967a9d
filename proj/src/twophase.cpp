#include "thermoexact/twophase.hpp"

#include <cmath>
#include <limits>

namespace te {

namespace {

Mat2 e11() { return (Mat2() << 1, 0, 0, 0).finished(); }
Mat2 e22() { return (Mat2() << 0, 0, 0, 1).finished(); }

void validate(const IsoPhase& p, const char* which) {
    if (!p.sigma.allFinite() || !std::isfinite(p.r))
        throw InputError(std::string(which) + ": non-finite entries");
    if ((p.sigma - p.sigma.transpose()).norm() > 1e-12 * scale_of(p.sigma))
        throw InputError(std::string(which) + ": sigma is not symmetric");
    if (!is_pd(p.sigma)) throw DomainError(std::string(which) + ": sigma is not positive definite");
    if (!(p.r * p.r < p.sigma.determinant()))
        throw DomainError(std::string(which) + ": r^2 >= det sigma, tensor is not positive definite");
}

double rel_diff(const Mat4& a, const Mat4& b) { return (a - b).norm() / std::max(b.norm(), 1e-300); }

Mat4 dense_1ci(const IsoPhasePair& p, const SPair& S, const Mat2& ss, const Mat2& L) {
    const double d1 = std::sqrt(p.phase1.sigma.determinant());
    const double d2 = std::sqrt(p.phase2.sigma.determinant());
    const double dr = p.phase1.r - p.phase2.r;
    const Mat2 c = cof(L);
    const double astar = 0.5 * (c * ss).trace();
    const Mat2 A = c * ss - astar * I2();
    const double alpha = (d1 - d2) / dr * d1;
    const double beta = p.phase1.r + alpha * (astar - 1.0);
    return kron(S.S1, ss * c * ss) + kron(S.S2, L) +
           alpha * Tmat() * kron(p.phase1.sigma.inverse() * (S.S1 - S.S2), A) + beta * Tmat();
}

// Least-squares misfit of L against the affine family L -> dense_1ci(..., L).
double misfit_1ci(const IsoPhasePair& p, const SPair& S, const Mat2& ss, const BlockTensor& Lt) {
    const Mat4 base = dense_1ci(p, S, ss, Mat2::Zero());
    const Mat2 basis[3] = {e11(), (Mat2() << 0, 1, 1, 0).finished(), e22()};
    Eigen::Matrix<double, 16, 3> A;
    for (int k = 0; k < 3; ++k) {
        const Mat4 col = dense_1ci(p, S, ss, basis[k]) - base;
        A.col(k) = Eigen::Map<const Eigen::Matrix<double, 16, 1>>(col.data());
    }
    const Mat4 rhs4 = Lt.dense() - base;
    const Eigen::Matrix<double, 16, 1> rhs = Eigen::Map<const Eigen::Matrix<double, 16, 1>>(rhs4.data());
    const Eigen::Vector3d x = A.colPivHouseholderQr().solve(rhs);
    return (A * x - rhs).norm() / std::max(Lt.dense().norm(), 1e-300);
}

}  // namespace

BlockTensor IsoPhase::tensor() const {
    return BlockTensor::from_dense(kron(sigma, I2()) + r * Tmat(), 1e-8);
}

std::string to_string(CaseTag t) {
    switch (t) {
        case CaseTag::C1ai: return "1ai";
        case CaseTag::C1aii: return "1aii";
        case CaseTag::C1b: return "1b";
        case CaseTag::C1ci: return "1ci";
        case CaseTag::C1cii: return "1cii";
        case CaseTag::C2a: return "2a";
        case CaseTag::C2b: return "2b";
        case CaseTag::C2c: return "2c";
    }
    return "?";
}

Reduced reduce(const IsoPhasePair& p) {
    validate(p.phase1, "phase1");
    validate(p.phase2, "phase2");
    Reduced r;
    r.s1_half = sqrtm_spd(p.phase1.sigma);
    const Mat2 h = inv_sqrtm_spd(p.phase1.sigma);
    const Mat2 sg = sym(h * p.phase2.sigma * h);
    Eigen::SelfAdjointEigenSolver<Mat2> es(sg);
    r.lambda1 = es.eigenvalues()(1);
    r.lambda2 = es.eigenvalues()(0);
    r.frame.col(0) = es.eigenvectors().col(1);
    r.frame.col(1) = es.eigenvectors().col(0);
    // (Q (x) I) T (Q^T (x) I) = det Q T, so keep det Q = +1
    if (r.frame.determinant() < 0) r.frame.col(1) *= -1.0;
    r.sigma = Eigen::Vector2d(r.lambda1, r.lambda2).asDiagonal();
    r.rho = (p.phase2.r - p.phase1.r) / std::sqrt(p.phase1.sigma.determinant());
    return r;
}

A0Roots a0_roots(double det_sigma, double rho) {
    A0Roots out;
    const double c = det_sigma - rho * rho - 1.0;
    out.discriminant = c * c - 4.0 * rho * rho;
    if (rho == 0.0) {
        out.degenerate = true;
        out.small = 0.0;
        out.large = std::numeric_limits<double>::infinity();
        return out;
    }
    if (out.discriminant < 0.0) {
        out.real = false;
        out.small = out.large = std::numeric_limits<double>::quiet_NaN();
        return out;
    }
    const double q = c + std::copysign(std::sqrt(out.discriminant), c);
    out.small = 2.0 * rho / q;
    out.large = q / (2.0 * rho);
    return out;
}

SPair s_matrices(const Mat2& sigma1, const Mat2& sigma2, double l1, double l2) {
    if (l1 == l2) throw DomainError("S matrices: equal eigenvalues");
    return {(sigma2 - l1 * sigma1) / (l2 - l1), (sigma2 - l2 * sigma1) / (l1 - l2)};
}

StrongAB strong_ab(const IsoPhasePair& p) {
    validate(p.phase1, "phase1");
    validate(p.phase2, "phase2");
    const double D1 = p.phase1.sigma.determinant(), D2 = p.phase2.sigma.determinant();
    const double d1 = std::sqrt(D1), d2 = std::sqrt(D2);
    const double r1 = p.phase1.r, r2 = p.phase2.r;
    const double dr = r2 - r1;
    if (dr == 0.0) throw DomainError("strong_ab: r1 = r2");
    StrongAB s;
    const double num = D2 - D1 + r1 * r1 - r2 * r2;
    const double prod = (dr * dr - (d1 - d2) * (d1 - d2)) * ((d1 + d2) * (d1 + d2) - dr * dr);
    s.A = num / (2.0 * dr);
    s.B = prod / (4.0 * dr * dr);
    if (prod > 0.0) {
        const double a0 = std::abs(dr) / std::sqrt(prod);
        s.a = 2.0 * a0 * d1;
        s.b = a0 * num / dr;
    } else {
        s.a = s.b = std::numeric_limits<double>::quiet_NaN();
    }
    return s;
}

Classification classify(const IsoPhasePair& p, double tol) {
    Classification c;
    c.red = reduce(p);
    const double D1 = p.phase1.sigma.determinant(), D2 = p.phase2.sigma.determinant();
    c.d1 = std::sqrt(D1);
    c.d2 = std::sqrt(D2);
    c.dr = p.phase2.r - p.phase1.r;
    c.roots = a0_roots(c.red.lambda1 * c.red.lambda2, c.red.rho);
    const double scale = c.d1 + c.d2;
    const double gap = std::abs(c.dr) - std::abs(c.d1 - c.d2);
    const bool border = std::abs(gap) <= tol * scale;
    c.weak = !border && gap < 0.0;
    c.proportional = c.red.lambda1 - c.red.lambda2 <= tol * (c.red.lambda1 + c.red.lambda2);
    if (c.proportional) {
        c.tag = border ? CaseTag::C2c : (c.weak ? CaseTag::C2a : CaseTag::C2b);
    } else if (c.weak) {
        const double m = (p.phase1.sigma - p.phase2.sigma).determinant();
        c.tag = std::abs(c.dr * c.dr - m) <= tol * scale * scale ? CaseTag::C1aii : CaseTag::C1ai;
    } else if (border) {
        c.tag = std::abs(c.dr) <= tol * scale ? CaseTag::C1cii : CaseTag::C1ci;
    } else {
        c.tag = CaseTag::C1b;
    }
    return c;
}

BlockTensor form_1aii(double r1, double d1, double a0, const SPair& S, const Mat2& sigma1,
                      const Mat2& ss) {
    const double a2 = a0 * a0;
    const double x = 0.5 * ss.trace();
    const double D = (ss - a2 * I2()).determinant();
    if (D == 0.0) throw DomainError("form_1aii: det(sigma* - a0^2) = 0");
    const double k = (1.0 - a2) / D;
    const Mat4 braces = kron(S.S1, ss - a2 * I2()) + kron(S.S2, ss.determinant() * I2() - a2 * ss) +
                        a0 * d1 * Tmat() * kron(sigma1.inverse() * (S.S1 - S.S2), ss - x * I2());
    const double t = r1 + a0 * (k * (x - a2) - 1.0) * d1;
    return BlockTensor::from_dense(t * Tmat() + k * braces, 1e-8);
}

BlockTensor form_1aii_iso(double r1, double d1, double a0, const SPair& S, double x) {
    const double a2 = a0 * a0;
    const double t = r1 + (1.0 - x) * a0 / (x - a2) * d1;
    return BlockTensor::from_dense(t * Tmat() + (1.0 - a2) / (x - a2) * kron(S.S1 + x * S.S2, I2()),
                                   1e-8);
}

BlockTensor form_1cii(double r0, const SPair& S, const Mat2& ss) {
    return BlockTensor::from_dense(r0 * Tmat() + kron(S.S1 / ss.determinant() + S.S2, ss), 1e-8);
}

BlockTensor form_1ci(const IsoPhasePair& p, const SPair& S, const Mat2& ss, const Mat2& L) {
    return BlockTensor::from_dense(dense_1ci(p, S, ss, L), 1e-8);
}

BlockTensor form_2a(const IsoPhasePair& p, double a0, const Mat2& ss) {
    const double a2 = a0 * a0;
    const double dS = ss.determinant();
    const double d1 = std::sqrt(p.phase1.sigma.determinant());
    const double t = p.phase1.r + a0 * (1.0 - dS) * d1 / (dS - a2);
    return BlockTensor::from_dense((1.0 - a2) / (dS - a2) * kron(p.phase1.sigma, ss) + t * Tmat(),
                                   1e-8);
}

BlockTensor form_2c(const IsoPhasePair& p, double f1) {
    const double f2 = 1.0 - f1;
    const Mat2 s = (f1 * p.phase1.sigma.inverse() + f2 * p.phase2.sigma.inverse()).inverse();
    const double t1 = std::sqrt(p.phase1.sigma.determinant());
    const double t2 = std::sqrt(p.phase2.sigma.determinant());
    const double r = (f1 * p.phase1.r / t1 + f2 * p.phase2.r / t2) / (f1 / t1 + f2 / t2);
    return BlockTensor::from_dense(kron(sym(s), I2()) + r * Tmat(), 1e-8);
}

BlockTensor decoupled_effective(const IsoPhasePair& p, const SigmaModel& micro) {
    const Reduced red = reduce(p);
    const double ds = red.lambda1 * red.lambda2;
    const A0Roots roots = a0_roots(ds, red.rho);
    if (!roots.real) throw DomainError("decoupling: the pair is strongly coupled");
    const double a = roots.small;
    // equals (1 - a^2) / (det sigma - (rho + a)^2) on the roots
    const double c = 1.0 / (ds - red.rho * red.rho - red.rho * a);
    if (!(c > 0.0) || !std::isfinite(c)) throw DomainError("decoupling: no positive branch");
    const Mat4 Ld = kron(e11(), micro(c * red.lambda1)) + kron(e22(), micro(c * red.lambda2));
    const Mat4& T = Tmat();
    Mat4 L = T * dense_inverse(Ld - a * T) * (-a * Ld + T);
    const Mat4 q = kron(red.frame, I2());
    const Mat4 h = kron(red.s1_half, I2());
    L = h * q * L * q.transpose() * h + p.phase1.r * T;
    return BlockTensor::from_dense(L, 1e-8);
}

double residual_1b(const IsoPhasePair& p, const BlockTensor& L) {
    const Reduced red = reduce(p);
    const SPair S = s_matrices(p.phase1.sigma, p.phase2.sigma, red.lambda1, red.lambda2);
    const StrongAB ab = strong_ab(p);
    const Mat2 z0 = S.S2 * Rperp() * S.S1 - S.S1 * Rperp() * S.S2;
    const Mat4 Z = kron(z0, Rperp());
    const Mat4 LA = L.dense() + ab.A * Tmat();
    const Mat4 r = LA * Tmat() * Z * Tmat() * LA + ab.B * Z;
    return r.norm() / (Z.norm() * (LA.squaredNorm() + std::abs(ab.B)));
}

double residual_2b(const IsoPhasePair& p, const BlockTensor& L) {
    const Mat2& s1 = p.phase1.sigma;
    const StrongAB ab = strong_ab(p);
    const double D1 = s1.determinant();
    const Mat2 lm = L.L11 / s1(0, 0);
    const double t = -0.5 * (Rperp().transpose() * (L.L12 - s1(0, 1) * lm)).trace();
    const Mat4 model = kron(s1, lm) + t * Tmat();
    const double structural = (L.dense() - model).norm() / L.dense().norm();
    const double lhs = D1 * lm.determinant(), rhs = (t + ab.A) * (t + ab.A) + ab.B;
    const double det = std::abs(lhs - rhs) / (std::abs(lhs) + (t + ab.A) * (t + ab.A) + std::abs(ab.B));
    return std::max(structural, det);
}

TwoPhaseResult effective(const IsoPhasePair& p, const SigmaModel& micro) {
    TwoPhaseResult res;
    res.info = classify(p);
    const Classification& c = res.info;
    const Reduced& red = c.red;
    const double r1 = p.phase1.r;

    auto explicit_result = [&](const BlockTensor& L) {
        res.explicit_form = true;
        res.Lstar = L;
        const Mat4 ref = L.dense();
        res.residual = [ref](const BlockTensor& x) { return rel_diff(x.dense(), ref); };
    };

    switch (c.tag) {
        case CaseTag::C1ai: {
            res.a0 = c.roots.small;
            explicit_result(decoupled_effective(p, micro));
            res.notes.push_back(
                "reconstructed: decoupled into two conductivity problems, no closed form printed");
            break;
        }
        case CaseTag::C1aii: {
            // label the eigenvalue nearer to 1 first so that |a0| <= 1 and rho = 0 is regular
            double la = red.lambda1, lb = red.lambda2;
            if (std::abs(lb - 1.0) < std::abs(la - 1.0)) std::swap(la, lb);
            res.a0 = red.rho / (lb - 1.0);
            res.S = s_matrices(p.phase1.sigma, p.phase2.sigma, la, lb);
            res.sigma_star = micro(la / lb);
            explicit_result(form_1aii(r1, c.d1, res.a0, *res.S, p.phase1.sigma, *res.sigma_star));
            break;
        }
        case CaseTag::C1cii: {
            res.S = s_matrices(p.phase1.sigma, p.phase2.sigma, red.lambda1, red.lambda2);
            res.sigma_star = micro(red.lambda1);
            explicit_result(form_1cii(0.5 * (r1 + p.phase2.r), *res.S, *res.sigma_star));
            break;
        }
        case CaseTag::C1ci: {
            res.S = s_matrices(p.phase1.sigma, p.phase2.sigma, red.lambda1, red.lambda2);
            res.sigma_star = micro(std::sqrt(red.lambda2 / red.lambda1));
            const SPair S = *res.S;
            const Mat2 ss = *res.sigma_star;
            res.residual = [p, S, ss](const BlockTensor& x) { return misfit_1ci(p, S, ss, x); };
            res.notes.push_back("L* = F(L) with a free symmetric 2x2 parameter L");
            const double check = res.residual(laminate_tree(micro.shape(), {p.phase1.tensor(),
                                                                           p.phase2.tensor()}));
            if (check > 1e-8)
                res.notes.push_back("warning: branch check against the laminate failed, misfit " +
                                    std::to_string(check));
            break;
        }
        case CaseTag::C1b: {
            res.S = s_matrices(p.phase1.sigma, p.phase2.sigma, red.lambda1, red.lambda2);
            res.ab = strong_ab(p);
            res.residual = [p](const BlockTensor& x) { return residual_1b(p, x); };
            res.notes.push_back("implicit: (L + A T) T Z T (L + A T) + B Z = 0, Z = Z0 (x) Rperp");
            break;
        }
        case CaseTag::C2a: {
            res.a0 = c.roots.small;
            const double ds = red.lambda1 * red.lambda2;
            // theta2/theta1 * a0 / (rho + a0), regular at rho = 0
            const double h = std::sqrt(ds) / (ds - red.rho * red.rho - red.rho * res.a0);
            res.sigma_star = micro(h);
            explicit_result(form_2a(p, res.a0, *res.sigma_star));
            break;
        }
        case CaseTag::C2b: {
            res.ab = strong_ab(p);
            res.residual = [p](const BlockTensor& x) { return residual_2b(p, x); };
            res.notes.push_back("implicit: L = sigma1 (x) L' + t T with det sigma1 det L' = (t + A)^2 + B");
            break;
        }
        case CaseTag::C2c: {
            explicit_result(form_2c(p, phase_fraction(micro.shape(), 0)));
            break;
        }
    }
    return res;
}

}  // namespace te
