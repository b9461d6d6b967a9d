#include "thermoexact/linkgroup.hpp"

#include "thermoexact/exactrel.hpp"

#include <cmath>

namespace te {

namespace {

Mat2 mat(double a, double b, double c, double d) { return (Mat2() << a, b, c, d).finished(); }

double max_eig(const Mat2& m) { return Eigen::SelfAdjointEigenSolver<Mat2>(sym(m)).eigenvalues()(1); }
double min_eig(const Mat2& m) { return Eigen::SelfAdjointEigenSolver<Mat2>(sym(m)).eigenvalues()(0); }

Mat2 sign_fix(const Mat2& m) {
    for (int i = 0; i < 4; ++i) {
        const double v = m(i / 2, i % 2);
        if (std::abs(v) > 1e-14 * scale_of(m)) return v < 0 ? Mat2(-m) : m;
    }
    return m;
}

}  // namespace

BlockTensor psi_apply(const LinkMap& m, const BlockTensor& L) {
    const Mat4 l = L.dense();
    const Mat4& t = Tmat();
    const Mat4 den = m.A(1, 0) * l + m.A(1, 1) * t;
    const Mat4 num = m.A(0, 0) * l + m.A(0, 1) * t;
    const Mat4 b = kron(m.B, I2());
    const Mat4 out = b * t * dense_inverse(den) * num * b.transpose();
    return BlockTensor::from_dense(out, 1e-8);
}

LinkMap psi_compose(const LinkMap& m1, const LinkMap& m2) {
    const Mat2 d = mat(m2.B.determinant(), 0, 0, 1);
    LinkMap out;
    out.A = d.inverse() * m1.A * d * m2.A;
    out.B = m1.B * m2.B;
    return out;
}

LinkMap psi_inverse(const LinkMap& m) {
    if (std::abs(m.A.determinant()) < 1e-300 || std::abs(m.B.determinant()) < 1e-300)
        throw DomainError("psi_inverse: singular link parameters");
    const Mat2 d = mat(m.B.determinant(), 0, 0, 1);
    LinkMap out;
    out.A = d * m.A.inverse() * d.inverse();
    out.B = m.B.inverse();
    return out;
}

LinkMap canonical(const LinkMap& m) {
    const double db = m.B.determinant();
    const double da = m.A.determinant();
    if (db == 0.0 || da == 0.0) throw DomainError("canonical: singular link parameters");
    // Psi_{A, l B} = Psi_{diag(l^2, 1) A, B}
    const double l = std::sqrt(std::abs(db));
    LinkMap out;
    out.B = m.B / l;
    out.A = mat(l * l, 0, 0, 1) * m.A;
    out.A /= std::sqrt(std::abs(out.A.determinant()));
    out.A = sign_fix(out.A);
    out.B = sign_fix(out.B);
    return out;
}

bool same_map(const LinkMap& m1, const LinkMap& m2, double tol) {
    const LinkMap a = canonical(m1), b = canonical(m2);
    return (a.A - b.A).norm() <= tol * scale_of(a.A) && (a.B - b.B).norm() <= tol * scale_of(a.B);
}

LinkMap link_identity() { return {}; }
LinkMap link_flip() { return {mat(1, 0, 1, -1), Mat2::Identity()}; }
LinkMap link_inverse_shift(double a0) { return {mat(1, 0, a0, 1), Mat2::Identity()}; }
LinkMap link_shift(double b0) { return {mat(1, b0, 0, 1), Mat2::Identity()}; }
LinkMap link_congruence(const Mat2& b) { return {Mat2::Identity(), b}; }

LinkMap psi_normalizer(const IsoMaterial& iso) {
    if (!iso.valid()) throw DomainError("psi_normalizer: isotropic tensor is not positive definite");
    return {mat(1, -iso.nu, 0, 1), inv_sqrtm_spd(iso.lambda)};
}

Mat2 link13_volume_fraction(const std::vector<std::pair<Mat2, double>>& phases) {
    if (phases.empty()) throw InputError("link13: no phases");
    double total = 0;
    Mat2 h = Mat2::Zero();
    for (const auto& [l, f] : phases) {
        if (f < 0) throw InputError("link13: negative volume fraction");
        if (!is_pd(Mat2(l - 0.5 * I2()))) throw DomainError("link13: phase L must exceed I/2");
        total += f;
        h += f * l.inverse();
    }
    if (std::abs(total - 1.0) > 1e-12) throw InputError("link13: volume fractions must sum to 1");
    return sym(h.inverse());
}

BlockTensor link19_family(double gamma0, const BlockTensor& L) {
    const ERResult r = er_member(19, L, 1e-8);
    if (!r.member) throw DomainError("link19_family: input is not a member of relation 19");
    const LMPair p = lm_unpar(L);
    const Mat2 li = p.L.inverse();
    const Mat2 mr = p.M * Rperp();
    const Mat2 P = sym(gamma0 * p.M * li * p.M.transpose() + (1 + gamma0) * li + 2 * gamma0 * mr);
    if (!(min_eig(P) > 0) || !(max_eig(P + 2 * mr) < 0))
        throw DomainError("link19_family: gamma0 outside the admissible range");
    return lm_par({sym(P.inverse()), p.M});
}

double er18_extra_residual(const BlockTensor& L) {
    const LMPair p = lm_unpar(L);
    const Mat2 li = p.L.inverse();
    return (p.M * li - li * p.M.transpose() - 2 * Rperp()).norm() / (1 + L.dense().norm());
}

Conductivity19 link19_conductivity(const BlockTensor& L) {
    if (!er_member(19, L, 1e-8).member)
        throw DomainError("link19_conductivity: input is not a member of relation 19");
    const LMPair p = lm_unpar(L);
    Conductivity19 c;
    c.sigma = sym(-Rperp() * p.M);
    c.mu = 2.0 / (p.L * c.sigma).trace();
    return c;
}

BlockTensor er7_from_conductivity(const Conductivity19& c) {
    return lm_par({c.mu * c.sigma, Rperp() * c.sigma});
}

Factor21 link21_factor(const Mat2& M) {
    const double tr = M.trace();
    Factor21 f;
    f.lambda = mat(1, tr / 2, tr / 2, M.determinant());
    const double dl = f.lambda.determinant();
    if (std::abs(dl) <= 1e-14 * scale_of(M) * scale_of(M))
        throw DomainError("link21_factor: degenerate Lambda(M)");
    f.p = -Rperp() * (M - 0.5 * tr * I2()) / dl;
    return f;
}

Mat2 link21_unfactor(const Factor21& f) {
    return f.lambda(0, 1) * I2() + Rperp() * f.p * f.lambda.determinant();
}

}  // namespace te
