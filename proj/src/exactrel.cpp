#include "thermoexact/exactrel.hpp"

#include <algorithm>
#include <cmath>

namespace te {

namespace {

const Mat2& Jm() {
    static const Mat2 j = (Mat2() << 1, 0, 0, -1).finished();
    return j;
}

const std::vector<ERSpec>& specs() {
    static const std::vector<ERSpec> s = {
        {7, 7, InversionKey::Half, "L11 = L22, L12 antisymmetric, det L11 = (1 + theta)^2"},
        {8, 8, InversionKey::Zero, "L11 = L22, L12 antisymmetric"},
        {9, 9, InversionKey::Half, "L = Lambda (x) P, Lambda11 = 1, det Lambda det P = 1"},
        {13, 13, InversionKey::Zero, "L12 = L11 Rperp - Rperp, L22 = cof(L11)"},
        {17, 17, InversionKey::Half, "L (J (x) Rperp) L = J (x) Rperp"},
        {19, 19, InversionKey::Half, "LM form with M^2 = -I"},
        {20, 20, InversionKey::Half, "LM form with det M = 1"},
        {21, 21, InversionKey::Half, "LM form: L22 = (L12 + Rperp)^T L11^-1 (L12 + Rperp)"},
        {22, 22, InversionKey::Half, "L (I (x) Rperp) L = I (x) Rperp"},
    };
    return s;
}

Mat4 key4(InversionKey key) { return kron(key_matrix(key), I2()); }

BlockTensor from_blocks(const Mat2& a, const Mat2& b, const Mat2& c) {
    BlockTensor t;
    t.L11 = a;
    t.L12 = b;
    t.L22 = c;
    return t;
}

double fro(const Mat2& m) { return m.norm(); }

Mat2 spd_det1(Rng& rng) {
    Mat2 s = rng.spd2();
    return s / std::sqrt(s.determinant());
}

Mat4 expm_sym(const Mat4& h) {
    Eigen::SelfAdjointEigenSolver<Mat4> es(h);
    return es.eigenvectors() * es.eigenvalues().array().exp().matrix().asDiagonal() *
           es.eigenvectors().transpose();
}

}  // namespace

const std::vector<int>& er_ids() {
    static const std::vector<int> ids = {7, 8, 9, 13, 17, 19, 20, 21, 22};
    return ids;
}

const ERSpec& er_spec(int id) {
    for (const auto& s : specs())
        if (s.id == id) return s;
    throw InputError("no exact relation with id " + std::to_string(id));
}

BlockTensor lm_par(const LMPair& p) {
    return from_blocks(p.L, p.L * p.M - Rperp(), p.M.transpose() * p.L * p.M);
}

LMPair lm_unpar(const BlockTensor& L) {
    if (std::abs(L.L11.determinant()) <= 1e-14 * scale_of(L.L11) * scale_of(L.L11))
        throw DomainError("lm_unpar: L11 is singular");
    LMPair p;
    p.L = L.L11;
    p.M = L.L11.inverse() * (L.L12 + Rperp());
    return p;
}

double lm_positivity_margin(const LMPair& p) {
    const Mat2 s = sym(p.L / p.L.determinant() + 2.0 * Rperp() * p.M);
    return Eigen::SelfAdjointEigenSolver<Mat2>(s).eigenvalues()(1);
}

Mat4 gamma0(const Vec2& n, const IsoMaterial& iso) {
    const double nn = n.squaredNorm();
    if (!(nn > 0.0)) throw InputError("gamma0: zero normal");
    if (std::abs(iso.lambda.determinant()) < 1e-300) throw DomainError("gamma0: singular Lambda");
    return kron(iso.lambda.inverse(), n * n.transpose() / nn);
}

KTensor w_transform(const BlockTensor& L, const BlockTensor& L0, InversionKey key) {
    const Mat4 a = L.dense() - L0.dense();
    const Mat4 s = I4() + key4(key) * a;
    return kt_from_dense(a * dense_inverse(s));
}

BlockTensor w_inverse(const KTensor& K, const BlockTensor& L0, InversionKey key) {
    const Mat4 k = kt_dense(K);
    const Mat4 s = I4() - key4(key) * k;
    return BlockTensor::from_dense(L0.dense() + k * dense_inverse(s), 1e-8);
}

KTensor w_transform(const BlockTensor& L, InversionKey key) {
    return w_transform(L, BlockTensor::from_dense(I4()), key);
}

BlockTensor w_inverse(const KTensor& K, InversionKey key) {
    return w_inverse(K, BlockTensor::from_dense(I4()), key);
}

void er9_factor(const BlockTensor& L, Mat2& lambda, Mat2& p) {
    p = L.L11;
    if (std::abs(p.determinant()) <= 1e-300) throw DomainError("er9_factor: L11 singular");
    const Mat2 pinv = p.inverse();
    const double l = 0.5 * (L.L12 * pinv).trace();
    const double e = 0.5 * (L.L22 * pinv).trace();
    lambda << 1.0, l, l, e;
}

ERResult er_member(int id, const BlockTensor& L, double tol) {
    er_spec(id);
    ERResult r;
    r.id = id;
    const Mat4 d = L.dense();
    r.pd = is_pd(d);
    const double norm = 1.0 + d.norm();
    const double n2 = norm * norm;
    double res = 0.0;
    auto add = [&](double v) { res = std::max(res, v); };
    auto constraint = [&](std::string name, double margin) {
        r.constraints.push_back({std::move(name), margin, margin > 0.0});
    };

    const Mat2& L11 = L.L11;
    const Mat2& L12 = L.L12;
    const Mat2& L22 = L.L22;
    const bool l11_ok = std::abs(L11.determinant()) > 1e-14 * scale_of(L11) * scale_of(L11);

    auto schur21 = [&] {
        if (!l11_ok) return 1.0;
        const Mat2 b = L12 + Rperp();
        return fro(L22 - b.transpose() * L11.inverse() * b) / n2;
    };

    switch (id) {
        case 8:
            add(fro(L11 - L22) / n2);
            add(fro(sym(L12)) / n2);
            break;
        case 7: {
            add(fro(L11 - L22) / n2);
            add(fro(sym(L12)) / n2);
            const double th = 0.5 * (L12(1, 0) - L12(0, 1));
            add(std::abs(L11.determinant() - (1 + th) * (1 + th)) / n2);
            break;
        }
        case 13:
            add(fro(L12 - (L11 * Rperp() - Rperp())) / n2);
            add(fro(L22 - cof(L11)) / n2);
            constraint("L11 - I/2 > 0",
                       Eigen::SelfAdjointEigenSolver<Mat2>(L11 - 0.5 * I2()).eigenvalues()(0));
            break;
        case 17: {
            const Mat4 o = kron(Jm(), Rperp());
            add((d * o * d - o).norm() / n2);
            break;
        }
        case 22: {
            const Mat4 o = kron(I2(), Rperp());
            add((d * o * d - o).norm() / n2);
            break;
        }
        case 20: {
            const Mat4 o = kron(Jm(), Rperp());
            const Mat4 lt = d - Tmat();
            add((lt * o * lt).norm() / n2);
            add(schur21());
            break;
        }
        case 21:
        case 19:
            add(schur21());
            if (id == 19) {
                if (l11_ok) {
                    const Mat2 m = L11.inverse() * (L12 + Rperp());
                    add(fro(m * m + I2()) / n2);
                } else {
                    add(1.0);
                }
            }
            break;
        case 9: {
            Mat2 lam, p;
            if (!l11_ok) {
                add(1.0);
                break;
            }
            er9_factor(L, lam, p);
            add((d - kron(lam, p)).norm() / n2);
            add(std::abs(lam.determinant() * p.determinant() - 1.0) / n2);
            break;
        }
        default:
            break;
    }
    if (id == 19 || id == 20 || id == 21) {
        const double l11min = Eigen::SelfAdjointEigenSolver<Mat2>(sym(L11)).eigenvalues()(0);
        constraint("L > 0", l11min);
        if (l11_ok) constraint("L + 2 Rperp M det L < 0", -lm_positivity_margin(lm_unpar(L)));
    }
    r.residual = res;
    r.member = r.pd && res <= tol;
    return r;
}

double er_pullback_residual(int id, const BlockTensor& L) {
    const ERSpec& s = er_spec(id);
    return residual(algebra(s.algebra_id), w_transform(L, s.key));
}

BlockTensor er_sample(int id, Rng& rng, double scale) {
    const ERSpec& s = er_spec(id);
    const AlgebraSpec& a = algebra(s.algebra_id);
    const KTensor k = sample(a, rng);
    for (int attempt = 0; attempt < 100; ++attempt) {
        try {
            const BlockTensor L = w_inverse(scale * k, s.key);
            if (is_pd(L.dense())) return L;
        } catch (const DomainError&) {
        }
        scale *= 0.5;
    }
    throw DomainError("er_sample: no positive definite sample");
}

BlockTensor er_sample(int id, std::uint64_t seed, double scale) {
    Rng rng(seed);
    return er_sample(id, rng, scale);
}

BlockTensor er_generate(int id, Rng& rng) {
    er_spec(id);
    for (int attempt = 0; attempt < 10000; ++attempt) {
        BlockTensor L;
        switch (id) {
            case 21:
                L = lm_par({rng.spd2(), rng.mat2()});
                break;
            case 20: {
                Mat2 m = rng.mat2();
                const double det = m.determinant();
                if (det <= 1e-3) continue;
                L = lm_par({rng.spd2(), m / std::sqrt(det)});
                break;
            }
            case 19:
                L = lm_par({rng.spd2(), Rperp() * spd_det1(rng)});
                break;
            case 13:
                L = lm_par({rng.spd2() + 0.5 * I2(), Rperp()});
                break;
            case 7: {
                const Mat2 s = spd_det1(rng);
                L = lm_par({rng.uni(0.6, 2.0) * s, Rperp() * s});
                break;
            }
            case 9: {
                Mat2 lam = rng.spd2();
                lam /= lam(0, 0);
                Mat2 p = rng.spd2();
                p /= std::sqrt(p.determinant() * lam.determinant());
                L = BlockTensor::from_dense(kron(lam, p));
                break;
            }
            case 17:
            case 22: {
                const Mat4 o = kron(id == 22 ? I2() : Jm(), Rperp());
                const Mat4 h0 = rng.mat4();
                const Mat4 h = h0 + h0.transpose();
                const Mat4 ha = 0.5 * (h - o * h * o.transpose());
                L = BlockTensor::from_dense(expm_sym(0.5 * ha));
                break;
            }
            case 8: {
                const Mat2 s = 2.0 * rng.spd2();
                L = from_blocks(s, rng.uni() * Rperp(), s);
                break;
            }
        }
        if (is_pd(L.dense())) return L;
    }
    throw DomainError("er_generate: no positive definite sample");
}

double er_component_residual(int id, const BlockTensor& L) {
    const double sg = id == 17 ? -1.0 : 1.0;  // det L12 enters with this sign
    const Mat2 schur = L.L11 - L.L12 * L.L22.inverse() * L.L12.transpose();
    const double d12 = L.L12.determinant();
    const double n = 1.0 + L.dense().norm();
    double r = fro(L.L11 / L.L11.determinant() - schur) / (n * n);
    r = std::max(r, std::abs(L.L11.determinant() + sg * d12 - 1.0) / (n * n));
    r = std::max(r, std::abs(L.L22.determinant() + sg * d12 - 1.0) / (n * n));
    return r;
}

BlockTensor covariance(const Mat2& lambda, const BlockTensor& L) {
    if (!is_pd(lambda)) throw DomainError("covariance: Lambda is not positive definite");
    const Mat4 c = kron(inv_sqrtm_spd(lambda), I2());
    return BlockTensor::from_dense(c * L.dense() * c);
}

}  // namespace te
