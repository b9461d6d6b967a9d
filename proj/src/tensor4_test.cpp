#include "doctest.h"
#include "thermoexact/random.hpp"
#include "thermoexact/tensor4.hpp"

#include <cmath>
#include <numbers>

using namespace te;

namespace {
constexpr cplx i1{0.0, 1.0};

double rel(const Mat4& a, const Mat4& b) { return (a - b).cwiseAbs().maxCoeff() / scale_of(b); }

KTensor random_sym(Rng& r) { return {r.herm(), r.csym()}; }

KTensor random_pd(Rng& r) { return kt_from_dense(r.spd4()); }

double min_eig(const Mat4& m) {
    Eigen::SelfAdjointEigenSolver<Mat4> es(m, Eigen::EigenvaluesOnly);
    return es.eigenvalues()(0);
}
}  // namespace

TEST_CASE("phi and psi") {
    CHECK(phi(1.0).isApprox(I2()));
    CHECK(phi(i1).isApprox(Rperp()));
    CHECK(phi(cplx(2, 3)).isApprox((Mat2() << 2, -3, 3, 2).finished()));
    CHECK(psi(1.0).isApprox((Mat2() << 1, 0, 0, -1).finished()));
    CHECK(psi(i1).isApprox((Mat2() << 0, 1, 1, 0).finished()));
    CHECK(psi(0.0).isZero());
    // psi(i) = phi(i) psi(1)
    CHECK(psi(i1).isApprox(phi(i1) * psi(1.0)));
}

TEST_CASE("constants") {
    CHECK((Z0() * Z0()).isApprox(2.0 * Z0()));
    CHECK(Rperp().transpose().isApprox(-Rperp()));
    const KTensor t{(CMat2() << 0, -i1, i1, 0).finished(), CMat2::Zero()};
    CHECK(kt_dense(t).isApprox(Tmat()));
    CHECK((Tmat() * Tmat()).isApprox(I4()));
}

TEST_CASE("cofactor convention") {
    Rng r(11);
    for (int k = 0; k < 20; ++k) {
        const Mat2 m = r.mat2();
        CHECK((m * cof(m).transpose()).isApprox(m.determinant() * I2(), 1e-13));
    }
    const Mat2 a = r.spd2();
    CHECK((Rperp() * a * Rperp().transpose()).isApprox(cof(a)));
}

TEST_CASE("representation map") {
    CHECK(kt_dense({CMat2::Identity(), CMat2::Zero()}).isApprox(I4()));
    Mat4 expect = Mat4::Zero();
    expect.topLeftCorner<2, 2>() = psi(1.0);
    expect.bottomRightCorner<2, 2>() = psi(1.0);
    CHECK(kt_dense({CMat2::Zero(), CMat2::Identity()}).isApprox(expect));

    Rng r(1);
    double worst = 0;
    for (int k = 0; k < 10000; ++k) {
        const KTensor a = random_sym(r);
        const BlockTensor b = kt_to_block(a);
        const KTensor back = kt_from_block(b);
        worst = std::max({worst, (back.X - a.X).cwiseAbs().maxCoeff(), (back.Y - a.Y).cwiseAbs().maxCoeff()});
    }
    CHECK(worst < 1e-14);
    CHECK_THROWS_AS(kt_make(CMat2::Identity() * i1, CMat2::Zero()), InputError);
}

TEST_CASE("multiplication rule matches dense product") {
    const KTensor id{CMat2::Identity(), CMat2::Zero()};
    const KTensor z{Z0(), CMat2::Zero()};
    CHECK(kt_dense(kt_mul(id, id)).isApprox(I4()));
    CHECK(kt_dense(kt_mul(z, z)).isApprox(kt_dense(2.0 * z)));
    Rng r(2);
    double worst = 0;
    for (int k = 0; k < 10000; ++k) {
        const KTensor a{r.cmat2(), r.cmat2()}, b{r.cmat2(), r.cmat2()};
        worst = std::max(worst, rel(kt_dense(kt_mul(a, b)), kt_dense(a) * kt_dense(b)));
    }
    CHECK(worst < 1e-12);
}

TEST_CASE("transpose") {
    Rng r(3);
    const KTensor s = random_sym(r);
    CHECK(kt_dense(kt_transpose(s)).isApprox(kt_dense(s)));
    const KTensor g{i1 * Rperp().cast<cplx>(), CMat2::Zero()};
    CHECK(kt_dense(kt_transpose(g)).isApprox(kt_dense(g).transpose()));
    CHECK((kt_transpose(g).X - g.X.adjoint()).norm() < 1e-15);
    for (int k = 0; k < 100; ++k) {
        const KTensor a{r.cmat2(), r.cmat2()}, b{r.cmat2(), r.cmat2()};
        CHECK(rel(kt_dense(kt_transpose(kt_mul(a, b))),
                  kt_dense(kt_mul(kt_transpose(b), kt_transpose(a)))) < 1e-13);
    }
}

TEST_CASE("inverse") {
    const KTensor a{2.0 * CMat2::Identity(), CMat2::Zero()};
    CHECK(kt_dense(kt_inverse(a)).isApprox(kt_dense({0.5 * CMat2::Identity(), CMat2::Zero()})));
    const KTensor b{2.0 * CMat2::Identity(), CMat2::Identity()};
    const KTensor bi = kt_inverse(b);
    CHECK((bi.X - (2.0 / 3.0) * CMat2::Identity()).norm() < 1e-14);
    CHECK((bi.Y + (1.0 / 3.0) * CMat2::Identity()).norm() < 1e-14);

    Rng r(4);
    double worst = 0, pair = 0;
    for (int k = 0; k < 10000; ++k) {
        const KTensor p = random_pd(r);
        const Mat4 dense = kt_dense(p).inverse();
        const Mat4 ix = kt_dense(kt_inverse_x(p));
        worst = std::max(worst, rel(kt_dense(kt_inverse(p)), dense));
        if (std::abs(p.Y.determinant()) > 1e-3) pair = std::max(pair, rel(kt_dense(kt_inverse_y(p)), ix));
    }
    CHECK(worst < 1e-12);
    CHECK(pair < 1e-10);
}

TEST_CASE("block inverse") {
    BlockTensor id{I2(), Mat2::Zero(), I2()};
    CHECK(block_inverse(id).dense().isApprox(I4()));
    Rng r(5);
    const Mat2 A = r.spd2(), D = r.spd2();
    const BlockTensor bd{A, Mat2::Zero(), D};
    const BlockTensor bdi = block_inverse(bd);
    CHECK(bdi.L11.isApprox(A.inverse()));
    CHECK(bdi.L22.isApprox(D.inverse()));
    double worst = 0, forms = 0, cross = 0;
    for (int k = 0; k < 10000; ++k) {
        const BlockTensor b = BlockTensor::from_dense(r.spd4());
        const Mat4 dense = b.dense().inverse();
        worst = std::max(worst, rel(block_inverse(b).dense(), dense));
        forms = std::max(forms, rel(block_inverse_a(b).dense(), block_inverse_b(b).dense()));
        cross = std::max(cross, rel(block_inverse(b).dense(), kt_dense(kt_inverse(kt_from_block(b)))));
    }
    CHECK(worst < 1e-12);
    CHECK(forms < 1e-12);
    CHECK(cross < 1e-12);
    // singular diagonal blocks: fall back
    Mat4 m = Mat4::Zero();
    m(0, 2) = m(2, 0) = m(1, 3) = m(3, 1) = 1.0;
    const BlockTensor off = BlockTensor::from_dense(m);
    CHECK(block_inverse(off).dense().isApprox(m.inverse()));
    CHECK_THROWS_AS(block_inverse(BlockTensor{}), DomainError);
}

TEST_CASE("positive definiteness") {
    CHECK(is_positive_definite({CMat2::Identity(), CMat2::Zero()}));
    CHECK_FALSE(is_positive_definite({CMat2::Identity(), CMat2::Identity()}));
    Rng r(6);
    int agree = 0, tested = 0;
    for (int k = 0; k < 1000; ++k) {
        KTensor t{r.herm() + 0.8 * CMat2::Identity(), 0.9 * r.csym()};
        const double ev = min_eig(kt_dense(t));
        if (std::abs(ev) < 1e-9) continue;
        ++tested;
        agree += (is_positive_definite(t) == (ev > 0));
    }
    CHECK(tested > 900);
    CHECK(agree == tested);
}

TEST_CASE("rotation") {
    Rng r(7);
    const KTensor k = random_sym(r);
    const KTensor h = rotate(std::numbers::pi / 2, k);
    CHECK((h.Y + k.Y).norm() < 1e-14);
    CHECK((h.X - k.X).norm() == 0.0);
    const KTensor iso{r.herm(), CMat2::Zero()};
    CHECK((rotate(0.7, iso).Y).norm() == 0.0);
    for (int n = 0; n < 50; ++n) {
        const double t = r.uni(-3, 3), s = r.uni(-3, 3);
        const Mat4 Q = kron(I2(), rot2(t));
        CHECK(rel(kt_dense(rotate(t, k)), Q * kt_dense(k) * Q.transpose()) < 1e-13);
        CHECK(rel(kt_dense(rotate(t, rotate(s, k))), kt_dense(rotate(t + s, k))) < 1e-13);
    }
    CHECK(rel(kt_dense(rotate(std::numbers::pi, k)), kt_dense(k)) < 1e-14);
}

TEST_CASE("Jordan product") {
    const KTensor id{CMat2::Identity(), CMat2::Zero()};
    const KTensor a{CMat2::Zero(), CMat2::Identity()};
    const KTensor j = jordan_star(id, a, id);
    CHECK(j.X.norm() < 1e-15);
    CHECK((j.Y - CMat2::Identity()).norm() < 1e-15);
    CHECK(kt_norm(jordan_star(KTensor{}, a, KTensor{})) == 0.0);
    Rng r(8);
    for (int n = 0; n < 100; ++n) {
        const KTensor k1 = random_sym(r), k2 = random_sym(r);
        const KTensor A{CMat2::Zero(), r.cuni() * CMat2::Identity()};
        const Mat4 d1 = kt_dense(k1), d2 = kt_dense(k2), da = kt_dense(A);
        const Mat4 expect = 0.5 * (d1 * da * d2 + d2 * da * d1);
        const Mat4 got = kt_dense(jordan_star(k1, A, k2));
        CHECK(rel(got, expect) < 1e-13);
        CHECK((got - got.transpose()).cwiseAbs().maxCoeff() < 1e-13);
    }
    // K(X,Y) K(0,zI) K(X,Y) = K(z X conj(Y) + conj(z) Y X, z X conj(X) + conj(z) Y^2)
    const KTensor k = random_sym(r);
    const cplx z = r.cuni();
    const KTensor A{CMat2::Zero(), z * CMat2::Identity()};
    const KTensor p = kt_mul(kt_mul(k, A), k);
    CHECK((p.X - (z * k.X * k.Y.conjugate() + std::conj(z) * k.Y * k.X)).norm() < 1e-13);
    CHECK((p.Y - (z * k.X * k.X.conjugate() + std::conj(z) * k.Y * k.Y)).norm() < 1e-13);
}
