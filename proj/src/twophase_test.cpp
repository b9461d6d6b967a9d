#include "doctest.h"
#include "thermoexact/random.hpp"
#include "thermoexact/twophase.hpp"

#include <cmath>

using namespace te;

namespace {

double rel(const BlockTensor& a, const BlockTensor& b) {
    return (a.dense() - b.dense()).norm() / b.dense().norm();
}

Mat2 diag(double a, double b) { return Eigen::Vector2d(a, b).asDiagonal(); }

BlockTensor lam(const IsoPhasePair& p, const SigmaModel& m) {
    return laminate_tree(m.shape(), {p.phase1.tensor(), p.phase2.tensor()});
}

IsoPhasePair pair_1ai(Rng& rng) {
    for (;;) {
        IsoPhasePair p{{rng.spd2(), 0}, {3.0 * rng.spd2(), 0}};
        const double d1 = std::sqrt(p.phase1.sigma.determinant());
        const double d2 = std::sqrt(p.phase2.sigma.determinant());
        p.phase1.r = 0.3 * d1 * rng.uni();
        p.phase2.r = p.phase1.r + 0.8 * std::abs(d1 - d2) * rng.uni();
        if (p.phase2.r * p.phase2.r < 0.95 * d2 * d2 && std::abs(d1 - d2) > 0.1) return p;
    }
}

IsoPhasePair pair_1aii(Rng& rng) {
    for (;;) {
        const Mat2 s = sqrtm_spd(rng.spd2());
        const double l1 = rng.uni(1.5, 4.0), rho = rng.uni(-0.9, 0.9);
        const double l2 = rho * rho / (l1 - 1) + 1;
        IsoPhasePair p;
        p.phase1 = {s * s, 0.2 * s.determinant() * rng.uni()};
        p.phase2 = {s * diag(l1, l2) * s, 0};
        p.phase2.r = rho * s.determinant() + p.phase1.r;
        if (p.phase2.r * p.phase2.r < 0.95 * p.phase2.sigma.determinant()) return p;
    }
}

IsoPhasePair pair_1cii(Rng& rng) {
    IsoPhasePair p{{rng.spd2(), 0}, {rng.spd2(), 0}};
    p.phase2.sigma *= std::sqrt(p.phase1.sigma.determinant() / p.phase2.sigma.determinant());
    p.phase1.r = p.phase2.r = 0.5 * std::sqrt(p.phase1.sigma.determinant()) * rng.uni();
    return p;
}

IsoPhasePair pair_1ci(Rng& rng, double sign) {
    for (;;) {
        IsoPhasePair p{{rng.spd2(), 0}, {2.5 * rng.spd2(), 0}};
        const double d1 = std::sqrt(p.phase1.sigma.determinant());
        const double d2 = std::sqrt(p.phase2.sigma.determinant());
        p.phase1.r = 0.3 * d1 * rng.uni();
        p.phase2.r = p.phase1.r + sign * (d2 - d1);
        if (p.phase2.r * p.phase2.r < 0.95 * d2 * d2 && std::abs(d1 - d2) > 0.1) return p;
    }
}

IsoPhasePair pair_1b(Rng& rng) {
    for (;;) {
        IsoPhasePair p{{rng.spd2(), 0}, {rng.spd2(), 0}};
        const double d1 = std::sqrt(p.phase1.sigma.determinant());
        const double d2 = std::sqrt(p.phase2.sigma.determinant());
        p.phase1.r = -rng.uni(0.5, 0.95) * d1;
        p.phase2.r = rng.uni(0.5, 0.95) * d2;
        if (std::abs(p.phase2.r - p.phase1.r) > std::abs(d1 - d2) + 0.05) return p;
    }
}

// sigma_j = theta_j sigma0 with det sigma0 = 1
IsoPhasePair pair_prop(Rng& rng, double th1, double th2, double r1, double r2) {
    Mat2 s0 = rng.spd2();
    s0 /= std::sqrt(s0.determinant());
    return {{th1 * s0, r1}, {th2 * s0, r2}};
}

std::vector<SigmaModel> models(Rng& rng) {
    return {SigmaModel::rank_one(rng.unit(), rng.unit_vec()),
            SigmaModel::rank_two(rng.unit(), rng.unit_vec(), rng.unit(), rng.unit_vec())};
}

}  // namespace

TEST_CASE("reduction") {
    const IsoPhasePair same{{2.0 * I2(), 0.5}, {2.0 * I2(), 1.5}};
    const Reduced r0 = reduce(same);
    CHECK((r0.sigma - I2()).norm() < 1e-15);
    CHECK(r0.rho == doctest::Approx(0.5));
    const Reduced r1 = reduce({{I2(), 0}, {diag(4, 1), 0}});
    CHECK(r1.lambda1 == doctest::Approx(4.0));
    CHECK(r1.lambda2 == doctest::Approx(1.0));

    Rng rng(1);
    for (int t = 0; t < 200; ++t) {
        const IsoPhasePair p{{rng.spd2(), 0}, {rng.spd2(), 0}};
        const Reduced r = reduce(p);
        CHECK(r.lambda1 >= r.lambda2);
        for (double l : {r.lambda1, r.lambda2})
            CHECK(std::abs((p.phase2.sigma - l * p.phase1.sigma).determinant()) <
                  1e-12 * p.phase2.sigma.squaredNorm());
        CHECK(r.frame.determinant() == doctest::Approx(1.0));
        const Mat2 back = r.s1_half * r.frame * r.sigma * r.frame.transpose() * r.s1_half;
        CHECK((back - p.phase2.sigma).norm() < 1e-12 * scale_of(p.phase2.sigma));
    }
    CHECK_THROWS_AS(reduce({{I2(), 1.0}, {I2(), 0}}), DomainError);
    CHECK_THROWS_AS(reduce({{-I2(), 0}, {I2(), 0}}), DomainError);
}

TEST_CASE("a0 roots") {
    const A0Roots d = a0_roots(4.0, 1.0);
    CHECK(d.real);
    CHECK(d.small == doctest::Approx(1.0));
    CHECK(d.large == doctest::Approx(1.0));
    const A0Roots z = a0_roots(3.0, 0.0);
    CHECK(z.degenerate);
    CHECK(z.small == 0.0);
    CHECK(std::isinf(z.large));
    CHECK_FALSE(a0_roots(1.0, 0.5).real);

    Rng rng(2);
    int weak = 0;
    for (int t = 0; t < 1000; ++t) {
        const double ds = std::exp(rng.uni(-2, 2)), rho = rng.uni(-1, 1);
        const A0Roots r = a0_roots(ds, rho);
        if (!r.real) continue;
        ++weak;
        CHECK(r.small * r.large == doctest::Approx(1.0));
        CHECK(std::abs(r.small) <= 1.0 + 1e-12);
        for (double a : {r.small, r.large})
            CHECK((a * a + 1) * rho == doctest::Approx(a * (ds - rho * rho - 1)).epsilon(1e-10));
        const double q1 = r.small / (rho + r.small), q2 = r.large / (rho + r.large);
        CHECK(q1 * q2 == doctest::Approx(1.0 / ds).epsilon(1e-10));
        CHECK(q1 + q2 == doctest::Approx((ds - rho * rho + 1) / ds).epsilon(1e-10));
        CHECK(q1 > 0);
        CHECK(q2 > 0);
        CHECK((1 - r.small * r.small) / (ds - (rho + r.small) * (rho + r.small)) ==
              doctest::Approx(q1).epsilon(1e-9));
    }
    CHECK(weak > 100);
}

TEST_CASE("classification examples") {
    CHECK(classify({{I2(), 0}, {4.0 * I2(), 0}}).tag == CaseTag::C2a);
    // |dr| = 1 against |sqrt det sigma1 - sqrt det sigma2| = 3 is weak, not borderline
    CHECK(classify({{I2(), 0}, {4.0 * I2(), 1}}).tag == CaseTag::C2a);
    CHECK(classify({{I2(), 0}, {4.0 * I2(), 3}}).tag == CaseTag::C2c);
    CHECK(classify({{I2(), 0}, {4.0 * I2(), -3}}).tag == CaseTag::C2c);
    CHECK(classify({{I2(), -0.9}, {4.0 * I2(), 3.5}}).tag == CaseTag::C2b);
    CHECK(classify({{diag(1, 2), -0.95}, {diag(3, 1), 0.95}}).tag == CaseTag::C1b);
    CHECK(classify({{diag(1, 2), 0.1}, {diag(3, 1), 0.1}}).tag == CaseTag::C1ai);
    CHECK(classify({{diag(2, 1), 0.3}, {diag(1, 2), 0.3}}).tag == CaseTag::C1cii);
    CHECK(to_string(CaseTag::C1aii) == "1aii");

    Rng rng(3);
    for (int t = 0; t < 50; ++t) {
        CHECK(classify(pair_1ai(rng)).tag == CaseTag::C1ai);
        CHECK(classify(pair_1aii(rng)).tag == CaseTag::C1aii);
        CHECK(classify(pair_1cii(rng)).tag == CaseTag::C1cii);
        CHECK(classify(pair_1ci(rng, 1)).tag == CaseTag::C1ci);
        CHECK(classify(pair_1ci(rng, -1)).tag == CaseTag::C1ci);
        CHECK(classify(pair_1b(rng)).tag == CaseTag::C1b);
    }
}

TEST_CASE("classifier agrees with the discriminant") {
    int checked = 0;
    for (int i = 0; i < 100; ++i) {
        for (int j = 0; j < 100; ++j) {
            const double k = 0.2 + 4.0 * i / 99.0;
            const IsoPhasePair p{{diag(1, 2), 0.1}, {k * diag(3, 1), 0}};
            const double d2 = std::sqrt(p.phase2.sigma.determinant());
            const IsoPhasePair q{p.phase1, {p.phase2.sigma, -0.98 * d2 + 1.96 * d2 * j / 99.0}};
            const Classification c = classify(q);
            if (std::abs(c.roots.discriminant) < 1e-9) continue;
            ++checked;
            CHECK(c.weak == (c.roots.discriminant > 0));
        }
    }
    CHECK(checked > 9000);
}

TEST_CASE("strong coupling coefficients") {
    const StrongAB sym = strong_ab({{I2(), -0.5}, {I2(), 0.5}});
    CHECK(sym.A == 0.0);
    const StrongAB border = strong_ab({{I2(), 0}, {4.0 * I2(), 3}});
    CHECK(std::abs(border.B) < 1e-15);
    CHECK_THROWS_AS(strong_ab({{I2(), 0}, {4.0 * I2(), 0}}), DomainError);

    Rng rng(4);
    for (int t = 0; t < 200; ++t) {
        const IsoPhasePair p = pair_1b(rng);
        const StrongAB s = strong_ab(p);
        const double D1 = p.phase1.sigma.determinant(), D2 = p.phase2.sigma.determinant();
        const double r1 = p.phase1.r / std::sqrt(D1), r2 = p.phase2.r / std::sqrt(D1);
        CHECK(s.a > 0);
        CHECK(s.B > 0);
        // both phases land on det = 1
        CHECK(s.a * s.a - (s.a * r1 + s.b) * (s.a * r1 + s.b) == doctest::Approx(1.0).epsilon(1e-10));
        CHECK(s.a * s.a * D2 / D1 - (s.a * r2 + s.b) * (s.a * r2 + s.b) ==
              doctest::Approx(1.0).epsilon(1e-10));
        CHECK(s.a * s.a * s.B == doctest::Approx(D1).epsilon(1e-10));
        CHECK(s.b / s.a == doctest::Approx(s.A / std::sqrt(D1)).epsilon(1e-10));
    }
}

TEST_CASE("explicit cases match laminates") {
    Rng rng(5);
    for (int t = 0; t < 50; ++t) {
        for (const SigmaModel& m : models(rng)) {
            const IsoPhasePair pa = pair_1ai(rng);
            const TwoPhaseResult a = effective(pa, m);
            CHECK(a.explicit_form);
            CHECK(rel(*a.Lstar, lam(pa, m)) < 1e-9);
            CHECK(a.notes.size() == 1);

            const IsoPhasePair pb = pair_1aii(rng);
            const TwoPhaseResult b = effective(pb, m);
            REQUIRE(b.info.tag == CaseTag::C1aii);
            CHECK(rel(*b.Lstar, lam(pb, m)) < 1e-9);
            CHECK(std::abs(b.a0) <= 1.0);
            CHECK(rel(decoupled_effective(pb, m), lam(pb, m)) < 1e-9);

            const IsoPhasePair pc = pair_1cii(rng);
            CHECK(rel(*effective(pc, m).Lstar, lam(pc, m)) < 1e-9);

            const double th1 = rng.uni(0.5, 2), th2 = rng.uni(0.5, 2) * 3;
            const IsoPhasePair p2a = pair_prop(rng, th1, th2, 0.2 * th1 * rng.uni(), 0);
            IsoPhasePair q2a = p2a;
            q2a.phase2.r = p2a.phase1.r + 0.7 * (th2 - th1) * rng.uni();
            const TwoPhaseResult e2a = effective(q2a, m);
            REQUIRE(e2a.info.tag == CaseTag::C2a);
            CHECK(rel(*e2a.Lstar, lam(q2a, m)) < 1e-9);
            CHECK(rel(decoupled_effective(q2a, m), lam(q2a, m)) < 1e-9);

            const double sg = rng.uni() < 0 ? -1.0 : 1.0;
            IsoPhasePair p2c = pair_prop(rng, th1, th2, 0.1 * th1, 0);
            p2c.phase2.r = p2c.phase1.r + sg * (th2 - th1);
            const TwoPhaseResult e2c = effective(p2c, m);
            REQUIRE(e2c.info.tag == CaseTag::C2c);
            CHECK(rel(*e2c.Lstar, lam(p2c, m)) < 1e-9);
        }
    }
}

TEST_CASE("uncoupled phases and zero thermoelectric contrast") {
    Rng rng(6);
    const SigmaModel m = SigmaModel::rank_one(0.3, Vec2(1, 2));
    // r1 = r2 = 0 with generic sigmas: weakly coupled, scalar Seebeck stays zero
    const IsoPhasePair p{{rng.spd2(), 0}, {2.0 * rng.spd2(), 0}};
    const TwoPhaseResult r = effective(p, m);
    CHECK(r.explicit_form);
    CHECK(rel(*r.Lstar, lam(p, m)) < 1e-9);
    // 2a with r1 = r2 reduces to sigma1 (x) Sigma(theta2 / theta1)
    const IsoPhasePair q = pair_prop(rng, 1.0, 3.0, 0.2, 0.2);
    const TwoPhaseResult e = effective(q, m);
    REQUIRE(e.info.tag == CaseTag::C2a);
    CHECK(e.a0 == 0.0);
    CHECK(rel(*e.Lstar, lam(q, m)) < 1e-12);
    // 1aii at rho = 0
    const Mat2 s = sqrtm_spd(rng.spd2());
    const IsoPhasePair z{{s * s, 0.1}, {s * diag(2.5, 1.0) * s, 0.1}};
    const TwoPhaseResult ez = effective(z, m);
    REQUIRE(ez.info.tag == CaseTag::C1aii);
    CHECK(rel(*ez.Lstar, lam(z, m)) < 1e-9);
}

TEST_CASE("isotropic shortcut and root pairing") {
    Rng rng(7);
    for (int t = 0; t < 100; ++t) {
        const IsoPhasePair p = pair_1aii(rng);
        const Reduced red = reduce(p);
        const double d1 = std::sqrt(p.phase1.sigma.determinant());
        const double a0 = (red.lambda1 - 1) / red.rho;
        const SPair S = s_matrices(p.phase1.sigma, p.phase2.sigma, red.lambda1, red.lambda2);
        const double x = rng.uni(1.2, 3.0);
        CHECK(rel(form_1aii(p.phase1.r, d1, a0, S, p.phase1.sigma, x * I2()),
                  form_1aii_iso(p.phase1.r, d1, a0, S, x)) < 1e-12);
        const Mat2 ss = rng.spd2();
        const SPair Sw{S.S2, S.S1};
        const BlockTensor one = form_1aii(p.phase1.r, d1, a0, S, p.phase1.sigma, ss);
        const BlockTensor two =
            form_1aii(p.phase1.r, d1, 1.0 / a0, Sw, p.phase1.sigma, ss / ss.determinant());
        CHECK(rel(two, one) < 1e-10);
    }
}

TEST_CASE("index interchange") {
    Rng rng(8);
    for (int t = 0; t < 50; ++t) {
        const double f = rng.unit();
        const Vec2 n = rng.unit_vec();
        const SigmaModel m = SigmaModel::rank_one(f, n);
        const SigmaModel w = SigmaModel::rank_one(1 - f, n);
        for (const IsoPhasePair& p : {pair_1ai(rng), pair_1aii(rng), pair_1cii(rng)}) {
            const IsoPhasePair s{p.phase2, p.phase1};
            const TwoPhaseResult a = effective(p, m), b = effective(s, w);
            CHECK(a.info.tag == b.info.tag);
            CHECK(rel(*b.Lstar, *a.Lstar) < 1e-10);
        }
        const SigmaModel m2 = SigmaModel::rank_two(f, n, rng.unit(), rng.unit_vec());
        const SigmaModel w2(swap_phases(m2.shape()));
        const IsoPhasePair p = pair_1aii(rng);
        CHECK(rel(*effective({p.phase2, p.phase1}, w2).Lstar, *effective(p, m2).Lstar) < 1e-10);
    }
}

TEST_CASE("implicit cases") {
    Rng rng(9);
    for (int t = 0; t < 50; ++t) {
        for (const SigmaModel& m : models(rng)) {
            const IsoPhasePair p = pair_1b(rng);
            const TwoPhaseResult r = effective(p, m);
            REQUIRE(r.info.tag == CaseTag::C1b);
            CHECK_FALSE(r.explicit_form);
            CHECK(r.residual(lam(p, m)) < 1e-9);
            CHECK(r.residual(p.phase1.tensor()) < 1e-12);
            CHECK(r.residual(BlockTensor::from_dense(rng.spd4())) > 1e-4);

            const double th1 = rng.uni(0.5, 2), th2 = th1 * rng.uni(1.1, 2);
            IsoPhasePair q = pair_prop(rng, th1, th2, -0.8 * th1, 0);
            q.phase2.r = 0.8 * th2;
            const TwoPhaseResult s = effective(q, m);
            REQUIRE(s.info.tag == CaseTag::C2b);
            CHECK(s.ab->B > 0);
            CHECK(s.residual(lam(q, m)) < 1e-9);
            CHECK(s.residual(q.phase2.tensor()) < 1e-12);
            CHECK(s.residual(BlockTensor::from_dense(rng.spd4())) > 1e-4);
        }
    }
}

TEST_CASE("borderline case with a free parameter") {
    Rng rng(10);
    for (int t = 0; t < 50; ++t) {
        for (double sg : {1.0, -1.0}) {
            for (const SigmaModel& m : models(rng)) {
                const IsoPhasePair p = pair_1ci(rng, sg);
                const TwoPhaseResult r = effective(p, m);
                REQUIRE(r.info.tag == CaseTag::C1ci);
                CHECK(r.notes.size() == 1);  // no branch warning
                CHECK(r.residual(lam(p, m)) < 1e-9);
                CHECK(r.residual(BlockTensor::from_dense(rng.spd4())) > 1e-4);
                // the family is affine in L and passes through symmetric tensors
                const Mat2 L = rng.spd2();
                const BlockTensor F = form_1ci(p, *r.S, *r.sigma_star, L);
                CHECK(r.residual(F) < 1e-12);
            }
        }
    }
}
