#include "thermoexact/polycrystal.hpp"

#include <algorithm>
#include <cmath>

namespace te {

namespace {

const CMat2& herm_basis(int k) {
    static const CMat2 b[4] = {
        (CMat2() << 1, 0, 0, 0).finished(),
        (CMat2() << 0, 0, 0, 1).finished(),
        (CMat2() << 0, 1, 1, 0).finished(),
        (CMat2() << 0, cplx(0, 1), cplx(0, -1), 0).finished(),
    };
    return b[k];
}

double herm_det(const CMat2& z) { return z(0, 0).real() * z(1, 1).real() - std::norm(z(0, 1)); }

bool herm_pd(const CMat2& z) {
    return z(0, 0).real() > 0 && z(1, 1).real() > 0 && herm_det(z) > 0;
}

struct Problem {
    CMat2 X, Y;
    Mat4 M;
    Vec4 rhs;

    Vec4 solve(double theta) const {
        return (Mat4::Identity() + theta * M).partialPivLu().solve(rhs);
    }
    double g(double theta) const { return theta * herm_det(herm_from_coords(solve(theta))) - 1.0; }
};

double bisect(const Problem& pr, double a, double b, double ga) {
    for (int it = 0; it < 200 && b - a > 1e-16 * b; ++it) {
        const double m = 0.5 * (a + b);
        const double gm = pr.g(m);
        if (gm == 0.0) return m;
        if ((gm < 0) == (ga < 0)) {
            a = m;
            ga = gm;
        } else {
            b = m;
        }
    }
    return 0.5 * (a + b);
}

}  // namespace

Vec4 herm_coords(const CMat2& h) {
    return {h(0, 0).real(), h(1, 1).real(), h(0, 1).real(), h(0, 1).imag()};
}

CMat2 herm_from_coords(const Vec4& c) {
    CMat2 h;
    h << c(0), cplx(c(2), c(3)), cplx(c(2), -c(3)), c(1);
    return h;
}

Mat4 b_op(const CMat2& Y) {
    Mat4 m;
    for (int k = 0; k < 4; ++k) {
        const CMat2 z = herm_basis(k);
        m.col(k) = herm_coords(Y * cof(z).transpose() * Y.adjoint());
    }
    return m;
}

std::array<double, 5> b_charpoly(const CMat2& Y) {
    const double d = std::abs(Y.determinant());
    const double ip = (Y * cof(Y).adjoint()).trace().real();
    // (x^2 - d^2)(x^2 + ip x + d^2)
    return {1.0, ip, 0.0, -d * d * ip, -d * d * d * d};
}

CMat2 z_hat(const KTensor& L0, double theta) {
    Problem pr{L0.X, L0.Y, b_op(L0.Y), herm_coords(L0.X + L0.X.conjugate())};
    return herm_from_coords(pr.solve(theta));
}

PolyResult solve_isotropic(const KTensor& L0) {
    if (!is_positive_definite(L0)) throw DomainError("polycrystal: crystallite is not positive definite");
    Problem pr{L0.X, L0.Y, b_op(L0.Y), herm_coords(L0.X + L0.X.conjugate())};
    const CMat2 xbar = L0.X.conjugate();

    // poles of (I + theta B)^-1 on theta > 0
    std::vector<double> poles;
    Eigen::EigenSolver<Mat4> es(pr.M);
    double bmax = 0;
    for (int i = 0; i < 4; ++i) {
        const cplx ev = es.eigenvalues()(i);
        bmax = std::max(bmax, std::abs(ev));
        if (std::abs(ev.imag()) <= 1e-12 * (1 + std::abs(ev)) && ev.real() < 0)
            poles.push_back(-1.0 / ev.real());
    }
    std::sort(poles.begin(), poles.end());
    const double theta0 = 1.0 / herm_det(herm_from_coords(pr.rhs));
    double lo = theta0, hi = theta0;
    if (bmax > 0) {
        lo = std::min(lo, 1.0 / bmax);
        hi = std::max(hi, 1.0 / bmax);
    }
    for (double p : poles) {
        lo = std::min(lo, p);
        hi = std::max(hi, p);
    }
    lo *= 1e-6;
    hi *= 1e6;

    std::vector<double> edges{lo};
    for (double p : poles)
        if (p > lo && p < hi) edges.push_back(p);
    edges.push_back(hi);

    PolyResult res;
    constexpr int kGrid = 256;
    for (std::size_t s = 0; s + 1 < edges.size(); ++s) {
        const double a = edges[s] * (1 + 1e-9), b = edges[s + 1] * (1 - 1e-9);
        if (!(b > a)) continue;
        const double la = std::log(a), lb = std::log(b);
        double tp = a, gp = pr.g(a);
        for (int k = 1; k <= kGrid; ++k) {
            const double t = std::exp(la + (lb - la) * k / kGrid);
            const double gt = pr.g(t);
            if (std::isfinite(gp) && std::isfinite(gt) && (gp < 0) != (gt < 0)) {
                const double th = bisect(pr, tp, t, gp);
                const CMat2 z = herm_from_coords(pr.solve(th));
                res.roots.push_back({th, herm_pd(z) && herm_pd(z - xbar)});
            }
            tp = t;
            gp = gt;
        }
    }
    const auto it = std::find_if(res.roots.begin(), res.roots.end(),
                                 [](const PolyRoot& r) { return r.feasible; });
    if (it == res.roots.end()) throw DomainError("polycrystal: no feasible root found");
    res.conjectural =
        std::count_if(res.roots.begin(), res.roots.end(), [](const PolyRoot& r) { return r.feasible; }) > 1;
    res.theta = it->theta;
    res.Z = herm_from_coords(pr.solve(res.theta));
    res.Lstar = res.Z - xbar;
    res.Lstar(0, 0) = res.Lstar(0, 0).real();
    res.Lstar(1, 1) = res.Lstar(1, 1).real();
    res.alpha = res.Lstar(1, 0).imag();
    const Mat2 re = res.Lstar.real();
    res.B = sym(inv_sqrtm_spd(sym(re)));
    res.tensor = kt_to_block(KTensor{res.Lstar, CMat2::Zero()}, 1e-8);
    res.residual_theta = std::abs(res.theta * herm_det(res.Z) - 1.0);
    const CMat2 zeq = res.Z + L0.Y * res.Z.inverse() * L0.Y.adjoint() - (L0.X + xbar);
    res.residual_z = zeq.norm() / (L0.X + xbar).norm();
    return res;
}

PolyResult solve_isotropic(const BlockTensor& L0) { return solve_isotropic(kt_from_block(L0)); }

QuarticReport special_quartic(double s1, double s2) {
    if (!(std::abs(s1) > 1.0 && std::abs(s2) > 1.0))
        throw DomainError("special_quartic: requires |s1|, |s2| > 1");
    const double a = std::abs(s1), b = std::abs(s2);
    QuarticReport q;
    q.coeffs = {-0.25, a * b, 0.5 - a * a - b * b, a * b, -0.25};
    auto p = [&](cplx t) {
        cplx v = 0;
        for (int k = 4; k >= 0; --k) v = v * t + q.coeffs[k];
        return v;
    };
    auto dp = [&](cplx t) {
        cplx v = 0;
        for (int k = 4; k >= 1; --k) v = v * t + double(k) * q.coeffs[k];
        return v;
    };
    Mat4 comp = Mat4::Zero();
    for (int i = 1; i < 4; ++i) comp(i, i - 1) = 1.0;
    for (int i = 0; i < 4; ++i) comp(i, 3) = -q.coeffs[i] / q.coeffs[4];
    Eigen::EigenSolver<Mat4> es(comp, false);
    std::vector<cplx> roots;
    for (int i = 0; i < 4; ++i) {
        cplx r = es.eigenvalues()(i);
        for (int it = 0; it < 3; ++it) {
            const cplx d = dp(r);
            if (std::abs(d) < 1e-10 * (1 + std::abs(r))) break;  // multiple root
            r -= p(r) / d;
        }
        roots.push_back(r);
        if (std::abs(r.imag()) <= 1e-6 * (1 + std::abs(r))) q.real_roots.push_back(r.real());
    }
    std::sort(q.real_roots.begin(), q.real_roots.end());
    for (double r : q.real_roots) {
        if (r > 0 && r < 1) ++q.in_unit;
        if (r > 1) ++q.above_one;
    }
    q.p0 = p(0.0).real();
    q.p1 = p(1.0).real();
    cplx disc = std::pow(q.coeffs[4], 6);
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) disc *= (roots[i] - roots[j]) * (roots[i] - roots[j]);
    q.discriminant = disc.real();
    q.discriminant_closed = (a * a - 1) * (a * a - 1) * (b * b - 1) * (b * b - 1) * (a * a - b * b) * (a * a - b * b);
    return q;
}

}  // namespace te
