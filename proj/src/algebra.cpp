#include "thermoexact/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace te {

namespace {

const cplx kI{0.0, 1.0};

CMat2 cm(cplx a, cplx b, cplx c, cplx d) { return (CMat2() << a, b, c, d).finished(); }

CMat2 e1e1() { return cm(1, 0, 0, 0); }
CMat2 e2e2() { return cm(0, 0, 0, 1); }
CMat2 cI() { return CMat2::Identity(); }
CMat2 z0z0() { return z0() * z0().transpose(); }
CMat2 iRperp() { return cm(0, kI, -kI, 0); }
CMat2 psi1() { return cm(1, 0, 0, -1); }
CMat2 psii() { return cm(0, 1, 1, 0); }
CMat2 dprime2() { return cm(0, -kI, kI, 0); }

AlgebraSpec make(int id, std::string name, std::vector<CMat2> w, std::vector<CMat2> v) {
    AlgebraSpec s;
    s.id = id;
    s.name = std::move(name);
    s.w_basis = std::move(w);
    s.v_basis = std::move(v);
    return s;
}

std::vector<AlgebraSpec> build_catalog() {
    return {
        make(1, "(0,0)", {}, {}),
        make(2, "(0,RZ0)", {}, {Z0()}),
        make(3, "(CI,0)", {cI()}, {}),
        make(4, "(CI,RI)", {cI()}, {cI()}),
        make(5, "(CI,Rpsi(i))", {cI()}, {psii()}),
        make(6, "(CI,iRperp)", {cI()}, {iRperp()}),
        make(7, "(CI,RZ0)", {cI()}, {Z0()}),
        make(8, "(CI,Phi)", {cI()}, {cI(), iRperp()}),
        make(9, "(CI,Psi)", {cI()}, {psi1(), psii()}),
        make(10, "(e1e1,0)", {e1e1()}, {}),
        make(11, "Ann(Ce2)", {e1e1()}, {e1e1()}),
        make(12, "(z0z0,0)", {z0z0()}, {}),
        make(13, "Ann(C conj(z0))", {z0z0()}, {Z0()}),
        make(14, "(D,0)", {e1e1(), e2e2()}, {}),
        make(15, "(D,e1e1)", {e1e1(), e2e2()}, {e1e1()}),
        make(16, "(D,D)", {e1e1(), e2e2()}, {e1e1(), e2e2()}),
        make(17, "(D,D')", {e1e1(), e2e2()}, {psii(), dprime2()}),
        make(18, "(W,0)", {cI(), z0z0()}, {}),
        make(19, "(W,RZ0)", {cI(), z0z0()}, {Z0()}),
        make(20, "(W,Vinf)", {cI(), z0z0()}, {psii(), Z0()}),
        make(21, "(W,V)", {cI(), z0z0()}, {psi1(), psii(), Z0()}),
        make(22, "(Sym(C2),0)", {e1e1(), e2e2(), psii()}, {}),
        make(23, "Sym(T)", {e1e1(), e2e2(), psii()}, {cI(), psi1(), psii(), iRperp()}),
        make(-10, "(e2e2,0)", {e2e2()}, {}),
        make(-5, "(CI,Rpsi(1))", {cI()}, {psi1()}),
    };
}

using Vec16 = Eigen::Matrix<double, 16, 1>;

Vec16 flat(const Mat4& m) { return Eigen::Map<const Vec16>(m.data()); }

Mat4 symsum(const Mat4& m) { return m + m.transpose(); }

Mat4 kd(const KTensor& k) { return kt_dense(k); }

}  // namespace

const std::vector<AlgebraSpec>& catalog() {
    static const std::vector<AlgebraSpec> c = build_catalog();
    return c;
}

const AlgebraSpec& algebra(int id) {
    for (const auto& s : catalog())
        if (s.id == id) return s;
    throw InputError("unknown algebra id " + std::to_string(id));
}

std::vector<int> all_ids() {
    std::vector<int> ids;
    for (const auto& s : catalog()) ids.push_back(s.id);
    return ids;
}

std::vector<Mat4> spanning_set(const AlgebraSpec& spec) {
    std::vector<Mat4> out;
    const CMat2 zero = CMat2::Zero();
    for (const auto& v : spec.v_basis) out.push_back(kd({v, zero}));
    for (const auto& w : spec.w_basis) {
        out.push_back(kd({zero, w}));
        out.push_back(kd({zero, kI * w}));
    }
    return out;
}

SubspaceEmbed SubspaceEmbed::of(const std::vector<Mat4>& spanning) {
    std::vector<Vec16> cols;
    for (const auto& m : spanning) {
        Vec16 v = flat(m);
        // two passes of modified Gram-Schmidt
        for (int pass = 0; pass < 2; ++pass)
            for (const auto& q : cols) v -= q.dot(v) * q;
        const double n = v.norm();
        if (n > 1e-10 * (1.0 + flat(m).norm())) cols.push_back(v / n);
    }
    SubspaceEmbed e;
    e.q.resize(16, static_cast<Eigen::Index>(cols.size()));
    for (std::size_t i = 0; i < cols.size(); ++i) e.q.col(static_cast<Eigen::Index>(i)) = cols[i];
    return e;
}

SubspaceEmbed SubspaceEmbed::of(const AlgebraSpec& spec) { return of(spanning_set(spec)); }

Mat4 SubspaceEmbed::project(const Mat4& m) const {
    if (q.cols() == 0) return Mat4::Zero();
    const Vec16 p = q * (q.transpose() * flat(m));
    return Eigen::Map<const Mat4>(p.data());
}

double SubspaceEmbed::residual(const Mat4& m) const {
    return (m - project(m)).norm() / (1.0 + m.norm());
}

KTensor sample(const AlgebraSpec& spec, Rng& rng) {
    KTensor k;
    for (const auto& v : spec.v_basis) k.X += rng.uni() * v;
    for (const auto& w : spec.w_basis) k.Y += rng.cuni() * w;
    return k;
}

double residual(const AlgebraSpec& spec, const KTensor& k) {
    return SubspaceEmbed::of(spec).residual(kd(k));
}

bool contains(const AlgebraSpec& spec, const KTensor& k, double tol) {
    return residual(spec, k) <= tol;
}

KTensor project(const AlgebraSpec& spec, const KTensor& k) {
    return kt_from_dense(SubspaceEmbed::of(spec).project(kd(k)));
}

KTensor a0_element(cplx z) { return {CMat2::Zero(), z * CMat2::Identity()}; }

namespace {

template <class F>
Report run_check(int id, std::string name, int trials, double tol, F&& f) {
    Report r;
    r.algebra_id = id;
    r.check = std::move(name);
    r.trials = trials;
    for (int i = 0; i < trials; ++i) r.max_residual = std::max(r.max_residual, f());
    r.pass = r.max_residual <= tol;
    return r;
}

Mat4 rand_a0(Rng& rng) { return kd(a0_element(rng.cuni())); }

}  // namespace

Report check_closure(const AlgebraSpec& spec, int trials, std::uint64_t seed, double tol) {
    const auto emb = SubspaceEmbed::of(spec);
    Rng rng(seed);
    return run_check(spec.id, "closure", trials, tol, [&] {
        const Mat4 k1 = kd(sample(spec, rng));
        const Mat4 k2 = kd(sample(spec, rng));
        const Mat4 a = rand_a0(rng);
        // polarized Jordan product and the square K A K
        return std::max(emb.residual(k1 * a * k2 + k2 * a * k1), emb.residual(k1 * a * k1));
    });
}

bool is_subalgebra(const AlgebraSpec& a, const AlgebraSpec& b, double tol) {
    const auto emb = SubspaceEmbed::of(b);
    for (const auto& m : spanning_set(a))
        if (emb.residual(m) > tol) return false;
    return true;
}

Report check_ideal(const AlgebraSpec& ideal, const AlgebraSpec& a, int trials,
                   std::uint64_t seed, double tol) {
    const auto emb = SubspaceEmbed::of(ideal);
    Rng rng(seed);
    Report r = run_check(ideal.id, "ideal in " + std::to_string(a.id), trials, tol, [&] {
        const Mat4 j = kd(sample(ideal, rng));
        const Mat4 k = kd(sample(a, rng));
        return emb.residual(symsum(j * rand_a0(rng) * k));
    });
    if (!is_subalgebra(ideal, a, tol)) {
        r.pass = false;
        r.max_residual = std::max(r.max_residual, 1.0);
    }
    return r;
}

bool is_ideal(const AlgebraSpec& ideal, const AlgebraSpec& a, int trials, std::uint64_t seed,
              double tol) {
    return check_ideal(ideal, a, trials, seed, tol).pass;
}

int square_dim(const AlgebraSpec& spec, int trials, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<Mat4> prods;
    for (int i = 0; i < trials; ++i) {
        const Mat4 k1 = kd(sample(spec, rng));
        const Mat4 k2 = kd(sample(spec, rng));
        prods.push_back(symsum(k1 * rand_a0(rng) * k2));
    }
    return SubspaceEmbed::of(prods).dim();
}

const std::vector<SubalgebraClaim>& subalgebra_table(int id) {
    // {sub, ideal, square}
    static const std::map<int, std::vector<SubalgebraClaim>> table = [] {
        std::map<int, std::vector<SubalgebraClaim>> t;
        auto s = [](int n) { return SubalgebraClaim{n, false, false}; };
        auto b = [](int n) { return SubalgebraClaim{n, true, false}; };
        auto r = [](int n) { return SubalgebraClaim{n, false, true}; };
        t[1] = {};
        t[2] = {r(1)};
        t[3] = {b(1)};
        t[4] = {b(1), s(3)};
        t[5] = {b(1), s(3)};
        t[6] = {b(1), s(3)};
        t[7] = {b(1), b(2), s(3)};
        t[8] = {b(1), s(2), s(3), s(4), s(6), s(7)};
        t[9] = {b(1), s(3), s(5)};
        t[10] = {b(1)};
        t[11] = {b(1), s(10)};
        t[12] = {r(1)};
        t[13] = {r(1), b(2), b(12)};
        t[14] = {b(1), s(3), b(10)};
        t[15] = {b(1), s(3), s(10), b(-10), b(11), s(14)};
        t[16] = {b(1), s(3), s(4), s(-5), s(10), b(11), s(14), s(15)};
        t[17] = {b(1), s(3), s(5), s(6), s(10), s(14)};
        t[18] = {b(1), s(3), b(12)};
        t[19] = {b(1), b(2), s(3), s(7), b(12), b(13), s(18)};
        t[20] = {b(1), s(2), s(3), s(5), s(7), s(12), b(13), s(18), s(19)};
        t[21] = {b(1), s(2), s(3), s(5), s(7), s(9), s(12), b(13), s(18), s(19), s(20)};
        t[22] = {b(1), s(3), s(10), s(12), s(14), s(18)};
        std::vector<SubalgebraClaim> all;
        for (int n = 1; n <= 22; ++n) all.push_back(n == 1 ? b(1) : s(n));
        t[23] = all;
        return t;
    }();
    static const std::vector<SubalgebraClaim> none;
    const auto it = table.find(id);
    return it == table.end() ? none : it->second;
}

std::string to_string(InversionKey k) {
    switch (k) {
        case InversionKey::Zero: return "0";
        case InversionKey::E1E1: return "e1e1/2";
        case InversionKey::E2E2: return "e2e2/2";
        case InversionKey::Half: return "I/2";
    }
    return "?";
}

Mat2 key_matrix(InversionKey k) {
    switch (k) {
        case InversionKey::Zero: return Mat2::Zero();
        case InversionKey::E1E1: return (Mat2() << 0.5, 0, 0, 0).finished();
        case InversionKey::E2E2: return (Mat2() << 0, 0, 0, 0.5).finished();
        case InversionKey::Half: return 0.5 * Mat2::Identity();
    }
    return Mat2::Zero();
}

Report check_key(const AlgebraSpec& spec, InversionKey key, int trials, std::uint64_t seed,
                 double tol) {
    const auto emb = SubspaceEmbed::of(spec);
    const Mat2 delta = 0.5 * Mat2::Identity() - key_matrix(key);
    const Mat4 d = kd({delta.cast<cplx>(), CMat2::Zero()});
    Rng rng(seed);
    return run_check(spec.id, "key " + to_string(key), trials, tol, [&] {
        const Mat4 k = kd(sample(spec, rng));
        return emb.residual(k * d * k);
    });
}

InversionKey find_inversion_key(const AlgebraSpec& spec, int trials, std::uint64_t seed) {
    for (auto k : {InversionKey::Zero, InversionKey::E1E1, InversionKey::E2E2})
        if (check_key(spec, k, trials, seed).pass) return k;
    return InversionKey::Half;
}

InversionKey tabulated_key(int id) {
    switch (id) {
        case 1: case 2: case 4: case 8: case 11: case 13: case 16: case 23:
            return InversionKey::Zero;
        case 10:
            return InversionKey::E1E1;
        case 15: case -10:
            return InversionKey::E2E2;
        default:
            return InversionKey::Half;
    }
}

namespace {

double chain_residual(const SubspaceEmbed& emb, const Mat4 (&k)[4], Rng& rng) {
    const Mat4 a1 = rand_a0(rng), a2 = rand_a0(rng), a3 = rand_a0(rng);
    const Mat4 c3 = k[0] * a1 * k[1] * a2 * k[2];
    const Mat4 c4 = c3 * a3 * k[3];
    return std::max(emb.residual(symsum(c3)), emb.residual(symsum(c4)));
}

}  // namespace

Report check_chain(const AlgebraSpec& spec, int trials, std::uint64_t seed, double tol) {
    const auto emb = SubspaceEmbed::of(spec);
    Rng rng(seed);
    return run_check(spec.id, "chain", trials, tol, [&] {
        const Mat4 k[4] = {kd(sample(spec, rng)), kd(sample(spec, rng)), kd(sample(spec, rng)),
                           kd(sample(spec, rng))};
        return chain_residual(emb, k, rng);
    });
}

Report check_chain_ideal(const AlgebraSpec& ideal, const AlgebraSpec& spec, int trials,
                         std::uint64_t seed, double tol) {
    const auto emb = SubspaceEmbed::of(ideal);
    Rng rng(seed);
    return run_check(ideal.id, "chain ideal in " + std::to_string(spec.id), trials, tol, [&] {
        // the ideal element leads both chains; the other slots range over the algebra
        const Mat4 k[4] = {kd(sample(ideal, rng)), kd(sample(spec, rng)), kd(sample(spec, rng)),
                           kd(sample(spec, rng))};
        return chain_residual(emb, k, rng);
    });
}

CMat2 c_plus(cplx c) { return cm(std::cos(c), std::sin(c), -std::sin(c), std::cos(c)); }
CMat2 c_minus(cplx c) { return cm(std::cos(c), std::sin(c), std::sin(c), -std::cos(c)); }

bool is_complex_orthogonal(const CMat2& c, double tol) {
    return (c * c.transpose() - CMat2::Identity()).norm() <= tol * scale_of(c) * scale_of(c);
}

AutomorphismDesc AutomorphismDesc::global(const CMat2& c, int sign) {
    AutomorphismDesc d;
    d.algebra_id = 0;
    d.C = c;
    d.sign = sign;
    return d;
}

namespace {

// Coordinates used by the per-entry families.
// Phi(x, y) = x I + y iRperp; Psi(x, y) = psi(x + i y);
// W = span{I, z0 z0}: Y = x I + y z0z0.
void w_coords(const CMat2& y, cplx& x, cplx& c) {
    x = 0.5 * (y(0, 0) + y(1, 1));
    c = 0.5 * (y(0, 0) - y(1, 1));
}

}  // namespace

KTensor apply_automorphism(const AutomorphismDesc& d, const KTensor& k) {
    if (d.sign != 1 && d.sign != -1) throw InputError("automorphism sign must be +-1");
    if (d.alpha == 0.0) throw InputError("automorphism scale alpha must be nonzero");
    if (d.a == cplx(0.0)) throw InputError("automorphism scale a must be nonzero");
    const double s = d.sign;
    const CMat2& X = k.X;
    const CMat2& Y = k.Y;
    const CMat2 P = psii();
    switch (d.algebra_id) {
        case 0:
        case 22:
        case 23: {
            if (!is_complex_orthogonal(d.C)) throw InputError("C is not in O(2,C)");
            const double sx = d.algebra_id == 22 ? 1.0 : s;
            return {sx * d.C * X * d.C.adjoint(), d.C * Y * d.C.transpose()};
        }
        case 1: case 3: case 10:
            return k;
        case 2: case 7:
            return {d.alpha * X, Y};
        case 4: case 5: case 6: case 11: case 15:
            return {s * X, Y};
        case 12:
            return {X, d.a * Y};
        case 13:
            return {d.alpha * X, d.a * Y};
        case 14:
            return {X, d.branch ? CMat2(P * Y * P) : Y};
        case 16:
            return {s * (d.branch ? CMat2(P * X * P) : X), d.branch ? CMat2(P * Y * P) : Y};
        case 17:
            if (d.branch == 0) return {-X, Y};
            return {s * CMat2(X.transpose()), P * Y * P};
        case 18:
        case 19: {
            cplx x, y;
            w_coords(Y, x, y);
            const CMat2 y2 = x * cI() + d.a * y * z0z0();
            return {d.algebra_id == 19 ? CMat2(d.alpha * X) : X, y2};
        }
        case 8: {
            const double x = X(0, 0).real(), y = X(0, 1).imag();
            const double ch = std::cosh(d.t), sh = std::sinh(d.t);
            const double x2 = ch * x + sh * y;
            const double y2 = d.branch ? -sh * x - ch * y : sh * x + ch * y;
            return {s * (x2 * cI() + y2 * iRperp()), Y};
        }
        case 9: {
            const cplx z{X(0, 0).real(), X(0, 1).real()};
            const cplx e = std::exp(cplx(0.0, d.t));
            const cplx z2 = d.branch ? e * std::conj(z) : std::conj(e) * z;
            return {psi(z2).cast<cplx>(), Y};
        }
        case 20: {
            const double xi = X(0, 1).real(), eta = X(0, 0).real();
            cplx x, y;
            w_coords(Y, x, y);
            return {s * (xi * P + d.alpha * eta * Z0()), x * cI() + d.alpha * y * z0z0()};
        }
        case 21: {
            const double eta = 0.5 * (X(0, 0) + X(1, 1)).real();
            const cplx z{0.5 * (X(0, 0) - X(1, 1)).real(), X(0, 1).real()};
            const double rho = std::abs(d.a), th = std::arg(d.a);
            cplx x, y;
            w_coords(Y, x, y);
            const cplx z2 = std::exp(cplx(0.0, th)) * z;
            return {s * (psi(z2).cast<cplx>() + rho * eta * Z0()), x * cI() + d.a * y * z0z0()};
        }
        default:
            throw InputError("no automorphism family for algebra " + std::to_string(d.algebra_id));
    }
}

Report check_automorphism(const AutomorphismDesc& d, const AlgebraSpec& spec, int trials,
                          std::uint64_t seed, double tol) {
    Rng rng(seed);
    const auto emb = SubspaceEmbed::of(spec);
    Report r = run_check(spec.id, "automorphism", trials, tol, [&] {
        const KTensor k = sample(spec, rng);
        const Mat4 a = rand_a0(rng);
        const Mat4 kk = kd(k);
        const Mat4 lhs = kd(apply_automorphism(d, kt_from_dense(kk * a * kk)));
        const Mat4 pk = kd(apply_automorphism(d, k));
        const Mat4 rhs = pk * a * pk;
        const double scale = 1.0 + kk.norm() * kk.norm();
        double res = (lhs - rhs).norm() / scale;
        // a family must map the algebra into itself
        if (d.algebra_id != 0) res = std::max(res, emb.residual(pk));
        return res;
    });
    return r;
}

AlgebraSpec transform(const AlgebraSpec& spec, const CMat2& c, int sign) {
    if (!is_complex_orthogonal(c)) throw InputError("C is not in O(2,C)");
    AlgebraSpec out = spec;
    out.name = spec.name + "^C";
    for (auto& v : out.v_basis) v = double(sign) * c * v * c.adjoint();
    for (auto& w : out.w_basis) w = c * w * c.transpose();
    return out;
}

}  // namespace te
