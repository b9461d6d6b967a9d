#include "thermoexact/laminate.hpp"

#include "thermoexact/exactrel.hpp"

#include <cmath>

namespace te {

namespace {

using MatX = Eigen::MatrixXd;

Vec2 unit_normal(const Vec2& n) {
    const double len = n.norm();
    if (!(len > 0.0) || !std::isfinite(len)) throw InputError("laminate: zero or invalid normal");
    return n / len;
}

void check_fraction(double f) {
    if (!(f >= 0.0 && f <= 1.0)) throw InputError("laminate: volume fraction outside [0, 1]");
}

// Q = I_m (x) R for m fields
MatX frame(int m, const Vec2& n) {
    MatX q = MatX::Zero(2 * m, 2 * m);
    const Mat2 r = (Mat2() << n(0), -n(1), n(1), n(0)).finished();
    for (int a = 0; a < m; ++a) q.block<2, 2>(2 * a, 2 * a) = r;
    return q;
}

// Layers normal to e1 after rotating by the frame of n. Index 2a is the normal component
// of field a, 2a + 1 the tangential one.
MatX lam_generic(const MatX& L1, const MatX& L2, double f, const Vec2& n) {
    const int m = static_cast<int>(L1.rows()) / 2;
    const MatX q = frame(m, n);
    const MatX A[2] = {q.transpose() * L1 * q, q.transpose() * L2 * q};
    const double w[2] = {f, 1.0 - f};
    std::vector<int> N, Tg;
    for (int a = 0; a < m; ++a) {
        N.push_back(2 * a);
        Tg.push_back(2 * a + 1);
    }
    MatX hinv = MatX::Zero(m, m), hb = MatX::Zero(m, m), cs = MatX::Zero(m, m);
    for (int k = 0; k < 2; ++k) {
        const MatX a = A[k](N, N), b = A[k](N, Tg), c = A[k](Tg, Tg);
        Eigen::LDLT<MatX> ldlt(a);
        if (ldlt.info() != Eigen::Success || !ldlt.isPositive())
            throw DomainError("laminate: normal block is not positive definite");
        const MatX ai = ldlt.solve(MatX::Identity(m, m));
        hinv += w[k] * ai;
        hb += w[k] * ai * b;
        cs += w[k] * (c - b.transpose() * ai * b);
    }
    const MatX nn = hinv.inverse();
    const MatX nt = nn * hb;
    MatX out(2 * m, 2 * m);
    out(N, N) = nn;
    out(N, Tg) = nt;
    out(Tg, N) = nt.transpose();
    out(Tg, Tg) = cs + nt.transpose() * hinv * nt;
    out = q * out * q.transpose();
    return 0.5 * (out + out.transpose());
}

}  // namespace

LaminateNode LaminateNode::make_leaf(const BlockTensor& L, double rotation, int phase) {
    LaminateNode n;
    n.tensor = L;
    n.rotation = rotation;
    n.phase = phase;
    return n;
}

LaminateNode LaminateNode::make_phase(int phase, double rotation) {
    LaminateNode n;
    n.phase = phase;
    n.rotation = rotation;
    return n;
}

LaminateNode LaminateNode::make_mix(const LaminateNode& c1, const LaminateNode& c2, double f,
                                    const Vec2& n) {
    check_fraction(f);
    LaminateNode m;
    m.leaf = false;
    m.c1 = std::make_shared<const LaminateNode>(c1);
    m.c2 = std::make_shared<const LaminateNode>(c2);
    m.f = f;
    m.n = unit_normal(n);
    return m;
}

int LaminateNode::depth() const { return leaf ? 0 : 1 + std::max(c1->depth(), c2->depth()); }

BlockTensor laminate2(const BlockTensor& L1, const BlockTensor& L2, double f, const Vec2& n) {
    check_fraction(f);
    const Vec2 u = unit_normal(n);
    if (!is_pd(L1.dense()) || !is_pd(L2.dense()))
        throw DomainError("laminate2: phase tensor is not positive definite");
    if (f == 1.0) return L1;
    if (f == 0.0) return L2;
    return BlockTensor::from_dense(lam_generic(L1.dense(), L2.dense(), f, u), 1e-8);
}

BlockTensor laminate2_w(const BlockTensor& L1, const BlockTensor& L2, double f, const Vec2& n,
                        const IsoMaterial& ref) {
    check_fraction(f);
    if (ref.nu != 0.0) throw InputError("laminate2_w: reference must be uncoupled");
    const Mat4 g = gamma0(unit_normal(n), ref);
    const Mat4 l0 = ref.tensor().dense();
    // A (I + G A)^-1 has no pole at L = L0
    auto W = [&](const BlockTensor& L) {
        const Mat4 a = L.dense() - l0;
        return Mat4(a * dense_inverse(I4() + g * a));
    };
    const Mat4 w = f * W(L1) + (1.0 - f) * W(L2);
    return BlockTensor::from_dense(l0 + w * dense_inverse(I4() - g * w), 1e-8);
}

Mat2 conductivity_laminate2(const Mat2& s1, const Mat2& s2, double f, const Vec2& n) {
    check_fraction(f);
    const Vec2 u = unit_normal(n);
    if (!is_pd(s1) || !is_pd(s2)) throw DomainError("conductivity laminate: phase is not PD");
    if (f == 1.0) return s1;
    if (f == 0.0) return s2;
    return lam_generic(s1, s2, f, u);
}

BlockTensor laminate_tree(const LaminateNode& root) {
    if (root.leaf) return rotate(root.rotation, root.tensor);
    return laminate2(laminate_tree(*root.c1), laminate_tree(*root.c2), root.f, root.n);
}

BlockTensor laminate_tree(const LaminateNode& root, const std::vector<BlockTensor>& phases) {
    if (root.leaf) {
        if (root.phase < 0 || root.phase >= static_cast<int>(phases.size()))
            throw InputError("laminate_tree: leaf phase out of range");
        return rotate(root.rotation, phases[root.phase]);
    }
    return laminate2(laminate_tree(*root.c1, phases), laminate_tree(*root.c2, phases), root.f,
                     root.n);
}

Mat2 conductivity_tree(const LaminateNode& root, const std::vector<Mat2>& phases) {
    if (root.leaf) {
        if (root.phase < 0 || root.phase >= static_cast<int>(phases.size()))
            throw InputError("conductivity_tree: leaf phase out of range");
        const Mat2 r = rot2(root.rotation);
        return r * phases[root.phase] * r.transpose();
    }
    return conductivity_laminate2(conductivity_tree(*root.c1, phases),
                                  conductivity_tree(*root.c2, phases), root.f, root.n);
}

double phase_fraction(const LaminateNode& root, int phase) {
    if (root.leaf) return root.phase == phase ? 1.0 : 0.0;
    return root.f * phase_fraction(*root.c1, phase) + (1 - root.f) * phase_fraction(*root.c2, phase);
}

LaminateNode swap_phases(const LaminateNode& root) {
    if (root.leaf) {
        LaminateNode n = root;
        if (n.phase == 0 || n.phase == 1) n.phase = 1 - n.phase;
        return n;
    }
    return LaminateNode::make_mix(swap_phases(*root.c1), swap_phases(*root.c2), root.f, root.n);
}

SigmaModel::SigmaModel(LaminateNode shape) : shape_(std::move(shape)) {}

SigmaModel SigmaModel::rank_one(double f, const Vec2& n) {
    return SigmaModel(LaminateNode::make_mix(LaminateNode::make_phase(0),
                                             LaminateNode::make_phase(1), f, n));
}

SigmaModel SigmaModel::rank_two(double f_out, const Vec2& n_out, double f_in, const Vec2& n_in) {
    const LaminateNode inner =
        LaminateNode::make_mix(LaminateNode::make_phase(0), LaminateNode::make_phase(1), f_in, n_in);
    return SigmaModel(LaminateNode::make_mix(LaminateNode::make_phase(0), inner, f_out, n_out));
}

Mat2 SigmaModel::operator()(double h) const { return sigma_star_model(h, shape_); }

Mat2 sigma_star_model(double h, const LaminateNode& shape) {
    if (!(h > 0.0) || !std::isfinite(h)) throw DomainError("sigma model: h must be positive");
    return conductivity_tree(shape, {I2(), h * I2()});
}

double halton(int index, int base) {
    double f = 1.0, r = 0.0;
    for (int i = index; i > 0; i /= base) {
        f /= base;
        r += f * (i % base);
    }
    return r;
}

LaminateNode texture_tree(const BlockTensor& L, int depth, int offset) {
    if (depth < 0) throw InputError("texture_tree: negative depth");
    constexpr double kPi = 3.14159265358979323846;
    int counter = offset;
    auto build = [&](auto& self, int d) -> LaminateNode {
        const int idx = ++counter;
        if (d == 0) return LaminateNode::make_leaf(L, 2.0 * kPi * halton(idx, 2));
        const LaminateNode a = self(self, d - 1);
        const LaminateNode b = self(self, d - 1);
        const double t = kPi * halton(idx, 3);
        return LaminateNode::make_mix(a, b, 0.5, Vec2(std::cos(t), std::sin(t)));
    };
    return build(build, depth);
}

}  // namespace te
