#pragma once

#include "thermoexact/materials.hpp"
#include "thermoexact/tensor4.hpp"

#include <memory>
#include <vector>

namespace te {

// Either a leaf (tensor, rotation, phase label) or a mix of two children with the volume
// fraction f of c1 and the unit layer normal n.
struct LaminateNode {
    bool leaf = true;
    BlockTensor tensor;
    double rotation = 0.0;
    int phase = 0;  // used when the tree is evaluated as a shape with substituted phases
    std::shared_ptr<const LaminateNode> c1, c2;
    double f = 0.5;
    Vec2 n = Vec2(1, 0);

    static LaminateNode make_leaf(const BlockTensor& L, double rotation = 0.0, int phase = 0);
    static LaminateNode make_phase(int phase, double rotation = 0.0);
    static LaminateNode make_mix(const LaminateNode& c1, const LaminateNode& c2, double f,
                                 const Vec2& n);
    int depth() const;
};

// Rank-one laminate: layers of L1 (fraction f) and L2 with normal n. Direct cell solution:
// normal fluxes and tangential fields are continuous across the layers.
BlockTensor laminate2(const BlockTensor& L1, const BlockTensor& L2, double f, const Vec2& n);

// Same laminate through additivity of W_n(L) = [(L - L0)^-1 + Gamma0(n)]^-1 with the
// reference Lambda (x) I (nu must be 0).
BlockTensor laminate2_w(const BlockTensor& L1, const BlockTensor& L2, double f, const Vec2& n,
                        const IsoMaterial& ref = IsoMaterial{});

// Rank-one laminate of 2x2 conductivities.
Mat2 conductivity_laminate2(const Mat2& s1, const Mat2& s2, double f, const Vec2& n);

BlockTensor laminate_tree(const LaminateNode& root);
// Leaves take phases[leaf.phase] (rotated by the leaf rotation) instead of their tensor.
BlockTensor laminate_tree(const LaminateNode& root, const std::vector<BlockTensor>& phases);
Mat2 conductivity_tree(const LaminateNode& root, const std::vector<Mat2>& phases);
// Volume fraction occupied by leaves with the given phase label.
double phase_fraction(const LaminateNode& root, int phase);
// Exchanges the phase labels 0 and 1.
LaminateNode swap_phases(const LaminateNode& root);

// Effective conductivity of a two-phase shape with phase 0 = I and phase 1 = h I.
class SigmaModel {
public:
    explicit SigmaModel(LaminateNode shape);
    static SigmaModel rank_one(double f, const Vec2& n);
    // Rank-one laminate of the phase-0 material with a rank-one laminate (f_in, n_in).
    static SigmaModel rank_two(double f_out, const Vec2& n_out, double f_in, const Vec2& n_in);

    Mat2 operator()(double h) const;
    const LaminateNode& shape() const { return shape_; }

private:
    LaminateNode shape_;
};

Mat2 sigma_star_model(double h, const LaminateNode& shape);

// Balanced tree of given depth, f = 1/2 at every mix, leaf rotations and normals taken from
// the bases 2 and 3 Halton sequences.
LaminateNode texture_tree(const BlockTensor& L, int depth, int offset = 0);
double halton(int index, int base);

}  // namespace te
