#pragma once

#include "thermoexact/random.hpp"
#include "thermoexact/tensor4.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace te {

// Subspace Pi(V, W) = { K(X, Y) : X in V, Y in W } of Sym(T). V is a real span of
// Hermitian matrices, W a complex span of complex-symmetric matrices.
struct AlgebraSpec {
    int id = 0;
    std::string name;
    std::vector<CMat2> v_basis;
    std::vector<CMat2> w_basis;

    int dim_w() const { return static_cast<int>(w_basis.size()); }
    int dim_v() const { return static_cast<int>(v_basis.size()); }
    int real_dim() const { return dim_v() + 2 * dim_w(); }
};

// Orthonormal basis (columns of q) of a subspace of the 16-dimensional space of
// real 4x4 matrices, Frobenius inner product.
struct SubspaceEmbed {
    Eigen::Matrix<double, 16, Eigen::Dynamic> q;

    static SubspaceEmbed of(const AlgebraSpec& spec);
    static SubspaceEmbed of(const std::vector<Mat4>& spanning);
    int dim() const { return static_cast<int>(q.cols()); }
    Mat4 project(const Mat4& m) const;
    // |m - P m| / (1 + |m|)
    double residual(const Mat4& m) const;
};

struct Report {
    int algebra_id = 0;
    std::string check;
    int trials = 0;
    double max_residual = 0.0;
    bool pass = true;
};

// Entries 1..23 in table order; -10 and -5 are the two extra concrete subspaces
// that appear only inside the subalgebra lists of 15 and 16.
const std::vector<AlgebraSpec>& catalog();
const AlgebraSpec& algebra(int id);
std::vector<int> all_ids();  // 1..23, -10, -5

std::vector<Mat4> spanning_set(const AlgebraSpec& spec);
KTensor sample(const AlgebraSpec& spec, Rng& rng);
bool contains(const AlgebraSpec& spec, const KTensor& k, double tol = 1e-10);
KTensor project(const AlgebraSpec& spec, const KTensor& k);
double residual(const AlgebraSpec& spec, const KTensor& k);

// Multiplication subspace A0 = { I (x) psi(z) } = { K(0, z I) }.
KTensor a0_element(cplx z);

inline constexpr double kCheckTol = 1e-10;
inline constexpr int kDefaultTrials = 200;

Report check_closure(const AlgebraSpec& spec, int trials = kDefaultTrials,
                     std::uint64_t seed = kDefaultSeed, double tol = kCheckTol);
// Deterministic: every basis element of a lies in b.
bool is_subalgebra(const AlgebraSpec& a, const AlgebraSpec& b, double tol = kCheckTol);
Report check_ideal(const AlgebraSpec& ideal, const AlgebraSpec& a, int trials = kDefaultTrials,
                   std::uint64_t seed = kDefaultSeed, double tol = kCheckTol);
bool is_ideal(const AlgebraSpec& ideal, const AlgebraSpec& a, int trials = kDefaultTrials,
              std::uint64_t seed = kDefaultSeed, double tol = kCheckTol);
// Real dimension of span{ K1 A K2 + K2 A K1 }.
int square_dim(const AlgebraSpec& spec, int trials = 64, std::uint64_t seed = kDefaultSeed);

struct SubalgebraClaim {
    int sub = 0;
    bool ideal = false;
    bool square = false;
};
// Subalgebra column of the catalog table for entry id.
const std::vector<SubalgebraClaim>& subalgebra_table(int id);

enum class InversionKey { Zero, E1E1, E2E2, Half };
std::string to_string(InversionKey k);
Mat2 key_matrix(InversionKey k);  // M0
// max residual of K (I/2 - M0) K in Pi over random K in Pi
Report check_key(const AlgebraSpec& spec, InversionKey key, int trials = kDefaultTrials,
                 std::uint64_t seed = kDefaultSeed, double tol = kCheckTol);
InversionKey find_inversion_key(const AlgebraSpec& spec, int trials = kDefaultTrials,
                                std::uint64_t seed = kDefaultSeed);
// Keys as tabulated for entries 1..23.
InversionKey tabulated_key(int id);

Report check_chain(const AlgebraSpec& spec, int trials = kDefaultTrials,
                   std::uint64_t seed = kDefaultSeed, double tol = kCheckTol);
Report check_chain_ideal(const AlgebraSpec& ideal, const AlgebraSpec& spec,
                         int trials = kDefaultTrials, std::uint64_t seed = kDefaultSeed,
                         double tol = kCheckTol);

CMat2 c_plus(cplx c);
CMat2 c_minus(cplx c);
bool is_complex_orthogonal(const CMat2& c, double tol = 1e-10);

// algebra_id == 0 selects the global family K(X, Y) -> K(sign C X C^H, C Y C^T).
// Otherwise the per-entry family with the parameters that entry uses:
//   alpha   real scale of the Z0 direction (2, 7, 13, 19, 20) or of I, psi(i), ...
//   a       complex scale of the z0 (x) z0 direction (12, 13, 18, 19), rho e^{i theta} for 21
//   sign    +-1 overall sign of Phi0
//   branch  0/1 selects between the two listed alternatives (8, 9, 14, 16, 17)
//   t       hyperbolic / circular angle (8, 9)
//   C       O(2, C) matrix (22, 23 and global)
struct AutomorphismDesc {
    int algebra_id = 0;
    int sign = 1;
    int branch = 0;
    double alpha = 1.0;
    cplx a = 1.0;
    double t = 0.0;
    CMat2 C = CMat2::Identity();

    static AutomorphismDesc global(const CMat2& c, int sign = 1);
};

// Throws InputError on invalid parameters (C not orthogonal, zero scale).
KTensor apply_automorphism(const AutomorphismDesc& d, const KTensor& k);
// max residual of Phi(K A K) - Phi(K) A Phi(K) over random K in Pi, A in A0
Report check_automorphism(const AutomorphismDesc& d, const AlgebraSpec& spec,
                          int trials = kDefaultTrials, std::uint64_t seed = kDefaultSeed,
                          double tol = kCheckTol);
// Image of an algebra under a global automorphism (an orbit-equivalent algebra).
AlgebraSpec transform(const AlgebraSpec& spec, const CMat2& c, int sign = 1);

}  // namespace te
