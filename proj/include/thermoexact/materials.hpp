#pragma once

#include "thermoexact/tensor4.hpp"

namespace te {

struct Material {
    Mat2 sigma = Mat2::Identity();  // S/m
    Mat2 seebeck = Mat2::Zero();    // V/K, not assumed symmetric
    Mat2 kappa = Mat2::Identity();  // W/(m K)
    double T0 = 1.0;                // K
};

// Lambda (x) I + nu T
struct IsoMaterial {
    Mat2 lambda = Mat2::Identity();
    double nu = 0.0;

    bool valid() const;
    BlockTensor tensor() const;
};

// Throws DomainError if the tensor is not an isotropic tensor.
IsoMaterial iso_from_tensor(const BlockTensor& b, double tol = 1e-10);

BlockTensor canon_from_physical(const Material& m);
Material physical_from_canon(const BlockTensor& L, double T0);

// Largest eigenvalue of L22^-1 L12^T L11^-1 L12.
double coupling_eigenvalue(const BlockTensor& L);
double figure_of_merit(const BlockTensor& L);

}  // namespace te
