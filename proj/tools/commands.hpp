#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>

#include "thermoexact/random.hpp"
#include "thermoexact/tensor4.hpp"

namespace te::cli {

enum Exit : int { kPass = 0, kVerifyFail = 1, kInputError = 2, kDomainError = 3 };

struct RunConfig {
    std::uint64_t seed = kDefaultSeed;
    double tol = 1e-9;
    int trials = 200;
    bool json = false;
    std::string output;  // empty: stdout
};

struct VerifyOptions {
    bool corrupt_fixture = false;  // negative control, replaces entry 11 by a non-algebra
};

struct ErOptions {
    int er_id = 22;
    std::string file;
    bool sample = false;       // use the seeded sampler instead of a file
    double perturb = 0.0;      // added to L(0,0) before the test
};

struct MixOptions {
    std::string file;
    std::optional<double> f;
    std::optional<Vec2> normal;
};

struct PolyOptions {
    std::string file;
    bool all_roots = false;
};

int cmd_verify_algebras(const RunConfig& cfg, const VerifyOptions& opt, std::ostream& out);
int cmd_er(const RunConfig& cfg, const ErOptions& opt, std::ostream& out);
int cmd_laminate(const RunConfig& cfg, const MixOptions& opt, std::ostream& out);
int cmd_two_phase(const RunConfig& cfg, const MixOptions& opt, std::ostream& out);
int cmd_polycrystal(const RunConfig& cfg, const PolyOptions& opt, std::ostream& out);
int cmd_zt(const RunConfig& cfg, const std::string& file, std::ostream& out);

}  // namespace te::cli
