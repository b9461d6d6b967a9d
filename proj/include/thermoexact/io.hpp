#pragma once

#include "thermoexact/algebra.hpp"
#include "thermoexact/exactrel.hpp"
#include "thermoexact/laminate.hpp"
#include "thermoexact/linkgroup.hpp"
#include "thermoexact/materials.hpp"
#include "thermoexact/polycrystal.hpp"
#include "thermoexact/tensor4.hpp"
#include "thermoexact/twophase.hpp"

#include "json.hpp"

#include <string>

namespace te {

using json = nlohmann::json;

// Pretty printed, keys sorted, every floating point number with 17 significant digits.
std::string dump(const json& j);
// InputError on malformed text.
json parse_json(const std::string& text);
json read_json_file(const std::string& path);

json to_json(const Mat2& m);
json to_json(const Vec2& v);
json to_json(const CMat2& m);  // [[re, im] x 4], row-major
json to_json(const KTensor& k);
json to_json(const BlockTensor& b);  // {"L": 4x4}
json to_json(const Material& m);
json to_json(const LinkMap& m);
json to_json(const Report& r);
json to_json(const ERResult& r);
json to_json(const LaminateNode& n);
json to_json(const IsoPhasePair& p);
json to_json(const TwoPhaseResult& r);
// roots: only the selected one unless all_roots
json to_json(const PolyResult& r, bool all_roots = false);

// All readers throw InputError on schema violations.
Mat2 mat2_from_json(const json& j);
Vec2 vec2_from_json(const json& j);
CMat2 cmat2_from_json(const json& j);
KTensor ktensor_from_json(const json& j);
BlockTensor block_from_json(const json& j);
Material material_from_json(const json& j);
// Accepts {"L"}, {"X","Y"} or the material schema.
BlockTensor tensor_from_json(const json& j);
LinkMap linkmap_from_json(const json& j);
LaminateNode laminate_from_json(const json& j);
IsoPhasePair pair_from_json(const json& j);
// {"rank_one": {f, n}} | {"rank_two": {f_out, n_out, f_in, n_in}} | {"shape": laminate}
SigmaModel micro_from_json(const json& j);

}  // namespace te
