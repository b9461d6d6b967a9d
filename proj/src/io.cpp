#include "thermoexact/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace te {

namespace {

std::string fmt_number(double x) {
    if (!std::isfinite(x)) return "null";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x == 0.0 ? 0.0 : x);  // no "-0"
    return buf;
}

void write(std::ostringstream& os, const json& j, int indent) {
    const std::string pad(2 * (indent + 1), ' '), end_pad(2 * indent, ' ');
    switch (j.type()) {
        case json::value_t::object: {
            if (j.empty()) {
                os << "{}";
                return;
            }
            os << "{\n";
            bool first = true;
            for (auto it = j.begin(); it != j.end(); ++it) {
                if (!first) os << ",\n";
                first = false;
                os << pad << json(it.key()).dump() << ": ";
                write(os, it.value(), indent + 1);
            }
            os << "\n" << end_pad << "}";
            return;
        }
        case json::value_t::array: {
            if (j.empty()) {
                os << "[]";
                return;
            }
            // arrays of scalars stay on one line
            bool flat = true;
            for (const auto& v : j) flat = flat && !v.is_structured();
            if (flat) {
                os << "[";
                for (std::size_t i = 0; i < j.size(); ++i) {
                    if (i) os << ", ";
                    write(os, j[i], indent);
                }
                os << "]";
                return;
            }
            os << "[\n";
            for (std::size_t i = 0; i < j.size(); ++i) {
                if (i) os << ",\n";
                os << pad;
                write(os, j[i], indent + 1);
            }
            os << "\n" << end_pad << "]";
            return;
        }
        case json::value_t::number_float:
            os << fmt_number(j.get<double>());
            return;
        default:
            os << j.dump();
    }
}

[[noreturn]] void bad(const std::string& what) { throw InputError("json: " + what); }

const json& field(const json& j, const char* key) {
    if (!j.is_object()) bad(std::string("expected an object holding \"") + key + "\"");
    const auto it = j.find(key);
    if (it == j.end()) bad(std::string("missing field \"") + key + "\"");
    return *it;
}

double num(const json& j, const char* what) {
    if (!j.is_number()) bad(std::string(what) + " must be a number");
    const double x = j.get<double>();
    if (!std::isfinite(x)) bad(std::string(what) + " must be finite");
    return x;
}

double num_or(const json& j, const char* key, double fallback) {
    if (!j.contains(key)) return fallback;
    return num(j.at(key), key);
}

const json& array_of(const json& j, std::size_t n, const char* what) {
    if (!j.is_array() || j.size() != n) bad(std::string(what) + " must be an array of length " + std::to_string(n));
    return j;
}

LaminateNode laminate_rec(const json& j, int depth) {
    if (depth > 64) bad("laminate nesting too deep");
    if (!j.is_object() || j.size() != 1) bad("laminate node must be {\"leaf\": ...} or {\"mix\": ...}");
    if (j.contains("leaf")) {
        const json& l = j.at("leaf");
        if (!l.is_object()) bad("leaf must be an object");
        const double rot = num_or(l, "rotation", 0.0);
        int phase = 0;
        if (l.contains("phase")) {
            if (!l.at("phase").is_number_integer() || l.at("phase").get<int>() < 0) bad("phase must be a non-negative integer");
            phase = l.at("phase").get<int>();
        }
        if (l.contains("tensor")) return LaminateNode::make_leaf(tensor_from_json(l.at("tensor")), rot, phase);
        if (!l.contains("phase")) bad("leaf needs a tensor or a phase");
        return LaminateNode::make_phase(phase, rot);
    }
    if (j.contains("mix")) {
        const json& m = j.at("mix");
        const LaminateNode c1 = laminate_rec(field(m, "c1"), depth + 1);
        const LaminateNode c2 = laminate_rec(field(m, "c2"), depth + 1);
        const double f = num(field(m, "f"), "f");
        const Vec2 n = vec2_from_json(field(m, "n"));
        return LaminateNode::make_mix(c1, c2, f, n);
    }
    bad("laminate node must be {\"leaf\": ...} or {\"mix\": ...}");
}

}  // namespace

std::string dump(const json& j) {
    std::ostringstream os;
    write(os, j, 0);
    os << "\n";
    return os.str();
}

json parse_json(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        bad(std::string("parse error: ") + e.what());
    }
}

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_json(ss.str());
}

json to_json(const Mat2& m) { return json::array({json::array({m(0, 0), m(0, 1)}), json::array({m(1, 0), m(1, 1)})}); }

json to_json(const Vec2& v) { return json::array({v(0), v(1)}); }

json to_json(const CMat2& m) {
    json a = json::array();
    for (int i = 0; i < 2; ++i)
        for (int k = 0; k < 2; ++k) a.push_back(json::array({m(i, k).real(), m(i, k).imag()}));
    return a;
}

json to_json(const KTensor& k) { return {{"X", to_json(k.X)}, {"Y", to_json(k.Y)}}; }

json to_json(const BlockTensor& b) {
    const Mat4 d = b.dense();
    json rows = json::array();
    for (int i = 0; i < 4; ++i) rows.push_back(json::array({d(i, 0), d(i, 1), d(i, 2), d(i, 3)}));
    return {{"L", rows}};
}

json to_json(const Material& m) {
    return {{"sigma", to_json(m.sigma)}, {"seebeck", to_json(m.seebeck)}, {"kappa", to_json(m.kappa)}, {"T0", m.T0}};
}

json to_json(const LinkMap& m) { return {{"A", to_json(m.A)}, {"B", to_json(m.B)}}; }

json to_json(const Report& r) {
    return {{"algebra_id", r.algebra_id}, {"check", r.check}, {"trials", r.trials},
            {"max_residual", r.max_residual}, {"pass", r.pass}};
}

json to_json(const ERResult& r) {
    json cs = json::array();
    for (const auto& c : r.constraints) cs.push_back({{"name", c.name}, {"value", c.value}, {"ok", c.ok}});
    return {{"er_id", r.id}, {"pd", r.pd}, {"member", r.member}, {"residual", r.residual}, {"constraints", cs}};
}

json to_json(const LaminateNode& n) {
    if (n.leaf) {
        json l = {{"rotation", n.rotation}};
        if (n.tensor.dense().isZero(0.0)) {
            l["phase"] = n.phase;
        } else {
            l["tensor"] = to_json(n.tensor);
            if (n.phase != 0) l["phase"] = n.phase;
        }
        return {{"leaf", l}};
    }
    return {{"mix", {{"c1", to_json(*n.c1)}, {"c2", to_json(*n.c2)}, {"f", n.f}, {"n", to_json(n.n)}}}};
}

json to_json(const IsoPhasePair& p) {
    return {{"phase1", {{"sigma", to_json(p.phase1.sigma)}, {"r", p.phase1.r}}},
            {"phase2", {{"sigma", to_json(p.phase2.sigma)}, {"r", p.phase2.r}}}};
}

json to_json(const TwoPhaseResult& r) {
    const Classification& c = r.info;
    json scalars = {{"d1", c.d1},
                    {"d2", c.d2},
                    {"dr", c.dr},
                    {"rho", c.red.rho},
                    {"lambda1", c.red.lambda1},
                    {"lambda2", c.red.lambda2},
                    {"discriminant", c.roots.discriminant},
                    {"a0", r.a0}};
    json out = {{"case", to_string(c.tag)},
                {"proportional", c.proportional},
                {"weak", c.weak},
                {"explicit", r.explicit_form},
                {"scalars", scalars},
                {"notes", r.notes}};
    if (r.sigma_star) out["sigma_star"] = to_json(*r.sigma_star);
    if (r.Lstar) {
        out["Lstar"] = to_json(*r.Lstar);
    } else {
        json con = {{"description", r.notes.empty() ? std::string() : r.notes.back()}};
        if (r.ab) con["coefficients"] = {{"a", r.ab->a}, {"b", r.ab->b}, {"A", r.ab->A}, {"B", r.ab->B}};
        if (r.S) con["S1"] = to_json(r.S->S1), con["S2"] = to_json(r.S->S2);
        out["constraint"] = con;
    }
    return out;
}

json to_json(const PolyResult& r, bool all_roots) {
    json roots = json::array();
    for (const auto& root : r.roots)
        if (all_roots || root.theta == r.theta) roots.push_back({{"theta", root.theta}, {"feasible", root.feasible}});
    return {{"theta", r.theta},
            {"Lstar", to_json(r.tensor)},
            {"alpha", r.alpha},
            {"B", to_json(r.B)},
            {"roots", roots},
            {"conjectural", r.conjectural},
            {"residual_theta", r.residual_theta},
            {"residual_z", r.residual_z}};
}

Mat2 mat2_from_json(const json& j) {
    array_of(j, 2, "2x2 matrix");
    Mat2 m;
    for (int i = 0; i < 2; ++i) {
        array_of(j[i], 2, "2x2 matrix row");
        for (int k = 0; k < 2; ++k) m(i, k) = num(j[i][k], "matrix entry");
    }
    return m;
}

Vec2 vec2_from_json(const json& j) {
    array_of(j, 2, "vector");
    return {num(j[0], "vector entry"), num(j[1], "vector entry")};
}

CMat2 cmat2_from_json(const json& j) {
    array_of(j, 4, "complex 2x2 matrix");
    CMat2 m;
    for (int e = 0; e < 4; ++e) {
        array_of(j[e], 2, "complex entry");
        m(e / 2, e % 2) = cplx(num(j[e][0], "real part"), num(j[e][1], "imaginary part"));
    }
    return m;
}

KTensor ktensor_from_json(const json& j) {
    try {
        return kt_make(cmat2_from_json(field(j, "X")), cmat2_from_json(field(j, "Y")));
    } catch (const std::invalid_argument& e) {
        bad(e.what());
    }
}

BlockTensor block_from_json(const json& j) {
    const json& rows = array_of(field(j, "L"), 4, "L");
    Mat4 m;
    for (int i = 0; i < 4; ++i) {
        array_of(rows[i], 4, "L row");
        for (int k = 0; k < 4; ++k) m(i, k) = num(rows[i][k], "L entry");
    }
    try {
        return BlockTensor::from_dense(m);
    } catch (const std::invalid_argument& e) {
        bad(e.what());
    }
}

Material material_from_json(const json& j) {
    Material m;
    m.sigma = mat2_from_json(field(j, "sigma"));
    m.seebeck = mat2_from_json(field(j, "seebeck"));
    m.kappa = mat2_from_json(field(j, "kappa"));
    m.T0 = num(field(j, "T0"), "T0");
    if (!(m.T0 > 0)) bad("T0 must be positive");
    return m;
}

BlockTensor tensor_from_json(const json& j) {
    if (!j.is_object()) bad("tensor must be an object");
    if (j.contains("L")) return block_from_json(j);
    if (j.contains("X")) return kt_to_block(ktensor_from_json(j));
    if (j.contains("sigma") && j.contains("kappa")) return canon_from_physical(material_from_json(j));
    bad("tensor must have \"L\", \"X\"/\"Y\" or material fields");
}

LinkMap linkmap_from_json(const json& j) {
    LinkMap m;
    m.A = mat2_from_json(field(j, "A"));
    m.B = mat2_from_json(field(j, "B"));
    if (std::abs(m.B.determinant()) < 1e-14) bad("B must be invertible");
    return m;
}

LaminateNode laminate_from_json(const json& j) { return laminate_rec(j, 0); }

IsoPhasePair pair_from_json(const json& j) {
    IsoPhasePair p;
    for (auto [key, ph] : {std::pair{"phase1", &p.phase1}, std::pair{"phase2", &p.phase2}}) {
        const json& o = field(j, key);
        ph->sigma = mat2_from_json(field(o, "sigma"));
        ph->r = num(field(o, "r"), "r");
        if ((ph->sigma - ph->sigma.transpose()).norm() > 1e-10 * scale_of(ph->sigma)) bad("sigma must be symmetric");
        ph->sigma = sym(ph->sigma);
    }
    return p;
}

SigmaModel micro_from_json(const json& j) {
    if (!j.is_object() || j.size() != 1) bad("micro must have exactly one of rank_one, rank_two, shape");
    if (j.contains("rank_one")) {
        const json& o = j.at("rank_one");
        return SigmaModel::rank_one(num(field(o, "f"), "f"), vec2_from_json(field(o, "n")));
    }
    if (j.contains("rank_two")) {
        const json& o = j.at("rank_two");
        return SigmaModel::rank_two(num(field(o, "f_out"), "f_out"), vec2_from_json(field(o, "n_out")),
                                    num(field(o, "f_in"), "f_in"), vec2_from_json(field(o, "n_in")));
    }
    if (j.contains("shape")) return SigmaModel(laminate_from_json(j.at("shape")));
    bad("micro must have exactly one of rank_one, rank_two, shape");
}

}  // namespace te
