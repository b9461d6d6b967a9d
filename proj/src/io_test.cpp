#include "doctest.h"
#include "thermoexact/io.hpp"
#include "thermoexact/random.hpp"

using namespace te;

TEST_CASE("number formatting") {
    CHECK(dump(json(0.1)) == "0.10000000000000001\n");
    CHECK(dump(json(-0.0)) == "0\n");
    CHECK(dump(json(3)) == "3\n");
    CHECK(dump(json(std::nan(""))) == "null\n");
    CHECK(dump(json::array({1.5, 2})) == "[1.5, 2]\n");
    CHECK(dump(json{{"b", 1}, {"a", json::object()}}) == "{\n  \"a\": {},\n  \"b\": 1\n}\n");
}

TEST_CASE("17 digit text round trips doubles") {
    Rng rng(1);
    for (int t = 0; t < 200; ++t) {
        const BlockTensor b = BlockTensor::from_dense(rng.spd4());
        const BlockTensor back = tensor_from_json(parse_json(dump(to_json(b))));
        CHECK(back.dense() == b.dense());

        KTensor k{rng.herm(), rng.csym()};
        const KTensor kb = ktensor_from_json(parse_json(dump(to_json(k))));
        CHECK(kb.X == k.X);
        CHECK(kb.Y == k.Y);

        const LinkMap m{rng.mat2(), rng.mat2() + 3 * I2()};
        const LinkMap mb = linkmap_from_json(parse_json(dump(to_json(m))));
        CHECK(mb.A == m.A);
        CHECK(mb.B == m.B);
    }
}

TEST_CASE("tensor schemas agree") {
    Rng rng(2);
    KTensor k{rng.herm() + 3.0 * CMat2::Identity(), 0.2 * rng.csym()};
    const BlockTensor a = tensor_from_json(to_json(k));
    CHECK((a.dense() - kt_to_block(k).dense()).norm() < 1e-14);

    Material m;
    m.sigma << 2, 0.1, 0.1, 1;
    m.seebeck << 0.3, 0.05, -0.02, 0.2;
    m.kappa << 1.5, 0, 0, 1.2;
    m.T0 = 300;
    const BlockTensor c = tensor_from_json(to_json(m));
    CHECK((c.dense() - canon_from_physical(m).dense()).norm() < 1e-14);
    const Material mb = material_from_json(to_json(m));
    CHECK(mb.seebeck == m.seebeck);
}

TEST_CASE("laminate trees") {
    Rng rng(3);
    const BlockTensor L1 = BlockTensor::from_dense(rng.spd4()), L2 = BlockTensor::from_dense(rng.spd4());
    const LaminateNode inner = LaminateNode::make_mix(LaminateNode::make_leaf(L1, 0.3),
                                                      LaminateNode::make_leaf(L2), 0.25, Vec2(1, 2));
    const LaminateNode root = LaminateNode::make_mix(inner, LaminateNode::make_leaf(L1, -1.0), 0.6, Vec2(0, 1));
    const LaminateNode back = laminate_from_json(parse_json(dump(to_json(root))));
    CHECK(back.depth() == 2);
    CHECK(laminate_tree(back).dense() == laminate_tree(root).dense());

    const json shape = parse_json(R"({"mix": {"c1": {"leaf": {"phase": 0}}, "c2": {"leaf": {"phase": 1}},
                                              "f": 0.5, "n": [1, 0]}})");
    const SigmaModel sm = micro_from_json({{"shape", shape}});
    const Mat2 s = sm(4.0);
    CHECK(s(0, 0) == doctest::Approx(1.6));
    CHECK(s(1, 1) == doctest::Approx(2.5));
    CHECK(to_json(laminate_from_json(to_json(sm.shape()))) == to_json(sm.shape()));
    CHECK(to_json(sm.shape())["mix"]["c2"]["leaf"]["phase"] == 1);
}

TEST_CASE("two phase pairs and results") {
    const json j = parse_json(R"({"phase1": {"sigma": [[1, 0], [0, 1]], "r": 0},
                                  "phase2": {"sigma": [[4, 0], [0, 4]], "r": 3}})");
    const IsoPhasePair p = pair_from_json(j);
    CHECK(p.phase2.r == 3);
    CHECK(to_json(p) == j);
    const json out = to_json(effective(p, SigmaModel::rank_one(0.5, Vec2(1, 0))));
    CHECK(out["case"] == "2c");
    CHECK(out.contains("Lstar"));
}

TEST_CASE("polycrystal result") {
    const PolyResult r = solve_isotropic(KTensor{2.0 * CMat2::Identity(), CMat2::Identity()});
    const json all = to_json(r, true), feas = to_json(r, false);
    CHECK(all["roots"].size() == r.roots.size());
    REQUIRE(feas["roots"].size() == 1);
    CHECK(feas["roots"][0]["feasible"] == true);
    CHECK(feas["roots"][0]["theta"].get<double>() == r.theta);
    CHECK(all["theta"].get<double>() == r.theta);
}

TEST_CASE("schema violations raise input errors") {
    CHECK_THROWS_AS(parse_json("{"), InputError);
    CHECK_THROWS_AS(tensor_from_json(parse_json("{}")), InputError);
    CHECK_THROWS_AS(tensor_from_json(parse_json(R"({"L": [[1,0],[0,1]]})")), InputError);
    CHECK_THROWS_AS(tensor_from_json(parse_json(R"({"L": [[1,2,0,0],[0,1,0,0],[0,0,1,0],[0,0,0,1]]})")),
                    InputError);
    CHECK_THROWS_AS(tensor_from_json(parse_json(R"({"L": [[1,"a",0,0],[0,1,0,0],[0,0,1,0],[0,0,0,1]]})")),
                    InputError);
    CHECK_THROWS_AS(laminate_from_json(parse_json(R"({"leaf": {}})")), InputError);
    CHECK_THROWS_AS(laminate_from_json(parse_json(R"({"mix": {"c1": {"leaf": {"phase": 0}},
        "c2": {"leaf": {"phase": 1}}, "f": 1.5, "n": [1, 0]}})")),
                    InputError);
    CHECK_THROWS_AS(laminate_from_json(parse_json(R"({"mix": {"c1": {"leaf": {"phase": 0}},
        "c2": {"leaf": {"phase": 1}}, "f": 0.5, "n": [0, 0]}})")),
                    InputError);
    CHECK_THROWS_AS(pair_from_json(parse_json(R"({"phase1": {"sigma": [[1, 2], [0, 1]], "r": 0},
        "phase2": {"sigma": [[1, 0], [0, 1]], "r": 0}})")),
                    InputError);
    CHECK_THROWS_AS(micro_from_json(parse_json(R"({"rank_three": {}})")), InputError);
    CHECK_THROWS_AS(linkmap_from_json(parse_json(R"({"A": [[1,0],[0,1]], "B": [[0,0],[0,0]]})")), InputError);
    CHECK_THROWS_AS(read_json_file("/nonexistent/file.json"), InputError);
}
