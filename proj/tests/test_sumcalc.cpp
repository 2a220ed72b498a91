#include "support.hpp"

#include <legsum/sumcalc.hpp>

#include <doctest.h>
#include <json.hpp>

#include <algorithm>

using namespace legsum;
using testsupport::twin_top_atlas;
using testsupport::twin_top_gap_atlas;

namespace {

SumSpec trefoil_pair(Adjacency adj = Adjacency::Cyclic) {
    return SumSpec({torus_atlas(-3, 2), torus_atlas(-3, 2)}, adj);
}

SumSpec big_pair() {
    return SumSpec({torus_atlas(-11, 4), torus_atlas(-11, 4)});
}

SumTuple simple_tuple(std::vector<TbR> points) {
    SumTuple t;
    for (TbR x : points) t.push_back({x, ""});
    return t;
}

} // namespace

TEST_CASE("spec construction and label") {
    const SumSpec s = trefoil_pair();
    CHECK(s.size() == 2);
    CHECK(s.label() == "T(-3,2) # T(-3,2)");
    CHECK(SumSpec({unknot_atlas(), torus_atlas(-7, 3)}).label() == "unknot # T(-7,3)");

    CHECK_THROWS_WITH_AS(SumSpec({}), "spec needs at least one summand", InvalidSpecError);
    CHECK_THROWS_WITH_AS(
        SumSpec({PrimeAtlas::simple("K", {TbR{-1, 0}}), PrimeAtlas::simple("K", {TbR{-3, 0}})}),
        "conflicting definitions for atlas 'K'", InvalidSpecError);
}

TEST_CASE("symmetry group sizes follow the repeated summands") {
    CHECK(trefoil_pair().symmetry().size() == 2);
    CHECK(SumSpec({torus_atlas(-3, 2), unknot_atlas()}).symmetry().size() == 1);
    CHECK(SumSpec({torus_atlas(-3, 2), torus_atlas(-3, 2), torus_atlas(-3, 2)})
              .symmetry()
              .size() == 6);
    CHECK(SumSpec({torus_atlas(-3, 2), torus_atlas(-3, 2), unknot_atlas()})
              .symmetry()
              .size() == 2);
}

TEST_CASE("adjacent pairs by adjacency mode") {
    using Pairs = std::vector<std::pair<std::size_t, std::size_t>>;
    CHECK(trefoil_pair(Adjacency::Cyclic).adjacent_pairs() == Pairs{{0, 1}});
    CHECK(trefoil_pair(Adjacency::Linear).adjacent_pairs() == Pairs{{0, 1}});
    const SumSpec c3({unknot_atlas(), unknot_atlas(), unknot_atlas()}, Adjacency::Cyclic);
    CHECK(c3.adjacent_pairs() == Pairs{{0, 1}, {1, 2}, {2, 0}});
    const SumSpec l3({unknot_atlas(), unknot_atlas(), unknot_atlas()}, Adjacency::Linear);
    CHECK(l3.adjacent_pairs() == Pairs{{0, 1}, {1, 2}});
}

TEST_CASE("sum invariants add with one extra twist per splice") {
    CHECK(sum_tbr({{-6, 1}, {-6, -1}}) == TbR{-11, 0});
    CHECK(sum_tbr({{-6, 1}}) == TbR{-6, 1});
    CHECK(sum_tbr({{-1, 0}, {-1, 0}, {-1, 0}}) == TbR{-1, 0});
    CHECK_THROWS_AS(sum_tbr({}), std::invalid_argument);

    const SumSpec s = trefoil_pair();
    CHECK(tuple_tbr(s, simple_tuple({{-6, 1}, {-6, -1}})) == TbR{-11, 0});
    CHECK_THROWS_AS(tuple_tbr(s, simple_tuple({{-6, 1}})), std::invalid_argument);
    CHECK(max_tb_sum(s) == -11);
    CHECK(max_tb_sum(big_pair()) == -87);
    CHECK(max_tb_sum(SumSpec({unknot_atlas(), unknot_atlas()})) == -1);
}

TEST_CASE("tuple validity") {
    const SumSpec s = trefoil_pair();
    CHECK(valid_tuple(s, simple_tuple({{-6, 1}, {-7, 0}})));
    CHECK_FALSE(valid_tuple(s, simple_tuple({{-6, 0}, {-7, 0}})));
    CHECK_FALSE(valid_tuple(s, simple_tuple({{-5, 0}, {-7, 0}})));
    CHECK_FALSE(valid_tuple(s, simple_tuple({{-6, 1}})));

    const SumSpec p({twin_top_atlas(), unknot_atlas()});
    CHECK(valid_tuple(p, {{{1, 0}, "X"}, {{-1, 0}, ""}}));
    CHECK_FALSE(valid_tuple(p, {{{1, 0}, "Z"}, {{-1, 0}, ""}}));
    CHECK_FALSE(valid_tuple(p, {{{1, 0}, ""}, {{-1, 0}, ""}}));
}

TEST_CASE("two trefoils at the top level") {
    const SumSpec s = trefoil_pair();
    const auto classes = classify(s, {-11, 0});
    REQUIRE(classes.size() == 1);
    CHECK(classes[0].canonical == simple_tuple({{-6, -1}, {-6, 1}}));
    CHECK(classes[0].size == 2);

    // The whole top row, one class per realized point.
    CHECK(count(s, {-11, -2}) == 1);
    CHECK(count(s, {-11, 2}) == 1);
    CHECK(count(s, {-11, -4}) == 0);
    CHECK(count(s, {-11, 1}) == 0);
    CHECK(count(s, {-10, 0}) == 0);
}

TEST_CASE("two trefoils one level down") {
    const SumSpec s = trefoil_pair();
    const auto classes = classify(s, {-12, 1});
    REQUIRE(classes.size() == 1);
    CHECK(classes[0].canonical == simple_tuple({{-7, 0}, {-6, 1}}));
    CHECK(classes[0].size == 4);

    const auto comp = component_of(s, simple_tuple({{-6, 1}, {-7, 0}}));
    CHECK(comp.size() == 4);
    CHECK(comp == enumerate_cell(s, {-12, 1}));
    CHECK(std::find(comp.begin(), comp.end(), simple_tuple({{-7, 2}, {-6, -1}})) != comp.end());
    CHECK(std::find(comp.begin(), comp.end(), simple_tuple({{-7, 0}, {-6, 1}})) != comp.end());
}

TEST_CASE("two large torus knots keep parallel classes") {
    const SumSpec s = big_pair();
    const auto top = classify(s, {-87, 0});
    REQUIRE(top.size() == 2);
    CHECK(top[0].canonical == simple_tuple({{-44, -7}, {-44, 7}}));
    CHECK(top[1].canonical == simple_tuple({{-44, -1}, {-44, 1}}));
    CHECK(top[0].size == 2);
    CHECK(top[1].size == 2);

    const auto down = classify(s, {-88, 1});
    REQUIRE(down.size() == 2);
    CHECK(down[0].canonical == simple_tuple({{-45, -6}, {-44, 7}}));
    CHECK(down[1].canonical == simple_tuple({{-45, 0}, {-44, 1}}));
    CHECK(down[0].size == 4);
    CHECK(down[1].size == 4);
}

TEST_CASE("unknot pair collapses to one class") {
    const SumSpec s({unknot_atlas(), unknot_atlas()});
    const auto classes = classify(s, {-1, 0});
    REQUIRE(classes.size() == 1);
    CHECK(classes[0].size == 1);
    CHECK(count(s, {-3, 0}) == 1);
    CHECK(count(s, {-2, 1}) == 1);
    CHECK(count(s, {-2, 0}) == 0);
}

TEST_CASE("classify and classify_components agree") {
    const SumSpec s = trefoil_pair();
    for (TbR x : {TbR{-11, 0}, TbR{-12, 1}, TbR{-13, 0}, TbR{-14, 1}}) {
        const auto classes = classify(s, x);
        const auto comps = classify_components(s, x);
        REQUIRE(classes.size() == comps.size());
        std::size_t total = 0;
        for (std::size_t i = 0; i < comps.size(); ++i) {
            CHECK(classes[i].canonical == comps[i].front());
            CHECK(classes[i].size == (std::int64_t)comps[i].size());
            CHECK(std::is_sorted(comps[i].begin(), comps[i].end()));
            total += comps[i].size();
        }
        CHECK(total == enumerate_cell(s, x).size());
    }
}

TEST_CASE("canonical is idempotent and class-constant") {
    const SumSpec s = trefoil_pair();
    const SumTuple t = simple_tuple({{-6, 1}, {-7, 0}});
    const SumTuple c = canonical(s, t);
    CHECK(c == simple_tuple({{-7, 0}, {-6, 1}}));
    CHECK(canonical(s, c) == c);
    for (const auto& m : component_of(s, t)) CHECK(canonical(s, m) == c);
}

TEST_CASE("equivalent runs both decision routes") {
    const SumSpec s = trefoil_pair();
    CHECK(equivalent(s, simple_tuple({{-6, 1}, {-7, 0}}), simple_tuple({{-7, 0}, {-6, 1}})));
    CHECK(equivalent(s, simple_tuple({{-6, 1}, {-7, 0}}), simple_tuple({{-6, -1}, {-7, 2}})));
    CHECK_FALSE(
        equivalent(s, simple_tuple({{-6, 1}, {-7, 0}}), simple_tuple({{-6, 1}, {-8, 1}})));
    CHECK_THROWS_AS(component_of(s, simple_tuple({{-6, 0}, {-6, 0}})), std::invalid_argument);
}

TEST_CASE("cyclic and linear adjacency classify alike") {
    const std::vector<PrimeAtlas> parts = {torus_atlas(-3, 2), torus_atlas(-5, 2),
                                           unknot_atlas()};
    const SumSpec cyc(parts, Adjacency::Cyclic);
    const SumSpec lin(parts, Adjacency::Linear);
    for (TbR x : {TbR{-17, 0}, TbR{-18, 1}, TbR{-19, 0}, TbR{-19, 2}, TbR{-20, 3}}) {
        CHECK(count(cyc, x) == count(lin, x));
        const auto a = classify(cyc, x);
        const auto b = classify(lin, x);
        REQUIRE(a.size() == b.size());
        for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].canonical == b[i].canonical);
    }
}

TEST_CASE("mountain range over the two-trefoil window") {
    const SumSpec s = trefoil_pair();
    const Window w{-14, -11, -4, 4};
    const MountainRange range = mountain_range(s, w);
    REQUIRE(range.counts.size() == 4);
    REQUIRE(range.counts[0].size() == 9);
    using Row = std::vector<std::int64_t>;
    CHECK(range.counts[0] == Row{0, 0, 1, 0, 1, 0, 1, 0, 0});
    CHECK(range.counts[1] == Row{0, 1, 0, 1, 0, 1, 0, 1, 0});
    CHECK(range.counts[2] == Row{1, 0, 1, 0, 1, 0, 1, 0, 1});
    CHECK(range.counts[3] == Row{0, 1, 0, 1, 0, 1, 0, 1, 0});
    CHECK(range.at({-11, 0}) == 1);
    CHECK(range.at({-14, -3}) == 1);
    CHECK(range.at({-14, -4}) == 0);

    // Threaded evaluation gives the identical grid.
    CHECK(mountain_range(s, w, 3).counts == range.counts);
    CHECK(mountain_range(s, w, 0).counts == range.counts);

    // Every cell equals the pointwise count.
    for (int tb = w.tb_min; tb <= w.tb_max; ++tb)
        for (int r = w.r_min; r <= w.r_max; ++r)
            CHECK(range.at({tb, r}) == count(s, {tb, r}));
}

TEST_CASE("stabilizing a sum class lands on the unique lower class") {
    const SumSpec s = trefoil_pair();
    const auto top = classify(s, {-11, 0});
    REQUIRE(top.size() == 1);
    const auto minus = stabilize_sum_class(s, top[0], StabSign::Minus);
    CHECK(tuple_tbr(s, minus.canonical) == TbR{-12, -1});
    const auto at_point = classify(s, {-12, -1});
    REQUIRE(at_point.size() == 1);
    CHECK(minus == at_point[0]);

    const auto plus = stabilize_sum_class(s, top[0], StabSign::Plus);
    CHECK(tuple_tbr(s, plus.canonical) == TbR{-12, 1});
    CHECK(stabilize_sum_class(s, plus, StabSign::Minus) ==
          stabilize_sum_class(s, minus, StabSign::Plus));

    CHECK_THROWS_AS(stabilize_sum_class(s, SumClassId{}, StabSign::Plus),
                    std::invalid_argument);
}

TEST_CASE("distinctness under a stabilization budget") {
    const SumSpec s = big_pair();
    const auto top = classify(s, {-87, 0});
    REQUIRE(top.size() == 2);
    CHECK_FALSE(distinct_after_stabilizations(s, top[0], top[0], 0));
    CHECK(distinct_after_stabilizations(s, top[0], top[1], 0));
    CHECK(distinct_after_stabilizations(s, top[0], top[1], 2) ==
          distinct_after_stabilizations(s, top[0], top[1], 2, StabOrder::FullSequence));

    CHECK_THROWS_WITH_AS(distinct_after_stabilizations(s, top[0], top[1], -1),
                         "distinct_after_stabilizations: negative budget",
                         std::invalid_argument);
    const auto lower = classify(s, {-88, 1});
    CHECK_THROWS_WITH_AS(distinct_after_stabilizations(s, top[0], lower[0], 1),
                         "distinct_after_stabilizations: classes sit at different (tb, r) "
                         "points",
                         std::invalid_argument);
}

TEST_CASE("default simplicity depth follows the widest peak spread") {
    CHECK(default_simplicity_depth(SumSpec({unknot_atlas(), unknot_atlas()})) == 4);
    CHECK(default_simplicity_depth(trefoil_pair()) == 6);
    CHECK(default_simplicity_depth(big_pair()) == 18);
    CHECK(default_simplicity_depth(SumSpec({unknot_atlas(), torus_atlas(-11, 4)})) == 18);
}

TEST_CASE("unknot pair diagonals merge instantly") {
    const SumSpec s({unknot_atlas(), unknot_atlas()});
    const Window w{-11, -1, -10, 10};
    const auto verdicts = transversally_simple_check(s, w, default_simplicity_depth(s));
    CHECK(!verdicts.empty());
    for (const auto& v : verdicts) {
        CHECK(v.merged);
        CHECK(v.depth_used == 0);
        CHECK(v.remaining == 1);
    }
}

TEST_CASE("parallel classes need depth to merge") {
    const SumSpec s = big_pair();
    const Window w{-87, -87, 0, 0};

    const auto shallow = transversally_simple_check(s, w, 0);
    REQUIRE(shallow.size() == 1);
    CHECK(shallow[0].s == -87);
    CHECK(shallow[0].top == TbR{-87, 0});
    CHECK(shallow[0].top_classes == 2);
    CHECK(shallow[0].origins == 2);
    CHECK_FALSE(shallow[0].merged);
    CHECK(shallow[0].remaining == 2);

    CHECK_FALSE(transversally_simple_check(s, w, 2)[0].merged);

    const auto deep = transversally_simple_check(s, w, 8);
    REQUIRE(deep.size() == 1);
    CHECK(deep[0].merged);
    CHECK(deep[0].depth_used == 3);
    CHECK(deep[0].remaining == 1);

    // The measured depth is sharp.
    CHECK(transversally_simple_check(s, w, 3)[0].merged);

    CHECK_THROWS_AS(transversally_simple_check(s, w, -1), std::invalid_argument);
    CHECK(transversally_simple_check(s, Window{0, -1, 0, 0}, 4).empty());
}

TEST_CASE("classes_json carries the classification verbatim") {
    const SumSpec s = trefoil_pair();
    const TbR x{-12, 1};
    const auto classes = classify(s, x);
    const auto j = nlohmann::json::parse(classes_json(s, x, classes));
    CHECK(j["spec"] == "T(-3,2) # T(-3,2)");
    CHECK(j["tb"] == -12);
    CHECK(j["r"] == 1);
    CHECK(j["count"] == 1);
    REQUIRE(j["classes"].size() == 1);
    CHECK(j["classes"][0]["size"] == 4);
    CHECK(j["classes"][0]["canonical"][0][0] == -7);
    CHECK(j["classes"][0]["canonical"][0][1] == 0);
    CHECK(j["classes"][0]["canonical"][1][0] == -6);
    CHECK(j["classes"][0]["canonical"][1][1] == 1);

    // Node-labeled refs keep their id as a third entry.
    const SumSpec p({twin_top_atlas(), unknot_atlas()});
    const auto pc = classify(p, {1, 0});
    const auto pj = nlohmann::json::parse(classes_json(p, {1, 0}, pc));
    REQUIRE(pj["count"] == 2);
    CHECK(pj["classes"][0]["canonical"][0].size() == 3);
    CHECK(pj["classes"][0]["canonical"][0][2] == "X");
}

TEST_CASE("range_json mirrors the grid") {
    const SumSpec s = trefoil_pair();
    const MountainRange range = mountain_range(s, {-12, -11, -2, 2});
    const auto j = nlohmann::json::parse(range_json(range));
    CHECK(j["window"]["tb_min"] == -12);
    CHECK(j["window"]["tb_max"] == -11);
    CHECK(j["window"]["r_min"] == -2);
    CHECK(j["window"]["r_max"] == 2);
    REQUIRE(j["rows"].size() == 2);
    CHECK(j["rows"][0] == nlohmann::json({1, 0, 1, 0, 1}));
    CHECK(j["rows"][1] == nlohmann::json({0, 1, 0, 1, 0}));
}

TEST_CASE("incomplete atlas data surfaces through classification") {
    const SumSpec s({twin_top_gap_atlas(), unknot_atlas()});
    CHECK(count(s, {1, 0}) == 2);
    CHECK_THROWS_AS(classify(s, {0, -1}), AtlasIncompleteError);
}
