#include "brancov/gallery.hpp"

namespace brancov {

namespace {

Json complex_json(std::vector<std::string> vertices, std::vector<std::vector<std::string>> edges,
                  std::map<std::string, std::string> lengths = {}) {
    Json j;
    j["vertices"] = vertices;
    j["simplices"] = edges;
    if (!lengths.empty()) j["lengths"] = lengths;
    return j;
}

Json map_json(Json source, Json target, std::map<std::string, std::string> vm) {
    Json j;
    j["source"] = std::move(source);
    j["target"] = std::move(target);
    j["vertex_map"] = vm;
    return j;
}

std::vector<Fixture> build_gallery() {
    std::vector<Fixture> out;

    Json circle3 = complex_json({"v0", "v1", "v2"}, {{"v0", "v1"}, {"v1", "v2"}, {"v0", "v2"}},
                                {{"v0-v1", "1/3"}, {"v1-v2", "1/3"}, {"v0-v2", "1/3"}});

    // identity on a circle
    {
        Fixture f;
        f.name = "identity";
        f.description = "identity map of a circle of length 1, triangulated with 3 edges";
        f.map = map_json(circle3, circle3, {{"v0", "v0"}, {"v1", "v1"}, {"v2", "v2"}});
        f.expected = Json{{"verdict", "Covering"},
                          {"n_fold", 1},
                          {"k_min", "1"},
                          {"index", 1}};
        out.push_back(std::move(f));
    }

    // 2-fold cover of the circle
    {
        Json hexagon = complex_json(
            {"w0", "w1", "w2", "w3", "w4", "w5"},
            {{"w0", "w1"}, {"w1", "w2"}, {"w2", "w3"}, {"w3", "w4"}, {"w4", "w5"}, {"w0", "w5"}},
            {{"w0-w1", "1/3"}, {"w1-w2", "1/3"}, {"w2-w3", "1/3"}, {"w3-w4", "1/3"},
             {"w4-w5", "1/3"}, {"w0-w5", "1/3"}});
        Fixture f;
        f.name = "double_cover_circle";
        f.description = "6-edge circle wrapping a 3-edge circle twice";
        f.map = map_json(hexagon, circle3,
                         {{"w0", "v0"}, {"w1", "v1"}, {"w2", "v2"},
                          {"w3", "v0"}, {"w4", "v1"}, {"w5", "v2"}});
        f.expected = Json{{"verdict", "Covering"},
                          {"n_fold", 2},
                          {"k_min", "2"},
                          {"index", 2}};
        out.push_back(std::move(f));
    }

    // tripod: an interval branching into two halves at its midpoint value
    Json tripod_target = complex_json({"x0", "x1", "x2"}, {{"x0", "x1"}, {"x1", "x2"}},
                                      {{"x0-x1", "1/2"}, {"x1-x2", "1/2"}});
    {
        Json tripod = complex_json({"a0", "a1", "a2", "a3"},
                                   {{"a0", "a1"}, {"a1", "a2"}, {"a1", "a3"}},
                                   {{"a0-a1", "1/2"}, {"a1-a2", "1/2"}, {"a1-a3", "1/2"}});
        Fixture f;
        f.name = "figure2";
        f.description =
            "tripod onto an interval: one sheet over [0,1/2], two sheets over (1/2,1]";
        f.map = map_json(tripod, tripod_target,
                         {{"a0", "x0"}, {"a1", "x1"}, {"a2", "x2"}, {"a3", "x2"}});
        f.expected = Json{
            {"verdict", "BranchedCovering"},
            {"max_fiber", 2},
            {"k_min", "2"},
            {"strata", Json{{"1", Json::array({"x0", "x1", "x0-x1"})},
                            {"2", Json::array({"x2", "x1-x2"})}}},
            {"weight",
             Json{{"vertices", Json{{"a0", "1"}, {"a1", "1"}, {"a2", "1/2"}, {"a3", "1/2"}}},
                  {"edges", Json{{"a0-a1", "1"}, {"a1-a2", "1/2"}, {"a1-a3", "1/2"}}}}},
            {"index_values", Json{{"1.1.1", "1"}, {"2.1.1", "2"}, {"2.1.2", "2"}}},
            {"piece_count", 3}};
        out.push_back(std::move(f));
    }

    // tripod plus one extra closed interval ending over the branch value
    {
        Json y = complex_json(
            {"a0", "a1", "a2", "a3", "b0", "b1"},
            {{"a0", "a1"}, {"a1", "a2"}, {"a1", "a3"}, {"b0", "b1"}},
            {{"a0-a1", "1/2"}, {"a1-a2", "1/2"}, {"a1-a3", "1/2"}, {"b0-b1", "1/2"}});
        Fixture f;
        f.name = "remark210";
        f.description = "tripod plus a second interval over [0,1/2] whose endpoint sits over the "
                        "branch value without joining the tripod";
        f.map = map_json(y, tripod_target,
                         {{"a0", "x0"}, {"a1", "x1"}, {"a2", "x2"}, {"a3", "x2"},
                          {"b0", "x0"}, {"b1", "x1"}});
        f.expected = Json{{"verdict", "NotOpen"},
                          {"witness", Json{{"source_simplex", "b1"},
                                           {"missed_target_coface", "x1-x2"}}}};
        out.push_back(std::move(f));
    }

    // interval wrapped once onto the circle, endpoints identified downstairs
    {
        Json path = complex_json({"a0", "a1", "a2", "a3"},
                                 {{"a0", "a1"}, {"a1", "a2"}, {"a2", "a3"}},
                                 {{"a0-a1", "1/3"}, {"a1-a2", "1/3"}, {"a2-a3", "1/3"}});
        Fixture f;
        f.name = "interval_onto_circle";
        f.description = "interval wrapped once onto a circle; the two endpoints share an image";
        f.map = map_json(path, circle3,
                         {{"a0", "v0"}, {"a1", "v1"}, {"a2", "v2"}, {"a3", "v0"}});
        f.expected = Json{{"verdict", "NotOpen"},
                          {"witness", Json{{"source_simplex", "a0"},
                                           {"missed_target_coface", "v0-v2"}}}};
        out.push_back(std::move(f));
    }

    // two disjoint circles onto a wedge of two circles
    {
        Json wedge = complex_json(
            {"c", "u1", "u2", "w1", "w2"},
            {{"c", "u1"}, {"u1", "u2"}, {"c", "u2"}, {"c", "w1"}, {"w1", "w2"}, {"c", "w2"}},
            {{"c-u1", "1/3"}, {"u1-u2", "1/3"}, {"c-u2", "1/3"},
             {"c-w1", "1/3"}, {"w1-w2", "1/3"}, {"c-w2", "1/3"}});
        Json two_circles = complex_json(
            {"a0", "a1", "a2", "b0", "b1", "b2"},
            {{"a0", "a1"}, {"a1", "a2"}, {"a0", "a2"}, {"b0", "b1"}, {"b1", "b2"}, {"b0", "b2"}},
            {{"a0-a1", "1/3"}, {"a1-a2", "1/3"}, {"a0-a2", "1/3"},
             {"b0-b1", "1/3"}, {"b1-b2", "1/3"}, {"b0-b2", "1/3"}});
        Fixture f;
        f.name = "eight_from_two_circles";
        f.description = "two disjoint circles mapped onto a wedge of two circles; the wedge point "
                        "has two preimages";
        f.map = map_json(two_circles, wedge,
                         {{"a0", "c"}, {"a1", "u1"}, {"a2", "u2"},
                          {"b0", "c"}, {"b1", "w1"}, {"b2", "w2"}});
        f.expected = Json{{"verdict", "NotOpen"},
                          {"witness", Json{{"source_simplex", "a0"},
                                           {"missed_target_coface", "c-w1"}}}};
        out.push_back(std::move(f));
    }

    // two circles joined by an interval, over one circle
    {
        Json x = complex_json({"P", "Q", "R"}, {{"P", "Q"}, {"Q", "R"}, {"P", "R"}},
                              {{"P-Q", "1/4"}, {"Q-R", "3/8"}, {"P-R", "3/8"}});
        Json y = complex_json(
            {"PL", "QL", "RL", "PU", "QU", "RU"},
            {{"PL", "QL"}, {"QL", "RL"}, {"PL", "RL"},
             {"PU", "QU"}, {"QU", "RU"}, {"PU", "RU"},
             {"PL", "QU"}},
            {{"PL-QL", "1/4"}, {"QL-RL", "3/8"}, {"PL-RL", "3/8"},
             {"PU-QU", "1/4"}, {"QU-RU", "3/8"}, {"PU-RU", "3/8"},
             {"PL-QU", "1/4"}});
        Fixture f;
        f.name = "two_circles_with_interval";
        f.description = "two copies of a unit circle with an interval joining the 0-point of the "
                        "lower copy to the 1/4-point of the upper copy, over one circle";
        f.map = map_json(y, x,
                         {{"PL", "P"}, {"QL", "Q"}, {"RL", "R"},
                          {"PU", "P"}, {"QU", "Q"}, {"RU", "R"}});
        // Explicit reference weight: 1/4 on the interval, linear blends on the
        // two short arcs, 1/2 everywhere else.
        Json ref;
        ref["vertices"] = Json{{"PL", "1/2"}, {"QL", "1/2"}, {"RL", "1/2"},
                               {"PU", "1/2"}, {"QU", "1/2"}, {"RU", "1/2"}};
        ref["edges"] = Json{
            {"PL-QL", Json::array({Json::array({"0", "1/4"}), Json::array({"1", "1/2"})})},
            {"PU-QU", Json::array({Json::array({"0", "1/2"}), Json::array({"1", "1/4"})})},
            {"PL-QU", Json::array({Json::array({"0", "1/4"}), Json::array({"1", "1/4"})})},
            {"QL-RL", Json::array({Json::array({"0", "1/2"}), Json::array({"1", "1/2"})})},
            {"PL-RL", Json::array({Json::array({"0", "1/2"}), Json::array({"1", "1/2"})})},
            {"QU-RU", Json::array({Json::array({"0", "1/2"}), Json::array({"1", "1/2"})})},
            {"PU-RU", Json::array({Json::array({"0", "1/2"}), Json::array({"1", "1/2"})})}};
        f.reference_weight = std::move(ref);
        f.expected = Json{
            {"verdict", "BranchedCovering"},
            {"max_fiber", 3},
            {"k_min", "4"},
            {"strata", Json{{"2", Json::array({"P", "Q", "R", "P-R", "Q-R"})},
                            {"3", Json::array({"P-Q"})}}},
            {"piece_count", 5},
            {"index_values_on_constant_pieces",
             Json{{"interval", "4"}, {"double_fibers", "2"}}}};
        f.note = "the index element is the reciprocal of the weight, as forced by the "
                 "reconstruction identity; a square-root normalization would differ on the "
                 "blended pieces";
        out.push_back(std::move(f));
    }

    return out;
}

}  // namespace

const std::vector<Fixture>& gallery() {
    static const std::vector<Fixture> fixtures = build_gallery();
    return fixtures;
}

const Fixture& fixture(const std::string& name) {
    for (const auto& f : gallery())
        if (f.name == name) return f;
    throw Error(Errc::MalformedInput, "no fixture named '" + name + "'");
}

Json fixture_to_json(const Fixture& f) {
    Json j;
    j["name"] = f.name;
    j["description"] = f.description;
    j["map"] = f.map;
    if (f.reference_weight) j["reference_weight"] = *f.reference_weight;
    j["expected"] = f.expected;
    if (f.note) j["note"] = *f.note;
    return j;
}

}  // namespace brancov
