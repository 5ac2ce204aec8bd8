#ifndef FLOWREROUTE_IO_HPP
#define FLOWREROUTE_IO_HPP

#include <string>
#include <vector>

#include <json.hpp>

#include "flowreroute/model.hpp"

// Instance and schedule file formats. Both are JSON documents with a fixed
// canonical form: sorted keys, edges sorted by (from,to), pairs by id,
// integers only. serialize(parse(x)) is byte-identical for canonical input.

namespace flowreroute {

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace detail {

inline nlohmann::json parse_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
    if (j.is_discarded()) throw ParseError("invalid JSON document");
    return j;
}

inline void require_keys(const nlohmann::json& j, std::initializer_list<const char*> keys,
                         const char* what) {
    for (const char* k : keys)
        if (!j.contains(k)) throw ParseError(std::string(what) + ": missing field '" + k + "'");
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool known = false;
        for (const char* k : keys) known |= it.key() == k;
        if (!known) throw ParseError(std::string(what) + ": unknown field '" + it.key() + "'");
    }
}

inline int64_t get_int(const nlohmann::json& j, const char* key, const char* what) {
    const auto& v = j.at(key);
    if (!v.is_number_integer())
        throw ParseError(std::string(what) + ": field '" + key + "' must be an integer");
    return v.get<int64_t>();
}

inline std::string get_str(const nlohmann::json& j, const char* key, const char* what) {
    const auto& v = j.at(key);
    if (!v.is_string())
        throw ParseError(std::string(what) + ": field '" + key + "' must be a string");
    return v.get<std::string>();
}

}  // namespace detail

inline UpdateFlowNetwork parse_instance(const std::string& text) {
    using nlohmann::json;
    json j = detail::parse_json(text);
    detail::require_keys(j, {"version", "source", "terminal", "edges", "pairs"}, "instance");
    if (detail::get_int(j, "version", "instance") != 1) throw ParseError("instance: unsupported version");

    NetworkBuilder b;
    b.set_source(detail::get_str(j, "source", "instance"));
    b.set_terminal(detail::get_str(j, "terminal", "instance"));

    if (!j.at("edges").is_array()) throw ParseError("instance: 'edges' must be an array");
    size_t edge_no = 0;
    for (const auto& je : j.at("edges")) {
        ++edge_no;
        std::string what = "edge #" + std::to_string(edge_no);
        detail::require_keys(je, {"from", "to", "cap"}, what.c_str());
        int64_t cap = detail::get_int(je, "cap", what.c_str());
        if (cap < 1) throw ParseError(what + ": capacity must be a positive integer");
        b.add_edge(detail::get_str(je, "from", what.c_str()),
                   detail::get_str(je, "to", what.c_str()), cap);
    }

    if (!j.at("pairs").is_array()) throw ParseError("instance: 'pairs' must be an array");
    size_t pair_no = 0;
    for (const auto& jp : j.at("pairs")) {
        ++pair_no;
        std::string what = "pair #" + std::to_string(pair_no);
        detail::require_keys(jp, {"id", "demand", "old", "new"}, what.c_str());
        int64_t demand = detail::get_int(jp, "demand", what.c_str());
        if (demand < 1) throw ParseError(what + ": demand must be a positive integer");
        auto read_path = [&](const char* key) {
            std::vector<std::string> path;
            const auto& arr = jp.at(key);
            if (!arr.is_array()) throw ParseError(what + ": '" + key + "' must be a vertex list");
            for (const auto& v : arr) {
                if (!v.is_string()) throw ParseError(what + ": vertices must be strings");
                path.push_back(v.get<std::string>());
            }
            return path;
        };
        b.add_pair(static_cast<int>(detail::get_int(jp, "id", what.c_str())), demand,
                   read_path("old"), read_path("new"));
    }
    return b.build();
}

inline std::string serialize_instance(const UpdateFlowNetwork& net) {
    using nlohmann::json;
    json j;
    j["version"] = 1;
    j["source"] = net.source >= 0 ? net.name(net.source) : "";
    j["terminal"] = net.terminal >= 0 ? net.name(net.terminal) : "";

    std::vector<std::pair<std::string, std::pair<std::string, int64_t>>> edges;
    for (const Edge& e : net.edges)
        edges.push_back({net.name(e.tail), {net.name(e.head), e.capacity}});
    std::sort(edges.begin(), edges.end());
    j["edges"] = json::array();
    for (const auto& [from, rest] : edges)
        j["edges"].push_back({{"from", from}, {"to", rest.first}, {"cap", rest.second}});

    std::vector<const FlowPair*> pairs;
    for (const auto& p : net.pairs) pairs.push_back(&p);
    std::sort(pairs.begin(), pairs.end(),
              [](const FlowPair* a, const FlowPair* b) { return a->id < b->id; });
    j["pairs"] = json::array();
    for (const FlowPair* p : pairs) {
        json jp;
        jp["id"] = p->id;
        jp["demand"] = p->demand;
        json old_path = json::array(), new_path = json::array();
        for (VertexId v : p->old_path) old_path.push_back(net.name(v));
        for (VertexId v : p->new_path) new_path.push_back(net.name(v));
        jp["old"] = old_path;
        jp["new"] = new_path;
        j["pairs"].push_back(jp);
    }
    return j.dump(2) + "\n";
}

// Schedules reference pairs by their external 1-based id; parsing resolves
// them against the instance.
inline Schedule parse_schedule(const std::string& text, const UpdateFlowNetwork& net) {
    using nlohmann::json;
    json j = detail::parse_json(text);
    detail::require_keys(j, {"version", "rounds"}, "schedule");
    if (detail::get_int(j, "version", "schedule") != 1) throw ParseError("schedule: unsupported version");
    if (!j.at("rounds").is_array()) throw ParseError("schedule: 'rounds' must be an array");

    Schedule s;
    size_t round_no = 0;
    for (const auto& jr : j.at("rounds")) {
        ++round_no;
        if (!jr.is_array())
            throw ParseError("schedule: round #" + std::to_string(round_no) + " must be an array");
        std::vector<Update> round;
        for (const auto& ju : jr) {
            std::string what = "round #" + std::to_string(round_no);
            detail::require_keys(ju, {"vertex", "pair"}, what.c_str());
            std::string vname = detail::get_str(ju, "vertex", what.c_str());
            int64_t pair_id = detail::get_int(ju, "pair", what.c_str());
            VertexId v = net.vertex(vname);
            if (v < 0) throw ParseError(what + ": unknown vertex '" + vname + "'");
            int pair = -1;
            for (size_t i = 0; i < net.pair_count(); ++i)
                if (net.pairs[i].id == pair_id) pair = static_cast<int>(i);
            if (pair < 0) throw ParseError(what + ": unknown pair id " + std::to_string(pair_id));
            round.push_back(Update{v, pair});
        }
        s.rounds.push_back(std::move(round));
    }
    return s;
}

inline std::string serialize_schedule(const UpdateFlowNetwork& net, const Schedule& sched) {
    using nlohmann::json;
    json j;
    j["version"] = 1;
    j["rounds"] = json::array();
    for (const auto& round : sched.rounds) {
        std::vector<Update> sorted(round);
        std::sort(sorted.begin(), sorted.end());
        json jr = json::array();
        for (const Update& u : sorted)
            jr.push_back({{"vertex", net.name(u.vertex)},
                          {"pair", net.pairs[static_cast<size_t>(u.pair)].id}});
        j["rounds"].push_back(jr);
    }
    return j.dump(2) + "\n";
}

}  // namespace flowreroute

#endif
