#ifndef FLOWREROUTE_GENERATORS_HPP
#define FLOWREROUTE_GENERATORS_HPP

#include <random>
#include <set>
#include <sstream>

#include <json.hpp>

#include "flowreroute/io.hpp"
#include "flowreroute/model.hpp"

// Instance factories: the two-flow 3-SAT reduction gadget with its
// constructive witness schedule, the DAG k-flow 3-SAT gadget with
// assignment decoding, and a seeded random DAG generator.

namespace flowreroute {

struct CnfFormula {
    int vars = 0;
    // each clause: 1..3 literals as signed variable indices, no variable
    // twice, sorted by variable index
    std::vector<std::vector<int>> clauses;
};

// index 1..vars; [0] unused
using Assignment = std::vector<uint8_t>;

inline bool satisfies(const CnfFormula& f, const Assignment& a) {
    for (const auto& clause : f.clauses) {
        bool sat = false;
        for (int lit : clause) {
            int v = lit > 0 ? lit : -lit;
            sat |= (lit > 0) == (a[static_cast<size_t>(v)] != 0);
        }
        if (!sat) return false;
    }
    return true;
}

inline CnfFormula make_formula(int vars, std::vector<std::vector<int>> clauses) {
    CnfFormula f;
    f.vars = vars;
    for (auto& c : clauses) {
        std::sort(c.begin(), c.end(), [](int a, int b) { return std::abs(a) < std::abs(b); });
        f.clauses.push_back(c);
    }
    return f;
}

inline CnfFormula parse_dimacs(const std::string& text) {
    std::istringstream in(text);
    std::string tok;
    CnfFormula f;
    int declared_clauses = -1;
    bool have_header = false;
    std::vector<int> current;
    auto finish_clause = [&]() {
        if (current.empty()) throw ParseError("dimacs: empty clause");
        std::sort(current.begin(), current.end(),
                  [](int a, int b) { return std::abs(a) < std::abs(b); });
        current.erase(std::unique(current.begin(), current.end()), current.end());
        for (size_t i = 0; i + 1 < current.size(); ++i)
            if (std::abs(current[i]) == std::abs(current[i + 1]))
                throw ParseError("dimacs: clause contains a variable and its negation");
        if (current.size() > 3)
            throw ParseError("dimacs: clause has more than 3 literals; only 3-SAT is accepted");
        f.clauses.push_back(current);
        current.clear();
    };
    while (in >> tok) {
        if (tok == "c") {
            std::string rest;
            std::getline(in, rest);
            continue;
        }
        if (tok == "p") {
            std::string fmt;
            if (!(in >> fmt >> f.vars >> declared_clauses) || fmt != "cnf" || f.vars < 1)
                throw ParseError("dimacs: malformed problem line");
            have_header = true;
            continue;
        }
        if (tok == "%") break;
        int lit;
        try {
            lit = std::stoi(tok);
        } catch (const std::exception&) {
            throw ParseError("dimacs: unexpected token '" + tok + "'");
        }
        if (!have_header) throw ParseError("dimacs: literal before problem line");
        if (lit == 0) {
            finish_clause();
        } else {
            if (std::abs(lit) > f.vars)
                throw ParseError("dimacs: literal " + tok + " out of range");
            current.push_back(lit);
        }
    }
    if (!have_header) throw ParseError("dimacs: missing problem line");
    if (!current.empty()) throw ParseError("dimacs: unterminated clause");
    if (f.clauses.empty()) throw ParseError("dimacs: formula has no clauses");
    return f;
}

struct GadgetMeta {
    std::string kind;  // "sat2" | "satdag"
    CnfFormula formula;
    nlohmann::json vertices;  // audit map of gadget vertex names

    // pair ids (external, 1-based)
    std::vector<int> selector_pairs;  // satdag, by variable
    std::vector<int> clause_pairs;    // satdag, by clause
    std::vector<int> lit_pos_pairs;   // satdag, by variable
    std::vector<int> lit_neg_pairs;   // satdag, by variable
    int validator_pair = -1;
    std::string switch_vertex;  // vertex whose update reroutes a pair (satdag: "s")
};

inline std::string serialize_meta(const GadgetMeta& m) {
    nlohmann::json j;
    j["version"] = 1;
    j["kind"] = m.kind;
    j["formula"] = {{"vars", m.formula.vars}, {"clauses", m.formula.clauses}};
    j["vertices"] = m.vertices;
    if (m.kind == "satdag") {
        j["pairs"] = {{"selector", m.selector_pairs},
                      {"clause", m.clause_pairs},
                      {"validator", m.validator_pair},
                      {"lit_pos", m.lit_pos_pairs},
                      {"lit_neg", m.lit_neg_pairs}};
        j["switch_vertex"] = m.switch_vertex;
    }
    return j.dump(2) + "\n";
}

inline GadgetMeta parse_meta(const std::string& text) {
    nlohmann::json j = detail::parse_json(text);
    GadgetMeta m;
    m.kind = j.at("kind").get<std::string>();
    m.formula.vars = j.at("formula").at("vars").get<int>();
    m.formula.clauses = j.at("formula").at("clauses").get<std::vector<std::vector<int>>>();
    m.vertices = j.value("vertices", nlohmann::json::object());
    if (m.kind == "satdag") {
        m.selector_pairs = j.at("pairs").at("selector").get<std::vector<int>>();
        m.clause_pairs = j.at("pairs").at("clause").get<std::vector<int>>();
        m.validator_pair = j.at("pairs").at("validator").get<int>();
        m.lit_pos_pairs = j.at("pairs").at("lit_pos").get<std::vector<int>>();
        m.lit_neg_pairs = j.at("pairs").at("lit_neg").get<std::vector<int>>();
        m.switch_vertex = j.at("switch_vertex").get<std::string>();
    }
    return m;
}

namespace detail {

// occurrence lists per variable: (0-based clause, 1-based position)
struct Occurrences {
    std::vector<std::vector<std::pair<int, int>>> pos, neg;
};

inline Occurrences occurrences(const CnfFormula& f) {
    Occurrences occ;
    occ.pos.resize(static_cast<size_t>(f.vars) + 1);
    occ.neg.resize(static_cast<size_t>(f.vars) + 1);
    for (size_t c = 0; c < f.clauses.size(); ++c) {
        for (size_t h = 0; h < f.clauses[c].size(); ++h) {
            int lit = f.clauses[c][h];
            auto& lists = lit > 0 ? occ.pos : occ.neg;
            lists[static_cast<size_t>(std::abs(lit))].push_back(
                {static_cast<int>(c), static_cast<int>(h) + 1});
        }
    }
    return occ;
}

inline std::string u_name(int clause1, int j) {
    return "u" + std::to_string(clause1) + "_" + std::to_string(j);
}
inline std::string v_name(int var1, int k) {
    return "v" + std::to_string(var1) + "_" + std::to_string(k);
}

}  // namespace detail

struct GeneratedInstance {
    UpdateFlowNetwork net;
    GadgetMeta meta;
};

// Two update flow pairs, all capacities 1. Pair B (id 1) carries the
// variable gadgets, pair R (id 2) the clause gadgets; the w1/w2-z1/z2
// blocking structure forces B's variable choices to satisfy every clause
// before R can leave its old route. Clause gadgets keep eight vertices for
// every clause; clauses with fewer than three literals route the update
// flow back onto the old chain after the last literal-backed skip edge, so
// no unblocked skip exists.
inline GeneratedInstance gen_2flow_sat(const CnfFormula& f) {
    using detail::u_name;
    using detail::v_name;
    if (f.vars < 1 || f.clauses.empty())
        throw std::invalid_argument("gen_2flow_sat: need at least one variable and one clause");
    detail::Occurrences occ = detail::occurrences(f);
    int n = f.vars, m = static_cast<int>(f.clauses.size());

    std::vector<std::string> b_old = {"s", "w1", "w2"};
    for (int j = 1; j <= n; ++j) {
        b_old.push_back(v_name(j, 1));
        for (auto [c, h] : occ.pos[static_cast<size_t>(j)]) {
            b_old.push_back(u_name(c + 1, h));
            b_old.push_back(u_name(c + 1, h + 5));
        }
        b_old.push_back(v_name(j, 2));
        b_old.push_back(v_name(j, 3));
        for (auto [c, h] : occ.neg[static_cast<size_t>(j)]) {
            b_old.push_back(u_name(c + 1, h));
            b_old.push_back(u_name(c + 1, h + 5));
        }
        b_old.push_back(v_name(j, 4));
    }
    b_old.push_back("t");

    std::vector<std::string> b_new = {"s", "w1"};
    for (int i = 1; i <= m; ++i) {
        b_new.push_back(u_name(i, 4));
        b_new.push_back(u_name(i, 5));
    }
    b_new.push_back("w2");
    for (int j = 1; j <= n; ++j) {
        b_new.push_back(v_name(j, 1));
        b_new.push_back(v_name(j, 3));
        b_new.push_back(v_name(j, 2));
        b_new.push_back(v_name(j, 4));
    }
    b_new.push_back("t");

    std::vector<std::string> r_old = {"s", "z1"};
    for (int j = 1; j <= n; ++j) {
        r_old.push_back(v_name(j, 3));
        r_old.push_back(v_name(j, 2));
    }
    r_old.push_back("z2");
    for (int i = 1; i <= m; ++i)
        for (int j = 1; j <= 8; ++j) r_old.push_back(u_name(i, j));
    r_old.push_back("t");

    std::vector<std::string> r_new = {"s", "z1", "w1", "w2", "z2"};
    for (int i = 1; i <= m; ++i) {
        int width = static_cast<int>(f.clauses[static_cast<size_t>(i - 1)].size());
        for (int h = 1; h <= width; ++h) {
            r_new.push_back(u_name(i, h));
            r_new.push_back(u_name(i, h + 5));
        }
        // rejoin the old chain when the last skip lands before u8
        for (int j = width + 6; j <= 8; ++j) r_new.push_back(u_name(i, j));
    }
    r_new.push_back("t");

    NetworkBuilder b;
    b.set_source("s");
    b.set_terminal("t");
    std::set<std::pair<std::string, std::string>> edge_set;
    for (const auto* path : {&b_old, &b_new, &r_old, &r_new})
        for (size_t i = 0; i + 1 < path->size(); ++i)
            edge_set.insert({(*path)[i], (*path)[i + 1]});
    for (const auto& [from, to] : edge_set) b.add_edge(from, to, 1);
    b.add_pair(1, 1, b_old, b_new);
    b.add_pair(2, 1, r_old, r_new);

    GeneratedInstance out;
    out.net = b.build();
    out.meta.kind = "sat2";
    out.meta.formula = f;
    nlohmann::json clause_v = nlohmann::json::array(), var_v = nlohmann::json::array();
    for (int i = 1; i <= m; ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (int j = 1; j <= 8; ++j) row.push_back(u_name(i, j));
        clause_v.push_back(row);
    }
    for (int j = 1; j <= n; ++j) {
        nlohmann::json row = nlohmann::json::array();
        for (int k = 1; k <= 4; ++k) row.push_back(v_name(j, k));
        var_v.push_back(row);
    }
    out.meta.vertices = {{"clause_u", clause_v},
                         {"var_v", var_v},
                         {"w", {"w1", "w2"}},
                         {"z", {"z1", "z2"}},
                         {"pair_B", 1},
                         {"pair_R", 2}};
    return out;
}

// Emits the constructive update sequence certifying that a satisfying
// assignment yields a feasible reroute of the two-flow gadget. Singleton
// rounds; the result is verified before being returned.
inline Schedule schedule_2flow(const CnfFormula& f, const Assignment& a) {
    using detail::u_name;
    using detail::v_name;
    if (!satisfies(f, a))
        throw std::invalid_argument("schedule_2flow: assignment does not satisfy the formula");
    GeneratedInstance gen = gen_2flow_sat(f);
    const UpdateFlowNetwork& net = gen.net;
    detail::Occurrences occ = detail::occurrences(f);
    int n = f.vars, m = static_cast<int>(f.clauses.size());
    const int B = 0, R = 1;

    Schedule sched;
    auto emit = [&](const std::string& vertex, int pair) {
        Update u{net.vertex(vertex), pair};
        assert(u.vertex >= 0);
        if (is_effective(net, u)) sched.rounds.push_back({u});
    };

    // one satisfied literal position per clause
    std::vector<int> skip_pos(static_cast<size_t>(m), 0);
    for (int i = 0; i < m; ++i) {
        const auto& clause = f.clauses[static_cast<size_t>(i)];
        for (size_t h = 0; h < clause.size(); ++h) {
            int lit = clause[h];
            if ((lit > 0) == (a[static_cast<size_t>(std::abs(lit))] != 0)) {
                skip_pos[static_cast<size_t>(i)] = static_cast<int>(h) + 1;
                break;
            }
        }
        assert(skip_pos[static_cast<size_t>(i)] > 0);
    }

    // 1. pick a side per variable
    for (int j = 1; j <= n; ++j) emit(v_name(j, a[static_cast<size_t>(j)] ? 1 : 2), B);
    // 2. open one skip edge per clause
    for (int i = 1; i <= m; ++i) emit(u_name(i, skip_pos[static_cast<size_t>(i - 1)]), R);
    // 3. activate B's detour between w1 and w2
    for (int i = 1; i <= m; ++i) {
        emit(u_name(i, 4), B);
        emit(u_name(i, 5), B);
    }
    // 4.-6. swap the blocking structure
    emit("w1", B);
    emit("w1", R);
    emit("w2", R);
    emit("z1", R);
    // 7. finish the chosen side's gadget chain
    for (int j = 1; j <= n; ++j) {
        const auto& chain = a[static_cast<size_t>(j)] ? occ.pos[static_cast<size_t>(j)]
                                                      : occ.neg[static_cast<size_t>(j)];
        emit(v_name(j, a[static_cast<size_t>(j)] ? 2 : 3), B);
        for (auto [c, h] : chain) {
            emit(u_name(c + 1, h), B);
            emit(u_name(c + 1, h + 5), B);
        }
    }
    // 8. remaining updates of B: reroute the other side
    for (int j = 1; j <= n; ++j) {
        const auto& chain = a[static_cast<size_t>(j)] ? occ.neg[static_cast<size_t>(j)]
                                                      : occ.pos[static_cast<size_t>(j)];
        emit(v_name(j, a[static_cast<size_t>(j)] ? 3 : 1), B);
        for (auto [c, h] : chain) {
            emit(u_name(c + 1, h), B);
            emit(u_name(c + 1, h + 5), B);
        }
    }
    // 9. retire R's blocking chain and open the remaining clause entries
    for (int j = 1; j <= n; ++j) {
        emit(v_name(j, 3), R);
        emit(v_name(j, 2), R);
    }
    for (int i = 1; i <= m; ++i)
        for (int h = 1; h <= 3; ++h)
            if (h != skip_pos[static_cast<size_t>(i - 1)]) emit(u_name(i, h), R);
    // 10. remaining updates of R inside the clause gadgets
    for (int i = 1; i <= m; ++i)
        for (int h = 4; h <= 7; ++h) emit(u_name(i, h), R);

    std::vector<Violation> bad = verify_schedule(net, sched);
    if (!bad.empty())
        throw std::logic_error("schedule_2flow: constructed schedule failed verification: " +
                               violation_to_string(net, bad.front()));
    return sched;
}

// DAG hardness gadget: n selector pairs, m clause pairs, one validator pair
// of demand m, and 2n literal pairs. Capacities force, per variable, exactly
// one literal pair to reroute before the selector; a clause pair can reroute
// only once one of its literals has, and the validator only after all
// clauses, the selectors only after the validator.
//
// Lengths are edge counts. The clause-update edges carry capacity equal to
// the clause width so that one literal must vacate them first (the paper's
// value 3 for three-literal clauses). Capacities of reused edges keep their
// first assignment and are raised afterwards to the larger of the two
// family loads where required.
inline GeneratedInstance gen_dag_sat(const CnfFormula& f) {
    if (f.vars < 1 || f.clauses.empty())
        throw std::invalid_argument("gen_dag_sat: need at least one variable and one clause");
    detail::Occurrences occ = detail::occurrences(f);
    int n = f.vars, m = static_cast<int>(f.clauses.size());

    std::vector<std::pair<std::vector<std::string>, std::vector<std::string>>> paths;  // per pair
    std::vector<int64_t> demands;
    std::map<std::pair<std::string, std::string>, int64_t> caps;
    auto edge = [&](const std::string& a, const std::string& b, int64_t cap) {
        caps.emplace(std::make_pair(a, b), cap);  // first assignment wins
    };
    auto path_edges = [&](const std::vector<std::string>& p, int64_t cap) {
        for (size_t i = 0; i + 1 < p.size(); ++i) edge(p[i], p[i + 1], cap);
    };
    auto so = [&](int i, int p) { return "So" + std::to_string(i) + "_" + std::to_string(p); };
    auto su = [&](int i, int p) { return "Su" + std::to_string(i) + "_" + std::to_string(p); };
    auto co = [&](int i, int p) {
        if (p == 3) return std::string("Cx3");
        if (p == 4) return std::string("Cx4");
        return "Co" + std::to_string(i) + "_" + std::to_string(p);
    };
    auto cu = [&](int i, int p) { return "Cu" + std::to_string(i) + "_" + std::to_string(p); };

    // selectors
    for (int i = 1; i <= n; ++i) {
        std::vector<std::string> old_p = {"s", so(i, 2), so(i, 3), "t"};
        std::vector<std::string> new_p = {"s", su(i, 2), su(i, 3), su(i, 4), su(i, 5), "t"};
        edge("s", so(i, 2), 1);
        edge(so(i, 2), so(i, 3), 2);
        edge(so(i, 3), "t", 1);
        edge("s", su(i, 2), 1);
        edge(su(i, 2), su(i, 3), 2);
        edge(su(i, 3), su(i, 4), 1);
        edge(su(i, 4), su(i, 5), m);
        edge(su(i, 5), "t", 1);
        paths.push_back({old_p, new_p});
        demands.push_back(1);
    }
    // clauses
    for (int i = 1; i <= m; ++i) {
        int64_t width = static_cast<int64_t>(f.clauses[static_cast<size_t>(i - 1)].size());
        std::vector<std::string> old_p = {"s", co(i, 2), "Cx3", "Cx4", co(i, 5), "t"};
        edge("s", co(i, 2), 1);
        edge(co(i, 2), "Cx3", 1);
        edge("Cx3", "Cx4", m);
        edge("Cx4", co(i, 5), 1);
        edge(co(i, 5), "t", 1);
        std::vector<std::string> new_p = {"s", cu(i, 2), cu(i, 3), "t"};
        path_edges(new_p, width);
        paths.push_back({old_p, new_p});
        demands.push_back(1);
    }
    // validator
    {
        std::vector<std::string> old_p = {"s"};
        for (int i = 1; i <= n; ++i) {
            old_p.push_back(su(i, 4));
            old_p.push_back(su(i, 5));
        }
        old_p.push_back("t");
        path_edges(old_p, m);
        std::vector<std::string> new_p = {"s", "Cx3", "Cx4", "t"};
        path_edges(new_p, m);
        paths.push_back({old_p, new_p});
        demands.push_back(m);
    }
    // literal pairs, positive then negative per variable
    for (int side = 0; side < 2; ++side) {
        for (int i = 1; i <= n; ++i) {
            const auto& hits = side == 0 ? occ.pos[static_cast<size_t>(i)] : occ.neg[static_cast<size_t>(i)];
            std::string tag = (side == 0 ? "Lp" : "Ln") + std::to_string(i);
            std::vector<std::string> old_p = {"s", tag + "_a"};
            for (auto [c, h] : hits) {
                (void)h;
                old_p.push_back(cu(c + 1, 2));
                old_p.push_back(cu(c + 1, 3));
            }
            old_p.push_back(su(i, 2));
            old_p.push_back(su(i, 3));
            old_p.push_back(tag + "_b");
            old_p.push_back("t");
            path_edges(old_p, 3);
            std::vector<std::string> new_p = {"s", so(i, 2), so(i, 3), tag + "_c", tag + "_d", "t"};
            path_edges(new_p, 3);
            paths.push_back({old_p, new_p});
            demands.push_back(1);
        }
    }

    // raise reused-edge capacities to the family loads where needed
    std::map<std::pair<std::string, std::string>, int64_t> old_load, new_load;
    for (size_t p = 0; p < paths.size(); ++p) {
        for (size_t i = 0; i + 1 < paths[p].first.size(); ++i)
            old_load[{paths[p].first[i], paths[p].first[i + 1]}] += demands[p];
        for (size_t i = 0; i + 1 < paths[p].second.size(); ++i)
            new_load[{paths[p].second[i], paths[p].second[i + 1]}] += demands[p];
    }
    for (auto& [key, cap] : caps)
        cap = std::max({cap, old_load[key], new_load[key]});

    NetworkBuilder b;
    b.set_source("s");
    b.set_terminal("t");
    for (const auto& [key, cap] : caps) b.add_edge(key.first, key.second, cap);

    GeneratedInstance out;
    out.meta.kind = "satdag";
    out.meta.formula = f;
    out.meta.switch_vertex = "s";
    out.meta.validator_pair = n + m + 1;
    int id = 0;
    for (size_t p = 0; p < paths.size(); ++p) {
        b.add_pair(++id, demands[p], paths[p].first, paths[p].second);
        if (id <= n) out.meta.selector_pairs.push_back(id);
        else if (id <= n + m) out.meta.clause_pairs.push_back(id);
        else if (id == n + m + 1) ;  // validator
        else if (id <= 2 * n + m + 1) out.meta.lit_pos_pairs.push_back(id);
        else out.meta.lit_neg_pairs.push_back(id);
    }
    out.net = b.build();
    out.meta.vertices = {{"shared_clause_old", {"Cx3", "Cx4"}}};
    return out;
}

// Round index of (vertex, pair-id) in a schedule, or -1.
inline int round_of(const UpdateFlowNetwork& net, const Schedule& sched, const std::string& vertex,
                    int pair_id) {
    VertexId v = net.vertex(vertex);
    for (size_t r = 0; r < sched.rounds.size(); ++r)
        for (const Update& u : sched.rounds[r])
            if (u.vertex == v && net.pairs[static_cast<size_t>(u.pair)].id == pair_id)
                return static_cast<int>(r);
    return -1;
}

struct MalformedSchedule : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Reads the variable assignment off a feasible schedule for a gen_dag_sat
// instance: X_i is true iff the positive literal pair reroutes (its update
// at the divergence vertex s) before the selector pair does. Exactly one of
// the two literal pairs precedes the selector in any feasible schedule.
inline Assignment decode_assignment(const UpdateFlowNetwork& net, const GadgetMeta& meta,
                                    const Schedule& sched) {
    if (meta.kind != "satdag") throw std::invalid_argument("decode_assignment: wrong meta kind");
    int n = meta.formula.vars;
    Assignment a(static_cast<size_t>(n) + 1, 0);
    for (int i = 1; i <= n; ++i) {
        int sel = round_of(net, sched, meta.switch_vertex, meta.selector_pairs[static_cast<size_t>(i - 1)]);
        int pos = round_of(net, sched, meta.switch_vertex, meta.lit_pos_pairs[static_cast<size_t>(i - 1)]);
        int neg = round_of(net, sched, meta.switch_vertex, meta.lit_neg_pairs[static_cast<size_t>(i - 1)]);
        if (sel < 0 || pos < 0 || neg < 0)
            throw MalformedSchedule("decode_assignment: missing reroute update");
        bool pos_first = pos < sel, neg_first = neg < sel;
        if (pos_first == neg_first)
            throw MalformedSchedule("decode_assignment: variable " + std::to_string(i) +
                                    ": expected exactly one literal pair before the selector");
        a[static_cast<size_t>(i)] = pos_first ? 1 : 0;
    }
    if (!satisfies(meta.formula, a))
        throw MalformedSchedule("decode_assignment: decoded assignment does not satisfy the formula");
    return a;
}

struct RandomParams {
    uint64_t seed = 1;
    int vertices = 10;
    int pairs = 2;
    int64_t cap_min = 1;
    int64_t cap_max = 3;
    int64_t demand_max = 2;
};

// Seed-deterministic layered DAG: every pair routes two increasing vertex
// sequences from s to t, so the union is acyclic by construction. Sampling
// uses mt19937_64 with modulo reduction; capacities are drawn uniformly and
// then raised to the family loads, which keeps the instance valid while
// leaving reroute feasibility open.
inline UpdateFlowNetwork gen_random_dag(const RandomParams& params) {
    if (params.vertices < 2 || params.pairs < 1 || params.cap_min < 1 ||
        params.cap_max < params.cap_min || params.demand_max < 1)
        throw std::invalid_argument("gen_random_dag: bad parameters");
    std::mt19937_64 rng(params.seed);
    auto rnd = [&](int64_t bound) { return static_cast<int64_t>(rng() % static_cast<uint64_t>(bound)); };

    int width = 2;
    for (int v = params.vertices - 1; v >= 100; v /= 10) ++width;
    auto vname = [&](int i) {
        std::string digits = std::to_string(i);
        return "v" + std::string(static_cast<size_t>(width) - digits.size(), '0') + digits;
    };
    int n = params.vertices;

    auto sample_path = [&]() {
        std::vector<int> middle;
        for (int v = 1; v + 1 < n; ++v) middle.push_back(v);
        int max_len = std::min<int>(static_cast<int>(middle.size()), 6);
        int len = max_len == 0 ? 0 : static_cast<int>(rnd(max_len + 1));
        for (int i = 0; i < len; ++i)
            std::swap(middle[static_cast<size_t>(i)],
                      middle[static_cast<size_t>(i + rnd(static_cast<int64_t>(middle.size()) - i))]);
        middle.resize(static_cast<size_t>(len));
        std::sort(middle.begin(), middle.end());
        std::vector<std::string> path = {vname(0)};
        for (int v : middle) path.push_back(vname(v));
        path.push_back(vname(n - 1));
        return path;
    };

    std::vector<std::pair<std::vector<std::string>, std::vector<std::string>>> pair_paths;
    for (int p = 0; p < params.pairs; ++p) {
        auto old_p = sample_path();
        auto new_p = sample_path();
        pair_paths.push_back({old_p, new_p});
    }
    std::vector<int64_t> demands;
    for (int p = 0; p < params.pairs; ++p) demands.push_back(1 + rnd(params.demand_max));

    std::map<std::pair<std::string, std::string>, int64_t> caps;
    for (const auto& [old_p, new_p] : pair_paths) {
        for (const auto* path : {&old_p, &new_p})
            for (size_t i = 0; i + 1 < path->size(); ++i) {
                auto key = std::make_pair((*path)[i], (*path)[i + 1]);
                if (!caps.count(key)) caps[key] = params.cap_min + rnd(params.cap_max - params.cap_min + 1);
            }
    }
    std::map<std::pair<std::string, std::string>, int64_t> old_load, new_load;
    for (size_t p = 0; p < pair_paths.size(); ++p) {
        for (size_t i = 0; i + 1 < pair_paths[p].first.size(); ++i)
            old_load[{pair_paths[p].first[i], pair_paths[p].first[i + 1]}] += demands[p];
        for (size_t i = 0; i + 1 < pair_paths[p].second.size(); ++i)
            new_load[{pair_paths[p].second[i], pair_paths[p].second[i + 1]}] += demands[p];
    }
    for (auto& [key, cap] : caps) cap = std::max({cap, old_load[key], new_load[key]});

    NetworkBuilder b;
    b.set_source(vname(0));
    b.set_terminal(vname(n - 1));
    for (const auto& [key, cap] : caps) b.add_edge(key.first, key.second, cap);
    for (size_t p = 0; p < pair_paths.size(); ++p)
        b.add_pair(static_cast<int>(p) + 1, demands[p], pair_paths[p].first, pair_paths[p].second);
    return b.build();
}

}  // namespace flowreroute

#endif
