#pragma once

// JSON and DOT serialization for graphs, words, flats, balls and labeled
// digraphs. Orderings are deterministic so exports are diffable.

#include <json.hpp>

#include <fstream>
#include <sstream>
#include <string>

#include "raag/building.hpp"
#include "raag/extension_graph.hpp"
#include "raag/lattice.hpp"

namespace raag {

using nlohmann::json;

inline json to_json(const SimplicialGraph& g) {
    json j;
    j["vertices"] = g.names();
    json edges = json::array();
    for (int a = 0; a < g.size(); ++a)
        for (int b = a + 1; b < g.size(); ++b)
            if (g.adjacent(a, b)) edges.push_back({g.name(a), g.name(b)});
    j["edges"] = edges;
    return j;
}

inline SimplicialGraph graph_from_json(const json& j) {
    SimplicialGraph g(j.at("vertices").get<std::vector<std::string>>());
    for (auto& e : j.at("edges"))
        g.add_edge(e.at(0).get<std::string>(), e.at(1).get<std::string>());
    return g;
}

inline json to_json(const NormalForm& w) {
    json j = json::array();
    for (auto& s : w.syllables())
        j.push_back({w.graph()->name(s.gen), s.exp});
    return j;
}

inline json names_json(const SimplicialGraph& g, VertexMask m) {
    json j = json::array();
    for_each_vertex(m, [&](VertexId v) { j.push_back(g.name(v)); });
    return j;
}

inline json to_json(const StandardCoset& f) {
    json j;
    j["rep"] = to_json(f.rep);
    j["type"] = names_json(*f.graph(), f.type);
    return j;
}

inline json to_json(const ExtVertex& u) {
    json j;
    j["type"] = u.graph()->name(u.type);
    j["conjugator"] = to_json(u.conj);
    return j;
}

inline json to_json(const ExtBall& b) {
    json j;
    j["base"] = to_json(b.base);
    j["radius"] = b.radius;
    j["conjugator_bound"] = b.conj_bound;
    j["truncated"] = b.truncated;
    json vs = json::array();
    for (int i = 0; i < (int)b.vertices.size(); ++i) {
        json v = to_json(b.vertices[i]);
        v["dist"] = b.dist[i];
        v["expanded"] = (bool)b.expanded[i];
        vs.push_back(v);
    }
    j["vertices"] = vs;
    json es = json::array();
    for (auto& [a, c] : b.edges) es.push_back({a, c});
    j["edges"] = es;
    return j;
}

inline json to_json(const BuildingBall& b) {
    json j;
    j["base"] = to_json(b.base);
    j["radius"] = b.radius;
    j["rep_bound"] = b.rep_bound;
    j["truncated"] = b.truncated();
    json vs = json::array();
    for (int i = 0; i < (int)b.vertices.size(); ++i) {
        json v = to_json(b.vertices[i]);
        v["rank"] = rank(b.vertices[i]);
        v["dist"] = b.dist[i];
        v["expanded"] = (bool)b.expanded[i];
        v["dropped_neighbors"] = (bool)b.trunc[i];
        vs.push_back(v);
    }
    j["vertices"] = vs;
    json es = json::array();
    for (auto& [lo, hi] : b.edges) es.push_back({lo, hi});
    j["edges"] = es;
    json cs = json::array();
    for (auto& c : b.cubes)
        cs.push_back({{"low", c.low}, {"high", c.high}, {"dim", c.dim}});
    j["cubes"] = cs;
    return j;
}

inline json to_json(const LabeledDigraph& d) {
    json j;
    json vs = json::array();
    for (int i = 0; i < (int)d.vertices.size(); ++i)
        vs.push_back({{"id", d.vertices[i]}, {"color", d.color[i]}});
    j["vertices"] = vs;
    json es = json::array();
    for (auto& e : d.edges)
        es.push_back({{"from", d.vertices[e.from]},
                      {"to", d.vertices[e.to]},
                      {"label", e.label}});
    j["edges"] = es;
    return j;
}

inline LabeledDigraph digraph_from_json(const json& j) {
    LabeledDigraph d;
    for (auto& v : j.at("vertices")) {
        int i = d.vertex(v.at("id").get<std::string>());
        if (v.contains("color")) d.color[i] = v.at("color").get<std::string>();
    }
    for (auto& e : j.at("edges"))
        d.edges.push_back({d.vertex(e.at("from").get<std::string>()),
                           d.vertex(e.at("to").get<std::string>()),
                           e.at("label").get<std::string>()});
    return d;
}

// ---------------------------------------------------------------------------
// DOT.

inline std::string to_dot(const SimplicialGraph& g) {
    std::ostringstream os;
    os << "graph defining {\n";
    for (int v = 0; v < g.size(); ++v)
        os << "  \"" << g.name(v) << "\";\n";
    for (int a = 0; a < g.size(); ++a)
        for (int b = a + 1; b < g.size(); ++b)
            if (g.adjacent(a, b))
                os << "  \"" << g.name(a) << "\" -- \"" << g.name(b) << "\";\n";
    os << "}\n";
    return os.str();
}

inline std::string flat_label(const StandardCoset& f) {
    std::string t;
    for_each_vertex(f.type, [&](VertexId v) {
        if (!t.empty()) t += ",";
        t += f.graph()->name(v);
    });
    return f.rep.str() + " * <" + t + ">";
}

inline std::string to_dot(const BuildingBall& b) {
    static const char* palette[] = {"gray90", "lightblue", "lightgreen",
                                    "khaki", "salmon", "plum"};
    std::ostringstream os;
    os << "graph building_ball {\n";
    for (int i = 0; i < (int)b.vertices.size(); ++i) {
        int r = rank(b.vertices[i]);
        os << "  v" << i << " [label=\"" << flat_label(b.vertices[i])
           << "\", style=filled, fillcolor=" << palette[r % 6] << "];\n";
    }
    for (auto& [lo, hi] : b.edges) os << "  v" << lo << " -- v" << hi << ";\n";
    os << "}\n";
    return os.str();
}

inline std::string to_dot(const ExtBall& b) {
    std::ostringstream os;
    os << "graph extension_ball {\n";
    for (int i = 0; i < (int)b.vertices.size(); ++i)
        os << "  v" << i << " [label=\"" << b.vertices[i].str() << "\"];\n";
    for (auto& [a, c] : b.edges) os << "  v" << a << " -- v" << c << ";\n";
    os << "}\n";
    return os.str();
}

inline std::string to_dot(const LabeledDigraph& d) {
    std::ostringstream os;
    os << "digraph labeled {\n";
    for (int i = 0; i < (int)d.vertices.size(); ++i) {
        os << "  \"" << d.vertices[i] << "\"";
        if (!d.color[i].empty()) os << " [fillcolor=" << d.color[i] << ", style=filled]";
        os << ";\n";
    }
    for (auto& e : d.edges)
        os << "  \"" << d.vertices[e.from] << "\" -> \"" << d.vertices[e.to]
           << "\" [label=\"" << e.label << "\"];\n";
    os << "}\n";
    return os.str();
}

}  // namespace raag
