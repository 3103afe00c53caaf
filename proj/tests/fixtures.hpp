#pragma once

// Shared graph fixtures and small generators for the test suite.

#include <memory>
#include <string>
#include <vector>

#include "raag/word.hpp"

namespace fixtures {

using raag::GraphRef;
using raag::SimplicialGraph;

inline GraphRef make(std::vector<std::string> names,
                     std::vector<std::pair<std::string, std::string>> edges) {
    auto g = std::make_shared<SimplicialGraph>(std::move(names));
    for (auto& [a, b] : edges) g->add_edge(a, b);
    return g;
}

inline GraphRef point() { return make({"a"}, {}); }
inline GraphRef two_points() { return make({"a", "b"}, {}); }
inline GraphRef edge() { return make({"a", "b"}, {{"a", "b"}}); }
inline GraphRef path3() { return make({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}}); }
inline GraphRef cycle4() {
    return make({"a", "b", "c", "d"},
                {{"a", "b"}, {"b", "c"}, {"c", "d"}, {"d", "a"}});
}
inline GraphRef cycle5() {
    return make({"v1", "v2", "v3", "v4", "v5"},
                {{"v1", "v2"}, {"v2", "v3"}, {"v3", "v4"}, {"v4", "v5"}, {"v5", "v1"}});
}
inline GraphRef claw() {
    return make({"c", "x", "y", "z"}, {{"c", "x"}, {"c", "y"}, {"c", "z"}});
}

// All labeled graphs on vertex names v0..v{n-1}.
inline std::vector<GraphRef> all_graphs(int n) {
    std::vector<std::string> names;
    for (int i = 0; i < n; ++i) names.push_back("v" + std::to_string(i));
    std::vector<std::pair<int, int>> slots;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) slots.emplace_back(i, j);
    std::vector<GraphRef> out;
    for (int mask = 0; mask < (1 << slots.size()); ++mask) {
        auto g = std::make_shared<SimplicialGraph>(names);
        for (size_t s = 0; s < slots.size(); ++s)
            if (mask & (1 << s)) g->add_edge(slots[s].first, slots[s].second);
        out.push_back(g);
    }
    return out;
}

inline raag::NormalForm w(const GraphRef& g, const std::string& text) {
    return raag::parse_word(g, text);
}

}  // namespace fixtures
