#include "dimerglue/json_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace dimerglue {

using njson = nlohmann::ordered_json;

namespace {

uint32_t var_id_from_name(const std::string& name, uint32_t fallback) {
    // names like "x7" map to id 6; anything else gets the fallback slot
    if (name.size() > 1 && (name[0] == 'x' || name[0] == 'X')) {
        bool digits = true;
        for (size_t i = 1; i < name.size(); i++)
            if (!isdigit((unsigned char)name[i])) digits = false;
        if (digits) return (uint32_t)std::stoul(name.substr(1)) - 1;
    }
    return fallback;
}

Graph graph_from(const njson& j) {
    Graph g;
    if (!j.contains("vertices") || !j.contains("edges"))
        throw ValidationError("graph JSON needs 'vertices' and 'edges'");
    g.vertex_count = j.at("vertices").get<int>();
    uint32_t next = 0;
    for (auto& je : j.at("edges")) {
        int u = je.at("u").get<int>();
        int v = je.at("v").get<int>();
        uint32_t var;
        std::string name;
        if (je.contains("var")) {
            name = je.at("var").get<std::string>();
            var = var_id_from_name(name, next);
        } else {
            var = next;
        }
        next = std::max(next, var + 1);
        g.add_edge(u, v, var);
        if (g.var_names.size() <= var) g.var_names.resize(var + 1);
        g.var_names[var] = name.empty() ? "x" + std::to_string(var + 1) : name;
    }
    g.validate();
    return g;
}

njson graph_to(const Graph& g) {
    njson j;
    j["vertices"] = g.vertex_count;
    njson edges = njson::array();
    for (auto& e : g.edges) {
        njson je;
        je["u"] = e.u;
        je["v"] = e.v;
        je["var"] = g.var_name(e.var);
        edges.push_back(je);
    }
    j["edges"] = edges;
    return j;
}

EmbeddedGraph embedding_from(const njson& j) {
    EmbeddedGraph eg;
    eg.graph = graph_from(j);
    eg.genus = j.at("genus").get<int>();
    size_t ei = 0;
    for (auto& je : j.at("edges")) {
        if (!je.contains("r")) throw ValidationError("embedded edge lacks 'r'");
        eg.r.push_back(je.at("r").get<std::vector<int>>());
        ei++;
    }
    if (j.contains("rotation")) {
        eg.rotation.assign(eg.graph.vertex_count, {});
        for (auto& [key, val] : j.at("rotation").items())
            eg.rotation[std::stoi(key)] = val.get<std::vector<int>>();
    }
    eg.validate();
    return eg;
}

njson embedding_to(const EmbeddedGraph& eg) {
    njson j = graph_to(eg.graph);
    j["genus"] = eg.genus;
    size_t ei = 0;
    for (auto& je : j.at("edges")) je["r"] = eg.r[ei++];
    if (!eg.rotation.empty()) {
        njson rot;
        for (int v = 0; v < eg.graph.vertex_count; v++)
            rot[std::to_string(v)] = eg.rotation[v];
        j["rotation"] = rot;
    }
    return j;
}

}  // namespace

Graph graph_from_json(const std::string& text) {
    try {
        return graph_from(njson::parse(text));
    } catch (const njson::exception& e) {
        throw ValidationError(std::string("JSON schema error: ") + e.what());
    }
}

std::string graph_to_json(const Graph& g) { return graph_to(g).dump(2); }

EmbeddedGraph embedding_from_json(const std::string& text) {
    try {
        return embedding_from(njson::parse(text));
    } catch (const njson::exception& e) {
        throw ValidationError(std::string("JSON schema error: ") + e.what());
    }
}

std::string embedding_to_json(const EmbeddedGraph& eg) {
    return embedding_to(eg).dump(2);
}

EmbeddedCut cut_from_json(const std::string& text) {
    try {
        njson j = njson::parse(text);
        EmbeddedCut ec;
        ec.eg = embedding_from(j);
        const njson& jc = j.at("cut");
        ec.cut.cut_vertices = jc.at("vertices").get<std::vector<int>>();
        ec.cut.side_of_vertex.assign(ec.eg.graph.vertex_count, 0);
        for (auto& [key, val] : jc.at("side").items())
            ec.cut.side_of_vertex[std::stoi(key)] = val.get<int>();
        ec.cut.side_of_edge.assign(ec.eg.graph.edge_count(), 0);
        for (auto& [key, val] : jc.at("edge_sides").items())
            ec.cut.side_of_edge[std::stoi(key)] = val.get<int>();
        ec.validate();
        return ec;
    } catch (const njson::exception& e) {
        throw ValidationError(std::string("JSON schema error: ") + e.what());
    }
}

std::string cut_to_json(const EmbeddedCut& ec) {
    njson j = embedding_to(ec.eg);
    njson jc;
    jc["vertices"] = ec.cut.cut_vertices;
    njson side, es;
    for (int v = 0; v < ec.eg.graph.vertex_count; v++)
        if (ec.cut.side_of_vertex[v] != 0)
            side[std::to_string(v)] = ec.cut.side_of_vertex[v];
    for (int e = 0; e < ec.eg.graph.edge_count(); e++)
        es[std::to_string(e)] = ec.cut.side_of_edge[e];
    jc["side"] = side;
    jc["edge_sides"] = es;
    j["cut"] = jc;
    return j.dump(2);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw ValidationError("cannot write " + path);
    out << content;
}

}  // namespace dimerglue
