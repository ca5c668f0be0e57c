#include "zf/model.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace zf {

using nlohmann::json;

int Hypergraph::edge_degree(int v) const {
    int d = 0;
    for (const auto& e : edges)
        if (std::find(e.begin(), e.end(), v) != e.end()) ++d;
    return d;
}

int Hypergraph::max_degree() const {
    std::vector<int> deg(n, 0);
    for (const auto& e : edges)
        for (int v : e) ++deg[v];
    int d = 0;
    for (int x : deg) d = std::max(d, x);
    return d;
}

void Hypergraph::validate(std::optional<int> declared_delta) const {
    if (n < 0 || k < 2) throw std::invalid_argument("hypergraph: need n >= 0 and k >= 2");
    std::set<std::vector<int>> seen;
    for (const auto& e : edges) {
        if (static_cast<int>(e.size()) != k)
            throw std::invalid_argument("hypergraph: edge size != k");
        std::set<int> uniq(e.begin(), e.end());
        if (static_cast<int>(uniq.size()) != k)
            throw std::invalid_argument("hypergraph: repeated vertex in edge");
        for (int v : e)
            if (v < 0 || v >= n) throw std::invalid_argument("hypergraph: vertex out of range");
        std::vector<int> key(uniq.begin(), uniq.end());
        if (!seen.insert(key).second) throw std::invalid_argument("hypergraph: duplicate edge");
    }
    if (declared_delta && *declared_delta != max_degree())
        throw std::invalid_argument("hypergraph: declared delta does not match edges");
}

int AtomicCsp::max_arity() const {
    int k = 0;
    for (const auto& c : constraints) k = std::max<int>(k, c.vars.size());
    return k;
}

int AtomicCsp::max_constraint_degree() const {
    std::vector<int> deg(domains.size(), 0);
    for (const auto& c : constraints)
        for (int v : c.vars) ++deg[v];
    int d = 0;
    for (int x : deg) d = std::max(d, x);
    return d;
}

void AtomicCsp::validate() const {
    for (int q : domains)
        if (q < 1) throw std::invalid_argument("csp: empty domain");
    for (const auto& c : constraints) {
        if (c.vars.size() != c.forbidden.size())
            throw std::invalid_argument("csp: constraint vars/forbidden length mismatch");
        std::set<int> uniq(c.vars.begin(), c.vars.end());
        if (uniq.size() != c.vars.size())
            throw std::invalid_argument("csp: repeated variable in constraint");
        for (size_t i = 0; i < c.vars.size(); ++i) {
            int v = c.vars[i];
            if (v < 0 || v >= var_count()) throw std::invalid_argument("csp: variable out of range");
            if (c.forbidden[i] < 0 || c.forbidden[i] >= domains[v])
                throw std::invalid_argument("csp: forbidden symbol out of range");
        }
    }
}

int CnfFormula::max_degree() const {
    std::vector<int> deg(n, 0);
    for (const auto& c : clauses)
        for (int v : c.vars) ++deg[v];
    int d = 0;
    for (int x : deg) d = std::max(d, x);
    return d;
}

void CnfFormula::validate() const {
    for (const auto& c : clauses) {
        if (static_cast<int>(c.vars.size()) != k)
            throw std::invalid_argument("cnf: clause width != k");
        if (c.vars.size() != c.neg.size())
            throw std::invalid_argument("cnf: vars/neg length mismatch");
        std::set<int> uniq(c.vars.begin(), c.vars.end());
        if (uniq.size() != c.vars.size()) throw std::invalid_argument("cnf: repeated variable in clause");
        for (int v : c.vars)
            if (v < 0 || v >= n) throw std::invalid_argument("cnf: variable out of range");
    }
}

int ProjectionScheme::preimage_size(int v, int bucket) const {
    int c = 0;
    for (int b : bucket_of[v])
        if (b == bucket) ++c;
    return c;
}

std::vector<int> ProjectionScheme::preimage(int v, int bucket) const {
    std::vector<int> r;
    for (size_t s = 0; s < bucket_of[v].size(); ++s)
        if (bucket_of[v][s] == bucket) r.push_back(static_cast<int>(s));
    return r;
}

void ProjectionScheme::validate(const std::vector<int>& domains) const {
    if (bucket_of.size() != domains.size() || bucket_count.size() != domains.size() ||
        special.size() != domains.size())
        throw std::invalid_argument("projection: size mismatch with domains");
    for (size_t v = 0; v < domains.size(); ++v) {
        if (static_cast<int>(bucket_of[v].size()) != domains[v])
            throw std::invalid_argument("projection: not total on the domain");
        for (int b : bucket_of[v])
            if (b < 0 || b >= bucket_count[v])
                throw std::invalid_argument("projection: bucket out of range");
        if (special[v] >= bucket_count[v])
            throw std::invalid_argument("projection: special bucket out of range");
        int total = 0;
        for (int b = 0; b < bucket_count[v]; ++b) total += preimage_size(static_cast<int>(v), b);
        if (total != domains[v]) throw std::invalid_argument("projection: preimages do not cover domain");
    }
}

bool consistent_with(const ProjectionScheme& f, const std::vector<int>& original,
                     const Assignment& projected) {
    for (size_t v = 0; v < original.size(); ++v) {
        if (projected.values[v] < 0) continue;
        if (f.bucket_of[v][original[v]] != projected.values[v]) return false;
    }
    return true;
}

AtomicCsp coloring_to_atomic_csp(const Hypergraph& h, int q) {
    if (q < 2) throw std::invalid_argument("coloring_to_atomic_csp: need q >= 2");
    h.validate();
    AtomicCsp csp;
    csp.domains.assign(h.n, q);
    for (const auto& e : h.edges)
        for (int c = 0; c < q; ++c) {
            Constraint con;
            con.vars = e;
            con.forbidden.assign(e.size(), c);
            csp.constraints.push_back(std::move(con));
        }
    return csp;
}

AtomicCsp cnf_to_atomic_csp(const CnfFormula& f) {
    f.validate();
    AtomicCsp csp;
    csp.domains.assign(f.n, 2);
    for (const auto& cl : f.clauses) {
        Constraint con;
        con.vars = cl.vars;
        con.forbidden.resize(cl.vars.size());
        // the unique violating assignment falsifies every literal
        for (size_t i = 0; i < cl.vars.size(); ++i) con.forbidden[i] = cl.neg[i] ? 1 : 0;
        csp.constraints.push_back(std::move(con));
    }
    return csp;
}

int coloring_projection_s(int q, int B) { return (q - 1) / B; }

ProjectionScheme make_coloring_projection(int q, int B, int n) {
    if (B < 1 || q <= B) throw std::invalid_argument("make_coloring_projection: need q >= B+1");
    ProjectionScheme f;
    std::vector<int> map(q);
    map[0] = 0;  // the special bucket holds exactly color 0
    for (int c = 1; c < q; ++c) map[c] = ((c - 1) % B) + 1;
    f.bucket_of.assign(n, map);
    f.bucket_count.assign(n, B + 1);
    f.special.assign(n, 0);
    return f;
}

ProjectionScheme make_cnf_projection(const CnfFormula& fml, const std::vector<std::uint8_t>& marked) {
    if (static_cast<int>(marked.size()) != fml.n)
        throw std::invalid_argument("make_cnf_projection: marked mask size mismatch");
    ProjectionScheme f;
    f.bucket_of.resize(fml.n);
    f.bucket_count.resize(fml.n);
    f.special.resize(fml.n);
    for (int v = 0; v < fml.n; ++v) {
        if (marked[v]) {
            f.bucket_of[v] = {0, 1};
            f.bucket_count[v] = 2;
            f.special[v] = 1;  // field sits on value 1
        } else {
            f.bucket_of[v] = {0, 0};
            f.bucket_count[v] = 1;
            f.special[v] = -1;
        }
    }
    return f;
}

ProjectionScheme identity_projection(const std::vector<int>& domains, int special_symbol) {
    ProjectionScheme f;
    f.bucket_of.resize(domains.size());
    f.bucket_count.resize(domains.size());
    f.special.resize(domains.size());
    for (size_t v = 0; v < domains.size(); ++v) {
        f.bucket_of[v].resize(domains[v]);
        for (int s = 0; s < domains[v]; ++s) f.bucket_of[v][s] = s;
        f.bucket_count[v] = domains[v];
        f.special[v] = (special_symbol >= 0 && special_symbol < domains[v]) ? special_symbol : -1;
    }
    return f;
}

ProjectionScheme all_to_one_projection(const std::vector<int>& domains) {
    ProjectionScheme f;
    f.bucket_of.resize(domains.size());
    f.bucket_count.assign(domains.size(), 1);
    f.special.assign(domains.size(), -1);
    for (size_t v = 0; v < domains.size(); ++v) f.bucket_of[v].assign(domains[v], 0);
    return f;
}

AtomicCsp Instance::to_atomic() const {
    if (kind == Kind::Hypergraph) return coloring_to_atomic_csp(graph, q);
    return cnf_to_atomic_csp(cnf);
}

std::string instance_to_json(const Instance& inst) {
    json j;
    if (inst.kind == Instance::Kind::Hypergraph) {
        j["type"] = "hypergraph";
        j["n"] = inst.graph.n;
        j["k"] = inst.graph.k;
        j["edges"] = inst.graph.edges;
        j["q"] = inst.q;
    } else {
        j["type"] = "cnf";
        j["n"] = inst.cnf.n;
        j["k"] = inst.cnf.k;
        json cl = json::array();
        for (const auto& c : inst.cnf.clauses) {
            json e;
            e["vars"] = c.vars;
            std::vector<bool> neg(c.neg.begin(), c.neg.end());
            e["neg"] = neg;
            cl.push_back(e);
        }
        j["clauses"] = cl;
    }
    if (!inst.name.empty()) j["name"] = inst.name;
    return j.dump(2);
}

Instance instance_from_json(const std::string& text) {
    json j = json::parse(text);
    Instance inst;
    std::string type = j.at("type").get<std::string>();
    if (type == "hypergraph") {
        inst.kind = Instance::Kind::Hypergraph;
        inst.graph.n = j.at("n").get<int>();
        inst.graph.k = j.at("k").get<int>();
        inst.graph.edges = j.at("edges").get<std::vector<std::vector<int>>>();
        inst.q = j.at("q").get<int>();
        std::optional<int> declared;
        if (j.contains("delta")) declared = j["delta"].get<int>();
        inst.graph.validate(declared);
    } else if (type == "cnf") {
        inst.kind = Instance::Kind::Cnf;
        inst.cnf.n = j.at("n").get<int>();
        inst.cnf.k = j.at("k").get<int>();
        for (const auto& e : j.at("clauses")) {
            CnfClause c;
            c.vars = e.at("vars").get<std::vector<int>>();
            for (bool b : e.at("neg").get<std::vector<bool>>()) c.neg.push_back(b ? 1 : 0);
            inst.cnf.clauses.push_back(std::move(c));
        }
        inst.cnf.validate();
    } else {
        throw std::invalid_argument("instance: unknown type " + type);
    }
    if (j.contains("name")) inst.name = j["name"].get<std::string>();
    return inst;
}

Instance load_instance(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open instance file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return instance_from_json(ss.str());
}

void save_instance(const Instance& inst, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write instance file: " + path);
    out << instance_to_json(inst) << "\n";
}

std::string projection_to_json(const ProjectionScheme& f) {
    json j;
    j["bucket_of"] = f.bucket_of;
    j["bucket_count"] = f.bucket_count;
    j["special"] = f.special;
    return j.dump(2);
}

ProjectionScheme projection_from_json(const std::string& text) {
    json j = json::parse(text);
    ProjectionScheme f;
    f.bucket_of = j.at("bucket_of").get<std::vector<std::vector<int>>>();
    f.bucket_count = j.at("bucket_count").get<std::vector<int>>();
    f.special = j.at("special").get<std::vector<int>>();
    return f;
}

}  // namespace zf
