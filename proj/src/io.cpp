#include "nbox/io.hpp"

#include "nbox/rng.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace nbox {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

Json artifact_header(const std::string& command, std::optional<std::uint64_t> seed) {
    Json h;
    h["format_version"] = 1;
    h["tool"] = "nbox";
    h["command"] = command;
    h["prng"] = rng_name();
    if (seed) h["seed"] = *seed;
    return h;
}

Json entry_json(const CatalogEntry& e) {
    Json j;
    j["n"] = e.n;
    j["id"] = e.id;
    j["encoding"] = e.encoding;
    GroupSpec g = spec_from_encoding(e.encoding);
    Json gens = Json::array();
    Json phi = Json::object();
    for (auto [s, p] : g.minimal_generators()) {
        std::string ss = sign_str(s, e.n);
        gens.push_back(ss);
        phi[ss] = parity_str(p, e.n);
    }
    j["generators"] = std::move(gens);
    j["phi"] = std::move(phi);
    j["group_order"] = e.group_order;
    j["N"] = e.extremal_class_count;
    j["M"] = e.maximal_subgroup_count;
    j["is_box"] = e.is_box;
    j["k"] = e.gluing_exponent ? Json(*e.gluing_exponent) : Json(nullptr);
    j["moduli_dim"] = e.moduli_dim;
    j["name"] = e.name ? Json(*e.name) : Json(nullptr);
    return j;
}

Json group_json(const GroupSpec& g) {
    Json j;
    j["n"] = g.n();
    Json gens = Json::array();
    Json phi = Json::object();
    for (auto [s, p] : g.minimal_generators()) {
        std::string ss = sign_str(s, g.n());
        gens.push_back(ss);
        phi[ss] = parity_str(p, g.n());
    }
    j["generators"] = std::move(gens);
    j["phi"] = std::move(phi);
    return j;
}

GroupSpec group_from_json(const Json& j) {
    int n = j.at("n").get<int>();
    std::vector<std::string> gens, phis;
    for (const auto& s : j.at("generators")) {
        gens.push_back(s.get<std::string>());
        phis.push_back(j.at("phi").at(gens.back()).get<std::string>());
    }
    return GroupSpec::make(n, gens, phis);
}

GroupSpec load_group(const std::string& path) {
    Json j;
    try {
        j = Json::parse(read_file(path));
    } catch (const Json::parse_error& e) {
        throw std::invalid_argument("group file " + path + ": " + e.what());
    }
    return group_from_json(j);
}

Json point_json(const PartialPoint& p) {
    static const char* quarter[4] = {"0", "1/2", "1", "3/2"};
    Json a = Json::array();
    for (int i = 0; i < p.n; ++i)
        a.push_back(p.c[i] < 0 ? "*" : quarter[p.c[i]]);
    return a;
}

Json catalog_json(const Catalog& c, const Json& header) {
    Json j;
    j["header"] = header;
    j["n"] = c.n;
    j["boxes_only"] = c.boxes_only;
    j["total_specs"] = c.total_specs;
    j["class_count"] = c.entries.size();
    int boxes = 0;
    for (const auto& e : c.entries)
        if (e.is_box) ++boxes;
    j["box_count"] = boxes;
    Json arr = Json::array();
    for (const auto& e : c.entries) arr.push_back(entry_json(e));
    j["entries"] = std::move(arr);
    return j;
}

std::string catalog_csv(const Catalog& c) {
    std::string out =
        "id,encoding,name,n,group_order,N,M,is_box,k,moduli_dim\n";
    for (const auto& e : c.entries) {
        out += e.id;
        out += ",\"" + e.encoding + "\",";
        out += e.name ? *e.name : "";
        out += ',' + std::to_string(e.n);
        out += ',' + std::to_string(e.group_order);
        out += ',' + std::to_string(e.extremal_class_count);
        out += ',' + std::to_string(e.maximal_subgroup_count);
        out += e.is_box ? ",true," : ",false,";
        if (e.gluing_exponent) out += std::to_string(*e.gluing_exponent);
        out += ',' + std::to_string(e.moduli_dim);
        out += '\n';
    }
    return out;
}

Json metric_json(const SymFormQ& g) {
    Json rows = Json::array();
    for (int i = 0; i < g.n; ++i) {
        Json row = Json::array();
        for (int j = 0; j < g.n; ++j) row.push_back(g.at(i, j).str());
        rows.push_back(std::move(row));
    }
    Json j;
    j["n"] = g.n;
    j["rows"] = std::move(rows);
    return j;
}

SymFormQ metric_from_json(const Json& j) {
    int n = j.at("n").get<int>();
    const Json& rows = j.at("rows");
    if (!rows.is_array() || static_cast<int>(rows.size()) != n)
        throw std::invalid_argument("metric: expected n rows");
    MatQ m(n, n);
    for (int i = 0; i < n; ++i) {
        const Json& row = rows.at(i);
        if (!row.is_array() || static_cast<int>(row.size()) != n)
            throw std::invalid_argument("metric: expected n entries per row");
        for (int k = 0; k < n; ++k)
            m.at(i, k) = Rational::parse(row.at(k).get<std::string>());
    }
    return SymFormQ(std::move(m));  // symmetry enforced here
}

SymFormQ load_metric(const std::string& path) {
    Json j;
    try {
        j = Json::parse(read_file(path));
    } catch (const Json::parse_error& e) {
        throw std::invalid_argument("metric file " + path + ": " + e.what());
    }
    return metric_from_json(j);
}

std::vector<VecQ> load_points_csv(const std::string& path) {
    std::istringstream in(read_file(path));
    std::vector<VecQ> points;
    std::string line;
    while (std::getline(in, line)) {
        std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        VecQ p;
        std::size_t pos = 0;
        while (pos <= t.size()) {
            std::size_t comma = t.find(',', pos);
            if (comma == std::string::npos) comma = t.size();
            p.push_back(Rational::parse(trim(t.substr(pos, comma - pos))));
            pos = comma + 1;
        }
        points.push_back(std::move(p));
    }
    if (points.empty()) throw std::invalid_argument("no points in " + path);
    return points;
}

Json vec_json(const VecQ& v) {
    Json a = Json::array();
    for (const auto& x : v) a.push_back(x.str());
    return a;
}

Json lattice_json(const LatticeResult& r) {
    Json j;
    j["n"] = r.lattice.n;
    j["origin"] = vec_json(r.lattice.origin);
    Json basis = Json::array();
    for (int c = 0; c < r.lattice.n; ++c) basis.push_back(vec_json(r.lattice.basis.vec(c)));
    j["basis"] = std::move(basis);
    j["covolume"] = r.lattice.covol.str();
    j["class_count"] = r.lattice.classes.points.size();
    j["orbit_count"] = r.lattice.classes.orbit_count;
    j["closure_ok"] = r.closure_ok;
    j["symmetry_ok"] = r.symmetry_ok;
    j["generation_ok"] = r.generation_ok;
    j["box_checks_applied"] = r.box_checks_applied;
    if (r.box_checks_applied) {
        j["coset_cover_ok"] = r.coset_cover_ok;
        j["orbit_parity_ok"] = r.orbit_parity_ok;
    }
    j["ok"] = r.ok();
    if (r.witness) {
        Json w;
        w["check"] = r.witness->check;
        Json pts = Json::array();
        for (const auto& p : r.witness->points) pts.push_back(vec_json(p));
        w["points"] = std::move(pts);
        j["witness"] = std::move(w);
    }
    return j;
}

Json cell_json(int n, const CellReport& r) {
    Json j;
    Json rel = Json::array();
    for (const auto& v : r.relevant) rel.push_back(vec_json(v));
    j["relevant_vectors"] = std::move(rel);
    j["quotient_volume"] = r.quotient_volume.str();
    j["share"] = r.share.str();
    j["shares_sum_ok"] = r.shares_sum_ok;
    j["facet_equivalence_ok"] = r.facet_equivalence_ok;
    Json orbits = Json::array();
    for (const auto& o : r.orbits) {
        Json oj;
        oj["representative"] = vec_json(PartialPoint::from_packed(n, o.rep_class).lift());
        oj["stabilizer_order"] = o.stabilizer_order;
        oj["reflection_ok"] = o.reflection_ok;
        oj["midpoint_ok"] = o.midpoint_ok;
        oj["share_ok"] = o.share_ok;
        if (o.failing_vector) oj["failing_vector"] = vec_json(*o.failing_vector);
        orbits.push_back(std::move(oj));
    }
    j["orbits"] = std::move(orbits);
    j["ok"] = r.ok();
    return j;
}

Json strata_json(const std::vector<StratumReport>& strata) {
    Json arr = Json::array();
    for (const auto& s : strata) {
        Json j;
        j["axes"] = Json::array({s.axis_i, s.axis_j});
        j["values"] = Json::array({Rational(s.code_i, 2).str(), Rational(s.code_j, 2).str()});
        j["restriction"] = s.restriction;
        j["cone"] = cone_type_str(s.cone);
        Json np = Json::array();
        for (const auto& v : s.normal_plane) np.push_back(vec_json(v));
        j["normal_plane"] = std::move(np);
        arr.push_back(std::move(j));
    }
    return arr;
}

Json acute_json(const AcuteCheck& c, const ShapeReport* shape) {
    Json j;
    j["dim"] = c.dim;
    j["count"] = c.count;
    j["bound"] = c.bound.str();
    j["acute_free"] = c.acute_free;
    j["at_bound"] = c.at_bound;
    j["over_bound"] = c.over_bound;
    if (c.witness) {
        Json w;
        w["i"] = c.witness->i;
        w["apex"] = c.witness->j;
        w["k"] = c.witness->k;
        w["dot"] = c.witness->dot.str();
        j["witness"] = std::move(w);
    }
    if (shape) {
        switch (shape->shape) {
            case BoxShape::kRightParallelepiped: j["shape"] = "right_parallelepiped"; break;
            case BoxShape::kSkewOrOther: j["shape"] = "not_right_parallelepiped"; break;
            case BoxShape::kUnsupportedDim: j["shape"] = "unsupported_dimension"; break;
        }
        Json edges = Json::array();
        for (const auto& e : shape->edges) edges.push_back(vec_json(e));
        j["edges"] = std::move(edges);
    }
    return j;
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot write " + path);
    out << text;
    if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace nbox
