// nbox: exact classification and verification of diagonal sign actions on
// flat tori, their extremal sets, and the box geometry they carry.
//
// Exit codes: 0 = success, 2 = property violation (bad input data or a
// failed check, reported with a witness), 3 = a statement the tool treats
// as settled failed to check out, 4 = usage or input error.

#include "CLI11.hpp"

#include "nbox/acute.hpp"
#include "nbox/classify.hpp"
#include "nbox/flatgeom.hpp"
#include "nbox/io.hpp"
#include "nbox/moduli.hpp"
#include "nbox/orbits.hpp"
#include "nbox/parallel.hpp"
#include "nbox/rng.hpp"

#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace nbox;

constexpr int kExitViolation = 2;
constexpr int kExitFalsified = 3;
constexpr int kExitUsage = 4;

void emit(const std::string& path, const std::string& text) {
    if (path.empty())
        std::cout << text;
    else
        write_text(path, text);
}

void emit_json(const std::string& path, const Json& j) { emit(path, j.dump(2) + "\n"); }

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::size_t pos = 0;
    while (pos <= s.size()) {
        std::size_t comma = s.find(',', pos);
        if (comma == std::string::npos) comma = s.size();
        out.push_back(s.substr(pos, comma - pos));
        pos = comma + 1;
    }
    return out;
}

bool looks_like_id(const std::string& s) {
    if (s.size() != 16) return false;
    for (char c : s)
        if (!((c >= '0' && c <= '9') || (c >= 'a' && c <= 'f'))) return false;
    return true;
}

struct SpecOpts {
    std::string cls;
    std::string encoding;
    std::string generators;
    std::string parities;
    std::string spec_file;
    int n = 0;
};

void add_spec_options(CLI::App* sub, SpecOpts& o) {
    sub->add_option("--class", o.cls,
                    "named class (interval, square, ...) or 16-hex catalog id (needs -n)");
    sub->add_option("--encoding", o.encoding, "class encoding, e.g. \"n=2;++:00,--:00\"");
    sub->add_option("--generators", o.generators, "comma-separated sign vectors, e.g. \"-++,+-+\"");
    sub->add_option("--parities", o.parities, "comma-separated parity vectors, one per generator");
    sub->add_option("--spec-file", o.spec_file, "group JSON file {n, generators, phi}");
    sub->add_option("-n,--dim", o.n, "dimension (with --generators or a catalog id)");
}

GroupSpec resolve_spec(const SpecOpts& o) {
    int chosen = (!o.cls.empty() ? 1 : 0) + (!o.encoding.empty() ? 1 : 0) +
                 (!o.generators.empty() ? 1 : 0) + (!o.spec_file.empty() ? 1 : 0);
    if (chosen != 1)
        throw std::invalid_argument(
            "choose exactly one of --class, --encoding, --generators, --spec-file");
    if (!o.cls.empty()) {
        if (auto g = named_class(o.cls)) return *g;
        if (looks_like_id(o.cls)) {
            if (o.n < 1)
                throw std::invalid_argument("resolving a catalog id needs -n");
            Catalog cat = enumerate_actions(o.n, false, 0);
            for (const auto& e : cat.entries)
                if (e.id == o.cls) return spec_from_encoding(e.encoding);
            throw std::invalid_argument("id " + o.cls + " not in the dimension-" +
                                        std::to_string(o.n) + " catalog");
        }
        std::string names;
        for (const auto& nm : named_class_names()) names += (names.empty() ? "" : ", ") + nm;
        throw std::invalid_argument("unknown class '" + o.cls + "' (known: " + names + ")");
    }
    if (!o.encoding.empty()) return spec_from_encoding(o.encoding);
    if (!o.spec_file.empty()) return load_group(o.spec_file);
    if (o.n < 1) throw std::invalid_argument("--generators requires -n");
    auto gens = split_list(o.generators);
    std::vector<std::string> phis;
    if (o.parities.empty())
        phis.assign(gens.size(), std::string(static_cast<std::size_t>(o.n), '0'));
    else
        phis = split_list(o.parities);
    return GroupSpec::make(o.n, gens, phis);
}

std::string joined_command(int argc, char** argv) {
    std::string s;
    for (int i = 1; i < argc; ++i) {
        if (i > 1) s += ' ';
        s += argv[i];
    }
    return s;
}

int run_enumerate(const std::string& command, int n, bool boxes_only, int workers,
                  const std::string& format, const std::string& output) {
    if (n < 1 || n > 4) throw std::invalid_argument("enumerate supports dimensions 1 through 4");
    Catalog cat = enumerate_actions(n, boxes_only, workers);
    if (format == "csv") {
        emit(output, catalog_csv(cat));
    } else {
        emit_json(output, catalog_json(cat, artifact_header(command, std::nullopt)));
    }
    int boxes = 0;
    for (const auto& e : cat.entries)
        if (e.is_box) ++boxes;
    if (auto known = known_box_count(n); known && boxes != *known) {
        std::cerr << "FALSIFIED: dimension " << n << " should have " << *known
                  << " box classes, found " << boxes << "\n";
        return kExitFalsified;
    }
    return 0;
}

int run_describe(const std::string& command, const SpecOpts& opts, const std::string& output) {
    GroupSpec g = resolve_spec(opts);
    int n = g.n();
    CatalogEntry entry = describe(g);
    Json j;
    j["header"] = artifact_header(command, std::nullopt);
    j["entry"] = entry_json(entry);
    j["group"] = group_json(g);

    ExtremalSet es = extremal_points(g);
    Json pts = Json::array();
    for (std::size_t i = 0; i < es.points.size(); ++i)
        pts.push_back(Json{{"point", point_json(PartialPoint::from_packed(n, es.points[i]))},
                           {"orbit", es.orbit[i]}});
    j["extremal_set"] =
        Json{{"count", es.points.size()}, {"orbits", es.orbit_count}, {"points", std::move(pts)}};

    FiniteSubgroupReport fg = maximal_finite(g);
    Json reps = Json::array();
    for (const auto& r : fg.representatives)
        reps.push_back(Json{{"fixed_locus", point_json(r.pattern)}, {"order", r.stab.order()}});
    j["maximal_subgroups"] = std::move(reps);

    ModuliBasis mb = invariant_form_basis(g);
    Json pairs = Json::array();
    for (auto [a, b] : mb.pairs) pairs.push_back(Json::array({a, b}));
    Json basis = Json::array();
    for (const auto& f : mb.basis) basis.push_back(metric_json(f));
    j["moduli"] =
        Json{{"dim", mb.dim}, {"coupled_pairs", std::move(pairs)}, {"basis", std::move(basis)}};

    if (!es.points.empty()) {
        LatticeResult lr = extremal_lattice(g);
        j["lattice"] = lattice_json(lr);
        // Neighbor directions of the origin cell, taken in the identity
        // metric, which every sign action leaves invariant.
        SymFormQ id_metric = SymFormQ::identity(n);
        Json rel = Json::array();
        for (const auto& v : relevant_vectors(lr.lattice.basis, id_metric))
            rel.push_back(vec_json(v));
        j["relevant_vectors"] = std::move(rel);
        if (entry.is_box && n >= 2)
            j["strata"] = strata_json(classify_codim2_strata(g, id_metric));
    }
    emit_json(output, j);
    return 0;
}

// One full geometric pass for a fixed invariant metric.  Everything is
// exact; a failed check is reported with its witness, never rounded away.
Json verify_with_metric(const GroupSpec& g, const SymFormQ& metric, const CatalogEntry& entry,
                        int samples, std::uint64_t check_seed, bool& bad) {
    int n = g.n();
    Json j;
    j["metric"] = metric_json(metric);
    ExtremalSet es = extremal_points(g);
    if (es.points.empty()) {
        j["extremal_set"] = "empty";
        return j;
    }
    if (entry.is_box) {
        CellReport cell = verify_cell_properties(g, metric);
        j["cell"] = cell_json(n, cell);
        bad = bad || !cell.ok();
        if (n >= 2) j["strata"] = strata_json(classify_codim2_strata(g, metric));
    }
    MidpointSampleReport mp = sampled_midpoint_check(g, metric, samples, check_seed);
    Json mj{{"samples", mp.samples}, {"violations", mp.violations}};
    if (mp.first_witness) mj["witness"] = *mp.first_witness;
    j["midpoint_samples"] = std::move(mj);
    bad = bad || mp.violations > 0;

    PartialPoint ext = PartialPoint::from_packed(n, es.points[0]);
    DirectionReport dr = direction_diameter_check(g, metric, ext, samples, check_seed);
    j["direction_pairs"] = Json{{"pairs", dr.pairs}, {"violations", dr.violations}};
    bad = bad || dr.violations > 0;

    // A non-extremal class, when one exists, must exhibit the antipodal
    // all-negative witness along its invariant axis.
    for (std::uint32_t packed = 0; packed < (1u << (2 * n)); ++packed) {
        PartialPoint p = PartialPoint::from_packed(n, packed);
        ExtremalityCertificate cert = is_extremal(g, p);
        if (cert.extremal) continue;
        if (!cert.invariant_axis)
            throw std::logic_error("non-extremal class without invariant axis");
        bool witness = antipodal_witness_all_negative(g, metric, p, *cert.invariant_axis);
        j["antipodal_witness"] = Json{{"point", point_json(p)},
                                      {"axis", *cert.invariant_axis},
                                      {"all_negative", witness}};
        bad = bad || !witness;
        break;
    }
    return j;
}

int run_verify(const std::string& command, const SpecOpts& opts, const std::string& metric_arg,
               int trials, std::uint64_t seed, int samples, const std::string& output) {
    GroupSpec g = resolve_spec(opts);
    bool random_metrics = metric_arg == "random";
    if (trials < 1) throw std::invalid_argument("--trials must be at least 1");

    Json j;
    j["header"] = artifact_header(command, random_metrics
                                               ? std::optional<std::uint64_t>(seed)
                                               : std::nullopt);
    CatalogEntry entry = describe(g);
    j["entry"] = entry_json(entry);

    bool bad = entry.extremal_class_count > entry.maximal_subgroup_count;
    j["class_count_le_subgroup_count"] = !bad;

    if (entry.extremal_class_count > 0) {
        LatticeResult lr = extremal_lattice(g);
        j["lattice"] = lattice_json(lr);
        bad = bad || !lr.ok();
    }

    Json runs = Json::array();
    Rng root(seed);
    int metric_count = random_metrics ? trials : 1;
    for (int t = 0; t < metric_count; ++t) {
        SymFormQ metric = SymFormQ::identity(g.n());
        std::uint64_t check_seed = seed;
        Json rec;
        if (random_metrics) {
            Rng tr = root.fork("metric-" + std::to_string(t));
            std::uint64_t ms_seed = tr.next_u64();
            MetricSample ms = sample_invariant_metric(g, ms_seed);
            metric = ms.g;
            check_seed = tr.next_u64();
            rec["source"] = "random";
            rec["metric_seed"] = ms_seed;
            rec["repaired"] = ms.repaired;
        } else {
            metric = load_metric(metric_arg);
            if (!is_invariant_form(g, metric))
                throw std::invalid_argument("metric is not invariant under this action");
            if (!is_positive_definite(metric))
                throw std::invalid_argument("metric is not positive definite");
            rec["source"] = metric_arg;
        }
        bool metric_bad = false;
        rec["checks"] = verify_with_metric(g, metric, entry, samples, check_seed, metric_bad);
        rec["ok"] = !metric_bad;
        bad = bad || metric_bad;
        runs.push_back(std::move(rec));
    }
    j["metrics"] = std::move(runs);
    j["ok"] = !bad;
    emit_json(output, j);
    return bad ? kExitViolation : 0;
}

int run_conjecture(const std::string& command, int n, int workers, const std::string& output) {
    if (n < 1 || n > 4) throw std::invalid_argument("conjecture supports dimensions 1 through 4");
    BoundSweep sweep = sweep_bounds(n, workers);
    int bound = 1 << n;

    Json j;
    j["header"] = artifact_header(command, std::nullopt);
    j["n"] = n;
    j["bound"] = bound;
    j["total_specs"] = sweep.total_specs;
    j["max_N"] = sweep.max_n_count;
    j["max_M"] = sweep.max_m_count;
    auto dump = [](const std::vector<BoundCounterexample>& v) {
        Json arr = Json::array();
        for (const auto& c : v)
            arr.push_back(Json{{"encoding", c.encoding},
                               {std::string(1, c.kind), c.value}});
        return arr;
    };
    j["counterexamples_N"] = dump(sweep.n_violations);
    j["counterexamples_M"] = dump(sweep.m_violations);
    j["counterexamples_N_le_M"] = dump(sweep.nm_violations);
    j["ok"] = sweep.clean();
    if (!output.empty()) emit_json(output, j);

    std::size_t total_bad = sweep.n_violations.size() + sweep.m_violations.size() +
                            sweep.nm_violations.size();
    std::cout << "N <= " << bound << " and M <= " << bound << " hold for all "
              << sweep.total_specs << " enumerated specs; " << total_bad
              << " counterexamples\n";
    for (const auto& c : sweep.n_violations)
        std::cout << "counterexample N=" << c.value << ": " << c.encoding << "\n";
    for (const auto& c : sweep.m_violations)
        std::cout << "counterexample M=" << c.value << ": " << c.encoding << "\n";
    for (const auto& c : sweep.nm_violations)
        std::cout << "counterexample N>M, N=" << c.value << ": " << c.encoding << "\n";

    // The class-count bound and N <= M are settled statements; the M bound
    // is the open one, so a counterexample there is a finding, not an error.
    if (!sweep.n_violations.empty() || !sweep.nm_violations.empty()) return kExitFalsified;
    return 0;
}

int run_check_acute(const std::string& command, const std::string& file,
                    const std::string& output) {
    std::vector<VecQ> points = load_points_csv(file);
    AcuteCheck check = check_acute_free(points);
    ShapeReport shape;
    bool have_shape = false;
    int rc = 0;
    Json j;
    j["header"] = artifact_header(command, std::nullopt);
    if (!check.acute_free) {
        rc = kExitViolation;
    } else {
        CardinalityReport card = cardinality_report(check);
        j["cardinality"] = Json{{"m", card.m},
                                {"bound", card.bound.str()},
                                {"margin", card.margin.str()},
                                {"at_bound", card.at_bound},
                                {"falsifies_bound", card.falsifies}};
        if (card.falsifies) {
            rc = kExitFalsified;  // more than 2^dim points, all angles nonnegative
        } else if (card.at_bound) {
            shape = recognize_right_parallelepiped(points);
            have_shape = true;
            if (shape.shape == BoxShape::kSkewOrOther) rc = kExitFalsified;
        }
    }
    j["check"] = acute_json(check, have_shape ? &shape : nullptr);
    j["ok"] = rc == 0;
    emit_json(output, j);
    if (rc == kExitViolation && check.witness)
        std::cerr << "angle with negative cosine: rays from point " << check.witness->j
                  << " to points " << check.witness->i << " and " << check.witness->k
                  << " (dot = " << check.witness->dot.str() << ")\n";
    return rc;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact n-dimensional box actions: classification and verification"};
    app.require_subcommand(1);
    std::string command = joined_command(argc, argv);

    int n = 3, workers = 0, trials = 3, samples = 100;
    bool boxes_only = false;
    std::string format = "json", output, acute_file;
    std::string metric_arg = "random";
    std::uint64_t seed = 2026;
    SpecOpts describe_opts, verify_opts;

    auto* enu = app.add_subcommand("enumerate", "catalog all classes of a dimension");
    enu->add_option("-n,--dim", n, "dimension, 1 through 4")->required();
    enu->add_flag("--boxes-only", boxes_only, "keep only box classes");
    enu->add_option("--format", format, "json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
    enu->add_option("--workers", workers, "worker threads (default: NBOX_WORKERS or cores)");
    enu->add_option("-o,--output", output, "write to file instead of stdout");

    auto* des = app.add_subcommand("describe", "invariants of a single class");
    add_spec_options(des, describe_opts);
    des->add_option("-o,--output", output, "write to file instead of stdout");

    auto* ver = app.add_subcommand("verify", "check the geometry of one class");
    add_spec_options(ver, verify_opts);
    ver->add_option("--metric", metric_arg,
                    "\"random\" for seeded invariant metrics, or a metric JSON path");
    ver->add_option("--trials", trials, "number of random metrics to try");
    ver->add_option("--seed", seed, "seed for sampled metrics and spot checks");
    ver->add_option("--samples", samples, "sample count for the seeded checks");
    ver->add_option("-o,--output", output, "write to file instead of stdout");

    auto* con = app.add_subcommand("conjecture",
                                   "sweep the class-count and subgroup-count bounds");
    con->add_option("-n,--dim", n, "dimension, 1 through 4")->required();
    con->add_option("--workers", workers, "worker threads (default: NBOX_WORKERS or cores)");
    con->add_option("-o,--output", output, "write the JSON report to a file");

    auto* acu = app.add_subcommand("check-acute", "angle check for a point set CSV");
    acu->add_option("file", acute_file, "CSV of rational points, one per row")->required();
    acu->add_option("-o,--output", output, "write to file instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : kExitUsage;
    }

    try {
        if (enu->parsed()) return run_enumerate(command, n, boxes_only, workers, format, output);
        if (des->parsed()) return run_describe(command, describe_opts, output);
        if (ver->parsed())
            return run_verify(command, verify_opts, metric_arg, trials, seed, samples, output);
        if (con->parsed()) return run_conjecture(command, n, workers, output);
        if (acu->parsed()) return run_check_acute(command, acute_file, output);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::logic_error& e) {
        std::cerr << "FALSIFIED: " << e.what() << "\n";
        return kExitFalsified;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return 0;
}
