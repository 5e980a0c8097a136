#pragma once

#include "nbox/acute.hpp"
#include "nbox/classify.hpp"
#include "nbox/flatgeom.hpp"
#include "nbox/moduli.hpp"

#include "json.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace nbox {

using Json = nlohmann::json;

// Every artifact starts with the same header block: format version, the
// command that produced it, and the generator behind any seeded values.
Json artifact_header(const std::string& command, std::optional<std::uint64_t> seed);

Json entry_json(const CatalogEntry& e);
Json catalog_json(const Catalog& c, const Json& header);
std::string catalog_csv(const Catalog& c);

// Group files: {"n": 3, "generators": ["-++", ...], "phi": {"-++": "001", ...}}.
Json group_json(const GroupSpec& g);
GroupSpec group_from_json(const Json& j);
GroupSpec load_group(const std::string& path);

// Quarter-grid class as coordinate strings, "*" marking a free axis.
Json point_json(const PartialPoint& p);

Json metric_json(const SymFormQ& g);
SymFormQ metric_from_json(const Json& j);
SymFormQ load_metric(const std::string& path);

// One point per row, rational coordinates separated by commas; '#' comments
// and blank lines are skipped.
std::vector<VecQ> load_points_csv(const std::string& path);

Json vec_json(const VecQ& v);
Json lattice_json(const LatticeResult& r);
Json cell_json(int n, const CellReport& r);
Json strata_json(const std::vector<StratumReport>& strata);
Json acute_json(const AcuteCheck& c, const ShapeReport* shape);

void write_text(const std::string& path, const std::string& text);

}  // namespace nbox
