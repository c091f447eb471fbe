#pragma once
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "isl/gallery.hpp"
#include "isl/normality.hpp"

namespace isl {

// A verification run: one ambient structure and manifold (possibly a
// gallery instance), a point sample, a suite selection and tolerances.
struct Scenario {
    std::optional<AmbientStructure> ambient;
    std::optional<ImplicitSubmanifold> manifold;
    std::optional<GalleryExample> gallery;
    std::vector<std::string> suites;
    int count = 100;
    std::uint64_t seed = 1;
    std::vector<Vec> explicit_points;
    double tol_alg = kAlgTol;
    double tol_fd = kFdTol;
    double fd_step = 1e-5;
    std::string format = "text";
    std::string out_path;

    static Scenario from_json(const nlohmann::json& j);
    static Scenario from_file(const std::string& path);
    nlohmann::json echo() const;

    const AmbientStructure& resolved_ambient() const;
    const ImplicitSubmanifold& resolved_manifold() const;
};

struct RunResult {
    Scenario scenario;
    ResidualReport report;
    int exit_code = 0;  // 0 clean, 1 at least one ungated failure
};

RunResult run_scenario(const Scenario& sc);

// text: aligned table; json: {scenario, records, summary}; csv: one row
// per identity and point. Byte-stable for fixed inputs and seed.
void emit_report(const RunResult& result, const std::string& format, std::ostream& os);
// Writes to result.scenario.out_path (or the explicit path argument).
void emit_report_file(const RunResult& result, const std::string& format,
                      const std::string& path);

std::vector<std::pair<std::string, std::string>> list_suites();
std::vector<std::pair<std::string, std::string>> list_gallery();

} // namespace isl
