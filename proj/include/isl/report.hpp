#pragma once
#include <string>
#include <utility>
#include <vector>

#include "isl/errors.hpp"

namespace isl {

struct PointResidual {
    int point_index;
    double value;
};

// One verified identity (or diagnostic) with its worst residual.
struct ResidualRecord {
    std::string id;     // stable identity key, e.g. "1.6.iv"
    std::string suite;  // suite name the record belongs to
    double max_residual = 0.0;
    double tolerance = 0.0;
    bool gated = false;       // hypothesis not met: listed, never failing
    std::string note;         // gate reason or diagnostic annotation
    int gated_points = 0;     // points at which the hypothesis failed
    int worst_point = -1;
    std::vector<PointResidual> per_point;
    std::vector<std::pair<std::string, double>> details;

    bool passed() const { return gated || max_residual <= tolerance; }
};

struct ResidualReport {
    std::vector<ResidualRecord> records;

    ResidualRecord& add(const std::string& suite, const std::string& id, double residual,
                        double tolerance);
    ResidualRecord& add_gated(const std::string& suite, const std::string& id,
                              const std::string& note);
    ResidualRecord* find(const std::string& id);
    const ResidualRecord* find(const std::string& id) const;

    // Folds another report in, taking per-identity maxima and tracking the
    // worst point. Used when the same per-point suite runs over a sample.
    void merge_point(const ResidualReport& other, int point_index);
    void append(const ResidualReport& other);

    bool all_passed() const;
    std::size_t failure_count() const;

    // Canonical order: by suite name, then identity key.
    void sort_records();
};

} // namespace isl
