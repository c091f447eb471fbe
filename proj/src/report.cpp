#include "isl/report.hpp"

#include <algorithm>
#include <cmath>

namespace isl {

ResidualRecord& ResidualReport::add(const std::string& suite, const std::string& id,
                                    double residual, double tolerance) {
    if (!std::isfinite(residual)) throw NumericError("non-finite residual for " + id);
    ResidualRecord rec;
    rec.id = id;
    rec.suite = suite;
    rec.max_residual = residual;
    rec.tolerance = tolerance;
    records.push_back(std::move(rec));
    return records.back();
}

ResidualRecord& ResidualReport::add_gated(const std::string& suite, const std::string& id,
                                          const std::string& note) {
    ResidualRecord rec;
    rec.id = id;
    rec.suite = suite;
    rec.gated = true;
    rec.note = note;
    records.push_back(std::move(rec));
    return records.back();
}

ResidualRecord* ResidualReport::find(const std::string& id) {
    for (auto& r : records)
        if (r.id == id) return &r;
    return nullptr;
}

const ResidualRecord* ResidualReport::find(const std::string& id) const {
    for (const auto& r : records)
        if (r.id == id) return &r;
    return nullptr;
}

void ResidualReport::merge_point(const ResidualReport& other, int point_index) {
    for (const auto& rec : other.records) {
        ResidualRecord* mine = find(rec.id);
        if (mine == nullptr) {
            ResidualRecord fresh = rec;
            fresh.per_point.clear();
            fresh.gated_points = 0;
            fresh.max_residual = 0.0;
            fresh.worst_point = -1;
            records.push_back(std::move(fresh));
            mine = &records.back();
        }
        if (rec.gated) {
            ++mine->gated_points;
            if (mine->note.empty()) mine->note = rec.note;
            // Gated at every contributing point so far?
            mine->gated = mine->per_point.empty();
            continue;
        }
        mine->gated = false;
        mine->per_point.push_back({point_index, rec.max_residual});
        mine->tolerance = rec.tolerance;
        if (rec.max_residual >= mine->max_residual) {
            mine->max_residual = std::max(mine->max_residual, rec.max_residual);
            mine->worst_point = point_index;
        }
        for (const auto& d : rec.details) {
            bool have = false;
            for (const auto& mined : mine->details) have = have || mined.first == d.first;
            if (!have) mine->details.push_back(d);
        }
    }
}

void ResidualReport::append(const ResidualReport& other) {
    records.insert(records.end(), other.records.begin(), other.records.end());
}

bool ResidualReport::all_passed() const { return failure_count() == 0; }

std::size_t ResidualReport::failure_count() const {
    std::size_t n = 0;
    for (const auto& r : records)
        if (!r.passed()) ++n;
    return n;
}

void ResidualReport::sort_records() {
    std::stable_sort(records.begin(), records.end(),
                     [](const ResidualRecord& a, const ResidualRecord& b) {
                         if (a.suite != b.suite) return a.suite < b.suite;
                         return a.id < b.id;
                     });
    for (auto& r : records)
        std::sort(r.per_point.begin(), r.per_point.end(),
                  [](const PointResidual& a, const PointResidual& b) {
                      return a.point_index < b.point_index;
                  });
}

} // namespace isl
