// report.hpp — Residual check entries shared by the verification routines

#pragma once

#include <optional>
#include <string>
#include <vector>

namespace jcm {

struct CheckEntry {
    std::string id;
    std::optional<double> value;    // measured quantity, when one exists
    std::optional<double> residual; // what is compared against the tolerance
    std::optional<double> tolerance;
    bool pass = true;
    bool informational = false; // recorded, never gates the overall result
    std::string note;
};

struct ResidualReport {
    std::vector<CheckEntry> entries;

    bool all_pass() const {
        for (const CheckEntry& e : entries)
            if (!e.informational && !e.pass)
                return false;
        return true;
    }

    CheckEntry& add(CheckEntry entry) {
        entries.push_back(std::move(entry));
        return entries.back();
    }

    const CheckEntry* find(const std::string& id) const {
        for (const CheckEntry& e : entries)
            if (e.id == id)
                return &e;
        return nullptr;
    }
};

inline CheckEntry make_check(std::string id, double residual, double tolerance,
                             std::string note = {}) {
    CheckEntry e;
    e.id = std::move(id);
    e.residual = residual;
    e.tolerance = tolerance;
    e.pass = residual <= tolerance;
    e.note = std::move(note);
    return e;
}

} // namespace jcm
