#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "enrichfp/point.hpp"

namespace enrichfp {

enum class CheckStatus { pass, fail, inconclusive };

constexpr std::string_view to_string(CheckStatus s) noexcept {
    switch (s) {
        case CheckStatus::pass: return "pass";
        case CheckStatus::fail: return "fail";
        case CheckStatus::inconclusive: return "inconclusive";
    }
    return "unknown";
}

/// The sample that achieved the worst margin.
struct Witness {
    std::string what;           // which inequality / axiom
    std::vector<Point> points;  // the sampled points, in the order the check uses them
    std::optional<double> lambda;
    double lhs = 0.0;
    double rhs = 0.0;
};

/// Outcome of a sampled verification. Margins are rhs - lhs, so negative means
/// the inequality was violated by that amount.
struct CheckReport {
    std::string name;
    std::size_t checked = 0;
    std::size_t violations = 0;
    std::size_t skipped = 0;
    double worst_margin = std::numeric_limits<double>::infinity();
    double tolerance = 0.0;
    std::optional<Witness> witness;
    /// Violation counts per inequality kind, in first-seen order.
    std::vector<std::pair<std::string, std::size_t>> breakdown;
    std::uint64_t seed = 0;
    CheckStatus status = CheckStatus::inconclusive;
    std::string note;

    bool passed() const noexcept { return status == CheckStatus::pass; }
};

/// Folds per-sample margins into a CheckReport. Ties keep the earliest sample.
class MarginTracker {
public:
    MarginTracker(std::string name, double tol, std::uint64_t seed) {
        report_.name = std::move(name);
        report_.tolerance = tol;
        report_.seed = seed;
    }

    /// make_witness is only invoked when this sample becomes the new worst.
    template <typename MakeWitness>
    void observe(std::string_view what, double margin, MakeWitness&& make_witness) {
        ++report_.checked;
        const bool violated = margin < -report_.tolerance || std::isnan(margin);
        if (violated) {
            ++report_.violations;
            bump(what);
        }
        if (nan_seen_) return;
        if (std::isnan(margin) || margin < report_.worst_margin) {
            nan_seen_ = std::isnan(margin);
            report_.worst_margin = margin;
            Witness w = make_witness();
            w.what = std::string(what);
            report_.witness = std::move(w);
        }
    }

    void skip() { ++report_.skipped; }

    /// Finalizes the status: no checked samples means inconclusive.
    CheckReport finish(std::string note = {}) && {
        if (report_.checked == 0) {
            report_.status = CheckStatus::inconclusive;
        } else {
            report_.status = report_.violations == 0 ? CheckStatus::pass : CheckStatus::fail;
        }
        if (!note.empty()) report_.note = std::move(note);
        return std::move(report_);
    }

    const CheckReport& current() const noexcept { return report_; }

private:
    void bump(std::string_view what) {
        for (auto& [k, n] : report_.breakdown) {
            if (k == what) {
                ++n;
                return;
            }
        }
        report_.breakdown.emplace_back(std::string(what), 1);
    }

    CheckReport report_;
    bool nan_seen_ = false;
};

}  // namespace enrichfp
