#pragma once

#include "semifrac/pde.hpp"

#include <json.hpp>

#include <map>
#include <string>
#include <vector>

namespace semifrac {

/// Per-check tolerances with the reasoning behind each value.
class ToleranceManifest {
public:
    struct Entry {
        double value = 0.0;
        nlohmann::json extra;
        std::string derivation;
    };

    /// The manifest committed with the library (config/tolerances.json).
    static ToleranceManifest defaults();
    static ToleranceManifest from_json(const nlohmann::json& j);
    static ToleranceManifest load(const std::string& path);

    double value(const std::string& name) const;
    const Entry& entry(const std::string& name) const;
    const std::map<std::string, Entry>& entries() const noexcept { return entries_; }

private:
    std::map<std::string, Entry> entries_;
};

/// One row of a check: the two sides being compared at (x, y), y being t or s.
struct PointRecord {
    double x = 0.0;
    double y = 0.0;
    double lhs = 0.0;
    double rhs = 0.0;
    double rel_error = 0.0;
};

struct DualityReport {
    std::string name;
    std::string grid;
    /// "t" or "s": the meaning of the second coordinate
    std::string second_axis = "t";
    double max_rel_error = 0.0;
    double worst_x = 0.0;
    double worst_y = 0.0;
    double tolerance = 0.0;
    bool passed = false;
    double runtime = 0.0;
    std::vector<PointRecord> points;
    /// control measurements and other diagnostics
    nlohmann::json details = nlohmann::json::object();
};

/// g(x; alpha, -1, (|cos(alpha pi/2)| t)^{1/alpha}, 0) against
/// t x^{-1-alpha} g(t x^{-alpha}; 1/alpha, 1, |cos(pi/(2 alpha))|^alpha, 0), relative to the left side.
/// alpha = 2 takes the Gaussian closed form for the left side.
DualityReport check_zolotarev(double alpha, const std::vector<double>& x_grid, const std::vector<double>& t_grid,
                              const ToleranceManifest& tol, int threads = 1);

struct SpaceTimeOptions {
    double t0 = 3.5;
    /// fine grid step; the ratio is checked on [0, fine_x_max]
    double fine_dx = 0.0125;
    double fine_x_max = 2.0;
    /// coarse grid with the exact inflow at x = 0, checked at coarse_x_max
    double coarse_dx = 0.1;
    double coarse_x_max = 4.0;
};

/// Fine-grid agreement of the transport solver with alpha p, and the coarse-grid drift
/// of h/(alpha p) at the right end. Returns {fine, coarse}.
std::vector<DualityReport> check_space_time(double alpha, const ToleranceManifest& tol, const SpaceTimeOptions& opts = {},
                                            int threads = 1);

enum class Figure1Mode { Coarse, Fine };

struct Figure1Row {
    double x = 0.0;
    double p = 0.0;
    double h = 0.0;
    /// h / p, alpha in the exact case
    double ratio = 0.0;
};

/// Transport solution h(x, t0) next to the stable density p(x, t0) on [0, x_max].
/// Coarse: dx = 0.1 with exact inflow at x = 0. Fine: point source with dx = 1/80.
std::vector<Figure1Row> figure1_rows(double alpha, double t0, Figure1Mode mode, double x_max = 4.0, int threads = 1);

/// lt_numeric of the semistable density against lt_closed_form, plus the f := 0 control.
DualityReport check_lt_identity(const SemistableSpec& spec, const std::vector<double>& x_grid,
                                const std::vector<double>& s_grid, const ToleranceManifest& tol, int threads = 1);

struct SemiDualityOptions {
    double dt = 1e-3;
    double dx = 5e-3;
};

/// Time-side residual of h = alpha p with the spectrum's tau kernel, its refinement under halved steps,
/// and the stable-kernel control. The tau/rho admissibility reports are attached but never gate.
DualityReport check_semi_duality(const SemistableSpec& spec, const std::vector<double>& x_grid,
                                 const std::vector<double>& t_grid, const ToleranceManifest& tol,
                                 const SemiDualityOptions& opts = {}, int threads = 1);

/// All suites for one spec, in a fixed order.
std::vector<DualityReport> run_all_checks(const SemistableSpec& spec, const ToleranceManifest& tol, int threads = 1);

/// JSON form; runtime is left out unless requested so that data files stay reproducible.
nlohmann::json report_to_json(const DualityReport& r, bool include_runtime = false);
/// CSV rows name,x,<axis>,lhs,rhs,rel_error for every point.
std::string reports_to_csv(const std::vector<DualityReport>& reports);

} // namespace semifrac
