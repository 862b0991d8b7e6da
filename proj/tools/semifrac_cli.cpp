#include "semifrac/density.hpp"
#include "semifrac/duality.hpp"
#include "semifrac/io.hpp"
#include "semifrac/parallel.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <iostream>
#include <optional>

using namespace semifrac;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitChecksFailed = 1;
constexpr int kExitDomain = 2;
constexpr int kExitNumerical = 3;

struct RunConfig {
    std::string spec_path;
    std::string out_path;
    std::string tol_path;
    int threads = 1;

    SemistableSpec spec() const { return spec_path.empty() ? default_demo_spec() : load_spec(spec_path); }
    ToleranceManifest tolerances() const {
        return tol_path.empty() ? ToleranceManifest::defaults() : ToleranceManifest::load(tol_path);
    }
    void validate() const {
        if (threads < 1) throw DomainError("--threads must be >= 1");
    }
};

void emit(const RunConfig& cfg, const std::string& content) {
    if (cfg.out_path.empty()) {
        std::cout << content;
        std::cout.flush();
    } else {
        write_text_file(cfg.out_path, content);
    }
}

// runtime and environment go next to the data file, never into it
void write_sidecar(const RunConfig& cfg, const std::string& command, double seconds, nlohmann::json extra = {}) {
    if (cfg.out_path.empty()) return;
    nlohmann::json meta{{"command", command}, {"threads", cfg.threads}, {"runtime_seconds", seconds}};
    if (!extra.is_null()) meta["checks"] = std::move(extra);
    write_text_file(cfg.out_path + ".meta.json", meta.dump(2) + "\n");
}

/// Rows computed independently; a row that throws is kept with NaN values and flagged.
struct RowTable {
    std::vector<std::vector<double>> rows;
    std::vector<char> failed;
    std::string first_error;

    bool any_failed() const { return std::find(failed.begin(), failed.end(), 1) != failed.end(); }

    std::string csv(const std::string& header) const {
        const bool flag = any_failed();
        std::string out = header + (flag ? ",failed\n" : "\n");
        for (std::size_t k = 0; k < rows.size(); ++k) {
            for (std::size_t c = 0; c < rows[k].size(); ++c) out += (c ? "," : "") + format_double(rows[k][c]);
            if (flag) out += failed[k] ? ",1" : ",0";
            out += "\n";
        }
        return out;
    }
};

template <class Fn>
RowTable compute_rows(std::size_t n, std::size_t width, int threads, Fn&& fn) {
    RowTable t;
    t.rows.assign(n, std::vector<double>(width, std::nan("")));
    t.failed.assign(n, 0);
    std::vector<std::string> errors(n);
    parallel_for(n, threads, [&](std::size_t k) {
        try {
            fn(k, t.rows[k]);
        } catch (const DomainError&) {
            throw;
        } catch (const std::exception& e) {
            t.failed[k] = 1;
            errors[k] = e.what();
        }
    });
    for (const auto& e : errors)
        if (!e.empty()) {
            t.first_error = e;
            break;
        }
    return t;
}

int finish_rows(const RunConfig& cfg, const std::string& command, const RowTable& table, const std::string& header,
                std::chrono::steady_clock::time_point start) {
    emit(cfg, table.csv(header));
    write_sidecar(cfg, command, std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
    if (table.any_failed()) {
        std::cerr << command << ": numerical failure: " << table.first_error << "\n";
        return kExitNumerical;
    }
    return kExitOk;
}

using Clock = std::chrono::steady_clock;

int cmd_density(const RunConfig& cfg, const std::string& x_text, const std::string& t_text) {
    const auto xs = parse_grid(x_text);
    const auto ts = parse_grid(t_text);
    for (double t : ts)
        if (!(t > 0.0)) throw DomainError("density: times must be positive");
    const CharExponent ce(cfg.spec());
    const auto start = Clock::now();
    const auto table = compute_rows(xs.size() * ts.size(), 3, cfg.threads, [&](std::size_t k, std::vector<double>& row) {
        const double x = xs[k / ts.size()];
        const double t = ts[k % ts.size()];
        row[0] = x;
        row[1] = t;
        row[2] = semistable_density(ce, x, t);
    });
    return finish_rows(cfg, "density", table, "x,t,value", start);
}

int cmd_figure1(const RunConfig& cfg, double alpha, double t0, const std::string& mode, double x_max) {
    if (!(alpha > 1.0 && alpha < 2.0)) throw DomainError("figure1: --alpha must lie in (1,2)");
    const auto start = Clock::now();
    const auto rows = figure1_rows(alpha, t0, mode == "fine" ? Figure1Mode::Fine : Figure1Mode::Coarse, x_max,
                                   cfg.threads);
    std::string out = "x,p,h,ratio\n";
    for (const auto& r : rows)
        out += format_double(r.x) + "," + format_double(r.p) + "," + format_double(r.h) + "," + format_double(r.ratio) +
               "\n";
    emit(cfg, out);
    write_sidecar(cfg, "figure1", std::chrono::duration<double>(Clock::now() - start).count());
    return kExitOk;
}

int cmd_xi_table(const RunConfig& cfg, const std::string& s_text) {
    const auto ss = parse_grid(s_text);
    for (double s : ss)
        if (!(s > 0.0)) throw DomainError("xi-table: s values must be positive");
    const LaplaceSystem ls{CharExponent(cfg.spec())};
    const auto start = Clock::now();
    const auto table = compute_rows(ss.size(), 5, cfg.threads, [&](std::size_t k, std::vector<double>& row) {
        const double s = ss[k];
        const double y = std::log(s);
        row = {s, ls.xi(s), ls.g(y), ls.f(s), ls.gamma(y)};
    });
    return finish_rows(cfg, "xi-table", table, "s,xi,g_of_log_s,f,gamma_of_log_s", start);
}

int cmd_spectrum(const RunConfig& cfg, int n_max) {
    if (n_max < 0) throw DomainError("spectrum: --n-max must be >= 0");
    const auto start = Clock::now();
    const auto sr = extract_spectrum(LaplaceSystem(CharExponent(cfg.spec())), n_max);
    emit(cfg, spectrum_to_json(sr).dump(2) + "\n");
    write_sidecar(cfg, "spectrum", std::chrono::duration<double>(Clock::now() - start).count());
    return kExitOk;
}

int cmd_residuals(const RunConfig& cfg, const std::string& kind, const std::string& x_text, const std::string& t_text,
                  double dt) {
    const auto xs = parse_grid(x_text);
    const auto ts = parse_grid(t_text);
    const auto tol = cfg.tolerances();
    const CharExponent ce(cfg.spec());
    const auto start = Clock::now();
    if (kind == "space") {
        SpaceResidualOptions opts;
        opts.tolerance = tol.value("space_residual");
        for (double t : ts)
            if (!(t > 0.0)) throw DomainError("residuals: times must be positive");
        const auto table = compute_rows(xs.size() * ts.size(), 5, cfg.threads, [&](std::size_t k, std::vector<double>& row) {
            const auto r = residual_semifrac_space(ce, xs[k / ts.size()], ts[k % ts.size()], opts);
            row = {r.x, r.t, r.residual, r.scale, r.tolerance};
        });
        return finish_rows(cfg, "residuals", table, "x,t,residual,scale,tolerance", start);
    }
    const auto spectrum = extract_spectrum(LaplaceSystem(ce));
    TimeResidualOptions opts;
    opts.dt = dt;
    opts.dx = 5.0 * dt;
    opts.tolerance = tol.value("semi_duality");
    for (double x : xs)
        if (!(x > opts.dx)) throw DomainError("residuals: time residuals need x > 5 dt");
    // one row per (x, t); each x builds its own time series
    std::vector<std::vector<ResidualReport>> per_x(xs.size());
    const auto table = compute_rows(xs.size(), 1, cfg.threads, [&](std::size_t i, std::vector<double>&) {
        per_x[i] = residual_semifrac_time(ce, spectrum, xs[i], ts, opts);
    });
    RowTable flat;
    for (std::size_t i = 0; i < xs.size(); ++i)
        for (std::size_t j = 0; j < ts.size(); ++j) {
            if (table.failed[i]) {
                flat.rows.push_back({xs[i], ts[j], std::nan(""), std::nan(""), opts.tolerance});
                flat.failed.push_back(1);
            } else {
                const auto& r = per_x[i][j];
                flat.rows.push_back({r.x, r.t, r.residual, r.scale, r.tolerance});
                flat.failed.push_back(0);
            }
        }
    flat.first_error = table.first_error;
    return finish_rows(cfg, "residuals", flat, "x,t,residual,scale,tolerance", start);
}

int cmd_verify(const RunConfig& cfg, const std::string& points_csv) {
    const auto spec = cfg.spec();
    const auto tol = cfg.tolerances();
    const auto start = Clock::now();
    std::vector<DualityReport> reports;
    std::string failure;
    try {
        reports = run_all_checks(spec, tol, cfg.threads);
    } catch (const DomainError&) {
        throw;
    } catch (const std::exception& e) {
        failure = e.what();
    }
    nlohmann::json out = nlohmann::json::array();
    nlohmann::json runtimes = nlohmann::json::object();
    bool all_passed = failure.empty();
    for (const auto& r : reports) {
        out.push_back(report_to_json(r));
        runtimes[r.name] = r.runtime;
        all_passed = all_passed && r.passed;
    }
    if (!failure.empty()) out.push_back({{"name", "failure"}, {"passed", false}, {"error", failure}});
    emit(cfg, out.dump(2) + "\n");
    if (!points_csv.empty()) write_text_file(points_csv, reports_to_csv(reports));
    write_sidecar(cfg, "verify", std::chrono::duration<double>(Clock::now() - start).count(), runtimes);
    for (const auto& r : reports)
        std::cerr << (r.passed ? "PASS " : "FAIL ") << r.name << "  max_rel_error=" << format_double(r.max_rel_error)
                  << "  tolerance=" << format_double(r.tolerance) << "\n";
    if (!failure.empty()) {
        std::cerr << "verify: numerical failure: " << failure << "\n";
        return kExitNumerical;
    }
    return all_passed ? kExitOk : kExitChecksFailed;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Semistable densities, Laplace systems and space-time duality checks"};
    app.require_subcommand(1);
    app.fallthrough();
    RunConfig cfg;
    app.add_option("--spec", cfg.spec_path, "SemistableSpec JSON (default: alpha 1.5, c 100, eps 0.2 cosine spec)");
    app.add_option("--out", cfg.out_path, "Output file (default: stdout)");
    app.add_option("--threads", cfg.threads, "Worker threads; 1 runs serially")->default_val(1);
    app.add_option("--tol-manifest", cfg.tol_path, "Tolerance manifest JSON (default: the built-in one)");

    std::string x_grid = "0";
    std::string t_grid = "1";
    auto* density = app.add_subcommand("density", "Semistable density on an x-t grid; CSV x,t,value");
    density->add_option("--x", x_grid, "x grid: list, lin:a:b:n or log:a:b:n")->default_val("0");
    density->add_option("--t", t_grid, "t grid")->default_val("1");

    double alpha = 1.5;
    double t0 = 3.5;
    double x_max = 4.0;
    std::string mode = "coarse";
    auto* figure1 = app.add_subcommand("figure1", "Transport solution against the stable density; CSV x,p,h,ratio");
    figure1->add_option("--alpha", alpha, "Stability index in (1,2)")->default_val(1.5);
    figure1->add_option("--t0", t0, "Time of the snapshot")->default_val(3.5);
    figure1->add_option("--x-max", x_max, "Right end of the x range")->default_val(4.0);
    figure1->add_option("--mode", mode, "coarse (dx 0.1, exact inflow) or fine (dx 1/80, point source)")
        ->check(CLI::IsMember({"coarse", "fine"}))
        ->default_val("coarse");

    std::string s_grid;
    auto* xi_table = app.add_subcommand("xi-table", "Laplace system on an s grid; CSV s,xi,g_of_log_s,f,gamma_of_log_s");
    xi_table->add_option("--s", s_grid, "s grid")->default_val("log:1e-3:1e3:61");

    int n_max = 16;
    auto* spectrum = app.add_subcommand("spectrum", "Fourier data of g and gamma with the tau and rho kernels; JSON");
    spectrum->add_option("--n-max", n_max, "Highest harmonic")->default_val(16);

    std::string kind = "space";
    std::string rx_grid;
    std::string rt_grid;
    double dt = 1e-3;
    auto* residuals = app.add_subcommand("residuals", "Residuals of the semi-fractional equations; CSV x,t,residual,scale,tolerance");
    residuals->add_option("--kind", kind, "space (dp/dt - L p) or time (semi-fractional Caputo of h plus dh/dx)")
        ->check(CLI::IsMember({"space", "time"}))
        ->default_val("space");
    residuals->add_option("--x", rx_grid, "x grid (default -1,0,1 for space, 0.5,1,2 for time)");
    residuals->add_option("--t", rt_grid, "t grid (default 1 for space, 1,2,4 for time)");
    residuals->add_option("--dt", dt, "Time step of the time residual")->default_val(1e-3);

    std::string points_csv;
    auto* verify = app.add_subcommand("verify", "Run every duality suite; JSON array of reports, exit 0 iff all pass");
    verify->add_option("--points-csv", points_csv, "Also write per-point CSV here");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitDomain;
    }

    try {
        cfg.validate();
        if (!cfg.spec_path.empty()) (void)cfg.spec();
        if (!cfg.tol_path.empty()) (void)cfg.tolerances();
        if (*density) return cmd_density(cfg, x_grid, t_grid);
        if (*figure1) return cmd_figure1(cfg, alpha, t0, mode, x_max);
        if (*xi_table) return cmd_xi_table(cfg, s_grid);
        if (*spectrum) return cmd_spectrum(cfg, n_max);
        if (*residuals) {
            if (rx_grid.empty()) rx_grid = kind == "space" ? "-1,0,1" : "0.5,1,2";
            if (rt_grid.empty()) rt_grid = kind == "space" ? "1" : "1,2,4";
            return cmd_residuals(cfg, kind, rx_grid, rt_grid, dt);
        }
        if (*verify) return cmd_verify(cfg, points_csv);
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitDomain;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return kExitNumerical;
    }
    return kExitDomain;
}
