/*
   Copyright 2026 The vortexmf Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/


#include "vortexmf/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

#ifndef VORTEXMF_BUILD_ID
#define VORTEXMF_BUILD_ID "unknown"
#endif

namespace vortexmf {

std::string build_id() { return VORTEXMF_BUILD_ID; }

std::string format_double(double v)
{
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace {

std::string short_number(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

std::string join(const std::vector<std::string> &cells)
{
    std::string s;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) s += ',';
        s += cells[i];
    }
    return s;
}

} // namespace

CsvWriter::CsvWriter(const std::filesystem::path &path, std::vector<std::string> header, Provenance prov,
                     bool with_rid)
    : prov_(prov), with_rid_(with_rid), columns_(header.size())
{
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    out_.open(path, std::ios::binary);
    if (!out_) throw Error("cannot write " + path.string());
    header.insert(header.end(), {"N", "R"});
    if (with_rid_) header.push_back("rid");
    header.insert(header.end(), {"seed", "build"});
    out_ << join(header) << '\n';
}

void CsvWriter::row(const std::vector<std::string> &cells, std::uint32_t rid)
{
    if (cells.size() != columns_) throw DomainError("csv: column count mismatch");
    std::vector<std::string> all = cells;
    all.push_back(std::to_string(prov_.n));
    all.push_back(std::to_string(prov_.realizations));
    if (with_rid_) all.push_back(std::to_string(rid));
    all.push_back(std::to_string(prov_.seed));
    all.push_back(build_id());
    out_ << join(all) << '\n';
}

void write_diagnostics_csv(const std::filesystem::path &path, const std::vector<DiagnosticsRecord> &records,
                           const DiagnosticsConfig &config, Provenance prov, std::uint32_t rid)
{
    const std::vector<Mode> modes = modes_in_disk(config.mode_radius);
    std::vector<std::string> header{"t"};
    for (Mode k : modes) header.push_back("mode_" + mode_label(k));
    header.insert(header.end(), {"H_N", "energy", "hnorm_s" + short_number(config.sobolev_s),
                                 "conc_r" + short_number(config.concentration_r)});
    for (Mode k : config.martingale_modes) header.push_back("M_" + mode_label(k));
    for (Mode k : config.martingale_modes) header.push_back("Msup_" + mode_label(k));
    for (Mode k : config.martingale_modes) header.push_back("qv_" + mode_label(k));
    header.push_back("min_dist");
    CsvWriter csv(path, header, prov, true);
    for (const DiagnosticsRecord &r : records) {
        std::vector<std::string> c{format_double(r.time)};
        for (double v : r.modes) c.push_back(format_double(v));
        c.push_back(format_double(r.hamiltonian));
        c.push_back(format_double(r.energy));
        c.push_back(format_double(r.hnorm));
        c.push_back(format_double(r.concentration));
        for (std::size_t q = 0; q < config.martingale_modes.size(); ++q) c.push_back(format_double(r.martingale[q]));
        for (std::size_t q = 0; q < config.martingale_modes.size(); ++q)
            c.push_back(format_double(r.martingale_sup[q]));
        for (std::size_t q = 0; q < config.martingale_modes.size(); ++q)
            c.push_back(q < r.qv.size() ? format_double(r.qv[q]) : "nan");
        c.push_back(format_double(r.min_distance));
        csv.row(c, rid);
    }
}

void write_pde_modes_csv(const std::filesystem::path &path, const std::vector<double> &times,
                         const std::vector<Mode> &modes, const std::vector<std::vector<double>> &values,
                         Provenance prov)
{
    std::vector<std::string> header{"t"};
    for (Mode k : modes) header.push_back("mode_" + mode_label(k));
    CsvWriter csv(path, header, prov);
    for (std::size_t t = 0; t < times.size(); ++t) {
        std::vector<std::string> c{format_double(times[t])};
        for (double v : values[t]) c.push_back(format_double(v));
        csv.row(c);
    }
}

void write_entropy_csv(const std::filesystem::path &path, const EntropyReport &rep, std::uint64_t seed)
{
    CsvWriter csv(path, {"t", "h2_hat", "samples", "bins", "oracle"}, {rep.n, rep.realizations, seed});
    for (std::size_t t = 0; t < rep.times.size(); ++t)
        csv.row({format_double(rep.times[t]), format_double(rep.h2[t]), std::to_string(rep.samples[t]),
                 std::to_string(rep.bins), format_double(rep.oracle)});
}

void write_moments_csv(const std::filesystem::path &path, const MomentReport &rep, const std::vector<int> &lags,
                       std::uint64_t seed)
{
    CsvWriter csv(path, {"mode", "lag", "moment4", "se", "slope"}, {rep.n, rep.seeds, seed});
    for (std::size_t m = 0; m < rep.modes.size(); ++m)
        for (std::size_t l = 0; l < lags.size(); ++l)
            csv.row({mode_label(rep.modes[m]), std::to_string(lags[l]), format_double(rep.scans[m].moments[l]),
                     format_double(rep.scans[m].std_errors[l]), format_double(rep.scans[m].slope)});
}

void write_ladder_csvs(const std::filesystem::path &dir, const LadderReport &rep, const ExperimentConfig &config)
{
    std::filesystem::create_directories(dir);
    const std::size_t r = config.realizations;
    for (const LadderEntry &e : rep.entries) {
        const Provenance prov{e.n, r, config.seed};
        const std::string suffix = "_N" + std::to_string(e.n) + ".csv";
        if (!e.rms.empty()) {
            std::vector<std::string> header{"t"};
            for (Mode k : rep.modes) header.push_back("rms_" + mode_label(k));
            CsvWriter csv(dir / ("convergence" + suffix), header, prov);
            for (std::size_t t = 0; t < rep.times.size(); ++t) {
                std::vector<std::string> c{format_double(rep.times[t])};
                for (double v : e.rms[t]) c.push_back(format_double(v));
                csv.row(c);
            }
        }
        if (!e.hamiltonian.empty()) {
            CsvWriter csv(dir / ("hamiltonian" + suffix), {"t", "H_mean", "H_se", "oracle_t0"}, prov);
            for (std::size_t t = 0; t < rep.times.size(); ++t)
                csv.row({format_double(rep.times[t]), format_double(e.hamiltonian[t].mean),
                         format_double(e.hamiltonian[t].se), format_double(e.hamiltonian_oracle)});
        }
    }
    CsvWriter csv(dir / "ladder.csv",
                  {"N_ladder", "completed", "rms", "rms_se", "msup2", "msup2_se", "msup2_bound", "H_t0",
                   "H_max", "H_oracle", "conc_checked", "conc_held"},
                  {0, r, config.seed});
    for (const LadderEntry &e : rep.entries) {
        double hmax = NAN;
        for (const MeanSe &h : e.hamiltonian) hmax = std::isnan(hmax) ? h.mean : std::max(hmax, h.mean);
        MeanSe m = e.martingale_sup2.empty() ? MeanSe{NAN, NAN} : e.martingale_sup2.front();
        csv.row({std::to_string(e.n), std::to_string(e.completed),
                 format_double(e.rms.empty() ? NAN : e.aggregate.mean),
                 format_double(e.rms.empty() ? NAN : e.aggregate.se), format_double(m.mean), format_double(m.se),
                 format_double(rep.martingale_bound),
                 format_double(e.hamiltonian.empty() ? NAN : e.hamiltonian.front().mean), format_double(hmax),
                 format_double(e.hamiltonian_oracle), std::to_string(e.concentration_checked),
                 std::to_string(e.concentration_held)});
    }
}

void write_summary_csv(const std::filesystem::path &path, const std::vector<SummaryRow> &rows, Provenance prov)
{
    CsvWriter csv(path, {"check", "value", "threshold", "pass"}, prov);
    for (const SummaryRow &r : rows) {
        csv.set_n(r.n ? r.n : prov.n);
        csv.row({r.check, format_double(r.value), format_double(r.threshold), r.pass ? "1" : "0"});
    }
}

std::vector<SummaryRow> ladder_checks(const LadderReport &rep, bool with_pde)
{
    std::vector<SummaryRow> rows;
    std::vector<double> rms, rms_se, mart, mart_se;
    for (const LadderEntry &e : rep.entries) {
        const std::string tag = "_N" + std::to_string(e.n);
        rows.push_back({"complete" + tag, double(e.completed), double(e.completed), e.complete, e.n});
        rms.push_back(e.aggregate.mean);
        rms_se.push_back(e.aggregate.se);
        if (!e.martingale_sup2.empty()) {
            const MeanSe &m = e.martingale_sup2.front();
            mart.push_back(m.mean);
            mart_se.push_back(m.se);
            rows.push_back({"martingale_bound" + tag, m.mean, rep.martingale_bound, m.mean <= rep.martingale_bound, e.n});
        }
        if (!e.hamiltonian.empty()) {
            double h0 = e.hamiltonian.front().mean, hmax = h0;
            for (const MeanSe &h : e.hamiltonian) hmax = std::max(hmax, h.mean);
            double growth = hmax / h0;
            rows.push_back({"hamiltonian_growth" + tag, growth, 2.0, growth <= 2.0, e.n});
            double rel = std::abs(h0 - e.hamiltonian_oracle) / std::abs(e.hamiltonian_oracle);
            rows.push_back({"hamiltonian_t0_oracle" + tag, rel, 0.05, rel <= 0.05, e.n});
        }
        if (e.concentration_checked > 0) {
            double frac = double(e.concentration_held) / double(e.concentration_checked);
            rows.push_back({"concentration" + tag, frac, 1.0, e.concentration_held == e.concentration_checked,
                            e.n});
        }
    }
    // Ladder-wide checks are tagged with the largest N.
    const std::size_t top = rep.entries.empty() ? 0 : rep.entries.back().n;
    if (with_pde && rep.entries.size() > 1)
        rows.push_back({"rms_decreasing", rms.back() / rms.front(), 1.0, decreasing_within_se(rms, rms_se), top});
    if (mart.size() > 1)
        rows.push_back({"martingale_decreasing", mart.back() / mart.front(), 1.0, decreasing_within_se(mart, mart_se),
                        top});
    return rows;
}

void write_svg_plot(const std::filesystem::path &path, const std::string &title, const std::string &xlabel,
                    const std::string &ylabel, const std::vector<PlotSeries> &series, bool logx, bool logy)
{
    const double w = 640, h = 420, ml = 80, mr = 150, mt = 40, mb = 60;
    auto tx = [&](double v) { return logx ? std::log10(v) : v; };
    auto ty = [&](double v) { return logy ? std::log10(v) : v; };
    auto usable = [&](double x, double y) {
        return std::isfinite(x) && std::isfinite(y) && (!logx || x > 0) && (!logy || y > 0);
    };
    double x0 = INFINITY, x1 = -INFINITY, y0 = INFINITY, y1 = -INFINITY;
    for (const PlotSeries &s : series)
        for (std::size_t i = 0; i < s.x.size(); ++i)
            if (usable(s.x[i], s.y[i])) {
                x0 = std::min(x0, tx(s.x[i]));
                x1 = std::max(x1, tx(s.x[i]));
                y0 = std::min(y0, ty(s.y[i]));
                y1 = std::max(y1, ty(s.y[i]));
            }
    if (!std::isfinite(x0)) x0 = 0, x1 = 1, y0 = 0, y1 = 1;
    if (x1 == x0) x0 -= 0.5, x1 += 0.5;
    if (y1 == y0) y0 -= 0.5, y1 += 0.5;
    const double padx = 0.05 * (x1 - x0), pady = 0.08 * (y1 - y0);
    x0 -= padx, x1 += padx, y0 -= pady, y1 += pady;
    auto px = [&](double v) { return ml + (tx(v) - x0) / (x1 - x0) * (w - ml - mr); };
    auto py = [&](double v) { return h - mb - (ty(v) - y0) / (y1 - y0) * (h - mt - mb); };

    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path.string());
    char buf[256];
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"420\" font-family=\"sans-serif\" "
           "font-size=\"12\">\n";
    out << "<rect width=\"640\" height=\"420\" fill=\"white\"/>\n";
    out << "<text x=\"" << w / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"14\">" << title << "</text>\n";
    std::snprintf(buf, sizeof buf, "<rect x=\"%g\" y=\"%g\" width=\"%g\" height=\"%g\" fill=\"none\" stroke=\"black\"/>\n",
                  ml, mt, w - ml - mr, h - mt - mb);
    out << buf;
    for (int i = 0; i <= 4; ++i) {
        double u = x0 + (x1 - x0) * i / 4.0, v = y0 + (y1 - y0) * i / 4.0;
        double xv = logx ? std::pow(10.0, u) : u, yv = logy ? std::pow(10.0, v) : v;
        double sx = ml + i / 4.0 * (w - ml - mr), sy = h - mb - i / 4.0 * (h - mt - mb);
        std::snprintf(buf, sizeof buf, "<text x=\"%g\" y=\"%g\" text-anchor=\"middle\">%.3g</text>\n", sx, h - mb + 16,
                      xv);
        out << buf;
        std::snprintf(buf, sizeof buf, "<text x=\"%g\" y=\"%g\" text-anchor=\"end\">%.3g</text>\n", ml - 6, sy + 4, yv);
        out << buf;
    }
    out << "<text x=\"" << ml + (w - ml - mr) / 2 << "\" y=\"" << h - 20 << "\" text-anchor=\"middle\">" << xlabel
        << "</text>\n";
    out << "<text x=\"18\" y=\"" << mt + (h - mt - mb) / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 18 "
        << mt + (h - mt - mb) / 2 << ")\">" << ylabel << "</text>\n";
    static const char *colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};
    for (std::size_t s = 0; s < series.size(); ++s) {
        const char *col = colors[s % 6];
        std::string pts;
        for (std::size_t i = 0; i < series[s].x.size(); ++i) {
            if (!usable(series[s].x[i], series[s].y[i])) continue;
            std::snprintf(buf, sizeof buf, "%.2f,%.2f ", px(series[s].x[i]), py(series[s].y[i]));
            pts += buf;
            std::snprintf(buf, sizeof buf, "<circle cx=\"%.2f\" cy=\"%.2f\" r=\"3\" fill=\"%s\"/>\n",
                          px(series[s].x[i]), py(series[s].y[i]), col);
            out << buf;
        }
        out << "<polyline fill=\"none\" stroke=\"" << col << "\" points=\"" << pts << "\"/>\n";
        double ly = mt + 16 + 18 * double(s);
        std::snprintf(buf, sizeof buf, "<line x1=\"%g\" y1=\"%g\" x2=\"%g\" y2=\"%g\" stroke=\"%s\"/>\n", w - mr + 10,
                      ly, w - mr + 30, ly, col);
        out << buf << "<text x=\"" << w - mr + 36 << "\" y=\"" << ly + 4 << "\">" << series[s].name << "</text>\n";
    }
    out << "</svg>\n";
}

void write_ladder_plots(const std::filesystem::path &dir, const LadderReport &rep)
{
    const std::filesystem::path plots = dir / "plots";
    PlotSeries rms{"RMS error", {}, {}}, mart{"E sup M^2", {}, {}}, ref{"c / sqrt(N)", {}, {}};
    std::vector<PlotSeries> ham;
    for (const LadderEntry &e : rep.entries) {
        rms.x.push_back(double(e.n));
        rms.y.push_back(e.aggregate.mean);
        if (!e.martingale_sup2.empty()) {
            mart.x.push_back(double(e.n));
            mart.y.push_back(e.martingale_sup2.front().mean);
        }
        if (!e.hamiltonian.empty()) {
            PlotSeries s{"N = " + std::to_string(e.n), rep.times, {}};
            for (const MeanSe &h : e.hamiltonian) s.y.push_back(h.mean);
            ham.push_back(std::move(s));
        }
    }
    if (!rep.pde.empty() && !rms.x.empty()) {
        for (double n : rms.x) {
            ref.x.push_back(n);
            ref.y.push_back(rms.y.front() * std::sqrt(rms.x.front() / n));
        }
        write_svg_plot(plots / "error_vs_N.svg", "Low-mode RMS error against the PDE", "N", "RMS error", {rms, ref},
                       true, true);
    }
    if (!mart.x.empty())
        write_svg_plot(plots / "martingale_vs_N.svg", "Martingale second moment", "N", "E sup |M|^2", {mart}, true,
                       true);
    if (!ham.empty())
        write_svg_plot(plots / "hamiltonian_vs_t.svg", "Mean Hamiltonian", "t", "E H_N", ham, false, false);
}

} // namespace vortexmf
