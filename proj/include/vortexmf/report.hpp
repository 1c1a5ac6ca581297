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


#pragma once

#include "vortexmf/config.hpp"
#include "vortexmf/diagnostics.hpp"
#include "vortexmf/harness.hpp"

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

namespace vortexmf {

/// Identifier of this build (git describe style).
std::string build_id();

/// Round-trip decimal form used in every CSV ("%.17g"); "nan" and "inf" spelled out.
std::string format_double(double v);

/// Columns appended to every report row.
struct Provenance {
    std::size_t n = 0;
    std::size_t realizations = 0;
    std::uint64_t seed = 0;
};

/// Minimal CSV writer: one header, then rows; each row gets the provenance columns.
class CsvWriter {
public:
    /// Throws Error if the file cannot be created.
    CsvWriter(const std::filesystem::path &path, std::vector<std::string> header, Provenance prov,
              bool with_rid = false);
    /// Throws DomainError on a column count mismatch.
    void row(const std::vector<std::string> &cells, std::uint32_t rid = 0);
    /// N written on subsequent rows.
    void set_n(std::size_t n) { prov_.n = n; }

private:
    std::ofstream out_;
    Provenance prov_;
    bool with_rid_;
    std::size_t columns_;
};

void write_diagnostics_csv(const std::filesystem::path &path, const std::vector<DiagnosticsRecord> &records,
                           const DiagnosticsConfig &config, Provenance prov, std::uint32_t rid);

void write_pde_modes_csv(const std::filesystem::path &path, const std::vector<double> &times,
                         const std::vector<Mode> &modes, const std::vector<std::vector<double>> &values,
                         Provenance prov);

void write_entropy_csv(const std::filesystem::path &path, const EntropyReport &rep, std::uint64_t seed);

void write_moments_csv(const std::filesystem::path &path, const MomentReport &rep, const std::vector<int> &lags,
                       std::uint64_t seed);

/// convergence.csv, martingale.csv and hamiltonian.csv for a ladder run.
void write_ladder_csvs(const std::filesystem::path &dir, const LadderReport &rep, const ExperimentConfig &config);

/// One pass/fail line of summary.csv.
struct SummaryRow {
    std::string check;
    double value = 0.0;
    double threshold = 0.0;
    bool pass = false;
    /// N the check refers to; 0 takes the file's provenance N.
    std::size_t n = 0;
};

void write_summary_csv(const std::filesystem::path &path, const std::vector<SummaryRow> &rows,
                       Provenance prov);

/// Summary checks of a ladder run (monotone error, martingale decay and bound,
/// Hamiltonian growth and t = 0 oracle, concentration).
std::vector<SummaryRow> ladder_checks(const LadderReport &rep, bool with_pde);

struct PlotSeries {
    std::string name;
    std::vector<double> x, y;
};

/// Line plot with markers as a standalone SVG. Log axes drop non-positive points.
void write_svg_plot(const std::filesystem::path &path, const std::string &title, const std::string &xlabel,
                    const std::string &ylabel, const std::vector<PlotSeries> &series, bool logx, bool logy);

/// plots/*.svg for a ladder run.
void write_ladder_plots(const std::filesystem::path &dir, const LadderReport &rep);

} // namespace vortexmf
