#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "rmtcorr/calendar.hpp"
#include "rmtcorr/corrmat.hpp"
#include "rmtcorr/grid.hpp"
#include "rmtcorr/ingest.hpp"
#include "rmtcorr/normality.hpp"
#include "rmtcorr/returns.hpp"
#include "rmtcorr/spectral.hpp"

#include <json.hpp>

namespace rmtcorr::io {

// All floating-point output goes through 9-significant-digit formatting so
// runs are byte-reproducible and comparable across languages.
[[nodiscard]] std::string format_g9(double v);

// Quantizes v to the double nearest its 9-significant-digit decimal form;
// applied to every number placed in JSON documents.
[[nodiscard]] double sig9(double v);

// Splits one CSV record; supports double-quoted fields with "" escapes.
[[nodiscard]] std::vector<std::string> split_csv_line(const std::string& line);

struct ReturnsTable {
    std::vector<Date> dates;
    std::vector<std::string> symbols;
    Grid<double> values;
};

// date,<sym1>,<sym2>,... with one row per date.
[[nodiscard]] ReturnsTable read_panel_csv(std::istream& in, const std::string& name);

void write_aligned_csv(std::ostream& out, const AlignedPanel& panel);
void write_mask_csv(std::ostream& out, const AlignedPanel& panel);
void write_panel_csv(std::ostream& out,
                     const std::vector<Date>& dates,
                     const std::vector<std::string>& symbols,
                     const Grid<double>& values);
void write_matrix_csv(std::ostream& out, const CorrelationMatrix& m);
void write_rolling_csv(std::ostream& out, const RollingSeries& series);
void write_eigenvectors_csv(std::ostream& out,
                            const std::vector<std::string>& symbols,
                            const SpectralDecomposition& d);

[[nodiscard]] nlohmann::json crash_report_json(const CrashReport& report);
[[nodiscard]] nlohmann::json spectrum_json(const SpectralDecomposition& d,
                                           const MpParams& mp,
                                           const BulkCounts& bulk);
[[nodiscard]] nlohmann::json normality_json(const NormalityReport& r);
[[nodiscard]] nlohmann::json histogram_json(const PeriodDistribution& dist);
[[nodiscard]] nlohmann::json log_density_json(const std::vector<DensityBin>& bins,
                                              double bin_width);

void write_json_file(const std::filesystem::path& path, const nlohmann::json& doc);
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace rmtcorr::io
