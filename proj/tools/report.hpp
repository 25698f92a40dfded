#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "gfix/axioms.hpp"
#include "gfix/contractions.hpp"
#include "gfix/oracle.hpp"
#include "gfix/series.hpp"
#include "gfix/solver.hpp"

namespace gfix::cli {

using Json = nlohmann::ordered_json;

// Non-finite values are written as the strings "inf", "-inf", "nan".
Json num(double v);
Json to_json(const Point& p);
Json to_json(const std::vector<Point>& pts);
Json to_json(const AxiomReport& r);
Json to_json(const SymmetryReport& r);
Json to_json(const ConditionReport& r);
Json to_json(const FixedPointResult& r);
Json to_json(const SeriesCertificate& c);
Json to_json(const OracleReport& r);

// Pretty-printed with a trailing newline; creates parent directories.
void write_report(const std::filesystem::path& path, const Json& report);
void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace gfix::cli
