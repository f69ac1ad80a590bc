#pragma once

#include "hydrod/radial_solver.hpp"
#include "hydrod/series.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

namespace hydrod {

inline constexpr int kReportSchemaVersion = 1;

enum class Command { Solve, Table1, Table2, Kappa, Vp2, Extrapolate };
enum class Format { Csv, Json, Text };

struct RunConfig {
  Command command = Command::Solve;
  int n = 1;
  int ell = 0;
  double epsilon = 0.001;
  std::optional<double> mu; // default: 2 gamma, so L = 0
  Format format = Format::Text;
  double tol = 1e-12;
  double rhoMax = 0.0; // <= 0: solver default
  int maxOrder = kMaxSeriesOrder;
  std::vector<double> epsGrid{0.0005, 0.001, 0.002, 0.003, 0.004};
};

/// Throws InvalidArgument when a field is outside the range its module accepts.
void validate(const RunConfig &config);
ShootingOptions shootingOptions(const RunConfig &config);

std::string commandName(Command c);
Command parseCommand(const std::string &name);
Format parseFormat(const std::string &name);

struct Measured {
  double value = 0.0;
  double uncertainty = 0.0;
  bool operator==(const Measured &) const = default;
};

struct Failed {
  std::string error; // exception type and message
  bool operator==(const Failed &) const = default;
};

using Cell = std::variant<std::int64_t, double, std::string, Measured, Failed>;

enum class ColumnKind { Integer, Real, Text, Measured };

struct Column {
  std::string name;
  ColumnKind kind = ColumnKind::Real;
  bool operator==(const Column &) const = default;
};

struct Report {
  std::string kind;
  std::vector<Column> columns;
  std::vector<std::vector<Cell>> rows;
  std::vector<std::string> notes;

  bool operator==(const Report &) const = default;
  bool hasFailures() const;
};

nlohmann::json toJson(const Report &report);
Report reportFromJson(const nlohmann::json &j);

void writeCsv(std::ostream &os, const Report &report);
void writeJson(std::ostream &os, const Report &report);
void writeText(std::ostream &os, const Report &report);
void write(std::ostream &os, const Report &report, Format format);

Report runSolve(const RunConfig &config);
Report runKappa(const RunConfig &config);
Report runVp2(const RunConfig &config);
Report runExtrapolate(const RunConfig &config);
Report runTable1(const RunConfig &config);
Report runTable2(const RunConfig &config);
Report run(const RunConfig &config);

} // namespace hydrod
