#include "superschemes/bench.hpp"

#include "json.hpp"

#include <algorithm>
#include <cmath>
#include <cctype>
#include <cstdio>
#include <map>
#include <sstream>

namespace superschemes {
namespace {

std::string format(const char* fmt, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, fmt, v);
  return buf;
}

std::string upper(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::toupper(c); });
  return s;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

// Iteration count, "--" when the cap was hit, the raw status otherwise.
std::string grid_value(const Cell& c) {
  if (c.status == "converged") return std::to_string(c.iterations);
  if (c.status == "max_iter_reached") return "--";
  return c.status;
}

std::string emit_csv(const Report& report) {
  std::ostringstream out;
  out << kCsvHeader << '\n';
  for (const Cell& c : report.cells) {
    out << csv_field(c.table) << ',' << c.method << ',' << c.n << ',' << c.iterations << ','
        << format("%.6e", c.final_gnorm) << ',' << format("%.3f", c.cpu_seconds) << ',' << csv_field(c.status)
        << ',' << (c.seed ? std::to_string(*c.seed) : "") << '\n';
  }
  return out.str();
}

std::string emit_json(const Report& report) {
  nlohmann::json cells = nlohmann::json::array();
  for (const Cell& c : report.cells) {
    nlohmann::json j;
    j["table"] = c.table;
    j["method"] = c.method;
    j["n"] = c.n;
    j["iterations"] = c.iterations;
    j["final_gnorm"] = c.final_gnorm;
    j["cpu_seconds"] = std::round(c.cpu_seconds * 1000.0) / 1000.0;
    j["status"] = c.status;
    j["seed"] = c.seed ? nlohmann::json(*c.seed) : nlohmann::json(nullptr);
    j["acoc"] = c.acoc ? nlohmann::json(*c.acoc) : nlohmann::json(nullptr);
    j["note"] = c.note.empty() ? nlohmann::json(nullptr) : nlohmann::json(c.note);
    cells.push_back(std::move(j));
  }
  return cells.dump(2) + "\n";
}

const Cell* find_cell(const Report& r, Index n, Method m) {
  const std::string name(to_string(m));
  for (const Cell& c : r.cells) {
    if (c.n == n && c.method == name) return &c;
  }
  return nullptr;
}

void md_row(std::ostringstream& out, const std::vector<std::string>& fields) {
  out << '|';
  for (const auto& f : fields) out << ' ' << f << " |";
  out << '\n';
}

void md_rule(std::ostringstream& out, std::size_t columns) {
  out << '|';
  for (std::size_t i = 0; i < columns; ++i) out << "---|";
  out << '\n';
}

std::string emit_markdown(const Report& report) {
  std::ostringstream out;
  const std::string problem(to_string(table_problem(report.table)));
  out << "### Table " << to_string(report.table) << " (" << problem << ")\n\n";
  switch (report.table) {
    case TableId::t8: {
      md_row(out, {"Method", "k", "‖g(x_k)‖", "CPU time"});
      md_rule(out, 4);
      for (const Cell& c : report.cells) {
        md_row(out, {upper(c.method), grid_value(c), format("%.2e", c.final_gnorm), format("%.3f", c.cpu_seconds)});
      }
      out << "\nNA row omitted: method not implemented.\n";
      break;
    }
    case TableId::t9: {
      md_row(out, {"n", "Method", "k", "CPU time", "‖g(x_k)‖"});
      md_rule(out, 5);
      for (const Cell& c : report.cells) {
        md_row(out, {std::to_string(c.n), upper(c.method), grid_value(c), format("%.3f", c.cpu_seconds),
                     format("%.2e", c.final_gnorm)});
      }
      out << "\nABB, ABBmin1 and ODH1 rows omitted: methods not implemented.";
      if (!report.cells.empty() && report.cells.front().seed) out << " Seed " << *report.cells.front().seed << '.';
      out << '\n';
      break;
    }
    case TableId::t10: {
      md_row(out, {"Method", "k", "‖g(x_k)‖", "ACOC"});
      md_rule(out, 4);
      for (const Cell& c : report.cells) {
        md_row(out, {upper(c.method), std::to_string(c.iterations), format("%.4e", c.final_gnorm),
                     c.acoc ? format("%.2f", *c.acoc) : std::string("n/a")});
      }
      break;
    }
    default: {
      std::vector<std::string> header{"n"};
      for (Method m : report.methods) header.push_back(upper(std::string(to_string(m))));
      md_row(out, header);
      md_rule(out, header.size());
      for (Index n : report.sizes) {
        std::vector<std::string> row{std::to_string(n)};
        for (Method m : report.methods) {
          const Cell* c = find_cell(report, n, m);
          row.push_back(c ? grid_value(*c) : "");
        }
        md_row(out, row);
      }
      out << "\nNA column omitted: method not implemented.";
      std::map<std::string, bool> flagged;
      for (const Cell& c : report.cells) {
        if (!c.note.empty() && !flagged[c.method]) {
          flagged[c.method] = true;
          out << ' ' << upper(c.method) << ": " << c.note << '.';
        }
      }
      out << '\n';
      break;
    }
  }
  return out.str();
}

}  // namespace

std::string emit_report(const Report& report, ReportFormat format) {
  switch (format) {
    case ReportFormat::csv:
      return emit_csv(report);
    case ReportFormat::md:
      return emit_markdown(report);
    case ReportFormat::json:
      return emit_json(report);
  }
  return {};
}

}  // namespace superschemes
