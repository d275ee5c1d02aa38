#include "statrules/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace statrules {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  for (int prec = 1; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof(buf), "%.*g", prec, v);
    if (std::strtod(buf, nullptr) == v) break;
  }
  return buf;
}

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  return out;
}

std::string opt_str(const std::optional<double>& v) {
  return v ? format_double(*v) : "undefined";
}

// Strategy ids contain commas, so they are written double-quoted.
std::string csv_field(const std::string& s) {
  if (s.find(',') == std::string::npos && s.find('"') == std::string::npos)
    return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

}  // namespace

void write_matrix_csv(const PerformanceMatrix& m, const std::string& path) {
  auto out = open_out(path);
  out << "date";
  for (const auto& id : m.ids) out << ',' << csv_field(id);
  out << '\n';
  const std::size_t K = m.strategies();
  for (std::size_t t = 0; t < m.days(); ++t) {
    out << (t < m.dates.size() ? m.dates[t] : static_cast<int>(t + 1));
    for (std::size_t k = 0; k < K; ++k)
      out << ',' << format_double(m.data[t * K + k]);
    out << '\n';
  }
}

PerformanceMatrix read_matrix_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open matrix file: " + path);
  PerformanceMatrix m;
  std::string line;
  if (!std::getline(in, line))
    throw std::runtime_error("empty matrix file: " + path);
  auto header = split(line, ',');
  if (header.size() < 2 || header[0] != "date")
    throw std::runtime_error("matrix header must be 'date,<id>,...': " + path);
  m.ids.assign(header.begin() + 1, header.end());
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    auto fields = split(line, ',');
    if (fields.size() != header.size())
      throw std::runtime_error(path + ":" + std::to_string(line_no) +
                               ": wrong column count");
    m.dates.push_back(std::stoi(fields[0]));
    for (std::size_t k = 1; k < fields.size(); ++k)
      m.data.push_back(std::stod(fields[k]));
  }
  return m;
}

void write_report_csv(const std::vector<BacktestReport>& reports,
                      const std::string& path) {
  auto out = open_out(path);
  out << "strategy,LDT,SDT,ASP,ADP,AR,MDP,AR/MDP,SR,PnL,WR,AP/AL\n";
  for (const auto& r : reports) {
    out << csv_field(r.strategy) << ',' << r.ldt << ',' << r.sdt << ',' << opt_str(r.asp)
        << ',' << opt_str(r.adp) << ',' << format_double(r.ar) << ','
        << format_double(r.mdp) << ',' << opt_str(r.ar_mdp) << ','
        << opt_str(r.sharpe) << ',' << format_double(r.pnl_index) << ','
        << opt_str(r.win_rate) << ',' << opt_str(r.ap_al) << '\n';
  }
}

void write_adf_table_csv(const std::string& series_name,
                         const std::vector<AdfResult>& results,
                         const std::string& path) {
  auto out = open_out(path);
  write_adf_table(out, series_name, results);
}

void write_adf_table(std::ostream& out, const std::string& series_name,
                     const std::vector<AdfResult>& results) {
  auto join = [](const std::vector<double>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i) s += ';';
      s += format_double(v[i]);
    }
    return s;
  };
  out << "series:" << series_name << '\n';
  out << "statistic";
  for (const auto& r : results)
    out << ",test-" << adf_variant_name(r.variant) << " lags-" << r.lags;
  out << '\n';
  out << "coeff";
  for (const auto& r : results) out << ',' << join(r.coeff);
  out << '\n';
  out << "tStats";
  for (const auto& r : results) out << ',' << join(r.tstats);
  out << '\n';
  out << "FStat";
  for (const auto& r : results) out << ',' << format_double(r.fstat);
  out << '\n';
  out << "AIC";
  for (const auto& r : results) out << ',' << format_double(r.aic);
  out << '\n';
  out << "BIC";
  for (const auto& r : results) out << ',' << format_double(r.bic);
  out << '\n';
  out << "p-value";
  for (const auto& r : results) out << ',' << format_double(r.pvalue);
  out << '\n';
  out << "H";
  for (const auto& r : results) out << ',' << (r.reject ? 1 : 0);
  out << '\n';
}

bool parse_strategy_id(const std::string& id, Family& family, int& frequency) {
  auto us = id.find('_');
  auto par = id.find('(');
  if (us == std::string::npos || par == std::string::npos || par < us)
    return false;
  std::string fam = id.substr(0, us);
  if (fam == "MA")
    family = Family::MA;
  else if (fam == "KDJ")
    family = Family::KDJ;
  else if (fam == "Boll")
    family = Family::BOLL;
  else
    return false;
  try {
    frequency = std::stoi(id.substr(us + 1, par - us - 1));
  } catch (const std::exception&) {
    return false;
  }
  return true;
}

void write_spa_json(const std::vector<std::pair<double, SpaResult>>& spa,
                    const std::vector<std::pair<double, StepSpaResult>>& steps,
                    const PerformanceMatrix& matrix,
                    const std::vector<int>& frequencies,
                    const std::string& path) {
  nlohmann::json root;

  for (const auto& [alpha, res] : spa) {
    nlohmann::json j;
    j["alpha"] = alpha;
    j["qstar"] = res.qstar;
    j["reject"] = res.reject;
    nlohmann::json stats = nlohmann::json::object();
    for (std::size_t k = 0; k < matrix.strategies(); ++k) {
      if (std::isnan(res.tstats[k])) continue;
      stats[matrix.ids[k]] = {{"tstat", res.tstats[k]},
                              {"omega", res.omega[k]},
                              {"mu", res.mu[k]}};
    }
    j["strategies"] = std::move(stats);
    j["excluded"] = res.excluded;
    root["spa"].push_back(std::move(j));
  }

  static const char* kFamilies[] = {"MA", "KDJ", "Boll"};
  for (const auto& [alpha, res] : steps) {
    nlohmann::json j;
    j["alpha"] = alpha;
    j["significant"] = res.significant;
    j["excluded"] = res.excluded;
    root["step_spa"].push_back(std::move(j));
  }

  // Table-5-style grid: rows MA/KDJ/Boll, one count per frequency x alpha.
  nlohmann::json grid = nlohmann::json::array();
  for (const char* fam : kFamilies) {
    nlohmann::json row;
    row["family"] = fam;
    nlohmann::json cells = nlohmann::json::array();
    for (int freq : frequencies) {
      for (const auto& [alpha, res] : steps) {
        int count = 0;
        for (const auto& id : res.significant) {
          Family f;
          int fr;
          if (parse_strategy_id(id, f, fr) && family_name(f) == fam &&
              fr == freq)
            ++count;
        }
        cells.push_back({{"frequency", freq}, {"alpha", alpha},
                         {"significant", count}});
      }
    }
    row["cells"] = std::move(cells);
    grid.push_back(std::move(row));
  }
  root["family_counts"] = std::move(grid);

  auto out = open_out(path);
  out << root.dump(2) << '\n';
}

void write_selector_csv(const std::vector<SelectorRow>& rows,
                        const std::string& path) {
  auto out = open_out(path);
  out << "Train,Test,AR,MDP,AR/MDP,SR\n";
  for (const auto& r : rows)
    out << r.plan.train << ',' << r.plan.test << ',' << format_double(r.ar)
        << ',' << format_double(r.mdp) << ',' << opt_str(r.ar_mdp) << ','
        << opt_str(r.sr) << '\n';
}

void write_equity_svg(const std::string& title,
                      const std::vector<EquityPoint>& curve,
                      const std::string& path) {
  const int W = 800, H = 500, pad = 50;
  auto out = open_out(path);
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W
      << "\" height=\"" << H << "\" viewBox=\"0 0 " << W << ' ' << H
      << "\">\n";
  out << "<text x=\"" << W / 2 << "\" y=\"24\" text-anchor=\"middle\" "
         "font-family=\"sans-serif\" font-size=\"16\">"
      << title << "</text>\n";
  out << "<rect x=\"" << pad << "\" y=\"" << pad << "\" width=\"" << W - 2 * pad
      << "\" height=\"" << H - 2 * pad
      << "\" fill=\"none\" stroke=\"black\"/>\n";
  if (!curve.empty()) {
    double lo = curve.front().currency, hi = lo;
    for (const auto& p : curve) {
      lo = std::min(lo, p.currency);
      hi = std::max(hi, p.currency);
    }
    if (hi == lo) hi = lo + 1.0;
    out << "<polyline fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"1.5\" "
           "points=\"";
    for (std::size_t i = 0; i < curve.size(); ++i) {
      double x = pad + (W - 2.0 * pad) * (curve.size() == 1
                                              ? 0.0
                                              : static_cast<double>(i) /
                                                    (curve.size() - 1));
      double y = H - pad - (H - 2.0 * pad) * (curve[i].currency - lo) / (hi - lo);
      char buf[48];
      std::snprintf(buf, sizeof(buf), "%.2f,%.2f ", x, y);
      out << buf;
    }
    out << "\"/>\n";
    out << "<text x=\"" << pad << "\" y=\"" << H - pad + 20
        << "\" font-family=\"sans-serif\" font-size=\"11\">"
        << curve.front().date << "</text>\n";
    out << "<text x=\"" << W - pad << "\" y=\"" << H - pad + 20
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" "
           "font-size=\"11\">"
        << curve.back().date << "</text>\n";
  }
  out << "</svg>\n";
}

}  // namespace statrules
