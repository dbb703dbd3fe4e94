#include <l96x/io.hpp>

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

namespace l96x {
namespace {

using nlohmann::json;

json parse_json_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what(), e.byte);
  }
}

/// Runs a loader body and converts schema violations (missing keys, wrong
/// types) into ParseError.
template <typename F>
auto with_schema(F&& f) {
  try {
    return f();
  } catch (const json::exception& e) {
    throw ParseError(std::string("unexpected JSON shape: ") + e.what(), 0);
  }
}

/// Non-finite doubles serialize as null; read them back as NaN.
double num_or_nan(const json& j) {
  if (j.is_null()) return std::numeric_limits<double>::quiet_NaN();
  return j.get<double>();
}

json json_of(double x) {
  return json(x);  // non-finite values dump as null
}

json json_of(const Eigen::VectorXd& v) {
  json arr = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(v[i]);
  return arr;
}

Eigen::VectorXd vector_from(const json& arr) {
  if (!arr.is_array()) throw ParseError("expected a numeric array", 0);
  Eigen::VectorXd v(static_cast<Eigen::Index>(arr.size()));
  for (std::size_t i = 0; i < arr.size(); ++i) v[static_cast<Eigen::Index>(i)] = num_or_nan(arr[i]);
  return v;
}

std::string_view trimmed(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

struct CsvLine {
  std::size_t offset = 0;  // byte offset of the line start
  std::vector<std::string> cells;
};

/// Splits CSV text into non-blank lines of trimmed cells.
std::vector<CsvLine> csv_lines(const std::string& text) {
  std::vector<CsvLine> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t end = text.find('\n', pos);
    const bool last = end == std::string::npos;
    std::string_view line(text.data() + pos, (last ? text.size() : end) - pos);
    if (!trimmed(line).empty()) {
      CsvLine cl;
      cl.offset = pos;
      std::size_t c = 0;
      while (true) {
        const std::size_t comma = line.find(',', c);
        cl.cells.emplace_back(
            trimmed(line.substr(c, comma == std::string_view::npos ? comma : comma - c)));
        if (comma == std::string_view::npos) break;
        c = comma + 1;
      }
      out.push_back(std::move(cl));
    }
    if (last) break;
    pos = end + 1;
  }
  return out;
}

/// CSV with the given header and a fixed cell count per row; returns the data
/// lines.
std::vector<CsvLine> csv_table(const std::string& text, const std::vector<std::string>& header) {
  const std::vector<CsvLine> lines = csv_lines(text);
  if (lines.empty()) throw ParseError("empty table: missing header row", 0);
  if (lines.front().cells != header) {
    std::string want;
    for (const std::string& h : header) {
      if (!want.empty()) want += ',';
      want += h;
    }
    throw ParseError("unexpected header; expected '" + want + "'", lines.front().offset);
  }
  std::vector<CsvLine> data(lines.begin() + 1, lines.end());
  for (const CsvLine& row : data)
    if (row.cells.size() != header.size())
      throw ParseError("row has " + std::to_string(row.cells.size()) + " cells; expected " +
                           std::to_string(header.size()),
                       row.offset);
  return data;
}

double cell_double(const std::string& cell, std::size_t offset) {
  try {
    return parse_double(cell);
  } catch (const ParseError&) {
    throw ParseError("bad numeric cell '" + cell + "'", offset);
  }
}

long long cell_int(const std::string& cell, std::size_t offset) {
  const std::string_view s = trimmed(cell);
  long long value = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw ParseError("bad integer cell '" + cell + "'", offset);
  return value;
}

std::optional<double> cell_optional(const std::string& cell, std::size_t offset) {
  if (trimmed(cell).empty()) return std::nullopt;
  return cell_double(cell, offset);
}

// ---------------------------------------------------------------------------
// SVG helpers

std::string svg_open(double width, double height) {
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%.0f\" height=\"%.0f\" "
                "viewBox=\"0 0 %.0f %.0f\">\n",
                width, height, width, height);
  return buf;
}

std::string coord(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", x);
  return buf;
}

/// Diverging palette centered at zero: blue for negative, white at zero,
/// red for positive.
std::string diverging_color(double value, double vmax) {
  double t = vmax > 0.0 ? value / vmax : 0.0;
  t = std::clamp(t, -1.0, 1.0);
  const int white[3] = {247, 247, 247};
  const int blue[3] = {33, 102, 172};
  const int red[3] = {178, 24, 43};
  const int* far = t < 0.0 ? blue : red;
  const double u = std::abs(t);
  char buf[8];
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x",
                static_cast<int>(std::lround(white[0] + u * (far[0] - white[0]))),
                static_cast<int>(std::lround(white[1] + u * (far[1] - white[1]))),
                static_cast<int>(std::lround(white[2] + u * (far[2] - white[2]))));
  return buf;
}

}  // namespace

// ---------------------------------------------------------------------------

std::string format_double(double x) {
  std::array<char, 48> buf;
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  return std::string(buf.data(), ptr);
}

double parse_double(std::string_view text) {
  const std::string_view s = trimmed(text);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw ParseError("not a number: '" + std::string(text) + "'", 0);
  return value;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DomainError("cannot open " + path + " for reading");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw DomainError("error while reading " + path);
  return buf.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DomainError("cannot open " + path + " for writing");
  out << text;
  out.flush();
  if (!out) throw DomainError("error while writing " + path);
}

// ---------------------------------------------------------------------------

std::string gmap_json(const GMap& g) {
  json terms = json::array();
  for (const Monomial& t : g.terms())
    terms.push_back(json{{"a", t.a}, {"b", t.b}, {"c", t.coeff}});
  return json{{"terms", std::move(terms)}}.dump();
}

GMap gmap_from_json(const std::string& text) {
  const json j = parse_json_text(text);
  return with_schema([&] {
    std::vector<Monomial> terms;
    for (const json& t : j.at("terms"))
      terms.push_back({t.at("a").get<int>(), t.at("b").get<int>(), t.at("c").get<double>()});
    return GMap(std::move(terms));
  });
}

// ---------------------------------------------------------------------------

std::string trajectory_csv(const Trajectory& traj) {
  const int n = traj.n_sites();
  std::string out = "t";
  for (int i = 0; i < n; ++i) out += ",x" + std::to_string(i);
  out += '\n';
  for (std::size_t r = 0; r < traj.times.size(); ++r) {
    out += format_double(traj.times[r]);
    for (int i = 0; i < n; ++i)
      out += ',' + format_double(traj.states(static_cast<Eigen::Index>(r), i));
    out += '\n';
  }
  return out;
}

Trajectory trajectory_from_csv(const std::string& text) {
  const std::vector<CsvLine> lines = csv_lines(text);
  if (lines.empty()) throw ParseError("empty table: missing header row", 0);
  const std::vector<std::string>& header = lines.front().cells;
  if (header.empty() || header[0] != "t")
    throw ParseError("first column must be 't'", lines.front().offset);
  const int n = static_cast<int>(header.size()) - 1;
  for (int i = 0; i < n; ++i)
    if (header[static_cast<std::size_t>(i) + 1] != "x" + std::to_string(i))
      throw ParseError("state columns must be named x0..x" + std::to_string(n - 1),
                       lines.front().offset);

  Trajectory traj;
  const std::size_t rows = lines.size() - 1;
  traj.states.resize(static_cast<Eigen::Index>(rows), n);
  for (std::size_t r = 0; r < rows; ++r) {
    const CsvLine& row = lines[r + 1];
    if (row.cells.size() != header.size())
      throw ParseError("row has " + std::to_string(row.cells.size()) + " cells; expected " +
                           std::to_string(header.size()),
                       row.offset);
    traj.times.push_back(cell_double(row.cells[0], row.offset));
    for (int i = 0; i < n; ++i)
      traj.states(static_cast<Eigen::Index>(r), i) =
          cell_double(row.cells[static_cast<std::size_t>(i) + 1], row.offset);
  }
  return traj;
}

// ---------------------------------------------------------------------------

namespace {

/// Per-site coefficients collapse to a scalar when every site agrees.
json coefficient_json(const Eigen::VectorXd& v) {
  if (v.size() > 0 && (v.array() == v[0]).all()) return json_of(v[0]);
  return json_of(v);
}

Eigen::VectorXd coefficient_from(const json& j, int n, const char* name) {
  if (j.is_number()) return Eigen::VectorXd::Constant(n, j.get<double>());
  const Eigen::VectorXd v = vector_from(j);
  if (v.size() != n)
    throw ParseError(std::string(name) + " has " + std::to_string(v.size()) +
                         " entries; expected " + std::to_string(n),
                     0);
  return v;
}

}  // namespace

std::string system_spec_json(const SystemSpec& spec, const std::string& advection_source) {
  json j{{"n", spec.n},
         {"advection", advection_source},
         {"alpha", coefficient_json(spec.alpha)},
         {"beta", coefficient_json(spec.beta)},
         {"gamma", coefficient_json(spec.gamma)}};
  return j.dump();
}

LoadedSpec system_spec_from_json(const std::string& text) {
  const json j = parse_json_text(text);
  LoadedSpec loaded = with_schema([&] {
    LoadedSpec out;
    out.spec.n = j.at("n").get<int>();
    if (out.spec.n < 1) throw ParseError("n must be at least 1", 0);
    out.advection_source = j.at("advection").get<std::string>();
    out.spec.alpha = coefficient_from(j.at("alpha"), out.spec.n, "alpha");
    out.spec.beta = coefficient_from(j.at("beta"), out.spec.n, "beta");
    out.spec.gamma = coefficient_from(j.at("gamma"), out.spec.n, "gamma");
    return out;
  });
  loaded.spec.advection = parse_gmap(loaded.advection_source).resolved;
  loaded.spec.validate();
  return loaded;
}

SiteParams site_params_from_text(const std::string& text, int n) {
  if (n < 1) throw DomainError("site count must be at least 1");
  SiteParams params;
  const std::size_t first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    const json j = parse_json_text(text);
    with_schema([&] {
      for (const char* key : {"alpha", "beta", "gamma"}) {
        const json& v = j.at(key);
        if (!v.is_number())
          throw ParseError(std::string("broadcast file carries one scalar per coefficient; '") +
                               key + "' is not a number",
                           0);
      }
      params.alpha = Eigen::VectorXd::Constant(n, j.at("alpha").get<double>());
      params.beta = Eigen::VectorXd::Constant(n, j.at("beta").get<double>());
      params.gamma = Eigen::VectorXd::Constant(n, j.at("gamma").get<double>());
      return 0;
    });
  } else {
    const std::vector<CsvLine> rows = csv_table(text, {"alpha", "beta", "gamma"});
    if (static_cast<int>(rows.size()) != n)
      throw ParseError("expected " + std::to_string(n) + " coefficient rows, got " +
                           std::to_string(rows.size()),
                       rows.empty() ? 0 : rows.back().offset);
    params.alpha.resize(n);
    params.beta.resize(n);
    params.gamma.resize(n);
    for (int i = 0; i < n; ++i) {
      const CsvLine& row = rows[static_cast<std::size_t>(i)];
      params.alpha[i] = cell_double(row.cells[0], row.offset);
      params.beta[i] = cell_double(row.cells[1], row.offset);
      params.gamma[i] = cell_double(row.cells[2], row.offset);
    }
  }
  for (int i = 0; i < n; ++i)
    if (!(params.beta[i] > 0.0))
      throw DomainError("dissipation must be positive at every site (beta[" + std::to_string(i) +
                        "] = " + format_double(params.beta[i]) + ")");
  return params;
}

// ---------------------------------------------------------------------------

std::string eigencurve_csv(const EigenCurve& curve) {
  std::string out = "s,re,im\n";
  for (std::size_t i = 0; i < curve.s.size(); ++i)
    out += format_double(curve.s[i]) + ',' + format_double(curve.curve[i].real()) + ',' +
           format_double(curve.curve[i].imag()) + '\n';
  return out;
}

std::string discrete_spectrum_csv(const EigenCurve& curve) {
  std::string out = "j,re,im\n";
  for (std::size_t j = 0; j < curve.discrete.size(); ++j)
    out += std::to_string(j) + ',' + format_double(curve.discrete[j].real()) + ',' +
           format_double(curve.discrete[j].imag()) + '\n';
  return out;
}

EigenCurve eigencurve_from_csv(const std::string& curve_text, const std::string& discrete_text) {
  EigenCurve curve;
  for (const CsvLine& row : csv_table(curve_text, {"s", "re", "im"})) {
    curve.s.push_back(cell_double(row.cells[0], row.offset));
    curve.curve.emplace_back(cell_double(row.cells[1], row.offset),
                             cell_double(row.cells[2], row.offset));
  }
  std::size_t expected = 0;
  for (const CsvLine& row : csv_table(discrete_text, {"j", "re", "im"})) {
    if (cell_int(row.cells[0], row.offset) != static_cast<long long>(expected))
      throw ParseError("mode indices must run 0,1,2,...", row.offset);
    ++expected;
    curve.discrete.emplace_back(cell_double(row.cells[1], row.offset),
                                cell_double(row.cells[2], row.offset));
  }
  return curve;
}

std::string eigencurve_svg(const EigenCurve& curve) {
  double xmin = 0.0, xmax = 0.0, ymin = 0.0, ymax = 0.0;
  bool first = true;
  auto grow = [&](const Complex& z) {
    if (first) {
      xmin = xmax = z.real();
      ymin = ymax = z.imag();
      first = false;
    } else {
      xmin = std::min(xmin, z.real());
      xmax = std::max(xmax, z.real());
      ymin = std::min(ymin, z.imag());
      ymax = std::max(ymax, z.imag());
    }
  };
  for (const Complex& z : curve.curve) grow(z);
  for (const Complex& z : curve.discrete) grow(z);
  if (first) throw DomainError("empty eigenvalue curve");
  const double spanx = std::max(xmax - xmin, 1e-9), spany = std::max(ymax - ymin, 1e-9);
  xmin -= 0.08 * spanx;
  xmax += 0.08 * spanx;
  ymin -= 0.08 * spany;
  ymax += 0.08 * spany;

  const double ml = 45, mt = 15, mr = 15, mb = 35, pw = 460, ph = 460;
  const double sx = pw / (xmax - xmin), sy = ph / (ymax - ymin);
  auto X = [&](double re) { return ml + (re - xmin) * sx; };
  auto Y = [&](double im) { return mt + (ymax - im) * sy; };

  std::string svg = svg_open(ml + pw + mr, mt + ph + mb);
  svg += "<rect x=\"" + coord(ml) + "\" y=\"" + coord(mt) + "\" width=\"" + coord(pw) +
         "\" height=\"" + coord(ph) + "\" fill=\"white\" stroke=\"#444\"/>\n";
  if (xmin < 0.0 && 0.0 < xmax)
    svg += "<line x1=\"" + coord(X(0)) + "\" y1=\"" + coord(mt) + "\" x2=\"" + coord(X(0)) +
           "\" y2=\"" + coord(mt + ph) +
           "\" stroke=\"#888\" stroke-dasharray=\"5,4\"/>\n";
  if (ymin < 0.0 && 0.0 < ymax)
    svg += "<line x1=\"" + coord(ml) + "\" y1=\"" + coord(Y(0)) + "\" x2=\"" + coord(ml + pw) +
           "\" y2=\"" + coord(Y(0)) + "\" stroke=\"#ccc\"/>\n";
  if (!curve.curve.empty()) {
    svg += "<polyline fill=\"none\" stroke=\"#2166ac\" stroke-width=\"1.5\" points=\"";
    for (const Complex& z : curve.curve) svg += coord(X(z.real())) + ',' + coord(Y(z.imag())) + ' ';
    svg += "\"/>\n";
  }
  for (const Complex& z : curve.discrete)
    svg += "<circle cx=\"" + coord(X(z.real())) + "\" cy=\"" + coord(Y(z.imag())) +
           "\" r=\"3.5\" fill=\"#b2182b\"/>\n";
  svg += "<text x=\"" + coord(ml + pw - 24) + "\" y=\"" + coord(mt + ph + 26) +
         "\" font-size=\"14\" fill=\"#222\">Re</text>\n";
  svg += "<text x=\"" + coord(ml - 34) + "\" y=\"" + coord(mt + 14) +
         "\" font-size=\"14\" fill=\"#222\">Im</text>\n";
  svg += "</svg>\n";
  return svg;
}

// ---------------------------------------------------------------------------

namespace {

json complex_json(const Complex& z) { return json{{"re", z.real()}, {"im", z.imag()}}; }

Complex complex_from(const json& j) {
  return Complex(num_or_nan(j.at("re")), num_or_nan(j.at("im")));
}

}  // namespace

std::string hopf_json(const HopfReport& report) {
  json j{{"F1", json_of(report.F1)},
         {"mode_k", report.mode_k},
         {"tau0", json_of(report.tau0)},
         {"z1", complex_json(report.z1)},
         {"tie", report.tie},
         {"tie_mode", report.tie_mode},
         {"I1", report.I1 ? json_of(*report.I1) : json()},
         {"supercritical", report.supercritical},
         {"degenerate", report.degenerate},
         {"note", report.note}};
  return j.dump();
}

HopfReport hopf_from_json(const std::string& text) {
  const json j = parse_json_text(text);
  return with_schema([&] {
    HopfReport r;
    r.F1 = num_or_nan(j.at("F1"));
    r.mode_k = j.at("mode_k").get<int>();
    r.tau0 = num_or_nan(j.at("tau0"));
    r.z1 = complex_from(j.at("z1"));
    r.tie = j.at("tie").get<bool>();
    r.tie_mode = j.at("tie_mode").get<int>();
    if (!j.at("I1").is_null()) r.I1 = j.at("I1").get<double>();
    r.supercritical = j.at("supercritical").get<bool>();
    r.degenerate = j.at("degenerate").get<bool>();
    r.note = j.at("note").get<std::string>();
    return r;
  });
}

std::string hopf_hopf_json(const HopfHopfReport& report) {
  json p = json::array();
  for (int r = 0; r < 2; ++r) p.push_back(json::array({json_of(report.p(r, 0)), json_of(report.p(r, 1))}));
  json j{{"mode_k", report.mode_k}, {"mode_l", report.mode_l},
         {"F1", json_of(report.F1)}, {"F2", json_of(report.F2)},
         {"alpha0", json_of(report.alpha0)},
         {"tau1", json_of(report.tau1)}, {"tau2", json_of(report.tau2)},
         {"p", std::move(p)},
         {"theta", json_of(report.theta)}, {"delta", json_of(report.delta)},
         {"F3_star", json_of(report.F3_star)},
         {"tie", report.tie},
         {"simple_case", report.simple_case},
         {"type_one", report.type_one},
         {"degenerate", report.degenerate},
         {"note", report.note}};
  return j.dump();
}

HopfHopfReport hopf_hopf_from_json(const std::string& text) {
  const json j = parse_json_text(text);
  return with_schema([&] {
    HopfHopfReport r;
    r.mode_k = j.at("mode_k").get<int>();
    r.mode_l = j.at("mode_l").get<int>();
    r.F1 = num_or_nan(j.at("F1"));
    r.F2 = num_or_nan(j.at("F2"));
    r.alpha0 = num_or_nan(j.at("alpha0"));
    r.tau1 = num_or_nan(j.at("tau1"));
    r.tau2 = num_or_nan(j.at("tau2"));
    const json& p = j.at("p");
    for (int row = 0; row < 2; ++row)
      for (int col = 0; col < 2; ++col) r.p(row, col) = num_or_nan(p.at(row).at(col));
    r.theta = num_or_nan(j.at("theta"));
    r.delta = num_or_nan(j.at("delta"));
    r.F3_star = num_or_nan(j.at("F3_star"));
    r.tie = j.at("tie").get<bool>();
    r.simple_case = j.at("simple_case").get<bool>();
    r.type_one = j.at("type_one").get<bool>();
    r.degenerate = j.at("degenerate").get<bool>();
    r.note = j.at("note").get<std::string>();
    return r;
  });
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::string out = "N,F1,k,F2,l,alpha0,F3_star,I1\n";
  for (const SweepRow& r : rows) {
    out += std::to_string(r.n) + ',' + format_double(r.f1) + ',' + std::to_string(r.k) + ',' +
           format_double(r.f2) + ',' + std::to_string(r.l) + ',' + format_double(r.alpha0) +
           ',' + format_double(r.f3_star) + ',';
    if (r.i1) out += format_double(*r.i1);
    out += '\n';
  }
  return out;
}

std::vector<SweepRow> sweep_from_csv(const std::string& text) {
  std::vector<SweepRow> rows;
  for (const CsvLine& row :
       csv_table(text, {"N", "F1", "k", "F2", "l", "alpha0", "F3_star", "I1"})) {
    SweepRow r;
    r.n = static_cast<int>(cell_int(row.cells[0], row.offset));
    r.f1 = cell_double(row.cells[1], row.offset);
    r.k = static_cast<int>(cell_int(row.cells[2], row.offset));
    r.f2 = cell_double(row.cells[3], row.offset);
    r.l = static_cast<int>(cell_int(row.cells[4], row.offset));
    r.alpha0 = cell_double(row.cells[5], row.offset);
    r.f3_star = cell_double(row.cells[6], row.offset);
    r.i1 = cell_optional(row.cells[7], row.offset);
    rows.push_back(std::move(r));
  }
  return rows;
}

// ---------------------------------------------------------------------------

std::string stationary_csv(const StationaryProblem& prob, const Eigen::VectorXd& x) {
  if (x.size() != prob.n) throw DomainError("state size does not match the problem");
  std::string out = "site,F_i,x_i\n";
  for (int i = 0; i < prob.n; ++i)
    out += std::to_string(i) + ',' + format_double(prob.f[i]) + ',' + format_double(x[i]) + '\n';
  return out;
}

StationaryTable stationary_from_csv(const std::string& text) {
  const std::vector<CsvLine> rows = csv_table(text, {"site", "F_i", "x_i"});
  StationaryTable table;
  table.f.resize(static_cast<Eigen::Index>(rows.size()));
  table.x.resize(static_cast<Eigen::Index>(rows.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (cell_int(rows[i].cells[0], rows[i].offset) != static_cast<long long>(i))
      throw ParseError("site indices must run 0,1,2,...", rows[i].offset);
    table.f[static_cast<Eigen::Index>(i)] = cell_double(rows[i].cells[1], rows[i].offset);
    table.x[static_cast<Eigen::Index>(i)] = cell_double(rows[i].cells[2], rows[i].offset);
  }
  return table;
}

std::string path_json(const ContinuationPath& path) {
  json points = json::array();
  for (const PathPoint& pt : path.points)
    points.push_back(json{{"t", json_of(pt.t)},
                          {"x", json_of(pt.x)},
                          {"residual_norm", json_of(pt.residual_norm)},
                          {"newton_iterations", pt.newton_iterations}});
  json j{{"complete", path.complete}, {"note", path.note}, {"points", std::move(points)}};
  return j.dump();
}

ContinuationPath path_from_json(const std::string& text) {
  const json j = parse_json_text(text);
  return with_schema([&] {
    ContinuationPath path;
    path.complete = j.at("complete").get<bool>();
    path.note = j.at("note").get<std::string>();
    for (const json& pt : j.at("points")) {
      PathPoint point;
      point.t = num_or_nan(pt.at("t"));
      point.x = vector_from(pt.at("x"));
      point.residual_norm = num_or_nan(pt.at("residual_norm"));
      point.newton_iterations = pt.at("newton_iterations").get<int>();
      path.points.push_back(std::move(point));
    }
    return path;
  });
}

// ---------------------------------------------------------------------------

std::string ensemble_json(const EnsembleSummary& summary) {
  json classes = json::array();
  for (const AttractorClass& cls : summary.classes)
    classes.push_back(json{{"spatial_period", cls.spatial_period},
                           {"confident", cls.confident},
                           {"temporal_period",
                            cls.temporal_period ? json_of(*cls.temporal_period) : json()},
                           {"member_count", cls.member_count},
                           {"representative", json_of(cls.representative)}});
  json j{{"n", summary.n},         {"forcing", json_of(summary.forcing)},
         {"runs", summary.runs},   {"seed", summary.seed},
         {"unclassified", summary.unclassified},
         {"classes", std::move(classes)}};
  return j.dump();
}

EnsembleSummary ensemble_from_json(const std::string& text) {
  const json j = parse_json_text(text);
  return with_schema([&] {
    EnsembleSummary summary;
    summary.n = j.at("n").get<int>();
    summary.forcing = num_or_nan(j.at("forcing"));
    summary.runs = j.at("runs").get<int>();
    summary.seed = j.at("seed").get<std::uint64_t>();
    summary.unclassified = j.at("unclassified").get<int>();
    for (const json& c : j.at("classes")) {
      AttractorClass cls;
      cls.spatial_period = c.at("spatial_period").get<int>();
      cls.confident = c.at("confident").get<bool>();
      if (!c.at("temporal_period").is_null())
        cls.temporal_period = c.at("temporal_period").get<double>();
      cls.member_count = c.at("member_count").get<int>();
      cls.representative = vector_from(c.at("representative"));
      summary.classes.push_back(std::move(cls));
    }
    return summary;
  });
}

// ---------------------------------------------------------------------------

std::string table2_csv(const std::vector<Table2Row>& rows) {
  std::string out = "N,F1,m1,F2,m2,F3_star,F3_tilde\n";
  for (const Table2Row& r : rows) {
    out += std::to_string(r.n) + ',' + format_double(r.f1) + ',' + std::to_string(r.m1) + ',' +
           format_double(r.f2) + ',' + std::to_string(r.m2) + ',' + format_double(r.f3_star) +
           ',';
    if (r.f3_tilde) out += format_double(*r.f3_tilde);
    out += '\n';
  }
  return out;
}

std::vector<Table2Row> table2_from_csv(const std::string& text) {
  std::vector<Table2Row> rows;
  for (const CsvLine& row :
       csv_table(text, {"N", "F1", "m1", "F2", "m2", "F3_star", "F3_tilde"})) {
    Table2Row r;
    r.n = static_cast<int>(cell_int(row.cells[0], row.offset));
    r.f1 = cell_double(row.cells[1], row.offset);
    r.m1 = static_cast<int>(cell_int(row.cells[2], row.offset));
    r.f2 = cell_double(row.cells[3], row.offset);
    r.m2 = static_cast<int>(cell_int(row.cells[4], row.offset));
    r.f3_star = cell_double(row.cells[5], row.offset);
    r.f3_tilde = cell_optional(row.cells[6], row.offset);
    rows.push_back(r);
  }
  return rows;
}

// ---------------------------------------------------------------------------

std::string hovmoeller_csv(const HovmoellerGrid& grid) {
  std::string out = "t";
  for (double pos : grid.positions) out += ',' + format_double(pos);
  out += '\n';
  for (std::size_t r = 0; r < grid.times.size(); ++r) {
    out += format_double(grid.times[r]);
    for (std::size_t c = 0; c < grid.positions.size(); ++c)
      out += ',' + format_double(grid.values(static_cast<Eigen::Index>(r),
                                             static_cast<Eigen::Index>(c)));
    out += '\n';
  }
  return out;
}

HovmoellerGrid hovmoeller_from_csv(const std::string& text) {
  const std::vector<CsvLine> lines = csv_lines(text);
  if (lines.empty()) throw ParseError("empty table: missing header row", 0);
  const std::vector<std::string>& header = lines.front().cells;
  if (header.empty() || header[0] != "t")
    throw ParseError("first column must be 't'", lines.front().offset);

  HovmoellerGrid grid;
  for (std::size_t c = 1; c < header.size(); ++c)
    grid.positions.push_back(cell_double(header[c], lines.front().offset));
  const std::size_t rows = lines.size() - 1;
  grid.values.resize(static_cast<Eigen::Index>(rows),
                     static_cast<Eigen::Index>(grid.positions.size()));
  for (std::size_t r = 0; r < rows; ++r) {
    const CsvLine& row = lines[r + 1];
    if (row.cells.size() != header.size())
      throw ParseError("row has " + std::to_string(row.cells.size()) + " cells; expected " +
                           std::to_string(header.size()),
                       row.offset);
    grid.times.push_back(cell_double(row.cells[0], row.offset));
    for (std::size_t c = 1; c < row.cells.size(); ++c)
      grid.values(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c - 1)) =
          cell_double(row.cells[c], row.offset);
  }
  return grid;
}

std::string hovmoeller_svg(const HovmoellerGrid& grid) {
  const int rows = static_cast<int>(grid.times.size());
  const int cols = static_cast<int>(grid.positions.size());
  if (rows < 1 || cols < 1) throw DomainError("empty raster");

  const double cw = std::clamp(860.0 / cols, 2.0, 10.0);
  const double ch = std::clamp(620.0 / rows, 1.0, 10.0);
  const double ml = 55, mt = 15, mr = 15, mb = 40;
  const double width = ml + cols * cw + mr, height = mt + rows * ch + mb;

  double vmax = 0.0;
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) vmax = std::max(vmax, std::abs(grid.values(r, c)));

  std::string svg = svg_open(width, height);
  // time increases upward: the first (earliest) row sits at the bottom
  for (int r = 0; r < rows; ++r) {
    const double y = mt + (rows - 1 - r) * ch;
    for (int c = 0; c < cols; ++c)
      svg += "<rect x=\"" + coord(ml + c * cw) + "\" y=\"" + coord(y) + "\" width=\"" +
             coord(cw + 0.2) + "\" height=\"" + coord(ch + 0.2) + "\" fill=\"" +
             diverging_color(grid.values(r, c), vmax) + "\"/>\n";
  }
  svg += "<rect x=\"" + coord(ml) + "\" y=\"" + coord(mt) + "\" width=\"" + coord(cols * cw) +
         "\" height=\"" + coord(rows * ch) + "\" fill=\"none\" stroke=\"#444\"/>\n";
  svg += "<text x=\"" + coord(ml) + "\" y=\"" + coord(mt + rows * ch + 18) +
         "\" font-size=\"12\" fill=\"#222\">site " + format_double(grid.positions.front()) +
         "</text>\n";
  svg += "<text x=\"" + coord(ml + cols * cw - 50) + "\" y=\"" + coord(mt + rows * ch + 18) +
         "\" font-size=\"12\" fill=\"#222\">site " + format_double(grid.positions.back()) +
         "</text>\n";
  svg += "<text x=\"" + coord(5.0) + "\" y=\"" + coord(mt + rows * ch) +
         "\" font-size=\"12\" fill=\"#222\">t=" + format_double(grid.times.front()) +
         "</text>\n";
  svg += "<text x=\"" + coord(5.0) + "\" y=\"" + coord(mt + 12) +
         "\" font-size=\"12\" fill=\"#222\">t=" + format_double(grid.times.back()) +
         "</text>\n";
  svg += "</svg>\n";
  return svg;
}

// ---------------------------------------------------------------------------

std::string basis_listing_json(const BasisListing& listing) {
  json maps = json::array();
  for (const GMap& g : listing.maps) maps.push_back(json::parse(gmap_json(g)));
  return json{{"k", listing.k}, {"dimension", listing.maps.size()}, {"maps", std::move(maps)}}
      .dump();
}

BasisListing basis_listing_from_json(const std::string& text) {
  const json j = parse_json_text(text);
  return with_schema([&] {
    BasisListing out;
    out.k = j.at("k").get<int>();
    for (const json& m : j.at("maps")) out.maps.push_back(gmap_from_json(m.dump()));
    if (j.at("dimension").get<std::size_t>() != out.maps.size())
      throw ParseError("dimension does not match the map count", 0);
    return out;
  });
}

std::string drift_report_json(const DriftReport& report) {
  json entries = json::array();
  for (const DriftEntry& e : report.entries)
    entries.push_back(json{{"name", e.name},
                           {"applicable", e.applicable},
                           {"note", e.note},
                           {"initial", json_of(e.initial)},
                           {"max_drift", json_of(e.max_drift)}});
  return json{{"max_drift", json_of(report.max_drift())}, {"entries", std::move(entries)}}.dump();
}

DriftReport drift_report_from_json(const std::string& text) {
  const json j = parse_json_text(text);
  return with_schema([&] {
    DriftReport out;
    for (const json& e : j.at("entries")) {
      DriftEntry entry;
      entry.name = e.at("name").get<std::string>();
      entry.applicable = e.at("applicable").get<bool>();
      entry.note = e.at("note").get<std::string>();
      entry.initial = num_or_nan(e.at("initial"));
      entry.max_drift = num_or_nan(e.at("max_drift"));
      out.entries.push_back(std::move(entry));
    }
    return out;
  });
}

std::string stability_json(const StabilityReport& report) {
  return json{{"spectral_abscissa", json_of(report.spectral_abscissa)},
              {"stable", report.stable},
              {"indeterminate", report.indeterminate},
              {"unstable_count", report.unstable_count}}
      .dump();
}

StabilityReport stability_from_json(const std::string& text) {
  const json j = parse_json_text(text);
  return with_schema([&] {
    StabilityReport out;
    out.spectral_abscissa = num_or_nan(j.at("spectral_abscissa"));
    out.stable = j.at("stable").get<bool>();
    out.indeterminate = j.at("indeterminate").get<bool>();
    out.unstable_count = j.at("unstable_count").get<int>();
    return out;
  });
}

std::string energy_audit_json(const EnergyAudit& audit) {
  return json{{"solver", audit.solver},
              {"steps", audit.steps},
              {"rejected", audit.rejected},
              {"rhs_evals", audit.rhs_evals},
              {"t0", json_of(audit.t0)},
              {"t1", json_of(audit.t1)},
              {"initial_energy", json_of(audit.initial_energy)},
              {"final_energy", json_of(audit.final_energy)},
              {"endpoint_loss_rate", json_of(audit.endpoint_loss_rate)},
              {"steady_loss_rate", json_of(audit.steady_loss_rate)}}
      .dump();
}

EnergyAudit energy_audit_from_json(const std::string& text) {
  const json j = parse_json_text(text);
  return with_schema([&] {
    EnergyAudit out;
    out.solver = j.at("solver").get<std::string>();
    out.steps = j.at("steps").get<long>();
    out.rejected = j.at("rejected").get<long>();
    out.rhs_evals = j.at("rhs_evals").get<long>();
    out.t0 = num_or_nan(j.at("t0"));
    out.t1 = num_or_nan(j.at("t1"));
    out.initial_energy = num_or_nan(j.at("initial_energy"));
    out.final_energy = num_or_nan(j.at("final_energy"));
    out.endpoint_loss_rate = num_or_nan(j.at("endpoint_loss_rate"));
    out.steady_loss_rate = num_or_nan(j.at("steady_loss_rate"));
    return out;
  });
}

std::string bracket_json(const BracketResult& result) {
  return json{{"n", result.n},
              {"m_target", result.m_target},
              {"f_lo", json_of(result.f_lo)},
              {"f_hi", json_of(result.f_hi)},
              {"tol_f", json_of(result.tol_f)},
              {"seed", result.seed},
              {"f3_tilde", json_of(result.f3_tilde)}}
      .dump();
}

BracketResult bracket_from_json(const std::string& text) {
  const json j = parse_json_text(text);
  return with_schema([&] {
    BracketResult out;
    out.n = j.at("n").get<int>();
    out.m_target = j.at("m_target").get<int>();
    out.f_lo = num_or_nan(j.at("f_lo"));
    out.f_hi = num_or_nan(j.at("f_hi"));
    out.tol_f = num_or_nan(j.at("tol_f"));
    out.seed = j.at("seed").get<std::uint64_t>();
    out.f3_tilde = num_or_nan(j.at("f3_tilde"));
    return out;
  });
}

std::string polar_reduction_json(const PolarReduction& r) {
  return json{{"rho0", json_of(r.rho0)},
              {"rho1", json_of(r.rho1)},
              {"alpha0", json_of(r.alpha0)},
              {"alpha1", json_of(r.alpha1)},
              {"degenerate", r.degenerate},
              {"hamiltonian", json_of(r.hamiltonian)}}
      .dump();
}

PolarReduction polar_reduction_from_json(const std::string& text) {
  const json j = parse_json_text(text);
  return with_schema([&] {
    PolarReduction out;
    out.rho0 = num_or_nan(j.at("rho0"));
    out.rho1 = num_or_nan(j.at("rho1"));
    out.alpha0 = num_or_nan(j.at("alpha0"));
    out.alpha1 = num_or_nan(j.at("alpha1"));
    out.degenerate = j.at("degenerate").get<bool>();
    out.hamiltonian = num_or_nan(j.at("hamiltonian"));
    return out;
  });
}

std::string cross_reduction_json(const CrossProductReduction& r) {
  json c = json::array();
  json y0 = json::array();
  for (int i = 0; i < 3; ++i) {
    c.push_back(r.c[i]);
    y0.push_back(r.y0[i]);
  }
  return json{{"c", std::move(c)}, {"y0", std::move(y0)}}.dump();
}

CrossProductReduction cross_reduction_from_json(const std::string& text) {
  const json j = parse_json_text(text);
  return with_schema([&] {
    CrossProductReduction out;
    const json& c = j.at("c");
    const json& y = j.at("y0");
    for (int i = 0; i < 3; ++i) {
      out.c[i] = num_or_nan(c.at(i));
      out.y0[i] = num_or_nan(y.at(i));
    }
    return out;
  });
}

}  // namespace l96x
