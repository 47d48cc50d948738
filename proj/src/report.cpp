#include "constellation/report.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace constellation {
namespace {

using nlohmann::json;

std::string json_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size() + 2);
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default: out += c;
    }
  }
  return out;
}

std::string jstr(const std::string& s) { return "\"" + json_escape(s) + "\""; }

// finite doubles as bare %.6g tokens; inf/nan become strings
std::string jnum(double v) { return std::isfinite(v) ? format_g6(v) : jstr(format_g6(v)); }

double jdouble(const json& v) {
  if (v.is_string()) {
    const std::string& s = v.get_ref<const std::string&>();
    if (s == "inf") return INFINITY;
    if (s == "-inf") return -INFINITY;
    if (s == "nan") return NAN;
    throw std::invalid_argument("report: bad numeric string \"" + s + "\"");
  }
  return v.get<double>();
}

std::string join_rows(const std::vector<std::string>& rows) {
  if (rows.empty()) return "[]\n";
  std::string out = "[\n";
  for (size_t i = 0; i < rows.size(); ++i) {
    out += rows[i];
    out += (i + 1 < rows.size()) ? ",\n" : "\n";
  }
  out += "]\n";
  return out;
}

std::string tol_text(double tolerance, TolKind kind) {
  return kind == TolKind::Rel ? format_g6(tolerance * 100) + "%" : format_g6(tolerance);
}

// verification row values: keep exact integers (counts) readable. Values
// whose %.6g rounding parses back integral are emitted as integers too, so
// parse-and-reemit is a fixed point.
std::string vnum(double v) {
  if (!std::isfinite(v)) return format_g6(v);
  if (v == std::floor(v) && std::fabs(v) < 9e15)
    return std::to_string(static_cast<long long>(v));
  std::string s = format_g6(v);
  const double back = std::strtod(s.c_str(), nullptr);
  if (back == std::floor(back) && std::fabs(back) < 9e15)
    return std::to_string(static_cast<long long>(back));
  return s;
}

std::pair<double, TolKind> parse_tol(const std::string& text) {
  if (!text.empty() && text.back() == '%')
    return {std::stod(text.substr(0, text.size() - 1)) / 100.0, TolKind::Rel};
  return {std::stod(text), TolKind::Abs};
}

std::string product_value_json(const ProductValue& pv) {
  return "{\"value\":" + jnum(pv.value) +
         ",\"truncation_prime\":" + std::to_string(pv.truncation_prime) +
         ",\"tail_bound\":" + jnum(pv.tail_bound) + "}";
}

}  // namespace

std::string format_g6(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

bool VerificationReport::all_pass() const {
  for (const auto& r : rows)
    if (!r.pass) return false;
  return true;
}

std::string to_json(const std::vector<CountRecord>& rows) {
  std::vector<std::string> out;
  out.reserve(rows.size());
  for (const auto& r : rows)
    out.push_back("{\"n\":" + std::to_string(r.n) + ",\"pattern\":" + jstr(r.pattern.str()) +
                  ",\"N\":" + std::to_string(r.count) + ",\"f\":" + jnum(r.empirical_f) +
                  ",\"naive\":" + jnum(r.naive) + "}");
  return join_rows(out);
}

std::string to_csv(const std::vector<CountRecord>& rows) {
  std::string out = "n,pattern,N,f,naive\n";
  for (const auto& r : rows)
    out += std::to_string(r.n) + ",\"" + r.pattern.str() + "\"," + std::to_string(r.count) + "," +
           format_g6(r.empirical_f) + "," + format_g6(r.naive) + "\n";
  return out;
}

std::string to_json(const std::vector<PdfRow>& rows) {
  std::vector<std::string> out;
  out.reserve(rows.size());
  for (const auto& r : rows)
    out.push_back("{\"n\":" + std::to_string(r.n) + ",\"pattern\":" + jstr(r.pattern.str()) +
                  ",\"empirical_f\":" + jnum(r.empirical_f) +
                  ",\"predicted_f\":" + jnum(r.predicted_f) + ",\"ratio\":" + jnum(r.ratio) + "}");
  return join_rows(out);
}

std::string to_csv(const std::vector<PdfRow>& rows) {
  std::string out = "n,pattern,empirical_f,predicted_f,ratio\n";
  for (const auto& r : rows)
    out += std::to_string(r.n) + ",\"" + r.pattern.str() + "\"," + format_g6(r.empirical_f) + "," +
           format_g6(r.predicted_f) + "," + format_g6(r.ratio) + "\n";
  return out;
}

std::string to_json(const std::vector<Prediction>& rows) {
  std::vector<std::string> out;
  out.reserve(rows.size());
  for (const auto& r : rows)
    out.push_back("{\"x\":" + std::to_string(r.x) + ",\"pattern\":" + jstr(r.pattern.str()) +
                  ",\"k\":" + product_value_json(r.k_value) + ",\"logint\":" + jnum(r.logint) +
                  ",\"predicted_count\":" + jnum(r.predicted_count) +
                  ",\"predicted_f\":" + jnum(r.predicted_f) + "}");
  return join_rows(out);
}

std::string to_csv(const std::vector<Prediction>& rows) {
  std::string out = "x,pattern,k,logint,predicted_count,predicted_f\n";
  for (const auto& r : rows)
    out += std::to_string(r.x) + ",\"" + r.pattern.str() + "\"," + format_g6(r.k_value.value) +
           "," + format_g6(r.logint) + "," + format_g6(r.predicted_count) + "," +
           format_g6(r.predicted_f) + "\n";
  return out;
}

std::string to_json(const std::vector<ConstantsRow>& rows) {
  std::vector<std::string> out;
  out.reserve(rows.size());
  for (const auto& r : rows)
    out.push_back("{\"m\":" + std::to_string(r.m) + ",\"z\":" + std::to_string(r.z) +
                  ",\"Z\":" + jstr(r.z_prod.str()) + ",\"k\":" + jnum(r.k) +
                  ",\"k_tail\":" + jnum(r.k_tail) + ",\"C\":" + jnum(r.c) +
                  ",\"C_tail\":" + jnum(r.c_tail) + ",\"r\":" + jnum(r.r) + "}");
  return join_rows(out);
}

std::string to_csv(const std::vector<ConstantsRow>& rows) {
  std::string out = "m,z,Z,k,k_tail,C,C_tail,r\n";
  for (const auto& r : rows)
    out += std::to_string(r.m) + "," + std::to_string(r.z) + "," + r.z_prod.str() + "," +
           format_g6(r.k) + "," + format_g6(r.k_tail) + "," + format_g6(r.c) + "," +
           format_g6(r.c_tail) + "," + format_g6(r.r) + "\n";
  return out;
}

std::string to_json(const VerificationReport& report) {
  std::string out = "{\"metadata\":{\"limit\":" + std::to_string(report.limit) +
                    ",\"truncation\":" + std::to_string(report.truncation) +
                    ",\"wall_time\":" + jnum(report.wall_time) + "},\"rows\":";
  std::vector<std::string> rows;
  rows.reserve(report.rows.size());
  for (const auto& r : report.rows)
    rows.push_back("{\"name\":" + jstr(r.name) + ",\"paper_value\":" + vnum(r.paper_value) +
                   ",\"computed_value\":" + vnum(r.computed_value) +
                   ",\"tolerance\":" + jstr(tol_text(r.tolerance, r.kind)) +
                   ",\"pass\":" + (r.pass ? "true" : "false") + "}");
  out += join_rows(rows);
  out += "}\n";
  return out;
}

std::string to_csv(const VerificationReport& report) {
  std::string out = "name,paper_value,computed_value,tolerance,pass\n";
  for (const auto& r : report.rows)
    out += "\"" + r.name + "\"," + vnum(r.paper_value) + "," + vnum(r.computed_value) + "," +
           tol_text(r.tolerance, r.kind) + "," + (r.pass ? "true" : "false") + "\n";
  return out;
}

std::string reemit_count_json(const std::string& text) {
  json doc = json::parse(text);
  std::vector<CountRecord> rows;
  for (const auto& r : doc)
    rows.push_back({r.at("n").get<uint64_t>(), Pattern::parse(r.at("pattern").get<std::string>()),
                    r.at("N").get<uint64_t>(), jdouble(r.at("f")), jdouble(r.at("naive"))});
  return to_json(rows);
}

std::string reemit_pdf_json(const std::string& text) {
  json doc = json::parse(text);
  std::vector<PdfRow> rows;
  for (const auto& r : doc)
    rows.push_back({r.at("n").get<uint64_t>(), Pattern::parse(r.at("pattern").get<std::string>()),
                    jdouble(r.at("empirical_f")), jdouble(r.at("predicted_f")),
                    jdouble(r.at("ratio"))});
  return to_json(rows);
}

std::string reemit_prediction_json(const std::string& text) {
  json doc = json::parse(text);
  std::vector<Prediction> rows;
  for (const auto& r : doc) {
    const auto& k = r.at("k");
    ProductValue pv{jdouble(k.at("value")), k.at("truncation_prime").get<uint64_t>(),
                    jdouble(k.at("tail_bound"))};
    rows.push_back({r.at("x").get<uint64_t>(), Pattern::parse(r.at("pattern").get<std::string>()),
                    pv, jdouble(r.at("logint")), jdouble(r.at("predicted_count")),
                    jdouble(r.at("predicted_f")), true});
  }
  return to_json(rows);
}

std::string reemit_constants_json(const std::string& text) {
  json doc = json::parse(text);
  std::vector<ConstantsRow> rows;
  for (const auto& r : doc) {
    std::string z = r.at("Z").get<std::string>();
    size_t slash = z.find('/');
    Rational zp = slash == std::string::npos
                      ? Rational(std::stoll(z))
                      : Rational(std::stoll(z.substr(0, slash)), std::stoll(z.substr(slash + 1)));
    rows.push_back({r.at("m").get<unsigned>(), r.at("z").get<uint64_t>(), zp, jdouble(r.at("k")),
                    jdouble(r.at("k_tail")), jdouble(r.at("C")), jdouble(r.at("C_tail")),
                    jdouble(r.at("r"))});
  }
  return to_json(rows);
}

std::string reemit_verification_json(const std::string& text) {
  json doc = json::parse(text);
  VerificationReport report;
  const auto& meta = doc.at("metadata");
  report.limit = meta.at("limit").get<uint64_t>();
  report.truncation = meta.at("truncation").get<uint64_t>();
  report.wall_time = jdouble(meta.at("wall_time"));
  for (const auto& r : doc.at("rows")) {
    auto [tol, kind] = parse_tol(r.at("tolerance").get<std::string>());
    CheckRow row;
    row.name = r.at("name").get<std::string>();
    row.paper_value = jdouble(r.at("paper_value"));
    row.computed_value = jdouble(r.at("computed_value"));
    row.tolerance = tol;
    row.kind = kind;
    row.pass = r.at("pass").get<bool>();
    report.rows.push_back(std::move(row));
  }
  return to_json(report);
}

void write_file_atomic(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp + " for writing");
    out << content;
    out.flush();
    if (!out) throw std::runtime_error("write failed: " + tmp);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    throw std::runtime_error("cannot rename " + tmp + " to " + path);
}

}  // namespace constellation
