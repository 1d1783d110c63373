#include "zeta4/report.hh"

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace zeta4::report {

namespace {

using nlohmann::json;

std::string window_kind_name(smoothing::WindowKind k) {
  switch (k) {
    case smoothing::WindowKind::indicator: return "indicator";
    case smoothing::WindowKind::gaussian_conv: return "gaussian_conv";
    case smoothing::WindowKind::bump: return "bump";
  }
  throw std::logic_error("unknown window kind");
}

smoothing::WindowKind window_kind_from(const std::string& s) {
  if (s == "indicator") return smoothing::WindowKind::indicator;
  if (s == "gaussian_conv") return smoothing::WindowKind::gaussian_conv;
  if (s == "bump") return smoothing::WindowKind::bump;
  throw std::runtime_error("unknown window kind: " + s);
}

std::string kernel_kind_name(momofmom::KernelShape k) {
  return k == momofmom::KernelShape::indicator ? "indicator" : "smooth_exp";
}

momofmom::KernelShape kernel_kind_from(const std::string& s) {
  if (s == "indicator") return momofmom::KernelShape::indicator;
  if (s == "smooth_exp") return momofmom::KernelShape::smooth_exp;
  throw std::runtime_error("unknown kernel kind: " + s);
}

// Minimal JSON emitter with caller-controlled key order; nlohmann is used
// only for parsing, where byte layout does not matter.
class Obj {
 public:
  Obj& field(const std::string& k, const std::string& rendered) {
    body_ += (first_ ? "" : ",");
    body_ += "\"" + k + "\":" + rendered;
    first_ = false;
    return *this;
  }
  Obj& num(const std::string& k, double v) { return field(k, format_double(v)); }
  Obj& integer(const std::string& k, long long v) {
    return field(k, std::to_string(v));
  }
  Obj& str(const std::string& k, const std::string& v) {
    return field(k, "\"" + v + "\"");  // writers only emit identifier-safe text
  }
  std::string done() const { return "{" + body_ + "}"; }

 private:
  std::string body_;
  bool first_ = true;
};

std::string render_window(const std::optional<smoothing::Window>& w) {
  if (!w) return "null";
  return Obj{}
      .str("kind", window_kind_name(w->kind))
      .num("t1", w->t1)
      .num("t2", w->t2)
      .num("delta_w", w->delta_w)
      .done();
}

std::string render_kernel(const momofmom::AveragingKernel& k) {
  return Obj{}
      .str("kind", kernel_kind_name(k.kind))
      .num("c", k.c)
      .num("A", k.A)
      .done();
}

}  // namespace

std::string format_double(double x) {
  if (!std::isfinite(x)) return "null";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

std::string to_json(const empirical::MomentReport& r) {
  return Obj{}
             .num("T1", r.T1)
             .num("T2", r.T2)
             .field("shift", Obj{}
                                 .num("alpha", r.shift.alpha)
                                 .num("beta", r.shift.beta)
                                 .done())
             .field("window", render_window(r.window))
             .num("empirical", r.empirical)
             .num("main_term", r.main_term)
             .num("abs_diff", r.abs_diff)
             .num("rel_diff", r.rel_diff)
             .integer("n_evals", r.n_evals)
             .num("wall_seconds", r.wall_seconds)
             .done() +
         "\n";
}

std::string to_json(const momofmom::MoMReport& r) {
  Obj o;
  o.num("T", r.T)
      .field("kernel", render_kernel(r.kernel))
      .num("dbar", r.dbar)
      .num("odbar", r.odbar)
      .num("formula_total", r.formula_total)
      .field("empirical", r.empirical ? format_double(*r.empirical) : "null")
      .field("a_constant",
             r.a_constant ? format_double(*r.a_constant) : "null");
  return o.done() + "\n";
}

std::string to_json(const std::vector<divisor::CorrelationRecord>& recs) {
  std::string out = "[";
  for (std::size_t i = 0; i < recs.size(); ++i) {
    const auto& c = recs[i];
    if (i) out += ",";
    out += Obj{}
               .integer("X", c.X)
               .integer("r", c.r)
               .integer("sum", c.sum)
               .num("main", c.main)
               .num("error", c.error)
               .num("normalized_error", c.normalized_error)
               .done();
  }
  return out + "]\n";
}

std::string to_csv(const empirical::MomentReport& r) {
  std::string out =
      "T1,T2,alpha,beta,window_kind,delta_w,empirical,main_term,abs_diff,"
      "rel_diff,n_evals,wall_seconds\n";
  out += format_double(r.T1) + "," + format_double(r.T2) + "," +
         format_double(r.shift.alpha) + "," + format_double(r.shift.beta) +
         ",";
  out += (r.window ? window_kind_name(r.window->kind) : "none");
  out += ",";
  out += (r.window ? format_double(r.window->delta_w) : "");
  out += "," + format_double(r.empirical) + "," + format_double(r.main_term) +
         "," + format_double(r.abs_diff) + "," + format_double(r.rel_diff) +
         "," + std::to_string(r.n_evals) + "," +
         format_double(r.wall_seconds) + "\n";
  return out;
}

std::string to_csv(const momofmom::MoMReport& r) {
  std::string out = "T,c,kind,dbar,odbar,total,empirical,a_constant\n";
  out += format_double(r.T) + "," + format_double(r.kernel.c) + "," +
         kernel_kind_name(r.kernel.kind) + "," + format_double(r.dbar) + "," +
         format_double(r.odbar) + "," + format_double(r.formula_total) + ",";
  out += (r.empirical ? format_double(*r.empirical) : "");
  out += ",";
  out += (r.a_constant ? format_double(*r.a_constant) : "");
  out += "\n";
  return out;
}

std::string to_csv(const std::vector<divisor::CorrelationRecord>& recs) {
  return divisor::correlation_csv(recs);
}

empirical::MomentReport moment_report_from_json(const std::string& text) {
  json j = json::parse(text);
  empirical::MomentReport r;
  r.T1 = j.at("T1").get<double>();
  r.T2 = j.at("T2").get<double>();
  r.shift.alpha = j.at("shift").at("alpha").get<double>();
  r.shift.beta = j.at("shift").at("beta").get<double>();
  if (!j.at("window").is_null()) {
    const auto& w = j.at("window");
    r.window = smoothing::Window{
        window_kind_from(w.at("kind").get<std::string>()),
        w.at("t1").get<double>(), w.at("t2").get<double>(),
        w.at("delta_w").get<double>()};
  }
  r.empirical = j.at("empirical").get<double>();
  r.main_term = j.at("main_term").get<double>();
  r.abs_diff = j.at("abs_diff").get<double>();
  r.rel_diff = j.at("rel_diff").get<double>();
  r.n_evals = j.at("n_evals").get<long>();
  r.wall_seconds = j.at("wall_seconds").get<double>();
  return r;
}

momofmom::MoMReport mom_report_from_json(const std::string& text) {
  json j = json::parse(text);
  momofmom::MoMReport r;
  r.T = j.at("T").get<double>();
  r.kernel.kind = kernel_kind_from(j.at("kernel").at("kind").get<std::string>());
  r.kernel.c = j.at("kernel").at("c").get<double>();
  r.kernel.A = j.at("kernel").at("A").get<double>();
  r.dbar = j.at("dbar").get<double>();
  r.odbar = j.at("odbar").get<double>();
  r.formula_total = j.at("formula_total").get<double>();
  if (!j.at("empirical").is_null())
    r.empirical = j.at("empirical").get<double>();
  if (!j.at("a_constant").is_null())
    r.a_constant = j.at("a_constant").get<double>();
  return r;
}

std::vector<divisor::CorrelationRecord> correlation_records_from_json(
    const std::string& text) {
  json j = json::parse(text);
  std::vector<divisor::CorrelationRecord> out;
  for (const auto& e : j) {
    divisor::CorrelationRecord c;
    c.X = e.at("X").get<std::int64_t>();
    c.r = e.at("r").get<std::int64_t>();
    c.sum = e.at("sum").get<std::int64_t>();
    c.main = e.at("main").get<double>();
    c.error = e.at("error").get<double>();
    c.normalized_error = e.at("normalized_error").get<double>();
    out.push_back(c);
  }
  return out;
}

void write_file(const std::string& path, const std::string& text) {
  std::filesystem::path p(path);
  if (p.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(p.parent_path(), ec);
    if (ec)
      throw std::runtime_error("cannot create directory " +
                               p.parent_path().string() + ": " + ec.message());
  }
  std::ofstream f(p, std::ios::binary | std::ios::trunc);
  if (!f) throw std::runtime_error("cannot open " + path + " for writing");
  f << text;
  if (!text.empty() && text.back() != '\n') f << '\n';
  f.flush();
  if (!f) throw std::runtime_error("write failed for " + path);
}

namespace {
enum class Fmt { json, csv };
Fmt fmt_of(const std::string& path) {
  auto ext = std::filesystem::path(path).extension().string();
  if (ext == ".json") return Fmt::json;
  if (ext == ".csv") return Fmt::csv;
  throw std::runtime_error("write_report: path must end in .json or .csv: " +
                           path);
}
}  // namespace

void write_report(const empirical::MomentReport& r, const std::string& path) {
  write_file(path, fmt_of(path) == Fmt::json ? to_json(r) : to_csv(r));
}
void write_report(const momofmom::MoMReport& r, const std::string& path) {
  write_file(path, fmt_of(path) == Fmt::json ? to_json(r) : to_csv(r));
}
void write_report(const std::vector<divisor::CorrelationRecord>& recs,
                  const std::string& path) {
  write_file(path, fmt_of(path) == Fmt::json ? to_json(recs) : to_csv(recs));
}

}  // namespace zeta4::report
