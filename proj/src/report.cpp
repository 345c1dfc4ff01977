#include "densemimo/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <limits>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "densemimo/asymptotics.hpp"
#include "densemimo/config.hpp"
#include "densemimo/errors.hpp"
#include "densemimo/geometry.hpp"
#include "densemimo/rng.hpp"
#include "densemimo/version.hpp"

namespace densemimo::report {
namespace {

using nlohmann::json;
using montecarlo::NetworkConfig;
using montecarlo::SweepRecord;
using montecarlo::SweepResult;

// Shortest round-trip decimal form; the reason reruns are byte-identical.
std::string fmt(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

bool multi_law(const SweepResult& sweep) {
  for (const auto& rec : sweep.records)
    if (rec.law_index != 0) return true;
  return false;
}

// Normalized-SINR target for one law, or NaN when the law admits none.
double norm_limit(const NetworkConfig& cfg, std::size_t law) {
  try {
    const double miso = asymptotics::miso_sinr_limit(cfg.model);
    if (cfg.mode != montecarlo::Mode::kMimo) return miso;
    const double y = asymptotics::y_ratio(cfg.t_laws[law], cfg.r_law);
    return asymptotics::mimo_sinr_limit(cfg.model, y);
  } catch (const std::exception&) {
    return std::numeric_limits<double>::quiet_NaN();
  }
}

json asymptote_json(const NetworkConfig& cfg) {
  json a;
  try {
    const double gamma = pathloss::gamma_integral(cfg.model);
    a["l0"] = pathloss::evaluate(cfg.model, 0.0);
    a["gamma"] = gamma;
    a["miso_sinr_limit"] = asymptotics::miso_sinr_limit(cfg.model);
  } catch (const std::exception& e) {
    a["error"] = e.what();
    return a;
  }
  json laws = json::array();
  for (std::size_t i = 0; i < cfg.t_laws.size(); ++i) {
    const auto cls = channel::classify_scaling(cfg.t_laws[i]);
    const auto pred = asymptotics::ase_regime(cfg.t_laws[i]);
    json l;
    l["index"] = i;
    l["law"] = cfg.t_laws[i].describe();
    l["regime"] = cls.regime == channel::Regime::kSublinear
                      ? "sublinear"
                      : (cls.regime == channel::Regime::kLinear ? "linear"
                                                                : "superlinear");
    l["ase_family"] = pred.describe();
    l["ase_scale"] = pred.scale.describe();
    const double limit = norm_limit(cfg, i);
    if (std::isfinite(limit)) l["norm_sinr_limit"] = limit;
    laws.push_back(l);
  }
  a["laws"] = laws;
  return a;
}

struct Series {
  std::string label;
  int color = 0;
  bool dashed = false;
  std::vector<std::pair<double, double>> pts;  // (lambda, value)
};

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c",
                                    "#9467bd", "#ff7f0e", "#8c564b"};

std::string coord(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string tick_label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

std::string render_svg(const NetworkConfig& cfg, const std::string& title,
                       const std::vector<Series>& series) {
  constexpr double kW = 760, kH = 500;
  constexpr double kL = 70, kR = 560, kT = 40, kB = 455;
  double lx0 = 1e300, lx1 = -1e300, ly0 = 1e300, ly1 = -1e300;
  for (const auto& s : series)
    for (const auto& [x, y] : s.pts) {
      lx0 = std::min(lx0, std::log10(x));
      lx1 = std::max(lx1, std::log10(x));
      ly0 = std::min(ly0, std::log10(y));
      ly1 = std::max(ly1, std::log10(y));
    }
  if (lx0 > lx1) lx0 = 0, lx1 = 1;
  if (ly0 > ly1) ly0 = 0, ly1 = 1;
  if (lx1 - lx0 < 1e-9) lx1 = lx0 + 1;
  if (ly1 - ly0 < 1e-9) ly1 = ly0 + 1;
  ly0 -= 0.05 * (ly1 - ly0);
  ly1 += 0.05 * (ly1 - ly0);
  const auto px = [&](double x) {
    return kL + (std::log10(x) - lx0) / (lx1 - lx0) * (kR - kL);
  };
  const auto py = [&](double y) {
    return kB - (std::log10(y) - ly0) / (ly1 - ly0) * (kB - kT);
  };

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kW
      << "\" height=\"" << kH << "\" viewBox=\"0 0 " << kW << " " << kH
      << "\">\n";
  out << "<desc>digest=" << config::digest(cfg) << " rng=" << kRngId
      << " schema=" << kSchemaVersion << "</desc>\n";
  out << "<rect width=\"" << kW << "\" height=\"" << kH
      << "\" fill=\"white\"/>\n";
  out << "<text x=\"" << (kL + kR) / 2 << "\" y=\"24\" text-anchor=\"middle\" "
         "font-family=\"monospace\" font-size=\"15\">"
      << title << "</text>\n";
  out << "<rect x=\"" << kL << "\" y=\"" << kT << "\" width=\"" << kR - kL
      << "\" height=\"" << kB - kT
      << "\" fill=\"none\" stroke=\"#333\" stroke-width=\"1\"/>\n";

  // x ticks on integer decades, y ticks on quarters of the log range.
  for (int d = static_cast<int>(std::ceil(lx0 - 1e-9));
       d <= static_cast<int>(std::floor(lx1 + 1e-9)); ++d) {
    const double x = px(std::pow(10.0, d));
    out << "<line x1=\"" << coord(x) << "\" y1=\"" << kB << "\" x2=\""
        << coord(x) << "\" y2=\"" << kB + 6
        << "\" stroke=\"#333\" stroke-width=\"1\"/>\n";
    out << "<text x=\"" << coord(x) << "\" y=\"" << kB + 22
        << "\" text-anchor=\"middle\" font-family=\"monospace\" "
           "font-size=\"12\">1e"
        << d << "</text>\n";
  }
  for (int q = 0; q <= 4; ++q) {
    const double ly = ly0 + q * (ly1 - ly0) / 4;
    const double y = kB - (ly - ly0) / (ly1 - ly0) * (kB - kT);
    out << "<line x1=\"" << kL - 6 << "\" y1=\"" << coord(y) << "\" x2=\""
        << kL << "\" y2=\"" << coord(y)
        << "\" stroke=\"#333\" stroke-width=\"1\"/>\n";
    out << "<text x=\"" << kL - 10 << "\" y=\"" << coord(y + 4)
        << "\" text-anchor=\"end\" font-family=\"monospace\" font-size=\"12\">"
        << tick_label(std::pow(10.0, ly)) << "</text>\n";
  }
  out << "<text x=\"" << (kL + kR) / 2 << "\" y=\"" << kH - 8
      << "\" text-anchor=\"middle\" font-family=\"monospace\" "
         "font-size=\"13\">base-station density (per unit area, log)</text>\n";

  for (const auto& s : series) {
    if (s.pts.empty()) continue;
    out << "<polyline fill=\"none\" stroke=\"" << kPalette[s.color % 6]
        << "\" stroke-width=\"" << (s.dashed ? "1.2" : "1.8") << "\"";
    if (s.dashed) out << " stroke-dasharray=\"6 4\"";
    out << " points=\"";
    for (const auto& [x, y] : s.pts)
      out << coord(px(x)) << "," << coord(py(y)) << " ";
    out << "\"/>\n";
  }

  // Legend.
  double ly_pos = kT + 10;
  for (const auto& s : series) {
    if (s.dashed || s.pts.empty()) continue;
    out << "<line x1=\"" << kR + 14 << "\" y1=\"" << ly_pos << "\" x2=\""
        << kR + 44 << "\" y2=\"" << ly_pos << "\" stroke=\""
        << kPalette[s.color % 6] << "\" stroke-width=\"2\"/>\n";
    out << "<text x=\"" << kR + 50 << "\" y=\"" << ly_pos + 4
        << "\" font-family=\"monospace\" font-size=\"12\">" << s.label
        << "</text>\n";
    ly_pos += 20;
  }
  bool any_dashed = false;
  for (const auto& s : series) any_dashed |= s.dashed && !s.pts.empty();
  if (any_dashed) {
    out << "<line x1=\"" << kR + 14 << "\" y1=\"" << ly_pos << "\" x2=\""
        << kR + 44 << "\" y2=\"" << ly_pos
        << "\" stroke=\"#777\" stroke-width=\"1.2\" "
           "stroke-dasharray=\"6 4\"/>\n";
    out << "<text x=\"" << kR + 50 << "\" y=\"" << ly_pos + 4
        << "\" font-family=\"monospace\" font-size=\"12\">asymptote</text>\n";
  }
  out << "</svg>\n";
  return out.str();
}

std::vector<Series> curve_series(const NetworkConfig& cfg,
                                 const SweepResult& sweep, bool ase) {
  std::vector<Series> series;
  for (std::size_t law = 0; law < cfg.t_laws.size(); ++law) {
    Series s;
    s.label = cfg.t_laws[law].describe();
    s.color = static_cast<int>(law);
    for (const auto& rec : sweep.records) {
      if (rec.law_index != static_cast<int>(law)) continue;
      const double y = ase ? rec.ase.mean : rec.sinr.mean;
      if (y > 0.0 && std::isfinite(y)) s.pts.emplace_back(rec.lambda, y);
    }
    series.push_back(std::move(s));

    const double limit = norm_limit(cfg, law);
    if (!std::isfinite(limit) || sweep.records.empty()) continue;
    Series a;
    a.color = static_cast<int>(law);
    a.dashed = true;
    const double lo = sweep.records.front().lambda;
    const double hi = sweep.records.back().lambda;
    for (int i = 0; i <= 48; ++i) {
      const double lambda = lo * std::pow(hi / lo, i / 48.0);
      const double n_t = channel::antennas_at(cfg.t_laws[law], lambda);
      const double sinr = limit * n_t / lambda;
      const double y = ase ? lambda * std::log2(1.0 + sinr) : sinr;
      if (y > 0.0 && std::isfinite(y)) a.pts.emplace_back(lambda, y);
    }
    series.push_back(std::move(a));
  }
  return series;
}

json record_json(const SweepRecord& rec) {
  json r;
  r["lambda"] = rec.lambda;
  r["n_t"] = rec.n_t;
  r["n_r"] = rec.n_r;
  r["law"] = rec.law_index;
  r["trials"] = rec.trials;
  r["censored"] = rec.censored;
  r["samples"] = rec.sinr.n;
  r["mean_sinr"] = rec.sinr.mean;
  r["sinr_ci_half"] = rec.sinr.half_width;
  r["sinr_ci_lo"] = rec.sinr.lo();
  r["sinr_ci_hi"] = rec.sinr.hi();
  r["mean_ase"] = rec.ase.mean;
  r["ase_ci_half"] = rec.ase.half_width;
  r["ase_ci_lo"] = rec.ase.lo();
  r["ase_ci_hi"] = rec.ase.hi();
  r["mean_norm_sinr"] = rec.norm_sinr.mean;
  r["norm_sinr_ci_half"] = rec.norm_sinr.half_width;
  r["norm_sinr_ci_lo"] = rec.norm_sinr.lo();
  r["norm_sinr_ci_hi"] = rec.norm_sinr.hi();
  return r;
}

}  // namespace

std::string to_csv(const SweepResult& sweep) {
  const bool multi = multi_law(sweep);
  std::ostringstream out;
  out << "lambda,n_t,n_r,mean_sinr,sinr_ci_lo,sinr_ci_hi,mean_ase,ase_ci_lo,"
         "ase_ci_hi,mean_norm_sinr,censored";
  if (multi) out << ",law";
  out << "\n";
  for (const auto& rec : sweep.records) {
    out << fmt(rec.lambda) << ',' << rec.n_t << ',' << rec.n_r << ','
        << fmt(rec.sinr.mean) << ',' << fmt(rec.sinr.lo()) << ','
        << fmt(rec.sinr.hi()) << ',' << fmt(rec.ase.mean) << ','
        << fmt(rec.ase.lo()) << ',' << fmt(rec.ase.hi()) << ','
        << fmt(rec.norm_sinr.mean) << ',' << rec.censored;
    if (multi) out << ',' << rec.law_index;
    out << "\n";
  }
  return out.str();
}

std::string to_json(const NetworkConfig& cfg, const SweepResult& sweep) {
  json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["code_version"] = kCodeVersion;
  doc["rng_id"] = kRngId;
  doc["digest"] = config::digest(cfg);
  doc["config"] = json::parse(config::canonical(cfg));
  doc["truncation_radius"] = sweep.truncation_radius;
  doc["master_seed"] = sweep.master_seed;
  doc["warnings"] = sweep.warnings;
  doc["asymptote"] = asymptote_json(cfg);
  json records = json::array();
  for (const auto& rec : sweep.records) records.push_back(record_json(rec));
  doc["records"] = records;
  return doc.dump(2) + "\n";
}

SweepResult sweep_from_json(const std::string& text) {
  json doc = json::parse(text, nullptr, false);
  if (doc.is_discarded() || !doc.is_object())
    throw UsageError("sweep document: not valid JSON");
  if (doc.value("schema_version", "") != std::string(kSchemaVersion))
    throw UsageError("sweep document: unsupported schema version");
  SweepResult sweep;
  try {
    sweep.truncation_radius = doc.at("truncation_radius").get<double>();
    sweep.master_seed = doc.at("master_seed").get<std::uint64_t>();
    for (const auto& w : doc.at("warnings"))
      sweep.warnings.push_back(w.get<std::string>());
    for (const auto& r : doc.at("records")) {
      SweepRecord rec;
      rec.lambda = r.at("lambda").get<double>();
      rec.n_t = r.at("n_t").get<int>();
      rec.n_r = r.at("n_r").get<int>();
      rec.law_index = r.at("law").get<int>();
      rec.trials = r.at("trials").get<int>();
      rec.censored = r.at("censored").get<int>();
      const auto n = r.at("samples").get<std::size_t>();
      rec.sinr = {r.at("mean_sinr").get<double>(),
                  r.at("sinr_ci_half").get<double>(), n};
      rec.ase = {r.at("mean_ase").get<double>(),
                 r.at("ase_ci_half").get<double>(), n};
      rec.norm_sinr = {r.at("mean_norm_sinr").get<double>(),
                       r.at("norm_sinr_ci_half").get<double>(), n};
      sweep.records.push_back(rec);
    }
  } catch (const json::exception& e) {
    throw UsageError(std::string("sweep document: ") + e.what());
  }
  return sweep;
}

std::string json_digest(const std::string& text) {
  json doc = json::parse(text, nullptr, false);
  if (doc.is_discarded() || !doc.is_object()) return "";
  return doc.value("digest", "");
}

std::string sinr_svg(const NetworkConfig& cfg, const SweepResult& sweep) {
  return render_svg(cfg, "mean SINR vs density",
                    curve_series(cfg, sweep, false));
}

std::string ase_svg(const NetworkConfig& cfg, const SweepResult& sweep) {
  return render_svg(cfg, "mean ASE vs density", curve_series(cfg, sweep, true));
}

std::string manifest_json(const NetworkConfig& cfg,
                          const std::vector<std::string>& outputs,
                          const std::string& timestamp) {
  json doc;
  doc["digest"] = config::digest(cfg);
  doc["rng_id"] = kRngId;
  doc["code_version"] = kCodeVersion;
  doc["schema_version"] = kSchemaVersion;
  doc["master_seed"] = cfg.master_seed;
  doc["outputs"] = outputs;
  if (timestamp.empty()) {
    doc["timestamp"] = nullptr;
  } else {
    doc["timestamp"] = timestamp;
  }
  return doc.dump(2) + "\n";
}

std::string realizations_csv(const NetworkConfig& cfg, int trials) {
  if (trials <= 0) throw UsageError("realization dump needs trials > 0");
  if (cfg.lambda_grid.empty()) throw UsageError("empty density grid");
  const auto ew = montecarlo::effective_window(cfg);
  const double lambda = cfg.lambda_grid.front();
  const std::int64_t n = std::min<std::int64_t>(trials, cfg.trials);
  std::string out = "trial,distance,angle\n";
  for (std::int64_t t = 0; t < n; ++t) {
    auto stream = rng::trial_stream(cfg.master_seed, 0,
                                    static_cast<uint64_t>(t),
                                    rng::Purpose::kGeometry);
    const auto real = geometry::sample_ppp(lambda, ew.window, stream);
    for (std::size_t i = 0; i < real.distance.size(); ++i) {
      out += std::to_string(t);
      out += ',';
      out += fmt(real.distance[i]);
      out += ',';
      out += fmt(real.angle[i]);
      out += '\n';
    }
  }
  return out;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << content;
  out.flush();
  if (!out) throw IoError("write failed for '" + path + "'");
}

void ensure_dir(const std::string& path) {
  std::error_code ec;
  std::filesystem::create_directories(path, ec);
  if (ec) throw IoError("cannot create directory '" + path + "': " + ec.message());
}

}  // namespace densemimo::report
