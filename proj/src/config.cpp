#include "densemimo/config.hpp"

#include <cmath>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <vector>

#include <json.hpp>

#include "densemimo/errors.hpp"

namespace densemimo::config {
namespace {

using nlohmann::json;
using montecarlo::NetworkConfig;

[[noreturn]] void bad(const std::string& what) { throw UsageError("config: " + what); }

// Strict section reader: flags unknown keys so typos do not silently fall
// back to defaults.
class Section {
 public:
  Section(const json& j, std::string name) : j_(j), name_(std::move(name)) {
    if (!j_.is_object()) bad("section '" + name_ + "' must be an object");
  }
  ~Section() = default;

  const json* get(const std::string& key) {
    seen_.push_back(key);
    auto it = j_.find(key);
    return it == j_.end() ? nullptr : &*it;
  }

  double number(const std::string& key, double fallback) {
    const json* v = get(key);
    if (!v) return fallback;
    if (!v->is_number()) bad(name_ + "." + key + " must be a number");
    return v->get<double>();
  }

  void finish() {
    for (auto it = j_.begin(); it != j_.end(); ++it) {
      bool known = false;
      for (const auto& k : seen_)
        if (k == it.key()) known = true;
      if (!known) bad("unknown key '" + name_ + "." + it.key() + "'");
    }
  }

 private:
  const json& j_;
  std::string name_;
  std::vector<std::string> seen_;
};

double require_number(const json& j, const std::string& where) {
  if (!j.is_number()) bad(where + " must be a number");
  return j.get<double>();
}

std::vector<double> number_array(const json& j, const std::string& where) {
  if (!j.is_array()) bad(where + " must be an array of numbers");
  std::vector<double> out;
  for (const auto& v : j) out.push_back(require_number(v, where + " entries"));
  return out;
}

std::vector<double> parse_grid(const json& j) {
  if (j.is_array()) return number_array(j, "network.lambda_grid");
  if (j.is_object()) {
    Section s(j, "network.lambda_grid");
    const double lo = s.number("min", 1.0);
    const double hi = s.number("max", 1000.0);
    const double pts = s.number("points", 8.0);
    s.finish();
    const int n = static_cast<int>(pts);
    if (n < 2 || pts != n) bad("network.lambda_grid.points must be an integer >= 2");
    if (!(lo > 0.0) || !(hi > lo)) bad("network.lambda_grid needs 0 < min < max");
    std::vector<double> grid(n);
    for (int i = 0; i < n; ++i)
      grid[i] = lo * std::pow(hi / lo, static_cast<double>(i) / (n - 1));
    grid.back() = hi;
    return grid;
  }
  bad("network.lambda_grid must be an array or {min,max,points}");
}

geometry::Window parse_window(const json& j) {
  Section s(j, "network.window");
  const json* shape = s.get("shape");
  if (!shape || !shape->is_string())
    bad("network.window.shape must be \"auto\", \"disc\", or \"square\"");
  const std::string kind = shape->get<std::string>();
  geometry::Window w;
  if (kind == "auto") {
    w = {geometry::Shape::kDisc, 0.0};
  } else if (kind == "disc" || kind == "square") {
    w.shape = kind == "disc" ? geometry::Shape::kDisc : geometry::Shape::kSquare;
    const json* size = s.get("size");
    if (!size) bad("network.window.size required for shape '" + kind + "'");
    w.size = require_number(*size, "network.window.size");
    if (!(w.size > 0.0)) bad("network.window.size must be positive");
  } else {
    bad("unknown network.window.shape '" + kind + "'");
  }
  s.finish();
  return w;
}

pathloss::HeadRule parse_head(const std::string& s) {
  if (s == "flat") return pathloss::HeadRule::kFlat;
  if (s == "power_law") return pathloss::HeadRule::kPowerLaw;
  bad("pathloss.head must be \"flat\" or \"power_law\"");
}

pathloss::TailRule parse_tail(const std::string& s) {
  if (s == "none") return pathloss::TailRule::kNone;
  if (s == "zero") return pathloss::TailRule::kZero;
  if (s == "power_law") return pathloss::TailRule::kPowerLaw;
  bad("pathloss.tail must be \"none\", \"zero\", or \"power_law\"");
}

pathloss::PathLossModel parse_model(const json& j) {
  Section s(j, "pathloss");
  const json* variant = s.get("variant");
  if (!variant || !variant->is_string()) bad("pathloss.variant must be a string");
  const std::string kind = variant->get<std::string>();
  std::string unit = "km";
  if (const json* u = s.get("distance_unit")) {
    if (!u->is_string()) bad("pathloss.distance_unit must be a string");
    unit = u->get<std::string>();
  }
  pathloss::Variant v;
  if (kind == "stretched_exp") {
    v = pathloss::StretchedExponential{s.number("eta", 0.9), s.number("kappa", 0.52)};
  } else if (kind == "bounded_single_slope") {
    v = pathloss::BoundedSingleSlope{s.number("l0", 1.0), s.number("r_c", 1.0),
                                     s.number("eta", 4.0)};
  } else if (kind == "bounded_multi_slope") {
    const json* bp = s.get("breakpoints");
    const json* ex = s.get("exponents");
    if (!bp || !ex) bad("pathloss bounded_multi_slope needs breakpoints and exponents");
    v = pathloss::BoundedMultiSlope{s.number("l0", 1.0),
                                    number_array(*bp, "pathloss.breakpoints"),
                                    number_array(*ex, "pathloss.exponents")};
  } else if (kind == "disc") {
    v = pathloss::DiscModel{s.number("l0", 1.0), s.number("radius", 1.0)};
  } else if (kind == "tabulated") {
    const json* r = s.get("r");
    const json* g = s.get("gain");
    if (!r || !g) bad("pathloss tabulated needs r and gain arrays");
    pathloss::Tabulated t{number_array(*r, "pathloss.r"),
                          number_array(*g, "pathloss.gain")};
    if (const json* h = s.get("head")) {
      if (!h->is_string()) bad("pathloss.head must be a string");
      t.head = parse_head(h->get<std::string>());
    }
    if (const json* tl = s.get("tail")) {
      if (!tl->is_string()) bad("pathloss.tail must be a string");
      t.tail = parse_tail(tl->get<std::string>());
    }
    v = std::move(t);
  } else {
    bad("unknown pathloss.variant '" + kind + "'");
  }
  s.finish();
  return pathloss::PathLossModel(std::move(v), std::move(unit));
}

channel::AntennaScalingLaw parse_law(const json& j, const std::string& where) {
  Section s(j, where);
  const json* form = s.get("form");
  if (!form || !form->is_string()) bad(where + ".form must be a string");
  const std::string kind = form->get<std::string>();
  channel::AntennaScalingLaw law = channel::AntennaScalingLaw::constant(1);
  if (kind == "constant") {
    const double n = s.number("n", 1.0);
    if (n != static_cast<int>(n)) bad(where + ".n must be an integer");
    law = channel::AntennaScalingLaw::constant(static_cast<int>(n));
  } else if (kind == "power") {
    law = channel::AntennaScalingLaw::power(s.number("c", 1.0), s.number("p", 1.0));
  } else if (kind == "power_log") {
    law = channel::AntennaScalingLaw::power_log(s.number("c", 1.0), s.number("p", 1.0),
                                                s.number("q", 1.0));
  } else {
    bad("unknown " + where + ".form '" + kind + "'");
  }
  s.finish();
  return law;
}

json law_json(const channel::AntennaScalingLaw& law) {
  json j;
  if (const auto* c = std::get_if<channel::Constant>(&law.form)) {
    j["form"] = "constant";
    j["n"] = c->n;
  } else if (const auto* p = std::get_if<channel::Power>(&law.form)) {
    j["form"] = "power";
    j["c"] = p->c;
    j["p"] = p->p;
  } else {
    const auto& pl = std::get<channel::PowerLog>(law.form);
    j["form"] = "power_log";
    j["c"] = pl.c;
    j["p"] = pl.p;
    j["q"] = pl.q;
  }
  return j;
}

json model_json(const pathloss::PathLossModel& model) {
  json j;
  j["distance_unit"] = model.distance_unit();
  if (const auto* se = std::get_if<pathloss::StretchedExponential>(&model.variant())) {
    j["variant"] = "stretched_exp";
    j["eta"] = se->eta;
    j["kappa"] = se->kappa;
  } else if (const auto* b = std::get_if<pathloss::BoundedSingleSlope>(&model.variant())) {
    j["variant"] = "bounded_single_slope";
    j["l0"] = b->l0;
    j["r_c"] = b->r_c;
    j["eta"] = b->eta;
  } else if (const auto* m = std::get_if<pathloss::BoundedMultiSlope>(&model.variant())) {
    j["variant"] = "bounded_multi_slope";
    j["l0"] = m->l0;
    j["breakpoints"] = m->breakpoints;
    j["exponents"] = m->exponents;
  } else if (const auto* d = std::get_if<pathloss::DiscModel>(&model.variant())) {
    j["variant"] = "disc";
    j["l0"] = d->l0;
    j["radius"] = d->radius;
  } else {
    const auto& t = std::get<pathloss::Tabulated>(model.variant());
    j["variant"] = "tabulated";
    j["r"] = t.r;
    j["gain"] = t.gain;
    j["head"] = t.head == pathloss::HeadRule::kFlat ? "flat" : "power_law";
    j["tail"] = t.tail == pathloss::TailRule::kNone
                    ? "none"
                    : (t.tail == pathloss::TailRule::kZero ? "zero" : "power_law");
  }
  return j;
}

}  // namespace

montecarlo::NetworkConfig parse(const std::string& text) {
  json doc = json::parse(text, nullptr, false);
  if (doc.is_discarded()) bad("not valid JSON");
  if (!doc.is_object()) bad("top level must be an object");

  NetworkConfig cfg;
  Section top(doc, "config");
  if (const json* network = top.get("network")) {
    Section s(*network, "network");
    if (const json* grid = s.get("lambda_grid")) cfg.lambda_grid = parse_grid(*grid);
    if (const json* window = s.get("window")) cfg.window = parse_window(*window);
    cfg.noise_db = s.number("noise_db", cfg.noise_db);
    s.finish();
  }
  if (const json* pl = top.get("pathloss")) cfg.model = parse_model(*pl);
  if (const json* ant = top.get("antennas")) {
    Section s(*ant, "antennas");
    if (const json* mode = s.get("mode")) {
      if (!mode->is_string()) bad("antennas.mode must be a string");
      const std::string m = mode->get<std::string>();
      if (m == "miso")
        cfg.mode = montecarlo::Mode::kMiso;
      else if (m == "mimo")
        cfg.mode = montecarlo::Mode::kMimo;
      else
        bad("antennas.mode must be \"miso\" or \"mimo\"");
    }
    if (const json* laws = s.get("t_laws")) {
      if (!laws->is_array() || laws->empty()) bad("antennas.t_laws must be a non-empty array");
      cfg.t_laws.clear();
      for (const auto& l : *laws) cfg.t_laws.push_back(parse_law(l, "antennas.t_laws"));
    }
    if (const json* r = s.get("r_law")) cfg.r_law = parse_law(*r, "antennas.r_law");
    s.finish();
  }
  if (const json* sim = top.get("simulation")) {
    Section s(*sim, "simulation");
    const double trials = s.number("trials", cfg.trials);
    if (trials != static_cast<int>(trials) || trials < 1)
      bad("simulation.trials must be a positive integer");
    cfg.trials = static_cast<int>(trials);
    const double seed = s.number("master_seed", static_cast<double>(cfg.master_seed));
    if (seed < 0 || seed != std::floor(seed) || seed > 9.007199254740992e15)
      bad("simulation.master_seed must be a non-negative integer");
    cfg.master_seed = static_cast<std::uint64_t>(seed);
    cfg.truncation_epsilon = s.number("truncation_epsilon", cfg.truncation_epsilon);
    if (!(cfg.truncation_epsilon > 0.0)) bad("simulation.truncation_epsilon must be positive");
    s.finish();
  }
  top.finish();
  if (cfg.lambda_grid.empty()) cfg.lambda_grid = montecarlo::default_lambda_grid();
  return cfg;
}

montecarlo::NetworkConfig load(const std::string& path) {
  if (path.size() >= 5 && path.compare(path.size() - 5, 5, ".toml") == 0)
    bad("TOML configs are not supported; '" + path + "' must be JSON");
  std::ifstream in(path, std::ios::binary);
  if (!in) bad("cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

std::string canonical(const montecarlo::NetworkConfig& cfg) {
  json window;
  if (cfg.window.size <= 0.0) {
    window["shape"] = "auto";
  } else {
    window["shape"] = cfg.window.shape == geometry::Shape::kDisc ? "disc" : "square";
    window["size"] = cfg.window.size;
  }
  json t_laws = json::array();
  for (const auto& law : cfg.t_laws) t_laws.push_back(law_json(law));
  // nlohmann objects iterate in key order, so dump() is canonical by itself.
  json doc = {
      {"network",
       {{"lambda_grid", cfg.lambda_grid},
        {"window", window},
        {"noise_db", cfg.noise_db}}},
      {"pathloss", model_json(cfg.model)},
      {"antennas",
       {{"mode", cfg.mode == montecarlo::Mode::kMimo ? "mimo" : "miso"},
        {"t_laws", t_laws},
        {"r_law", law_json(cfg.r_law)}}},
      {"simulation",
       {{"trials", cfg.trials},
        {"master_seed", cfg.master_seed},
        {"truncation_epsilon", cfg.truncation_epsilon}}},
  };
  return doc.dump();
}

std::string digest(const montecarlo::NetworkConfig& cfg) {
  const std::string bytes = canonical(cfg);
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  static const char* hex = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[i] = hex[h & 0xf];
    h >>= 4;
  }
  return out;
}

}  // namespace densemimo::config
