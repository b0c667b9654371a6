#include "mfcma/trace_io.hpp"

#include <charconv>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace mfcma {

namespace {

std::string sci(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17e", v);
  return buf;
}

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    parts.push_back(s.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

template <class T>
T parse_number(std::string_view key, std::string_view text) {
  text = trim(text);
  T value{};
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end) {
    throw std::invalid_argument("bad value for " + std::string(key) + ": '" + std::string(text) + "'");
  }
  return value;
}

bool parse_bool(std::string_view key, std::string_view text) {
  text = trim(text);
  if (text == "true" || text == "1" || text == "yes" || text == "on") return true;
  if (text == "false" || text == "0" || text == "no" || text == "off") return false;
  throw std::invalid_argument("bad boolean for " + std::string(key) + ": '" + std::string(text) + "'");
}

struct Setting {
  std::string_view section;
  std::string_view name;
};

constexpr Setting kSettings[] = {
    {"run", "algo"},          {"run", "objective"},   {"run", "n"},
    {"run", "seed"},          {"run", "max-fes"},     {"run", "sigma0"},
    {"run", "init-box"},      {"params", "lambda"},   {"params", "mu"},
    {"params", "h"},          {"params", "c-c"},      {"params", "c-1"},
    {"params", "c-mu"},       {"params", "c-sigma"},  {"params", "d-sigma"},
    {"params", "theta"},      {"params", "log-weights"},
    {"params", "rank-one-updated-path"},              {"params", "cap-isotropic-exponent"},
    {"trace", "record-sigma"}, {"trace", "record-spectrum"}, {"trace", "spectrum-samples"},
};

}  // namespace

void apply_setting(RunConfig& c, std::string_view key, std::string_view value) {
  key = trim(key);
  std::string_view name = key;
  std::string_view section;
  if (const auto dot = key.find('.'); dot != std::string_view::npos) {
    section = key.substr(0, dot);
    name = key.substr(dot + 1);
  }
  const Setting* found = nullptr;
  for (const auto& s : kSettings) {
    if (s.name == name && (section.empty() || s.section == section)) found = &s;
  }
  if (found == nullptr) throw std::invalid_argument("unknown setting: " + std::string(key));

  value = trim(value);
  auto& o = c.overrides;
  if (name == "algo") c.algorithm = parse_algorithm(value);
  else if (name == "objective") c.objective = std::string(value);
  else if (name == "n") c.n = parse_number<std::size_t>(key, value);
  else if (name == "seed") c.seed = parse_number<std::uint64_t>(key, value);
  else if (name == "max-fes") c.max_fes = parse_number<std::size_t>(key, value);
  else if (name == "sigma0") c.sigma0 = parse_number<double>(key, value);
  else if (name == "init-box") {
    const auto parts = split(value, ',');
    if (parts.size() != 2) throw std::invalid_argument("init-box expects 'lo,hi'");
    c.init_box = std::pair{parse_number<double>(key, parts[0]), parse_number<double>(key, parts[1])};
  }
  else if (name == "lambda") o.lambda = parse_number<std::size_t>(key, value);
  else if (name == "mu") o.mu = parse_number<std::size_t>(key, value);
  else if (name == "h") o.h = parse_number<std::size_t>(key, value);
  else if (name == "c-c") o.c_c = parse_number<double>(key, value);
  else if (name == "c-1") o.c_1 = parse_number<double>(key, value);
  else if (name == "c-mu") o.c_mu = parse_number<double>(key, value);
  else if (name == "c-sigma") o.c_sigma = parse_number<double>(key, value);
  else if (name == "d-sigma") o.d_sigma = parse_number<double>(key, value);
  else if (name == "theta") o.theta = parse_number<double>(key, value);
  else if (name == "log-weights") o.log_weights = parse_bool(key, value);
  else if (name == "rank-one-updated-path") o.rank_one_uses_updated_path = parse_bool(key, value);
  else if (name == "cap-isotropic-exponent") o.cap_isotropic_exponent = parse_bool(key, value);
  else if (name == "record-sigma") c.trace.record_sigma = parse_bool(key, value);
  else if (name == "record-spectrum") c.trace.record_spectrum = parse_bool(key, value);
  else if (name == "spectrum-samples") c.trace.spectrum_sample_count = parse_number<std::size_t>(key, value);
}

std::map<std::string, std::string> parse_config(std::istream& in) {
  std::map<std::string, std::string> entries;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view view = line;
    if (const auto hash = view.find('#'); hash != std::string_view::npos) view = view.substr(0, hash);
    view = trim(view);
    if (view.empty()) continue;
    const auto eq = view.find('=');
    if (eq == std::string_view::npos) {
      throw std::invalid_argument("config line " + std::to_string(lineno) + ": expected key=value");
    }
    entries[std::string(trim(view.substr(0, eq)))] = std::string(trim(view.substr(eq + 1)));
  }
  return entries;
}

void apply_config(RunConfig& config, const std::map<std::string, std::string>& entries) {
  for (const auto& [key, value] : entries) apply_setting(config, key, value);
}

void write_config(std::ostream& out, const RunConfig& c) {
  const auto& o = c.overrides;
  out << "run.algo=" << to_string(c.algorithm) << '\n'
      << "run.objective=" << c.objective << '\n'
      << "run.n=" << c.n << '\n'
      << "run.seed=" << c.seed << '\n'
      << "run.max-fes=" << c.budget() << '\n'
      << "run.sigma0=" << sci(c.sigma0) << '\n'
      << "run.init-box=" << sci(c.box().first) << ',' << sci(c.box().second) << '\n';
  if (o.lambda) out << "params.lambda=" << *o.lambda << '\n';
  if (o.mu) out << "params.mu=" << *o.mu << '\n';
  if (o.h) out << "params.h=" << *o.h << '\n';
  if (o.c_c) out << "params.c-c=" << sci(*o.c_c) << '\n';
  if (o.c_1) out << "params.c-1=" << sci(*o.c_1) << '\n';
  if (o.c_mu) out << "params.c-mu=" << sci(*o.c_mu) << '\n';
  if (o.c_sigma) out << "params.c-sigma=" << sci(*o.c_sigma) << '\n';
  if (o.d_sigma) out << "params.d-sigma=" << sci(*o.d_sigma) << '\n';
  if (o.theta) out << "params.theta=" << sci(*o.theta) << '\n';
  if (o.log_weights) out << "params.log-weights=true\n";
  if (o.rank_one_uses_updated_path) {
    out << "params.rank-one-updated-path=" << (*o.rank_one_uses_updated_path ? "true" : "false") << '\n';
  }
  if (o.cap_isotropic_exponent) {
    out << "params.cap-isotropic-exponent=" << (*o.cap_isotropic_exponent ? "true" : "false") << '\n';
  }
  out << "trace.record-sigma=" << (c.trace.record_sigma ? "true" : "false") << '\n'
      << "trace.record-spectrum=" << (c.trace.record_spectrum ? "true" : "false") << '\n'
      << "trace.spectrum-samples=" << c.trace.spectrum_sample_count << '\n';
}

void write_trace(std::ostream& out, const RunRecord& r) {
  const RunConfig& c = r.config;
  const bool spectrum = c.trace.record_spectrum;
  out << "# mfcma-trace v1"
      << " algorithm=" << to_string(c.algorithm) << " objective=" << c.objective << " n=" << c.n
      << " seed=" << c.seed << " max_fes=" << c.budget() << " sigma0=" << sci(c.sigma0)
      << " optimum=" << sci(r.optimum_value) << " lambda=" << r.params.lambda
      << " mu=" << r.params.mu << " h=" << r.params.h << " columns=t,evals,best";
  if (c.trace.record_sigma) out << ",sigma";
  if (spectrum) {
    for (std::size_t i = 1; i <= c.n; ++i) out << ",eig_" << i;
  }
  out << '\n';
  for (const TraceRow& row : r.rows) {
    out << row.t << ',' << row.evals << ',' << sci(row.best);
    if (c.trace.record_sigma) out << ',' << sci(row.sigma);
    if (spectrum) {
      for (double e : row.spectrum) out << ',' << sci(e);
    }
    out << '\n';
  }
}

RunRecord read_trace(std::istream& in) {
  std::string header;
  if (!std::getline(in, header) || header.rfind("# mfcma-trace v1", 0) != 0) {
    throw std::runtime_error("not an mfcma trace: missing header");
  }
  RunRecord r;
  std::map<std::string, std::string> fields;
  std::istringstream hs(header.substr(std::string_view("# mfcma-trace v1").size()));
  std::string token;
  while (hs >> token) {
    const auto eq = token.find('=');
    if (eq == std::string::npos) throw std::runtime_error("malformed header token: " + token);
    fields[token.substr(0, eq)] = token.substr(eq + 1);
  }
  auto need = [&](const std::string& key) -> const std::string& {
    const auto it = fields.find(key);
    if (it == fields.end()) throw std::runtime_error("trace header lacks " + key);
    return it->second;
  };
  try {
    r.config.algorithm = parse_algorithm(need("algorithm"));
    r.config.objective = need("objective");
    r.config.n = parse_number<std::size_t>("n", need("n"));
    r.config.seed = parse_number<std::uint64_t>("seed", need("seed"));
    r.config.max_fes = parse_number<std::size_t>("max_fes", need("max_fes"));
    r.config.sigma0 = parse_number<double>("sigma0", need("sigma0"));
    r.optimum_value = parse_number<double>("optimum", need("optimum"));
    r.params.n = r.config.n;
    r.params.lambda = parse_number<std::size_t>("lambda", need("lambda"));
    r.params.mu = parse_number<std::size_t>("mu", need("mu"));
    r.params.h = parse_number<std::size_t>("h", need("h"));
  } catch (const std::invalid_argument& e) {
    throw std::runtime_error(std::string("bad trace header: ") + e.what());
  }

  const auto columns = split(need("columns"), ',');
  if (columns.size() < 3 || columns[0] != "t" || columns[1] != "evals" || columns[2] != "best") {
    throw std::runtime_error("trace columns must start with t,evals,best");
  }
  const bool has_sigma = columns.size() > 3 && columns[3] == "sigma";
  const std::size_t eig_start = has_sigma ? 4 : 3;
  r.config.trace.record_sigma = has_sigma;
  r.config.trace.record_spectrum = columns.size() > eig_start;

  std::string line;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    const auto cells = split(line, ',');
    if (cells.size() != columns.size()) {
      throw std::runtime_error("trace line " + std::to_string(lineno) + ": expected " +
                               std::to_string(columns.size()) + " fields");
    }
    try {
      TraceRow row;
      row.t = parse_number<std::size_t>("t", cells[0]);
      row.evals = parse_number<std::size_t>("evals", cells[1]);
      row.best = parse_number<double>("best", cells[2]);
      if (has_sigma) row.sigma = parse_number<double>("sigma", cells[3]);
      for (std::size_t i = eig_start; i < cells.size(); ++i) {
        row.spectrum.push_back(parse_number<double>("eig", cells[i]));
      }
      r.rows.push_back(std::move(row));
    } catch (const std::invalid_argument& e) {
      throw std::runtime_error("trace line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  if (!r.rows.empty()) {
    r.best_fitness = r.rows.back().best;
    r.evals = r.rows.back().evals;
    r.error = r.best_fitness - r.optimum_value;
  }
  return r;
}

}  // namespace mfcma
