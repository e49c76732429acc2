#include "drlse/config.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>

namespace drlse {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double to_double(std::string_view key, std::string_view v) {
  double out = 0.0;
  const auto res = std::from_chars(v.data(), v.data() + v.size(), out);
  if (res.ec != std::errc() || res.ptr != v.data() + v.size()) {
    throw std::invalid_argument("config: '" + std::string(key) + "' expects a number, got '" +
                                std::string(v) + "'");
  }
  return out;
}

std::uint64_t to_uint(std::string_view key, std::string_view v) {
  std::uint64_t out = 0;
  const auto res = std::from_chars(v.data(), v.data() + v.size(), out);
  if (res.ec != std::errc() || res.ptr != v.data() + v.size()) {
    throw std::invalid_argument("config: '" + std::string(key) + "' expects a nonnegative integer, got '" +
                                std::string(v) + "'");
  }
  return out;
}

bool to_bool(std::string_view key, std::string_view v) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw std::invalid_argument("config: '" + std::string(key) + "' expects true/false");
}

class Entries {
 public:
  explicit Entries(std::string_view text) {
    std::size_t line_no = 0;
    while (!text.empty()) {
      const auto nl = text.find('\n');
      std::string_view line = text.substr(0, nl);
      text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
      ++line_no;
      if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
      line = trim(line);
      if (line.empty()) continue;
      const auto eq = line.find('=');
      if (eq == std::string_view::npos) {
        throw std::invalid_argument("config line " + std::to_string(line_no) + ": expected key = value");
      }
      const std::string key(trim(line.substr(0, eq)));
      const std::string value(trim(line.substr(eq + 1)));
      if (key.empty() || value.empty()) {
        throw std::invalid_argument("config line " + std::to_string(line_no) + ": empty key or value");
      }
      if (!entries_.emplace(key, value).second) {
        throw std::invalid_argument("config: duplicate key '" + key + "'");
      }
    }
  }

  std::optional<std::string> take(const std::string& key) {
    auto it = entries_.find(key);
    if (it == entries_.end()) return std::nullopt;
    std::string v = it->second;
    entries_.erase(it);
    return v;
  }

  void set_double(const std::string& key, double& target) {
    if (auto v = take(key)) target = to_double(key, *v);
  }
  void set_size(const std::string& key, std::size_t& target) {
    if (auto v = take(key)) target = static_cast<std::size_t>(to_uint(key, *v));
  }

  void ensure_empty() const {
    if (!entries_.empty()) throw std::invalid_argument("config: unknown key '" + entries_.begin()->first + "'");
  }

 private:
  std::map<std::string, std::string> entries_;
};

}  // namespace

std::vector<std::uint64_t> parse_seed_list(std::string_view text) {
  text = trim(text);
  std::vector<std::uint64_t> seeds;
  if (const auto dots = text.find(".."); dots != std::string_view::npos) {
    const std::uint64_t a = to_uint("seeds", trim(text.substr(0, dots)));
    const std::uint64_t b = to_uint("seeds", trim(text.substr(dots + 2)));
    if (b < a) throw std::invalid_argument("seed range a..b needs a <= b");
    for (std::uint64_t s = a; s <= b; ++s) seeds.push_back(s);
    return seeds;
  }
  while (!text.empty()) {
    const auto comma = text.find(',');
    seeds.push_back(to_uint("seeds", trim(text.substr(0, comma))));
    text = comma == std::string_view::npos ? std::string_view{} : text.substr(comma + 1);
  }
  if (seeds.empty()) throw std::invalid_argument("empty seed list");
  return seeds;
}

ExperimentConfig parse_config(std::string_view text) {
  Entries e(text);
  ExperimentConfig c;

  const Problem problem = parse_problem(e.take("problem").value_or("booth"));
  const std::size_t n1 = c.problem.n1;
  const std::size_t n2 = c.problem.n2;
  c.problem = BenchmarkSpec::defaults(problem);
  c.problem.n1 = n1;
  c.problem.n2 = n2;
  e.set_size("grid-n1", c.problem.n1);
  e.set_size("grid-n2", c.problem.n2);
  e.set_double("range-l1", c.problem.x.lower);
  e.set_double("range-u1", c.problem.x.upper);
  e.set_double("range-l2", c.problem.w.lower);
  e.set_double("range-u2", c.problem.w.upper);

  e.set_double("sir-population", c.sir.population);
  e.set_double("sir-initial-infected", c.sir.initial_infected);
  e.set_double("sir-dt", c.sir.dt);
  e.set_size("sir-horizon", c.sir.horizon);

  if (auto v = e.take("metric")) c.ambiguity.metric = parse_metric(*v);
  if (auto v = e.take("reference")) c.ambiguity.reference = parse_reference(*v);
  e.set_double("epsilon", c.ambiguity.epsilon);

  e.set_double("h", c.accuracy.threshold);
  e.set_double("alpha", c.accuracy.alpha);
  e.set_double("eta", c.accuracy.eta);
  const auto beta = e.take("beta-sqrt");
  const auto delta = e.take("delta");
  if (beta && delta) throw std::invalid_argument("config: give either beta-sqrt or delta, not both");
  if (beta) c.accuracy.beta = BetaSchedule::fixed(to_double("beta-sqrt", *beta));
  if (delta) c.accuracy.beta = BetaSchedule::theoretical(to_double("delta", *delta));

  e.set_double("sigma2", c.kernel.noise_variance);
  e.set_double("sigma-f2", c.kernel.signal_variance);
  e.set_double("length-scale", c.kernel.length_scale);

  if (auto v = e.take("acquisition")) c.acquisition.strategy = parse_strategy(*v);
  e.set_double("gamma", c.acquisition.gamma);
  e.set_double("gamma-tilde", c.acquisition.gamma_tilde);
  if (auto v = e.take("computation-path")) c.acquisition.path.kind = parse_path_kind(*v);
  e.set_double("zeta-per-region", c.acquisition.path.zeta_per_region);
  e.set_size("naive-m", c.acquisition.path.samples);

  e.set_size("iterations", c.iterations);
  e.set_size("initial-points", c.initial_points);
  if (auto v = e.take("seeds")) c.seeds = parse_seed_list(*v);
  if (auto v = e.take("record-timing")) c.record_timing = to_bool("record-timing", *v);
  if (auto v = e.take("execution")) {
    if (*v == "serial") {
      c.execution = Execution::Serial;
    } else if (*v == "parallel") {
      c.execution = Execution::Parallel;
    } else {
      throw std::invalid_argument("config: execution must be serial or parallel");
    }
  }

  e.ensure_empty();
  c.validate();
  return c;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

}  // namespace drlse
