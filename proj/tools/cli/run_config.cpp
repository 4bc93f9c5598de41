#include "cli/run_config.hpp"

#include <charconv>
#include <cmath>
#include <set>

#include "diffrakt/error.hpp"
#include "diffrakt/measures.hpp"

namespace diffrakt::cli {

namespace {

constexpr std::string_view kPermPrefix = "perm-";

template <class T>
void read_field(const nlohmann::json& j, const char* key, T& field) {
  if (!j.contains(key)) return;
  try {
    field = j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw InvalidArgument(std::string("config: field '") + key + "' has the wrong type");
  }
}

double parse_double(std::string_view s, const std::string& context) {
  double v = 0.0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size() || !std::isfinite(v))
    throw InvalidArgument("tgrid: cannot parse '" + context + "'");
  return v;
}

KernelSpec kernel_for(std::string_view id, const RunConfig& c) {
  const KernelFamily family = parse_kernel_family(id);
  KernelSpec k;
  switch (family) {
    case KernelFamily::kSine: k = KernelSpec::sine(c.p); break;
    case KernelFamily::kBall: k = KernelSpec::ball(c.d, c.p); break;
    case KernelFamily::kGauss: k = KernelSpec::gauss(c.d, c.p); break;
    case KernelFamily::kExponential: k = KernelSpec::exponential(c.alpha, c.p); break;
    case KernelFamily::kCompoundPoissonA: k = KernelSpec::compound_poisson_a(c.p); break;
    case KernelFamily::kCompoundPoissonB: k = KernelSpec::compound_poisson_b(c.p); break;
    case KernelFamily::kGinibre: k = KernelSpec::ginibre(c.p); break;
  }
  return k;
}

}  // namespace

void RunConfig::check() const {
  if (realizations < 1) throw InvalidArgument("config: realizations must be >= 1");
  if (bins < 1) throw InvalidArgument("config: bins must be >= 1");
  if (N < 0) throw InvalidArgument("config: N must be >= 0");
  if (grid < 0) throw InvalidArgument("config: grid must be >= 0");
  if (!(rmax >= 0.0) || !std::isfinite(rmax)) throw InvalidArgument("config: rmax must be >= 0");
  if (!std::isfinite(p) || !std::isfinite(alpha) || !std::isfinite(mutate))
    throw InvalidArgument("config: parameters must be finite");
  if (engine != "matrix" && engine != "disk")
    throw InvalidArgument("config: engine must be 'matrix' or 'disk'");
  if (out.empty()) throw InvalidArgument("config: out must be a path");
  parse_grid(tgrid);
}

nlohmann::ordered_json to_json(const RunConfig& c) {
  nlohmann::ordered_json j;
  j["process"] = c.process;
  j["p"] = c.p;
  j["alpha"] = c.alpha;
  j["d"] = c.d;
  j["N"] = c.N;
  j["window"] = c.window;
  j["seed"] = c.seed;
  j["realizations"] = c.realizations;
  j["bins"] = c.bins;
  j["rmax"] = c.rmax;
  j["tgrid"] = c.tgrid;
  j["out"] = c.out;
  j["grid"] = c.grid;
  j["engine"] = c.engine;
  j["mutate"] = c.mutate;
  return j;
}

RunConfig from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw InvalidArgument("config: top level must be an object");
  static const std::set<std::string> known = {"process", "p",    "alpha", "d",     "N",
                                              "window",  "seed", "realizations", "bins",
                                              "rmax",    "tgrid", "out",  "grid",  "engine",
                                              "mutate"};
  for (const auto& item : j.items())
    if (!known.count(item.key())) throw InvalidArgument("config: unknown key '" + item.key() + "'");
  RunConfig c;
  read_field(j, "process", c.process);
  read_field(j, "p", c.p);
  read_field(j, "alpha", c.alpha);
  read_field(j, "d", c.d);
  read_field(j, "N", c.N);
  read_field(j, "window", c.window);
  read_field(j, "seed", c.seed);
  read_field(j, "realizations", c.realizations);
  read_field(j, "bins", c.bins);
  read_field(j, "rmax", c.rmax);
  read_field(j, "tgrid", c.tgrid);
  read_field(j, "out", c.out);
  read_field(j, "grid", c.grid);
  read_field(j, "engine", c.engine);
  read_field(j, "mutate", c.mutate);
  return c;
}

std::vector<double> Grid::values() const {
  return linspace(start, stop, static_cast<std::size_t>(count));
}

Grid parse_grid(const std::string& text) {
  const auto a = text.find(':');
  const auto b = a == std::string::npos ? std::string::npos : text.find(':', a + 1);
  if (b == std::string::npos) throw InvalidArgument("tgrid: expected 'start:stop:count', got '" + text + "'");
  Grid g;
  g.start = parse_double(std::string_view(text).substr(0, a), text);
  g.stop = parse_double(std::string_view(text).substr(a + 1, b - a - 1), text);
  const double count = parse_double(std::string_view(text).substr(b + 1), text);
  if (count < 1 || count > 1e7 || count != std::floor(count))
    throw InvalidArgument("tgrid: count must be a positive integer");
  g.count = static_cast<int>(count);
  if (g.start < 0.0) throw InvalidArgument("tgrid: start must be non-negative");
  if (g.count > 1 && !(g.stop > g.start)) throw InvalidArgument("tgrid: stop must exceed start");
  return g;
}

ProcessSpec process_spec(const RunConfig& c) {
  const std::string_view id = c.process;
  if (id == "poisson") return ProcessSpec::poisson(c.d);
  if (id == "cox") return ProcessSpec::cox_cosine();
  if (id == "gaf") return ProcessSpec::gaf();
  if (id.rfind(kPermPrefix, 0) == 0) return ProcessSpec::permanental(kernel_for(id.substr(kPermPrefix.size()), c));
  return ProcessSpec::determinantal(kernel_for(id, c));
}

Window resolve_window(const RunConfig& c) {
  if (!c.window.empty()) return Window::parse(c.window);
  const ProcessSpec spec = process_spec(c);
  if (spec.kind == ProcessKind::kGaf) return Window::disk(0.0, 0.0, 5.0);
  if (spec.kind == ProcessKind::kDeterminantal && spec.kernel.family == KernelFamily::kGinibre)
    return Window::disk(0.0, 0.0, 10.0);
  if (spec.dimension == 2) return Window::rect(0.0, 20.0, 0.0, 20.0);
  return Window::interval(0.0, 100.0);
}

}  // namespace diffrakt::cli
