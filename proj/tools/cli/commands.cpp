#include "commands.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <memory>
#include <optional>
#include <random>
#include <sstream>

#include "trafficflow/trafficflow.hpp"

namespace trafficflow::cli {
namespace {

struct Common {
  std::string v = "1";
  int lanes = 1;
  Index length = 100;
  std::string density = "0.3";
  Index steps = 10;
  std::uint64_t seed = 1;
  std::string boundary = "ring";
  std::string output;
};

struct Options {
  Common common;
  // fundamental-diagram
  std::string v_list = "1";
  std::string lanes_list = "1";
  int grid = 25;
  std::string densities;
  // lifetime
  int n_max = 5;
  // converge
  int seeds = 10;
  Index every = 1;
  // tracer / simulate / redirect
  std::string configuration;
  Index start = 0;
  std::string direction;
  Index anchor = 0;
  std::string format = "assignments";
  // pushforward
  std::string word = "1";
  std::string p = "0.5";
  int t = 1;
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, sep))
    if (!item.empty()) parts.push_back(item);
  return parts;
}

Rational parse_value(const std::string& text, const char* what) {
  try {
    return parse_rational(text);
  } catch (const Error&) {
    throw UsageError(std::string("invalid ") + what + ": " + text);
  }
}

int parse_speed(const std::string& text) {
  int v = 0;
  try {
    std::size_t used = 0;
    v = std::stoi(text, &used);
    if (used != text.size()) v = 0;
  } catch (const std::exception&) {
    v = 0;
  }
  if (v < 1) throw UsageError("--v must be a positive integer: " + text);
  return v;
}

Velocity parse_velocity(const std::string& text) {
  if (text == "inf") return Velocity::infinite();
  return Velocity::finite(parse_speed(text));
}

Boundary boundary_of(const Common& c) {
  try {
    return parse_boundary(c.boundary);
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
}

// Exactly round(density * length) particles spread uniformly over all slots.
Configuration sample_ring(Index length, int lanes, const Rational& density, std::uint64_t seed) {
  if (length < 1) throw UsageError("--length must be positive");
  if (density < 0 || density > lanes) throw UsageError("density outside [0, lanes]");
  const Rational scaled = density * length;
  const Index n = static_cast<Index>(to_double(scaled) + 0.5);
  std::vector<int> slots(static_cast<std::size_t>(length * lanes), 0);
  std::fill(slots.begin(), slots.begin() + n, 1);
  std::mt19937_64 g(seed);
  std::shuffle(slots.begin(), slots.end(), g);
  std::vector<int> cells(static_cast<std::size_t>(length), 0);
  for (std::size_t s = 0; s < slots.size(); ++s) cells[s % static_cast<std::size_t>(length)] += slots[s];
  return Configuration::ring(cells, lanes);
}

// Inline digits if given, otherwise a seeded sample.
Configuration initial(const Options& o) {
  const Boundary b = boundary_of(o.common);
  if (!o.configuration.empty()) {
    try {
      return Configuration::parse(o.configuration, o.common.lanes, b);
    } catch (const Error& e) {
      throw UsageError(e.what());
    }
  }
  if (!b.is_ring()) throw UsageError("sampled configurations are rings; pass --configuration for padded input");
  return sample_ring(o.common.length, o.common.lanes, parse_value(o.common.density, "density"), o.common.seed);
}

void fundamental_diagram(const Options& o, std::ostream& out) {
  const Index L = o.common.length;
  if (L < 10) throw UsageError("--length must be at least 10");
  std::vector<int> speeds, lanes;
  for (const auto& s : split(o.v_list, ',')) speeds.push_back(parse_speed(s));
  for (const auto& s : split(o.lanes_list, ',')) {
    const int m = parse_speed(s);
    lanes.push_back(m);
  }
  if (speeds.empty() || lanes.empty()) throw UsageError("empty --v-list or --lanes-list");
  std::vector<Rational> explicit_grid;
  for (const auto& s : split(o.densities, ',')) explicit_grid.push_back(parse_value(s, "density"));
  if (explicit_grid.empty() && o.grid < 2) throw UsageError("--grid needs at least two points");
  out << "v,M,L,density,flux_measured,flux_predicted,transient_steps\n";
  std::uint64_t index = 0;
  for (int v : speeds)
    for (int M : lanes) {
      std::vector<Rational> grid = explicit_grid;
      if (grid.empty())
        for (int k = 0; k < o.grid; ++k) grid.push_back(make_rational(static_cast<std::int64_t>(k) * M, o.grid - 1));
      for (const Rational& rho : grid) {
        if (rho < 0 || rho > M) throw UsageError("density outside [0, M]: " + to_decimal(rho));
        auto x = sample_ring(L, M, rho, o.common.seed + index++);
        FluxReport r = flux_report(x, v, 2 * L);
        out << v << ',' << M << ',' << L << ',' << to_decimal(r.rho) << ',' << to_decimal(r.flux_measured) << ','
            << to_decimal(r.flux_predicted) << ',' << r.transient_steps << '\n';
      }
    }
}

void lifetime(const Options& o, std::ostream& out) {
  if (o.n_max < 1 || o.n_max > 10) throw UsageError("--n-max must lie in [1, 10]");
  const int v = parse_speed(o.common.v);
  out << "word,n,predicted,simulated,ones_minus_one,match\n";
  auto embed = [v](const std::vector<int>& cells) {
    std::vector<int> c(static_cast<std::size_t>(2), 0);
    c.insert(c.end(), cells.begin(), cells.end());
    c.insert(c.end(), cells.size() * static_cast<std::size_t>(v + 2) + 4, 0);
    return Configuration::padded(c, 1, 0, 0);
  };
  auto rear_of = [](const Configuration& x, Index end) {
    while (x[end - 1]) --end;
    return end;
  };
  if (v == 1) {
    for (int n = 1; n <= o.n_max; ++n)
      for (const auto& w : minimal_word_set(n)) {
        auto x = embed(w);
        const Index end = 2 + 2 * n - 1;
        const Index rear = rear_of(x, end);
        const Index predicted = predict_lifetime(x, {rear, end, end - rear + 1});
        const Index simulated = simulate_lifetime(x, rear, 1, 10 * n + 10);
        const Index ones = std::count(w.begin(), w.end(), 1);
        const bool match = predicted == simulated && simulated == ones - 1;
        out << word_to_string(w) << ',' << n << ',' << predicted << ',' << simulated << ',' << ones - 1 << ','
            << (match ? "true" : "false") << '\n';
      }
    return;
  }
  // Fast words: n counts the particles.
  for (const auto& w : minimal_fast_word_set(v, o.n_max)) {
    auto cells = decode(w).cells();
    auto x = embed(cells);
    const Index rear = rear_of(x, 2 + static_cast<Index>(cells.size()) - 1);
    const Index predicted = fast_lifetime(w);
    const Index simulated = simulate_lifetime(x, rear, v, 100000);
    const Index ones = w.ones();
    out << '"' << to_string(w) << "\"," << ones << ',' << predicted << ',' << simulated << ',' << ones - 1 << ','
        << (predicted == simulated ? "true" : "false") << '\n';
  }
}

void converge(const Options& o, std::ostream& out) {
  const int v = parse_speed(o.common.v);
  const Rational p = parse_value(o.p, "p");
  if (p < 0 || p > 1) throw UsageError("--p must lie in [0, 1]");
  if (o.seeds < 1) throw UsageError("--seeds must be positive");
  if (o.every < 1) throw UsageError("--every must be positive");
  const Index L = o.common.length;
  if (L < 1) throw UsageError("--length must be positive");
  out << "kind,seed,t,radius,clean,slope\n";
  std::vector<double> slopes;
  std::vector<Index> finals;
  for (int s = 0; s < o.seeds; ++s) {
    const std::uint64_t seed = o.common.seed + static_cast<std::uint64_t>(s);
    Configuration x = bernoulli_config({p, 1, L, seed});
    Index first = 0, last = 0;
    for (Index t = 0; t <= o.common.steps; ++t) {
      if (t % o.every == 0 || t == o.common.steps) {
        auto r = free_violation_radius(x, 0, v);
        const Index radius = r ? *r : L / 2;
        if (t == 0) first = radius;
        last = radius;
        out << "sample," << seed << ',' << t << ',' << radius << ',' << (r ? "false" : "true") << ",\n";
      }
      if (t < o.common.steps) x = step_fast(x, v);
    }
    finals.push_back(last);
    slopes.push_back(o.common.steps > 0 ? static_cast<double>(last - first) / static_cast<double>(o.common.steps)
                                        : 0.0);
  }
  auto median = [](auto values) {
    std::sort(values.begin(), values.end());
    const std::size_t n = values.size();
    return n % 2 ? static_cast<double>(values[n / 2])
                 : (static_cast<double>(values[n / 2 - 1]) + static_cast<double>(values[n / 2])) / 2.0;
  };
  std::ostringstream slope;
  slope.precision(6);
  slope << std::fixed << median(slopes);
  std::ostringstream radius;
  radius << median(finals);
  out << "summary,," << o.common.steps << ',' << radius.str() << ",," << slope.str() << '\n';
}

void tracer(const Options& o, std::ostream& out) {
  const int v = parse_speed(o.common.v);
  TracerDirection dir = TracerDirection::along;
  if (o.direction == "against")
    dir = TracerDirection::against;
  else if (!o.direction.empty() && o.direction != "along")
    throw UsageError("--direction must be along or against");
  if (o.common.steps < 1) throw UsageError("--steps must be positive");
  const Configuration x = initial(o);
  TracerState s{x, x.is_ring() ? x.wrap(o.start) : o.start, dir, 0, 0};
  out << "step,position,displacement,running_velocity\n";
  for (Index k = 1; k <= o.common.steps; ++k) {
    s = tracer_step(s, v);
    out << k << ',' << s.position << ',' << s.displacement << ',' << to_decimal(make_rational(s.displacement, k))
        << '\n';
  }
}

void pushforward_cmd(const Options& o, std::ostream& out) {
  const int v = parse_speed(o.common.v);
  const Rational p = parse_value(o.p, "p");
  if (p < 0 || p > 1) throw UsageError("--p must lie in [0, 1]");
  if (o.t < 0) throw UsageError("--t must be non-negative");
  Word w;
  try {
    w = parse_word(o.word);
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
  const Rational value = pushforward_iterated(v, w, p, o.t);
  out << "v,t,word,p,probability,probability_exact\n";
  out << v << ',' << o.t << ',' << word_to_string(w) << ',' << to_decimal(p) << ',' << to_decimal(value, 12) << ','
      << to_fraction(value) << '\n';
}

void redirect_cmd(const Options& o, std::ostream& out) {
  if (o.format != "assignments" && o.format != "lanes") throw UsageError("--format must be assignments or lanes");
  const Configuration x = initial(o);
  if (o.format == "lanes") {
    LaneBundle b = redirect(x, o.anchor);
    out << "lane,cells\n";
    for (int j = b.count(); j >= 1; --j) out << j << ',' << b.lanes[static_cast<std::size_t>(j - 1)].to_string() << '\n';
    return;
  }
  const int v = parse_speed(o.common.v);
  RedirectionReport r = redirection_report(x, v, o.anchor);
  out << "site,slot,lane\n";
  for (const auto& a : r.assignments) out << a.site << ',' << a.slot << ',' << a.lane << '\n';
}

void simulate(const Options& o, std::ostream& out) {
  FlowParams params;
  params.v = parse_velocity(o.common.v);
  params.lanes = o.common.lanes;
  if (o.direction == "backward")
    params.direction = Direction::backward;
  else if (!o.direction.empty() && o.direction != "forward")
    throw UsageError("--direction must be forward or backward");
  if (o.common.steps < 0) throw UsageError("--steps must be non-negative");
  Configuration x = initial(o);
  out << "step,configuration,particles,flux,flux_exact\n";
  out << 0 << ',' << x.to_string() << ',' << x.particles() << ",,\n";
  for (Index t = 1; t <= o.common.steps; ++t) {
    auto [y, moved] = step_counted(x, params);
    x = std::move(y);
    const Rational flux = make_rational(moved, x.size());
    out << t << ',' << x.to_string() << ',' << x.particles() << ',' << to_decimal(flux) << ',' << to_fraction(flux)
        << '\n';
  }
}

void add_common(CLI::App& app, Common& c) {
  app.add_option("--v", c.v, "Maximal velocity (positive integer; simulate also accepts inf)")->capture_default_str();
  app.add_option("--lanes", c.lanes, "Number of lanes M")->check(CLI::PositiveNumber)->capture_default_str();
  app.add_option("--length", c.length, "Ring length L")->capture_default_str();
  app.add_option("--density", c.density, "Density in [0, M], decimal or p/q")->capture_default_str();
  app.add_option("--steps", c.steps, "Number of time steps")->capture_default_str();
  app.add_option("--seed", c.seed, "Base seed")->capture_default_str();
  app.add_option("--boundary", c.boundary, "ring or padded:LEFT:RIGHT")->capture_default_str();
  app.add_option("--output", c.output, "Write CSV to this path instead of stdout");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Lattice traffic-flow simulator and exact analysis"};
  app.set_config("--config", "", "key=value file; flags override file values");
  app.allow_config_extras(CLI::config_extras_mode::error);
  app.require_subcommand(1);
  add_common(app, o.common);

  auto* fd = app.add_subcommand("fundamental-diagram", "Limit flux against density on sampled rings");
  fd->add_option("--v-list", o.v_list, "Comma-separated velocities")->capture_default_str();
  fd->add_option("--lanes-list", o.lanes_list, "Comma-separated lane counts")->capture_default_str();
  fd->add_option("--grid", o.grid, "Number of evenly spaced densities in [0, M]")->capture_default_str();
  fd->add_option("--densities", o.densities, "Explicit comma-separated densities (overrides --grid)");

  auto* lt = app.add_subcommand("lifetime", "Predicted against simulated cluster lifetimes");
  lt->add_option("--n-max", o.n_max, "Largest half length (v = 1) or particle count (v > 1)")
      ->capture_default_str();

  auto* cv = app.add_subcommand("converge", "Distance to the nearest free-flow violation over time");
  cv->add_option("--p", o.p, "Bernoulli parameter")->capture_default_str();
  cv->add_option("--seeds", o.seeds, "Number of samples")->capture_default_str();
  cv->add_option("--every", o.every, "Report every k steps")->capture_default_str();

  auto* tr = app.add_subcommand("tracer", "Passive tracer trajectory");
  tr->add_option("--configuration", o.configuration, "Inline digits; sampled when omitted");
  tr->add_option("--start", o.start, "Initial tracer site")->capture_default_str();
  tr->add_option("--direction", o.direction, "along or against");

  auto* pf = app.add_subcommand("pushforward", "Exact cylinder probability after t steps");
  pf->add_option("--word", o.word, "Binary target word")->capture_default_str();
  pf->add_option("--p", o.p, "Bernoulli parameter")->capture_default_str();
  pf->add_option("--t", o.t, "Number of steps")->capture_default_str();

  auto* rd = app.add_subcommand("redirect", "Sawtooth lane decomposition");
  rd->add_option("--configuration", o.configuration, "Inline digits; sampled when omitted");
  rd->add_option("--anchor", o.anchor, "Anchor site")->capture_default_str();
  rd->add_option("--format", o.format, "assignments or lanes")->capture_default_str();

  auto* sm = app.add_subcommand("simulate", "Evolve a configuration");
  sm->add_option("--configuration", o.configuration, "Inline digits; sampled when omitted");
  sm->add_option("--direction", o.direction, "forward or backward");

  for (auto* sub : {fd, lt, cv, tr, pf, rd, sm}) sub->fallthrough();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    std::ostringstream help_out, err_out;
    const int code = app.exit(e, help_out, err_out);
    out << help_out.str();
    err << err_out.str();
    return code == 0 ? 0 : 2;
  }

  std::ofstream file;
  std::ostream* sink = &out;
  if (!o.common.output.empty()) {
    file.open(o.common.output, std::ios::binary);
    if (!file) {
      err << "cannot open " << o.common.output << '\n';
      return 2;
    }
    sink = &file;
  }
  std::ostringstream csv;
  try {
    if (fd->parsed()) fundamental_diagram(o, csv);
    if (lt->parsed()) lifetime(o, csv);
    if (cv->parsed()) converge(o, csv);
    if (tr->parsed()) tracer(o, csv);
    if (pf->parsed()) pushforward_cmd(o, csv);
    if (rd->parsed()) redirect_cmd(o, csv);
    if (sm->parsed()) simulate(o, csv);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  *sink << csv.str();
  return 0;
}

}  // namespace trafficflow::cli
