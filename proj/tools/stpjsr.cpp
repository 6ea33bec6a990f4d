// stpjsr: bounds on the joint spectral radius of switched linear systems,
// optionally constrained by a DFA or a Markov adjacency matrix.
#include <chrono>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "stpjsr/automaton.hpp"
#include "stpjsr/error.hpp"
#include "stpjsr/io.hpp"
#include "stpjsr/radius.hpp"
#include "stpjsr/systems.hpp"

namespace {

using nlohmann::json;
using namespace stpjsr;

struct Config {
  std::string input;
  std::size_t k = 6;
  double delta = 0.05;
  std::string norm = "two";
  double cap = static_cast<double>(kDefaultProductCap);
  int threads = 0;
  std::string output = "text";
  std::string out;
  bool timing = false;

  bool via_lift = false;
  bool edge_lift = false;
  bool omega_lift = false;
  std::size_t t = 2;
  std::vector<std::string> words;
  std::vector<std::size_t> schedule;
};

std::string fmt(double v) {
  std::ostringstream os;
  os << std::setprecision(12) << v;
  return os.str();
}

std::uint64_t cap_count(double cap) {
  if (!(cap >= 1.0) || cap > 1.8e19) throw Error(ErrorCode::kInvalidArgument, "--cap must be between 1 and 1.8e19");
  return static_cast<std::uint64_t>(cap);
}

class Report {
 public:
  void row(const std::string& key, const std::string& value) { rows_.emplace_back(key, value); }

  [[nodiscard]] std::string text() const {
    std::size_t width = 0;
    for (const auto& [k, v] : rows_) width = std::max(width, k.size());
    std::ostringstream os;
    for (const auto& [k, v] : rows_) os << std::left << std::setw(static_cast<int>(width + 2)) << k << v << '\n';
    return os.str();
  }

 private:
  std::vector<std::pair<std::string, std::string>> rows_;
};

// What a `bounds` or `gripenberg` run operates on, chosen from the file contents.
enum class Setting { kArbitrary, kConstrained, kMarkov };

Setting setting_of(const io::SystemFile& file) {
  if (file.dfa && file.omega) throw Error(ErrorCode::kInvalidArgument, "the file has both 'dfa' and 'omega'; keep one");
  if (file.dfa) return Setting::kConstrained;
  if (file.omega) return Setting::kMarkov;
  return Setting::kArbitrary;
}

struct Outcome {
  std::string body;
  int code = 0;
};

std::string method_name(Setting s, bool via_lift) {
  switch (s) {
    case Setting::kArbitrary: return "jsr";
    case Setting::kConstrained: return via_lift ? "cjsr-lift" : "cjsr";
    case Setting::kMarkov: return "markov";
  }
  return "jsr";
}

BoundsResult run_bounds(const io::SystemFile& file, const Config& cfg, std::size_t k) {
  const auto base = parse_norm_base(cfg.norm);
  const BoundsOptions opts{cap_count(cfg.cap), cfg.threads};
  switch (setting_of(file)) {
    case Setting::kArbitrary: return jsr_bounds(file.matrices(), k, NormKind::plain(base), opts);
    case Setting::kConstrained:
      if (cfg.via_lift) return cjsr_bounds_via_lift(file.constrained(), k, base, opts);
      return cjsr_bounds(file.constrained(), k, NormKind::plain(base), opts);
    case Setting::kMarkov: return markovian_bounds(file.matrices(), *file.omega, k, NormKind::plain(base), opts);
  }
  throw Error(ErrorCode::kInvalidArgument, "unreachable");
}

std::string format_bounds(const BoundsResult& r, const std::string& method, bool gripenberg, const Config& cfg) {
  if (cfg.output == "json") {
    json j = io::to_json(r);
    j["method"] = method;
    return j.dump(2) + "\n";
  }
  Report rep;
  rep.row("method", method);
  rep.row("norm", r.norm);
  if (gripenberg) {
    rep.row("delta", fmt(r.delta));
    rep.row("depth", std::to_string(r.horizon));
  } else {
    rep.row("horizon", std::to_string(r.horizon) +
                           (r.horizon < r.requested_horizon ? " of " + std::to_string(r.requested_horizon) : ""));
  }
  rep.row("lower", fmt(r.lower));
  rep.row("upper", fmt(r.upper));
  rep.row("witness", r.lower_witness.empty() ? "-" : to_string(r.lower_witness));
  if (!gripenberg) rep.row("upper_length", std::to_string(r.upper_length));
  rep.row("products", std::to_string(r.products_evaluated));
  rep.row("truncated", r.truncated ? "yes" : "no");
  rep.row("verdict", to_string(verdict(r)));
  return rep.text();
}

Outcome cmd_bounds(const Config& cfg) {
  const auto file = io::load_system(cfg.input);
  if (cfg.k == 0) throw Error(ErrorCode::kInvalidArgument, "--k must be at least 1");
  const auto r = run_bounds(file, cfg, cfg.k);
  if (cfg.timing) std::cerr << "wall time: " << fmt(r.wall_time) << " s\n";
  return {format_bounds(r, method_name(setting_of(file), cfg.via_lift), false, cfg), r.truncated ? 2 : 0};
}

Outcome cmd_gripenberg(const Config& cfg) {
  const auto file = io::load_system(cfg.input);
  const auto base = parse_norm_base(cfg.norm);
  const auto budget = cap_count(cfg.cap);
  BoundsResult r;
  std::string method = "gripenberg";
  switch (setting_of(file)) {
    case Setting::kArbitrary: r = gripenberg(file.matrices(), cfg.delta, NormKind::plain(base), budget, cfg.threads); break;
    case Setting::kConstrained: {
      const auto c = file.constrained();
      r = gripenberg(stp_lift(c).as_arbitrary(), cfg.delta, NormKind::block(base, c.dfa.num_states()), budget,
                     cfg.threads);
      method += "-lift";
      break;
    }
    case Setting::kMarkov: {
      const auto& s = file.matrices();
      r = gripenberg(omega_lift(s, *file.omega), cfg.delta, NormKind::block(base, s.arity()), budget, cfg.threads);
      method += "-omega-lift";
      break;
    }
  }
  if (cfg.timing) std::cerr << "wall time: " << fmt(r.wall_time) << " s\n";
  return {format_bounds(r, method, true, cfg), r.truncated ? 2 : 0};
}

Outcome cmd_lift(const Config& cfg) {
  const auto file = io::load_system(cfg.input);
  json j;
  if (file.dfa) {
    const auto c = file.constrained();
    j = io::to_json(stp_lift(c).as_arbitrary());
    j["blocks"] = c.dfa.num_states();
    if (cfg.edge_lift) {
      json terms = json::array();
      for (const auto& t : edge_lift(c)) {
        terms.push_back({{"edge", {t.edge.from, t.edge.to, t.edge.label}}, {"matrix", io::to_json(t.matrix)}});
      }
      j["edge_lift"] = std::move(terms);
    }
  } else if (!cfg.omega_lift) {
    throw Error(ErrorCode::kInvalidArgument, "lift needs a 'dfa' in the input, or --omega-lift with an 'omega'");
  }
  if (cfg.omega_lift) {
    if (!file.omega) throw Error(ErrorCode::kInvalidArgument, "--omega-lift needs an 'omega' in the input");
    auto lifted = io::to_json(omega_lift(file.matrices(), *file.omega));
    lifted["blocks"] = file.matrices().arity();
    if (file.dfa) {
      j["omega_lift"] = std::move(lifted);
    } else {
      j = std::move(lifted);
    }
  }
  return {j.dump(2) + "\n", 0};
}

Outcome cmd_tproduct(const Config& cfg) {
  const auto file = io::load_system(cfg.input);
  if (cfg.t == 0) throw Error(ErrorCode::kInvalidArgument, "--t must be at least 1");
  const auto tp = t_product_lift(file.constrained(), cfg.t, cap_count(cfg.cap));
  json j = io::to_json(tp.system);
  json words = json::array();
  for (const auto& w : tp.label_words) words.push_back(to_string(w));
  j["label_words"] = std::move(words);
  return {j.dump(2) + "\n", 0};
}

Outcome cmd_accepts(const Config& cfg) {
  const auto file = io::load_system(cfg.input);
  Dfa dfa = file.dfa ? *file.dfa
            : file.omega ? omega_to_dfa(*file.omega)
                         : Dfa::complete(file.matrices().arity());
  if (cfg.words.empty()) throw Error(ErrorCode::kInvalidArgument, "accepts needs at least one word");
  json results = json::array();
  Report rep;
  for (const auto& text : cfg.words) {
    const Word w = parse_word(text, dfa.num_labels());
    const bool ok = accepts(dfa, w);
    rep.row(to_string(w), ok ? "accept" : "reject");
    results.push_back({{"word", to_string(w)}, {"accepted", ok}});
  }
  if (cfg.output == "json") return {json{{"words", results}}.dump(2) + "\n", 0};
  return {rep.text(), 0};
}

Outcome cmd_report(const Config& cfg) {
  const auto file = io::load_system(cfg.input);
  std::vector<std::size_t> schedule = cfg.schedule;
  if (schedule.empty())
    for (std::size_t k = 1; k <= cfg.k; ++k) schedule.push_back(k);
  json rows = json::array();
  bool truncated = false;
  for (auto k : schedule) {
    if (k == 0) throw Error(ErrorCode::kInvalidArgument, "schedule entries must be at least 1");
    const auto r = run_bounds(file, cfg, k);
    truncated |= r.truncated;
    rows.push_back({{"k", k},
                    {"horizon", r.horizon},
                    {"lower", r.lower},
                    {"upper", r.upper},
                    {"lower_witness", to_string(r.lower_witness)},
                    {"upper_length", r.upper_length},
                    {"products_evaluated", r.products_evaluated},
                    {"truncated", r.truncated},
                    {"verdict", to_string(verdict(r))}});
  }
  json j = {{"method", method_name(setting_of(file), cfg.via_lift)},
            {"norm", cfg.norm},
            {"rows", std::move(rows)}};
  return {j.dump(2) + "\n", truncated ? 2 : 0};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Certified bounds on the (constrained) joint spectral radius of switched linear systems"};
  app.require_subcommand(1);
  Config cfg;

  const auto common = [&](CLI::App* sub) {
    sub->add_option("input", cfg.input, "System JSON file")->required();
    sub->add_option("--out", cfg.out, "Write the output to FILE instead of stdout");
  };
  const auto numeric = [&](CLI::App* sub) {
    sub->add_option("--norm", cfg.norm, "Matrix norm")->check(CLI::IsMember({"one", "inf", "fro", "two"}))
        ->capture_default_str();
    sub->add_option("--threads", cfg.threads, "Worker threads (0: OpenMP default)")->check(CLI::NonNegativeNumber);
    sub->add_option("--cap", cfg.cap, "Maximum number of products formed")->capture_default_str();
    sub->add_option("--output", cfg.output, "Output format")->check(CLI::IsMember({"text", "json"}))
        ->capture_default_str();
    sub->add_flag("--timing", cfg.timing, "Print wall time to stderr");
  };

  auto* bounds = app.add_subcommand("bounds", "Fixed-horizon lower and upper bounds");
  common(bounds);
  numeric(bounds);
  bounds->add_option("--k", cfg.k, "Horizon")->capture_default_str();
  bounds->add_flag("--via-lift", cfg.via_lift, "For DFA systems, bound the lifted system under the block norm");

  auto* grip = app.add_subcommand("gripenberg", "Branch-and-bound bracket of width delta");
  common(grip);
  numeric(grip);
  grip->add_option("--delta", cfg.delta, "Target bracket width")->capture_default_str();

  auto* lift = app.add_subcommand("lift", "Write the lifted matrices {F_i (x) A_i} as JSON");
  common(lift);
  lift->add_flag("--edge-lift", cfg.edge_lift, "Also write one matrix per DFA edge");
  lift->add_flag("--omega-lift", cfg.omega_lift, "Write the lift of the 'omega' constraint");

  auto* tprod = app.add_subcommand("tproduct", "Write the constrained system over accepted words of length t");
  common(tprod);
  tprod->add_option("--t", cfg.t, "Word length")->capture_default_str();
  tprod->add_option("--cap", cfg.cap, "Maximum number of words");

  auto* acc = app.add_subcommand("accepts", "Check words against the constraint");
  common(acc);
  acc->add_option("words", cfg.words, "Words such as 231 or 2,3,1")->required();
  acc->add_option("--output", cfg.output, "Output format")->check(CLI::IsMember({"text", "json"}));

  auto* report = app.add_subcommand("report", "Bounds for a schedule of horizons, as a JSON table");
  common(report);
  numeric(report);
  report->add_option("--k", cfg.k, "Largest horizon when no schedule is given")->capture_default_str();
  report->add_option("--schedule", cfg.schedule, "Horizons to run, e.g. 1,2,4,8")->delimiter(',');
  report->add_flag("--via-lift", cfg.via_lift, "For DFA systems, bound the lifted system");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    Outcome result;
    if (*bounds) result = cmd_bounds(cfg);
    else if (*grip) result = cmd_gripenberg(cfg);
    else if (*lift) result = cmd_lift(cfg);
    else if (*tprod) result = cmd_tproduct(cfg);
    else if (*acc) result = cmd_accepts(cfg);
    else result = cmd_report(cfg);

    if (cfg.out.empty()) {
      std::cout << result.body;
    } else {
      std::ofstream os(cfg.out);
      if (!os) throw Error(ErrorCode::kInvalidArgument, "cannot write '" + cfg.out + "'");
      os << result.body;
    }
    return result.code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
