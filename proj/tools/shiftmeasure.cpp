// shiftmeasure: command-line front end.
// Exit codes: 0 success, 1 infeasible or invalid input, 2 internal failure.

#include <fmt/format.h>
#include <fmt/ostream.h>

#include <CLI11.hpp>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <sstream>

#include "json.hpp"
#include "shiftmeasure/birkhoff.hpp"
#include "shiftmeasure/entropy_opt.hpp"
#include "shiftmeasure/estimators.hpp"
#include "shiftmeasure/measure.hpp"
#include "shiftmeasure/table_io.hpp"
#include "shiftmeasure/zero_block.hpp"

namespace sm = shiftmeasure;
namespace zb = shiftmeasure::zero_block;

namespace {

constexpr std::uint64_t default_seed = 20240601;

// Raised for conditions that are not the caller's fault.
struct InternalFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, sep)) parts.push_back(item);
  if (!text.empty() && text.back() == sep) parts.emplace_back();
  return parts;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

struct SpecOptions {
  std::string a;
  std::string geometric;
  int terms = 64;
  std::string tail = "constant";
  std::string file;

  void attach(CLI::App* cmd) {
    cmd->add_option("--a", a, "comma-separated a_1, a_2, ... (rationals or decimals)");
    cmd->add_option("--geometric", geometric, "ratio r, giving a_k = r^k");
    cmd->add_option("--terms", terms, "number of explicit geometric terms")->check(CLI::Range(1, 4096));
    cmd->add_option("--tail", tail, "constant | affine");
    cmd->add_option("--spec", file, "JSON file {\"a\": [...], \"tail\": ...}");
  }

  zb::FrequencySpec resolve() const {
    const int given = !a.empty() + !geometric.empty() + !file.empty();
    if (given != 1) throw std::invalid_argument("give exactly one of --a, --geometric, --spec");
    zb::TailPolicy policy = zb::parse_tail_policy(tail);
    if (!geometric.empty()) return zb::FrequencySpec::geometric(sm::parse_rational(geometric), terms, policy);
    std::vector<sm::Rational> values;
    if (!a.empty()) {
      for (const auto& tok : split(a, ',')) values.push_back(sm::parse_rational(tok));
      return zb::FrequencySpec(std::move(values), policy);
    }
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(read_file(file));
      if (doc.contains("tail")) policy = zb::parse_tail_policy(doc.at("tail").get<std::string>());
      for (const auto& v : doc.at("a"))
        values.push_back(sm::parse_rational(v.is_string() ? v.get<std::string>() : v.dump()));
    } catch (const nlohmann::json::exception& e) {
      throw std::invalid_argument("spec file '" + file + "': " + e.what());
    }
    return zb::FrequencySpec(std::move(values), policy);
  }
};

std::string fmt_entropy(double nats, bool bits) {
  return fmt::format("{:.12f}", bits ? nats / std::numbers::ln2 : nats);
}

void emit(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::invalid_argument("cannot write '" + path + "'");
  out << text;
}

int cmd_check(const SpecOptions& so, int upto) {
  const auto spec = so.resolve();
  const auto report = upto >= 0 ? zb::check_feasible(spec, upto) : zb::check_feasible(spec);
  std::cout << report.describe() << '\n';
  return report.feasible ? 0 : 1;
}

int cmd_build(const SpecOptions& so, int depth, const std::string& mode, const std::string& out) {
  const auto spec = so.resolve();
  if (mode == "exact")
    emit(sm::table_to_json(zb::build_max_entropy_table<sm::Rational>(spec, depth)), out);
  else if (mode == "float")
    emit(sm::table_to_json(zb::build_max_entropy_table<double>(spec, depth)), out);
  else
    throw std::invalid_argument("unknown mode '" + mode + "'");
  return 0;
}

int cmd_entropy(const SpecOptions& so, int depth, std::int64_t truncation, bool bits) {
  const auto spec = so.resolve();
  const auto closed = truncation >= 0 ? zb::entropy_closed_form(spec, truncation) : zb::entropy_closed_form(spec);
  std::cout << "closed_form=" << fmt_entropy(closed.value, bits) << '\n';
  std::cout << "exact=" << (closed.exact ? "yes" : "no") << " omitted=" << fmt_entropy(closed.omitted, bits)
            << " last_nonzero_d=" << closed.last_nonzero << '\n';
  const auto table = zb::build_max_entropy_table<sm::Rational>(spec, depth);
  const auto ladder = sm::entropy_ladder(table);
  for (const auto& [n, h] : ladder) std::cout << fmt::format("h({})=", n) << fmt_entropy(h, bits) << '\n';
  double telescoped = zb::second_order_entropy(spec);
  for (double phi : zb::telescoping_increments(spec, depth - 2)) telescoped += phi;
  const double last = ladder.back().second;
  std::cout << "telescoped=" << fmt_entropy(telescoped, bits) << '\n';
  std::cout << fmt::format("agreement ladder_vs_telescoped={:.3e} ladder_vs_closed_form={:.3e}\n",
                           std::fabs(last - telescoped), std::fabs(last - closed.value));
  if (closed.last_nonzero > depth - 2)
    std::cout << fmt::format("note: d_j nonzero up to j={}, ladder depth {} does not reach it\n",
                             closed.last_nonzero, depth);
  return 0;
}

sm::opt::SolveOptions solve_options(int max_iter, double tol) {
  sm::opt::SolveOptions o;
  o.max_iterations = max_iter;
  o.kkt_tolerance = tol;
  return o;
}

int cmd_optimize(const std::string& file, const std::vector<std::string>& eqs, int depth, int max_iter, double tol,
                 const std::string& out, bool bits) {
  sm::opt::ConstraintSet constraints;
  if (!file.empty()) constraints = sm::opt::read_constraints_file(file);
  for (const auto& eq : eqs) {
    const auto pos = eq.find('=');
    if (pos == std::string::npos) throw std::invalid_argument("--eq expects word=value, got '" + eq + "'");
    constraints.equal(sm::Word::parse(eq.substr(0, pos)), sm::parse_rational(eq.substr(pos + 1)).get_d());
  }
  const auto result = sm::opt::solve(depth, constraints, solve_options(max_iter, tol));
  if (result.status == sm::opt::SolveStatus::infeasible) {
    std::cout << result.summary() << '\n';
    const auto& cert = *result.certificate;
    std::cout << fmt::format("certificate b^T y={:.6g}\n", cert.separation);
    for (std::size_t i = 0; i < cert.multipliers.size(); ++i)
      if (std::fabs(cert.multipliers[i]) > 1e-12)
        std::cout << fmt::format("  y={:+.6g}  {}\n", cert.multipliers[i], cert.row_labels[i]);
    return 1;
  }
  const std::string json = sm::table_to_json(*result.table);
  if (out.empty()) std::cout << json;
  else emit(json, out);
  std::cout << fmt::format("objective={} kkt={:.3e} status={}\n", fmt_entropy(result.objective, bits),
                           result.kkt_residual, sm::opt::to_string(result.status));
  if (result.status != sm::opt::SolveStatus::optimal)
    throw InternalFailure(fmt::format("no convergence after {} iterations", result.iterations));
  return 0;
}

int cmd_compare(const SpecOptions& so, int depth, int max_iter, double tol) {
  const auto spec = so.resolve();
  const auto r = sm::opt::compare_with_closed_form(spec, depth, solve_options(max_iter, tol));
  std::cout << fmt::format(
      "status={}\nmax_cylinder_deviation={:.3e}\nobjective_deviation={:.3e}\noptimizer_objective={:.12f}\n"
      "closed_form_objective={:.12f}\nkkt={:.3e}\n",
      sm::opt::to_string(r.status), r.max_cylinder_deviation, r.objective_deviation, r.optimizer_objective,
      r.closed_form_objective, r.kkt_residual);
  if (r.status != sm::opt::SolveStatus::optimal) throw InternalFailure("optimizer did not converge");
  return 0;
}

int cmd_sample(const std::string& table_path, std::size_t length, std::size_t count, std::uint64_t seed,
               const std::string& out) {
  const auto table = sm::read_table_file(table_path);
  const auto samples = std::visit([&](const auto& t) { return sm::sample_orbits(t, length, count, seed); }, table);
  std::ostringstream text;
  sm::write_samples(text, samples);
  emit(text.str(), out);
  return 0;
}

int cmd_freq(const std::string& path, std::size_t index, const std::string& words, const std::string& targets,
             std::uint64_t horizon) {
  const auto samples = sm::read_samples(path);
  if (index >= samples.size())
    throw std::invalid_argument(fmt::format("sample index {} out of range ({} samples)", index, samples.size()));
  const auto& x = samples[index];
  std::vector<sm::Word> list;
  for (const auto& w : split(words, ',')) list.push_back(sm::Word::parse(w));
  std::vector<std::optional<double>> alpha;
  if (!targets.empty()) {
    const auto parts = split(targets, ',');
    if (parts.size() != list.size()) throw std::invalid_argument("--targets needs one value per word");
    for (const auto& t : parts) alpha.emplace_back(sm::parse_rational(t).get_d());
  }
  const std::uint64_t n = horizon ? horizon : x.length();
  sm::birkhoff::write_profile_csv(std::cout, sm::birkhoff::recurrence_profile(x, list, n), alpha);
  if (!alpha.empty()) {
    std::vector<std::pair<sm::Word, double>> pairs;
    for (std::size_t i = 0; i < list.size(); ++i) pairs.emplace_back(list[i], *alpha[i]);
    std::cerr << fmt::format("weighted_deviation={:.12g}\n", sm::birkhoff::weighted_deviation(x, n, pairs));
  }
  return 0;
}

int cmd_estimate(const std::vector<std::string>& paths, int n, double delta, bool bits) {
  std::vector<sm::OrbitSample> samples;
  for (const auto& p : paths) {
    auto part = sm::read_samples(p);
    samples.insert(samples.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
  }
  std::cout << "word_count=" << fmt_entropy(sm::est::word_count_entropy(samples, n), bits) << '\n';
  std::cout << "katok=" << fmt_entropy(sm::est::katok_entropy(samples, n, delta), bits) << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Invariant measures on the binary full shift with prescribed cylinder frequencies"};
  app.require_subcommand(1);
  std::function<int()> action;

  SpecOptions spec_opts;
  int depth = 0;
  int upto = -1;
  std::string mode = "exact";
  std::string out;
  std::int64_t truncation = -1;
  bool bits = false;
  int max_iter = 100000;
  double tol = 1e-9;
  std::string constraints_file;
  std::vector<std::string> eqs;
  std::string table_path;
  std::size_t length = 0, count = 1, index = 0;
  std::uint64_t seed = default_seed, horizon = 0;
  std::string sample_path, words, targets;
  std::vector<std::string> sample_paths;
  int word_len = 0;
  double delta = 0.1;

  auto* check = app.add_subcommand("check", "feasibility of a zero-block frequency spec");
  spec_opts.attach(check);
  check->add_option("--upto", upto, "check a_0..a_upto only");
  check->callback([&] { action = [&] { return cmd_check(spec_opts, upto); }; });

  auto* build = app.add_subcommand("build", "maximal-entropy cylinder table as JSON");
  spec_opts.attach(build);
  build->add_option("--depth", depth, "table depth")->required()->check(CLI::Range(1, 22));
  build->add_option("--mode", mode, "exact | float");
  build->add_option("--out", out, "output file (default stdout)");
  build->callback([&] { action = [&] { return cmd_build(spec_opts, depth, mode, out); }; });

  auto* entropy = app.add_subcommand("entropy", "closed-form entropy, ladder and agreement");
  spec_opts.attach(entropy);
  depth = 10;
  entropy->add_option("--depth", depth, "ladder depth (default 10)")->check(CLI::Range(2, 18));
  entropy->add_option("--truncation", truncation, "drop h(d_j) for j beyond this");
  entropy->add_flag("--bits", bits, "report in bits");
  entropy->callback([&] { action = [&] { return cmd_entropy(spec_opts, depth, truncation, bits); }; });

  auto* optimize = app.add_subcommand("optimize", "maximize h^(depth) under frequency constraints");
  optimize->add_option("--constraints", constraints_file, "JSON constraint list");
  optimize->add_option("--eq", eqs, "word=value equality, repeatable");
  optimize->add_option("--depth", depth, "depth")->required()->check(CLI::Range(2, 14));
  optimize->add_option("--max-iter", max_iter, "iteration cap")->check(CLI::PositiveNumber);
  optimize->add_option("--tol", tol, "KKT tolerance")->check(CLI::PositiveNumber);
  optimize->add_option("--out", out, "write the table JSON here instead of stdout");
  optimize->add_flag("--bits", bits, "report in bits");
  optimize->callback(
      [&] { action = [&] { return cmd_optimize(constraints_file, eqs, depth, max_iter, tol, out, bits); }; });

  auto* compare = app.add_subcommand("compare", "optimizer against the closed-form table");
  spec_opts.attach(compare);
  compare->add_option("--depth", depth, "depth")->required()->check(CLI::Range(2, 12));
  compare->add_option("--max-iter", max_iter, "iteration cap")->check(CLI::PositiveNumber);
  compare->add_option("--tol", tol, "KKT tolerance")->check(CLI::PositiveNumber);
  compare->callback([&] { action = [&] { return cmd_compare(spec_opts, depth, max_iter, tol); }; });

  auto* sample = app.add_subcommand("sample", "draw orbits from a table");
  sample->add_option("--table", table_path, "table JSON")->required();
  sample->add_option("--length", length, "bits per sample")->required()->check(CLI::PositiveNumber);
  sample->add_option("--count", count, "number of samples")->check(CLI::PositiveNumber);
  sample->add_option("--seed", seed, "random seed");
  sample->add_option("--out", out, "sample file (default stdout)");
  sample->callback([&] { action = [&] { return cmd_sample(table_path, length, count, seed, out); }; });

  auto* freq = app.add_subcommand("freq", "recurrence frequencies as CSV");
  freq->add_option("--samples", sample_path, "sample file")->required();
  freq->add_option("--index", index, "which sample in the file");
  freq->add_option("--words", words, "comma-separated words")->required();
  freq->add_option("--targets", targets, "comma-separated target frequencies");
  freq->add_option("--horizon", horizon, "horizon n (default sample length)");
  freq->callback([&] { action = [&] { return cmd_freq(sample_path, index, words, targets, horizon); }; });

  auto* generic = app.add_subcommand("generic", "the point 0 1 00 11 000 111 ...");
  generic->add_option("--length", length, "bits")->required()->check(CLI::PositiveNumber);
  generic->callback([&] {
    action = [&] {
      std::cout << sm::birkhoff::generic_point_half(length).str() << '\n';
      return 0;
    };
  });

  auto* estimate = app.add_subcommand("estimate", "word-count and Katok entropy estimates");
  estimate->add_option("--samples", sample_paths, "sample files")->required();
  estimate->add_option("--n", word_len, "word length")->required()->check(CLI::Range(1, 62));
  estimate->add_option("--delta", delta, "uncovered mass, 0 < delta < 1");
  estimate->add_flag("--bits", bits, "report in bits");
  estimate->callback([&] { action = [&] { return cmd_estimate(sample_paths, word_len, delta, bits); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    return action();
  } catch (const InternalFailure& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const sm::StructuralError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 2;
  }
}
