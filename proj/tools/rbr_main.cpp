// rbr: command line front end for round-based register protocols.
#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "rbr/rbr.hpp"

namespace {

enum Exit { kOk = 0, kUsage = 2, kError = 3, kUnsafe = 10, kInconclusive = 11 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Loaded {
  rbr::Protocol original;
  rbr::Protocol p;  // desugared
};

Loaded load(const std::string& path) {
  Loaded l;
  l.original = rbr::load_protocol(path);
  l.p = rbr::desugar(l.original);
  return l;
}

rbr::StateSet targets_for(const Loaded& l, const std::string& flag) {
  std::string name = flag;
  if (name.empty()) {
    if (!l.original.error) throw UsageError("no error state: pass --error or declare 'error'");
    name = l.original.states[*l.original.error];
  }
  auto copies = l.p.copies_of(name);
  if (copies.empty()) throw UsageError("unknown state '" + name + "'");
  return l.p.state_set(copies);
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw UsageError("cannot write '" + path + "'");
  out << text;
}

std::string read_text(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

int cmd_verify(const std::string& file, const std::string& error, std::optional<int> max_rounds,
               const std::string& witness_path, unsigned jobs) {
  auto l = load(file);
  auto targets = targets_for(l, error);
  rbr::VerifyOptions opt;
  opt.max_rounds = max_rounds;
  opt.jobs = jobs;
  auto r = rbr::verify(l.p, targets, opt);
  std::cerr << "nodes=" << r.nodes << " depth=" << r.depth << " time=" << r.seconds << "s\n";
  switch (r.verdict) {
    case rbr::Verdict::Safe:
      std::cout << "SAFE\n";
      return kOk;
    case rbr::Verdict::Inconclusive:
      std::cout << "INCONCLUSIVE\n";
      return kInconclusive;
    case rbr::Verdict::Unsafe:
      std::cout << "UNSAFE round=" << *r.round << "\n";
      if (!witness_path.empty()) write_text(witness_path, rbr::format_witness(*r.witness));
      return kUnsafe;
  }
  return kError;
}

int cmd_oracle(const std::string& file, const std::string& error, int K, const std::string& mode) {
  auto l = load(file);
  auto targets = targets_for(l, error);
  if (mode == "saturation") {
    if (l.p.registers != 1 || l.p.visibility != 0)
      throw UsageError("saturation mode needs registers = 1 and visibility = 0");
    auto r = rbr::round_saturation_reach(l.p, K, targets);
    std::cout << rbr::format_saturation(l.p, r);
    if (r.covered_round) {
      std::cout << "covered at round " << *r.covered_round << "\n";
      return kUnsafe;
    }
    std::cout << "not covered within " << K << " rounds\n";
    return kOk;
  }
  auto r = rbr::bounded_abstract_reach(l.p, K, targets);
  for (const auto& loc : r.coverable) std::cout << "coverable: " << rbr::location_to_string(l.p, loc) << "\n";
  if (r.covered) {
    std::cout << "covered: " << rbr::location_to_string(l.p, *r.covered) << "\n";
    return kUnsafe;
  }
  std::cout << "not covered within " << K << " rounds\n";
  return kOk;
}

int cmd_gen(const std::string& family, const std::vector<std::string>& params, const std::string& out) {
  auto int_param = [&]() {
    if (params.size() != 1) throw UsageError("gen " + family + ": expected one integer parameter");
    try {
      std::size_t used = 0;
      int m = std::stoi(params[0], &used);
      if (used != params[0].size() || m < 1) throw std::invalid_argument("");
      return m;
    } catch (const std::exception&) {
      throw UsageError("gen " + family + ": bad parameter '" + params[0] + "'");
    }
  };
  auto no_param = [&]() {
    if (!params.empty()) throw UsageError("gen " + family + " takes no parameters");
  };
  rbr::Protocol p;
  if (family == "fig1") {
    no_param();
    p = rbr::gen_fig1();
  } else if (family == "counter") {
    p = rbr::gen_counter(int_param());
  } else if (family == "cutoff") {
    p = rbr::gen_cutoff(int_param());
  } else if (family == "drift") {
    p = rbr::gen_drift(int_param());
  } else if (family == "aspnes") {
    std::string pref = params.empty() ? "A0" : params[0];
    if (params.size() > 1 || (pref != "A0" && pref != "A1")) throw UsageError("gen aspnes: expected A0 or A1");
    p = rbr::gen_aspnes(pref);
  } else if (family == "agreement") {
    no_param();
    p = rbr::gen_aspnes_agreement();
  } else if (family == "qbf") {
    if (params.size() != 1) throw UsageError("gen qbf: expected a QDIMACS file");
    p = rbr::gen_qbf(rbr::parse_qdimacs(read_text(params[0])));
  } else {
    throw UsageError("unknown family '" + family + "'");
  }
  write_text(out, rbr::print_protocol(p));
  return kOk;
}

int cmd_simulate(const std::string& file, int n, std::size_t steps, std::uint64_t seed, bool trace) {
  auto l = load(file);
  auto e = rbr::random_execution(l.p, n, steps, seed);
  if (trace) std::cout << rbr::format_trace(l.p, e);
  auto c = rbr::final_config(l.p, e);
  std::cout << "steps=" << e.schedule.size() << " processes=" << c.process_count() << "\n";
  for (const auto& [loc, cnt] : c.counts) std::cout << rbr::location_to_string(l.p, loc) << " x" << cnt << "\n";
  return kOk;
}

int cmd_check_witness(const std::string& file, const std::string& witness, const std::string& error) {
  auto l = load(file);
  auto targets = targets_for(l, error);
  rbr::WitnessFamily w;
  try {
    w = rbr::parse_witness(read_text(witness));
  } catch (const std::invalid_argument& ex) {
    throw UsageError(std::string("witness: ") + ex.what());
  }
  auto r = rbr::replay_witness(l.p, targets, w);
  if (r.confirmed) {
    std::cout << "CONFIRMED round=" << w.round << "\n";
    return kOk;
  }
  std::cout << "REFUTED: " << r.reason << "\n";
  return kUnsafe;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Safety verification for round-based register protocols"};
  app.require_subcommand(1);

  std::string file, error, witness, out, mode = "abstract", family;
  std::optional<int> max_rounds;
  int K = 0, processes = 1;
  unsigned jobs = 1;
  std::size_t steps = 100;
  std::uint64_t seed = 0;
  bool trace = false;
  std::vector<std::string> params;

  auto* verify = app.add_subcommand("verify", "Decide whether the error state is coverable");
  verify->add_option("file", file, "Protocol file")->required();
  verify->add_option("--error", error, "Error state (default: the file's error declaration)");
  verify->add_option("--max-rounds", max_rounds, "Give up with INCONCLUSIVE beyond this round");
  verify->add_option("--witness", witness, "Write the witness family here when unsafe");
  verify->add_option("--jobs", jobs, "Threads for frontier expansion")->check(CLI::PositiveNumber);

  auto* oracle = app.add_subcommand("oracle", "Bounded abstract or per-round saturation oracle");
  oracle->add_option("file", file, "Protocol file")->required();
  oracle->add_option("--error", error, "Error state");
  oracle->add_option("--max-rounds", K, "Round bound")->required()->check(CLI::NonNegativeNumber);
  oracle->add_option("--mode", mode, "abstract or saturation")->check(CLI::IsMember({"abstract", "saturation"}));

  auto* gen = app.add_subcommand("gen", "Emit a generated protocol");
  gen->add_option("family", family, "fig1, counter, cutoff, drift, aspnes, agreement or qbf")->required();
  gen->add_option("params", params, "Family parameters");
  gen->add_option("-o,--output", out, "Output file (default stdout)");

  auto* simulate = app.add_subcommand("simulate", "Run a random concrete execution");
  simulate->add_option("file", file, "Protocol file")->required();
  simulate->add_option("--processes", processes, "Number of processes")->check(CLI::PositiveNumber);
  simulate->add_option("--steps", steps, "Maximum number of moves");
  simulate->add_option("--seed", seed, "Random seed");
  simulate->add_flag("--trace", trace, "Print every move");

  auto* check = app.add_subcommand("check-witness", "Replay a witness family");
  check->add_option("file", file, "Protocol file")->required();
  check->add_option("witness", witness, "Witness file")->required();
  check->add_option("--error", error, "Error state");

  auto* desugar = app.add_subcommand("desugar", "Print the single-action, guard-free protocol");
  desugar->add_option("file", file, "Protocol file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (*verify) return cmd_verify(file, error, max_rounds, witness, jobs);
    if (*oracle) return cmd_oracle(file, error, K, mode);
    if (*gen) return cmd_gen(family, params, out);
    if (*simulate) return cmd_simulate(file, processes, steps, seed, trace);
    if (*check) return cmd_check_witness(file, witness, error);
    if (*desugar) {
      std::cout << rbr::print_protocol(load(file).p);
      return kOk;
    }
  } catch (const rbr::ResourceLimit& e) {
    std::cout << "ERROR: " << e.what() << "\n";
    return kError;
  } catch (const std::exception& e) {
    std::cerr << "rbr: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
