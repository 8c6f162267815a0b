#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "gpr/generators.hpp"
#include "gpr/interpreter.hpp"
#include "gpr/programs.hpp"
#include "gpr/text_io.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return std::move(ss).str();
}

// A program argument is a file path, or failing that, a bundled program name.
std::string load_program_text(const std::string& arg) {
  if (std::filesystem::exists(arg)) return read_file(arg);
  return std::string(gpr::bundled_program_text(arg));
}

void write_output(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + out_path + "'");
  out << text;
}

gpr::GraphClass parse_class(const std::string& name) {
  auto c = gpr::class_from_name(name);
  if (!c) throw std::runtime_error("unknown graph class '" + name + "'");
  return *c;
}

double median(std::vector<double> xs) {
  std::sort(xs.begin(), xs.end());
  std::size_t n = xs.size();
  return n % 2 ? xs[n / 2] : (xs[n / 2 - 1] + xs[n / 2]) / 2.0;
}

int cmd_run(const std::string& program_arg, const std::string& input_arg,
            const std::string& out_path, std::uint64_t max_steps, bool trace) {
  gpr::CompiledProgram program = gpr::compile(gpr::parse_program(load_program_text(program_arg)));
  gpr::HostGraph g = gpr::parse_host(read_file(input_arg));
  gpr::Limits limits;
  limits.max_steps = max_steps;
  gpr::RunStats stats;
  gpr::TraceFn trace_fn;
  if (trace)
    trace_fn = [](std::uint64_t step, std::string_view what, bool matched,
                  std::uint64_t probes) {
      std::cerr << "step " << step << ": " << what;
      if (what != "break" && what != "fail") std::cerr << (matched ? " matched" : " failed");
      std::cerr << " (probes=" << probes << ")\n";
    };
  gpr::OutcomeKind outcome = gpr::exec(program, g, limits, stats, trace_fn);
  switch (outcome) {
    case gpr::OutcomeKind::graph:
      write_output(gpr::print_host(g), out_path);
      return 0;
    case gpr::OutcomeKind::fail:
      std::cout << "fail\n";
      return 2;
    case gpr::OutcomeKind::limit:
      std::cerr << "step limit exceeded (" << max_steps << ")\n";
      return 3;
  }
  return 1;
}

int cmd_bench(const std::string& program_arg, const std::string& class_name,
              const std::string& sizes_arg, int reps, const std::string& csv_path,
              std::uint64_t seed, std::uint64_t max_steps) {
  gpr::CompiledProgram program = gpr::compile(gpr::parse_program(load_program_text(program_arg)));
  gpr::GraphClass cls = parse_class(class_name);
  std::vector<int> sizes;
  {
    std::istringstream ss(sizes_arg);
    std::string item;
    while (std::getline(ss, item, ',')) sizes.push_back(std::stoi(item));
  }
  if (sizes.empty()) throw std::runtime_error("--sizes needs at least one value");
  if (!std::is_sorted(sizes.begin(), sizes.end()))
    throw std::runtime_error("--sizes must be ascending");

  std::ostringstream csv;
  csv << "program,class,size,rep,ms,steps,probes,outcome\n";
  std::string program_name =
      std::filesystem::exists(program_arg) ? std::filesystem::path(program_arg).stem().string()
                                           : program_arg;
  for (int n : sizes) {
    std::string input_text = gpr::print_host(gpr::generate(cls, n, seed));
    std::vector<double> ms;
    gpr::RunStats stats;
    gpr::OutcomeKind outcome = gpr::OutcomeKind::graph;
    std::int64_t size = 0;
    for (int rep = 1; rep <= reps; ++rep) {
      auto t0 = std::chrono::steady_clock::now();
      gpr::HostGraph g = gpr::parse_host(input_text);
      size = g.node_count() + g.edge_count();
      gpr::Limits limits;
      limits.max_steps = max_steps;
      outcome = gpr::exec(program, g, limits, stats);
      std::string out = gpr::print_host(g);
      auto t1 = std::chrono::steady_clock::now();
      // Keep the printed output alive until after timing so the compiler
      // cannot drop the print.
      if (out.empty()) throw std::logic_error("print produced no output");
      double wall = std::chrono::duration<double, std::milli>(t1 - t0).count();
      ms.push_back(wall);
      csv << program_name << "," << to_string(cls) << "," << size << "," << rep << ","
          << wall << "," << stats.steps << "," << stats.probes << ",";
      switch (outcome) {
        case gpr::OutcomeKind::graph: csv << "graph"; break;
        case gpr::OutcomeKind::fail: csv << "fail"; break;
        case gpr::OutcomeKind::limit: csv << "limit"; break;
      }
      csv << "\n";
    }
    csv << program_name << "," << to_string(cls) << "," << size << ",med," << median(ms)
        << "," << stats.steps << "," << stats.probes << ",";
    switch (outcome) {
      case gpr::OutcomeKind::graph: csv << "graph"; break;
      case gpr::OutcomeKind::fail: csv << "fail"; break;
      case gpr::OutcomeKind::limit: csv << "limit"; break;
    }
    csv << "\n";
  }
  write_output(std::move(csv).str(), csv_path);
  return 0;
}

int cmd_gen(const std::string& class_name, const std::string& sizes_arg, std::uint64_t seed,
            const std::string& out_path) {
  gpr::GraphClass cls = parse_class(class_name);
  if (sizes_arg.find(',') != std::string::npos)
    throw std::runtime_error("gen takes exactly one size");
  int n = std::stoi(sizes_arg);
  write_output(gpr::print_host(gpr::generate(cls, n, seed)), out_path);
  return 0;
}

int cmd_check_fast(const std::string& program_arg) {
  gpr::ProgramSource source = gpr::parse_program(load_program_text(program_arg));
  for (gpr::Rule& rule : source.rules) {
    gpr::validate_rule(rule);
    gpr::FastReport report = gpr::classify_fast(rule);
    std::cout << "rule " << rule.name << ": ";
    if (report.fast) {
      std::cout << "fast\n";
    } else {
      std::cout << "slow (";
      for (std::size_t i = 0; i < report.reasons.size(); ++i)
        std::cout << (i ? "; " : "") << report.reasons[i];
      std::cout << ")\n";
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rooted rule-based graph program engine"};
  app.require_subcommand(1);

  std::string program_arg, input_arg, out_path, class_name, sizes_arg, csv_path;
  std::uint64_t max_steps = 1'000'000'000;
  std::uint64_t seed = 0;
  int reps = 5;
  bool trace = false;

  CLI::App* run = app.add_subcommand("run", "Run a program on an input graph");
  run->add_option("program", program_arg, "Program file or bundled name")->required();
  run->add_option("input", input_arg, "Input graph file")->required();
  run->add_option("-o,--output", out_path, "Write the output graph here (default stdout)");
  run->add_option("--max-steps", max_steps, "Step limit standing in for nontermination");
  run->add_flag("--trace", trace, "Write one line per step to stderr");

  CLI::App* bench = app.add_subcommand("bench", "Time a program over generated graphs (CSV)");
  bench->add_option("program", program_arg, "Program file or bundled name")->required();
  bench->add_option("--class", class_name, "Graph class")->required();
  bench->add_option("--sizes", sizes_arg, "Comma-separated ascending node counts")->required();
  bench->add_option("--reps", reps, "Repetitions per size (median row appended)");
  bench->add_option("--csv", csv_path, "Write CSV here (default stdout)");
  bench->add_option("--seed", seed, "Generator seed");
  bench->add_option("--max-steps", max_steps, "Step limit");

  CLI::App* gen = app.add_subcommand("gen", "Generate a benchmark graph");
  gen->add_option("--class", class_name, "Graph class")->required();
  gen->add_option("--sizes", sizes_arg, "Target node count (exactly one)")->required();
  gen->add_option("--seed", seed, "Generator seed");
  gen->add_option("-o,--output", out_path, "Write the graph here (default stdout)");

  CLI::App* check = app.add_subcommand("check-fast", "Classify each rule as fast or slow");
  check->add_option("program", program_arg, "Program file or bundled name")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) return cmd_run(program_arg, input_arg, out_path, max_steps, trace);
    if (bench->parsed())
      return cmd_bench(program_arg, class_name, sizes_arg, reps, csv_path, seed, max_steps);
    if (gen->parsed()) return cmd_gen(class_name, sizes_arg, seed, out_path);
    if (check->parsed()) return cmd_check_fast(program_arg);
  } catch (const gpr::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
