// poa: command-line front end for the partial-order alignment library.
//
// Exit codes: 0 success, 1 verify-lred found violations, 2 invalid input,
// 3 search budget exceeded.

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>

#include "poa/poa.hpp"

namespace {

constexpr int kExitViolations = 1;
constexpr int kExitInvalid = 2;
constexpr int kExitCap = 3;

std::string read_file(const std::string& path) {
  if (path == "-") return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  std::ifstream in(path, std::ios::binary);
  if (!in) throw poa::InvalidArgument("cannot read '" + path + "'");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) throw poa::InvalidArgument("cannot write '" + path + "'");
}

// Linear and weak views of an order, via its closure when it is not already
// given in that form.
std::optional<poa::LinearOrder> as_linear(const poa::Order& o) {
  if (const auto* l = std::get_if<poa::LinearOrder>(&o)) return *l;
  if (poa::classify(o) != poa::OrderFamily::linear) return std::nullopt;
  return poa::detail::flatten(poa::to_weak(o));
}

std::optional<poa::WeakOrder> as_weak(const poa::Order& o) {
  const auto f = poa::classify(o);
  if (f != poa::OrderFamily::linear && f != poa::OrderFamily::weak) return std::nullopt;
  return poa::to_weak(o);
}

std::optional<poa::AlignmentSolution> solve_dp(const poa::AlignmentInstance& inst) {
  if (auto g = as_linear(inst.gamma()))
    if (auto p = as_weak(inst.pi())) return poa::dp_align_linear_weak(*g, *p);
  if (auto p = as_linear(inst.pi()))
    if (auto g = as_weak(inst.gamma())) return poa::detail::swapped(poa::dp_align_linear_weak(*p, *g));
  return std::nullopt;
}

struct Options {
  std::string instance, method = "auto", kind, input, output, certificate, aux;
  std::size_t cap = poa::kDefaultOracleCap, samples = 500, n = 8, bucket = 3;
  std::uint64_t seed = 1;
  std::string gamma_family = "linear", pi_family = "weak";
  bool allow_high_degree = false;
};

int cmd_solve(const Options& o) {
  const auto inst = poa::parse_instance(read_file(o.instance));
  std::optional<poa::AlignmentSolution> sol;
  if (o.method == "dp" || o.method == "auto") sol = solve_dp(inst);
  if (!sol && o.method == "dp")
    throw poa::FamilyMismatch("the dp method needs one linear order and one weak order");
  if (!sol) sol = poa::oracle_align(inst, o.cap);
  std::cout << poa::serialize_solution(*sol);
  return 0;
}

int cmd_classify(const Options& o) {
  const auto inst = poa::parse_instance(read_file(o.instance));
  std::cout << "gamma " << poa::to_string(poa::classify(inst.gamma())) << '\n'
            << "pi " << poa::to_string(poa::classify(inst.pi())) << '\n';
  return 0;
}

int cmd_reduce(const Options& o) {
  const std::string text = read_file(o.input);
  if (o.kind == "mis3") {
    const auto [inst, cert] = poa::reduce_mis3(poa::parse_graph(text), o.allow_high_degree);
    write_file(o.output, poa::serialize_instance(inst));
    write_file(o.certificate, poa::serialize_mis3_certificate(cert));
  } else {
    const auto [inst, cert] = poa::reduce_sat32(poa::parse_sat(text));
    write_file(o.output, poa::serialize_instance(inst));
    write_file(o.certificate, poa::serialize_sat32_certificate(cert));
  }
  return 0;
}

int cmd_build_solution(const Options& o) {
  const std::string cert_text = read_file(o.certificate), source = read_file(o.aux);
  const std::string tag = poa::document_tag(cert_text);
  if (tag == "mis3-certificate") {
    const auto cert = poa::parse_mis3_certificate(cert_text);
    std::cout << poa::serialize_solution(poa::solution_from_independent_set(cert, poa::parse_independent_set(source)));
  } else if (tag == "sat32-certificate") {
    const auto cert = poa::parse_sat32_certificate(cert_text);
    std::cout << poa::serialize_solution(poa::solution_from_assignment(cert, poa::parse_assignment(source)));
  } else {
    throw poa::ParseError(1, "expected a mis3-certificate or sat32-certificate, found '" + tag + "'");
  }
  return 0;
}

int cmd_extract(const Options& o) {
  const std::string cert_text = read_file(o.certificate);
  const auto sol = poa::parse_solution(read_file(o.aux));
  const std::string tag = poa::document_tag(cert_text);
  if (tag == "mis3-certificate") {
    const auto cert = poa::parse_mis3_certificate(cert_text);
    const auto repair = poa::repair_mis3_solution(cert, sol);
    const auto vs = poa::extract_independent_set(cert, sol);
    std::cout << "# n_adj=" << sol.n_adj << " repaired_n_adj=" << repair.solution.n_adj
              << " repairs=" << repair.repaired_edges.size() << " size=" << vs.size() << '\n'
              << poa::serialize_independent_set(vs);
  } else if (tag == "sat32-certificate") {
    const auto cert = poa::parse_sat32_certificate(cert_text);
    const auto repair = poa::repair_sat32_solution(cert, sol);
    const auto a = poa::extract_assignment(cert, sol);
    std::cout << "# n_adj=" << sol.n_adj << " repaired_n_adj=" << repair.solution.n_adj
              << " inconsistent=" << repair.inconsistent_variables.size()
              << " satisfied=" << poa::count_satisfied(cert.sat, a) << '\n'
              << poa::serialize_assignment(a);
  } else {
    throw poa::ParseError(1, "expected a mis3-certificate or sat32-certificate, found '" + tag + "'");
  }
  return 0;
}

int cmd_verify(const Options& o) {
  const auto kind = poa::parse_lred_kind(o.kind);
  if (!kind) throw poa::InvalidArgument("unknown reduction kind '" + o.kind + "'");
  const std::string text = read_file(o.input);
  const poa::LRedReport report = poa::is_mis3(*kind)
                                     ? poa::verify_lreduction(*kind, poa::parse_graph(text), o.samples, o.seed, o.cap)
                                     : poa::verify_lreduction(*kind, poa::parse_sat(text), o.samples, o.seed, o.cap);
  std::cout << poa::render_report(report);
  return report.ok() ? 0 : kExitViolations;
}

int cmd_gen(const Options& o) {
  if (o.kind == "graph") {
    std::cout << poa::serialize_graph(poa::random_graph(o.n, o.seed));
  } else if (o.kind == "sat32") {
    std::cout << poa::serialize_sat(poa::random_sat32(o.n, o.seed));
  } else {
    const auto g = poa::parse_gen_family(o.gamma_family), p = poa::parse_gen_family(o.pi_family);
    if (!g || !p) throw poa::InvalidArgument("families are linear, weak, interval or dag");
    std::cout << poa::serialize_instance(poa::random_instance({o.n, *g, *p, o.bucket, o.seed}));
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Partial-order alignment: exact solvers, reductions and L-reduction checks"};
  app.require_subcommand(1);
  Options o;
  int (*run)(const Options&) = nullptr;

  auto* solve = app.add_subcommand("solve", "Align the two orders of an instance");
  solve->add_option("instance", o.instance, "instance file ('-' for stdin)")->required();
  solve->add_option("--method", o.method, "dp, oracle or auto")->check(CLI::IsMember({"dp", "oracle", "auto"}));
  solve->add_option("--cap", o.cap, "oracle budget")->check(CLI::PositiveNumber);
  solve->callback([&] { run = cmd_solve; });

  auto* classify = app.add_subcommand("classify", "Report the finest family of each order");
  classify->add_option("instance", o.instance, "instance file")->required();
  classify->callback([&] { run = cmd_classify; });

  auto* reduce = app.add_subcommand("reduce", "Build the alignment instance of a graph or 2SAT input");
  reduce->add_option("kind", o.kind, "mis3 or sat32")->required()->check(CLI::IsMember({"mis3", "sat32"}));
  reduce->add_option("input", o.input, "graph or sat32 file")->required();
  reduce->add_option("-o,--output", o.output, "instance file to write")->required();
  reduce->add_option("-c,--certificate", o.certificate, "certificate file to write")->required();
  reduce->add_flag("--allow-high-degree", o.allow_high_degree, "accept graphs of degree > 3");
  reduce->callback([&] { run = cmd_reduce; });

  auto* build = app.add_subcommand("build-solution", "Map an independent set or assignment to a solution");
  build->add_option("certificate", o.certificate, "certificate file")->required();
  build->add_option("source", o.aux, "iset or assignment file")->required();
  build->callback([&] { run = cmd_build_solution; });

  auto* extract = app.add_subcommand("extract", "Map a solution back to an independent set or assignment");
  extract->add_option("certificate", o.certificate, "certificate file")->required();
  extract->add_option("solution", o.aux, "solution file")->required();
  extract->callback([&] { run = cmd_extract; });

  auto* verify = app.add_subcommand("verify-lred", "Check the L-reduction inequalities on one input");
  verify->add_option("kind", o.kind, "mis3-maxadj, mis3-minbrk, sat32-maxadj or sat32-minbrk")->required();
  verify->add_option("input", o.input, "graph or sat32 file")->required();
  verify->add_option("--samples", o.samples, "random feasible solutions to check");
  verify->add_option("--seed", o.seed, "random seed");
  verify->add_option("--cap", o.cap, "oracle budget")->check(CLI::PositiveNumber);
  verify->callback([&] { run = cmd_verify; });

  auto* gen = app.add_subcommand("gen", "Generate a seeded random input");
  gen->add_option("kind", o.kind, "graph, sat32 or instance")->required()->check(
      CLI::IsMember({"graph", "sat32", "instance"}));
  gen->add_option("--seed", o.seed, "random seed");
  gen->add_option("--n", o.n, "vertices, variables or markers");
  gen->add_option("--gamma", o.gamma_family, "family of gamma (instance)");
  gen->add_option("--pi", o.pi_family, "family of pi (instance)");
  gen->add_option("--bucket", o.bucket, "largest weak bucket (instance)");
  gen->callback([&] { run = cmd_gen; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInvalid;
  }

  try {
    return run(o);
  } catch (const poa::CapExceeded& e) {
    std::cerr << "poa: " << e.what() << " (after " << e.partial_count() << ")\n";
    return kExitCap;
  } catch (const poa::InvalidArgument& e) {
    std::cerr << "poa: " << e.what() << '\n';
    return kExitInvalid;
  }
}
