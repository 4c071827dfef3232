#ifndef IFN_CLI_HPP
#define IFN_CLI_HPP

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "ifn/algebra.hpp"
#include "ifn/analysis.hpp"
#include "ifn/decompose.hpp"
#include "ifn/document.hpp"
#include "ifn/generators.hpp"
#include "ifn/service.hpp"
#include "ifn/sigtext.hpp"

// Exit codes: 0 success, 1 usage or parse error, 2 domain error.

namespace ifn::cli {

using doc::Json;

enum ExitCode : int { kOk = 0, kUsage = 1, kDomain = 2 };

namespace detail {

inline Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::InvalidDocument, "cannot open \"" + path + "\"");
  std::stringstream buf;
  buf << in.rdbuf();
  Json doc = Json::parse(buf.str(), nullptr, /*allow_exceptions=*/false);
  if (doc.is_discarded()) throw Error(ErrorCode::InvalidDocument, "\"" + path + "\" is not valid JSON");
  return doc;
}

inline FlowNetwork read_flow_file(const std::string& path) {
  const Json doc = read_json_file(path);
  if (doc::has_rational_entries(doc)) {
    throw Error(ErrorCode::InvalidDocument, "\"" + path + "\" holds rational entries; a flow matrix needs integers");
  }
  return doc::read_flow_network(doc);
}

}  // namespace detail

/// Runs one CLI invocation; args excludes the program name.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Ideal flow network signatures: compose, decompose and analyze"};
  app.require_subcommand(1);

  std::string sig_text, sig1, sig2, matrix_path, out_path, method = "greedy", graph_path, host = "127.0.0.1";
  bool strict = false, self_loops = false;
  std::size_t nodes = 0, complete = 0;
  std::int64_t kappa = 0;
  std::uint64_t seed = 0;
  int port = 8080;

  auto* compose_cmd = app.add_subcommand("compose", "Signature to flow matrix");
  compose_cmd->add_option("--sig", sig_text, "Signature text")->required();
  compose_cmd->add_flag("--strict", strict, "Reject signatures that are not pivot-connected");
  compose_cmd->add_option("--out", out_path, "Write the matrix document here instead of stdout");

  auto* decompose_cmd = app.add_subcommand("decompose", "Flow matrix to signature");
  decompose_cmd->add_option("--matrix", matrix_path, "Matrix document (JSON)")->required();
  decompose_cmd->add_option("--method", method, "greedy or linear")
      ->check(CLI::IsMember({"greedy", "linear"}));

  auto* analyze_cmd = app.add_subcommand("analyze", "Full report derived from a signature");
  analyze_cmd->add_option("--sig", sig_text, "Signature text")->required();

  auto* check_cmd = app.add_subcommand("check", "Premagic and irreducibility of a matrix");
  check_cmd->add_option("--matrix", matrix_path, "Matrix document (JSON)")->required();

  auto* canon_cmd = app.add_subcommand("canon", "Normalize a signature");
  canon_cmd->add_option("--sig", sig_text, "Signature text")->required();

  auto* relate_cmd = app.add_subcommand("relate", "identical, equivalent or distinct");
  relate_cmd->add_option("--sig1", sig1, "First signature")->required();
  relate_cmd->add_option("--sig2", sig2, "Second signature")->required();

  auto* random_cmd = app.add_subcommand("random", "Random integer IFN signature");
  random_cmd->add_option("--nodes", nodes, "Node count")->required();
  random_cmd->add_option("--kappa", kappa, "Total flow")->required();
  random_cmd->add_option("--seed", seed, "64-bit seed")->required();

  auto* premier_cmd = app.add_subcommand("premier", "Every canonical cycle of a support graph once");
  auto* complete_opt = premier_cmd->add_option("--complete", complete, "Complete graph on n nodes");
  premier_cmd->add_flag("--self-loops", self_loops, "Include self-loops in the complete graph")->needs(complete_opt);
  auto* graph_opt = premier_cmd->add_option("--graph", graph_path, "Support graph as a matrix document");
  complete_opt->excludes(graph_opt);

  auto* markov_cmd = app.add_subcommand("markov", "Integer IFN from a rational stochastic matrix");
  markov_cmd->add_option("--matrix", matrix_path, "Row-stochastic matrix document (JSON)")->required();

  auto* serve_cmd = app.add_subcommand("serve", "Run the JSON service");
  serve_cmd->add_option("--port", port, "Port")->required();
  serve_cmd->add_option("--host", host, "Bind address");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  }

  try {
    if (compose_cmd->parsed()) {
      const auto net = compose(parse_signature(sig_text), strict ? ComposeMode::Strict : ComposeMode::Lenient);
      const std::string text = doc::matrix_document(net).dump() + "\n";
      if (out_path.empty()) {
        out << text;
      } else {
        std::ofstream file(out_path);
        if (!file) throw Error(ErrorCode::InvalidArgument, "cannot write \"" + out_path + "\"");
        file << text;
      }
    } else if (decompose_cmd->parsed()) {
      const auto net = detail::read_flow_file(matrix_path);
      if (method == "greedy") {
        out << render_signature(greedy_decompose(net)) << "\n";
      } else {
        const auto result = linear_decompose(net);
        if (const auto* sig = std::get_if<Signature>(&result)) {
          out << render_signature(*sig) << "\n";
        } else {
          err << "non-integral cycle weights: "
              << doc::witness_document(std::get<NonIntegerWitness>(result), net.nodes()).dump() << "\n";
          return kDomain;
        }
      }
    } else if (analyze_cmd->parsed()) {
      out << doc::analysis_report(parse_signature(sig_text)).dump() << "\n";
    } else if (check_cmd->parsed()) {
      out << doc::check_report(detail::read_flow_file(matrix_path)).dump() << "\n";
    } else if (canon_cmd->parsed()) {
      out << render_signature(parse_signature(sig_text)) << "\n";
    } else if (relate_cmd->parsed()) {
      out << relation_name(classify_relation(parse_signature(sig1), parse_signature(sig2))) << "\n";
    } else if (random_cmd->parsed()) {
      out << render_signature(random_ifn(nodes, kappa, seed)) << "\n";
    } else if (premier_cmd->parsed()) {
      if (!*complete_opt && !*graph_opt) {
        err << "usage error: premier needs --complete <n> or --graph <file>\n";
        return kUsage;
      }
      if (*complete_opt && complete == 0) throw Error(ErrorCode::InvalidArgument, "--complete must be at least 1");
      const auto support = *complete_opt ? complete_support(complete, self_loops) : detail::read_flow_file(graph_path);
      const auto result = premier_network(support);
      out << render_signature(result.signature) << "\n" << doc::matrix_document(result.network).dump() << "\n";
    } else if (markov_cmd->parsed()) {
      const auto stoch = doc::read_rational_matrix(detail::read_json_file(matrix_path));
      out << doc::matrix_document(markov_to_integer_ifn(stoch)).dump() << "\n";
    } else if (serve_cmd->parsed()) {
      httplib::Server server;
      service::install(server);
      err << "listening on http://" << host << ":" << port << "\n";
      if (!server.listen(host, port)) {
        err << "error: cannot bind " << host << ":" << port << "\n";
        return kUsage;
      }
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return is_domain_error(e.code()) ? kDomain : kUsage;
  }
  return kOk;
}

}  // namespace ifn::cli

#endif  // IFN_CLI_HPP
