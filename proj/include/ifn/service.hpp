#ifndef IFN_SERVICE_HPP
#define IFN_SERVICE_HPP

#include <cstdint>
#include <map>
#include <string>
#include <variant>

#include "httplib.h"

#include "ifn/algebra.hpp"
#include "ifn/analysis.hpp"
#include "ifn/decompose.hpp"
#include "ifn/document.hpp"
#include "ifn/generators.hpp"
#include "ifn/sigtext.hpp"

// Stateless JSON endpoints. Every handler is a pure function of the request;
// the HTTP layer only adapts httplib types to ApiRequest/ApiResponse.

namespace ifn::service {

using doc::Json;

struct ApiRequest {
  std::string method;  // "GET" or "POST"
  std::string path;
  std::map<std::string, std::string> query;
  std::string body;
};

struct ApiResponse {
  int status = 200;
  Json body;
};

namespace detail {

inline ApiResponse error_response(int status, const std::string& error, const std::string& detail) {
  return ApiResponse{status, Json{{"error", error}, {"detail", detail}}};
}

inline Json parse_body(const ApiRequest& req) {
  Json body = Json::parse(req.body, nullptr, /*allow_exceptions=*/false);
  if (body.is_discarded() || !body.is_object()) {
    throw Error(ErrorCode::InvalidDocument, "request body must be a JSON object");
  }
  return body;
}

inline const std::string& query(const ApiRequest& req, const char* name) {
  const auto it = req.query.find(name);
  if (it == req.query.end()) throw Error(ErrorCode::InvalidArgument, std::string("missing query parameter \"") + name + "\"");
  return it->second;
}

inline std::uint64_t query_unsigned(const ApiRequest& req, const char* name) {
  const std::string& text = query(req, name);
  std::size_t used = 0;
  std::uint64_t v = 0;
  try {
    if (text.empty() || text[0] == '-') throw std::invalid_argument("negative");
    v = std::stoull(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size()) {
    throw Error(ErrorCode::InvalidArgument, std::string("query parameter \"") + name + "\" must be a nonnegative integer");
  }
  return v;
}

inline bool query_flag(const ApiRequest& req, const char* name) {
  const auto it = req.query.find(name);
  if (it == req.query.end()) return false;
  if (it->second == "true" || it->second == "1" || it->second.empty()) return true;
  if (it->second == "false" || it->second == "0") return false;
  throw Error(ErrorCode::InvalidArgument, std::string("query parameter \"") + name + "\" must be true or false");
}

inline ApiResponse compose(const ApiRequest& req) {
  const auto sig = parse_signature(doc::read_signature_field(parse_body(req), "signature"));
  const auto net = ifn::compose(sig);
  Json out = doc::matrix_document(net);
  out["kappa"] = net.total_flow();
  out["premagic"] = is_premagic(net);
  out["irreducible"] = is_irreducible_matrix(net);
  return {200, std::move(out)};
}

inline ApiResponse decompose(const ApiRequest& req) {
  const Json body = parse_body(req);
  const auto net = doc::read_flow_network(body);
  std::string method = "greedy";
  if (const auto it = body.find("method"); it != body.end()) {
    if (!it->is_string()) throw Error(ErrorCode::InvalidDocument, "\"method\" must be a string");
    method = it->get<std::string>();
  }
  if (method == "greedy") return {200, Json{{"signature", render_signature(greedy_decompose(net))}}};
  if (method != "linear") throw Error(ErrorCode::InvalidArgument, "method must be \"greedy\" or \"linear\"");
  const auto result = linear_decompose(net);
  if (const auto* sig = std::get_if<Signature>(&result)) return {200, Json{{"signature", render_signature(*sig)}}};
  return {200, doc::witness_document(std::get<NonIntegerWitness>(result), net.nodes())};
}

inline ApiResponse analyze(const ApiRequest& req) {
  return {200, doc::analysis_report(parse_signature(doc::read_signature_field(parse_body(req), "signature")))};
}

inline ApiResponse check(const ApiRequest& req) {
  return {200, doc::check_report(doc::read_flow_network(parse_body(req)))};
}

inline ApiResponse random(const ApiRequest& req) {
  const auto nodes = query_unsigned(req, "nodes");
  const auto kappa = query_unsigned(req, "kappa");
  const auto seed = query_unsigned(req, "seed");
  if (kappa > static_cast<std::uint64_t>(INT64_MAX)) throw Error(ErrorCode::Overflow, "kappa too large");
  return {200, Json{{"signature", render_signature(random_ifn(nodes, static_cast<Flow>(kappa), seed))}}};
}

inline ApiResponse relate(const ApiRequest& req) {
  const Json body = parse_body(req);
  const auto s1 = parse_signature(doc::read_signature_field(body, "sig1"));
  const auto s2 = parse_signature(doc::read_signature_field(body, "sig2"));
  return {200, Json{{"relation", relation_name(classify_relation(s1, s2))}}};
}

inline ApiResponse markov(const ApiRequest& req) {
  return {200, doc::matrix_document(markov_to_integer_ifn(doc::read_rational_matrix(parse_body(req))))};
}

inline ApiResponse premier(const ApiRequest& req) {
  const auto n = query_unsigned(req, "complete");
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "complete must be at least 1");
  const auto result = premier_network(complete_support(n, query_flag(req, "selfLoops")));
  Json out = doc::matrix_document(result.network);
  out["signature"] = render_signature(result.signature);
  return {200, std::move(out)};
}

}  // namespace detail

/// Routes one request. Never throws: malformed input maps to 400, violated
/// mathematical preconditions to 422.
inline ApiResponse handle(const ApiRequest& req) {
  using Handler = ApiResponse (*)(const ApiRequest&);
  static const std::map<std::pair<std::string, std::string>, Handler> routes = {
      {{"POST", "/api/compose"}, detail::compose},  {{"POST", "/api/decompose"}, detail::decompose},
      {{"POST", "/api/analyze"}, detail::analyze},  {{"POST", "/api/check"}, detail::check},
      {{"GET", "/api/random"}, detail::random},     {{"POST", "/api/relate"}, detail::relate},
      {{"POST", "/api/markov"}, detail::markov},    {{"GET", "/api/premier"}, detail::premier},
  };
  const auto it = routes.find({req.method, req.path});
  if (it == routes.end()) return detail::error_response(404, "NotFound", req.method + " " + req.path);
  try {
    return it->second(req);
  } catch (const Error& e) {
    return detail::error_response(is_domain_error(e.code()) ? 422 : 400, std::string(error_name(e.code())), e.detail());
  } catch (const Json::exception& e) {
    return detail::error_response(400, "InvalidDocument", e.what());
  } catch (const std::exception& e) {
    return detail::error_response(400, "BadRequest", e.what());
  }
}

/// Registers every endpoint on an httplib server.
inline void install(httplib::Server& server) {
  auto adapt = [](const std::string& method) {
    return [method](const httplib::Request& in, httplib::Response& out) {
      ApiRequest req{method, in.path, {}, in.body};
      for (const auto& [k, v] : in.params) req.query.emplace(k, v);
      const auto resp = handle(req);
      out.status = resp.status;
      out.set_header("Access-Control-Allow-Origin", "*");
      out.set_content(resp.body.dump(), "application/json");
    };
  };
  server.Get(R"(/api/.*)", adapt("GET"));
  server.Post(R"(/api/.*)", adapt("POST"));
  server.Options(R"(/api/.*)", [](const httplib::Request&, httplib::Response& out) {
    out.set_header("Access-Control-Allow-Origin", "*");
    out.set_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS");
    out.set_header("Access-Control-Allow-Headers", "Content-Type");
    out.status = 204;
  });
}

}  // namespace ifn::service

#endif  // IFN_SERVICE_HPP
