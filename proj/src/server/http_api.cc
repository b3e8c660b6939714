// Copyright 2026 The vcbridge Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "vcbridge/server/http_api.h"

#include <cstdlib>

#include "vcbridge/common/crypto.h"
#include "vcbridge/common/encoding.h"

namespace vcbridge {
namespace {

using nlohmann::json;

void SendJson(httplib::Response& res, int status, const json& body) {
  res.status = status;
  res.set_header("Cache-Control", "no-store");
  res.set_content(body.dump(), "application/json");
}

void SendError(httplib::Response& res, const Error& error) {
  SendJson(res, HttpStatusFor(error.code),
           json{{"error", error.code}, {"error_description", error.description}});
}

void SendError(httplib::Response& res, std::string_view code,
               std::string description) {
  SendError(res, MakeError(code, std::move(description)));
}

std::optional<json> ParseBody(const httplib::Request& req,
                              httplib::Response& res) {
  json body = json::parse(req.body, nullptr, false);
  if (body.is_discarded() || !body.is_object()) {
    SendError(res, errc::kInvalidRequest, "body must be a JSON object");
    return std::nullopt;
  }
  return body;
}

std::string BearerToken(const httplib::Request& req) {
  std::string header = req.get_header_value("Authorization");
  constexpr std::string_view kPrefix = "Bearer ";
  if (header.size() <= kPrefix.size() ||
      header.compare(0, kPrefix.size(), kPrefix) != 0) {
    return {};
  }
  return header.substr(kPrefix.size());
}

// RFC 6749 client_secret_basic: base64(urlencode(id) ":" urlencode(secret)).
std::optional<BasicCredentials> BasicAuth(const httplib::Request& req,
                                          bool& malformed) {
  malformed = false;
  std::string header = req.get_header_value("Authorization");
  if (header.empty()) return std::nullopt;
  constexpr std::string_view kPrefix = "Basic ";
  if (header.compare(0, kPrefix.size(), kPrefix) != 0) {
    malformed = true;
    return std::nullopt;
  }
  auto decoded = Base64Decode(std::string_view(header).substr(kPrefix.size()));
  size_t colon = decoded ? decoded->find(':') : std::string::npos;
  if (colon == std::string::npos) {
    malformed = true;
    return std::nullopt;
  }
  auto id = UrlDecode(std::string_view(*decoded).substr(0, colon));
  auto secret = UrlDecode(std::string_view(*decoded).substr(colon + 1));
  if (!id || !secret) {
    malformed = true;
    return std::nullopt;
  }
  return BasicCredentials{*id, *secret};
}

// httplib has already split the query; rebuild the ordered list so that
// duplicates stay visible.
QueryParams QueryOf(const httplib::Request& req) {
  QueryParams out;
  for (const auto& [name, value] : req.params) out.emplace_back(name, value);
  return out;
}

std::optional<std::string> CookieValue(const httplib::Request& req,
                                       std::string_view name) {
  std::string header = req.get_header_value("Cookie");
  std::string_view rest = header;
  while (!rest.empty()) {
    size_t end = rest.find(';');
    std::string_view item = rest.substr(0, end);
    while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
    size_t eq = item.find('=');
    if (eq != std::string_view::npos && item.substr(0, eq) == name) {
      return std::string(item.substr(eq + 1));
    }
    if (end == std::string_view::npos) break;
    rest.remove_prefix(end + 1);
  }
  return std::nullopt;
}

json TenantJson(const Tenant& t) {
  return json{{"tenant_id", t.tenant_id},
              {"display_name", t.display_name},
              {"created_at", ToEpochSeconds(t.created_at)}};
}

void AdminRoutes(httplib::Server& server, System& sys) {
  server.Post("/admin/tenants", [&](const httplib::Request& req,
                                    httplib::Response& res) {
    auto body = ParseBody(req, res);
    if (!body) return;
    auto tenant = sys.iam.RegisterTenant(body->value("display_name", ""),
                                         body->value("admin_password", ""));
    if (!tenant.ok()) return SendError(res, tenant.error());
    SendJson(res, 201, TenantJson(*tenant));
  });

  server.Post("/admin/login", [&](const httplib::Request& req,
                                  httplib::Response& res) {
    auto body = ParseBody(req, res);
    if (!body) return;
    auto token = sys.iam.AdminLogin(body->value("display_name", ""),
                                    body->value("admin_password", ""));
    if (!token.ok()) return SendError(res, token.error());
    SendJson(res, 200,
             json{{"admin_token", token->token},
                  {"tenant_id", token->subject_tenant_id},
                  {"expires_at", ToEpochSeconds(token->expires_at)}});
  });

  server.Post("/admin/clients", [&](const httplib::Request& req,
                                    httplib::Response& res) {
    auto body = ParseBody(req, res);
    if (!body) return;
    ClientRegistration reg;
    auto kind = ParseClientKind(body->value("kind", "oidc"));
    auto type = ParseClientType(body->value("client_type", "confidential"));
    if (!kind || !type) {
      return SendError(res, errc::kValidationError, "unknown kind or type");
    }
    reg.kind = *kind;
    reg.client_type = *type;
    try {
      reg.redirect_uris =
          body->value("redirect_uris", std::vector<std::string>{});
      reg.allowed_scopes =
          body->value("allowed_scopes", std::vector<std::string>{});
    } catch (const json::exception&) {
      return SendError(res, errc::kValidationError, "expected string arrays");
    }
    auto client = sys.iam.RegisterClient(BearerToken(req), reg);
    if (!client.ok()) return SendError(res, client.error());
    json out = ToJson(client->record);
    if (client->client_secret) out["client_secret"] = *client->client_secret;
    SendJson(res, 201, out);
  });

  server.Get("/admin/clients", [&](const httplib::Request& req,
                                   httplib::Response& res) {
    auto clients = sys.iam.ListClients(BearerToken(req));
    if (!clients.ok()) return SendError(res, clients.error());
    json items = json::array();
    for (const auto& c : *clients) items.push_back(ToJson(c));
    SendJson(res, 200, json{{"clients", items}});
  });

  server.Post("/admin/templates", [&](const httplib::Request& req,
                                      httplib::Response& res) {
    auto body = ParseBody(req, res);
    if (!body) return;
    TemplateSpec spec;
    try {
      spec = body->get<TemplateSpec>();
    } catch (const json::exception& e) {
      return SendError(res, errc::kValidationError, e.what());
    }
    auto created = sys.templates.CreateTemplate(BearerToken(req), spec);
    if (!created.ok()) return SendError(res, created.error());
    SendJson(res, 201, json(*created));
  });

  server.Get("/admin/templates", [&](const httplib::Request& req,
                                     httplib::Response& res) {
    PageRequest page;
    if (req.has_param("sortBy")) page.sort_by = req.get_param_value("sortBy");
    if (req.has_param("order")) {
      std::string order = req.get_param_value("order");
      if (order != "asc" && order != "desc") {
        return SendError(res, errc::kValidationError, "order is asc or desc");
      }
      page.order = order == "asc" ? SortOrder::kAsc : SortOrder::kDesc;
    }
    for (auto [name, field] : {std::pair{"limit", &page.limit},
                               std::pair{"page", &page.page}}) {
      if (!req.has_param(name)) continue;
      std::string text = req.get_param_value(name);
      char* end = nullptr;
      unsigned long long v = std::strtoull(text.c_str(), &end, 10);
      if (text.empty() || *end != '\0' || text.front() == '-') {
        return SendError(res, errc::kValidationError,
                         std::string(name) + " must be a positive integer");
      }
      *field = static_cast<size_t>(v);
    }
    auto listed = sys.templates.ListTemplates(BearerToken(req), page);
    if (!listed.ok()) return SendError(res, listed.error());
    SendJson(res, 200,
             json{{"items", listed->items},
                  {"total", listed->total},
                  {"page", listed->page},
                  {"limit", listed->limit}});
  });

  server.Get("/admin/templates/:id", [&](const httplib::Request& req,
                                         httplib::Response& res) {
    auto found = sys.templates.GetTemplate(
        BearerToken(req), TemplateId(req.path_params.at("id")));
    if (!found.ok()) return SendError(res, found.error());
    SendJson(res, 200, json(*found));
  });
}

void OidcRoutes(httplib::Server& server, System& sys) {
  server.Get("/authorize", [&](const httplib::Request& req,
                               httplib::Response& res) {
    AuthorizeResponse out = sys.bridge.HandleAuthorize(QueryOf(req));
    res.set_header("Cache-Control", "no-store");
    if (out.kind == AuthorizeResponse::Kind::kErrorPage) {
      return SendError(res, *out.error);
    }
    if (out.set_cookie) res.set_header("Set-Cookie", *out.set_cookie);
    res.status = 302;
    res.set_header("Location", out.location);
  });

  server.Post("/token", [&](const httplib::Request& req,
                            httplib::Response& res) {
    res.set_header("Pragma", "no-cache");
    std::string type = req.get_header_value("Content-Type");
    if (type.rfind("application/x-www-form-urlencoded", 0) != 0) {
      return SendError(res, errc::kInvalidRequest,
                       "body must be application/x-www-form-urlencoded");
    }
    auto form = ParseQuery(req.body);
    if (!form) return SendError(res, errc::kInvalidRequest, "malformed form");
    bool malformed = false;
    auto basic = BasicAuth(req, malformed);
    if (malformed) {
      res.set_header("WWW-Authenticate", "Basic realm=\"token\"");
      return SendError(res, errc::kInvalidClient, "malformed Authorization");
    }
    auto token = sys.bridge.HandleToken(*form, basic);
    if (!token.ok()) {
      if (token.error().code == errc::kInvalidClient && basic) {
        res.set_header("WWW-Authenticate", "Basic realm=\"token\"");
      }
      return SendError(res, token.error());
    }
    SendJson(res, 200, json(*token));
  });

  server.Get("/.well-known/openid-configuration",
             [&](const httplib::Request&, httplib::Response& res) {
               SendJson(res, 200, sys.bridge.DiscoveryDocument());
               res.set_header("Cache-Control", "public, max-age=300");
             });

  server.Get("/.well-known/jwks.json",
             [&](const httplib::Request&, httplib::Response& res) {
               SendJson(res, 200, sys.bridge.Jwks());
               res.set_header("Cache-Control", "public, max-age=300");
             });
}

void FrontendRoutes(httplib::Server& server, System& sys) {
  server.Get("/auth/context", [&](const httplib::Request& req,
                                  httplib::Response& res) {
    auto ctx = sys.bridge.GetAuthContext(req.get_param_value("auth_token"));
    if (!ctx.ok()) return SendError(res, ctx.error());
    SendJson(res, 200,
             json{{"session_id", ctx->claims.session_id},
                  {"client_id", ctx->claims.client_id},
                  {"correlation_id", ctx->claims.correlation_id},
                  {"template_name", ctx->template_name},
                  {"ecosystems", ctx->ecosystems},
                  {"expires_at", ToEpochSeconds(ctx->claims.expires_at)}});
  });

  server.Post("/auth/start", [&](const httplib::Request& req,
                                 httplib::Response& res) {
    auto body = ParseBody(req, res);
    if (!body) return;
    auto ecosystem = ParseEcosystem(body->value("ecosystem", ""));
    if (!ecosystem) {
      return SendError(res, errc::kEcosystemUnsupported, "unknown ecosystem");
    }
    auto started = sys.bridge.StartVerification(
        body->value("auth_token", ""), *ecosystem);
    if (!started.ok()) return SendError(res, started.error());
    SendJson(res, 200,
             json{{"request", started->request},
                  {"request_uri", started->request_uri},
                  {"deep_link", started->deep_link}});
  });

  server.Get("/auth/status/:sid", [&](const httplib::Request& req,
                                      httplib::Response& res) {
    const std::string& sid = req.path_params.at("sid");
    // Only the browser that started the session may poll it; the session id
    // alone (readable inside the auth token) is not enough.
    auto cookie = CookieValue(req, kSessionCookieName);
    if (!cookie || !ConstantTimeEquals(*cookie, sid)) {
      return SendError(res, errc::kSessionNotFound,
                       "session cookie does not match");
    }
    auto status = sys.bridge.VerificationStatus(
        ClientId(req.get_param_value("client_id")), sid);
    if (!status.ok()) return SendError(res, status.error());
    SendJson(res, 200, json(*status));
  });
}

void VerifierRoutes(httplib::Server& server, System& sys) {
  server.Get("/verify/request/:cid", [&](const httplib::Request& req,
                                         httplib::Response& res) {
    const std::string& cid = req.path_params.at("cid");
    auto request = sys.verifier.GetRequest(cid);
    if (!request.ok()) return SendError(res, request.error());
    SendJson(res, 200,
             json{{"request", *request},
                  {"request_uri", sys.verifier.RequestUri(cid)}});
  });

  server.Post("/verify/present/:cid", [&](const httplib::Request& req,
                                          httplib::Response& res) {
    auto body = ParseBody(req, res);
    if (!body) return;
    Presentation presentation;
    try {
      presentation = body->get<Presentation>();
    } catch (const json::exception& e) {
      return SendError(res, errc::kInvalidRequest, e.what());
    }
    auto outcome = sys.verifier.SubmitPresentation(
        req.path_params.at("cid"), presentation);
    if (!outcome.ok()) return SendError(res, outcome.error());
    json out = {{"result", outcome->result}, {"accepted", outcome->accepted}};
    if (!outcome->accepted) out["rejection"] = outcome->rejection;
    SendJson(res, 200, out);
  });

  server.Post("/internal/verification-result",
              [&](const httplib::Request& req, httplib::Response& res) {
                auto body = ParseBody(req, res);
                if (!body) return;
                VerificationResult result;
                try {
                  result = body->get<VerificationResult>();
                } catch (const json::exception& e) {
                  return SendError(res, errc::kInvalidRequest, e.what());
                }
                Status done = sys.bridge.CompleteVerification(
                    BearerToken(req), result.correlation_id, result);
                if (!done.ok()) return SendError(res, done.error());
                res.status = 204;
              });
}

}  // namespace

int HttpStatusFor(std::string_view code) {
  if (code == errc::kUnauthorized || code == errc::kInvalidClient ||
      code == errc::kInvalidAuthToken) {
    return 401;
  }
  if (code == errc::kNotFound || code == errc::kSessionNotFound ||
      code == errc::kCorrelationNotFound) {
    return 404;
  }
  if (code == errc::kRegistrationConflict || code == errc::kScopeConflict ||
      code == errc::kInvalidState) {
    return 409;
  }
  if (code == errc::kInternalError) return 500;
  return 400;
}

void RegisterRoutes(httplib::Server& server, System& system,
                    const HttpOptions& options) {
  AdminRoutes(server, system);
  OidcRoutes(server, system);
  FrontendRoutes(server, system);
  VerifierRoutes(server, system);
  if (!options.static_dir.empty()) {
    server.set_mount_point("/ui", options.static_dir);
  }
  server.set_exception_handler([](const httplib::Request&,
                                  httplib::Response& res, std::exception_ptr) {
    SendError(res, errc::kInternalError, "unexpected server error");
  });
}

HttpServer::HttpServer(System& system, HttpOptions options) {
  RegisterRoutes(server_, system, options);
}

HttpServer::~HttpServer() { Stop(); }

int HttpServer::Start(const std::string& host, int port) {
  int bound = port == 0 ? server_.bind_to_any_port(host)
                        : (server_.bind_to_port(host, port) ? port : -1);
  if (bound < 0) return -1;
  thread_ = std::thread([this] { server_.listen_after_bind(); });
  server_.wait_until_ready();
  return bound;
}

bool HttpServer::Listen(const std::string& host, int port) {
  return server_.listen(host, port);
}

void HttpServer::Stop() {
  server_.stop();
  if (thread_.joinable()) thread_.join();
}

}  // namespace vcbridge
