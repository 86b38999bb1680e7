#pragma once

#include <string>
#include <vector>

#include <httplib.h>
#include <json.hpp>

#include "pcm/core.hpp"
#include "pcm/session.hpp"

namespace pcm {

inline int http_status(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotFound: return 404;
    case ErrorCode::NoConvergence:
    case ErrorCode::DegenerateInterval: return 422;
    default: return 400;
  }
}

/// HTTP+JSON front end over a SessionStore.
///
///   POST   /sessions                     {labels}          -> {id}
///   GET    /sessions/{id}                                  -> {id, labels, matrix, revision}
///   PUT    /sessions/{id}/comparisons    {i, k, value}     -> results
///   POST   /sessions/{id}/what-if        {overrides: [...]} -> results
///   GET    /sessions/{id}/results?method=gmm|em|both       -> results
///   DELETE /sessions/{id}
///
/// Errors are {code, message} with a 4xx status.
class HttpService {
 public:
  explicit HttpService(SessionStore& store) : store_(store) { routes(); }

  HttpService(const HttpService&) = delete;
  HttpService& operator=(const HttpService&) = delete;

  bool listen(const std::string& host, int port) { return server_.listen(host, port); }

  /// Binds an ephemeral port and returns it; call listen_after_bind() next.
  int bind_any_port(const std::string& host) { return server_.bind_to_any_port(host); }
  bool listen_after_bind() { return server_.listen_after_bind(); }

  void stop() { server_.stop(); }
  bool running() const { return server_.is_running(); }
  void wait_until_ready() const { server_.wait_until_ready(); }

 private:
  using Request = httplib::Request;
  using Response = httplib::Response;

  static void reply(Response& res, const json& body, int status = 200) {
    res.status = status;
    res.set_content(body.dump(), "application/json");
  }

  static void reply_error(Response& res, ErrorCode code, const std::string& message) {
    reply(res, {{"code", to_string(code)}, {"message", message}}, http_status(code));
  }

  template <typename Handler>
  static auto guarded(Handler handler) {
    return [handler](const Request& req, Response& res) {
      try {
        handler(req, res);
      } catch (const Error& e) {
        reply_error(res, e.code(), e.what());
      } catch (const json::exception& e) {
        reply_error(res, ErrorCode::ParseError, e.what());
      }
    };
  }

  static json body_of(const Request& req) {
    try {
      return json::parse(req.body);
    } catch (const json::parse_error& e) {
      throw Error(ErrorCode::ParseError, std::string("request body is not valid JSON: ") + e.what());
    }
  }

  static Override override_of(const json& j) {
    return {j.at("i").get<std::size_t>(), j.at("k").get<std::size_t>(), j.at("value").get<double>()};
  }

  void routes() {
    server_.Post("/sessions", guarded([this](const Request& req, Response& res) {
      const auto body = body_of(req);
      const auto id = store_.create(body.at("labels").get<std::vector<std::string>>());
      reply(res, {{"id", id}}, 201);
    }));

    server_.Get(R"(/sessions/([0-9a-f]+))", guarded([this](const Request& req, Response& res) {
      const auto s = store_.get(req.matches[1]);
      reply(res, {{"id", s.id}, {"labels", s.labels.names()}, {"matrix", s.matrix}, {"revision", s.revision}});
    }));

    server_.Delete(R"(/sessions/([0-9a-f]+))", guarded([this](const Request& req, Response& res) {
      if (!store_.remove(req.matches[1])) throw Error(ErrorCode::NotFound, "no session " + std::string(req.matches[1]));
      res.status = 204;
    }));

    server_.Put(R"(/sessions/([0-9a-f]+)/comparisons)", guarded([this](const Request& req, Response& res) {
      const auto o = override_of(body_of(req));
      reply(res, store_.set_comparison(req.matches[1], o.i, o.k, o.value));
    }));

    server_.Post(R"(/sessions/([0-9a-f]+)/what-if)", guarded([this](const Request& req, Response& res) {
      const auto body = body_of(req);
      std::vector<Override> overrides;
      if (body.contains("overrides"))
        for (const auto& o : body.at("overrides")) overrides.push_back(override_of(o));
      reply(res, store_.what_if(req.matches[1], overrides));
    }));

    server_.Get(R"(/sessions/([0-9a-f]+)/results)", guarded([this](const Request& req, Response& res) {
      const auto method = results_method_from_string(req.get_param_value("method"));
      reply(res, store_.results(req.matches[1], method));
    }));

    server_.set_error_handler([](const Request&, Response& res) {
      if (res.body.empty()) {
        res.set_content(json{{"code", res.status == 404 ? "NotFound" : "HttpError"},
                             {"message", httplib::status_message(res.status)}}
                            .dump(),
                        "application/json");
      }
    });
  }

  SessionStore& store_;
  httplib::Server server_;
};

}  // namespace pcm
