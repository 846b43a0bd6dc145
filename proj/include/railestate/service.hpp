#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>

#include "railestate/analytics.hpp"
#include "railestate/nl2sql.hpp"
#include "railestate/snapshot.hpp"

namespace railestate {

struct ApiConfig {
  std::string host = "127.0.0.1";
  int port = 8080;
  std::filesystem::path data_dir;
  BandThresholds thresholds;
  double nearby_radius_m = kDefaultNearbyRadiusM;
  std::optional<std::pair<int, int>> coverage_years;
  std::string cors_origin = "*";

  /// Thresholds ascending and radius positive.
  bool valid() const;
};

struct HttpRequest {
  std::string method = "GET";
  std::string path;
  std::map<std::string, std::string> query;
  std::string body;
};

struct HttpResponse {
  int status = 200;
  std::string body;
  std::string content_type = "application/json";
};

/// Parses "a,b,c" into ascending thresholds.
std::optional<BandThresholds> parse_thresholds(std::string_view text);

/// Transport-independent request router. Holds the dataset behind a
/// shared_ptr so requests in flight keep it alive; answers 503 until load().
class Api {
 public:
  explicit Api(ApiConfig config);

  void load(std::shared_ptr<const Dataset> dataset);
  HttpResponse handle(const HttpRequest& request) const;

  const ApiConfig& config() const { return config_; }

 private:
  struct Loaded {
    std::shared_ptr<const Dataset> dataset;
    std::unique_ptr<Assistant> assistant;
  };

  std::shared_ptr<const Loaded> current() const;

  HttpResponse stations(const Loaded& d) const;
  HttpResponse zips(const Loaded& d, const HttpRequest& r) const;
  HttpResponse zip_series(const Loaded& d, const std::string& zip, const HttpRequest& r) const;
  HttpResponse zip_forecast(const Loaded& d, const std::string& zip) const;
  HttpResponse station_context(const Loaded& d, const std::string& id) const;
  HttpResponse ask(const Loaded& d, const HttpRequest& r) const;

  ApiConfig config_;
  mutable std::mutex mutex_;
  std::shared_ptr<const Loaded> loaded_;
};

/// Serves the Api over HTTP/1.1 until the process is stopped.
void run_server(const Api& api, const std::string& host, int port);

}  // namespace railestate
