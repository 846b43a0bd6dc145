#include "railestate/service.hpp"

#include <charconv>
#include <sstream>

#include <httplib.h>
#include <json.hpp>

#include "railestate/errors.hpp"

namespace railestate {

namespace {

using nlohmann::ordered_json;

HttpResponse json_response(int status, const ordered_json& body) {
  return {status, body.dump(), "application/json"};
}

HttpResponse error_response(int status, std::string_view message) {
  return json_response(status, {{"error", message}});
}

std::vector<std::string> split_path(std::string_view path) {
  std::vector<std::string> out;
  std::string part;
  std::istringstream in{std::string(path)};
  while (std::getline(in, part, '/')) {
    if (!part.empty()) out.push_back(part);
  }
  return out;
}

ordered_json series_json(const Series& series) {
  ordered_json out = ordered_json::array();
  for (const auto& [m, v] : series) out.push_back({{"month", format_month(m)}, {"value", v}});
  return out;
}

ordered_json summary_json(const Series& series) {
  if (series.size() < 2) return nullptr;
  const TrendSummary t = trend_summary(series);
  return {{"first_month", format_month(t.first_month)},
          {"last_month", format_month(t.last_month)},
          {"first_value", t.first_value},
          {"last_value", t.last_value},
          {"total_change_pct", t.total_change_pct},
          {"mean_monthly_change_pct", t.mean_monthly_change_pct}};
}

ordered_json lines_json(const Store& store, const std::string& station_id) {
  ordered_json out = ordered_json::array();
  for (const auto& l : lines_for_station(store, station_id)) {
    out.push_back({{"line_id", l.line_id}, {"name", l.name}, {"color_tag", l.color_tag}});
  }
  return out;
}

ordered_json optional_string(const std::optional<std::string>& s) {
  if (!s) return nullptr;
  return *s;
}

}  // namespace

bool ApiConfig::valid() const { return thresholds.valid() && nearby_radius_m > 0.0; }

std::optional<BandThresholds> parse_thresholds(std::string_view text) {
  BandThresholds out;
  out.cuts.clear();
  std::string item;
  std::istringstream in{std::string(text)};
  while (std::getline(in, item, ',')) {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
    if (ec != std::errc{} || ptr != item.data() + item.size()) return std::nullopt;
    out.cuts.push_back(v);
  }
  if (!out.valid()) return std::nullopt;
  return out;
}

Api::Api(ApiConfig config) : config_(std::move(config)) {}

void Api::load(std::shared_ptr<const Dataset> dataset) {
  auto next = std::make_shared<Loaded>();
  next->dataset = std::move(dataset);
  next->assistant = std::make_unique<Assistant>(
      next->dataset->store, next->dataset->index,
      AssistantConfig{config_.nearby_radius_m, config_.coverage_years});
  std::lock_guard lock(mutex_);
  loaded_ = std::move(next);
}

std::shared_ptr<const Api::Loaded> Api::current() const {
  std::lock_guard lock(mutex_);
  return loaded_;
}

HttpResponse Api::handle(const HttpRequest& request) const {
  const auto parts = split_path(request.path);
  const auto loaded = current();
  if (!loaded) return error_response(503, "data not loaded");
  try {
    if (request.method == "GET") {
      if (parts.size() == 1 && parts[0] == "stations") return stations(*loaded);
      if (parts.size() == 1 && parts[0] == "zips") return zips(*loaded, request);
      if (parts.size() == 3 && parts[0] == "zips" && parts[2] == "series") {
        return zip_series(*loaded, parts[1], request);
      }
      if (parts.size() == 3 && parts[0] == "zips" && parts[2] == "forecast") {
        return zip_forecast(*loaded, parts[1]);
      }
      if (parts.size() == 3 && parts[0] == "stations" && parts[2] == "context") {
        return station_context(*loaded, parts[1]);
      }
      if (parts.size() == 1 && parts[0] == "health") return json_response(200, {{"status", "ok"}});
    } else if (request.method == "POST" && parts.size() == 1 && parts[0] == "ask") {
      return ask(*loaded, request);
    }
  } catch (const std::exception& e) {
    return error_response(500, e.what());
  }
  return error_response(404, "no such endpoint");
}

HttpResponse Api::stations(const Loaded& d) const {
  const auto& store = d.dataset->store;
  std::vector<const Station*> sorted;
  for (const auto& s : store.stations()) sorted.push_back(&s);
  std::sort(sorted.begin(), sorted.end(),
            [](const auto* a, const auto* b) { return a->station_id < b->station_id; });
  ordered_json out = ordered_json::array();
  for (const auto* s : sorted) {
    out.push_back({{"station_id", s->station_id},
                   {"name", s->name},
                   {"lat", s->location.lat},
                   {"lon", s->location.lon},
                   {"zip", optional_string(d.dataset->index.enclosing_zip(s->location))},
                   {"lines", lines_json(store, s->station_id)}});
  }
  return json_response(200, out);
}

HttpResponse Api::zips(const Loaded& d, const HttpRequest& r) const {
  std::optional<Month> month;
  if (auto it = r.query.find("month"); it != r.query.end()) {
    month = parse_month(it->second);
    if (!month || it->second.size() != 7) return error_response(400, "month must be YYYY-MM");
  }
  BandThresholds thresholds = config_.thresholds;
  if (auto it = r.query.find("thresholds"); it != r.query.end()) {
    auto parsed = parse_thresholds(it->second);
    if (!parsed) return error_response(400, "thresholds must be three ascending numbers");
    thresholds = *parsed;
  }
  const auto& store = d.dataset->store;
  std::vector<const Boundary*> sorted;
  for (const auto& b : store.boundaries()) sorted.push_back(&b);
  std::sort(sorted.begin(), sorted.end(), [](const auto* a, const auto* b) { return a->zip < b->zip; });

  ordered_json features = ordered_json::array();
  for (const auto* b : sorted) {
    const auto value = zip_average(store, b->zip, month);
    ordered_json props = {{"zip", b->zip},
                          {"value", value ? ordered_json(*value) : ordered_json(nullptr)},
                          {"band", value ? ordered_json(std::string(to_string(classify_band(*value, thresholds))))
                                         : ordered_json(nullptr)}};
    features.push_back({{"type", "Feature"},
                        {"properties", std::move(props)},
                        {"geometry", ordered_json(polygon_parts_to_geojson(*b))}});
  }
  return {200, ordered_json{{"type", "FeatureCollection"}, {"features", features}}.dump(),
          "application/geo+json"};
}

HttpResponse Api::zip_series(const Loaded& d, const std::string& zip, const HttpRequest& r) const {
  const auto& store = d.dataset->store;
  if (!store.find_boundary(zip) && store.price_rows_for_zip(zip).empty()) {
    return error_response(404, "unknown zip");
  }
  GrowthMode mode = GrowthMode::Absolute;
  if (auto it = r.query.find("mode"); it != r.query.end()) {
    if (it->second == "percent") {
      mode = GrowthMode::Percent;
    } else if (it->second != "absolute") {
      return error_response(400, "mode must be absolute or percent");
    }
  }
  const Series series = series_for_zip(store, zip);
  ordered_json points = series.empty() ? ordered_json::array() : series_json(growth_series(series, mode));
  return json_response(200, {{"zip", zip},
                             {"mode", mode == GrowthMode::Percent ? "percent" : "absolute"},
                             {"series", points},
                             {"summary", summary_json(series)}});
}

HttpResponse Api::zip_forecast(const Loaded& d, const std::string& zip) const {
  const auto& store = d.dataset->store;
  if (!store.find_boundary(zip) && store.price_rows_for_zip(zip).empty()) {
    return error_response(404, "unknown zip");
  }
  std::vector<const Prediction*> rows;
  for (std::size_t i : store.prediction_rows_for_zip(zip)) rows.push_back(&store.predictions()[i]);
  std::sort(rows.begin(), rows.end(), [](const auto* a, const auto* b) {
    return std::tie(a->base_month, a->horizon_months) < std::tie(b->base_month, b->horizon_months);
  });
  ordered_json preds = ordered_json::array();
  for (const auto* p : rows) {
    preds.push_back({{"horizon_months", p->horizon_months},
                     {"month", format_month(p->base_month + std::chrono::months{p->horizon_months})},
                     {"predicted_value", p->predicted_value}});
  }
  return json_response(200, {{"zip", zip},
                             {"base_month", rows.empty() ? ordered_json(nullptr)
                                                         : ordered_json(format_month(rows.front()->base_month))},
                             {"predictions", preds}});
}

HttpResponse Api::station_context(const Loaded& d, const std::string& id) const {
  const auto& store = d.dataset->store;
  const Station* s = store.find_station(id);
  if (!s) return error_response(404, "unknown station");
  const auto zip = d.dataset->index.enclosing_zip(s->location);
  ordered_json nearby = ordered_json::array();
  for (const auto& h : d.dataset->index.stations_within_radius(s->location, config_.nearby_radius_m)) {
    nearby.push_back({{"station_id", h.station.station_id},
                      {"name", h.station.name},
                      {"distance_m", h.distance_m}});
  }
  const Series series = zip ? series_for_zip(store, *zip) : Series{};
  return json_response(200, {{"station", {{"station_id", s->station_id},
                                          {"name", s->name},
                                          {"lat", s->location.lat},
                                          {"lon", s->location.lon}}},
                             {"zip", optional_string(zip)},
                             {"lines", lines_json(store, id)},
                             {"series", series_json(series)},
                             {"summary", summary_json(series)},
                             {"radius_m", config_.nearby_radius_m},
                             {"nearby", nearby}});
}

HttpResponse Api::ask(const Loaded& d, const HttpRequest& r) const {
  const auto body = nlohmann::json::parse(r.body, nullptr, false);
  if (body.is_discarded() || !body.is_object() || !body.contains("question") ||
      !body["question"].is_string()) {
    return error_response(400, "body must be a JSON object with a string field 'question'");
  }
  const Answer a = d.assistant->ask(body["question"].get<std::string>());
  return json_response(200, {{"text", a.text}, {"sql", a.sql}, {"status", to_string(a.status)}});
}

void run_server(const Api& api, const std::string& host, int port) {
  httplib::Server server;
  const std::string origin = api.config().cors_origin;
  auto dispatch = [&api, origin](const httplib::Request& req, httplib::Response& res) {
    HttpRequest r;
    r.method = req.method;
    r.path = req.path;
    for (const auto& [k, v] : req.params) r.query[k] = v;
    r.body = req.body;
    const HttpResponse out = api.handle(r);
    res.status = out.status;
    res.set_content(out.body, out.content_type);
    res.set_header("Access-Control-Allow-Origin", origin);
  };
  server.Get(R"(/.*)", dispatch);
  server.Post(R"(/.*)", dispatch);
  server.Options(R"(/.*)", [origin](const httplib::Request&, httplib::Response& res) {
    res.status = 204;
    res.set_header("Access-Control-Allow-Origin", origin);
    res.set_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS");
    res.set_header("Access-Control-Allow-Headers", "Content-Type");
  });
  if (!server.listen(host, port)) throw Error(Errc::Io, "cannot listen on " + host + ":" + std::to_string(port));
}

}  // namespace railestate
