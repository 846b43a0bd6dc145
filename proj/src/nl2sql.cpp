#include "railestate/nl2sql.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>

#include <fmt/format.h>

#include "railestate/errors.hpp"

namespace railestate {

namespace {

using Words = std::vector<std::string>;

constexpr std::string_view kSeparator = "|";

Words split_words(std::string_view norm) {
  Words out;
  std::istringstream in{std::string(norm)};
  for (std::string w; in >> w;) out.push_back(std::move(w));
  return out;
}

std::string join_words(const Words& words, std::size_t first, std::size_t count) {
  std::string out;
  for (std::size_t i = first; i < first + count; ++i) {
    if (i > first) out.push_back(' ');
    out += words[i];
  }
  return out;
}

bool has_word(const Words& words, std::initializer_list<std::string_view> options) {
  for (const auto& w : words) {
    for (auto o : options) {
      if (w == o) return true;
    }
  }
  return false;
}

bool has_phrase(const Words& words, std::string_view a, std::string_view b) {
  for (std::size_t i = 0; i + 1 < words.size(); ++i) {
    if (words[i] == a && words[i + 1] == b) return true;
  }
  return false;
}

std::optional<int> as_year(const std::string& w) {
  if (w.size() != 4 || !std::all_of(w.begin(), w.end(), [](char c) { return c >= '0' && c <= '9'; })) {
    return std::nullopt;
  }
  return std::stoi(w);
}

bool is_time_lead(const std::string& w) {
  return w == "in" || w == "during" || w == "for" || w == "of" || w == "the" || w == "year" ||
         w == "since" || w == "on";
}

/// Finds one time expression, blanks its words (and leading prepositions) with
/// the separator, and returns it. Years are returned unvalidated.
TimeSlot extract_time(Words& words) {
  auto blank = [&](std::size_t first, std::size_t last) {
    while (first > 0 && is_time_lead(words[first - 1])) --first;
    for (std::size_t i = first; i <= last; ++i) words[i] = kSeparator;
  };
  for (std::size_t i = 0; i + 1 < words.size(); ++i) {
    auto m = month_from_name(words[i]);
    auto y = as_year(words[i + 1]);
    if (m && y) {
      blank(i, i + 1);
      return make_month(*y, *m);
    }
  }
  for (std::size_t i = 0; i + 3 < words.size(); ++i) {
    const bool between = words[i] == "between" && words[i + 2] == "and";
    const bool from = words[i] == "from" &&
                      (words[i + 2] == "to" || words[i + 2] == "through" || words[i + 2] == "until");
    auto y1 = as_year(words[i + 1]);
    auto y2 = as_year(words[i + 3]);
    if ((between || from) && y1 && y2) {
      blank(i, i + 3);
      return YearRange{std::min(*y1, *y2), std::max(*y1, *y2)};
    }
  }
  for (std::size_t i = 0; i < words.size(); ++i) {
    if (auto y = as_year(words[i])) {
      blank(i, i);
      return *y;
    }
  }
  return std::monostate{};
}

bool years_supported(const TimeSlot& t, const Vocabulary& v) {
  auto ok = [&](int y) { return y >= v.first_year && y <= v.last_year; };
  if (const auto* y = std::get_if<int>(&t)) return ok(*y);
  if (const auto* r = std::get_if<YearRange>(&t)) return ok(r->first) && ok(r->last);
  if (const auto* m = std::get_if<Month>(&t)) return ok(year_of(*m));
  return true;
}

std::string time_text(const TimeSlot& t) {
  if (const auto* y = std::get_if<int>(&t)) return std::to_string(*y);
  if (const auto* r = std::get_if<YearRange>(&t)) return fmt::format("{}-{}", r->first, r->last);
  if (const auto* m = std::get_if<Month>(&t)) return month_display_name(*m);
  return "";
}

struct PlaceMatch {
  std::string phrase;
  const Vocabulary::Entry* entry = nullptr;
};

std::optional<PlaceMatch> longest_place(const Words& words, const Vocabulary& v) {
  std::optional<PlaceMatch> best;
  std::size_t best_words = 0;
  for (std::size_t i = 0; i < words.size(); ++i) {
    for (std::size_t n = std::min(v.longest_phrase_words, words.size() - i); n > best_words; --n) {
      const std::string phrase = join_words(words, i, n);
      if (auto it = v.phrases.find(phrase); it != v.phrases.end()) {
        best = PlaceMatch{phrase, &it->second};
        best_words = n;
        break;
      }
    }
  }
  return best;
}

/// Words following the last place preposition, for naming an unknown place.
std::string unknown_place_phrase(const Words& words) {
  static const std::set<std::string> kStop = {"the",   "is",  "was",    "a",     "an",  "are",
                                              "price", "prices", "value", "station", "stations",
                                              "zip",   "code", "area",  "metro"};
  for (std::size_t i = 0; i < words.size(); ++i) {
    if (words[i].size() == 5 && std::all_of(words[i].begin(), words[i].end(), [](char c) { return c >= '0' && c <= '9'; })) {
      return words[i];
    }
  }
  for (std::size_t i = words.size(); i-- > 0;) {
    const auto& w = words[i];
    if (w == "in" || w == "for" || w == "near" || w == "around" || w == "of" || w == "at") {
      Words tail;
      for (std::size_t j = i + 1; j < words.size() && words[j] != kSeparator; ++j) {
        if (!kStop.contains(words[j])) tail.push_back(words[j]);
      }
      if (!tail.empty()) return join_words(tail, 0, tail.size());
    }
  }
  return "";
}

std::vector<PlaceKind> supported_kinds(const Intent& intent) {
  switch (intent.kind) {
    case IntentKind::NearbyStations:
    case IntentKind::ForecastLookup:
      return {PlaceKind::Zip, PlaceKind::Station};
    case IntentKind::CountRecords:
      if (intent.subject == CountSubject::Stations) return {PlaceKind::Zip, PlaceKind::Station};
      [[fallthrough]];
    default:
      return {PlaceKind::City, PlaceKind::Zip, PlaceKind::Station};
  }
}

bool place_required(IntentKind kind) { return kind != IntentKind::CountRecords; }

std::string_view kind_name(PlaceKind k) {
  switch (k) {
    case PlaceKind::City: return "city";
    case PlaceKind::Zip: return "ZIP code";
    case PlaceKind::Station: return "station";
  }
  return "";
}

std::string time_phrase(const TimeSlot& t) {
  if (const auto* y = std::get_if<int>(&t)) return fmt::format(" in the year {}", *y);
  if (const auto* r = std::get_if<YearRange>(&t)) {
    if (r->first == r->last) return fmt::format(" in the year {}", r->first);
    return fmt::format(" between {} and {}", r->first, r->last);
  }
  if (const auto* m = std::get_if<Month>(&t)) return " in " + month_display_name(*m);
  return "";
}

std::optional<std::pair<Date, Date>> date_span(const TimeSlot& t) {
  if (const auto* y = std::get_if<int>(&t)) {
    return std::make_pair(first_day(make_month(*y, 1)), last_day(make_month(*y, 12)));
  }
  if (const auto* r = std::get_if<YearRange>(&t)) {
    return std::make_pair(first_day(make_month(r->first, 1)), last_day(make_month(r->last, 12)));
  }
  if (const auto* m = std::get_if<Month>(&t)) return std::make_pair(first_day(*m), last_day(*m));
  return std::nullopt;
}

}  // namespace

std::string_view to_string(OutOfScopeReason reason) {
  switch (reason) {
    case OutOfScopeReason::UnknownPlace: return "UnknownPlace";
    case OutOfScopeReason::UnsupportedYear: return "UnsupportedYear";
    case OutOfScopeReason::UnsupportedIntent: return "UnsupportedIntent";
  }
  return "";
}

std::string_view to_string(AnswerStatus status) {
  switch (status) {
    case AnswerStatus::Ok: return "Ok";
    case AnswerStatus::OutOfScope: return "OutOfScope";
    case AnswerStatus::NoData: return "NoData";
    case AnswerStatus::Error: return "Error";
  }
  return "";
}

std::string normalize_text(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  bool space = true;
  for (char c : text) {
    const auto u = static_cast<unsigned char>(c);
    if (std::isalnum(u)) {
      out.push_back(static_cast<char>(std::tolower(u)));
      space = false;
    } else if (!space) {
      out.push_back(' ');
      space = true;
    }
  }
  if (!out.empty() && out.back() == ' ') out.pop_back();
  return out;
}

std::string format_usd(double value) {
  std::string digits = fmt::format("{:.2f}", std::abs(value));
  const auto dot = digits.find('.');
  std::string whole = digits.substr(0, dot);
  for (auto i = static_cast<std::ptrdiff_t>(whole.size()) - 3; i > 0; i -= 3) {
    whole.insert(static_cast<std::size_t>(i), ",");
  }
  return (value < 0 ? "-$" : "$") + whole + digits.substr(dot);
}

std::string format_count(double value) {
  std::string whole = fmt::format("{:.0f}", std::abs(value));
  for (auto i = static_cast<std::ptrdiff_t>(whole.size()) - 3; i > 0; i -= 3) {
    whole.insert(static_cast<std::size_t>(i), ",");
  }
  return value < 0 ? "-" + whole : whole;
}

Vocabulary make_vocabulary(const Store& store, std::optional<std::pair<int, int>> coverage_years) {
  Vocabulary v;
  auto add = [&](const std::string& name, auto setter) {
    const std::string key = normalize_text(name);
    if (key.empty()) return;
    setter(v.phrases[key]);
    v.longest_phrase_words = std::max(v.longest_phrase_words, split_words(key).size());
  };
  for (const auto& city : store.cities()) {
    add(city, [&](Vocabulary::Entry& e) { e.city = city; });
  }
  for (const auto& zip : store.zips()) {
    add(zip, [&](Vocabulary::Entry& e) { e.zip = zip; });
  }
  for (const auto& s : store.stations()) {
    v.station_names[s.station_id] = s.name;
    add(s.name, [&](Vocabulary::Entry& e) {
      if (!e.station_id || s.station_id < *e.station_id) e.station_id = s.station_id;
    });
  }
  if (coverage_years) {
    std::tie(v.first_year, v.last_year) = *coverage_years;
  } else if (auto range = store.price_month_range()) {
    v.first_year = year_of(range->first);
    v.last_year = year_of(range->second);
  }
  const auto states = store.states();
  for (std::size_t i = 0; i < states.size(); ++i) {
    if (i) v.region += ", ";
    v.region += states[i];
  }
  return v;
}

ParseOutcome parse_question(std::string_view question, const Vocabulary& vocab) {
  if (question.size() > kMaxQuestionLength) {
    return OutOfScope{OutOfScopeReason::UnsupportedIntent, "question is too long"};
  }
  Words words = split_words(normalize_text(question));
  if (words.empty()) return OutOfScope{OutOfScopeReason::UnsupportedIntent, "empty question"};

  Intent intent;
  const bool mentions_price = has_word(words, {"price", "prices", "value", "values", "cost", "costs",
                                               "priced", "zhvi"});
  const bool mentions_station = has_word(words, {"station", "stations", "stop", "stops", "metro"});
  if (has_phrase(words, "how", "many")) {
    intent.kind = IntentKind::CountRecords;
    intent.subject = has_word(words, {"station", "stations"}) ? CountSubject::Stations
                                                              : CountSubject::PriceRecords;
  } else if (has_word(words, {"forecast", "forecasts", "forecasted", "predict", "predicted",
                              "prediction", "predictions", "projected", "projection"})) {
    intent.kind = IntentKind::ForecastLookup;
  } else if (mentions_station && has_word(words, {"near", "nearby", "close", "closest", "around",
                                                  "nearest", "within"})) {
    intent.kind = IntentKind::NearbyStations;
  } else if (mentions_price) {
    if (has_word(words, {"highest", "maximum", "max", "peak", "top"}) ||
        has_phrase(words, "most", "expensive")) {
      intent.kind = IntentKind::ExtremePrice;
      intent.extreme = Extreme::Max;
    } else if (has_word(words, {"lowest", "minimum", "min", "cheapest"}) ||
               has_phrase(words, "least", "expensive")) {
      intent.kind = IntentKind::ExtremePrice;
      intent.extreme = Extreme::Min;
    } else {
      intent.kind = IntentKind::AveragePrice;
    }
  } else {
    return OutOfScope{OutOfScopeReason::UnsupportedIntent, "no supported question pattern"};
  }

  intent.time = extract_time(words);
  if (intent.kind == IntentKind::AveragePrice && std::holds_alternative<Month>(intent.time) &&
      !has_word(words, {"average", "mean", "typical"})) {
    intent.kind = IntentKind::PriceAt;
  }

  const auto kinds = supported_kinds(intent);
  if (auto match = longest_place(words, vocab)) {
    const auto& e = *match->entry;
    std::vector<Place> candidates;
    if (e.city) candidates.push_back({PlaceKind::City, *e.city, *e.city, {}});
    if (e.zip) candidates.push_back({PlaceKind::Zip, *e.zip, *e.zip, {}});
    if (e.station_id) {
      candidates.push_back({PlaceKind::Station, *e.station_id, vocab.station_names.at(*e.station_id), {}});
    }
    std::optional<Place> chosen;
    for (const auto& c : candidates) {
      if (std::find(kinds.begin(), kinds.end(), c.kind) == kinds.end()) continue;
      if (!chosen) {
        chosen = c;
      } else {
        chosen->also_matched.push_back(c.kind);
      }
    }
    if (!chosen) {
      return OutOfScope{OutOfScopeReason::UnsupportedIntent,
                        "ask about a ZIP code or metro station for this kind of question"};
    }
    intent.place = std::move(chosen);
  } else {
    const std::string unknown = unknown_place_phrase(words);
    if (!unknown.empty() || place_required(intent.kind)) {
      return OutOfScope{OutOfScopeReason::UnknownPlace, unknown};
    }
  }

  if (!years_supported(intent.time, vocab)) {
    return OutOfScope{OutOfScopeReason::UnsupportedYear, time_text(intent.time)};
  }
  return intent;
}

// ---------------------------------------------------------------------------

Assistant::Assistant(const Store& store, const SpatialIndex& index, AssistantConfig config,
                     std::shared_ptr<const QuestionTranslator> translator)
    : store_(store),
      index_(index),
      config_(config),
      vocab_(make_vocabulary(store, config.coverage_years)),
      translator_(translator ? std::move(translator)
                             : std::make_shared<GrammarTranslator>(vocab_)) {}

std::optional<GeoPoint> Assistant::reference_point(const Place& place) const {
  if (place.kind == PlaceKind::Station) {
    if (const auto* s = store_.find_station(place.key)) return s->location;
  } else if (place.kind == PlaceKind::Zip) {
    if (const auto* b = store_.find_boundary(place.key)) return b->centroid;
  }
  return std::nullopt;
}

std::optional<std::string> Assistant::forecast_zip(const Place& place) const {
  if (place.kind == PlaceKind::Zip) return place.key;
  if (const auto* s = store_.find_station(place.key)) return index_.enclosing_zip(s->location);
  return std::nullopt;
}

std::string Assistant::place_phrase(const Place& place) const {
  switch (place.kind) {
    case PlaceKind::City: return "in " + place.display;
    case PlaceKind::Zip: return "in ZIP " + place.display;
    case PlaceKind::Station:
      return fmt::format("within {} m of {} station", format_count(config_.nearby_radius_m),
                         place.display);
  }
  return "";
}

namespace {

Predicate place_predicate(const Place& place, double radius_m) {
  switch (place.kind) {
    case PlaceKind::City: return AttrEquals{"city", place.key};
    case PlaceKind::Zip: return AttrEquals{"zip", place.key};
    case PlaceKind::Station: break;
  }
  return WithinRadiusOfStation{place.key, radius_m};
}

}  // namespace

Intent Assistant::resolve_defaults(Intent intent) const {
  if (intent.kind != IntentKind::AveragePrice || !std::holds_alternative<std::monostate>(intent.time) ||
      !intent.place) {
    return intent;
  }
  QueryAst probe;
  probe.table = Table::LocationsPrices;
  probe.target = Projection{{"date"}};
  probe.predicates.push_back(place_predicate(*intent.place, config_.nearby_radius_m));
  const ResultSet rs = Executor(store_, index_).execute(probe);
  std::optional<Date> latest;
  for (const auto& row : rs.rows) {
    const Date d = std::get<Date>(row[0]);
    if (!latest || d > *latest) latest = d;
  }
  if (latest) intent.time = month_of(*latest);
  return intent;
}

QueryAst Assistant::intent_to_ast(const Intent& intent) const {
  QueryAst ast;
  ast.table = Table::LocationsPrices;
  const double r = config_.nearby_radius_m;

  auto add_time = [&] {
    if (auto span = date_span(intent.time)) {
      ast.predicates.push_back(DateBetween{"date", span->first, span->second});
    }
  };

  switch (intent.kind) {
    case IntentKind::ExtremePrice:
      ast.target = Aggregate{intent.extreme == Extreme::Max ? AggregateFn::Max : AggregateFn::Min,
                             "value"};
      ast.result_alias = intent.extreme == Extreme::Max ? "highest_price" : "lowest_price";
      ast.predicates.push_back(place_predicate(*intent.place, r));
      add_time();
      break;
    case IntentKind::AveragePrice:
    case IntentKind::PriceAt:
      ast.target = Aggregate{AggregateFn::Avg, "value"};
      ast.result_alias = intent.kind == IntentKind::PriceAt ? "price" : "average_price";
      ast.predicates.push_back(place_predicate(*intent.place, r));
      add_time();
      break;
    case IntentKind::CountRecords:
      ast.target = Aggregate{AggregateFn::Count, "*"};
      if (intent.subject == CountSubject::Stations) {
        ast.table = Table::Stations;
        ast.result_alias = "station_count";
        if (intent.place) {
          if (intent.place->kind == PlaceKind::Zip) {
            ast.predicates.push_back(WithinZip{intent.place->key});
          } else {
            ast.predicates.push_back(WithinRadiusOfStation{intent.place->key, r});
          }
        }
      } else {
        ast.result_alias = "record_count";
        if (intent.place) ast.predicates.push_back(place_predicate(*intent.place, r));
        add_time();
      }
      break;
    case IntentKind::NearbyStations:
      ast.table = Table::Stations;
      ast.target = Projection{{"station_id", "name", "lat", "lon"}};
      if (intent.place->kind == PlaceKind::Zip) {
        ast.predicates.push_back(WithinRadiusOfZip{intent.place->key, r});
      } else {
        ast.predicates.push_back(WithinRadiusOfStation{intent.place->key, r});
      }
      break;
    case IntentKind::ForecastLookup:
      ast.table = Table::Predictions;
      ast.target = Projection{{"zip", "base_month", "horizon_months", "predicted_value"}};
      ast.predicates.push_back(AttrEquals{"zip", forecast_zip(*intent.place).value_or("")});
      break;
  }
  return ast;
}

Answer Assistant::format_answer(const Intent& intent, const ResultSet& rs) const {
  Answer a;
  a.status = AnswerStatus::Ok;
  const std::string where = intent.place ? " " + place_phrase(*intent.place) : "";
  const std::string when = time_phrase(intent.time);

  auto scalar = [&]() -> std::optional<double> {
    if (rs.rows.empty() || rs.rows[0].empty()) return std::nullopt;
    if (const auto* d = std::get_if<double>(&rs.rows[0][0])) return *d;
    return std::nullopt;
  };
  auto no_data = [&](std::string text) {
    a.status = AnswerStatus::NoData;
    a.text = std::move(text);
  };

  switch (intent.kind) {
    case IntentKind::ExtremePrice:
    case IntentKind::AveragePrice:
    case IntentKind::PriceAt: {
      auto v = scalar();
      if (!v) {
        no_data("I found no price data" + where + when);
        break;
      }
      std::string label = intent.kind == IntentKind::ExtremePrice
                              ? (intent.extreme == Extreme::Max ? "highest price" : "lowest price")
                              : "average price";
      if (intent.kind == IntentKind::PriceAt && intent.place->kind == PlaceKind::Zip) label = "price";
      a.text = "The " + label + where + when + " was " + format_usd(*v);
      break;
    }
    case IntentKind::CountRecords: {
      const double n = scalar().value_or(0.0);
      const bool stations = intent.subject == CountSubject::Stations;
      const std::string noun = stations ? (n == 1.0 ? "station" : "stations")
                                        : (n == 1.0 ? "price record" : "price records");
      a.text = "Found " + format_count(n) + " " + noun + where + (stations ? "" : when);
      break;
    }
    case IntentKind::NearbyStations: {
      const auto center = reference_point(*intent.place);
      const std::string what = intent.place->kind == PlaceKind::Zip
                                   ? "ZIP " + intent.place->display
                                   : intent.place->display + " station";
      const std::string head = fmt::format("within {} m of {}", format_count(config_.nearby_radius_m), what);
      if (rs.rows.empty() || !center) {
        no_data("I found no stations " + head);
        break;
      }
      struct Near {
        double d;
        std::string id;
        std::string name;
      };
      std::vector<Near> near;
      for (const auto& row : rs.rows) {
        const GeoPoint p{std::get<double>(row[2]), std::get<double>(row[3])};
        near.push_back({haversine_m(*center, p), std::get<std::string>(row[0]),
                        std::get<std::string>(row[1])});
      }
      std::sort(near.begin(), near.end(),
                [](const Near& x, const Near& y) { return std::tie(x.d, x.id) < std::tie(y.d, y.id); });
      std::string list;
      for (std::size_t i = 0; i < near.size(); ++i) {
        if (i) list += ", ";
        list += fmt::format("{} ({} m)", near[i].name, format_count(std::round(near[i].d)));
      }
      a.text = "Stations " + head + ": " + list;
      break;
    }
    case IntentKind::ForecastLookup: {
      const std::string zip = forecast_zip(*intent.place).value_or("");
      if (rs.rows.empty()) {
        no_data(zip.empty() ? "I found no forecast" + where : "I found no forecast for ZIP " + zip);
        break;
      }
      std::map<int, double> by_horizon;
      Date base = std::get<Date>(rs.rows[0][1]);
      for (const auto& row : rs.rows) {
        by_horizon[static_cast<int>(std::get<double>(row[2]))] = std::get<double>(row[3]);
        base = std::max(base, std::get<Date>(row[1]));
      }
      std::string parts;
      for (const auto& [h, v] : by_horizon) {
        if (!parts.empty()) parts += ", ";
        parts += fmt::format("{} in {} {}", format_usd(v), h, h == 1 ? "month" : "months");
      }
      a.text = fmt::format("Forecast for ZIP {} from {}: {}", zip, month_display_name(month_of(base)), parts);
      break;
    }
  }

  if (intent.place && !intent.place->also_matched.empty()) {
    std::string others;
    for (std::size_t i = 0; i < intent.place->also_matched.size(); ++i) {
      if (i) others += " and ";
      others += kind_name(intent.place->also_matched[i]);
    }
    a.text += fmt::format(" (\"{}\" also matches a {}; using the {})", intent.place->display, others,
                          kind_name(intent.place->kind));
  }
  return a;
}

std::string Assistant::out_of_scope_text(const OutOfScope& oos) const {
  const std::string region =
      vocab_.region.empty() ? std::string("the loaded region") : "the covered region (" + vocab_.region + ")";
  switch (oos.reason) {
    case OutOfScopeReason::UnknownPlace:
      if (oos.detail.empty()) {
        return "Please name a city, ZIP code, or metro station in " + region + ".";
      }
      return fmt::format(
          "I couldn't find \"{}\" in {}. Try a city, ZIP code, or metro station from the data.",
          oos.detail, region);
    case OutOfScopeReason::UnsupportedYear:
      return fmt::format("I only have data for {} through {} in {}. {} is outside that range.",
                         vocab_.first_year, vocab_.last_year, region, oos.detail);
    case OutOfScopeReason::UnsupportedIntent:
      break;
  }
  return fmt::format(
      "I can answer questions about highest, lowest, or average home prices, prices in a given "
      "month, nearby metro stations, price forecasts, and record counts for places in {}{}.",
      region, oos.detail.empty() ? "" : " (" + oos.detail + ")");
}

Answer Assistant::ask(std::string_view question) const noexcept {
  try {
    const ParseOutcome parsed = translator_->translate(question);
    if (const auto* oos = std::get_if<OutOfScope>(&parsed)) {
      return {out_of_scope_text(*oos), "", AnswerStatus::OutOfScope};
    }
    const Intent intent = resolve_defaults(std::get<Intent>(parsed));
    const QueryAst ast = intent_to_ast(intent);
    const std::string sql = render_sql(ast);
    const std::string cleaned = clean_sql(sql);
    const ResultSet rs = Executor(store_, index_).execute(parse_sql(cleaned));
    Answer a = format_answer(intent, rs);
    a.sql = sql;
    return a;
  } catch (...) {
    return {"Sorry, something went wrong while answering that question.", "", AnswerStatus::Error};
  }
}

}  // namespace railestate
