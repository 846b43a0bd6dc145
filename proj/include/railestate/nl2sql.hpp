#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "railestate/datamodel.hpp"
#include "railestate/query.hpp"
#include "railestate/spatial_index.hpp"

namespace railestate {

enum class IntentKind { ExtremePrice, AveragePrice, PriceAt, NearbyStations, ForecastLookup, CountRecords };
enum class Extreme { Max, Min };
enum class PlaceKind { City, Zip, Station };
enum class CountSubject { PriceRecords, Stations };

struct Place {
  PlaceKind kind = PlaceKind::City;
  /// City name, ZIP code or station_id.
  std::string key;
  /// Human-readable name (station name for stations).
  std::string display;
  /// Other kinds the same phrase matched, lower in precedence.
  std::vector<PlaceKind> also_matched;

  friend bool operator==(const Place&, const Place&) = default;
};

struct YearRange {
  int first = 0;
  int last = 0;

  friend bool operator==(const YearRange&, const YearRange&) = default;
};

/// none | year | year range | month
using TimeSlot = std::variant<std::monostate, int, YearRange, Month>;

struct Intent {
  IntentKind kind = IntentKind::AveragePrice;
  Extreme extreme = Extreme::Max;
  CountSubject subject = CountSubject::PriceRecords;
  std::optional<Place> place;
  TimeSlot time;

  friend bool operator==(const Intent&, const Intent&) = default;
};

enum class OutOfScopeReason { UnknownPlace, UnsupportedYear, UnsupportedIntent };

std::string_view to_string(OutOfScopeReason reason);

struct OutOfScope {
  OutOfScopeReason reason = OutOfScopeReason::UnsupportedIntent;
  std::string detail;
};

using ParseOutcome = std::variant<Intent, OutOfScope>;

/// Places and years the grammar may resolve, derived from a loaded store.
struct Vocabulary {
  struct Entry {
    std::optional<std::string> city;
    std::optional<std::string> zip;
    std::optional<std::string> station_id;
  };
  std::map<std::string, Entry> phrases;  // normalized phrase -> matches
  std::map<std::string, std::string> station_names;  // station_id -> name
  std::size_t longest_phrase_words = 1;
  int first_year = 2000;
  int last_year = 2025;
  /// e.g. "DC, MD, VA"
  std::string region;
};

/// Years default to the store's observed price range, else 2000-2025.
Vocabulary make_vocabulary(const Store& store,
                           std::optional<std::pair<int, int>> coverage_years = std::nullopt);

/// Lowercase, punctuation to spaces, collapsed whitespace.
std::string normalize_text(std::string_view text);

inline constexpr std::size_t kMaxQuestionLength = 512;

/// Template grammar over the intents above. Never throws.
ParseOutcome parse_question(std::string_view question, const Vocabulary& vocab);

/// Question text to Intent. The grammar is the built-in implementation;
/// other translators can be slotted into Assistant.
class QuestionTranslator {
 public:
  virtual ~QuestionTranslator() = default;
  virtual ParseOutcome translate(std::string_view question) const = 0;
};

class GrammarTranslator : public QuestionTranslator {
 public:
  explicit GrammarTranslator(Vocabulary vocab) : vocab_(std::move(vocab)) {}
  ParseOutcome translate(std::string_view question) const override {
    return parse_question(question, vocab_);
  }
  const Vocabulary& vocabulary() const { return vocab_; }

 private:
  Vocabulary vocab_;
};

enum class AnswerStatus { Ok, OutOfScope, NoData, Error };

std::string_view to_string(AnswerStatus status);

struct Answer {
  std::string text;
  std::string sql;
  AnswerStatus status = AnswerStatus::Ok;

  friend bool operator==(const Answer&, const Answer&) = default;
};

/// "$308,002.64"
std::string format_usd(double value);
/// "1,600"
std::string format_count(double value);

struct AssistantConfig {
  double nearby_radius_m = kDefaultNearbyRadiusM;
  std::optional<std::pair<int, int>> coverage_years;
};

/// The question pipeline: translate, compile to SQL, sanitize, execute and
/// phrase the result. Stateless per question.
class Assistant {
 public:
  Assistant(const Store& store, const SpatialIndex& index, AssistantConfig config = {},
            std::shared_ptr<const QuestionTranslator> translator = nullptr);

  /// Total: returns Ok, OutOfScope, NoData or Error, never throws.
  Answer ask(std::string_view question) const noexcept;

  /// Fills defaulted slots (latest month for an untimed average).
  Intent resolve_defaults(Intent intent) const;

  QueryAst intent_to_ast(const Intent& intent) const;

  /// Ok or NoData text for a result set produced from intent_to_ast(intent).
  Answer format_answer(const Intent& intent, const ResultSet& rs) const;

  std::string out_of_scope_text(const OutOfScope& oos) const;

  const Vocabulary& vocabulary() const { return vocab_; }

 private:
  std::string place_phrase(const Place& place) const;
  std::optional<std::string> forecast_zip(const Place& place) const;
  std::optional<GeoPoint> reference_point(const Place& place) const;

  const Store& store_;
  const SpatialIndex& index_;
  AssistantConfig config_;
  Vocabulary vocab_;
  std::shared_ptr<const QuestionTranslator> translator_;
};

}  // namespace railestate
