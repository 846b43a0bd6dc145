#include <cctype>
#include <charconv>
#include <cmath>

#include "railestate/errors.hpp"
#include "railestate/query.hpp"

namespace railestate {

namespace {

std::string quote_identifier(std::string_view id) {
  std::string out = "\"";
  for (char c : id) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

std::string quote_string(std::string_view s) {
  std::string out = "'";
  for (char c : s) {
    if (c == '\'') out.push_back('\'');
    out.push_back(c);
  }
  out.push_back('\'');
  return out;
}

std::string render_number(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

std::string render_literal(const Literal& lit) {
  if (const auto* s = std::get_if<std::string>(&lit)) return quote_string(*s);
  return render_number(std::get<double>(lit));
}

std::string render_predicate(const Predicate& pred) {
  return std::visit(
      [](const auto& p) -> std::string {
        using P = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<P, AttrEquals>) {
          return quote_identifier(p.column) + " = " + render_literal(p.value);
        } else if constexpr (std::is_same_v<P, DateBetween>) {
          return quote_identifier(p.column) + " BETWEEN " + quote_string(format_date(p.start)) +
                 " AND " + quote_string(format_date(p.end));
        } else if constexpr (std::is_same_v<P, WithinRadiusOfStation>) {
          return "WITHIN_RADIUS_OF_STATION(" + quote_string(p.station_id) + ", " +
                 render_number(p.meters) + ")";
        } else if constexpr (std::is_same_v<P, WithinRadiusOfZip>) {
          return "WITHIN_RADIUS_OF_ZIP(" + quote_string(p.zip) + ", " + render_number(p.meters) +
                 ")";
        } else {
          return "WITHIN_ZIP(" + quote_string(p.zip) + ")";
        }
      },
      pred);
}

// ---------------------------------------------------------------------------

enum class Tok { Word, QuotedId, String, Number, LParen, RParen, Comma, Equals, Star, Semicolon, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t pos;
};

std::string upper(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return out;
}

std::vector<Token> tokenize(std::string_view sql) {
  std::vector<Token> out;
  std::size_t i = 0;
  auto quoted = [&](char q, Tok kind) {
    const std::size_t start = i++;
    std::string text;
    while (true) {
      if (i >= sql.size()) throw SyntaxError(start, "unterminated quoted token");
      if (sql[i] == q) {
        if (i + 1 < sql.size() && sql[i + 1] == q) {
          text.push_back(q);
          i += 2;
          continue;
        }
        ++i;
        break;
      }
      text.push_back(sql[i++]);
    }
    out.push_back({kind, std::move(text), start});
  };

  while (i < sql.size()) {
    const char c = sql[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
    } else if (c == '\'') {
      quoted('\'', Tok::String);
    } else if (c == '"') {
      quoted('"', Tok::QuotedId);
    } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = i;
      while (i < sql.size() &&
             (std::isalnum(static_cast<unsigned char>(sql[i])) || sql[i] == '_')) {
        ++i;
      }
      out.push_back({Tok::Word, std::string(sql.substr(start, i - start)), start});
    } else if (std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '.') {
      const std::size_t start = i;
      ++i;
      while (i < sql.size()) {
        const char d = sql[i];
        const bool exp_sign = (d == '+' || d == '-') && (sql[i - 1] == 'e' || sql[i - 1] == 'E');
        if (std::isdigit(static_cast<unsigned char>(d)) || d == '.' || d == 'e' || d == 'E' ||
            exp_sign) {
          ++i;
        } else {
          break;
        }
      }
      out.push_back({Tok::Number, std::string(sql.substr(start, i - start)), start});
    } else {
      Tok kind;
      switch (c) {
        case '(': kind = Tok::LParen; break;
        case ')': kind = Tok::RParen; break;
        case ',': kind = Tok::Comma; break;
        case '=': kind = Tok::Equals; break;
        case '*': kind = Tok::Star; break;
        case ';': kind = Tok::Semicolon; break;
        default: throw SyntaxError(i, std::string("unexpected character '") + c + "'");
      }
      out.push_back({kind, std::string(1, c), i});
      ++i;
    }
  }
  out.push_back({Tok::End, "", sql.size()});
  return out;
}

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

  QueryAst statement() {
    QueryAst ast;
    keyword("SELECT");
    target(ast);
    keyword("FROM");
    const Token& t = peek();
    const std::string name = identifier("table name");
    auto table = table_from_name(name);
    if (!table) throw Error(Errc::UnknownTable, name + " at position " + std::to_string(t.pos));
    ast.table = *table;
    if (is_keyword("WHERE")) {
      advance();
      ast.predicates.push_back(predicate());
      while (is_keyword("AND")) {
        advance();
        ast.predicates.push_back(predicate());
      }
    }
    if (peek().kind == Tok::Semicolon) advance();
    if (peek().kind != Tok::End) fail("unexpected trailing input");
    validate(ast);
    return ast;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  const Token& advance() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }

  [[noreturn]] void fail(const std::string& what) const { throw SyntaxError(peek().pos, what); }

  bool is_keyword(std::string_view kw) const {
    return peek().kind == Tok::Word && upper(peek().text) == kw;
  }

  void keyword(std::string_view kw) {
    if (!is_keyword(kw)) fail("expected " + std::string(kw));
    advance();
  }

  void expect(Tok kind, std::string_view what) {
    if (peek().kind != kind) fail("expected " + std::string(what));
    advance();
  }

  std::string identifier(std::string_view what) {
    if (peek().kind != Tok::QuotedId && peek().kind != Tok::Word) fail("expected " + std::string(what));
    return advance().text;
  }

  std::string string_literal() {
    if (peek().kind != Tok::String) fail("expected string literal");
    return advance().text;
  }

  double number() {
    if (peek().kind != Tok::Number) fail("expected number");
    const Token& t = advance();
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
    if (ec != std::errc{} || ptr != t.text.data() + t.text.size() || !std::isfinite(v)) {
      throw SyntaxError(t.pos, "bad number '" + t.text + "'");
    }
    return v;
  }

  Date date_literal() {
    const std::size_t at = peek().pos;
    auto d = parse_date(string_literal());
    if (!d) throw SyntaxError(at, "expected 'YYYY-MM-DD'");
    return *d;
  }

  std::optional<AggregateFn> aggregate_fn() const {
    if (peek().kind != Tok::Word || toks_[pos_ + 1].kind != Tok::LParen) return std::nullopt;
    const std::string kw = upper(peek().text);
    if (kw == "MAX") return AggregateFn::Max;
    if (kw == "MIN") return AggregateFn::Min;
    if (kw == "AVG") return AggregateFn::Avg;
    if (kw == "COUNT") return AggregateFn::Count;
    return std::nullopt;
  }

  void target(QueryAst& ast) {
    if (auto fn = aggregate_fn()) {
      advance();
      expect(Tok::LParen, "(");
      Aggregate agg{*fn, "*"};
      if (peek().kind == Tok::Star) {
        advance();
      } else {
        agg.column = identifier("column");
      }
      expect(Tok::RParen, ")");
      if (is_keyword("AS")) {
        advance();
        ast.result_alias = identifier("alias");
      }
      ast.target = std::move(agg);
      return;
    }
    if (is_keyword("FROM")) fail("expected select list");
    Projection proj;
    proj.columns.push_back(identifier("column"));
    while (peek().kind == Tok::Comma) {
      advance();
      proj.columns.push_back(identifier("column"));
    }
    ast.target = std::move(proj);
  }

  Predicate predicate() {
    if (peek().kind == Tok::Word && toks_[pos_ + 1].kind == Tok::LParen) {
      const std::string fn = upper(peek().text);
      if (fn == "WITHIN_RADIUS_OF_STATION" || fn == "WITHIN_RADIUS_OF_ZIP") {
        advance();
        expect(Tok::LParen, "(");
        std::string key = string_literal();
        expect(Tok::Comma, ",");
        const double meters = number();
        expect(Tok::RParen, ")");
        if (fn == "WITHIN_RADIUS_OF_ZIP") return WithinRadiusOfZip{std::move(key), meters};
        return WithinRadiusOfStation{std::move(key), meters};
      }
      if (fn == "WITHIN_ZIP") {
        advance();
        expect(Tok::LParen, "(");
        std::string zip = string_literal();
        expect(Tok::RParen, ")");
        return WithinZip{std::move(zip)};
      }
      fail("unsupported function " + fn);
    }
    std::string column = identifier("column");
    if (peek().kind == Tok::Equals) {
      advance();
      if (peek().kind == Tok::String) return AttrEquals{std::move(column), string_literal()};
      return AttrEquals{std::move(column), number()};
    }
    if (is_keyword("BETWEEN")) {
      advance();
      const Date start = date_literal();
      keyword("AND");
      const Date end = date_literal();
      return DateBetween{std::move(column), start, end};
    }
    fail("expected = or BETWEEN");
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

}  // namespace

std::string render_sql(const QueryAst& ast) {
  std::string sql = "SELECT ";
  if (const auto* agg = std::get_if<Aggregate>(&ast.target)) {
    sql += std::string(to_string(agg->fn)) + "(" +
           (agg->column == "*" ? std::string("*") : quote_identifier(agg->column)) + ")";
    if (ast.result_alias) sql += " AS " + *ast.result_alias;
  } else {
    const auto& cols = std::get<Projection>(ast.target).columns;
    for (std::size_t i = 0; i < cols.size(); ++i) {
      if (i) sql += ", ";
      sql += quote_identifier(cols[i]);
    }
  }
  sql += " FROM " + quote_identifier(table_name(ast.table));
  for (std::size_t i = 0; i < ast.predicates.size(); ++i) {
    sql += i == 0 ? " WHERE " : " AND ";
    sql += render_predicate(ast.predicates[i]);
  }
  sql += ";";
  return sql;
}

QueryAst parse_sql(std::string_view sql) {
  auto tokens = tokenize(sql);
  if (tokens.size() == 1) throw SyntaxError(0, "empty statement");
  return Parser(std::move(tokens)).statement();
}

std::string clean_sql(std::string_view sql) {
  std::size_t end = sql.size();
  char quote = 0;
  for (std::size_t i = 0; i < sql.size(); ++i) {
    const char c = sql[i];
    if (quote) {
      if (c == quote) {
        if (i + 1 < sql.size() && sql[i + 1] == quote) {
          ++i;
        } else {
          quote = 0;
        }
      }
      continue;
    }
    if (c == '\'' || c == '"') {
      quote = c;
    } else if ((c == '-' && i + 1 < sql.size() && sql[i + 1] == '-') ||
               (c == '/' && i + 1 < sql.size() && sql[i + 1] == '*')) {
      throw UnsafeSqlError(UnsafeReason::Comment, "comment at position " + std::to_string(i));
    } else if (c == ';') {
      for (std::size_t j = i + 1; j < sql.size(); ++j) {
        if (!std::isspace(static_cast<unsigned char>(sql[j]))) {
          throw UnsafeSqlError(UnsafeReason::MultipleStatements,
                               "text after ';' at position " + std::to_string(j));
        }
      }
      end = i;
      break;
    }
  }
  if (quote) throw UnsafeSqlError(UnsafeReason::ParseFailure, "unterminated quote");

  std::string_view stmt = sql.substr(0, end);
  while (!stmt.empty() && std::isspace(static_cast<unsigned char>(stmt.front()))) stmt.remove_prefix(1);
  while (!stmt.empty() && std::isspace(static_cast<unsigned char>(stmt.back()))) stmt.remove_suffix(1);
  if (stmt.empty()) throw UnsafeSqlError(UnsafeReason::ParseFailure, "empty statement");

  std::size_t verb_end = 0;
  while (verb_end < stmt.size() && std::isalpha(static_cast<unsigned char>(stmt[verb_end]))) {
    ++verb_end;
  }
  const std::string verb = upper(stmt.substr(0, verb_end));
  if (verb != "SELECT") {
    throw UnsafeSqlError(UnsafeReason::NonSelect,
                         verb.empty() ? std::string("statement has no verb") : verb);
  }
  try {
    parse_sql(stmt);
  } catch (const Error& e) {
    throw UnsafeSqlError(UnsafeReason::ParseFailure, e.what());
  }
  return std::string(stmt);
}

}  // namespace railestate
