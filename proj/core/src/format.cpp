#include "bpe/format.hpp"

#include <charconv>
#include <limits>
#include <optional>
#include <sstream>
#include <unordered_set>
#include <vector>

#include "bpe/errors.hpp"

namespace bpe {

namespace {

constexpr long long kMaxVars = 1'000'000;
constexpr long long kMaxDomain = 1'000'000;
constexpr long long kMaxCells = 10'000'000;  // vars * domain

struct Line {
  int number = 0;
  std::vector<std::string_view> tokens;
};

bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\r' || c == '\v' || c == '\f';
}

std::vector<std::string_view> tokenize(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && is_space(line[i])) ++i;
    const std::size_t start = i;
    while (i < line.size() && !is_space(line[i])) ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

// Splits text into lines, dropping comments. Blank lines are kept as lines
// with no tokens so callers can decide whether they matter.
class LineReader {
 public:
  explicit LineReader(std::string_view text) {
    int number = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
      const std::size_t nl = text.find('\n', pos);
      const std::size_t end = nl == std::string_view::npos ? text.size() : nl;
      ++number;
      auto tokens = tokenize(text.substr(pos, end - pos));
      if (tokens.empty() || tokens.front().front() != '#') {
        lines_.push_back({number, std::move(tokens)});
      }
      if (nl == std::string_view::npos) break;
      pos = nl + 1;
    }
    last_line_ = number;
  }

  // Next line with at least one token, or nullopt at end of input.
  std::optional<Line> next_nonblank() {
    while (pos_ < lines_.size()) {
      if (!lines_[pos_].tokens.empty()) return lines_[pos_++];
      ++pos_;
    }
    return std::nullopt;
  }

  // Next line including blank ones, or nullopt at end of input.
  std::optional<Line> next_any() {
    if (pos_ < lines_.size()) return lines_[pos_++];
    return std::nullopt;
  }

  std::optional<Line> peek_nonblank() const {
    for (std::size_t i = pos_; i < lines_.size(); ++i) {
      if (!lines_[i].tokens.empty()) return lines_[i];
    }
    return std::nullopt;
  }

  int last_line() const { return last_line_; }

 private:
  std::vector<Line> lines_;
  std::size_t pos_ = 0;
  int last_line_ = 0;
};

long long parse_int(std::string_view tok, int line, const char* what) {
  long long value = 0;
  const auto* first = tok.data();
  const auto* last = tok.data() + tok.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) {
    throw ParseError(line, std::string("expected integer ") + what + ", got '" +
                               std::string(tok) + "'");
  }
  return value;
}

long long parse_nonneg(std::string_view tok, int line, const char* what) {
  const long long v = parse_int(tok, line, what);
  if (v < 0) throw ParseError(line, std::string(what) + " must be non-negative");
  return v;
}

Line expect_line(LineReader& r, const char* what) {
  auto line = r.next_nonblank();
  if (!line) throw ParseError(r.last_line(), std::string("unexpected end of input, expected ") + what);
  return *line;
}

void expect_keyword(const Line& line, std::string_view keyword) {
  if (line.tokens.front() != keyword) {
    throw ParseError(line.number, "expected '" + std::string(keyword) + "', got '" +
                                      std::string(line.tokens.front()) + "'");
  }
}

long long header_value(LineReader& r, std::string_view keyword) {
  Line line = expect_line(r, std::string(keyword).c_str());
  expect_keyword(line, keyword);
  if (line.tokens.size() != 2) {
    throw ParseError(line.number, "'" + std::string(keyword) + "' takes exactly one value");
  }
  return parse_int(line.tokens[1], line.number, std::string(keyword).c_str());
}

PartialState parse_state_line(const Line& line, std::size_t n, int d, bool allow_undefined) {
  if (line.tokens.size() - 1 != n) {
    throw ParseError(line.number, "expected " + std::to_string(n) + " values, got " +
                                      std::to_string(line.tokens.size() - 1));
  }
  std::vector<Value> values;
  values.reserve(n);
  for (std::size_t i = 1; i < line.tokens.size(); ++i) {
    const auto tok = line.tokens[i];
    if (tok == "_") {
      if (!allow_undefined) throw ParseError(line.number, "'_' not allowed in init");
      values.push_back(kUndefined);
      continue;
    }
    const long long v = parse_nonneg(tok, line.number, "value");
    if (v >= d) {
      throw ParseError(line.number, "value " + std::to_string(v) + " out of domain 0.." +
                                        std::to_string(d - 1));
    }
    values.push_back(static_cast<Value>(v));
  }
  return PartialState(std::move(values));
}

PartialState parse_assignment_line(const Line& line, std::size_t n, int d) {
  PartialState s = PartialState::undefined(n);
  for (std::size_t i = 1; i < line.tokens.size(); ++i) {
    const auto tok = line.tokens[i];
    const auto eq = tok.find('=');
    if (eq == std::string_view::npos) {
      throw ParseError(line.number, "expected <var>=<val>, got '" + std::string(tok) + "'");
    }
    const long long var = parse_nonneg(tok.substr(0, eq), line.number, "variable");
    const long long val = parse_nonneg(tok.substr(eq + 1), line.number, "value");
    if (static_cast<std::size_t>(var) >= n) {
      throw ParseError(line.number, "variable " + std::to_string(var) + " out of range");
    }
    if (val >= d) {
      throw ParseError(line.number, "value " + std::to_string(val) + " out of domain 0.." +
                                        std::to_string(d - 1));
    }
    if (s.is_defined(static_cast<std::size_t>(var))) {
      throw ParseError(line.number, "variable " + std::to_string(var) + " assigned twice");
    }
    s.set(static_cast<std::size_t>(var), static_cast<Value>(val));
  }
  return s;
}

std::string join_assignments(std::span<const Assignment> entries) {
  std::string out;
  for (const auto& [var, val] : entries) {
    out += ' ';
    out += std::to_string(var);
    out += '=';
    out += std::to_string(val);
  }
  return out;
}

}  // namespace

std::string format_state(const PartialState& s) {
  std::string out;
  for (std::size_t v = 0; v < s.size(); ++v) {
    if (v > 0) out += ' ';
    out += s[v] == kUndefined ? std::string("_") : std::to_string(s[v]);
  }
  return out;
}

SasInstance parse_sas(std::string_view text) {
  LineReader r(text);

  const Line header = expect_line(r, "'sas' header");
  expect_keyword(header, "sas");
  if (header.tokens.size() != 2 || header.tokens[1] != "1") {
    throw ParseError(header.number, "unsupported header, expected 'sas 1'");
  }

  const long long n_raw = header_value(r, "vars");
  if (n_raw < 0 || n_raw > kMaxVars) throw ParseError(r.last_line(), "variable count out of range");
  const long long d_raw = header_value(r, "domain");
  if (d_raw < 2 || d_raw > kMaxDomain) throw ParseError(r.last_line(), "domain size must be >= 2");
  if (n_raw * d_raw > kMaxCells) throw ParseError(r.last_line(), "instance too large");
  const auto n = static_cast<std::size_t>(n_raw);
  const int d = static_cast<int>(d_raw);

  Line init_line = expect_line(r, "'init'");
  expect_keyword(init_line, "init");
  PartialState init = parse_state_line(init_line, n, d, false);

  Line goal_line = expect_line(r, "'goal'");
  expect_keyword(goal_line, "goal");
  PartialState goal = parse_state_line(goal_line, n, d, true);

  std::vector<Action> actions;
  std::unordered_set<std::string> names;
  while (auto line = r.next_nonblank()) {
    expect_keyword(*line, "action");
    if (line->tokens.size() != 2) throw ParseError(line->number, "'action' takes exactly one name");
    std::string name(line->tokens[1]);
    if (!names.insert(name).second) {
      throw ParseError(line->number, "duplicate action name '" + name + "'");
    }

    std::optional<PartialState> pre;
    std::optional<PartialState> eff;
    for (;;) {
      Line body = expect_line(r, "'end'");
      const auto kw = body.tokens.front();
      if (kw == "end") {
        if (body.tokens.size() != 1) throw ParseError(body.number, "'end' takes no arguments");
        break;
      }
      if (kw == "pre" || kw == "eff") {
        auto& slot = kw == "pre" ? pre : eff;
        if (slot) throw ParseError(body.number, "repeated '" + std::string(kw) + "' line");
        slot = parse_assignment_line(body, n, d);
        continue;
      }
      throw ParseError(body.number, "expected 'pre', 'eff' or 'end', got '" + std::string(kw) + "'");
    }
    actions.emplace_back(std::move(name), pre ? std::move(*pre) : PartialState::undefined(n),
                         eff ? std::move(*eff) : PartialState::undefined(n));
  }

  try {
    return SasInstance(static_cast<int>(n), DomainSpec(d), std::move(actions), std::move(init),
                       std::move(goal));
  } catch (const StructuralError& e) {
    throw ParseError(r.last_line(), e.what());
  }
}

std::string serialize_sas(const SasInstance& inst) {
  std::ostringstream out;
  out << "sas 1\n";
  out << "vars " << inst.num_vars() << "\n";
  out << "domain " << inst.domain().size() << "\n";
  out << "init";
  if (inst.num_vars() > 0) out << ' ' << format_state(inst.init());
  out << "\ngoal";
  if (inst.num_vars() > 0) out << ' ' << format_state(inst.goal());
  out << "\n";
  for (const auto& a : inst.actions()) {
    out << "action " << a.name() << "\n";
    out << "pre" << join_assignments(a.pre_entries()) << "\n";
    out << "eff" << join_assignments(a.eff_entries()) << "\n";
    out << "end\n";
  }
  return out.str();
}

HittingSetInstance parse_hitting_set(std::string_view text) {
  LineReader r(text);
  const Line header = expect_line(r, "'hs' header");
  expect_keyword(header, "hs");
  if (header.tokens.size() != 4) throw ParseError(header.number, "expected 'hs <|S|> <|C|> <k>'");
  const long long set_size = parse_nonneg(header.tokens[1], header.number, "|S|");
  const long long count = parse_nonneg(header.tokens[2], header.number, "|C|");
  const long long k = parse_nonneg(header.tokens[3], header.number, "k");
  if (set_size > kMaxCells || count > kMaxCells) throw ParseError(header.number, "instance too large");
  if (k > count) {
    throw ParseError(header.number, "k = " + std::to_string(k) + " exceeds |C| = " +
                                        std::to_string(count));
  }

  std::vector<std::vector<int>> collection;
  collection.reserve(static_cast<std::size_t>(count));
  for (long long c = 0; c < count; ++c) {
    auto line = r.next_any();
    if (!line) throw ParseError(r.last_line(), "expected " + std::to_string(count) + " member sets");
    if (line->tokens.empty()) throw ParseError(line->number, "empty member set can never be hit");
    std::vector<int> members;
    for (const auto tok : line->tokens) {
      const long long e = parse_nonneg(tok, line->number, "element");
      if (e >= set_size) {
        throw ParseError(line->number, "element " + std::to_string(e) + " out of range 0.." +
                                           std::to_string(set_size - 1));
      }
      members.push_back(static_cast<int>(e));
    }
    collection.push_back(std::move(members));
  }
  if (auto extra = r.next_nonblank()) throw ParseError(extra->number, "trailing content");

  return HittingSetInstance(static_cast<int>(set_size), std::move(collection), static_cast<int>(k));
}

std::string serialize_hitting_set(const HittingSetInstance& hs) {
  std::ostringstream out;
  out << "hs " << hs.set_size() << ' ' << hs.collection().size() << ' ' << hs.k() << "\n";
  for (const auto& c : hs.collection()) {
    for (std::size_t i = 0; i < c.size(); ++i) out << (i ? " " : "") << c[i];
    out << "\n";
  }
  return out.str();
}

PartitionedGraph parse_partitioned_graph(std::string_view text) {
  LineReader r(text);
  const Line header = expect_line(r, "'pc' header");
  expect_keyword(header, "pc");
  if (header.tokens.size() != 3) throw ParseError(header.number, "expected 'pc <k> <n>'");
  const long long k = parse_nonneg(header.tokens[1], header.number, "k");
  const long long n = parse_nonneg(header.tokens[2], header.number, "n");
  if (k < 1) throw ParseError(header.number, "need at least one part");
  if (n < 1) throw ParseError(header.number, "parts must be nonempty");
  if (k * n > kMaxCells) throw ParseError(header.number, "graph too large");

  std::set<Edge> edges;
  while (auto line = r.next_nonblank()) {
    if (line->tokens.size() != 4) throw ParseError(line->number, "expected edge '<i> <a> <j> <b>'");
    long long f[4];
    for (int i = 0; i < 4; ++i) f[i] = parse_nonneg(line->tokens[static_cast<std::size_t>(i)], line->number, "vertex field");
    if (f[0] >= k || f[2] >= k) throw ParseError(line->number, "part index out of range");
    if (f[1] >= n || f[3] >= n) throw ParseError(line->number, "vertex index out of range");
    if (f[0] == f[2]) throw ParseError(line->number, "edge inside part " + std::to_string(f[0]));
    edges.insert(Edge({static_cast<int>(f[0]), static_cast<int>(f[1])},
                      {static_cast<int>(f[2]), static_cast<int>(f[3])}));
  }
  return PartitionedGraph(static_cast<int>(k), static_cast<int>(n), std::move(edges));
}

std::string serialize_partitioned_graph(const PartitionedGraph& g) {
  std::ostringstream out;
  out << "pc " << g.k() << ' ' << g.n() << "\n";
  for (const auto& e : g.edges()) {
    out << e.a.part << ' ' << e.a.index << ' ' << e.b.part << ' ' << e.b.index << "\n";
  }
  return out.str();
}

}  // namespace bpe
