#include "rwrers/space.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

#include "rwrers/errors.hpp"

namespace rwrers {

std::size_t VertexIdHash::operator()(const VertexId& v) const noexcept {
  std::uint64_t h = static_cast<std::uint64_t>(v.head) * 0x9e3779b97f4a7c15ULL;
  for (std::uint8_t c : v.word) h = (h ^ (c + 1)) * 0x100000001b3ULL;
  h ^= h >> 31;
  return static_cast<std::size_t>(h * 0xbf58476d1ce4e5b9ULL);
}

StabWeightRatio StabWeightRatio::power(std::int64_t base, std::int64_t exponent) {
  if (base == 1 || exponent == 0) return {};
  return {base, exponent};
}

double StabWeightRatio::value() const {
  return std::pow(static_cast<double>(base), static_cast<double>(exponent));
}

StabWeightRatio operator*(const StabWeightRatio& a, const StabWeightRatio& b) {
  if (a.exponent == 0) return b;
  if (b.exponent == 0) return a;
  if (a.base != b.base) throw DomainError("stabilizer-weight ratios with different bases");
  return StabWeightRatio::power(a.base, a.exponent + b.exponent);
}

Space Space::regular_tree(int degree) {
  if (degree < 3) throw ConfigError("regular tree needs degree >= 3, got " + std::to_string(degree));
  return Space(SpaceKind::RegularTree, degree);
}

Space Space::tree_with_end(int degree) {
  if (degree < 3) throw ConfigError("tree with end needs degree >= 3, got " + std::to_string(degree));
  return Space(SpaceKind::TreeWithEnd, degree);
}

namespace {

int parse_degree(std::string_view digits, std::string_view whole) {
  int d = 0;
  auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), d);
  if (ec != std::errc{} || ptr != digits.data() + digits.size() || digits.empty())
    throw ConfigError("unknown space '" + std::string(whole) + "'");
  return d;
}

}  // namespace

Space Space::parse(std::string_view name) {
  if (name == "line") return line();
  if (name == "subdivided-line") return subdivided_line();
  if (name.starts_with("tree-end")) return tree_with_end(parse_degree(name.substr(8), name));
  if (name.starts_with("tree")) return regular_tree(parse_degree(name.substr(4), name));
  throw ConfigError("unknown space '" + std::string(name) +
                    "' (expected line, subdivided-line, treeD or tree-endD)");
}

std::string Space::name() const {
  switch (kind_) {
    case SpaceKind::Line: return "line";
    case SpaceKind::SubdividedLine: return "subdivided-line";
    case SpaceKind::RegularTree: return "tree" + std::to_string(degree_);
    case SpaceKind::TreeWithEnd: return "tree-end" + std::to_string(degree_);
  }
  return "?";
}

std::vector<VertexId> Space::representatives() const {
  if (kind_ == SpaceKind::SubdividedLine) return {subdivided_site(0), subdivided_midpoint(0)};
  return {origin()};
}

bool Space::is_valid(const VertexId& v) const noexcept {
  if (!is_tree()) return v.word.empty();
  if (v.head < 0) return false;
  for (std::uint8_t c : v.word)
    if (c >= degree_ - 1) return false;
  if (v.head > 0 && !v.word.empty() && v.word.front() == 0) return false;
  return true;
}

void Space::validate(const VertexId& v) const {
  if (!is_valid(v)) {
    std::string label = std::to_string(v.head) + ":";
    for (std::size_t i = 0; i < v.word.size(); ++i)
      label += (i ? "," : "") + std::to_string(v.word[i]);
    throw InvalidVertexError("invalid vertex '" + label + "' for space " + name());
  }
}

VertexId Space::parent(const VertexId& v) const {
  if (!is_tree()) throw DomainError("parent() is defined on tree spaces only");
  VertexId p = v;
  if (p.word.empty()) {
    ++p.head;
  } else {
    p.word.pop_back();
  }
  return p;
}

VertexId Space::child(const VertexId& v, int letter) const {
  if (!is_tree()) throw DomainError("child() is defined on tree spaces only");
  if (letter < 0 || letter >= degree_ - 1) throw DomainError("child letter out of range");
  if (v.head > 0 && v.word.empty() && letter == 0) return VertexId{v.head - 1, {}};
  VertexId c = v;
  c.word.push_back(static_cast<std::uint8_t>(letter));
  return c;
}

Neighbors Space::neighbors(const VertexId& v) const {
  validate(v);
  Neighbors out;
  if (!is_tree()) {
    out.push_back(VertexId{v.head - 1, {}});
    out.push_back(VertexId{v.head + 1, {}});
    return out;
  }
  out.push_back(parent(v));
  for (int c = 0; c < degree_ - 1; ++c) out.push_back(child(v, c));
  return out;
}

bool Space::adjacent(const VertexId& x, const VertexId& y) const {
  validate(x);
  validate(y);
  if (!is_tree()) return x.head - y.head == 1 || y.head - x.head == 1;
  return parent(x) == y || parent(y) == x;
}

int Space::orbit_of(const VertexId& v) const {
  validate(v);
  if (kind_ == SpaceKind::SubdividedLine) return (v.head % 2 == 0) ? 1 : 2;
  return 1;
}

StabWeightRatio Space::m_ratio(const VertexId& x, const VertexId& y) const {
  if (x == y) {
    validate(x);
    return StabWeightRatio::one();
  }
  if (!adjacent(x, y)) throw DomainError("m_ratio requires adjacent vertices");
  if (kind_ != SpaceKind::TreeWithEnd) return StabWeightRatio::one();
  // The stabilizer of x fixes its parent; the stabilizer of the parent
  // moves x among D-1 siblings. Hence m(parent)/m(x) = D-1.
  return StabWeightRatio::power(degree_ - 1, parent(x) == y ? 1 : -1);
}

StabWeightRatio Space::m_ratio_between(const VertexId& x, const VertexId& y) const {
  validate(x);
  validate(y);
  if (kind_ != SpaceKind::TreeWithEnd) return StabWeightRatio::one();
  return StabWeightRatio::power(degree_ - 1, level(y) - level(x));
}

std::int64_t Space::level(const VertexId& v) const {
  if (!is_tree()) throw DomainError("Busemann level is defined on tree spaces only");
  validate(v);
  return v.head - static_cast<std::int64_t>(v.word.size());
}

Word Space::full_word(const VertexId& v, std::int64_t up) const {
  Word w(static_cast<std::size_t>(up - v.head), 0);
  w.insert(w.end(), v.word.begin(), v.word.end());
  return w;
}

int Space::distance(const VertexId& x, const VertexId& y) const {
  validate(x);
  validate(y);
  if (!is_tree()) return static_cast<int>(x.head > y.head ? x.head - y.head : y.head - x.head);
  const std::int64_t up = std::max(x.head, y.head);
  const Word fx = full_word(x, up);
  const Word fy = full_word(y, up);
  std::size_t p = 0;
  while (p < fx.size() && p < fy.size() && fx[p] == fy[p]) ++p;
  return static_cast<int>((fx.size() - p) + (fy.size() - p));
}

std::vector<VertexId> Space::path(const VertexId& x, const VertexId& y) const {
  validate(x);
  validate(y);
  std::vector<VertexId> out{x};
  if (!is_tree()) {
    const std::int64_t step = y.head >= x.head ? 1 : -1;
    for (std::int64_t h = x.head; h != y.head;) {
      h += step;
      out.push_back(VertexId{h, {}});
    }
    return out;
  }
  const std::int64_t up = std::max(x.head, y.head);
  const Word fx = full_word(x, up);
  const Word fy = full_word(y, up);
  std::size_t p = 0;
  while (p < fx.size() && p < fy.size() && fx[p] == fy[p]) ++p;
  VertexId cur = x;
  for (std::size_t i = p; i < fx.size(); ++i) {
    cur = parent(cur);
    out.push_back(cur);
  }
  for (std::size_t i = p; i < fy.size(); ++i) {
    cur = child(cur, fy[i]);
    out.push_back(cur);
  }
  return out;
}

std::vector<VertexId> Space::ball(const VertexId& center, int r) const {
  validate(center);
  std::vector<VertexId> out{center};
  if (r <= 0) return out;
  // Breadth-first over a tree: remember the predecessor instead of a visited set.
  std::vector<std::size_t> from{static_cast<std::size_t>(-1)};
  std::size_t begin = 0;
  for (int d = 0; d < r; ++d) {
    const std::size_t end = out.size();
    for (std::size_t i = begin; i < end; ++i) {
      for (auto& nb : neighbors(out[i])) {
        if (from[i] != static_cast<std::size_t>(-1) && nb == out[from[i]]) continue;
        out.push_back(std::move(nb));
        from.push_back(i);
      }
    }
    begin = end;
  }
  return out;
}

std::size_t Space::ball_size(int r) const {
  if (r <= 0) return 1;
  if (!is_tree()) return static_cast<std::size_t>(2 * r + 1);
  std::size_t total = 1;
  std::size_t shell = static_cast<std::size_t>(degree_);
  for (int d = 1; d <= r; ++d) {
    total += shell;
    shell *= static_cast<std::size_t>(degree_ - 1);
  }
  return total;
}

EdgeId Space::edge(const VertexId& x, const VertexId& y) const {
  if (!adjacent(x, y)) throw DomainError("edge() requires adjacent vertices");
  if (!is_tree()) return x.head < y.head ? EdgeId{x, y} : EdgeId{y, x};
  return parent(x) == y ? EdgeId{x, y} : EdgeId{y, x};
}

std::string Space::format(const VertexId& v) const {
  validate(v);
  switch (kind_) {
    case SpaceKind::Line: return std::to_string(v.head);
    case SpaceKind::SubdividedLine:
      if (v.head % 2 == 0) return std::to_string(v.head / 2);
      return std::to_string((v.head - 1) / 2) + "+1/2";
    default: break;
  }
  std::string s = std::to_string(v.head) + ":";
  for (std::size_t i = 0; i < v.word.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(v.word[i]);
  }
  return s;
}

namespace {

std::int64_t parse_int(std::string_view s) {
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty())
    throw InvalidVertexError("malformed vertex label '" + std::string(s) + "'");
  return v;
}

}  // namespace

VertexId Space::parse_vertex(std::string_view text) const {
  VertexId v;
  if (!is_tree()) {
    if (kind_ == SpaceKind::SubdividedLine && text.ends_with("+1/2")) {
      v.head = 2 * parse_int(text.substr(0, text.size() - 4)) + 1;
    } else {
      v.head = parse_int(text);
      if (kind_ == SpaceKind::SubdividedLine) v.head *= 2;
    }
    return v;
  }
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) throw InvalidVertexError("malformed tree label '" + std::string(text) + "'");
  v.head = parse_int(text.substr(0, colon));
  std::string_view rest = text.substr(colon + 1);
  while (!rest.empty()) {
    const auto comma = rest.find(',');
    const std::int64_t letter = parse_int(rest.substr(0, comma));
    if (letter < 0 || letter > 255) throw InvalidVertexError("tree letter out of range");
    v.word.push_back(static_cast<std::uint8_t>(letter));
    if (comma == std::string_view::npos) break;
    rest = rest.substr(comma + 1);
  }
  validate(v);
  return v;
}

void Space::append_key(const VertexId& v, std::vector<std::uint8_t>& out) const {
  const auto head = static_cast<std::uint64_t>(v.head);
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<std::uint8_t>(head >> (8 * i)));
  out.insert(out.end(), v.word.begin(), v.word.end());
}

}  // namespace rwrers
