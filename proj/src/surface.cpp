#include "flipgraph/surface.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <numeric>
#include <sstream>

#include "flipgraph/error.hpp"

namespace flipgraph {

namespace {

// Generated from data/exceptional_table.txt at configure time.
constexpr const char* kExceptionalTable =
#include "exceptional_table.inc"
    ;

[[noreturn]] void parse_error(std::string_view text, std::string_view token) {
  throw Error(ErrorKind::Parse, "bad surface signature '" + std::string(text) +
                                    "': unexpected token '" + std::string(token) + "'");
}

class SigParser {
 public:
  explicit SigParser(std::string_view text) : text_(text) {}

  SurfaceSig run() {
    expect('S');
    int genus = number();
    expect(',');
    int interior = number();
    std::vector<int> boundary;
    if (pos_ < text_.size()) {
      expect(',');
      expect('(');
      boundary.push_back(number());
      while (peek() == ',') {
        ++pos_;
        boundary.push_back(number());
      }
      expect(')');
    }
    if (pos_ != text_.size()) parse_error(text_, text_.substr(pos_));
    try {
      return SurfaceSig(genus, interior, std::move(boundary));
    } catch (const Error& e) {
      throw Error(ErrorKind::Parse, e.what());
    }
  }

 private:
  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

  std::string_view token_at(std::size_t p) const {
    if (p >= text_.size()) return "<end of input>";
    std::size_t e = p + 1;
    while (e < text_.size() && std::isalnum(static_cast<unsigned char>(text_[e])) &&
           std::isalnum(static_cast<unsigned char>(text_[p])))
      ++e;
    return text_.substr(p, e - p);
  }

  void expect(char c) {
    if (peek() != c) parse_error(text_, token_at(pos_));
    ++pos_;
  }

  int number() {
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) parse_error(text_, token_at(start));
    int value = 0;
    auto [ptr, ec] = std::from_chars(text_.data() + start, text_.data() + pos_, value);
    if (ec != std::errc()) parse_error(text_, text_.substr(start, pos_ - start));
    return value;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

SurfaceSig::SurfaceSig(int genus, int interior, std::vector<int> boundary)
    : genus_(genus), interior_(interior), boundary_(std::move(boundary)) {
  if (genus_ < 0 || interior_ < 0)
    throw Error(ErrorKind::InvalidSignature, "genus and interior point count must be nonnegative");
  for (int p : boundary_)
    if (p < 1)
      throw Error(ErrorKind::InvalidSignature,
                  "every boundary component needs at least one marked point");
  std::sort(boundary_.begin(), boundary_.end());
  if (marked_points() < 1)
    throw Error(ErrorKind::InvalidSignature, "surface needs at least one marked point");
}

int SurfaceSig::boundary_points() const {
  return std::accumulate(boundary_.begin(), boundary_.end(), 0);
}

std::string SurfaceSig::str() const {
  std::ostringstream out;
  out << 'S' << genus_ << ',' << interior_;
  if (!boundary_.empty()) {
    out << ",(";
    for (std::size_t i = 0; i < boundary_.size(); ++i) out << (i ? "," : "") << boundary_[i];
    out << ')';
  }
  return out.str();
}

SurfaceSig SurfaceSig::parse(std::string_view text) { return SigParser(text).run(); }

int complexity(const SurfaceSig& sig) {
  return 6 * sig.genus() + 3 * sig.boundary_components() + 3 * sig.interior() +
         sig.boundary_points() - 6;
}

namespace {

bool is_tiny_without_arcs(const SurfaceSig& s) {
  if (s.genus() != 0) return false;
  if (s.boundary().empty()) return s.interior() == 1;
  return s.interior() == 0 && s.boundary().size() == 1 && s.boundary()[0] <= 3;
}

bool is_twice_punctured_sphere(const SurfaceSig& s) {
  return s.genus() == 0 && s.interior() == 2 && s.boundary().empty();
}

}  // namespace

int arc_count(const SurfaceSig& sig) {
  if (is_tiny_without_arcs(sig)) return 0;
  if (is_twice_punctured_sphere(sig)) return 1;
  return complexity(sig);
}

int triangle_count(const SurfaceSig& sig) {
  if (is_twice_punctured_sphere(sig)) return 0;
  if (is_tiny_without_arcs(sig) && !(sig.interior() == 0 && sig.boundary() == std::vector<int>{3}))
    return 0;
  return (2 * arc_count(sig) + sig.boundary_points()) / 3;
}

bool is_simple(const SurfaceSig& s) {
  const auto& p = s.boundary();
  if (s.genus() == 1) {
    return (s.interior() == 1 && p.empty()) || (s.interior() == 0 && p == std::vector<int>{1});
  }
  if (s.genus() != 0) return false;
  if (p.empty()) return s.interior() >= 1 && s.interior() <= 4;
  if (p.size() == 1) {
    if (s.interior() <= 1) return true;
    return s.interior() == 2 && p[0] <= 2;
  }
  if (p.size() == 2 && s.interior() == 0) return p[1] <= 2;
  return false;
}

const std::vector<SurfaceSig>& exceptional_table() {
  static const std::vector<SurfaceSig> table = [] {
    std::vector<SurfaceSig> out;
    std::istringstream in(kExceptionalTable);
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty() || line[0] == '#') continue;
      out.push_back(SurfaceSig::parse(line));
    }
    std::sort(out.begin(), out.end());
    return out;
  }();
  return table;
}

bool is_exceptional(const SurfaceSig& sig) {
  const auto& table = exceptional_table();
  return std::binary_search(table.begin(), table.end(), sig);
}

}  // namespace flipgraph
