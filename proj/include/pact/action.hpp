#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

namespace pact {

enum class ChannelClass { controllable, uncontrollable };

struct ChannelDecl {
  std::string name;
  ChannelClass cls = ChannelClass::uncontrollable;
};

// Channel name -> class, resolved once per model.
using ChannelClasses = std::map<std::string, ChannelClass>;

inline size_t hash_combine(size_t seed, size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ull + (seed << 6) + (seed >> 2));
}

// Generic communication action c!m?n(d): the outcome of m sends and n
// receives of datum d on channel c. m = n = 0 is a basic event.
struct Action {
  std::string channel;
  int sends = 0;
  int receives = 0;
  std::optional<std::string> datum;

  bool is_basic() const { return sends == 0 && receives == 0; }

  auto key() const { return std::tie(channel, sends, receives, datum); }
  bool operator==(const Action& o) const { return key() == o.key(); }
  bool operator<(const Action& o) const { return key() < o.key(); }

  // Shorthand forms mirror the usual handshaking notation: c?(d), c!(d),
  // c!?(d). `compact` falls back to c!m?n(d) for other shapes.
  std::string str(bool compact = true) const {
    std::string s = channel;
    if (sends == 0 && receives == 0) {
      // basic event
    } else if (compact && sends == 0 && receives == 1) {
      s += "?";
    } else if (compact && sends == 1 && receives == 0) {
      s += "!";
    } else if (compact && sends == 1 && receives == 1) {
      s += "!?";
    } else {
      s += "!" + std::to_string(sends) + "?" + std::to_string(receives);
    }
    if (datum) s += "(" + *datum + ")";
    return s;
  }
};

inline size_t hash_value(const Action& a) {
  size_t h = std::hash<std::string>{}(a.channel);
  h = hash_combine(h, (size_t)a.sends);
  h = hash_combine(h, (size_t)a.receives);
  if (a.datum) h = hash_combine(h, std::hash<std::string>{}(*a.datum));
  return h;
}

struct ActionHash {
  size_t operator()(const Action& a) const { return hash_value(a); }
};

inline bool is_uncontrollable(const ChannelClasses& classes, const Action& a) {
  auto it = classes.find(a.channel);
  return it != classes.end() && it->second == ChannelClass::uncontrollable;
}

// Encapsulation pattern (c, m, n[, d]). A pattern without datum blocks the
// shape for every datum; with a datum it blocks only actions carrying it.
struct EncapPattern {
  std::string channel;
  int sends = 0;
  int receives = 0;
  std::optional<std::string> datum;

  bool blocks(const Action& a) const {
    if (a.channel != channel || a.sends != sends || a.receives != receives)
      return false;
    return !datum || a.datum == datum;
  }

  auto key() const { return std::tie(channel, sends, receives, datum); }
  bool operator==(const EncapPattern& o) const { return key() == o.key(); }
  bool operator<(const EncapPattern& o) const { return key() < o.key(); }

  std::string str() const {
    std::string s = channel;
    if (sends == 0 && receives == 1) {
      s += "?";
    } else if (sends == 1 && receives == 0) {
      s += "!";
    } else if (sends == 1 && receives == 1) {
      s += "!?";
    } else if (sends != 0 || receives != 0) {
      s += "!" + std::to_string(sends) + "?" + std::to_string(receives);
    }
    if (datum) s += "(" + *datum + ")";
    return s;
  }
};

inline bool blocked_by(const std::vector<EncapPattern>& patterns,
                       const Action& a) {
  for (const auto& p : patterns)
    if (p.blocks(a)) return true;
  return false;
}

// One renaming entry: actions matching (channel, sends, receives) and the
// optional datum filter are mapped to the target shape, datum preserved.
struct RenameEntry {
  std::string channel;
  int sends = 0;
  int receives = 0;
  std::optional<std::string> datum_filter;
  std::string to_channel;
  int to_sends = 0;
  int to_receives = 0;

  bool matches(const Action& a) const {
    if (a.channel != channel || a.sends != sends || a.receives != receives)
      return false;
    return !datum_filter || a.datum == datum_filter;
  }

  bool operator==(const RenameEntry& o) const {
    return channel == o.channel && sends == o.sends &&
           receives == o.receives && datum_filter == o.datum_filter &&
           to_channel == o.to_channel && to_sends == o.to_sends &&
           to_receives == o.to_receives;
  }
};

// Finite renaming of action shapes, identity outside its domain. First
// matching entry wins.
class RenamingMap {
 public:
  RenamingMap() = default;
  explicit RenamingMap(std::vector<RenameEntry> entries)
      : entries_(std::move(entries)) {}

  Action apply(const Action& a) const {
    for (const auto& e : entries_) {
      if (e.matches(a))
        return Action{e.to_channel, e.to_sends, e.to_receives, a.datum};
    }
    return a;
  }

  const std::vector<RenameEntry>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }

  bool operator==(const RenamingMap& o) const { return entries_ == o.entries_; }

 private:
  std::vector<RenameEntry> entries_;
};

}  // namespace pact
