#include "medlex/model.hpp"

#include <array>
#include <charconv>
#include <stdexcept>

#include "medlex/text.hpp"

namespace medlex {

namespace {

constexpr std::array<std::string_view, kStrategyCount> kStrategyNames = {"SUFF", "KW_E", "KW_1N"};
constexpr std::array<std::string_view, kProvenanceCount> kProvenanceNames = {
    "SUFF", "KW_E", "KW_1N", "MULTI", "ITER", "UNMAPPED"};
constexpr std::array<std::string_view, 3> kTaggerNames = {"none", "conllu", "heuristic"};

// Accepts both the underscore and the hyphen spelling (KW-1N).
std::string canonical(std::string_view text) {
  std::string out(trim_ascii(text));
  for (char& ch : out) {
    if (ch == '-') ch = '_';
  }
  return out;
}

}  // namespace

std::string_view to_string(Strategy s) { return kStrategyNames.at(static_cast<std::size_t>(s)); }
std::string_view to_string(Provenance p) {
  return kProvenanceNames.at(static_cast<std::size_t>(p));
}
std::string_view to_string(Tagger t) { return kTaggerNames.at(static_cast<std::size_t>(t)); }

std::optional<Strategy> parse_strategy(std::string_view text) {
  const std::string key = canonical(text);
  for (std::size_t i = 0; i < kStrategyNames.size(); ++i) {
    if (kStrategyNames[i] == key) return static_cast<Strategy>(i);
  }
  return std::nullopt;
}

std::optional<Provenance> parse_provenance(std::string_view text) {
  const std::string key = canonical(text);
  for (std::size_t i = 0; i < kProvenanceNames.size(); ++i) {
    if (kProvenanceNames[i] == key) return static_cast<Provenance>(i);
  }
  return std::nullopt;
}

std::optional<Tagger> parse_tagger(std::string_view text) {
  const std::string_view key = trim_ascii(text);
  for (std::size_t i = 0; i < kTaggerNames.size(); ++i) {
    if (kTaggerNames[i] == key) return static_cast<Tagger>(i);
  }
  return std::nullopt;
}

std::string format_vote(const Vote& v) {
  std::string out(to_string(v.strategy));
  out += ':';
  out += to_string(v.category);
  out += ':';
  if (v.strategy == Strategy::Suff) out += '-';
  out += v.trigger;
  if (v.position) {
    out += ':';
    out += std::to_string(*v.position);
  }
  return out;
}

Vote parse_vote(std::string_view text) {
  const auto parts = split(text, ':');
  if (parts.size() != 3 && parts.size() != 4) {
    throw std::invalid_argument("malformed vote '" + std::string(text) + "'");
  }
  Vote v;
  const auto strategy = parse_strategy(parts[0]);
  const auto category = parse_category(parts[1]);
  if (!strategy || !category || !is_assignable(*category)) {
    throw std::invalid_argument("malformed vote '" + std::string(text) + "'");
  }
  v.strategy = *strategy;
  v.category = *category;
  std::string_view trigger = parts[2];
  if (v.strategy == Strategy::Suff && !trigger.empty() && trigger.front() == '-') {
    trigger.remove_prefix(1);
  }
  if (trigger.empty()) throw std::invalid_argument("vote without trigger '" + std::string(text) + "'");
  v.trigger = std::string(trigger);
  if (parts.size() == 4) {
    std::size_t pos = 0;
    const auto p = parts[3];
    auto [ptr, ec] = std::from_chars(p.data(), p.data() + p.size(), pos);
    if (ec != std::errc() || ptr != p.data() + p.size()) {
      throw std::invalid_argument("bad vote position in '" + std::string(text) + "'");
    }
    v.position = pos;
  }
  return v;
}

bool MappingOutcome::disagreement() const {
  for (const auto& v : votes) {
    if (v.category != votes.front().category) return true;
  }
  return false;
}

std::optional<std::string> check_outcome(const MappingOutcome& o) {
  if ((o.provenance == Provenance::Unmapped) != !o.category.has_value()) {
    return "provenance UNMAPPED must coincide with a missing category";
  }
  if (o.category && !is_assignable(*o.category)) return "OTHER is not an assignable category";
  std::array<int, kStrategyCount> seen{};
  for (const auto& v : o.votes) {
    if (++seen[static_cast<std::size_t>(v.strategy)] > 1) return "duplicate strategy among votes";
  }
  switch (o.provenance) {
    case Provenance::Multi:
      if (o.votes.size() < 2) return "MULTI requires at least two votes";
      for (const auto& v : o.votes) {
        if (v.category != *o.category) return "MULTI requires unanimous votes";
      }
      break;
    case Provenance::Suff:
    case Provenance::KwE:
    case Provenance::Kw1N: {
      bool found = false;
      for (const auto& v : o.votes) {
        if (provenance_of(v.strategy) == o.provenance) {
          found = true;
          if (v.category != *o.category) return "winning vote category differs from outcome";
        }
      }
      if (!found) return "winning strategy is not among the votes";
      break;
    }
    case Provenance::Iter:
      if (!o.votes.empty()) return "ITER outcomes carry no votes";
      break;
    case Provenance::Unmapped:
      if (!o.votes.empty()) return "UNMAPPED outcomes carry no votes";
      break;
  }
  return std::nullopt;
}

}  // namespace medlex
