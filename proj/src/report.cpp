#include "medlex/report.hpp"

#include <algorithm>
#include <cstdint>

#include "medlex/text.hpp"

namespace medlex {

TextTable::TextTable(std::vector<std::string> header) : header_(std::move(header)) {}

void TextTable::add_row(std::vector<std::string> cells) {
  cells.resize(header_.size());
  rows_.push_back(std::move(cells));
}

void TextTable::add_rule() { rows_.emplace_back(); }

std::string TextTable::str() const {
  std::vector<std::size_t> width(header_.size(), 0);
  auto measure = [&](const std::vector<std::string>& row) {
    for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], utf8_length(row[c]));
  };
  measure(header_);
  for (const auto& r : rows_) measure(r);

  std::size_t total = 0;
  for (std::size_t w : width) total += w;
  total += 2 * (width.empty() ? 0 : width.size() - 1);

  std::string out;
  auto emit = [&](const std::vector<std::string>& row) {
    std::string line;
    for (std::size_t c = 0; c < row.size(); ++c) {
      const std::size_t pad = width[c] - utf8_length(row[c]);
      if (c) line += "  ";
      if (c == 0) {
        line += row[c];
        line.append(pad, ' ');
      } else {
        line.append(pad, ' ');
        line += row[c];
      }
    }
    while (!line.empty() && line.back() == ' ') line.pop_back();
    out += line;
    out += '\n';
  };
  emit(header_);
  out.append(total, '-');
  out += '\n';
  for (const auto& r : rows_) {
    if (r.empty()) {
      out.append(total, '-');
      out += '\n';
    } else {
      emit(r);
    }
  }
  return out;
}

__extension__ using u128 = unsigned __int128;

std::string format_fixed(std::size_t num, std::size_t den, std::size_t multiplier, int decimals) {
  if (den == 0) return "N/A";
  std::uint64_t scale = 1;
  for (int i = 0; i < decimals; ++i) scale *= 10;
  const auto scaled = static_cast<u128>(num) * multiplier * scale;
  const auto q = static_cast<std::uint64_t>((2 * scaled + den) / (2 * static_cast<u128>(den)));
  std::string out = std::to_string(q / scale);
  if (decimals > 0) {
    std::string frac = std::to_string(q % scale);
    out += '.';
    out.append(static_cast<std::size_t>(decimals) - frac.size(), '0');
    out += frac;
  }
  return out;
}

}  // namespace medlex
