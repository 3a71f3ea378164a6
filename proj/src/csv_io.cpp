#include "mdm/csv_io.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

namespace mdm {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(',', start);
    out.push_back(trim(line.substr(start, pos == std::string_view::npos ? pos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

// Yields (line number, fields) for every content line.
class CsvReader {
 public:
  explicit CsvReader(std::istream& in) : in_(in) {}

  bool next(std::vector<std::string_view>& fields) {
    while (std::getline(in_, buffer_)) {
      ++line_;
      const auto t = trim(buffer_);
      if (t.empty() || t.front() == '#') continue;
      fields = split(t);
      return true;
    }
    return false;
  }
  std::size_t line() const { return line_; }

 private:
  std::istream& in_;
  std::string buffer_;
  std::size_t line_ = 0;
};

double parse_double(std::string_view s, std::size_t line) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v)) {
    throw ParseError("cannot parse '" + std::string(s) + "' as a number", line);
  }
  return v;
}

int parse_count(std::string_view s, std::size_t line) {
  int v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw ParseError("cannot parse '" + std::string(s) + "' as an integer count", line);
  }
  if (v < 0) throw ParseError("negative count " + std::string(s), line);
  return v;
}

}  // namespace

std::vector<LocusFrequencies> read_allele_frequencies(std::istream& in) {
  CsvReader reader(in);
  std::vector<std::string_view> f;
  if (!reader.next(f)) throw ParseError("empty allele frequency file", reader.line());
  if (f.size() != 3 || f[0] != "locus" || f[1] != "allele" || f[2] != "frequency") {
    throw ParseError("expected header 'locus,allele,frequency'", reader.line());
  }
  struct Pending {
    std::vector<double> probs;
    std::vector<std::string> labels;
    std::size_t first_line = 0;
  };
  std::vector<std::string> order;
  std::map<std::string, Pending> loci;
  while (reader.next(f)) {
    if (f.size() != 3) {
      throw ParseError("expected 3 fields, got " + std::to_string(f.size()), reader.line());
    }
    if (f[0].empty() || f[1].empty()) throw ParseError("empty locus or allele name", reader.line());
    const double q = parse_double(f[2], reader.line());
    if (q <= 0.0) throw ParseError("frequency must be positive", reader.line());
    auto [it, inserted] = loci.try_emplace(std::string(f[0]));
    if (inserted) {
      order.emplace_back(f[0]);
      it->second.first_line = reader.line();
    }
    for (const auto& existing : it->second.labels) {
      if (existing == f[1]) {
        throw ParseError("duplicate allele '" + existing + "' at locus " + it->first, reader.line());
      }
    }
    it->second.probs.push_back(q);
    it->second.labels.emplace_back(f[1]);
  }
  std::vector<LocusFrequencies> out;
  for (const auto& name : order) {
    auto& p = loci.at(name);
    try {
      out.push_back({name, AlleleFrequencies(std::move(p.probs), std::move(p.labels))});
    } catch (const ValidationError& e) {
      throw ParseError("locus " + name + ": " + e.what(), p.first_line);
    }
  }
  return out;
}

std::vector<NamedTable> read_tables(std::istream& in) {
  CsvReader reader(in);
  std::vector<std::string_view> f;
  if (!reader.next(f)) throw ParseError("empty table file", reader.line());
  const bool grouped = !f.empty() && f[0] == "table";
  const std::size_t lead = grouped ? 2 : 1;
  if (f.size() <= lead || f[lead - 1] != "profile") {
    throw ParseError(grouped ? "expected header 'table,profile,allele_1,...'"
                             : "expected header 'profile,allele_1,...'",
                     reader.line());
  }
  const std::size_t categories = f.size() - lead;

  std::vector<NamedTable> out;
  std::vector<std::string> ids;
  std::vector<std::vector<std::vector<int>>> rows;
  while (reader.next(f)) {
    if (f.size() != lead + categories) {
      throw ParseError("expected " + std::to_string(lead + categories) + " fields, got " +
                           std::to_string(f.size()),
                       reader.line());
    }
    const std::string id = grouped ? std::string(f[0]) : std::string("1");
    if (ids.empty() || ids.back() != id) {
      for (const auto& seen : ids) {
        if (seen == id) throw ParseError("rows of table '" + id + "' are not contiguous", reader.line());
      }
      ids.push_back(id);
      rows.emplace_back();
    }
    std::vector<int> row;
    row.reserve(categories);
    for (std::size_t k = lead; k < f.size(); ++k) row.push_back(parse_count(f[k], reader.line()));
    rows.back().push_back(std::move(row));
  }
  if (ids.empty()) throw ParseError("table file has no rows", reader.line());
  for (std::size_t t = 0; t < ids.size(); ++t) {
    out.push_back({ids[t], CountTable::from_rows(rows[t])});
  }
  return out;
}

std::string format_double(double v) {
  std::ostringstream s;
  s.precision(17);
  s << v;
  return s.str();
}

std::string csv_field(std::string_view v) {
  if (v.find_first_of(",\"") == std::string_view::npos) return std::string(v);
  std::string out = "\"";
  for (char c : v) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

void write_table(std::ostream& out, const CountTable& table, std::string_view id) {
  for (std::size_t i = 0; i < table.profiles(); ++i) {
    if (!id.empty()) out << csv_field(id) << ',';
    out << (i + 1);
    for (int c : table.row(i)) out << ',' << c;
    out << '\n';
  }
}

}  // namespace mdm
