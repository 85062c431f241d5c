#include "urel/report_io.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <ostream>

namespace urel::io {

namespace {

std::string json_string(const std::string& s) { return nlohmann::json(s).dump(); }

std::string json_value(const Value& v) {
  struct Visitor {
    std::string operator()(double d) const {
      return std::isfinite(d) ? format_double(d) : "null";
    }
    std::string operator()(std::int64_t i) const { return std::to_string(i); }
    std::string operator()(std::uint64_t i) const { return std::to_string(i); }
    std::string operator()(bool b) const { return b ? "true" : "false"; }
    std::string operator()(const std::string& s) const { return json_string(s); }
  };
  return std::visit(Visitor{}, v);
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

std::string csv_value(const Value& v) {
  struct Visitor {
    std::string operator()(double d) const { return format_double(d); }
    std::string operator()(std::int64_t i) const { return std::to_string(i); }
    std::string operator()(std::uint64_t i) const { return std::to_string(i); }
    std::string operator()(bool b) const { return b ? "true" : "false"; }
    std::string operator()(const std::string& s) const { return csv_escape(s); }
  };
  return std::visit(Visitor{}, v);
}

void write_record(const Record& rec, std::ostream& out, const char* indent) {
  out << "{";
  for (std::size_t i = 0; i < rec.size(); ++i) {
    out << (i ? ",\n" : "\n") << indent << "  " << json_string(rec[i].first)
        << ": " << json_value(rec[i].second);
  }
  if (!rec.empty()) out << "\n" << indent;
  out << "}";
}

}  // namespace

std::string format_double(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

void write_json(const Document& doc, std::ostream& out) {
  out << "{\n  \"config\": ";
  write_record(doc.config, out, "  ");
  out << ",\n  \"rows\": [";
  for (std::size_t i = 0; i < doc.rows.size(); ++i) {
    out << (i ? ",\n    " : "\n    ");
    write_record(doc.rows[i], out, "    ");
  }
  if (!doc.rows.empty()) out << "\n  ";
  out << "],\n  \"summary\": ";
  write_record(doc.summary, out, "  ");
  out << ",\n  \"version\": " << json_string(kFormatVersion) << "\n}\n";
}

void write_csv(const Document& doc, std::ostream& out) {
  if (doc.rows.empty()) return;
  const Record& head = doc.rows.front();
  for (std::size_t i = 0; i < head.size(); ++i) {
    out << (i ? "," : "") << csv_escape(head[i].first);
  }
  out << "\n";
  for (const Record& row : doc.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      out << (i ? "," : "") << csv_value(row[i].second);
    }
    out << "\n";
  }
}

void append_report(Record& r, const UncertaintyReport& rep) {
  r.emplace_back("commutator_term", rep.commutator_term);
  r.emplace_back("anticommutator_term", rep.anticommutator_term);
  r.emplace_back("skew_product_term", rep.skew_product_term);
  r.emplace_back("m1_fwd", rep.m1_fwd);
  r.emplace_back("m1_rev", rep.m1_rev);
  r.emplace_back("m2_fwd", rep.m2_fwd);
  r.emplace_back("m2_rev", rep.m2_rev);
  r.emplace_back("m3_fwd", rep.m3_fwd);
  r.emplace_back("m3_rev", rep.m3_rev);
  r.emplace_back("M_thm22", rep.M_thm22);
  r.emplace_back("M_tilde_thm41", rep.M_tilde_thm41);
  r.emplace_back("lhs_heisenberg", rep.lhs_heisenberg);
  r.emplace_back("lhs_schrodinger", rep.lhs_schrodinger);
  r.emplace_back("lhs_thm21", rep.lhs_thm21);
  r.emplace_back("lhs_thm22", rep.lhs_thm22);
  r.emplace_back("lhs_thm41", rep.lhs_thm41);
  r.emplace_back("rhs", rep.rhs);
  for (Bound b : kAllBounds) {
    r.emplace_back("margin_" + std::string(bound_name(b)), rep.margins.get(b));
  }
  r.emplace_back("skew_info_A", rep.skew_info_A);
  r.emplace_back("skew_info_B", rep.skew_info_B);
  r.emplace_back("centered", rep.centered);
  std::string notes;
  for (const std::string& n : rep.notes) notes += (notes.empty() ? "" : ";") + n;
  r.emplace_back("notes", notes);
}

}  // namespace urel::io
