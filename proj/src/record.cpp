#include "semiq/record.hpp"

#include <array>

#include "semiq/error.hpp"

namespace semiq {

namespace {

constexpr std::array<std::string_view, 4> kMethods{"closed-form", "prop2.2", "generic", "oracle"};

[[noreturn]] void bad_record(const std::string& what) {
  throw Error(ErrorKind::Config, "malformed output record: " + what);
}

template <typename T>
T field(const nlohmann::json& j, const char* key) {
  if (!j.contains(key)) bad_record(std::string("missing '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    bad_record(std::string("field '") + key + "' has the wrong type");
  }
}

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

}  // namespace

bool is_method_tag(std::string_view tag) {
  for (auto m : kMethods) {
    if (m == tag) return true;
  }
  return false;
}

nlohmann::json to_json(const OutputRecord& r) {
  nlohmann::json j{{"input", r.input}, {"p", r.p}, {"method", r.method}, {"frobenius", r.frobenius}};
  j["genus"] = r.genus ? nlohmann::json(*r.genus) : nlohmann::json(nullptr);
  if (r.apery) j["apery"] = *r.apery;
  if (r.verified) j["verified"] = *r.verified;
  return j;
}

OutputRecord record_from_json(const nlohmann::json& j) {
  if (!j.is_object()) bad_record("not an object");
  OutputRecord r;
  if (!j.contains("input") || !j.at("input").is_object()) bad_record("missing 'input' object");
  r.input = j.at("input");
  r.p = field<Int>(j, "p");
  r.method = field<std::string>(j, "method");
  if (!is_method_tag(r.method)) bad_record("unknown method '" + r.method + "'");
  r.frobenius = field<Int>(j, "frobenius");
  if (!j.contains("genus")) bad_record("missing 'genus'");
  if (!j.at("genus").is_null()) r.genus = field<Int>(j, "genus");
  if (j.contains("apery")) r.apery = field<std::vector<Int>>(j, "apery");
  if (j.contains("verified")) r.verified = field<bool>(j, "verified");
  return r;
}

std::string input_label(const OutputRecord& r) {
  const auto& in = r.input;
  if (in.contains("generators")) {
    std::string s;
    for (const auto& g : in.at("generators")) {
      if (!s.empty()) s += ',';
      s += std::to_string(g.get<Int>());
    }
    return s;
  }
  if (in.contains("family")) {
    std::string s = in.at("family").get<std::string>();
    for (const char* key : {"a", "h", "d", "K", "k"}) {
      if (in.contains(key)) s += std::string(" ") + key + "=" + std::to_string(in.at(key).get<Int>());
    }
    if (in.contains("B")) {
      s += " B=";
      bool first = true;
      for (const auto& b : in.at("B")) {
        if (!first) s += ',';
        s += std::to_string(b.get<Int>());
        first = false;
      }
    }
    return s;
  }
  return in.dump();
}

void write_csv_header(std::ostream& os) { os << "input,p,method,frobenius,genus\n"; }

void write_csv_row(std::ostream& os, const OutputRecord& r) {
  os << csv_quote(input_label(r)) << ',' << r.p << ',' << r.method << ',' << r.frobenius << ',';
  if (r.genus) os << *r.genus;
  os << '\n';
}

void write_text(std::ostream& os, const OutputRecord& r) {
  os << "input      " << input_label(r) << '\n';
  if (r.p != 1 || r.input.contains("family")) os << "p          " << r.p << '\n';
  os << "method     " << r.method << '\n';
  os << "frobenius  " << r.frobenius << '\n';
  os << "genus      " << (r.genus ? std::to_string(*r.genus) : std::string("null")) << '\n';
  if (r.verified) os << "verified   " << (*r.verified ? "yes" : "NO") << '\n';
  if (r.apery) {
    os << "apery      (" << r.apery->size() << " entries)\n";
    for (std::size_t i = 0; i < r.apery->size(); ++i) {
      os << "  " << i << '\t' << (*r.apery)[i] << '\n';
    }
  }
}

}  // namespace semiq
