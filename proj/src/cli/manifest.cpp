#include <chrono>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iterator>
#include <ostream>

#include <fmt/format.h>

#include "commands.hpp"
#include "syssamp/cli.hpp"
#include "syssamp/error.hpp"

namespace syssamp::cli {

Format parse_format(const std::string& name) {
  if (name == "text") return Format::Text;
  if (name == "csv") return Format::Csv;
  if (name == "json") return Format::Json;
  throw ConfigError("unknown format '" + name + "' (text, csv, json)");
}

std::string hex64(std::uint64_t v) { return fmt::format("{:016x}", v); }

std::string file_hash(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open '" + path + "'");
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (std::istreambuf_iterator<char> it(in), end; it != end; ++it) {
    h ^= static_cast<unsigned char>(*it);
    h *= 0x100000001b3ULL;
  }
  return hex64(h);
}

namespace {

std::string iso_utc(std::time_t t) {
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace

std::string resolve_timestamp(const std::string& flag) {
  if (!flag.empty()) return flag;
  if (const char* epoch = std::getenv("SOURCE_DATE_EPOCH")) {
    char* end = nullptr;
    const long long v = std::strtoll(epoch, &end, 10);
    if (end && *end == '\0' && end != epoch) return iso_utc(static_cast<std::time_t>(v));
  }
  return iso_utc(std::chrono::system_clock::to_time_t(std::chrono::system_clock::now()));
}

nlohmann::ordered_json RunManifest::to_json() const {
  nlohmann::ordered_json j;
  j["command"] = command;
  j["argv"] = argv;
  if (!input_path.empty()) j["input"] = {{"path", input_path}, {"fnv1a64", input_hash}};
  j["parameters"] = parameters;
  if (seed) j["seed"] = *seed;
  j["version"] = version;
  j["timestamp"] = timestamp;
  return j;
}

RunManifest RunManifest::from_json(const nlohmann::json& j) {
  const nlohmann::json& m = j.contains("manifest") ? j.at("manifest") : j;
  RunManifest r;
  try {
    r.command = m.at("command").get<std::string>();
    r.argv = m.at("argv").get<std::vector<std::string>>();
    if (m.contains("input")) {
      r.input_path = m.at("input").at("path").get<std::string>();
      r.input_hash = m.at("input").at("fnv1a64").get<std::string>();
    }
    if (m.contains("seed")) r.seed = m.at("seed").get<std::uint64_t>();
    r.version = m.value("version", "");
    r.timestamp = m.at("timestamp").get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("malformed manifest: ") + e.what());
  }
  return r;
}

void RunManifest::write_comment_block(std::ostream& out) const {
  out << "# command: " << command << '\n';
  if (!input_path.empty()) out << "# input: " << input_path << " (fnv1a64 " << input_hash << ")\n";
  for (const auto& [key, value] : parameters.items()) {
    out << "# " << key << ": " << (value.is_string() ? value.get<std::string>() : value.dump())
        << '\n';
  }
  if (seed) out << "# seed: " << *seed << '\n';
  out << "# version: " << version << '\n';
  out << "# timestamp: " << timestamp << '\n';
}

}  // namespace syssamp::cli
