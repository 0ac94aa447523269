#include "effcond/manifest.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace effcond {

std::string format_g17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void RunManifest::set(const std::string& key, double value) { set(key, format_g17(value)); }

void RunManifest::set(const std::string& key, long long value) {
  set(key, std::to_string(value));
}

std::vector<std::string> RunManifest::comment_lines() const {
  std::vector<std::string> out;
  out.push_back("command: " + command);
  out.push_back("version: " + std::string(kToolVersion));
  for (const auto& [k, v] : params) out.push_back(k + ": " + v);
  return out;
}

KeyValueWriter::KeyValueWriter(const RunManifest& manifest) {
  for (const std::string& line : manifest.comment_lines()) lines_.push_back("# " + line);
}

void KeyValueWriter::add(const std::string& key, double value) {
  lines_.push_back(key + "=" + format_g17(value));
}

void KeyValueWriter::add(const std::string& key, long long value) {
  lines_.push_back(key + "=" + std::to_string(value));
}

void KeyValueWriter::add(const std::string& key, const std::string& value) {
  lines_.push_back(key + "=" + value);
}

void KeyValueWriter::add_raw_line(const std::string& line) { lines_.push_back(line); }

std::string KeyValueWriter::str() const {
  std::string out;
  for (const std::string& line : lines_) {
    out += line;
    out += '\n';
  }
  return out;
}

void KeyValueWriter::write(const std::string& path) const {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write '" + path + "'");
  f << str();
}

}  // namespace effcond
