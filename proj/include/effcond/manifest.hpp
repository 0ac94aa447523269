#pragma once

#include <map>
#include <string>
#include <vector>

namespace effcond {

inline constexpr const char* kToolVersion = "0.1.0";

// Parameters of a reproducible run, embedded as '#' comment lines at the top
// of every output file. Reruns with an identical manifest produce identical
// numeric output; wall-clock duration is reported on the console only.
struct RunManifest {
  std::string command;
  std::vector<std::pair<std::string, std::string>> params;

  void set(const std::string& key, const std::string& value) { params.emplace_back(key, value); }
  void set(const std::string& key, double value);
  void set(const std::string& key, long long value);

  std::vector<std::string> comment_lines() const;
};

// Locale-independent 17-significant-digit float formatting.
std::string format_g17(double v);

// key=value output block writer.
class KeyValueWriter {
 public:
  explicit KeyValueWriter(const RunManifest& manifest);
  void add(const std::string& key, double value);
  void add(const std::string& key, long long value);
  void add(const std::string& key, const std::string& value);
  void add_raw_line(const std::string& line);
  void write(const std::string& path) const;
  std::string str() const;

 private:
  std::vector<std::string> lines_;
};

}  // namespace effcond
