#include "barscan/signal_io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "barscan/noise.hpp"

namespace barscan {

namespace {

constexpr std::string_view kMagic = "#barscan-signal v1";

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

template <typename T>
T parse_number(std::string_view text, std::string_view what) {
  T value{};
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end) {
    throw std::runtime_error("signal file: bad " + std::string(what) + " '" + std::string(text) + "'");
  }
  return value;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.back() == '\r' || s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  return s;
}

}  // namespace

void write_signal(std::ostream& out, const ScanSignal& signal) {
  out << kMagic << " m=" << signal.samples.size() << " r=" << signal.oversampling << '\n';
  const Provenance& p = signal.provenance;
  if (p.digits) out << "#digits=" << p.digits->to_string() << '\n';
  if (p.sigma) out << "#sigma=" << format_double(*p.sigma) << '\n';
  if (p.alpha) out << "#alpha=" << format_double(*p.alpha) << '\n';
  if (p.nu) out << "#nu=" << format_double(*p.nu) << '\n';
  if (p.xi) out << "#xi=" << format_double(*p.xi) << '\n';
  if (p.seed) out << "#seed=" << *p.seed << "\n#rng=" << kNoiseProcedure << '\n';
  for (double v : signal.samples) out << format_double(v) << '\n';
}

void write_signal(const std::filesystem::path& path, const ScanSignal& signal) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  write_signal(out, signal);
  if (!out) throw std::runtime_error("write failed for '" + path.string() + "'");
}

ScanSignal read_signal(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("signal file: empty input");
  std::string_view header = trim(line);
  if (header.substr(0, kMagic.size()) != kMagic) {
    throw std::runtime_error("signal file: expected '#barscan-signal v1' header");
  }

  std::size_t m = 0;
  int r = 0;
  bool have_m = false;
  bool have_r = false;
  std::istringstream fields{std::string(header.substr(kMagic.size()))};
  std::string field;
  while (fields >> field) {
    if (field.rfind("m=", 0) == 0) {
      m = parse_number<std::size_t>(std::string_view(field).substr(2), "m");
      have_m = true;
    } else if (field.rfind("r=", 0) == 0) {
      r = parse_number<int>(std::string_view(field).substr(2), "r");
      have_r = true;
    }
  }
  if (!have_m || !have_r) throw std::runtime_error("signal file: header must carry m= and r=");
  if (r <= 0 || m != kBarCount * static_cast<std::size_t>(r)) {
    throw std::runtime_error("signal file: m=" + std::to_string(m) + " inconsistent with r=" +
                             std::to_string(r));
  }

  ScanSignal signal;
  signal.oversampling = r;
  signal.samples.reserve(m);
  while (std::getline(in, line)) {
    std::string_view text = trim(line);
    if (text.empty()) continue;
    if (text.front() == '#') {
      const auto eq = text.find('=');
      if (eq == std::string_view::npos) continue;
      const std::string_view key = text.substr(1, eq - 1);
      const std::string_view value = text.substr(eq + 1);
      Provenance& p = signal.provenance;
      if (key == "digits") p.digits = DigitString::parse(value);
      else if (key == "sigma") p.sigma = parse_number<double>(value, key);
      else if (key == "alpha") p.alpha = parse_number<double>(value, key);
      else if (key == "nu") p.nu = parse_number<double>(value, key);
      else if (key == "xi") p.xi = parse_number<double>(value, key);
      else if (key == "seed") p.seed = parse_number<std::uint64_t>(value, key);
      continue;
    }
    signal.samples.push_back(parse_number<double>(text, "sample"));
  }
  if (signal.samples.size() != m) {
    throw std::runtime_error("signal file: expected " + std::to_string(m) + " samples, read " +
                             std::to_string(signal.samples.size()));
  }
  return signal;
}

ScanSignal read_signal(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path.string() + "'");
  try {
    return read_signal(in);
  } catch (const std::runtime_error& e) {
    throw std::runtime_error(path.string() + ": " + e.what());
  }
}

}  // namespace barscan
