#include <charconv>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "qnlp/compiler.hpp"
#include "qnlp/error.hpp"

namespace qnlp {
namespace {

constexpr std::string_view kMagic = "# qnlp-params";

[[noreturn]] void fail(const std::string& source, int line_no, const std::string& what) {
  throw Error(ErrorKind::Config, source + ":" + std::to_string(line_no) + ": " + what);
}

std::string format_angle(double x) {
  char buf[32];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
  return std::string(buf, end);
}

} // namespace

void write_checkpoint(std::ostream& out, const ParameterStore& store) {
  out << kMagic << " depth=" << store.config().depth
      << " qubits_per_n=" << store.config().qubits_per_n << " seed=" << store.seed << '\n';
  for (const auto& [key, slice] : store.slices()) {
    out << key.first << '\t' << to_string(key.second) << '\t';
    for (int i = 0; i < slice.count; ++i) {
      if (i) out << ',';
      out << format_angle(store.values()[slice.offset + i]);
    }
    out << '\n';
  }
}

void write_checkpoint_file(const std::string& path, const ParameterStore& store) {
  // write-then-rename so a crash mid-write never leaves a truncated checkpoint
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) throw Error(ErrorKind::Io, "cannot write '" + tmp + "'");
    write_checkpoint(out, store);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    throw Error(ErrorKind::Io, "cannot rename '" + tmp + "' to '" + path + "'");
}

ParameterStore read_checkpoint(std::istream& in, const std::string& source) {
  std::string line;
  if (!std::getline(in, line) || line.rfind(kMagic, 0) != 0)
    fail(source, 1, "missing '# qnlp-params' header");

  AnsatzConfig config;
  std::uint64_t seed = 0;
  std::istringstream header(line.substr(kMagic.size()));
  for (std::string kv; header >> kv;) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) fail(source, 1, "bad header field '" + kv + "'");
    const auto key = kv.substr(0, eq);
    const auto value = kv.substr(eq + 1);
    try {
      if (key == "depth") config.depth = std::stoi(value);
      else if (key == "qubits_per_n") config.qubits_per_n = std::stoi(value);
      else if (key == "seed") seed = std::stoull(value);
      else fail(source, 1, "unknown header field '" + key + "'");
    } catch (const std::logic_error&) {
      fail(source, 1, "bad value in '" + kv + "'");
    }
  }

  std::vector<std::tuple<std::string, PartOfSpeech, std::vector<double>>> rows;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto t1 = line.find('\t');
    const auto t2 = t1 == std::string::npos ? t1 : line.find('\t', t1 + 1);
    if (t2 == std::string::npos) fail(source, line_no, "expected token<TAB>pos<TAB>angles");
    auto pos = parse_pos(line.substr(t1 + 1, t2 - t1 - 1));
    if (!pos) fail(source, line_no, "unknown part of speech");
    std::vector<double> angles;
    const std::string list = line.substr(t2 + 1);
    std::size_t start = 0;
    while (start < list.size()) {
      auto end = list.find(',', start);
      if (end == std::string::npos) end = list.size();
      double x = 0;
      auto [ptr, ec] = std::from_chars(list.data() + start, list.data() + end, x);
      if (ec != std::errc() || ptr != list.data() + end) fail(source, line_no, "bad angle");
      angles.push_back(x);
      start = end + 1;
    }
    rows.emplace_back(line.substr(0, t1), *pos, std::move(angles));
  }

  std::vector<WordKey> keys;
  for (const auto& [token, pos, angles] : rows) keys.emplace_back(token, pos);
  ParameterStore store(keys, config);
  store.seed = seed;
  for (const auto& [token, pos, angles] : rows) {
    try {
      store.set_angles(token, pos, angles);
    } catch (const Error& e) {
      throw Error(ErrorKind::CheckpointMismatch, source + ": " + e.what());
    }
  }
  return store;
}

ParameterStore read_checkpoint_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot open '" + path + "'");
  return read_checkpoint(in, path);
}

} // namespace qnlp
