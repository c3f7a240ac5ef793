#pragma once

// Flat key=value experiment configuration, its canonical text form and hash.

#include <charconv>
#include <cstdint>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace rieszkit {

inline constexpr const char* kLibraryVersion = "1.0.0";

/// Per-module version tags embedded in every report.
inline const std::map<std::string, std::string>& module_versions() {
  static const std::map<std::string, std::string> v{
      {"clifford", "1.0"},           {"boundary_geometry", "1.0"}, {"harmonic_polynomials", "1.0"},
      {"singular_operators", "1.1"}, {"regularity_metrics", "1.0"}, {"experiment_cli", "1.0"}};
  return v;
}

/// 64-bit FNV-1a.
inline std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

inline std::string hex64(std::uint64_t h) {
  static const char* digits = "0123456789abcdef";
  std::string s(16, '0');
  for (int k = 15; k >= 0; --k, h >>= 4) s[static_cast<std::size_t>(k)] = digits[h & 0xf];
  return s;
}

/// Shortest round-trip decimal form.
inline std::string format_double(double v) {
  char buf[64];
  auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

inline double parse_double(const std::string& key, const std::string& s) {
  double v = 0.0;
  auto r = std::from_chars(s.data(), s.data() + s.size(), v);
  if (r.ec != std::errc{} || r.ptr != s.data() + s.size()) throw std::invalid_argument("config: " + key + " is not a number: '" + s + "'");
  return v;
}

inline long parse_long(const std::string& key, const std::string& s) {
  long v = 0;
  auto r = std::from_chars(s.data(), s.data() + s.size(), v);
  if (r.ec != std::errc{} || r.ptr != s.data() + s.size()) throw std::invalid_argument("config: " + key + " is not an integer: '" + s + "'");
  return v;
}

struct ExperimentConfig {
  std::string command;
  std::string family = "ellipse";  // ellipse | sphere | square | bump_circle
  double a = 2.0, b = 1.0;         // ellipse semi-axes
  double radius = 1.0;             // sphere
  double side = 2.0;               // square
  double bump_alpha = 0.5, bump_A = 1.5, bump_width = 1.0;
  bool exterior = false;
  int n = 3;                       // Clifford / polynomial dimension
  int N = 2048;                    // curve nodes (sphere: n_phi = N/32, n_theta = N/16 unless set)
  int n_phi = 0, n_theta = 0;
  std::vector<int> levels{256, 1024, 4096};
  double jitter = 0.0;             // regularity: node jitter in parameter steps
  std::string op = "riesz";        // riesz | normal | recover_normal
  double alpha = 0.5, p = 2.0, s = 0.5;
  std::string poly;
  std::string modes;               // "l=3:1.0,l=5:0.2" (sin coefficient after a second ':')
  std::string mschedule = "l2";    // l2 | l | const:<c>
  int lmax = 9;
  std::string out;                 // output directory; empty = stdout only
  bool deterministic = false;
  double tol_scale = 1.0;
  std::uint64_t seed = 20240601;
  int threads = 1;
  int random_pairs = 10000;
  std::string inject_fault;        // "e1,e2" flips the sign of e1*e2 in verify-clifford
  std::string mesh_action = "emit";  // emit | inspect
  std::string mesh_file;

  void set(const std::string& key, const std::string& v) {
    auto as_bool = [&]() {
      if (v == "1" || v == "true") return true;
      if (v == "0" || v == "false") return false;
      throw std::invalid_argument("config: " + key + " expects true/false");
    };
    if (key == "command") command = v;
    else if (key == "family") family = v;
    else if (key == "a") a = parse_double(key, v);
    else if (key == "b") b = parse_double(key, v);
    else if (key == "radius") radius = parse_double(key, v);
    else if (key == "side") side = parse_double(key, v);
    else if (key == "bump_alpha") bump_alpha = parse_double(key, v);
    else if (key == "bump_A") bump_A = parse_double(key, v);
    else if (key == "bump_width") bump_width = parse_double(key, v);
    else if (key == "exterior") exterior = as_bool();
    else if (key == "n") n = static_cast<int>(parse_long(key, v));
    else if (key == "N") N = static_cast<int>(parse_long(key, v));
    else if (key == "n_phi") n_phi = static_cast<int>(parse_long(key, v));
    else if (key == "n_theta") n_theta = static_cast<int>(parse_long(key, v));
    else if (key == "levels") {
      levels.clear();
      std::stringstream ss(v);
      std::string item;
      while (std::getline(ss, item, ',')) levels.push_back(static_cast<int>(parse_long(key, item)));
    } else if (key == "jitter") jitter = parse_double(key, v);
    else if (key == "op") op = v;
    else if (key == "alpha") alpha = parse_double(key, v);
    else if (key == "p") p = parse_double(key, v);
    else if (key == "s") s = parse_double(key, v);
    else if (key == "poly") poly = v;
    else if (key == "modes") modes = v;
    else if (key == "mschedule") mschedule = v;
    else if (key == "lmax") lmax = static_cast<int>(parse_long(key, v));
    else if (key == "out") out = v;
    else if (key == "deterministic") deterministic = as_bool();
    else if (key == "tol_scale") tol_scale = parse_double(key, v);
    else if (key == "seed") seed = static_cast<std::uint64_t>(parse_long(key, v));
    else if (key == "threads") threads = static_cast<int>(parse_long(key, v));
    else if (key == "random_pairs") random_pairs = static_cast<int>(parse_long(key, v));
    else if (key == "inject_fault") inject_fault = v;
    else if (key == "mesh_action") mesh_action = v;
    else if (key == "mesh_file") mesh_file = v;
    else throw std::invalid_argument("config: unknown key '" + key + "'");
  }

  /// Sorted key=value lines; reparsing this text reproduces it byte for byte.
  std::string canonical() const {
    std::map<std::string, std::string> kv{
        {"command", command},     {"family", family},
        {"a", format_double(a)},  {"b", format_double(b)},
        {"radius", format_double(radius)},
        {"side", format_double(side)},
        {"bump_alpha", format_double(bump_alpha)},
        {"bump_A", format_double(bump_A)},
        {"bump_width", format_double(bump_width)},
        {"exterior", exterior ? "true" : "false"},
        {"n", std::to_string(n)}, {"N", std::to_string(N)},
        {"n_phi", std::to_string(n_phi)},
        {"n_theta", std::to_string(n_theta)},
        {"jitter", format_double(jitter)},
        {"op", op},               {"alpha", format_double(alpha)},
        {"p", format_double(p)},  {"s", format_double(s)},
        {"poly", poly},           {"modes", modes},
        {"mschedule", mschedule}, {"lmax", std::to_string(lmax)},
        {"deterministic", deterministic ? "true" : "false"},
        {"tol_scale", format_double(tol_scale)},
        {"seed", std::to_string(seed)},
        {"random_pairs", std::to_string(random_pairs)},
        {"inject_fault", inject_fault},
        {"mesh_action", mesh_action},
        {"mesh_file", mesh_file}};
    std::string lv;
    for (std::size_t k = 0; k < levels.size(); ++k) lv += (k ? "," : "") + std::to_string(levels[k]);
    kv["levels"] = lv;
    // out and threads change where and how fast, not what: excluded from the canonical form
    std::string s;
    for (const auto& [k, v] : kv) s += k + "=" + v + "\n";
    return s;
  }

  std::uint64_t hash() const { return fnv1a(canonical()); }

  void validate() const {
    auto need = [](bool ok, const std::string& msg) {
      if (!ok) throw std::invalid_argument("config: " + msg);
    };
    need(family == "ellipse" || family == "sphere" || family == "square" || family == "bump_circle",
         "family must be ellipse, sphere, square or bump_circle");
    need(a > 0 && b > 0, "ellipse semi-axes must be positive");
    need(radius > 0 && side > 0, "radius and side must be positive");
    need(bump_alpha > 0 && bump_alpha < 1, "bump_alpha must lie in (0,1)");
    need(n >= 1 && n <= 6, "n must lie in 1..6");
    need(N >= 4 && N <= (1 << 20), "N must lie in 4..2^20");
    need(n_phi >= 0 && n_theta >= 0, "n_phi and n_theta must be nonnegative");
    need(levels.size() >= 3, "levels needs at least 3 entries");
    for (int L : levels) need(L >= 16 && L <= (1 << 16), "levels must lie in 16..65536");
    need(jitter >= 0 && jitter < 0.5, "jitter must lie in [0, 0.5)");
    need(op == "riesz" || op == "normal" || op == "recover_normal", "op must be riesz, normal or recover_normal");
    need(alpha > 0 && alpha < 1, "alpha must lie in (0,1)");
    need(p >= 1 && p < 1e6, "p must lie in [1, 1e6)");
    need(s > 0 && s < 1, "s must lie in (0,1)");
    need(lmax >= 1 && lmax <= 64, "lmax must lie in 1..64");
    need(mschedule == "l2" || mschedule == "l" || mschedule.rfind("const:", 0) == 0, "mschedule must be l2, l or const:<c>");
    need(tol_scale > 0 && tol_scale <= 1e6, "tol_scale must lie in (0, 1e6]");
    need(threads >= 1 && threads <= 256, "threads must lie in 1..256");
    need(random_pairs >= 1 && random_pairs <= 10000000, "random_pairs must lie in 1..1e7");
    need(mesh_action == "emit" || mesh_action == "inspect", "mesh_action must be emit or inspect");
  }
};

/// Parses key=value lines; '#' starts a comment, blank lines are skipped.
inline void apply_config_text(ExperimentConfig& c, const std::string& text) {
  std::stringstream ss(text);
  std::string line;
  int lineno = 0;
  while (std::getline(ss, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    auto trim = [](std::string x) {
      const auto b = x.find_first_not_of(" \t\r");
      if (b == std::string::npos) return std::string{};
      return x.substr(b, x.find_last_not_of(" \t\r") - b + 1);
    };
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("config line " + std::to_string(lineno) + ": expected key=value");
    c.set(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
}

inline void apply_config_file(ExperimentConfig& c, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("config: cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  apply_config_text(c, ss.str());
}

}  // namespace rieszkit
