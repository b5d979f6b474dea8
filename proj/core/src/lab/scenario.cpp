#include "skewlab/lab/scenario.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

namespace skewlab::lab {

namespace {

// Error raised inside a value, with an offset relative to the value start.
struct ValueError {
  std::size_t offset;
  std::string message;
};

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::string format_number(double v) {
  if (v == 0.0) v = 0.0;  // drop the sign of -0
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, r.ptr);
}

class Cursor {
 public:
  explicit Cursor(std::string_view s) : s_(s) {}

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool done() {
    skip_ws();
    return pos_ >= s_.size();
  }
  bool peek(char c) {
    skip_ws();
    return pos_ < s_.size() && s_[pos_] == c;
  }
  bool accept(char c) {
    if (!peek(c)) return false;
    ++pos_;
    return true;
  }
  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }
  double number() {
    skip_ws();
    const char* first = s_.data() + pos_;
    const char* last = s_.data() + s_.size();
    if (first != last && *first == '+') ++first;
    double v = 0.0;
    const auto r = std::from_chars(first, last, v);
    if (r.ec != std::errc{} || !std::isfinite(v)) fail("expected a finite number");
    pos_ = static_cast<std::size_t>(r.ptr - s_.data());
    return v;
  }
  std::int64_t integer() {
    skip_ws();
    const char* first = s_.data() + pos_;
    const char* last = s_.data() + s_.size();
    if (first != last && *first == '+') ++first;
    std::int64_t v = 0;
    const auto r = std::from_chars(first, last, v);
    if (r.ec != std::errc{}) fail("expected an integer");
    if (r.ptr != last && (*r.ptr == '.' || *r.ptr == 'e' || *r.ptr == 'E')) fail("expected an integer");
    pos_ = static_cast<std::size_t>(r.ptr - s_.data());
    return v;
  }
  [[noreturn]] void fail(const std::string& msg) const { throw ValueError{pos_, msg}; }
  std::size_t pos() const { return pos_; }

 private:
  std::string_view s_;
  std::size_t pos_ = 0;
};

std::uint64_t parse_unsigned(std::string_view text, std::uint64_t min_value) {
  Cursor c(text);
  const std::int64_t v = c.integer();
  if (!c.done()) c.fail("unexpected trailing characters");
  if (v < 0 || static_cast<std::uint64_t>(v) < min_value)
    throw ValueError{0, "value must be >= " + std::to_string(min_value)};
  return static_cast<std::uint64_t>(v);
}

double parse_positive(std::string_view text) {
  Cursor c(text);
  const double v = c.number();
  if (!c.done()) c.fail("unexpected trailing characters");
  if (!(v > 0.0)) throw ValueError{0, "value must be positive"};
  return v;
}

IntMatrix parse_matrix(std::string_view text) {
  Cursor c(text);
  std::vector<std::vector<std::int64_t>> rows(1);
  while (!c.done()) {
    if (c.accept(';')) {
      if (rows.back().empty()) c.fail("empty matrix row");
      rows.emplace_back();
      continue;
    }
    rows.back().push_back(c.integer());
  }
  const std::size_t n = rows.size();
  if (rows.back().empty()) throw ValueError{text.size(), "empty matrix row"};
  if (n > kMaxDim) throw ValueError{0, "matrix dimension exceeds " + std::to_string(kMaxDim)};
  for (const auto& r : rows)
    if (r.size() != n) throw ValueError{0, "matrix must be square (rows separated by ';')"};
  IntMatrix m(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = rows[i][j];
  return m;
}

TrigField parse_field_value(std::string_view text, std::size_t dim) {
  Cursor c(text);
  TrigField f(dim);
  const bool bracketed = c.accept('[');
  bool first = true;
  while (!(bracketed ? c.peek(']') : c.done())) {
    if (!first) c.expect(',');
    first = false;
    c.expect('(');
    c.expect('(');
    Frequency k{};
    std::size_t n = 0;
    do {
      if (n == dim) c.fail("frequency has more than " + std::to_string(dim) + " components");
      k[n++] = c.integer();
    } while (c.accept(','));
    if (n != dim) c.fail("frequency needs " + std::to_string(dim) + " components");
    c.expect(')');
    c.expect(',');
    const double cs = c.number();
    c.expect(',');
    const double sn = c.number();
    c.expect(')');
    f.add_harmonic(k, cs, sn);
  }
  if (bracketed) c.expect(']');
  if (!c.done()) c.fail("unexpected trailing characters");
  return f;
}

std::vector<std::string> parse_list(std::string_view text) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t end = std::min(text.find(',', start), text.size());
    std::string item = trim(text.substr(start, end - start));
    if (item.empty()) throw ValueError{start, "empty list item"};
    out.push_back(std::move(item));
    start = end + 1;
  }
  return out;
}

const std::map<std::string, std::vector<std::string>>& allowed_verdicts() {
  static const std::map<std::string, std::vector<std::string>> v{
      {"obstruction", {"all-zero", "violated"}},
      {"solve", {"solved", "no-finite-support-solution"}},
      {"splitting", {"tangent", "not-tangent", "computed"}},
      {"tangency", {"tangent", "not-tangent", "no-transfer"}},
      {"leaf", {"invariant", "not-invariant", "mixed"}},
      {"lemma41", {"holds", "fails"}},
      {"frobenius", {"integrable", "non-integrable", "inconclusive"}},
      {"contact", {"contact", "not-contact", "inconclusive"}},
      {"reeb", {"verified", "not-contact", "failed"}},
      {"charfol", {"compatible-with-contact", "not-contact", "inconclusive"}},
  };
  return v;
}

struct Entry {
  std::string value;
  std::size_t line;
  std::size_t key_column;
  std::size_t value_column;
};

using Handler = std::function<void(Scenario&, const Entry&)>;

struct KeySpec {
  std::string section;
  std::string key;
  Handler handler;
};

}  // namespace

ParseError::ParseError(const std::string& source, std::size_t line, std::size_t column, const std::string& message)
    : std::runtime_error(source + ":" + std::to_string(line) + ":" + std::to_string(column) + ": " + message),
      line_(line),
      column_(column) {}

const std::vector<std::string>& known_checks() {
  static const std::vector<std::string> names{"obstruction", "solve",     "splitting", "tangency", "leaf",
                                              "lemma41",     "frobenius", "contact",   "reeb",     "charfol"};
  return names;
}

bool is_known_check(std::string_view name) {
  const auto& k = known_checks();
  return std::find(k.begin(), k.end(), name) != k.end();
}

bool Scenario::requests(std::string_view check) const {
  return std::find(checks.begin(), checks.end(), check) != checks.end();
}

TrigField parse_field(std::string_view text, std::size_t dim) {
  try {
    return parse_field_value(text, dim);
  } catch (const ValueError& e) {
    throw ParseError("<field>", 1, e.offset + 1, e.message);
  }
}

std::string format_field(const TrigField& f) {
  std::string out = "[";
  bool first = true;
  for (const auto& [k, c] : f.coefficients()) {
    const bool zero = k == Frequency{};
    bool positive = false;
    for (auto v : k)
      if (v != 0) {
        positive = v > 0;
        break;
      }
    if (!zero && !positive) continue;
    if (!first) out += ", ";
    first = false;
    out += "((";
    for (std::size_t i = 0; i < f.dim(); ++i) out += (i ? "," : "") + std::to_string(k[i]);
    out += "), ";
    if (zero) {
      out += format_number(c.real()) + ", 0)";
    } else {
      out += format_number(2.0 * c.real()) + ", " + format_number(-2.0 * c.imag()) + ")";
    }
  }
  return out + "]";
}

std::string fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char b : bytes) {
    h ^= b;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

Scenario parse_scenario(std::string_view text, const std::string& source) {
  // Pass 1: sections and key/value pairs with their positions.
  std::map<std::string, std::map<std::string, Entry>> sections;
  std::map<std::string, std::size_t> section_line;
  std::string current;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t eol = std::min(text.find('\n', pos), text.size());
    std::string_view line = text.substr(pos, eol - pos);
    ++line_no;
    pos = eol + 1;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    const std::string t = trim(line);
    if (t.empty()) continue;
    const std::size_t indent = line.find_first_not_of(" \t") + 1;
    if (t.front() == '[') {
      if (t.back() != ']') throw ParseError(source, line_no, indent + t.size(), "expected ']' closing section header");
      current = trim(std::string_view(t).substr(1, t.size() - 2));
      if (current.empty()) throw ParseError(source, line_no, indent + 1, "empty section name");
      if (section_line.count(current))
        throw ParseError(source, line_no, indent, "duplicate section [" + current + "]");
      section_line[current] = line_no;
      sections[current];
      continue;
    }
    const std::size_t eq = line.find('=');
    if (eq == std::string_view::npos) throw ParseError(source, line_no, indent, "expected 'key = value'");
    if (current.empty()) throw ParseError(source, line_no, indent, "key outside of any [section]");
    const std::string key = trim(line.substr(0, eq));
    if (key.empty()) throw ParseError(source, line_no, indent, "missing key before '='");
    std::size_t vcol = eq + 1;
    while (vcol < line.size() && std::isspace(static_cast<unsigned char>(line[vcol]))) ++vcol;
    Entry e{trim(line.substr(eq + 1)), line_no, indent, vcol + 1};
    auto [it, inserted] = sections[current].emplace(key, e);
    if (!inserted)
      throw ParseError(source, line_no, indent,
                       "duplicate key '" + key + "' in [" + current + "] (first on line " +
                           std::to_string(it->second.line) + ")");
  }

  // Pass 2: interpret values. The base dimension is needed before field literals.
  Scenario sc;
  auto with = [&](const Entry& e, auto&& fn) {
    try {
      fn();
    } catch (const ValueError& v) {
      throw ParseError(source, e.line, e.value_column + v.offset, v.message);
    } catch (const std::invalid_argument& v) {
      throw ParseError(source, e.line, e.value_column, v.what());
    } catch (const std::overflow_error& v) {
      throw ParseError(source, e.line, e.value_column, v.what());
    }
  };

  const std::vector<KeySpec> specs{
      {"scenario", "name", [&](Scenario& s, const Entry& e) { with(e, [&] {
         if (e.value.empty()) throw ValueError{0, "name must not be empty"};
         s.name = e.value;
       }); }},
      {"scenario", "checks", [&](Scenario& s, const Entry& e) { with(e, [&] {
         std::set<std::string> seen;
         for (const auto& c : parse_list(e.value)) {
           if (!is_known_check(c)) throw ValueError{e.value.find(c), "unknown check '" + c + "'"};
           if (!seen.insert(c).second) throw ValueError{e.value.find(c), "check '" + c + "' listed twice"};
         }
         s.checks.clear();
         for (const auto& k : known_checks())
           if (seen.count(k)) s.checks.push_back(k);
       }); }},
      {"scenario", "seed", [&](Scenario& s, const Entry& e) { with(e, [&] { s.seed = parse_unsigned(e.value, 0); }); }},
      {"base", "matrix", [&](Scenario& s, const Entry& e) { with(e, [&] { s.matrix = parse_matrix(e.value); }); }},
      {"splitting", "order", [&](Scenario& s, const Entry& e) { with(e, [&] {
         s.order = static_cast<unsigned>(parse_unsigned(e.value, 1));
       }); }},
      {"splitting", "grid", [&](Scenario& s, const Entry& e) { with(e, [&] { s.splitting_grid = parse_unsigned(e.value, 1); }); }},
      {"splitting", "cone_samples", [&](Scenario& s, const Entry& e) { with(e, [&] { s.cone_samples = parse_unsigned(e.value, 0); }); }},
      {"obstruction", "max_period", [&](Scenario& s, const Entry& e) { with(e, [&] {
         s.max_period = static_cast<unsigned>(parse_unsigned(e.value, 1));
       }); }},
      {"obstruction", "max_block", [&](Scenario& s, const Entry& e) { with(e, [&] {
         s.max_block = static_cast<unsigned>(parse_unsigned(e.value, 1));
       }); }},
      {"leaf", "thetas", [&](Scenario& s, const Entry& e) { with(e, [&] { s.thetas = parse_unsigned(e.value, 1); }); }},
      {"leaf", "samples", [&](Scenario& s, const Entry& e) { with(e, [&] { s.leaf_samples = parse_unsigned(e.value, 1); }); }},
      {"grid", "nx", [&](Scenario& s, const Entry& e) { with(e, [&] { s.grid.nx = parse_unsigned(e.value, 1); }); }},
      {"grid", "ny", [&](Scenario& s, const Entry& e) { with(e, [&] { s.grid.ny = parse_unsigned(e.value, 1); }); }},
      {"grid", "nt", [&](Scenario& s, const Entry& e) { with(e, [&] { s.grid.nt = parse_unsigned(e.value, 1); }); }},
      {"grid", "plot", [&](Scenario& s, const Entry& e) { with(e, [&] {
         Cursor c(e.value);
         std::array<std::int64_t, 3> v{};
         for (auto& x : v) {
           x = c.integer();
           if (x < 0) c.fail("plot resolution must be non-negative");
         }
         if (!c.done()) c.fail("expected three integers 'nx ny nt'");
         s.plot = Grid3{static_cast<std::size_t>(v[0]), static_cast<std::size_t>(v[1]), static_cast<std::size_t>(v[2])};
       }); }},
      {"grid", "seeds", [&](Scenario& s, const Entry& e) { with(e, [&] { s.seeds = parse_unsigned(e.value, 1); }); }},
      {"tolerances", "zero", [&](Scenario& s, const Entry& e) { with(e, [&] { s.tolerances.zero = parse_positive(e.value); }); }},
      {"tolerances", "nonvanishing", [&](Scenario& s, const Entry& e) { with(e, [&] { s.tolerances.nonvanishing = parse_positive(e.value); }); }},
      {"tolerances", "obstruction", [&](Scenario& s, const Entry& e) { with(e, [&] { s.tolerances.obstruction = parse_positive(e.value); }); }},
      {"tolerances", "identity", [&](Scenario& s, const Entry& e) { with(e, [&] { s.tolerances.identity = parse_positive(e.value); }); }},
      {"tolerances", "tangency", [&](Scenario& s, const Entry& e) { with(e, [&] { s.tolerances.tangency = parse_positive(e.value); }); }},
      {"tolerances", "leaf", [&](Scenario& s, const Entry& e) { with(e, [&] { s.tolerances.leaf = parse_positive(e.value); }); }},
      {"tolerances", "divergence", [&](Scenario& s, const Entry& e) { with(e, [&] { s.tolerances.divergence = parse_positive(e.value); }); }},
  };

  auto take = [&](const std::string& sec, const std::string& key) -> const Entry* {
    auto s = sections.find(sec);
    if (s == sections.end()) return nullptr;
    auto k = s->second.find(key);
    return k == s->second.end() ? nullptr : &k->second;
  };

  // Reject unknown sections and keys up front.
  static const std::map<std::string, std::set<std::string>> schema{
      {"scenario", {"name", "checks", "seed"}},
      {"base", {"matrix"}},
      {"cocycle", {"transfer", "gamma"}},
      {"splitting", {"order", "grid", "cone_samples"}},
      {"obstruction", {"max_period", "max_block"}},
      {"leaf", {"thetas", "samples"}},
      {"grid", {"nx", "ny", "nt", "plot", "seeds"}},
      {"tolerances", {"zero", "nonvanishing", "obstruction", "identity", "tangency", "leaf", "divergence"}},
      {"surface", {"h"}},
      {"form", {"ax", "ay", "vt"}},
      {"expect", {}},
  };
  for (const auto& [sec, keys] : sections) {
    auto s = schema.find(sec);
    if (s == schema.end()) throw ParseError(source, section_line[sec], 1, "unknown section [" + sec + "]");
    if (sec == "expect") continue;
    for (const auto& [key, e] : keys)
      if (!s->second.count(key)) throw ParseError(source, e.line, e.key_column, "unknown key '" + key + "' in [" + sec + "]");
  }

  for (const auto& spec : specs)
    if (const Entry* e = take(spec.section, spec.key)) spec.handler(sc, *e);

  if (sc.name.empty()) throw ParseError(source, section_line.count("scenario") ? section_line["scenario"] : 1, 1,
                                        "missing required key 'name' in [scenario]");
  if (sc.checks.empty())
    throw ParseError(source, section_line.count("scenario") ? section_line["scenario"] : 1, 1,
                     "missing required key 'checks' in [scenario]");

  const std::size_t dim = sc.matrix.size();
  const Entry* transfer = take("cocycle", "transfer");
  const Entry* gamma = take("cocycle", "gamma");
  if (transfer && gamma)
    throw ParseError(source, gamma->line, gamma->key_column,
                     "'transfer' and 'gamma' are mutually exclusive (transfer on line " +
                         std::to_string(transfer->line) + ")");
  if (const Entry* e = transfer ? transfer : gamma) {
    with(*e, [&] { sc.cocycle_field = parse_field_value(e->value, dim); });
    sc.cocycle = transfer ? CocycleKind::kTransfer : CocycleKind::kGamma;
  }
  if (const Entry* e = take("surface", "h")) {
    if (dim != 2) throw ParseError(source, e->line, e->key_column, "[surface] requires a 2x2 base matrix");
    with(*e, [&] { sc.surface = parse_field_value(e->value, 2); });
  }
  if (sections.count("form")) {
    std::array<TrigField, 3> parts{TrigField(3), TrigField(3), TrigField(3)};
    const std::array<const char*, 3> keys{"ax", "ay", "vt"};
    for (std::size_t i = 0; i < 3; ++i)
      if (const Entry* e = take("form", keys[i])) with(*e, [&] { parts[i] = parse_field_value(e->value, 3); });
    sc.form = OneForm(parts[0], parts[1], parts[2]);
  }
  for (const auto& [check, e] : sections["expect"]) {
    if (!is_known_check(check)) throw ParseError(source, e.line, e.key_column, "unknown check '" + check + "' in [expect]");
    if (!sc.requests(check))
      throw ParseError(source, e.line, e.key_column, "[expect] names check '" + check + "' which is not requested");
    const auto& allowed = allowed_verdicts().at(check);
    if (std::find(allowed.begin(), allowed.end(), e.value) == allowed.end()) {
      std::string list;
      for (const auto& a : allowed) list += (list.empty() ? "" : ", ") + a;
      throw ParseError(source, e.line, e.value_column,
                       "unknown verdict '" + e.value + "' for " + check + " (expected one of: " + list + ")");
    }
    sc.expect[check] = e.value;
  }
  return sc;
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open scenario file " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_scenario(ss.str(), path.string());
}

std::string Scenario::canonical() const {
  std::ostringstream os;
  os << "[scenario]\nname = " << name << "\nchecks = ";
  for (std::size_t i = 0; i < checks.size(); ++i) os << (i ? ", " : "") << checks[i];
  os << "\nseed = " << seed << "\n\n[base]\nmatrix = ";
  for (std::size_t r = 0; r < matrix.size(); ++r) {
    if (r) os << "; ";
    for (std::size_t c = 0; c < matrix.size(); ++c) os << (c ? " " : "") << matrix(r, c);
  }
  os << "\n";
  if (cocycle != CocycleKind::kNone)
    os << "\n[cocycle]\n" << (cocycle == CocycleKind::kTransfer ? "transfer" : "gamma") << " = "
       << format_field(cocycle_field) << "\n";
  os << "\n[splitting]\norder = " << order << "\ngrid = " << splitting_grid << "\ncone_samples = " << cone_samples
     << "\n\n[obstruction]\nmax_period = " << max_period << "\nmax_block = " << max_block
     << "\n\n[leaf]\nthetas = " << thetas << "\nsamples = " << leaf_samples << "\n\n[grid]\nnx = " << grid.nx
     << "\nny = " << grid.ny << "\nnt = " << grid.nt << "\nplot = " << plot.nx << " " << plot.ny << " " << plot.nt
     << "\nseeds = " << seeds << "\n\n[tolerances]\nzero = " << format_number(tolerances.zero)
     << "\nnonvanishing = " << format_number(tolerances.nonvanishing)
     << "\nobstruction = " << format_number(tolerances.obstruction)
     << "\nidentity = " << format_number(tolerances.identity)
     << "\ntangency = " << format_number(tolerances.tangency) << "\nleaf = " << format_number(tolerances.leaf)
     << "\ndivergence = " << format_number(tolerances.divergence) << "\n";
  if (surface) os << "\n[surface]\nh = " << format_field(*surface) << "\n";
  if (form)
    os << "\n[form]\nax = " << format_field(form->dx) << "\nay = " << format_field(form->dy)
       << "\nvt = " << format_field(form->dt) << "\n";
  if (!expect.empty()) {
    os << "\n[expect]\n";
    for (const auto& c : known_checks())
      if (auto it = expect.find(c); it != expect.end()) os << c << " = " << it->second << "\n";
  }
  return os.str();
}

}  // namespace skewlab::lab
