#include "hmfa/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace hmfa::io {

namespace {

std::int64_t parse_i64(const std::string& s) {
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw std::invalid_argument("expected integer, got '" + s + "'");
  return v;
}

}  // namespace

synth::Rational parse_rational(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("empty rational literal");
  const auto slash = text.find('/');
  if (slash != std::string::npos) {
    const std::int64_t num = parse_i64(text.substr(0, slash));
    const std::int64_t den = parse_i64(text.substr(slash + 1));
    return synth::normalized(num, den);
  }
  const auto dot = text.find('.');
  if (dot == std::string::npos) {
    return synth::normalized(parse_i64(text), 1);
  }
  // exact decimal: sign, integer part, fraction digits
  std::string head = text.substr(0, dot);
  std::string tail = text.substr(dot + 1);
  bool neg = false;
  if (!head.empty() && (head[0] == '-' || head[0] == '+')) {
    neg = head[0] == '-';
    head.erase(0, 1);
  }
  if (tail.size() > 18) throw std::invalid_argument("decimal literal too long for exact parsing: " + text);
  std::int64_t ip = head.empty() ? 0 : parse_i64(head);
  std::int64_t fp = tail.empty() ? 0 : parse_i64(tail);
  std::int64_t den = 1;
  for (std::size_t i = 0; i < tail.size(); ++i) den *= 10;
  __int128 num = static_cast<__int128>(ip) * den + fp;
  if (num > std::numeric_limits<std::int64_t>::max())
    throw std::invalid_argument("decimal literal out of range: " + text);
  std::int64_t n64 = static_cast<std::int64_t>(num);
  if (neg) n64 = -n64;
  return synth::normalized(n64, den);
}

std::string format_rational(const synth::Rational& v) {
  if (v.den == 1) return std::to_string(v.num);
  return std::to_string(v.num) + "/" + std::to_string(v.den);
}

void write_field_file(std::ostream& os, const FieldFile& f) {
  os << "field-version 1\n";
  if (f.has_params) os << "params " << fmt(f.params.s) << " " << fmt(f.params.p) << " " << fmt(f.params.q) << "\n";
  os << "support " << (f.support == synth::Support::L0 ? "L0" : "all") << "\n";
  os << "jrange " << f.j_min << " " << f.j_max << "\n";
  os << "rule " << f.rule << "\n";
  for (const auto& o : f.overlays) {
    os << "overlay " << o.eps << " " << o.j << " " << o.k.p << " " << o.k.q << " " << o.k.r << " "
       << format_rational(o.value) << "\n";
  }
}

FieldFile read_field_file(std::istream& is) {
  FieldFile f;
  std::string line;
  bool versioned = false;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string key;
    ls >> key;
    if (key == "field-version") {
      int v = 0;
      ls >> v;
      if (v != 1) throw std::invalid_argument("unsupported field-version");
      versioned = true;
    } else if (key == "params") {
      ls >> f.params.s >> f.params.p >> f.params.q;
      if (!ls) throw std::invalid_argument("params line needs: s p q");
      f.has_params = true;
    } else if (key == "support") {
      std::string s;
      ls >> s;
      if (s == "L0")
        f.support = synth::Support::L0;
      else if (s == "all")
        f.support = synth::Support::All;
      else
        throw std::invalid_argument("support must be L0 or all");
    } else if (key == "jrange") {
      ls >> f.j_min >> f.j_max;
      if (!ls || f.j_min > f.j_max) throw std::invalid_argument("bad jrange line");
    } else if (key == "rule") {
      ls >> f.rule;
      if (f.rule.empty()) throw std::invalid_argument("empty rule");
    } else if (key == "overlay") {
      FieldFile::OverlayLine o{};
      std::string val;
      ls >> o.eps >> o.j >> o.k.p >> o.k.q >> o.k.r >> val;
      if (!ls) throw std::invalid_argument("overlay line needs: eps j kp kq kr value");
      o.value = parse_rational(val);
      f.overlays.push_back(o);
    } else {
      throw std::invalid_argument("unknown field-file key: " + key);
    }
  }
  if (!versioned) throw std::invalid_argument("missing field-version header");
  return f;
}

synth::CoefficientField build_field(const FieldFile& f) {
  synth::CoefficientField field = [&]() -> synth::CoefficientField {
    if (f.rule == "zero") {
      return synth::CoefficientField::zero(f.j_min, f.j_max, f.support);
    }
    if (f.rule == "besov-saturating") {
      if (!f.has_params) throw std::invalid_argument("besov-saturating rule needs a params line");
      f.params.validate();
      return synth::CoefficientField::besov_saturating(f.params, f.j_max);
    }
    if (f.rule.starts_with("monofractal-round(")) {
      if (!f.rule.ends_with(")")) throw std::invalid_argument("malformed rule: " + f.rule);
      const std::string inner = f.rule.substr(18, f.rule.size() - 19);
      const auto comma = inner.rfind(',');
      if (comma == std::string::npos)
        throw std::invalid_argument("monofractal-round needs (base,N): " + f.rule);
      const std::string base_name = inner.substr(0, comma);
      const int N = static_cast<int>(parse_i64(inner.substr(comma + 1)));
      synth::CoefficientField base = [&]() -> synth::CoefficientField {
        if (base_name == "zero") return synth::CoefficientField::zero(f.j_min, f.j_max, f.support);
        if (base_name == "besov-saturating") {
          if (!f.has_params) throw std::invalid_argument("base besov-saturating needs params");
          f.params.validate();
          return synth::CoefficientField::besov_saturating(f.params, f.j_max);
        }
        throw std::invalid_argument("unknown rounding base: " + base_name);
      }();
      if (!f.has_params) throw std::invalid_argument("monofractal-round needs params (s)");
      return synth::CoefficientField::monofractal_round(std::move(base), f.params.s, N);
    }
    throw std::invalid_argument("unknown rule: " + f.rule);
  }();
  for (const auto& o : f.overlays) field.set_overlay(o.eps, o.j, o.k, o.value);
  return field;
}

FieldFile describe_field(const synth::CoefficientField& field, const std::string& rule) {
  FieldFile f;
  if (field.params()) {
    f.params = *field.params();
    f.has_params = true;
  }
  f.support = field.support();
  f.j_min = field.j_min();
  f.j_max = field.j_max();
  f.rule = rule;
  for (const auto& [key, v] : field.overlay()) f.overlays.push_back({key.eps, key.j, key.k, v});
  return f;
}

synth::CoefficientField load_field(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::invalid_argument("cannot open field file: " + path);
  return build_field(read_field_file(is));
}

void save_field(const std::string& path, const FieldFile& f) {
  std::ofstream os(path);
  if (!os) throw std::invalid_argument("cannot write field file: " + path);
  write_field_file(os, f);
}

carnot::StratificationSpec read_carnot_spec(std::istream& is) {
  std::vector<int> layers;
  std::vector<carnot::Bracket> brackets;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string key;
    ls >> key;
    if (key == "layers") {
      std::string rest;
      std::getline(ls, rest);
      const auto lb = rest.find('[');
      const auto rb = rest.find(']');
      if (lb == std::string::npos || rb == std::string::npos || rb < lb)
        throw std::invalid_argument("layers line must look like: layers = [2, 1]");
      std::string list = rest.substr(lb + 1, rb - lb - 1);
      for (char& c : list)
        if (c == ',') c = ' ';
      std::istringstream vs(list);
      int q;
      while (vs >> q) layers.push_back(q);
      if (layers.empty()) throw std::invalid_argument("layers list is empty");
    } else if (key == "bracket") {
      carnot::Bracket b;
      std::string val;
      ls >> b.i >> b.j >> b.l >> val;
      if (!ls) throw std::invalid_argument("bracket line needs: i j l value");
      b.value = parse_rational(val).to_double();
      brackets.push_back(b);
    } else {
      throw std::invalid_argument("unknown spec key: " + key);
    }
  }
  if (layers.empty()) throw std::invalid_argument("spec file has no layers line");
  return carnot::StratificationSpec(layers, brackets);
}

carnot::StratificationSpec load_carnot_spec(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::invalid_argument("cannot open spec file: " + path);
  return read_carnot_spec(is);
}

std::vector<GPoint> read_points(std::istream& is) {
  std::vector<GPoint> pts;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    GPoint x;
    if (ls >> x.p >> x.q >> x.r) pts.push_back(x);
  }
  return pts;
}

std::vector<GPoint> load_points(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::invalid_argument("cannot open points file: " + path);
  return read_points(is);
}

std::string fmt(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void CsvWriter::comment(const std::string& line) { os_ << "# " << line << "\n"; }

void CsvWriter::header(const std::vector<std::string>& cols) {
  for (std::size_t i = 0; i < cols.size(); ++i) os_ << (i ? "," : "") << cols[i];
  os_ << "\n";
}

void CsvWriter::row(const std::vector<double>& vals) {
  for (std::size_t i = 0; i < vals.size(); ++i) os_ << (i ? "," : "") << fmt(vals[i]);
  os_ << "\n";
}

void CsvWriter::raw_row(const std::vector<std::string>& vals) {
  for (std::size_t i = 0; i < vals.size(); ++i) os_ << (i ? "," : "") << vals[i];
  os_ << "\n";
}

}  // namespace hmfa::io
