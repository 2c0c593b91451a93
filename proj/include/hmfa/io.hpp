#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "hmfa/carnot.hpp"
#include "hmfa/field.hpp"

// Line-oriented text formats (diff-friendly) and CSV output with
// '.'-decimal, 17-significant-digit formatting for reproducibility.
namespace hmfa::io {

// exact rational parsing: "3/4", "-1/3", plain integers, and decimal
// literals (converted exactly: 0.25 -> 1/4)
synth::Rational parse_rational(const std::string& text);
std::string format_rational(const synth::Rational& v);

// Field file format:
//   field-version 1
//   params <s> <p> <q>
//   support L0|all
//   jrange <jmin> <jmax>
//   rule zero | besov-saturating | monofractal-round(<base>,<N>)
//   overlay <eps> <j> <kp> <kq> <kr> <value>
struct FieldFile {
  synth::BesovParams params;
  bool has_params = false;
  synth::Support support = synth::Support::L0;
  int j_min = 1;
  int j_max = 24;
  std::string rule = "zero";
  struct OverlayLine {
    int eps, j;
    lattice::Idx3 k;
    synth::Rational value;
  };
  std::vector<OverlayLine> overlays;
};

void write_field_file(std::ostream& os, const FieldFile& f);
FieldFile read_field_file(std::istream& is);

synth::CoefficientField build_field(const FieldFile& f);
FieldFile describe_field(const synth::CoefficientField& field, const std::string& rule);

synth::CoefficientField load_field(const std::string& path);
void save_field(const std::string& path, const FieldFile& f);

// Carnot spec file:
//   layers = [q1, q2, ...]
//   bracket <i> <j> <l> <value>
carnot::StratificationSpec read_carnot_spec(std::istream& is);
carnot::StratificationSpec load_carnot_spec(const std::string& path);

// probe points: three columns "p q r" per line; '#' comments
std::vector<GPoint> read_points(std::istream& is);
std::vector<GPoint> load_points(const std::string& path);

// fixed 17-significant-digit formatting
std::string fmt(double v);

struct CsvWriter {
  explicit CsvWriter(std::ostream& os) : os_(os) {}
  void comment(const std::string& line);
  void header(const std::vector<std::string>& cols);
  void row(const std::vector<double>& vals);
  void raw_row(const std::vector<std::string>& vals);

 private:
  std::ostream& os_;
};

}  // namespace hmfa::io
