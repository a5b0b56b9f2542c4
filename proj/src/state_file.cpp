#include "mdent/state_file.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "mdent/errors.hpp"
#include "mdent/tensor_core.hpp"

namespace mdent {

namespace {

constexpr int kStateDigits = 17;

std::string format_multi_index(const MultiIndex& idx) {
  std::string out;
  for (int j = 0; j < idx.size(); ++j) {
    if (j > 0) out += ',';
    out += std::to_string(idx[j]);
  }
  return out;
}

void write_dims(std::ostream& out, const PartyStructure& structure) {
  out << "dims";
  for (int d : structure.dims()) out << ' ' << d;
  out << '\n';
}

void write_value(std::ostream& out, Complex value) {
  out << ' ' << format_real(value.real(), kStateDigits) << ' '
      << format_real(value.imag(), kStateDigits) << '\n';
}

struct Parser {
  explicit Parser(std::istream& stream) : in(stream) {}

  std::istream& in;
  int line_number = 0;
  std::istringstream line;

  // Advances to the next line with content; false on clean EOF.
  bool next_line() {
    std::string raw;
    while (std::getline(in, raw)) {
      ++line_number;
      const auto hash = raw.find('#');
      if (hash != std::string::npos) raw.erase(hash);
      std::istringstream probe(raw);
      std::string token;
      if (probe >> token) {
        line = std::istringstream(raw);
        return true;
      }
    }
    return false;
  }

  [[noreturn]] void fail(const std::string& message) const { throw ParseError(line_number, message); }

  std::string expect_token(const std::string& what) {
    std::string token;
    if (!(line >> token)) fail("expected " + what);
    return token;
  }

  int parse_int(const std::string& token, const std::string& what) {
    try {
      std::size_t used = 0;
      const int value = std::stoi(token, &used);
      if (used != token.size()) throw std::invalid_argument(token);
      return value;
    } catch (const std::exception&) {
      fail("invalid " + what + " '" + token + "'");
    }
  }

  double parse_double(const std::string& token, const std::string& what) {
    try {
      std::size_t used = 0;
      const double value = std::stod(token, &used);
      if (used != token.size()) throw std::invalid_argument(token);
      return value;
    } catch (const std::exception&) {
      fail("invalid " + what + " '" + token + "'");
    }
  }

  MultiIndex parse_multi_index(const std::string& token) {
    std::vector<int> entries;
    std::string piece;
    std::istringstream stream(token);
    while (std::getline(stream, piece, ',')) {
      entries.push_back(parse_int(piece, "multiindex component"));
    }
    if (entries.empty()) fail("empty multiindex");
    return MultiIndex(std::move(entries));
  }

  void expect_end() {
    std::string token;
    if (line >> token) fail("unexpected trailing token '" + token + "'");
  }
};

PartyStructure parse_header(Parser& parser, std::string& kind) {
  if (!parser.next_line()) parser.fail("empty document; expected 'dims ...'");
  if (parser.expect_token("'dims'") != "dims") parser.fail("first directive must be 'dims'");
  std::vector<int> dims;
  std::string token;
  while (parser.line >> token) dims.push_back(parser.parse_int(token, "dimension"));
  if (dims.empty()) parser.fail("'dims' needs at least one dimension");
  for (int d : dims) {
    if (d < 1) parser.fail("dimensions must be >= 1");
  }
  PartyStructure structure(dims);

  if (!parser.next_line()) parser.fail("expected 'kind pure|density|basis'");
  if (parser.expect_token("'kind'") != "kind") parser.fail("second directive must be 'kind'");
  kind = parser.expect_token("state kind");
  parser.expect_end();
  return structure;
}

}  // namespace

std::string format_real(double value, int significant_digits) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.*g", significant_digits, value);
  return buffer;
}

void save_state(std::ostream& out, const PureState& psi) {
  write_dims(out, psi.structure());
  out << "kind pure\n";
  for (FlatIndex f = 0; f < psi.structure().total_dim(); ++f) {
    const Complex value = psi.amplitudes()(f);
    if (value == Complex(0.0, 0.0)) continue;
    out << "entry " << format_multi_index(psi.structure().multi_index(f));
    write_value(out, value);
  }
}

void save_state(std::ostream& out, const DensityMatrix& rho) {
  write_dims(out, rho.structure());
  out << "kind density\n";
  const FlatIndex d = rho.structure().total_dim();
  for (FlatIndex i = 0; i < d; ++i) {
    for (FlatIndex j = 0; j < d; ++j) {
      const Complex value = rho.entries()(i, j);
      if (value == Complex(0.0, 0.0)) continue;
      out << "entry " << format_multi_index(rho.structure().multi_index(i)) << ' '
          << format_multi_index(rho.structure().multi_index(j));
      write_value(out, value);
    }
  }
}

void save_basis(std::ostream& out, const LocalBasis& basis) {
  write_dims(out, basis.structure());
  out << "kind basis\n";
  for (int party = 0; party < basis.structure().num_parties(); ++party) {
    const auto& u = basis.unitaries()[static_cast<std::size_t>(party)];
    for (Eigen::Index r = 0; r < u.rows(); ++r) {
      for (Eigen::Index c = 0; c < u.cols(); ++c) {
        out << "entry " << party << ' ' << r << ',' << c;
        write_value(out, u(r, c));
      }
    }
  }
}

LoadedState load_state(std::istream& in) {
  Parser parser(in);
  std::string kind;
  const PartyStructure structure = parse_header(parser, kind);
  if (kind != "pure" && kind != "density") {
    parser.fail("unknown state kind '" + kind + "' (expected pure or density)");
  }

  if (kind == "pure") {
    Eigen::VectorXcd amplitudes = Eigen::VectorXcd::Zero(structure.total_dim());
    std::set<FlatIndex> seen;
    while (parser.next_line()) {
      if (parser.expect_token("'entry'") != "entry") parser.fail("expected 'entry'");
      const MultiIndex idx = parser.parse_multi_index(parser.expect_token("multiindex"));
      const double re = parser.parse_double(parser.expect_token("real part"), "real part");
      const double im = parser.parse_double(parser.expect_token("imaginary part"), "imaginary part");
      parser.expect_end();
      FlatIndex flat = 0;
      try {
        flat = structure.flat_index(idx);
      } catch (const std::exception& e) {
        parser.fail(e.what());
      }
      if (!seen.insert(flat).second) parser.fail("duplicate entry");
      amplitudes(flat) = Complex(re, im);
    }
    return PureState(structure, std::move(amplitudes));  // norm invariant enforced here
  }

  Eigen::MatrixXcd entries = Eigen::MatrixXcd::Zero(structure.total_dim(), structure.total_dim());
  std::set<std::pair<FlatIndex, FlatIndex>> seen;
  while (parser.next_line()) {
    if (parser.expect_token("'entry'") != "entry") parser.fail("expected 'entry'");
    const MultiIndex row = parser.parse_multi_index(parser.expect_token("row multiindex"));
    const MultiIndex col = parser.parse_multi_index(parser.expect_token("column multiindex"));
    const double re = parser.parse_double(parser.expect_token("real part"), "real part");
    const double im = parser.parse_double(parser.expect_token("imaginary part"), "imaginary part");
    parser.expect_end();
    FlatIndex r = 0;
    FlatIndex c = 0;
    try {
      r = structure.flat_index(row);
      c = structure.flat_index(col);
    } catch (const std::exception& e) {
      parser.fail(e.what());
    }
    if (!seen.insert({r, c}).second) parser.fail("duplicate entry");
    entries(r, c) = Complex(re, im);
  }
  DensityMatrix rho(structure, std::move(entries));
  const ValidationReport report = validate(rho);
  if (!report.ok()) {
    std::string violated;
    if (!report.hermitian_ok) violated += " hermiticity";
    if (!report.trace_ok) violated += " trace";
    if (!report.psd_ok) violated += " positivity";
    throw ValidationError("loaded density matrix violates:" + violated);
  }
  return rho;
}

LocalBasis load_basis(std::istream& in) {
  Parser parser(in);
  std::string kind;
  const PartyStructure structure = parse_header(parser, kind);
  if (kind != "basis") parser.fail("expected kind 'basis'");

  std::vector<Eigen::MatrixXcd> unitaries;
  for (int j = 0; j < structure.num_parties(); ++j) {
    unitaries.push_back(Eigen::MatrixXcd::Zero(structure.dim(j), structure.dim(j)));
  }
  while (parser.next_line()) {
    if (parser.expect_token("'entry'") != "entry") parser.fail("expected 'entry'");
    const int party = parser.parse_int(parser.expect_token("party"), "party");
    if (party < 0 || party >= structure.num_parties()) parser.fail("party out of range");
    const MultiIndex rc = parser.parse_multi_index(parser.expect_token("row,col"));
    if (rc.size() != 2) parser.fail("expected row,col");
    const double re = parser.parse_double(parser.expect_token("real part"), "real part");
    const double im = parser.parse_double(parser.expect_token("imaginary part"), "imaginary part");
    parser.expect_end();
    const int d = structure.dim(party);
    if (rc[0] < 0 || rc[0] >= d || rc[1] < 0 || rc[1] >= d) parser.fail("row,col out of range");
    unitaries[static_cast<std::size_t>(party)](rc[0], rc[1]) = Complex(re, im);
  }
  return LocalBasis(structure, std::move(unitaries));  // unitarity enforced here
}

namespace {

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::ios_base::failure("cannot open '" + path + "' for writing");
  return out;
}

}  // namespace

void save_state_file(const std::string& path, const PureState& psi) {
  auto out = open_output(path);
  save_state(out, psi);
}

void save_state_file(const std::string& path, const DensityMatrix& rho) {
  auto out = open_output(path);
  save_state(out, rho);
}

void save_basis_file(const std::string& path, const LocalBasis& basis) {
  auto out = open_output(path);
  save_basis(out, basis);
}

LoadedState load_state_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::ios_base::failure("cannot open '" + path + "' for reading");
  return load_state(in);
}

}  // namespace mdent
