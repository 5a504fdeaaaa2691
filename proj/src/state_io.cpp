#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "kuniform/error.hpp"
#include "kuniform/state.hpp"

namespace kuniform {

namespace {

bool next_content_line(std::istream& in, std::string& line, int& line_no) {
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    return true;
  }
  return false;
}

[[noreturn]] void parse_error(int line_no, const std::string& what) {
  throw Error(ErrorKind::Parse, "line " + std::to_string(line_no) + ": " + what);
}

}  // namespace

void write_state(std::ostream& out, const PureState& s) {
  out << s.qudits() << ' ' << s.level() << '\n';
  for (const auto& [c, amp] : s.amplitudes()) {
    const bool compact = s.level() <= 10;
    for (std::size_t i = 0; i < c.size(); ++i) out << (i && !compact ? " " : "") << c[i];
    if (const int e = amp.single_root_exponent(); e >= 0) {
      out << " ^" << e << '\n';
      continue;
    }
    for (auto coeff : amp.coeffs()) out << ' ' << coeff;
    out << '\n';
  }
}

PureState read_state(std::istream& in) {
  std::string line;
  int line_no = 0;
  if (!next_content_line(in, line, line_no)) parse_error(line_no, "missing header");
  int n = 0, d = 0;
  {
    std::istringstream header(line);
    std::string extra;
    if (!(header >> n >> d) || (header >> extra)) parse_error(line_no, "header must be \"n d\"");
  }
  if (n < 1 || d < 2) parse_error(line_no, "header needs n >= 1 and d >= 2");
  PureState state(n, d);
  while (next_content_line(in, line, line_no)) {
    std::istringstream row(line);
    Basis c(static_cast<std::size_t>(n));
    std::string first;
    row >> first;
    if (d <= 10 && first.size() == static_cast<std::size_t>(n)) {
      for (std::size_t i = 0; i < c.size(); ++i) {
        c[i] = first[i] - '0';
        if (c[i] < 0 || c[i] >= d) parse_error(line_no, "expected n digits in [0, d)");
      }
    } else {
      std::istringstream spaced(first);
      for (std::size_t i = 0; i < c.size(); ++i) {
        auto& src = i == 0 ? static_cast<std::istream&>(spaced) : static_cast<std::istream&>(row);
        if (!(src >> c[i]) || c[i] < 0 || c[i] >= d) parse_error(line_no, "expected n digits in [0, d)");
      }
      if (std::string junk; spaced >> junk) parse_error(line_no, "expected n digits in [0, d)");
    }
    std::vector<std::string> rest;
    for (std::string tok; row >> tok;) rest.push_back(tok);
    if (state.amplitudes().contains(c)) parse_error(line_no, "duplicate ket");
    if (rest.size() == 1 && rest.front().starts_with('^')) {
      std::int64_t e = 0;
      try {
        std::size_t used = 0;
        e = std::stoll(rest.front().substr(1), &used);
        if (used + 1 != rest.front().size()) parse_error(line_no, "bad exponent");
      } catch (const std::logic_error&) {
        parse_error(line_no, "bad exponent");
      }
      state.set_phase(c, e);
    } else if (rest.size() == static_cast<std::size_t>(d)) {
      std::vector<std::int64_t> coeffs;
      for (const auto& tok : rest) {
        try {
          std::size_t used = 0;
          coeffs.push_back(std::stoll(tok, &used));
          if (used != tok.size()) parse_error(line_no, "bad coefficient");
        } catch (const std::logic_error&) {
          parse_error(line_no, "bad coefficient");
        }
      }
      state.set(c, CycInt(d, std::move(coeffs)));
    } else {
      parse_error(line_no, "amplitude must be \"^e\" or d integers");
    }
  }
  return state;
}

PureState read_state_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Parse, "cannot open " + path);
  return read_state(in);
}

void write_state_file(const std::string& path, const PureState& s) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::Parse, "cannot write " + path);
  write_state(out, s);
}

}  // namespace kuniform
