//
// projsa - Copyright 2026 The projsa Authors
// SPDX-License-Identifier: Apache-2.0
//

#include "projsa/trace_io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string_view>
#include <vector>

#include "projsa/error.hpp"

namespace projsa {

namespace {

constexpr const char *kGroups[] = {"x", "e", "r", "h", "P", "xprev"};
constexpr std::size_t kGroupCount = 6;

void append_real(std::string &out, double v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  out.append(buf, res.ptr);
}

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(',', start);
    if (pos == std::string_view::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
}

[[noreturn]] void bad(std::size_t line_no, const std::string &what) {
  fail(ErrorCode::Io, "trace line " + std::to_string(line_no) + ": " + what);
}

double parse_real(std::string_view s, std::size_t line_no) {
  double v = 0.0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    bad(line_no, "cannot parse real '" + std::string(s) + "'");
  }
  return v;
}

std::int64_t parse_int(std::string_view s, std::size_t line_no) {
  std::int64_t v = 0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    bad(line_no, "cannot parse step '" + std::string(s) + "'");
  }
  return v;
}

}  // namespace

std::string format_real(double v) {
  std::string s;
  append_real(s, v);
  return s;
}

void write_trace(std::ostream &os, const Trajectory &traj) {
  const std::size_t d = traj.dim();
  std::string line = "n,t,gamma";
  for (const char *g : kGroups) {
    for (std::size_t l = 0; l < d; ++l) {
      line += ',';
      line += g;
      line += '_';
      line += std::to_string(l);
    }
  }
  line += '\n';
  os << line;
  for (std::size_t i = 0; i < traj.size(); ++i) {
    line.clear();
    line += std::to_string(traj.n(i));
    line += ',';
    append_real(line, traj.t(i));
    line += ',';
    append_real(line, traj.gamma(i));
    for (auto col : {traj.x(i), traj.e(i), traj.r(i), traj.hval(i), traj.P(i),
                     traj.x_prev(i)}) {
      for (double v : col) {
        line += ',';
        append_real(line, v);
      }
    }
    line += '\n';
    os << line;
  }
  if (!os) fail(ErrorCode::Io, "failed writing trace");
}

void write_trace_file(const std::string &path, const Trajectory &traj) {
  std::ofstream os(path, std::ios::binary);
  if (!os) fail(ErrorCode::Io, "cannot open '" + path + "' for writing");
  write_trace(os, traj);
  os.close();
  if (!os) fail(ErrorCode::Io, "failed writing '" + path + "'");
}

Trajectory read_trace(std::istream &is) {
  std::string line;
  if (!std::getline(is, line)) fail(ErrorCode::Io, "trace is empty");
  const auto head = split(line);
  if (head.size() < 3 || head[0] != "n" || head[1] != "t" || head[2] != "gamma" ||
      (head.size() - 3) % kGroupCount != 0 || head.size() == 3) {
    bad(1, "unexpected header");
  }
  const std::size_t d = (head.size() - 3) / kGroupCount;
  for (std::size_t g = 0; g < kGroupCount; ++g) {
    for (std::size_t l = 0; l < d; ++l) {
      const std::string want = std::string(kGroups[g]) + "_" + std::to_string(l);
      if (head[3 + g * d + l] != want) bad(1, "expected column '" + want + "'");
    }
  }

  Trajectory traj(d);
  IterateRecord rec;
  for (Vector *v : {&rec.x, &rec.e, &rec.r, &rec.hval, &rec.P, &rec.x_prev}) {
    v->assign(d, 0.0);
  }
  std::size_t line_no = 1;
  while (std::getline(is, line)) {
    ++line_no;
    if (is.eof()) bad(line_no, "final line is not terminated; trace truncated");
    if (line.empty()) {
      if (is.peek() == std::char_traits<char>::eof()) break;
      bad(line_no, "empty line");
    }
    const auto cells = split(line);
    if (cells.size() != head.size()) {
      bad(line_no, "expected " + std::to_string(head.size()) + " fields, got " +
                       std::to_string(cells.size()));
    }
    rec.n = parse_int(cells[0], line_no);
    rec.t = parse_real(cells[1], line_no);
    rec.gamma = parse_real(cells[2], line_no);
    std::size_t c = 3;
    for (Vector *v : {&rec.x, &rec.e, &rec.r, &rec.hval, &rec.P, &rec.x_prev}) {
      for (std::size_t l = 0; l < d; ++l) (*v)[l] = parse_real(cells[c++], line_no);
    }
    try {
      traj.push_back(rec);
    } catch (const Error &err) {
      bad(line_no, err.what());
    }
  }
  if (is.bad()) fail(ErrorCode::Io, "read error in trace");
  return traj;
}

Trajectory read_trace_file(const std::string &path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) fail(ErrorCode::Io, "cannot open trace '" + path + "'");
  return read_trace(is);
}

}  // namespace projsa
