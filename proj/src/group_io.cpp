#include "sublat/group_io.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

namespace sublat
{

namespace
{

std::string_view trim(std::string_view s)
{
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
    s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
    s.remove_suffix(1);
  return s;
}

bool starts_with_key(std::string_view line, std::string_view key, std::string_view &rest)
{
  if (line.substr(0, key.size()) != key)
    return false;
  rest = trim(line.substr(key.size()));
  if (rest.empty() || rest.front() != ':')
    return false;
  rest = trim(rest.substr(1));
  return true;
}

std::size_t parse_number(std::string_view s, std::string_view what)
{
  s = trim(s);
  std::size_t value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
    throw InputError("malformed " + std::string(what) + " '" + std::string(s) + "'");
  return value;
}

Permutation parse_cycles(std::size_t degree, std::string_view text)
{
  std::vector<std::vector<Point>> cycles;
  std::size_t i = 0;
  auto skip_space = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i])))
      ++i;
  };
  skip_space();
  if (i == text.size())
    throw InputError("empty permutation");
  while (i < text.size()) {
    if (text[i] != '(')
      throw InputError("malformed cycles: expected '(' in '" + std::string(text) + "'");
    ++i;
    auto close = text.find(')', i);
    if (close == std::string_view::npos)
      throw InputError("malformed cycles: unbalanced '(' in '" + std::string(text) + "'");
    std::string_view body = trim(text.substr(i, close - i));
    std::vector<Point> cycle;
    if (!body.empty()) {
      std::size_t start = 0;
      while (start <= body.size()) {
        auto comma = body.find(',', start);
        auto token = body.substr(start, comma == std::string_view::npos ? body.npos : comma - start);
        cycle.push_back(static_cast<Point>(parse_number(token, "cycle point")));
        if (comma == std::string_view::npos)
          break;
        start = comma + 1;
      }
    }
    cycles.push_back(std::move(cycle));
    i = close + 1;
    skip_space();
  }
  return Permutation::from_cycles(degree, cycles);
}

Permutation parse_image_list(std::size_t degree, std::string_view text)
{
  text = trim(text);
  if (text.size() < 2 || text.front() != '[' || text.back() != ']')
    throw InputError("malformed image list '" + std::string(text) + "'");
  text = trim(text.substr(1, text.size() - 2));
  std::vector<Point> images;
  std::size_t start = 0;
  while (!text.empty() && start <= text.size()) {
    auto comma = text.find(',', start);
    auto token = text.substr(start, comma == std::string_view::npos ? text.npos : comma - start);
    images.push_back(static_cast<Point>(parse_number(token, "image")));
    if (comma == std::string_view::npos)
      break;
    start = comma + 1;
  }
  if (images.size() != degree)
    throw InputError("image list has " + std::to_string(images.size()) + " entries, degree is " +
                     std::to_string(degree));
  return Permutation::from_images(images);
}

} // namespace

Permutation parse_permutation(std::size_t degree, std::string_view text)
{
  text = trim(text);
  std::string_view rest;
  if (starts_with_key(text, "images", rest))
    return parse_image_list(degree, rest);
  return parse_cycles(degree, text);
}

GroupFile parse_group_text(std::string_view text)
{
  GroupFile file;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  bool have_degree = false;
  while (pos <= text.size()) {
    auto end = text.find('\n', pos);
    std::string_view raw = text.substr(pos, end == std::string_view::npos ? text.npos : end - pos);
    pos = end == std::string_view::npos ? text.size() + 1 : end + 1;
    ++line_no;
    std::string_view line = trim(raw);
    if (line.empty() || line.front() == '#')
      continue;
    std::string_view rest;
    try {
      if (starts_with_key(line, "degree", rest)) {
        if (have_degree)
          throw InputError("duplicate degree line");
        file.degree = parse_number(rest, "degree");
        if (file.degree == 0)
          throw InputError("degree must be positive");
        have_degree = true;
      } else if (starts_with_key(line, "gen", rest)) {
        if (!have_degree)
          throw InputError("missing degree line before generators");
        file.generators.push_back(parse_permutation(file.degree, rest));
      } else if (starts_with_key(line, "name", rest)) {
        file.name = std::string(rest);
      } else {
        throw InputError("unrecognized line '" + std::string(line) + "'");
      }
    } catch (const InputError &e) {
      throw InputError("line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  if (!have_degree)
    throw InputError("missing degree line");
  return file;
}

PermGroup parse_group_file(std::string_view text) { return parse_group_text(text).group(); }

GroupFile read_group_file(const std::filesystem::path &path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw InputError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_group_text(buf.str());
}

std::string format_group_file(const PermGroup &group, const std::optional<std::string> &name)
{
  std::ostringstream out;
  if (name)
    out << "name: " << *name << '\n';
  out << "degree: " << group.degree() << '\n';
  for (const auto &g : group.generators())
    out << "gen: " << g.to_cycle_string() << '\n';
  return out.str();
}

std::vector<PermGroup> parse_group_list(std::string_view text)
{
  std::vector<PermGroup> groups;
  std::string block;
  std::optional<std::size_t> degree;
  auto flush = [&] {
    std::string_view b = trim(block);
    bool only_comments = true;
    std::istringstream lines{std::string(b)};
    for (std::string l; std::getline(lines, l);) {
      auto t = trim(l);
      if (!t.empty() && t.front() != '#')
        only_comments = false;
    }
    if (!only_comments) {
      std::string body = block;
      if (body.find("degree") == std::string::npos && degree)
        body = "degree: " + std::to_string(*degree) + "\n" + body;
      GroupFile f = parse_group_text(body);
      if (!degree)
        degree = f.degree;
      groups.push_back(f.group());
    }
    block.clear();
  };
  std::istringstream in{std::string(text)};
  for (std::string line; std::getline(in, line);) {
    if (trim(line) == "---")
      flush();
    else
      block += line + '\n';
  }
  flush();
  return groups;
}

} // namespace sublat
