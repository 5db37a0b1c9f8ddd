#include "core/map_spec.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "core/error.hpp"

namespace zidlab {

namespace {

struct Directive {
  std::string kind;
  std::vector<std::string> args;
};

std::vector<std::string> split_tokens(const std::string &line) {
  std::vector<std::string> tokens;
  std::istringstream in(line);
  std::string tok;
  while (in >> tok)
    tokens.push_back(tok);
  return tokens;
}

int parse_int(const std::string &s, const std::string &what) {
  try {
    size_t used = 0;
    int v = std::stoi(s, &used);
    if (used != s.size())
      fail_validation("bad " + what + ": '" + s + "'");
    return v;
  } catch (const ZidError &) {
    throw;
  } catch (...) {
    fail_validation("bad " + what + ": '" + s + "'");
  }
}

void place_token(MapSpec &spec, const std::string &tok, Pos p,
                 std::vector<std::pair<int, Pos>> &starts_seen) {
  const size_t idx = static_cast<size_t>(spec.tile_index(p));
  if (tok == ".") {
    spec.tiles[idx] = TileKind::Floor;
  } else if (tok == "@") {
    spec.tiles[idx] = TileKind::Wall;
  } else if (tok == "X") {
    spec.tiles[idx] = TileKind::Exit;
    spec.exits.push_back(p);
  } else if (tok == "G") {
    spec.tiles[idx] = TileKind::Gem;
    spec.gems.push_back(p);
  } else if (tok.size() >= 2 && tok[0] == 'S') {
    int id = parse_int(tok.substr(1), "start agent id");
    if (id < 0)
      fail_validation("negative agent id in token '" + tok + "'");
    for (const auto &[seen_id, seen_pos] : starts_seen)
      if (seen_id == id)
        fail_validation("DuplicateStartId: agent " + std::to_string(id) +
                        " has more than one start tile");
    spec.tiles[idx] = TileKind::Start;
    starts_seen.emplace_back(id, p);
  } else if (tok.size() == 3 && tok[0] == 'L' && tok[1] >= '0' &&
             tok[1] <= '9') {
    auto dir = parse_move(std::string(1, tok[2]));
    if (!dir || *dir == Move::Stay)
      fail_validation("UnknownToken: bad laser direction in '" + tok + "'");
    spec.tiles[idx] = TileKind::LaserSource;
    spec.lasers.push_back(LaserSpec{p, tok[1] - '0', *dir});
  } else {
    fail_validation("UnknownToken: '" + tok + "'");
  }
}

std::vector<Pos> trace_beam(const MapSpec &spec, const LaserSpec &laser) {
  Pos p = apply_move(laser.pos, laser.dir);
  if (!spec.in_bounds(p))
    fail_validation("BeamHitsNothing: laser at (" +
                    std::to_string(laser.pos.x) + "," +
                    std::to_string(laser.pos.y) + ") fires out of bounds");
  std::vector<Pos> beam;
  while (spec.in_bounds(p)) {
    TileKind t = spec.tile(p);
    if (t == TileKind::Wall || t == TileKind::LaserSource)
      break;
    beam.push_back(p);
    p = apply_move(p, laser.dir);
  }
  return beam;
}

} // namespace

MapSpec parse_map(const std::string &text) {
  std::vector<Directive> directives;
  std::vector<std::vector<std::string>> rows;

  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos)
      continue;
    if (line[line.find_first_not_of(" \t")] == '#') {
      auto toks = split_tokens(line);
      Directive d;
      d.kind = toks[0].substr(1);
      d.args.assign(toks.begin() + 1, toks.end());
      directives.push_back(std::move(d));
      continue;
    }
    rows.push_back(split_tokens(line));
  }

  if (rows.empty())
    fail_validation("empty map: no grid rows");
  const size_t row_len = rows[0].size();
  for (const auto &row : rows)
    if (row.size() != row_len)
      fail_validation("NonRectangular: rows have " + std::to_string(row_len) +
                      " and " + std::to_string(row.size()) + " tokens");

  MapSpec spec;
  spec.width = static_cast<int>(row_len);
  spec.height = static_cast<int>(rows.size());
  spec.tiles.assign(static_cast<size_t>(spec.width * spec.height),
                    TileKind::Floor);

  std::vector<std::pair<int, Pos>> starts_seen;
  for (int y = 0; y < spec.height; ++y)
    for (int x = 0; x < spec.width; ++x)
      place_token(spec, rows[static_cast<size_t>(y)][static_cast<size_t>(x)],
                  Pos{x, y}, starts_seen);

  if (spec.exits.empty())
    fail_validation("NoExit: map has no exit tile");

  // Agent ids must be contiguous from 0.
  std::sort(starts_seen.begin(), starts_seen.end());
  spec.n_agents = static_cast<int>(starts_seen.size());
  for (int i = 0; i < spec.n_agents; ++i) {
    if (starts_seen[static_cast<size_t>(i)].first != i)
      fail_validation("start tiles must use contiguous agent ids from 0; "
                      "missing S" +
                      std::to_string(i));
    spec.starts.push_back(starts_seen[static_cast<size_t>(i)].second);
  }
  if (spec.n_agents == 0)
    fail_validation("map has no start tiles");

  for (const auto &d : directives) {
    if (d.kind == "spawn") {
      if (d.args.size() != 2)
        fail_validation("#spawn expects: #spawn <x> <y>");
      Pos p{parse_int(d.args[0], "#spawn x"), parse_int(d.args[1], "#spawn y")};
      if (!spec.in_bounds(p))
        fail_validation("#spawn tile out of bounds");
      if (!spec.walkable(p))
        fail_validation("#spawn tile is not walkable");
      spec.spawn_zone.push_back(p);
    } else if (d.kind == "disable") {
      if (d.args.size() != 3)
        fail_validation("#disable expects: #disable <x> <y> <move>");
      Pos p{parse_int(d.args[0], "#disable x"),
            parse_int(d.args[1], "#disable y")};
      if (!spec.in_bounds(p))
        fail_validation("#disable position out of bounds");
      auto m = parse_move(d.args[2]);
      if (!m || *m == Move::Stay)
        fail_validation("#disable move must be N, E, S or W");
      spec.disabled_edges.insert(spec.pack_edge(p, *m));
    } else {
      fail_validation("unknown header line '#" + d.kind + "'");
    }
  }

  if (spec.n_agents > kMaxAgents)
    fail_validation("at most " + std::to_string(kMaxAgents) +
                    " agents supported");
  if (spec.lasers.size() > static_cast<size_t>(kMaxLasers))
    fail_validation("at most " + std::to_string(kMaxLasers) +
                    " laser sources supported");

  spec.beam_mask.assign(spec.tiles.size(), 0);
  for (size_t l = 0; l < spec.lasers.size(); ++l) {
    spec.static_beams.push_back(trace_beam(spec, spec.lasers[l]));
    for (Pos p : spec.static_beams.back())
      spec.beam_mask[static_cast<size_t>(spec.tile_index(p))] |=
          static_cast<std::uint16_t>(1u << l);
  }

  spec.gem_at_tile.assign(spec.tiles.size(), -1);
  for (size_t g = 0; g < spec.gems.size(); ++g)
    spec.gem_at_tile[static_cast<size_t>(spec.tile_index(spec.gems[g]))] =
        static_cast<int>(g);

  return spec;
}

MapSpec parse_map_file(const std::string &path) {
  std::ifstream in(path);
  if (!in)
    fail_runtime("cannot open map file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_map(buf.str());
}

MapSpec restrict_agents(const MapSpec &spec, int n_agents) {
  if (n_agents < 1 || n_agents > spec.n_agents)
    fail_validation("restrict_agents: need 1.." + std::to_string(spec.n_agents) +
                    " agents, got " + std::to_string(n_agents));
  MapSpec out = spec;
  for (int i = n_agents; i < spec.n_agents; ++i) {
    Pos p = spec.starts[static_cast<size_t>(i)];
    out.tiles[static_cast<size_t>(out.tile_index(p))] = TileKind::Floor;
  }
  out.starts.resize(static_cast<size_t>(n_agents));
  out.n_agents = n_agents;
  return out;
}

} // namespace zidlab
