#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>

namespace zidlab {

struct Pos {
  int x = 0;
  int y = 0;

  bool operator==(const Pos &) const = default;
  auto operator<=>(const Pos &) const = default;
};

// Enumeration order doubles as the canonical action order: joint actions are
// generated lexicographically in this order and greedy ties break toward the
// lowest index.
enum class Move : std::uint8_t { North = 0, East, South, West, Stay };

inline constexpr std::array<Move, 5> kAllMoves = {
    Move::North, Move::East, Move::South, Move::West, Move::Stay};

inline constexpr int move_dx(Move m) {
  switch (m) {
  case Move::East:
    return 1;
  case Move::West:
    return -1;
  default:
    return 0;
  }
}

inline constexpr int move_dy(Move m) {
  switch (m) {
  case Move::North:
    return -1;
  case Move::South:
    return 1;
  default:
    return 0;
  }
}

inline Pos apply_move(Pos p, Move m) {
  return Pos{p.x + move_dx(m), p.y + move_dy(m)};
}

// Single-character labels used in action strings and graph dumps; Stay is '.'.
inline constexpr char move_char(Move m) {
  switch (m) {
  case Move::North:
    return 'N';
  case Move::East:
    return 'E';
  case Move::South:
    return 'S';
  case Move::West:
    return 'W';
  case Move::Stay:
    return '.';
  }
  return '?';
}

inline std::optional<Move> parse_move(const std::string &token) {
  if (token.size() == 1) {
    switch (token[0]) {
    case 'N':
    case 'n':
      return Move::North;
    case 'E':
    case 'e':
      return Move::East;
    case 'S':
    case 's':
      return Move::South;
    case 'W':
    case 'w':
      return Move::West;
    case '.':
      return Move::Stay;
    default:
      return std::nullopt;
    }
  }
  std::string lower;
  for (char c : token)
    lower.push_back(static_cast<char>(std::tolower(c)));
  if (lower == "north")
    return Move::North;
  if (lower == "east")
    return Move::East;
  if (lower == "south")
    return Move::South;
  if (lower == "west")
    return Move::West;
  if (lower == "stay")
    return Move::Stay;
  return std::nullopt;
}

} // namespace zidlab
