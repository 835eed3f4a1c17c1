"""The cell grid: storage, scan order, hashing, snapshots."""

from __future__ import annotations

from .materials import MaterialRegistry

DEFAULT_WIDTH = 128
DEFAULT_HEIGHT = 96
DEFAULT_ALPHA = 255

_FNV_OFFSET = 0xCBF29CE484222325
_FNV_PRIME = 0x100000001B3
_MASK64 = (1 << 64) - 1


def scan_positions(width: int, height: int):
    """Bottom-to-top rows, alternating sweep direction per row."""
    for row_index, y in enumerate(range(height - 1, -1, -1)):
        xs = range(width) if row_index % 2 == 0 else range(width - 1, -1, -1)
        for x in xs:
            yield x, y


class Grid:
    """Fixed-size cell field. y grows downward; "south" is y + 1."""

    def __init__(self, width: int = DEFAULT_WIDTH, height: int = DEFAULT_HEIGHT):
        if width <= 0 or height <= 0:
            raise ValueError("grid dimensions must be positive")
        self.width = width
        self.height = height
        self.tick_count = 0
        self.types = [0] * (width * height)
        self.alphas = [DEFAULT_ALPHA] * (width * height)

    def index(self, x: int, y: int) -> int:
        return y * self.width + x

    def in_bounds(self, x: int, y: int) -> bool:
        return 0 <= x < self.width and 0 <= y < self.height

    def type_at(self, x: int, y: int) -> int:
        return self.types[self.index(x, y)]

    def alpha_at(self, x: int, y: int) -> int:
        return self.alphas[self.index(x, y)]

    def set_cell(self, x: int, y: int, type_id: int, alpha: int = DEFAULT_ALPHA) -> None:
        i = self.index(x, y)
        self.types[i] = type_id
        self.alphas[i] = alpha

    def paint(self, x: int, y: int, type_id: int, radius: int = 0) -> None:
        """Direct write of a filled square, clipped at the borders."""
        for dy in range(-radius, radius + 1):
            for dx in range(-radius, radius + 1):
                if self.in_bounds(x + dx, y + dy):
                    self.set_cell(x + dx, y + dy, type_id)

    def count_of(self, type_id: int) -> int:
        return self.types.count(type_id)

    def copy(self) -> "Grid":
        clone = Grid(self.width, self.height)
        clone.tick_count = self.tick_count
        clone.types = list(self.types)
        clone.alphas = list(self.alphas)
        return clone


def grid_hash(grid: Grid) -> int:
    """64-bit FNV-1a over dimensions plus cell contents in scan order."""
    h = _FNV_OFFSET
    for value in (grid.width, grid.height):
        for shift in (0, 8, 16, 24):
            h = ((h ^ ((value >> shift) & 0xFF)) * _FNV_PRIME) & _MASK64
    for x, y in scan_positions(grid.width, grid.height):
        i = y * grid.width + x
        t = grid.types[i]
        h = ((h ^ (t & 0xFF)) * _FNV_PRIME) & _MASK64
        h = ((h ^ ((t >> 8) & 0xFF)) * _FNV_PRIME) & _MASK64
        h = ((h ^ (grid.alphas[i] & 0xFF)) * _FNV_PRIME) & _MASK64
    return h


def snapshot(grid: Grid, registry: MaterialRegistry) -> dict:
    """Wire form for streaming and fixtures: palette plus per-row runs of
    [run_length, type_name, alpha] triples."""
    rows = []
    for y in range(grid.height):
        runs: list[list] = []
        for x in range(grid.width):
            i = grid.index(x, y)
            t, a = grid.types[i], grid.alphas[i]
            if runs and runs[-1][1] == registry.name_of(t) and runs[-1][2] == a:
                runs[-1][0] += 1
            else:
                runs.append([1, registry.name_of(t), a])
        rows.append(runs)
    return {
        "width": grid.width,
        "height": grid.height,
        "palette": registry.palette(),
        "rows": rows,
    }


def from_snapshot(doc: dict, registry: MaterialRegistry) -> Grid:
    grid = Grid(doc["width"], doc["height"])
    for y, runs in enumerate(doc["rows"]):
        x = 0
        for run_length, name, alpha in runs:
            for _ in range(run_length):
                grid.set_cell(x, y, registry.type_id(name), alpha)
                x += 1
    return grid
