#!/usr/bin/env python3
"""Regenerates the bundled synthetic maps in data/maps/.

Each map is written as a binary PGM (254 free, 0 occupied, 205 unknown) plus a
map-server style YAML file. Grid row 0 is the bottom image row.
"""
import pathlib

FREE, OCC, UNK = 254, 0, 205
OUT = pathlib.Path(__file__).resolve().parent.parent / "data" / "maps"


def blank(width, height, fill=FREE):
    return [[fill] * width for _ in range(height)]


def rect(grid, row0, col0, row1, col1, value):
    """Fills rows row0..row1 and cols col0..col1 inclusive (grid coordinates)."""
    for r in range(row0, row1 + 1):
        for c in range(col0, col1 + 1):
            grid[r][c] = value


def border(grid, row0, col0, row1, col1, value=OCC):
    rect(grid, row0, col0, row0, col1, value)
    rect(grid, row1, col0, row1, col1, value)
    rect(grid, row0, col0, row1, col0, value)
    rect(grid, row0, col1, row1, col1, value)


def write(name, grid, resolution=0.05):
    height, width = len(grid), len(grid[0])
    header = f"P5\n{width} {height}\n255\n".encode()
    raster = bytes(v for row in reversed(grid) for v in row)
    (OUT / f"{name}.pgm").write_bytes(header + raster)
    (OUT / f"{name}.yaml").write_text(
        f"image: {name}.pgm\n"
        f"resolution: {resolution}\n"
        "origin: [0.0, 0.0, 0.0]\n"
        "negate: 0\n"
        "occupied_thresh: 0.65\n"
        "free_thresh: 0.196\n"
    )


def two_rooms():
    g = blank(60, 60)
    border(g, 0, 0, 59, 59)
    rect(g, 0, 30, 59, 31, OCC)      # dividing wall
    rect(g, 22, 30, 37, 31, FREE)    # door, 16 cells
    rect(g, 40, 42, 46, 48, OCC)     # cabinet in the right room
    rect(g, 10, 8, 14, 16, OCC)      # table in the left room
    return g


def office():
    w, h = 124, 84
    g = blank(w, h, UNK)
    rect(g, 2, 2, h - 3, w - 3, FREE)
    border(g, 2, 2, h - 3, w - 3)
    rect(g, 34, 2, 35, w - 3, OCC)   # corridor lower wall
    rect(g, 48, 2, 49, w - 3, OCC)   # corridor upper wall
    for col in (42, 82):             # room partitions
        rect(g, 2, col, 35, col + 1, OCC)
        rect(g, 48, col, h - 3, col + 1, OCC)
    for c0 in (14, 54, 94):          # doors, 14 cells wide
        rect(g, 34, c0, 35, c0 + 13, FREE)
        rect(g, 48, c0, 49, c0 + 13, FREE)
    rect(g, 12, 60, 20, 70, OCC)     # desk block
    rect(g, 62, 20, 70, 26, OCC)     # shelf
    return g


def ring():
    g = blank(80, 80)
    border(g, 0, 0, 79, 79)
    rect(g, 22, 22, 57, 57, OCC)     # central block
    for r, c in ((8, 8), (8, 68), (68, 8), (68, 68)):
        rect(g, r, c, r + 3, c + 3, OCC)  # pillars
    return g


if __name__ == "__main__":
    OUT.mkdir(parents=True, exist_ok=True)
    write("two_rooms", two_rooms())
    write("office", office())
    write("ring", ring())
