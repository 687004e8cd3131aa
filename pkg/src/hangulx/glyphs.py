"""Raster glyphs and the stroke finder/modifier pipeline.

A glyph is a small binary raster held as a boolean numpy array (True =
ink).  Glyph files use the portable bitmap format, either ASCII (P1) or
packed binary (P4).

Consonant modification picks a target stroke by scanning row by row for
the first ink pixel, thinning the pixel cluster around it to a one pixel
wide skeleton, cutting the skeleton at junction pixels, and splitting
the remaining arcs into straight directional runs.  The winning run is
the one with the highest priority direction (rightward beats downward
beats diagonal); longer runs and earlier scan positions break ties.
Vowels instead take the longest horizontal or vertical ink run of the
whole glyph, vertical winning ties.

The modifiers swell the chosen stroke: thicken_stroke dilates it by a
constant Chebyshev radius, taper_stroke ramps the radius linearly along
the path.  Both only ever add ink, and only within the stated radius of
the stroke.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

import numpy as np

# Loadable glyph files stay within this square; rendered pages may grow
# wider than a single glyph but not without bound.
MAX_GLYPH_SIZE = 256
MAX_CANVAS_SIZE = 8192

RIGHTWARD = "rightward"
DOWNWARD = "downward"
DIAGONAL = "diagonal"
STROKE_PRIORITY = (RIGHTWARD, DOWNWARD, DIAGONAL)

Pixel = tuple[int, int]  # (row, col), row 0 at the top

# All eight neighbor offsets; clusters use 8-connectivity throughout.
_NEIGHBORS = ((-1, -1), (-1, 0), (-1, 1), (0, -1),
              (0, 1), (1, -1), (1, 0), (1, 1))


class GlyphError(ValueError):
    """Malformed glyph data, blank glyphs, or invalid stroke arguments."""


@dataclass(frozen=True, eq=False)
class GlyphBitmap:
    """Immutable binary raster; pixels[row, col] is True where inked."""

    pixels: np.ndarray

    def __post_init__(self) -> None:
        array = np.asarray(self.pixels, dtype=bool)
        if array.ndim != 2:
            raise GlyphError("glyph pixels must form a 2-d grid")
        if array.shape[0] > MAX_CANVAS_SIZE or array.shape[1] > MAX_CANVAS_SIZE:
            raise GlyphError(
                f"canvas {array.shape[1]}x{array.shape[0]} exceeds "
                f"{MAX_CANVAS_SIZE}x{MAX_CANVAS_SIZE}")
        array = array.copy()
        array.setflags(write=False)
        object.__setattr__(self, "pixels", array)

    @classmethod
    def blank(cls, width: int, height: int) -> "GlyphBitmap":
        return cls(np.zeros((height, width), dtype=bool))

    @classmethod
    def from_rows(cls, rows: Sequence[str]) -> "GlyphBitmap":
        """Build a bitmap from strings of '1'/'#' (ink) and '0'/'.'/' '."""
        if rows and len({len(row) for row in rows}) != 1:
            raise GlyphError("rows must all have the same length")
        grid = []
        for row in rows:
            bits = []
            for ch in row:
                if ch in "1#":
                    bits.append(True)
                elif ch in "0. ":
                    bits.append(False)
                else:
                    raise GlyphError(f"unexpected character {ch!r} in row")
            grid.append(bits)
        if not grid or not grid[0]:
            return cls.blank(0, 0)
        return cls(np.array(grid, dtype=bool))

    @property
    def width(self) -> int:
        return int(self.pixels.shape[1])

    @property
    def height(self) -> int:
        return int(self.pixels.shape[0])

    @property
    def ink_count(self) -> int:
        return int(self.pixels.sum())

    def ink_pixels(self) -> list[Pixel]:
        """All ink coordinates in scan order (top to bottom, then left
        to right)."""
        return [(int(r), int(c)) for r, c in np.argwhere(self.pixels)]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GlyphBitmap):
            return NotImplemented
        return (self.pixels.shape == other.pixels.shape
                and bool(np.array_equal(self.pixels, other.pixels)))

    def __hash__(self) -> int:
        return hash((self.pixels.shape, self.pixels.tobytes()))

    def to_pbm(self, binary: bool = False) -> bytes:
        """Serialize as PBM, ASCII P1 by default or packed P4."""
        header = f"{'P4' if binary else 'P1'}\n{self.width} {self.height}\n"
        if binary:
            packed = np.packbits(self.pixels.astype(np.uint8), axis=1)
            return header.encode("ascii") + packed.tobytes()
        rows = ("".join("1" if bit else "0" for bit in row)
                for row in self.pixels)
        return header.encode("ascii") + "\n".join(rows).encode("ascii") + b"\n"


def load_glyph(data: bytes) -> GlyphBitmap:
    """Parse P1 or P4 PBM bytes into a bitmap.

    The glyph must be between 1x1 and 256x256 and contain at least one
    ink pixel.  Comments (# to end of line) are allowed in the header
    and, for P1, between data digits.
    """
    if not isinstance(data, (bytes, bytearray)):
        raise GlyphError("glyph data must be bytes")
    data = bytes(data)

    def skip_blank(pos: int) -> int:
        while pos < len(data):
            ch = data[pos:pos + 1]
            if ch.isspace():
                pos += 1
            elif ch == b"#":
                newline = data.find(b"\n", pos)
                pos = len(data) if newline < 0 else newline + 1
            else:
                break
        return pos

    def read_token(pos: int) -> tuple[bytes, int]:
        pos = skip_blank(pos)
        start = pos
        while (pos < len(data) and not data[pos:pos + 1].isspace()
               and data[pos:pos + 1] != b"#"):
            pos += 1
        if start == pos:
            raise GlyphError("truncated pbm header")
        return data[start:pos], pos

    magic, pos = read_token(0)
    if magic not in (b"P1", b"P4"):
        raise GlyphError(f"unsupported pbm magic {magic!r}")
    width_tok, pos = read_token(pos)
    height_tok, pos = read_token(pos)
    try:
        width, height = int(width_tok), int(height_tok)
    except ValueError:
        raise GlyphError("non-numeric pbm dimensions") from None
    if not (1 <= width <= MAX_GLYPH_SIZE and 1 <= height <= MAX_GLYPH_SIZE):
        raise GlyphError(
            f"glyph dimensions {width}x{height} outside 1..{MAX_GLYPH_SIZE}")

    if magic == b"P1":
        bits: list[bool] = []
        while pos < len(data) and len(bits) < width * height:
            ch = data[pos:pos + 1]
            if ch.isspace():
                pos += 1
            elif ch == b"#":
                newline = data.find(b"\n", pos)
                pos = len(data) if newline < 0 else newline + 1
            elif ch in (b"0", b"1"):
                bits.append(ch == b"1")
                pos += 1
            else:
                raise GlyphError(f"unexpected byte {ch!r} in pbm data")
        if len(bits) < width * height:
            raise GlyphError("truncated pbm data")
        array = np.array(bits, dtype=bool).reshape(height, width)
    else:
        if pos >= len(data) or not data[pos:pos + 1].isspace():
            raise GlyphError("missing raster separator")
        pos += 1
        row_bytes = (width + 7) // 8
        raster = data[pos:pos + row_bytes * height]
        if len(raster) < row_bytes * height:
            raise GlyphError("truncated pbm data")
        rows = np.frombuffer(raster, dtype=np.uint8).reshape(height, row_bytes)
        array = np.unpackbits(rows, axis=1)[:, :width].astype(bool)

    glyph = GlyphBitmap(array)
    if glyph.ink_count == 0:
        raise GlyphError("glyph has no ink pixels")
    return glyph


@dataclass(frozen=True)
class PixelCluster:
    """A maximal 8-connected group of ink pixels."""

    pixels: frozenset[Pixel]

    def __post_init__(self) -> None:
        if not self.pixels:
            raise GlyphError("pixel cluster may not be empty")
        seen = {next(iter(self.pixels))}
        frontier = list(seen)
        while frontier:
            r, c = frontier.pop()
            for dr, dc in _NEIGHBORS:
                q = (r + dr, c + dc)
                if q in self.pixels and q not in seen:
                    seen.add(q)
                    frontier.append(q)
        if len(seen) != len(self.pixels):
            raise GlyphError("pixel cluster is not 8-connected")

    @property
    def first_pixel(self) -> Pixel:
        """The cluster's earliest pixel in scan order."""
        return min(self.pixels)

    def __len__(self) -> int:
        return len(self.pixels)

    def __contains__(self, pixel: object) -> bool:
        return pixel in self.pixels

    def __iter__(self) -> Iterator[Pixel]:
        return iter(sorted(self.pixels))


def connected_components(bitmap: GlyphBitmap) -> list[PixelCluster]:
    """Partition ink into 8-connected clusters, ordered by first pixel.

    Uses two-pass union-find labeling: each ink pixel in scan order is
    merged with its already-visited neighbors, then labels are resolved.
    """
    parent: list[int] = []

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    label_of: dict[Pixel, int] = {}
    for r, c in bitmap.ink_pixels():
        above = ((r - 1, c - 1), (r - 1, c), (r - 1, c + 1), (r, c - 1))
        roots = {find(label_of[p]) for p in above if p in label_of}
        if roots:
            label = min(roots)
            for root in roots:
                parent[root] = label
        else:
            label = len(parent)
            parent.append(label)
        label_of[(r, c)] = label

    groups: dict[int, list[Pixel]] = {}
    for pixel, label in label_of.items():
        groups.setdefault(find(label), []).append(pixel)
    return [PixelCluster(frozenset(group)) for group in groups.values()]


def _thin_mask(mask: np.ndarray) -> np.ndarray:
    """Zhang-Suen thinning of one cluster; never erodes it to nothing."""
    img = mask.astype(np.uint8)
    while True:
        changed = False
        for step in (0, 1):
            padded = np.pad(img, 1)
            p2 = padded[:-2, 1:-1]
            p3 = padded[:-2, 2:]
            p4 = padded[1:-1, 2:]
            p5 = padded[2:, 2:]
            p6 = padded[2:, 1:-1]
            p7 = padded[2:, :-2]
            p8 = padded[1:-1, :-2]
            p9 = padded[:-2, :-2]
            ring = (p2, p3, p4, p5, p6, p7, p8, p9)
            neighbors = sum(x.astype(np.int16) for x in ring)
            transitions = sum(
                ((ring[i] == 0) & (ring[(i + 1) % 8] == 1)).astype(np.int16)
                for i in range(8))
            if step == 0:
                c1, c2 = p2 * p4 * p6, p4 * p6 * p8
            else:
                c1, c2 = p2 * p4 * p8, p2 * p6 * p8
            doomed = ((img == 1) & (neighbors >= 2) & (neighbors <= 6)
                      & (transitions == 1) & (c1 == 0) & (c2 == 0))
            if doomed.any():
                if doomed.sum() == img.sum():
                    r, c = np.argwhere(img)[0]
                    doomed[r, c] = False
                img[doomed] = 0
                changed = True
        if not changed:
            return img.astype(bool)


def skeletonize(bitmap: GlyphBitmap) -> GlyphBitmap:
    """Thin every cluster independently to a one pixel wide skeleton.

    Each cluster keeps at least one pixel, so the skeleton has exactly
    as many clusters as the input.
    """
    out = np.zeros(bitmap.pixels.shape, dtype=bool)
    for cluster in connected_components(bitmap):
        mask = np.zeros(bitmap.pixels.shape, dtype=bool)
        for r, c in cluster:
            mask[r, c] = True
        out |= _thin_mask(mask)
    return GlyphBitmap(out)


@dataclass(frozen=True)
class StrokeSegment:
    """An ordered pixel path moving in one of the three directions.

    Paths are canonically oriented: rightward strokes have
    non-decreasing columns, downward and diagonal strokes
    non-decreasing rows.
    """

    path: tuple[Pixel, ...]
    direction: str
    thickness: int

    def __post_init__(self) -> None:
        if not self.path:
            raise GlyphError("stroke path may not be empty")
        if self.direction not in STROKE_PRIORITY:
            raise GlyphError(f"unknown stroke direction {self.direction!r}")
        if self.thickness < 1:
            raise GlyphError("stroke thickness must be at least 1")
        for (r0, c0), (r1, c1) in zip(self.path, self.path[1:]):
            if max(abs(r1 - r0), abs(c1 - c0)) != 1:
                raise GlyphError("stroke path must step between neighbors")
        if self.direction == RIGHTWARD:
            axis = [c for _, c in self.path]
        else:
            axis = [r for r, _ in self.path]
        if any(b < a for a, b in zip(axis, axis[1:])):
            raise GlyphError(
                "stroke path must be monotone along its primary axis")

    def __len__(self) -> int:
        return len(self.path)


def _set_components(pixels: set[Pixel]) -> list[set[Pixel]]:
    """8-connected components of a pixel set, ordered by first pixel."""
    components = []
    remaining = set(pixels)
    for start in sorted(pixels):
        if start not in remaining:
            continue
        group = {start}
        frontier = [start]
        while frontier:
            r, c = frontier.pop()
            for dr, dc in _NEIGHBORS:
                q = (r + dr, c + dc)
                if q in remaining and q not in group:
                    group.add(q)
                    frontier.append(q)
        remaining -= group
        components.append(group)
    return components


def _walk_arc(arc: set[Pixel]) -> list[Pixel]:
    """Order an arc's pixels along the path.

    Arcs have no pixel with more than two neighbors, so they are simple
    paths or cycles.  Open arcs start from their scan-order-first
    endpoint; cycles are cut at their scan-order-first pixel.
    """
    def neighbors(p: Pixel) -> list[Pixel]:
        return sorted((p[0] + dr, p[1] + dc) for dr, dc in _NEIGHBORS
                      if (p[0] + dr, p[1] + dc) in arc)

    endpoints = sorted(p for p in arc if len(neighbors(p)) <= 1)
    start = endpoints[0] if endpoints else min(arc)
    path = [start]
    seen = {start}
    while True:
        options = [q for q in neighbors(path[-1]) if q not in seen]
        if not options:
            return path
        path.append(options[0])
        seen.add(options[0])


def _runs_along(path: list[Pixel]) -> list[tuple[tuple[Pixel, ...], str]]:
    """Split an ordered path into maximal straight runs.

    A run keeps a single step vector; its direction class is rightward
    for horizontal steps, downward for vertical, diagonal otherwise.
    Runs share their boundary pixel with the next run.
    """
    if len(path) == 1:
        return [(tuple(path), RIGHTWARD)]
    runs = []
    start = 0
    steps = [(b[0] - a[0], b[1] - a[1]) for a, b in zip(path, path[1:])]
    for i in range(1, len(steps) + 1):
        if i == len(steps) or steps[i] != steps[start]:
            runs.append((path[start:i + 1], steps[start]))
            start = i
    oriented = []
    for pixels, (dr, dc) in runs:
        if dr < 0 or (dr == 0 and dc < 0):
            pixels = pixels[::-1]
        if dr == 0:
            direction = RIGHTWARD
        elif dc == 0:
            direction = DOWNWARD
        else:
            direction = DIAGONAL
        oriented.append((tuple(pixels), direction))
    return oriented


def _directional_runs(
        skeleton: set[Pixel]) -> list[tuple[tuple[Pixel, ...], str]]:
    """All maximal straight runs of a skeleton, junctions cut out."""
    junctions = set()
    for r, c in skeleton:
        degree = sum((r + dr, c + dc) in skeleton for dr, dc in _NEIGHBORS)
        if degree >= 3:
            junctions.add((r, c))
    runs = []
    for arc in _set_components(skeleton - junctions):
        runs.extend(_runs_along(_walk_arc(arc)))
    return runs


def _perpendicular_thickness(bitmap: GlyphBitmap, path: Sequence[Pixel],
                             direction: str) -> int:
    """Estimate stroke thickness: the lower median over path pixels of
    the contiguous ink extent perpendicular to the stroke."""
    if direction == RIGHTWARD:
        perp = (1, 0)
    elif direction == DOWNWARD:
        perp = (0, 1)
    elif len(path) > 1:
        step = (path[1][0] - path[0][0], path[1][1] - path[0][1])
        perp = (step[1], -step[0])
    else:
        perp = (1, 0)

    def extent(pixel: Pixel) -> int:
        total = 1
        for sign in (1, -1):
            r, c = pixel
            while True:
                r, c = r + sign * perp[0], c + sign * perp[1]
                if (0 <= r < bitmap.height and 0 <= c < bitmap.width
                        and bitmap.pixels[r, c]):
                    total += 1
                else:
                    break
        return total

    extents = sorted(extent(p) for p in path)
    return extents[(len(extents) - 1) // 2]


def find_target_consonant_stroke(glyph: GlyphBitmap) -> StrokeSegment:
    """Locate the stroke a consonant modifier should act on.

    The cluster holding the first ink pixel in scan order is thinned to
    a skeleton whose straight runs compete on direction priority
    (rightward, downward, diagonal), then length, then scan position.
    """
    clusters = connected_components(glyph)
    if not clusters:
        raise GlyphError("glyph has no ink pixels")
    target = clusters[0]
    mask = np.zeros(glyph.pixels.shape, dtype=bool)
    for r, c in target:
        mask[r, c] = True
    skeleton = {(int(r), int(c)) for r, c in np.argwhere(_thin_mask(mask))}
    runs = _directional_runs(skeleton)
    if not runs:
        # The skeleton was nothing but junction pixels (a tiny blob);
        # fall back to a degenerate one pixel stroke.
        runs = [((min(skeleton),), RIGHTWARD)]
    path, direction = min(
        runs, key=lambda run: (STROKE_PRIORITY.index(run[1]),
                               -len(run[0]), run[0][0], run[0]))
    thickness = _perpendicular_thickness(glyph, path, direction)
    return StrokeSegment(path, direction, thickness)


def find_target_vowel_stroke(glyph: GlyphBitmap) -> StrokeSegment:
    """Locate the longest horizontal or vertical ink run of the glyph.

    Vertical runs win length ties (vowel stems are vertical), then
    earlier scan position.  A single pixel run counts as rightward.
    """
    pixels = glyph.pixels
    if not pixels.any():
        raise GlyphError("glyph has no ink pixels")
    runs: list[tuple[int, int, Pixel, str]] = []
    for r in range(glyph.height):
        c = 0
        while c < glyph.width:
            if pixels[r, c]:
                span = c
                while span < glyph.width and pixels[r, span]:
                    span += 1
                runs.append((span - c, 1, (r, c), RIGHTWARD))
                c = span
            else:
                c += 1
    for c in range(glyph.width):
        r = 0
        while r < glyph.height:
            if pixels[r, c]:
                span = r
                while span < glyph.height and pixels[span, c]:
                    span += 1
                runs.append((span - r, 0, (r, c), DOWNWARD))
                r = span
            else:
                r += 1
    length, _, (r, c), direction = min(
        runs, key=lambda run: (-run[0], run[1], run[2]))
    if direction == RIGHTWARD:
        path = tuple((r, c + i) for i in range(length))
    else:
        path = tuple((r + i, c) for i in range(length))
    if length == 1:
        direction = RIGHTWARD
    thickness = _perpendicular_thickness(glyph, path, direction)
    return StrokeSegment(path, direction, thickness)


def _stroke_path(glyph: GlyphBitmap,
                 stroke: StrokeSegment | Sequence[Pixel]) -> list[Pixel]:
    """Normalize a stroke argument and check it lies on glyph ink."""
    path = list(stroke.path if isinstance(stroke, StrokeSegment) else stroke)
    if not path:
        raise GlyphError("stroke path may not be empty")
    for r, c in path:
        if not (0 <= r < glyph.height and 0 <= c < glyph.width):
            raise GlyphError(f"stroke pixel ({r}, {c}) outside the canvas")
        if not glyph.pixels[r, c]:
            raise GlyphError(f"stroke pixel ({r}, {c}) is not ink")
    return path


def _dilate(glyph: GlyphBitmap,
            centers: Iterable[tuple[Pixel, int]]) -> GlyphBitmap:
    out = np.array(glyph.pixels)
    height, width = out.shape
    for (r, c), radius in centers:
        out[max(0, r - radius):min(height, r + radius + 1),
            max(0, c - radius):min(width, c + radius + 1)] = True
    return GlyphBitmap(out)


def thicken_stroke(glyph: GlyphBitmap,
                   stroke: StrokeSegment | Sequence[Pixel],
                   radius: int) -> GlyphBitmap:
    """Swell the stroke uniformly: union the glyph with the Chebyshev
    dilation of the stroke path by `radius`, clipped to the canvas."""
    if not isinstance(radius, int) or radius < 1:
        raise GlyphError("thicken radius must be a positive integer")
    path = _stroke_path(glyph, stroke)
    return _dilate(glyph, ((pixel, radius) for pixel in path))


def taper_radii(count: int, start_width: int, end_width: int) -> list[int]:
    """Per-position dilation radii for a taper over `count` pixels.

    The radius ramps linearly from start_width to end_width, rounded to
    the nearest integer; a single pixel path sits at the midpoint.
    """
    if count == 1:
        positions = [0.5]
    else:
        positions = [i / (count - 1) for i in range(count)]
    return [int(math.floor(start_width + (end_width - start_width) * t + 0.5))
            for t in positions]


def taper_stroke(glyph: GlyphBitmap,
                 stroke: StrokeSegment | Sequence[Pixel],
                 start_width: int, end_width: int) -> GlyphBitmap:
    """Swell the stroke with a linearly ramped radius along its path."""
    for width in (start_width, end_width):
        if not isinstance(width, int) or width < 1:
            raise GlyphError("taper widths must be positive integers")
    path = _stroke_path(glyph, stroke)
    radii = taper_radii(len(path), start_width, end_width)
    return _dilate(glyph, zip(path, radii))
