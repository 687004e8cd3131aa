#!/usr/bin/env python3
"""Draw the 41 base jamo glyphs and write them as 16x16 PBM files.

Regenerates src/hangulx/data/glyphs (the files are committed, so
installing the package needs no drawing step).  Shapes are hand placed
on a 16x16 grid with two pixel strokes; vowels keep their long stem
strictly longer than any other run so the stroke finder always picks
the stem.
"""

import argparse
import pathlib

import numpy as np

from hangulx.atlas import BASE_KEYS, key_filename
from hangulx.glyphs import GlyphBitmap

SIZE = 16


def hbar(grid, r, c0, c1):
    grid[r:r + 2, c0:c1 + 1] = True


def vbar(grid, c, r0, r1):
    grid[r0:r1 + 1, c:c + 2] = True


def ring(grid, center_r, center_c, inner, outer):
    for r in range(SIZE):
        for c in range(SIZE):
            d = ((r - center_r) ** 2 + (c - center_c) ** 2) ** 0.5
            if inner <= d <= outer:
                grid[r, c] = True


def legs(grid, apex_r, apex_c, n, spread=1):
    """Two legs spreading down from an apex (the siot shape).

    spread=1 draws clean diagonals; larger values draw steeper
    stairstepped legs (one column sideways per `spread` rows).
    """
    for i in range(n):
        off = (i + 1) // spread if spread > 1 else i
        left, right = apex_c - off, apex_c + off
        grid[apex_r + i, max(0, left):left + 2] = True
        grid[apex_r + i, max(0, right - 1):right + 1] = True


def draw_g(g):
    hbar(g, 1, 1, 14)
    vbar(g, 13, 2, 14)


def draw_gg(g):
    hbar(g, 1, 1, 6)
    vbar(g, 5, 2, 14)
    hbar(g, 1, 9, 14)
    vbar(g, 13, 2, 14)


def draw_n(g):
    vbar(g, 1, 1, 13)
    hbar(g, 13, 1, 14)


def draw_d(g):
    hbar(g, 1, 1, 14)
    vbar(g, 1, 2, 12)
    hbar(g, 13, 1, 14)


def draw_dd(g):
    hbar(g, 1, 1, 6)
    vbar(g, 1, 2, 12)
    hbar(g, 13, 1, 6)
    hbar(g, 1, 9, 14)
    vbar(g, 9, 2, 12)
    hbar(g, 13, 9, 14)


def draw_r(g):
    hbar(g, 1, 1, 14)
    vbar(g, 13, 2, 6)
    hbar(g, 6, 1, 14)
    vbar(g, 1, 7, 12)
    hbar(g, 13, 1, 14)


def draw_m(g):
    hbar(g, 1, 1, 14)
    hbar(g, 13, 1, 14)
    vbar(g, 1, 1, 14)
    vbar(g, 13, 1, 14)


def draw_b(g):
    vbar(g, 1, 1, 14)
    vbar(g, 13, 1, 14)
    hbar(g, 7, 2, 12)
    hbar(g, 13, 2, 12)


def draw_bb(g):
    vbar(g, 1, 1, 14)
    vbar(g, 5, 1, 14)
    hbar(g, 7, 3, 4)
    hbar(g, 13, 3, 4)
    vbar(g, 9, 1, 14)
    vbar(g, 13, 1, 14)
    hbar(g, 7, 11, 12)
    hbar(g, 13, 11, 12)


def draw_s(g):
    legs(g, 4, 7, 7)


def draw_ss(g):
    legs(g, 2, 3, 13, spread=4)
    legs(g, 2, 11, 13, spread=4)


def draw_ng(g):
    ring(g, 7.5, 7.5, 4.0, 6.5)


def draw_j(g):
    hbar(g, 1, 1, 14)
    legs(g, 5, 7, 7)


def draw_jj(g):
    hbar(g, 1, 1, 6)
    legs(g, 4, 3, 11, spread=4)
    hbar(g, 1, 9, 14)
    legs(g, 4, 11, 11, spread=4)


def draw_ch(g):
    vbar(g, 7, 0, 1)
    hbar(g, 3, 1, 14)
    legs(g, 7, 7, 7)


def draw_k(g):
    hbar(g, 1, 1, 14)
    vbar(g, 13, 2, 14)
    hbar(g, 7, 1, 13)


def draw_t(g):
    hbar(g, 1, 1, 14)
    hbar(g, 7, 1, 14)
    hbar(g, 13, 1, 14)
    vbar(g, 1, 2, 12)


def draw_p(g):
    hbar(g, 1, 1, 14)
    hbar(g, 13, 1, 14)
    vbar(g, 4, 3, 12)
    vbar(g, 10, 3, 12)


def draw_h(g):
    vbar(g, 7, 0, 1)
    hbar(g, 3, 2, 13)
    ring(g, 9.5, 7.5, 2.5, 4.5)


CONSONANT_SHAPES = {
    "G": draw_g, "GG": draw_gg, "N": draw_n, "D": draw_d, "DD": draw_dd,
    "R": draw_r, "M": draw_m, "B": draw_b, "BB": draw_bb, "S": draw_s,
    "SS": draw_ss, "NG": draw_ng, "J": draw_j, "JJ": draw_jj,
    "CH": draw_ch, "K": draw_k, "T": draw_t, "P": draw_p, "H": draw_h,
}

# Vowels as (op, args) lists: stems run the full box so the stroke
# finder always lands on them.
VOWEL_STROKES = {
    "A": [("v", 7, 1, 14), ("h", 7, 9, 13)],
    "AE": [("v", 5, 1, 14), ("v", 11, 1, 14), ("h", 7, 7, 10)],
    "YA": [("v", 7, 1, 14), ("h", 4, 9, 13), ("h", 9, 9, 13)],
    "YAE": [("v", 5, 1, 14), ("v", 11, 1, 14), ("h", 4, 7, 10),
            ("h", 9, 7, 10)],
    "EO": [("v", 9, 1, 14), ("h", 7, 2, 8)],
    "E": [("v", 9, 1, 14), ("v", 13, 1, 14), ("h", 7, 2, 8)],
    "YEO": [("v", 9, 1, 14), ("h", 4, 2, 8), ("h", 9, 2, 8)],
    "YE": [("v", 9, 1, 14), ("v", 13, 1, 14), ("h", 4, 2, 8),
           ("h", 9, 2, 8)],
    "O": [("h", 11, 1, 14), ("v", 7, 3, 10)],
    "WA": [("h", 10, 0, 7), ("v", 3, 4, 9), ("v", 10, 1, 14),
           ("h", 6, 12, 14)],
    "WAE": [("h", 10, 0, 5), ("v", 2, 4, 9), ("v", 8, 1, 14),
            ("v", 13, 1, 14), ("h", 6, 10, 12)],
    "OE": [("h", 10, 0, 7), ("v", 3, 4, 9), ("v", 12, 1, 14)],
    "YO": [("h", 11, 1, 14), ("v", 4, 3, 10), ("v", 10, 3, 10)],
    "U": [("h", 3, 1, 14), ("v", 7, 4, 13)],
    "WO": [("h", 4, 0, 7), ("v", 3, 5, 10), ("v", 11, 1, 14),
           ("h", 8, 6, 10)],
    "WE": [("h", 4, 0, 5), ("v", 2, 5, 10), ("v", 9, 1, 14),
           ("v", 13, 1, 14), ("h", 8, 5, 8)],
    "WI": [("h", 4, 0, 7), ("v", 3, 5, 10), ("v", 12, 1, 14)],
    "YU": [("h", 3, 1, 14), ("v", 4, 4, 13), ("v", 10, 4, 13)],
    "EU": [("h", 7, 1, 14)],
    "UI": [("h", 10, 0, 8), ("v", 12, 1, 14)],
    "I": [("v", 7, 1, 14)],
    "SIL": [("h", 7, 4, 11)],
}


def draw(name):
    grid = np.zeros((SIZE, SIZE), dtype=bool)
    if name in CONSONANT_SHAPES:
        CONSONANT_SHAPES[name](grid)
    else:
        for op, *args in VOWEL_STROKES[name]:
            (hbar if op == "h" else vbar)(grid, *args)
    return GlyphBitmap(grid)


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument(
        "--out", type=pathlib.Path,
        default=pathlib.Path(__file__).resolve().parent.parent
        / "src" / "hangulx" / "data" / "glyphs")
    args = parser.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)
    for name in BASE_KEYS:
        path = args.out / key_filename(name)
        path.write_bytes(draw(name).to_pbm())
    print(f"wrote {len(BASE_KEYS)} glyphs to {args.out}")


if __name__ == "__main__":
    main()
