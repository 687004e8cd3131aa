"""Glyph atlas construction and token-stream rendering.

An atlas maps token names ("G", "B*", "A^", "SIL") to glyph bitmaps.
Base glyphs are authored PBM files; modified and rhotic variants are
synthesized from them with the stroke finder and the swelling
operators.  On disk an atlas is a directory of PBM files plus an
`atlas.json` index; the file stem replaces `*` with `_m` and `^` with
`_r` so that `B*` lives in `B_m.pbm`.

Rendering packs each syllable block into one square cell of side
`cell`, preceded by a tone strip of `max(2, cell // 4)` rows:

  * blocks with a coda reserve the bottom `cell - 2 * cell // 3` rows
    for it, full width;
  * vertical-vowel blocks put the onset in the left half of the
    remaining body and the nucleus in the right half;
  * horizontal-vowel blocks (O, YO, U, YU, EU, and the silent vowel)
    put the onset in the top half of the body and the nucleus below;
  * compound vowels with both a vertical and a horizontal part use the
    vertical placement, their glyphs carry the horizontal bar.

Glyphs are scaled into their rectangles with nearest-neighbor
sampling (source index = i * source_size // target_size).  Tones mark
the strip above the cell: tones 1..4 draw that many two pixel oblique
ticks, the neutral tone 5 draws a single dot, tone 0 draws nothing.
Words are separated by one blank cell.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from pathlib import Path
from typing import Mapping, Sequence

import numpy as np

from .glyphs import (
    GlyphBitmap,
    find_target_consonant_stroke,
    find_target_vowel_stroke,
    load_glyph,
    taper_stroke,
    thicken_stroke,
)
from .jamo import (
    CONSONANTS,
    MODIFIABLE_CONSONANTS,
    SILENT,
    VOWELS,
    JamoError,
    JamoToken,
    Role,
    SyllableBlock,
    parse_token_atom,
    token_atom,
)

ATLAS_VERSION = 1
DEFAULT_CELL = 16

# Token names every atlas must provide a base glyph for.
BASE_KEYS = CONSONANTS + VOWELS + (SILENT,)

# Vowels whose long stem runs vertically; all others lie horizontally.
VERTICAL_VOWELS = frozenset(
    ("A", "AE", "YA", "YAE", "EO", "E", "YEO", "YE", "I",
     "WA", "WAE", "OE", "WO", "WE", "WI", "UI"))
HORIZONTAL_VOWELS = frozenset(("O", "YO", "U", "YU", "EU", SILENT))
assert VERTICAL_VOWELS | HORIZONTAL_VOWELS == frozenset(VOWELS) | {SILENT}


class AtlasError(ValueError):
    """Missing glyphs, bad manifests, or unloadable atlas directories."""


def glyph_key(token: JamoToken) -> str:
    """Atlas lookup name for a token (role-independent)."""
    atom = token_atom(token)
    return SILENT if atom == "_" else atom


def key_filename(key: str) -> str:
    return key.replace("*", "_m").replace("^", "_r") + ".pbm"


def default_manifest() -> dict:
    """The shipped synthesis plan: every modifiable consonant thickened
    by radius 1, every vowel's rhotic variant tapered from 1 to 2."""
    variants = []
    for base in CONSONANTS:
        if base in MODIFIABLE_CONSONANTS:
            variants.append({"token": base + "*", "op": "thicken",
                             "radius": 1})
    for base in VOWELS:
        variants.append({"token": base + "^", "op": "taper",
                         "start_width": 1, "end_width": 2})
    return {"version": ATLAS_VERSION, "variants": variants}


@dataclass(frozen=True)
class GlyphAtlas:
    """Immutable token-name to bitmap mapping."""

    glyphs: Mapping[str, GlyphBitmap]

    def glyph_for(self, token: JamoToken) -> GlyphBitmap:
        key = glyph_key(token)
        try:
            return self.glyphs[key]
        except KeyError:
            raise AtlasError(f"atlas has no glyph for token {key!r}") from None

    def __contains__(self, key: str) -> bool:
        return key in self.glyphs

    def keys(self):
        return self.glyphs.keys()


def synthesize_variant(base: GlyphBitmap, entry: Mapping) -> GlyphBitmap:
    """Generate one manifest variant from its base glyph."""
    token = entry.get("token", "")
    if token.endswith("*"):
        role, finder = Role.ONSET, find_target_consonant_stroke
    elif token.endswith("^"):
        role, finder = Role.NUCLEUS, find_target_vowel_stroke
    else:
        raise AtlasError(
            f"manifest token {token!r} is not a modified or rhotic form")
    try:
        parse_token_atom(token, role)
    except JamoError as exc:
        raise AtlasError(f"manifest token {token!r}: {exc}") from None
    stroke = finder(base)
    op = entry.get("op")
    if op == "thicken":
        return thicken_stroke(base, stroke, entry.get("radius", 1))
    if op == "taper":
        return taper_stroke(base, stroke, entry.get("start_width", 1),
                            entry.get("end_width", 2))
    raise AtlasError(f"unknown glyph operation {op!r}")


def build_atlas(base_dir, manifest: dict | None = None,
                out_dir: Path | None = None) -> GlyphAtlas:
    """Load every base glyph from `base_dir`, synthesize the manifest's
    variants, and optionally write the result as a directory.

    The output is deterministic: base glyphs in table order, then
    variants in manifest order, and a sorted `atlas.json` index.
    """
    if manifest is None:
        manifest = default_manifest()
    glyphs: dict[str, GlyphBitmap] = {}
    for key in BASE_KEYS:
        source = base_dir.joinpath(key_filename(key))
        if not source.is_file():
            raise AtlasError(f"missing base glyph {key_filename(key)}")
        glyphs[key] = load_glyph(source.read_bytes())
    for entry in manifest.get("variants", ()):
        token = entry.get("token", "")
        base_key = token[:-1]
        if base_key not in glyphs:
            raise AtlasError(f"manifest token {token!r} has no base glyph")
        glyphs[token] = synthesize_variant(glyphs[base_key], entry)
    atlas = GlyphAtlas(glyphs)
    if out_dir is not None:
        out_dir.mkdir(parents=True, exist_ok=True)
        index = {}
        for key, glyph in glyphs.items():
            filename = key_filename(key)
            (out_dir / filename).write_bytes(glyph.to_pbm())
            index[key] = filename
        payload = {"version": ATLAS_VERSION, "glyphs": index}
        (out_dir / "atlas.json").write_text(
            json.dumps(payload, indent=2, sort_keys=True) + "\n",
            encoding="utf-8")
    return atlas


def load_atlas(directory: Path) -> GlyphAtlas:
    """Read a directory written by build_atlas."""
    index_path = directory.joinpath("atlas.json")
    if not index_path.is_file():
        raise AtlasError(f"no atlas.json under {directory}")
    try:
        payload = json.loads(index_path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise AtlasError(f"unreadable atlas.json: {exc}") from None
    entries = payload.get("glyphs")
    if not isinstance(entries, dict):
        raise AtlasError("atlas.json lacks a glyphs table")
    glyphs = {}
    for key, filename in entries.items():
        source = directory.joinpath(filename)
        if not source.is_file():
            raise AtlasError(f"atlas file {filename} is missing")
        glyphs[key] = load_glyph(source.read_bytes())
    return GlyphAtlas(glyphs)


def packaged_glyph_dir():
    return resources.files("hangulx").joinpath("data", "glyphs")


@lru_cache(maxsize=1)
def default_atlas() -> GlyphAtlas:
    """The atlas built from the packaged base glyphs and the default
    manifest."""
    return build_atlas(packaged_glyph_dir())


def tone_strip_height(cell: int) -> int:
    return max(2, cell // 4)


def tone_mark_pixels(tone: int, cell: int) -> list[tuple[int, int]]:
    """Mark pixels for one cell's tone strip, relative to the strip."""
    strip = tone_strip_height(cell)
    if tone == 0:
        return []
    if tone == 5:
        return [(strip - 1, 1)]
    pixels = []
    for k in range(tone):
        for r, c in ((strip - 1, 3 * k), (strip - 2, 3 * k + 1)):
            if c < cell:
                pixels.append((r, c))
    return pixels


def _scaled(glyph: GlyphBitmap, height: int, width: int) -> np.ndarray:
    """Nearest-neighbor resample to height x width."""
    rows = [r * glyph.height // height for r in range(height)]
    cols = [c * glyph.width // width for c in range(width)]
    return glyph.pixels[np.ix_(rows, cols)]


def _block_rects(block: SyllableBlock,
                 cell: int) -> list[tuple[JamoToken, int, int, int, int]]:
    """(token, top, left, height, width) placements inside one cell."""
    body = cell if block.coda is None else 2 * cell // 3
    rects = []
    if block.nucleus.base in VERTICAL_VOWELS:
        rects.append((block.onset, 0, 0, body, cell // 2))
        rects.append((block.nucleus, 0, cell // 2, body, cell - cell // 2))
    else:
        rects.append((block.onset, 0, 0, body // 2, cell))
        rects.append((block.nucleus, body // 2, 0, body - body // 2, cell))
    if block.coda is not None:
        rects.append((block.coda, body, 0, cell - body, cell))
    return rects


def render_text(words, atlas: GlyphAtlas,
                cell: int = DEFAULT_CELL) -> GlyphBitmap:
    """Render blocks onto one page, one cell per block.

    Accepts a flat block sequence (one word) or a sequence of words;
    words are separated by a blank cell.  The page carries a tone strip
    above the cells.  Raises AtlasError when a glyph is missing.
    """
    if cell < 4:
        raise AtlasError("cell size must be at least 4")
    words = list(words)
    if words and isinstance(words[0], SyllableBlock):
        words = [words]
    words = [list(word) for word in words if len(list(word))]
    total = sum(len(word) for word in words)
    if total == 0:
        return GlyphBitmap.blank(0, 0)
    strip = tone_strip_height(cell)
    width = (total + len(words) - 1) * cell
    page = np.zeros((strip + cell, width), dtype=bool)
    column = 0
    for w, word in enumerate(words):
        if w:
            column += cell
        for block in word:
            for token, top, left, height, rect_w in _block_rects(block, cell):
                scaled = _scaled(atlas.glyph_for(token), height, rect_w)
                page[strip + top:strip + top + height,
                     column + left:column + left + rect_w] |= scaled
            for r, c in tone_mark_pixels(block.tone, cell):
                page[r, column + c] = True
            column += cell
    return GlyphBitmap(page)
