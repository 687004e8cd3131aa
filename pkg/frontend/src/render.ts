/**
 * Block rendering: pack each syllable block into one square cell with a
 * tone strip above, compositing atlas bitmaps scaled nearest-neighbor.
 *
 * The cell layout matches the CLI renderer bit for bit:
 *   - blocks with a coda reserve the bottom `cell - 2*cell/3` rows;
 *   - vertical-vowel blocks split the body left/right;
 *   - horizontal-vowel blocks (O YO U YU EU and the silent vowel)
 *     split it top/bottom;
 *   - tones 1..4 draw oblique ticks in the strip, 5 a single dot.
 */

import { JamoToken, SyllableBlock } from "./jamo.js";
import { AtlasError, GlyphAtlas, glyphFor } from "./atlas.js";
import { Bitmap, getPixel, makeBitmap } from "./pbm.js";

export const DEFAULT_CELL = 16;

const VERTICAL_VOWELS: ReadonlySet<string> = new Set([
  "A", "AE", "YA", "YAE", "EO", "E", "YEO", "YE", "I",
  "WA", "WAE", "OE", "WO", "WE", "WI", "UI",
]);

export function toneStripHeight(cell: number): number {
  return Math.max(2, Math.floor(cell / 4));
}

/** Mark pixels for one cell's tone strip, relative to the strip. */
export function toneMarkPixels(tone: number, cell: number): [number, number][] {
  const strip = toneStripHeight(cell);
  if (tone === 0) return [];
  if (tone === 5) return [[strip - 1, 1]];
  const pixels: [number, number][] = [];
  for (let k = 0; k < tone; k++) {
    for (const [r, c] of [[strip - 1, 3 * k], [strip - 2, 3 * k + 1]]) {
      if (c < cell) pixels.push([r, c]);
    }
  }
  return pixels;
}

interface Rect {
  token: JamoToken;
  top: number;
  left: number;
  height: number;
  width: number;
}

function blockRects(block: SyllableBlock, cell: number): Rect[] {
  const body = block.coda === null ? cell : Math.floor((2 * cell) / 3);
  const rects: Rect[] = [];
  if (VERTICAL_VOWELS.has(block.nucleus.base)) {
    const half = Math.floor(cell / 2);
    rects.push({ token: block.onset, top: 0, left: 0, height: body, width: half });
    rects.push({ token: block.nucleus, top: 0, left: half, height: body, width: cell - half });
  } else {
    const half = Math.floor(body / 2);
    rects.push({ token: block.onset, top: 0, left: 0, height: half, width: cell });
    rects.push({ token: block.nucleus, top: half, left: 0, height: body - half, width: cell });
  }
  if (block.coda !== null) {
    rects.push({ token: block.coda, top: body, left: 0, height: cell - body, width: cell });
  }
  return rects;
}

/** Render blocks onto one page, one cell per block, words a cell apart. */
export function renderPage(
  words: readonly (readonly SyllableBlock[])[],
  atlas: GlyphAtlas,
  cell: number = DEFAULT_CELL,
): Bitmap {
  if (cell < 4) throw new AtlasError("cell size must be at least 4");
  const nonEmpty = words.filter((w) => w.length > 0);
  const total = nonEmpty.reduce((n, w) => n + w.length, 0);
  if (total === 0) return makeBitmap(0, 0);
  const strip = toneStripHeight(cell);
  const width = (total + nonEmpty.length - 1) * cell;
  const page = makeBitmap(width, strip + cell);
  let column = 0;
  nonEmpty.forEach((word, w) => {
    if (w) column += cell;
    for (const block of word) {
      for (const rect of blockRects(block, cell)) {
        blit(page, glyphFor(atlas, rect.token), strip + rect.top,
             column + rect.left, rect.height, rect.width);
      }
      for (const [r, c] of toneMarkPixels(block.tone, cell)) {
        page.bits[r * page.width + column + c] = 1;
      }
      column += cell;
    }
  });
  return page;
}

/** Nearest-neighbor blit (source index = i * source size / target size). */
function blit(
  page: Bitmap, glyph: Bitmap,
  top: number, left: number, height: number, width: number,
): void {
  for (let r = 0; r < height; r++) {
    const sr = Math.floor((r * glyph.height) / height);
    for (let c = 0; c < width; c++) {
      const sc = Math.floor((c * glyph.width) / width);
      if (getPixel(glyph, sr, sc)) {
        page.bits[(top + r) * page.width + (left + c)] = 1;
      }
    }
  }
}
