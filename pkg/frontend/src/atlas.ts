/**
 * Glyph atlas loading from the exported asset bundle: `atlas.json`
 * names every glyph file, keyed by token name ("G", "B*", "A^", "SIL").
 */

import { JamoToken, SILENT, tokenAtom } from "./jamo.js";
import { Bitmap, parsePbm } from "./pbm.js";

export class AtlasError extends Error {}

export interface GlyphAtlas {
  readonly glyphs: ReadonlyMap<string, Bitmap>;
}

/** Atlas lookup name for a token (role-independent). */
export function glyphKey(token: JamoToken): string {
  const atom = tokenAtom(token);
  return atom === "_" ? SILENT : atom;
}

export function glyphFor(atlas: GlyphAtlas, token: JamoToken): Bitmap {
  const glyph = atlas.glyphs.get(glyphKey(token));
  if (glyph === undefined) {
    throw new AtlasError(`atlas has no glyph for token '${glyphKey(token)}'`);
  }
  return glyph;
}

/** Parse atlas.json into the glyph-name to file-name index. */
export function parseAtlasIndex(text: string): Map<string, string> {
  let payload: unknown;
  try {
    payload = JSON.parse(text);
  } catch {
    throw new AtlasError("unreadable atlas.json");
  }
  const entries = (payload as Record<string, unknown>)?.glyphs;
  if (typeof entries !== "object" || entries === null || Array.isArray(entries)) {
    throw new AtlasError("atlas.json lacks a glyphs table");
  }
  const index = new Map<string, string>();
  for (const [key, filename] of Object.entries(entries)) {
    if (typeof filename !== "string") {
      throw new AtlasError(`atlas entry '${key}' has no file name`);
    }
    index.set(key, filename);
  }
  return index;
}

/**
 * Assemble the atlas from the index and the fetched glyph files.
 * Missing or unparseable files are reported as a list so the demo can
 * show them instead of dying on the first one.
 */
export function assembleAtlas(
  index: ReadonlyMap<string, string>,
  files: ReadonlyMap<string, Uint8Array>,
): { atlas: GlyphAtlas; missing: string[] } {
  const glyphs = new Map<string, Bitmap>();
  const missing: string[] = [];
  for (const [key, filename] of index) {
    const data = files.get(filename);
    if (data === undefined) {
      missing.push(filename);
      continue;
    }
    try {
      glyphs.set(key, parsePbm(data));
    } catch {
      missing.push(filename);
    }
  }
  return { atlas: { glyphs }, missing };
}
