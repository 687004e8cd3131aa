import { readFileSync } from "node:fs";
import { describe, expect, it } from "vitest";

import { assembleAtlas, glyphFor, parseAtlasIndex } from "../src/atlas.js";
import { makeBlock, makeToken, SyllableBlock } from "../src/jamo.js";
import { Bitmap, getPixel, parsePbm } from "../src/pbm.js";
import { renderPage, toneMarkPixels, toneStripHeight } from "../src/render.js";

const assetUrl = (rel: string) =>
  new URL(`../public/assets/${rel}`, import.meta.url);

function loadExportedAtlas() {
  const index = parseAtlasIndex(readFileSync(assetUrl("atlas/atlas.json"), "utf-8"));
  const files = new Map<string, Uint8Array>();
  for (const name of index.values()) {
    files.set(name, new Uint8Array(readFileSync(assetUrl(`atlas/${name}`))));
  }
  return assembleAtlas(index, files);
}

const { atlas, missing } = loadExportedAtlas();

const onset = (base: string, modified = false) =>
  makeToken(base, "onset", modified ? "modified" : "plain");
const vowel = (base: string, rhotic = false) =>
  makeToken(base, "nucleus", rhotic ? "rhotic" : "plain");

function block(
  o: string, n: string, tone = 0,
  flags: { om?: boolean; rh?: boolean; coda?: string } = {},
): SyllableBlock {
  return makeBlock(
    onset(o, flags.om ?? false), vowel(n, flags.rh ?? false),
    flags.coda ? makeToken(flags.coda, "coda") : null, tone);
}

function samePage(a: Bitmap, b: Bitmap): boolean {
  return a.width === b.width && a.height === b.height &&
    a.bits.every((bit, i) => bit === b.bits[i]);
}

describe("atlas", () => {
  it("loads the full exported atlas", () => {
    expect(missing).toEqual([]);
    expect(atlas.glyphs.size).toBe(72);
    expect(glyphFor(atlas, onset("B", true))).toBeDefined();
    expect(glyphFor(atlas, vowel("A", true))).toBeDefined();
    expect(glyphFor(atlas, vowel("SIL"))).toBeDefined();
  });

  it("flags the missing files by name", () => {
    const index = parseAtlasIndex(readFileSync(assetUrl("atlas/atlas.json"), "utf-8"));
    const partial = assembleAtlas(index, new Map());
    expect(partial.missing.length).toBe(index.size);
    expect(partial.missing).toContain("B_m.pbm");
  });

  it("rejects a broken index", () => {
    expect(() => parseAtlasIndex("{broken")).toThrow(/unreadable/);
    expect(() => parseAtlasIndex("{}")).toThrow(/glyphs table/);
  });
});

describe("page rendering", () => {
  it("matches the CLI renderer bit for bit", () => {
    const cases: [string, SyllableBlock[][]][] = [
      ["fixtures/render/greeting.pbm", [[
        block("N", "I", 3), block("H", "A", 3), block("NG", "O", 3),
      ]]],
      ["fixtures/render/mixed.pbm", [
        [block("B", "E", 0, { om: true }), block("S", "SIL"), block("T", "SIL")],
        [block("G", "A", 0, { rh: true })],
      ]],
    ];
    for (const [fixture, words] of cases) {
      const expected = parsePbm(
        readFileSync(new URL(`../${fixture}`, import.meta.url)));
      expect(samePage(renderPage(words, atlas), expected)).toBe(true);
    }
  });

  it("renders one cell per block plus a word gap", () => {
    const page = renderPage([[block("G", "A")], [block("N", "O")]], atlas);
    expect(page.width).toBe(3 * 16);
    expect(page.height).toBe(toneStripHeight(16) + 16);
    // the separator cell stays blank
    for (let r = 0; r < page.height; r++) {
      for (let c = 16; c < 32; c++) {
        expect(getPixel(page, r, c)).toBe(false);
      }
    }
  });

  it("draws tone ticks in the strip and nothing for tone zero", () => {
    expect(toneMarkPixels(0, 16)).toEqual([]);
    expect(toneMarkPixels(5, 16)).toEqual([[3, 1]]);
    expect(toneMarkPixels(2, 16).length).toBe(4);
    const quiet = renderPage([[block("G", "A")]], atlas);
    const strip = toneStripHeight(16);
    for (let r = 0; r < strip; r++) {
      for (let c = 0; c < quiet.width; c++) {
        expect(getPixel(quiet, r, c)).toBe(false);
      }
    }
  });

  it("returns an empty page for no blocks and rejects tiny cells", () => {
    expect(renderPage([], atlas).width).toBe(0);
    expect(renderPage([[]], atlas).width).toBe(0);
    expect(() => renderPage([[block("G", "A")]], atlas, 3)).toThrow(/at least 4/);
  });

  it("reports a missing glyph by token name", () => {
    const empty = { glyphs: new Map() };
    expect(() => renderPage([[block("G", "A")]], empty)).toThrow(/no glyph for token 'G'/);
  });
});
