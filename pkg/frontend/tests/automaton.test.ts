import { describe, expect, it } from "vitest";

import { CompositionState, decompose } from "../src/automaton.js";
import {
  ComposeError,
  SyllableBlock,
  makeBlock,
  makeToken,
  serializeWords,
} from "../src/jamo.js";

const onset = (base: string, modified = false) =>
  makeToken(base, "onset", modified ? "modified" : "plain");
const vowel = (base: string, rhotic = false) =>
  makeToken(base, "nucleus", rhotic ? "rhotic" : "plain");

function typeAll(state: CompositionState, ...atoms: (string | number)[]) {
  for (const atom of atoms) {
    if (typeof atom === "number") {
      state = state.feedTone(atom);
    } else if (atom === "^") {
      state = state.toggleRhotic();
    } else if (atom === "<") {
      state = state.backspace();
    } else {
      const modified = atom.endsWith("*");
      const base = modified ? atom.slice(0, -1) : atom;
      const asVowel = ["A", "AE", "YA", "YAE", "EO", "E", "YEO", "YE", "O",
        "WA", "WAE", "OE", "YO", "U", "WO", "WE", "WI", "YU", "EU", "UI",
        "I", "SIL"].includes(base);
      state = state.feed(asVowel ? vowel(base) : onset(base, modified));
    }
  }
  return state;
}

function emitted(state: CompositionState): string {
  const blocks: SyllableBlock[] = [...state.emitted];
  const done = state.completed();
  if (done) blocks.push(done);
  return serializeWords(blocks.length ? [blocks] : []);
}

describe("composition", () => {
  it("composes onset+vowel+coda blocks", () => {
    const state = typeAll(new CompositionState(), "N", "I", "H", "A", "NG", "O");
    expect(emitted(state)).toBe("N+I . H+A . NG+O");
  });

  it("re-opens a held coda when a vowel follows", () => {
    const state = typeAll(new CompositionState(), "B", "A", "G", "A");
    expect(emitted(state)).toBe("B+A . G+A");
  });

  it("keeps the tone with the block it was typed on", () => {
    const state = typeAll(new CompositionState(), "B", "A", 3, "G", "A");
    expect(emitted(state)).toBe("B+A3 . G+A");
  });

  it("holds a trailing consonant as a coda", () => {
    const state = typeAll(new CompositionState(), "N", "I", "H");
    expect(emitted(state)).toBe("N+I+H");
  });

  it("flush rejects a lone onset", () => {
    const state = typeAll(new CompositionState(), "G");
    expect(state.completed()).toBeNull();
    expect(() => state.flush()).toThrow(ComposeError);
  });

  it("rejects a vowel without an onset and double vowels", () => {
    expect(() => new CompositionState().feed(vowel("A"))).toThrow(/without an onset/);
    const open = typeAll(new CompositionState(), "G", "A");
    expect(() => open.feed(vowel("I"))).toThrow(/two vowels/);
  });

  it("rejects a tone with nothing open", () => {
    expect(() => new CompositionState().feedTone(3)).toThrow(/no open syllable/);
    expect(() => typeAll(new CompositionState(), "G", "A").feedTone(9)).toThrow();
  });

  it("toggles the rhotic flag on the pending vowel only", () => {
    const state = typeAll(new CompositionState(), "G", "A", "^");
    expect(emitted(state)).toBe("G+A^");
    expect(emitted(typeAll(state, "^"))).toBe("G+A");
    expect(() => typeAll(new CompositionState(), "G").toggleRhotic())
      .toThrow(/no pending vowel/);
    expect(() => typeAll(new CompositionState(), "S", "SIL").toggleRhotic())
      .toThrow(/silent vowel/);
  });

  it("backspace peels coda, nucleus, onset, then reopens the last block", () => {
    let state = typeAll(new CompositionState(), "N", "I", "H", "A");
    state = typeAll(state, "<", "<");  // drop A, then peel H
    expect(emitted(state)).toBe("N+I");
    state = typeAll(state, "<");       // reopen N+I, peel I... first reopen
    expect(state.emitted).toHaveLength(0);
    expect(state.completed()).not.toBeNull();
    state = typeAll(state, "<", "<");
    expect(state.isEmpty()).toBe(true);
    expect(state.backspace().isEmpty()).toBe(true);
  });

  it("typo fix: backspace a wrong onset, retype, keep the rhotic block", () => {
    let state = typeAll(new CompositionState(), "G", "A", "^", "K", "<");
    state = typeAll(state, "NG", "I");
    expect(emitted(state)).toBe("G+A^ . NG+I");
  });

  it("decompose feeds back to the same blocks", () => {
    const blocks = [
      makeBlock(onset("B", true), vowel("E"), null, 0),
      makeBlock(onset("S"), makeToken("SIL", "nucleus"), null, 0),
      makeBlock(onset("G"), vowel("A", true), makeToken("K", "coda", "plain"), 4),
    ];
    let state = new CompositionState();
    for (const item of decompose(blocks)) state = state.feed(item);
    state = state.flush();
    expect(state.emitted).toEqual(blocks);
  });
});
