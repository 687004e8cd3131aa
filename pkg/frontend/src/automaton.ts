/**
 * The composition automaton: a faithful port of the CLI's behavior.
 *
 * States are immutable; every transition returns a fresh state. The
 * invariants mirror a plain Hangul IME: a consonant typed after a
 * complete block is held as a coda candidate and re-opens as the next
 * block's onset when a vowel follows; tone marks bind to the open
 * block; backspace peels coda, nucleus, onset, then reopens the last
 * emitted block.
 */

import {
  ComposeError,
  JamoToken,
  SyllableBlock,
  ToneMark,
  SILENT,
  blockTokens,
  isToneMark,
  makeBlock,
  makeToken,
  makeToneMark,
} from "./jamo.js";

export class CompositionState {
  readonly emitted: readonly SyllableBlock[];
  readonly onset: JamoToken | null;
  readonly nucleus: JamoToken | null;
  readonly coda: JamoToken | null;
  readonly tone: number;

  constructor(
    emitted: readonly SyllableBlock[] = [],
    onset: JamoToken | null = null,
    nucleus: JamoToken | null = null,
    coda: JamoToken | null = null,
    tone = 0,
  ) {
    this.emitted = emitted;
    this.onset = onset;
    this.nucleus = nucleus;
    this.coda = coda;
    this.tone = tone;
  }

  isEmpty(): boolean {
    return (
      this.emitted.length === 0 && this.onset === null &&
      this.nucleus === null && this.coda === null && this.tone === 0
    );
  }

  pendingTokens(): JamoToken[] {
    const pending: JamoToken[] = [];
    for (const t of [this.onset, this.nucleus, this.coda]) {
      if (t !== null) pending.push(t);
    }
    return pending;
  }

  private close(): CompositionState {
    // pre: onset and nucleus are set
    const done = makeBlock(this.onset!, this.nucleus!, this.coda, this.tone);
    return new CompositionState([...this.emitted, done]);
  }

  feed(item: JamoToken | ToneMark): CompositionState {
    if (isToneMark(item)) {
      if (this.onset === null) {
        throw new ComposeError("tone mark with no open syllable", 0);
      }
      return new CompositionState(
        this.emitted, this.onset, this.nucleus, this.coda, item.tone);
    }
    if (item.role === "nucleus") {
      const nuc = makeToken(item.base, "nucleus", item.modifier);
      if (this.onset === null) {
        throw new ComposeError("vowel without an onset", 0);
      }
      if (this.nucleus === null) {
        return new CompositionState(
          this.emitted, this.onset, nuc, null, this.tone);
      }
      if (this.coda === null) {
        throw new ComposeError("two vowels in a row", 0);
      }
      // held coda re-opens as the next onset
      const reopened = makeToken(this.coda.base, "onset", this.coda.modifier);
      const closed = new CompositionState(
        this.emitted, this.onset, this.nucleus, null, this.tone).close();
      return new CompositionState(closed.emitted, reopened, nuc);
    }
    // consonant
    if (this.onset === null) {
      return new CompositionState(
        this.emitted, makeToken(item.base, "onset", item.modifier),
        null, null, this.tone);
    }
    if (this.nucleus === null) {
      throw new ComposeError("consonant cannot follow a lone onset", 0);
    }
    const cod = makeToken(item.base, "coda", item.modifier);
    if (this.coda === null) {
      return new CompositionState(
        this.emitted, this.onset, this.nucleus, cod, this.tone);
    }
    // previous coda is confirmed, this consonant opens the next block
    const closed = this.close();
    return new CompositionState(
      closed.emitted, makeToken(item.base, "onset", item.modifier));
  }

  feedTone(tone: number): CompositionState {
    return this.feed(makeToneMark(tone));
  }

  toggleRhotic(): CompositionState {
    if (this.nucleus === null) {
      throw new ComposeError("rhotic toggle with no pending vowel", 0);
    }
    if (this.nucleus.base === SILENT) {
      throw new ComposeError("silent vowel carries no rhotic flag", 0);
    }
    const flipped = this.nucleus.modifier === "rhotic" ? "plain" : "rhotic";
    return new CompositionState(
      this.emitted, this.onset,
      makeToken(this.nucleus.base, "nucleus", flipped),
      this.coda, this.tone);
  }

  backspace(): CompositionState {
    if (this.coda !== null) {
      return new CompositionState(
        this.emitted, this.onset, this.nucleus, null, this.tone);
    }
    if (this.nucleus !== null) {
      return new CompositionState(
        this.emitted, this.onset, null, null, this.tone);
    }
    if (this.onset !== null) {
      return new CompositionState(this.emitted, null, null, null, 0);
    }
    if (this.emitted.length) {
      const last = this.emitted[this.emitted.length - 1];
      return new CompositionState(
        this.emitted.slice(0, -1), last.onset, last.nucleus, last.coda,
        last.tone);
    }
    return this;
  }

  completed(): SyllableBlock | null {
    if (this.onset !== null && this.nucleus !== null) {
      return makeBlock(this.onset, this.nucleus, this.coda, this.tone);
    }
    return null;
  }

  flush(): CompositionState {
    if (this.onset === null && this.nucleus === null) return this;
    const done = this.completed();
    if (done === null) {
      throw new ComposeError("incomplete block at end of stream", 0);
    }
    return new CompositionState([...this.emitted, done]);
  }
}

/** Flatten blocks back to a feedable stream; feed() inverts this. */
export function decompose(blocks: readonly SyllableBlock[]): (JamoToken | ToneMark)[] {
  const out: (JamoToken | ToneMark)[] = [];
  for (const b of blocks) {
    out.push(...blockTokens(b));
    if (b.tone) out.push({ tone: b.tone });
  }
  return out;
}
