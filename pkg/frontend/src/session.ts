/**
 * Session logs and the single-event typing transition.
 *
 * A session log is JSON lines of `{t, code, shift}`. The fold below is
 * the demo's contractual behavior: replaying an exported log through
 * `hangulx keyboard-sim` must print exactly the token text the demo
 * displayed when the log was recorded.
 */

import { ComposeError, SyllableBlock, parseTokenAtom, serializeWords } from "./jamo.js";
import { CompositionState } from "./automaton.js";
import { CONTROL_EMITS, KeyEvent, KeyboardLayout, LayoutError } from "./layout.js";

export class SessionError extends Error {}

export function parseSessionLog(text: string): KeyEvent[] {
  const events: KeyEvent[] = [];
  const lines = text.split("\n");
  for (let i = 0; i < lines.length; i++) {
    if (!lines[i].trim()) continue;
    let obj: unknown;
    try {
      obj = JSON.parse(lines[i]);
    } catch {
      throw new SessionError(`session log line ${i + 1}: invalid JSON`);
    }
    const rec = obj as Record<string, unknown>;
    if (typeof obj !== "object" || obj === null ||
        !("t" in rec && "code" in rec && "shift" in rec)) {
      throw new SessionError(`session log line ${i + 1}: needs t, code, shift`);
    }
    if (typeof rec.code !== "string" || typeof rec.shift !== "boolean" ||
        typeof rec.t !== "number") {
      throw new SessionError(`session log line ${i + 1}: wrong field types`);
    }
    events.push({ code: rec.code, shift: rec.shift, t: rec.t });
  }
  return events;
}

export function writeSessionLog(events: readonly KeyEvent[]): string {
  return events
    .map((e) => JSON.stringify({ t: e.t, code: e.code, shift: e.shift }) + "\n")
    .join("");
}

export interface TypingState {
  readonly words: readonly (readonly SyllableBlock[])[];
  readonly state: CompositionState;
}

export const INITIAL: TypingState = { words: [], state: new CompositionState() };

/** The jamo token a key emits; roles are provisional (feed reassigns). */
function typingToken(emit: string) {
  for (const role of ["nucleus", "onset"] as const) {
    try {
      return parseTokenAtom(emit, role);
    } catch {
      continue;
    }
  }
  throw new LayoutError(`unknown emit '${emit}'`);
}

/** Apply one key event; this is the transition the demo runs per keypress. */
export function step(
  typing: TypingState, event: KeyEvent, layout: KeyboardLayout,
): TypingState {
  const { words, state } = typing;
  if (event.code === "Space") {
    const flushed = state.flush();
    return {
      words: flushed.emitted.length ? [...words, flushed.emitted] : words,
      state: new CompositionState(),
    };
  }
  if (event.code === "Backspace") {
    if (state.isEmpty() && words.length) {
      // the space itself is deleted: the last word reopens
      return {
        words: words.slice(0, -1),
        state: new CompositionState(words[words.length - 1]),
      };
    }
    return { words, state: state.backspace() };
  }
  const emit = layout.emitFor(event.code, event.shift);
  if (CONTROL_EMITS.has(emit)) {
    if (emit === "@rhotic") return { words, state: state.toggleRhotic() };
    return { words, state: state.feedTone(Number(emit.slice(-1))) };
  }
  return { words, state: state.feed(typingToken(emit)) };
}

/** Replay a whole session, returning the words it leaves on screen. */
export function replay(
  events: readonly KeyEvent[], layout: KeyboardLayout,
): SyllableBlock[][] {
  let typing = INITIAL;
  events.forEach((event, index) => {
    try {
      typing = step(typing, event, layout);
    } catch (exc) {
      if (exc instanceof ComposeError) {
        throw new ComposeError(exc.reason, index);
      }
      if (exc instanceof LayoutError) {
        throw new LayoutError(`event ${index}: ${exc.message}`);
      }
      throw exc;
    }
  });
  const final = [...typing.state.emitted];
  const done = typing.state.completed();
  if (done !== null) final.push(done);
  const words = typing.words.map((w) => [...w]);
  if (final.length) words.push(final);
  return words;
}

/** The token text a live demo shows for the current typing state. */
export function displayText(typing: TypingState): string {
  const final = [...typing.state.emitted];
  const done = typing.state.completed();
  if (done !== null) final.push(done);
  const words = [...typing.words];
  if (final.length) words.push(final);
  return serializeWords(words);
}
