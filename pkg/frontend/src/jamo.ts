/**
 * Extended-jamo token and syllable block model.
 *
 * Mirrors the Python core's data model and canonical serialization:
 *
 *   WORD  := BLOCK (" . " BLOCK)*
 *   BLOCK := ONSET "+" NUCLEUS ("+" CODA)? TONE?
 *   ONSET, CODA := consonant base, "*" suffix marks the modified form
 *   NUCLEUS     := vowel base, "^" suffix marks the rhotic form, "_" = silent
 *   TONE  := single digit 1..5
 *
 * Words are joined with " / ". Parity with the CLI is contractual, so
 * any change here must keep `hangulx keyboard-sim` output identical.
 */

export const CONSONANTS = [
  "G", "GG", "N", "D", "DD", "R", "M", "B", "BB", "S",
  "SS", "NG", "J", "JJ", "CH", "K", "T", "P", "H",
] as const;

export const VOWELS = [
  "A", "AE", "YA", "YAE", "EO", "E", "YEO", "YE", "O", "WA", "WAE",
  "OE", "YO", "U", "WO", "WE", "WI", "YU", "EU", "UI", "I",
] as const;

export const SILENT = "SIL";

export const CONSONANT_SET: ReadonlySet<string> = new Set(CONSONANTS);
export const VOWEL_SET: ReadonlySet<string> = new Set([...VOWELS, SILENT]);

export const MODIFIABLE_CONSONANTS: ReadonlySet<string> = new Set([
  "D", "R", "B", "S", "NG", "K", "P", "H", "J", "CH",
]);

export type Role = "onset" | "nucleus" | "coda";
export type Modifier = "plain" | "modified" | "rhotic";

export interface JamoToken {
  readonly base: string;
  readonly role: Role;
  readonly modifier: Modifier;
}

export interface ToneMark {
  readonly tone: number;
}

export interface SyllableBlock {
  readonly onset: JamoToken;
  readonly nucleus: JamoToken;
  readonly coda: JamoToken | null;
  readonly tone: number;
}

export class JamoError extends Error {}

export class ComposeError extends Error {
  readonly reason: string;
  readonly position: number;

  constructor(reason: string, position: number) {
    super(`${reason} (position ${position})`);
    this.reason = reason;
    this.position = position;
  }
}

export function makeToken(
  base: string, role: Role, modifier: Modifier = "plain",
): JamoToken {
  if (role === "nucleus") {
    if (!VOWEL_SET.has(base)) {
      throw new JamoError(`nucleus must be a vowel, got '${base}'`);
    }
  } else if (!CONSONANT_SET.has(base)) {
    throw new JamoError(`${role} must be a consonant, got '${base}'`);
  }
  if (modifier === "modified" && !MODIFIABLE_CONSONANTS.has(base)) {
    throw new JamoError(`${base} has no modified letterform`);
  }
  if (modifier === "rhotic" && (role !== "nucleus" || base === SILENT)) {
    throw new JamoError("rhotic flag only applies to non-silent vowels");
  }
  return { base, role, modifier };
}

export function makeToneMark(tone: number): ToneMark {
  if (!Number.isInteger(tone) || tone < 1 || tone > 5) {
    throw new JamoError(`tone must be 1..5, got ${tone}`);
  }
  return { tone };
}

export function isToneMark(item: JamoToken | ToneMark): item is ToneMark {
  return !("base" in item);
}

export function makeBlock(
  onset: JamoToken, nucleus: JamoToken, coda: JamoToken | null = null,
  tone = 0,
): SyllableBlock {
  if (onset.role !== "onset") throw new JamoError("block onset must have role=onset");
  if (nucleus.role !== "nucleus") throw new JamoError("block nucleus must have role=nucleus");
  if (coda !== null && coda.role !== "coda") throw new JamoError("block coda must have role=coda");
  if (!Number.isInteger(tone) || tone < 0 || tone > 5) {
    throw new JamoError(`block tone must be 0..5, got ${tone}`);
  }
  return { onset, nucleus, coda, tone };
}

export function blockTokens(b: SyllableBlock): JamoToken[] {
  return b.coda === null ? [b.onset, b.nucleus] : [b.onset, b.nucleus, b.coda];
}

export function tokenAtom(token: JamoToken): string {
  if (token.base === SILENT) return "_";
  if (token.modifier === "modified") return `${token.base}*`;
  if (token.modifier === "rhotic") return `${token.base}^`;
  return token.base;
}

export function parseTokenAtom(text: string, role: Role): JamoToken {
  if (text === "_") {
    if (role !== "nucleus") {
      throw new JamoError("silent vowel only fills the nucleus slot");
    }
    return makeToken(SILENT, "nucleus");
  }
  let modifier: Modifier = "plain";
  if (text.endsWith("*")) {
    modifier = "modified";
    text = text.slice(0, -1);
  } else if (text.endsWith("^")) {
    modifier = "rhotic";
    text = text.slice(0, -1);
  }
  if (!text) throw new JamoError("empty token name");
  return makeToken(text, role, modifier);
}

export function serializeBlock(b: SyllableBlock): string {
  const parts = [tokenAtom(b.onset), tokenAtom(b.nucleus)];
  if (b.coda !== null) parts.push(tokenAtom(b.coda));
  return parts.join("+") + (b.tone ? String(b.tone) : "");
}

export function serializeWords(words: readonly (readonly SyllableBlock[])[]): string {
  return words
    .map((word) => word.map(serializeBlock).join(" . "))
    .join(" / ");
}
